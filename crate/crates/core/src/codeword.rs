//! Codewords as upper-triangular adjacency vectors.
//!
//! Vertex pairs `(i, j)`, `i < j`, are laid out lexicographically:
//! `(0,1), (0,2), .., (0,n-1), (1,2), .., (n-2,n-1)` (0-indexed).

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::BitWord;
use crate::combinatorics::{code_size, pairs, PartitionType};
use crate::error::{Error, Result};

/// Default bound on the number of codewords an exhaustive enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Coordinate of the vertex pair `{i, j}` (0-indexed, `i != j`).
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(j < n && i != j);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Inverse of [`pair_index`]: yields `(coordinate, i, j)` in coordinate order.
pub fn pairs_in_order(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n)
        .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
        .enumerate()
        .map(|(c, (i, j))| (c, i, j))
}

/// Recovers `n >= 2` from a block length `C(n, 2)`.
pub fn vertices_for_block_length(len: usize) -> Option<usize> {
    if len == 0 {
        return None;
    }
    let mut n = ((2.0 * len as f64).sqrt()) as usize;
    while pairs(n) < len {
        n += 1;
    }
    while n > 0 && pairs(n) > len {
        n -= 1;
    }
    (pairs(n) == len).then_some(n)
}

/// Per-vertex cluster assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    /// Wraps arbitrary cluster identifiers; see [`Labeling::canonical`].
    pub fn new(labels: Vec<usize>) -> Self {
        Self { labels }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Relabels clusters `0..k` in order of first appearance.
    pub fn canonical(&self) -> Labeling {
        let mut map = std::collections::HashMap::new();
        let labels = self
            .labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Labeling { labels }
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 0;
        for &l in &self.labels {
            if l > next {
                return false;
            }
            if l == next {
                next += 1;
            }
        }
        true
    }

    /// Members of each cluster, clusters in first-appearance order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let canon = self.canonical();
        let k = canon.labels.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); k];
        for (v, &l) in canon.labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters().len()
    }
}

/// A member of some community code `C_{n,m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    n: usize,
    bits: BitWord,
}

impl Codeword {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &BitWord {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    /// Builds the word whose cliques are the given vertex blocks.
    /// Blocks must be disjoint and cover `0..n`.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Codeword {
        let mut bits = BitWord::zeros(pairs(n));
        for block in blocks {
            let block = block.as_ref();
            for (a, &u) in block.iter().enumerate() {
                for &v in &block[a + 1..] {
                    bits.set(pair_index(n, u, v), true);
                }
            }
        }
        Codeword { n, bits }
    }

    /// Validates that `bits` encodes a disjoint union of cliques.
    pub fn try_from_bits(n: usize, bits: BitWord) -> Result<Codeword> {
        let g = ObservedGraph::new(n, bits)?;
        decode_labeling(&g)?;
        Ok(Codeword { n, bits: g.bits })
    }

    /// View as an observation (e.g. the noiseless channel output).
    pub fn to_observed(&self) -> ObservedGraph {
        ObservedGraph {
            n: self.n,
            bits: self.bits.clone(),
        }
    }

    pub fn labeling(&self) -> Labeling {
        decode_labeling(&self.to_observed()).expect("codewords are cluster graphs")
    }
}

/// A received graph; any bit pattern of the right length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObservedGraph {
    n: usize,
    bits: BitWord,
}

impl ObservedGraph {
    pub fn new(n: usize, bits: BitWord) -> Result<Self> {
        if bits.len() != pairs(n) {
            return Err(Error::BadBlockLength { n, len: bits.len() });
        }
        Ok(Self { n, bits })
    }

    /// Builds a graph from 0-indexed edges. Self-loops and out-of-range
    /// vertices are rejected; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut bits = BitWord::zeros(pairs(n));
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidConfig(format!(
                    "edge ({u}, {v}) invalid for a simple graph on {n} vertices"
                )));
            }
            bits.set(pair_index(n, u, v), true);
        }
        Ok(Self { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &BitWord {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.bits.get(pair_index(self.n, u, v))
    }

    /// Edges `(i, j)`, `i < j`, in coordinate order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        pairs_in_order(self.n)
            .filter(|&(c, _, _)| self.bits.get(c))
            .map(|(_, i, j)| (i, j))
            .collect()
    }
}

impl From<Codeword> for ObservedGraph {
    fn from(c: Codeword) -> Self {
        ObservedGraph {
            n: c.n,
            bits: c.bits,
        }
    }
}

pub fn encode(labeling: &Labeling) -> Codeword {
    Codeword::from_blocks(labeling.n(), &labeling.clusters())
}

/// Inverts [`encode`]: returns the canonical labeling if the graph is a
/// disjoint union of cliques.
pub fn decode_labeling(word: &ObservedGraph) -> Result<Labeling> {
    let n = word.n;
    let mut adj = vec![Vec::new(); n];
    for (c, i, j) in pairs_in_order(n) {
        if word.bits.get(c) {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    const UNSET: usize = usize::MAX;
    let mut labels = vec![UNSET; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if labels[start] != UNSET {
            continue;
        }
        labels[start] = next;
        stack.push(start);
        let mut size = 0usize;
        let mut degree_sum = 0usize;
        while let Some(u) = stack.pop() {
            size += 1;
            degree_sum += adj[u].len();
            for &v in &adj[u] {
                if labels[v] == UNSET {
                    labels[v] = next;
                    stack.push(v);
                }
            }
        }
        if degree_sum / 2 != pairs(size) {
            return Err(Error::NotACodeword);
        }
        next += 1;
    }
    Ok(Labeling { labels })
}

/// Whether the graph is a disjoint union of cliques, each of size at least `m`.
pub fn is_codeword(word: &ObservedGraph, m: usize) -> bool {
    match decode_labeling(word) {
        Ok(l) => l.clusters().iter().all(|c| c.len() >= m),
        Err(_) => false,
    }
}

/// Sorted non-increasing cluster sizes.
pub fn type_of(labeling: &Labeling) -> PartitionType {
    let sizes = labeling.clusters().iter().map(Vec::len).collect();
    PartitionType::new(sizes).expect("a labeling on n >= 1 vertices has non-empty clusters")
}

/// Uniformly random set partition of `[n]` with type `t`, as vertex blocks.
///
/// Shuffles vertices and cuts consecutive runs of the part sizes. Each set
/// partition of the type arises from exactly `prod part_i! * prod mult_j!`
/// permutations, so the result is uniform over the type.
pub fn sample_blocks<R: Rng + ?Sized>(t: &PartitionType, rng: &mut R) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..t.n()).collect();
    perm.shuffle(rng);
    let mut out = Vec::with_capacity(t.k());
    let mut offset = 0;
    for &size in t.parts() {
        out.push(perm[offset..offset + size].to_vec());
        offset += size;
    }
    out
}

pub fn sample_labeling<R: Rng + ?Sized>(t: &PartitionType, rng: &mut R) -> Labeling {
    let mut labels = vec![0; t.n()];
    for (b, block) in sample_blocks(t, rng).iter().enumerate() {
        for &v in block {
            labels[v] = b;
        }
    }
    Labeling { labels }.canonical()
}

/// Uniformly random codeword of partition type `t`.
pub fn sample_codeword<R: Rng + ?Sized>(t: &PartitionType, rng: &mut R) -> Codeword {
    Codeword::from_blocks(t.n(), &sample_blocks(t, rng))
}

/// Reusable vertex order for drawing many codewords of one size.
///
/// A draw shuffles the vertices; the blocks of a type `t` are then the
/// consecutive runs of `t`'s part sizes in [`CodewordSampler::order`].
#[derive(Clone, Debug)]
pub struct CodewordSampler {
    perm: Vec<usize>,
}

impl CodewordSampler {
    pub fn new(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    /// Same distribution and rng consumption as [`sample_codeword`].
    pub fn shuffle<R: Rng + ?Sized>(&mut self, rng: &mut R) -> &[usize] {
        for (i, v) in self.perm.iter_mut().enumerate() {
            *v = i;
        }
        self.perm.shuffle(rng);
        &self.perm
    }

    pub fn order(&self) -> &[usize] {
        &self.perm
    }

    /// Blocks of type `t` under the current order.
    pub fn blocks<'a>(&'a self, t: &'a PartitionType) -> impl Iterator<Item = &'a [usize]> + 'a {
        t.parts().iter().scan(0usize, move |offset, &size| {
            let block = &self.perm[*offset..*offset + size];
            *offset += size;
            Some(block)
        })
    }

    pub fn codeword(&self, t: &PartitionType) -> Codeword {
        assert_eq!(
            t.n(),
            self.perm.len(),
            "partition type does not match sampler size"
        );
        let blocks: Vec<&[usize]> = self.blocks(t).collect();
        Codeword::from_blocks(t.n(), &blocks)
    }
}

/// Restricted-growth-string enumeration of the set partitions of `[n]`
/// whose blocks all have at least `m` elements, in lexicographic order.
///
/// Branches that can no longer fill every block up to `m` are pruned, so
/// the walk never dead-ends.
pub struct SetPartitions {
    n: usize,
    m: usize,
    labels: Vec<usize>,
    sizes: Vec<usize>,
    cursor: Vec<usize>,
    pos: usize,
    yielded: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            labels: vec![0; n],
            sizes: Vec::with_capacity(n),
            cursor: vec![0; n + 1],
            pos: 0,
            yielded: false,
            done: n == 0 || m > n,
        }
    }

    fn unassign(&mut self, pos: usize) {
        let v = self.labels[pos];
        self.sizes[v] -= 1;
        if self.sizes[v] == 0 {
            debug_assert_eq!(v + 1, self.sizes.len());
            self.sizes.pop();
        }
    }

    fn feasible(&self, remaining: usize) -> bool {
        let deficit: usize = self.sizes.iter().map(|&s| self.m.saturating_sub(s)).sum();
        deficit <= remaining
    }
}

impl Iterator for SetPartitions {
    type Item = Labeling;

    fn next(&mut self) -> Option<Labeling> {
        if self.done {
            return None;
        }
        if self.yielded {
            self.yielded = false;
            self.pos -= 1;
            self.unassign(self.pos);
        }
        loop {
            if self.pos == self.n {
                self.yielded = true;
                return Some(Labeling {
                    labels: self.labels.clone(),
                });
            }
            let pos = self.pos;
            let k = self.sizes.len();
            let mut placed = false;
            while self.cursor[pos] <= k {
                let v = self.cursor[pos];
                self.cursor[pos] += 1;
                if v == k {
                    self.sizes.push(1);
                } else {
                    self.sizes[v] += 1;
                }
                self.labels[pos] = v;
                if self.feasible(self.n - pos - 1) {
                    placed = true;
                    break;
                }
                self.unassign(pos);
            }
            if placed {
                self.pos += 1;
                self.cursor[self.pos] = 0;
            } else {
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
                self.unassign(self.pos);
            }
        }
    }
}

/// Every codeword of `C_{n,m}` exactly once, in restricted-growth-string order.
///
/// Fails up front if `|C_{n,m}|` exceeds `cap`.
pub fn enumerate_codewords(n: usize, m: usize, cap: u64) -> Result<impl Iterator<Item = Codeword>> {
    let size = code_size(n, m)?;
    if size > cap.into() {
        return Err(Error::CapExceeded {
            what: format!("C({n},{m}) with {size} codewords"),
            cap,
        });
    }
    Ok(SetPartitions::new(n, m).map(|l| encode(&l)))
}
