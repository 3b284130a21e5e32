//! Exact counting and enumeration for community codes.
//!
//! Everything here works in arbitrary precision: Bell numbers overflow
//! `u64` at `n = 26`, and the counts feed equality checks rather than
//! estimates.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Block length `C(n, 2)`.
#[inline]
pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn check_code(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::InvalidCode { n, m });
    }
    Ok(())
}

/// The `n`th Bell number via `B_n = sum_{k<n} C(n-1, k) B_k`, `B_0 = 1`.
pub fn bell(n: usize) -> BigUint {
    let mut table: Vec<BigUint> = Vec::with_capacity(n + 1);
    table.push(BigUint::one());
    for i in 1..=n {
        let next = (0..i).fold(BigUint::zero(), |acc, k| {
            acc + binomial(i - 1, k) * &table[k]
        });
        table.push(next);
    }
    table.swap_remove(n)
}

/// Largest `n` accepted by [`bell_explicit`].
pub const BELL_EXPLICIT_MAX: usize = 16;

/// Bell number from the explicit alternating double sum
/// `sum_{k=1}^{n} sum_{i=0}^{k} (-1)^(k-i) i^n / ((k-i)! i!)`,
/// evaluated in exact rationals.
///
/// Only a cross-check for [`bell`]; returns `None` above
/// [`BELL_EXPLICIT_MAX`] or for `n = 0` (the sum is empty there).
pub fn bell_explicit(n: usize) -> Option<BigUint> {
    if n == 0 || n > BELL_EXPLICIT_MAX {
        return None;
    }
    let fact: Vec<BigUint> = (0..=n).map(factorial).collect();
    let mut total = BigRational::zero();
    for k in 1..=n {
        for i in 0..=k {
            let num = BigUint::from(i).pow(n as u32);
            let den = &fact[k - i] * &fact[i];
            let term = BigRational::new(num.into(), den.into());
            if (k - i) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    if !total.is_integer() {
        return None;
    }
    total.to_integer().to_biguint()
}

/// Table `S_m(j, k)` for `0 <= j, k <= n`, by
/// `S_m(j+1, k) = k S_m(j, k) + C(j, m-1) S_m(j-m+1, k-1)`, `S_m(0, 0) = 1`.
fn assoc_stirling_table(m: usize, n: usize) -> Vec<Vec<BigUint>> {
    let mut s = vec![vec![BigUint::zero(); n + 1]; n + 1];
    s[0][0] = BigUint::one();
    for j in 0..n {
        for k in 1..=n {
            let mut v = &s[j][k] * k;
            if j + 1 >= m {
                let c = binomial(j, m - 1);
                v += c * &s[j + 1 - m][k - 1];
            }
            s[j + 1][k] = v;
        }
    }
    s
}

/// `S_m(n, k)`: partitions of an `n`-set into exactly `k` blocks of size `>= m`.
///
/// `m` must be at least 1; out-of-range `k` yields zero.
pub fn assoc_stirling(m: usize, n: usize, k: usize) -> BigUint {
    assert!(m >= 1, "m-associated Stirling numbers need m >= 1");
    if k > n {
        return BigUint::zero();
    }
    assoc_stirling_table(m, n).swap_remove(n).swap_remove(k)
}

/// `|C_{n,m}|` by the recursion
/// `B_m(j) = sum_{k=0}^{j-m} C(j-1, k) B_m(k)`
/// with `B_m(0) = 1` and `B_m(j) = 0` for `0 < j < m`.
pub fn code_size(n: usize, m: usize) -> Result<BigUint> {
    check_code(n, m)?;
    let mut b: Vec<BigUint> = Vec::with_capacity(n + 1);
    b.push(BigUint::one());
    for j in 1..=n {
        let v = if j < m {
            BigUint::zero()
        } else {
            (0..=j - m).fold(BigUint::zero(), |acc, k| acc + binomial(j - 1, k) * &b[k])
        };
        b.push(v);
    }
    Ok(b.swap_remove(n))
}

/// `|C_{n,m}|` as `sum_k S_m(n, k)`; independent of the recursion in [`code_size`].
pub fn code_size_by_stirling(n: usize, m: usize) -> Result<BigUint> {
    check_code(n, m)?;
    let table = assoc_stirling_table(m, n);
    Ok(table[n].iter().sum())
}

/// A multiset of clique sizes, stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionType {
    parts: Vec<usize>,
}

impl PartitionType {
    /// Accepts parts in any order; they are sorted non-increasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidType {
                parts,
                reason: "no parts",
            });
        }
        if parts.contains(&0) {
            return Err(Error::InvalidType {
                parts,
                reason: "zero-sized part",
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Vertex count (sum of parts).
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of cliques.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn min_part(&self) -> usize {
        *self.parts.last().expect("non-empty by construction")
    }

    pub fn is_valid_for(&self, m: usize) -> bool {
        self.min_part() >= m
    }

    pub fn weight(&self) -> usize {
        weight_of_type(self)
    }

    pub fn count(&self) -> BigUint {
        count_of_type(self)
    }

    /// Multiplicity of each distinct part size, largest size first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, mult)) if *size == p => *mult += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl std::fmt::Display for PartitionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All integer partitions of `n` with every part `>= m`, in reverse
/// lexicographic order of their non-increasing part sequences.
pub fn enumerate_types(n: usize, m: usize) -> Result<Vec<PartitionType>> {
    check_code(n, m)?;
    fn go(
        remaining: usize,
        max_part: usize,
        m: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<PartitionType>,
    ) {
        if remaining == 0 {
            out.push(PartitionType { parts: cur.clone() });
            return;
        }
        for p in (m..=max_part.min(remaining)).rev() {
            let rest = remaining - p;
            if rest != 0 && rest < m {
                continue;
            }
            cur.push(p);
            go(rest, p, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, m, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Codeword weight of a partition type: `sum_i C(part_i, 2)`.
pub fn weight_of_type(t: &PartitionType) -> usize {
    t.parts.iter().map(|&p| pairs(p)).sum()
}

/// Set partitions of `[n]` with exactly this type:
/// `n! / (prod part_i! * prod mult_j!)`.
pub fn count_of_type(t: &PartitionType) -> BigUint {
    let mut den = BigUint::one();
    for &p in &t.parts {
        den *= factorial(p);
    }
    for (_, mult) in t.multiplicities() {
        den *= factorial(mult);
    }
    factorial(t.n()) / den
}

/// Number of codewords at each Hamming weight `0..=C(n,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Block length `N`; the vector has `N + 1` entries.
    pub fn block_length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Weights carrying at least one codeword, increasing.
    pub fn support(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, _)| w)
            .collect()
    }

    /// Entries as `u64`, if they all fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(ToPrimitive::to_u64).collect()
    }
}

pub fn weight_distribution(n: usize, m: usize) -> Result<WeightDistribution> {
    let types = enumerate_types(n, m)?;
    let mut counts = vec![BigUint::zero(); pairs(n) + 1];
    for t in &types {
        counts[t.weight()] += t.count();
    }
    Ok(WeightDistribution { counts })
}

/// `log2` of an arbitrary-precision integer (`-inf` for zero).
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits after shift");
    (top as f64).log2() + shift as f64
}

/// Code rate `log2 |C_{n,m}| / C(n, 2)`.
pub fn rate(n: usize, m: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "rate needs n >= 2, got n={n}"
        )));
    }
    let size = code_size(n, m)?;
    Ok(log2_big(&size) / pairs(n) as f64)
}

/// Which closed-form branch produced a minimum discrepancy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `n >= 3m + 1` (also used for `m = 1`, see [`min_discrepancy_closed_form`]).
    Wide,
    /// `2m < n < 3m`.
    Intermediate,
    /// `n = 2m`.
    Double,
    /// `n = 3m`.
    Triple,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Wide => "n >= 3m+1",
            Regime::Intermediate => "2m < n < 3m",
            Regime::Double => "n = 2m",
            Regime::Triple => "n = 3m",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinDiscrepancyValue {
    pub value: f64,
    pub regime: Regime,
}

/// Minimum discrepancy of `C_{n,m}` over a channel with weight `gamma`.
///
/// With `m = 1` every code contains a pair differing in a single edge, so
/// the value is 1 for all `n >= 2`; the `n = 2m` and `n = 3m` expressions
/// collapse to 0 there and are not used.
pub fn min_discrepancy_closed_form(n: usize, m: usize, gamma: f64) -> Result<MinDiscrepancyValue> {
    check_code(n, m)?;
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(Error::InvalidConfig(format!(
            "gamma must be finite and >= 1, got {gamma}"
        )));
    }
    if n < 2 * m || n < 2 {
        return Err(Error::UndefinedCode { n, m });
    }
    let nf = n as f64;
    let mf = m as f64;
    let (value, regime) = if m == 1 || n > 3 * m {
        ((mf * mf).min((1.0 + gamma) * mf), Regime::Wide)
    } else if n == 2 * m {
        (
            (2.0 * (mf - 1.0) * (1.0 + gamma)).min(mf * mf),
            Regime::Double,
        )
    } else if n == 3 * m {
        let v = (2.0 * (mf - 1.0) * (1.0 + gamma))
            .min(mf * mf)
            .min(2.0 * mf - 1.0 + gamma * mf);
        (v, Regime::Triple)
    } else {
        (
            ((nf - mf - 1.0) + gamma * mf).min(mf * (nf - mf)),
            Regime::Intermediate,
        )
    };
    Ok(MinDiscrepancyValue { value, regime })
}
