//! Seeded checks shared by the property tests and the acceptance runner.
//! Each returns `Err` with a description of the first violation.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sash_core::bits::BitWord;
use sash_core::channel::{discrepancy, gamma};
use sash_core::evaluation::{plant_partition, run_sweep_detailed};
use sash_core::{
    ari, decode_labeling, encode, enumerate_codewords, is_codeword, sash, ChannelParams, Codeword,
    Labeling, ObservedGraph, PlantPrior, SashConfig, SweepConfig,
};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Valid `(p, q)` pairs on a regular grid over the open unit square.
pub fn channel_grid(steps: usize) -> Vec<(f64, f64)> {
    let h = 1.0 / (steps + 1) as f64;
    let mut out = Vec::new();
    for i in 1..=steps {
        for j in 1..=steps {
            let (p, q) = (i as f64 * h, j as f64 * h);
            if p <= q && p + q < 1.0 {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn random_channel<R: Rng>(rng: &mut R) -> ChannelParams {
    loop {
        let p: f64 = rng.random_range(1e-3..0.5);
        let q: f64 = rng.random_range(p..0.999);
        if p + q < 1.0 {
            return ChannelParams::new(p, q).unwrap();
        }
    }
}

pub fn random_bits<R: Rng>(len: usize, rng: &mut R) -> BitWord {
    let density: f64 = rng.random();
    let bools: Vec<bool> = (0..len).map(|_| rng.random_bool(density)).collect();
    BitWord::from_bools(&bools)
}

pub fn random_labeling<R: Rng>(n: usize, clusters: usize, rng: &mut R) -> Labeling {
    Labeling::new((0..n).map(|_| rng.random_range(0..clusters)).collect())
}

pub fn gamma_grid() -> Check {
    let grid = channel_grid(200);
    if grid.len() < 10_000 {
        return Err(format!("grid has only {} pairs", grid.len()));
    }
    for (p, q) in grid {
        let g = gamma(p, q).map_err(|e| e.to_string())?;
        if g < 1.0 {
            return Err(format!("gamma({p}, {q}) = {g} < 1"));
        }
        if (g == 1.0) != ((p - q).abs() < 1e-12) {
            return Err(format!(
                "gamma({p}, {q}) = {g}: equality iff p = q violated"
            ));
        }
    }
    Ok(())
}

/// `discrepancy >= Hamming >= weight gap` on random pairs.
pub fn discrepancy_chain(seed: u64, pairs: usize) -> Check {
    let mut r = rng(seed);
    for _ in 0..pairs {
        let len = r.random_range(1..200);
        let (y, x) = (random_bits(len, &mut r), random_bits(len, &mut r));
        let ch = random_channel(&mut r);
        let d = discrepancy(&y, &x, &ch).unwrap();
        let h = y.hamming(&x) as f64;
        let gap = y.weight().abs_diff(x.weight()) as f64;
        if d < h - 1e-9 || h < gap {
            return Err(format!("chain broken: d={d} h={h} gap={gap} at {ch:?}"));
        }
    }
    Ok(())
}

/// `decode_labeling(encode(L)) = canonical(L)` for every set partition of
/// `n <= max_n` under a non-canonical relabeling.
pub fn round_trip_exhaustive(max_n: usize) -> Check {
    for n in 1..=max_n {
        for c in enumerate_codewords(n, 1, u64::MAX).unwrap() {
            let canonical = c.labeling();
            let shuffled = Labeling::new(
                canonical
                    .labels()
                    .iter()
                    .map(|&l| 3 * (n - l) + 7)
                    .collect(),
            );
            let back =
                decode_labeling(&encode(&shuffled).to_observed()).map_err(|e| e.to_string())?;
            if back != canonical || back != shuffled.canonical() {
                return Err(format!("round trip failed for {shuffled:?}"));
            }
        }
    }
    Ok(())
}

/// A triangle on {0,1,2} and the single edge {2,3} are both codewords of
/// `C_{n,1}`; their sum is a path plus an edge, which is not.
pub fn nonlinearity_witness(n: usize) -> Check {
    let triangle = Codeword::from_blocks(n, &[vec![0, 1, 2]]);
    let edge = if n >= 4 {
        Codeword::from_blocks(n, &[vec![2, 3]])
    } else {
        Codeword::from_blocks(n, &[vec![1, 2]])
    };
    for w in [&triangle, &edge] {
        if !is_codeword(&w.to_observed(), 1) {
            return Err(format!("n={n}: witness {w:?} is not a codeword"));
        }
    }
    let sum = ObservedGraph::new(n, triangle.bits().xor(edge.bits())).unwrap();
    if is_codeword(&sum, 1) {
        return Err(format!("n={n}: XOR of witnesses is a codeword"));
    }
    Ok(())
}

/// ARI symmetry and invariance under label permutations.
pub fn ari_invariance(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for _ in 0..cases {
        let n = r.random_range(2..40);
        let k = r.random_range(1..8);
        let a = random_labeling(n, k, &mut r);
        let b = random_labeling(n, r.random_range(1..8), &mut r);
        let mut perm: Vec<usize> = (0..8).collect();
        perm.shuffle(&mut r);
        let pb = Labeling::new(b.labels().iter().map(|&l| perm[l] + 100).collect());
        let ab = ari(&a, &b).unwrap();
        let ba = ari(&b, &a).unwrap();
        let apb = ari(&a, &pb).unwrap();
        if (ab - ba).abs() > 1e-12 || (ab - apb).abs() > 1e-12 {
            return Err(format!("ari not invariant: {ab} {ba} {apb}"));
        }
        if !(-1.0..=1.0 + 1e-12).contains(&ab) {
            return Err(format!("ari out of range: {ab}"));
        }
    }
    Ok(())
}

/// Within-cluster edge frequency against `1 - q` and between-cluster
/// frequency against `p`, each within three standard errors.
pub fn planted_edge_statistics(seed: u64, samples: usize) -> Check {
    let ch = ChannelParams::new(0.1, 0.3).unwrap();
    let mut r = rng(seed);
    let (mut win, mut win_edges, mut btw, mut btw_edges) = (0u64, 0u64, 0u64, 0u64);
    for _ in 0..samples {
        let g = plant_partition(8, 2, &ch, PlantPrior::UniformType, &mut r).unwrap();
        let labels = g.labeling.labels();
        for (u, v) in (0..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))) {
            let e = u64::from(g.observed.has_edge(u, v));
            if labels[u] == labels[v] {
                win += 1;
                win_edges += e;
            } else {
                btw += 1;
                btw_edges += e;
            }
        }
    }
    for (name, hits, total, expect) in [
        ("within", win_edges, win, 1.0 - ch.q()),
        ("between", btw_edges, btw, ch.p()),
    ] {
        let freq = hits as f64 / total as f64;
        let se = (expect * (1.0 - expect) / total as f64).sqrt();
        if (freq - expect).abs() > 3.0 * se {
            return Err(format!("{name} edge rate {freq} vs {expect} (se {se})"));
        }
    }
    Ok(())
}

/// Same seed and configuration give identical decodes and sweeps.
pub fn determinism() -> Check {
    let ch = ChannelParams::new(0.1, 0.3).unwrap();
    let mut r = rng(11);
    let g = plant_partition(16, 4, &ch, PlantPrior::UniformType, &mut r).unwrap();
    let cfg = SashConfig::new(16, 4, 20, ch, 5).unwrap();
    if sash(&g.observed, &cfg).unwrap() != sash(&g.observed, &cfg).unwrap() {
        return Err("sash differs across runs".into());
    }
    let sweep = SweepConfig {
        n: 12,
        m: 3,
        channel: ch,
        t_values: vec![1, 10],
        trials: 20,
        seed: 9,
        prior: PlantPrior::UniformType,
    };
    if run_sweep_detailed(&sweep).unwrap() != run_sweep_detailed(&sweep).unwrap() {
        return Err("sweep differs across runs".into());
    }
    Ok(())
}
