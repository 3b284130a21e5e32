//! Command implementations behind the `sash` binary.
//!
//! Each command renders its report into a `String` so it can be tested
//! without spawning a process.

pub mod error;
pub mod io;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sash_core::combinatorics::pairs;
use sash_core::evaluation::run_sweep_detailed;
use sash_core::karate::{self, run_karate, KarateReport};
use sash_core::{
    code_size, min_discrepancy_closed_form, rate, weight_distribution, ChannelParams, DecodeReport,
    ObservedGraph, PlantPrior, Sash, SashConfig, SweepConfig, SweepRow, TrialOutcome,
};

pub use error::CliError;
pub use io::{parse_edge_list, write_edge_list, write_sweep_csv, write_trial_log, SWEEP_HEADER};

/// Distributions with more entries than this print their support instead.
pub const MAX_PRINTED_DISTRIBUTION: usize = 256;

pub const DEFAULT_KARATE_T: usize = 30_000;

pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::io("<stdin>", e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

pub fn read_graph(path: &Path) -> Result<ObservedGraph, CliError> {
    parse_edge_list(&read_input(path)?)
}

/// Code size, rate, weight distribution and minimum discrepancy of `C_{n,m}`.
pub fn params_report(n: usize, m: usize, p: f64, q: f64) -> Result<String, CliError> {
    let ch = ChannelParams::new(p, q)?;
    let size = code_size(n, m)?;
    let mut out = String::new();
    writeln!(out, "n = {n}, m = {m}, block length = {}", pairs(n)).unwrap();
    writeln!(out, "code size = {size}").unwrap();
    writeln!(out, "rate = {}", rate(n, m)?).unwrap();
    let dist = weight_distribution(n, m)?;
    if dist.counts().len() <= MAX_PRINTED_DISTRIBUTION {
        let entries: Vec<String> = dist.counts().iter().map(ToString::to_string).collect();
        writeln!(out, "weight distribution = ({})", entries.join(",")).unwrap();
    } else {
        let support: Vec<String> = dist.support().iter().map(ToString::to_string).collect();
        writeln!(out, "weight support = {{{}}}", support.join(",")).unwrap();
    }
    writeln!(out, "gamma = {}", ch.gamma()).unwrap();
    if n < 2 * m {
        writeln!(
            out,
            "single codeword (the complete graph); minimum discrepancy undefined"
        )
        .unwrap();
    } else {
        let d = min_discrepancy_closed_form(n, m, ch.gamma())?;
        writeln!(out, "min discrepancy = {} ({})", d.value, d.regime).unwrap();
    }
    Ok(out)
}

pub struct DecodeArgs {
    pub m: usize,
    pub p: f64,
    pub q: f64,
    pub t: usize,
    pub seed: u64,
    pub exhaustive: bool,
}

pub fn decode_graph(y: &ObservedGraph, args: &DecodeArgs) -> Result<DecodeReport, CliError> {
    let ch = ChannelParams::new(args.p, args.q)?;
    let cfg = if args.exhaustive {
        SashConfig::exhaustive(y.n(), args.m, ch)?
    } else {
        SashConfig::new(y.n(), args.m, args.t, ch, args.seed)?
    };
    Ok(Sash::new(cfg)?.decode(y)?)
}

/// `vertex,cluster` rows followed by `#` summary lines.
pub fn render_decode(report: &DecodeReport) -> String {
    let labeling = report.estimate.labeling();
    let mut out = String::from("vertex,cluster\n");
    for (v, c) in labeling.labels().iter().enumerate() {
        writeln!(out, "{v},{c}").unwrap();
    }
    writeln!(out, "# clusters = {}", labeling.num_clusters()).unwrap();
    writeln!(out, "# discrepancy = {}", report.discrepancy_to_observation).unwrap();
    writeln!(out, "# candidates checked = {}", report.candidates_checked).unwrap();
    writeln!(out, "# radius at exit = {}", report.radius_at_exit).unwrap();
    writeln!(out, "# types visited = {}", report.types_visited).unwrap();
    out
}

pub struct SweepArgs {
    pub n: usize,
    pub m_values: Vec<usize>,
    pub p: f64,
    pub q: f64,
    pub t_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub prior: PlantPrior,
}

pub struct SweepResult {
    pub rows: Vec<(SweepConfig, SweepRow)>,
    pub trials: Vec<(SweepConfig, usize, Vec<TrialOutcome>)>,
}

pub fn run_sweeps(args: &SweepArgs) -> Result<SweepResult, CliError> {
    if args.m_values.is_empty() || args.t_values.is_empty() {
        return Err(CliError::Validation(
            "--m and --t need at least one value".into(),
        ));
    }
    let channel = ChannelParams::new(args.p, args.q)?;
    let mut result = SweepResult {
        rows: Vec::new(),
        trials: Vec::new(),
    };
    for &m in &args.m_values {
        let cfg = SweepConfig {
            n: args.n,
            m,
            channel,
            t_values: args.t_values.clone(),
            trials: args.trials,
            seed: args.seed,
            prior: args.prior,
        };
        for (row, outcomes) in run_sweep_detailed(&cfg)? {
            result.trials.push((cfg.clone(), row.t, outcomes));
            result.rows.push((cfg.clone(), row));
        }
    }
    Ok(result)
}

pub fn run_karate_reports(
    m_values: &[usize],
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<KarateReport>, CliError> {
    if trials == 0 {
        return Err(CliError::Validation("--trials must be at least 1".into()));
    }
    m_values
        .iter()
        .map(|&m| run_karate(m, t, trials, seed).map_err(CliError::from))
        .collect()
}

pub fn render_karate(reports: &[KarateReport]) -> String {
    let rates = karate::empirical_rates();
    let mut out = String::new();
    writeln!(out, "p_hat = {}", rates.p).unwrap();
    writeln!(out, "q_hat = {}", rates.q).unwrap();
    if let Ok(ch) = rates.channel() {
        writeln!(out, "gamma = {}", ch.gamma()).unwrap();
    }
    for r in reports {
        writeln!(
            out,
            "m = {}, t = {}, trials = {}: peak ARI = {:.4}, mean ARI = {:.4}",
            r.m,
            r.t,
            r.aris.len(),
            r.peak_ari(),
            r.mean_ari()
        )
        .unwrap();
    }
    out
}

pub fn write_karate_trials<W: std::io::Write>(
    out: W,
    reports: &[KarateReport],
    seed: u64,
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["m", "t", "trial", "ari", "clusters", "seed"])?;
    for r in reports {
        for (i, (a, est)) in r.aris.iter().zip(&r.estimates).enumerate() {
            w.write_record([
                r.m.to_string(),
                r.t.to_string(),
                i.to_string(),
                a.to_string(),
                est.num_clusters().to_string(),
                seed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes CSV either to `path` or, when `path` is `None`, to stdout.
pub fn emit_csv<F>(path: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(Box<dyn std::io::Write>) -> Result<(), csv::Error>,
{
    let (sink, label): (Box<dyn std::io::Write>, &Path) = match path {
        Some(p) => (
            Box::new(fs::File::create(p).map_err(|e| CliError::io(p, e))?),
            p,
        ),
        None => (Box::new(std::io::stdout().lock()), Path::new("<stdout>")),
    };
    write(sink).map_err(|source| CliError::Csv {
        path: label.to_path_buf(),
        source,
    })
}
