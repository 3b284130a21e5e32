//! Edge-list graphs and sweep CSV files.

use std::io::Write;

use sash_core::evaluation::{SweepConfig, SweepRow, TrialOutcome};
use sash_core::ObservedGraph;

use crate::error::CliError;

/// Column order of a sweep file.
pub const SWEEP_HEADER: [&str; 10] = [
    "t",
    "m",
    "n",
    "p",
    "q",
    "trials",
    "exact_rate",
    "as_good_rate",
    "mean_ari",
    "seed",
];

pub const TRIAL_LOG_HEADER: [&str; 9] = [
    "t",
    "m",
    "trial",
    "exact",
    "as_good",
    "ari",
    "delta_sent",
    "delta_estimate",
    "seed",
];

/// Parses a whitespace-separated, 0-indexed edge list.
///
/// Blank lines and lines starting with `#` are skipped. An optional
/// `n <count>` line fixes the vertex count; otherwise it is one more than
/// the largest vertex seen. Duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<ObservedGraph, CliError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(CliError::parse(line_no, "header must be `n <count>`"));
            }
            if declared.is_some() {
                return Err(CliError::parse(line_no, "duplicate `n` header"));
            }
            let n = tokens[1].parse().map_err(|_| {
                CliError::parse(line_no, format!("bad vertex count `{}`", tokens[1]))
            })?;
            declared = Some((n, line_no));
            continue;
        }
        if tokens.len() != 2 {
            return Err(CliError::parse(
                line_no,
                format!("expected two vertex indices, found `{line}`"),
            ));
        }
        let vertex = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| CliError::parse(line_no, format!("bad vertex index `{s}`")))
        };
        let (u, v) = (vertex(tokens[0])?, vertex(tokens[1])?);
        if u == v {
            return Err(CliError::parse(line_no, format!("self-loop on vertex {u}")));
        }
        edges.push((u, v, line_no));
    }
    let inferred = edges
        .iter()
        .map(|&(u, v, _)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let n = match declared {
        Some((n, header_line)) => {
            if let Some(&(u, v, line)) = edges.iter().find(|&&(u, v, _)| u.max(v) >= n) {
                return Err(CliError::parse(
                    line,
                    format!("edge ({u}, {v}) exceeds n = {n} declared on line {header_line}"),
                ));
            }
            n
        }
        None => inferred,
    };
    if n < 2 {
        return Err(CliError::Validation(
            "graph needs at least two vertices".into(),
        ));
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    Ok(ObservedGraph::from_edges(n, &pairs)?)
}

/// Serialises a graph as an `n <count>` header plus sorted unique edges.
pub fn write_edge_list(g: &ObservedGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

pub fn write_sweep_csv<W: Write>(
    out: W,
    rows: &[(SweepConfig, SweepRow)],
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for (cfg, row) in rows {
        w.write_record([
            row.t.to_string(),
            cfg.m.to_string(),
            cfg.n.to_string(),
            cfg.channel.p().to_string(),
            cfg.channel.q().to_string(),
            cfg.trials.to_string(),
            row.exact_rate.to_string(),
            row.as_good_rate.to_string(),
            row.mean_ari.to_string(),
            cfg.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trial_log<W: Write>(
    out: W,
    trials: &[(SweepConfig, usize, Vec<TrialOutcome>)],
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRIAL_LOG_HEADER)?;
    for (cfg, t, outcomes) in trials {
        for (i, o) in outcomes.iter().enumerate() {
            w.write_record([
                t.to_string(),
                cfg.m.to_string(),
                i.to_string(),
                u8::from(o.exact).to_string(),
                u8::from(o.as_good).to_string(),
                o.ari.to_string(),
                o.delta_sent.to_string(),
                o.delta_estimate.to_string(),
                cfg.seed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
