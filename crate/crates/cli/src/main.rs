use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sash_cli::{
    decode_graph, emit_csv, params_report, read_graph, render_decode, render_karate,
    run_karate_reports, run_sweeps, write_karate_trials, write_sweep_csv, write_trial_log,
    CliError, DecodeArgs, SweepArgs, DEFAULT_KARATE_T,
};
use sash_core::PlantPrior;

#[derive(Parser)]
#[command(
    name = "sash",
    version,
    about = "Community detection as decoding of community codes"
)]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prior {
    UniformType,
    UniformCodeword,
}

impl From<Prior> for PlantPrior {
    fn from(p: Prior) -> Self {
        match p {
            Prior::UniformType => PlantPrior::UniformType,
            Prior::UniformCodeword => PlantPrior::UniformCodeword,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Code size, rate, weight distribution and minimum discrepancy.
    Params {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 0.3)]
        q: f64,
    },
    /// Decode an edge-list file ("-" for stdin) into a clustering.
    Decode {
        graph: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 100)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every codeword of each type instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Planted-partition sweep over t and m, written as CSV.
    Sweep {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![4, 6, 8])]
        m: Vec<usize>,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 0.3)]
        q: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 10, 100, 1000])]
        t: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Prior::UniformType)]
        prior: Prior,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one CSV row per trial to this path.
        #[arg(long)]
        log_trials: Option<PathBuf>,
    },
    /// Decode Zachary's karate club and score against its factions.
    Karate {
        #[arg(long, value_delimiter = ',', default_values_t = vec![10, 15])]
        m: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_KARATE_T)]
        t: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-trial ARI rows to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Params { n, m, p, q } => print!("{}", params_report(n, m, p, q)?),
        Command::Decode {
            graph,
            m,
            p,
            q,
            t,
            seed,
            exhaustive,
        } => {
            let y = read_graph(&graph)?;
            let args = DecodeArgs {
                m,
                p,
                q,
                t,
                seed,
                exhaustive,
            };
            print!("{}", render_decode(&decode_graph(&y, &args)?));
        }
        Command::Sweep {
            n,
            m,
            p,
            q,
            t,
            trials,
            seed,
            prior,
            out,
            log_trials,
        } => {
            let result = run_sweeps(&SweepArgs {
                n,
                m_values: m,
                p,
                q,
                t_values: t,
                trials,
                seed,
                prior: prior.into(),
            })?;
            emit_csv(out.as_deref(), |w| write_sweep_csv(w, &result.rows))?;
            if let Some(path) = log_trials {
                emit_csv(Some(&path), |w| write_trial_log(w, &result.trials))?;
            }
        }
        Command::Karate {
            m,
            t,
            trials,
            seed,
            out,
        } => {
            let reports = run_karate_reports(&m, t, trials, seed)?;
            print!("{}", render_karate(&reports));
            if let Some(path) = out {
                emit_csv(Some(&path), |w| write_karate_trials(w, &reports, seed))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.threads {
        Some(0) => Err(CliError::Validation("--threads must be at least 1".into())),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(CliError::Validation(format!("thread pool: {e}"))),
        },
        None => run(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
