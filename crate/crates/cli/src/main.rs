use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entangle::{PartyLayout, StateSpec};
use entangle_cli::{
    cmd_concurrence, cmd_generate, cmd_measure, cmd_skew, cmd_sweep, parse_layout, CliError,
    Family, Input, MethodChoice,
};
use serde::Serialize;

/// Concurrence of multipartite quantum states from reduced purity, total
/// variance of local observables, and simulated measurement.
#[derive(Parser)]
#[command(name = "entangle", version)]
struct Cli {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Catalog state (bell_phi_plus, ghz3, w3, max_entangled3, ...).
    #[arg(long)]
    named: Option<String>,
    /// State file.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn input(&self) -> Input {
        match (&self.named, &self.file) {
            (Some(n), _) => Input::Named(n.clone()),
            (None, Some(f)) => Input::File(f.clone()),
            (None, None) => unreachable!("clap enforces one input"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Spectral,
    Variance,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Exact concurrence by the purity route, the variance route, or both.
    Concurrence {
        #[command(flatten)]
        input: InputArgs,
        /// Parties on one side of the bipartition, e.g. `0` or `0,2`.
        #[arg(long, value_delimiter = ',')]
        cut: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Concurrence estimated from simulated finite-shot measurements.
    Measure {
        #[command(flatten)]
        input: InputArgs,
        /// Shots per basic observable.
        #[arg(long, default_value_t = 10_000)]
        shots: usize,
        #[arg(long, env = "ENTANGLE_SEED", default_value_t = 0)]
        seed: u64,
        /// Use m² − s²/N for each squared mean.
        #[arg(long)]
        bias_correct: bool,
    },
    /// Wigner–Yanase skew information over the basic observables.
    Skew {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Convergence table of the sampled estimator against exact values.
    Sweep {
        /// `haar`, `product`, or a catalog name.
        #[arg(long)]
        family: String,
        /// Layout for haar/product families, e.g. `3,3`.
        #[arg(long)]
        layout: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000")]
        shots: Vec<usize>,
        /// Number of seeds per shot count.
        #[arg(long, default_value_t = 50)]
        seeds: u64,
        /// First seed.
        #[arg(long, env = "ENTANGLE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        bias_correct: bool,
    },
    /// Write a generated state in the state-file format.
    Generate {
        #[arg(long, conflicts_with_all = ["haar", "product", "mixed"])]
        named: Option<String>,
        #[arg(long)]
        haar: bool,
        #[arg(long)]
        product: bool,
        /// Uniform mixture of this many Haar pure states.
        #[arg(long)]
        mixed: Option<usize>,
        #[arg(long)]
        layout: Option<String>,
        #[arg(long, env = "ENTANGLE_SEED", default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit<T: Serialize>(json: bool, report: &T, text: impl FnOnce(&T) -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        );
    } else {
        print!("{}", text(report));
    }
}

fn fmt_opt(x: Option<entangle_cli::report::Num>) -> String {
    x.map_or_else(|| "n/a".into(), |n| format!("{:.12}", n.0))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let json = cli.json;
    match cli.command {
        Command::Concurrence { input, cut, method } => {
            let method = match method {
                MethodArg::Spectral => MethodChoice::Spectral,
                MethodArg::Variance => MethodChoice::Variance,
                MethodArg::Both => MethodChoice::Both,
            };
            let r = cmd_concurrence(&input.input(), cut.as_deref(), method)?;
            emit(json, &r, |r| {
                let mut s = format!(
                    "source: {} {}\nlayout: {:?}\n",
                    r.source.kind, r.source.name, r.layout
                );
                if let Some(c) = &r.cut {
                    s += &format!("cut: {c:?}\n");
                }
                if r.spectral.is_some() {
                    s += &format!("C_spectral: {}\n", fmt_opt(r.spectral));
                }
                if r.variance.is_some() {
                    s += &format!("C_variance: {}\n", fmt_opt(r.variance));
                }
                if let Some(d) = r.discrepancy {
                    s += &format!("discrepancy: {:.3e}\n", d.0);
                }
                s += &format!(
                    "V: {:.12}\nv_min: {:.12}\nv_max: {:.12}\n",
                    r.total_variance.0, r.v_min.0, r.v_max.0
                );
                s
            });
        }
        Command::Measure {
            input,
            shots,
            seed,
            bias_correct,
        } => {
            let r = cmd_measure(&input.input(), shots, seed, bias_correct)?;
            emit(json, &r, |r| {
                let mut s = format!(
                    "source: {} {}\nlayout: {:?}\nshots per observable: {}\nseed: {}\nbias corrected: {}\n",
                    r.source.kind, r.source.name, r.layout, r.shots, r.seed, r.bias_corrected
                );
                for o in &r.observables {
                    s += &format!(
                        "  X[{},{}] mean {:+.6} var {:.6}\n",
                        o.party, o.index, o.mean.0, o.variance.0
                    );
                }
                s += &format!(
                    "V_hat: {:.12}\nestimate: {:.12}\nstd_error: {}{}\nexact: {:.12}\n",
                    r.total_variance.0,
                    r.estimate.0,
                    r.std_error.map_or_else(
                        || "unavailable (fewer than 2 shots)".into(),
                        |e| format!("{:.3e}", e.0)
                    ),
                    if r.at_boundary {
                        " (clamped at boundary)"
                    } else {
                        ""
                    },
                    r.exact.0
                );
                s
            });
        }
        Command::Skew { input } => {
            let r = cmd_skew(&input.input())?;
            emit(json, &r, |r| {
                let mut s = format!(
                    "source: {} {}\nlayout: {:?}\n",
                    r.source.kind, r.source.name, r.layout
                );
                for o in &r.observables {
                    s += &format!("  I[{},{}] = {:.12}\n", o.party, o.index, o.skew.0);
                }
                s += &format!(
                    "total: {:.12}\nheuristic bound: {:.12} (heuristic, not a certified concurrence)\n",
                    r.total.0, r.heuristic_bound.0
                );
                s
            });
        }
        Command::Sweep {
            family,
            layout,
            shots,
            seeds,
            seed,
            bias_correct,
        } => {
            let layout = layout.as_deref().map(parse_layout).transpose()?;
            let fam = Family::parse(&family, layout)?;
            let r = cmd_sweep(&fam, &shots, seeds, seed, bias_correct)?;
            emit(json, &r, |r| r.to_table());
        }
        Command::Generate {
            named,
            haar,
            product,
            mixed,
            layout,
            seed,
            out,
        } => {
            let need_layout = || -> Result<PartyLayout, CliError> {
                let text = layout
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--layout is required".into()))?;
                parse_layout(text)
            };
            let spec = match (named, haar, product, mixed) {
                (Some(n), false, false, None) => StateSpec::named(n),
                (None, true, false, None) => StateSpec::haar(need_layout()?, seed),
                (None, false, true, None) => StateSpec::product(need_layout()?, seed),
                (None, false, false, Some(rank)) => StateSpec::mixed(need_layout()?, rank, seed),
                _ => {
                    return Err(CliError::Usage(
                        "choose exactly one of --named, --haar, --product, --mixed".into(),
                    ))
                }
            };
            let text = cmd_generate(&spec)?;
            match out {
                Some(path) => std::fs::write(&path, text).map_err(entangle::Error::from)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
