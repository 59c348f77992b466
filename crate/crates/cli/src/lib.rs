//! Command implementations behind the `entangle` binary.

pub mod report;

use std::path::PathBuf;

use entangle::{
    concurrence_spectral, concurrence_variance, estimate_concurrence, haar_state, make_state,
    named_state, product_state, statefile, total_skew_information, Cut, PartyLayout,
    QuantumState64, StateSpec, StateVector64,
};
use rayon::prelude::*;
use thiserror::Error;

use report::{
    ConcurrenceReport, MeasureReport, Num, ObservableMean, ObservableSkew, SkewReport, Source,
    SweepReport, SweepRow,
};

/// Agreement required between the two exact routes on bipartite layouts.
pub const ROUTE_TOLERANCE: f64 = 1e-10;
/// Allowed gap in `C²(v_max − v_min) + v_min = V`.
pub const REPORT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] entangle::Error),
    #[error("{0}")]
    Usage(String),
    #[error("numerical invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 1 for parse or validation failures, 2 for numerical invariant violations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            CliError::Invariant(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Where a state comes from.
#[derive(Debug, Clone)]
pub enum Input {
    Named(String),
    File(PathBuf),
}

impl Input {
    pub fn load(&self) -> Result<QuantumState64> {
        Ok(match self {
            Input::Named(name) => named_state::<f64>(name)?.into(),
            Input::File(path) => statefile::read::<f64>(path)?,
        })
    }

    fn source(&self) -> Source {
        match self {
            Input::Named(n) => Source {
                kind: "named",
                name: n.clone(),
            },
            Input::File(p) => Source {
                kind: "file",
                name: p.display().to_string(),
            },
        }
    }

    fn load_pure(&self) -> Result<StateVector64> {
        match self.load()? {
            QuantumState64::Pure(s) => Ok(s),
            QuantumState64::Mixed(_) => Err(CliError::Usage(
                "this command needs a pure state (kind: pure)".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Spectral,
    Variance,
    Both,
}

impl MethodChoice {
    fn as_str(&self) -> &'static str {
        match self {
            MethodChoice::Spectral => "spectral",
            MethodChoice::Variance => "variance",
            MethodChoice::Both => "both",
        }
    }
}

pub fn cmd_concurrence(
    input: &Input,
    cut: Option<&[usize]>,
    method: MethodChoice,
) -> Result<ConcurrenceReport> {
    let psi = input.load_pure()?;
    let layout = psi.layout().clone();
    let resolve_cut = || -> Result<Cut> {
        match cut {
            Some(side) => Ok(Cut::new(&layout, side)?),
            None if layout.parties() == 2 => Ok(Cut::first_vs_rest(&layout)?),
            None => Err(CliError::Usage(format!(
                "--cut is required for the spectral method on {} parties",
                layout.parties()
            ))),
        }
    };

    let spectral = match method {
        MethodChoice::Spectral | MethodChoice::Both => {
            Some(concurrence_spectral(&psi, &resolve_cut()?)?)
        }
        MethodChoice::Variance => None,
    };
    let variance = match method {
        MethodChoice::Variance | MethodChoice::Both => Some(concurrence_variance(&psi)?),
        MethodChoice::Spectral => None,
    };

    for r in spectral.iter().chain(variance.iter()) {
        let gap = r.consistency_gap();
        if gap > REPORT_TOLERANCE {
            return Err(CliError::Invariant(format!(
                "{} report off by {gap:e}",
                r.method.as_str()
            )));
        }
    }
    let discrepancy = match (&spectral, &variance) {
        (Some(a), Some(b)) => Some((a.value - b.value).abs()),
        _ => None,
    };
    if let Some(d) = discrepancy {
        if layout.parties() == 2 && d > ROUTE_TOLERANCE {
            return Err(CliError::Invariant(format!(
                "spectral and variance concurrence differ by {d:e}"
            )));
        }
    }

    let main = variance
        .as_ref()
        .or(spectral.as_ref())
        .expect("one method ran");
    Ok(ConcurrenceReport {
        command: "concurrence",
        source: input.source(),
        layout: layout.dims().to_vec(),
        method: method.as_str(),
        cut: spectral
            .as_ref()
            .and(resolve_cut().ok())
            .map(|c| c.side_a().to_vec()),
        spectral: spectral.as_ref().map(|r| Num(r.value)),
        variance: variance.as_ref().map(|r| Num(r.value)),
        discrepancy: discrepancy.map(Num),
        total_variance: Num(main.total_variance),
        v_min: Num(main.v_min),
        v_max: Num(main.v_max),
    })
}

pub fn cmd_measure(
    input: &Input,
    shots: usize,
    seed: u64,
    bias_correct: bool,
) -> Result<MeasureReport> {
    let psi = input.load_pure()?;
    let est = estimate_concurrence(&psi, shots, seed, bias_correct)?;
    let exact = concurrence_variance(&psi)?.value;
    Ok(MeasureReport {
        command: "measure",
        source: input.source(),
        layout: psi.layout().dims().to_vec(),
        shots,
        seed,
        bias_corrected: bias_correct,
        estimate: Num(est.estimate),
        std_error: est.std_error.map(Num),
        at_boundary: est.at_boundary,
        total_variance: Num(est.total_variance),
        v_min: Num(est.v_min),
        v_max: Num(est.v_max),
        exact: Num(exact),
        observables: est
            .records
            .iter()
            .map(|r| ObservableMean {
                party: r.observable_id.party,
                index: r.observable_id.index,
                mean: Num(r.sample_mean),
                variance: Num(r.sample_variance),
            })
            .collect(),
    })
}

pub fn cmd_skew(input: &Input) -> Result<SkewReport> {
    let rho = input.load()?.to_density();
    let rep = total_skew_information(&rho)?;
    Ok(SkewReport {
        command: "skew",
        source: input.source(),
        layout: rho.layout().dims().to_vec(),
        observables: rep
            .per_observable
            .iter()
            .map(|(id, v)| ObservableSkew {
                party: id.party,
                index: id.index,
                skew: Num(*v),
            })
            .collect(),
        total: Num(rep.total),
        heuristic_bound: Num(rep.heuristic_bound),
        heuristic: rep.heuristic,
    })
}

/// State family for a convergence sweep.
#[derive(Debug, Clone)]
pub enum Family {
    Named(String),
    Haar(PartyLayout),
    Product(PartyLayout),
}

impl Family {
    /// Parses `haar`, `product` (both need a layout) or a catalog name.
    pub fn parse(name: &str, layout: Option<PartyLayout>) -> Result<Self> {
        let need = |l: Option<PartyLayout>| {
            l.ok_or_else(|| CliError::Usage(format!("family `{name}` needs --layout")))
        };
        Ok(match name {
            "haar" => Family::Haar(need(layout)?),
            "product" => Family::Product(need(layout)?),
            other => {
                named_state::<f64>(other)?;
                Family::Named(other.to_string())
            }
        })
    }

    fn label(&self) -> String {
        match self {
            Family::Named(n) => n.clone(),
            Family::Haar(_) => "haar".into(),
            Family::Product(_) => "product".into(),
        }
    }

    fn state(&self, seed: u64) -> Result<StateVector64> {
        Ok(match self {
            Family::Named(n) => named_state(n)?,
            Family::Haar(l) => haar_state(l, seed),
            Family::Product(l) => product_state(l, seed),
        })
    }
}

pub fn cmd_sweep(
    family: &Family,
    shot_list: &[usize],
    seeds: u64,
    base_seed: u64,
    bias_correct: bool,
) -> Result<SweepReport> {
    if shot_list.is_empty() {
        return Err(CliError::Usage("shot list is empty".into()));
    }
    if seeds == 0 {
        return Err(CliError::Usage("need at least one seed".into()));
    }
    let mut shots_sorted = shot_list.to_vec();
    shots_sorted.sort_unstable();
    shots_sorted.dedup();

    let states = (0..seeds)
        .map(|s| {
            let psi = family.state(base_seed.wrapping_add(s))?;
            let exact = concurrence_variance(&psi)?.value;
            Ok((psi, exact))
        })
        .collect::<Result<Vec<_>>>()?;
    let layout = states[0].0.layout().dims().to_vec();

    let mut rows = Vec::with_capacity(shots_sorted.len());
    for &n in &shots_sorted {
        let runs = states
            .par_iter()
            .enumerate()
            .map(|(s, (psi, exact))| {
                let est =
                    estimate_concurrence(psi, n, base_seed.wrapping_add(s as u64), bias_correct)?;
                Ok(((est.estimate - exact).abs(), est.std_error))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut errors: Vec<f64> = runs.iter().map(|r| r.0).collect();
        errors.sort_by(|a, b| a.total_cmp(b));
        let m = errors.len();
        let median = if m % 2 == 1 {
            errors[m / 2]
        } else {
            0.5 * (errors[m / 2 - 1] + errors[m / 2])
        };
        let ses: Vec<f64> = runs.iter().filter_map(|r| r.1).collect();
        let mean_se = (!ses.is_empty()).then(|| ses.iter().sum::<f64>() / ses.len() as f64);
        rows.push(SweepRow {
            shots: n,
            median_abs_error: Num(median),
            mean_std_error: mean_se.map(Num),
        });
    }
    Ok(SweepReport {
        command: "sweep",
        family: family.label(),
        layout,
        seeds,
        base_seed,
        bias_corrected: bias_correct,
        rows,
    })
}

/// Generates a state and renders it in the state-file format.
pub fn cmd_generate(spec: &StateSpec) -> Result<String> {
    let state = make_state::<f64>(spec)?;
    Ok(statefile::to_string(&state))
}

/// Parses `2,3` or `2x3` into a layout.
pub fn parse_layout(text: &str) -> Result<PartyLayout> {
    let dims = text
        .split([',', 'x', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad dimension `{t}` in layout")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartyLayout::new(dims)?)
}
