//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::Instant;

use common::{median, random_orthogonal, BIPARTITE_LAYOUTS};
use entangle::linalg::{self, CMatrix};
use entangle::{
    commutator_skew, concurrence_spectral, concurrence_variance, estimate_concurrence, haar_state,
    lifted_basis, mixed_state, named_state, observable_basis, psd_sqrt, statefile,
    total_skew_information, total_variance, total_variance_in, variance_bounds, Cut, PartyLayout,
    QuantumState, StateVector,
};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn layout(dims: &[usize]) -> PartyLayout {
    PartyLayout::new(dims.to_vec()).unwrap()
}

fn two_qubit_constants() -> Outcome {
    let zero = StateVector::<f64>::basis(layout(&[2, 2]), &[0, 0]).unwrap();
    let bell = named_state::<f64>("bell_phi_plus").unwrap();
    let v0 = total_variance(&zero).unwrap();
    let vb = total_variance(&bell).unwrap();
    check(
        (v0 - 4.0).abs() < 1e-12 && (vb - 6.0).abs() < 1e-12,
        format!("V(|00>) = {v0}, V(Bell) = {vb}"),
    )
}

fn two_qutrit_constants() -> Outcome {
    let (lo, hi) = variance_bounds::<f64>(&layout(&[3, 3]));
    let v = total_variance(&named_state::<f64>("max_entangled3").unwrap()).unwrap();
    check(
        (lo - 8.0).abs() < 1e-12
            && (hi - 32.0 / 3.0).abs() < 1e-12
            && (v - 32.0 / 3.0).abs() < 1e-10,
        format!("bounds ({lo}, {hi}), V(max_entangled3) = {v}"),
    )
}

fn casimir_scalar() -> Outcome {
    let sum = lifted_basis::<f64>(&layout(&[2, 2]))
        .unwrap()
        .iter()
        .fold(CMatrix::zeros(4, 4), |acc, (_, x)| acc + x * x);
    let target = linalg::identity::<f64>(4).map(|z| z * 6.0);
    let dev = linalg::max_abs_diff(&sum, &target);
    check(dev < 1e-12, format!("max |ΣX² − 6I| = {dev:e}"))
}

fn spectral_equals_variance() -> Outcome {
    let mut worst = 0.0f64;
    for dims in BIPARTITE_LAYOUTS {
        let l = layout(&dims);
        let cut = Cut::first_vs_rest(&l).unwrap();
        for seed in 0..1000 {
            let psi = haar_state::<f64>(&l, seed);
            let a = concurrence_spectral(&psi, &cut).unwrap().value;
            let b = concurrence_variance(&psi).unwrap().value;
            worst = worst.max((a - b).abs());
        }
    }
    check(
        worst < 1e-10,
        format!("max discrepancy {worst:e} over 5×1000 states"),
    )
}

fn two_qubit_amplitude_form() -> Outcome {
    let l = layout(&[2, 2]);
    let cut = Cut::first_vs_rest(&l).unwrap();
    let mut worst = 0.0f64;
    for seed in 0..1000 {
        let psi = haar_state::<f64>(&l, 50_000 + seed);
        let a = psi.amplitudes();
        let oracle = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        worst = worst.max((concurrence_spectral(&psi, &cut).unwrap().value - oracle).abs());
    }
    check(
        worst < 1e-12,
        format!("max |C − 2|ψ00ψ11 − ψ01ψ10|| = {worst:e}"),
    )
}

fn basis_independence() -> Outcome {
    let l = layout(&[2, 2]);
    let pauli = observable_basis::<f64>(2).unwrap();
    let states: Vec<_> = (0..100)
        .map(|s| haar_state::<f64>(&l, 70_000 + s))
        .collect();
    let reference: Vec<f64> = states.iter().map(|p| total_variance(p).unwrap()).collect();
    let mut worst = 0.0f64;
    for trial in 0..100u64 {
        let bases = vec![
            pauli.recombine(&random_orthogonal(3, 2 * trial)).unwrap(),
            pauli
                .recombine(&random_orthogonal(3, 2 * trial + 1))
                .unwrap(),
        ];
        for (psi, v) in states.iter().zip(&reference) {
            worst = worst.max((total_variance_in(psi, &bases).unwrap() - v).abs());
        }
    }
    check(
        worst < 1e-9,
        format!("max drift {worst:e} over 100 rotations × 100 states"),
    )
}

fn operational_estimator() -> Outcome {
    let bell = named_state::<f64>("bell_phi_plus").unwrap();
    let medians: Vec<f64> = [100usize, 1_000, 10_000, 100_000]
        .iter()
        .map(|&n| {
            median(
                (0..50)
                    .map(|seed| {
                        (estimate_concurrence(&bell, n, seed, false)
                            .unwrap()
                            .estimate
                            - 1.0)
                            .abs()
                    })
                    .collect(),
            )
        })
        .collect();
    let decreasing = medians.windows(2).all(|w| w[1] < w[0]);
    check(
        medians[3] < 0.02 && decreasing,
        format!(
            "median |Ĉ − 1| by shots 1e2..1e5: {:?}",
            medians
                .iter()
                .map(|m| format!("{m:.2e}"))
                .collect::<Vec<_>>()
        ),
    )
}

fn skew_coincidence() -> Outcome {
    let mut worst = 0.0f64;
    for dims in [[2usize, 2], [3, 3]] {
        let l = layout(&dims);
        for seed in 0..200 {
            let psi = haar_state::<f64>(&l, 90_000 + seed);
            let skew = total_skew_information(&psi.to_density()).unwrap().total;
            worst = worst.max((skew - total_variance(&psi).unwrap()).abs());
        }
    }
    check(worst < 1e-9, format!("max |I(ρ) − V(ψ)| = {worst:e}"))
}

fn skew_nonnegativity() -> Outcome {
    let mut lowest = f64::INFINITY;
    let layouts = [layout(&[2, 2]), layout(&[2, 3]), layout(&[3, 3])];
    for k in 0..200u64 {
        let l = &layouts[(k % 3) as usize];
        let d = l.total_dim() as u64;
        let rank = 1 + (k / 3) % d;
        let rho = mixed_state::<f64>(l, rank as usize, 110_000 + k).unwrap();
        let s = psd_sqrt(&rho).unwrap();
        for (_, x) in lifted_basis::<f64>(l).unwrap() {
            lowest = lowest.min(commutator_skew(&s, &x).unwrap());
        }
    }
    check(
        lowest >= -1e-10,
        format!("min per-observable skew {lowest:e}"),
    )
}

fn multipartite_values() -> Outcome {
    let v = total_variance(&named_state::<f64>("ghz3").unwrap()).unwrap();
    let c = concurrence_variance(&named_state::<f64>("w3").unwrap())
        .unwrap()
        .value;
    let target = 8f64.sqrt() / 3.0;
    check(
        (v - 9.0).abs() < 1e-10 && (c - target).abs() < 1e-10,
        format!("V(GHZ3) = {v}, C(W3) = {c}"),
    )
}

fn exact_quantities(state: &QuantumState<f64>) -> Vec<f64> {
    let mut out = vec![total_skew_information(&state.to_density()).unwrap().total];
    if let Some(psi) = state.as_pure() {
        let cut = Cut::first_vs_rest(psi.layout()).unwrap();
        out.push(total_variance(psi).unwrap());
        out.push(concurrence_variance(psi).unwrap().value);
        out.push(concurrence_spectral(psi, &cut).unwrap().value);
    }
    out
}

fn determinism_and_round_trip() -> Outcome {
    let w = named_state::<f64>("w3").unwrap();
    let a = estimate_concurrence(&w, 5_000, 123, true).unwrap();
    let b = estimate_concurrence(&w, 5_000, 123, true).unwrap();
    let bitwise = a == b && a.estimate.to_bits() == b.estimate.to_bits();

    let dir = tempfile::tempdir().unwrap();
    let states: Vec<QuantumState<f64>> = vec![
        named_state::<f64>("ghz3").unwrap().into(),
        haar_state::<f64>(&layout(&[2, 3]), 4).into(),
        haar_state::<f64>(&layout(&[3, 3]), 5).into(),
        mixed_state::<f64>(&layout(&[2, 2]), 2, 6).unwrap().into(),
    ];
    let mut worst = 0.0f64;
    for (i, st) in states.iter().enumerate() {
        let path = dir.path().join(format!("state{i}.txt"));
        statefile::write(&path, st).unwrap();
        let back: QuantumState<f64> = statefile::read(&path).unwrap();
        for (x, y) in exact_quantities(st).iter().zip(exact_quantities(&back)) {
            worst = worst.max((x - y).abs());
        }
    }
    check(
        bitwise && worst < 1e-12,
        format!("sampled reports identical: {bitwise}; round-trip drift {worst:e}"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "two-qubit constants V_min = 4, V_max = 6",
            two_qubit_constants,
        ),
        ("two-qutrit constants (8, 32/3)", two_qutrit_constants),
        ("Casimir scalar 6·I on [2,2]", casimir_scalar),
        (
            "purity route ≡ variance route on 5 layouts",
            spectral_equals_variance,
        ),
        ("two-qubit amplitude form", two_qubit_amplitude_form),
        ("basis independence of total variance", basis_independence),
        (
            "operational estimator converges on Bell",
            operational_estimator,
        ),
        (
            "skew information = total variance on pure states",
            skew_coincidence,
        ),
        (
            "skew information nonnegative on mixed states",
            skew_nonnegativity,
        ),
        ("multipartite GHZ3 / W3 values", multipartite_values),
        (
            "determinism and state-file round trip",
            determinism_and_round_trip,
        ),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failures += 1;
        }
        println!(
            "[{status}] criterion {:>2}: {name} — {} ({:.2?})",
            i + 1,
            out.detail,
            start.elapsed()
        );
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
