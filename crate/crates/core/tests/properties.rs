mod common;

use common::{max_abs, random_orthogonal, random_unitary, BIPARTITE_LAYOUTS};
use entangle::linalg::{self, CMatrix};
use entangle::{
    casimir_constant, commutator_skew, concurrence_spectral, concurrence_variance, haar_state,
    lift_observable, lifted_basis, mixed_state, observable_basis, product_state, psd_sqrt,
    total_skew_information, total_variance, total_variance_in, variance_bounds, Cut, DensityMatrix,
    PartyLayout,
};
use proptest::prelude::*;

fn layout(dims: &[usize]) -> PartyLayout {
    PartyLayout::new(dims.to_vec()).unwrap()
}

fn small_layout() -> impl Strategy<Value = PartyLayout> {
    prop_oneof![
        prop::collection::vec(2usize..=4, 2..=2),
        prop::collection::vec(2usize..=3, 3..=3),
    ]
    .prop_map(|d| PartyLayout::new(d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bridge_identity_holds(dims in prop::collection::vec(2usize..=5, 2..=2), seed in any::<u64>()) {
        let l = PartyLayout::new(dims.clone()).unwrap();
        let psi = haar_state::<f64>(&l, seed);
        let purity = psi.reduce(&[0]).unwrap().purity();
        let closed = 2.0 * dims[0] as f64 + 2.0 * dims[1] as f64 - 4.0 * purity;
        prop_assert!((total_variance(&psi).unwrap() - closed).abs() < 1e-9);
    }

    #[test]
    fn variance_within_bounds_and_concurrence_in_unit_interval(l in small_layout(), seed in any::<u64>()) {
        let psi = haar_state::<f64>(&l, seed);
        let (lo, hi) = variance_bounds::<f64>(&l);
        let v = total_variance(&psi).unwrap();
        prop_assert!(v >= lo - 1e-9 && v <= hi + 1e-9);
        let rep = concurrence_variance(&psi).unwrap();
        prop_assert!((0.0..=1.0).contains(&rep.value));
        prop_assert!(rep.consistency_gap() < 1e-9);
        let cut = Cut::first_vs_rest(&l).unwrap();
        let spec = concurrence_spectral(&psi, &cut).unwrap();
        prop_assert!((0.0..=1.0).contains(&spec.value));
        prop_assert!(spec.consistency_gap() < 1e-9);
    }

    #[test]
    fn product_states_sit_at_vmin(l in small_layout(), seed in any::<u64>()) {
        let psi = product_state::<f64>(&l, seed);
        let (lo, _) = variance_bounds::<f64>(&l);
        prop_assert!((total_variance(&psi).unwrap() - lo).abs() < 1e-9);
        let cut = Cut::first_vs_rest(&l).unwrap();
        let c = concurrence_spectral(&psi, &cut).unwrap();
        prop_assert!(c.value < 1e-10);
        prop_assert!((c.total_variance - c.v_min).abs() < 1e-9);
    }

    #[test]
    fn zero_concurrence_iff_pure_reduced_state(seed in any::<u64>(), entangled in any::<bool>()) {
        let l = layout(&[3, 3]);
        let psi = if entangled { haar_state::<f64>(&l, seed) } else { product_state::<f64>(&l, seed) };
        let purity = psi.reduce(&[0]).unwrap().purity();
        let c = concurrence_variance(&psi).unwrap().value;
        prop_assert_eq!(c < 1e-6, (purity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mixed_state_skew_nonnegative(l in small_layout(), seed in any::<u64>(), rank_frac in 0.0f64..1.0) {
        let d = l.total_dim();
        let rank = 1 + ((d as f64 - 1.0) * rank_frac) as usize;
        let rho = mixed_state::<f64>(&l, rank, seed).unwrap();
        let s = psd_sqrt(&rho).unwrap();
        prop_assert!(linalg::max_abs_diff(&(&s * &s), rho.entries()) < 1e-9);
        for (_, x) in lifted_basis::<f64>(&l).unwrap() {
            prop_assert!(commutator_skew(&s, &x).unwrap() >= -1e-10);
        }
    }
}

#[test]
fn spectral_and_variance_routes_agree_on_haar_states() {
    for dims in BIPARTITE_LAYOUTS {
        let l = layout(&dims);
        let cut = Cut::first_vs_rest(&l).unwrap();
        for seed in 0..200 {
            let psi = haar_state::<f64>(&l, seed);
            let a = concurrence_spectral(&psi, &cut).unwrap().value;
            let b = concurrence_variance(&psi).unwrap().value;
            assert!((a - b).abs() < 1e-10, "{dims:?} seed {seed}: {a} vs {b}");
        }
    }
}

#[test]
fn cut_side_does_not_matter() {
    let l = layout(&[2, 3, 2]);
    for seed in 0..30 {
        let psi = haar_state::<f64>(&l, seed);
        let a = concurrence_spectral(&psi, &Cut::new(&l, &[1]).unwrap()).unwrap();
        let b = concurrence_spectral(&psi, &Cut::new(&l, &[0, 2]).unwrap()).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
    }
}

#[test]
fn casimir_scalarity_up_to_dim_16() {
    for dims in [
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![2, 4],
        vec![4, 4],
        vec![2, 2, 2],
        vec![2, 2, 3],
        vec![2, 2, 2, 2],
        vec![3, 5],
    ] {
        let l = layout(&dims);
        let d = l.total_dim();
        let sum = lifted_basis::<f64>(&l)
            .unwrap()
            .iter()
            .fold(CMatrix::zeros(d, d), |acc, (_, x)| acc + x * x);
        let c = casimir_constant::<f64>(&l);
        let dev = max_abs(&(sum - linalg::identity::<f64>(d).map(|z| z * c)));
        assert!(dev < 1e-12, "{dims:?}: {dev}");
    }
}

#[test]
fn three_qubit_vmin_over_random_products() {
    let l = layout(&[2, 2, 2]);
    let (lo, hi) = variance_bounds::<f64>(&l);
    assert_eq!((lo, hi), (6.0, 9.0));
    for seed in 0..1000 {
        let v = total_variance(&product_state::<f64>(&l, seed)).unwrap();
        assert!((v - 6.0).abs() < 1e-9);
    }
}

#[test]
fn total_variance_is_basis_independent() {
    for dims in [[2usize, 2], [3, 3], [2, 3]] {
        let l = layout(&dims);
        for trial in 0..20u64 {
            let bases: Vec<_> = dims
                .iter()
                .enumerate()
                .map(|(k, &n)| {
                    let r = random_orthogonal(n * n - 1, trial * 7 + k as u64);
                    observable_basis::<f64>(n).unwrap().recombine(&r).unwrap()
                })
                .collect();
            for seed in 0..10 {
                let psi = haar_state::<f64>(&l, 1000 + seed);
                let a = total_variance(&psi).unwrap();
                let b = total_variance_in(&psi, &bases).unwrap();
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn recombined_basis_keeps_invariants() {
    let r = random_orthogonal(8, 3);
    let b = observable_basis::<f64>(3).unwrap().recombine(&r).unwrap();
    for (i, xi) in b.matrices().iter().enumerate() {
        assert!(linalg::hermitian_deviation(xi) < 1e-12);
        assert!(linalg::trace(xi).norm() < 1e-12);
        for (j, xj) in b.matrices().iter().enumerate() {
            let want = if i == j { 2.0 } else { 0.0 };
            assert!((linalg::trace(&(xi * xj)).re - want).abs() < 1e-12);
        }
    }
}

#[test]
fn skew_pure_state_coincidence() {
    for dims in [[2usize, 2], [3, 3]] {
        let l = layout(&dims);
        for seed in 0..100 {
            let psi = haar_state::<f64>(&l, seed);
            let rep = total_skew_information(&psi.to_density()).unwrap();
            let v = total_variance(&psi).unwrap();
            assert!((rep.total - v).abs() < 1e-9);
            let sum: f64 = rep.per_observable.iter().map(|(_, s)| s).sum();
            assert!((rep.total - sum).abs() < 1e-12);
        }
    }
}

#[test]
fn skew_is_covariant_under_local_unitaries() {
    let l = layout(&[2, 3]);
    for seed in 0..20 {
        let rho = mixed_state::<f64>(&l, 3, seed).unwrap();
        let u = linalg::kron(&random_unitary(2, seed), &random_unitary(3, seed + 100));
        let rotated = DensityMatrix::new(l.clone(), &u * rho.entries() * u.adjoint()).unwrap();
        let s = psd_sqrt(&rho).unwrap();
        let s_rot = psd_sqrt(&rotated).unwrap();
        let mut plain = 0.0;
        let mut conj = 0.0;
        for party in 0..2 {
            for x in observable_basis::<f64>(l.dim(party)).unwrap().matrices() {
                let lifted = lift_observable(x, &l, party).unwrap();
                plain += commutator_skew(&s, &lifted).unwrap();
                conj += commutator_skew(&s_rot, &(&u * &lifted * u.adjoint())).unwrap();
            }
        }
        assert!((plain - conj).abs() < 1e-9);
        // The basis sum is itself invariant under local rotations.
        let total_rot = total_skew_information(&rotated).unwrap().total;
        assert!((total_rot - plain).abs() < 1e-9);
    }
}

#[test]
fn skew_is_convex_on_pure_mixtures() {
    let l = layout(&[2, 2]);
    for seed in 0..30 {
        let a = haar_state::<f64>(&l, 2 * seed);
        let b = haar_state::<f64>(&l, 2 * seed + 1);
        let ia = total_skew_information(&a.to_density()).unwrap().total;
        let ib = total_skew_information(&b.to_density()).unwrap().total;
        for t in [0.25, 0.5, 0.75] {
            let mix = DensityMatrix::mixture(&[(t, &a), (1.0 - t, &b)]).unwrap();
            let im = total_skew_information(&mix).unwrap().total;
            assert!(im <= t * ia + (1.0 - t) * ib + 1e-9);
        }
    }
}

#[test]
fn single_precision_instantiation() {
    let l = layout(&[2, 2]);
    for seed in 0..50 {
        let psi = haar_state::<f32>(&l, seed);
        let cut = Cut::first_vs_rest(&l).unwrap();
        let a = concurrence_spectral(&psi, &cut).unwrap().value;
        let b = concurrence_variance(&psi).unwrap().value;
        assert!((a - b).abs() < 1e-3, "{a} vs {b}");
    }
    let bell = entangle::named_state::<f32>("bell_phi_plus").unwrap();
    assert!((total_variance(&bell).unwrap() - 6.0).abs() < 1e-5);
}
