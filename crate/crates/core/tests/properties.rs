//! Property tests for the algebraic invariants: involutions, unitarity,
//! cycle-phase identities, sector conservation, projection round-trips,
//! and the leakage laws.

use num_complex::Complex64;
use ontospin_core::bitspace::SpinConfig;
use ontospin_core::dense::DenseOperator;
use ontospin_core::eigen;
use ontospin_core::ontology::{evolve_template, leakage, perturbed_exchange, StateVector};
use ontospin_core::pauli::{dense_to_pauli, exchange_as_pauli, PauliString, PauliSum};
use ontospin_core::permops::{is_ontological, GeneralizedPermutation, ONTOLOGY_TOL};
use ontospin_core::spectral::hamiltonian_from_permutation;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, TAU};

fn arb_bits(n: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..=1, n)
}

fn arb_pair(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=n, 1..=n).prop_filter("distinct spins", |(i, j)| i != j)
}

/// A random generalized permutation: a shuffle keyed by random integers plus
/// random phases.
fn arb_permutation(dim: usize) -> impl Strategy<Value = GeneralizedPermutation> {
    (
        proptest::collection::vec(any::<u32>(), dim),
        proptest::collection::vec(-7.0f64..7.0, dim),
    )
        .prop_map(move |(keys, phases)| {
            let mut order: Vec<usize> = (0..dim).collect();
            order.sort_by_key(|&k| (keys[k], k));
            GeneralizedPermutation::new(order, phases).expect("shuffle is a bijection")
        })
}

/// A random product of lifted exchanges on `n` spins.
fn arb_exchange_product(n: usize, max_len: usize) -> impl Strategy<Value = GeneralizedPermutation> {
    proptest::collection::vec(arb_pair(n), 1..=max_len).prop_map(move |pairs| {
        let mut acc = GeneralizedPermutation::identity(1 << n);
        for (i, j) in pairs {
            let p = GeneralizedPermutation::lift_exchange(i, j, n).unwrap();
            acc = acc.compose(&p).unwrap();
        }
        acc
    })
}

proptest! {
    #[test]
    fn exchange_is_involution(bits in arb_bits(4), (i, j) in arb_pair(4)) {
        let config = SpinConfig::new(bits).unwrap();
        let twice = config
            .apply_exchange(i, j).unwrap()
            .apply_exchange(i, j).unwrap();
        prop_assert_eq!(twice, config);
    }

    #[test]
    fn exchange_is_symmetric_in_its_pair(bits in arb_bits(5), (i, j) in arb_pair(5)) {
        let config = SpinConfig::new(bits).unwrap();
        prop_assert_eq!(
            config.apply_exchange(i, j).unwrap(),
            config.apply_exchange(j, i).unwrap()
        );
    }

    #[test]
    fn weight_survives_exchange_chains(
        bits in arb_bits(4),
        pairs in proptest::collection::vec(arb_pair(4), 0..8),
    ) {
        let mut config = SpinConfig::new(bits).unwrap();
        let weight = config.weight();
        for (i, j) in pairs {
            config = config.apply_exchange(i, j).unwrap();
            prop_assert_eq!(config.weight(), weight);
        }
    }

    #[test]
    fn generalized_permutations_are_unitary(p in (2usize..=12).prop_flat_map(arb_permutation)) {
        prop_assert!(p.dense().unitarity_defect() < 1e-12);
    }

    #[test]
    fn cycle_power_is_phase_on_cycle(p in (2usize..=8).prop_flat_map(arb_permutation)) {
        let dense = p.dense();
        for cycle in p.cycle_decomposition().cycles {
            let len = cycle.indices.len();
            let mut powered = DenseOperator::identity(p.dim());
            for _ in 0..len {
                powered = &powered * &dense;
            }
            let scale = Complex64::new(0.0, -cycle.total_phase).exp();
            for &a in &cycle.indices {
                for &b in &cycle.indices {
                    let expected = if a == b { scale } else { Complex64::new(0.0, 0.0) };
                    prop_assert!((powered[(a, b)] - expected).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn composition_is_associative(
        a in (4usize..=4).prop_flat_map(arb_permutation),
        b in (4usize..=4).prop_flat_map(arb_permutation),
        c in (4usize..=4).prop_flat_map(arb_permutation),
    ) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left.target(), right.target());
        for (x, y) in left.phase().iter().zip(right.phase().iter()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn exchange_products_preserve_weight_sectors(p in arb_exchange_product(4, 8)) {
        // Index-level conservation and exact dense zeros across sectors.
        let dense = p.dense();
        for j in 0..p.dim() {
            let (t, _) = p.apply_index(j).unwrap();
            prop_assert_eq!(t.count_ones(), j.count_ones());
        }
        for r in 0..p.dim() {
            for c in 0..p.dim() {
                if r.count_ones() != c.count_ones() {
                    prop_assert_eq!(dense[(r, c)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn ontology_test_roundtrips_generated_permutations(
        p in (2usize..=10).prop_flat_map(arb_permutation),
    ) {
        let outcome = is_ontological(&p.dense(), ONTOLOGY_TOL);
        prop_assert!(outcome.is_ontological());
        let q = outcome.permutation().unwrap();
        prop_assert_eq!(q.target(), p.target());
        for (a, b) in q.phase().iter().zip(p.phase().iter()) {
            let d = (a - b).rem_euclid(TAU);
            prop_assert!(d.min(TAU - d) < 1e-10);
        }
    }

    #[test]
    fn extraction_round_trip_and_oracle_agreement(p in arb_exchange_product(3, 6)) {
        let (h, _) = hamiltonian_from_permutation(&p, 1.0).unwrap();
        prop_assert!(h.evolution().max_abs_diff(&p.dense()) < 1e-10);
        let logged = ontospin_core::spectral::matrix_log_unitary(&p.dense(), 1.0).unwrap();
        prop_assert!(h.matrix.max_abs_diff(&logged.matrix) < 1e-8);
    }

    #[test]
    fn template_evolution_conserves_probability_multiset(
        p in (4usize..=8).prop_flat_map(arb_permutation),
        raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8),
    ) {
        let dim = p.dim();
        let mut amps: Vec<Complex64> = raw[..dim]
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        for a in &mut amps {
            *a /= norm;
        }
        let q = StateVector::new(amps).unwrap();
        let evolved = evolve_template(&q, &p).unwrap();
        prop_assert!((evolved.norm_sqr() - 1.0).abs() < 1e-12);
        let before = q.sorted_probabilities();
        let after = evolved.sorted_probabilities();
        for (x, y) in before.iter().zip(after.iter()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn permutation_evolution_never_leaks(p in arb_exchange_product(3, 6)) {
        let dense = p.dense();
        for source in 0..p.dim() {
            prop_assert_eq!(leakage(&dense, source).unwrap().leakage, 0.0);
        }
    }

    #[test]
    fn perturbed_exchange_leakage_law(epsilon in 0.0f64..0.5) {
        let u = perturbed_exchange(1, 2, 2, epsilon).unwrap();
        let cell = leakage(&u, 1).unwrap();
        let expected = (FRAC_PI_2 * epsilon).sin().powi(2);
        prop_assert!((cell.leakage - expected).abs() < 1e-12);
    }

    #[test]
    fn pauli_projection_roundtrip(
        codes in proptest::collection::vec((0usize..16, -2.0f64..2.0, -2.0f64..2.0), 1..6),
    ) {
        let mut sum = PauliSum::new(2);
        for (code, re, im) in codes {
            let letters = vec![
                ontospin_core::pauli::PauliLetter::ALL[code / 4],
                ontospin_core::pauli::PauliLetter::ALL[code % 4],
            ];
            sum.add_term(PauliString::new(letters).unwrap(), Complex64::new(re, im)).unwrap();
        }
        let back = dense_to_pauli(&sum.dense(), 2).unwrap();
        prop_assert_eq!(back.len(), sum.len());
        for (string, coeff) in sum.terms() {
            prop_assert!((back.coefficient(string) - coeff).norm() < 1e-12);
        }
    }

    #[test]
    fn hermitian_operators_have_real_pauli_coefficients(
        raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
    ) {
        let m = DenseOperator::from_fn(4, |r, c| {
            let (re, im) = raw[4 * r + c];
            Complex64::new(re, im)
        });
        let hermitian = (&m + &m.adjoint()).scaled(Complex64::new(0.5, 0.0));
        let sum = dense_to_pauli(&hermitian, 2).unwrap();
        for (_, coeff) in sum.terms() {
            prop_assert!(coeff.im.abs() < 1e-12);
        }
    }
}

#[test]
fn exchange_pauli_equals_lift_for_all_pairs_up_to_five_spins() {
    for n in 2..=5usize {
        for i in 1..=n {
            for j in (i + 1)..=n {
                let sum = exchange_as_pauli(i, j, n).unwrap();
                let lifted = GeneralizedPermutation::lift_exchange(i, j, n)
                    .unwrap()
                    .dense();
                assert!(
                    sum.dense().max_abs_diff(&lifted) < 1e-14,
                    "pair ({i},{j}) on {n} spins"
                );
            }
        }
    }
}

/// Frozen expansion of the closed-form three-spin Hamiltonian at T = 1,
/// derived independently by expanding the exchange products with the
/// Levi-Civita product identity:
/// `H = (2π/3)·(¾·1 − ¼·Σ σᵢ·σⱼ − (1/(4√3))·E)` where E is the chirality
/// sum XYZ + YZX + ZXY − XZY − ZYX − YXZ.
#[test]
fn closed_form_pauli_expansion_matches_analytic_fixture() {
    use std::f64::consts::PI;
    let h = ontospin_core::spectral::closed_form_three_spin_hamiltonian(1.0).unwrap();
    let sum = dense_to_pauli(&h.matrix, 3).unwrap();

    let two_site = [
        "XXI", "YYI", "ZZI", "XIX", "YIY", "ZIZ", "IXX", "IYY", "IZZ",
    ];
    let chirality_neg = ["XYZ", "YZX", "ZXY"];
    let chirality_pos = ["XZY", "ZYX", "YXZ"];
    assert_eq!(sum.len(), 1 + two_site.len() + 6);

    let coeff = |name: &str| sum.coefficient(&PauliString::parse(name).unwrap());
    let close = |a: Complex64, b: f64| (a - Complex64::new(b, 0.0)).norm() < 1e-12;

    assert!(close(coeff("III"), PI / 2.0));
    for name in two_site {
        assert!(close(coeff(name), -PI / 6.0), "{name}");
    }
    let chi = PI / (6.0 * 3f64.sqrt());
    for name in chirality_neg {
        assert!(close(coeff(name), -chi), "{name}");
    }
    for name in chirality_pos {
        assert!(close(coeff(name), chi), "{name}");
    }

    // no single-site terms at all
    for (string, _) in sum.terms() {
        assert_ne!(string.weight(), 1, "unexpected single-letter term {string}");
    }
    // Hermitian operator: all coefficients real
    for (_, c) in sum.terms() {
        assert!(c.im.abs() < 1e-12);
    }
}

#[test]
fn exponentials_of_hermitian_generators_are_unitary() {
    let h = ontospin_core::spectral::closed_form_three_spin_hamiltonian(1.0).unwrap();
    for &t in &[0.1, 1.0, 2.5] {
        let u = eigen::exp_neg_i_scaled(&h.matrix, t);
        assert!(u.unitarity_defect() < 1e-12);
    }
}

#[test]
fn leakage_onset_is_quadratic_with_half_pi_squared_prefactor() {
    let epsilon = 1e-3;
    let u = perturbed_exchange(1, 2, 2, epsilon).unwrap();
    let cell = leakage(&u, 1).unwrap();
    let prefactor = cell.leakage / (epsilon * epsilon);
    let expected = FRAC_PI_2 * FRAC_PI_2;
    assert!(
        (prefactor / expected - 1.0).abs() < 0.01,
        "prefactor {prefactor} vs {expected}"
    );
}

#[test]
fn adjacent_exchanges_do_not_commute_on_configurations() {
    // Composition order matters already at the level of the induced maps on
    // the eight three-spin configurations.
    let mut differs = false;
    for index in 0..8 {
        let config = SpinConfig::from_index(3, index).unwrap();
        let ab = config
            .apply_exchange(2, 3)
            .unwrap()
            .apply_exchange(1, 2)
            .unwrap();
        let ba = config
            .apply_exchange(1, 2)
            .unwrap()
            .apply_exchange(2, 3)
            .unwrap();
        if ab != ba {
            differs = true;
        }
    }
    assert!(differs);
}

#[test]
fn values_transfer_between_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<SpinConfig>();
    assert_send_sync::<GeneralizedPermutation>();
    assert_send_sync::<DenseOperator>();
    assert_send_sync::<StateVector>();
    assert_send_sync::<PauliSum>();
    assert_send_sync::<ontospin_core::spectral::Hamiltonian>();
    assert_send_sync::<ontospin_core::ontology::LeakageSweep>();

    let p = GeneralizedPermutation::lift_exchange(1, 2, 3).unwrap();
    let handle = std::thread::spawn(move || p.dense().unitarity_defect());
    assert!(handle.join().unwrap() < 1e-14);
}
