//! Exact algebra of generalized permutation matrices: a permutation of basis
//! indices with one phase per column. These are precisely the unitaries that
//! carry basis states to basis states, so they represent deterministic
//! (superposition-free) evolution exactly.
//!
//! Matrix convention: column `j` carries to row `target[j]` with entry
//! `e^{−iθ_j}`, i.e. `M[target[j], j] = exp(−i·phase[j])`. Phases are stored
//! as raw radians and stay exactly additive under composition; they are
//! reduced mod 2π only at comparison boundaries.

use crate::bitspace::{check_pair, MAX_SPINS};
use crate::dense::DenseOperator;
use crate::eigen::UnitaryEigen;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Default tolerance for `is_ontological`: far above round-off at the
/// supported dimensions, far below any leakage of interest.
pub const ONTOLOGY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedPermutation {
    dim: usize,
    target: Vec<usize>,
    phase: Vec<f64>,
}

impl GeneralizedPermutation {
    /// `target` must be a bijection on `0..dim`; `phase` matches it per column.
    pub fn new(target: Vec<usize>, phase: Vec<f64>) -> Result<Self> {
        let dim = target.len();
        if phase.len() != dim {
            return Err(Error::InvalidPermutation(format!(
                "{} targets but {} phases",
                dim,
                phase.len()
            )));
        }
        let mut hit = vec![false; dim];
        for &t in &target {
            if t >= dim {
                return Err(Error::InvalidPermutation(format!(
                    "target {t} out of range for dimension {dim}"
                )));
            }
            if hit[t] {
                return Err(Error::InvalidPermutation(format!("row {t} used twice")));
            }
            hit[t] = true;
        }
        Ok(Self { dim, target, phase })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            target: (0..dim).collect(),
            phase: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    /// Where column `j` goes and with which phase.
    pub fn apply_index(&self, j: usize) -> Result<(usize, f64)> {
        if j >= self.dim {
            return Err(Error::BasisIndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        Ok((self.target[j], self.phase[j]))
    }

    /// The n-state single-cycle operator: state k carries to state k−1
    /// (cyclically) with phase `phases[k]` on column k ≥ 1 and `phases[n−1]`
    /// closing the cycle on column 0. For n = 3 this is the matrix with
    /// entries `M[0,1] = e^{−iφ1}`, `M[1,2] = e^{−iφ2}`, `M[2,0] = e^{−iφ3}`.
    pub fn single_cycle(phases: &[f64]) -> Result<Self> {
        let n = phases.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty cycle".into()));
        }
        let mut target = Vec::with_capacity(n);
        let mut phase = Vec::with_capacity(n);
        for j in 0..n {
            target.push((j + n - 1) % n);
            phase.push(if j == 0 { phases[n - 1] } else { phases[j - 1] });
        }
        Self::new(target, phase)
    }

    /// The 3×3 single-cycle operator with the conventional phase labels.
    pub fn three_cycle(phi1: f64, phi2: f64, phi3: f64) -> Self {
        Self::single_cycle(&[phi1, phi2, phi3]).expect("three phases")
    }

    /// Lifts the spin exchange (i, j) to the full 2^n basis: every
    /// configuration maps to the one with spins i and j swapped, phase zero.
    pub fn lift_exchange(i: usize, j: usize, n_spins: usize) -> Result<Self> {
        if n_spins == 0 || n_spins > MAX_SPINS {
            return Err(Error::UnsupportedSpinCount {
                n_spins,
                max: MAX_SPINS,
            });
        }
        check_pair(i, j, n_spins)?;
        let dim = 1usize << n_spins;
        let bit_i = n_spins - i;
        let bit_j = n_spins - j;
        let target = (0..dim)
            .map(|idx| {
                let bi = (idx >> bit_i) & 1;
                let bj = (idx >> bit_j) & 1;
                if bi == bj {
                    idx
                } else {
                    idx ^ ((1 << bit_i) | (1 << bit_j))
                }
            })
            .collect();
        Self::new(target, vec![0.0; dim])
    }

    /// Matrix product `self · other`; `other` acts first. Phases add along
    /// the composed targets.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut target = Vec::with_capacity(self.dim);
        let mut phase = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mid = other.target[j];
            target.push(self.target[mid]);
            phase.push(other.phase[j] + self.phase[mid]);
        }
        Self::new(target, phase)
    }

    pub fn inverse(&self) -> Self {
        let mut target = vec![0usize; self.dim];
        let mut phase = vec![0.0; self.dim];
        for j in 0..self.dim {
            target[self.target[j]] = j;
            phase[self.target[j]] = -self.phase[j];
        }
        Self {
            dim: self.dim,
            target,
            phase,
        }
    }

    pub fn pow(&self, exponent: usize) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..exponent {
            acc = acc.compose(self).expect("same dimension");
        }
        acc
    }

    pub fn dense(&self) -> DenseOperator {
        let mut m = DenseOperator::zeros(self.dim);
        for j in 0..self.dim {
            m[(self.target[j], j)] = Complex64::new(0.0, -self.phase[j]).exp();
        }
        m
    }

    pub fn cycle_decomposition(&self) -> CycleData {
        let mut visited = vec![false; self.dim];
        let mut cycles = Vec::new();
        for start in 0..self.dim {
            if visited[start] {
                continue;
            }
            let mut indices = Vec::new();
            let mut total_phase = 0.0;
            let mut j = start;
            loop {
                visited[j] = true;
                indices.push(j);
                total_phase += self.phase[j];
                j = self.target[j];
                if j == start {
                    break;
                }
            }
            cycles.push(Cycle {
                indices,
                total_phase,
            });
        }
        CycleData { cycles }
    }

    /// Exact eigendecomposition from the cycle structure.
    ///
    /// Each cycle of length L with accumulated phase Φ contributes the
    /// eigenphases `μ_k = (Φ mod 2π + 2πk)/L` for k = 0..L−1 (eigenvalue
    /// `e^{−iμ_k}`), with the L-point discrete-Fourier combinations of the
    /// cycle's basis states as eigenvectors.
    pub fn eigensystem(&self) -> UnitaryEigen {
        let cycles = self.cycle_decomposition();
        let mut eigenphases = Vec::with_capacity(self.dim);
        let mut vectors = DenseOperator::zeros(self.dim);
        let mut col = 0;
        for cycle in &cycles.cycles {
            let len = cycle.indices.len();
            let norm = 1.0 / (len as f64).sqrt();
            let reduced = cycle.total_phase.rem_euclid(TAU);
            // Phase accumulated along the walk up to (but not including) step m.
            let mut walked = Vec::with_capacity(len);
            let mut acc = 0.0;
            for &j in &cycle.indices {
                walked.push(acc);
                acc += self.phase[j];
            }
            for k in 0..len {
                let mu = (reduced + TAU * k as f64) / len as f64;
                eigenphases.push(mu);
                for (m, &j) in cycle.indices.iter().enumerate() {
                    let arg = mu * m as f64 - walked[m];
                    vectors[(j, col)] = Complex64::new(0.0, arg).exp() * norm;
                }
                col += 1;
            }
        }
        UnitaryEigen {
            eigenphases,
            vectors,
        }
    }
}

/// Disjoint cycles covering all indices, each with its accumulated phase.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleData {
    pub cycles: Vec<Cycle>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    /// Indices in traversal order starting from the smallest member.
    pub indices: Vec<usize>,
    /// Sum of the column phases along the cycle.
    pub total_phase: f64,
}

impl CycleData {
    /// Cycle lengths, ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles.iter().map(|c| c.indices.len()).collect();
        lengths.sort_unstable();
        lengths
    }
}

/// Outcome of the basis-preservation test.
#[derive(Clone, Debug)]
pub enum OntologyOutcome {
    /// The matrix is a generalized permutation within tolerance; the exact
    /// extracted form is returned.
    Ontological(GeneralizedPermutation),
    /// The worst-offending column and the magnitude of its second-largest
    /// entry.
    NotOntological {
        column: usize,
        second_magnitude: f64,
    },
}

impl OntologyOutcome {
    pub fn is_ontological(&self) -> bool {
        matches!(self, OntologyOutcome::Ontological(_))
    }

    pub fn permutation(&self) -> Option<&GeneralizedPermutation> {
        match self {
            OntologyOutcome::Ontological(p) => Some(p),
            OntologyOutcome::NotOntological { .. } => None,
        }
    }
}

/// Tests whether `m` carries every basis state to a single basis state:
/// each column must hold exactly one entry of modulus within `tol` of 1,
/// all other entries of modulus at most `tol`, and the induced row map must
/// be a bijection.
pub fn is_ontological(m: &DenseOperator, tol: f64) -> OntologyOutcome {
    let dim = m.dim();
    let mut target = Vec::with_capacity(dim);
    let mut phase = Vec::with_capacity(dim);
    let mut worst: Option<(usize, f64, f64)> = None; // (column, badness, second)
    for j in 0..dim {
        let mut top_row = 0;
        let mut top = -1.0f64;
        let mut second = 0.0f64;
        for r in 0..dim {
            let mag = m[(r, j)].norm();
            if mag > top {
                second = top.max(0.0);
                top = mag;
                top_row = r;
            } else if mag > second {
                second = mag;
            }
        }
        let badness = (top - 1.0).abs().max(second);
        if (top - 1.0).abs() > tol || second > tol {
            match worst {
                Some((_, b, _)) if b >= badness => {}
                _ => worst = Some((j, badness, second)),
            }
        }
        target.push(top_row);
        phase.push(-m[(top_row, j)].arg());
    }
    if let Some((column, _, second_magnitude)) = worst {
        return OntologyOutcome::NotOntological {
            column,
            second_magnitude,
        };
    }
    let mut hit = vec![false; dim];
    for (j, &t) in target.iter().enumerate() {
        if hit[t] {
            // Two unit columns land on one row: report the later column with
            // its second magnitude.
            let mut second = 0.0f64;
            let mut top = -1.0f64;
            for r in 0..dim {
                let mag = m[(r, j)].norm();
                if mag > top {
                    second = top.max(0.0);
                    top = mag;
                } else if mag > second {
                    second = mag;
                }
            }
            return OntologyOutcome::NotOntological {
                column: j,
                second_magnitude: second,
            };
        }
        hit[t] = true;
    }
    OntologyOutcome::Ontological(
        GeneralizedPermutation::new(target, phase).expect("bijection verified"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn exchange(i: usize, j: usize, n: usize) -> GeneralizedPermutation {
        GeneralizedPermutation::lift_exchange(i, j, n).unwrap()
    }

    #[test]
    fn three_cycle_matches_printed_entries() {
        let u = GeneralizedPermutation::three_cycle(0.1, 0.2, 0.3).dense();
        assert!((u[(0, 1)] - Complex64::new(0.0, -0.1).exp()).norm() < 1e-15);
        assert!((u[(1, 2)] - Complex64::new(0.0, -0.2).exp()).norm() < 1e-15);
        assert!((u[(2, 0)] - Complex64::new(0.0, -0.3).exp()).norm() < 1e-15);
        assert_eq!(u[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn three_cycle_cube_is_total_phase_times_identity() {
        let p = GeneralizedPermutation::three_cycle(0.3, 0.5, 0.7);
        let cube = p.pow(3).dense();
        let expected = DenseOperator::identity(3).scaled(Complex64::new(0.0, -1.5).exp());
        assert!(cube.max_abs_diff(&expected) < 1e-14);

        let plain = GeneralizedPermutation::three_cycle(0.0, 0.0, 0.0);
        assert!(
            plain
                .pow(3)
                .dense()
                .max_abs_diff(&DenseOperator::identity(3))
                < 1e-15
        );
    }

    #[test]
    fn three_cycle_sends_second_state_to_first() {
        let u = GeneralizedPermutation::three_cycle(0.0, 0.0, 0.0).dense();
        let v = u.apply(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(v, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn lift_exchange_two_spins_dense_form() {
        let m = exchange(1, 2, 2).dense();
        let expected = DenseOperator::from_entries(
            4,
            vec![
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
            ],
        );
        assert_eq!(m.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn lift_exchange_is_involution() {
        let p = exchange(1, 2, 3);
        let square = p.compose(&p).unwrap();
        assert_eq!(square, GeneralizedPermutation::identity(8));
    }

    #[test]
    fn adjacent_exchanges_do_not_commute() {
        let p12 = exchange(1, 2, 3);
        let p23 = exchange(2, 3, 3);
        let ab = p12.compose(&p23).unwrap();
        let ba = p23.compose(&p12).unwrap();
        assert_ne!(ab.target(), ba.target());
    }

    #[test]
    fn disjoint_exchanges_commute() {
        let p12 = exchange(1, 2, 4);
        let p34 = exchange(3, 4, 4);
        assert_eq!(
            p12.compose(&p34).unwrap().target(),
            p34.compose(&p12).unwrap().target()
        );
    }

    #[test]
    fn compose_with_identity_and_inverse() {
        let p = GeneralizedPermutation::three_cycle(0.3, 0.5, 0.7);
        let id = GeneralizedPermutation::identity(3);
        assert_eq!(id.compose(&p).unwrap(), p);
        let round = p.compose(&p.inverse()).unwrap();
        assert_eq!(round.target(), id.target());
        for &theta in round.phase() {
            assert!(theta.rem_euclid(TAU).min(TAU - theta.rem_euclid(TAU)) < 1e-15);
        }
    }

    #[test]
    fn compose_rejects_dimension_mismatch() {
        let a = GeneralizedPermutation::identity(4);
        let b = GeneralizedPermutation::identity(8);
        assert!(matches!(
            a.compose(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cycle_decomposition_identity() {
        let cd = GeneralizedPermutation::identity(4).cycle_decomposition();
        assert_eq!(cd.cycle_type(), vec![1, 1, 1, 1]);
        for cyc in &cd.cycles {
            assert_eq!(cyc.total_phase, 0.0);
        }
    }

    #[test]
    fn cycle_decomposition_of_update_operator() {
        // P12·P23 on three spins: two fixed points and two 3-cycles.
        let u = exchange(1, 2, 3).compose(&exchange(2, 3, 3)).unwrap();
        let cd = u.cycle_decomposition();
        assert_eq!(cd.cycle_type(), vec![1, 1, 3, 3]);
    }

    #[test]
    fn cycle_phase_sums_phases() {
        let cd = GeneralizedPermutation::three_cycle(0.3, 0.5, 0.7).cycle_decomposition();
        assert_eq!(cd.cycles.len(), 1);
        assert!((cd.cycles[0].total_phase - 1.5).abs() < 1e-15);
    }

    #[test]
    fn power_restricted_to_cycle_is_phase_times_identity() {
        let p = GeneralizedPermutation::new(vec![1, 2, 0, 4, 3], vec![0.2, -0.4, 1.1, 0.9, 0.7])
            .unwrap();
        for cycle in p.cycle_decomposition().cycles {
            let len = cycle.indices.len();
            let powered = p.pow(len).dense();
            let scale = Complex64::new(0.0, -cycle.total_phase).exp();
            for &j in &cycle.indices {
                assert!((powered[(j, j)] - scale).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn eigensystem_reconstructs_operator() {
        let p = GeneralizedPermutation::new(
            vec![2, 0, 1, 4, 3, 5],
            vec![0.2, -0.4, 1.1, 0.9, 0.7, -2.0],
        )
        .unwrap();
        let eig = p.eigensystem();
        assert!(eig.vectors.unitarity_defect() < 1e-13);
        let weights: Vec<Complex64> = eig
            .eigenphases
            .iter()
            .map(|&mu| Complex64::new(0.0, -mu).exp())
            .collect();
        let back = crate::eigen::assemble(&weights, &eig.vectors);
        assert!(back.max_abs_diff(&p.dense()) < 1e-13);
        for &mu in &eig.eigenphases {
            assert!((0.0..TAU).contains(&mu));
        }
    }

    #[test]
    fn dense_of_permutation_is_ontological() {
        let u = exchange(1, 2, 3).compose(&exchange(2, 3, 3)).unwrap();
        let outcome = is_ontological(&u.dense(), ONTOLOGY_TOL);
        assert!(outcome.is_ontological());
        assert_eq!(outcome.permutation().unwrap().target(), u.target());
    }

    #[test]
    fn hadamard_is_not_ontological() {
        let s = 1.0 / 2.0f64.sqrt();
        let h = DenseOperator::from_entries(2, vec![c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
        match is_ontological(&h, ONTOLOGY_TOL) {
            OntologyOutcome::NotOntological {
                second_magnitude, ..
            } => assert!((second_magnitude - s).abs() < 1e-12),
            OntologyOutcome::Ontological(_) => panic!("balanced superposition accepted"),
        }
    }

    #[test]
    fn extraction_roundtrip_preserves_phases_mod_tau() {
        let p = GeneralizedPermutation::new(vec![2, 0, 1], vec![7.0, -3.0, 0.5]).unwrap();
        let outcome = is_ontological(&p.dense(), 1e-12);
        let q = outcome.permutation().unwrap();
        assert_eq!(q.target(), p.target());
        for (a, b) in q.phase().iter().zip(p.phase().iter()) {
            let d = (a - b).rem_euclid(TAU);
            assert!(d.min(TAU - d) < 1e-12);
        }
    }

    #[test]
    fn rejects_malformed_permutations() {
        assert!(GeneralizedPermutation::new(vec![0, 0], vec![0.0, 0.0]).is_err());
        assert!(GeneralizedPermutation::new(vec![0, 5], vec![0.0, 0.0]).is_err());
        assert!(GeneralizedPermutation::new(vec![0, 1], vec![0.0]).is_err());
        assert!(GeneralizedPermutation::lift_exchange(1, 1, 2).is_err());
        assert!(GeneralizedPermutation::lift_exchange(1, 4, 3).is_err());
    }
}
