//! Executable checks of the basis-preservation property: permutation
//! evolution never creates superpositions, while perturbed couplings do.
//! Leakage — one minus the largest basis probability after evolving a basis
//! state — quantifies the failure as a function of the perturbation ε.

use crate::dense::DenseOperator;
use crate::eigen;
use crate::error::{Error, Result};
use crate::permops::GeneralizedPermutation;
use crate::spectral::{closed_form_three_spin_hamiltonian, UNITARITY_TOL};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

/// Normalization tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-12;

/// A normalized amplitude vector over the configuration basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let defect = (norm_sqr - 1.0).abs();
        if defect > NORM_TOL {
            return Err(Error::NotNormalized { defect });
        }
        Ok(Self { amplitudes })
    }

    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability weights |amplitude|², sorted descending. The multiset is
    /// invariant under any generalized permutation.
    pub fn sorted_probabilities(&self) -> Vec<f64> {
        let mut probs: Vec<f64> = self.amplitudes.iter().map(|a| a.norm_sqr()).collect();
        probs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        probs
    }
}

/// Walks a basis state along the permutation for the given number of steps.
/// The trajectory stays basis-to-basis; the returned phase is the sum of the
/// column phases along the path.
pub fn evolve_ontological(
    state: usize,
    p: &GeneralizedPermutation,
    steps: usize,
) -> Result<(usize, f64)> {
    let mut index = state;
    let mut phase = 0.0;
    if state >= p.dim() {
        return Err(Error::BasisIndexOutOfRange {
            index: state,
            dim: p.dim(),
        });
    }
    for _ in 0..steps {
        let (next, theta) = p.apply_index(index)?;
        index = next;
        phase += theta;
    }
    Ok((index, phase))
}

/// Carries amplitudes along the permutation: the amplitude multiset is
/// unchanged, only the labels (and phases) move.
pub fn evolve_template(q: &StateVector, p: &GeneralizedPermutation) -> Result<StateVector> {
    if q.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            left: q.dim(),
            right: p.dim(),
        });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); q.dim()];
    for (j, &amp) in q.amplitudes.iter().enumerate() {
        let (row, theta) = p.apply_index(j)?;
        amplitudes[row] = Complex64::new(0.0, -theta).exp() * amp;
    }
    Ok(StateVector { amplitudes })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange { value: epsilon })
    }
}

/// `i·exp(−i(π/2)(1+ε)·P_ij)`, in closed form
/// `cos(πε/2)·P_ij − i·sin(πε/2)·1` (from `(P_ij)² = 1`). At ε = 0 this is
/// the exchange itself; for ε ≠ 0 it mixes in the identity and leaks.
pub fn perturbed_exchange(
    i: usize,
    j: usize,
    n_spins: usize,
    epsilon: f64,
) -> Result<DenseOperator> {
    check_epsilon(epsilon)?;
    let p = GeneralizedPermutation::lift_exchange(i, j, n_spins)?.dense();
    let half_angle = FRAC_PI_2 * epsilon;
    let identity = DenseOperator::identity(p.dim());
    Ok(&p.scaled(Complex64::new(half_angle.cos(), 0.0))
        + &identity.scaled(Complex64::new(0.0, -half_angle.sin())))
}

/// `exp(−i·H·(1+ε)·T)` for the closed-form three-spin Hamiltonian. At ε = 0
/// this is exactly the update operator; for ε ≠ 0 it is unitary but no
/// longer basis-preserving.
pub fn perturbed_hamiltonian_evolution(epsilon: f64, timescale: f64) -> Result<DenseOperator> {
    check_epsilon(epsilon)?;
    let h = closed_form_three_spin_hamiltonian(timescale)?;
    Ok(eigen::exp_neg_i_scaled(
        &h.matrix,
        (1.0 + epsilon) * timescale,
    ))
}

/// Leakage of one evolved basis state: the dominant output state, its
/// probability, and `1 − dominant_prob`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Leakage {
    pub source_state: usize,
    pub dominant_state: usize,
    pub dominant_prob: f64,
    pub leakage: f64,
}

/// Applies `u` to the source basis vector and measures how far the result is
/// from a single basis state. Zero exactly on generalized permutations.
pub fn leakage(u: &DenseOperator, source: usize) -> Result<Leakage> {
    let defect = u.unitarity_defect();
    if defect > UNITARITY_TOL {
        return Err(Error::NotUnitary {
            defect,
            tol: UNITARITY_TOL,
        });
    }
    if source >= u.dim() {
        return Err(Error::BasisIndexOutOfRange {
            index: source,
            dim: u.dim(),
        });
    }
    let mut dominant_state = 0;
    let mut dominant_prob = -1.0f64;
    for k in 0..u.dim() {
        let prob = u[(k, source)].norm_sqr();
        if prob > dominant_prob {
            dominant_prob = prob;
            dominant_state = k;
        }
    }
    Ok(Leakage {
        source_state: source,
        dominant_state,
        dominant_prob,
        leakage: (1.0 - dominant_prob).max(0.0),
    })
}

/// Which perturbation produced a sweep row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    PerturbedExchange { i: usize, j: usize },
    PerturbedHamiltonian,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::PerturbedExchange { i, j } => write!(f, "exchange({i},{j})"),
            GeneratorKind::PerturbedHamiltonian => write!(f, "hamiltonian"),
        }
    }
}

/// A family of unitaries indexed by the perturbation strength ε.
pub trait LeakageGenerator {
    fn name(&self) -> &'static str;
    fn kind(&self) -> GeneratorKind;
    fn dim(&self) -> usize;
    fn operator(&self, epsilon: f64) -> Result<DenseOperator>;
}

/// One sweep row: a `Leakage` measurement tagged with its ε and generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeakageReport {
    pub epsilon: f64,
    pub generator: GeneratorKind,
    pub source_state: usize,
    pub dominant_state: usize,
    pub dominant_prob: f64,
    pub leakage: f64,
}

#[derive(Clone, Debug)]
pub struct LeakageSweep {
    pub n_spins: usize,
    pub generator: GeneratorKind,
    pub reports: Vec<LeakageReport>,
    /// Log-log slope of mean leakage over the two smallest positive ε with
    /// nonzero leakage; `None` when fewer than two such points exist.
    pub fitted_slope: Option<f64>,
}

/// One report per (ε, source) pair, in input order regardless of how the
/// cells are computed.
pub fn leakage_sweep(
    generator: &dyn LeakageGenerator,
    epsilons: &[f64],
    sources: &[usize],
) -> Result<LeakageSweep> {
    if epsilons.is_empty() {
        return Err(Error::EmptyEpsilonList);
    }
    let dim = generator.dim();
    let n_spins = dim.trailing_zeros() as usize;
    let mut reports = Vec::with_capacity(epsilons.len() * sources.len());
    let mut means: Vec<(f64, f64)> = Vec::new();
    for &epsilon in epsilons {
        let u = generator.operator(epsilon)?;
        let mut total = 0.0;
        for &source in sources {
            let cell = leakage(&u, source)?;
            total += cell.leakage;
            reports.push(LeakageReport {
                epsilon,
                generator: generator.kind(),
                source_state: cell.source_state,
                dominant_state: cell.dominant_state,
                dominant_prob: cell.dominant_prob,
                leakage: cell.leakage,
            });
        }
        if !sources.is_empty() {
            means.push((epsilon, total / sources.len() as f64));
        }
    }
    let fitted_slope = fit_slope(&means);
    Ok(LeakageSweep {
        n_spins,
        generator: generator.kind(),
        reports,
        fitted_slope,
    })
}

fn fit_slope(means: &[(f64, f64)]) -> Option<f64> {
    let mut points: Vec<(f64, f64)> = means
        .iter()
        .copied()
        .filter(|&(e, m)| e > 0.0 && m > 0.0)
        .collect();
    points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    points.dedup_by(|a, b| a.0 == b.0);
    if points.len() < 2 {
        return None;
    }
    let (e0, m0) = points[0];
    let (e1, m1) = points[1];
    Some((m1 / m0).ln() / (e1 / e0).ln())
}
