//! Hamiltonians for permutation dynamics, extracted two independent ways:
//! exactly from the cycle structure (per-cycle discrete Fourier vectors) and
//! generically from a dense eigendecomposition of the unitary. The module
//! also provides the closed-form three-spin chain Hamiltonian and its 3×3
//! cyclic block.
//!
//! Eigenphase branch: principal, `μ ∈ [0, 2π)` with eigenvalue `e^{−iμ}`
//! and energy `μ/T`. Any shift by 2π/T is physically equivalent but would
//! break byte-level comparisons, so it is fixed once here.

use crate::dense::DenseOperator;
use crate::eigen::{self, eig_unitary};
use crate::error::{Error, Result};
use crate::permops::GeneralizedPermutation;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Unitarity tolerance for the dense logarithm route.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Eigenvalues closer than this are reported as one degenerate level.
const MULTIPLICITY_TOL: f64 = 1e-9;

/// A Hermitian generator with its timescale: the source unitary is
/// `exp(−i·H·T)` (energies carry units 1/T, ħ = 1).
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub matrix: DenseOperator,
    pub timescale: f64,
}

impl Hamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `exp(−i·H·T)`.
    pub fn evolution(&self) -> DenseOperator {
        eigen::exp_neg_i_scaled(&self.matrix, self.timescale)
    }
}

/// Eigenvalues (order matching the eigenvector columns), the unitary of
/// eigenvectors, and the degenerate-level multiplicities.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseOperator,
    pub multiplicities: Vec<(f64, usize)>,
}

/// Groups a sorted copy of `values` into `(level, count)` pairs.
pub fn multiplicities(values: &[f64]) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((level, count)) if (v - *level).abs() <= MULTIPLICITY_TOL => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn check_timescale(timescale: f64) -> Result<()> {
    if timescale > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTimescale { value: timescale })
    }
}

/// Energy levels of a single n-cycle with the given per-step phases:
/// `(Σφ + 2πm)/(nT)` for m = 0..n−1, in ascending m order.
///
/// The values are returned literally (not reduced); reduce them mod 2π/T
/// when comparing against principal-branch eigenphases.
pub fn cogwheel_spectrum(cycle_len: usize, phases: &[f64], timescale: f64) -> Result<Vec<f64>> {
    check_timescale(timescale)?;
    if cycle_len == 0 || phases.len() != cycle_len {
        return Err(Error::PhaseCountMismatch {
            got: phases.len(),
            expected: cycle_len,
        });
    }
    let total: f64 = phases.iter().sum();
    Ok((0..cycle_len)
        .map(|m| (total + TAU * m as f64) / (cycle_len as f64 * timescale))
        .collect())
}

/// Exact Hamiltonian extraction from the cycle structure. Each cycle of
/// length L and total phase Φ contributes energies `(Φ mod 2π + 2πm)/(LT)`
/// with the cycle's discrete-Fourier eigenvectors; the assembled H satisfies
/// `exp(−iHT) = dense(p)` to round-off.
pub fn hamiltonian_from_permutation(
    p: &GeneralizedPermutation,
    timescale: f64,
) -> Result<(Hamiltonian, SpectralData)> {
    check_timescale(timescale)?;
    let eig = p.eigensystem();
    let eigenvalues: Vec<f64> = eig.eigenphases.iter().map(|&mu| mu / timescale).collect();
    let weights: Vec<Complex64> = eigenvalues
        .iter()
        .map(|&e| Complex64::new(e, 0.0))
        .collect();
    let matrix = eigen::assemble(&weights, &eig.vectors);
    let data = SpectralData {
        multiplicities: multiplicities(&eigenvalues),
        eigenvalues,
        eigenvectors: eig.vectors,
    };
    Ok((Hamiltonian { matrix, timescale }, data))
}

/// Energy levels of a generalized permutation straight from its cycle data,
/// principal branch, without materializing any dense operator. Matches the
/// eigenvalues of `hamiltonian_from_permutation` as a multiset.
pub fn permutation_spectrum(p: &GeneralizedPermutation, timescale: f64) -> Result<Vec<f64>> {
    check_timescale(timescale)?;
    let mut values = Vec::with_capacity(p.dim());
    for cycle in p.cycle_decomposition().cycles {
        let len = cycle.indices.len();
        let reduced = cycle.total_phase.rem_euclid(TAU);
        for m in 0..len {
            values.push((reduced + TAU * m as f64) / (len as f64 * timescale));
        }
    }
    Ok(values)
}

/// The L-point unitary discrete Fourier matrix, entries `ω^{jk}/√L` with
/// `ω = e^{−2πi/L}`.
pub fn dft_matrix(points: usize) -> DenseOperator {
    assert!(points >= 1, "dft_matrix needs at least one point");
    let norm = 1.0 / (points as f64).sqrt();
    DenseOperator::from_fn(points, |j, k| {
        let arg = -TAU * (j * k) as f64 / points as f64;
        Complex64::new(0.0, arg).exp() * norm
    })
}

/// The off-diagonal coupling of the three-site cyclic Hamiltonian:
/// `c = −1/2 + i/(2√3)`.
pub fn cyclic_coupling() -> Complex64 {
    Complex64::new(-0.5, 0.5 / 3f64.sqrt())
}

/// The 3×3 Hamiltonian generating one cyclic-shift block:
///
/// `(2π/3T)·[[1, c*, c], [c, 1, c*], [c*, c, 1]]` with `c = −1/2 + i/(2√3)`;
/// equivalently `D·diag(0, 1, 2)·(2π/3T)·D†` with `D = dft_matrix(3)`.
pub fn three_cycle_hamiltonian(timescale: f64) -> Result<DenseOperator> {
    check_timescale(timescale)?;
    let g = TAU / (3.0 * timescale);
    let one = Complex64::new(1.0, 0.0);
    let c = cyclic_coupling();
    let cc = c.conj();
    Ok(
        DenseOperator::from_entries(3, vec![one, cc, c, c, one, cc, cc, c, one])
            .scaled(Complex64::new(g, 0.0)),
    )
}

/// The closed-form Hamiltonian of the three-spin update `Û = P12·P23`:
///
/// `H = (2π/3T)·(1 + c*·P23P13 + c·P13P23)` as a dense 8×8 operator built
/// from lifted exchanges. It is Hermitian, its three summands commute, and
/// `exp(−iHT) = dense(P12·P23)`.
pub fn closed_form_three_spin_hamiltonian(timescale: f64) -> Result<Hamiltonian> {
    check_timescale(timescale)?;
    let p13 = GeneralizedPermutation::lift_exchange(1, 3, 3)?;
    let p23 = GeneralizedPermutation::lift_exchange(2, 3, 3)?;
    let forward = p13.compose(&p23)?.dense(); // carries |x,y,z⟩ to |y,z,x⟩
    let backward = p23.compose(&p13)?.dense(); // its square and adjoint
    let c = cyclic_coupling();
    let g = Complex64::new(TAU / (3.0 * timescale), 0.0);
    let matrix = (&(&DenseOperator::identity(8) + &backward.scaled(c.conj())) + &forward.scaled(c))
        .scaled(g);
    Ok(Hamiltonian { matrix, timescale })
}

/// Generic dense route: eigendecompose the unitary, take principal-branch
/// eigenphases, assemble `H = Σ (μ_k/T)·v_k v_k†`. Serves as the independent
/// oracle for `hamiltonian_from_permutation`.
pub fn matrix_log_unitary(u: &DenseOperator, timescale: f64) -> Result<Hamiltonian> {
    check_timescale(timescale)?;
    let eig = eig_unitary(u, UNITARITY_TOL)?;
    let weights: Vec<Complex64> = eig
        .eigenphases
        .iter()
        .map(|&mu| Complex64::new(mu / timescale, 0.0))
        .collect();
    let matrix = eigen::assemble(&weights, &eig.vectors);
    Ok(Hamiltonian { matrix, timescale })
}

/// Verifies, exactly on all eight three-spin configurations, that
/// `P13·P23` acts as the cyclic shift `|x,y,z⟩ ↦ |y,z,x⟩`, its square as
/// `|x,y,z⟩ ↦ |z,x,y⟩`, and its cube as the identity.
pub fn cyclic_shift_identity_check() -> bool {
    use crate::bitspace::SpinConfig;
    for index in 0..8usize {
        let config = SpinConfig::from_index(3, index).expect("valid index");
        let bits = config.bits();
        let (x, y, z) = (bits[0], bits[1], bits[2]);
        let shift = |c: &SpinConfig| {
            c.apply_exchange(2, 3)
                .and_then(|c| c.apply_exchange(1, 3))
                .expect("valid exchanges")
        };
        let once = shift(&config);
        let twice = shift(&once);
        let thrice = shift(&twice);
        if once.bits() != [y, z, x] || twice.bits() != [z, x, y] || thrice != config {
            return false;
        }
    }
    true
}
