//! Eigendecompositions for the two matrix classes this crate actually meets:
//! Hermitian operators (cyclic Jacobi) and unitary operators (simultaneous
//! diagonalization of the commuting Hermitian pair `(U+U†)/2`, `(U−U†)/2i`).
//!
//! Everything here is deterministic: fixed sweep order, fixed cluster
//! handling, fixed eigenvalue sort.

use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Eigenvalues ascending; `vectors` holds the matching orthonormal
/// eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub vectors: DenseOperator,
}

/// Unitary eigendecomposition. `eigenphases` are the `μ_k ∈ [0, 2π)` with
/// eigenvalue `e^{−iμ_k}` on the matching column of `vectors`.
#[derive(Clone, Debug)]
pub struct UnitaryEigen {
    pub eigenphases: Vec<f64>,
    pub vectors: DenseOperator,
}

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi for complex Hermitian matrices.
///
/// Panics if the input is visibly non-Hermitian; callers construct Hermitian
/// operators by design and this guards against programming errors only.
pub fn eigh(a: &DenseOperator) -> HermitianEigen {
    assert!(
        a.hermiticity_defect() <= 1e-8 * a.max_abs().max(1.0),
        "eigh requires a Hermitian matrix"
    );
    let n = a.dim();
    let mut m = a.clone();
    let mut v = DenseOperator::identity(n);
    let scale = m.max_abs().max(1.0);
    let stop = 1e-15 * scale;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q, stop);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| m[(k, k)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let vectors = DenseOperator::from_fn(n, |r, c| v[(r, order[c])]);
    HermitianEigen {
        eigenvalues,
        vectors,
    }
}

/// One two-sided Jacobi rotation annihilating `m[(p, q)]`.
fn rotate(m: &mut DenseOperator, v: &mut DenseOperator, p: usize, q: usize, stop: f64) {
    let b = m[(p, q)].norm();
    if b <= stop * 1e-3 {
        return;
    }
    let w = m[(p, q)] / b; // unit phase of the off-diagonal entry
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;
    let tau = (gamma - alpha) / (2.0 * b);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = m.dim();
    let wc = w.conj();
    // A ← A·W, then A ← W†·A, with W = [[c, s], [−w̄s, w̄c]] on (p, q).
    for i in 0..n {
        let aip = m[(i, p)];
        let aiq = m[(i, q)];
        m[(i, p)] = aip * c - aiq * (wc * s);
        m[(i, q)] = aip * s + aiq * (wc * c);
    }
    for j in 0..n {
        let apj = m[(p, j)];
        let aqj = m[(q, j)];
        m[(p, j)] = apj * c - aqj * (w * s);
        m[(q, j)] = apj * s + aqj * (w * c);
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c - viq * (wc * s);
        v[(i, q)] = vip * s + viq * (wc * c);
    }
}

/// `Σ_k w_k · v_k v_k†` for columns `v_k` of `vectors`.
pub fn assemble(weights: &[Complex64], vectors: &DenseOperator) -> DenseOperator {
    let n = vectors.dim();
    assert_eq!(weights.len(), n);
    DenseOperator::from_fn(n, |r, c| {
        (0..n)
            .map(|k| weights[k] * vectors[(r, k)] * vectors[(c, k)].conj())
            .sum()
    })
}

/// Applies a real spectral function to a Hermitian operator.
pub fn hermitian_function(h: &DenseOperator, f: impl Fn(f64) -> Complex64) -> DenseOperator {
    let eig = eigh(h);
    let weights: Vec<Complex64> = eig.eigenvalues.iter().map(|&x| f(x)).collect();
    assemble(&weights, &eig.vectors)
}

/// `exp(−i·factor·H)` for Hermitian `H`.
pub fn exp_neg_i_scaled(h: &DenseOperator, factor: f64) -> DenseOperator {
    hermitian_function(h, |x| Complex64::new(0.0, -factor * x).exp())
}

/// C-eigenvalues closer than this are treated as one cluster and split by
/// the sine part; see `eig_unitary`.
const CLUSTER_TOL: f64 = 1e-6;

/// Phases within this distance of 2π collapse to the 0 end of the branch.
const BRANCH_SNAP: f64 = 1e-9;

/// Eigendecomposition of a unitary operator.
///
/// A unitary is normal, so its cosine part `C = (U+U†)/2` and sine part
/// `S = (U−U†)/2i` are commuting Hermitians sharing its eigenvectors.
/// `C` is diagonalized first; clusters of near-equal cosines (which merge
/// the phases ±θ) are then split by diagonalizing `S` on the cluster.
pub fn eig_unitary(u: &DenseOperator, tol: f64) -> Result<UnitaryEigen> {
    let defect = u.unitarity_defect();
    if defect > tol {
        return Err(Error::NotUnitary { defect, tol });
    }
    let n = u.dim();
    let adj = u.adjoint();
    let cos_part = (u + &adj).scaled(Complex64::new(0.5, 0.0));
    let sin_part = (u - &adj).scaled(Complex64::new(0.0, -0.5));

    let base = eigh(&cos_part);
    let mut vectors = base.vectors;

    // Split each cluster of near-equal cosines on the sine part.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && base.eigenvalues[end] - base.eigenvalues[end - 1] <= CLUSTER_TOL {
            end += 1;
        }
        if end - start > 1 {
            let cols: Vec<Vec<Complex64>> = (start..end).map(|k| vectors.column(k)).collect();
            let m = cols.len();
            let mut restricted = DenseOperator::zeros(m);
            for a in 0..m {
                let s_col = sin_part.apply(&cols[a]);
                for b in 0..m {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for r in 0..n {
                        acc += cols[b][r].conj() * s_col[r];
                    }
                    restricted[(b, a)] = acc;
                }
            }
            let sub = eigh(&restricted);
            for (offset, kcol) in (start..end).enumerate() {
                for r in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (a, col) in cols.iter().enumerate() {
                        acc += col[r] * sub.vectors[(a, offset)];
                    }
                    vectors[(r, kcol)] = acc;
                }
            }
        }
        start = end;
    }

    // Rayleigh quotients on the refined vectors give (cos, sin) per column.
    let mut eigenphases = Vec::with_capacity(n);
    for k in 0..n {
        let col = vectors.column(k);
        let cv = cos_part.apply(&col);
        let sv = sin_part.apply(&col);
        let mut cos_val = 0.0;
        let mut sin_val = 0.0;
        for r in 0..n {
            cos_val += (col[r].conj() * cv[r]).re;
            sin_val += (col[r].conj() * sv[r]).re;
        }
        // Eigenvalue is cos + i·sin = e^{−iμ}.
        let mut mu = (-sin_val.atan2(cos_val)).rem_euclid(TAU);
        if TAU - mu < BRANCH_SNAP {
            mu = 0.0;
        }
        eigenphases.push(mu);
    }

    Ok(UnitaryEigen {
        eigenphases,
        vectors,
    })
}
