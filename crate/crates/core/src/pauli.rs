//! Pauli-string algebra: exchange operators and Hamiltonians in qubit
//! language, plus projection of arbitrary dense operators onto the Pauli
//! basis.
//!
//! Conventions: X = [[0,1],[1,0]], Y = [[0,−i],[i,0]], Z = [[1,0],[0,−1]],
//! with ↑ the +1 eigenstate (1,0)ᵗ of Z. Site 1 is the leftmost Kronecker
//! factor, matching the lexicographic basis indexing of `bitspace`.

use crate::bitspace::check_pair;
use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Coefficients below this are pruned when sums are normalized.
pub const COEFF_PRUNE_TOL: f64 = 1e-14;

/// Exhaustive-projection cap: 4^n strings is fine at desk scale only.
pub const PROJECTION_MAX_SPINS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [
        PauliLetter::I,
        PauliLetter::X,
        PauliLetter::Y,
        PauliLetter::Z,
    ];

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(ch: char) -> Result<Self> {
        match ch {
            'I' => Ok(PauliLetter::I),
            'X' => Ok(PauliLetter::X),
            'Y' => Ok(PauliLetter::Y),
            'Z' => Ok(PauliLetter::Z),
            _ => Err(Error::ConfigParse(ch.to_string())),
        }
    }

    /// Action on a single bit: the image bit and the scalar factor, i.e.
    /// `L|b⟩ = factor·|image⟩`.
    fn action(self, bit: u8) -> (u8, Complex64) {
        match self {
            PauliLetter::I => (bit, Complex64::new(1.0, 0.0)),
            PauliLetter::X => (1 - bit, Complex64::new(1.0, 0.0)),
            PauliLetter::Y => (
                1 - bit,
                if bit == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                },
            ),
            PauliLetter::Z => (
                bit,
                if bit == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                },
            ),
        }
    }
}

/// A tensor product of single-site Pauli letters, site 1 leftmost.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(letters: Vec<PauliLetter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::UnsupportedSpinCount {
                n_spins: 0,
                max: crate::bitspace::MAX_SPINS,
            });
        }
        Ok(Self { letters })
    }

    pub fn identity(n_sites: usize) -> Result<Self> {
        Self::new(vec![PauliLetter::I; n_sites])
    }

    /// Identity everywhere except the given (site, letter) pairs; sites are
    /// 1-based.
    pub fn with_letters(n_sites: usize, placed: &[(usize, PauliLetter)]) -> Result<Self> {
        let mut letters = vec![PauliLetter::I; n_sites];
        for &(site, letter) in placed {
            if site == 0 || site > n_sites {
                return Err(Error::SpinIndexOutOfRange {
                    index: site,
                    n_spins: n_sites,
                });
            }
            letters[site - 1] = letter;
        }
        Self::new(letters)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(PauliLetter::from_char)
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    pub fn n_sites(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters
            .iter()
            .filter(|&&l| l != PauliLetter::I)
            .count()
    }

    /// Action on a basis index: `S|col⟩ = factor·|row⟩`.
    pub fn action_on_basis(&self, col: usize) -> (usize, Complex64) {
        let n = self.n_sites();
        let mut row = 0usize;
        let mut factor = Complex64::new(1.0, 0.0);
        for (site, &letter) in self.letters.iter().enumerate() {
            let bit = ((col >> (n - 1 - site)) & 1) as u8;
            let (image, f) = letter.action(bit);
            row = (row << 1) | image as usize;
            factor *= f;
        }
        (row, factor)
    }

    pub fn dense(&self) -> DenseOperator {
        let dim = 1usize << self.n_sites();
        let mut m = DenseOperator::zeros(dim);
        for col in 0..dim {
            let (row, factor) = self.action_on_basis(col);
            m[(row, col)] = factor;
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// A linear combination of Pauli strings with complex coefficients. Terms
/// are kept in lexicographic string order (I < X < Y < Z per site) and
/// near-zero coefficients are pruned.
#[derive(Clone, PartialEq, Debug)]
pub struct PauliSum {
    n_sites: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn new(n_sites: usize) -> Self {
        Self {
            n_sites,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn add_term(&mut self, string: PauliString, coefficient: Complex64) -> Result<()> {
        if string.n_sites() != self.n_sites {
            return Err(Error::DimensionMismatch {
                left: string.n_sites(),
                right: self.n_sites,
            });
        }
        let entry = self
            .terms
            .entry(string.clone())
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += coefficient;
        if entry.norm() < COEFF_PRUNE_TOL {
            self.terms.remove(&string);
        }
        Ok(())
    }

    /// Terms in lexicographic string order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, string: &PauliString) -> Complex64 {
        self.terms
            .get(string)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dense(&self) -> DenseOperator {
        let dim = 1usize << self.n_sites;
        let mut m = DenseOperator::zeros(dim);
        for (string, &coeff) in &self.terms {
            for col in 0..dim {
                let (row, factor) = string.action_on_basis(col);
                m[(row, col)] += coeff * factor;
            }
        }
        m
    }
}

/// The exchange of spins i and j as `½(1 + XᵢXⱼ + YᵢYⱼ + ZᵢZⱼ)`; its dense
/// form equals the lifted exchange permutation exactly.
pub fn exchange_as_pauli(i: usize, j: usize, n_spins: usize) -> Result<PauliSum> {
    check_pair(i, j, n_spins)?;
    let half = Complex64::new(0.5, 0.0);
    let mut sum = PauliSum::new(n_spins);
    sum.add_term(PauliString::identity(n_spins)?, half)?;
    for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
        sum.add_term(
            PauliString::with_letters(n_spins, &[(i, letter), (j, letter)])?,
            half,
        )?;
    }
    Ok(sum)
}

pub fn pauli_to_dense(sum: &PauliSum) -> DenseOperator {
    sum.dense()
}

/// Exhaustive trace projection onto all 4^n strings: the coefficient of S is
/// `tr(dense(S)·m)/2^n`. Round-trips with `pauli_to_dense`.
pub fn dense_to_pauli(m: &DenseOperator, n_spins: usize) -> Result<PauliSum> {
    let dim = m.dim();
    if n_spins == 0 || n_spins > PROJECTION_MAX_SPINS {
        return Err(Error::ProjectionTooLarge {
            n_spins,
            max: PROJECTION_MAX_SPINS,
        });
    }
    if dim != 1usize << n_spins {
        return Err(Error::NotPowerOfTwo { dim });
    }
    let mut sum = PauliSum::new(n_spins);
    let mut letters = vec![PauliLetter::I; n_spins];
    let total = 4usize.pow(n_spins as u32);
    for code in 0..total {
        let mut rest = code;
        for site in (0..n_spins).rev() {
            letters[site] = PauliLetter::ALL[rest % 4];
            rest /= 4;
        }
        let string = PauliString::new(letters.clone())?;
        // tr(S·m) = Σ_col factor(col)·m[col, row(col)] since S is one entry
        // per column: S[row(col), col] = factor(col) and S is Hermitian.
        let mut trace = Complex64::new(0.0, 0.0);
        for col in 0..dim {
            let (row, factor) = string.action_on_basis(col);
            trace += factor * m[(col, row)];
        }
        let coeff = trace / dim as f64;
        if coeff.norm() >= COEFF_PRUNE_TOL {
            sum.add_term(string, coeff)?;
        }
    }
    Ok(sum)
}
