//! Named strategies selectable at runtime: the two Hamiltonian-extraction
//! routes and the two leakage generators. The extraction routes stay
//! independent so either can serve as the oracle for the other.

use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use crate::ontology::{
    perturbed_exchange, perturbed_hamiltonian_evolution, GeneratorKind, LeakageGenerator,
};
use crate::permops::GeneralizedPermutation;
use crate::spectral::{hamiltonian_from_permutation, matrix_log_unitary, Hamiltonian};

pub trait ExtractionMethod {
    fn name(&self) -> &'static str;
    fn extract(&self, p: &GeneralizedPermutation, timescale: f64) -> Result<Hamiltonian>;
}

/// Exact per-cycle discrete-Fourier extraction.
pub struct CycleDftExtraction;

impl ExtractionMethod for CycleDftExtraction {
    fn name(&self) -> &'static str {
        "cycle-dft"
    }
    fn extract(&self, p: &GeneralizedPermutation, timescale: f64) -> Result<Hamiltonian> {
        hamiltonian_from_permutation(p, timescale).map(|(h, _)| h)
    }
}

/// Generic dense eigendecomposition of the unitary.
pub struct DenseLogExtraction;

impl ExtractionMethod for DenseLogExtraction {
    fn name(&self) -> &'static str {
        "dense-log"
    }
    fn extract(&self, p: &GeneralizedPermutation, timescale: f64) -> Result<Hamiltonian> {
        matrix_log_unitary(&p.dense(), timescale)
    }
}

pub const EXTRACTION_METHOD_NAMES: [&str; 2] = ["cycle-dft", "dense-log"];

pub fn extraction_methods() -> Vec<Box<dyn ExtractionMethod>> {
    vec![Box::new(CycleDftExtraction), Box::new(DenseLogExtraction)]
}

pub fn extraction_method(name: &str) -> Result<Box<dyn ExtractionMethod>> {
    extraction_methods()
        .into_iter()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "extraction method",
            name: name.to_string(),
            available: EXTRACTION_METHOD_NAMES.join(", "),
        })
}

/// The ε-perturbed exchange `i·exp(−i(π/2)(1+ε)P_ij)` on `n` spins.
pub struct ExchangeLeakage {
    i: usize,
    j: usize,
    n_spins: usize,
}

impl ExchangeLeakage {
    pub fn new(i: usize, j: usize, n_spins: usize) -> Result<Self> {
        // Validate the pair once so sweeps cannot fail later.
        GeneralizedPermutation::lift_exchange(i, j, n_spins)?;
        Ok(Self { i, j, n_spins })
    }
}

impl LeakageGenerator for ExchangeLeakage {
    fn name(&self) -> &'static str {
        "exchange"
    }
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::PerturbedExchange {
            i: self.i,
            j: self.j,
        }
    }
    fn dim(&self) -> usize {
        1 << self.n_spins
    }
    fn operator(&self, epsilon: f64) -> Result<DenseOperator> {
        perturbed_exchange(self.i, self.j, self.n_spins, epsilon)
    }
}

/// The ε-perturbed three-spin evolution `exp(−iH(1+ε)T)`.
pub struct HamiltonianLeakage {
    timescale: f64,
}

impl HamiltonianLeakage {
    pub fn new(timescale: f64) -> Result<Self> {
        if timescale <= 0.0 {
            return Err(Error::NonPositiveTimescale { value: timescale });
        }
        Ok(Self { timescale })
    }
}

impl LeakageGenerator for HamiltonianLeakage {
    fn name(&self) -> &'static str {
        "hamiltonian"
    }
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::PerturbedHamiltonian
    }
    fn dim(&self) -> usize {
        8
    }
    fn operator(&self, epsilon: f64) -> Result<DenseOperator> {
        perturbed_hamiltonian_evolution(epsilon, self.timescale)
    }
}

pub const LEAKAGE_GENERATOR_NAMES: [&str; 2] = ["exchange", "hamiltonian"];

/// Builds a leakage generator by name. `pair` and `n_spins` configure the
/// exchange generator; `timescale` configures the Hamiltonian one.
pub fn leakage_generator(
    name: &str,
    pair: (usize, usize),
    n_spins: usize,
    timescale: f64,
) -> Result<Box<dyn LeakageGenerator>> {
    match name {
        "exchange" => Ok(Box::new(ExchangeLeakage::new(pair.0, pair.1, n_spins)?)),
        "hamiltonian" => Ok(Box::new(HamiltonianLeakage::new(timescale)?)),
        _ => Err(Error::UnknownStrategy {
            kind: "leakage generator",
            name: name.to_string(),
            available: LEAKAGE_GENERATOR_NAMES.join(", "),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_are_registered_by_name() {
        for name in EXTRACTION_METHOD_NAMES {
            assert_eq!(extraction_method(name).unwrap().name(), name);
        }
        assert!(matches!(
            extraction_method("schur"),
            Err(Error::UnknownStrategy { .. })
        ));
    }

    #[test]
    fn extraction_routes_agree_on_an_update_operator() {
        let p12 = GeneralizedPermutation::lift_exchange(1, 2, 3).unwrap();
        let p23 = GeneralizedPermutation::lift_exchange(2, 3, 3).unwrap();
        let u = p12.compose(&p23).unwrap();
        let methods = extraction_methods();
        let h0 = methods[0].extract(&u, 1.0).unwrap();
        let h1 = methods[1].extract(&u, 1.0).unwrap();
        assert!(h0.matrix.max_abs_diff(&h1.matrix) < 1e-8);
    }

    #[test]
    fn generators_are_registered_by_name() {
        let g = leakage_generator("exchange", (1, 2), 2, 1.0).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.name(), "exchange");
        let g = leakage_generator("hamiltonian", (1, 2), 3, 1.0).unwrap();
        assert_eq!(g.dim(), 8);
        assert!(matches!(
            leakage_generator("depolarizing", (1, 2), 2, 1.0),
            Err(Error::UnknownStrategy { .. })
        ));
        assert!(leakage_generator("exchange", (1, 1), 2, 1.0).is_err());
        assert!(leakage_generator("hamiltonian", (1, 2), 3, 0.0).is_err());
    }
}
