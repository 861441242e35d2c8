//! The state space of N classical Ising spins: bit configurations, the
//! exchange action on them, and the down-spin-count sector structure.
//!
//! Conventions, used consistently across the crate:
//! - bit 0 = spin up (↑), bit 1 = spin down (↓);
//! - spin labels are 1-based at the API surface;
//! - the canonical basis index is lexicographic with spin 1 most significant.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported chain; keeps dense 2^N operators at desk scale.
pub const MAX_SPINS: usize = 14;

/// One classical configuration of `n` Ising spins.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpinConfig {
    bits: Vec<u8>,
}

impl SpinConfig {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() || bits.len() > MAX_SPINS {
            return Err(Error::UnsupportedSpinCount {
                n_spins: bits.len(),
                max: MAX_SPINS,
            });
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::ConfigParse(format!("{bits:?}")));
        }
        Ok(Self { bits })
    }

    /// All spins up.
    pub fn all_up(n_spins: usize) -> Result<Self> {
        Self::new(vec![0; n_spins])
    }

    pub fn from_index(n_spins: usize, index: usize) -> Result<Self> {
        if n_spins == 0 || n_spins > MAX_SPINS {
            return Err(Error::UnsupportedSpinCount {
                n_spins,
                max: MAX_SPINS,
            });
        }
        let dim = 1usize << n_spins;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, dim });
        }
        let bits = (0..n_spins)
            .map(|k| ((index >> (n_spins - 1 - k)) & 1) as u8)
            .collect();
        Ok(Self { bits })
    }

    /// Canonical lexicographic basis index, spin 1 most significant.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn n_spins(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of down spins; conserved by every exchange.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Swaps the values of spins `i` and `j` (1-based, distinct).
    pub fn apply_exchange(&self, i: usize, j: usize) -> Result<Self> {
        let n = self.n_spins();
        check_pair(i, j, n)?;
        let mut bits = self.bits.clone();
        bits.swap(i - 1, j - 1);
        Ok(Self { bits })
    }

    /// Accepts arrow strings ("↑↓↑") and bit strings ("010").
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for ch in s.chars() {
            match ch {
                '↑' | '0' => bits.push(0),
                '↓' | '1' => bits.push(1),
                _ => return Err(Error::ConfigParse(s.to_string())),
            }
        }
        if bits.is_empty() {
            return Err(Error::ConfigParse(s.to_string()));
        }
        Self::new(bits)
    }

    pub fn arrows(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b == 0 { '↑' } else { '↓' })
            .collect()
    }

    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b == 0 { '0' } else { '1' })
            .collect()
    }
}

impl fmt::Display for SpinConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.arrows())
    }
}

impl std::str::FromStr for SpinConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub(crate) fn check_pair(i: usize, j: usize, n_spins: usize) -> Result<()> {
    for index in [i, j] {
        if index == 0 || index > n_spins {
            return Err(Error::SpinIndexOutOfRange { index, n_spins });
        }
    }
    if i == j {
        return Err(Error::EqualSpinIndices { index: i });
    }
    Ok(())
}

/// The conventional display ordering of the eight three-spin configurations:
/// graded by down-spin count, one-down sector ascending, two-down sector
/// listed as the bit complements of the one-down sector.
///
/// Position `k` holds the canonical index of the `k`-th basis state:
/// ↑↑↑, ↑↑↓, ↑↓↑, ↓↑↑, ↓↓↑, ↓↑↓, ↑↓↓, ↓↓↓.
pub fn reference_ordering(n_spins: usize) -> Result<Vec<usize>> {
    if n_spins != 3 {
        return Err(Error::ThreeSpinsOnly { n_spins });
    }
    Ok(vec![0b000, 0b001, 0b010, 0b100, 0b110, 0b101, 0b011, 0b111])
}

/// Basis indices grouped by down-spin count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorDecomposition {
    n_spins: usize,
    sectors: Vec<(usize, Vec<usize>)>,
}

impl SectorDecomposition {
    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    /// `(weight, indices)` pairs, weight ascending.
    pub fn sectors(&self) -> &[(usize, Vec<usize>)] {
        &self.sectors
    }

    pub fn sector_sizes(&self) -> Vec<usize> {
        self.sectors.iter().map(|(_, ix)| ix.len()).collect()
    }

    pub fn weight_of(&self, index: usize) -> usize {
        index.count_ones() as usize
    }
}

/// Partition of `{0, …, 2^n − 1}` by down-spin count. Within each sector the
/// indices ascend, except n = 3 where the two-down sector follows
/// `reference_ordering` (110, 101, 011).
pub fn sector_decomposition(n_spins: usize) -> Result<SectorDecomposition> {
    if n_spins == 0 || n_spins > MAX_SPINS {
        return Err(Error::UnsupportedSpinCount {
            n_spins,
            max: MAX_SPINS,
        });
    }
    let dim = 1usize << n_spins;
    let mut sectors: Vec<(usize, Vec<usize>)> = (0..=n_spins).map(|w| (w, Vec::new())).collect();
    for index in 0..dim {
        sectors[index.count_ones() as usize].1.push(index);
    }
    if n_spins == 3 {
        sectors[2].1 = vec![0b110, 0b101, 0b011];
    }
    Ok(SectorDecomposition { n_spins, sectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_swaps_mixed_pair() {
        let c = SpinConfig::parse("↑↓").unwrap();
        assert_eq!(
            c.apply_exchange(1, 2).unwrap(),
            SpinConfig::parse("↓↑").unwrap()
        );
    }

    #[test]
    fn exchange_fixes_equal_spins() {
        let c = SpinConfig::parse("↑↑↑").unwrap();
        assert_eq!(c.apply_exchange(1, 3).unwrap(), c);
    }

    #[test]
    fn exchange_transposes_named_bits() {
        let c = SpinConfig::parse("↑↓↑").unwrap();
        assert_eq!(
            c.apply_exchange(2, 3).unwrap(),
            SpinConfig::parse("↑↑↓").unwrap()
        );
    }

    #[test]
    fn exchange_rejects_bad_indices() {
        let c = SpinConfig::parse("↑↓").unwrap();
        assert!(matches!(
            c.apply_exchange(0, 1),
            Err(Error::SpinIndexOutOfRange { .. })
        ));
        assert!(matches!(
            c.apply_exchange(1, 3),
            Err(Error::SpinIndexOutOfRange { .. })
        ));
        assert!(matches!(
            c.apply_exchange(2, 2),
            Err(Error::EqualSpinIndices { .. })
        ));
    }

    #[test]
    fn weight_counts_down_spins() {
        assert_eq!(SpinConfig::parse("↑↑↑").unwrap().weight(), 0);
        assert_eq!(SpinConfig::parse("↓↓↑").unwrap().weight(), 2);
    }

    #[test]
    fn index_roundtrip_is_lossless() {
        for n in 1..=4 {
            for idx in 0..(1usize << n) {
                let c = SpinConfig::from_index(n, idx).unwrap();
                assert_eq!(c.index(), idx);
                assert_eq!(c.n_spins(), n);
            }
        }
    }

    #[test]
    fn spin_one_is_most_significant() {
        let c = SpinConfig::parse("↓↑↑").unwrap();
        assert_eq!(c.index(), 4);
    }

    #[test]
    fn reference_ordering_positions() {
        let ord = reference_ordering(3).unwrap();
        assert_eq!(SpinConfig::from_index(3, ord[0]).unwrap().arrows(), "↑↑↑");
        assert_eq!(SpinConfig::from_index(3, ord[4]).unwrap().arrows(), "↓↓↑");
        let weights: Vec<usize> = ord
            .iter()
            .map(|&i| SpinConfig::from_index(3, i).unwrap().weight())
            .collect();
        assert_eq!(weights, vec![0, 1, 1, 1, 2, 2, 2, 3]);
        assert!(reference_ordering(2).is_err());
    }

    #[test]
    fn sector_sizes_are_binomials() {
        assert_eq!(
            sector_decomposition(3).unwrap().sector_sizes(),
            vec![1, 3, 3, 1]
        );
        assert_eq!(
            sector_decomposition(4).unwrap().sector_sizes(),
            vec![1, 4, 6, 4, 1]
        );
        let one = sector_decomposition(1).unwrap();
        assert_eq!(one.sectors(), &[(0, vec![0]), (1, vec![1])]);
    }

    #[test]
    fn three_spin_sectors_follow_reference_ordering() {
        let dec = sector_decomposition(3).unwrap();
        let flattened: Vec<usize> = dec
            .sectors()
            .iter()
            .flat_map(|(_, ix)| ix.iter().copied())
            .collect();
        assert_eq!(flattened, reference_ordering(3).unwrap());
    }

    #[test]
    fn sectors_partition_everything() {
        for n in 1..=5 {
            let dec = sector_decomposition(n).unwrap();
            let mut seen: Vec<usize> = dec
                .sectors()
                .iter()
                .flat_map(|(_, ix)| ix.iter().copied())
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..(1usize << n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn parses_both_notations() {
        assert_eq!(
            SpinConfig::parse("010").unwrap(),
            SpinConfig::parse("↑↓↑").unwrap()
        );
        assert!(SpinConfig::parse("01x").is_err());
        assert!(SpinConfig::parse("").is_err());
        assert_eq!(SpinConfig::parse("↑↓↑").unwrap().bit_string(), "010");
    }
}
