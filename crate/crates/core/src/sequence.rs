//! Unimodular sequences, sequence sets and the delay-Doppler LAZ rectangle.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Relative tolerance on |x_t|² = 1.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// A unimodular complex sequence of length N ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    entries: Vec<Complex64>,
}

impl Sequence {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (index, x) in entries.iter().enumerate() {
            let modulus_sq = x.norm_sqr();
            if !((modulus_sq - 1.0).abs() <= UNIMODULAR_TOL) {
                return Err(Error::NotUnimodular { index, modulus_sq });
            }
        }
        Ok(Self { entries })
    }

    /// Builds `e^{jφ_t}` from phases in radians.
    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        Self::new(
            phases
                .iter()
                .map(|&p| Complex64::from_polar(1.0, p))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }
}

impl AsRef<[Complex64]> for Sequence {
    fn as_ref(&self) -> &[Complex64] {
        &self.entries
    }
}

/// M ≥ 1 unimodular sequences of a common length N.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSet {
    members: Vec<Sequence>,
}

impl SequenceSet {
    pub fn new(members: Vec<Sequence>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptySet)?.len();
        if let Some(bad) = members.iter().find(|s| s.len() != first) {
            return Err(Error::LengthMismatch {
                left: first,
                right: bad.len(),
            });
        }
        Ok(Self { members })
    }

    pub fn single(seq: Sequence) -> Self {
        Self {
            members: alloc::vec![seq],
        }
    }

    /// Sequence length N.
    pub fn seq_len(&self) -> usize {
        self.members[0].len()
    }

    /// Member count M.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Sequence] {
        &self.members
    }

    pub fn member(&self, m: usize) -> Option<&Sequence> {
        self.members.get(m)
    }
}

/// LAZ rectangle: |τ| ≤ z_x − 1 delays and |ν| ≤ z_y − 1 Doppler bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LazSpec {
    pub z_x: usize,
    pub z_y: usize,
}

impl LazSpec {
    pub fn new(z_x: usize, z_y: usize) -> Result<Self> {
        if z_x == 0 || z_y == 0 {
            return Err(Error::InvalidLaz { z_x, z_y, n: 0 });
        }
        Ok(Self { z_x, z_y })
    }

    /// The whole delay-Doppler plane, Z_x = Z_y = N.
    pub fn global(n: usize) -> Self {
        Self { z_x: n, z_y: n }
    }

    pub fn validate_for(&self, n: usize) -> Result<()> {
        if self.z_x == 0 || self.z_y == 0 || self.z_x > n || self.z_y > n {
            return Err(Error::InvalidLaz {
                z_x: self.z_x,
                z_y: self.z_y,
                n,
            });
        }
        Ok(())
    }

    pub fn delays(&self) -> RangeInclusive<i64> {
        let h = self.z_x as i64 - 1;
        -h..=h
    }

    pub fn dopplers(&self) -> RangeInclusive<i64> {
        let h = self.z_y as i64 - 1;
        -h..=h
    }

    /// Grid cells (2Z_x − 1)(2Z_y − 1).
    pub fn cell_count(&self) -> usize {
        (2 * self.z_x - 1) * (2 * self.z_y - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_non_unimodular() {
        let err = Sequence::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]);
        assert!(matches!(err, Err(Error::NotUnimodular { index: 1, .. })));
        assert_eq!(Sequence::new(vec![]), Err(Error::EmptySequence));
    }

    #[test]
    fn set_requires_equal_lengths() {
        let a = Sequence::from_phases(&[0.0, 1.0]).unwrap();
        let b = Sequence::from_phases(&[0.0, 1.0, 2.0]).unwrap();
        assert!(matches!(
            SequenceSet::new(vec![a.clone(), b]),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
        assert_eq!(SequenceSet::new(vec![]), Err(Error::EmptySet));
        let set = SequenceSet::new(vec![a.clone(), a]).unwrap();
        assert_eq!((set.seq_len(), set.size()), (2, 2));
    }

    #[test]
    fn laz_bounds() {
        let laz = LazSpec::new(3, 2).unwrap();
        assert!(laz.validate_for(3).is_ok());
        assert!(laz.validate_for(2).is_err());
        assert_eq!(laz.delays(), -2..=2);
        assert_eq!(laz.dopplers(), -1..=1);
        assert_eq!(laz.cell_count(), 15);
        assert!(LazSpec::new(0, 1).is_err());
    }
}
