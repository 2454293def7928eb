use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One simple summand of a finite-dimensional formally real Jordan algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimpleFactor {
    /// Real symmetric `k × k` matrices.
    RealSym(usize),
    /// Complex Hermitian `k × k` matrices.
    ComplexHerm(usize),
    /// Quaternionic Hermitian `k × k` matrices.
    QuatHerm(usize),
    /// Octonionic Hermitian `3 × 3` matrices.
    Albert,
    /// `ℝ ⊕ ℝⁿ` with `(s, u)∘(t, v) = (st + ⟨u, v⟩, sv + tu)`.
    Spin(usize),
}

impl SimpleFactor {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SimpleFactor::RealSym(k) | SimpleFactor::ComplexHerm(k) | SimpleFactor::QuatHerm(k)
                if k == 0 =>
            {
                Err(Error::InvalidDescriptor(format!("{self}: matrix size must be at least 1")))
            }
            SimpleFactor::Spin(n) if n < 2 => Err(Error::InvalidDescriptor(format!(
                "{self}: a spin factor needs n >= 2 (at least three distinct atoms)"
            ))),
            _ => Ok(()),
        }
    }

    /// Real dimension of the factor.
    pub fn dimension(&self) -> usize {
        match *self {
            SimpleFactor::RealSym(k) => k * (k + 1) / 2,
            SimpleFactor::ComplexHerm(k) => k * k,
            SimpleFactor::QuatHerm(k) => k * (2 * k - 1),
            SimpleFactor::Albert => 27,
            SimpleFactor::Spin(n) => n + 1,
        }
    }

    /// Natural trace of the factor's identity, i.e. the number of atoms in a frame.
    pub fn rank(&self) -> usize {
        match *self {
            SimpleFactor::RealSym(k) | SimpleFactor::ComplexHerm(k) | SimpleFactor::QuatHerm(k) => k,
            SimpleFactor::Albert => 3,
            SimpleFactor::Spin(_) => 2,
        }
    }

    /// Dimension `n` of the spin factor this factor is isomorphic to, if any.
    ///
    /// Besides `spin(n)` itself, the `2 × 2` matrix factors are spin factors:
    /// `R(2) ≅ spin(2)`, `C(2) ≅ spin(3)`, `H(2) ≅ spin(5)`.
    pub fn spin_equivalent(&self) -> Option<usize> {
        match *self {
            SimpleFactor::Spin(n) => Some(n),
            SimpleFactor::RealSym(2) => Some(2),
            SimpleFactor::ComplexHerm(2) => Some(3),
            SimpleFactor::QuatHerm(2) => Some(5),
            _ => None,
        }
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleFactor::RealSym(k) => write!(f, "R({k})"),
            SimpleFactor::ComplexHerm(k) => write!(f, "C({k})"),
            SimpleFactor::QuatHerm(k) => write!(f, "H({k})"),
            SimpleFactor::Albert => write!(f, "O3"),
            SimpleFactor::Spin(n) => write!(f, "spin({n})"),
        }
    }
}

/// Direct sum of simple factors, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub factors: Vec<SimpleFactor>,
}

impl AlgebraDescriptor {
    pub fn new(factors: Vec<SimpleFactor>) -> Result<Self> {
        let d = Self { factors };
        d.validate()?;
        Ok(d)
    }

    pub fn single(factor: SimpleFactor) -> Result<Self> {
        Self::new(vec![factor])
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::InvalidDescriptor("no factors".into()));
        }
        self.factors.iter().try_for_each(SimpleFactor::validate)
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(SimpleFactor::dimension).sum()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(SimpleFactor::rank).sum()
    }

    /// First factor (index, spin dimension) isomorphic to a spin factor.
    pub fn first_spin_like(&self) -> Option<(usize, usize)> {
        self.factors
            .iter()
            .enumerate()
            .find_map(|(i, f)| f.spin_equivalent().map(|n| (i, n)))
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_ranks() {
        assert_eq!(SimpleFactor::ComplexHerm(3).dimension(), 9);
        assert_eq!(SimpleFactor::ComplexHerm(3).rank(), 3);
        assert_eq!(SimpleFactor::Albert.dimension(), 27);
        assert_eq!(SimpleFactor::Albert.rank(), 3);
        assert_eq!(SimpleFactor::QuatHerm(3).dimension(), 15);
        assert_eq!(SimpleFactor::RealSym(4).dimension(), 10);
        let d = AlgebraDescriptor::new(vec![SimpleFactor::Spin(3), SimpleFactor::RealSym(2)]).unwrap();
        assert_eq!(d.dimension(), 7);
        assert_eq!(d.rank(), 4);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(AlgebraDescriptor::new(vec![]).is_err());
        assert!(SimpleFactor::Spin(1).validate().is_err());
        assert!(SimpleFactor::RealSym(0).validate().is_err());
        assert!(SimpleFactor::RealSym(1).validate().is_ok());
    }

    #[test]
    fn spin_like_factors() {
        assert_eq!(SimpleFactor::ComplexHerm(2).spin_equivalent(), Some(3));
        assert_eq!(SimpleFactor::ComplexHerm(3).spin_equivalent(), None);
        let d = AlgebraDescriptor::new(vec![SimpleFactor::RealSym(3), SimpleFactor::Spin(4)]).unwrap();
        assert_eq!(d.first_spin_like(), Some((1, 4)));
        assert_eq!(d.to_string(), "R(3) + spin(4)");
    }
}
