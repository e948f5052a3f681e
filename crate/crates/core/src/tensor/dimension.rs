use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Soft upper bound on the ambient dimension; `Λ^6` of a 12-dimensional
/// space has 924 elements.
pub const DEFAULT_MAX_DIM: usize = 12;

/// Ambient dimension `n ≥ 2` of the Euclidean vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension { n, reason: "need n ≥ 2".into() });
        }
        Ok(Dimension(n))
    }

    /// Like [`Dimension::new`] but also enforces `n ≤ cap`.
    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        let dim = Self::new(n)?;
        if n > cap {
            return Err(Error::InvalidDimension { n, reason: format!("exceeds cap {cap}") });
        }
        Ok(dim)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `dim S²₀ = (n−1)(n+2)/2`.
    pub fn s02_dim(self) -> usize {
        (self.0 - 1) * (self.0 + 2) / 2
    }

    /// `dim S² = n(n+1)/2`.
    pub fn s2_dim(self) -> usize {
        self.0 * (self.0 + 1) / 2
    }

    /// `dim Λ^p = C(n, p)`.
    pub fn lambda_dim(self, p: usize) -> usize {
        binomial(self.0, p)
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Dimension::new(n)
    }
}

impl From<Dimension> for usize {
    fn from(d: Dimension) -> usize {
        d.0
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(k: usize) -> usize {
    (1..=k).product()
}
