use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cmat::{herm_apply, CMatrix};
use crate::error::{Error, Result};

/// Operator concave functions `[0, ∞) -> [0, ∞)` available to GA2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Concave {
    #[serde(rename = "t")]
    Identity,
    #[serde(rename = "sqrt")]
    Sqrt,
    #[serde(rename = "t/(1+t)")]
    Resolvent,
    #[serde(rename = "log1p")]
    Log1p,
}

impl Concave {
    pub const ALL: [Concave; 4] = [Concave::Identity, Concave::Sqrt, Concave::Resolvent, Concave::Log1p];

    pub fn name(self) -> &'static str {
        match self {
            Concave::Identity => "t",
            Concave::Sqrt => "sqrt",
            Concave::Resolvent => "t/(1+t)",
            Concave::Log1p => "log1p",
        }
    }

    /// Scalar evaluation; negative round-off is clamped to zero.
    pub fn eval(self, t: f64) -> f64 {
        let t = t.max(0.0);
        match self {
            Concave::Identity => t,
            Concave::Sqrt => t.sqrt(),
            Concave::Resolvent => t / (1.0 + t),
            Concave::Log1p => t.ln_1p(),
        }
    }

    /// `f(H)` through the spectral decomposition of Hermitian `H`.
    pub fn apply(self, h: &CMatrix) -> Result<CMatrix> {
        herm_apply(h, |x| self.eval(x))
    }
}

impl fmt::Display for Concave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Concave {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Concave::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown concave function `{s}` (expected t, sqrt, t/(1+t), log1p)")))
    }
}

/// Looks up a catalogue function by name.
pub fn concave_catalogue(name: &str) -> Result<Concave> {
    name.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_application() {
        let d = CMatrix::from_real_diag(&[2.0, 3.0]);
        assert_eq!(Concave::Identity.apply(&d).unwrap(), d);
        let s = Concave::Sqrt.apply(&CMatrix::from_real_diag(&[4.0, 9.0])).unwrap();
        assert!((&s - &CMatrix::from_real_diag(&[2.0, 3.0])).max_abs() < 1e-14);
        assert!(concave_catalogue("exp").is_err());
        assert_eq!(concave_catalogue("t/(1+t)").unwrap(), Concave::Resolvent);
    }
}
