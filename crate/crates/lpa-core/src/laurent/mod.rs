//! Exact Laurent polynomials over ℚ, square matrices over them, nice corner
//! embeddings with their centroid transfer maps, inverse-limit stabilization,
//! and the comet-to-matrix isomorphism.

mod comet_iso;
mod embed;
mod matrix;

pub use comet_iso::{comet_iso, CometIso};
pub use embed::{
    corner_tower, inverse_limit_stabilize, matrix_center, scalar_tower_limit, sigma_map,
    CornerEmbedding, LimitKind, StageInfo, TowerReport,
};
pub use matrix::LaurentMatrix;

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use num_traits::Zero;

use crate::{qi, Coeff};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("embedding must map into a strictly larger matrix algebra within bounds")]
    BadEmbedding,
    #[error("embedding failed the corner verification")]
    NotNice,
    #[error("centroid transfer did not act as a Laurent scalar")]
    NotScalar,
    #[error("graph is not a row-finite comet")]
    NotComet,
}

/// Exact Laurent polynomial: finite map exponent -> nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, qi(1))
    }

    /// The variable `x`.
    pub fn x() -> LaurentPoly {
        LaurentPoly::monomial(1, qi(1))
    }

    pub fn monomial(exp: i64, c: Coeff) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, Coeff)>>(items: I) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in items {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&exp) {
            Some(cell) => {
                *cell += &c;
                if cell.is_zero() {
                    self.coeffs.remove(&exp);
                }
            }
            None => {
                self.coeffs.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Coeff {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &Coeff)> {
        self.coeffs.iter()
    }

    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        let min = *self.coeffs.keys().next()?;
        let max = *self.coeffs.keys().next_back()?;
        Some((min, max))
    }

    /// True when the polynomial is `c·x^0`.
    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || (self.coeffs.len() == 1 && self.coeffs.contains_key(&0))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &Coeff) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Substitution `x -> x^{-1}`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents: `3*x^-2 + 1 + 2*x^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            use num_traits::{One, Signed};
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match e {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "x")?,
                1 => write!(f, "{mag}*x")?,
                _ if mag.is_one() => write!(f, "x^{e}")?,
                _ => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Helper for tests and the CLI: `Σ c·x^e` from integer pairs `(e, c)`.
pub fn laurent_from_integers(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_coeffs(terms.iter().map(|&(e, c)| (e, qi(c))))
}

pub fn format_laurent(p: &LaurentPoly) -> String {
    use alloc::string::ToString;
    p.to_string()
}
