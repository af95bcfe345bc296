//! Square matrices over the Laurent polynomial ring, with exact arithmetic.

use alloc::vec::Vec;
use core::fmt;

use super::LaurentPoly;
use crate::Coeff;

/// An n×n matrix over ℚ[x, x⁻¹], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(n: usize) -> LaurentMatrix {
        LaurentMatrix {
            n,
            entries: (0..n * n).map(|_| LaurentPoly::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> LaurentMatrix {
        let mut m = LaurentMatrix::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = LaurentPoly::one();
        }
        m
    }

    /// The matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> LaurentMatrix {
        let mut m = LaurentMatrix::zero(n);
        *m.at_mut(i, j) = LaurentPoly::one();
        m
    }

    /// `p·E_{ij}`.
    pub fn scaled_unit(n: usize, i: usize, j: usize, p: LaurentPoly) -> LaurentMatrix {
        let mut m = LaurentMatrix::zero(n);
        *m.at_mut(i, j) = p;
        m
    }

    /// The scalar matrix `p·I`.
    pub fn scalar(n: usize, p: &LaurentPoly) -> LaurentMatrix {
        let mut m = LaurentMatrix::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = p.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, other: &LaurentMatrix) -> LaurentMatrix {
        debug_assert_eq!(self.n, other.n);
        LaurentMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(LaurentPoly::neg).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentMatrix) -> LaurentMatrix {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = LaurentMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cell = out.at_mut(i, j);
                    *cell = cell.add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.mul(p)).collect(),
        }
    }

    pub fn scale(&self, k: &Coeff) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.scale(k)).collect(),
        }
    }

    /// The involution matching the algebra's star: conjugate transpose with
    /// `x -> x^{-1}` in every entry.
    pub fn star(&self) -> LaurentMatrix {
        let n = self.n;
        let mut out = LaurentMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(j, i) = self.at(i, j).invert_variable();
            }
        }
        out
    }

    /// True when the matrix equals `p·I` for some Laurent polynomial.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        let n = self.n;
        if n == 0 {
            return Some(LaurentPoly::zero());
        }
        let p = self.at(0, 0).clone();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { &p } else { &LaurentPoly::zero() } as &LaurentPoly;
                if self.at(i, j) != expect {
                    return None;
                }
            }
        }
        Some(p)
    }
}

impl fmt::Display for LaurentMatrix {
    /// Row-major bracketed lists: `[[1, x], [0, x^-1]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::laurent_from_integers;
    use crate::qi;

    #[test]
    fn unit_products() {
        let e12 = LaurentMatrix::unit(3, 0, 1);
        let e23 = LaurentMatrix::unit(3, 1, 2);
        assert_eq!(e12.mul(&e23), LaurentMatrix::unit(3, 0, 2));
        assert_eq!(e23.mul(&e12), LaurentMatrix::zero(3));
    }

    #[test]
    fn scalar_detection() {
        let p = laurent_from_integers(&[(1, 1), (-1, 2)]);
        let m = LaurentMatrix::scalar(2, &p);
        assert_eq!(m.as_scalar(), Some(p.clone()));
        let mut bad = m.clone();
        *bad.at_mut(0, 1) = LaurentPoly::one();
        assert_eq!(bad.as_scalar(), None);
        let diag = LaurentMatrix::scaled_unit(2, 0, 0, LaurentPoly::x())
            .add(&LaurentMatrix::unit(2, 1, 1));
        assert_eq!(diag.as_scalar(), None);
    }

    #[test]
    fn star_is_involutive_antihomomorphism() {
        let a = LaurentMatrix::scaled_unit(2, 0, 1, LaurentPoly::x());
        let b = LaurentMatrix::scaled_unit(2, 1, 0, laurent_from_integers(&[(2, 3)]));
        assert_eq!(a.star().star(), a);
        assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
    }

    #[test]
    fn display_shape() {
        use alloc::string::ToString;
        let m = LaurentMatrix::scalar(2, &LaurentPoly::x());
        assert_eq!(m.to_string(), "[[x, 0], [0, x]]");
        let _ = qi(1);
    }
}
