//! Nice embeddings between Laurent matrix algebras, the induced maps between
//! their centroids, and finite-stage inverse-limit stabilization.
//!
//! An embedding i: A -> B is *nice* when i(A) is exactly the corner
//! e·B·e at the idempotent e = i(1_A). The only built-in family is the
//! block-corner embedding M_n -> M_m placing A at a diagonal offset; arbitrary
//! offsets compose, and every embedding is verified against the corner
//! condition on a spanning set before it is used.

use alloc::string::String;
use alloc::vec::Vec;

use super::{LaurentError, LaurentMatrix, LaurentPoly};
use crate::linalg::{nullspace, SparseVec};
use crate::qi;

/// Block-corner embedding of `M_source` into `M_target` at a diagonal
/// `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerEmbedding {
    pub source: usize,
    pub target: usize,
    pub offset: usize,
}

impl CornerEmbedding {
    pub fn new(source: usize, target: usize) -> Result<CornerEmbedding, LaurentError> {
        CornerEmbedding::at_offset(source, target, 0)
    }

    pub fn at_offset(
        source: usize,
        target: usize,
        offset: usize,
    ) -> Result<CornerEmbedding, LaurentError> {
        if source == 0 || source > target || offset + source > target {
            return Err(LaurentError::BadEmbedding);
        }
        Ok(CornerEmbedding {
            source,
            target,
            offset,
        })
    }

    pub fn embed(&self, a: &LaurentMatrix) -> LaurentMatrix {
        debug_assert_eq!(a.size(), self.source);
        let mut out = LaurentMatrix::zero(self.target);
        for i in 0..self.source {
            for j in 0..self.source {
                *out.at_mut(self.offset + i, self.offset + j) = a.at(i, j).clone();
            }
        }
        out
    }

    /// `θ^{-1}(e·b·e)`: extract the source-sized block.
    pub fn project(&self, b: &LaurentMatrix) -> LaurentMatrix {
        debug_assert_eq!(b.size(), self.target);
        let mut out = LaurentMatrix::zero(self.source);
        for i in 0..self.source {
            for j in 0..self.source {
                *out.at_mut(i, j) = b.at(self.offset + i, self.offset + j).clone();
            }
        }
        out
    }

    /// The corner idempotent `e = i(1)`.
    pub fn idempotent(&self) -> LaurentMatrix {
        self.embed(&LaurentMatrix::identity(self.source))
    }

    /// Composition: first `self`, then `outer`.
    pub fn compose(&self, outer: &CornerEmbedding) -> Result<CornerEmbedding, LaurentError> {
        if self.target != outer.source {
            return Err(LaurentError::BadEmbedding);
        }
        CornerEmbedding::at_offset(self.source, outer.target, outer.offset + self.offset)
    }

    /// Verify the nice-embedding conditions on the spanning set
    /// `{x^δ E_{kl} : |δ| ≤ d}`: i is multiplicative and unit-compatible, and
    /// `e·B·e` coincides with the image.
    pub fn verify(&self, d: i64) -> Result<(), LaurentError> {
        let e = self.idempotent();
        if e.mul(&e) != e {
            return Err(LaurentError::NotNice);
        }
        for delta in -d..=d {
            let p = LaurentPoly::monomial(delta, qi(1));
            for k in 0..self.target {
                for l in 0..self.target {
                    let b = LaurentMatrix::scaled_unit(self.target, k, l, p.clone());
                    let cornered = e.mul(&b).mul(&e);
                    // e·B·e must be exactly the embedded copy of its block.
                    if self.embed(&self.project(&cornered)) != cornered {
                        return Err(LaurentError::NotNice);
                    }
                }
            }
            for i in 0..self.source {
                for j in 0..self.source {
                    for k in 0..self.source {
                        for l in 0..self.source {
                            let a = LaurentMatrix::scaled_unit(self.source, i, j, p.clone());
                            let b = LaurentMatrix::unit(self.source, k, l);
                            if self.embed(&a.mul(&b)) != self.embed(&a).mul(&self.embed(&b)) {
                                return Err(LaurentError::NotNice);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Transfer a centroid element of the target (multiplication by `p·I`) along
/// a nice embedding: compute `π ∘ τ ∘ i` on the spanning matrix units of the
/// source and certify that the result acts as a Laurent scalar again.
pub fn sigma_map(
    emb: &CornerEmbedding,
    p: &LaurentPoly,
    check_degree: i64,
) -> Result<LaurentPoly, LaurentError> {
    emb.verify(check_degree)?;
    let mut extracted: Option<LaurentPoly> = None;
    for i in 0..emb.source {
        for j in 0..emb.source {
            let unit = LaurentMatrix::unit(emb.source, i, j);
            let image = emb.project(&emb.embed(&unit).scale_poly(p));
            // image must equal q·unit for one fixed q.
            let q = image.at(i, j).clone();
            for k in 0..emb.source {
                for l in 0..emb.source {
                    let expect = if (k, l) == (i, j) {
                        &q
                    } else {
                        &LaurentPoly::zero()
                    };
                    if image.at(k, l) != expect {
                        return Err(LaurentError::NotScalar);
                    }
                }
            }
            match &extracted {
                None => extracted = Some(q),
                Some(prev) if *prev == q => {}
                Some(_) => return Err(LaurentError::NotScalar),
            }
        }
    }
    extracted.ok_or(LaurentError::NotScalar)
}

/// Exact center of `M_n(ℚ[x,x^{-1}])` truncated to exponents `|k| ≤ d`:
/// solves the commutation constraints against every matrix unit and returns
/// the basis, which must consist of Laurent scalar matrices `x^k·I`.
pub fn matrix_center(n: usize, d: i64) -> Result<Vec<LaurentMatrix>, LaurentError> {
    let width = (2 * d + 1) as usize;
    let cols = n * n * width;
    let index = |i: usize, j: usize, e: i64| -> usize { (i * n + j) * width + (e + d) as usize };

    // [Z, E_{kl}] = 0: entry (i, l) gains Z[i,k] and entry (k, j) loses
    // Z[l,j]; collect one row per (result entry, exponent).
    let mut rows: Vec<SparseVec> = Vec::new();
    for k in 0..n {
        for l in 0..n {
            for e in -d..=d {
                for i in 0..n {
                    for j in 0..n {
                        let mut row = SparseVec::new();
                        // (Z·E_{kl})[i][j] = Z[i][k] when j == l.
                        if j == l {
                            row.insert(index(i, k, e), qi(1));
                        }
                        // (E_{kl}·Z)[i][j] = Z[l][j] when i == k.
                        if i == k {
                            let cell = index(l, j, e);
                            match row.get_mut(&cell) {
                                Some(v) => {
                                    *v -= qi(1);
                                    if num_traits::Zero::is_zero(v) {
                                        row.remove(&cell);
                                    }
                                }
                                None => {
                                    row.insert(cell, qi(-1));
                                }
                            }
                        }
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }

    let ns = nullspace(cols, rows);
    let mut basis = Vec::with_capacity(ns.basis.len());
    for vec in &ns.basis {
        let mut m = LaurentMatrix::zero(n);
        for (&col, c) in vec {
            let e = (col % width) as i64 - d;
            let ij = col / width;
            let (i, j) = (ij / n, ij % n);
            let cell = m.at_mut(i, j);
            *cell = cell.add(&LaurentPoly::monomial(e, c.clone()));
        }
        if m.as_scalar().is_none() {
            return Err(LaurentError::NotScalar);
        }
        basis.push(m);
    }
    Ok(basis)
}

/// The standard corner tower `M_1 -> M_2 -> ... -> M_n`.
pub fn corner_tower(stages: usize) -> Vec<CornerEmbedding> {
    (1..stages)
        .map(|k| CornerEmbedding::new(k, k + 1).expect("increasing sizes"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitKind {
    /// Every connecting map acts as the identity on the Laurent parameter;
    /// the inverse limit of the truncations is the Laurent ring itself.
    LaurentRing,
    /// Constant one-dimensional tower: the limit is the scalar field.
    Scalars,
    /// The connecting maps were observed but did not stabilize.
    Observed(String),
}

#[derive(Clone, Debug)]
pub struct StageInfo {
    pub source: usize,
    pub target: usize,
    /// Truncated centroid dimension at this stage (2d+1 for matrix stages).
    pub dimension: usize,
    /// Whether the connecting map fixed every basis parameter `x^k`.
    pub identity_on_parameter: bool,
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    pub stages: Vec<StageInfo>,
    pub stabilized: bool,
    pub limit: LimitKind,
}

/// Run the connecting maps of a tower of nice embeddings across the
/// truncated centroids and report whether the system stabilized.
///
/// Stabilization here is an observation over the given finite stages, not a
/// claim about a symbolic limit object: each connecting map
/// `σ: C(M_{k+1}) -> C(M_k)` is applied to the truncated basis
/// `{x^j·I : |j| ≤ d}` and must return the same parameter.
pub fn inverse_limit_stabilize(
    tower: &[CornerEmbedding],
    d: i64,
) -> Result<TowerReport, LaurentError> {
    let mut stages = Vec::with_capacity(tower.len());
    let mut all_identity = true;
    for emb in tower {
        let center = matrix_center(emb.target, d)?;
        let mut identity = true;
        for j in -d..=d {
            let p = LaurentPoly::monomial(j, qi(1));
            let back = sigma_map(emb, &p, d.max(1))?;
            if back != p {
                identity = false;
            }
        }
        all_identity &= identity;
        stages.push(StageInfo {
            source: emb.source,
            target: emb.target,
            dimension: center.len(),
            identity_on_parameter: identity,
        });
    }
    let limit = if all_identity {
        LimitKind::LaurentRing
    } else {
        LimitKind::Observed(String::from("connecting maps moved the Laurent parameter"))
    };
    Ok(TowerReport {
        stabilized: all_identity,
        stages,
        limit,
    })
}

/// The constant tower of scalar centroids (every stage one-dimensional, every
/// connecting map the identity on scalars): its limit is the field itself.
pub fn scalar_tower_limit(stages: usize) -> TowerReport {
    let infos = (0..stages.saturating_sub(1))
        .map(|k| StageInfo {
            source: k + 1,
            target: k + 2,
            dimension: 1,
            identity_on_parameter: true,
        })
        .collect();
    TowerReport {
        stages: infos,
        stabilized: true,
        limit: LimitKind::Scalars,
    }
}
