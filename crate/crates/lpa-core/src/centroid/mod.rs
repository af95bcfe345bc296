//! Centralizers of the algebra, represented by their restriction to the
//! vertex set.
//!
//! A map `τ: E⁰ -> L` with every `τ(v)` in the corner `vLv` extends to a
//! centralizer exactly when it intertwines every edge:
//! `τ(s(f))·f = f·τ(r(f))` and `τ(r(f))·f* = f*·τ(s(f))`. The extension is
//! unique and acts on a walk by `τ(αβ*) = τ(s(α))·αβ*`, so the seed is a
//! complete finite description. The solver in [`seed_space`] finds all seeds
//! with degree-bounded values by an exact nullspace computation; because the
//! intertwining constraints themselves are never truncated, every solution is
//! a genuine centralizer.

mod comet;
mod corner;
mod smap;

pub use comet::{
    comet_centralizer_from_laurent, omega, path_membership_checks, reconstruct_from_value,
    PathMembershipReport, Reconstruction,
};
pub use corner::{acyclic_corner_center, corner_center_decompose, CornerDecomposition};
pub use smap::{
    cycle_power_of, laurent_extract, s_apply, s_collapse, CollapseOutcome, LaurentExtract,
    SMapContext,
};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::algebra::{Element, LeavittAlgebra, Walk};
use crate::graph::{hs_closure, is_comet, Graph, VertexId};
use crate::linalg::{nullspace, SparseVec};
use crate::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CentroidError {
    #[error("vertex {vertex} is on a cycle")]
    OnCycle { vertex: VertexId },
    #[error("graph has a cycle; the exact corner-center computation requires an acyclic graph")]
    HasCycle,
    #[error("element is not supported in the corner at {vertex}")]
    OutsideCorner { vertex: VertexId },
    #[error("element failed the centrality spot-check in the corner at {vertex}")]
    NotCentral { vertex: VertexId },
    #[error("graph is not a row-finite comet")]
    NotComet,
    #[error("graph is not downward directed (MT3 fails)")]
    NotPrime,
    #[error("the hereditary saturated closure of {vertex} is not the whole vertex set")]
    ClosureIncomplete { vertex: VertexId },
    #[error("graph is not simple")]
    NotSimple,
    #[error("seed is invalid: {0}")]
    InvalidSeed(SeedViolation),
}

/// First violated seed condition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeedViolation {
    #[error("value at {vertex} is not in the corner")]
    NotInCorner { vertex: VertexId },
    #[error("missing value at {vertex}")]
    Missing { vertex: VertexId },
    #[error("real intertwining identity fails at edge {edge:?}")]
    RealIdentity { edge: crate::graph::EdgeId },
    #[error("ghost intertwining identity fails at edge {edge:?}")]
    GhostIdentity { edge: crate::graph::EdgeId },
}

/// A centralizer seed: one corner element per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerSeed {
    values: BTreeMap<VertexId, Element>,
}

impl CentralizerSeed {
    /// Build from a (possibly partial) assignment; missing vertices get zero.
    pub fn new(g: &Graph, mut values: BTreeMap<VertexId, Element>) -> CentralizerSeed {
        for v in g.vertices() {
            values.entry(v).or_insert_with(Element::zero);
        }
        CentralizerSeed { values }
    }

    /// The scalar seed `v ↦ k·v`.
    pub fn scalar(alg: &LeavittAlgebra<'_>, k: &Coeff) -> CentralizerSeed {
        let values = alg
            .graph()
            .vertices()
            .map(|v| (v, alg.vertex(v).scale(k)))
            .collect();
        CentralizerSeed { values }
    }

    pub fn value(&self, v: VertexId) -> &Element {
        &self.values[&v]
    }

    pub fn values(&self) -> impl Iterator<Item = (&VertexId, &Element)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Element::is_zero)
    }

    /// When every value is `k·v` for one common scalar `k`, that scalar.
    pub fn as_scalar(&self, alg: &LeavittAlgebra<'_>) -> Option<Coeff> {
        let mut k: Option<Coeff> = None;
        for (&v, x) in &self.values {
            let kv = x.coeff_of(&Walk::vertex(v));
            if x != &alg.vertex(v).scale(&kv) {
                return None;
            }
            match &k {
                None => k = Some(kv),
                Some(prev) if *prev == kv => {}
                Some(_) => return None,
            }
        }
        k
    }

    /// Check the corner and intertwining conditions exactly; reports the
    /// first failure in declaration order.
    pub fn validate(&self, alg: &LeavittAlgebra<'_>) -> Result<(), SeedViolation> {
        let g = alg.graph();
        for v in g.vertices() {
            let Some(x) = self.values.get(&v) else {
                return Err(SeedViolation::Missing { vertex: v });
            };
            if !x.in_corner(v) {
                return Err(SeedViolation::NotInCorner { vertex: v });
            }
        }
        for f in g.edges() {
            let fe = alg.edge(f);
            let at_source = &self.values[&g.source(f)];
            let at_range = &self.values[&g.range(f)];
            if alg.multiply(at_source, &fe) != alg.multiply(&fe, at_range) {
                return Err(SeedViolation::RealIdentity { edge: f });
            }
        }
        for f in g.edges() {
            let fs = alg.ghost_edge(f);
            let at_source = &self.values[&g.source(f)];
            let at_range = &self.values[&g.range(f)];
            if alg.multiply(at_range, &fs) != alg.multiply(&fs, at_source) {
                return Err(SeedViolation::GhostIdentity { edge: f });
            }
        }
        Ok(())
    }

    /// The unique linear extension applied to an element:
    /// `τ(αβ*) = τ(s(α))·αβ*`.
    pub fn evaluate(&self, alg: &LeavittAlgebra<'_>, x: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            let at = &self.values[&w.alpha().source()];
            let image = alg.multiply(at, &alg.from_walk(w.clone()));
            out = out.add(&image.scale(c));
        }
        out
    }
}

/// A basis of the space of degree-bounded centralizer seeds.
#[derive(Clone, Debug)]
pub struct SeedSpace {
    pub degree: u32,
    /// Per-vertex cap actually used for the unknown supports.
    pub caps: BTreeMap<VertexId, u32>,
    pub dimension: usize,
    /// Solution dimension per homogeneous degree.
    pub per_grade: BTreeMap<i64, usize>,
    pub basis: Vec<CentralizerSeed>,
}

/// Per-vertex degree caps for the solver.
///
/// On a row-finite comet the Laurent parameter `x^k` needs support
/// `|α| ≤ k·|c| + level(v)` at a vertex of closure level `level(v)` over the
/// cycle, so the cap `d·|c| + level(v)` makes the solution space exactly the
/// parameters of exponent at most `d` — the `2d+1` axis. Everywhere else a
/// uniform cap suffices: solutions are exact centralizers regardless of the
/// cap, so graphs with scalar centroid report dimension 1 at every degree.
fn solver_caps(g: &Graph, d: u32) -> BTreeMap<VertexId, u32> {
    let check = is_comet(g).expect("engine implies row-finite");
    if check.comet {
        let cycle = check.cycle.expect("comet cycle");
        let closure = hs_closure(g, cycle.vertex_set());
        g.vertices()
            .map(|v| (v, d * cycle.len() + closure.levels[&v]))
            .collect()
    } else {
        g.vertices().map(|v| (v, d)).collect()
    }
}

/// Solve the exact intertwining system over the degree-capped corner bases.
///
/// The unknowns are the coefficients of each `values(v)` on
/// `corner_basis(v, cap(v))`; multiplication by an edge is homogeneous for
/// the ℤ-grading, so the system splits into independent blocks per degree and
/// each block is solved separately.
pub fn seed_space(alg: &LeavittAlgebra<'_>, d: u32) -> SeedSpace {
    let g = alg.graph();
    let caps = solver_caps(g, d);

    let mut by_grade: BTreeMap<i64, Vec<(VertexId, Walk)>> = BTreeMap::new();
    for v in g.vertices() {
        for w in alg.corner_basis(v, caps[&v]) {
            by_grade.entry(w.grade()).or_default().push((v, w));
        }
    }

    let mut per_grade: BTreeMap<i64, usize> = BTreeMap::new();
    let mut basis: Vec<CentralizerSeed> = Vec::new();

    for (&grade, unknowns) in &by_grade {
        let cols = unknowns.len();
        // Rows keyed by (edge, identity side, result walk).
        let mut rows: BTreeMap<(u32, bool, Walk), SparseVec> = BTreeMap::new();
        for (j, (v, m)) in unknowns.iter().enumerate() {
            let m_elem = alg.from_walk(m.clone());
            for f in g.edges() {
                if *v == g.source(f) {
                    accumulate(
                        &mut rows,
                        f.0,
                        false,
                        &alg.multiply(&m_elem, &alg.edge(f)),
                        j,
                        false,
                    );
                    accumulate(
                        &mut rows,
                        f.0,
                        true,
                        &alg.multiply(&alg.ghost_edge(f), &m_elem),
                        j,
                        true,
                    );
                }
                if *v == g.range(f) {
                    accumulate(
                        &mut rows,
                        f.0,
                        false,
                        &alg.multiply(&alg.edge(f), &m_elem),
                        j,
                        true,
                    );
                    accumulate(
                        &mut rows,
                        f.0,
                        true,
                        &alg.multiply(&m_elem, &alg.ghost_edge(f)),
                        j,
                        false,
                    );
                }
            }
        }

        let ns = nullspace(cols, rows.into_values());
        per_grade.insert(grade, ns.dimension());
        for vec in &ns.basis {
            let mut values: BTreeMap<VertexId, Vec<(Walk, Coeff)>> = BTreeMap::new();
            for (&col, c) in vec {
                let (v, w) = &unknowns[col];
                values.entry(*v).or_default().push((w.clone(), c.clone()));
            }
            let values = values
                .into_iter()
                .map(|(v, terms)| (v, alg.normal_form(terms)))
                .collect();
            basis.push(CentralizerSeed::new(g, values));
        }
    }

    per_grade.retain(|_, n| *n > 0);
    SeedSpace {
        degree: d,
        caps,
        dimension: basis.len(),
        per_grade,
        basis,
    }
}

fn accumulate(
    rows: &mut BTreeMap<(u32, bool, Walk), SparseVec>,
    edge: u32,
    ghost_side: bool,
    product: &Element,
    col: usize,
    negate: bool,
) {
    for (w, c) in product.terms() {
        let row = rows.entry((edge, ghost_side, w.clone())).or_default();
        let delta = if negate { -c.clone() } else { c.clone() };
        match row.get_mut(&col) {
            Some(cell) => {
                *cell += &delta;
                if cell.is_zero() {
                    row.remove(&col);
                }
            }
            None => {
                row.insert(col, delta);
            }
        }
    }
}
