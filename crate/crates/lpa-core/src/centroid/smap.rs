//! The corner operator `S(x) = c*·x·c` at the base of a cycle, its collapse
//! behaviour on walks, and extraction of Laurent polynomials in the cycle.
//!
//! For a walk `w` in the corner, iterating `S` either kills it or turns it
//! into a pure power of the cycle; the bound `2·(longest path in w) + 2`
//! suffices because each application strips one cycle prefix from either
//! side. Once a power is reached it is a fixed point.

use super::CentroidError;
use crate::algebra::{Element, LeavittAlgebra, Walk};
use crate::graph::{Cycle, Graph, Path, VertexId};
use crate::laurent::LaurentPoly;
use crate::{qi, Coeff};

/// Context for the operator `x ↦ c*·x·c` on the corner at the cycle base.
#[derive(Clone, Debug)]
pub struct SMapContext {
    cycle: Cycle,
}

impl SMapContext {
    pub fn new(cycle: Cycle) -> SMapContext {
        SMapContext { cycle }
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn base(&self) -> VertexId {
        self.cycle.base()
    }
}

/// Outcome of iterating `S` on a corner walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseOutcome {
    /// `S^n(w) = 0` at the reported step.
    Dies { steps: u32 },
    /// `S^m(w)` is first a single real or ghost walk, and that walk is a pure
    /// cycle power `c^power` (negative exponents meaning ghost powers).
    Collapses { steps: u32, power: i64 },
    /// Neither happened within the iteration bound.
    Survives { bound: u32 },
}

/// One application `normal_form(c*·x·c)`. Errors when `x` is not supported
/// in the corner at the cycle base.
pub fn s_apply(
    alg: &LeavittAlgebra<'_>,
    ctx: &SMapContext,
    x: &Element,
) -> Result<Element, CentroidError> {
    let u = ctx.base();
    if !x.in_corner(u) {
        return Err(CentroidError::OutsideCorner { vertex: u });
    }
    let c = alg.path_elem(ctx.cycle.rep());
    Ok(alg.multiply3(&c.star(), x, &c))
}

/// If the walk is a pure power of the cycle based at its base vertex, the
/// exponent (0 for the base vertex itself, negative for ghost powers).
pub fn cycle_power_of(g: &Graph, cycle: &Cycle, w: &Walk) -> Option<i64> {
    let u = cycle.base();
    if w.is_vertex() {
        return (w.alpha().source() == u).then_some(0);
    }
    if w.beta().is_trivial() {
        return path_cycle_power(g, cycle, w.alpha()).map(|k| k as i64);
    }
    if w.alpha().is_trivial() {
        return path_cycle_power(g, cycle, w.beta()).map(|k| -(k as i64));
    }
    None
}

fn path_cycle_power(g: &Graph, cycle: &Cycle, p: &Path) -> Option<u32> {
    if p.source() != cycle.base() || !p.len().is_multiple_of(cycle.len()) {
        return None;
    }
    let rep = cycle.rep().edges();
    let ok = p.edges().chunks(rep.len()).all(|chunk| chunk == rep);
    let _ = g;
    ok.then(|| p.len() / cycle.len())
}

/// Iterate `S` on a walk up to `bound` applications.
///
/// Returns `Dies` at the first zero, `Collapses` at the first step where the
/// value is a single coefficient-one real or ghost walk that is a pure cycle
/// power, and `Survives` if the bound runs out. A real or ghost value that is
/// not a cycle power is not a fixed point and dies in later steps, so the
/// iteration simply continues past it.
pub fn s_collapse(
    alg: &LeavittAlgebra<'_>,
    ctx: &SMapContext,
    w: &Walk,
    bound: u32,
) -> Result<CollapseOutcome, CentroidError> {
    let u = ctx.base();
    if w.alpha().source() != u || w.beta().source() != u {
        return Err(CentroidError::OutsideCorner { vertex: u });
    }
    let mut x = alg.from_walk(w.clone());
    for step in 0..=bound {
        if x.is_zero() {
            return Ok(CollapseOutcome::Dies { steps: step });
        }
        if let Some((walk, coeff)) = x.as_single_term() {
            if *coeff == qi(1) && walk.is_path_or_ghost() {
                if let Some(power) = cycle_power_of(alg.graph(), ctx.cycle(), walk) {
                    return Ok(CollapseOutcome::Collapses { steps: step, power });
                }
            }
        }
        if step < bound {
            x = s_apply(alg, ctx, &x)?;
        }
    }
    Ok(CollapseOutcome::Survives { bound })
}

/// Failure value for [`laurent_extract`]: the first term that is not a cycle
/// power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentExtract {
    Poly(LaurentPoly),
    NonConforming(Walk),
}

/// Read an element of the corner at the cycle base as a Laurent polynomial
/// `Σ k_i·c^i`, when it is one; otherwise report the offending term.
pub fn laurent_extract(alg: &LeavittAlgebra<'_>, cycle: &Cycle, x: &Element) -> LaurentExtract {
    let mut coeffs: alloc::vec::Vec<(i64, Coeff)> = alloc::vec::Vec::new();
    for (w, c) in x.terms() {
        match cycle_power_of(alg.graph(), cycle, w) {
            Some(exp) => coeffs.push((exp, c.clone())),
            None => return LaurentExtract::NonConforming(w.clone()),
        }
    }
    LaurentExtract::Poly(LaurentPoly::from_coeffs(coeffs))
}
