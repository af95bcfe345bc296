//! Constructive centralizers: the comet construction from a Laurent
//! polynomial, the corner evaluation map Ω, and reconstruction of a full seed
//! from one corner value.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{seed_space, CentralizerSeed, CentroidError, SeedViolation};
use crate::algebra::{Element, LeavittAlgebra, Walk};
use crate::graph::{cycles, hs_closure, is_comet, is_simple, mt3, Cycle, Path, VertexId};
use crate::laurent::LaurentPoly;

/// Evaluate a Laurent polynomial at the cycle: `Σ k_i c^i` with negative
/// exponents meaning ghost powers.
fn poly_at_cycle(alg: &LeavittAlgebra<'_>, cycle: &Cycle, p: &LaurentPoly) -> Element {
    let g = alg.graph();
    let mut out = Element::zero();
    for (&exp, k) in p.coeffs() {
        let reps = exp.unsigned_abs() as usize * cycle.len() as usize;
        let walk = if exp == 0 {
            Walk::vertex(cycle.base())
        } else {
            let mut edges = Vec::with_capacity(reps);
            for _ in 0..exp.unsigned_abs() {
                edges.extend_from_slice(cycle.rep().edges());
            }
            let path = Path::from_edges(g, edges).expect("cycle powers compose");
            if exp > 0 {
                Walk::real(g, path)
            } else {
                Walk::ghost(g, path)
            }
        };
        out = out.add(&alg.from_walk(walk).scale(k));
    }
    out
}

/// Build the centralizer of a row-finite comet attached to a Laurent
/// polynomial: `τ(u₀) = p(c, c*)` at the canonical cycle base, conjugates
/// along the cycle, and the sum rule `τ(w) = Σ_g g·τ(r(g))·g*` up the
/// closure levels. The returned seed always passes validation; the map
/// `p ↦ τ` is injective and multiplicative through evaluation.
pub fn comet_centralizer_from_laurent(
    alg: &LeavittAlgebra<'_>,
    p: &LaurentPoly,
) -> Result<CentralizerSeed, CentroidError> {
    let g = alg.graph();
    let check = is_comet(g).map_err(|_| CentroidError::NotComet)?;
    if !check.comet {
        return Err(CentroidError::NotComet);
    }
    let cycle = check.cycle.expect("comet cycle");
    let base = cycle.base();

    let mut values: BTreeMap<VertexId, Element> = BTreeMap::new();
    let tau_base = poly_at_cycle(alg, &cycle, p);
    for &v in cycle.vertex_set() {
        if v == base {
            values.insert(v, tau_base.clone());
            continue;
        }
        let sigma = cycle.prefix_to(g, v).expect("vertex on cycle");
        let se = alg.path_elem(&sigma);
        values.insert(v, alg.multiply3(&se.star(), &tau_base, &se));
    }

    // Saturation levels over the cycle: every off-cycle vertex enters at the
    // level where all its edges point into lower levels.
    let closure = hs_closure(g, cycle.vertex_set());
    let mut by_level: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
    for (&v, &lvl) in &closure.levels {
        if lvl > 0 {
            by_level.entry(lvl).or_default().push(v);
        }
    }
    for (_, verts) in by_level {
        for w in verts {
            let mut tau = Element::zero();
            for &f in g.out_edges(w) {
                let inner = values[&g.range(f)].clone();
                tau = tau.add(&alg.multiply3(&alg.edge(f), &inner, &alg.ghost_edge(f)));
            }
            values.insert(w, tau);
        }
    }

    let seed = CentralizerSeed::new(g, values);
    seed.validate(alg).map_err(CentroidError::InvalidSeed)?;
    Ok(seed)
}

/// The corner evaluation `Ω(τ) = τ(u)`.
pub fn omega(seed: &CentralizerSeed, u: VertexId) -> &Element {
    seed.value(u)
}

/// Result of reconstructing a seed from one corner value.
#[derive(Clone, Debug)]
pub enum Reconstruction {
    Seed(CentralizerSeed),
    /// Two paths from the anchor to the same vertex conjugate `x` to
    /// different values.
    PathDependent {
        vertex: VertexId,
        first: Path,
        second: Path,
    },
    /// The propagated assignment is not a centralizer seed.
    Invalid(SeedViolation),
}

/// Rebuild the unique centralizer with `τ(u) = x`, when one exists.
///
/// Downward, `τ(v) := λ*·x·λ` for paths `λ: u -> v`; path independence is
/// verified over every path of length at most `|E⁰| + max cycle length`
/// rather than assumed. Upward, saturation levels are filled by the sum rule
/// `τ(w) = Σ ff·τ(r(f))·f*`. The final assignment is validated before it is
/// returned, so a spurious input is always caught.
///
/// Requires downward directedness and `closure({u}) = E⁰`.
pub fn reconstruct_from_value(
    alg: &LeavittAlgebra<'_>,
    u: VertexId,
    x: &Element,
) -> Result<Reconstruction, CentroidError> {
    let g = alg.graph();
    if !mt3(g).holds() {
        return Err(CentroidError::NotPrime);
    }
    let mut seed_set = alloc::collections::BTreeSet::new();
    seed_set.insert(u);
    let closure = hs_closure(g, &seed_set);
    if closure.set.len() != g.vertex_count() {
        return Err(CentroidError::ClosureIncomplete { vertex: u });
    }
    if !x.in_corner(u) {
        return Err(CentroidError::OutsideCorner { vertex: u });
    }

    let max_cycle = cycles(g).iter().map(|c| c.len()).max().unwrap_or(0);
    let bound = g.vertex_count() as u32 + max_cycle;
    let probes = g.paths_from(u, bound);

    let mut values: BTreeMap<VertexId, Element> = BTreeMap::new();
    let mut witnesses: BTreeMap<VertexId, Path> = BTreeMap::new();
    for lam in &probes {
        let v = lam.range(g);
        let le = alg.path_elem(lam);
        let candidate = alg.multiply3(&le.star(), x, &le);
        match values.get(&v) {
            None => {
                values.insert(v, candidate);
                witnesses.insert(v, lam.clone());
            }
            Some(existing) if *existing == candidate => {}
            Some(_) => {
                return Ok(Reconstruction::PathDependent {
                    vertex: v,
                    first: witnesses[&v].clone(),
                    second: lam.clone(),
                });
            }
        }
    }

    let mut by_level: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
    for (&v, &lvl) in &closure.levels {
        if lvl > 0 {
            by_level.entry(lvl).or_default().push(v);
        }
    }
    for (_, verts) in by_level {
        for w in verts {
            let mut tau = Element::zero();
            for &f in g.out_edges(w) {
                let inner = values[&g.range(f)].clone();
                tau = tau.add(&alg.multiply3(&alg.edge(f), &inner, &alg.ghost_edge(f)));
            }
            values.insert(w, tau);
        }
    }

    let seed = CentralizerSeed::new(g, values);
    match seed.validate(alg) {
        Ok(()) => Ok(Reconstruction::Seed(seed)),
        Err(violation) => Ok(Reconstruction::Invalid(violation)),
    }
}

/// Report for the membership check `C_u ∩ Path = {u}` over a solved seed
/// space: on a simple graph every basis seed must take a scalar value at `u`.
#[derive(Clone, Debug)]
pub struct PathMembershipReport {
    pub vertex: VertexId,
    pub degree: u32,
    pub seeds: usize,
    /// Indices of basis seeds whose value at the vertex is not scalar.
    pub failures: Vec<usize>,
}

impl PathMembershipReport {
    pub fn all_scalar(&self) -> bool {
        self.failures.is_empty()
    }
}

/// On a simple graph, verify over `seed_space(d)` that every basis seed has
/// `values(u) ∈ ℚ·u`, which pins `C_u ∩ Path(E)` to the vertex itself.
pub fn path_membership_checks(
    alg: &LeavittAlgebra<'_>,
    u: VertexId,
    d: u32,
) -> Result<PathMembershipReport, CentroidError> {
    let g = alg.graph();
    if !is_simple(g).map_err(|_| CentroidError::NotSimple)? {
        return Err(CentroidError::NotSimple);
    }
    let space = seed_space(alg, d);
    let mut failures = Vec::new();
    for (i, seed) in space.basis.iter().enumerate() {
        let val = seed.value(u);
        let k = val.coeff_of(&Walk::vertex(u));
        if val != &alg.vertex(u).scale(&k) {
            failures.push(i);
        }
    }
    Ok(PathMembershipReport {
        vertex: u,
        degree: d,
        seeds: space.basis.len(),
        failures,
    })
}
