//! Structural predicates: hereditary saturated closures, cycle enumeration,
//! exits, downward directedness, comets, and (graded) simplicity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Cycle, EdgeId, Graph, GraphError, Path, VertexId};

/// Hereditary saturated closure of a vertex set, together with the level at
/// which each vertex entered: level 0 is the tree `T(X)`, level n+1 adds the
/// regular vertices all of whose edges land in level ≤ n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub set: BTreeSet<VertexId>,
    pub levels: BTreeMap<VertexId, u32>,
}

/// `H` is hereditary when descendants of members stay inside.
pub fn is_hereditary(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    h.iter()
        .all(|&v| g.tree_of(v).iter().all(|w| h.contains(w)))
}

/// `H` is saturated when every regular vertex feeding only into `H` lies in
/// `H`.
pub fn is_saturated(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    g.vertices().all(|v| {
        if !g.is_regular(v) || h.contains(&v) {
            return true;
        }
        !g.out_edges(v).iter().all(|&e| h.contains(&g.range(e)))
    })
}

/// Smallest hereditary saturated superset, built by the level iteration.
/// Stops at the fixpoint, which is reached because the graph is finite.
pub fn hs_closure(g: &Graph, xs: &BTreeSet<VertexId>) -> Closure {
    let mut levels: BTreeMap<VertexId, u32> = BTreeMap::new();
    for v in g.tree(xs) {
        levels.insert(v, 0);
    }
    let mut level = 0u32;
    loop {
        level += 1;
        let current: BTreeSet<VertexId> = levels.keys().copied().collect();
        let mut added = false;
        for v in g.vertices() {
            if current.contains(&v) || !g.is_regular(v) {
                continue;
            }
            if g.out_edges(v)
                .iter()
                .all(|&e| current.contains(&g.range(e)))
            {
                levels.insert(v, level);
                added = true;
            }
        }
        if !added {
            break;
        }
    }
    Closure {
        set: levels.keys().copied().collect(),
        levels,
    }
}

/// All hereditary saturated subsets, by brute-force subset enumeration.
/// Guarded to small graphs; this doubles as the lattice summary for the
/// analyzer and as an independent oracle for `hs_closure`.
pub fn hs_subsets(g: &Graph) -> Result<Vec<BTreeSet<VertexId>>, GraphError> {
    const MAX: usize = 16;
    let n = g.vertex_count();
    if n > MAX {
        return Err(GraphError::TooLarge {
            op: "hs_subsets",
            max: MAX,
            got: n,
        });
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let h: BTreeSet<VertexId> = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        if is_hereditary(g, &h) && is_saturated(g, &h) {
            out.push(h);
        }
    }
    Ok(out)
}

/// All simple cycles up to rotation, in canonical form, ordered by
/// (length, edge sequence).
///
/// Backtracking enumeration: for each start vertex `s` (ascending) walk only
/// through vertices `> s` with pairwise distinct sources and close back at
/// `s`; every rotation class is visited exactly once, at its minimal vertex.
pub fn cycles(g: &Graph) -> Vec<Cycle> {
    let mut found = Vec::new();
    for s in g.vertices() {
        let mut stack: Vec<EdgeId> = Vec::new();
        let mut on_path: BTreeSet<VertexId> = BTreeSet::new();
        on_path.insert(s);
        dfs_cycles(g, s, s, &mut stack, &mut on_path, &mut found);
    }
    found.sort_by(|a, b| (a.rep().len(), a.rep().edges()).cmp(&(b.rep().len(), b.rep().edges())));
    found
}

fn dfs_cycles(
    g: &Graph,
    start: VertexId,
    v: VertexId,
    stack: &mut Vec<EdgeId>,
    on_path: &mut BTreeSet<VertexId>,
    found: &mut Vec<Cycle>,
) {
    for &e in g.out_edges(v) {
        let w = g.range(e);
        if w == start {
            stack.push(e);
            found.push(Cycle::canonical(g, stack).expect("closed walk with distinct sources"));
            stack.pop();
        } else if w > start && !on_path.contains(&w) {
            stack.push(e);
            on_path.insert(w);
            dfs_cycles(g, start, w, stack, on_path, found);
            on_path.remove(&w);
            stack.pop();
        }
    }
}

/// An exit for a cycle: a concrete edge leaving the cycle at one of its
/// vertices, or the implicit exit contributed by an infinite-emitter flag on
/// a cycle vertex (the undeclared parallel edges all differ from the cycle
/// edge).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitWitness {
    Edge { at: VertexId, edge: EdgeId },
    InfiniteEmitter { at: VertexId },
}

impl ExitWitness {
    pub fn at(&self) -> VertexId {
        match *self {
            ExitWitness::Edge { at, .. } | ExitWitness::InfiniteEmitter { at } => at,
        }
    }
}

/// All exits of a cycle, in deterministic order.
pub fn cycle_exits(g: &Graph, c: &Cycle) -> Vec<ExitWitness> {
    let mut exits = Vec::new();
    for &cycle_edge in c.rep().edges() {
        let v = g.source(cycle_edge);
        for &e in g.out_edges(v) {
            if e != cycle_edge {
                exits.push(ExitWitness::Edge { at: v, edge: e });
            }
        }
        if g.is_inf_emitter(v) {
            exits.push(ExitWitness::InfiniteEmitter { at: v });
        }
    }
    exits.sort();
    exits
}

/// Condition (L): every cycle has an exit.
pub fn condition_l(g: &Graph) -> bool {
    cycles(g).iter().all(|c| !cycle_exits(g, c).is_empty())
}

/// Downward directedness check result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mt3 {
    Holds,
    Fails { witness: (VertexId, VertexId) },
}

impl Mt3 {
    pub fn holds(&self) -> bool {
        matches!(self, Mt3::Holds)
    }
}

/// Condition (MT3): any two vertices have a common descendant. On failure
/// returns the first witness pair in index order. Reachability uses declared
/// edges only; under the flag semantics (undeclared ranges occur among the
/// declared ones) this loses nothing.
pub fn mt3(g: &Graph) -> Mt3 {
    let verts: Vec<VertexId> = g.vertices().collect();
    for (i, &v) in verts.iter().enumerate() {
        for &w in &verts[i + 1..] {
            if g.tree_of(v).intersection(g.tree_of(w)).next().is_none() {
                return Mt3::Fails { witness: (v, w) };
            }
        }
    }
    Mt3::Holds
}

/// Why a row-finite graph fails the comet test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CometFailure {
    /// Number of cycles differs from one.
    CycleCount(usize),
    /// A vertex that does not reach the cycle.
    Unreached(VertexId),
}

#[derive(Clone, Debug)]
pub struct CometCheck {
    pub comet: bool,
    /// The unique cycle when there is exactly one.
    pub cycle: Option<Cycle>,
    pub failure: Option<CometFailure>,
}

/// Comet test for row-finite graphs: exactly one cycle, reached from every
/// vertex. For finite graphs the remaining clause of the definition — every
/// infinite path ends in the cycle — follows from cycle uniqueness, because
/// an infinite path in a finite graph must eventually run inside a cycle.
pub fn is_comet(g: &Graph) -> Result<CometCheck, GraphError> {
    if !g.is_row_finite() {
        return Err(GraphError::RowFiniteRequired { op: "comet test" });
    }
    let cs = cycles(g);
    if cs.len() != 1 {
        let cycle = cs.first().cloned();
        return Ok(CometCheck {
            comet: false,
            cycle,
            failure: Some(CometFailure::CycleCount(cs.len())),
        });
    }
    let c = cs.into_iter().next().expect("one cycle");
    for v in g.vertices() {
        if g.tree_of(v).intersection(c.vertex_set()).next().is_none() {
            return Ok(CometCheck {
                comet: false,
                cycle: Some(c),
                failure: Some(CometFailure::Unreached(v)),
            });
        }
    }
    Ok(CometCheck {
        comet: true,
        cycle: Some(c),
        failure: None,
    })
}

/// Graded simplicity for row-finite graphs: the only hereditary saturated
/// subsets are trivial, equivalently every singleton closure is the whole
/// vertex set.
pub fn is_graded_simple(g: &Graph) -> Result<bool, GraphError> {
    if !g.is_row_finite() {
        return Err(GraphError::RowFiniteRequired {
            op: "graded simplicity test",
        });
    }
    let all: BTreeSet<VertexId> = g.vertices().collect();
    for v in g.vertices() {
        let mut seed = BTreeSet::new();
        seed.insert(v);
        if hs_closure(g, &seed).set != all {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Simplicity for row-finite graphs: graded simple plus Condition (L).
pub fn is_simple(g: &Graph) -> Result<bool, GraphError> {
    Ok(is_graded_simple(g)? && condition_l(g))
}

/// The finite path set `Π(v, H)`: paths from `v` that enter the hereditary
/// set `H` exactly at their final vertex. Defined for `v` in the closure of
/// `H` but outside `H`; the closure level of `v` bounds every such path.
pub fn paths_to_h(g: &Graph, v: VertexId, h: &BTreeSet<VertexId>) -> Result<Vec<Path>, GraphError> {
    debug_assert!(is_hereditary(g, h), "H must be hereditary");
    if h.contains(&v) {
        return Err(GraphError::AlreadyInside(v));
    }
    let closure = hs_closure(g, h);
    if !closure.set.contains(&v) {
        return Err(GraphError::OutsideClosure(v));
    }
    let mut acc = Vec::new();
    let mut stack: Vec<EdgeId> = Vec::new();
    collect_entry_paths(g, v, h, &mut stack, &mut acc);
    acc.sort();
    Ok(acc)
}

fn collect_entry_paths(
    g: &Graph,
    v: VertexId,
    h: &BTreeSet<VertexId>,
    stack: &mut Vec<EdgeId>,
    acc: &mut Vec<Path>,
) {
    for &e in g.out_edges(v) {
        stack.push(e);
        if h.contains(&g.range(e)) {
            acc.push(Path::from_edges(g, stack.clone()).expect("composable"));
        } else {
            collect_entry_paths(g, g.range(e), h, stack, acc);
        }
        stack.pop();
    }
}

/// Split of `s^{-1}(v)` by whether the edge lands outside (`Γ1`) or inside
/// (`Γ2`) the hereditary set `H`. Callers must have `v ∉ H`.
pub fn gamma_sets(g: &Graph, v: VertexId, h: &BTreeSet<VertexId>) -> (Vec<EdgeId>, Vec<EdgeId>) {
    debug_assert!(!h.contains(&v));
    let mut gamma1 = Vec::new();
    let mut gamma2 = Vec::new();
    for &e in g.out_edges(v) {
        if h.contains(&g.range(e)) {
            gamma2.push(e);
        } else {
            gamma1.push(e);
        }
    }
    (gamma1, gamma2)
}
