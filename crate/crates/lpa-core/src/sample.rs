//! Seeded random sampling of paths, walks and elements, shared by the
//! property batteries and the test suites.

use alloc::vec::Vec;

use crate::algebra::{Element, LeavittAlgebra, Walk};
use crate::graph::{Graph, Path, VertexId};
use crate::rng::SplitMix64;
use crate::{q, Coeff};

/// A random path from `v` of length at most `max_len` (uniform length pick,
/// then a uniform edge at each step; stops early at sinks).
pub fn random_path_from(g: &Graph, rng: &mut SplitMix64, v: VertexId, max_len: u32) -> Path {
    let target = rng.below(max_len as usize + 1) as u32;
    let mut path = Path::trivial(v);
    let mut at = v;
    for _ in 0..target {
        let outs = g.out_edges(at);
        if outs.is_empty() {
            break;
        }
        let &e = rng.choose(outs).expect("nonempty");
        path = path.push(g, e);
        at = g.range(e);
    }
    path
}

/// A random walk `αβ*` with `s(α) = s(β) = u`, when the corner admits one of
/// positive probability: `α` is sampled forward and `β` re-sampled until the
/// ranges agree (bounded retries).
pub fn random_corner_walk(
    g: &Graph,
    rng: &mut SplitMix64,
    u: VertexId,
    max_len: u32,
) -> Option<Walk> {
    for _ in 0..64 {
        let alpha = random_path_from(g, rng, u, max_len);
        let beta = random_path_from(g, rng, u, max_len);
        if let Some(w) = Walk::new(g, alpha, beta.clone()) {
            return Some(w);
        }
    }
    Some(Walk::vertex(u))
}

/// A random walk anywhere in the graph.
pub fn random_walk(g: &Graph, rng: &mut SplitMix64, max_len: u32) -> Option<Walk> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let &u = rng.choose(&verts)?;
    let alpha = random_path_from(g, rng, u, max_len);
    let end = alpha.range(g);
    // Walk beta backwards from a random source until it reaches `end`, or
    // retry a few times.
    for _ in 0..64 {
        let &v = rng.choose(&verts)?;
        let beta = random_path_from(g, rng, v, max_len);
        if beta.range(g) == end {
            return Walk::new(g, alpha, beta);
        }
    }
    Walk::new(g, alpha.clone(), Path::trivial(end))
}

fn random_coeff(rng: &mut SplitMix64) -> Coeff {
    const NUMS: [i64; 8] = [1, -1, 2, -2, 3, -3, 1, 5];
    const DENS: [i64; 4] = [1, 1, 2, 3];
    q(NUMS[rng.below(NUMS.len())], DENS[rng.below(DENS.len())])
}

/// A random element: up to `max_terms` random walks of degree at most
/// `max_len`, with small rational coefficients, normalized.
pub fn random_element(
    alg: &LeavittAlgebra<'_>,
    rng: &mut SplitMix64,
    max_len: u32,
    max_terms: usize,
) -> Element {
    let n = 1 + rng.below(max_terms.max(1));
    let mut raw = Vec::with_capacity(n);
    for _ in 0..n {
        if let Some(w) = random_walk(alg.graph(), rng, max_len) {
            raw.push((w, random_coeff(rng)));
        }
    }
    alg.normal_form(raw)
}

/// A random element supported in the corner at `u`.
pub fn random_corner_element(
    alg: &LeavittAlgebra<'_>,
    rng: &mut SplitMix64,
    u: VertexId,
    max_len: u32,
    max_terms: usize,
) -> Element {
    let n = 1 + rng.below(max_terms.max(1));
    let mut raw = Vec::with_capacity(n);
    for _ in 0..n {
        if let Some(w) = random_corner_walk(alg.graph(), rng, u, max_len) {
            raw.push((w, random_coeff(rng)));
        }
    }
    alg.normal_form(raw)
}
