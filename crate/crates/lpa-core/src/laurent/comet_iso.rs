//! The concrete isomorphism from the algebra of a row-finite comet onto a
//! matrix algebra over the Laurent ring.
//!
//! The index set Λ consists of the paths ending at the canonical base vertex
//! of the unique cycle that meet the base only as their range. Every walk
//! `αβ*` is first pushed onto the cycle (expanding its range through the
//! finite entry paths and the forced no-exit cycle run), then split as
//! `α = γ·c^k`, `β = δ·c^l` with `γ, δ ∈ Λ`, and sent to `x^{k−l}·E_{γδ}`.
//! The map is linear, multiplicative and injective; those facts are what the
//! verification batteries check, since the construction itself only uses the
//! relations of the algebra.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{LaurentError, LaurentMatrix, LaurentPoly};
use crate::algebra::{Element, LeavittAlgebra};
use crate::graph::{is_comet, paths_to_h, Cycle, Graph, Path, VertexId};

/// The Λ-indexed matrix picture of a comet algebra.
#[derive(Clone, Debug)]
pub struct CometIso {
    cycle: Cycle,
    base: VertexId,
    /// Index paths, ordered by (length, edge sequence); position = matrix row.
    lambda: Vec<Path>,
    index: BTreeMap<Path, usize>,
    /// For every vertex w, the paths from w to the base that meet the base
    /// only at their end.
    descents: BTreeMap<VertexId, Vec<Path>>,
}

/// Build the isomorphism data for a row-finite comet.
pub fn comet_iso(alg: &LeavittAlgebra<'_>) -> Result<CometIso, LaurentError> {
    let g = alg.graph();
    let check = is_comet(g).map_err(|_| LaurentError::NotComet)?;
    if !check.comet {
        return Err(LaurentError::NotComet);
    }
    let cycle = check.cycle.expect("comet has its cycle");
    let base = cycle.base();

    let mut descents: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
    for w in g.vertices() {
        descents.insert(w, descent_paths(g, &cycle, w));
    }

    let mut lambda: Vec<Path> = Vec::new();
    for paths in descents.values() {
        lambda.extend(paths.iter().cloned());
    }
    lambda.sort_by(|a, b| (a.len(), a.edges()).cmp(&(b.len(), b.edges())));
    let index = lambda
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();

    Ok(CometIso {
        cycle,
        base,
        lambda,
        index,
        descents,
    })
}

/// Paths from `w` to the cycle base that visit the base only as their range:
/// the first cycle vertex they meet is reached by an entry path, after which
/// the no-exit cycle forces the run to the base.
fn descent_paths(g: &Graph, cycle: &Cycle, w: VertexId) -> Vec<Path> {
    if w == cycle.base() {
        return alloc::vec![Path::trivial(w)];
    }
    if cycle.contains(w) {
        return alloc::vec![cycle.run_to_base(g, w).expect("on cycle")];
    }
    let entries = paths_to_h(g, w, cycle.vertex_set()).expect("comet closure covers the graph");
    entries
        .into_iter()
        .map(|mu| {
            let hit = mu.range(g);
            let run = cycle.run_to_base(g, hit).expect("entry lands on cycle");
            mu.concat(g, &run)
        })
        .collect()
}

impl CometIso {
    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn matrix_size(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Path] {
        &self.lambda
    }

    pub fn lambda_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Split a path ending at the base as `γ·c^k` with `γ ∈ Λ`.
    fn split_at_base(&self, g: &Graph, p: &Path) -> (usize, i64) {
        debug_assert_eq!(p.range(g), self.base);
        let edges = p.edges();
        let mut first_hit = 0usize;
        let mut at = p.source();
        while at != self.base {
            at = g.range(edges[first_hit]);
            first_hit += 1;
        }
        let gamma = Path::from_edges(g, edges[..first_hit].to_vec())
            .unwrap_or_else(|| Path::trivial(self.base));
        let rest = edges.len() - first_hit;
        debug_assert_eq!(rest as u32 % self.cycle.len(), 0);
        let k = (rest as u32 / self.cycle.len()) as i64;
        let idx = self.index[&gamma];
        (idx, k)
    }

    /// Image of one walk as a sum of scaled matrix units.
    fn map_walk(
        &self,
        alg: &LeavittAlgebra<'_>,
        alpha: &Path,
        beta: &Path,
        coeff: &crate::Coeff,
        out: &mut LaurentMatrix,
    ) {
        let g = alg.graph();
        let range = alpha.range(g);
        for pi in &self.descents[&range] {
            let a = alpha.concat(g, pi);
            let b = beta.concat(g, pi);
            let (row, k) = self.split_at_base(g, &a);
            let (col, l) = self.split_at_base(g, &b);
            let cell = out.at_mut(row, col);
            *cell = cell.add(&LaurentPoly::monomial(k - l, coeff.clone()));
        }
    }

    /// The isomorphism applied to an element.
    pub fn map(&self, alg: &LeavittAlgebra<'_>, x: &Element) -> LaurentMatrix {
        let mut out = LaurentMatrix::zero(self.lambda.len());
        for (w, c) in x.terms() {
            self.map_walk(alg, w.alpha(), w.beta(), c, &mut out);
        }
        out
    }
}
