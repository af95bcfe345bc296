//! Exact arithmetic in the Leavitt path algebra of a row-finite graph.
//!
//! Elements are finite ℚ-linear combinations of walks `αβ*` (real path times
//! ghost path with a common range), kept in normal form relative to a fixed
//! monomial basis. The basis excludes every walk whose `α` and `β` both end
//! with the distinguished *special edge* of their common source; the relation
//! `v = Σ_{s(e)=v} ee*` at regular vertices rewrites such walks into basic
//! ones. The rewrite terminates (each step shrinks a multiset measure that
//! weights special edges heaviest) and the surviving monomials are linearly
//! independent, so normal forms are canonical.

mod parse;

pub use parse::ElementParseError;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("the algebra engine requires a row-finite graph (relation CK2 is undefined at infinite emitters)")]
    Flagged,
    #[error("special edge for vertex {vertex} must be one of its outgoing edges")]
    BadBasis { vertex: VertexId },
    #[error("element does not belong to this graph's algebra")]
    ForeignElement,
}

/// A walk `αβ*`: two paths with the same range. The building block of every
/// element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    alpha: Path,
    beta: Path,
}

impl Walk {
    /// Checked constructor: requires `r(α) = r(β)`.
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Option<Walk> {
        if alpha.range(g) == beta.range(g) {
            Some(Walk { alpha, beta })
        } else {
            None
        }
    }

    pub fn vertex(v: VertexId) -> Walk {
        Walk {
            alpha: Path::trivial(v),
            beta: Path::trivial(v),
        }
    }

    /// A real path `α` (ghost part trivial).
    pub fn real(g: &Graph, alpha: Path) -> Walk {
        let beta = Path::trivial(alpha.range(g));
        Walk { alpha, beta }
    }

    /// A ghost path `β*` (real part trivial).
    pub fn ghost(g: &Graph, beta: Path) -> Walk {
        let alpha = Path::trivial(beta.range(g));
        Walk { alpha, beta }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    /// `(αβ*)* = βα*`.
    pub fn star(&self) -> Walk {
        Walk {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Degree in the ℤ-grading: `|α| − |β|`.
    pub fn grade(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn is_vertex(&self) -> bool {
        self.alpha.is_trivial() && self.beta.is_trivial()
    }

    /// True when the walk is a real path or a ghost path (one side trivial).
    pub fn is_path_or_ghost(&self) -> bool {
        self.alpha.is_trivial() || self.beta.is_trivial()
    }
}

/// An element in normal form: a finite map walk -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Walk, Coeff>,
}

impl Element {
    pub fn zero() -> Element {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Walk, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, w: &Walk) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    /// The single term, if the element is a scalar multiple of one walk.
    pub fn as_single_term(&self) -> Option<(&Walk, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            match terms.get_mut(w) {
                Some(cell) => {
                    *cell += c;
                    if cell.is_zero() {
                        terms.remove(w);
                    }
                }
                None => {
                    terms.insert(w.clone(), c.clone());
                }
            }
        }
        Element { terms }
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Coeff) -> Element {
        if k.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// The involution `x*`: swap real and ghost parts termwise. The basis is
    /// stable under the swap (the forbidden pattern is symmetric), so no
    /// renormalization is needed.
    pub fn star(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.star(), c.clone()))
                .collect(),
        }
    }

    /// Split into homogeneous components of the ℤ-grading.
    pub fn grade_split(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.grade())
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// The `∂` measure: the longest real-path part appearing in the normal
    /// form, with `∂(0) = 0`.
    pub fn partial_b(&self) -> u32 {
        self.terms.keys().map(|w| w.alpha.len()).max().unwrap_or(0)
    }

    /// The corner projection `u·x·u`.
    pub fn corner_project(&self, u: VertexId) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.alpha.source() == u && w.beta.source() == u)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term lives in the corner at `u`.
    pub fn in_corner(&self, u: VertexId) -> bool {
        self.terms
            .keys()
            .all(|w| w.alpha.source() == u && w.beta.source() == u)
    }

    /// Cheap well-formedness check against a graph (used to detect elements
    /// fed to the wrong algebra).
    pub fn fits(&self, g: &Graph) -> bool {
        self.terms.keys().all(|w| {
            w.alpha
                .edges()
                .iter()
                .chain(w.beta.edges())
                .all(|e| (e.0 as usize) < g.edge_count())
                && (w.alpha.source().0 as usize) < g.vertex_count()
                && (w.beta.source().0 as usize) < g.vertex_count()
        })
    }
}

/// The rewrite engine: a row-finite graph plus a choice of special edge at
/// each regular vertex. All operations are pure; the engine is freely
/// shareable.
#[derive(Clone, Debug)]
pub struct LeavittAlgebra<'g> {
    graph: &'g Graph,
    special: BTreeMap<VertexId, EdgeId>,
}

impl<'g> LeavittAlgebra<'g> {
    /// Engine with the default basis: the special edge of each regular
    /// vertex is its last-declared outgoing edge.
    pub fn new(graph: &'g Graph) -> Result<Self, EngineError> {
        if !graph.is_row_finite() {
            return Err(EngineError::Flagged);
        }
        let special = graph
            .vertices()
            .filter(|&v| graph.is_regular(v))
            .map(|v| {
                (
                    v,
                    *graph.out_edges(v).last().expect("regular vertex has edges"),
                )
            })
            .collect();
        Ok(LeavittAlgebra { graph, special })
    }

    /// Engine with an explicit special-edge choice.
    pub fn with_basis(
        graph: &'g Graph,
        special: BTreeMap<VertexId, EdgeId>,
    ) -> Result<Self, EngineError> {
        if !graph.is_row_finite() {
            return Err(EngineError::Flagged);
        }
        for v in graph.vertices().filter(|&v| graph.is_regular(v)) {
            match special.get(&v) {
                Some(&e) if graph.source(e) == v => {}
                _ => return Err(EngineError::BadBasis { vertex: v }),
            }
        }
        Ok(LeavittAlgebra { graph, special })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.special.get(&v).copied()
    }

    pub fn special_edges(&self) -> &BTreeMap<VertexId, EdgeId> {
        &self.special
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        Element {
            terms: [(Walk::vertex(v), crate::qi(1))].into_iter().collect(),
        }
    }

    pub fn edge(&self, e: EdgeId) -> Element {
        let p = Path::from_edges(self.graph, alloc::vec![e]).expect("edge is a path");
        self.from_walk(Walk::real(self.graph, p))
    }

    pub fn ghost_edge(&self, e: EdgeId) -> Element {
        let p = Path::from_edges(self.graph, alloc::vec![e]).expect("edge is a path");
        self.from_walk(Walk::ghost(self.graph, p))
    }

    pub fn path_elem(&self, p: &Path) -> Element {
        self.from_walk(Walk::real(self.graph, p.clone()))
    }

    pub fn ghost_path_elem(&self, p: &Path) -> Element {
        self.from_walk(Walk::ghost(self.graph, p.clone()))
    }

    /// The identity `Σ_v v` of the (finite-graph) algebra.
    pub fn one(&self) -> Element {
        Element {
            terms: self
                .graph
                .vertices()
                .map(|v| (Walk::vertex(v), crate::qi(1)))
                .collect(),
        }
    }

    pub fn from_walk(&self, w: Walk) -> Element {
        self.normal_form([(w, crate::qi(1))])
    }

    /// The shared final special edge of `α` and `β`, when the walk matches
    /// the forbidden rewrite pattern.
    fn forbidden_edge(&self, w: &Walk) -> Option<EdgeId> {
        let (&ae, &be) = (w.alpha.edges().last()?, w.beta.edges().last()?);
        if ae != be {
            return None;
        }
        (self.special.get(&self.graph.source(ae)) == Some(&ae)).then_some(ae)
    }

    /// Rewrite a raw term sum to normal form: repeatedly expand the inner
    /// `ee*` of any forbidden walk through `s(e) = Σ_f ff*`.
    pub fn normal_form<I>(&self, raw: I) -> Element
    where
        I: IntoIterator<Item = (Walk, Coeff)>,
    {
        let g = self.graph;
        let mut work: Vec<(Walk, Coeff)> = raw.into_iter().collect();
        let mut out: BTreeMap<Walk, Coeff> = BTreeMap::new();
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            debug_assert_eq!(w.alpha.range(g), w.beta.range(g));
            match self.forbidden_edge(&w) {
                None => {
                    let entry = out.entry(w).or_insert_with(Coeff::zero);
                    *entry += c;
                }
                Some(e) => {
                    let v = g.source(e);
                    let alpha = shorten(g, &w.alpha);
                    let beta = shorten(g, &w.beta);
                    for &f in g.out_edges(v) {
                        if f == e {
                            continue;
                        }
                        work.push((
                            Walk {
                                alpha: alpha.push(g, f),
                                beta: beta.push(g, f),
                            },
                            -c.clone(),
                        ));
                    }
                    work.push((Walk { alpha, beta }, c));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Element { terms: out }
    }

    /// Product of two walks: `(αβ*)(γδ*)` is `(αγ')δ*` when `γ = βγ'`,
    /// `α(δβ')*` when `β = γβ'`, and zero otherwise.
    pub fn mono_mul(&self, a: &Walk, b: &Walk) -> Option<Walk> {
        let g = self.graph;
        if let Some(gamma_rest) = a.beta.strip_prefix(g, &b.alpha) {
            Some(Walk {
                alpha: a.alpha.concat(g, &gamma_rest),
                beta: b.beta.clone(),
            })
        } else {
            b.alpha.strip_prefix(g, &a.beta).map(|beta_rest| Walk {
                alpha: a.alpha.clone(),
                beta: b.beta.concat(g, &beta_rest),
            })
        }
    }

    /// Bilinear product, renormalized.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        debug_assert!(x.fits(self.graph) && y.fits(self.graph));
        let mut raw: Vec<(Walk, Coeff)> = Vec::new();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some(w) = self.mono_mul(a, b) {
                    raw.push((w, ca * cb));
                }
            }
        }
        self.normal_form(raw)
    }

    pub fn multiply3(&self, x: &Element, y: &Element, z: &Element) -> Element {
        self.multiply(&self.multiply(x, y), z)
    }

    /// All basic walks `αβ*` with `s(α) = s(β) = u` and `|α|, |β| ≤ d`, in
    /// term order.
    pub fn corner_basis(&self, u: VertexId, d: u32) -> Vec<Walk> {
        let paths = self.graph.paths_from(u, d);
        self.pair_basis(&paths, &paths)
    }

    /// All basic walks of bounded length over the whole graph.
    pub fn basis_up_to(&self, d: u32) -> Vec<Walk> {
        let mut paths = Vec::new();
        for v in self.graph.vertices() {
            paths.extend(self.graph.paths_from(v, d));
        }
        self.pair_basis(&paths, &paths)
    }

    fn pair_basis(&self, alphas: &[Path], betas: &[Path]) -> Vec<Walk> {
        let g = self.graph;
        let mut set: BTreeSet<Walk> = BTreeSet::new();
        for a in alphas {
            for b in betas {
                if a.range(g) != b.range(g) {
                    continue;
                }
                let w = Walk {
                    alpha: a.clone(),
                    beta: b.clone(),
                };
                if self.forbidden_edge(&w).is_none() {
                    set.insert(w);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn display<'a>(&'a self, x: &'a Element) -> ElementDisplay<'a> {
        ElementDisplay {
            graph: self.graph,
            element: x,
        }
    }

    pub fn format_element(&self, x: &Element) -> String {
        use alloc::string::ToString;
        self.display(x).to_string()
    }

    /// Engine-level sanity: all five relation families under the product and
    /// normal form, with a counterexample per failing family.
    pub fn verify_relations(&self) -> RelationReport {
        let g = self.graph;
        let mut checks = Vec::new();

        let mut fail: Option<String> = None;
        'v_loop: for v in g.vertices() {
            for w in g.vertices() {
                let prod = self.multiply(&self.vertex(v), &self.vertex(w));
                let expect = if v == w {
                    self.vertex(v)
                } else {
                    Element::zero()
                };
                if prod != expect {
                    fail = Some(alloc::format!(
                        "{} * {}",
                        g.vertex_name(v),
                        g.vertex_name(w)
                    ));
                    break 'v_loop;
                }
            }
        }
        checks.push(RelationCheck {
            family: "V",
            pass: fail.is_none(),
            counterexample: fail,
        });

        let mut fail: Option<String> = None;
        for e in g.edges() {
            let el = self.edge(e);
            let left = self.multiply(&self.vertex(g.source(e)), &el);
            let right = self.multiply(&el, &self.vertex(g.range(e)));
            if left != el || right != el {
                fail = Some(alloc::format!("edge {}", g.edge_name(e)));
                break;
            }
        }
        checks.push(RelationCheck {
            family: "E1",
            pass: fail.is_none(),
            counterexample: fail,
        });

        let mut fail: Option<String> = None;
        for e in g.edges() {
            let ghost = self.ghost_edge(e);
            let left = self.multiply(&self.vertex(g.range(e)), &ghost);
            let right = self.multiply(&ghost, &self.vertex(g.source(e)));
            if left != ghost || right != ghost {
                fail = Some(alloc::format!("edge {}", g.edge_name(e)));
                break;
            }
        }
        checks.push(RelationCheck {
            family: "E2",
            pass: fail.is_none(),
            counterexample: fail,
        });

        let mut fail: Option<String> = None;
        'ck1_loop: for e in g.edges() {
            for f in g.edges() {
                let prod = self.multiply(&self.ghost_edge(e), &self.edge(f));
                let expect = if e == f {
                    self.vertex(g.range(e))
                } else {
                    Element::zero()
                };
                if prod != expect {
                    fail = Some(alloc::format!("{}* {}", g.edge_name(e), g.edge_name(f)));
                    break 'ck1_loop;
                }
            }
        }
        checks.push(RelationCheck {
            family: "CK1",
            pass: fail.is_none(),
            counterexample: fail,
        });

        let mut fail: Option<String> = None;
        for v in g.vertices().filter(|&v| g.is_regular(v)) {
            let mut sum = Element::zero();
            for &f in g.out_edges(v) {
                sum = sum.add(&self.multiply(&self.edge(f), &self.ghost_edge(f)));
            }
            if sum != self.vertex(v) {
                fail = Some(alloc::format!("vertex {}", g.vertex_name(v)));
                break;
            }
        }
        checks.push(RelationCheck {
            family: "CK2",
            pass: fail.is_none(),
            counterexample: fail,
        });

        RelationReport { checks }
    }
}

fn shorten(g: &Graph, p: &Path) -> Path {
    let edges = p.edges();
    debug_assert!(!edges.is_empty());
    if edges.len() == 1 {
        Path::trivial(g.source(edges[0]))
    } else {
        Path::from_edges(g, edges[..edges.len() - 1].to_vec()).expect("prefix composable")
    }
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub family: &'static str,
    pub pass: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub struct ElementDisplay<'a> {
    graph: &'a Graph,
    element: &'a Element,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.element.terms.iter().enumerate() {
            use num_traits::Signed;
            if i == 0 {
                write!(f, "{c}*")?;
            } else if c.is_negative() {
                write!(f, " - {}*", -c.clone())?;
            } else {
                write!(f, " + {c}*")?;
            }
            write_walk(f, self.graph, w)?;
        }
        Ok(())
    }
}

fn write_walk(f: &mut fmt::Formatter<'_>, g: &Graph, w: &Walk) -> fmt::Result {
    if w.is_vertex() {
        return write!(f, "{}", g.vertex_name(w.alpha.source()));
    }
    if !w.alpha.is_trivial() {
        write!(f, "{}", w.alpha.display(g))?;
    }
    if !w.beta.is_trivial() {
        write!(f, "~{}", w.beta.display(g))?;
    }
    Ok(())
}
