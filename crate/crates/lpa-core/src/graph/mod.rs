//! Finite directed graphs and their structural theory.
//!
//! A graph is a finite list of named vertices and named edges with source and
//! range maps. Vertices may carry an infinite-emitter flag: the vertex then
//! stands for one with infinitely many outgoing edges whose ranges all occur
//! among the declared ones, so reachability and every other predicate can be
//! computed from the declared edges alone.
//!
//! All orderings are declaration order, so every derived object (cycles,
//! closures, bases) is reproducible bit for bit.

mod structure;

pub use structure::{
    condition_l, cycle_exits, cycles, gamma_sets, hs_closure, hs_subsets, is_comet,
    is_graded_simple, is_hereditary, is_saturated, is_simple, mt3, paths_to_h, Closure, CometCheck,
    CometFailure, ExitWitness, Mt3,
};

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Index of a vertex in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index of an edge in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug)]
struct VertexInfo {
    name: String,
    inf_emitter: bool,
}

#[derive(Clone, Debug)]
struct EdgeInfo {
    name: String,
    source: VertexId,
    range: VertexId,
}

/// A finite directed graph with optional infinite-emitter flags.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<VertexInfo>,
    edges: Vec<EdgeInfo>,
    /// Outgoing edges per vertex, in declaration order.
    out: Vec<Vec<EdgeId>>,
    /// Reflexive-transitive closure of the edge relation.
    reach: Vec<BTreeSet<VertexId>>,
}

/// How a vertex emits edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// No outgoing edges and not flagged.
    Sink,
    /// Finitely many outgoing edges, at least one.
    Regular,
    /// Flagged as an infinite emitter.
    InfiniteEmitter,
}

/// Partition of the vertex set by [`VertexKind`].
#[derive(Clone, Debug, Default)]
pub struct VertexKinds {
    pub sinks: Vec<VertexId>,
    pub regular: Vec<VertexId>,
    pub infinite: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("line {line}: duplicate identifier `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: edge `{edge}` endpoint `{name}` is not a declared vertex")]
    UndeclaredEndpoint {
        line: usize,
        edge: String,
        name: String,
    },
    #[error("line {line}: expected `{expected}`")]
    Malformed { line: usize, expected: &'static str },
    #[error("vertex `{name}` is flagged !inf but has no outgoing edge")]
    EmitterWithoutEdge { name: String },
    #[error("a graph needs at least one vertex")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("{op} requires a row-finite graph (infinite-emitter flags present)")]
    RowFiniteRequired { op: &'static str },
    #[error("vertex {0} is not in the hereditary saturated closure of H")]
    OutsideClosure(VertexId),
    #[error("vertex {0} already lies in H")]
    AlreadyInside(VertexId),
    #[error("{op} is only feasible for graphs with at most {max} vertices (got {got})")]
    TooLarge {
        op: &'static str,
        max: usize,
        got: usize,
    },
}

impl Graph {
    /// Parse the line-oriented graph DSL:
    ///
    /// ```text
    /// # comment
    /// vertex <id> [!inf]
    /// edge <id> <src> <dst>
    /// ```
    ///
    /// Vertices must be declared before edges use them. Vertex and edge names
    /// share one namespace.
    pub fn parse(text: &str) -> Result<Graph, DslError> {
        let mut vertices: Vec<VertexInfo> = Vec::new();
        let mut edges: Vec<EdgeInfo> = Vec::new();
        let mut names: BTreeMap<String, ()> = BTreeMap::new();
        let mut vertex_ids: BTreeMap<String, VertexId> = BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stmt = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut words = stmt.split_whitespace();
            let Some(head) = words.next() else { continue };
            match head {
                "vertex" => {
                    let Some(name) = words.next() else {
                        return Err(DslError::Malformed {
                            line,
                            expected: "vertex <id> [!inf]",
                        });
                    };
                    let flag = match words.next() {
                        None => false,
                        Some("!inf") => true,
                        Some(_) => {
                            return Err(DslError::Malformed {
                                line,
                                expected: "vertex <id> [!inf]",
                            })
                        }
                    };
                    if words.next().is_some() {
                        return Err(DslError::Malformed {
                            line,
                            expected: "vertex <id> [!inf]",
                        });
                    }
                    if names.insert(name.to_owned(), ()).is_some() {
                        return Err(DslError::Duplicate {
                            line,
                            name: name.to_owned(),
                        });
                    }
                    vertex_ids.insert(name.to_owned(), VertexId(vertices.len() as u32));
                    vertices.push(VertexInfo {
                        name: name.to_owned(),
                        inf_emitter: flag,
                    });
                }
                "edge" => {
                    let (Some(name), Some(src), Some(dst), None) =
                        (words.next(), words.next(), words.next(), words.next())
                    else {
                        return Err(DslError::Malformed {
                            line,
                            expected: "edge <id> <src> <dst>",
                        });
                    };
                    if names.insert(name.to_owned(), ()).is_some() {
                        return Err(DslError::Duplicate {
                            line,
                            name: name.to_owned(),
                        });
                    }
                    let source =
                        *vertex_ids
                            .get(src)
                            .ok_or_else(|| DslError::UndeclaredEndpoint {
                                line,
                                edge: name.to_owned(),
                                name: src.to_owned(),
                            })?;
                    let range =
                        *vertex_ids
                            .get(dst)
                            .ok_or_else(|| DslError::UndeclaredEndpoint {
                                line,
                                edge: name.to_owned(),
                                name: dst.to_owned(),
                            })?;
                    edges.push(EdgeInfo {
                        name: name.to_owned(),
                        source,
                        range,
                    });
                }
                _ => {
                    return Err(DslError::Malformed {
                        line,
                        expected: "vertex|edge|# comment",
                    })
                }
            }
        }

        if vertices.is_empty() {
            return Err(DslError::Empty);
        }
        let mut out: Vec<Vec<EdgeId>> = vertices.iter().map(|_| Vec::new()).collect();
        for (i, e) in edges.iter().enumerate() {
            out[e.source.0 as usize].push(EdgeId(i as u32));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.inf_emitter && out[i].is_empty() {
                return Err(DslError::EmitterWithoutEdge {
                    name: v.name.clone(),
                });
            }
        }

        let reach = compute_reach(&vertices, &edges, &out);
        Ok(Graph {
            vertices,
            edges,
            out,
            reach,
        })
    }

    /// Canonical serializer: vertices then edges, in stored order.
    pub fn to_dsl(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str("vertex ");
            s.push_str(&v.name);
            if v.inf_emitter {
                s.push_str(" !inf");
            }
            s.push('\n');
        }
        for e in &self.edges {
            s.push_str("edge ");
            s.push_str(&e.name);
            s.push(' ');
            s.push_str(&self.vertices[e.source.0 as usize].name);
            s.push(' ');
            s.push_str(&self.vertices[e.range.0 as usize].name);
            s.push('\n');
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(|i| VertexId(i as u32))
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(|i| EdgeId(i as u32))
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].range
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0 as usize]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0 as usize].name
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0 as usize].name
    }

    pub fn lookup_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .iter()
            .position(|v| v.name == name)
            .map(|i| VertexId(i as u32))
    }

    pub fn lookup_edge(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .map(|i| EdgeId(i as u32))
    }

    pub fn is_inf_emitter(&self, v: VertexId) -> bool {
        self.vertices[v.0 as usize].inf_emitter
    }

    /// True when no vertex carries the infinite-emitter flag.
    pub fn is_row_finite(&self) -> bool {
        self.vertices.iter().all(|v| !v.inf_emitter)
    }

    pub fn vertex_kind(&self, v: VertexId) -> VertexKind {
        if self.is_inf_emitter(v) {
            VertexKind::InfiniteEmitter
        } else if self.out_edges(v).is_empty() {
            VertexKind::Sink
        } else {
            VertexKind::Regular
        }
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.vertex_kind(v) == VertexKind::Regular
    }

    /// Partition of the vertex set into sinks, regular vertices and flagged
    /// infinite emitters.
    pub fn vertex_kinds(&self) -> VertexKinds {
        let mut kinds = VertexKinds::default();
        for v in self.vertices() {
            match self.vertex_kind(v) {
                VertexKind::Sink => kinds.sinks.push(v),
                VertexKind::Regular => kinds.regular.push(v),
                VertexKind::InfiniteEmitter => kinds.infinite.push(v),
            }
        }
        kinds
    }

    /// Reflexive-transitive reachability along declared edges.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.reach[u.0 as usize].contains(&v)
    }

    /// The tree `T(u)` of all vertices reachable from `u`.
    pub fn tree_of(&self, u: VertexId) -> &BTreeSet<VertexId> {
        &self.reach[u.0 as usize]
    }

    /// `T(X)`, the union of the trees of the members of `X`.
    pub fn tree(&self, xs: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut t = BTreeSet::new();
        for &x in xs {
            t.extend(self.tree_of(x).iter().copied());
        }
        t
    }

    /// All paths with source `v` and length at most `max_len`, in
    /// deterministic order (trivial path first, then DFS in declaration
    /// order).
    pub fn paths_from(&self, v: VertexId, max_len: u32) -> Vec<Path> {
        let mut acc = Vec::new();
        let mut stack = Vec::new();
        self.walk_paths(v, max_len, &mut stack, &mut acc);
        acc
    }

    fn walk_paths(&self, v: VertexId, budget: u32, stack: &mut Vec<EdgeId>, acc: &mut Vec<Path>) {
        acc.push(Path {
            base: first_source(self, stack, v),
            edges: stack.clone(),
        });
        if budget == 0 {
            return;
        }
        for &e in self.out_edges(v) {
            stack.push(e);
            self.walk_paths(self.range(e), budget - 1, stack, acc);
            stack.pop();
        }
    }
}

fn first_source(g: &Graph, stack: &[EdgeId], current: VertexId) -> VertexId {
    match stack.first() {
        Some(&e) => g.source(e),
        None => current,
    }
}

fn compute_reach(
    vertices: &[VertexInfo],
    edges: &[EdgeInfo],
    out: &[Vec<EdgeId>],
) -> Vec<BTreeSet<VertexId>> {
    let n = vertices.len();
    let mut reach = Vec::with_capacity(n);
    for start in 0..n {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut frontier = alloc::vec![VertexId(start as u32)];
        seen.insert(VertexId(start as u32));
        while let Some(v) = frontier.pop() {
            for &e in &out[v.0 as usize] {
                let w = edges[e.0 as usize].range;
                if seen.insert(w) {
                    frontier.push(w);
                }
            }
        }
        reach.push(seen);
    }
    reach
}

/// A finite path: a base vertex for trivial paths, otherwise a composable
/// edge sequence. The base always equals the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    base: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            base: v,
            edges: Vec::new(),
        }
    }

    /// Build from a nonempty edge sequence, checking composability.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Option<Path> {
        let first = *edges.first()?;
        for w in edges.windows(2) {
            if g.range(w[0]) != g.source(w[1]) {
                return None;
            }
        }
        Some(Path {
            base: g.source(first),
            edges,
        })
    }

    pub fn source(&self) -> VertexId {
        self.base
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        match self.edges.last() {
            Some(&e) => g.range(e),
            None => self.base,
        }
    }

    #[allow(clippy::len_without_is_empty)] // trivial paths answer is_trivial
    pub fn len(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Concatenation; requires `r(self) = s(other)`.
    pub fn concat(&self, g: &Graph, other: &Path) -> Path {
        debug_assert_eq!(self.range(g), other.source());
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path {
            base: if self.edges.is_empty() {
                other.base
            } else {
                self.base
            },
            edges,
        }
    }

    /// Append one edge; requires `r(self) = s(e)`.
    pub fn push(&self, g: &Graph, e: EdgeId) -> Path {
        debug_assert_eq!(self.range(g), g.source(e));
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            base: if self.edges.is_empty() {
                g.source(e)
            } else {
                self.base
            },
            edges,
        }
    }

    /// If `self` is a prefix of `longer`, the remaining path.
    pub fn strip_prefix(&self, g: &Graph, longer: &Path) -> Option<Path> {
        if self.source() != longer.source() || self.edges.len() > longer.edges.len() {
            return None;
        }
        if self.edges[..] != longer.edges[..self.edges.len()] {
            return None;
        }
        Some(Path {
            base: self.range(g),
            edges: longer.edges[self.edges.len()..].to_vec(),
        })
    }

    /// Vertex sequence `s(e1), ..., s(en)` (empty for trivial paths).
    pub fn edge_sources(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.source(e)).collect()
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay {
            path: self,
            graph: g,
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic term order: by length, then base, then edge sequence.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.edges.len(), self.base, &self.edges).cmp(&(
            other.edges.len(),
            other.base,
            &other.edges,
        ))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "{}", self.graph.vertex_name(self.path.base));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", self.graph.edge_name(e))?;
        }
        Ok(())
    }
}

/// A cycle: a nonempty closed path with pairwise distinct edge sources,
/// stored in the canonical rotation that starts at the smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    rep: Path,
    vertex_set: BTreeSet<VertexId>,
}

impl Cycle {
    /// Canonicalize a closed edge sequence by rotation. Returns `None` if the
    /// sequence is not a cycle (not closed, empty, or a repeated source).
    pub fn canonical(g: &Graph, edges: &[EdgeId]) -> Option<Cycle> {
        let path = Path::from_edges(g, edges.to_vec())?;
        if path.range(g) != path.source() {
            return None;
        }
        let sources = path.edge_sources(g);
        let set: BTreeSet<VertexId> = sources.iter().copied().collect();
        if set.len() != sources.len() {
            return None;
        }
        // Exactly one position holds the minimal vertex.
        let min = *set.iter().next().expect("nonempty");
        let pos = sources.iter().position(|&v| v == min).expect("present");
        let mut rotated: Vec<EdgeId> = Vec::with_capacity(edges.len());
        rotated.extend_from_slice(&path.edges()[pos..]);
        rotated.extend_from_slice(&path.edges()[..pos]);
        let rep = Path::from_edges(g, rotated)?;
        Some(Cycle {
            rep,
            vertex_set: set,
        })
    }

    /// Canonical representative path (starts at the smallest vertex on the
    /// cycle).
    pub fn rep(&self) -> &Path {
        &self.rep
    }

    /// The vertex set `c0`.
    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertex_set
    }

    pub fn base(&self) -> VertexId {
        self.rep.source()
    }

    #[allow(clippy::len_without_is_empty)] // cycles are nonempty by construction
    pub fn len(&self) -> u32 {
        self.rep.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertex_set.contains(&v)
    }

    /// The edge of the cycle whose source is `v`, if `v` lies on the cycle.
    pub fn edge_at(&self, g: &Graph, v: VertexId) -> Option<EdgeId> {
        self.rep.edges().iter().copied().find(|&e| g.source(e) == v)
    }

    /// Rotation of the cycle based at `v` (the path `σ'σ` when `c = σσ'` and
    /// `s(σ') = v`).
    pub fn rotation_at(&self, g: &Graph, v: VertexId) -> Option<Path> {
        let sources = self.rep.edge_sources(g);
        let pos = sources.iter().position(|&w| w == v)?;
        let mut edges: Vec<EdgeId> = Vec::with_capacity(sources.len());
        edges.extend_from_slice(&self.rep.edges()[pos..]);
        edges.extend_from_slice(&self.rep.edges()[..pos]);
        Path::from_edges(g, edges)
    }

    /// The prefix `σ` of the canonical representative with `c = σσ'` and
    /// `s(σ') = v`.
    pub fn prefix_to(&self, g: &Graph, v: VertexId) -> Option<Path> {
        if !self.contains(v) {
            return None;
        }
        if v == self.base() {
            return Some(Path::trivial(v));
        }
        let sources = self.rep.edge_sources(g);
        let pos = sources.iter().position(|&w| w == v)?;
        Path::from_edges(g, self.rep.edges()[..pos].to_vec())
    }

    /// The path along the cycle from `v` to the base (trivial when
    /// `v` is the base).
    pub fn run_to_base(&self, g: &Graph, v: VertexId) -> Option<Path> {
        if v == self.base() {
            return Some(Path::trivial(v));
        }
        let sources = self.rep.edge_sources(g);
        let pos = sources.iter().position(|&w| w == v)?;
        Path::from_edges(g, self.rep.edges()[pos..].to_vec())
    }
}
