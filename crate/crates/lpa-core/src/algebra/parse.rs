//! Text syntax for elements.
//!
//! A term is `coeff*walk` (the coefficient may be omitted when it is 1); a
//! walk is `alpha~beta` where `~` separates the real part from the ghost part
//! (the star on `beta` is implied), `.` concatenates edge names, and a bare
//! vertex name denotes that vertex. Either side of `~` may be omitted: `a.b`
//! is a real path, `~a.b` is its ghost. Terms are joined by `+` or `-`.
//!
//! Example: `3/2*a.b~c + 1*v - 2*~c`.
//!
//! The canonical printer in [`super::ElementDisplay`] mirrors this grammar.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use super::{Element, LeavittAlgebra, Walk};
use crate::graph::{Graph, Path, VertexId};
use crate::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElementParseError {
    #[error("offset {pos}: empty term")]
    EmptyTerm { pos: usize },
    #[error("offset {pos}: bad coefficient `{text}`")]
    BadCoeff { pos: usize, text: String },
    #[error("offset {pos}: unknown vertex or edge `{name}`")]
    UnknownName { pos: usize, name: String },
    #[error("offset {pos}: vertex `{name}` cannot appear inside a path")]
    VertexInPath { pos: usize, name: String },
    #[error("offset {pos}: edges do not compose at `{name}`")]
    NotComposable { pos: usize, name: String },
    #[error(
        "offset {pos}: real part ends at `{alpha_range}` but ghost part ends at `{beta_range}`"
    )]
    RangeMismatch {
        pos: usize,
        alpha_range: String,
        beta_range: String,
    },
}

impl<'g> LeavittAlgebra<'g> {
    /// Parse the element syntax against this algebra's graph.
    pub fn parse_element(&self, text: &str) -> Result<Element, ElementParseError> {
        if text.trim() == "0" && self.graph().lookup_vertex("0").is_none() {
            // The canonical printer spells the zero element "0".
            return Ok(Element::zero());
        }
        let mut raw: Vec<(Walk, Coeff)> = Vec::new();
        for (pos, sign, term) in split_terms(text) {
            let term = term.trim();
            if term.is_empty() {
                return Err(ElementParseError::EmptyTerm { pos });
            }
            let (coeff, walk_text, walk_pos) = match term.find('*') {
                Some(star) => {
                    let coeff_text = term[..star].trim();
                    let c =
                        Coeff::from_str(coeff_text).map_err(|_| ElementParseError::BadCoeff {
                            pos,
                            text: coeff_text.to_string(),
                        })?;
                    (c, term[star + 1..].trim(), pos + star + 1)
                }
                None => (crate::qi(1), term, pos),
            };
            let walk = parse_walk(self.graph(), walk_text, walk_pos)?;
            let c = if sign { -coeff } else { coeff };
            raw.push((walk, c));
        }
        Ok(self.normal_form(raw))
    }
}

/// Split on top-level `+`/`-`, yielding (offset, negated?, slice).
fn split_terms(text: &str) -> Vec<(usize, bool, &str)> {
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut negated = false;
    for (i, ch) in text.char_indices() {
        if ch == '+' || ch == '-' {
            let before = text[start..i].trim();
            if before.is_empty() && out.is_empty() && !negated {
                // Leading sign.
                negated = ch == '-';
                start = i + 1;
                continue;
            }
            out.push((start, negated, &text[start..i]));
            negated = ch == '-';
            start = i + 1;
        }
    }
    out.push((start, negated, &text[start..]));
    out
}

fn parse_walk(g: &Graph, text: &str, pos: usize) -> Result<Walk, ElementParseError> {
    let (alpha_text, beta_text) = match text.find('~') {
        Some(t) => (text[..t].trim(), Some(text[t + 1..].trim())),
        None => (text.trim(), None),
    };
    let alpha = parse_path_expr(g, alpha_text, pos)?;
    let beta = match beta_text {
        Some(b) if !b.is_empty() => parse_path_expr(g, b, pos)?,
        _ => None,
    };
    let walk = match (alpha, beta) {
        (Some(a), Some(b)) => {
            Walk::new(g, a.clone(), b.clone()).ok_or_else(|| ElementParseError::RangeMismatch {
                pos,
                alpha_range: g.vertex_name(a.range(g)).to_string(),
                beta_range: g.vertex_name(b.range(g)).to_string(),
            })?
        }
        (Some(a), None) => Walk::real(g, a),
        (None, Some(b)) => Walk::ghost(g, b),
        (None, None) => return Err(ElementParseError::EmptyTerm { pos }),
    };
    Ok(walk)
}

/// A dotted path expression: either one vertex name or a composable sequence
/// of edge names. Empty input yields `None`.
fn parse_path_expr(g: &Graph, text: &str, pos: usize) -> Result<Option<Path>, ElementParseError> {
    if text.is_empty() {
        return Ok(None);
    }
    let names: Vec<&str> = text.split('.').map(str::trim).collect();
    if names.len() == 1 {
        if let Some(v) = g.lookup_vertex(names[0]) {
            return Ok(Some(Path::trivial(v)));
        }
    }
    let mut edges = Vec::with_capacity(names.len());
    let mut prev_range: Option<VertexId> = None;
    for name in names {
        if g.lookup_vertex(name).is_some() {
            return Err(ElementParseError::VertexInPath {
                pos,
                name: name.to_string(),
            });
        }
        let e = g
            .lookup_edge(name)
            .ok_or_else(|| ElementParseError::UnknownName {
                pos,
                name: name.to_string(),
            })?;
        if let Some(r) = prev_range {
            if r != g.source(e) {
                return Err(ElementParseError::NotComposable {
                    pos,
                    name: name.to_string(),
                });
            }
        }
        prev_range = Some(g.range(e));
        edges.push(e);
    }
    Ok(Path::from_edges(g, edges))
}
