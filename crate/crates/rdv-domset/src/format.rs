//! The version-tagged text format for RDV instances.
//!
//! ```text
//! RDV 1
//! nodes M root R
//! edge P C        (M-1 lines; line order fixes children order)
//! vertices N
//! vertex V T B    (N lines, each vertex id exactly once)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{HostTree, RdvRepresentation, TreeError};
use crate::{NodeId, VertexId};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {0}: expected `{1}`")]
    Malformed(usize, &'static str),
    #[error("line {0}: {1}")]
    BadNumber(usize, std::num::ParseIntError),
    #[error("unsupported header (expected `RDV 1`)")]
    BadHeader,
    #[error("unexpected end of input (expected {0})")]
    UnexpectedEof(&'static str),
    #[error("vertex {0} declared more than once")]
    DuplicateVertex(VertexId),
    #[error("vertex id {0} out of range (instance has {1} vertices)")]
    VertexOutOfRange(VertexId, usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &'static str) -> Result<(usize, Vec<&'a str>), ParseError> {
        for (idx, line) in self.inner.by_ref() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                return Ok((idx + 1, tokens));
            }
        }
        Err(ParseError::UnexpectedEof(what))
    }
}

fn num<T: std::str::FromStr<Err = std::num::ParseIntError>>(
    line: usize,
    tok: &str,
) -> Result<T, ParseError> {
    tok.parse().map_err(|e| ParseError::BadNumber(line, e))
}

/// Parses an instance from its text form.
pub fn parse(input: &str) -> Result<RdvRepresentation, ParseError> {
    let mut lines = Lines {
        inner: input.lines().enumerate(),
    };

    let (_, header) = lines.next("header")?;
    if header != ["RDV", "1"] {
        return Err(ParseError::BadHeader);
    }

    let (ln, toks) = lines.next("nodes line")?;
    if toks.len() != 4 || toks[0] != "nodes" || toks[2] != "root" {
        return Err(ParseError::Malformed(ln, "nodes M root R"));
    }
    let node_count: usize = num(ln, toks[1])?;
    let root: NodeId = num(ln, toks[3])?;

    let mut edges = Vec::with_capacity(node_count.saturating_sub(1));
    for _ in 1..node_count {
        let (ln, toks) = lines.next("edge line")?;
        if toks.len() != 3 || toks[0] != "edge" {
            return Err(ParseError::Malformed(ln, "edge P C"));
        }
        edges.push((num(ln, toks[1])?, num(ln, toks[2])?));
    }
    let tree = HostTree::new(node_count, root, &edges)?;

    let (ln, toks) = lines.next("vertices line")?;
    if toks.len() != 2 || toks[0] != "vertices" {
        return Err(ParseError::Malformed(ln, "vertices N"));
    }
    let n: usize = num(ln, toks[1])?;

    let mut top = vec![0 as NodeId; n];
    let mut bottom = vec![0 as NodeId; n];
    let mut seen = vec![false; n];
    for _ in 0..n {
        let (ln, toks) = lines.next("vertex line")?;
        if toks.len() != 4 || toks[0] != "vertex" {
            return Err(ParseError::Malformed(ln, "vertex V T B"));
        }
        let v: VertexId = num(ln, toks[1])?;
        if (v as usize) >= n {
            return Err(ParseError::VertexOutOfRange(v, n));
        }
        if seen[v as usize] {
            return Err(ParseError::DuplicateVertex(v));
        }
        seen[v as usize] = true;
        top[v as usize] = num(ln, toks[2])?;
        bottom[v as usize] = num(ln, toks[3])?;
    }

    Ok(RdvRepresentation { tree, top, bottom })
}

/// Writes the instance in the text format. Children are listed per parent
/// in stored order, so a parse round-trip reproduces the representation
/// exactly.
pub fn write(rep: &RdvRepresentation) -> String {
    let mut out = String::new();
    let tree = &rep.tree;
    writeln!(out, "RDV 1").unwrap();
    writeln!(out, "nodes {} root {}", tree.node_count(), tree.root()).unwrap();
    let mut stack = vec![tree.root()];
    while let Some(p) = stack.pop() {
        for &c in tree.children(p) {
            writeln!(out, "edge {} {}", p, c).unwrap();
            stack.push(c);
        }
    }
    writeln!(out, "vertices {}", rep.vertex_count()).unwrap();
    for v in 0..rep.vertex_count() {
        writeln!(out, "vertex {} {} {}", v, rep.top[v], rep.bottom[v]).unwrap();
    }
    out
}
