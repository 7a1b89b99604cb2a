//! CNF formulas, DIMACS input/output and the signed variable–clause
//! incidence graph.
//!
//! The signed graph has one vertex per variable and one per clause; a
//! positive occurrence of a variable in a clause contributes an edge in
//! the positive sign, a negated occurrence an edge in the negative
//! sign. Width-based solving works on this graph, so the graph type
//! also admits arbitrary (non-bipartite) edge sets for fixtures and
//! stress tests.

use std::fmt::Write as _;
use thiserror::Error;

/// A literal: a 1-based variable index and its polarity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lit {
    pub var: u32,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Lit { var, positive: false }
    }

    fn from_dimacs(code: i64) -> Self {
        Lit { var: code.unsigned_abs() as u32, positive: code > 0 }
    }

    fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

/// A CNF formula. Clauses are literal sets: sorted, duplicate literals
/// removed. Tautological clauses (x and not-x together) are kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Self {
        let clauses = clauses
            .into_iter()
            .map(|mut c| {
                for lit in &c {
                    assert!(
                        lit.var >= 1 && lit.var as usize <= num_vars,
                        "literal variable {} out of range 1..={num_vars}",
                        lit.var
                    );
                }
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        CnfFormula { num_vars, clauses }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// Total number of literal occurrences, the usual formula size.
    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(|c| c.len()).sum()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{} ", lit.to_dimacs());
            }
            let _ = writeln!(out, "0");
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header {text:?}, expected `p cnf <vars> <clauses>`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: second `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: unreadable token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {lit} outside 1..={max}")]
    LiteralOutOfRange { line: usize, lit: i64, max: usize },
    #[error("missing clause terminator `0` at end of input")]
    MissingTerminator,
}

/// Result of a DIMACS parse: the formula plus non-fatal irregularities
/// worth surfacing (currently a header/body clause count mismatch).
#[derive(Debug)]
pub struct ParsedCnf {
    pub formula: CnfFormula,
    pub warnings: Vec<String>,
}

/// Parse DIMACS CNF text. Comment lines start with `c` (or `%`);
/// clauses are zero-terminated and may span lines; an empty clause is
/// a bare `0`.
pub fn parse_dimacs(input: &str) -> Result<ParsedCnf, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut in_clause = false;

    for (lineno, line) in input.lines().enumerate() {
        let line_num = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line: line_num });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(DimacsError::MalformedHeader {
                line: line_num,
                text: trimmed.to_string(),
            })?);
            continue;
        }
        let (num_vars, _) = header.ok_or(DimacsError::MissingHeader { line: line_num })?;
        for token in trimmed.split_whitespace() {
            let code: i64 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line: line_num, token: token.to_string() })?;
            if code == 0 {
                let mut clause = std::mem::take(&mut current);
                clause.sort_unstable();
                clause.dedup();
                clauses.push(clause);
                in_clause = false;
            } else {
                if code.unsigned_abs() as usize > num_vars {
                    return Err(DimacsError::LiteralOutOfRange {
                        line: line_num,
                        lit: code,
                        max: num_vars,
                    });
                }
                current.push(Lit::from_dimacs(code));
                in_clause = true;
            }
        }
    }

    if in_clause {
        return Err(DimacsError::MissingTerminator);
    }
    let (num_vars, declared) = header.ok_or(DimacsError::MissingHeader { line: 0 })?;
    let mut warnings = Vec::new();
    if clauses.len() != declared {
        warnings.push(format!(
            "header declares {declared} clauses but {} were read",
            clauses.len()
        ));
    }
    Ok(ParsedCnf { formula: CnfFormula { num_vars, clauses }, warnings })
}

/// What a graph vertex stands for; payloads are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VertexKind {
    Variable(u32),
    Clause(u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Pos, Sign::Neg];
}

/// An undirected graph with two edge sets (positive and negative).
/// Neighbor lists are sorted; parallel edges of opposite signs are
/// allowed, parallel edges of equal sign are merged.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedGraph {
    kinds: Vec<VertexKind>,
    pos: Vec<Vec<u32>>,
    neg: Vec<Vec<u32>>,
}

impl SignedGraph {
    pub fn with_edges(kinds: Vec<VertexKind>, pos_edges: &[(u32, u32)], neg_edges: &[(u32, u32)]) -> Self {
        let n = kinds.len();
        let build = |edges: &[(u32, u32)]| {
            let mut adj = vec![Vec::new(); n];
            for &(u, v) in edges {
                assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
                assert_ne!(u, v, "self loop");
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
            for list in &mut adj {
                list.sort_unstable();
                list.dedup();
            }
            adj
        };
        SignedGraph { pos: build(pos_edges), neg: build(neg_edges), kinds }
    }

    pub fn n(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, v: u32) -> VertexKind {
        self.kinds[v as usize]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn neighbors(&self, sign: Sign, v: u32) -> &[u32] {
        match sign {
            Sign::Pos => &self.pos[v as usize],
            Sign::Neg => &self.neg[v as usize],
        }
    }

    pub fn has_edge(&self, sign: Sign, u: u32, v: u32) -> bool {
        self.neighbors(sign, u).binary_search(&v).is_ok()
    }

    pub fn edge_count(&self, sign: Sign) -> usize {
        let adj = match sign {
            Sign::Pos => &self.pos,
            Sign::Neg => &self.neg,
        };
        adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn num_variables(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, VertexKind::Variable(_))).count()
    }

    pub fn num_clauses(&self) -> usize {
        self.kinds.len() - self.num_variables()
    }

    /// True iff every edge joins a variable vertex and a clause vertex.
    pub fn is_bipartite_by_kind(&self) -> bool {
        for v in 0..self.n() as u32 {
            for sign in Sign::BOTH {
                for &u in self.neighbors(sign, v) {
                    let crossing = matches!(
                        (self.kind(v), self.kind(u)),
                        (VertexKind::Variable(_), VertexKind::Clause(_))
                            | (VertexKind::Clause(_), VertexKind::Variable(_))
                    );
                    if !crossing {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The signed incidence graph of a formula. Vertices 0..num_vars are
/// the variables in index order, followed by one vertex per clause.
pub fn build_signed_graph(f: &CnfFormula) -> SignedGraph {
    let nv = f.num_vars();
    let kinds: Vec<VertexKind> = (1..=nv as u32)
        .map(VertexKind::Variable)
        .chain((1..=f.num_clauses() as u32).map(VertexKind::Clause))
        .collect();
    let mut pos_edges = Vec::new();
    let mut neg_edges = Vec::new();
    for (ci, clause) in f.clauses().iter().enumerate() {
        let cv = (nv + ci) as u32;
        for lit in clause {
            let vv = lit.var - 1;
            if lit.positive {
                pos_edges.push((vv, cv));
            } else {
                neg_edges.push((vv, cv));
            }
        }
    }
    let g = SignedGraph::with_edges(kinds, &pos_edges, &neg_edges);
    debug_assert!(g.is_bipartite_by_kind());
    g
}
