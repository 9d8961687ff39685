//! Undirected simple graph plus DIMACS `.col` I/O.
//!
//! Vertices are `0..n-1` internally; the DIMACS boundary converts to
//! and from the format's 1-based ids. Adjacency lists are kept sorted
//! so iteration order is identical across platforms.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for n = {n}")]
    OutOfRange { v: usize, n: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing `p edge <n> <m>` line")]
    MissingProblemLine,
    #[error("line {0}: duplicate `p` line")]
    DuplicateProblemLine(usize),
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex id {id} out of range [1, {n}]")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop on vertex {id}")]
    SelfLoop { line: usize, id: usize },
}

/// Immutable undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may appear in either
    /// orientation and duplicates collapse; self-loops and out-of-range
    /// endpoints are rejected.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { v: w, n });
                }
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { n, edges: normalized, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge set as `(u, v)` pairs with `u < v`, sorted ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v`, sorted ascending.
    ///
    /// Panics if `v >= n`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

/// Parse result: the graph plus non-fatal anomalies found in the file.
#[derive(Debug)]
pub struct ParsedDimacs {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Parses DIMACS `.col` text: `c` comment lines, one `p edge <n> <m>`
/// line, then `e <u> <v>` lines with 1-based vertex ids. LF and CRLF
/// line endings both accepted. A declared edge count that disagrees
/// with the distinct edge count is a warning, not an error; benchmark
/// files are routinely sloppy about it.
pub fn parse_dimacs(input: &str) -> Result<ParsedDimacs, DimacsError> {
    let mut n: Option<usize> = None;
    let mut declared_m = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if n.is_some() {
                    return Err(DimacsError::DuplicateProblemLine(lineno));
                }
                if tokens.len() < 4 {
                    return Err(DimacsError::Malformed {
                        line: lineno,
                        reason: "expected `p edge <n> <m>`".into(),
                    });
                }
                let nv = parse_number(tokens[2], lineno)?;
                declared_m = parse_number(tokens[3], lineno)?;
                n = Some(nv);
            }
            "e" => {
                let n = n.ok_or(DimacsError::MissingProblemLine)?;
                if tokens.len() < 3 {
                    return Err(DimacsError::Malformed {
                        line: lineno,
                        reason: "expected `e <u> <v>`".into(),
                    });
                }
                let u = parse_number(tokens[1], lineno)?;
                let v = parse_number(tokens[2], lineno)?;
                for id in [u, v] {
                    if id < 1 || id > n {
                        return Err(DimacsError::VertexOutOfRange { line: lineno, id, n });
                    }
                }
                if u == v {
                    return Err(DimacsError::SelfLoop { line: lineno, id: u });
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(DimacsError::Malformed {
                    line: lineno,
                    reason: format!("unknown line type `{other}`"),
                });
            }
        }
    }

    let n = n.ok_or(DimacsError::MissingProblemLine)?;
    // Graph::new cannot fail here: ranges and self-loops were checked above.
    let graph = Graph::new(n, edges).expect("validated edges");
    if graph.edge_count() != declared_m {
        warnings.push(format!(
            "declared m = {} but found {} distinct edges",
            declared_m,
            graph.edge_count()
        ));
    }
    Ok(ParsedDimacs { graph, warnings })
}

fn parse_number(token: &str, line: usize) -> Result<usize, DimacsError> {
    token.parse().map_err(|_| DimacsError::Malformed {
        line,
        reason: format!("`{token}` is not a non-negative integer"),
    })
}

/// Serializes a graph as DIMACS `.col`. `parse_dimacs(write_dimacs(g))`
/// reproduces `g` exactly.
pub fn write_dimacs(g: &Graph) -> String {
    write_dimacs_with_comments(g, &[])
}

/// Same as [`write_dimacs`] but with leading `c` comment lines.
pub fn write_dimacs_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let parsed = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(parsed.graph, triangle());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let parsed = parse_dimacs("p edge 2 1\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.graph.edges(), &[(0, 1)]);
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_dimacs("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, DimacsError::SelfLoop { line: 2, id: 1 });
    }

    #[test]
    fn rejects_out_of_range() {
        let err = parse_dimacs("p edge 2 1\ne 1 3\n").unwrap_err();
        assert!(matches!(err, DimacsError::VertexOutOfRange { id: 3, .. }));
    }

    #[test]
    fn rejects_missing_problem_line() {
        assert_eq!(parse_dimacs("e 1 2\n").unwrap_err(), DimacsError::MissingProblemLine);
        assert_eq!(parse_dimacs("c nothing\n").unwrap_err(), DimacsError::MissingProblemLine);
    }

    #[test]
    fn rejects_duplicate_problem_line() {
        let err = parse_dimacs("p edge 2 0\np edge 2 0\n").unwrap_err();
        assert_eq!(err, DimacsError::DuplicateProblemLine(2));
    }

    #[test]
    fn edge_count_mismatch_is_warning() {
        let parsed = parse_dimacs("p edge 3 5\ne 1 2\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.warnings.len(), 1);
    }

    #[test]
    fn accepts_crlf() {
        let parsed = parse_dimacs("p edge 2 1\r\ne 1 2\r\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
    }

    #[test]
    fn writes_triangle() {
        let text = write_dimacs(&triangle());
        assert!(text.contains("p edge 3 3"));
        assert_eq!(text.matches("\ne ").count() + usize::from(text.starts_with("e ")), 3);
    }

    #[test]
    fn writes_empty_graph() {
        let g = Graph::new(4, []).unwrap();
        assert_eq!(write_dimacs(&g), "p edge 4 0\n");
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(triangle().neighbors(0), &[1, 2]);
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.neighbors(1), &[0, 2]);
        let lonely = Graph::new(2, [] as [(usize, usize); 0]).unwrap();
        assert_eq!(lonely.neighbors(0), &[] as &[usize]);
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap();
        let total: usize = (0..5).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]).unwrap_err(), GraphError::SelfLoop(1));
        assert_eq!(
            Graph::new(3, [(0, 3)]).unwrap_err(),
            GraphError::OutOfRange { v: 3, n: 3 }
        );
    }
}
