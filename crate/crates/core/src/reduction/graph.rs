//! Undirected simple graphs and vertex 3-colorings.
//!
//! Text format: a header `n <vertices> m <edges>` followed by one `e <i> <j>`
//! line per edge, 1-based. Lines starting with `c` or `#` are comments.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{HdcError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are kept in the given order, which fixes the edge numbering.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(HdcError::InvalidGraph("the graph has no vertices".into()));
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(HdcError::InvalidGraph(format!("edge {{{u}, {v}}} has an endpoint outside 1..={n}")));
            }
            if u == v {
                return Err(HdcError::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(HdcError::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        Graph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("c ") || line == "c" {
                continue;
            }
            let err = |msg: String| HdcError::Parse { line: line_no, msg };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("expected an integer, found {s:?}")));
            match parts.as_slice() {
                ["n", n, "m", m] => {
                    if header.is_some() {
                        return Err(err("duplicate header".into()));
                    }
                    header = Some((num(n)?, num(m)?));
                }
                ["e", u, v] => {
                    if header.is_none() {
                        return Err(err("edge before the `n <int> m <int>` header".into()));
                    }
                    edges.push((num(u)?, num(v)?));
                }
                _ => return Err(err(format!("unrecognized line {line:?}"))),
            }
        }
        let (n, m) = header.ok_or(HdcError::Parse { line: 1, msg: "missing `n <int> m <int>` header".into() })?;
        if edges.len() != m {
            return Err(HdcError::InvalidGraph(format!("header announces {m} edges but {} were given", edges.len())));
        }
        Graph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {} m {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }

    /// A proper 3-coloring, if one exists (plain backtracking).
    pub fn find_3coloring(&self) -> Option<Coloring> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut colors = vec![u8::MAX; self.n + 1];
        fn go(v: usize, n: usize, adj: &[Vec<usize>], colors: &mut [u8]) -> bool {
            if v > n {
                return true;
            }
            for c in 0..3u8 {
                if adj[v].iter().all(|&w| colors[w] != c) {
                    colors[v] = c;
                    if go(v + 1, n, adj, colors) {
                        return true;
                    }
                }
            }
            colors[v] = u8::MAX;
            false
        }
        go(1, self.n, &adj, &mut colors).then(|| Coloring { colors: colors[1..].to_vec() })
    }
}

/// Colors in `{0, 1, 2}`, indexed by vertex (entry 0 is vertex 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<u8>,
}

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Result<Self> {
        if let Some(c) = colors.iter().find(|&&c| c > 2) {
            return Err(HdcError::InvalidArgument(format!("color {c} is not in {{0, 1, 2}}")));
        }
        Ok(Coloring { colors })
    }

    /// Color of vertex `v` (1-based).
    pub fn color(&self, v: usize) -> u8 {
        self.colors[v - 1]
    }

    /// First monochromatic edge, if any.
    pub fn conflict(&self, graph: &Graph) -> Option<(usize, usize)> {
        graph.edges().iter().copied().find(|&(u, v)| self.color(u) == self.color(v))
    }

    pub fn is_proper(&self, graph: &Graph) -> bool {
        self.colors.len() == graph.vertex_count() && self.conflict(graph).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = Graph::parse("c triangle\nn 3 m 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Graph::new(2, vec![(1, 1)]).is_err());
        assert!(Graph::new(2, vec![(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(2, vec![(1, 3)]).is_err());
        assert!(Graph::new(0, vec![]).is_err());
        assert!(Graph::parse("n 2 m 2\ne 1 2\n").is_err());
        match Graph::parse("n 2 m 1\nx 1 2\n").unwrap_err() {
            HdcError::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn colorability() {
        assert!(Graph::complete(3).unwrap().find_3coloring().is_some());
        assert!(Graph::complete(4).unwrap().find_3coloring().is_none());
        let c = Coloring::new(vec![0, 0, 1]).unwrap();
        assert_eq!(c.conflict(&Graph::complete(3).unwrap()), Some((1, 2)));
        assert!(Coloring::new(vec![3]).is_err());
    }
}
