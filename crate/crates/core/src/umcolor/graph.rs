use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, PointId, Range};

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;
    fn try_from(doc: GraphDoc) -> Result<Self> {
        Graph::from_edges(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphDoc {
    fn from(g: Graph) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Rejects self-loops and out-of-range endpoints; repeated edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PointOutOfRange { point: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph {
            adjacency: adjacency
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Vertex 0 joined to `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("clique edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g = Graph::from_edges(n, g.edges().chain([(n - 1, 0)])).expect("cycle edges are valid");
        }
        g
    }

    /// `rows x cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, edges).expect("grid edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Connected components of the subgraph induced by `alive`, each sorted,
    /// listed by smallest vertex.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if alive[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    /// Whether `u` induces a connected subgraph (one DFS sweep).
    pub fn is_connected_range(&self, u: &[PointId]) -> Result<bool> {
        if u.is_empty() {
            return Err(Error::EmptyRange);
        }
        let mut alive = vec![false; self.n()];
        for &x in u {
            if x >= self.n() {
                return Err(Error::PointOutOfRange { point: x, n: self.n() });
            }
            alive[x] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[u[0]] = true;
        let mut stack = vec![u[0]];
        let mut reached = 1;
        while let Some(a) = stack.pop() {
            for &b in &self.adjacency[a] {
                if alive[b] && !seen[b] {
                    seen[b] = true;
                    reached += 1;
                    stack.push(b);
                }
            }
        }
        let distinct = alive.iter().filter(|&&a| a).count();
        Ok(reached == distinct)
    }

    /// Explicit hypergraph of all connected vertex subsets. Only for tiny
    /// graphs used by exhaustive oracles; the online code paths test
    /// membership on demand instead.
    pub fn connected_subgraph_hypergraph(&self) -> Result<Hypergraph> {
        let n = self.n();
        if n > 16 {
            return Err(Error::SizeGuard(format!(
                "materializing connected subgraphs needs n <= 16, got {n}"
            )));
        }
        let mut ranges = Vec::new();
        for mask in 1u32..(1u32 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if self.is_connected_range(&members)? {
                ranges.push(Range::new(members)?);
            }
        }
        Hypergraph::new(n, ranges)
    }
}
