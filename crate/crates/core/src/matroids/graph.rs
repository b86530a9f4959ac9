use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setfunc::Subset;

/// Undirected multigraph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::new(
            j.vertices,
            j.edges.into_iter().map(|[u, v]| (u, v)).collect(),
        )
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> GraphJson {
        GraphJson {
            vertices: g.vertices,
            edges: g.edges.into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertices {
                    return Err(Error::Input(format!(
                        "edges[{i}]: vertex {w} out of range for {vertices} vertices"
                    )));
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: i, vertex: u });
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        Graph { vertices: n, edges }
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `|V(F)|` for an edge subset given by indices.
    pub fn span_size(&self, edges: impl IntoIterator<Item = usize>) -> usize {
        let mut seen = vec![false; self.vertices];
        let mut count = 0;
        for e in edges {
            let (u, v) = self.edges[e];
            for w in [u, v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                }
            }
        }
        count
    }

    pub fn span_size_of(&self, set: Subset) -> usize {
        self.span_size(set.iter())
    }

    /// Subgraph on the given edge indices, keeping every vertex.
    pub fn edge_subgraph(&self, edges: &[usize]) -> Graph {
        Graph {
            vertices: self.vertices,
            edges: edges.iter().map(|&e| self.edges[e]).collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Hypergraph whose vertex set is split into classes, with every edge
/// meeting every class in exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct DPartiteHypergraph {
    classes: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    classes: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphJson> for DPartiteHypergraph {
    type Error = Error;
    fn try_from(j: HypergraphJson) -> Result<Self> {
        DPartiteHypergraph::new(j.classes, j.edges)
    }
}

impl From<DPartiteHypergraph> for HypergraphJson {
    fn from(h: DPartiteHypergraph) -> Self {
        HypergraphJson {
            classes: h.classes,
            edges: h.edges,
        }
    }
}

impl DPartiteHypergraph {
    pub fn new(classes: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.len() != classes.len() {
                return Err(Error::Input(format!(
                    "edges[{i}]: expected {} vertices, one per class, found {}",
                    classes.len(),
                    e.len()
                )));
            }
            for (c, (&j, &n)) in e.iter().zip(&classes).enumerate() {
                if j >= n {
                    return Err(Error::Input(format!(
                        "edges[{i}]: vertex {j} out of range for class {c} of size {n}"
                    )));
                }
            }
        }
        Ok(DPartiteHypergraph { classes, edges })
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}
