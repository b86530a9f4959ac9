//! `(k,ℓ)`-count functions and the pebble game that decides independence in
//! their count matroids.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{Graph, Matroid};
use crate::error::{Error, Result};
use crate::setfunc::{SetFunction, Subset};

/// Incremental `(k,ℓ)` pebble game on a multigraph, valid for `0 ≤ ℓ < 2k`.
///
/// Every vertex starts with `k` pebbles. An accepted edge is directed out of
/// the vertex whose pebble covers it, so `pebbles[v] + outdeg(v) = k` holds
/// throughout.
#[derive(Clone, Debug)]
pub struct PebbleGame {
    k: usize,
    l: usize,
    pebbles: Vec<usize>,
    out: Vec<Vec<usize>>,
    tail: Vec<usize>,
    head: Vec<usize>,
}

impl PebbleGame {
    pub fn new(vertices: usize, k: usize, l: usize) -> Result<Self> {
        if k == 0 || l >= 2 * k {
            return Err(Error::InvalidParameter(format!(
                "pebble game needs k ≥ 1 and 0 ≤ ℓ < 2k, got (k,ℓ) = ({k},{l})"
            )));
        }
        Ok(PebbleGame {
            k,
            l,
            pebbles: vec![k; vertices],
            out: vec![Vec::new(); vertices],
            tail: Vec::new(),
            head: Vec::new(),
        })
    }

    pub fn params(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn accepted(&self) -> usize {
        self.tail.len()
    }

    /// Free pebbles at `v`.
    pub fn pebbles(&self, v: usize) -> usize {
        self.pebbles[v]
    }

    /// Inserts `uv` if it keeps the accepted set independent.
    pub fn try_insert(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        while self.pebbles[u] + self.pebbles[v] < self.l + 1 {
            if !(self.gather(u, v) || self.gather(v, u)) {
                return false;
            }
        }
        let (t, h) = if self.pebbles[u] > 0 { (u, v) } else { (v, u) };
        self.pebbles[t] -= 1;
        let id = self.tail.len();
        self.tail.push(t);
        self.head.push(h);
        self.out[t].push(id);
        true
    }

    /// Moves one pebble to `root` along a directed path avoiding `avoid`.
    fn gather(&mut self, root: usize, avoid: usize) -> bool {
        let n = self.pebbles.len();
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        seen[avoid] = true;
        let mut queue = VecDeque::from([root]);
        let mut found = None;
        'search: while let Some(x) = queue.pop_front() {
            for &e in &self.out[x] {
                let y = self.head[e];
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                via[y] = e;
                if self.pebbles[y] > 0 {
                    found = Some(y);
                    break 'search;
                }
                queue.push_back(y);
            }
        }
        let Some(mut y) = found else {
            return false;
        };
        self.pebbles[y] -= 1;
        self.pebbles[root] += 1;
        while y != root {
            let e = via[y];
            let x = self.tail[e];
            self.reverse(e);
            y = x;
        }
        true
    }

    fn reverse(&mut self, e: usize) {
        let (t, h) = (self.tail[e], self.head[e]);
        let pos = self.out[t]
            .iter()
            .position(|&x| x == e)
            .expect("edge listed at its tail");
        self.out[t].swap_remove(pos);
        self.out[h].push(e);
        self.tail[e] = h;
        self.head[e] = t;
    }

    #[cfg(test)]
    fn invariant_holds(&self) -> bool {
        (0..self.pebbles.len()).all(|v| self.pebbles[v] + self.out[v].len() == self.k)
    }
}

/// `c_{k,ℓ}(F) = k|V(F)| − ℓ` on the edges of a graph, with `c(∅) = 0`.
#[derive(Clone, Debug)]
pub struct CountFunction {
    graph: Arc<Graph>,
    k: usize,
    l: usize,
}

impl CountFunction {
    pub fn new(graph: Arc<Graph>, k: usize, l: usize) -> Result<Self> {
        if k == 0 || l >= 2 * k {
            return Err(Error::InvalidParameter(format!(
                "count function needs k ≥ 1 and 2k − ℓ > 0, got (k,ℓ) = ({k},{l})"
            )));
        }
        Ok(CountFunction { graph, k, l })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn matroid(&self) -> CountMatroid {
        CountMatroid {
            graph: self.graph.clone(),
            k: self.k,
            l: self.l,
        }
    }
}

impl SetFunction for CountFunction {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn eval(&self, set: Subset) -> i64 {
        if set.is_empty() {
            0
        } else {
            (self.k * self.graph.span_size_of(set)) as i64 - self.l as i64
        }
    }

    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        Some(pebble_game_rank(&self.graph, self.k, self.l, &set.elems()).ok()? as i64)
    }
}

/// Rank of the edges `edges` (indices into `graph`) in the `(k,ℓ)`-count matroid.
pub fn pebble_game_rank(graph: &Graph, k: usize, l: usize, edges: &[usize]) -> Result<usize> {
    let mut game = PebbleGame::new(graph.vertex_count(), k, l)?;
    for &e in edges {
        if e >= graph.edge_count() {
            return Err(Error::IndexOutOfRange {
                index: e,
                size: graph.edge_count(),
            });
        }
        let (u, v) = graph.edge(e);
        game.try_insert(u, v);
    }
    Ok(game.accepted())
}

/// The `(k,ℓ)`-count matroid on the edges of a graph.
#[derive(Clone, Debug)]
pub struct CountMatroid {
    graph: Arc<Graph>,
    k: usize,
    l: usize,
}

impl CountMatroid {
    pub fn new(graph: Arc<Graph>, k: usize, l: usize) -> Result<Self> {
        CountFunction::new(graph, k, l).map(|c| c.matroid())
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn params(&self) -> (usize, usize) {
        (self.k, self.l)
    }
}

impl Matroid for CountMatroid {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn rank(&self, elems: &[usize]) -> usize {
        pebble_game_rank(&self.graph, self.k, self.l, elems).expect("validated parameters")
    }
}

/// The matroid induced by `a·c₁,₁^MD + b·c₁,₀^MD − ℓ`, which is the
/// `(a+b, a+ℓ)`-count matroid when `a + 2b > ℓ`. `None` means every edge is
/// a loop.
pub fn graphic_bicircular_sum(
    graph: Arc<Graph>,
    a: usize,
    b: usize,
    l: usize,
) -> Option<CountMatroid> {
    (a + 2 * b > l).then(|| CountMatroid {
        graph,
        k: a + b,
        l: a + l,
    })
}
