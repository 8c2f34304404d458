//! Dense-vertex undirected simple graphs on `0..n`.
//!
//! Values are immutable: every mutation-style operation returns a new graph.
//! Neighbor lists are kept sorted so iteration order (and everything derived
//! from it) is deterministic.

use thiserror::Error;

pub type Vertex = usize;
/// Undirected edge, always normalized so that `.0 < .1`.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("loop edge at vertex {v}")]
    LoopEdge { v: Vertex },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("edge ({u}, {v}) already present")]
    EdgeExists { u: Vertex, v: Vertex },
}

/// Normalize an unordered vertex pair into `Edge` form.
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n(), self.m, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Build from an explicit edge list. Rejects loops, out-of-range
    /// endpoints and duplicates (in either orientation).
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { v: u });
            }
            if g.has_edge(u, v) {
                let (u, v) = edge(u, v);
                return Err(GraphError::DuplicateEdge { u, v });
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex) {
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    /// Every vertex has degree exactly 3.
    pub fn is_cubic(&self) -> bool {
        self.n() > 0 && (0..self.n()).all(|v| self.degree(v) == 3)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Length of a shortest cycle, or `None` if the graph is acyclic.
    ///
    /// Breadth-first search from every vertex; a non-tree edge seen while
    /// scanning `u` closes a candidate of length `dist[u] + dist[w] + 1`.
    /// Candidates never undershoot the girth (two distinct shortest paths to
    /// a common vertex contain a cycle no longer than the candidate), and a
    /// search started on a shortest cycle realizes its length exactly.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                if let Some(b) = best {
                    // Deeper layers cannot improve on the current best.
                    if 2 * dist[u] + 1 >= b {
                        continue;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if parent[u] != w {
                        let cand = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        best
    }

    /// Delete a vertex set and relabel the rest compactly.
    /// Returns the induced graph and the map from new ids to old ids.
    pub fn induced_delete(&self, delete: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let n = self.n();
        let mut gone = vec![false; n];
        for &v in delete {
            gone[v] = true;
        }
        let kept: Vec<Vertex> = (0..n).filter(|&v| !gone[v]).collect();
        self.induced_on(&kept)
    }

    /// Induced subgraph on a sorted vertex list, relabeled compactly.
    /// Returns the graph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let kept: Vec<Vertex> = keep.to_vec();
        self.induced_on(&kept)
    }

    fn induced_on(&self, kept: &[Vertex]) -> (Graph, Vec<Vertex>) {
        debug_assert!(kept.windows(2).all(|w| w[0] < w[1]));
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::new(kept.len());
        for (i, &v) in kept.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_id[w];
                if j != usize::MAX && i < j {
                    g.insert_edge(i, j);
                }
            }
        }
        (g, kept.to_vec())
    }

    /// New graph with one extra edge.
    pub fn add_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::VertexOutOfRange { v: u, n });
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange { v, n });
        }
        if u == v {
            return Err(GraphError::LoopEdge { v: u });
        }
        if self.has_edge(u, v) {
            let (u, v) = edge(u, v);
            return Err(GraphError::EdgeExists { u, v });
        }
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    /// Two-coloring check; well-defined on disconnected graphs.
    pub fn is_bipartite(&self) -> bool {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = vec![s];
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_forest(&self) -> bool {
        // A graph is a forest iff m = n - #components.
        self.m + self.components().len() == self.n()
    }

    /// K_{3,3} test. On 6 vertices, 3-regular + bipartite forces K_{3,3}
    /// (a 3-regular graph on 6 vertices is connected, and its bipartition
    /// classes must both have size 3 with all cross pairs adjacent).
    pub fn is_k33(&self) -> bool {
        self.n() == 6 && self.is_cubic() && self.is_bipartite()
    }

    /// K_{2,3} test. Degree sequence (2,2,2,3,3) on 5 vertices plus
    /// bipartiteness forces K_{2,3}: no component can have fewer than 3
    /// vertices at minimum degree 2, and the three degree-2 vertices must
    /// all attach to both degree-3 vertices.
    pub fn is_k23(&self) -> bool {
        if self.n() != 5 {
            return false;
        }
        let mut degs: Vec<usize> = (0..5).map(|v| self.degree(v)).collect();
        degs.sort_unstable();
        degs == [2, 2, 2, 3, 3] && self.is_bipartite()
    }
}
