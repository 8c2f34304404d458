//! Structural analysis: bridges, good bridges, degree-2 paths, and safe
//! vertex removal.
//!
//! A bridge uv is *good* when both components of G - uv contain a vertex
//! whose degree in G is at most 2. Cubic graphs therefore have no good
//! bridges at all, and every bridge with a degree-<=2 endpoint is good on
//! that side automatically.

use crate::graph::{edge, Edge, Graph, Vertex};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has {n} vertices, need at least 2")]
    TooSmall { n: usize },
}

/// One bridge with the two sides of its removal and their low-degree flags.
/// `side_u` contains the smaller endpoint. `low_u` records whether `side_u`
/// holds a vertex of degree <= 2 in the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeInfo {
    pub edge: Edge,
    pub side_u: Vec<Vertex>,
    pub side_v: Vec<Vertex>,
    pub low_u: bool,
    pub low_v: bool,
}

impl BridgeInfo {
    pub fn good(&self) -> bool {
        self.low_u && self.low_v
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BridgeReport {
    pub bridges: Vec<BridgeInfo>,
}

impl BridgeReport {
    pub fn count(&self) -> usize {
        self.bridges.len()
    }

    pub fn good_count(&self) -> usize {
        self.bridges.iter().filter(|b| b.good()).count()
    }

    pub fn good_edges(&self) -> Vec<Edge> {
        self.bridges.iter().filter(|b| b.good()).map(|b| b.edge).collect()
    }

    pub fn is_bridge(&self, u: Vertex, v: Vertex) -> bool {
        let e = edge(u, v);
        self.bridges.iter().any(|b| b.edge == e)
    }

    pub fn is_good(&self, u: Vertex, v: Vertex) -> bool {
        let e = edge(u, v);
        self.bridges.iter().any(|b| b.edge == e && b.good())
    }

    /// Good bridges incident to `v`, in lexicographic edge order.
    pub fn good_incident(&self, v: Vertex) -> Vec<Edge> {
        self.bridges
            .iter()
            .filter(|b| b.good() && (b.edge.0 == v || b.edge.1 == v))
            .map(|b| b.edge)
            .collect()
    }
}

/// All bridges of `g` in lexicographic order, via iterative lowpoint DFS.
pub fn bridges(g: &Graph) -> Vec<Edge> {
    let n = g.n();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut timer = 1usize;
    let mut out = Vec::new();
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        stack.push((s, usize::MAX, 0));
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.neighbors(u).len() {
                let w = g.neighbors(u)[*idx];
                *idx += 1;
                if !visited[w] {
                    visited[w] = true;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, u, 0));
                } else if w != parent {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        out.push(edge(p, u));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Full bridge report: for each bridge, the two sides of its removal and the
/// good-bridge classification.
pub fn bridge_report(g: &Graph) -> BridgeReport {
    let bs = bridges(g);
    let mut infos = Vec::with_capacity(bs.len());
    for (u, v) in bs {
        let side_u = side_of(g, u, (u, v));
        let side_v = side_of(g, v, (u, v));
        let low = |side: &[Vertex]| side.iter().any(|&x| g.degree(x) <= 2);
        let low_u = low(&side_u);
        let low_v = low(&side_v);
        infos.push(BridgeInfo { edge: (u, v), side_u, side_v, low_u, low_v });
    }
    BridgeReport { bridges: infos }
}

/// Vertices reachable from `start` without crossing `blocked`, sorted.
fn side_of(g: &Graph, start: Vertex, blocked: Edge) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if edge(u, w) == blocked || seen[w] {
                continue;
            }
            seen[w] = true;
            out.push(w);
            stack.push(w);
        }
    }
    out.sort_unstable();
    out
}

/// Path u_1 v_1 u_2 v_2 ... u_k v_k u_{k+1} where every v_i has degree 2 in
/// the host graph. Stored as the flat vertex sequence (odd length >= 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    pub vertices: Vec<Vertex>,
}

impl AlternatingPath {
    pub fn k(&self) -> usize {
        (self.vertices.len() - 1) / 2
    }

    /// The k edges u_i v_i, one per low-degree interior vertex.
    pub fn pairs(&self) -> Vec<Edge> {
        (0..self.k()).map(|i| edge(self.vertices[2 * i], self.vertices[2 * i + 1])).collect()
    }

    pub fn validate(&self, g: &Graph) -> bool {
        let p = &self.vertices;
        if p.len() < 3 || p.len() % 2 != 1 {
            return false;
        }
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
        (0..self.k()).all(|i| g.degree(p[2 * i + 1]) == 2)
    }
}

/// Grows a path around the smallest-id degree-2 vertex, extending each end
/// through further degree-2 vertices (smallest candidate first, front end
/// exhausted before the back). Returns None when `g` has no degree-2 vertex.
///
/// Maximality on return: no endpoint e admits a degree-2 neighbor x off the
/// path whose other neighbor is also off the path.
pub fn maximal_degree2_path(g: &Graph) -> Option<AlternatingPath> {
    let seed = (0..g.n()).find(|&v| g.degree(v) == 2)?;
    let nbrs = g.neighbors(seed);
    let mut path = vec![nbrs[0], seed, nbrs[1]];
    let mut on_path = vec![false; g.n()];
    for &v in &path {
        on_path[v] = true;
    }
    for front in [true, false] {
        loop {
            let e = if front { path[0] } else { *path.last().unwrap() };
            let mut found = None;
            for &x in g.neighbors(e) {
                if on_path[x] || g.degree(x) != 2 {
                    continue;
                }
                let z = *g.neighbors(x).iter().find(|&&z| z != e).unwrap();
                if !on_path[z] {
                    found = Some((x, z));
                    break;
                }
            }
            match found {
                Some((x, z)) => {
                    on_path[x] = true;
                    on_path[z] = true;
                    if front {
                        path.insert(0, x);
                        path.insert(0, z);
                    } else {
                        path.push(x);
                        path.push(z);
                    }
                }
                None => break,
            }
        }
    }
    let out = AlternatingPath { vertices: path };
    debug_assert!(out.validate(g));
    Some(out)
}

/// Smallest-id leaf of the DFS spanning tree rooted at vertex 0 (ascending
/// neighbor order). Removing a spanning-tree leaf keeps the graph connected.
pub fn spanning_tree_endvertex(g: &Graph) -> Result<Vertex, StructureError> {
    if g.n() < 2 {
        return Err(StructureError::TooSmall { n: g.n() });
    }
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let n = g.n();
    let mut tree_degree = vec![0usize; n];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut stack: Vec<(Vertex, usize)> = vec![(0, 0)];
    while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
        if *idx < g.neighbors(u).len() {
            let w = g.neighbors(u)[*idx];
            *idx += 1;
            if !visited[w] {
                visited[w] = true;
                tree_degree[u] += 1;
                tree_degree[w] += 1;
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    Ok((0..n).find(|&v| tree_degree[v] == 1).expect("spanning tree of >= 2 vertices has a leaf"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_like() -> Graph {
        // Claw center 0 with two pendant K_{2,3}-style blocks below leaves 1, 2.
        Graph::from_edge_list(
            12,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 5),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (2, 8),
                (2, 9),
                (8, 10),
                (8, 11),
                (9, 10),
                (9, 11),
            ],
        )
        .unwrap()
    }

    fn cubic_bridge() -> Graph {
        // Two K4-with-a-subdivided-edge blocks joined by one bridge: cubic.
        Graph::from_edge_list(
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 4),
                (3, 4),
                (5, 6),
                (5, 7),
                (5, 8),
                (6, 7),
                (6, 8),
                (7, 9),
                (8, 9),
                (4, 9),
            ],
        )
        .unwrap()
    }

    /// Deletion oracle: an edge is a bridge iff removing it increases the
    /// number of components.
    fn bridges_by_deletion(g: &Graph) -> Vec<Edge> {
        let base = g.components().len();
        let mut out = Vec::new();
        for (u, v) in g.edges() {
            let rest: Vec<Edge> = g.edges().into_iter().filter(|&e| e != (u, v)).collect();
            let h = Graph::from_edge_list(g.n(), &rest).unwrap();
            if h.components().len() > base {
                out.push((u, v));
            }
        }
        out
    }

    #[test]
    fn path_graph_all_bridges_all_good() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = bridge_report(&g);
        assert_eq!(r.count(), 3);
        assert_eq!(r.good_count(), 3);
        let mid = &r.bridges[1];
        assert_eq!(mid.edge, (1, 2));
        assert_eq!(mid.side_u, vec![0, 1]);
        assert_eq!(mid.side_v, vec![2, 3]);
    }

    #[test]
    fn claw_with_blocks_has_three_good_bridges() {
        let g = fig_like();
        let r = bridge_report(&g);
        assert_eq!(bridges(&g), vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(r.good_count(), 3);
        assert!(r.is_good(0, 3));
        assert_eq!(r.good_incident(0).len(), 3);
        assert_eq!(r.good_incident(4), vec![]);
    }

    #[test]
    fn cubic_graph_bridges_are_never_good() {
        let g = cubic_bridge();
        assert!(g.is_cubic());
        let r = bridge_report(&g);
        assert_eq!(r.count(), 1);
        assert_eq!(r.bridges[0].edge, (4, 9));
        assert_eq!(r.good_count(), 0);
        assert!(!r.bridges[0].low_u && !r.bridges[0].low_v);
    }

    #[test]
    fn bridges_match_deletion_oracle() {
        let cases = [
            fig_like(),
            cubic_bridge(),
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
            Graph::from_edge_list(5, &[(0, 1), (2, 3), (3, 4)]).unwrap(),
            Graph::from_edge_list(1, &[]).unwrap(),
        ];
        for g in &cases {
            assert_eq!(bridges(g), bridges_by_deletion(g));
        }
    }

    #[test]
    fn sides_partition_the_component() {
        let g = fig_like();
        for b in bridge_report(&g).bridges {
            let mut all: Vec<Vertex> = b.side_u.iter().chain(b.side_v.iter()).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
            assert!(b.side_u.binary_search(&b.edge.0).is_ok());
            assert!(b.side_v.binary_search(&b.edge.1).is_ok());
        }
    }

    #[test]
    fn degree2_path_on_cycle_covers_everything() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let p = maximal_degree2_path(&g).unwrap();
        assert_eq!(p.vertices.len(), 5);
        assert_eq!(p.k(), 2);
        assert!(p.validate(&g));
    }

    #[test]
    fn degree2_path_on_path_graph() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let p = maximal_degree2_path(&g).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(p.pairs(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn degree2_path_extends_through_one_extra_leg() {
        // Subdivided claw: center 0, legs 0-1-2, 0-3-4, 0-5-6. Seed is 1
        // (smallest degree-2 vertex), initial path [0, 1, 2]. The front end 0
        // extends through its degree-2 neighbor 3 to 4; after that both ends
        // are stuck, so the third leg stays outside the path.
        let g = Graph::from_edge_list(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let p = maximal_degree2_path(&g).unwrap();
        assert!(p.validate(&g));
        assert_eq!(p.vertices, vec![4, 3, 0, 1, 2]);
    }

    #[test]
    fn no_degree2_vertex_gives_none() {
        let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(maximal_degree2_path(&k4).is_none());
    }

    #[test]
    fn endvertex_removal_keeps_graph_connected() {
        let cases = [cubic_bridge(), fig_like()];
        for g in &cases {
            let u = spanning_tree_endvertex(g).unwrap();
            let (h, _) = g.induced_delete(&[u]);
            assert!(h.is_connected());
        }
        let two = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(spanning_tree_endvertex(&two), Ok(0));
        let disc = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(spanning_tree_endvertex(&disc), Err(StructureError::Disconnected));
    }
}
