//! Matchings and the uniquely-restricted property.
//!
//! A matching M is uniquely restricted when no other matching covers the same
//! vertex set, equivalently when the graph has no M-alternating cycle. The
//! fast verifier uses forced-edge elimination on the covered subgraph H =
//! G[V(M)]: a matched edge that is a bridge of H lies in every matching that
//! covers V(M) (its removal leaves an odd side), so it can be stripped; if
//! stripping stalls on a nonempty component, that component has a second
//! perfect matching (a connected graph with a unique perfect matching always
//! has a matched bridge), and a complete backtracking search over alternating
//! simple paths inside the stalled component produces an alternating cycle as
//! the witness.

use crate::graph::{edge, Edge, Graph, Vertex};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge ({u}, {v}) is not an edge of the host graph")]
    EdgeNotInGraph { u: Vertex, v: Vertex },
    #[error("vertex {v} is covered by two matching edges")]
    NotDisjoint { v: Vertex },
    #[error("input graph has a cycle")]
    HasCycle,
    #[error("graph has {m} edges, beyond the enumeration scale limit of {limit}")]
    EnumerationScale { m: usize, limit: usize },
}

/// A set of pairwise disjoint host edges, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn empty() -> Matching {
        Matching { edges: Vec::new() }
    }

    /// Validates edge membership and disjointness against the host graph.
    pub fn new(g: &Graph, edges: &[(Vertex, Vertex)]) -> Result<Matching, MatchingError> {
        let mut norm: Vec<Edge> = edges.iter().map(|&(u, v)| edge(u, v)).collect();
        norm.sort_unstable();
        let mut covered = vec![false; g.n()];
        for &(u, v) in &norm {
            if !g.has_edge(u, v) {
                return Err(MatchingError::EdgeNotInGraph { u, v });
            }
            for w in [u, v] {
                if covered[w] {
                    return Err(MatchingError::NotDisjoint { v: w });
                }
                covered[w] = true;
            }
        }
        Ok(Matching { edges: norm })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&edge(u, v)).is_ok()
    }

    /// Covered vertices in increasing order.
    pub fn covered(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        out.sort_unstable();
        out
    }

    /// Partner lookup table indexed by vertex; `usize::MAX` marks uncovered.
    pub fn mate_table(&self, n: usize) -> Vec<Vertex> {
        let mut mate = vec![usize::MAX; n];
        for &(u, v) in &self.edges {
            mate[u] = v;
            mate[v] = u;
        }
        mate
    }
}

/// Cyclic vertex sequence `c_0 c_1 ... c_{2k-1}` with `c_0 c_1` matched and
/// edge membership in M alternating around the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingCycleWitness {
    pub cycle: Vec<Vertex>,
}

impl AlternatingCycleWitness {
    pub fn validate(&self, g: &Graph, m: &Matching) -> bool {
        let c = &self.cycle;
        if c.len() < 4 || !c.len().is_multiple_of(2) {
            return false;
        }
        let mut sorted = c.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for i in 0..c.len() {
            let u = c[i];
            let v = c[(i + 1) % c.len()];
            if !g.has_edge(u, v) {
                return false;
            }
            let should_be_matched = i % 2 == 0;
            if m.contains(u, v) != should_be_matched {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UrVerdict {
    UniquelyRestricted,
    NotUniquelyRestricted(AlternatingCycleWitness),
}

impl UrVerdict {
    pub fn is_ur(&self) -> bool {
        matches!(self, UrVerdict::UniquelyRestricted)
    }
}

/// Forced-edge elimination verdict plus alternating-cycle witness on failure.
pub fn is_uniquely_restricted(g: &Graph, m: &Matching) -> Result<UrVerdict, MatchingError> {
    // Revalidate against this host; Matching values are host-agnostic.
    let m = Matching::new(g, m.edges())?;
    let n = g.n();
    let mut alive = vec![false; n];
    for v in m.covered() {
        alive[v] = true;
    }
    let mate = m.mate_table(n);
    let mut remaining = m.len();

    while remaining > 0 {
        let stripped = strip_matched_bridges(g, &mut alive, &mate);
        if stripped == 0 {
            // Every remaining component lacks a matched bridge: not unique.
            let witness = find_alternating_cycle(g, &alive, &mate)
                .expect("stalled component must contain an alternating cycle");
            debug_assert!(witness.validate(g, &m));
            return Ok(UrVerdict::NotUniquelyRestricted(witness));
        }
        remaining -= stripped;
    }
    Ok(UrVerdict::UniquelyRestricted)
}

/// One pass: find all matched edges that are bridges of G[alive], delete
/// their endpoints, return how many were stripped. Bridges stay bridges when
/// other vertices are removed, so one batch per pass is sound.
fn strip_matched_bridges(g: &Graph, alive: &mut [bool], mate: &[Vertex]) -> usize {
    let bridges = bridges_of_alive(g, alive);
    let mut stripped = 0;
    for (u, v) in bridges {
        if mate[u] == v {
            alive[u] = false;
            alive[v] = false;
            stripped += 1;
        }
    }
    stripped
}

/// Bridges of the induced subgraph on `alive`, via iterative lowpoint DFS.
fn bridges_of_alive(g: &Graph, alive: &[bool]) -> Vec<Edge> {
    let n = g.n();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut timer = 1usize;
    let mut out = Vec::new();
    // Stack frames: (vertex, parent, neighbor index).
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for s in 0..n {
        if !alive[s] || visited[s] {
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
                if !alive[w] {
                    continue;
                }
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

/// Complete backtracking search for an alternating cycle within G[alive].
/// Tries every matched edge as the starting matched edge; extends alternating
/// simple paths; closes with a non-matching edge back to the start.
fn find_alternating_cycle(g: &Graph, alive: &[bool], mate: &[Vertex]) -> Option<AlternatingCycleWitness> {
    let n = g.n();
    let mut on_path = vec![false; n];
    for u in 0..n {
        if !alive[u] {
            continue;
        }
        let v = mate[u];
        if v == usize::MAX || v < u || !alive[v] {
            continue;
        }
        // Path starts with matched edge u -> v.
        let mut path = vec![u, v];
        on_path[u] = true;
        on_path[v] = true;
        if extend_alternating(g, alive, mate, u, &mut path, &mut on_path) {
            return Some(AlternatingCycleWitness { cycle: path });
        }
        on_path[u] = false;
        on_path[v] = false;
    }
    None
}

/// Alternating cycle through the matched edge (u, v), restricted to `alive`
/// vertices, or None. `mate` must already pair u with v.
pub(crate) fn alternating_cycle_through(
    g: &Graph,
    alive: &[bool],
    mate: &[Vertex],
    u: Vertex,
    v: Vertex,
) -> Option<Vec<Vertex>> {
    debug_assert_eq!(mate[u], v);
    let mut path = vec![u, v];
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    on_path[v] = true;
    if extend_alternating(g, alive, mate, u, &mut path, &mut on_path) {
        Some(path)
    } else {
        None
    }
}

fn extend_alternating(
    g: &Graph,
    alive: &[bool],
    mate: &[Vertex],
    start: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
) -> bool {
    let tip = *path.last().unwrap();
    let after_matched = path.len().is_multiple_of(2);
    if after_matched {
        // Leave via a non-matching edge: either close the cycle at `start`
        // or enter the next matched edge.
        for &y in g.neighbors(tip) {
            if !alive[y] || mate[tip] == y {
                continue;
            }
            if y == start && path.len() >= 4 {
                return true;
            }
            if !on_path[y] {
                let z = mate[y];
                debug_assert!(z != usize::MAX);
                if alive[z] && !on_path[z] {
                    path.push(y);
                    path.push(z);
                    on_path[y] = true;
                    on_path[z] = true;
                    if extend_alternating(g, alive, mate, start, path, on_path) {
                        return true;
                    }
                    on_path[y] = false;
                    on_path[z] = false;
                    path.pop();
                    path.pop();
                }
            }
        }
    }
    false
}

/// The covered subgraph G[V(M)] is a forest.
pub fn is_acyclic_matching(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    let m = Matching::new(g, m.edges())?;
    let covered = m.covered();
    let (h, _) = g.induced_subgraph(&covered);
    Ok(h.is_forest())
}

/// Reference verifier: enumerate every matching and demand that none other
/// covers the same vertex set. Enumeration scale only.
pub fn is_uniquely_restricted_by_definition(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    const LIMIT: usize = 20;
    if g.m() > LIMIT {
        return Err(MatchingError::EnumerationScale { m: g.m(), limit: LIMIT });
    }
    let m = Matching::new(g, m.edges())?;
    let target = m.covered();
    let mut duplicates = 0usize;
    for other in enumerate_matchings(g) {
        if other.covered() == target {
            duplicates += 1;
            if duplicates > 1 {
                return Ok(false);
            }
        }
    }
    debug_assert_eq!(duplicates, 1, "M itself must appear in the enumeration");
    Ok(true)
}

/// All matchings of `g` (including the empty one), in lexicographic order of
/// their sorted edge lists.
pub fn enumerate_matchings(g: &Graph) -> Vec<Matching> {
    let edges = g.edges();
    let mut covered = vec![false; g.n()];
    let mut out = Vec::new();
    let mut cur: Vec<Edge> = Vec::new();
    fn rec(
        edges: &[Edge],
        from: usize,
        covered: &mut [bool],
        cur: &mut Vec<Edge>,
        out: &mut Vec<Matching>,
    ) {
        out.push(Matching { edges: cur.clone() });
        for i in from..edges.len() {
            let (u, v) = edges[i];
            if !covered[u] && !covered[v] {
                covered[u] = true;
                covered[v] = true;
                cur.push((u, v));
                rec(edges, i + 1, covered, cur, out);
                cur.pop();
                covered[u] = false;
                covered[v] = false;
            }
        }
    }
    rec(&edges, 0, &mut covered, &mut cur, &mut out);
    out
}

/// Maximum matching of a forest by greedy leaf matching: processing vertices
/// children-first, a leaf that can match its parent always does. Every
/// forest matching is uniquely restricted.
pub fn forest_max_matching(g: &Graph) -> Result<Matching, MatchingError> {
    if !g.is_forest() {
        return Err(MatchingError::HasCycle);
    }
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
    }
    let mut matched = vec![false; n];
    let mut edges = Vec::new();
    for &v in order.iter().rev() {
        let p = parent[v];
        if p != usize::MAX && !matched[v] && !matched[p] {
            matched[v] = true;
            matched[p] = true;
            edges.push(edge(v, p));
        }
    }
    edges.sort_unstable();
    Ok(Matching { edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| edge(i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn perfect_matching_of_c4_is_not_ur() {
        let g = cycle(4);
        let m = Matching::new(&g, &[(0, 1), (2, 3)]).unwrap();
        match is_uniquely_restricted(&g, &m).unwrap() {
            UrVerdict::NotUniquelyRestricted(w) => {
                assert_eq!(w.cycle.len(), 4);
                assert!(w.validate(&g, &m));
            }
            UrVerdict::UniquelyRestricted => panic!("C4 perfect matching must not be UR"),
        }
        assert!(!is_uniquely_restricted_by_definition(&g, &m).unwrap());
    }

    #[test]
    fn p4_end_edges_are_ur() {
        let g = path(4);
        let m = Matching::new(&g, &[(0, 1), (2, 3)]).unwrap();
        assert!(is_uniquely_restricted(&g, &m).unwrap().is_ur());
        assert!(is_uniquely_restricted_by_definition(&g, &m).unwrap());
        assert!(is_acyclic_matching(&g, &m).unwrap());
    }

    // Regression: a directed cycle of oriented matched-edge states does not
    // imply an alternating cycle. M = {uv, ab, cd} with non-matching edges
    // va, vb, uc, ud admits the closed alternating walk
    // u-v-a-b-v-... reusing v, yet M is uniquely restricted.
    #[test]
    fn alternating_walk_without_alternating_cycle_is_ur() {
        let (u, v, a, b, c, d) = (0, 1, 2, 3, 4, 5);
        let g = Graph::from_edge_list(6, &[(u, v), (a, b), (c, d), (v, a), (v, b), (u, c), (u, d)]).unwrap();
        let m = Matching::new(&g, &[(u, v), (a, b), (c, d)]).unwrap();
        assert!(is_uniquely_restricted(&g, &m).unwrap().is_ur());
        assert!(is_uniquely_restricted_by_definition(&g, &m).unwrap());
    }

    #[test]
    fn odd_cycle_matchings_are_all_ur() {
        let g = cycle(7);
        for m in enumerate_matchings(&g) {
            assert!(is_uniquely_restricted(&g, &m).unwrap().is_ur());
        }
    }

    #[test]
    fn acyclic_implies_ur_on_c4() {
        let g = cycle(4);
        let m = Matching::new(&g, &[(0, 1)]).unwrap();
        assert!(is_acyclic_matching(&g, &m).unwrap());
        assert!(is_uniquely_restricted(&g, &m).unwrap().is_ur());
    }

    #[test]
    fn k33_two_disjoint_edges_not_ur() {
        let g = Graph::from_edge_list(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let m = Matching::new(&g, &[(0, 3), (1, 4)]).unwrap();
        match is_uniquely_restricted(&g, &m).unwrap() {
            UrVerdict::NotUniquelyRestricted(w) => assert!(w.validate(&g, &m)),
            _ => panic!("two disjoint K33 edges lie on a 4-cycle"),
        }
    }

    #[test]
    fn matching_validation() {
        let g = path(4);
        assert_eq!(
            Matching::new(&g, &[(0, 2)]),
            Err(MatchingError::EdgeNotInGraph { u: 0, v: 2 })
        );
        assert_eq!(
            Matching::new(&g, &[(0, 1), (1, 2)]),
            Err(MatchingError::NotDisjoint { v: 1 })
        );
    }

    #[test]
    fn forest_dp_on_named_forests() {
        let p4 = path(4);
        assert_eq!(forest_max_matching(&p4).unwrap().len(), 2);
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(forest_max_matching(&star).unwrap().len(), 1);
        assert_eq!(forest_max_matching(&cycle(4)), Err(MatchingError::HasCycle));
        // Spider with three legs of length 2: greedy leaf matching finds 3.
        let spider =
            Graph::from_edge_list(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(forest_max_matching(&spider).unwrap().len(), 3);
    }

    #[test]
    fn forest_dp_matches_enumeration_on_small_trees() {
        // All trees here are subcubic; enumeration gives the true maximum.
        let trees = [
            path(2),
            path(7),
            Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(),
            Graph::from_edge_list(7, &[(0, 2), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6)]).unwrap(),
            Graph::from_edge_list(8, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (2, 6), (6, 7)]).unwrap(),
        ];
        for t in &trees {
            let best = enumerate_matchings(t).iter().map(|m| m.len()).max().unwrap();
            assert_eq!(forest_max_matching(t).unwrap().len(), best);
        }
    }

    #[test]
    fn enumeration_counts() {
        // Matchings of P4: {}, {01}, {12}, {23}, {01,23} = 5.
        assert_eq!(enumerate_matchings(&path(4)).len(), 5);
        // Matchings of C4: {}, 4 singles, 2 perfect = 7.
        assert_eq!(enumerate_matchings(&cycle(4)).len(), 7);
    }
}
