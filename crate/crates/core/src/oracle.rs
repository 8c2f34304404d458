//! Exact optima at desk scale: maximum matching, maximum uniquely restricted
//! matching, and maximum acyclic matching.
//!
//! nu uses repeated augmentation with a complete backtracking search over
//! alternating simple paths (an augmenting path is such a path, so the search
//! is exact without any blossom machinery). nu_ur and nu_ac use branch and
//! bound over the edge list: both properties are closed under taking subsets,
//! so the search tree of feasible matchings is prefix-closed. Upper bounds
//! for pruning are layered: floor(|C|/2) summed over components of the
//! still-allowed subgraph, then the exact matching number of that subgraph
//! when it is small (an admissible bound; a greedy estimate would not be).
//!
//! All searches count explored nodes against a budget and report the count,
//! so repeated runs are bit-for-bit reproducible.

use crate::graph::{Edge, Graph, Vertex};
use crate::matching::{alternating_cycle_through, Matching};
use std::cmp::Reverse;
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub witness: Matching,
    pub explored: u64,
    pub optimal: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {budget} nodes exhausted; best matching found has {} edges", best.size)]
    BudgetExhausted { budget: u64, best: OracleResult },
}

/// Maximum matching size with witness.
pub fn nu_exact(g: &Graph) -> Result<OracleResult, OracleError> {
    nu_exact_with(g, DEFAULT_BUDGET)
}

pub fn nu_exact_with(g: &Graph, budget: u64) -> Result<OracleResult, OracleError> {
    let n = g.n();
    let mut mate = vec![usize::MAX; n];
    for (u, v) in g.edges() {
        if mate[u] == usize::MAX && mate[v] == usize::MAX {
            mate[u] = v;
            mate[v] = u;
        }
    }
    let mut explored = 0u64;
    let mut exhausted = false;
    'grow: loop {
        for s in 0..n {
            if mate[s] != usize::MAX {
                continue;
            }
            let mut on_path = vec![false; n];
            on_path[s] = true;
            match augment_from(g, &mut mate, &mut on_path, s, &mut explored, budget) {
                Err(()) => {
                    exhausted = true;
                    break 'grow;
                }
                Ok(true) => continue 'grow,
                Ok(false) => {}
            }
        }
        break;
    }
    let witness = matching_from_mate(g, &mate);
    let size = witness.len();
    if exhausted {
        Err(OracleError::BudgetExhausted {
            budget,
            best: OracleResult { size, witness, explored, optimal: false },
        })
    } else {
        Ok(OracleResult { size, witness, explored, optimal: true })
    }
}

/// DFS over alternating simple paths from the free vertex `t`; on success the
/// path is flipped into `mate` while unwinding. Err(()) signals budget
/// exhaustion.
fn augment_from(
    g: &Graph,
    mate: &mut [Vertex],
    on_path: &mut [bool],
    t: Vertex,
    explored: &mut u64,
    budget: u64,
) -> Result<bool, ()> {
    *explored += 1;
    if *explored > budget {
        return Err(());
    }
    for &y in g.neighbors(t) {
        if on_path[y] || mate[t] == y {
            continue;
        }
        if mate[y] == usize::MAX {
            mate[t] = y;
            mate[y] = t;
            return Ok(true);
        }
        let z = mate[y];
        if on_path[z] {
            continue;
        }
        on_path[y] = true;
        on_path[z] = true;
        if augment_from(g, mate, on_path, z, explored, budget)? {
            mate[t] = y;
            mate[y] = t;
            return Ok(true);
        }
        on_path[y] = false;
        on_path[z] = false;
    }
    Ok(false)
}

fn matching_from_mate(g: &Graph, mate: &[Vertex]) -> Matching {
    let edges: Vec<Edge> = (0..g.n())
        .filter(|&u| mate[u] != usize::MAX && u < mate[u])
        .map(|u| (u, mate[u]))
        .collect();
    Matching::new(g, &edges).expect("mate table encodes a valid matching")
}

/// Maximum uniquely restricted matching size with witness.
pub fn nu_ur_exact(g: &Graph) -> Result<OracleResult, OracleError> {
    nu_ur_exact_with(g, DEFAULT_BUDGET)
}

pub fn nu_ur_exact_with(g: &Graph, budget: u64) -> Result<OracleResult, OracleError> {
    BranchBound::new(g, budget, Mode::UniquelyRestricted).run()
}

/// Maximum acyclic matching size (covered subgraph a forest) with witness.
pub fn nu_ac_exact(g: &Graph) -> Result<OracleResult, OracleError> {
    nu_ac_exact_with(g, DEFAULT_BUDGET)
}

pub fn nu_ac_exact_with(g: &Graph, budget: u64) -> Result<OracleResult, OracleError> {
    BranchBound::new(g, budget, Mode::Acyclic).run()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    UniquelyRestricted,
    Acyclic,
}

struct BranchBound<'a> {
    g: &'a Graph,
    order: Vec<Edge>,
    mode: Mode,
    covered: Vec<bool>,
    mate: Vec<Vertex>,
    cur: Vec<Edge>,
    best: Vec<Edge>,
    explored: u64,
    budget: u64,
    uf: Vec<usize>,
}

impl<'a> BranchBound<'a> {
    fn new(g: &'a Graph, budget: u64, mode: Mode) -> BranchBound<'a> {
        // Edges with busier endpoints first: finding large feasible matchings
        // early tightens the incumbent for pruning.
        let mut order = g.edges();
        order.sort_by_key(|&(u, v)| (Reverse(g.degree(u) + g.degree(v)), u, v));
        BranchBound {
            g,
            order,
            mode,
            covered: vec![false; g.n()],
            mate: vec![usize::MAX; g.n()],
            cur: Vec::new(),
            best: Vec::new(),
            explored: 0,
            budget,
            uf: vec![0; g.n()],
        }
    }

    fn run(mut self) -> Result<OracleResult, OracleError> {
        let exhausted = self.rec(0).is_err();
        let witness = Matching::new(self.g, &self.best).expect("search emits valid matchings");
        let size = witness.len();
        if exhausted {
            Err(OracleError::BudgetExhausted {
                budget: self.budget,
                best: OracleResult { size, witness, explored: self.explored, optimal: false },
            })
        } else {
            Ok(OracleResult { size, witness, explored: self.explored, optimal: true })
        }
    }

    fn rec(&mut self, from: usize) -> Result<(), ()> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(());
        }
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
        }
        if self.cur.len() + self.upper_bound(from) <= self.best.len() {
            return Ok(());
        }
        for i in from..self.order.len() {
            let (u, v) = self.order[i];
            if self.covered[u] || self.covered[v] {
                continue;
            }
            self.covered[u] = true;
            self.covered[v] = true;
            self.mate[u] = v;
            self.mate[v] = u;
            let feasible = match self.mode {
                Mode::UniquelyRestricted => {
                    alternating_cycle_through(self.g, &self.covered, &self.mate, u, v).is_none()
                }
                Mode::Acyclic => self.covered_is_forest(),
            };
            let r = if feasible {
                self.cur.push((u, v));
                let r = self.rec(i + 1);
                self.cur.pop();
                r
            } else {
                Ok(())
            };
            self.mate[u] = usize::MAX;
            self.mate[v] = usize::MAX;
            self.covered[u] = false;
            self.covered[v] = false;
            r?;
        }
        Ok(())
    }

    /// Union-find cycle test on the covered induced subgraph.
    fn covered_is_forest(&mut self) -> bool {
        for v in 0..self.g.n() {
            self.uf[v] = v;
        }
        for (u, v) in self.g.edges() {
            if !self.covered[u] || !self.covered[v] {
                continue;
            }
            let (ru, rv) = (self.find(u), self.find(v));
            if ru == rv {
                return false;
            }
            self.uf[ru] = rv;
        }
        true
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.uf[x] != x {
            self.uf[x] = self.uf[self.uf[x]];
            x = self.uf[x];
        }
        x
    }

    /// Admissible bound on how many more edges any feasible extension can
    /// add, using only edges at positions >= `from` between free vertices.
    fn upper_bound(&mut self, from: usize) -> usize {
        let n = self.g.n();
        for v in 0..n {
            self.uf[v] = v;
        }
        let mut suffix: Vec<Edge> = Vec::new();
        for i in from..self.order.len() {
            let (u, v) = self.order[i];
            if !self.covered[u] && !self.covered[v] {
                suffix.push((u, v));
                let (ru, rv) = (self.find(u), self.find(v));
                if ru != rv {
                    self.uf[ru] = rv;
                }
            }
        }
        if suffix.is_empty() {
            return 0;
        }
        let mut size = vec![0usize; n];
        let mut touched = vec![false; n];
        for &(u, v) in &suffix {
            for w in [u, v] {
                if !touched[w] {
                    touched[w] = true;
                    let r = self.find(w);
                    size[r] += 1;
                }
            }
        }
        let ub1: usize = (0..n).map(|v| size[v] / 2).sum();
        if self.cur.len() + ub1 <= self.best.len() {
            return ub1;
        }
        if suffix.len() <= 24 {
            return ub1.min(self.suffix_nu(&suffix));
        }
        ub1
    }

    /// Exact matching number of the suffix subgraph; falls back to the
    /// trivial bound when its own search budget runs out.
    fn suffix_nu(&self, suffix: &[Edge]) -> usize {
        let mut label = std::collections::HashMap::new();
        let mut edges = Vec::with_capacity(suffix.len());
        for &(u, v) in suffix {
            let k = label.len();
            let lu = *label.entry(u).or_insert(k);
            let k = label.len();
            let lv = *label.entry(v).or_insert(k);
            edges.push((lu, lv));
        }
        let h = Graph::from_edge_list(label.len(), &edges).expect("suffix subgraph is simple");
        match nu_exact_with(&h, 100_000) {
            Ok(r) => r.size,
            Err(_) => label.len() / 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{enumerate_matchings, is_uniquely_restricted_by_definition};

    fn fig_like() -> Graph {
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

    fn k33() -> Graph {
        Graph::from_edge_list(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| crate::graph::edge(i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn claw_block_graph_optima() {
        let g = fig_like();
        assert_eq!(nu_exact(&g).unwrap().size, 5);
        assert_eq!(nu_ur_exact(&g).unwrap().size, 3);
        assert_eq!(nu_ac_exact(&g).unwrap().size, 3);
    }

    #[test]
    fn k33_optima() {
        let g = k33();
        assert_eq!(nu_exact(&g).unwrap().size, 3);
        assert_eq!(nu_ur_exact(&g).unwrap().size, 1);
        assert_eq!(nu_ac_exact(&g).unwrap().size, 1);
    }

    #[test]
    fn small_cycles_and_k4() {
        assert_eq!(nu_exact(&cycle(7)).unwrap().size, 3);
        assert_eq!(nu_ur_exact(&cycle(7)).unwrap().size, 3);
        assert_eq!(nu_exact(&cycle(4)).unwrap().size, 2);
        assert_eq!(nu_ur_exact(&cycle(4)).unwrap().size, 1);
        assert_eq!(nu_ac_exact(&cycle(4)).unwrap().size, 1);
        let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(nu_exact(&k4).unwrap().size, 2);
        assert_eq!(nu_ur_exact(&k4).unwrap().size, 1);
    }

    #[test]
    fn cubic_bridge_graph_ur_optimum() {
        let g = Graph::from_edge_list(
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
        .unwrap();
        assert_eq!(nu_ur_exact(&g).unwrap().size, 4);
    }

    #[test]
    fn oracles_agree_with_enumeration() {
        for g in [k33(), cycle(4), cycle(7), fig_like()] {
            let all = enumerate_matchings(&g);
            let nu = all.iter().map(|m| m.len()).max().unwrap();
            assert_eq!(nu_exact(&g).unwrap().size, nu);
            let nu_ur = all
                .iter()
                .filter(|m| is_uniquely_restricted_by_definition(&g, m).unwrap())
                .map(|m| m.len())
                .max()
                .unwrap();
            assert_eq!(nu_ur_exact(&g).unwrap().size, nu_ur);
        }
    }

    #[test]
    fn witnesses_are_feasible() {
        let g = fig_like();
        let r = nu_ur_exact(&g).unwrap();
        assert!(r.optimal);
        assert_eq!(r.witness.len(), r.size);
        assert!(crate::matching::is_uniquely_restricted(&g, &r.witness).unwrap().is_ur());
        let r = nu_ac_exact(&g).unwrap();
        assert!(crate::matching::is_acyclic_matching(&g, &r.witness).unwrap());
    }

    #[test]
    fn budget_exhaustion_reports_best_so_far() {
        let g = fig_like();
        match nu_ur_exact_with(&g, 3) {
            Err(OracleError::BudgetExhausted { budget, best }) => {
                assert_eq!(budget, 3);
                assert!(!best.optimal);
                assert!(best.explored >= 3);
                assert!(crate::matching::is_uniquely_restricted(&g, &best.witness)
                    .unwrap()
                    .is_ur());
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn explored_counts_are_deterministic() {
        let g = fig_like();
        let a = nu_ur_exact(&g).unwrap();
        let b = nu_ur_exact(&g).unwrap();
        assert_eq!(a.explored, b.explored);
        assert_eq!(a.witness, b.witness);
    }
}
