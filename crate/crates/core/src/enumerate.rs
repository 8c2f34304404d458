//! Exhaustive generation of small connected subcubic graphs and trees, up
//! to isomorphism, plus a brute-force isomorphism test for cross-checks.
//!
//! Growth is sound and complete: every connected graph has a vertex whose
//! removal keeps it connected (any leaf of a DFS tree), so every connected
//! subcubic graph on k+1 vertices arises from one on k vertices by adding a
//! vertex joined to one, two or three vertices of degree below 3.
//! Duplicates are collapsed with a canonical form.

use crate::graph::{edge, Edge, Graph, Vertex};
use std::collections::BTreeMap;

/// Canonical form: the lexicographically greatest upper-triangle adjacency
/// bit string over all vertex orderings, column-major (the bits decided
/// when position t is filled are (0,t), (1,t), ..., (t-1,t)), packed
/// MSB-first into u64 words. Equal forms mean isomorphic graphs.
pub fn canonical_form(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let total_bits = n * n.saturating_sub(1) / 2;
    if total_bits == 0 {
        return Vec::new();
    }
    let adj: Vec<u64> = (0..n)
        .map(|u| {
            let mut row = 0u64;
            for &v in g.neighbors(u) {
                row |= 1 << v;
            }
            row
        })
        .collect();
    let mut best: Vec<bool> = Vec::new();
    let mut cur: Vec<bool> = Vec::with_capacity(total_bits);
    let mut perm: Vec<Vertex> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&adj, n, &mut perm, &mut used, &mut cur, &mut best);
    pack_bits(&best)
}

fn search(
    adj: &[u64],
    n: usize,
    perm: &mut Vec<Vertex>,
    used: &mut [bool],
    cur: &mut Vec<bool>,
    best: &mut Vec<bool>,
) {
    let t = perm.len();
    if t == n {
        if best.is_empty() || cur[..] > best[..] {
            *best = cur.clone();
        }
        return;
    }
    // Try candidates producing the greatest column first so the incumbent
    // converges quickly and the prefix comparison prunes hard.
    let mut cands: Vec<(Vec<bool>, Vertex)> = (0..n)
        .filter(|&v| !used[v])
        .map(|v| {
            let col: Vec<bool> = perm.iter().map(|&p| adj[p] >> v & 1 == 1).collect();
            (col, v)
        })
        .collect();
    cands.sort_by(|a, b| b.cmp(a));
    for (col, v) in cands {
        let len = cur.len();
        cur.extend_from_slice(&col);
        let keep = best.is_empty() || cur[..] >= best[..cur.len().min(best.len())];
        if keep {
            used[v] = true;
            perm.push(v);
            search(adj, n, perm, used, cur, best);
            perm.pop();
            used[v] = false;
        }
        cur.truncate(len);
    }
}

fn pack_bits(bits: &[bool]) -> Vec<u64> {
    let mut out = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            out[i / 64] |= 1 << (63 - i % 64);
        }
    }
    out
}

/// All connected subcubic graphs on exactly `n` vertices, one per
/// isomorphism class, in canonical-form order.
pub fn connected_subcubic_graphs(n: usize) -> Vec<Graph> {
    grow_to(n, false)
}

/// All subcubic trees on exactly `n` vertices, one per isomorphism class.
pub fn subcubic_trees(n: usize) -> Vec<Graph> {
    grow_to(n, true)
}

fn grow_to(n: usize, trees_only: bool) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::new(1)];
    for size in 2..=n {
        let mut next: BTreeMap<Vec<u64>, Graph> = BTreeMap::new();
        for g in &level {
            let elig: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) < 3).collect();
            let max_attach = if trees_only { 1 } else { 3 };
            for mask in 1u32..1 << elig.len() {
                if mask.count_ones() as usize > max_attach {
                    continue;
                }
                let mut edges: Vec<Edge> = g.edges().to_vec();
                for (i, &s) in elig.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        edges.push(edge(s, size - 1));
                    }
                }
                let h = Graph::from_edge_list(size, &edges).unwrap();
                next.entry(canonical_form(&h)).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    level
}

/// Complete backtracking isomorphism test, independent of canonical forms,
/// for cross-checking them in tests.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend_iso(a, b, 0, &mut map, &mut used)
}

fn extend_iso(a: &Graph, b: &Graph, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if i == a.n() {
        return true;
    }
    'cand: for w in 0..b.n() {
        if used[w] || b.degree(w) != a.degree(i) {
            continue;
        }
        for (j, &mj) in map.iter().enumerate().take(i) {
            if a.has_edge(i, j) != b.has_edge(w, mj) {
                continue 'cand;
            }
        }
        map[i] = w;
        used[w] = true;
        if extend_iso(a, b, i + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[i] = usize::MAX;
    }
    false
}
