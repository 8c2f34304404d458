//! Instance construction: a named catalog of reference graphs, the
//! bridge-tight family (tight subcubic trees with K_{2,3} gadgets on
//! leaves), and seeded random subcubic generators.

use crate::enumerate::subcubic_trees;
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::matching::forest_max_matching;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForgeError {
    #[error("base graph must be a tree")]
    NotATree,
    #[error("tree is not tight: need n = 3t+1 vertices and matching number t")]
    TreeNotTight,
    #[error("attachment vertex {0} is not a leaf")]
    NotALeaf(Vertex),
    #[error("attachment vertices must be distinct")]
    DuplicateAttachment,
    #[error("size {0} is invalid here")]
    InvalidSize(usize),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
}

/// Reference graphs by name. The list is stable; `named` accepts any of it.
pub const NAMED: &[&str] = &[
    "K2", "P3", "P4", "C4", "C7", "K13", "K23", "K33", "FIG1", "MCGEE", "HEAWOOD", "CUBIC_BRIDGE",
];

pub fn named(name: &str) -> Option<Graph> {
    let g = match name {
        "K2" => Graph::from_edge_list(2, &[(0, 1)]),
        "P3" => Graph::from_edge_list(3, &[(0, 1), (1, 2)]),
        "P4" => Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]),
        "C4" => cycle(4),
        "C7" => cycle(7),
        "K13" => Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]),
        "K23" => Graph::from_edge_list(5, &[(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)]),
        "K33" => Graph::from_edge_list(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        ),
        // Claw with K_{2,3} gadgets on two of its leaves: the smallest
        // member of the bridge-tight family.
        "FIG1" => {
            let t = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
            return Some(tight_bridge_family(&t, &[1, 2]).unwrap().graph);
        }
        "MCGEE" => lcf(24, &[12, 7, -7]),
        "HEAWOOD" => lcf(14, &[5, -5]),
        // Two K4-minus-an-edge blocks closed by paths, joined by one
        // bridge: cubic with a bridge that is not good.
        "CUBIC_BRIDGE" => Graph::from_edge_list(
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
        ),
        _ => return None,
    };
    Some(g.expect("catalog graphs are well-formed"))
}

fn cycle(n: usize) -> Result<Graph, crate::graph::GraphError> {
    let edges: Vec<Edge> = (0..n).map(|i| edge(i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Cubic graph from a Hamiltonian cycle plus LCF chord offsets repeated
/// around the cycle.
fn lcf(n: usize, offsets: &[i64]) -> Result<Graph, crate::graph::GraphError> {
    let mut edges: Vec<Edge> = (0..n).map(|i| edge(i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + offsets[i % offsets.len()]).rem_euclid(n as i64) as usize;
        let e = edge(i, j);
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Graph::from_edge_list(n, &edges)
}

#[derive(Clone, Debug)]
pub struct TightFamilyInstance {
    pub graph: Graph,
    pub tree_n: usize,
    pub gadgets: usize,
    /// Largest uniquely restricted matching: (tree_n - 1)/3 + gadgets.
    pub predicted_nu_ur: usize,
    /// Every tree edge stays a bridge; gadget edges lie on cycles.
    pub predicted_bridges: usize,
}

/// Attach a K_{2,3} gadget to each listed leaf of a tight subcubic tree
/// (n = 3t+1 vertices, matching number exactly t). The result meets the
/// certified lower bound (m + good bridges)/6 with equality.
pub fn tight_bridge_family(tree: &Graph, attach: &[Vertex]) -> Result<TightFamilyInstance, ForgeError> {
    if !tree.is_connected() || !tree.is_forest() {
        return Err(ForgeError::NotATree);
    }
    if !tree.is_subcubic() {
        return Err(ForgeError::NotATree);
    }
    let nt = tree.n();
    if nt % 3 != 1 {
        return Err(ForgeError::TreeNotTight);
    }
    let nu = forest_max_matching(tree).expect("tree").len();
    if 3 * nu + 1 != nt {
        return Err(ForgeError::TreeNotTight);
    }
    let mut sorted = attach.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != attach.len() {
        return Err(ForgeError::DuplicateAttachment);
    }
    for &s in &sorted {
        if s >= nt || tree.degree(s) != 1 {
            return Err(ForgeError::NotALeaf(s));
        }
    }
    let mut edges = tree.edges();
    let mut n = nt;
    for &s in &sorted {
        let (p, q, r, rp) = (n, n + 1, n + 2, n + 3);
        edges.extend_from_slice(&[
            edge(s, p),
            edge(s, q),
            edge(p, r),
            edge(p, rp),
            edge(q, r),
            edge(q, rp),
        ]);
        n += 4;
    }
    let graph = Graph::from_edge_list(n, &edges).expect("attachment respects degrees");
    Ok(TightFamilyInstance {
        graph,
        tree_n: nt,
        gadgets: sorted.len(),
        predicted_nu_ur: (nt - 1) / 3 + sorted.len(),
        predicted_bridges: nt - 1,
    })
}

/// All tight subcubic trees on n vertices (n = 3t+1) up to isomorphism for
/// n <= 13; beyond that, one representative, the claw chain.
pub fn tight_trees(n: usize) -> Result<Vec<Graph>, ForgeError> {
    if n % 3 != 1 {
        return Err(ForgeError::InvalidSize(n));
    }
    if n <= 13 {
        let t = (n - 1) / 3;
        Ok(subcubic_trees(n)
            .into_iter()
            .filter(|g| forest_max_matching(g).expect("tree").len() == t)
            .collect())
    } else {
        Ok(vec![claw_chain((n - 1) / 3)])
    }
}

/// Chain of k claws: centers joined through shared degree-2 middle
/// vertices, every center filled up to degree 3 with leaves. k = 1 gives
/// the claw itself. Always a tight subcubic tree on 3k+1 vertices.
pub fn claw_chain(k: usize) -> Graph {
    assert!(k >= 1, "claw chain needs at least one center");
    let mut edges: Vec<Edge> = Vec::with_capacity(3 * k);
    for i in 0..k.saturating_sub(1) {
        edges.push(edge(i, k + i));
        edges.push(edge(k + i, i + 1));
    }
    let mut next = 2 * k - 1;
    for c in 0..k {
        let mut deg = edges.iter().filter(|&&(a, b)| a == c || b == c).count();
        while deg < 3 {
            edges.push(edge(c, next));
            next += 1;
            deg += 1;
        }
    }
    Graph::from_edge_list(3 * k + 1, &edges).expect("chain is well-formed")
}

/// Seeded random subcubic graph. With `connected` the graph is built from
/// a random spanning tree plus extra edges, so it is connected by
/// construction; otherwise edges are drawn from shuffled vertex pairs
/// under the degree cap.
pub fn random_subcubic(n: usize, seed: u64, connected: bool) -> Result<Graph, ForgeError> {
    if n == 0 {
        return Err(ForgeError::InvalidSize(0));
    }
    let mut attempts = 0usize;
    let mut s = seed;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        match try_random(n, &mut rng, connected) {
            Some(g) => return Ok(g),
            None => {
                attempts += 1;
                if attempts >= 64 {
                    return Err(ForgeError::GenerationFailed(attempts));
                }
                s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
            }
        }
    }
}

/// Connected and not cubic, for the bound that excludes cubic inputs.
pub fn random_connected_noncubic(n: usize, seed: u64) -> Result<Graph, ForgeError> {
    let mut attempts = 0usize;
    let mut s = seed;
    loop {
        let g = random_subcubic(n, s, true)?;
        if !g.is_cubic() {
            return Ok(g);
        }
        attempts += 1;
        if attempts >= 64 {
            return Err(ForgeError::GenerationFailed(attempts));
        }
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
}

fn try_random(n: usize, rng: &mut ChaCha8Rng, connected: bool) -> Option<Graph> {
    let max_m = (3 * n / 2).min(n * (n - 1) / 2);
    if n == 1 {
        return Some(Graph::new(1));
    }
    let target = rng.gen_range(if connected { n - 1 } else { n / 2 }..=max_m);
    let mut deg = vec![0usize; n];
    let mut edges: Vec<Edge> = Vec::new();
    if connected {
        // Random recursive tree under the degree cap.
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let cands: Vec<Vertex> = order[..i].iter().copied().filter(|&v| deg[v] < 3).collect();
            let &p = cands.as_slice().choose(rng)?;
            edges.push(edge(order[i], p));
            deg[order[i]] += 1;
            deg[p] += 1;
        }
    }
    let mut pairs: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if edges.len() >= target {
            break;
        }
        if deg[u] < 3 && deg[v] < 3 && !edges.contains(&(u, v)) {
            edges.push((u, v));
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    Some(Graph::from_edge_list(n, &edges).expect("degree cap held"))
}

/// Seeded random connected subcubic graph of girth at least `g` (or
/// acyclic): a random spanning tree plus extra edges accepted only when
/// the current distance between the endpoints is at least g-1.
pub fn random_subcubic_girth(n: usize, g: usize, seed: u64) -> Result<Graph, ForgeError> {
    if n == 0 || g < 3 {
        return Err(ForgeError::InvalidSize(n.max(g)));
    }
    if n == 1 {
        return Ok(Graph::new(1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0usize; n];
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges: Vec<Edge> = Vec::new();
    let add = |edges: &mut Vec<Edge>, adj: &mut Vec<Vec<Vertex>>, deg: &mut Vec<usize>, u: Vertex, v: Vertex| {
        edges.push(edge(u, v));
        adj[u].push(v);
        adj[v].push(u);
        deg[u] += 1;
        deg[v] += 1;
    };
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    for i in 1..n {
        let cands: Vec<Vertex> = order[..i].iter().copied().filter(|&v| deg[v] < 3).collect();
        let &p = cands
            .as_slice()
            .choose(&mut rng)
            .ok_or(ForgeError::GenerationFailed(1))?;
        add(&mut edges, &mut adj, &mut deg, order[i], p);
    }
    let extra_budget = rng.gen_range(0..=n / 4);
    let mut pairs: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut added = 0usize;
    for (u, v) in pairs {
        if added >= extra_budget {
            break;
        }
        if deg[u] >= 3 || deg[v] >= 3 || adj[u].contains(&v) {
            continue;
        }
        if bfs_dist(&adj, u, v) >= g - 1 {
            add(&mut edges, &mut adj, &mut deg, u, v);
            added += 1;
        }
    }
    Ok(Graph::from_edge_list(n, &edges).expect("construction respects degrees"))
}

fn bfs_dist(adj: &[Vec<Vertex>], s: Vertex, t: Vertex) -> usize {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            return dist[t];
        }
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    usize::MAX
}
