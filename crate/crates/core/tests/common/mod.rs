//! Brute-force oracles written without the library's data structures, and
//! the fixed regression suite.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use mfc_core::SimplicialComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Face poset from scratch: nodes are the simplices (as vertex lists) and
/// arcs `(upper, lower)` join simplices differing in exactly one vertex.
pub struct OraclePoset {
    pub nodes: Vec<Vec<u32>>,
    pub arcs: Vec<(usize, usize)>,
}

impl OraclePoset {
    pub fn new(x: &SimplicialComplex) -> Self {
        let nodes: Vec<Vec<u32>> = x.simplices().to_vec();
        let mut arcs = Vec::new();
        for (a, s) in nodes.iter().enumerate() {
            for (b, t) in nodes.iter().enumerate() {
                if s.len() == t.len() + 1 && t.iter().all(|v| s.contains(v)) {
                    arcs.push((a, b));
                }
            }
        }
        arcs.sort_unstable();
        OraclePoset { nodes, arcs }
    }

    /// Every matching as a sorted list of arc positions, by include/exclude
    /// recursion over the arcs.
    pub fn matchings(&self) -> Vec<Vec<usize>> {
        fn rec(arcs: &[(usize, usize)], i: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == arcs.len() {
                out.push(cur.clone());
                return;
            }
            rec(arcs, i + 1, used, cur, out);
            let (u, l) = arcs[i];
            if !used[u] && !used[l] {
                used[u] = true;
                used[l] = true;
                cur.push(i);
                rec(arcs, i + 1, used, cur, out);
                cur.pop();
                used[u] = false;
                used[l] = false;
            }
        }
        let mut out = Vec::new();
        rec(&self.arcs, 0, &mut vec![false; self.nodes.len()], &mut Vec::new(), &mut out);
        out
    }

    /// Directed simple cycles after reversing the arcs of `m`, each as its
    /// node sequence starting at its smallest node.
    pub fn cycles(&self, m: &[usize]) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut out_adj = vec![Vec::new(); n];
        for (i, &(u, l)) in self.arcs.iter().enumerate() {
            if m.contains(&i) {
                out_adj[l].push(u);
            } else {
                out_adj[u].push(l);
            }
        }
        fn dfs(adj: &[Vec<usize>], start: usize, v: usize, path: &mut Vec<usize>, on: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            for &w in &adj[v] {
                if w == start {
                    out.push(path.clone());
                } else if w > start && !on[w] {
                    on[w] = true;
                    path.push(w);
                    dfs(adj, start, w, path, on, out);
                    path.pop();
                    on[w] = false;
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..n {
            let mut on = vec![false; n];
            on[s] = true;
            dfs(&out_adj, s, s, &mut vec![s], &mut on, &mut out);
        }
        out
    }

    pub fn j(&self, m: &[usize]) -> usize {
        self.cycles(m).len()
    }
}

/// Rank over the two-element field of the given columns (each a list of
/// row indices), by inserting bit vectors into a basis keyed by top bit.
pub fn rank_mod2(rows: usize, columns: &[Vec<usize>]) -> usize {
    let words = rows.div_ceil(64).max(1);
    let mut basis: HashMap<usize, Vec<u64>> = HashMap::new();
    for col in columns {
        let mut v = vec![0u64; words];
        for &r in col {
            v[r / 64] ^= 1 << (r % 64);
        }
        while let Some(w) = (0..words).rev().find(|&w| v[w] != 0) {
            let top = w * 64 + 63 - v[w].leading_zeros() as usize;
            match basis.get(&top) {
                Some(b) => v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                None => {
                    basis.insert(top, v);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Unreduced mod-2 Betti numbers of the complex whose simplices are the
/// given nonempty sets (closed under subsets).
pub fn betti_mod2(simplices: &[Vec<usize>]) -> BTreeMap<usize, usize> {
    let mut by_dim: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
    for s in simplices.iter().filter(|s| !s.is_empty()) {
        by_dim.entry(s.len() - 1).or_default().push(s);
    }
    let index: HashMap<&Vec<usize>, usize> = by_dim
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, s)| (*s, i)))
        .collect();
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    for (&d, cells) in &by_dim {
        if d == 0 {
            continue;
        }
        let cols: Vec<Vec<usize>> = cells
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|p| {
                        let mut f = (*s).clone();
                        f.remove(p);
                        index[&f]
                    })
                    .collect()
            })
            .collect();
        ranks.insert(d, rank_mod2(by_dim[&(d - 1)].len(), &cols));
    }
    let rank = |d: usize| ranks.get(&d).copied().unwrap_or(0);
    by_dim
        .iter()
        .map(|(&d, c)| (d, c.len() - rank(d) - rank(d + 1)))
        .filter(|&(_, b)| b > 0)
        .collect()
}

/// Bigraded mod-2 homology of the filtration-preserving boundary, from the
/// oracle matchings and cycle counts. Unreduced; keys `(i, j)`.
pub fn horizontal_mod2(p: &OraclePoset) -> BTreeMap<(usize, usize), usize> {
    let ms = p.matchings();
    let js: HashMap<&Vec<usize>, usize> = ms.iter().map(|m| (m, p.j(m))).collect();
    let mut cells: BTreeMap<(usize, usize), Vec<&Vec<usize>>> = BTreeMap::new();
    for m in ms.iter().filter(|m| !m.is_empty()) {
        cells.entry((m.len() - 1, js[m])).or_default().push(m);
    }
    let index: HashMap<&Vec<usize>, usize> = cells
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, s)| (*s, i)))
        .collect();
    let mut ranks: HashMap<(usize, usize), usize> = HashMap::new();
    for (&(i, j), group) in &cells {
        if i == 0 {
            continue;
        }
        let Some(below) = cells.get(&(i - 1, j)) else {
            continue;
        };
        let cols: Vec<Vec<usize>> = group
            .iter()
            .map(|m| {
                (0..m.len())
                    .filter_map(|q| {
                        let mut f = (*m).clone();
                        f.remove(q);
                        (js[&f] == j).then(|| index[&f])
                    })
                    .collect()
            })
            .collect();
        ranks.insert((i, j), rank_mod2(below.len(), &cols));
    }
    let rank = |i: usize, j: usize| ranks.get(&(i, j)).copied().unwrap_or(0);
    cells
        .iter()
        .map(|(&(i, j), c)| ((i, j), c.len() - rank(i, j) - rank(i + 1, j)))
        .filter(|&(_, r)| r > 0)
        .collect()
}

fn graph_complex(n: usize, edges: &[(usize, usize)]) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..n)
        .map(|v| vec![v])
        .chain(edges.iter().map(|&(u, v)| vec![u, v]))
        .collect();
    SimplicialComplex::from_facets(facets).unwrap()
}

/// Random simple graphs with a cycle and at most `max_edges` edges.
pub fn random_graphs(seed: u64, count: usize, max_edges: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=6);
        let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let edges: Vec<(usize, usize)> = all.into_iter().filter(|_| rng.gen_bool(0.5)).take(max_edges).collect();
        // a graph has a cycle iff it has more edges than a spanning forest
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut cyclic = false;
        for &(u, v) in &edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            cyclic |= a == b;
            parent[a] = b;
        }
        if cyclic {
            out.push(graph_complex(n, &edges));
        }
    }
    out
}

/// Random connected simple graphs on 2 to `max_vertices` vertices with at
/// most `max_edges` edges: a random tree plus random extra edges.
pub fn random_connected_graphs(seed: u64, count: usize, max_vertices: usize, max_edges: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_vertices);
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
            for i in 0..n {
                for j in i + 1..n {
                    if edges.len() < max_edges && !edges.contains(&(i, j)) && rng.gen_bool(0.3) {
                        edges.push((i, j));
                    }
                }
            }
            graph_complex(n, &edges)
        })
        .collect()
}

pub const PSEUDOTREES: [&str; 3] = ["pseudotree:3,1", "pseudotree:4,1,0,2", "pseudotree:3,2,1"];

/// The regression suite: named complexes.
pub fn suite() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> = [
        "cycle:3", "cycle:4", "cycle:5", "cycle:6", "complete:4", "complete:5", "simplex:2", "simplex:3",
    ]
    .iter()
    .chain(PSEUDOTREES.iter())
    .map(|s| (s.to_string(), SimplicialComplex::generate(s).unwrap()))
    .collect();
    for (i, g) in random_graphs(20_240_601, 5, 8).into_iter().enumerate() {
        out.push((format!("random-{i}"), g));
    }
    out
}
