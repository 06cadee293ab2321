//! Graph-side view of one-dimensional complexes: unoriented cycles,
//! vertex-disjoint cycle collections, 2-factors, and the map sending
//! supported poset cycles to cycles of the graph.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::cycles::OrientedCycleCollection;
use crate::error::{Error, Result};
use crate::poset::FacePoset;

/// A simple graph read off a complex of dimension at most one. Vertices and
/// edges are numbered in the complex's canonical order.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    vertex_node: Vec<usize>,
    edge_node: Vec<usize>,
}

impl Graph {
    pub fn from_complex(x: &SimplicialComplex) -> Result<Self> {
        if x.dim() > 1 {
            return Err(Error::Precondition(format!(
                "expected a graph, got a complex of dimension {}",
                x.dim()
            )));
        }
        let mut vertex_node = Vec::new();
        let mut edges = Vec::new();
        let mut edge_node = Vec::new();
        for (i, s) in x.simplices().iter().enumerate() {
            match s.as_slice() {
                [_] => vertex_node.push(i),
                [u, v] => {
                    edges.push((*u as usize, *v as usize));
                    edge_node.push(i);
                }
                _ => unreachable!(),
            }
        }
        Ok(Graph {
            vertex_count: vertex_node.len(),
            edges,
            vertex_node,
            edge_node,
        })
    }

    /// Graph with vertices `0..n` and the given edges, no complex attached.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let edge_node = (n..n + edges.len()).collect();
        Graph {
            vertex_count: n,
            edges,
            vertex_node: (0..n).collect(),
            edge_node,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Face poset node of vertex `v`.
    pub fn vertex_node(&self, v: usize) -> usize {
        self.vertex_node[v]
    }

    /// Face poset node of edge `e`.
    pub fn edge_node(&self, e: usize) -> usize {
        self.edge_node[e]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().enumerate().filter_map(move |(e, &(a, b))| {
            if a == v {
                Some((b, e))
            } else if b == v {
                Some((a, e))
            } else {
                None
            }
        })
    }

    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        let mut count = self.vertex_count;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    /// Every simple cycle, once, as an unoriented vertex and edge set.
    pub fn simple_cycles(&self) -> Vec<GraphCycle> {
        let mut found = Vec::new();
        let mut path = Vec::new();
        let mut path_edges = Vec::new();
        let mut on_path = vec![false; self.vertex_count];
        for s in 0..self.vertex_count {
            path.push(s);
            on_path[s] = true;
            self.extend_cycles(s, &mut path, &mut path_edges, &mut on_path, &mut found);
            on_path[s] = false;
            path.pop();
        }
        found.sort();
        found
    }

    fn extend_cycles(
        &self,
        s: usize,
        path: &mut Vec<usize>,
        path_edges: &mut Vec<usize>,
        on_path: &mut [bool],
        found: &mut Vec<GraphCycle>,
    ) {
        let v = *path.last().unwrap();
        for (w, e) in self.neighbors(v) {
            if w == s && path.len() >= 3 && path[1] < v {
                // each cycle is seen in both directions; keep one
                let mut edges = path_edges.clone();
                edges.push(e);
                found.push(GraphCycle::new(path.clone(), edges));
            } else if w > s && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                path_edges.push(e);
                self.extend_cycles(s, path, path_edges, on_path, found);
                path_edges.pop();
                path.pop();
                on_path[w] = false;
            }
        }
    }
}

fn find(p: &mut [usize], mut i: usize) -> usize {
    while p[i] != i {
        p[i] = p[p[i]];
        i = p[i];
    }
    i
}

/// An unoriented simple cycle of a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GraphCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl GraphCycle {
    fn new(mut vertices: Vec<usize>, mut edges: Vec<usize>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        GraphCycle { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Face poset nodes of the subdivided cycle: its vertices and edges.
    pub fn poset_nodes(&self, g: &Graph) -> Vec<usize> {
        let mut nodes: Vec<usize> = self
            .vertices
            .iter()
            .map(|&v| g.vertex_node(v))
            .chain(self.edges.iter().map(|&e| g.edge_node(e)))
            .collect();
        nodes.sort_unstable();
        nodes
    }
}

/// A set of pairwise vertex-disjoint cycles, sorted.
pub type CycleCollection = Vec<GraphCycle>;

/// Total edge count `l(C)` of a collection.
pub fn total_length(c: &[GraphCycle]) -> usize {
    c.iter().map(GraphCycle::len).sum()
}

/// All collections of pairwise vertex-disjoint cycles, the empty one first.
pub fn vd_cycle_collections(g: &Graph) -> Vec<CycleCollection> {
    fn grow(
        cycles: &[GraphCycle],
        from: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<GraphCycle>,
        out: &mut Vec<CycleCollection>,
    ) {
        out.push(current.clone());
        for i in from..cycles.len() {
            let c = &cycles[i];
            if c.vertices.iter().any(|&v| used[v]) {
                continue;
            }
            c.vertices.iter().for_each(|&v| used[v] = true);
            current.push(c.clone());
            grow(cycles, i + 1, used, current, out);
            current.pop();
            c.vertices.iter().for_each(|&v| used[v] = false);
        }
    }
    let cycles = g.simple_cycles();
    let mut out = Vec::new();
    grow(&cycles, 0, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out);
    out
}

/// Nonempty vertex-disjoint cycle collections covering every vertex.
pub fn two_factors(g: &Graph) -> Vec<CycleCollection> {
    vd_cycle_collections(g)
        .into_iter()
        .filter(|c| !c.is_empty() && c.iter().map(|x| x.vertices.len()).sum::<usize>() == g.vertex_count())
        .collect()
}

/// Maximum number of vertex-disjoint cycles.
pub fn eta_graph(g: &Graph) -> usize {
    vd_cycle_collections(g).iter().map(Vec::len).max().unwrap_or(0)
}

/// Sends each supported poset cycle to the graph cycle whose edges it
/// passes through. The result is sorted.
pub fn phi(x: &SimplicialComplex, poset: &FacePoset, c: &OrientedCycleCollection) -> Result<CycleCollection> {
    let g = Graph::from_complex(x)?;
    let edge_of_node = |n: usize| (0..g.edge_count()).find(|&e| g.edge_node(e) == n);
    let vertex_of_node = |n: usize| (0..g.vertex_count()).find(|&v| g.vertex_node(v) == n);
    let mut out: Vec<GraphCycle> = c
        .cycles()
        .iter()
        .map(|cycle| {
            let mut vertices = Vec::new();
            let mut edges = Vec::new();
            for &n in &cycle.nodes {
                match poset.dim(n) {
                    0 => vertices.push(vertex_of_node(n).expect("vertex node")),
                    _ => edges.push(edge_of_node(n).expect("edge node")),
                }
            }
            GraphCycle::new(vertices, edges)
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(spec: &str) -> Graph {
        Graph::from_complex(&SimplicialComplex::generate(spec).unwrap()).unwrap()
    }

    /// Edge subsets in which every vertex has degree 0 or 2 are exactly the
    /// vertex-disjoint cycle collections of a simple graph.
    fn brute_force_vd(g: &Graph) -> (usize, usize) {
        let (mut all, mut spanning) = (0, 0);
        for mask in 0u32..1 << g.edge_count() {
            let mut deg = vec![0; g.vertex_count()];
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                if mask >> e & 1 == 1 {
                    deg[a] += 1;
                    deg[b] += 1;
                }
            }
            if deg.iter().all(|&d| d == 0 || d == 2) {
                all += 1;
                if mask != 0 && deg.iter().all(|&d| d == 2) {
                    spanning += 1;
                }
            }
        }
        (all, spanning)
    }

    #[test]
    fn k4_collections() {
        let g = graph("complete:4");
        assert_eq!(g.simple_cycles().len(), 7);
        let vd = vd_cycle_collections(&g);
        assert_eq!(vd.len(), 8);
        assert_eq!(brute_force_vd(&g), (8, 3));
        assert_eq!(vd.iter().filter(|c| c.len() == 1 && c[0].len() == 3).count(), 4);
        let tf = two_factors(&g);
        assert_eq!(tf.len(), 3);
        assert!(tf.iter().all(|c| c.len() == 1 && c[0].len() == 4));
    }

    #[test]
    fn cycle_graph_has_one_two_factor() {
        for n in 3..8 {
            let g = graph(&format!("cycle:{n}"));
            let tf = two_factors(&g);
            assert_eq!(tf.len(), 1);
            assert_eq!(tf[0][0].len(), n);
            assert_eq!(eta_graph(&g), 1);
        }
    }

    #[test]
    fn complete_graph_eta() {
        for n in 3..=7 {
            assert_eq!(eta_graph(&graph(&format!("complete:{n}"))), n / 3);
        }
        for n in 3..=6 {
            let g = graph(&format!("complete:{n}"));
            let (all, spanning) = brute_force_vd(&g);
            assert_eq!(vd_cycle_collections(&g).len(), all);
            assert_eq!(two_factors(&g).len(), spanning);
        }
    }

    #[test]
    fn trees_have_no_cycles() {
        let g = graph("star:4");
        assert_eq!(vd_cycle_collections(&g), vec![Vec::<GraphCycle>::new()]);
        assert!(two_factors(&g).is_empty());
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn phi_rejects_higher_dimensions() {
        let x = SimplicialComplex::generate("simplex:2").unwrap();
        let f = FacePoset::new(&x);
        let c = crate::cycles::induced_cycles(&f, &crate::Matching::empty());
        assert!(matches!(phi(&x, &f, &c), Err(Error::Precondition(_))));
    }
}
