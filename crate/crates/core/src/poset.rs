//! Face posets (Hasse diagrams) and their node-induced subgraphs.

use std::collections::HashMap;

use crate::complex::{Simplex, SimplicialComplex};

/// An arc of the Hasse diagram, oriented from a simplex to one of its
/// codimension-one faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub upper: usize,
    pub lower: usize,
}

/// Directed Hasse diagram of a simplicial complex. Nodes are the simplices
/// (the empty simplex is not a node) indexed in the complex's canonical
/// order; arcs are sorted by `(upper, lower)`.
#[derive(Debug, Clone)]
pub struct FacePoset {
    simplices: Vec<Simplex>,
    arcs: Vec<Arc>,
    arc_index: HashMap<(usize, usize), usize>,
    incident: Vec<Vec<usize>>,
}

impl FacePoset {
    pub fn new(x: &SimplicialComplex) -> Self {
        let simplices = x.simplices().to_vec();
        let mut arcs = Vec::new();
        for (upper, s) in simplices.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            let mut lowers: Vec<usize> = (0..s.len())
                .map(|p| {
                    let mut face = s.clone();
                    face.remove(p);
                    x.index_of(&face).expect("complex is closed under faces")
                })
                .collect();
            lowers.sort_unstable();
            arcs.extend(lowers.into_iter().map(|lower| Arc { upper, lower }));
        }
        let arc_index = arcs
            .iter()
            .enumerate()
            .map(|(i, a)| ((a.upper, a.lower), i))
            .collect();
        let mut incident = vec![Vec::new(); simplices.len()];
        for (i, a) in arcs.iter().enumerate() {
            incident[a.upper].push(i);
            incident[a.lower].push(i);
        }
        FacePoset {
            simplices,
            arcs,
            arc_index,
            incident,
        }
    }

    pub fn node_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> Arc {
        self.arcs[i]
    }

    /// Index of the arc joining two nodes, in either direction.
    pub fn arc_between(&self, a: usize, b: usize) -> Option<usize> {
        self.arc_index
            .get(&(a, b))
            .or_else(|| self.arc_index.get(&(b, a)))
            .copied()
    }

    pub fn simplex(&self, node: usize) -> &Simplex {
        &self.simplices[node]
    }

    pub fn dim(&self, node: usize) -> usize {
        self.simplices[node].len() - 1
    }

    /// Arcs touching `node`, ascending.
    pub fn incident_arcs(&self, node: usize) -> &[usize] {
        &self.incident[node]
    }

    pub fn full(&self) -> PosetSubgraph<'_> {
        PosetSubgraph::induced(self, vec![true; self.node_count()])
    }

    /// Subgraph induced on the nodes whose dimension lies in `lo..=hi`.
    pub fn dimension_band(&self, lo: usize, hi: usize) -> PosetSubgraph<'_> {
        let keep = (0..self.node_count())
            .map(|n| (lo..=hi).contains(&self.dim(n)))
            .collect();
        PosetSubgraph::induced(self, keep)
    }
}

/// A node-induced subgraph of a face poset. Isolated nodes are kept.
#[derive(Debug, Clone)]
pub struct PosetSubgraph<'a> {
    parent: &'a FacePoset,
    keep: Vec<bool>,
    nodes: Vec<usize>,
    arcs: Vec<usize>,
}

impl<'a> PosetSubgraph<'a> {
    /// Keeps the nodes flagged in `keep` and every parent arc with both
    /// endpoints kept.
    pub fn induced(parent: &'a FacePoset, keep: Vec<bool>) -> Self {
        assert_eq!(keep.len(), parent.node_count());
        let nodes = (0..keep.len()).filter(|&n| keep[n]).collect();
        let arcs = parent
            .arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| keep[a.upper] && keep[a.lower])
            .map(|(i, _)| i)
            .collect();
        PosetSubgraph {
            parent,
            keep,
            nodes,
            arcs,
        }
    }

    pub fn parent(&self) -> &'a FacePoset {
        self.parent
    }

    /// Parent node indices, ascending.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Parent arc indices, ascending.
    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    pub fn contains_node(&self, node: usize) -> bool {
        self.keep[node]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
