//! Matchings and their enumeration.

use std::fmt;

use serde::Serialize;

use crate::poset::PosetSubgraph;

/// A set of pairwise node-disjoint arcs, stored as sorted arc indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Matching(Vec<usize>);

impl Matching {
    pub fn empty() -> Self {
        Matching(Vec::new())
    }

    /// Sorts and deduplicates `arcs`. Disjointness is not checked here.
    pub fn new(mut arcs: Vec<usize>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        Matching(arcs)
    }

    pub fn arcs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arc: usize) -> bool {
        self.0.binary_search(&arc).is_ok()
    }

    /// The matching with the arc at `position` removed.
    pub fn without_position(&self, position: usize) -> Matching {
        let mut arcs = self.0.clone();
        arcs.remove(position);
        Matching(arcs)
    }

    pub fn without(&self, arc: usize) -> Matching {
        Matching(self.0.iter().copied().filter(|&a| a != arc).collect())
    }

    pub fn union(&self, other: &Matching) -> Matching {
        Matching::new(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Arcs in exactly one of the two sets.
    pub fn symmetric_difference(&self, arcs: &[usize]) -> Matching {
        let mut out: Vec<usize> = self.0.iter().copied().filter(|a| !arcs.contains(a)).collect();
        out.extend(arcs.iter().copied().filter(|a| !self.contains(*a)));
        Matching::new(out)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Lazily yields every matching of an undirected edge list, as sorted edge
/// positions: by size, then lexicographically. The empty matching comes
/// first.
#[derive(Debug, Clone)]
pub struct EdgeMatchings {
    edges: Vec<(usize, usize)>,
    used: Vec<bool>,
    max_size: usize,
    size: usize,
    stack: Vec<usize>,
    cursor: usize,
    found_at_size: bool,
    done: bool,
}

impl EdgeMatchings {
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> Self {
        Self::with_max_size(node_count, edges, usize::MAX)
    }

    /// Stops after the matchings of size `max_size`.
    pub fn with_max_size(node_count: usize, edges: Vec<(usize, usize)>, max_size: usize) -> Self {
        EdgeMatchings {
            used: vec![false; node_count],
            edges,
            max_size,
            size: 0,
            stack: Vec::new(),
            cursor: 0,
            found_at_size: false,
            done: false,
        }
    }

    fn pop(&mut self) {
        let p = self.stack.pop().expect("nonempty stack");
        let (a, b) = self.edges[p];
        self.used[a] = false;
        self.used[b] = false;
        self.cursor = p + 1;
    }
}

impl Iterator for EdgeMatchings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.size == 0 {
            self.size = 1;
            self.done = self.max_size == 0 || self.edges.is_empty();
            return Some(Vec::new());
        }
        let n = self.edges.len();
        loop {
            if self.stack.len() == self.size {
                let out = self.stack.clone();
                self.found_at_size = true;
                self.pop();
                return Some(out);
            }
            let need = self.size - self.stack.len();
            if self.cursor + need <= n {
                let (a, b) = self.edges[self.cursor];
                if !self.used[a] && !self.used[b] {
                    self.used[a] = true;
                    self.used[b] = true;
                    self.stack.push(self.cursor);
                }
                self.cursor += 1;
            } else if !self.stack.is_empty() {
                self.pop();
            } else {
                // all matchings of the current size have been produced
                if !self.found_at_size || self.size >= self.max_size || self.size >= n {
                    self.done = true;
                    return None;
                }
                self.size += 1;
                self.cursor = 0;
                self.found_at_size = false;
            }
        }
    }
}

/// Every matching of a poset subgraph exactly once, as parent arc indices,
/// ordered by size and then lexicographically.
pub fn enumerate_matchings<'a>(h: &'a PosetSubgraph<'_>) -> impl Iterator<Item = Matching> + 'a {
    let parent = h.parent();
    let edges = h
        .arcs()
        .iter()
        .map(|&i| {
            let a = parent.arc(i);
            (a.upper, a.lower)
        })
        .collect();
    EdgeMatchings::new(parent.node_count(), edges)
        .map(move |pos| Matching(pos.into_iter().map(|p| h.arcs()[p]).collect()))
}
