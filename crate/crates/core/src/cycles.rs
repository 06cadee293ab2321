//! Oriented cycles supported by matchings on a face poset.
//!
//! Reversing the arcs of a matching turns them upward in dimension. The
//! directed simple cycles of the resulting digraph are the cycles the
//! matching supports; their number is the filtration value `J`.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::poset::{FacePoset, PosetSubgraph};

/// A directed simple cycle in the reoriented poset, rotated to start at its
/// smallest node. `arcs[i]` joins `nodes[i]` to `nodes[i + 1]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrientedCycle {
    pub nodes: Vec<usize>,
    pub arcs: Vec<usize>,
}

impl OrientedCycle {
    /// Number of poset arcs on the cycle.
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn shares_arc_with(&self, other: &OrientedCycle) -> bool {
        self.arcs.iter().any(|a| other.arcs.contains(a))
    }

    /// The same cycle traversed backwards, in canonical rotation.
    pub fn reversed(&self, poset: &FacePoset) -> OrientedCycle {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        canonical_cycle(poset, nodes)
    }
}

fn canonical_cycle(poset: &FacePoset, mut nodes: Vec<usize>) -> OrientedCycle {
    let start = (0..nodes.len()).min_by_key(|&i| nodes[i]).unwrap_or(0);
    nodes.rotate_left(start);
    let arcs = (0..nodes.len())
        .map(|i| {
            poset
                .arc_between(nodes[i], nodes[(i + 1) % nodes.len()])
                .expect("consecutive cycle nodes are adjacent")
        })
        .collect();
    OrientedCycle { nodes, arcs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Empty,
    NonMaximal,
    Maximal,
}

/// The full set of oriented cycles a matching supports, with its
/// statistics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrientedCycleCollection {
    cycles: Vec<OrientedCycle>,
    nodes: Vec<usize>,
    components: usize,
    independent: usize,
    matched_arc_total: usize,
    classification: Classification,
}

impl OrientedCycleCollection {
    fn new(poset: &FacePoset, m: &Matching, mut cycles: Vec<OrientedCycle>) -> Self {
        cycles.sort();
        let mut nodes: Vec<usize> = cycles.iter().flat_map(|c| c.nodes.iter().copied()).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut arcs: Vec<usize> = cycles.iter().flat_map(|c| c.arcs.iter().copied()).collect();
        arcs.sort_unstable();
        arcs.dedup();
        let matched_arc_total = arcs.iter().filter(|&&a| m.contains(a)).count();

        // components of the union, cycles meeting at a node are connected
        let mut parent: Vec<usize> = (0..cycles.len()).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if cycles[i].nodes.iter().any(|n| cycles[j].nodes.contains(n)) {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let components = (0..cycles.len()).filter(|&i| root(&mut parent, i) == i).count();
        let independent = (0..cycles.len())
            .filter(|&i| (0..cycles.len()).all(|j| j == i || !cycles[i].shares_arc_with(&cycles[j])))
            .count();
        let classification = if cycles.is_empty() {
            Classification::Empty
        } else if nodes.len() == poset.node_count() {
            Classification::Maximal
        } else {
            Classification::NonMaximal
        };
        OrientedCycleCollection {
            cycles,
            nodes,
            components,
            independent,
            matched_arc_total,
            classification,
        }
    }

    pub fn cycles(&self) -> &[OrientedCycle] {
        &self.cycles
    }

    /// `|C|`.
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Number of connected components of the union of the cycles.
    pub fn components(&self) -> usize {
        self.components
    }

    /// Number of cycles sharing no arc with any other cycle of the collection.
    pub fn independent(&self) -> usize {
        self.independent
    }

    pub fn is_independent(&self, index: usize) -> bool {
        let c = &self.cycles[index];
        self.cycles
            .iter()
            .enumerate()
            .all(|(j, d)| j == index || !c.shares_arc_with(d))
    }

    /// Poset arc count of each cycle.
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(OrientedCycle::len).collect()
    }

    /// Number of matched arcs lying on the cycles, shared arcs counted once.
    pub fn matched_arc_total(&self) -> usize {
        self.matched_arc_total
    }

    /// Poset nodes covered by the cycles, ascending.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    /// Matched arcs on the cycles: the arcs each cycle traverses upward.
    pub fn matched_arcs(&self, poset: &FacePoset) -> Matching {
        let mut arcs = Vec::new();
        for c in &self.cycles {
            for (i, &a) in c.arcs.iter().enumerate() {
                if poset.arc(a).lower == c.nodes[i] {
                    arcs.push(a);
                }
            }
        }
        Matching::new(arcs)
    }
}

/// Out-neighbors of the digraph obtained from the arcs in `arcs` by
/// reversing those in `m`, on local node ids. Only nodes touched by `m` are
/// kept: every node of a supported cycle is matched.
struct Reoriented {
    nodes: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Reoriented {
    fn new(poset: &FacePoset, arcs: &[usize], m: &Matching) -> Self {
        let mut local = vec![usize::MAX; poset.node_count()];
        let mut nodes: Vec<usize> = m
            .arcs()
            .iter()
            .flat_map(|&a| {
                let arc = poset.arc(a);
                [arc.upper, arc.lower]
            })
            .collect();
        nodes.sort_unstable();
        for (i, &n) in nodes.iter().enumerate() {
            local[n] = i;
        }
        let mut out = vec![Vec::new(); nodes.len()];
        for &a in arcs {
            let arc = poset.arc(a);
            let (u, l) = (local[arc.upper], local[arc.lower]);
            if u == usize::MAX || l == usize::MAX {
                continue;
            }
            if m.contains(a) {
                out[l].push(u);
            } else {
                out[u].push(l);
            }
        }
        Reoriented { nodes, out }
    }

    fn is_acyclic(&self) -> bool {
        let n = self.out.len();
        let mut indeg = vec![0usize; n];
        for targets in &self.out {
            for &t in targets {
                indeg[t] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &t in &self.out[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
        seen == n
    }

    /// All directed simple cycles as parent node sequences, each starting at
    /// its smallest node.
    fn simple_cycles(&self) -> Vec<Vec<usize>> {
        johnson(&self.out)
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.nodes[v]).collect())
            .collect()
    }
}

/// Johnson's elementary circuit enumeration.
fn johnson(out: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct Search<'g> {
        out: &'g [Vec<usize>],
        in_scc: Vec<bool>,
        blocked: Vec<bool>,
        b: Vec<Vec<usize>>,
        stack: Vec<usize>,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn unblock(&mut self, u: usize) {
            self.blocked[u] = false;
            while let Some(w) = self.b[u].pop() {
                if self.blocked[w] {
                    self.unblock(w);
                }
            }
        }

        fn circuit(&mut self, v: usize, s: usize) -> bool {
            let out = self.out;
            let mut closed = false;
            self.stack.push(v);
            self.blocked[v] = true;
            for &w in &out[v] {
                if !self.in_scc[w] {
                    continue;
                }
                if w == s {
                    self.found.push(self.stack.clone());
                    closed = true;
                } else if !self.blocked[w] && self.circuit(w, s) {
                    closed = true;
                }
            }
            if closed {
                self.unblock(v);
            } else {
                for &w in &out[v] {
                    if self.in_scc[w] && !self.b[w].contains(&v) {
                        self.b[w].push(v);
                    }
                }
            }
            self.stack.pop();
            closed
        }
    }

    let n = out.len();
    let mut search = Search {
        out,
        in_scc: vec![false; n],
        blocked: vec![false; n],
        b: vec![Vec::new(); n],
        stack: Vec::new(),
        found: Vec::new(),
    };
    for s in 0..n {
        let scc = scc_of(out, s);
        if scc.len() < 2 {
            continue;
        }
        search.in_scc.iter_mut().for_each(|x| *x = false);
        for &v in &scc {
            search.in_scc[v] = true;
            search.blocked[v] = false;
            search.b[v].clear();
        }
        search.circuit(s, s);
    }
    search.found
}

/// Strongly connected component of `s` in the subgraph induced on nodes `>= s`.
fn scc_of(out: &[Vec<usize>], s: usize) -> Vec<usize> {
    let reach = |forward: bool| -> Vec<bool> {
        let mut seen = vec![false; out.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            let nbrs: Box<dyn Iterator<Item = usize>> = if forward {
                Box::new(out[v].iter().copied())
            } else {
                Box::new((0..out.len()).filter(move |&u| out[u].contains(&v)))
            };
            for w in nbrs {
                if w >= s && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let (f, b) = (reach(true), reach(false));
    (s..out.len()).filter(|&v| f[v] && b[v]).collect()
}

/// The oriented cycles `m` supports on the whole face poset.
pub fn induced_cycles(poset: &FacePoset, m: &Matching) -> OrientedCycleCollection {
    let all: Vec<usize> = (0..poset.arc_count()).collect();
    let r = Reoriented::new(poset, &all, m);
    let cycles = r
        .simple_cycles()
        .into_iter()
        .map(|nodes| canonical_cycle(poset, nodes))
        .collect();
    OrientedCycleCollection::new(poset, m, cycles)
}

/// Filtration value: the number of oriented cycles `m` supports.
pub fn j_value(poset: &FacePoset, m: &Matching) -> usize {
    let all: Vec<usize> = (0..poset.arc_count()).collect();
    Reoriented::new(poset, &all, m).simple_cycles().len()
}

/// Topological-sort check that reversing `m` creates no directed cycle.
pub fn is_acyclic(poset: &FacePoset, m: &Matching) -> bool {
    let all: Vec<usize> = (0..poset.arc_count()).collect();
    Reoriented::new(poset, &all, m).is_acyclic()
}

/// Acyclicity of `m` inside the digraph formed by the arcs of `h` alone.
pub fn is_acyclic_within(h: &PosetSubgraph<'_>, m: &Matching) -> bool {
    Reoriented::new(h.parent(), h.arcs(), m).is_acyclic()
}

/// Click move: swaps matched and unmatched arcs along the cycle at `index`
/// of the collection `m` supports. The cycle must share no arc with the
/// other supported cycles.
pub fn click(poset: &FacePoset, m: &Matching, index: usize) -> Result<Matching> {
    let c = induced_cycles(poset, m);
    if index >= c.count() {
        return Err(Error::Precondition(format!(
            "matching supports {} cycles, no cycle {index}",
            c.count()
        )));
    }
    if !c.is_independent(index) {
        return Err(Error::Precondition(format!(
            "cycle {index} shares an arc with another supported cycle"
        )));
    }
    Ok(m.symmetric_difference(&c.cycles()[index].arcs))
}

/// Breadth-first search over click moves starting at `m1`.
pub fn are_click_equivalent(poset: &FacePoset, m1: &Matching, m2: &Matching) -> bool {
    let mut seen: HashSet<Matching> = HashSet::from([m1.clone()]);
    let mut queue = VecDeque::from([m1.clone()]);
    while let Some(m) = queue.pop_front() {
        if &m == m2 {
            return true;
        }
        let c = induced_cycles(poset, &m);
        for i in 0..c.count() {
            if !c.is_independent(i) {
                continue;
            }
            let next = m.symmetric_difference(&c.cycles()[i].arcs);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

/// Subgraph on every node not covered by `c`, with all arcs among them.
pub fn complement<'a>(poset: &'a FacePoset, c: &OrientedCycleCollection) -> PosetSubgraph<'a> {
    let mut keep = vec![true; poset.node_count()];
    for &n in c.nodes() {
        keep[n] = false;
    }
    PosetSubgraph::induced(poset, keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::matching::enumerate_matchings;

    fn poset(spec: &str) -> FacePoset {
        FacePoset::new(&SimplicialComplex::generate(spec).unwrap())
    }

    fn all_matchings(f: &FacePoset) -> Vec<Matching> {
        let full = f.full();
        enumerate_matchings(&full).collect()
    }

    #[test]
    fn johnson_on_small_digraphs() {
        // two triangles sharing the arc 0 -> 1
        let out = vec![vec![1], vec![2, 3], vec![0], vec![0]];
        let mut cycles = johnson(&out);
        cycles.sort();
        assert_eq!(cycles, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        // complete digraph on 3 nodes: three 2-cycles and two triangles
        let k3 = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert_eq!(johnson(&k3).len(), 5);
        assert!(johnson(&[vec![], vec![0]]).is_empty());
    }

    #[test]
    fn hexagon_cycles() {
        let f = poset("cycle:3");
        let all = all_matchings(&f);
        let perfect: Vec<_> = all.iter().filter(|m| m.len() == 3).collect();
        assert_eq!(perfect.len(), 2);
        for m in &perfect {
            let c = induced_cycles(&f, m);
            assert_eq!(c.count(), 1);
            assert_eq!(c.lengths(), vec![6]);
            assert_eq!(c.classification(), Classification::Maximal);
            assert_eq!(c.matched_arc_total(), 3);
            assert_eq!(&c.matched_arcs(&f), *m);
            assert!(!is_acyclic(&f, m));
        }
        for m in all.iter().filter(|m| m.len() == 2) {
            assert!(induced_cycles(&f, m).is_empty());
            assert!(is_acyclic(&f, m));
        }
        assert_eq!(j_value(&f, &Matching::empty()), 0);
        assert_eq!(
            induced_cycles(&f, &Matching::empty()).classification(),
            Classification::Empty
        );
    }

    #[test]
    fn tetrahedron_supports_two_disjoint_hexagons() {
        let f = poset("simplex:3");
        let best = all_matchings(&f)
            .into_iter()
            .map(|m| j_value(&f, &m))
            .max()
            .unwrap();
        assert_eq!(best, 2);
        let two = all_matchings(&f)
            .into_iter()
            .find(|m| j_value(&f, m) == 2)
            .unwrap();
        let c = induced_cycles(&f, &two);
        assert_eq!(c.lengths(), vec![6, 6]);
        assert_eq!(c.independent(), 2);
        assert!(c.cycles()[0].nodes.iter().all(|n| !c.cycles()[1].nodes.contains(n)));
    }

    #[test]
    fn clicks_on_c4() {
        let f = poset("cycle:4");
        let perfect: Vec<_> = all_matchings(&f).into_iter().filter(|m| m.len() == 4).collect();
        assert_eq!(perfect.len(), 2);
        let clicked = click(&f, &perfect[0], 0).unwrap();
        assert_eq!(clicked, perfect[1]);
        assert_eq!(click(&f, &clicked, 0).unwrap(), perfect[0]);
        let c0 = induced_cycles(&f, &perfect[0]);
        let c1 = induced_cycles(&f, &perfect[1]);
        assert_eq!(c1.cycles()[0], c0.cycles()[0].reversed(&f));
        assert!(are_click_equivalent(&f, &perfect[0], &perfect[1]));
        assert!(are_click_equivalent(&f, &perfect[0], &perfect[0]));
        assert!(click(&f, &Matching::empty(), 0).is_err());
    }

    #[test]
    fn click_on_pseudotree_keeps_pendant() {
        let f = poset("pseudotree:3,1");
        let cyclic: Vec<_> = all_matchings(&f)
            .into_iter()
            .filter(|m| j_value(&f, m) == 1)
            .collect();
        assert!(!cyclic.is_empty());
        for m in &cyclic {
            let m2 = click(&f, m, 0).unwrap();
            let (c, c2) = (induced_cycles(&f, m), induced_cycles(&f, &m2));
            assert_eq!(c2.cycles()[0], c.cycles()[0].reversed(&f));
            let off: Vec<_> = m.arcs().iter().filter(|a| !c.cycles()[0].arcs.contains(a)).collect();
            let off2: Vec<_> = m2.arcs().iter().filter(|a| !c.cycles()[0].arcs.contains(a)).collect();
            assert_eq!(off, off2);
        }
    }

    #[test]
    fn different_off_cycle_arcs_are_not_click_equivalent() {
        let f = poset("path:3");
        let all = all_matchings(&f);
        assert!(!are_click_equivalent(&f, &all[1], &all[2]));
    }

    #[test]
    fn complements() {
        let f = poset("cycle:3");
        let m = all_matchings(&f).into_iter().find(|m| m.len() == 3).unwrap();
        let c = induced_cycles(&f, &m);
        let h = complement(&f, &c);
        assert_eq!((h.node_count(), h.arc_count()), (0, 0));

        let f = poset("simplex:2");
        let m = all_matchings(&f).into_iter().find(|m| j_value(&f, m) == 1).unwrap();
        let c = induced_cycles(&f, &m);
        assert_eq!(c.classification(), Classification::NonMaximal);
        let h = complement(&f, &c);
        assert_eq!((h.node_count(), h.arc_count()), (1, 0));
        assert_eq!(f.dim(h.nodes()[0]), 2);

        let empty = induced_cycles(&f, &Matching::empty());
        let h = complement(&f, &empty);
        assert_eq!((h.node_count(), h.arc_count()), (7, 9));
    }
}
