//! Simplicial complexes built from matchings: the matching complex, the
//! discrete Morse complex, the filtration levels between them, and their
//! analogues on subgraphs and plain graphs.
//!
//! Complexes over poset arcs use the arc index as integer vertex label, so
//! identical inputs give identical complexes.

use std::collections::BTreeSet;

use crate::census::MatchingCensus;
use crate::complex::{Label, Simplex, SimplicialComplex};
use crate::cycles::is_acyclic_within;
use crate::graph::Graph;
use crate::matching::{enumerate_matchings, EdgeMatchings, Matching};
use crate::poset::PosetSubgraph;

/// Complex whose simplices are the given nonempty arc sets, which must be
/// closed under taking subsets.
pub(crate) fn complex_from_matchings<'m>(sets: impl IntoIterator<Item = &'m [usize]>) -> SimplicialComplex {
    let sets: Vec<&[usize]> = sets.into_iter().filter(|s| !s.is_empty()).collect();
    let vertices: Vec<usize> = sets
        .iter()
        .flat_map(|s| s.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let local = |a: usize| vertices.binary_search(&a).expect("vertex present") as u32;
    let simplices: Vec<Simplex> = sets
        .iter()
        .map(|s| s.iter().map(|&a| local(a)).collect())
        .collect();
    let labels = vertices.iter().map(|&a| Label::from(a)).collect();
    SimplicialComplex::from_closed(labels, simplices)
}

/// `M(X)`: one simplex per nonempty matching of the face poset.
pub fn matching_complex(census: &MatchingCensus) -> SimplicialComplex {
    complex_from_matchings(census.matchings().iter().map(Matching::arcs))
}

/// `M_k(X)`: matchings supporting at most `k` cycles. Empty for `k < 0`.
pub fn filtration_complex(census: &MatchingCensus, k: i64) -> SimplicialComplex {
    if k < 0 {
        return SimplicialComplex::empty();
    }
    complex_from_matchings(
        census
            .matchings()
            .iter()
            .enumerate()
            .filter(|&(i, _)| census.j(i) as i64 <= k)
            .map(|(_, m)| m.arcs()),
    )
}

/// Discrete Morse complex: the acyclic matchings, i.e. `M_0(X)`.
pub fn morse_complex(census: &MatchingCensus) -> SimplicialComplex {
    filtration_complex(census, 0)
}

/// Matchings of `h` whose reversal creates no directed cycle inside `h`.
pub fn restricted_morse_matchings(h: &PosetSubgraph<'_>) -> Vec<Matching> {
    enumerate_matchings(h)
        .filter(|m| is_acyclic_within(h, m))
        .collect()
}

/// Complex of [`restricted_morse_matchings`], labeled by parent arc index.
pub fn restricted_morse_complex(h: &PosetSubgraph<'_>) -> SimplicialComplex {
    let ms = restricted_morse_matchings(h);
    complex_from_matchings(ms.iter().map(Matching::arcs))
}

/// Matchings of a graph as a complex over edge labels (edge indices).
pub fn graph_matching_complex(g: &Graph) -> SimplicialComplex {
    let ms: Vec<Vec<usize>> = EdgeMatchings::new(g.vertex_count(), g.edges().to_vec()).collect();
    complex_from_matchings(ms.iter().map(Vec::as_slice))
}
