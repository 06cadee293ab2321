//! Horizontal homology assembled from the supported cycle collections:
//! `H(M0)` at filtration 0, plus for each supported collection `C` the
//! reduced homology of the acyclic matchings on its complement, shifted up
//! by the number of matched arcs on `C` and placed at filtration `|C|`.

use rayon::prelude::*;
use serde::Serialize;

use crate::census::MatchingCensus;
use crate::chain::BigradedChainComplex;
use crate::cycles::{complement, Classification, OrientedCycleCollection};
use crate::error::Result;
use crate::graph::{total_length, vd_cycle_collections, Graph};
use crate::homology::{simplicial_homology_mod2, Coefficients, HomologyTable};
use crate::poset::PosetSubgraph;
use crate::subcomplexes::{complex_from_matchings, morse_complex, restricted_morse_complex};

/// How the acyclic matchings on the complement `X_C` of a collection are
/// chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplementVariant {
    /// Matchings of `X_C` creating no directed cycle inside `X_C`.
    Standalone,
    /// Matchings `m'` of `X_C` such that `m'` together with the matched arcs
    /// of `C` supports exactly `C`.
    Ambient,
}

fn shifted_reduced(table: &mut HomologyTable, h: &HomologyTable, shift: usize, filtration: usize) {
    for ((i, _), r) in h.entries() {
        table.add(i + shift as i32, filtration as u32, r);
    }
}

fn collection_term(
    census: &MatchingCensus,
    id: usize,
    c: &OrientedCycleCollection,
    variant: ComplementVariant,
) -> Result<HomologyTable> {
    let mut out = HomologyTable::new(Coefficients::F2, false, true);
    let (s, j) = (c.matched_arc_total(), c.count());
    if c.classification() == Classification::Maximal {
        out.add(s as i32 - 1, j as u32, 1);
        return Ok(out);
    }
    let complex = match variant {
        ComplementVariant::Standalone => restricted_morse_complex(&complement(census.poset(), c)),
        ComplementVariant::Ambient => {
            let cycle_arcs = c.matched_arcs(census.poset());
            let rest: Vec<Vec<usize>> = (0..census.matchings().len())
                .filter(|&g| census.collection_id(g) == id)
                .map(|g| {
                    let m = &census.matchings()[g];
                    m.arcs().iter().copied().filter(|a| !cycle_arcs.contains(*a)).collect()
                })
                .collect();
            complex_from_matchings(rest.iter().map(Vec::as_slice))
        }
    };
    shifted_reduced(&mut out, &simplicial_homology_mod2(&complex, true)?, s, j);
    Ok(out)
}

fn merge(into: &mut HomologyTable, from: &HomologyTable, copies: usize) {
    for ((i, j), r) in from.entries() {
        into.add(i, j, r * copies);
    }
}

/// Right-hand side of the decomposition, one summand per oriented collection.
pub fn hh_decomposition(census: &MatchingCensus, variant: ComplementVariant) -> Result<HomologyTable> {
    let mut out = HomologyTable::new(Coefficients::F2, false, true);
    merge(&mut out, &simplicial_homology_mod2(&morse_complex(census), false)?, 1);
    let terms: Vec<HomologyTable> = census
        .supported_collections()
        .par_iter()
        .enumerate()
        .filter(|(_, s)| !s.collection.is_empty())
        .map(|(id, s)| collection_term(census, id, &s.collection, variant))
        .collect::<Result<_>>()?;
    for t in &terms {
        merge(&mut out, t, 1);
    }
    Ok(out)
}

/// The graph form: unoriented vertex-disjoint cycle collections `C`, each
/// counted `2^|C|` times, with complements `B(G) - B(C)` and shift `l(C)`.
pub fn hh_decomposition_graph(census: &MatchingCensus) -> Result<HomologyTable> {
    let g = Graph::from_complex(census.complex())?;
    let poset = census.poset();
    let mut out = HomologyTable::new(Coefficients::F2, false, true);
    merge(&mut out, &simplicial_homology_mod2(&morse_complex(census), false)?, 1);
    let collections = vd_cycle_collections(&g);
    let terms: Vec<(HomologyTable, usize)> = collections
        .par_iter()
        .filter(|c| !c.is_empty())
        .map(|c| {
            let mut keep = vec![true; poset.node_count()];
            for cycle in c {
                for n in cycle.poset_nodes(&g) {
                    keep[n] = false;
                }
            }
            let (l, j) = (total_length(c), c.len());
            let mut t = HomologyTable::new(Coefficients::F2, false, true);
            if keep.iter().all(|k| !k) {
                t.add(l as i32 - 1, j as u32, 1);
            } else {
                let h = PosetSubgraph::induced(poset, keep);
                shifted_reduced(&mut t, &simplicial_homology_mod2(&restricted_morse_complex(&h), true)?, l, j);
            }
            Ok((t, 1 << j))
        })
        .collect::<Result<_>>()?;
    for (t, copies) in &terms {
        merge(&mut out, t, *copies);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// The reported variant agrees with the direct computation.
    pub matches: bool,
    pub standalone_matches: bool,
    pub ambient_matches: bool,
    /// `None` for complexes that are not graphs.
    pub graph_form_matches: Option<bool>,
    /// First bidegree where the standalone variant differs from the direct
    /// computation, with the direct and the assembled rank.
    pub first_difference: Option<((i32, u32), usize, usize)>,
    #[serde(skip)]
    pub direct: HomologyTable,
    #[serde(skip)]
    pub standalone: HomologyTable,
    #[serde(skip)]
    pub ambient: HomologyTable,
}

/// Compares the assembled tables with horizontal homology computed from the
/// chain complex.
pub fn verify_decomposition(census: &MatchingCensus) -> Result<DecompositionReport> {
    let direct = BigradedChainComplex::new(census).horizontal_homology(false)?;
    let standalone = hh_decomposition(census, ComplementVariant::Standalone)?;
    let ambient = hh_decomposition(census, ComplementVariant::Ambient)?;
    let graph_form_matches = if census.complex().dim() <= 1 {
        Some(hh_decomposition_graph(census)?.same_ranks(&direct))
    } else {
        None
    };
    let standalone_matches = standalone.same_ranks(&direct);
    Ok(DecompositionReport {
        matches: standalone_matches && graph_form_matches.unwrap_or(true),
        standalone_matches,
        ambient_matches: ambient.same_ranks(&direct),
        graph_form_matches,
        first_difference: direct.first_difference(&standalone),
        direct,
        standalone,
        ambient,
    })
}
