//! Every matching of a face poset together with the cycle collection it
//! supports. Most computations downstream read from this table.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::cycles::{induced_cycles, Classification, OrientedCycleCollection};
use crate::error::{Error, Result};
use crate::matching::{enumerate_matchings, Matching};
use crate::poset::FacePoset;

/// Upper bound on the number of face poset arcs accepted by exhaustive
/// matching enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_arcs: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { max_arcs: 40 }
    }
}

impl SizeGuard {
    pub fn new(max_arcs: usize) -> Self {
        SizeGuard { max_arcs }
    }

    pub fn check(&self, poset: &FacePoset) -> Result<()> {
        if poset.arc_count() > self.max_arcs {
            Err(Error::Resource {
                arcs: poset.arc_count(),
                limit: self.max_arcs,
            })
        } else {
            Ok(())
        }
    }
}

/// A distinct supported collection and the first matching (in canonical
/// order) that supports it.
#[derive(Debug, Clone, Serialize)]
pub struct SupportedCollection {
    pub collection: OrientedCycleCollection,
    pub witness: usize,
}

#[derive(Debug, Clone)]
pub struct MatchingCensus {
    complex: SimplicialComplex,
    poset: FacePoset,
    matchings: Vec<Matching>,
    index: HashMap<Matching, usize>,
    support: Vec<usize>,
    collections: Vec<SupportedCollection>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CollectionCensus {
    pub empty: usize,
    pub non_maximal: usize,
    pub maximal: usize,
}

impl MatchingCensus {
    pub fn new(x: &SimplicialComplex, guard: SizeGuard) -> Result<Self> {
        let poset = FacePoset::new(x);
        guard.check(&poset)?;
        let full = poset.full();
        let matchings: Vec<Matching> = enumerate_matchings(&full).collect();
        let induced: Vec<OrientedCycleCollection> = matchings
            .par_iter()
            .map(|m| induced_cycles(&poset, m))
            .collect();

        let mut seen: HashMap<OrientedCycleCollection, usize> = HashMap::new();
        let mut collections = Vec::new();
        let mut support = Vec::with_capacity(matchings.len());
        for (i, c) in induced.into_iter().enumerate() {
            let id = *seen.entry(c).or_insert_with_key(|c| {
                collections.push(SupportedCollection {
                    collection: c.clone(),
                    witness: i,
                });
                collections.len() - 1
            });
            support.push(id);
        }
        let index = matchings
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(MatchingCensus {
            complex: x.clone(),
            poset,
            matchings,
            index,
            support,
            collections,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    /// All matchings, by size and then lexicographically; the empty
    /// matching is first.
    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn index_of(&self, m: &Matching) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Filtration value of matching `i`.
    pub fn j(&self, i: usize) -> usize {
        self.collections[self.support[i]].collection.count()
    }

    pub fn collection_of(&self, i: usize) -> &OrientedCycleCollection {
        &self.collections[self.support[i]].collection
    }

    pub fn collection_id(&self, i: usize) -> usize {
        self.support[i]
    }

    /// Distinct supported collections, in order of first appearance. The
    /// empty collection is first.
    pub fn supported_collections(&self) -> &[SupportedCollection] {
        &self.collections
    }

    pub fn collection_census(&self) -> CollectionCensus {
        let mut out = CollectionCensus::default();
        for c in &self.collections {
            match c.collection.classification() {
                Classification::Empty => out.empty += 1,
                Classification::NonMaximal => out.non_maximal += 1,
                Classification::Maximal => out.maximal += 1,
            }
        }
        out
    }

    /// Smallest `k` with every matching at filtration level at most `k`.
    pub fn eta(&self) -> usize {
        self.collections
            .iter()
            .map(|c| c.collection.count())
            .max()
            .unwrap_or(0)
    }
}

/// Maximum filtration value over all matchings of the face poset of `x`.
pub fn eta(x: &SimplicialComplex, guard: SizeGuard) -> Result<usize> {
    Ok(MatchingCensus::new(x, guard)?.eta())
}
