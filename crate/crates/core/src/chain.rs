//! The bigraded chain complex of a matching census: simplices of `M(X)` graded
//! by dimension `i` and filtration degree `j = J(m)`, with the boundary split
//! into a filtration-preserving part `d_J` and a filtration-dropping part `d_d`.
//!
//! Homological degree `i` holds the matchings with `i + 1` arcs; degree -1
//! holds the empty matching and is used for augmentation.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::census::MatchingCensus;
use crate::cycles::{induced_cycles, j_value};
use crate::error::{Error, Result};
use crate::homology::{homology_integer, homology_mod2, ChainComplex, Coefficients, HomologyTable};
use crate::linalg::{Gf2Matrix, IntMatrix};
use crate::matching::{enumerate_matchings, Matching};
use crate::poset::{FacePoset, PosetSubgraph};

/// One boundary column: signed integer entries, then the `d_J` and `d_d` rows.
type Column = (Vec<(u32, i64)>, Vec<u32>, Vec<u32>);

#[derive(Debug, Clone)]
pub struct BigradedChainComplex<'c> {
    census: &'c MatchingCensus,
    /// `starts[s]` is the census index of the first matching with `s` arcs.
    starts: Vec<usize>,
    full: BTreeMap<i32, IntMatrix>,
    horizontal: BTreeMap<i32, Gf2Matrix>,
    diagonal: BTreeMap<i32, Gf2Matrix>,
}

/// Outcome of checking that the three boundary maps behave as expected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialReport {
    pub full_squared_zero_z: bool,
    pub full_squared_zero_f2: bool,
    pub dj_squared_zero: bool,
    pub dd_squared_zero: bool,
    /// `d_full = d_J + d_d` mod 2.
    pub split_consistent: bool,
    pub dj_preserves_filtration: bool,
    pub dd_lowers_filtration: bool,
    /// Every entry of `d_d` lowers the filtration degree by exactly one.
    pub dd_lowers_by_one: bool,
    pub dd_witness: Option<DiagonalWitness>,
}

impl DifferentialReport {
    /// The checks that hold for every complex.
    pub fn always_valid(&self) -> bool {
        self.full_squared_zero_z
            && self.full_squared_zero_f2
            && self.dj_squared_zero
            && self.split_consistent
            && self.dj_preserves_filtration
            && self.dd_lowers_filtration
    }
}

/// A matching `m` with `d_d(d_d(m)) != 0`, and the faces in that image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalWitness {
    pub matching: Matching,
    pub j: usize,
    pub image: Vec<Matching>,
}

impl<'c> BigradedChainComplex<'c> {
    pub fn new(census: &'c MatchingCensus) -> Self {
        let ms = census.matchings();
        let top = ms.last().map_or(0, Matching::len);
        let starts: Vec<usize> = (0..=top + 1).map(|s| ms.partition_point(|m| m.len() < s)).collect();
        let mut full = BTreeMap::new();
        let mut horizontal = BTreeMap::new();
        let mut diagonal = BTreeMap::new();
        for size in 1..=top {
            let rows = starts[size] - starts[size - 1];
            let columns: Vec<Column> = (starts[size]..starts[size + 1])
                .into_par_iter()
                .map(|g| {
                    let m = &ms[g];
                    let j = census.j(g);
                    let (mut zc, mut hc, mut dc) = (Vec::new(), Vec::new(), Vec::new());
                    for p in 0..m.len() {
                        let face = census
                            .index_of(&m.without_position(p))
                            .expect("faces of matchings are matchings");
                        let row = (face - starts[size - 1]) as u32;
                        zc.push((row, if p % 2 == 0 { 1 } else { -1 }));
                        if census.j(face) == j {
                            hc.push(row);
                        } else {
                            dc.push(row);
                        }
                    }
                    (zc, hc, dc)
                })
                .collect();
            let mut zcols = Vec::with_capacity(columns.len());
            let mut hcols = Vec::with_capacity(columns.len());
            let mut dcols = Vec::with_capacity(columns.len());
            for (z, h, d) in columns {
                zcols.push(z);
                hcols.push(h);
                dcols.push(d);
            }
            let i = size as i32 - 1;
            full.insert(i, IntMatrix::from_columns(rows, zcols));
            horizontal.insert(i, Gf2Matrix::from_columns(rows, hcols));
            diagonal.insert(i, Gf2Matrix::from_columns(rows, dcols));
        }
        BigradedChainComplex {
            census,
            starts,
            full,
            horizontal,
            diagonal,
        }
    }

    pub fn census(&self) -> &'c MatchingCensus {
        self.census
    }

    /// Largest homological degree with a nonzero chain group.
    pub fn top_degree(&self) -> i32 {
        self.starts.len() as i32 - 3
    }

    fn range(&self, i: i32) -> std::ops::Range<usize> {
        let s = (i + 1) as usize;
        if i < -1 || s + 1 >= self.starts.len() {
            return 0..0;
        }
        self.starts[s]..self.starts[s + 1]
    }

    /// Census indices of the basis in degree `i` and filtration `j`.
    pub fn basis(&self, i: i32, j: usize) -> Vec<usize> {
        self.range(i).filter(|&g| self.census.j(g) == j).collect()
    }

    fn local(&self, i: i32, pred: impl Fn(usize) -> bool) -> Vec<usize> {
        let r = self.range(i);
        let start = r.start;
        r.filter(|&g| pred(self.census.j(g))).map(|g| g - start).collect()
    }

    /// Dimensions of the nonzero chain groups by `(i, j)`, excluding degree -1.
    pub fn dims(&self) -> BTreeMap<(i32, usize), usize> {
        let mut out = BTreeMap::new();
        for i in 0..=self.top_degree() {
            for g in self.range(i) {
                *out.entry((i, self.census.j(g))).or_default() += 1;
            }
        }
        out
    }

    pub fn full_boundary(&self, i: i32) -> Option<&IntMatrix> {
        self.full.get(&i)
    }

    pub fn horizontal_boundary(&self, i: i32) -> Option<&Gf2Matrix> {
        self.horizontal.get(&i)
    }

    pub fn diagonal_boundary(&self, i: i32) -> Option<&Gf2Matrix> {
        self.diagonal.get(&i)
    }

    /// Block of `d_J` from `(i, j)` to `(i - 1, j)`.
    pub fn horizontal_block(&self, i: i32, j: usize) -> Gf2Matrix {
        let rows = self.local(i - 1, |x| x == j);
        let cols = self.local(i, |x| x == j);
        match self.horizontal.get(&i) {
            Some(d) => d.submatrix(&rows, &cols),
            None => Gf2Matrix::zeros(rows.len(), cols.len()),
        }
    }

    /// Block of `d_d` from `(i, j)` to `(i - 1, j - 1)`.
    pub fn diagonal_block(&self, i: i32, j: usize) -> Gf2Matrix {
        let rows = match j {
            0 => Vec::new(),
            _ => self.local(i - 1, |x| x == j - 1),
        };
        let cols = self.local(i, |x| x == j);
        match self.diagonal.get(&i) {
            Some(d) => d.submatrix(&rows, &cols),
            None => Gf2Matrix::zeros(rows.len(), cols.len()),
        }
    }

    /// Integer chain complex of `M_k(X)`; all of `M(X)` when `k` is `None`.
    pub fn filtered_chains(&self, k: Option<usize>, reduced: bool) -> ChainComplex<IntMatrix> {
        let keep = |j: usize| k.is_none_or(|k| j <= k);
        let mut cc = ChainComplex::default();
        let lo = if reduced { -1 } else { 0 };
        let bases: BTreeMap<i32, Vec<usize>> = (lo..=self.top_degree()).map(|i| (i, self.local(i, keep))).collect();
        for (&i, b) in &bases {
            if !b.is_empty() {
                cc.dims.insert(i, b.len());
            }
        }
        for (&i, d) in &self.full {
            if let (Some(rows), Some(cols)) = (bases.get(&(i - 1)), bases.get(&i)) {
                if !cols.is_empty() {
                    cc.boundaries.insert(i, d.submatrix(rows, cols));
                }
            }
        }
        cc
    }

    /// Integer homology of `M_k(X)` (all of `M(X)` for `None`).
    pub fn filtered_homology(&self, k: Option<usize>, reduced: bool) -> Result<HomologyTable> {
        let mut t = homology_integer(&self.filtered_chains(k, reduced))?;
        t.reduced = reduced;
        Ok(t)
    }

    /// Mod-2 homology of `M_k(X)` (all of `M(X)` for `None`).
    pub fn filtered_homology_mod2(&self, k: Option<usize>, reduced: bool) -> Result<HomologyTable> {
        let mut t = homology_mod2(&self.filtered_chains(k, reduced).to_gf2())?;
        t.reduced = reduced;
        Ok(t)
    }

    /// Bigraded mod-2 homology of `(C, d_J)`. With `reduced`, the empty
    /// matching is kept in bidegree `(-1, 0)`.
    pub fn horizontal_homology(&self, reduced: bool) -> Result<HomologyTable> {
        let lo = if reduced { -1 } else { 0 };
        let eta = self.census.eta();
        let columns: Vec<(usize, HomologyTable)> = (0..=eta)
            .into_par_iter()
            .map(|j| {
                let mut cc: ChainComplex<Gf2Matrix> = ChainComplex::default();
                for i in lo..=self.top_degree() {
                    let n = self.local(i, |x| x == j).len();
                    if n > 0 {
                        cc.dims.insert(i, n);
                    }
                    if i > lo && n > 0 {
                        cc.boundaries.insert(i, self.horizontal_block(i, j));
                    }
                }
                homology_mod2(&cc).map(|t| (j, t))
            })
            .collect::<Result<_>>()?;
        let mut out = HomologyTable::new(Coefficients::F2, reduced, true);
        for (j, t) in columns {
            for ((i, _), r) in t.entries() {
                out.add(i, j as u32, r);
            }
        }
        Ok(out)
    }

    /// Bigraded mod-2 homology of `(C, d_d)`; defined for graphs, where
    /// `d_d` squares to zero and has bidegree `(-1, -1)`.
    pub fn diagonal_homology(&self) -> Result<HomologyTable> {
        if self.census.complex().dim() > 1 {
            return Err(Error::Precondition(format!(
                "diagonal homology needs a complex of dimension at most 1, got {}",
                self.census.complex().dim()
            )));
        }
        let eta = self.census.eta();
        let cells: Vec<(i32, usize)> = (0..=self.top_degree())
            .flat_map(|i| (0..=eta).map(move |j| (i, j)))
            .collect();
        let ranks: HashMap<(i32, usize), usize> = cells
            .par_iter()
            .map(|&(i, j)| ((i, j), self.diagonal_block(i, j).rank()))
            .collect();
        let rank = |i: i32, j: usize| ranks.get(&(i, j)).copied().unwrap_or(0);
        let mut out = HomologyTable::new(Coefficients::F2, false, true);
        for ((i, j), n) in self.dims() {
            out.add(i, j as u32, n - rank(i, j) - rank(i + 1, j + 1));
        }
        Ok(out)
    }

    pub fn verify_differentials(&self) -> DifferentialReport {
        let mut report = DifferentialReport {
            full_squared_zero_z: true,
            full_squared_zero_f2: true,
            dj_squared_zero: true,
            dd_squared_zero: true,
            split_consistent: true,
            dj_preserves_filtration: true,
            dd_lowers_filtration: true,
            dd_lowers_by_one: true,
            dd_witness: None,
        };
        for (&i, d) in &self.full {
            let f2 = d.to_gf2();
            let (h, dd) = (&self.horizontal[&i], &self.diagonal[&i]);
            report.split_consistent &= h.add(dd) == f2;
            let (rows, cols) = (self.range(i - 1), self.range(i));
            for c in 0..h.ncols() {
                let j = self.census.j(cols.start + c);
                for &r in h.column(c) {
                    report.dj_preserves_filtration &= self.census.j(rows.start + r as usize) == j;
                }
                for &r in dd.column(c) {
                    let jf = self.census.j(rows.start + r as usize);
                    report.dd_lowers_filtration &= jf < j;
                    report.dd_lowers_by_one &= jf + 1 == j;
                }
            }
            if let Some(below) = self.full.get(&(i - 1)) {
                report.full_squared_zero_z &= below.mul(d).is_some_and(|p| p.is_zero());
                report.full_squared_zero_f2 &= below.to_gf2().mul(&f2).is_zero();
                report.dj_squared_zero &= self.horizontal[&(i - 1)].mul(h).is_zero();
                let sq = self.diagonal[&(i - 1)].mul(dd);
                if !sq.is_zero() && report.dd_witness.is_none() {
                    let c = (0..sq.ncols()).find(|&c| !sq.column(c).is_empty()).expect("nonzero column");
                    let g = cols.start + c;
                    let base = self.range(i - 2).start;
                    report.dd_witness = Some(DiagonalWitness {
                        matching: self.census.matchings()[g].clone(),
                        j: self.census.j(g),
                        image: sq
                            .column(c)
                            .iter()
                            .map(|&r| self.census.matchings()[base + r as usize].clone())
                            .collect(),
                    });
                }
                report.dd_squared_zero &= sq.is_zero();
            }
        }
        report
    }
}

/// `d_d(d_d(m))` computed directly from filtration values on the poset,
/// as the list of matchings with odd coefficient.
pub fn diagonal_square(poset: &FacePoset, m: &Matching) -> Vec<Matching> {
    let mut j_cache: HashMap<Matching, usize> = HashMap::new();
    let mut j = |x: &Matching| *j_cache.entry(x.clone()).or_insert_with(|| j_value(poset, x));
    let jm = j(m);
    let mut parity: BTreeMap<Matching, bool> = BTreeMap::new();
    for p in 0..m.len() {
        let face = m.without_position(p);
        let jf = j(&face);
        if jf >= jm {
            continue;
        }
        for q in 0..face.len() {
            let ff = face.without_position(q);
            if j(&ff) < jf {
                *parity.entry(ff).or_default() ^= true;
            }
        }
    }
    parity.into_iter().filter(|(_, odd)| *odd).map(|(f, _)| f).collect()
}

/// First matching of `h` (in enumeration order, up to `max_size` arcs) that
/// supports two cycles sharing an arc and has `d_d(d_d(m)) != 0`, with
/// filtration values taken in the parent poset.
pub fn find_diagonal_square_witness(h: &PosetSubgraph<'_>, max_size: usize) -> Option<DiagonalWitness> {
    let poset = h.parent();
    enumerate_matchings(h)
        .take_while(|m| m.len() <= max_size)
        .filter(|m| m.len() >= 2)
        .find_map(|m| {
            let c = induced_cycles(poset, &m);
            if c.count() < 2 || c.independent() == c.count() {
                return None;
            }
            let image = diagonal_square(poset, &m);
            (!image.is_empty()).then(|| DiagonalWitness {
                matching: m,
                j: c.count(),
                image,
            })
        })
}
