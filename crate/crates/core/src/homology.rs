//! Homology of chain complexes given by explicit boundary matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{Gf2Matrix, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    F2,
    Z,
}

/// Ranks by `(homological degree, filtration degree)` and, for integer
/// coefficients, torsion invariant factors by homological degree. Tables
/// that are not bigraded keep every rank at filtration degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub coefficients: Coefficients,
    pub reduced: bool,
    pub bigraded: bool,
    ranks: BTreeMap<(i32, u32), usize>,
    torsion: BTreeMap<i32, Vec<BigInt>>,
}

impl HomologyTable {
    pub fn new(coefficients: Coefficients, reduced: bool, bigraded: bool) -> Self {
        HomologyTable {
            coefficients,
            reduced,
            bigraded,
            ranks: BTreeMap::new(),
            torsion: BTreeMap::new(),
        }
    }

    /// Adds `rank` to the entry at `(degree, filtration)`.
    pub fn add(&mut self, degree: i32, filtration: u32, rank: usize) {
        if rank > 0 {
            *self.ranks.entry((degree, filtration)).or_default() += rank;
        }
    }

    pub fn add_torsion(&mut self, degree: i32, factors: Vec<BigInt>) {
        let factors: Vec<BigInt> = factors.into_iter().filter(|f| !f.is_one()).collect();
        if !factors.is_empty() {
            self.torsion.entry(degree).or_default().extend(factors);
        }
    }

    pub fn rank_at(&self, degree: i32, filtration: u32) -> usize {
        self.ranks.get(&(degree, filtration)).copied().unwrap_or(0)
    }

    /// Rank in a homological degree, summed over filtration degrees.
    pub fn rank(&self, degree: i32) -> usize {
        self.ranks
            .iter()
            .filter(|((d, _), _)| *d == degree)
            .map(|(_, r)| r)
            .sum()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Nonzero entries in `(degree, filtration)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((i32, u32), usize)> + '_ {
        self.ranks.iter().map(|(&k, &v)| (k, v))
    }

    /// Ranks summed over filtration, nonzero degrees only.
    pub fn betti(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&(d, _), &r) in &self.ranks {
            *out.entry(d).or_default() += r;
        }
        out
    }

    pub fn torsion(&self, degree: i32) -> &[BigInt] {
        self.torsion.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn torsion_entries(&self) -> impl Iterator<Item = (i32, &[BigInt])> {
        self.torsion.iter().map(|(&d, f)| (d, f.as_slice()))
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Same ranks in every bidegree.
    pub fn same_ranks(&self, other: &HomologyTable) -> bool {
        self.ranks == other.ranks
    }

    /// First bidegree where the ranks differ, with both ranks.
    pub fn first_difference(&self, other: &HomologyTable) -> Option<((i32, u32), usize, usize)> {
        let mut keys: Vec<(i32, u32)> = self.ranks.keys().chain(other.ranks.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|k| (k, self.rank_at(k.0, k.1), other.rank_at(k.0, k.1)))
            .find(|(_, a, b)| a != b)
    }

    /// `sum (-1)^i rank` per filtration degree.
    pub fn euler_by_filtration(&self) -> BTreeMap<u32, i64> {
        let mut out = BTreeMap::new();
        for (&(d, j), &r) in &self.ranks {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            *out.entry(j).or_default() += sign * r as i64;
        }
        out
    }
}

/// Chain groups of the given ranks and boundary maps `d_i: C_i -> C_{i-1}`
/// of shape `dims[i-1] x dims[i]`. Missing boundaries are zero.
#[derive(Debug, Clone)]
pub struct ChainComplex<M> {
    pub dims: BTreeMap<i32, usize>,
    pub boundaries: BTreeMap<i32, M>,
}

impl<M> Default for ChainComplex<M> {
    fn default() -> Self {
        ChainComplex {
            dims: BTreeMap::new(),
            boundaries: BTreeMap::new(),
        }
    }
}

impl<M> ChainComplex<M> {
    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }
}

impl ChainComplex<IntMatrix> {
    pub fn to_gf2(&self) -> ChainComplex<Gf2Matrix> {
        ChainComplex {
            dims: self.dims.clone(),
            boundaries: self.boundaries.iter().map(|(&k, m)| (k, m.to_gf2())).collect(),
        }
    }
}

fn check_shapes<M>(cc: &ChainComplex<M>, shape: impl Fn(&M) -> (usize, usize)) -> Result<()> {
    for (&i, d) in &cc.boundaries {
        if shape(d) != (cc.dim(i - 1), cc.dim(i)) {
            return Err(Error::Internal(format!(
                "boundary in degree {i} has shape {:?}, expected {:?}",
                shape(d),
                (cc.dim(i - 1), cc.dim(i))
            )));
        }
    }
    Ok(())
}

/// Betti numbers over the two-element field by Gaussian elimination.
pub fn homology_mod2(cc: &ChainComplex<Gf2Matrix>) -> Result<HomologyTable> {
    check_shapes(cc, |m| (m.nrows(), m.ncols()))?;
    for (&i, d) in &cc.boundaries {
        if let Some(below) = cc.boundaries.get(&(i - 1)) {
            if !below.mul(d).is_zero() {
                return Err(Error::Internal(format!(
                    "boundaries in degrees {} and {i} do not compose to zero",
                    i - 1
                )));
            }
        }
    }
    let rank: BTreeMap<i32, usize> = cc.boundaries.iter().map(|(&i, d)| (i, d.rank())).collect();
    let mut table = HomologyTable::new(Coefficients::F2, false, false);
    for (&i, &n) in &cc.dims {
        let r = n - rank.get(&i).unwrap_or(&0) - rank.get(&(i + 1)).unwrap_or(&0);
        table.add(i, 0, r);
    }
    Ok(table)
}

/// Betti numbers and torsion over the integers from invariant factors.
pub fn homology_integer(cc: &ChainComplex<IntMatrix>) -> Result<HomologyTable> {
    check_shapes(cc, |m| (m.nrows(), m.ncols()))?;
    for (&i, d) in &cc.boundaries {
        if let Some(below) = cc.boundaries.get(&(i - 1)) {
            let product = below
                .mul(d)
                .ok_or_else(|| Error::Internal(format!("overflow composing boundaries at degree {i}")))?;
            if !product.is_zero() {
                return Err(Error::Internal(format!(
                    "boundaries in degrees {} and {i} do not compose to zero",
                    i - 1
                )));
            }
        }
    }
    let factors: BTreeMap<i32, Vec<BigInt>> = cc
        .boundaries
        .iter()
        .map(|(&i, d)| (i, d.invariant_factors()))
        .collect();
    let rank = |i: i32| factors.get(&i).map_or(0, Vec::len);
    let mut table = HomologyTable::new(Coefficients::Z, false, false);
    for (&i, &n) in &cc.dims {
        table.add(i, 0, n - rank(i) - rank(i + 1));
        if let Some(f) = factors.get(&(i + 1)) {
            table.add_torsion(i, f.clone());
        }
    }
    Ok(table)
}

/// Oriented simplicial chain complex; faces get sign `(-1)^position` in the
/// sorted vertex list. With `reduced`, degree -1 carries the augmentation.
pub fn simplicial_chains(x: &SimplicialComplex, reduced: bool) -> ChainComplex<IntMatrix> {
    let mut cc = ChainComplex::default();
    let dim = x.dim();
    let f = x.f_vector();
    // simplices are sorted by dimension: offset[d] is the first d-simplex
    let offset: Vec<usize> = f
        .iter()
        .scan(0, |acc, &n| {
            let start = *acc;
            *acc += n;
            Some(start)
        })
        .collect();
    for (d, &n) in f.iter().enumerate() {
        cc.dims.insert(d as i32, n);
    }
    if reduced {
        cc.dims.insert(-1, 1);
        let n0 = cc.dim(0);
        cc.boundaries.insert(0, IntMatrix::from_columns(1, vec![vec![(0, 1)]; n0]));
    }
    for d in 1..=dim {
        let cols = x
            .simplices_of_dim(d as usize)
            .map(|s| {
                (0..s.len())
                    .map(|p| {
                        let mut face = s.clone();
                        face.remove(p);
                        let idx = x.index_of(&face).expect("closed complex") - offset[d as usize - 1];
                        (idx as u32, if p % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        cc.boundaries
            .insert(d, IntMatrix::from_columns(cc.dim(d - 1), cols));
    }
    cc
}

/// Integer homology of a simplicial complex.
pub fn simplicial_homology_integer(x: &SimplicialComplex, reduced: bool) -> Result<HomologyTable> {
    let mut t = homology_integer(&simplicial_chains(x, reduced))?;
    t.reduced = reduced;
    Ok(t)
}

/// Mod-2 homology of a simplicial complex.
pub fn simplicial_homology_mod2(x: &SimplicialComplex, reduced: bool) -> Result<HomologyTable> {
    let mut t = homology_mod2(&simplicial_chains(x, reduced).to_gf2())?;
    t.reduced = reduced;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator() {
        let mut cc: ChainComplex<Gf2Matrix> = ChainComplex::default();
        cc.dims.insert(3, 1);
        let t = homology_mod2(&cc).unwrap();
        assert_eq!(t.rank(3), 1);
        assert_eq!(t.total_rank(), 1);
    }

    #[test]
    fn point_and_hollow_triangle() {
        let pt = SimplicialComplex::from_facets([[0]]).unwrap();
        assert_eq!(simplicial_homology_mod2(&pt, false).unwrap().betti(), BTreeMap::from([(0, 1)]));
        assert_eq!(simplicial_homology_integer(&pt, true).unwrap().total_rank(), 0);

        let c3 = SimplicialComplex::generate("cycle:3").unwrap();
        let t = simplicial_homology_integer(&c3, false).unwrap();
        assert_eq!(t.betti(), BTreeMap::from([(0, 1), (1, 1)]));
        assert!(t.is_torsion_free());
        let r = simplicial_homology_integer(&c3, true).unwrap();
        assert_eq!(r.betti(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn empty_complex_reduced() {
        let e = SimplicialComplex::empty();
        assert_eq!(simplicial_homology_mod2(&e, true).unwrap().betti(), BTreeMap::from([(-1, 1)]));
        assert_eq!(simplicial_homology_mod2(&e, false).unwrap().total_rank(), 0);
    }

    #[test]
    fn projective_plane_torsion() {
        let rp2 = SimplicialComplex::from_facets([
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ])
        .unwrap();
        let z = simplicial_homology_integer(&rp2, true).unwrap();
        assert_eq!(z.total_rank(), 0);
        assert_eq!(z.torsion(1), &[BigInt::from(2)]);
        let f2 = simplicial_homology_mod2(&rp2, true).unwrap();
        assert_eq!(f2.betti(), BTreeMap::from([(1, 1), (2, 1)]));
    }

    #[test]
    fn non_complex_is_rejected() {
        let mut cc: ChainComplex<Gf2Matrix> = ChainComplex::default();
        cc.dims.extend([(0, 1), (1, 1), (2, 1)]);
        cc.boundaries.insert(1, Gf2Matrix::from_columns(1, vec![vec![0]]));
        cc.boundaries.insert(2, Gf2Matrix::from_columns(1, vec![vec![0]]));
        assert!(matches!(homology_mod2(&cc), Err(Error::Internal(_))));
    }
}
