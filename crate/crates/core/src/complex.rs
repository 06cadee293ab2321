//! Finite abstract simplicial complexes.
//!
//! Vertex labels are canonicalized to dense integers `0..n` at ingestion, in
//! the total order of the original labels. A simplex is a sorted array of
//! canonical vertex ids, and the simplices of a complex are kept in a global
//! canonical order: by dimension, then lexicographically. Every matrix basis
//! downstream inherits this order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// An original vertex label. Integers sort before strings, integers
/// numerically, strings lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<i32> for Label {
    fn from(v: i32) -> Self {
        Label::Int(v as i64)
    }
}

impl From<usize> for Label {
    fn from(v: usize) -> Self {
        Label::Int(v as i64)
    }
}

impl From<&str> for Label {
    fn from(v: &str) -> Self {
        Label::Str(v.to_owned())
    }
}

impl From<String> for Label {
    fn from(v: String) -> Self {
        Label::Str(v)
    }
}

/// Sorted canonical vertex ids.
pub type Simplex = Vec<u32>;

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

fn canonical_order(a: &Simplex, b: &Simplex) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::from_closed(Vec::new(), Vec::new())
    }

    /// Downward closure of `facets`. Duplicate and dominated facets are
    /// absorbed; an empty facet list gives the empty complex.
    pub fn from_facets<I, F, L>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let facets: Vec<Vec<Label>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect())
            .collect();
        if let Some(pos) = facets.iter().position(Vec::is_empty) {
            return Err(Error::Input(format!("facet {pos} is empty")));
        }
        let labels: Vec<Label> = facets
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let id: HashMap<&Label, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l, i as u32))
            .collect();

        let mut closure: BTreeSet<Simplex> = BTreeSet::new();
        for facet in &facets {
            let mut verts: Vec<u32> = facet.iter().map(|l| id[l]).collect();
            verts.sort_unstable();
            verts.dedup();
            if closure.contains(&verts) {
                continue;
            }
            let n = verts.len();
            if n >= 32 {
                return Err(Error::Input(format!(
                    "facet of dimension {} is too large to close",
                    n - 1
                )));
            }
            for mask in 1u64..(1u64 << n) {
                let face: Simplex = (0..n)
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| verts[b])
                    .collect();
                closure.insert(face);
            }
        }
        let simplices = closure.into_iter().collect();
        Ok(Self::from_closed(labels, simplices))
    }

    /// Builds a complex from a simplex list that is already closed under
    /// faces and uses ids `0..labels.len()`.
    pub(crate) fn from_closed(labels: Vec<Label>, mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_by(canonical_order);
        simplices.dedup();
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let complex = SimplicialComplex {
            labels,
            simplices,
            index,
        };
        debug_assert!(complex.is_closed());
        complex
    }

    fn is_closed(&self) -> bool {
        self.simplices.iter().all(|s| {
            s.len() <= 1
                || (0..s.len()).all(|p| {
                    let mut face = s.clone();
                    face.remove(p);
                    self.index.contains_key(&face)
                })
        }) && self
            .simplices
            .iter()
            .flatten()
            .all(|&v| (v as usize) < self.labels.len())
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, vertex: u32) -> &Label {
        &self.labels[vertex as usize]
    }

    /// All simplices in canonical order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.index.contains_key(simplex)
    }

    /// Dimension of the complex, `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.simplices.last().map_or(-1, |s| s.len() as i32 - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of simplices in each dimension, starting at dimension 0.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    /// Simplices of dimension `d` in canonical order.
    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    /// Maximal simplices in canonical order.
    pub fn facets(&self) -> Vec<&Simplex> {
        let mut covered = vec![false; self.simplices.len()];
        for s in &self.simplices {
            for p in 0..s.len() {
                if s.len() > 1 {
                    let mut face = s.clone();
                    face.remove(p);
                    covered[self.index[&face]] = true;
                }
            }
        }
        self.simplices
            .iter()
            .zip(covered)
            .filter(|(_, c)| !c)
            .map(|(s, _)| s)
            .collect()
    }

    /// Facets expressed with the original labels.
    pub fn labeled_facets(&self) -> Vec<Vec<Label>> {
        self.facets()
            .into_iter()
            .map(|f| f.iter().map(|&v| self.label(v).clone()).collect())
            .collect()
    }

    /// First barycentric subdivision of a complex of dimension at most one:
    /// one vertex per simplex, one edge from each edge barycenter to each of
    /// its endpoints. Vertex labels are the canonical simplex indices.
    pub fn barycentric_subdivision_of_graph(&self) -> Result<Self> {
        if self.dim() > 1 {
            return Err(Error::Precondition(format!(
                "barycentric subdivision is only provided for graphs, got dimension {}",
                self.dim()
            )));
        }
        let mut facets: Vec<Vec<Label>> = Vec::new();
        for (i, s) in self.simplices.iter().enumerate() {
            match s.len() {
                1 => facets.push(vec![Label::from(i)]),
                _ => {
                    for v in s {
                        let vi = self.index[&vec![*v]];
                        facets.push(vec![Label::from(i), Label::from(vi)]);
                    }
                }
            }
        }
        Self::from_facets(facets)
    }

    /// Parses the facet file format: one facet per line, whitespace
    /// separated labels, `#` comments and blank lines ignored. If every
    /// label parses as an integer the labels are integers, otherwise strings.
    pub fn parse_facets(text: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().collect())
            .collect();
        let all_int = rows.iter().flatten().all(|t| t.parse::<i64>().is_ok());
        Self::from_facets(rows.into_iter().map(|row| {
            row.into_iter()
                .map(|t| {
                    if all_int {
                        Label::Int(t.parse().unwrap())
                    } else {
                        Label::Str(t.to_owned())
                    }
                })
                .collect::<Vec<_>>()
        }))
    }

    pub fn read_facet_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_facets(&text)
    }

    /// Complex of a named family, see [`Family`].
    pub fn generate(spec: &str) -> Result<Self> {
        spec.parse::<Family>()?.build()
    }
}

/// Named families of complexes, written `name:size`.
///
/// * `simplex:n`: the full n-simplex, `n >= 0`.
/// * `cycle:n`: the cycle graph on `n >= 3` vertices.
/// * `complete:n`: the complete graph on `n >= 1` vertices.
/// * `path:n`: the path with `n >= 0` edges.
/// * `star:n`: the star with `n >= 1` leaves, centered at vertex 0.
/// * `pseudotree:n,p0,p1,...`: the cycle on `n >= 3` vertices with a
///   pendant path of `pi` edges attached at cycle vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Simplex(usize),
    Cycle(usize),
    Complete(usize),
    Path(usize),
    Star(usize),
    PseudoTree { cycle: usize, pendants: Vec<usize> },
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("bad generator spec `{s}`"));
        let (name, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let single = || -> Result<usize> {
            match nums.as_slice() {
                [n] => Ok(*n),
                _ => Err(bad()),
            }
        };
        let range = |n: usize, min: usize| -> Result<usize> {
            if n < min {
                Err(Error::Input(format!(
                    "`{s}`: size must be at least {min}"
                )))
            } else {
                Ok(n)
            }
        };
        Ok(match name.trim() {
            "simplex" => Family::Simplex(single()?),
            "cycle" => Family::Cycle(range(single()?, 3)?),
            "complete" => Family::Complete(range(single()?, 1)?),
            "path" => Family::Path(single()?),
            "star" => Family::Star(range(single()?, 1)?),
            "pseudotree" => {
                let cycle = range(nums[0], 3)?;
                let pendants = nums[1..].to_vec();
                if pendants.len() > cycle {
                    return Err(Error::Input(format!(
                        "`{s}`: more pendant paths than cycle vertices"
                    )));
                }
                Family::PseudoTree { cycle, pendants }
            }
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Simplex(n) => write!(f, "simplex:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::PseudoTree { cycle, pendants } => {
                write!(f, "pseudotree:{cycle}")?;
                for p in pendants {
                    write!(f, ",{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl Family {
    pub fn build(&self) -> Result<SimplicialComplex> {
        let edges: Vec<Vec<usize>> = match *self {
            Family::Simplex(n) => {
                if n >= 31 {
                    return Err(Error::Input(format!("simplex:{n} is too large")));
                }
                return SimplicialComplex::from_facets([0..=n]);
            }
            Family::Cycle(n) => (0..n).map(|i| vec![i, (i + 1) % n]).collect(),
            Family::Complete(1) => return SimplicialComplex::from_facets([[0usize]]),
            Family::Complete(n) => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
                .collect(),
            Family::Path(0) => return SimplicialComplex::from_facets([[0usize]]),
            Family::Path(n) => (0..n).map(|i| vec![i, i + 1]).collect(),
            Family::Star(n) => (1..=n).map(|i| vec![0, i]).collect(),
            Family::PseudoTree {
                cycle,
                ref pendants,
            } => {
                let mut edges: Vec<Vec<usize>> =
                    (0..cycle).map(|i| vec![i, (i + 1) % cycle]).collect();
                let mut next = cycle;
                for (anchor, &len) in pendants.iter().enumerate() {
                    let mut prev = anchor;
                    for _ in 0..len {
                        edges.push(vec![prev, next]);
                        prev = next;
                        next += 1;
                    }
                }
                edges
            }
        };
        SimplicialComplex::from_facets(edges)
    }
}
