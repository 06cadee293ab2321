//! Graded Euler characteristic of horizontal homology and the Laplacian data
//! it is tied to for graphs.

use std::fmt;

use serde::Serialize;

use crate::census::MatchingCensus;
use crate::chain::BigradedChainComplex;
use crate::error::Result;
use crate::graph::{total_length, vd_cycle_collections, Graph};
use crate::homology::simplicial_homology_mod2;
use crate::poset::PosetSubgraph;
use crate::subcomplexes::restricted_morse_complex;

/// Integer polynomial in `t`, lowest degree first, without trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct EulerPolynomial(Vec<i64>);

impl EulerPolynomial {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        EulerPolynomial(coefficients)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn coefficient(&self, j: usize) -> i64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn add(&mut self, j: usize, value: i64) {
        if self.0.len() <= j {
            self.0.resize(j + 1, 0);
        }
        self.0[j] += value;
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }
}

impl fmt::Display for EulerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, i64)> = self.0.iter().copied().enumerate().rev().filter(|&(_, c)| c != 0).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, &(j, c)) in terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match n {
                0 if c < 0 => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.unsigned_abs();
            match (j, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{j}")?,
                _ => write!(f, "{a}t^{j}")?,
            }
        }
        Ok(())
    }
}

/// `sum (-1)^i rank hH_i^j t^j`. With `reduced`, the empty matching adds -1
/// to the constant term.
pub fn chi_t(census: &MatchingCensus, reduced: bool) -> Result<EulerPolynomial> {
    let table = BigradedChainComplex::new(census).horizontal_homology(reduced)?;
    let mut p = EulerPolynomial::default();
    for (j, e) in table.euler_by_filtration() {
        p.add(j as usize, e);
    }
    Ok(p)
}

/// The same polynomial from chain group dimensions.
pub fn chi_t_from_chains(census: &MatchingCensus, reduced: bool) -> EulerPolynomial {
    let mut p = EulerPolynomial::default();
    for ((i, j), n) in BigradedChainComplex::new(census).dims() {
        p.add(j, if i % 2 == 0 { n as i64 } else { -(n as i64) });
    }
    if reduced {
        p.add(0, -1);
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaplacianData {
    /// Degree matrix minus adjacency matrix.
    pub laplacian: Vec<Vec<i64>>,
    /// `c_k` is the coefficient of `x^(n-k)` in `det(x Id - L)`.
    pub charpoly: Vec<i64>,
    /// Coefficients of `det(L - x Id)`, lowest degree first.
    pub charpoly_reversed_sign: Vec<i64>,
    /// `rho_k`: rooted spanning forests with `k` edges.
    pub rho: Vec<i64>,
    pub det_id_plus_l: i64,
    pub det_id_minus_l: i64,
    /// `det(L - Id)`.
    pub det_l_minus_id: i64,
}

impl LaplacianData {
    /// `(-1)^k c_k = rho_k` for every `k`.
    pub fn coefficients_count_forests(&self) -> bool {
        self.charpoly.len() == self.rho.len()
            && self
                .charpoly
                .iter()
                .zip(&self.rho)
                .enumerate()
                .all(|(k, (&c, &r))| if k % 2 == 0 { c == r } else { -c == r })
    }

    pub fn forest_total(&self) -> i64 {
        self.rho.iter().sum()
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev: i128 = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let d = if n == 0 { 1 } else { a[n - 1][n - 1] };
    i64::try_from(sign * d).expect("determinant fits in i64")
}

/// Coefficients of `det(x Id - A)` from `x^n` down, by the Faddeev-LeVerrier
/// recursion; every division is exact.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut c = vec![1i128];
    let mut m: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    for k in 1..=n {
        let am: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| a[i][l] * m[l][j]).sum()).collect())
            .collect();
        let trace: i128 = (0..n).map(|i| am[i][i]).sum();
        let ck = -trace / k as i128;
        debug_assert_eq!(trace % k as i128, 0);
        c.push(ck);
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += ck;
        }
    }
    c.into_iter().map(|x| i64::try_from(x).expect("coefficient fits in i64")).collect()
}

/// Rooted spanning forests by edge count, by brute force over edge subsets:
/// each forest with `k` edges is counted once per choice of a root in every
/// component.
pub fn rooted_forest_counts(g: &Graph) -> Vec<i64> {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut rho = vec![0i64; n + 1];
    for mask in 0u64..1 << edges.len() {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut forest = true;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    forest = false;
                    break;
                }
                parent[a] = b;
            }
        }
        if !forest {
            continue;
        }
        let mut size = vec![0i64; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            size[r] += 1;
        }
        let product: i64 = size.iter().filter(|&&s| s > 0).product();
        rho[mask.count_ones() as usize] += product;
    }
    rho
}

pub fn laplacian(g: &Graph) -> LaplacianData {
    let n = g.vertex_count();
    let mut l = vec![vec![0i64; n]; n];
    for &(u, v) in g.edges() {
        l[u][u] += 1;
        l[v][v] += 1;
        l[u][v] -= 1;
        l[v][u] -= 1;
    }
    let shifted = |s: i64| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| s * l[i][j] + i64::from(i == j)).collect())
            .collect()
    };
    let charpoly = characteristic_polynomial(&l);
    let flip = if n.is_multiple_of(2) { 1 } else { -1 };
    let charpoly_reversed_sign = charpoly.iter().rev().map(|&c| flip * c).collect();
    let minus: Vec<Vec<i64>> = shifted(-1);
    let l_minus_id: Vec<Vec<i64>> = minus.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    LaplacianData {
        charpoly,
        charpoly_reversed_sign,
        rho: rooted_forest_counts(g),
        det_id_plus_l: determinant(&shifted(1)),
        det_id_minus_l: determinant(&minus),
        det_l_minus_id: determinant(&l_minus_id),
        laplacian: l,
    }
}

/// `chi_t` of a graph from its cycle structure: each nonempty collection
/// `C` of vertex-disjoint cycles contributes
/// `2^|C| ((-1)^l(C) chi(Mbar(G_C)) + (-1)^(l(C)-1))` to the coefficient of
/// `t^|C|`, where spanning collections have `chi = 0`. The constant term is
/// `-sum (-1)^k rho_k`, plus one when not `reduced`.
pub fn chi_t_graph(census: &MatchingCensus, reduced: bool) -> Result<EulerPolynomial> {
    let g = Graph::from_complex(census.complex())?;
    let poset = census.poset();
    let data = laplacian(&g);
    let mut p = EulerPolynomial::default();
    let constant: i64 = data.rho.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { -r } else { r }).sum();
    p.add(0, constant + i64::from(!reduced));
    for c in vd_cycle_collections(&g).iter().filter(|c| !c.is_empty()) {
        let mut keep = vec![true; poset.node_count()];
        for cycle in c {
            for n in cycle.poset_nodes(&g) {
                keep[n] = false;
            }
        }
        let chi = if keep.iter().any(|&k| k) {
            let h = PosetSubgraph::induced(poset, keep);
            let t = simplicial_homology_mod2(&restricted_morse_complex(&h), false)?;
            t.euler_by_filtration().values().sum()
        } else {
            0
        };
        let l = total_length(c);
        let sign = if l.is_multiple_of(2) { 1 } else { -1 };
        p.add(c.len(), (1 << c.len()) * (sign * chi - sign));
    }
    Ok(p)
}
