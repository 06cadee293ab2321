//! Invariant factors of sparse integer matrices.
//!
//! Unit pivots are eliminated first on the sparse representation: pivoting
//! on a `±1` entry contributes an invariant factor of one and leaves the
//! Schur complement, whose invariant factors are the remaining ones. What
//! is left after no unit pivot can be found is diagonalized densely. The
//! whole computation runs on `i64` with checked arithmetic and is repeated
//! on `BigInt` if anything overflows.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

/// Sparse integer matrix stored by columns, each an ascending list of
/// `(row, value)` pairs with nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Columns as `(row, value)` lists in any order; repeated rows are summed.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!((r as usize) < rows, "row {r} out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        IntMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Product `self * other`, `None` on overflow.
    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.ncols(), other.rows, "shape mismatch");
        let mut cols = Vec::with_capacity(other.ncols());
        for c in &other.cols {
            let mut acc: Vec<(u32, i64)> = Vec::new();
            for &(k, v) in c {
                for &(r, w) in &self.cols[k as usize] {
                    acc.push((r, v.checked_mul(w)?));
                }
            }
            acc.sort_unstable_by_key(|e| e.0);
            let mut out: Vec<(u32, i64)> = Vec::new();
            for (r, v) in acc {
                match out.last_mut() {
                    Some(last) if last.0 == r => last.1 = last.1.checked_add(v)?,
                    _ => out.push((r, v)),
                }
            }
            out.retain(|e| e.1 != 0);
            cols.push(out);
        }
        Some(IntMatrix {
            rows: self.rows,
            cols,
        })
    }

    /// Reduction modulo two.
    pub fn to_gf2(&self) -> super::Gf2Matrix {
        super::Gf2Matrix::from_columns(
            self.rows,
            self.cols
                .iter()
                .map(|c| c.iter().filter(|e| e.1 % 2 != 0).map(|e| e.0).collect())
                .collect(),
        )
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut new_row = vec![u32::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            new_row[r] = i as u32;
        }
        IntMatrix {
            rows: rows.len(),
            cols: cols
                .iter()
                .map(|&c| {
                    self.cols[c]
                        .iter()
                        .filter(|e| new_row[e.0 as usize] != u32::MAX)
                        .map(|e| (new_row[e.0 as usize], e.1))
                        .collect()
                })
                .collect(),
        }
    }

    /// Nonzero invariant factors, ascending, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        match invariant_factors_in::<i64>(self) {
            Some(f) => f.into_iter().map(BigInt::from).collect(),
            None => invariant_factors_in::<BigInt>(self).expect("big integers do not overflow"),
        }
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

trait Entry: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64> {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64>> Entry for T {}

/// `a - q * b`, `None` on overflow.
fn sub_mul<T: Entry>(a: &T, q: &T, b: &T) -> Option<T> {
    a.checked_sub(&q.checked_mul(b)?)
}

/// Treats the columns of `m` as vectors to eliminate against each other;
/// invariant factors are the same for a matrix and its transpose.
fn invariant_factors_in<T: Entry>(m: &IntMatrix) -> Option<Vec<T>> {
    let mut vecs: Vec<Vec<(u32, T)>> = m
        .cols
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, T::from(v))).collect())
        .collect();
    let mut alive = vec![true; vecs.len()];
    let mut holders: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); m.rows];
    for (i, v) in vecs.iter().enumerate() {
        for (r, _) in v {
            holders[*r as usize].insert(i as u32);
        }
    }
    let mut done = vec![false; m.rows];
    let mut units = 0usize;

    loop {
        let mut progress = false;
        for coord in 0..m.rows {
            if done[coord] {
                continue;
            }
            let entry = |vecs: &[Vec<(u32, T)>], i: u32| -> Option<T> {
                let v = &vecs[i as usize];
                v.binary_search_by_key(&(coord as u32), |e| e.0)
                    .ok()
                    .map(|p| v[p].1.clone())
            };
            let pivot = holders[coord]
                .iter()
                .copied()
                .filter(|&i| alive[i as usize])
                .filter(|&i| entry(&vecs, i).is_some_and(|x| x.abs().is_one()))
                .min_by_key(|&i| (vecs[i as usize].len(), i));
            let Some(p) = pivot else { continue };
            let u = entry(&vecs, p).unwrap();
            let pivot_vec = vecs[p as usize].clone();
            let others: Vec<u32> = holders[coord]
                .iter()
                .copied()
                .filter(|&i| i != p && alive[i as usize])
                .collect();
            for i in others {
                let Some(a) = entry(&vecs, i) else { continue };
                let q = a.checked_mul(&u)?;
                let target = &mut vecs[i as usize];
                let mut out: Vec<(u32, T)> = Vec::with_capacity(target.len() + pivot_vec.len());
                let (mut x, mut y) = (0, 0);
                while x < target.len() || y < pivot_vec.len() {
                    let tr = target.get(x).map(|e| e.0).unwrap_or(u32::MAX);
                    let pr = pivot_vec.get(y).map(|e| e.0).unwrap_or(u32::MAX);
                    if tr < pr {
                        out.push(target[x].clone());
                        x += 1;
                    } else if pr < tr {
                        let v = sub_mul(&T::zero(), &q, &pivot_vec[y].1)?;
                        holders[pr as usize].insert(i);
                        out.push((pr, v));
                        y += 1;
                    } else {
                        let v = sub_mul(&target[x].1, &q, &pivot_vec[y].1)?;
                        if !v.is_zero() {
                            out.push((tr, v));
                        }
                        x += 1;
                        y += 1;
                    }
                }
                *target = out;
            }
            alive[p as usize] = false;
            done[coord] = true;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    // dense remainder
    let rest_vecs: Vec<usize> = (0..vecs.len())
        .filter(|&i| alive[i] && !vecs[i].is_empty())
        .collect();
    let rest_coords: Vec<usize> = (0..m.rows)
        .filter(|&r| !done[r] && holders[r].iter().any(|&i| alive[i as usize]))
        .collect();
    let mut pos = vec![usize::MAX; m.rows];
    for (k, &r) in rest_coords.iter().enumerate() {
        pos[r] = k;
    }
    let mut dense: Vec<Vec<T>> = rest_vecs
        .iter()
        .map(|&i| {
            let mut row = vec![T::zero(); rest_coords.len()];
            for (r, v) in &vecs[i] {
                if pos[*r as usize] != usize::MAX {
                    row[pos[*r as usize]] = v.clone();
                }
            }
            row
        })
        .collect();
    let mut factors: Vec<T> = vec![T::one(); units];
    factors.extend(dense_diagonal(&mut dense)?);
    factors.sort();
    Some(factors)
}

/// Smith normal form diagonal of a dense matrix, nonzero entries only.
#[allow(clippy::needless_range_loop)]
fn dense_diagonal<T: Entry>(a: &mut [Vec<T>]) -> Option<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let min_abs = |a: &[Vec<T>], cells: &mut dyn Iterator<Item = (usize, usize)>| -> Option<(usize, usize)> {
        cells
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs(a, &mut (t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let v = sub_mul(&a[i][j], &q, &a[t][j])?;
                        a[i][j] = v;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = sub_mul(&row[j], &q, &row[t])?;
                        row[j] = v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let cells = &mut (t + 1..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                if let Some((i, j)) = min_abs(a, cells) {
                    if i != t {
                        a.swap(t, i);
                    } else {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[t][j].clone() + a[i][j].clone();
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    Some(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> IntMatrix {
        let n = rows[0].len();
        IntMatrix::from_columns(
            rows.len(),
            (0..n)
                .map(|j| {
                    rows.iter()
                        .enumerate()
                        .map(|(i, r)| (i as u32, r[j]))
                        .collect()
                })
                .collect(),
        )
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(dense(&[&[2, 0], &[0, 3]]).invariant_factors(), ints(&[1, 6]));
        assert_eq!(dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).invariant_factors(), ints(&[2, 6, 12]));
        assert_eq!(dense(&[&[1, 1], &[1, 1]]).invariant_factors(), ints(&[1]));
        assert!(IntMatrix::zeros(3, 2).invariant_factors().is_empty());
    }

    #[test]
    fn projective_plane_boundary_has_two_torsion() {
        // d2 of the six-vertex real projective plane, orientation by sorted
        // vertices: d2 is injective and H1 = Z/2
        let triangles = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ];
        let mut edges: Vec<[u32; 2]> = Vec::new();
        for t in &triangles {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let e = [t[a], t[b]];
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        edges.sort();
        let cols = triangles
            .iter()
            .map(|t| {
                let faces = [[t[1], t[2]], [t[0], t[2]], [t[0], t[1]]];
                faces
                    .iter()
                    .enumerate()
                    .map(|(p, f)| {
                        let r = edges.iter().position(|e| e == f).unwrap() as u32;
                        (r, if p % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        let d2 = IntMatrix::from_columns(edges.len(), cols);
        let f = d2.invariant_factors();
        assert_eq!(f.len(), 10);
        assert_eq!(f.last(), Some(&BigInt::from(2)));
        assert!(f[..9].iter().all(|x| x == &BigInt::from(1)));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2 + 1;
        let m = dense(&[&[big, 3], &[3, big]]);
        let f = m.invariant_factors();
        let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(9);
        assert_eq!(f.len(), 2);
        assert_eq!(&f[0] * &f[1], det.abs());
    }

    /// Determinant magnitude of a 3x3 matrix, product of invariant factors.
    fn det3(a: [[i64; 3]; 3]) -> i64 {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    proptest::proptest! {
        #[test]
        fn factors_divide_and_multiply_to_det(v in proptest::collection::vec(-6i64..7, 9)) {
            let a = [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]];
            let m = dense(&[&a[0], &a[1], &a[2]]);
            let f = m.invariant_factors();
            for w in f.windows(2) {
                proptest::prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let d = det3(a);
            if d != 0 {
                proptest::prop_assert_eq!(f.len(), 3);
                let prod: BigInt = f.iter().product();
                proptest::prop_assert_eq!(prod, BigInt::from(d.abs()));
            } else {
                proptest::prop_assert!(f.len() < 3);
            }
            proptest::prop_assert_eq!(f.len() >= m.to_gf2().rank(), true);
        }
    }
}
