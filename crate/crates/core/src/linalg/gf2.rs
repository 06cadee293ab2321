/// Sparse matrix over the field with two elements, stored by columns. Each
/// column is the ascending list of rows holding a one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: Vec<Vec<u32>>,
}

/// Symmetric difference of two ascending lists.
fn add_into(target: &mut Vec<u32>, other: &[u32]) {
    let mut out = Vec::with_capacity(target.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < other.len() {
        match target[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&other[j..]);
    *target = out;
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Columns given as row lists in any order; repeated rows cancel.
    pub fn from_columns(rows: usize, cols: Vec<Vec<u32>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Vec<u32> = Vec::with_capacity(c.len());
                for r in c {
                    assert!((r as usize) < rows, "row {r} out of range");
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Gf2Matrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].binary_search(&(r as u32)).is_ok()
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        let mut out = self.clone();
        for (c, o) in out.cols.iter_mut().zip(&other.cols) {
            add_into(c, o);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.ncols(), other.rows, "shape mismatch");
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc = Vec::new();
                for &k in c {
                    add_into(&mut acc, &self.cols[k as usize]);
                }
                acc
            })
            .collect();
        Gf2Matrix {
            rows: self.rows,
            cols,
        }
    }

    /// Keeps the selected rows and columns, renumbered in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Gf2Matrix {
        let mut new_row = vec![u32::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            new_row[r] = i as u32;
        }
        let cols = cols
            .iter()
            .map(|&c| {
                self.cols[c]
                    .iter()
                    .filter_map(|&r| match new_row[r as usize] {
                        u32::MAX => None,
                        x => Some(x),
                    })
                    .collect()
            })
            .collect();
        Gf2Matrix::from_columns(rows.len(), cols)
    }

    /// Rank by column reduction; a column's pivot is its lowest row index.
    pub fn rank(&self) -> usize {
        let mut owner: Vec<Option<usize>> = vec![None; self.rows];
        let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(self.cols.len());
        let mut rank = 0;
        for col in &self.cols {
            let mut c = col.clone();
            while let Some(&pivot) = c.first() {
                match owner[pivot as usize] {
                    Some(k) => add_into(&mut c, &reduced[k]),
                    None => break,
                }
            }
            if let Some(&pivot) = c.first() {
                owner[pivot as usize] = Some(reduced.len());
                rank += 1;
            }
            reduced.push(c);
        }
        rank
    }
}
