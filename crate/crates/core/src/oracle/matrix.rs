//! Dense row-major matrices over F_p with exact rank and kernel.

use super::field::{PrimeField, PrimeFieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u64>,
}

/// Reduced row echelon form: the nonzero rows and the pivot column of each.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: PrimeFieldMatrix,
    pub pivots: Vec<usize>,
}

impl PrimeFieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    /// Build from row slices; entries are reduced mod p. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u64]>>(field: PrimeField, cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Self {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn element(&self, r: usize, c: usize) -> PrimeFieldElement {
        self.field.element(self.get(r, c))
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "ragged row");
        self.data.extend(row.iter().map(|&x| self.field.reduce(x)));
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Gauss-Jordan elimination. Each pivot is the first nonzero entry at or
    /// below the current row in its column.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let cols = self.cols;
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..cols {
            if top == self.rows {
                break;
            }
            let Some(piv) = (top..self.rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if piv != top {
                for c in col..cols {
                    a.swap(piv * cols + c, top * cols + c);
                }
            }
            let inv = f.inv(a[top * cols + col]);
            for c in col..cols {
                a[top * cols + c] = f.mul(a[top * cols + c], inv);
            }
            let (head, tail) = a.split_at_mut(top * cols);
            let (pivot_row, below) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let factor = row[col];
                if factor != 0 {
                    for c in col..cols {
                        row[c] = f.sub(row[c], f.mul(factor, pivot_row[c]));
                    }
                }
            };
            head.chunks_exact_mut(cols).for_each(eliminate);
            below.chunks_exact_mut(cols).for_each(eliminate);
            pivots.push(col);
            top += 1;
        }
        a.truncate(top * cols);
        Echelon {
            matrix: Self {
                rows: top,
                cols,
                field: f,
                data: a,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
    /// normalized to 1 at that column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &p) in ech.pivots.iter().enumerate() {
                    v[p] = f.neg(ech.matrix.get(i, free));
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = field();
        let m = PrimeFieldMatrix::from_rows(f, 3, &[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(PrimeFieldMatrix::zeros(f, 4, 5).rank(), 0);
        let id = PrimeFieldMatrix::from_rows(f, 2, &[[1, 0], [0, 1], [5, 7]]);
        assert_eq!(id.rank(), 2);
        assert_eq!(PrimeFieldMatrix::zeros(f, 0, 3).rank(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = field();
        let m = PrimeFieldMatrix::from_rows(f, 4, &[[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 4 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn negative_entries_via_from_i64() {
        let f = field();
        let neg_one = f.from_i64(-1);
        // [[1, -1], [-1, 1]] has rank 1
        let m = PrimeFieldMatrix::from_rows(f, 2, &[[1, neg_one], [neg_one, 1]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel(), vec![vec![1, 1]]);
    }
}
