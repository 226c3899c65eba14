//! Dense row-reduction over a prime field: rank and nullspace, which is
//! all the jet-condition systems and independence checks need.

use super::gf::Fp;

#[derive(Debug, Clone)]
pub(crate) struct MatFp {
    fp: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatFp {
    pub fn from_rows(fp: Fp, rows: Vec<Vec<u64>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row.iter().map(|&x| fp.reduce(x)));
        }
        Self {
            fp,
            rows: rows.len(),
            cols,
            data,
        }
    }

    fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = self.fp.mul(self.data[idx], s);
        }
    }

    fn add_scaled_row(&mut self, target: usize, source: usize, s: u64) {
        for c in 0..self.cols {
            let v = self.fp.mul(self.at(source, c), s);
            let idx = target * self.cols + c;
            self.data[idx] = self.fp.add(self.data[idx], v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.fp.inv(self.at(row, col));
            self.scale_row(row, inv);
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let factor = self.fp.neg(self.at(r, col));
                    self.add_scaled_row(r, row, factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(mut self) -> usize {
        self.rref().len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(mut self) -> Vec<Vec<u64>> {
        let pivots = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[free] = 1;
            for (row, &pcol) in pivots.iter().enumerate() {
                vec[pcol] = self.fp.neg(self.at(row, free));
            }
            basis.push(vec);
        }
        basis
    }
}
