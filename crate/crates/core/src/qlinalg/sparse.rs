use std::fmt;

use super::rational::{Rational, Scalar};

/// Row-major sparse matrix with explicit shape. Rows hold `(col, value)` pairs
/// sorted by column; zero values are never stored.
#[derive(Clone, PartialEq)]
pub struct SparseMat<S = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseMat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, S::one())]).collect();
        SparseMat {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds from triplets, summing duplicates and dropping zeros.
    ///
    /// Panics if an index is out of bounds.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in entries {
            m.add_at(i, j, v);
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<S>]) -> Self {
        assert_eq!(dense.len(), rows, "row count mismatch");
        let data = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "column count mismatch");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseMat { rows, cols, data }
    }

    /// Column matrix from a list of column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub(crate) fn from_rows_unchecked(
        rows: usize,
        cols: usize,
        data: Vec<Vec<(usize, S)>>,
    ) -> Self {
        SparseMat { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.data[i]
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(usize, S)>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        let row = &self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => row[p].1.clone(),
            Err(_) => S::zero(),
        }
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add_at(&mut self, i: usize, j: usize, v: S) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => {
                let s = row[p].1.clone() + v;
                if s.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = s;
                }
            }
            Err(p) => row.insert(p, (j, v)),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => {
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    row.insert(p, (j, v));
                }
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &SparseMat<S>) -> SparseMat<S> {
        assert_eq!(
            self.cols,
            other.rows,
            "shape mismatch in product: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let mut acc: Vec<Option<S>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        let prod = a.clone() * b.clone();
                        match &mut acc[*j] {
                            Some(s) => *s = s.clone() + prod,
                            slot @ None => {
                                *slot = Some(prod);
                                touched.push(*j);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                let out: Vec<(usize, S)> = touched
                    .drain(..)
                    .filter_map(|j| acc[j].take().filter(|v| !v.is_zero()).map(|v| (j, v)))
                    .collect();
                out
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(S::zero(), |acc, (j, a)| acc + a.clone() * v[*j].clone())
            })
            .collect()
    }

    fn combine(&self, other: &SparseMat<S>, sign: S) -> SparseMat<S> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut p, mut q) = (0, 0);
                while p < a.len() || q < b.len() {
                    let ja = a.get(p).map(|e| e.0).unwrap_or(usize::MAX);
                    let jb = b.get(q).map(|e| e.0).unwrap_or(usize::MAX);
                    if ja < jb {
                        out.push(a[p].clone());
                        p += 1;
                    } else if jb < ja {
                        out.push((jb, sign.clone() * b[q].1.clone()));
                        q += 1;
                    } else {
                        let s = a[p].1.clone() + sign.clone() * b[q].1.clone();
                        if !s.is_zero() {
                            out.push((ja, s));
                        }
                        p += 1;
                        q += 1;
                    }
                }
                out
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &SparseMat<S>) -> SparseMat<S> {
        self.combine(other, S::one())
    }

    pub fn sub(&self, other: &SparseMat<S>) -> SparseMat<S> {
        self.combine(other, -S::one())
    }

    pub fn scale(&self, c: &S) -> SparseMat<S> {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, c.clone() * v.clone())).collect())
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> SparseMat<S> {
        self.scale(&-S::one())
    }

    /// Kronecker product; index of `(i, k)` is `i * other.rows + k`.
    pub fn kron(&self, other: &SparseMat<S>) -> SparseMat<S> {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for k in 0..other.rows {
                let r = &mut out.data[i * other.rows + k];
                for (j, a) in row {
                    for (l, b) in &other.data[k] {
                        r.push((j * other.cols + l, a.clone() * b.clone()));
                    }
                }
            }
        }
        out
    }

    /// Assembles a block matrix. `row_dims`/`col_dims` fix the block shapes so
    /// that absent (`None`) blocks and zero-sized blocks are handled uniformly.
    pub fn block(
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[Vec<Option<&SparseMat<S>>>],
    ) -> SparseMat<S> {
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, &rd) in row_dims.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cd) in col_dims.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!(b.shape(), (rd, cd), "block ({bi},{bj}) has wrong shape");
                    for (i, row) in b.data.iter().enumerate() {
                        out.data[r0 + i].extend(row.iter().map(|(j, v)| (c0 + j, v.clone())));
                    }
                }
                c0 += cd;
            }
            r0 += rd;
        }
        out
    }

    /// Sub-matrix over the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMat<S> {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let data = rows
            .iter()
            .map(|&i| {
                let mut r: Vec<(usize, S)> = self.data[i]
                    .iter()
                    .filter(|(j, _)| col_map[*j] != usize::MAX)
                    .map(|(j, v)| (col_map[*j], v.clone()))
                    .collect();
                r.sort_by_key(|e| e.0);
                r
            })
            .collect();
        SparseMat {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut d = vec![vec![S::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseMat<T> {
        let data = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, v)| (*j, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Largest absolute entry, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.entries()
            .map(|(_, _, v)| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn fill_ratio(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows * self.cols) as f64
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_one(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }
}

impl SparseMat<Rational> {
    pub fn to_f64(&self) -> SparseMat<f64> {
        self.map(|v| v.to_f64())
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for SparseMat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMat {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
