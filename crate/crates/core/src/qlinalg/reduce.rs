use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::sparse::SparseMat;
use super::LinalgError;

/// Element of the field with two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct Z2(bool);

impl Z2 {
    pub const ZERO: Z2 = Z2(false);
    pub const ONE: Z2 = Z2(true);

    pub fn from_count(n: usize) -> Z2 {
        Z2(n % 2 == 1)
    }

    pub fn from_i64(n: i64) -> Z2 {
        Z2(n.rem_euclid(2) == 1)
    }

    pub fn value(self) -> u8 {
        self.0 as u8
    }
}

impl From<Z2> for u8 {
    fn from(z: Z2) -> u8 {
        z.value()
    }
}

impl TryFrom<u8> for Z2 {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Z2::ZERO),
            1 => Ok(Z2::ONE),
            other => Err(format!("{other} is not an element of Z/2")),
        }
    }
}

impl std::fmt::Display for Z2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub reduced: SparseMat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

type Row = Vec<(usize, Rational)>;

fn entry(row: &Row, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|p| &row[p].1)
}

/// `target - f * pivot`, both sorted by column.
fn eliminate(target: &Row, f: &Rational, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut p, mut q) = (0, 0);
    while p < target.len() || q < pivot.len() {
        let ja = target.get(p).map(|e| e.0).unwrap_or(usize::MAX);
        let jb = pivot.get(q).map(|e| e.0).unwrap_or(usize::MAX);
        if ja < jb {
            out.push(target[p].clone());
            p += 1;
        } else if jb < ja {
            out.push((jb, -(f * &pivot[q].1)));
            q += 1;
        } else {
            let v = &target[p].1 - f * &pivot[q].1;
            if !v.is_zero() {
                out.push((ja, v));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

struct Echelon {
    rows: Vec<Row>,
    pivots: Vec<usize>,
    swaps: usize,
    pivot_product: Rational,
}

/// Gaussian elimination with the leftmost-column, smallest-row pivot rule.
/// With `full`, rows above each pivot are cleared too (reduced form).
fn echelon_sparse(m: &SparseMat, full: bool) -> Echelon {
    let nrows = m.nrows();
    let mut rows: Vec<Row> = m.clone().into_rows();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut pivot_product = Rational::one();
    let mut r = 0;
    for col in 0..m.ncols() {
        if r == nrows {
            break;
        }
        let Some(found) = (r..nrows).find(|&i| entry(&rows[i], col).is_some()) else {
            continue;
        };
        if found != r {
            rows.swap(found, r);
            swaps += 1;
        }
        let lead = entry(&rows[r], col).cloned().expect("pivot present");
        pivot_product *= &lead;
        let inv = lead.recip();
        for e in rows[r].iter_mut() {
            e.1 *= &inv;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let range: Box<dyn Iterator<Item = usize>> = if full {
            Box::new((0..nrows).filter(|&i| i != r))
        } else {
            Box::new(r + 1..nrows)
        };
        for i in range {
            if let Some(f) = entry(&rows[i], col).cloned() {
                rows[i] = eliminate(&rows[i], &f, &pivot_row);
            }
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        swaps,
        pivot_product,
    }
}

/// Dense Gauss-Jordan with the same pivot rule; used above 50% fill.
fn echelon_dense(m: &SparseMat, full: bool) -> Echelon {
    let (nrows, ncols) = m.shape();
    let mut a = m.to_dense();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut pivot_product = Rational::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(found) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if found != r {
            a.swap(found, r);
            swaps += 1;
        }
        let lead = a[r][col].clone();
        pivot_product *= &lead;
        let inv = lead.recip();
        for v in a[r][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = std::mem::take(&mut a[r]);
        for i in 0..nrows {
            if i == r || (!full && i < r) || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..ncols {
                if !pivot_row[j].is_zero() {
                    let t = &f * &pivot_row[j];
                    a[i][j] -= t;
                }
            }
        }
        a[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    let rows = a
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    Echelon {
        rows,
        pivots,
        swaps,
        pivot_product,
    }
}

fn echelon(m: &SparseMat, full: bool) -> Echelon {
    if m.fill_ratio() > 0.5 {
        echelon_dense(m, full)
    } else {
        echelon_sparse(m, full)
    }
}

/// Unique reduced row-echelon form, its rank and pivot columns.
pub fn rref(m: &SparseMat) -> Rref {
    let e = echelon(m, true);
    Rref {
        reduced: SparseMat::from_rows_unchecked(m.nrows(), m.ncols(), e.rows),
        rank: e.pivots.len(),
        pivots: e.pivots,
    }
}

/// Forward elimination only; same pivot rule as [`rref`].
pub fn rank(m: &SparseMat) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    echelon(m, false).pivots.len()
}

/// Columns form a basis of the right kernel, one per free column of the RREF.
pub fn kernel_basis(m: &SparseMat) -> SparseMat {
    let cols = m.ncols();
    let r = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = SparseMat::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, Rational::one());
        for (row, &p) in r.pivots.iter().enumerate() {
            let v = r.reduced.get(row, f);
            if !v.is_zero() {
                basis.set(p, k, -v);
            }
        }
    }
    basis
}

pub fn determinant(m: &SparseMat) -> Result<Rational, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let e = echelon(m, false);
    if e.pivots.len() < m.nrows() {
        return Ok(Rational::zero());
    }
    let sign = if e.swaps % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(sign * e.pivot_product)
}

/// Exact inverse, or `None` when singular.
pub fn inverse(m: &SparseMat) -> Result<Option<SparseMat>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    let aug = SparseMat::block(
        &[n],
        &[n, n],
        &[vec![Some(m), Some(&SparseMat::identity(n))]],
    );
    let r = rref(&aug);
    if r.rank < n || r.pivots[n - 1] >= n {
        return Ok(None);
    }
    let idx: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    Ok(Some(r.reduced.select(&idx, &right)))
}

/// One solution of `m x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve(m: &SparseMat, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.nrows(), b.len(), "right-hand side length mismatch");
    let n = m.ncols();
    let rhs = SparseMat::from_columns(m.nrows(), &[b.to_vec()]);
    let aug = SparseMat::block(&[m.nrows()], &[n, 1], &[vec![Some(m), Some(&rhs)]]);
    let r = rref(&aug);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.reduced.get(row, n);
    }
    Some(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewParity {
    pub ker_dim: usize,
    pub parity: Z2,
}

/// Kernel dimension of a skew-symmetric matrix and its parity, which always
/// equals the matrix size mod 2 because skew ranks are even.
pub fn skew_kernel_parity(m: &SparseMat) -> Result<SkewParity, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.transpose() != m.neg() {
        return Err(LinalgError::NotSkewSymmetric);
    }
    let ker_dim = m.ncols() - rank(m);
    Ok(SkewParity {
        ker_dim,
        parity: Z2::from_count(ker_dim),
    })
}
