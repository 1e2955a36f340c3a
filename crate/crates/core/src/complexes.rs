//! Graded cochain complexes and the symplectic mapping cone.
//!
//! A [`GradedComplex`] stores one dimension per degree `0..=top` and one
//! differential `d_k : V^k -> V^{k+1}` per degree (the last one maps to the
//! zero space). An [`OmegaMap`] is a degree-two chain map `L_k : V^k -> V^{k+2}`,
//! the finite model of wedging with the symplectic form. The cone of `L^{p+1}`
//! has
//!
//! ```text
//! C^k = V^k ⊕ V^{k-2p-1},    ∂ = [ d  L^{p+1} ]
//!                                [ 0    -d    ]
//! ```
//!
//! and its cohomology dimensions are the `b_k^ω` numbers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qlinalg::{rank, Rational, SparseMat, Z2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("d_{next} · d_{degree} is not zero")]
    NotSquareZero { degree: usize, next: usize },
    #[error("omega map is not a chain map in degree {degree}: d·L ≠ L·d")]
    ChainMapViolation { degree: usize },
    #[error("expected {expected} per-degree matrices, got {found}")]
    WrongLength { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedComplex {
    dims: Vec<usize>,
    d: Vec<SparseMat>,
}

impl GradedComplex {
    /// `d` may list either `top + 1` matrices (the last of shape `0 × dims[top]`)
    /// or just the `top` nontrivial ones.
    pub fn new(dims: Vec<usize>, mut d: Vec<SparseMat>) -> Result<Self, ComplexError> {
        let n = dims.len();
        if n == 0 {
            return Err(ComplexError::WrongLength {
                expected: 1,
                found: 0,
            });
        }
        if d.len() + 1 == n {
            d.push(SparseMat::zeros(0, dims[n - 1]));
        }
        if d.len() != n {
            return Err(ComplexError::WrongLength {
                expected: n,
                found: d.len(),
            });
        }
        for (k, m) in d.iter().enumerate() {
            let rows = if k + 1 < n { dims[k + 1] } else { 0 };
            if m.shape() != (rows, dims[k]) {
                return Err(ComplexError::ShapeMismatch {
                    degree: k,
                    expected: (rows, dims[k]),
                    found: m.shape(),
                });
            }
        }
        for k in 0..n.saturating_sub(2) {
            if !d[k + 1].mul(&d[k]).is_zero() {
                return Err(ComplexError::NotSquareZero {
                    degree: k,
                    next: k + 1,
                });
            }
        }
        Ok(GradedComplex { dims, d })
    }

    pub fn zero(dims: Vec<usize>) -> Self {
        let n = dims.len();
        let d = (0..n)
            .map(|k| SparseMat::zeros(if k + 1 < n { dims[k + 1] } else { 0 }, dims[k]))
            .collect();
        GradedComplex { dims, d }
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension in degree `k`; zero outside `0..=top`.
    pub fn dim(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.dims.get(k as usize).copied().unwrap_or(0)
        }
    }

    pub fn differential(&self, k: usize) -> &SparseMat {
        &self.d[k]
    }

    pub fn differentials(&self) -> &[SparseMat] {
        &self.d
    }

    /// `d_k` with shape `dim(k+1) × dim(k)` for any integer `k`.
    fn d_any(&self, k: i64) -> SparseMat {
        if k < 0 || k as usize >= self.dims.len() {
            SparseMat::zeros(self.dim(k + 1), self.dim(k))
        } else if (k as usize) + 1 == self.dims.len() {
            SparseMat::zeros(0, self.dims[k as usize])
        } else {
            self.d[k as usize].clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaMap {
    maps: Vec<SparseMat>,
}

impl OmegaMap {
    /// One matrix per degree `k`, of shape `dim(k+2) × dim(k)`. Trailing
    /// degrees may be omitted; they are filled with zero-row matrices.
    pub fn new(c: &GradedComplex, mut maps: Vec<SparseMat>) -> Result<Self, ComplexError> {
        let n = c.dims.len();
        if maps.len() > n {
            return Err(ComplexError::WrongLength {
                expected: n,
                found: maps.len(),
            });
        }
        while maps.len() < n {
            let k = maps.len();
            maps.push(SparseMat::zeros(c.dim(k as i64 + 2), c.dims[k]));
        }
        for (k, m) in maps.iter().enumerate() {
            let expected = (c.dim(k as i64 + 2), c.dims[k]);
            if m.shape() != expected {
                return Err(ComplexError::ShapeMismatch {
                    degree: k,
                    expected,
                    found: m.shape(),
                });
            }
        }
        let w = OmegaMap { maps };
        w.check_chain_map(c)?;
        Ok(w)
    }

    pub fn zero(c: &GradedComplex) -> Self {
        let maps = (0..c.dims.len())
            .map(|k| SparseMat::zeros(c.dim(k as i64 + 2), c.dims[k]))
            .collect();
        OmegaMap { maps }
    }

    pub fn map(&self, k: usize) -> &SparseMat {
        &self.maps[k]
    }

    pub fn maps(&self) -> &[SparseMat] {
        &self.maps
    }

    /// `d_{k+2} L_k = L_{k+1} d_k` in every degree.
    pub fn check_chain_map(&self, c: &GradedComplex) -> Result<(), ComplexError> {
        for k in 0..c.dims.len() {
            let lhs = c.d_any(k as i64 + 2).mul(&self.maps[k]);
            let rhs = self.l_any(c, k as i64 + 1).mul(&c.d_any(k as i64));
            if lhs != rhs {
                return Err(ComplexError::ChainMapViolation { degree: k });
            }
        }
        Ok(())
    }

    fn l_any(&self, c: &GradedComplex, k: i64) -> SparseMat {
        if k < 0 || k as usize >= self.maps.len() {
            SparseMat::zeros(c.dim(k + 2), c.dim(k))
        } else {
            self.maps[k as usize].clone()
        }
    }

    /// The composite `L^q : V^k -> V^{k+2q}`.
    pub fn power(&self, c: &GradedComplex, q: usize, k: i64) -> SparseMat {
        let mut acc = SparseMat::identity(c.dim(k));
        for step in 0..q {
            acc = self.l_any(c, k + 2 * step as i64).mul(&acc);
        }
        acc
    }
}

/// Cohomology dimensions, one entry per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(self)
    }

    pub fn semi_characteristic(&self) -> Z2 {
        semi_characteristic(self)
    }

    /// `b_k = b_{len-1-k}` for every `k`.
    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

/// Mapping cone of `L^{p+1}`; `p = 0` gives the primitive cohomology cone.
pub fn cone(c: &GradedComplex, w: &OmegaMap, p: usize) -> Result<GradedComplex, ComplexError> {
    w.check_chain_map(c)?;
    let shift = 2 * p as i64 + 1;
    let top = c.top_degree() as i64 + shift;
    let dims: Vec<usize> = (0..=top).map(|k| c.dim(k) + c.dim(k - shift)).collect();
    let d = (0..=top)
        .map(|k| {
            let j = k - shift;
            let next = if k == top {
                (0, 0)
            } else {
                (c.dim(k + 1), c.dim(j + 1))
            };
            let dk = c.d_any(k);
            let dj = c.d_any(j).neg();
            let lj = w.power(c, p + 1, j);
            if k == top {
                SparseMat::zeros(0, dims[k as usize])
            } else {
                SparseMat::block(
                    &[next.0, next.1],
                    &[c.dim(k), c.dim(j)],
                    &[vec![Some(&dk), Some(&lj)], vec![None, Some(&dj)]],
                )
            }
        })
        .collect();
    GradedComplex::new(dims, d)
}

/// `b_k = dim V^k - rank d_k - rank d_{k-1}`.
pub fn betti(c: &GradedComplex) -> BettiVector {
    let ranks: Vec<usize> = c.d.iter().map(rank).collect();
    BettiVector(
        (0..c.dims.len())
            .map(|k| c.dims[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
            .collect(),
    )
}

pub fn euler_characteristic(b: &BettiVector) -> i64 {
    b.0.iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Sum of the even-degree entries mod 2.
pub fn semi_characteristic(b: &BettiVector) -> Z2 {
    Z2::from_count(b.0.iter().step_by(2).sum())
}

/// Formal adjoint of the `p = 0` cone differential, assembled blockwise as
/// `[dᵗ, 0; Lᵗ, -dᵗ]` in the orthonormal model basis. Entry `k` maps
/// `C^{k+1} -> C^k`.
pub fn cone_adjoint(c: &GradedComplex, w: &OmegaMap) -> Result<Vec<SparseMat>, ComplexError> {
    w.check_chain_map(c)?;
    let top = c.top_degree() as i64 + 1;
    Ok((0..=top)
        .map(|k| {
            let j = k - 1;
            if k == top {
                return SparseMat::zeros(c.dim(k) + c.dim(j), 0);
            }
            let dkt = c.d_any(k).transpose();
            let djt = c.d_any(j).transpose().neg();
            let lt = w.power(c, 1, j).transpose();
            SparseMat::block(
                &[c.dim(k), c.dim(j)],
                &[c.dim(k + 1), c.dim(j + 1)],
                &[vec![Some(&dkt), None], vec![Some(&lt), Some(&djt)]],
            )
        })
        .collect())
}

/// Kernel dimensions of the cone Laplacian `∂∂* + ∂*∂` degree by degree.
pub fn harmonic_dimensions(c: &GradedComplex, w: &OmegaMap) -> Result<Vec<usize>, ComplexError> {
    let cone_c = cone(c, w, 0)?;
    let adj = cone_adjoint(c, w)?;
    Ok(laplacian_kernel_dims(&cone_c, &adj))
}

/// Laplacian kernel dimensions for any complex, with `adj[k]` the adjoint of `d_k`.
pub fn laplacian_kernel_dims(c: &GradedComplex, adj: &[SparseMat]) -> Vec<usize> {
    (0..c.dims.len())
        .map(|k| {
            let n = c.dims[k];
            let mut lap = adj[k].mul(&c.d[k]);
            if k > 0 {
                lap = lap.add(&c.d[k - 1].mul(&adj[k - 1]));
            }
            n - rank(&lap)
        })
        .collect()
}

/// Transposes of the differentials, the adjoints for an orthonormal basis.
pub fn transposed_differentials(c: &GradedComplex) -> Vec<SparseMat> {
    c.d.iter().map(SparseMat::transpose).collect()
}

/// Helper for tests and builders: a dense integer matrix.
pub fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> SparseMat {
    assert_eq!(entries.len(), rows * cols);
    SparseMat::from_triplets(
        rows,
        cols,
        entries.iter().enumerate().map(|(i, &v)| {
            (
                i / cols.max(1),
                i % cols.max(1),
                Rational::from_integer(v.into()),
            )
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp2() -> (GradedComplex, OmegaMap) {
        let c = GradedComplex::zero(vec![1, 0, 1, 0, 1]);
        let w = OmegaMap::new(
            &c,
            vec![
                int_matrix(1, 1, &[1]),
                int_matrix(0, 0, &[]),
                int_matrix(1, 1, &[1]),
            ],
        )
        .unwrap();
        (c, w)
    }

    #[test]
    fn cp2_cone_dims_and_betti() {
        let (c, w) = cp2();
        let k = cone(&c, &w, 0).unwrap();
        assert_eq!(k.dims(), &[1, 1, 1, 1, 1, 1]);
        let b = betti(&k);
        assert_eq!(b.values(), &[1, 0, 0, 0, 0, 1]);
        assert_eq!(b.euler_characteristic(), 0);
        assert_eq!(b.semi_characteristic(), Z2::ONE);
        assert_eq!(harmonic_dimensions(&c, &w).unwrap(), vec![1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn cp2_adjoint_degree_one() {
        let (c, w) = cp2();
        let adj = cone_adjoint(&c, &w).unwrap();
        // C^2 = H^2 ⊕ H^1 = H^2 back to C^1 = H^1 ⊕ H^0 = H^0 via ωᵗ
        assert_eq!(adj[1].shape(), (1, 1));
        assert_eq!(adj[1], int_matrix(1, 1, &[1]));
        let k = cone(&c, &w, 0).unwrap();
        for (a, d) in adj.iter().zip(k.differentials()) {
            assert_eq!(a, &d.transpose());
        }
    }

    #[test]
    fn zero_map_cone_splits() {
        let c = GradedComplex::zero(vec![1, 0, 1]);
        let w = OmegaMap::zero(&c);
        assert_eq!(betti(&cone(&c, &w, 0).unwrap()).values(), &[1, 1, 1, 1]);
        // p large: L^{p+1} vanishes, Betti is b_k + b_{k-2p-1}
        let (cp, wp) = cp2();
        let b = betti(&cone(&cp, &wp, 2).unwrap());
        assert_eq!(b.values(), &[1, 0, 1, 0, 1, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn zero_complex() {
        let c = GradedComplex::zero(vec![0, 0, 0]);
        let w = OmegaMap::zero(&c);
        let k = cone(&c, &w, 0).unwrap();
        assert!(betti(&k).values().iter().all(|&b| b == 0));
        assert!(harmonic_dimensions(&c, &w).unwrap().iter().all(|&b| b == 0));
        assert!(cone_adjoint(&c, &w).unwrap().iter().all(SparseMat::is_zero));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            GradedComplex::new(vec![1, 1], vec![int_matrix(1, 2, &[1, 0])]),
            Err(ComplexError::ShapeMismatch { .. })
        ));
        // d1 d0 ≠ 0
        assert!(matches!(
            GradedComplex::new(
                vec![1, 1, 1],
                vec![int_matrix(1, 1, &[1]), int_matrix(1, 1, &[1])]
            ),
            Err(ComplexError::NotSquareZero { degree: 0, next: 1 })
        ));
        // L does not commute with d
        let c = GradedComplex::new(
            vec![1, 1, 1, 1],
            vec![
                int_matrix(1, 1, &[1]),
                int_matrix(1, 1, &[0]),
                int_matrix(1, 1, &[1]),
            ],
        )
        .unwrap();
        assert!(matches!(
            OmegaMap::new(&c, vec![int_matrix(1, 1, &[1])]),
            Err(ComplexError::ChainMapViolation { .. })
        ));
    }

    #[test]
    fn semi_characteristic_examples() {
        assert_eq!(
            semi_characteristic(&BettiVector(vec![1, 0, 0, 0, 0, 1])),
            Z2::ONE
        );
        assert_eq!(
            semi_characteristic(&BettiVector(vec![1, 0, 1, 1, 0, 1])),
            Z2::ZERO
        );
        assert_eq!(semi_characteristic(&BettiVector(vec![1, 2, 2, 1])), Z2::ONE);
        assert_eq!(euler_characteristic(&BettiVector(vec![1, 2, 2, 1])), 0);
        assert_eq!(
            euler_characteristic(&BettiVector(vec![1, 0, 1, 1, 0, 1])),
            0
        );
    }
}
