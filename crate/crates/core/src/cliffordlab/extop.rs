use serde::{Deserialize, Serialize};

use crate::qlinalg::{Scalar, SparseMat};

use super::CliffordError;

/// Which Clifford action: `c(v) = v∧ - ι_v` or `ĉ(v) = v∧ + ι_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CliffordKind {
    C,
    Chat,
}

/// Operator on the exterior algebra of `R^m`. Basis vector `b` is `e^S` where
/// bit `i - 1` of `b` records `i ∈ S`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtOp<S: Scalar = crate::qlinalg::Rational> {
    pub m: usize,
    pub matrix: SparseMat<S>,
}

impl<S: Scalar> ExtOp<S> {
    pub fn identity(m: usize) -> Self {
        ExtOp {
            m,
            matrix: SparseMat::identity(1 << m),
        }
    }

    pub fn zero(m: usize) -> Self {
        ExtOp {
            m,
            matrix: SparseMat::zeros(1 << m, 1 << m),
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn compose(&self, other: &ExtOp<S>) -> ExtOp<S> {
        ExtOp {
            m: self.m,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &ExtOp<S>) -> ExtOp<S> {
        ExtOp {
            m: self.m,
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &ExtOp<S>) -> ExtOp<S> {
        ExtOp {
            m: self.m,
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, c: &S) -> ExtOp<S> {
        ExtOp {
            m: self.m,
            matrix: self.matrix.scale(c),
        }
    }

    pub fn transpose(&self) -> ExtOp<S> {
        ExtOp {
            m: self.m,
            matrix: self.matrix.transpose(),
        }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.mul_vec(v)
    }

    /// Restriction to forms of degree `k` in both source and target.
    pub fn degree_block(&self, k: usize) -> SparseMat<S> {
        let idx = degree_indices(self.m, k);
        self.matrix.select(&idx, &idx)
    }
}

pub fn form_degree(b: usize) -> usize {
    b.count_ones() as usize
}

/// Basis indices of the degree-`k` forms, in increasing bitmask order.
pub fn degree_indices(m: usize, k: usize) -> Vec<usize> {
    (0..1usize << m).filter(|&b| form_degree(b) == k).collect()
}

/// `(-1)^{#{j ∈ S : j < i}}` for the 0-based index `i`.
fn position_sign<S: Scalar>(b: usize, i: usize) -> S {
    if (b & ((1 << i) - 1)).count_ones() % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// `e^{i+1} ∧` for the 0-based index `i`.
pub fn wedge<S: Scalar>(m: usize, i: usize) -> ExtOp<S> {
    let n = 1 << m;
    let matrix = SparseMat::from_triplets(
        n,
        n,
        (0..n)
            .filter(|b| b & (1 << i) == 0)
            .map(|b| (b | (1 << i), b, position_sign(b, i))),
    );
    ExtOp { m, matrix }
}

/// Contraction `ι_{e_{i+1}}`, the transpose of [`wedge`].
pub fn contract<S: Scalar>(m: usize, i: usize) -> ExtOp<S> {
    let n = 1 << m;
    let matrix = SparseMat::from_triplets(
        n,
        n,
        (0..n)
            .filter(|b| b & (1 << i) != 0)
            .map(|b| (b & !(1 << i), b, position_sign(b, i))),
    );
    ExtOp { m, matrix }
}

/// `c(v)` or `ĉ(v)` for a vector `v` of length `m`.
pub fn clifford<S: Scalar>(
    m: usize,
    v: &[S],
    kind: CliffordKind,
) -> Result<ExtOp<S>, CliffordError> {
    if v.len() != m {
        return Err(CliffordError::DimensionMismatch {
            expected: m,
            found: v.len(),
        });
    }
    let mut out = ExtOp::zero(m);
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = wedge::<S>(m, i);
        let k = contract::<S>(m, i);
        let term = match kind {
            CliffordKind::Chat => w.add(&k),
            CliffordKind::C => w.sub(&k),
        };
        out = out.add(&term.scale(c));
    }
    Ok(out)
}

pub fn basis_vector<S: Scalar>(m: usize, i: usize) -> Vec<S> {
    (0..m)
        .map(|j| if j == i { S::one() } else { S::zero() })
        .collect()
}

/// `c(e_{i+1})` or `ĉ(e_{i+1})`.
pub fn clifford_basis<S: Scalar>(m: usize, i: usize, kind: CliffordKind) -> ExtOp<S> {
    let w = wedge::<S>(m, i);
    let k = contract::<S>(m, i);
    match kind {
        CliffordKind::Chat => w.add(&k),
        CliffordKind::C => w.sub(&k),
    }
}

fn check_4n(m: usize) -> Result<(), CliffordError> {
    if m == 0 || m % 4 != 0 {
        Err(CliffordError::BadDimension(m))
    } else {
        Ok(())
    }
}

/// Hodge star of the standard oriented Euclidean structure,
/// `⋆e^S = ε(S, S^c) e^{S^c}`.
pub fn hodge_star<S: Scalar>(m: usize) -> Result<ExtOp<S>, CliffordError> {
    check_4n(m)?;
    Ok(hodge_star_any(m))
}

pub(crate) fn hodge_star_any<S: Scalar>(m: usize) -> ExtOp<S> {
    let n = 1usize << m;
    let full = n - 1;
    let matrix = SparseMat::from_triplets(
        n,
        n,
        (0..n).map(|b| {
            let comp = full & !b;
            // inversions of the concatenation (S, S^c): pairs s ∈ S, t ∈ S^c with s > t
            let inv: u32 = (0..m)
                .filter(|i| b & (1 << i) != 0)
                .map(|i| (comp & ((1 << i) - 1)).count_ones())
                .sum();
            let sign = if inv % 2 == 0 { S::one() } else { -S::one() };
            (comp, b, sign)
        }),
    );
    ExtOp { m, matrix }
}

/// `ĉ(dvol) = ĉ(e_1) ⋯ ĉ(e_m)`.
pub fn dvol_action<S: Scalar>(m: usize) -> Result<ExtOp<S>, CliffordError> {
    check_4n(m)?;
    Ok((0..m).fold(ExtOp::identity(m), |acc, i| {
        acc.compose(&clifford_basis(m, i, CliffordKind::Chat))
    }))
}

/// `ω₀∧` for `ω₀ = e^1∧e^2 + e^3∧e^4 + ⋯`.
pub fn omega_wedge<S: Scalar>(m: usize) -> ExtOp<S> {
    (0..m / 2).fold(ExtOp::zero(m), |acc, i| {
        acc.add(&wedge::<S>(m, 2 * i).compose(&wedge(m, 2 * i + 1)))
    })
}

/// `ω₀*⌟ = Σ ι_{e_{2i}} ι_{e_{2i-1}}`.
pub fn omega_contract<S: Scalar>(m: usize) -> ExtOp<S> {
    (0..m / 2).fold(ExtOp::zero(m), |acc, i| {
        acc.add(&contract::<S>(m, 2 * i + 1).compose(&contract(m, 2 * i)))
    })
}

/// `½(ω₀*⌟ - ω₀∧)`.
pub fn omega_skew<S: Scalar>(m: usize) -> ExtOp<S> {
    let half = S::one() / (S::one() + S::one());
    omega_contract::<S>(m).sub(&omega_wedge(m)).scale(&half)
}
