//! Closed-form Gaussian moments for weights `exp(-t xᵗ S x)`.

use crate::qlinalg::{Scalar, SparseMat};

use super::field::Field;

/// `∫ x^k e^{-t x²} dx / ∫ e^{-t x²} dx`, via `M_k = (k-1)/(2t) · M_{k-2}`.
pub fn moment_1d<F: Scalar>(k: usize, t: &F) -> F {
    if k % 2 == 1 {
        return F::zero();
    }
    let two_t = t.clone() + t.clone();
    (1..=k / 2).fold(F::one(), |acc, j| {
        acc * F::from_i64(2 * j as i64 - 1) / two_t.clone()
    })
}

/// Second moments `E[x_j x_k]` of the density proportional to
/// `exp(-t xᵗ S x)`, i.e. the covariance `(2tS)^{-1}`.
pub fn second_moments<F: Field>(s: &SparseMat<F>, t: &F) -> Option<SparseMat<F>> {
    let n = s.nrows();
    let two_t = t.clone() + t.clone();
    let scaled = s.scale(&two_t);
    let columns: Option<Vec<Vec<F>>> = (0..n)
        .map(|j| {
            let e: Vec<F> = (0..n)
                .map(|i| if i == j { F::one() } else { F::zero() })
                .collect();
            F::solve(&scaled, &e)
        })
        .collect();
    Some(SparseMat::from_columns(n, &columns?))
}

/// `E[|Σ_j x_j v_j|²] = Σ_{jk} ⟨v_j, v_k⟩ E[x_j x_k]` for vectors `v_j`.
pub fn linear_form_norm_sq<F: Field>(components: &[Vec<F>], moments: &SparseMat<F>) -> F {
    let mut total = F::zero();
    for (j, k, w) in moments.entries() {
        let dot = components[j]
            .iter()
            .zip(&components[k])
            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        total = total + dot * w.clone();
    }
    total
}
