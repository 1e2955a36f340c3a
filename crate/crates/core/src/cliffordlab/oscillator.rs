use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::qlinalg::{determinant, format_rational, Rational, Scalar, SparseMat};

use super::extop::{clifford, clifford_basis, form_degree, omega_skew, CliffordKind, ExtOp};
use super::field::{to_dense, Field, FLOAT_TOL};
use super::gaussian::{linear_form_norm_sq, second_moments};
use super::identities::IdentityCheck;
use super::CliffordError;

/// Largest sector (polynomials × forms) the engine will assemble.
pub const SECTOR_LIMIT: usize = 20_000;

/// The linearized Witten operator at a zero with linearization `A`:
/// `L = L′ + T·L″`, `L″ = tr S + Σ_i c(e_i) ĉ(A e_i)`, `S = √(AᵗA)`.
#[derive(Clone, Debug)]
pub struct ModelOperator<F: Field> {
    pub a: SparseMat<F>,
    pub s: SparseMat<F>,
    pub lpp: ExtOp<F>,
    pub t: F,
    /// Sign of `det A`, computed exactly.
    pub det_sign: i8,
}

impl<F: Field> ModelOperator<F> {
    pub fn m(&self) -> usize {
        self.a.nrows()
    }

    pub fn trace_s(&self) -> F {
        self.s.trace()
    }
}

pub fn model_l<F: Field>(a: &SparseMat, t: &Rational) -> Result<ModelOperator<F>, CliffordError> {
    let m = a.nrows();
    if !a.is_square() || m == 0 {
        return Err(CliffordError::DimensionMismatch {
            expected: m,
            found: a.ncols(),
        });
    }
    if m > super::identities::FLOAT_LIMIT {
        return Err(CliffordError::TooLarge {
            m,
            limit: super::identities::FLOAT_LIMIT,
            mode: super::Mode::Float,
        });
    }
    if *t <= Rational::from_i64(0) {
        return Err(CliffordError::InvalidT(format_rational(t)));
    }
    let det = determinant(a).expect("square");
    if num_traits::Zero::is_zero(&det) {
        return Err(CliffordError::Singular);
    }
    let det_sign = if det > Rational::from_i64(0) { 1 } else { -1 };
    let af: SparseMat<F> = a.map(F::from_rational);
    let ata = af.transpose().mul(&af);
    let s = F::psd_sqrt(&ata).ok_or(if F::EXACT {
        CliffordError::NoRationalRoot
    } else {
        CliffordError::Singular
    })?;
    if !F::EXACT {
        let scale = ata.max_abs().max(1.0);
        if s.mul(&s).sub(&ata).max_abs() > 1e-12 * scale {
            return Err(CliffordError::Singular);
        }
    }
    let mut lpp = ExtOp::identity(m).scale(&s.trace());
    for i in 0..m {
        let col = af.column(i);
        let term = clifford_basis::<F>(m, i, CliffordKind::C).compose(&clifford(
            m,
            &col,
            CliffordKind::Chat,
        )?);
        lpp = lpp.add(&term);
    }
    Ok(ModelOperator {
        a: af,
        s,
        lpp,
        t: F::from_rational(t),
        det_sign,
    })
}

/// Polynomials of degree at most `cap` in `m` variables, tensored with forms.
/// Sector index is `poly_index * 2^m + form`; monomials are ordered by total
/// degree, then lexicographically with higher powers of `x_1` first.
#[derive(Clone, Debug)]
pub struct GaussianSector {
    m: usize,
    cap: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn exponents(m: usize, k: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in exponents(m - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl GaussianSector {
    pub fn new(m: usize, cap: usize) -> Result<Self, CliffordError> {
        let monomials: Vec<Vec<u32>> = (0..=cap as u32).flat_map(|k| exponents(m, k)).collect();
        let dim = monomials.len() << m;
        if dim > SECTOR_LIMIT {
            return Err(CliffordError::SectorTooLarge {
                dim,
                limit: SECTOR_LIMIT,
            });
        }
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        Ok(GaussianSector {
            m,
            cap,
            monomials,
            index,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.monomials.len() << self.m
    }

    pub fn forms(&self) -> usize {
        1 << self.m
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn poly_index(&self, alpha: &[u32]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// Polynomial degree of a sector index.
    pub fn degree_of(&self, idx: usize) -> usize {
        self.monomials[idx >> self.m].iter().sum::<u32>() as usize
    }

    /// Sector indices whose polynomial degree lies in `range`.
    pub fn indices_of_degree(&self, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| range.contains(&self.degree_of(i)))
            .collect()
    }

    /// `∂/∂x_{i+1}`.
    pub fn deriv<F: Field>(&self, i: usize) -> SparseMat<F> {
        let n = self.monomials.len();
        SparseMat::from_triplets(
            n,
            n,
            self.monomials
                .iter()
                .enumerate()
                .filter(|(_, a)| a[i] > 0)
                .map(|(c, a)| {
                    let mut b = a.clone();
                    b[i] -= 1;
                    (self.index[&b], c, F::from_i64(a[i] as i64))
                }),
        )
    }

    /// Multiplication by `x_{j+1}`, dropping results above the cap.
    pub fn mult<F: Field>(&self, j: usize) -> SparseMat<F> {
        let n = self.monomials.len();
        SparseMat::from_triplets(
            n,
            n,
            self.monomials.iter().enumerate().filter_map(|(c, a)| {
                let mut b = a.clone();
                b[j] += 1;
                self.index.get(&b).map(|&r| (r, c, F::one()))
            }),
        )
    }

    /// Embeds a form vector as a constant-coefficient sector vector.
    pub fn constant<F: Field>(&self, form: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[..form.len()].clone_from_slice(form);
        v
    }

    /// Form coefficients of the monomial `alpha`.
    pub fn component<'a, F>(&self, v: &'a [F], alpha: &[u32]) -> &'a [F] {
        let p = self.index[alpha];
        &v[p << self.m..(p + 1) << self.m]
    }
}

/// Gaussian-conjugated `L = (−Δ + 2T (Sx)·∇) ⊗ 1 + T · 1 ⊗ L″`.
pub fn l_tilde<F: Field>(op: &ModelOperator<F>, sector: &GaussianSector) -> SparseMat<F> {
    let m = op.m();
    let np = sector.monomials.len();
    let mut poly = SparseMat::<F>::zeros(np, np);
    let two_t = op.t.clone() + op.t.clone();
    for i in 0..m {
        let di = sector.deriv::<F>(i);
        poly = poly.sub(&di.mul(&di));
        for (r, j, sij) in op.s.entries() {
            if r == i {
                let term = sector
                    .mult::<F>(j)
                    .mul(&di)
                    .scale(&(two_t.clone() * sij.clone()));
                poly = poly.add(&term);
            }
        }
    }
    let forms = SparseMat::identity(1 << m);
    poly.kron(&forms)
        .add(&SparseMat::identity(np).kron(&op.lpp.matrix.scale(&op.t)))
}

/// Gaussian-conjugated `D = d + d* + T ĉ(Ax)`:
/// `Σ_i ∂_i ⊗ c(e_i) + T Σ_j x_j ⊗ (−c(S e_j) + ĉ(A e_j))`.
pub fn d_tilde<F: Field>(
    op: &ModelOperator<F>,
    sector: &GaussianSector,
) -> Result<SparseMat<F>, CliffordError> {
    let m = op.m();
    let mut out = SparseMat::zeros(sector.dim(), sector.dim());
    for i in 0..m {
        let c = clifford_basis::<F>(m, i, CliffordKind::C);
        out = out.add(&sector.deriv::<F>(i).kron(&c.matrix));
        let form = clifford(m, &op.s.column(i), CliffordKind::C)?
            .scale(&-F::one())
            .add(&clifford(m, &op.a.column(i), CliffordKind::Chat)?)
            .scale(&op.t);
        out = out.add(&sector.mult::<F>(i).kron(&form.matrix));
    }
    Ok(out)
}

fn close<F: Field>(a: &F, b: &F) -> bool {
    let scale = a.to_f64().abs().max(b.to_f64().abs());
    F::negligible(&(a.clone() - b.clone()), scale)
}

fn mats_close<F: Field>(a: &SparseMat<F>, b: &SparseMat<F>) -> bool {
    let scale = a.max_abs().max(b.max_abs());
    a.sub(b).entries().all(|(_, _, v)| F::negligible(v, scale))
}

/// Checks `D̃² = L̃` on polynomial degree `≤ cap` (assembled at `cap + 2` so no
/// term is lost to truncation).
pub fn verify_square<F: Field>(
    op: &ModelOperator<F>,
    cap: usize,
) -> Result<IdentityCheck, CliffordError> {
    let big = GaussianSector::new(op.m(), cap + 2)?;
    let d = d_tilde(op, &big)?;
    let l = l_tilde(op, &big);
    let idx = big.indices_of_degree(0..=cap);
    let lhs = d.mul(&d).select(&idx, &idx);
    let rhs = l.select(&idx, &idx);
    let passed = mats_close(&lhs, &rhs);
    Ok(IdentityCheck {
        name: "d_squared_equals_l".into(),
        passed,
        residual: lhs.sub(&rhs).max_abs(),
        failing_degrees: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
    None,
}

impl Parity {
    pub fn of<F: Field>(form: &[F]) -> Parity {
        let scale = form.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        let mut even = false;
        let mut odd = false;
        for (b, v) in form.iter().enumerate() {
            if !F::negligible(v, scale) {
                if form_degree(b) % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
            (false, false) => Parity::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelParity {
    pub ker_dim: usize,
    pub parity: Parity,
    pub det_sign: i8,
    /// Kernel vectors have constant polynomial part.
    pub constant_coefficients: bool,
    pub passed: bool,
}

/// Kernel of `L̃` on the sector and the parity of its form part `δ`.
pub fn kernel_and_parity<F: Field>(
    op: &ModelOperator<F>,
    cap: usize,
) -> Result<(KernelParity, Vec<F>), CliffordError> {
    let sector = GaussianSector::new(op.m(), cap)?;
    let l = l_tilde(op, &sector);
    let ker = F::kernel(&l);
    let forms = sector.forms();
    let (parity, delta, constant) = match ker.as_slice() {
        [v] => {
            let scale = v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
            let constant = v[forms..].iter().all(|x| F::negligible(x, scale));
            let delta = v[..forms].to_vec();
            (Parity::of(&delta), delta, constant)
        }
        _ => (Parity::None, Vec::new(), false),
    };
    let expected = if op.det_sign > 0 {
        Parity::Even
    } else {
        Parity::Odd
    };
    Ok((
        KernelParity {
            ker_dim: ker.len(),
            parity,
            det_sign: op.det_sign,
            constant_coefficients: constant,
            passed: ker.len() == 1 && constant && parity == expected,
        },
        delta,
    ))
}

fn bombieri_eigenvalues(block: &SparseMat<f64>, weights: &[f64]) -> (Vec<f64>, f64) {
    let mut d = to_dense(block);
    let n = d.nrows();
    for i in 0..n {
        for j in 0..n {
            d[(i, j)] *= weights[i] / weights[j];
        }
    }
    let asym = (&d - d.transpose()).amax();
    let sym: DMatrix<f64> = (&d + d.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    (eig.eigenvalues.iter().copied().collect(), asym)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub ts: Vec<String>,
    pub cap: usize,
    /// No entry of `L̃` raises polynomial degree, so each truncation is invariant.
    pub filtration_ok: bool,
    /// Diagonal degree blocks of `L̃/T` agree across `T` (exactly, in exact mode).
    pub blocks_equal: bool,
    /// Ascending eigenvalues of `L̃/T`, one row per `T`.
    pub spectrum_over_t: Vec<Vec<f64>>,
    pub max_relative_deviation: f64,
    pub zero_multiplicity: usize,
    pub gap: f64,
    pub passed: bool,
}

/// Eigenvalues of `L̃` on the truncated sector scale linearly in `T`.
pub fn spectrum_scaling<F: Field>(
    a: &SparseMat,
    ts: &[Rational],
    cap: usize,
) -> Result<SpectrumReport, CliffordError> {
    if cap < 2 {
        return Err(CliffordError::TruncationTooSmall { cap, needed: 2 });
    }
    check_ts(ts, 3)?;
    let m = a.nrows();
    let sector = GaussianSector::new(m, cap + 1)?;
    let inner = sector.indices_of_degree(0..=cap);
    let by_degree: Vec<Vec<usize>> = (0..=cap).map(|k| sector.indices_of_degree(k..=k)).collect();
    let weights: Vec<Vec<f64>> = by_degree
        .iter()
        .map(|idx| {
            idx.iter()
                .map(|&i| {
                    sector.monomials[i >> m]
                        .iter()
                        .map(|&e| (1..=e).map(f64::from).product::<f64>())
                        .product::<f64>()
                        .sqrt()
                })
                .collect()
        })
        .collect();
    let mut filtration_ok = true;
    let mut reference: Option<Vec<SparseMat<F>>> = None;
    let mut blocks_equal = true;
    let mut table = Vec::new();
    for t in ts {
        let op = model_l::<F>(a, t)?;
        let l = l_tilde(&op, &sector);
        filtration_ok &= l
            .entries()
            .all(|(r, c, _)| sector.degree_of(r) <= sector.degree_of(c));
        let l = l.select(&inner, &inner).scale(&(F::one() / op.t.clone()));
        let blocks: Vec<SparseMat<F>> = by_degree
            .iter()
            .map(|idx| {
                let local: Vec<usize> = idx
                    .iter()
                    .map(|i| inner.iter().position(|x| x == i).expect("inner"))
                    .collect();
                l.select(&local, &local)
            })
            .collect();
        let mut eig = Vec::new();
        for (b, w) in blocks.iter().zip(&weights) {
            let (vals, asym) = bombieri_eigenvalues(&b.map(|v| v.to_f64()), w);
            blocks_equal &= asym <= FLOAT_TOL * b.max_abs().max(1.0);
            eig.extend(vals);
        }
        eig.sort_by(|x, y| x.total_cmp(y));
        table.push(eig);
        match &reference {
            None => reference = Some(blocks),
            Some(r) => blocks_equal &= r.iter().zip(&blocks).all(|(x, y)| mats_close(x, y)),
        }
    }
    let first = &table[0];
    let max_dev = table
        .iter()
        .flat_map(|row| {
            row.iter()
                .zip(first)
                .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        })
        .fold(0.0, f64::max);
    let zero_multiplicity = first.iter().filter(|v| v.abs() <= FLOAT_TOL).count();
    let gap = first
        .iter()
        .copied()
        .filter(|v| *v > FLOAT_TOL)
        .fold(f64::INFINITY, f64::min);
    let nonnegative = first.iter().all(|v| *v >= -FLOAT_TOL);
    Ok(SpectrumReport {
        ts: ts.iter().map(format_rational).collect(),
        cap,
        filtration_ok,
        blocks_equal,
        passed: filtration_ok
            && blocks_equal
            && max_dev <= FLOAT_TOL
            && zero_multiplicity == 1
            && gap.is_finite()
            && nonnegative,
        spectrum_over_t: table,
        max_relative_deviation: max_dev,
        zero_multiplicity,
        gap,
    })
}

fn check_ts(ts: &[Rational], min: usize) -> Result<(), CliffordError> {
    let mut sorted = ts.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() < min {
        return Err(CliffordError::InvalidT(format!(
            "need at least {min} distinct values"
        )));
    }
    if let Some(t) = sorted.iter().find(|t| **t <= Rational::from_i64(0)) {
        return Err(CliffordError::InvalidT(format_rational(t)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaPoint {
    pub t: String,
    /// `C₁² = T ‖η‖² / ‖ρ‖²`, exact when available.
    pub c1_squared: String,
    pub c1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaReport {
    pub c1: f64,
    pub c1_squared: String,
    pub points: Vec<EtaPoint>,
    /// `⟨(ω₀* − ω₀)δ, δ⟩ = 0`.
    pub orthogonal: bool,
    /// The source `½(ω₀* − ω₀)ρ` vanished, so `C₁ = 0` by convention.
    pub eta_zero: bool,
    /// `L⁻¹ D ψ` and `D L⁻¹ ψ` agree.
    pub routes_agree: bool,
    /// `η` is linear in `x` times the Gaussian.
    pub degree_one: bool,
    pub constant: bool,
    pub passed: bool,
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

struct EtaAtT<F> {
    c1_squared: F,
    orthogonal: bool,
    eta_zero: bool,
    routes_agree: bool,
    degree_one: bool,
}

fn eta_at<F: Field>(a: &SparseMat, t: &Rational) -> Result<EtaAtT<F>, CliffordError> {
    let op = model_l::<F>(a, t)?;
    let m = op.m();
    let (kp, delta) = kernel_and_parity(&op, 1)?;
    if kp.ker_dim != 1 {
        return Err(CliffordError::Singular);
    }
    let sector = GaussianSector::new(m, 1)?;
    let x = omega_skew::<F>(m);
    let psi_form = x.apply(&delta);
    let two = F::from_i64(2);
    let scale = delta.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let orthogonal = F::negligible(&(dot(&psi_form, &delta) * two), scale * scale);
    let eta_zero = psi_form.iter().all(|v| F::negligible(v, scale));
    if eta_zero {
        return Ok(EtaAtT {
            c1_squared: F::zero(),
            orthogonal,
            eta_zero,
            routes_agree: true,
            degree_one: true,
        });
    }
    let l = l_tilde(&op, &sector);
    let d = d_tilde(&op, &sector)?;
    let psi = sector.constant(&psi_form);
    let forms = sector.forms();
    let dd = dot(&delta, &delta);
    let project = |mut v: Vec<F>| {
        let c = dot(&v[..forms], &delta) / dd.clone();
        for (vi, di) in v[..forms].iter_mut().zip(&delta) {
            *vi = vi.clone() - c.clone() * di.clone();
        }
        v
    };
    let u = d.mul_vec(&psi);
    let eta = project(F::solve(&l, &u).ok_or(CliffordError::Singular)?);
    let pre = F::solve(&l, &psi).ok_or(CliffordError::Singular)?;
    let eta2 = project(d.mul_vec(&pre));
    let vscale = eta.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let routes_agree = eta
        .iter()
        .zip(&eta2)
        .all(|(p, q)| F::negligible(&(p.clone() - q.clone()), vscale));
    let degree_one = eta
        .iter()
        .enumerate()
        .all(|(i, v)| sector.degree_of(i) == 1 || F::negligible(v, vscale));
    let components: Vec<Vec<F>> = (0..m)
        .map(|j| {
            let mut alpha = vec![0u32; m];
            alpha[j] = 1;
            sector.component(&eta, &alpha).to_vec()
        })
        .collect();
    let moments = second_moments(&op.s, &op.t).ok_or(CliffordError::Singular)?;
    let ratio = linear_form_norm_sq(&components, &moments) / dd;
    Ok(EtaAtT {
        c1_squared: ratio * op.t.clone(),
        orthogonal,
        eta_zero,
        routes_agree,
        degree_one,
    })
}

/// `η = L⁻¹ D (½(ω₀* − ω₀) ρ)` and the constant `C₁ = ‖η‖ √T / ‖ρ‖` across `ts`.
pub fn eta_scaling<F: Field>(a: &SparseMat, ts: &[Rational]) -> Result<EtaReport, CliffordError> {
    check_ts(ts, 1)?;
    let mut points = Vec::new();
    let mut values: Vec<F> = Vec::new();
    let (mut orthogonal, mut eta_zero, mut routes, mut deg1) = (true, false, true, true);
    for t in ts {
        let r = eta_at::<F>(a, t)?;
        orthogonal &= r.orthogonal;
        eta_zero |= r.eta_zero;
        routes &= r.routes_agree;
        deg1 &= r.degree_one;
        points.push(EtaPoint {
            t: format_rational(t),
            c1_squared: r.c1_squared.to_string(),
            c1: r.c1_squared.to_f64().sqrt(),
        });
        values.push(r.c1_squared);
    }
    let constant = values.iter().all(|v| close(v, &values[0]));
    Ok(EtaReport {
        c1: points[0].c1,
        c1_squared: points[0].c1_squared.clone(),
        passed: orthogonal && routes && deg1 && constant,
        points,
        orthogonal,
        eta_zero,
        routes_agree: routes,
        degree_one: deg1,
        constant,
    })
}
