use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::qlinalg::{int, Rational, SparseMat};

use super::extop::{
    clifford, clifford_basis, dvol_action, form_degree, hodge_star, omega_contract, omega_skew,
    omega_wedge, CliffordKind, ExtOp,
};
use super::field::Field;
use super::{CliffordError, Mode};

/// Outcome of one matrix identity. `residual` is the largest absolute entry
/// of the difference (always 0 for a passing exact check).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failing_degrees: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Car,
    Star,
    Omega,
    ComplexStructure,
    All,
}

impl CheckKind {
    fn includes(self, other: CheckKind) -> bool {
        self == CheckKind::All || self == other
    }
}

pub const EXACT_LIMIT: usize = 8;
pub const FLOAT_LIMIT: usize = 12;

pub fn check_size(m: usize, mode: Mode) -> Result<(), CliffordError> {
    let limit = match mode {
        Mode::Exact => EXACT_LIMIT,
        Mode::Float => FLOAT_LIMIT,
    };
    if m > limit {
        return Err(CliffordError::TooLarge { m, limit, mode });
    }
    Ok(())
}

fn compare<F: Field>(name: &str, lhs: &SparseMat<F>, rhs: &SparseMat<F>) -> IdentityCheck {
    let diff = lhs.sub(rhs);
    let scale = lhs.max_abs().max(rhs.max_abs());
    let mut failing: Vec<usize> = diff
        .entries()
        .filter(|(_, _, v)| !F::negligible(v, scale))
        .map(|(_, j, _)| form_degree(j % lhs.ncols().max(1)))
        .collect();
    failing.sort_unstable();
    failing.dedup();
    IdentityCheck {
        name: name.to_string(),
        passed: failing.is_empty(),
        residual: diff.max_abs(),
        failing_degrees: failing,
    }
}

fn combine(name: &str, parts: Vec<IdentityCheck>) -> IdentityCheck {
    let mut failing: Vec<usize> = parts
        .iter()
        .flat_map(|p| p.failing_degrees.clone())
        .collect();
    failing.sort_unstable();
    failing.dedup();
    IdentityCheck {
        name: name.to_string(),
        passed: parts.iter().all(|p| p.passed),
        residual: parts.iter().map(|p| p.residual).fold(0.0, f64::max),
        failing_degrees: failing,
    }
}

fn sign<F: Field>(negative: bool) -> F {
    if negative {
        -F::one()
    } else {
        F::one()
    }
}

/// Diagonal operator multiplying degree-`k` forms by `f(k)`.
fn degree_diagonal<F: Field>(m: usize, f: impl Fn(usize) -> F) -> ExtOp<F> {
    let n = 1usize << m;
    ExtOp {
        m,
        matrix: SparseMat::from_triplets(n, n, (0..n).map(|b| (b, b, f(form_degree(b))))),
    }
}

/// Anticommutation relations among all `c(e_i)` and `ĉ(e_j)`.
pub fn verify_car<F: Field>(m: usize) -> IdentityCheck {
    let c: Vec<ExtOp<F>> = (0..m)
        .map(|i| clifford_basis(m, i, CliffordKind::C))
        .collect();
    let h: Vec<ExtOp<F>> = (0..m)
        .map(|i| clifford_basis(m, i, CliffordKind::Chat))
        .collect();
    let id = ExtOp::<F>::identity(m);
    let two = F::from_i64(2);
    let zero = ExtOp::<F>::zero(m);
    let mut parts = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let delta = if i == j { id.scale(&two) } else { zero.clone() };
            if j >= i {
                let hh = h[i].compose(&h[j]).add(&h[j].compose(&h[i]));
                parts.push(compare("chat", &hh.matrix, &delta.matrix));
                let cc = c[i].compose(&c[j]).add(&c[j].compose(&c[i]));
                parts.push(compare("c", &cc.matrix, &delta.scale(&-F::one()).matrix));
            }
            let ch = c[i].compose(&h[j]).add(&h[j].compose(&c[i]));
            parts.push(compare("mixed", &ch.matrix, &zero.matrix));
        }
    }
    combine("car", parts)
}

/// `⋆ᵗ⋆ = 1` and `⋆⋆ = (-1)^{k(m-k)}` on degree `k`.
pub fn verify_star<F: Field>(m: usize) -> Result<Vec<IdentityCheck>, CliffordError> {
    let star = hodge_star::<F>(m)?;
    let iso = compare(
        "star_isometry",
        &star.transpose().compose(&star).matrix,
        &ExtOp::<F>::identity(m).matrix,
    );
    let expected = degree_diagonal::<F>(m, |k| sign((k * (m - k)) % 2 == 1));
    let sq = compare("star_square", &star.compose(&star).matrix, &expected.matrix);
    let dvol = dvol_action::<F>(m)?;
    let sym = compare("dvol_symmetric", &dvol.transpose().matrix, &dvol.matrix);
    Ok(vec![iso, sq, sym])
}

/// `ĉ(dvol) α = (-1)^{k(k+1)/2} ⋆α` for `α` of degree `k`.
pub fn verify_lemma_star<F: Field>(m: usize) -> Result<IdentityCheck, CliffordError> {
    let dvol = dvol_action::<F>(m)?;
    let star = hodge_star::<F>(m)?;
    let signs = degree_diagonal::<F>(m, |k| sign((k * (k + 1) / 2) % 2 == 1));
    Ok(compare(
        "lemma_star",
        &dvol.matrix,
        &star.compose(&signs).matrix,
    ))
}

/// `ĉ(dvol)(ω₀*⌟α) = -ω₀∧ĉ(dvol)α`, together with `(ω₀∧)ᵗ = ω₀*⌟` and the
/// skew-symmetry of `½(ω₀* - ω₀)` and of the block `diag(X, -X)` built from it.
pub fn verify_lemma_omega<F: Field>(m: usize) -> Result<Vec<IdentityCheck>, CliffordError> {
    let dvol = dvol_action::<F>(m)?;
    let w = omega_wedge::<F>(m);
    let ws = omega_contract::<F>(m);
    let lemma = compare(
        "lemma_omega",
        &dvol.compose(&ws).matrix,
        &w.compose(&dvol).scale(&-F::one()).matrix,
    );
    let adj = compare("omega_adjoint", &w.transpose().matrix, &ws.matrix);
    let x = omega_skew::<F>(m);
    let skew = compare(
        "omega_skew",
        &x.transpose().matrix,
        &x.scale(&-F::one()).matrix,
    );
    let n = x.dim();
    let neg = x.matrix.neg();
    let block = SparseMat::block(
        &[n, n],
        &[n, n],
        &[vec![Some(&x.matrix), None], vec![None, Some(&neg)]],
    );
    let mut block_check = compare("zero_order_block_skew", &block.transpose(), &block.neg());
    block_check.failing_degrees.clear();
    Ok(vec![lemma, adj, skew, block_check])
}

/// `J = [[0, 1], [1, 0]] · diag(ĉ(v), -ĉ(v))` satisfies `J² = -1` for unit `v`.
pub fn verify_complex_structure<F: Field>(
    m: usize,
    v: &[F],
) -> Result<IdentityCheck, CliffordError> {
    let norm = v
        .iter()
        .fold(F::zero(), |acc, x| acc + x.clone() * x.clone());
    let one = F::one();
    if !F::negligible(&(norm.clone() - one), 1.0) {
        return Err(CliffordError::NotUnit(norm.to_string()));
    }
    let h = clifford(m, v, CliffordKind::Chat)?;
    let n = h.dim();
    let neg = h.matrix.neg();
    let j = SparseMat::block(
        &[n, n],
        &[n, n],
        &[vec![None, Some(&neg)], vec![Some(&h.matrix), None]],
    );
    let target = SparseMat::<F>::identity(2 * n).neg();
    let mut check = compare("complex_structure", &j.mul(&j), &target);
    check.failing_degrees.clear();
    Ok(check)
}

/// Rational point on the unit sphere by inverse stereographic projection.
pub fn random_unit_vector<R: Rng>(rng: &mut R, m: usize) -> Vec<Rational> {
    let u: Vec<Rational> = (1..m)
        .map(|_| Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into()))
        .collect();
    let s = u.iter().fold(int(0), |acc, x| acc + x * x);
    let den = &s + int(1);
    let mut v = vec![(&s - int(1)) / &den];
    v.extend(u.iter().map(|x| int(2) * x / &den));
    v
}

/// Runs the requested families at `m = 4n`; complex structure uses
/// `vectors` random rational unit vectors.
pub fn run_checks<F: Field, R: Rng>(
    n: usize,
    kind: CheckKind,
    vectors: usize,
    rng: &mut R,
) -> Result<Vec<IdentityCheck>, CliffordError> {
    let m = 4 * n;
    if n == 0 {
        return Err(CliffordError::BadDimension(0));
    }
    let mut out = Vec::new();
    if kind.includes(CheckKind::Car) {
        out.push(verify_car::<F>(m));
    }
    if kind.includes(CheckKind::Star) {
        out.extend(verify_star::<F>(m)?);
        out.push(verify_lemma_star::<F>(m)?);
    }
    if kind.includes(CheckKind::Omega) {
        out.extend(verify_lemma_omega::<F>(m)?);
    }
    if kind.includes(CheckKind::ComplexStructure) {
        let mut parts = Vec::new();
        let e1: Vec<F> = super::extop::basis_vector(m, 0);
        parts.push(verify_complex_structure(m, &e1)?);
        for _ in 0..vectors {
            let v: Vec<F> = random_unit_vector(rng, m)
                .iter()
                .map(F::from_rational)
                .collect();
            parts.push(verify_complex_structure(m, &v)?);
        }
        out.push(combine("complex_structure", parts));
    }
    Ok(out)
}
