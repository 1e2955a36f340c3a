use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complexes::{betti, cone, BettiVector, GradedComplex, OmegaMap};
use crate::qlinalg::{int, Rational, SparseMat};

use super::cdga::{CdgaModel, Element, Generator};
use super::ModelError;

/// Antisymmetric structure constants `c^k_{ij}` of an `n`-dimensional Lie algebra,
/// `[e_i, e_j] = Σ_k c^k_{ij} e_k` (indices are 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(n: usize) -> Self {
        StructureConstants {
            n,
            c: vec![Rational::zero(); n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn at(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.n + i) * self.n + j
    }

    /// Sets `c^k_{ij}` and `c^k_{ji} = -c^k_{ij}`.
    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Rational) {
        assert!(i != j || v.is_zero(), "c^k_ii must vanish");
        let (a, b) = (self.at(k, i, j), self.at(k, j, i));
        self.c[b] = -v.clone();
        self.c[a] = v;
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.c[self.at(k, i, j)]
    }

    pub fn with(mut self, k: usize, i: usize, j: usize, v: Rational) -> Self {
        self.set(k, i, j, v);
        self
    }
}

/// Chevalley–Eilenberg model: degree-one generators `e1..en` with
/// `d e^k = -Σ_{i<j} c^k_{ij} e^i e^j`.
pub fn ce_complex(structure: &StructureConstants) -> Result<CdgaModel, ModelError> {
    let n = structure.dim();
    let gens: Vec<Generator> = (1..=n)
        .map(|i| Generator::new(format!("e{i}"), 1))
        .collect();
    let free = CdgaModel::new(gens.clone(), vec![Element::zero(2); n], n)?;
    let mut diffs = Vec::with_capacity(n);
    for k in 0..n {
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = structure.get(k, i, j);
                if !c.is_zero() {
                    terms.push((
                        -c.clone(),
                        vec![gens[i].name.as_str(), gens[j].name.as_str()],
                    ));
                }
            }
        }
        let e = if terms.is_empty() {
            Element::zero(2)
        } else {
            free.element(&terms)?
        };
        diffs.push(e);
    }
    CdgaModel::new(gens, diffs, n).map_err(|e| match e {
        ModelError::NotSquareZero {
            generator,
            d_squared,
        } => ModelError::JacobiViolation {
            generator,
            d_squared,
        },
        other => other,
    })
}

/// Zero-differential complex with the given dimensions and Lefschetz maps
/// `L_k : H^k -> H^{k+2}`.
pub fn formal_model(
    betti: &[usize],
    lefschetz: Vec<SparseMat>,
) -> Result<(GradedComplex, OmegaMap), ModelError> {
    let c = GradedComplex::zero(betti.to_vec());
    let w = OmegaMap::new(&c, lefschetz).map_err(|e| ModelError::ShapeMismatch(e.to_string()))?;
    Ok((c, w))
}

/// Graded tensor product of two CDGAs; generators of `b` follow those of `a`.
/// Clashing names in `b` get a `'` suffix.
pub fn tensor_product(a: &CdgaModel, b: &CdgaModel) -> CdgaModel {
    let offset = a.generators().len();
    let mut gens: Vec<Generator> = a.generators().to_vec();
    for g in b.generators() {
        let mut g = g.clone();
        while gens.iter().any(|h| h.name == g.name) {
            g.name.push('\'');
        }
        gens.push(g);
    }
    let mut diffs: Vec<Element> = (0..offset)
        .map(|i| a.generator_differential(i).clone())
        .collect();
    diffs.extend(
        (0..b.generators().len())
            .map(|i| CdgaModel::shift_element(b.generator_differential(i), offset)),
    );
    CdgaModel::new(gens, diffs, a.manifold_dim() + b.manifold_dim())
        .expect("tensor product of differential algebras is a differential algebra")
}

/// Complex-level graded tensor product:
/// `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy` and `L = L_a⊗1 + 1⊗L_b`.
/// Degree `k` is ordered by `i = 0..=k` (with `j = k - i`), each block in Kronecker order.
pub fn tensor_complexes(
    a: (&GradedComplex, &OmegaMap),
    b: (&GradedComplex, &OmegaMap),
) -> (GradedComplex, OmegaMap) {
    let (ca, wa) = a;
    let (cb, wb) = b;
    let top = ca.top_degree() + cb.top_degree();
    let pieces = |k: usize| -> Vec<(usize, usize)> {
        (0..=k)
            .filter(|&i| i <= ca.top_degree() && k - i <= cb.top_degree())
            .map(|i| (i, k - i))
            .collect()
    };
    let dims: Vec<usize> = (0..=top)
        .map(|k| {
            pieces(k)
                .iter()
                .map(|&(i, j)| ca.dims()[i] * cb.dims()[j])
                .sum()
        })
        .collect();
    let offsets = |k: usize| -> Vec<((usize, usize), usize)> {
        let mut off = 0;
        pieces(k)
            .into_iter()
            .map(|p| {
                let o = off;
                off += ca.dims()[p.0] * cb.dims()[p.1];
                (p, o)
            })
            .collect()
    };
    let map_between =
        |k: usize, shift: usize, f: &dyn Fn(usize, usize, usize, usize) -> Option<SparseMat>| {
            let rows = if k + shift <= top { dims[k + shift] } else { 0 };
            let mut m = SparseMat::zeros(rows, dims[k]);
            if k + shift > top {
                return m;
            }
            let dst = offsets(k + shift);
            for ((i, j), src_off) in offsets(k) {
                for &((ti, tj), dst_off) in &dst {
                    if let Some(block) = f(i, j, ti, tj) {
                        for (r, c, v) in block.entries() {
                            m.add_at(dst_off + r, src_off + c, v.clone());
                        }
                    }
                }
            }
            m
        };
    let id = |n: usize| SparseMat::<Rational>::identity(n);
    let d: Vec<SparseMat> = (0..=top)
        .map(|k| {
            map_between(k, 1, &|i, j, ti, tj| {
                if ti == i + 1 && tj == j && i < ca.top_degree() {
                    Some(ca.differential(i).kron(&id(cb.dims()[j])))
                } else if ti == i && tj == j + 1 && j < cb.top_degree() {
                    let sign = if i % 2 == 0 { int(1) } else { int(-1) };
                    Some(id(ca.dims()[i]).kron(cb.differential(j)).scale(&sign))
                } else {
                    None
                }
            })
        })
        .collect();
    let l: Vec<SparseMat> = (0..=top)
        .map(|k| {
            map_between(k, 2, &|i, j, ti, tj| {
                if ti == i + 2 && tj == j && i + 2 <= ca.top_degree() {
                    Some(wa.map(i).kron(&id(cb.dims()[j])))
                } else if ti == i && tj == j + 2 && j + 2 <= cb.top_degree() {
                    Some(id(ca.dims()[i]).kron(wb.map(j)))
                } else {
                    None
                }
            })
        })
        .collect();
    let c = GradedComplex::new(dims, d).expect("tensor of complexes is a complex");
    let w = OmegaMap::new(&c, l).expect("tensor of chain maps is a chain map");
    (c, w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticVerdict {
    pub closed: bool,
    pub nondegenerate: bool,
    /// `dω`, rendered.
    pub d_omega: String,
    /// `ω^n` in top degree, rendered.
    pub top_power: String,
}

impl SymplecticVerdict {
    pub fn passed(&self) -> bool {
        self.closed && self.nondegenerate
    }
}

/// Checks `dω = 0` and `ω^n ≠ 0` for `manifold_dim = 2n`.
pub fn check_symplectic(m: &CdgaModel, w: &Element) -> SymplecticVerdict {
    let dw = m.d(w);
    let n = m.manifold_dim() / 2;
    let top = if w.degree() == 2 {
        m.pow(w, n)
    } else {
        Element::zero(0)
    };
    SymplecticVerdict {
        closed: dw.is_zero() && w.degree() == 2,
        nondegenerate: !top.is_zero() && m.manifold_dim() % 2 == 0,
        d_omega: m.display(&dw),
        top_power: m.display(&top),
    }
}

/// A CDGA model together with a chosen symplectic element.
#[derive(Clone, Debug)]
pub struct SymplecticModel {
    pub name: String,
    pub model: CdgaModel,
    pub omega: Element,
}

impl SymplecticModel {
    pub fn new(name: impl Into<String>, model: CdgaModel, omega: Element) -> Self {
        SymplecticModel {
            name: name.into(),
            model,
            omega,
        }
    }

    pub fn complex(&self) -> GradedComplex {
        self.model.to_complex()
    }

    pub fn omega_map(&self) -> Result<OmegaMap, ModelError> {
        self.model.multiplication_matrix(&self.omega)
    }

    /// Betti numbers of the cone of `ω^{p+1}`.
    pub fn cone_betti(&self, p: usize) -> Result<BettiVector, ModelError> {
        let c = self.complex();
        let w = self.omega_map()?;
        let cc = cone(&c, &w, p).map_err(|e| ModelError::ShapeMismatch(e.to_string()))?;
        Ok(betti(&cc))
    }

    pub fn check(&self) -> SymplecticVerdict {
        check_symplectic(&self.model, &self.omega)
    }

    /// Product manifold with `ω = ω_a ⊗ 1 + 1 ⊗ ω_b`.
    pub fn product(&self, other: &SymplecticModel) -> SymplecticModel {
        let model = tensor_product(&self.model, &other.model);
        let offset = self.model.generators().len();
        let omega = self
            .omega
            .add(&CdgaModel::shift_element(&other.omega, offset));
        SymplecticModel {
            name: format!("{}x{}", self.name, other.name),
            model,
            omega,
        }
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["cp2", "s2xs2", "t2", "t4", "kodaira_thurston"];

fn closed_even(name: &str, max_power: u32, dim: usize) -> CdgaModel {
    CdgaModel::new(
        vec![Generator::truncated(name, 2, max_power)],
        vec![Element::zero(3)],
        dim,
    )
    .expect("truncated closed generator")
}

fn terms(m: &CdgaModel, t: &[(i64, &[&str])]) -> Element {
    let owned: Vec<(Rational, Vec<&str>)> = t.iter().map(|(c, n)| (int(*c), n.to_vec())).collect();
    m.element(&owned).expect("builtin element")
}

pub fn sphere2(name: &str) -> SymplecticModel {
    let m = closed_even(name, 1, 2);
    let omega = m.generator_element(0);
    SymplecticModel::new("s2", m, omega)
}

pub fn torus(n: usize) -> SymplecticModel {
    let m = ce_complex(&StructureConstants::zero(n)).expect("abelian");
    let pairs: Vec<[String; 2]> = (0..n / 2)
        .map(|i| [format!("e{}", 2 * i + 1), format!("e{}", 2 * i + 2)])
        .collect();
    let t: Vec<(Rational, Vec<&str>)> = pairs
        .iter()
        .map(|p| (int(1), vec![p[0].as_str(), p[1].as_str()]))
        .collect();
    let omega = m.element(&t).expect("torus form");
    SymplecticModel::new(format!("t{n}"), m, omega)
}

/// Kodaira–Thurston nilmanifold: `d e4 = sign · e2 e3`, all other
/// generators closed, with `ω = e1 e2 + e3 e4`. The builtin uses `sign = -1`.
pub fn kodaira_thurston_with_sign(sign: i64) -> SymplecticModel {
    let sc = StructureConstants::zero(4).with(3, 1, 2, int(-sign));
    let m = ce_complex(&sc).expect("Heisenberg × R satisfies Jacobi");
    let omega = terms(&m, &[(1, &["e1", "e2"]), (1, &["e3", "e4"])]);
    SymplecticModel::new("kodaira_thurston", m, omega)
}

/// One of the named example manifolds with its symplectic element.
pub fn builtin(name: &str) -> Result<SymplecticModel, ModelError> {
    let mut m = match name {
        "cp2" => {
            let m = closed_even("x", 2, 4);
            let omega = m.generator_element(0);
            SymplecticModel::new("cp2", m, omega)
        }
        "s2xs2" => sphere2("v1").product(&sphere2("v2")),
        "t2" => torus(2),
        "t4" => torus(4),
        "kodaira_thurston" => kodaira_thurston_with_sign(-1),
        other => return Err(ModelError::UnknownName(other.to_string())),
    };
    m.name = name.to_string();
    Ok(m)
}

/// The unit of the tensor product: a point, `Q` in degree 0.
pub fn point() -> CdgaModel {
    CdgaModel::new(Vec::new(), Vec::new(), 0).expect("point model")
}

/// Alternative symplectic form on the four-torus, `e1 e3 + e4 e2`.
pub fn t4_alternative_form(m: &CdgaModel) -> Element {
    terms(m, &[(1, &["e1", "e3"]), (1, &["e4", "e2"])])
}

/// `ω^n` for a formal or matrix model: the image of the degree-0 basis under `L^n`.
pub fn omega_power_from_map(c: &GradedComplex, w: &OmegaMap, n: usize) -> SparseMat {
    w.power(c, n, 0)
}
