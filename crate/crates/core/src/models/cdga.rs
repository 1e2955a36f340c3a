use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complexes::{GradedComplex, OmegaMap};
use crate::qlinalg::{format_rational, Rational, SparseMat};

use super::ModelError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Truncation `g^{max_power+1} = 0`. Odd generators always square to zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_power: Option<u32>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            max_power: None,
        }
    }

    pub fn truncated(name: impl Into<String>, degree: u32, max_power: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            max_power: Some(max_power),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A product of generators, stored as the sorted list of generator indices
/// (even generators may repeat). Ordering is lexicographic in the indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// Rational combination of monomials of one fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero(degree: u32) -> Self {
        Element {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(&m) + c;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(
            self.degree, other.degree,
            "adding elements of different degree"
        );
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut out = Element::zero(self.degree);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Rational::one()))
    }
}

/// Free graded-commutative algebra on the generators (odd ones exterior, even
/// ones polynomial up to a power cap) with a Leibniz differential.
#[derive(Clone, Debug)]
pub struct CdgaModel {
    generators: Vec<Generator>,
    differential: Vec<Element>,
    manifold_dim: usize,
    basis: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
}

impl CdgaModel {
    /// `differential[i]` is `d` of generator `i`; it must have degree
    /// `degree(i) + 1`. Even generators without a declared cap are capped at
    /// power `manifold_dim`. Truncated even generators must be closed.
    pub fn new(
        generators: Vec<Generator>,
        differential: Vec<Element>,
        manifold_dim: usize,
    ) -> Result<Self, ModelError> {
        if differential.len() != generators.len() {
            return Err(ModelError::ShapeMismatch(format!(
                "{} generators but {} differentials",
                generators.len(),
                differential.len()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(ModelError::BadGenerator(format!("{} has degree 0", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(ModelError::BadGenerator(format!(
                    "duplicate name {}",
                    g.name
                )));
            }
        }
        let mut model = CdgaModel {
            generators,
            differential: Vec::new(),
            manifold_dim,
            basis: Vec::new(),
            index: HashMap::new(),
        };
        model.enumerate_basis();
        for (i, dg) in differential.iter().enumerate() {
            let g = &model.generators[i];
            if !dg.is_zero() && dg.degree != g.degree + 1 {
                return Err(ModelError::DegreeMismatch {
                    generator: g.name.clone(),
                    expected: g.degree + 1,
                    found: dg.degree,
                });
            }
            if g.max_power.is_some() && !g.is_odd() && !dg.is_zero() {
                return Err(ModelError::BadGenerator(format!(
                    "truncated generator {} must be closed",
                    g.name
                )));
            }
        }
        model.differential = differential
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                if e.is_zero() {
                    Element::zero(model.generators[i].degree + 1)
                } else {
                    e
                }
            })
            .collect();
        for i in 0..model.generators.len() {
            let dd = model.d(&model.differential[i]);
            if !dd.is_zero() {
                return Err(ModelError::NotSquareZero {
                    generator: model.generators[i].name.clone(),
                    d_squared: model.display(&dd),
                });
            }
        }
        Ok(model)
    }

    fn power_cap(&self, i: usize) -> usize {
        let g = &self.generators[i];
        if g.is_odd() {
            1
        } else {
            g.max_power.map_or(self.manifold_dim, |p| p as usize)
        }
    }

    fn enumerate_basis(&mut self) {
        let mut all: Vec<(u32, Monomial)> = Vec::new();
        let mut current = Vec::new();
        self.collect_monomials(0, 0, &mut current, &mut all);
        let top = all.iter().map(|(d, _)| *d as usize).max().unwrap_or(0);
        let mut basis = vec![Vec::new(); top + 1];
        for (d, m) in all {
            basis[d as usize].push(m);
        }
        for b in basis.iter_mut() {
            b.sort();
        }
        self.index = basis
            .iter()
            .flat_map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)))
            .collect();
        self.basis = basis;
    }

    fn collect_monomials(
        &self,
        gen: usize,
        degree: u32,
        current: &mut Vec<usize>,
        out: &mut Vec<(u32, Monomial)>,
    ) {
        if gen == self.generators.len() {
            out.push((degree, Monomial(current.clone())));
            return;
        }
        let deg = self.generators[gen].degree;
        for power in 0..=self.power_cap(gen) {
            let before = current.len();
            current.extend(std::iter::repeat(gen).take(power));
            self.collect_monomials(gen + 1, degree + deg * power as u32, current, out);
            current.truncate(before);
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_differential(&self, i: usize) -> &Element {
        &self.differential[i]
    }

    pub fn manifold_dim(&self) -> usize {
        self.manifold_dim
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self, degree: usize) -> &[Monomial] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().map(|&i| self.generators[i].degree).sum()
    }

    /// Product of two monomials with its Koszul sign, or `None` if it vanishes.
    pub fn monomial_product(&self, x: &Monomial, y: &Monomial) -> Option<(i64, Monomial)> {
        let mut inversions = 0usize;
        for &a in &x.0 {
            if !self.generators[a].is_odd() {
                continue;
            }
            for &b in &y.0 {
                if self.generators[b].is_odd() && a > b {
                    inversions += 1;
                }
            }
        }
        let mut merged = Vec::with_capacity(x.0.len() + y.0.len());
        merged.extend_from_slice(&x.0);
        merged.extend_from_slice(&y.0);
        merged.sort_unstable();
        for w in merged.chunk_by(|a, b| a == b) {
            if w.len() > self.power_cap(w[0]) {
                return None;
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(merged)))
    }

    /// Monomial from a list of generator names in any order, with the sign of
    /// the reordering. `None` if it vanishes in the algebra.
    pub fn monomial_from_names(
        &self,
        names: &[&str],
    ) -> Result<Option<(i64, Monomial)>, ModelError> {
        let mut acc = (1i64, Monomial::unit());
        for n in names {
            let i = self
                .generator_index(n)
                .ok_or_else(|| ModelError::UnknownGenerator(n.to_string()))?;
            match self.monomial_product(&acc.1, &Monomial::generator(i)) {
                Some((s, m)) => acc = (acc.0 * s, m),
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// Builds an element from `(coefficient, generator names)` terms.
    pub fn element(&self, terms: &[(Rational, Vec<&str>)]) -> Result<Element, ModelError> {
        let mut degree = None;
        let mut out = Element::zero(0);
        for (c, names) in terms {
            let mut deg = 0;
            for n in names {
                let i = self
                    .generator_index(n)
                    .ok_or_else(|| ModelError::UnknownGenerator(n.to_string()))?;
                deg += self.generators[i].degree;
            }
            match degree {
                None => {
                    degree = Some(deg);
                    out.degree = deg;
                }
                Some(d) if d != deg => {
                    return Err(ModelError::DegreeMismatch {
                        generator: names.join(""),
                        expected: d,
                        found: deg,
                    })
                }
                _ => {}
            }
            if let Some((s, m)) = self.monomial_from_names(names)? {
                out.add_term(m, c * Rational::from_integer(s.into()));
            }
        }
        Ok(out)
    }

    pub fn generator_element(&self, i: usize) -> Element {
        let mut e = Element::zero(self.generators[i].degree);
        e.add_term(Monomial::generator(i), Rational::one());
        e
    }

    pub fn unit(&self) -> Element {
        let mut e = Element::zero(0);
        e.add_term(Monomial::unit(), Rational::one());
        e
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero(a.degree + b.degree);
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                if let Some((s, m)) = self.monomial_product(x, y) {
                    out.add_term(m, cx * cy * Rational::from_integer(s.into()));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Element, n: usize) -> Element {
        (0..n).fold(self.unit(), |acc, _| self.mul(&acc, a))
    }

    /// Leibniz extension: `d(g·r) = dg·r + (-1)^{|g|} g·dr`.
    pub fn d_monomial(&self, m: &Monomial) -> Element {
        let deg = self.monomial_degree(m) + 1;
        let Some((&first, rest)) = m.0.split_first() else {
            return Element::zero(1);
        };
        let rest = Monomial(rest.to_vec());
        let mut rest_el = Element::zero(self.monomial_degree(&rest));
        rest_el.add_term(rest.clone(), Rational::one());
        let g = self.generator_element(first);
        let left = self.mul(&self.differential[first], &rest_el);
        let mut right = self.mul(&g, &self.d_monomial(&rest));
        if self.generators[first].is_odd() {
            right = right.scale(&-Rational::one());
        }
        let mut out = Element::zero(deg);
        for e in [left, right] {
            for (mono, c) in e.terms {
                out.add_term(mono, c);
            }
        }
        out
    }

    pub fn d(&self, a: &Element) -> Element {
        let mut out = Element::zero(a.degree + 1);
        for (m, c) in &a.terms {
            for (mono, v) in self.d_monomial(m).terms {
                out.add_term(mono, v * c);
            }
        }
        out
    }

    /// Coordinates of an element in the degree basis.
    pub fn coordinates(&self, a: &Element) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.basis(a.degree as usize).len()];
        for (m, c) in &a.terms {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Element of the given degree with the given basis coordinates.
    pub fn from_coordinates(&self, degree: u32, coords: &[Rational]) -> Element {
        let mut e = Element::zero(degree);
        for (m, c) in self.basis(degree as usize).iter().zip(coords) {
            e.add_term(m.clone(), c.clone());
        }
        e
    }

    /// Matrix of `x ↦ f(x)` from degree `k` to degree `k + shift`.
    fn degree_matrix(&self, k: usize, shift: usize, f: impl Fn(&Monomial) -> Element) -> SparseMat {
        let src = self.basis(k);
        let dst_len = self.basis(k + shift).len();
        let mut m = SparseMat::zeros(dst_len, src.len());
        for (j, mono) in src.iter().enumerate() {
            for (img, c) in f(mono).terms {
                m.set(self.index[&img], j, c);
            }
        }
        m
    }

    pub fn to_complex(&self) -> GradedComplex {
        let dims: Vec<usize> = self.basis.iter().map(Vec::len).collect();
        let d = (0..self.basis.len())
            .map(|k| self.degree_matrix(k, 1, |m| self.d_monomial(m)))
            .collect();
        GradedComplex::new(dims, d).expect("Leibniz differential squares to zero")
    }

    /// Left multiplication by `w` as per-degree matrices; requires `dw = 0`.
    pub fn multiplication_matrix(&self, w: &Element) -> Result<OmegaMap, ModelError> {
        if w.degree != 2 {
            return Err(ModelError::NotDegreeTwo(w.degree));
        }
        let dw = self.d(w);
        if !dw.is_zero() {
            return Err(ModelError::NotClosed {
                d_omega: self.display(&dw),
            });
        }
        let c = self.to_complex();
        let maps = (0..self.basis.len())
            .map(|k| {
                self.degree_matrix(k, 2, |m| {
                    let mut x = Element::zero(self.monomial_degree(m));
                    x.add_term(m.clone(), Rational::one());
                    self.mul(w, &x)
                })
            })
            .collect();
        Ok(OmegaMap::new(&c, maps).expect("closed even form commutes with d"))
    }

    pub fn display(&self, a: &Element) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(m, c)| {
                let name = if m.0.is_empty() {
                    "1".to_string()
                } else {
                    m.0.iter()
                        .map(|&i| self.generators[i].name.as_str())
                        .collect::<Vec<_>>()
                        .join("·")
                };
                if c.is_one() {
                    name
                } else {
                    format!("{}*{}", format_rational(c), name)
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Serializable `(coefficient, names)` form of an element.
    pub fn terms_of(&self, a: &Element) -> Vec<(String, Vec<String>)> {
        a.terms
            .iter()
            .map(|(m, c)| {
                (
                    format_rational(c),
                    m.0.iter()
                        .map(|&i| self.generators[i].name.clone())
                        .collect(),
                )
            })
            .collect()
    }

    /// Same element with all generator indices shifted, for embedding into a
    /// tensor product where this model's generators start at `offset`.
    pub(crate) fn shift_element(a: &Element, offset: usize) -> Element {
        Element {
            degree: a.degree,
            terms: a
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial(m.0.iter().map(|i| i + offset).collect()),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
