//! Model, census and matrix inputs: `builtin:NAME` references and JSON/text files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{CensusError, ZeroCensus};
use crate::complexes::{ComplexError, GradedComplex, OmegaMap};
use crate::models::{
    builtin, check_symplectic, omega_power_from_map, CdgaModel, Element, Generator, ModelError,
    SymplecticVerdict,
};
use crate::qlinalg::{
    format_rational, int, parse_rational, ParseRationalError, Rational, SparseMat,
};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Row-major matrix of rational strings.
pub type MatrixRows = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelFile {
    Matrix {
        dims: Vec<usize>,
        d: Vec<MatrixRows>,
        #[serde(default)]
        omega: Vec<MatrixRows>,
        manifold_dim: usize,
    },
    Cdga {
        manifold_dim: usize,
        generators: Vec<GeneratorSpec>,
        #[serde(default)]
        differential: BTreeMap<String, Vec<TermSpec>>,
        omega: Vec<TermSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_power: Option<u32>,
}

/// `(coefficient, generator names)`.
pub type TermSpec = (String, Vec<String>);

/// A model ready for the cone pipeline.
#[derive(Clone, Debug)]
pub struct PreparedModel {
    pub name: String,
    pub complex: GradedComplex,
    pub omega: OmegaMap,
    pub manifold_dim: usize,
    pub symplectic: SymplecticVerdict,
    /// The symplectic element, when the model is a CDGA.
    pub omega_terms: Option<Vec<TermSpec>>,
}

fn parse_matrix(
    rows: &MatrixRows,
    nrows: usize,
    ncols: usize,
    what: &str,
) -> Result<SparseMat, InputError> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(InputError::Shape(format!("{what} must be {nrows}x{ncols}")));
    }
    let mut m = SparseMat::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, parse_rational(s)?);
        }
    }
    Ok(m)
}

fn matrix_to_rows(m: &SparseMat) -> MatrixRows {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn element_from_terms(
    m: &CdgaModel,
    terms: &[TermSpec],
    what: &str,
) -> Result<Element, InputError> {
    let parsed: Vec<(Rational, Vec<&str>)> = terms
        .iter()
        .map(|(c, names)| {
            Ok((
                parse_rational(c)?,
                names.iter().map(String::as_str).collect(),
            ))
        })
        .collect::<Result<_, InputError>>()?;
    if parsed.is_empty() {
        return Err(InputError::Shape(format!("{what} has no terms")));
    }
    Ok(m.element(&parsed)?)
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Matrix-mode description of a prepared model.
    pub fn from_prepared(p: &PreparedModel) -> ModelFile {
        let dims = p.complex.dims().to_vec();
        let top = p.complex.top_degree();
        ModelFile::Matrix {
            d: (0..top)
                .map(|k| matrix_to_rows(p.complex.differential(k)))
                .collect(),
            omega: (0..top.saturating_sub(1))
                .map(|k| matrix_to_rows(p.omega.map(k)))
                .collect(),
            dims,
            manifold_dim: p.manifold_dim,
        }
    }

    pub fn prepare(&self, name: &str) -> Result<PreparedModel, InputError> {
        match self {
            ModelFile::Matrix {
                dims,
                d,
                omega,
                manifold_dim,
            } => {
                let n = dims.len();
                if n == 0 {
                    return Err(InputError::Shape("dims is empty".into()));
                }
                if d.len() > n || omega.len() > n {
                    return Err(InputError::Shape("too many matrices for dims".into()));
                }
                let dim = |k: usize| dims.get(k).copied().unwrap_or(0);
                let dm = d
                    .iter()
                    .enumerate()
                    .map(|(k, rows)| parse_matrix(rows, dim(k + 1), dim(k), &format!("d[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let c = GradedComplex::new(dims.clone(), dm)?;
                let om = omega
                    .iter()
                    .enumerate()
                    .map(|(k, rows)| parse_matrix(rows, dim(k + 2), dim(k), &format!("omega[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let w = OmegaMap::new(&c, om)?;
                let half = manifold_dim / 2;
                let top = omega_power_from_map(&c, &w, half);
                let symplectic = SymplecticVerdict {
                    closed: true,
                    nondegenerate: manifold_dim % 2 == 0 && !top.is_zero(),
                    d_omega: "0".into(),
                    top_power: if top.is_zero() {
                        "0".into()
                    } else {
                        "nonzero".into()
                    },
                };
                Ok(PreparedModel {
                    name: name.to_string(),
                    complex: c,
                    omega: w,
                    manifold_dim: *manifold_dim,
                    symplectic,
                    omega_terms: None,
                })
            }
            ModelFile::Cdga {
                manifold_dim,
                generators,
                differential,
                omega,
            } => {
                let gens: Vec<Generator> = generators
                    .iter()
                    .map(|g| match g.max_power {
                        Some(p) => Generator::truncated(g.name.clone(), g.degree, p),
                        None => Generator::new(g.name.clone(), g.degree),
                    })
                    .collect();
                for key in differential.keys() {
                    if !generators.iter().any(|g| &g.name == key) {
                        return Err(ModelError::UnknownGenerator(key.clone()).into());
                    }
                }
                let free = CdgaModel::new(
                    gens.clone(),
                    gens.iter().map(|g| Element::zero(g.degree + 1)).collect(),
                    *manifold_dim,
                )?;
                let diffs = gens
                    .iter()
                    .map(|g| match differential.get(&g.name) {
                        Some(t) if !t.is_empty() => {
                            element_from_terms(&free, t, &format!("d{}", g.name))
                        }
                        _ => Ok(Element::zero(g.degree + 1)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let m = CdgaModel::new(gens, diffs, *manifold_dim)?;
                let w = element_from_terms(&m, omega, "omega")?;
                let symplectic = check_symplectic(&m, &w);
                let omega_map = m.multiplication_matrix(&w)?;
                Ok(PreparedModel {
                    name: name.to_string(),
                    complex: m.to_complex(),
                    omega: omega_map,
                    manifold_dim: *manifold_dim,
                    symplectic,
                    omega_terms: Some(m.terms_of(&w)),
                })
            }
        }
    }
}

/// Resolves `builtin:NAME` or a path to a model file.
pub fn load_model(input: &str) -> Result<PreparedModel, InputError> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let sm = builtin(name)?;
        let omega = sm.omega_map()?;
        return Ok(PreparedModel {
            name: input.to_string(),
            complex: sm.complex(),
            omega,
            manifold_dim: sm.model.manifold_dim(),
            symplectic: sm.check(),
            omega_terms: Some(sm.model.terms_of(&sm.omega)),
        });
    }
    let path = Path::new(input);
    ModelFile::parse(&read(path)?)?.prepare(input)
}

pub fn load_census(path: &Path) -> Result<ZeroCensus, InputError> {
    let c: ZeroCensus = serde_json::from_str(&read(path)?)?;
    c.validate()?;
    Ok(c)
}

/// Square matrix from whitespace-separated rational rows (`#` starts a comment).
pub fn parse_matrix_rows(text: &str) -> Result<SparseMat, InputError> {
    let rows: Vec<Vec<Rational>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(parse_rational)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(InputError::Shape(
            "matrix must be square and nonempty".into(),
        ));
    }
    Ok(SparseMat::from_dense(n, n, &rows))
}

/// `identity:N`, `diag:a,b,…`, or a path to a rows file.
pub fn load_matrix(input: &str) -> Result<SparseMat, InputError> {
    if let Some(n) = input.strip_prefix("identity:") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| InputError::Shape(format!("bad size {n:?}")))?;
        return Ok(SparseMat::identity(n));
    }
    if let Some(list) = input.strip_prefix("diag:") {
        let v: Vec<Rational> = list
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<_, _>>()?;
        let n = v.len();
        return Ok(SparseMat::from_triplets(
            n,
            n,
            v.into_iter().enumerate().map(|(i, x)| (i, i, x)),
        ));
    }
    parse_matrix_rows(&read(Path::new(input))?)
}

/// Rational `T` values from strings.
pub fn parse_ts(values: &[String]) -> Result<Vec<Rational>, InputError> {
    values
        .iter()
        .map(|s| Ok(parse_rational(s.trim())?))
        .collect()
}

pub fn default_ts() -> Vec<Rational> {
    vec![int(1), int(10), int(100)]
}
