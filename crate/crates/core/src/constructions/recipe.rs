//! Construction recipes as structured text, e.g.
//! `{"construct":"cayley-dickson","mu":["-1","-1","1"],"field":{"kind":"Q"}}`.

use serde::{Deserialize, Serialize};

use super::*;
use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

fn default_field() -> FieldSpec {
    FieldSpec::Rationals
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Recipe {
    Matrix {
        n: usize,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    JordanSym {
        n: usize,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    JordanPlus {
        n: usize,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    BilinearForm {
        form: Vec<Vec<String>>,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    CayleyDickson {
        mu: Vec<String>,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    /// `cross` lists `[i, j, k, coefficient]` for `v_i x v_j`, indices from 0.
    Quadratic {
        form: Vec<Vec<String>>,
        #[serde(default)]
        cross: Vec<(usize, usize, usize, String)>,
        #[serde(default)]
        names: Option<Vec<String>>,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    TruncatedPoly {
        vars: usize,
        cap: usize,
        #[serde(default = "yes")]
        unital: bool,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    /// `bracket` lists `[i, j, k, coefficient]` meaning `{e_i, e_j}` has
    /// `coefficient` at `e_k`; give only `i < j`.
    Kokoris {
        base: Box<Recipe>,
        #[serde(default)]
        bracket: Vec<(usize, usize, usize, String)>,
    },
    /// `c` lists `[i, j, coordinates]` for `c_ij` with `i < j` (variables from 0).
    PoissonPoly {
        vars: usize,
        cap: usize,
        #[serde(default)]
        c: Vec<(usize, usize, Vec<String>)>,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    Mutation {
        base: Box<Recipe>,
        lambda: String,
    },
    Plus {
        base: Box<Recipe>,
    },
    Minus {
        base: Box<Recipe>,
    },
    UnitalHull {
        base: Box<Recipe>,
    },
    ScalarExtension {
        base: Box<Recipe>,
        field: FieldSpec,
    },
    FreeNilpotent {
        gens: usize,
        max_degree: usize,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
    /// `quaternions`, `octonions`, `split-octonions`, `kokoris-example`,
    /// `kokoris-nilpotent`, `h2`, `m2`.
    Preset {
        name: String,
        #[serde(default = "default_field")]
        field: FieldSpec,
    },
}

fn scalars(field: FieldSpec, v: &[String]) -> Result<Vec<crate::field::Scalar>> {
    v.iter().map(|s| field.parse_scalar(s)).collect()
}

fn form(field: FieldSpec, rows: &[Vec<String>]) -> Result<Vec<Vec<crate::field::Scalar>>> {
    rows.iter().map(|r| scalars(field, r)).collect()
}

pub fn preset(name: &str, field: FieldSpec) -> Result<StructureAlgebra> {
    match name {
        "quaternions" => Ok(quaternions(field)?.into_algebra()),
        "octonions" => Ok(octonions(field)?.into_algebra()),
        "split-octonions" => Ok(split_octonions(field)?.into_algebra()),
        "kokoris-example" => kokoris_example(field),
        "kokoris-nilpotent" => kokoris_nilpotent_example(field),
        "h2" => jordan_sym(2, field),
        "m2" => matrix_algebra(2, field),
        other => Err(Error::InvalidConstruction(format!(
            "unknown preset '{other}'"
        ))),
    }
}

impl Recipe {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn build(&self) -> Result<StructureAlgebra> {
        match self {
            Recipe::Matrix { n, field } => matrix_algebra(*n, *field),
            Recipe::JordanSym { n, field } => jordan_sym(*n, *field),
            Recipe::JordanPlus { n, field } => jordan_plus(*n, *field),
            Recipe::BilinearForm { form: f, field } => {
                bilinear_form_jordan(&form(*field, f)?, *field)
            }
            Recipe::CayleyDickson { mu, field } => {
                Ok(cayley_dickson_tower(*field, &scalars(*field, mu)?)?.into_algebra())
            }
            Recipe::Quadratic {
                form: f,
                cross,
                names,
                field,
            } => {
                let fm = form(*field, f)?;
                let n = fm.len();
                let mut cr = vec![vec![vec![field.zero(); n]; n]; n];
                for (i, j, k, c) in cross {
                    if *i >= n || *j >= n || *k >= n {
                        return Err(Error::InvalidConstruction(format!(
                            "cross entry ({i}, {j}, {k}) out of range"
                        )));
                    }
                    cr[*i][*j][*k] += &field.parse_scalar(c)?;
                }
                let data = match names {
                    Some(names) => QuadraticData::with_names(*field, fm, cr, names.clone())?,
                    None => QuadraticData::new(*field, fm, cr)?,
                };
                quadratic_algebra(&data)
            }
            Recipe::TruncatedPoly {
                vars,
                cap,
                unital,
                field,
            } => truncated_polynomial(*vars, *cap, *field, *unital),
            Recipe::Kokoris { base, bracket } => {
                let base = base.build()?;
                let f = base.field();
                let n = base.dim();
                let mut upper: Vec<(usize, usize, Element)> = Vec::new();
                for (i, j, k, c) in bracket {
                    if *k >= n {
                        return Err(Error::InvalidConstruction(format!(
                            "bracket target {k} out of range"
                        )));
                    }
                    let v = Element::basis(f, n, *k).scale(&f.parse_scalar(c)?);
                    match upper.iter_mut().find(|(a, b, _)| a == i && b == j) {
                        Some((_, _, acc)) => *acc = &*acc + &v,
                        None => upper.push((*i, *j, v)),
                    }
                }
                kokoris_from_poisson(&PoissonData::from_upper(base, &upper)?)
            }
            Recipe::PoissonPoly {
                vars,
                cap,
                c,
                field,
            } => {
                let base = truncated_polynomial(*vars, *cap, *field, true)?;
                let mut table = vec![vec![base.zero(); *vars]; *vars];
                for (i, j, coords) in c {
                    if i >= j || *j >= *vars {
                        return Err(Error::InvalidConstruction(format!(
                            "c entry ({i}, {j}) must satisfy i < j < {vars}"
                        )));
                    }
                    let v = base.element_from(scalars(*field, coords)?)?;
                    table[*j][*i] = -&v;
                    table[*i][*j] = v;
                }
                kokoris_from_poisson(&poisson_polynomial_truncated(*field, *vars, *cap, &table)?)
            }
            Recipe::Mutation { base, lambda } => {
                let a = base.build()?;
                let l = a.field().parse_scalar(lambda)?;
                a.mutation(&l)
            }
            Recipe::Plus { base } => base.build()?.plus(),
            Recipe::Minus { base } => base.build()?.minus(),
            Recipe::UnitalHull { base } => base.build()?.unital_hull(),
            Recipe::ScalarExtension { base, field } => scalar_extension(&base.build()?, *field),
            Recipe::FreeNilpotent {
                gens,
                max_degree,
                field,
            } => free_nilpotent(*gens, *max_degree, *field),
            Recipe::Preset { name, field } => preset(name, *field),
        }
    }
}
