//! The structure file: torsion and curvature components in JSON.
//!
//! ```json
//! {
//!   "scalar_mode": "exact",
//!   "parameters": { "t": "1" },
//!   "torsion": [ { "i": 1, "j": 2, "k": 4, "value": "t" } ],
//!   "curvature": { "kind": "rank_one_kappa3", "coefficient": "2*t^2" },
//!   "frame": null
//! }
//! ```
//!
//! Indices are 1-based. A `"matrix"` curvature gives `rows`, a 10×10 array
//! whose entry [a][b] is the a-th component of 𝒦(b-th basis bivector), with
//! bivectors e₁∧e₂, e₁∧e₃, …, e₄∧e₅ in lexicographic order. An optional
//! `frame` lists five rows, the vectors of an adapted frame in standard
//! coordinates; the components are then read in that frame.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;
use so3five_core::examples::StructureData;
use so3five_core::multilinear::DIM;
use so3five_core::representation::Frame;
use so3five_core::scalar::parse_expr;
use so3five_core::structure::{CurvatureMap, TorsionTensor};
use so3five_core::{Field, KVector, Matrix, Mode, Scalar};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureInput {
    pub scalar_mode: ModeName,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    #[serde(default)]
    pub torsion: Vec<TorsionEntry>,
    pub curvature: CurvatureInput,
    #[serde(default)]
    pub frame: Option<Vec<Vec<Value>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Exact,
    Float,
}

impl ModeName {
    pub fn mode(self) -> Mode {
        match self {
            ModeName::Exact => Mode::Exact,
            ModeName::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Value,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurvatureInput {
    Matrix { rows: Vec<Vec<Value>> },
    RankOneKappa3 { coefficient: Value },
}

pub fn parse_input(text: &str) -> Result<StructureInput, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid structure file: {e}")))
}

struct Ctx {
    mode: Mode,
    params: BTreeMap<String, Scalar>,
}

impl Ctx {
    fn scalar<F: Field>(&self, v: &Value, at: &str) -> Result<F, CliError> {
        let s = match v {
            Value::String(s) => parse_expr(s, self.mode, &self.params),
            Value::Number(n) => parse_expr(&n.to_string(), self.mode, &self.params),
            _ => return Err(CliError::Input(format!("{at}: expected a scalar string or number"))),
        };
        s.and_then(|s| s.to_field::<F>())
            .map_err(|e| CliError::Input(format!("{at}: {e}")))
    }
}

/// Loads the file's data over F; the caller has matched F to the declared mode.
pub fn load<F: Field>(input: &StructureInput, tol: f64) -> Result<StructureData<F>, CliError> {
    let mode = input.scalar_mode.mode();
    let mut ctx = Ctx {
        mode,
        params: BTreeMap::new(),
    };
    for (name, v) in &input.parameters {
        let val = match v {
            Value::String(s) => parse_expr(s, mode, &ctx.params),
            Value::Number(n) => parse_expr(&n.to_string(), mode, &ctx.params),
            _ => return Err(CliError::Input(format!("parameters.{name}: expected a scalar"))),
        }
        .map_err(|e| CliError::Input(format!("parameters.{name}: {e}")))?;
        ctx.params.insert(name.clone(), val);
    }

    let mut form = KVector::<F>::zero(3);
    for (n, e) in input.torsion.iter().enumerate() {
        let at = format!("torsion[{n}]");
        if !(1 <= e.i && e.i < e.j && e.j < e.k && e.k <= DIM) {
            return Err(CliError::Input(format!(
                "{at}: indices must satisfy 1 <= i < j < k <= 5, got ({}, {}, {})",
                e.i, e.j, e.k
            )));
        }
        let v: F = ctx.scalar(&e.value, &format!("{at}.value"))?;
        form = &form + &KVector::blade(&[e.i - 1, e.j - 1, e.k - 1]).scale(&v);
    }

    let curvature = match &input.curvature {
        CurvatureInput::RankOneKappa3 { coefficient } => {
            CurvatureMap::rank_one_kappa3(&ctx.scalar::<F>(coefficient, "curvature.coefficient")?)
        }
        CurvatureInput::Matrix { rows } => {
            let m = square(&ctx, rows, 10, "curvature.rows")?;
            CurvatureMap::new(m, tol).map_err(|e| CliError::Input(e.to_string()))?
        }
    };

    match &input.frame {
        None => Ok(StructureData {
            torsion: TorsionTensor::from_form(form).map_err(|e| CliError::Input(e.to_string()))?,
            curvature,
        }),
        Some(rows) => {
            let m = square::<F>(&ctx, rows, DIM, "frame")?;
            let vectors: Vec<KVector<F>> = (0..DIM).map(|i| KVector::from_slice(&m.row(i))).collect();
            let frame = Frame::new(vectors.clone(), tol).map_err(|e| CliError::Input(format!("frame: {e}")))?;
            if !frame.status().adapted {
                return Err(CliError::Input("frame: not an adapted frame".into()));
            }
            Ok(StructureData {
                torsion: TorsionTensor::from_form(to_standard(&form, &vectors))
                    .map_err(|e| CliError::Input(e.to_string()))?,
                curvature: curvature.change_frame(&m.transpose()),
            })
        }
    }
}

fn square<F: Field>(ctx: &Ctx, rows: &[Vec<Value>], n: usize, at: &str) -> Result<Matrix<F>, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("{at}: expected a {n}×{n} array")));
    }
    let mut out = Vec::with_capacity(n);
    for (a, r) in rows.iter().enumerate() {
        let row = r
            .iter()
            .enumerate()
            .map(|(b, v)| ctx.scalar(v, &format!("{at}[{a}][{b}]")))
            .collect::<Result<Vec<F>, _>>()?;
        out.push(row);
    }
    Ok(Matrix::from_rows(out))
}

/// Σ c_{ijk} fᵢ∧fⱼ∧fₖ for a 3-form with components c in the frame f.
fn to_standard<F: Field>(form: &KVector<F>, f: &[KVector<F>]) -> KVector<F> {
    let mut out = KVector::zero(3);
    for i in 0..DIM {
        for j in i + 1..DIM {
            for k in j + 1..DIM {
                let c = form.component(&[i, j, k]);
                if !c.is_zero() {
                    out = &out + &(&(&f[i] ^ &f[j]) ^ &f[k]).scale(&c);
                }
            }
        }
    }
    out
}
