//! JSON reports. Key order follows struct field order, so identical inputs
//! give identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use so3five_core::analysis::{Check, QCheck, StructureReport};
use so3five_core::multilinear::{blades, mask_indices, DIM};
use so3five_core::structure::{CurvatureDecomposition, TorsionTensor};
use so3five_core::{Field, KVector, Mode, Scalar, Tensor2};

pub const TOOL: &str = "so3five";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact values as grammar strings, floats as JSON numbers.
pub fn scalar<F: Field>(x: &F) -> Value {
    match Scalar::from_field(x) {
        Scalar::Exact(q) => Value::String(q.to_string()),
        Scalar::Float(v) => {
            let v = if v == 0.0 { 0.0 } else { v };
            serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
        }
    }
}

fn vector<F: Field>(v: &KVector<F>) -> Vec<Value> {
    v.coeffs().iter().map(scalar).collect()
}

/// Components keyed by 1-based blade labels such as "245".
fn form<F: Field>(v: &KVector<F>) -> BTreeMap<String, Value> {
    blades(v.degree())
        .iter()
        .zip(v.coeffs())
        .map(|(m, c)| {
            let label: String = mask_indices(*m).iter().map(|i| char::from(b'1' + *i as u8)).collect();
            (label, scalar(c))
        })
        .collect()
}

fn matrix<F: Field>(t: &Tensor2<F>) -> Vec<Vec<Value>> {
    (0..DIM).map(|i| (0..DIM).map(|j| scalar(t.get(i, j))).collect()).collect()
}

#[derive(Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub scalar_mode: &'static str,
    /// Residuals at or below this count as zero; 0 in exact mode.
    pub tolerance: f64,
}

impl Header {
    pub fn new(mode: Mode, tol: f64) -> Self {
        Header {
            tool: TOOL,
            version: VERSION,
            scalar_mode: mode.name(),
            tolerance: if mode == Mode::Exact { 0.0 } else { tol },
        }
    }
}

#[derive(Serialize)]
struct CheckDoc {
    holds: bool,
    residual: Value,
}

impl CheckDoc {
    fn new<F: Field>(c: &Check<F>) -> Self {
        CheckDoc {
            holds: c.holds,
            residual: scalar(&c.residual),
        }
    }
}

#[derive(Serialize)]
struct WitnessDoc {
    kappa: usize,
    sigma: BTreeMap<String, Value>,
    xi: Vec<Value>,
    x: Vec<Value>,
    value: Value,
}

#[derive(Serialize)]
struct QDoc {
    holds: bool,
    residual: Value,
    reduction_valid: bool,
    witness: Option<WitnessDoc>,
}

impl QDoc {
    fn new<F: Field>(q: &QCheck<F>, tol: f64) -> Self {
        QDoc {
            holds: q.holds,
            residual: scalar(&q.residual),
            reduction_valid: q.reduction_valid,
            witness: q.witness.as_ref().map(|w| WitnessDoc {
                kappa: w.kappa + 1,
                sigma: form(&w.sigma),
                xi: so3five_core::twistor::xi(&w.sigma, tol).map_or_else(|_| Vec::new(), |v| vector(&v)),
                x: vector(&w.x),
                value: scalar(&w.value),
            }),
        }
    }
}

#[derive(Serialize)]
struct Conditions {
    star_t_in_l23: CheckDoc,
    s9_vanishes: CheckDoc,
    l27_vanishes: CheckDoc,
    q_vanishes: QDoc,
}

#[derive(Serialize)]
struct Probe {
    residual: Value,
    agrees: bool,
}

#[derive(Serialize)]
struct Verdict {
    normal: bool,
    cr_integrable: bool,
    failing_condition: Option<&'static str>,
    chi_killing_t: Option<Value>,
}

#[derive(Serialize)]
pub struct ReportDocument {
    #[serde(flatten)]
    header: Header,
    verdict: Verdict,
    conditions: Conditions,
    star_t: BTreeMap<String, Value>,
    nijenhuis_probe: Probe,
}

impl ReportDocument {
    pub fn new<F: Field>(header: Header, t: &TorsionTensor<F>, r: &StructureReport<F>) -> Self {
        ReportDocument {
            verdict: Verdict {
                normal: r.normal,
                cr_integrable: r.cr_integrable,
                failing_condition: r.failing_condition(),
                chi_killing_t: r.chi_killing_t.as_ref().map(scalar),
            },
            conditions: Conditions {
                star_t_in_l23: CheckDoc::new(&r.star_t_in_l23),
                s9_vanishes: CheckDoc::new(&r.s9_vanishes),
                l27_vanishes: CheckDoc::new(&r.l27_vanishes),
                q_vanishes: QDoc::new(&r.q_vanishes, header.tolerance),
            },
            star_t: form(&t.star()),
            nijenhuis_probe: Probe {
                residual: scalar(&r.probe_residual),
                agrees: r.probe_agrees,
            },
            header,
        }
    }
}

#[derive(Serialize)]
struct DecompositionDoc {
    a: BTreeMap<String, Value>,
    rho_minus: Vec<Vec<Value>>,
    s: Value,
    eta: Vec<Vec<Value>>,
}

#[derive(Serialize)]
pub struct DecomposeDocument {
    #[serde(flatten)]
    header: Header,
    decomposition: DecompositionDoc,
    /// |Ψ⁻¹(Ψ(𝒦)) − 𝒦|² (Frobenius).
    reconstruction_residual: Value,
}

impl DecomposeDocument {
    pub fn new<F: Field>(header: Header, d: &CurvatureDecomposition<F>, residual: &F) -> Self {
        DecomposeDocument {
            header,
            decomposition: DecompositionDoc {
                a: form(&d.a),
                rho_minus: matrix(&d.rho_minus),
                s: scalar(&d.s),
                eta: matrix(&d.eta),
            },
            reconstruction_residual: scalar(residual),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}
