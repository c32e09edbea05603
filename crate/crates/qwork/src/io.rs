//! Wire formats: process and state specs in JSON, distributions in CSV and
//! JSON, lambda reports, and certificate payloads.
//!
//! Complex scalars serialize as two-element `[re, im]` arrays and matrices as
//! row-major nested arrays. Every emitter is deterministic: identical inputs
//! produce byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::matrix::{all_finite, CMatrix, C64, DensityMatrix, HermitianOperator, UnitaryOperator};
use crate::nogo::NoGoCertificate;
use crate::process::{
    basis_state, builtin_unitary, maximally_coherent_state, thermal_state, Process, ProcessKind,
    UnitaryKind,
};
use crate::schemes::{LambdaResult, RawOutcome};
use crate::stats::WorkDistribution;

/// Row-major nested-array form of a complex matrix.
pub type NestedMatrix = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_nested(m: &CMatrix) -> NestedMatrix {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

pub fn nested_to_matrix(v: &NestedMatrix) -> Result<CMatrix> {
    let rows = v.len();
    if rows == 0 {
        return Err(Error::Param("matrix must have at least one row".into()));
    }
    let cols = v[0].len();
    if v.iter().any(|row| row.len() != cols) {
        return Err(Error::Param("matrix rows have inconsistent lengths".into()));
    }
    let m = CMatrix::from_fn(rows, cols, |r, c| C64::new(v[r][c][0], v[r][c][1]));
    if !all_finite(&m) {
        return Err(Error::Param("matrix has non-finite entries".into()));
    }
    Ok(m)
}

/// A Hamiltonian given either as a full matrix or by its diagonal.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Diag { diag: Vec<f64> },
    Matrix(NestedMatrix),
}

/// An evolution given as a matrix or by builtin name and parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitarySpec {
    Builtin {
        builtin: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
    },
    Matrix(NestedMatrix),
}

/// JSON schema of a process: dimension, the two Hamiltonians, and the
/// evolution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub dim: usize,
    #[serde(rename = "H")]
    pub h: OperatorSpec,
    #[serde(rename = "H_final")]
    pub h_final: OperatorSpec,
    #[serde(rename = "U")]
    pub u: UnitarySpec,
}

/// JSON schema of a state: builtin name + parameters, or an explicit matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Builtin {
        builtin: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
    },
    Matrix { matrix: NestedMatrix },
}

fn take_param(params: &BTreeMap<String, f64>, key: &str, what: &str) -> Result<f64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Param(format!("{what} requires parameter '{key}'")))
}

fn reject_unknown(params: &BTreeMap<String, f64>, allowed: &[&str], what: &str) -> Result<()> {
    for key in params.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::Param(format!("unknown parameter '{key}' for {what}")));
        }
    }
    Ok(())
}

fn operator_from_spec(spec: &OperatorSpec, dim: usize) -> Result<HermitianOperator> {
    let m = match spec {
        OperatorSpec::Diag { diag } => {
            if diag.len() != dim {
                return Err(Error::Dimension { expected: dim, got: diag.len() });
            }
            if diag.iter().any(|x| !x.is_finite()) {
                return Err(Error::Param("diagonal has non-finite entries".into()));
            }
            return Ok(HermitianOperator::from_diagonal(diag));
        }
        OperatorSpec::Matrix(nested) => nested_to_matrix(nested)?,
    };
    if m.nrows() != dim {
        return Err(Error::Dimension { expected: dim, got: m.nrows() });
    }
    HermitianOperator::new(m)
}

fn unitary_from_spec(spec: &UnitarySpec, dim: usize) -> Result<UnitaryOperator> {
    match spec {
        UnitarySpec::Matrix(nested) => {
            let m = nested_to_matrix(nested)?;
            if m.nrows() != dim {
                return Err(Error::Dimension { expected: dim, got: m.nrows() });
            }
            UnitaryOperator::new(m)
        }
        UnitarySpec::Builtin { builtin, params } => {
            let kind = match builtin.as_str() {
                "rotation" => {
                    reject_unknown(params, &["alpha"], "rotation")?;
                    UnitaryKind::Rotation { alpha: take_param(params, "alpha", "rotation")? }
                }
                "near_identity" => {
                    reject_unknown(params, &["eps"], "near_identity")?;
                    UnitaryKind::NearIdentity { eps: take_param(params, "eps", "near_identity")? }
                }
                "dft" => {
                    reject_unknown(params, &["d"], "dft")?;
                    let d = params.get("d").map(|&x| x as usize).unwrap_or(dim);
                    if d != dim {
                        return Err(Error::Dimension { expected: dim, got: d });
                    }
                    UnitaryKind::Dft { dim }
                }
                "swap_to_coherent" => {
                    reject_unknown(params, &[], "swap_to_coherent")?;
                    UnitaryKind::SwapToCoherent
                }
                other => return Err(Error::Param(format!("unknown builtin unitary '{other}'"))),
            };
            let u = builtin_unitary(kind)?;
            if u.dim() != dim {
                return Err(Error::Dimension { expected: dim, got: u.dim() });
            }
            Ok(u)
        }
    }
}

/// Materialize a process from its JSON spec.
pub fn process_from_spec(spec: &ProcessSpec) -> Result<Process> {
    if spec.dim == 0 {
        return Err(Error::Param("process dimension must be >= 1".into()));
    }
    let h = operator_from_spec(&spec.h, spec.dim)?;
    let h_final = operator_from_spec(&spec.h_final, spec.dim)?;
    let u = unitary_from_spec(&spec.u, spec.dim)?;
    Process::new(h, h_final, u)
}

/// Spec with fully explicit matrices; re-ingesting reproduces the same
/// operators bit for bit.
pub fn process_to_spec(process: &Process) -> ProcessSpec {
    ProcessSpec {
        dim: process.dim(),
        h: OperatorSpec::Matrix(matrix_to_nested(process.hamiltonian().matrix())),
        h_final: OperatorSpec::Matrix(matrix_to_nested(process.hamiltonian_final().matrix())),
        u: UnitarySpec::Matrix(matrix_to_nested(process.unitary().matrix())),
    }
}

/// Materialize a state; thermal and coherent builtins take their Hamiltonian
/// and dimension from the process.
pub fn state_from_spec(spec: &StateSpec, process: &Process) -> Result<DensityMatrix> {
    match spec {
        StateSpec::Matrix { matrix } => {
            let m = nested_to_matrix(matrix)?;
            if m.nrows() != process.dim() {
                return Err(Error::Dimension { expected: process.dim(), got: m.nrows() });
            }
            DensityMatrix::new(m)
        }
        StateSpec::Builtin { builtin, params } => match builtin.as_str() {
            "thermal" => {
                reject_unknown(params, &["beta"], "thermal state")?;
                thermal_state(process.hamiltonian(), take_param(params, "beta", "thermal state")?)
            }
            "basis" => {
                reject_unknown(params, &["k"], "basis state")?;
                let k = take_param(params, "k", "basis state")?;
                if k < 0.0 || k.fract() != 0.0 {
                    return Err(Error::Param(format!("basis index {k} must be a whole number")));
                }
                basis_state(k as usize, process.dim())
            }
            "maximally_coherent" => {
                reject_unknown(params, &[], "maximally_coherent state")?;
                maximally_coherent_state(process.dim())
            }
            other => Err(Error::Param(format!("unknown builtin state '{other}'"))),
        },
    }
}

/// Builtin whole-process families addressable from the command line.
pub fn process_kind_from_name(name: &str, params: &BTreeMap<String, f64>) -> Result<ProcessKind> {
    match name {
        "dft_cyclic" => {
            reject_unknown(params, &["d"], "dft_cyclic")?;
            let d = take_param(params, "d", "dft_cyclic")?;
            if d < 2.0 || d.fract() != 0.0 {
                return Err(Error::Param(format!("dft_cyclic dimension {d} must be an integer >= 2")));
            }
            Ok(ProcessKind::DftCyclic { dim: d as usize })
        }
        "rotation_cyclic" => {
            reject_unknown(params, &["alpha"], "rotation_cyclic")?;
            Ok(ProcessKind::RotationCyclic { alpha: take_param(params, "alpha", "rotation_cyclic")? })
        }
        "near_identity_cyclic" => {
            reject_unknown(params, &["eps"], "near_identity_cyclic")?;
            Ok(ProcessKind::NearIdentityCyclic { eps: take_param(params, "eps", "near_identity_cyclic")? })
        }
        "coherent_swap" => {
            reject_unknown(params, &["eps", "eps_prime"], "coherent_swap")?;
            Ok(ProcessKind::CoherentSwap {
                eps: take_param(params, "eps", "coherent_swap")?,
                eps_prime: take_param(params, "eps_prime", "coherent_swap")?,
            })
        }
        other => Err(Error::Param(format!("unknown builtin process '{other}'"))),
    }
}

/// Format with 12 significant digits, shortest decimal form.
pub fn fmt_sig(x: f64) -> String {
    const SIG: i32 = 12;
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let scale = SIG - 1 - x.abs().log10().floor() as i32;
    let factor = 10f64.powi(scale);
    let rounded = (x * factor).round() / factor;
    format!("{rounded}")
}

/// CSV with header `work,probability`, one row per outcome, work first.
pub fn distribution_to_csv(dist: &WorkDistribution) -> String {
    let mut out = String::from("work,probability\n");
    for (w, p) in dist.iter() {
        out.push_str(&fmt_sig(w));
        out.push(',');
        out.push_str(&fmt_sig(p));
        out.push('\n');
    }
    out
}

/// Sorted `[work, probability]` pairs.
pub fn distribution_to_json(dist: &WorkDistribution) -> serde_json::Value {
    json!(dist.iter().map(|(w, p)| json!([w, p])).collect::<Vec<_>>())
}

pub fn distribution_from_json(value: &serde_json::Value) -> Result<WorkDistribution> {
    let pairs: Vec<(f64, f64)> = serde_json::from_value(value.clone())
        .map_err(|e| Error::Param(format!("distribution JSON: {e}")))?;
    WorkDistribution::from_pairs(&pairs, 0.0)
}

pub fn lambda_result_to_json(lr: &LambdaResult) -> serde_json::Value {
    json!({
        "lambda": lr.lambda,
        "binding_pair": lr.binding_pair.map(|(i, j)| json!([i, j])),
        "offdiag_min_eigenvalues": lr.offdiag_min_eigenvalues,
        "collapsed_to_tpm": lr.collapsed_to_tpm,
    })
}

pub fn raw_outcomes_to_json(raw: &[RawOutcome]) -> serde_json::Value {
    json!(raw
        .iter()
        .map(|o| json!({"i": o.i, "j": o.j, "work": o.work, "probability": o.probability}))
        .collect::<Vec<_>>())
}

/// Certificate payload: kind, witness numbers, verdict, and diagnostics
/// (including the operators involved, when the kind has them).
pub fn certificate_to_json(cert: &NoGoCertificate) -> serde_json::Value {
    let mut details = serde_json::Map::new();
    for (k, v) in &cert.details {
        details.insert(k.clone(), v.clone());
    }
    if let Some(op) = &cert.required_operator {
        details.insert("required_operator".into(), json!(matrix_to_nested(op)));
    }
    if let Some(op) = &cert.achievable_operator {
        details.insert("achievable_operator".into(), json!(matrix_to_nested(op)));
    }
    json!({
        "kind": cert.kind.as_str(),
        "gap": cert.gap,
        "bound_lhs": cert.bound_lhs,
        "bound_rhs": cert.bound_rhs,
        "verdict": cert.verdict.as_str(),
        "details": details,
    })
}
