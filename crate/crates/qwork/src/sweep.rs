//! Batch evaluation: angle sweeps of the cyclic qubit rotation family and
//! grids of states pushed through one scheme.
//!
//! These are the data-parallel entry points: with the `parallel` feature the
//! points fan out over rayon, without it they run sequentially. The `_seq`
//! twins are always sequential and exist so benchmarks (and tests) can
//! compare the two paths; both orders of evaluation give identical results.

use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::matrix::DensityMatrix;
use crate::par;
use crate::process::{builtin_process, ProcessKind};
use crate::schemes::{
    evaluate_povm, evaluate_povm_raw, qubit_lambda_closed_form, qubit_probabilities_closed_form,
    two_copy_povm, WorkPovm,
};
use crate::stats::WorkDistribution;

/// One sweep sample: solver and closed-form lambda, plus numeric and
/// closed-form outcome probabilities of the two-copy scheme on the probe
/// state. Closed-form probabilities exist for alpha in [0, pi/4].
#[derive(Debug, Clone)]
pub struct AlphaSweepPoint {
    pub alpha: f64,
    pub lambda: f64,
    pub lambda_closed_form: f64,
    pub probabilities: [f64; 4],
    pub probabilities_closed_form: Option<[f64; 4]>,
}

/// Evenly spaced grid over [from, to] with a half-step offset, so endpoint
/// singularities (multiples of pi/2, where the closed form degenerates) are
/// never sampled exactly.
pub fn alpha_grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Param("sweep needs at least one step".into()));
    }
    if !from.is_finite() || !to.is_finite() || to <= from {
        return Err(Error::Param(format!("invalid sweep range [{from}, {to}]")));
    }
    let width = (to - from) / steps as f64;
    Ok((0..steps).map(|k| from + (k as f64 + 0.5) * width).collect())
}

/// Default grid: `steps` points across (0, pi/2).
pub fn default_alpha_grid(steps: usize) -> Result<Vec<f64>> {
    alpha_grid(0.0, std::f64::consts::FRAC_PI_2, steps)
}

fn sweep_point(alpha: f64, rho: &DensityMatrix) -> Result<AlphaSweepPoint> {
    let process = builtin_process(ProcessKind::RotationCyclic { alpha })?;
    let (povm, lr) = two_copy_povm(&process)?;
    let raw = evaluate_povm_raw(&povm, rho)?;
    let probabilities = [
        raw[0].probability,
        raw[1].probability,
        raw[2].probability,
        raw[3].probability,
    ];
    let probabilities_closed_form = if (0.0..=std::f64::consts::FRAC_PI_4).contains(&alpha) {
        Some(qubit_probabilities_closed_form(alpha, rho)?)
    } else {
        None
    };
    Ok(AlphaSweepPoint {
        alpha,
        lambda: lr.lambda,
        lambda_closed_form: qubit_lambda_closed_form(alpha).value(),
        probabilities,
        probabilities_closed_form,
    })
}

/// Sweep the cyclic qubit rotation over the given angles, probing with `rho`.
pub fn alpha_sweep(alphas: &[f64], rho: &DensityMatrix) -> Result<Vec<AlphaSweepPoint>> {
    if rho.dim() != 2 {
        return Err(Error::Dimension { expected: 2, got: rho.dim() });
    }
    par::map_collect(alphas, |&alpha| sweep_point(alpha, rho))
        .into_iter()
        .collect()
}

/// Always-sequential version of [`alpha_sweep`].
pub fn alpha_sweep_seq(alphas: &[f64], rho: &DensityMatrix) -> Result<Vec<AlphaSweepPoint>> {
    if rho.dim() != 2 {
        return Err(Error::Dimension { expected: 2, got: rho.dim() });
    }
    par::map_collect_seq(alphas, |&alpha| sweep_point(alpha, rho))
        .into_iter()
        .collect()
}

/// CSV of the sweep: closed-form probability columns read `nan` where the
/// closed form does not apply.
pub fn sweep_to_csv(points: &[AlphaSweepPoint]) -> String {
    let mut out = String::from(
        "alpha,lambda,lambda_closed_form,p00,p01,p10,p11,p00_closed,p01_closed,p10_closed,p11_closed\n",
    );
    for pt in points {
        out.push_str(&fmt_sig(pt.alpha));
        out.push(',');
        out.push_str(&fmt_sig(pt.lambda));
        out.push(',');
        out.push_str(&fmt_sig(pt.lambda_closed_form));
        for p in pt.probabilities {
            out.push(',');
            out.push_str(&fmt_sig(p));
        }
        match pt.probabilities_closed_form {
            Some(ps) => {
                for p in ps {
                    out.push(',');
                    out.push_str(&fmt_sig(p));
                }
            }
            None => out.push_str(",nan,nan,nan,nan"),
        }
        out.push('\n');
    }
    out
}

/// Evaluate one scheme over a grid of states.
pub fn evaluate_povm_batch(
    povm: &WorkPovm,
    states: &[DensityMatrix],
) -> Result<Vec<WorkDistribution>> {
    par::map_collect(states, |rho| evaluate_povm(povm, rho))
        .into_iter()
        .collect()
}

/// Always-sequential version of [`evaluate_povm_batch`].
pub fn evaluate_povm_batch_seq(
    povm: &WorkPovm,
    states: &[DensityMatrix],
) -> Result<Vec<WorkDistribution>> {
    par::map_collect_seq(states, |rho| evaluate_povm(povm, rho))
        .into_iter()
        .collect()
}
