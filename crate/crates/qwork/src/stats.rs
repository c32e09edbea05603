//! Work-distribution analytics: moments, the Jarzynski identity under the
//! extraction sign convention, mixture-linearity probes, and seeded sampling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::DensityMatrix;
use crate::process::Process;
use crate::schemes::{self, SchemeKind};

/// Probability-sum tolerance for a valid distribution.
pub const PROB_SUM_TOL: f64 = 1e-10;
/// Individual probabilities are clamped to zero down to this value.
pub const PROB_CLAMP_TOL: f64 = 1e-10;

/// A finite distribution over work values: strictly increasing support with
/// matching positive probabilities summing to one. Outcomes whose probability
/// is exactly zero after clamping are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkDistribution {
    support: Vec<f64>,
    probabilities: Vec<f64>,
}

impl WorkDistribution {
    /// Build from raw (work, probability) pairs, coalescing work values that
    /// agree within `coalesce_tol`.
    pub fn from_pairs(pairs: &[(f64, f64)], coalesce_tol: f64) -> Result<Self> {
        let mut sorted: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for &(w, p) in pairs {
            if !w.is_finite() || !p.is_finite() {
                return Err(Error::Validation("non-finite work or probability".into()));
            }
            if p < -PROB_CLAMP_TOL {
                return Err(Error::Validation(format!(
                    "probability {p:.3e} below the clamping tolerance"
                )));
            }
            sorted.push((w, p.max(0.0)));
        }
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut support = Vec::new();
        let mut probabilities: Vec<f64> = Vec::new();
        for (w, p) in sorted {
            match support.last() {
                Some(&last) if w - last <= coalesce_tol => {
                    *probabilities.last_mut().unwrap() += p;
                }
                _ => {
                    support.push(w);
                    probabilities.push(p);
                }
            }
        }
        // Drop zero-probability outcomes after coalescing.
        let mut kept_support = Vec::new();
        let mut kept_probs = Vec::new();
        for (w, p) in support.into_iter().zip(probabilities) {
            if p > 0.0 {
                kept_support.push(w);
                kept_probs.push(p);
            }
        }
        let total: f64 = kept_probs.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::Validation(format!(
                "probabilities sum to {total}, expected 1 within {PROB_SUM_TOL:.0e}"
            )));
        }
        Ok(Self { support: kept_support, probabilities: kept_probs })
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support.iter().copied().zip(self.probabilities.iter().copied())
    }

    /// Probability of the outcome matching `work` within `tol`.
    pub fn probability_of(&self, work: f64, tol: f64) -> f64 {
        self.iter()
            .find(|&(w, _)| (w - work).abs() <= tol)
            .map(|(_, p)| p)
            .unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        moment(self, 1)
    }
}

/// k-th raw moment sum_i p_i W_i^k.
pub fn moment(dist: &WorkDistribution, k: u32) -> f64 {
    assert!(k >= 1, "moment order must be >= 1");
    dist.iter().map(|(w, p)| p * w.powi(k as i32)).sum()
}

/// Jarzynski identity under the extraction convention: with thermal initial
/// state at inverse temperature beta, the left side sum_ij q_i p_ij
/// exp(+beta W_ij) equals Z'/Z for every unitary evolution.
pub fn jarzynski_check(process: &Process, beta: f64) -> Result<(f64, f64)> {
    if beta.is_nan() || beta < 0.0 || !beta.is_finite() {
        return Err(Error::Param(format!(
            "inverse temperature {beta} must be finite and >= 0"
        )));
    }
    let e = process.hamiltonian().eigenvalues();
    let e_final = process.hamiltonian_final().eigenvalues();
    let dim = process.dim();

    let e0 = e[0];
    let weights: Vec<f64> = e.iter().map(|&x| (-beta * (x - e0)).exp()).collect();
    let z: f64 = weights.iter().sum();

    let p = schemes::transition_matrix(process);
    let mut lhs = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let w = process.work_table().work(i, j, dim);
            lhs += weights[i] / z * p[(i, j)] * (beta * w).exp();
        }
    }
    // rhs = Z'/Z with both partition functions shifted by e0 so the ratio
    // stays stable for large beta.
    let z_shifted: f64 = z;
    let z_final: f64 = e_final.iter().map(|&x| (-beta * (x - e0)).exp()).sum();
    Ok((lhs, z_final / z_shifted))
}

/// Maximum deviation, over raw (i, j) outcomes, between the scheme applied to
/// the mixture p rho1 + (1-p) rho2 and the mixture of the schemes applied to
/// rho1 and rho2.
///
/// Zero (to numerical precision) for every single-copy scheme; the two-copy
/// scheme can break it, which is exactly what makes coherent work accessible.
pub fn linearity_test(
    scheme: SchemeKind,
    process: &Process,
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    p: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Param(format!("mixing weight {p} outside [0, 1]")));
    }
    let povm = schemes::build_scheme(scheme, process)?;
    let mixed = rho1.mix(rho2, p)?;
    let on_mix = schemes::evaluate_povm_raw(&povm, &mixed)?;
    let on_1 = schemes::evaluate_povm_raw(&povm, rho1)?;
    let on_2 = schemes::evaluate_povm_raw(&povm, rho2)?;
    let mut max_dev = 0.0f64;
    for ((a, b), c) in on_mix.iter().zip(&on_1).zip(&on_2) {
        let dev = (a.probability - p * b.probability - (1.0 - p) * c.probability).abs();
        max_dev = max_dev.max(dev);
    }
    Ok(max_dev)
}

/// Draw n i.i.d. work values by inverse-CDF sampling over the sorted support.
///
/// The generator is pinned to ChaCha8 seeded with `seed`, so identical calls
/// produce identical output on every platform.
pub fn sample(dist: &WorkDistribution, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cdf = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for (_, p) in dist.iter() {
        acc += p;
        cdf.push(acc);
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let idx = cdf.partition_point(|&c| c <= u).min(dist.len().saturating_sub(1));
        out.push(dist.support()[idx]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{basis_state, builtin_process, maximally_coherent_state, ProcessKind};

    fn dist(pairs: &[(f64, f64)]) -> WorkDistribution {
        WorkDistribution::from_pairs(pairs, 1e-9).unwrap()
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment(&dist(&[(0.0, 1.0)]), 1), 0.0);
        assert_eq!(moment(&dist(&[(-1.0, 0.5), (1.0, 0.5)]), 2), 1.0);
    }

    #[test]
    fn moment_of_tpm_distribution_on_coherent_swap() {
        let p = builtin_process(ProcessKind::CoherentSwap { eps: 1.0, eps_prime: 1.0 }).unwrap();
        let d = crate::schemes::tpm_distribution(&p, &basis_state(0, 2).unwrap()).unwrap();
        assert!((moment(&d, 1) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn distribution_coalesces_and_drops_zeros() {
        let d = dist(&[(1.0, 0.25), (0.0, 0.5), (1.0 + 1e-12, 0.25), (-3.0, 0.0)]);
        assert_eq!(d.support(), &[0.0, 1.0]);
        assert_eq!(d.probabilities(), &[0.5, 0.5]);
    }

    #[test]
    fn distribution_rejects_bad_input() {
        assert!(WorkDistribution::from_pairs(&[(0.0, 0.7)], 1e-9).is_err());
        assert!(WorkDistribution::from_pairs(&[(0.0, -1e-3), (1.0, 1.0)], 1e-9).is_err());
        assert!(WorkDistribution::from_pairs(&[(f64::NAN, 1.0)], 1e-9).is_err());
    }

    #[test]
    fn jarzynski_cyclic_is_trivial() {
        let p = builtin_process(ProcessKind::RotationCyclic { alpha: 0.9 }).unwrap();
        let (lhs, rhs) = jarzynski_check(&p, 1.0).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        assert!((rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jarzynski_example_value() {
        use crate::matrix::HermitianOperator;
        use crate::process::{builtin_unitary, Process, UnitaryKind};
        let p = Process::new(
            HermitianOperator::from_diagonal(&[0.0, 1.0]),
            HermitianOperator::from_diagonal(&[0.0, 2.0]),
            builtin_unitary(UnitaryKind::Dft { dim: 2 }).unwrap(),
        )
        .unwrap();
        let (lhs, rhs) = jarzynski_check(&p, 1.0).unwrap();
        let expect = (1.0 + (-2.0f64).exp()) / (1.0 + (-1.0f64).exp());
        assert!((rhs - expect).abs() < 1e-14);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn jarzynski_infinite_temperature() {
        let p = builtin_process(ProcessKind::DftCyclic { dim: 3 }).unwrap();
        let (lhs, rhs) = jarzynski_check(&p, 0.0).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        assert!((rhs - 1.0).abs() < 1e-12);
        assert!(jarzynski_check(&p, -0.5).is_err());
    }

    #[test]
    fn tpm_scheme_is_linear() {
        let p = builtin_process(ProcessKind::DftCyclic { dim: 2 }).unwrap();
        let r1 = maximally_coherent_state(2).unwrap();
        let r2 = basis_state(0, 2).unwrap();
        let dev = linearity_test(SchemeKind::Tpm, &p, &r1, &r2, 0.5).unwrap();
        assert!(dev < 1e-12);
    }

    #[test]
    fn two_copy_scheme_breaks_linearity_by_one_sixteenth() {
        let p = builtin_process(ProcessKind::DftCyclic { dim: 2 }).unwrap();
        let r1 = maximally_coherent_state(2).unwrap();
        let r2 = basis_state(0, 2).unwrap();
        let dev = linearity_test(SchemeKind::TwoCopy, &p, &r1, &r2, 0.5).unwrap();
        assert!((dev - 1.0 / 16.0).abs() < 1e-10, "dev = {dev}");
    }

    #[test]
    fn two_copy_scheme_linear_on_diagonal_states() {
        let p = builtin_process(ProcessKind::DftCyclic { dim: 2 }).unwrap();
        let r1 = basis_state(0, 2).unwrap();
        let r2 = basis_state(1, 2).unwrap();
        let dev = linearity_test(SchemeKind::TwoCopy, &p, &r1, &r2, 0.3).unwrap();
        assert!(dev < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_and_degenerate_cases_work() {
        let d = dist(&[(0.0, 1.0)]);
        assert_eq!(sample(&d, 10, 7), vec![0.0; 10]);

        let d = dist(&[(-1.0, 0.5), (0.0, 0.5)]);
        assert!(sample(&d, 0, 7).is_empty());
        assert_eq!(sample(&d, 100, 7), sample(&d, 100, 7));
        assert_ne!(sample(&d, 100, 7), sample(&d, 100, 8));
    }

    #[test]
    fn sampling_mean_within_five_sigma() {
        let d = dist(&[(-1.0, 0.25), (0.0, 0.5), (2.0, 0.25)]);
        let n = 40_000;
        let draws = sample(&d, n, 1234);
        let mean: f64 = draws.iter().sum::<f64>() / n as f64;
        let exact = d.mean();
        let var = moment(&d, 2) - exact * exact;
        let bound = 5.0 * (var / n as f64).sqrt();
        assert!((mean - exact).abs() < bound, "mean {mean} vs {exact} (bound {bound})");
    }
}
