//! Measurement schemes for work: the two-projective-measurement (TPM) POVM,
//! the T_j decomposition of the evolved energy projectors, the exact
//! lambda-positivity maximization, and the two-copy collective POVM that
//! interpolates between TPM statistics (lambda = 0) and the exact average
//! work (lambda = 1).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{
    identity, min_eigenvalue, tensor, tensor_power, trace_product, CMatrix, C64, DensityMatrix,
    HermitianOperator, ORTHO_TOL, PSD_TOL,
};
use crate::process::Process;
use crate::stats::WorkDistribution;

/// Off-diagonal parts with Frobenius norm below this are treated as absent,
/// leaving lambda unconstrained.
pub const VANISHING_OFFDIAG_TOL: f64 = 1e-12;

/// One labeled POVM element: outcome (i, j), its work value W_ij, and the
/// measurement operator on the full (possibly multi-copy) space.
#[derive(Debug, Clone)]
pub struct PovmElement {
    pub i: usize,
    pub j: usize,
    pub work: f64,
    pub op: CMatrix,
}

/// A positive measurement resolving work outcomes on `copies` copies of a
/// d-dimensional system: every element is PSD within tolerance and the
/// elements sum to the identity within `ORTHO_TOL` (Frobenius).
#[derive(Debug, Clone)]
pub struct WorkPovm {
    copies: usize,
    dim: usize,
    coalesce_tol: f64,
    elements: Vec<PovmElement>,
}

impl WorkPovm {
    /// Validate POVM axioms and wrap the element list.
    pub fn new(
        copies: usize,
        dim: usize,
        coalesce_tol: f64,
        elements: Vec<PovmElement>,
    ) -> Result<Self> {
        let total = dim.pow(copies as u32);
        let mut sum = CMatrix::zeros(total, total);
        for el in &elements {
            if el.op.nrows() != total || el.op.ncols() != total {
                return Err(Error::Dimension { expected: total, got: el.op.nrows() });
            }
            let min = min_eigenvalue(&el.op)?;
            if min < -PSD_TOL {
                return Err(Error::Validation(format!(
                    "POVM element ({}, {}) has minimal eigenvalue {min:.3e}",
                    el.i, el.j
                )));
            }
            sum += &el.op;
        }
        let completeness = (&sum - identity(total)).norm();
        if completeness > ORTHO_TOL {
            return Err(Error::Validation(format!(
                "POVM elements sum to identity only within {completeness:.3e}"
            )));
        }
        Ok(Self { copies, dim, coalesce_tol, elements })
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Single-copy dimension d; elements act on d^copies.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_dim(&self) -> usize {
        self.dim.pow(self.copies as u32)
    }

    pub fn coalesce_tol(&self) -> f64 {
        self.coalesce_tol
    }

    /// Elements in lexicographic (i, j) order.
    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }
}

/// Doubly stochastic transition matrix p[i][j] = |<j'|U|i>|^2.
pub fn transition_matrix(process: &Process) -> DMatrix<f64> {
    let dim = process.dim();
    let up = process.u_prime();
    DMatrix::from_fn(dim, dim, |i, j| up[(j, i)].norm_sqr())
}

/// The TPM scheme as a single-copy POVM: M_ij = p_ij |i><i|.
pub fn tpm_povm(process: &Process) -> Result<WorkPovm> {
    let dim = process.dim();
    let p = transition_matrix(process);
    let basis = process.initial_basis();
    let mut elements = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let col = basis.column(i);
        let proj = col * col.adjoint();
        for j in 0..dim {
            elements.push(PovmElement {
                i,
                j,
                work: process.work_table().work(i, j, dim),
                op: proj.scale(p[(i, j)]),
            });
        }
    }
    WorkPovm::new(1, dim, process.work_table().coalesce_tol(), elements)
}

/// TPM work distribution: P(W_ij) = rho_ii p_ij, with equal work values
/// coalesced.
pub fn tpm_distribution(process: &Process, rho: &DensityMatrix) -> Result<WorkDistribution> {
    if rho.dim() != process.dim() {
        return Err(Error::Dimension { expected: process.dim(), got: rho.dim() });
    }
    let dim = process.dim();
    let p = transition_matrix(process);
    let basis = process.initial_basis();
    let rho_frame = basis.adjoint() * rho.matrix() * basis;
    let mut pairs = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let pop = rho_frame[(i, i)].re;
        for j in 0..dim {
            pairs.push((process.work_table().work(i, j, dim), pop * p[(i, j)]));
        }
    }
    WorkDistribution::from_pairs(&pairs, process.work_table().coalesce_tol())
}

/// T_j = U^dag |j'><j'| U split into its diagonal and off-diagonal parts in
/// the initial energy eigenbasis.
#[derive(Debug, Clone)]
pub struct TOperator {
    /// The full projector, a rank-1 Hermitian matrix.
    pub t: CMatrix,
    /// Diagonal part: sum_k |<j'|U|k>|^2 |k><k|.
    pub diag: CMatrix,
    /// Off-diagonal remainder; traceless, and t = diag + offdiag exactly.
    pub offdiag: CMatrix,
}

/// The T_j operators of a process, expressed in the eigenbasis of the initial
/// Hamiltonian (ascending energies). For a Hamiltonian that is diagonal in
/// the computational basis this is the computational frame itself.
#[derive(Debug, Clone)]
pub struct TOperatorSet {
    ops: Vec<TOperator>,
}

impl TOperatorSet {
    pub fn operators(&self) -> &[TOperator] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Compute the T_j set. Splitting by index support keeps t == diag + offdiag
/// exact, entry for entry.
pub fn t_operators(process: &Process) -> TOperatorSet {
    let dim = process.dim();
    let up = process.u_prime();
    let mut ops = Vec::with_capacity(dim);
    for j in 0..dim {
        // (T_j)_kl = conj(U'_jk) U'_jl, a rank-1 projector.
        let row = up.row(j);
        let t = row.adjoint() * row;
        let mut diag = CMatrix::zeros(dim, dim);
        let mut offdiag = t.clone();
        for k in 0..dim {
            diag[(k, k)] = t[(k, k)];
            offdiag[(k, k)] = C64::new(0.0, 0.0);
        }
        ops.push(TOperator { t, diag, offdiag });
    }
    TOperatorSet { ops }
}

/// Result of maximizing lambda subject to positivity of every element of the
/// two-copy family.
#[derive(Debug, Clone)]
pub struct LambdaResult {
    /// Maximal lambda in [0, 1].
    pub lambda: f64,
    /// The (i, j) pair whose positivity constraint binds, when one does.
    pub binding_pair: Option<(usize, usize)>,
    /// Minimal eigenvalue of each T_j off-diagonal part, indexed by j.
    pub offdiag_min_eigenvalues: Vec<f64>,
    /// True when some transition probability vanishes while the matching
    /// off-diagonal part does not, forcing lambda = 0 (plain TPM statistics).
    pub collapsed_to_tpm: bool,
}

/// Maximal lambda keeping every S_ij = p_ij I + lambda T_j_offdiag positive.
///
/// The minimal eigenvalue of S_ij is p_ij + lambda mu_j with mu_j the minimal
/// eigenvalue of the off-diagonal part, so the program solves in closed form:
/// lambda = min(1, min over constrained (i, j) of p_ij / |mu_j|). Vanishing
/// off-diagonal parts leave lambda unconstrained and the result is 1.
pub fn lambda_max(process: &Process) -> LambdaResult {
    let dim = process.dim();
    let p = transition_matrix(process);
    let t_set = t_operators(process);

    let mut offdiag_min_eigenvalues = Vec::with_capacity(dim);
    let mut constrained = Vec::with_capacity(dim);
    for op in t_set.operators() {
        if op.offdiag.norm() < VANISHING_OFFDIAG_TOL {
            offdiag_min_eigenvalues.push(0.0);
            constrained.push(false);
        } else {
            let mu = min_eigenvalue(&op.offdiag)
                .expect("off-diagonal part is Hermitian by construction");
            offdiag_min_eigenvalues.push(mu);
            constrained.push(mu < 0.0);
        }
    }

    let mut best: Option<(f64, (usize, usize))> = None;
    for i in 0..dim {
        for j in 0..dim {
            if !constrained[j] {
                continue;
            }
            let ratio = p[(i, j)] / (-offdiag_min_eigenvalues[j]);
            if best.is_none_or(|(b, _)| ratio < b) {
                best = Some((ratio, (i, j)));
            }
        }
    }

    match best {
        None => LambdaResult {
            lambda: 1.0,
            binding_pair: None,
            offdiag_min_eigenvalues,
            collapsed_to_tpm: false,
        },
        Some((ratio, _)) if ratio > 1.0 => LambdaResult {
            lambda: 1.0,
            binding_pair: None,
            offdiag_min_eigenvalues,
            collapsed_to_tpm: false,
        },
        Some((ratio, pair)) => LambdaResult {
            lambda: ratio,
            binding_pair: Some(pair),
            offdiag_min_eigenvalues,
            collapsed_to_tpm: ratio == 0.0,
        },
    }
}

/// The two-copy element family at an explicit lambda:
/// M_ij = |i><i| (x) (p_ij I + lambda T_j_offdiag), expressed in the
/// computational basis.
///
/// Completeness holds for every lambda; positivity only for lambda up to the
/// value returned by [`lambda_max`], so this family is for analysis. Use
/// [`two_copy_povm`] for a validated measurement.
pub fn two_copy_elements(process: &Process, lambda: f64) -> Vec<PovmElement> {
    let dim = process.dim();
    let p = transition_matrix(process);
    let t_set = t_operators(process);
    let basis = process.initial_basis();
    let lam = C64::new(lambda, 0.0);
    let mut elements = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let col = basis.column(i);
        let proj = col * col.adjoint();
        for j in 0..dim {
            let s_frame = identity(dim).scale(p[(i, j)]) + t_set.operators()[j].offdiag.clone() * lam;
            let s = basis * s_frame * basis.adjoint();
            elements.push(PovmElement {
                i,
                j,
                work: process.work_table().work(i, j, dim),
                op: tensor(&proj, &s),
            });
        }
    }
    elements
}

/// The two-copy collective scheme at its maximal lambda, as a validated POVM.
pub fn two_copy_povm(process: &Process) -> Result<(WorkPovm, LambdaResult)> {
    let lr = lambda_max(process);
    let elements = two_copy_elements(process, lr.lambda);
    let povm = WorkPovm::new(2, process.dim(), process.work_table().coalesce_tol(), elements)?;
    Ok((povm, lr))
}

/// Scheme selector for operations generic over the measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Tpm,
    TwoCopy,
}

pub fn build_scheme(kind: SchemeKind, process: &Process) -> Result<WorkPovm> {
    match kind {
        SchemeKind::Tpm => tpm_povm(process),
        SchemeKind::TwoCopy => Ok(two_copy_povm(process)?.0),
    }
}

/// Probability of one labeled outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawOutcome {
    pub i: usize,
    pub j: usize,
    pub work: f64,
    pub probability: f64,
}

/// Outcome probabilities tr(rho^(x)N M_ij) per (i, j) label, in lexicographic
/// order, before any coalescing of equal work values.
pub fn evaluate_povm_raw(povm: &WorkPovm, rho: &DensityMatrix) -> Result<Vec<RawOutcome>> {
    if rho.dim() != povm.dim() {
        return Err(Error::Dimension { expected: povm.dim(), got: rho.dim() });
    }
    let rho_n = tensor_power(rho.matrix(), povm.copies());
    let mut out = Vec::with_capacity(povm.elements().len());
    for el in povm.elements() {
        let p = trace_product(&rho_n, &el.op).re;
        if p < -PSD_TOL {
            return Err(Error::Validation(format!(
                "outcome ({}, {}) has probability {p:.3e}",
                el.i, el.j
            )));
        }
        out.push(RawOutcome { i: el.i, j: el.j, work: el.work, probability: p.max(0.0) });
    }
    Ok(out)
}

/// Work distribution of a scheme on rho (copies formed internally), with
/// equal work values coalesced and zero-probability outcomes dropped.
pub fn evaluate_povm(povm: &WorkPovm, rho: &DensityMatrix) -> Result<WorkDistribution> {
    let raw = evaluate_povm_raw(povm, rho)?;
    let pairs: Vec<(f64, f64)> = raw.iter().map(|o| (o.work, o.probability)).collect();
    WorkDistribution::from_pairs(&pairs, povm.coalesce_tol())
}

/// Work operator X = sum_ij W_ij M_ij of an element family.
pub fn work_operator_matrix(elements: &[PovmElement], total_dim: usize) -> CMatrix {
    let mut x = CMatrix::zeros(total_dim, total_dim);
    for el in elements {
        x += el.op.scale(el.work);
    }
    x
}

/// Work operator of a validated POVM, with its spectrum.
pub fn work_operator(povm: &WorkPovm) -> Result<HermitianOperator> {
    HermitianOperator::new(work_operator_matrix(povm.elements(), povm.total_dim()))
}

/// Closed-form maximal lambda for a qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QubitLambda {
    /// min(cos^2 a, sin^2 a) / |cos a sin a|.
    Constrained(f64),
    /// The off-diagonal parts vanish (a is a multiple of pi/2); positivity
    /// never binds and the general solver returns 1.
    Unconstrained,
}

impl QubitLambda {
    /// The effective lambda the scheme uses.
    pub fn value(&self) -> f64 {
        match self {
            QubitLambda::Constrained(v) => *v,
            QubitLambda::Unconstrained => 1.0,
        }
    }
}

/// Closed-form lambda for the cyclic qubit rotation family.
pub fn qubit_lambda_closed_form(alpha: f64) -> QubitLambda {
    let (s, c) = alpha.sin_cos();
    // Same vanishing test as the general solver: Frobenius norm of the
    // off-diagonal part, which is sqrt(2)|c s|.
    if (2.0f64.sqrt() * (c * s).abs()) < VANISHING_OFFDIAG_TOL {
        QubitLambda::Unconstrained
    } else {
        QubitLambda::Constrained((c * c).min(s * s) / (c * s).abs())
    }
}

/// Closed-form two-copy outcome probabilities for the cyclic qubit rotation
/// at angle alpha in [0, pi/4], where lambda = tan(alpha):
/// (p00, p01, p10, p11) as functions of rho populations and Re rho_01.
pub fn qubit_probabilities_closed_form(alpha: f64, rho: &DensityMatrix) -> Result<[f64; 4]> {
    if !(0.0..=std::f64::consts::FRAC_PI_4).contains(&alpha) {
        return Err(Error::Param(format!("alpha {alpha} outside [0, pi/4]")));
    }
    if rho.dim() != 2 {
        return Err(Error::Dimension { expected: 2, got: rho.dim() });
    }
    let (s, c) = alpha.sin_cos();
    let (c2, s2) = (c * c, s * s);
    let m = rho.matrix();
    let (p0, p1) = (m[(0, 0)].re, m[(1, 1)].re);
    let re01 = m[(0, 1)].re;
    Ok([
        p0 * (c2 - 2.0 * s2 * re01),
        p0 * (s2 + 2.0 * s2 * re01),
        p1 * (s2 - 2.0 * s2 * re01),
        p1 * (c2 + 2.0 * s2 * re01),
    ])
}
