//! Driven processes (H, H', U), the canonical unitary and state families used
//! by the measurement schemes, and the exact average work.
//!
//! Sign convention, used everywhere in this crate: work is counted as
//! *extracted*, so a transition from initial level E_i to final level E'_j is
//! assigned W = E_i - E'_j, and the exact average work for an untouched
//! process is tr(rho (H - U^dag H' U)).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{
    CMatrix, CVector, C64, DensityMatrix, HermitianOperator, UnitaryOperator, EIGENSPACE_REL_TOL,
};

/// One (initial level, final level, work value) row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkEntry {
    pub i: usize,
    pub j: usize,
    pub work: f64,
}

/// The d^2 work values W_ij = E_i - E'_j of a process, with a flag marking
/// whether two distinct index pairs produce numerically equal work.
#[derive(Debug, Clone)]
pub struct WorkValueTable {
    entries: Vec<WorkEntry>,
    degenerate: bool,
    coalesce_tol: f64,
}

impl WorkValueTable {
    fn build(initial: &[f64], final_: &[f64]) -> Self {
        let mut entries = Vec::with_capacity(initial.len() * final_.len());
        for (i, &ei) in initial.iter().enumerate() {
            for (j, &ej) in final_.iter().enumerate() {
                entries.push(WorkEntry { i, j, work: ei - ej });
            }
        }
        let lo = entries.iter().map(|e| e.work).fold(f64::INFINITY, f64::min);
        let hi = entries.iter().map(|e| e.work).fold(f64::NEG_INFINITY, f64::max);
        let coalesce_tol = EIGENSPACE_REL_TOL * (hi - lo).max(1.0);
        let mut sorted: Vec<f64> = entries.iter().map(|e| e.work).collect();
        sorted.sort_by(f64::total_cmp);
        let degenerate = sorted.windows(2).any(|w| w[1] - w[0] <= coalesce_tol);
        Self {
            entries,
            degenerate,
            coalesce_tol,
        }
    }

    /// Rows in lexicographic (i, j) order, covering all d^2 pairs.
    pub fn entries(&self) -> &[WorkEntry] {
        &self.entries
    }

    pub fn work(&self, i: usize, j: usize, dim: usize) -> f64 {
        self.entries[i * dim + j].work
    }

    /// True iff two distinct (i, j) pairs give equal work within the
    /// coalescing tolerance.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Threshold under which two work values count as the same outcome.
    pub fn coalesce_tol(&self) -> f64 {
        self.coalesce_tol
    }
}

/// A driven process (H, H', U) with cached spectra, the evolution expressed
/// between the two energy eigenbases, and the work-value table.
#[derive(Debug, Clone)]
pub struct Process {
    h: HermitianOperator,
    h_final: HermitianOperator,
    u: UnitaryOperator,
    /// U' = R^dag U Q, where Q and R hold the eigenvectors of H and H'
    /// (ascending energies). Entry U'_ji = <j'|U|i>.
    u_prime: CMatrix,
    work_table: WorkValueTable,
}

impl Process {
    pub fn new(h: HermitianOperator, h_final: HermitianOperator, u: UnitaryOperator) -> Result<Self> {
        let dim = h.dim();
        if h_final.dim() != dim {
            return Err(Error::Dimension { expected: dim, got: h_final.dim() });
        }
        if u.dim() != dim {
            return Err(Error::Dimension { expected: dim, got: u.dim() });
        }
        let u_prime = h_final.eigenvectors().adjoint() * u.matrix() * h.eigenvectors();
        let work_table = WorkValueTable::build(h.eigenvalues(), h_final.eigenvalues());
        Ok(Self { h, h_final, u, u_prime, work_table })
    }

    /// Cyclic process: H' = H.
    pub fn cyclic(h: HermitianOperator, u: UnitaryOperator) -> Result<Self> {
        let h_final = h.clone();
        Self::new(h, h_final, u)
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.h
    }

    pub fn hamiltonian_final(&self) -> &HermitianOperator {
        &self.h_final
    }

    pub fn unitary(&self) -> &UnitaryOperator {
        &self.u
    }

    /// The evolution between energy eigenbases: U'_ji = <j'|U|i>.
    pub fn u_prime(&self) -> &CMatrix {
        &self.u_prime
    }

    pub fn work_table(&self) -> &WorkValueTable {
        &self.work_table
    }

    /// Initial-energy eigenvector columns (the |i> basis).
    pub fn initial_basis(&self) -> &CMatrix {
        self.h.eigenvectors()
    }

    /// X_req = H - U^dag H' U, the operator whose expectation is the exact
    /// average extracted work.
    pub fn required_work_operator(&self) -> CMatrix {
        self.h.matrix() - self.u.adjoint() * self.h_final.matrix() * self.u.matrix()
    }
}

/// Construct and validate a process from raw operators.
pub fn build_process(
    h: HermitianOperator,
    h_final: HermitianOperator,
    u: UnitaryOperator,
) -> Result<Process> {
    Process::new(h, h_final, u)
}

/// Named unitary families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitaryKind {
    /// Real rotation [[cos a, -sin a], [sin a, cos a]] on a qubit.
    Rotation { alpha: f64 },
    /// sqrt(1-eps^2) I + eps [[0,-1],[1,0]] on a qubit, 0 <= eps <= 1.
    NearIdentity { eps: f64 },
    /// Discrete Fourier transform on d levels; maps energy eigenstates to
    /// uniform-superposition states.
    Dft { dim: usize },
    /// |0><+| + |1><-|: swaps the computational and coherent qubit bases.
    SwapToCoherent,
}

pub fn builtin_unitary(kind: UnitaryKind) -> Result<UnitaryOperator> {
    match kind {
        UnitaryKind::Rotation { alpha } => {
            if !alpha.is_finite() {
                return Err(Error::Param(format!("rotation angle {alpha} must be finite")));
            }
            let (s, c) = alpha.sin_cos();
            UnitaryOperator::new(CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(c, 0.0), C64::new(-s, 0.0),
                    C64::new(s, 0.0), C64::new(c, 0.0),
                ],
            ))
        }
        UnitaryKind::NearIdentity { eps } => {
            if !(0.0..=1.0).contains(&eps) {
                return Err(Error::Param(format!("near-identity eps {eps} outside [0, 1]")));
            }
            let c = (1.0 - eps * eps).sqrt();
            UnitaryOperator::new(CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(c, 0.0), C64::new(-eps, 0.0),
                    C64::new(eps, 0.0), C64::new(c, 0.0),
                ],
            ))
        }
        UnitaryKind::Dft { dim } => {
            if dim < 2 {
                return Err(Error::Param(format!("dft dimension {dim} must be >= 2")));
            }
            let scale = 1.0 / (dim as f64).sqrt();
            let m = CMatrix::from_fn(dim, dim, |j, k| {
                let phase = -2.0 * std::f64::consts::PI * ((j * k) % dim) as f64 / dim as f64;
                Complex::from_polar(scale, phase)
            });
            UnitaryOperator::new(m)
        }
        UnitaryKind::SwapToCoherent => {
            let s = 1.0 / 2f64.sqrt();
            UnitaryOperator::new(CMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(s, 0.0), C64::new(s, 0.0),
                    C64::new(s, 0.0), C64::new(-s, 0.0),
                ],
            ))
        }
    }
}

/// Thermal (Gibbs) state exp(-beta H)/Z. `beta` may be +infinity, in which
/// case the state is the normalized projector onto the ground eigenspace.
pub fn thermal_state(h: &HermitianOperator, beta: f64) -> Result<DensityMatrix> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::Param(format!("inverse temperature {beta} must be >= 0")));
    }
    let dim = h.dim();
    let v = h.eigenvectors();
    if beta.is_infinite() {
        let ground = &h.eigenspaces()[0];
        let mut m = CMatrix::zeros(dim, dim);
        for &k in ground {
            let col = v.column(k);
            m += col * col.adjoint();
        }
        return DensityMatrix::new(m.scale(1.0 / ground.len() as f64));
    }
    let e0 = h.eigenvalues()[0];
    let weights: Vec<f64> = h.eigenvalues().iter().map(|&e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let mut m = CMatrix::zeros(dim, dim);
    for (k, w) in weights.iter().enumerate() {
        let col = v.column(k);
        m += (col * col.adjoint()).scale(w / z);
    }
    DensityMatrix::new(m)
}

/// Computational basis state |k><k|.
pub fn basis_state(k: usize, dim: usize) -> Result<DensityMatrix> {
    if dim == 0 || k >= dim {
        return Err(Error::Param(format!("basis index {k} outside 0..{dim}")));
    }
    let mut psi = CVector::zeros(dim);
    psi[k] = C64::new(1.0, 0.0);
    DensityMatrix::pure(&psi)
}

/// Uniform-superposition pure state (1/sqrt(d)) sum_k |k>.
pub fn maximally_coherent_state(dim: usize) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::Param("state dimension must be >= 1".into()));
    }
    let psi = CVector::from_element(dim, C64::new(1.0, 0.0));
    DensityMatrix::pure(&psi)
}

/// Exact average extracted work of the untouched process:
/// tr(rho (H - U^dag H' U)).
pub fn exact_average_work(process: &Process, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != process.dim() {
        return Err(Error::Dimension { expected: process.dim(), got: rho.dim() });
    }
    let x = process.required_work_operator();
    Ok(crate::matrix::trace_product(rho.matrix(), &x).re)
}

/// Named end-to-end process families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProcessKind {
    /// H = H' = diag(0..d-1), U the d-level discrete Fourier transform.
    DftCyclic { dim: usize },
    /// Qubit, H = H' = diag(0, 1), U a real rotation by alpha.
    RotationCyclic { alpha: f64 },
    /// Qubit, H = H' = diag(0, 1), U the near-identity rotation by arcsin(eps).
    NearIdentityCyclic { eps: f64 },
    /// Qubit, H = eps|1><1| -> H' = eps'|1><1|, U = |0><+| + |1><-|.
    CoherentSwap { eps: f64, eps_prime: f64 },
}

pub fn builtin_process(kind: ProcessKind) -> Result<Process> {
    match kind {
        ProcessKind::DftCyclic { dim } => {
            let levels: Vec<f64> = (0..dim).map(|k| k as f64).collect();
            Process::cyclic(
                HermitianOperator::from_diagonal(&levels),
                builtin_unitary(UnitaryKind::Dft { dim })?,
            )
        }
        ProcessKind::RotationCyclic { alpha } => Process::cyclic(
            HermitianOperator::from_diagonal(&[0.0, 1.0]),
            builtin_unitary(UnitaryKind::Rotation { alpha })?,
        ),
        ProcessKind::NearIdentityCyclic { eps } => Process::cyclic(
            HermitianOperator::from_diagonal(&[0.0, 1.0]),
            builtin_unitary(UnitaryKind::NearIdentity { eps })?,
        ),
        ProcessKind::CoherentSwap { eps, eps_prime } => {
            if !eps.is_finite() || !eps_prime.is_finite() {
                return Err(Error::Param("coherent-swap energies must be finite".into()));
            }
            Process::new(
                HermitianOperator::from_diagonal(&[0.0, eps]),
                HermitianOperator::from_diagonal(&[0.0, eps_prime]),
                builtin_unitary(UnitaryKind::SwapToCoherent)?,
            )
        }
    }
}
