//! Dense complex matrix algebra on small dimensions: Hermitian
//! eigendecomposition, tensor products, PSD testing, and energy-basis
//! dephasing.
//!
//! Everything here operates on `nalgebra` dynamic matrices over `Complex<f64>`
//! and is pure: values are immutable once constructed and safe to share across
//! threads.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = DVector<C64>;

/// Relative Hermiticity tolerance: ||M - M^dag||_F <= HERM_REL_TOL * ||M||_F.
pub const HERM_REL_TOL: f64 = 1e-12;
/// Unitarity / eigenvector-orthonormality tolerance (Frobenius).
pub const ORTHO_TOL: f64 = 1e-10;
/// An operator is declared PSD iff its minimal eigenvalue is >= -PSD_TOL.
pub const PSD_TOL: f64 = 1e-10;
/// Trace-normalization tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Two eigenvalues belong to one eigenspace iff they differ by at most
/// EIGENSPACE_REL_TOL * max(1, spectral range).
pub const EIGENSPACE_REL_TOL: f64 = 1e-9;

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Frobenius norm.
pub fn fro_norm(m: &CMatrix) -> f64 {
    m.norm()
}

/// Hermiticity deviation ||M - M^dag||_F.
pub fn herm_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// tr(A B) without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(b.ncols(), a.nrows());
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Kronecker product with the row-major block convention:
/// entry ((i*rB + k), (j*cB + l)) = A_ij * B_kl.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// n-fold Kronecker power.
pub fn tensor_power(m: &CMatrix, n: usize) -> CMatrix {
    assert!(n >= 1, "tensor power requires n >= 1");
    let mut out = m.clone();
    for _ in 1..n {
        out = out.kronecker(m);
    }
    out
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    Ok(m.nrows())
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    if !all_finite(m) {
        return Err(Error::Validation("matrix has non-finite entries".into()));
    }
    let dev = herm_deviation(m);
    let tol = HERM_REL_TOL * fro_norm(m).max(f64::MIN_POSITIVE);
    if dev > tol {
        return Err(Error::Hermiticity {
            deviation: dev,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues sorted ascending and the matching orthonormal
/// eigenvector columns. Output is deterministic: exactly diagonal inputs keep
/// standard-basis eigenvectors, and each eigenvector is rephased so that its
/// largest-magnitude component is real and positive.
pub fn eig_hermitian(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let dim = check_square(m)?;
    check_hermitian(m)?;

    // Exactly diagonal input: sort the diagonal, eigenvectors are a
    // permutation of the standard basis. Keeps energy eigenbases of diagonal
    // Hamiltonians (including degenerate ones) pinned to the computational
    // basis.
    let off_norm: f64 = (0..dim)
        .flat_map(|r| (0..dim).filter(move |&c| c != r).map(move |c| (r, c)))
        .map(|(r, c)| m[(r, c)].norm_sqr())
        .sum();
    if off_norm == 0.0 {
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re));
        let values: Vec<f64> = order.iter().map(|&k| m[(k, k)].re).collect();
        let mut vecs = CMatrix::zeros(dim, dim);
        for (col, &k) in order.iter().enumerate() {
            vecs[(k, col)] = C64::new(1.0, 0.0);
        }
        return Ok((values, vecs));
    }

    // Symmetrize before decomposing so tolerated asymmetry noise does not
    // leak into the spectrum.
    let sym = (m + m.adjoint()).scale(0.5);
    let se = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut vecs = CMatrix::zeros(dim, dim);
    for (col, &k) in order.iter().enumerate() {
        let mut v = se.eigenvectors.column(k).clone_owned();
        // Phase convention: largest-magnitude component real positive.
        let mut best = 0;
        let mut best_mag = 0.0;
        for (idx, z) in v.iter().enumerate() {
            let mag = z.norm();
            if mag > best_mag {
                best_mag = mag;
                best = idx;
            }
        }
        if best_mag > 0.0 {
            let phase = v[best].conj() / C64::new(best_mag, 0.0);
            v *= phase;
        }
        vecs.set_column(col, &v);
    }

    let ortho_dev = (vecs.adjoint() * &vecs - identity(dim)).norm();
    if ortho_dev > ORTHO_TOL {
        return Err(Error::Validation(format!(
            "eigenvector matrix not orthonormal: deviation {ortho_dev:.3e}"
        )));
    }
    Ok((values, vecs))
}

/// A Hermitian operator with its cached spectral decomposition.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    matrix: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (eigenvalues, eigenvectors) = eig_hermitian(&matrix)?;
        Ok(Self {
            matrix,
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let matrix = CMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                C64::new(diag[r], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::new(matrix).expect("diagonal real matrix is Hermitian")
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_diagonal(&vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues sorted ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvector columns, ordered with the eigenvalues.
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector_unitary(&self) -> UnitaryOperator {
        UnitaryOperator::new(self.eigenvectors.clone())
            .expect("cached eigenvector matrix is orthonormal")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue() >= -PSD_TOL
    }

    /// Spectral range max(eigenvalue) - min(eigenvalue).
    pub fn spectral_range(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1] - self.eigenvalues[0]
    }

    /// Indices of eigenvectors grouped into (numerically) degenerate
    /// eigenspaces, ascending in energy.
    pub fn eigenspaces(&self) -> Vec<Vec<usize>> {
        let tol = EIGENSPACE_REL_TOL * self.spectral_range().max(1.0);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for k in 0..self.eigenvalues.len() {
            match groups.last_mut() {
                Some(g) if self.eigenvalues[k] - self.eigenvalues[g[g.len() - 1]] <= tol => {
                    g.push(k)
                }
                _ => groups.push(vec![k]),
            }
        }
        groups
    }
}

/// Smallest eigenvalue of a Hermitian matrix; the operator is declared PSD
/// iff the result is >= -PSD_TOL.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    let (values, _) = eig_hermitian(m)?;
    Ok(values[0])
}

/// A unitary operator, validated to ORTHO_TOL.
#[derive(Debug, Clone)]
pub struct UnitaryOperator {
    matrix: CMatrix,
}

impl UnitaryOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = check_square(&matrix)?;
        if !all_finite(&matrix) {
            return Err(Error::Validation("matrix has non-finite entries".into()));
        }
        let dev = (matrix.adjoint() * &matrix - identity(dim)).norm();
        if dev > ORTHO_TOL {
            return Err(Error::Unitarity {
                deviation: dev,
                tolerance: ORTHO_TOL,
            });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn adjoint(&self) -> CMatrix {
        self.matrix.adjoint()
    }
}

/// A density matrix: Hermitian, unit trace, PSD within tolerance.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        check_square(&matrix)?;
        check_hermitian(&matrix)?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::Validation(format!(
                "density matrix trace {} deviates from 1 beyond {TRACE_TOL:.0e}",
                trace.re
            )));
        }
        let min = min_eigenvalue(&matrix)?;
        if min < -PSD_TOL {
            return Err(Error::Validation(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// Pure state |psi><psi| from a (not necessarily normalized) vector.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let n2 = psi.norm_squared();
        if n2 <= 0.0 || !n2.is_finite() {
            return Err(Error::Param("pure state vector must be nonzero and finite".into()));
        }
        let m = psi * psi.adjoint() / C64::new(n2, 0.0);
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Convex mixture p*self + (1-p)*other.
    pub fn mix(&self, other: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Param(format!("mixing weight {p} outside [0, 1]")));
        }
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        DensityMatrix::new(
            self.matrix.scale(p) + other.matrix.scale(1.0 - p),
        )
    }
}

/// Energy-basis dephasing: D_H(rho) = sum_E P_E rho P_E, where P_E projects
/// onto the eigenspace of eigenvalue E. Coherence within a degenerate
/// eigenspace is preserved; the map is idempotent and trace preserving.
pub fn dephase(rho: &DensityMatrix, h: &HermitianOperator) -> Result<DensityMatrix> {
    if rho.dim() != h.dim() {
        return Err(Error::Dimension {
            expected: h.dim(),
            got: rho.dim(),
        });
    }
    let dim = h.dim();
    let v = h.eigenvectors();
    let mut out = CMatrix::zeros(dim, dim);
    for group in h.eigenspaces() {
        let mut proj = CMatrix::zeros(dim, dim);
        for &k in &group {
            let col = v.column(k);
            proj += col * col.adjoint();
        }
        out += &proj * rho.matrix() * &proj;
    }
    DensityMatrix::new(out)
}
