//! Deterministic generators for test suites and benchmarks: seeded random
//! Hermitian operators, Haar-like unitaries, density matrices, and whole
//! processes. Not part of the stable API surface.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{CMatrix, C64, DensityMatrix, HermitianOperator, UnitaryOperator};
use crate::process::Process;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ginibre<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    })
}

pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> HermitianOperator {
    let g = ginibre(dim, rng);
    HermitianOperator::new((&g + g.adjoint()).scale(0.5)).expect("symmetrized matrix is Hermitian")
}

/// Random unitary built as V diag(e^{i theta}) V^dag from a random Hermitian
/// eigenframe; approximately Haar for the purposes of the suites and fully
/// deterministic per seed.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> UnitaryOperator {
    let h = random_hermitian(dim, rng);
    let v = h.eigenvectors();
    let phases = CMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    UnitaryOperator::new(v * phases * v.adjoint()).expect("spectral construction is unitary")
}

/// Random full-rank mixed state G G^dag / tr.
pub fn random_density<R: Rng>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(dim, rng);
    let pos = &g * g.adjoint();
    let tr = pos.trace().re;
    DensityMatrix::new(pos.scale(1.0 / tr)).expect("normalized Gram matrix is a state")
}

/// Random state diagonal in the given basis (columns).
pub fn random_diagonal_density<R: Rng>(basis: &CMatrix, rng: &mut R) -> DensityMatrix {
    let dim = basis.nrows();
    let mut pops: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() + 1e-6).collect();
    let z: f64 = pops.iter().sum();
    pops.iter_mut().for_each(|x| *x /= z);
    let mut m = CMatrix::zeros(dim, dim);
    for (k, &w) in pops.iter().enumerate() {
        let col = basis.column(k);
        m += (col * col.adjoint()).scale(w);
    }
    DensityMatrix::new(m).expect("convex combination of projectors is a state")
}

/// Random process with independent Hamiltonians and evolution.
pub fn random_process<R: Rng>(dim: usize, rng: &mut R) -> Process {
    let h = random_hermitian(dim, rng);
    let h_final = random_hermitian(dim, rng);
    let u = random_unitary(dim, rng);
    Process::new(h, h_final, u).expect("dimensions match by construction")
}
