//! Work statistics for driven finite-dimensional quantum processes.
//!
//! A process is a triple (H, H', U): initial Hamiltonian, final Hamiltonian,
//! and unitary evolution. This crate builds the measurement schemes that
//! resolve the work exchanged in such a process:
//!
//! - the standard two-projective-measurement (TPM) scheme, which reproduces
//!   classical stochastic thermodynamics on energy-diagonal states but is
//!   blind to coherence;
//! - a collective scheme acting on two copies of the state, whose single
//!   parameter lambda is maximized in closed form subject to positivity of
//!   the measurement operators, and which recovers the exact average work at
//!   lambda = 1;
//! - numeric impossibility certificates showing that no measurement scheme
//!   can both agree with TPM statistics on diagonal states and reproduce the
//!   exact average work on all states, for single-copy and N-copy
//!   measurements.
//!
//! All numerics are dense and deterministic, aimed at desk-scale dimensions
//! (single-copy d up to ~16). With the default `parallel` feature, batch
//! evaluations and sweeps fan out over a rayon thread pool; disabling it
//! yields a fully sequential build with identical results.

pub mod error;
pub mod matrix;
pub mod process;
pub mod stats;
pub mod schemes;
pub mod nogo;
pub mod io;
pub mod sweep;
pub mod testing;

mod par;

pub use error::{Error, Result};
pub use matrix::{CMatrix, CVector, C64, DensityMatrix, HermitianOperator, UnitaryOperator};
pub use process::{Process, ProcessKind, UnitaryKind, WorkValueTable};
pub use schemes::{LambdaResult, SchemeKind, WorkPovm};
pub use stats::WorkDistribution;
pub use nogo::{NoGoCertificate, Verdict};
