//! Dense complex linear algebra for small bipartite systems.

mod density;
mod eigen;
mod matrix;

pub use density::{entropy, partial_trace, DensityMatrix, Subsystem, NEGATIVE_EIG_TOL, TRACE_TOL};
pub use eigen::{eigh, eigvals_hermitian, spectral_entropy, ENTROPY_CUTOFF, HERMITIAN_TOL};
pub use matrix::{pauli, tensor, ComplexMatrix, PauliAxis, C64};

pub(crate) use eigen::{eigvals_2x2, hermitian_function};
pub(crate) use matrix::{ONE, ZERO};

/// True iff `U†U` and `UU†` are within `tol` of the identity entrywise.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    m.is_unitary(tol)
}
