use super::eigen::{eigvals_hermitian, spectral_entropy, HERMITIAN_TOL};
use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Tolerance on `|Tr ρ − 1|`.
pub const TRACE_TOL: f64 = 1e-10;

/// Most negative eigenvalue tolerated in a valid state.
pub const NEGATIVE_EIG_TOL: f64 = 1e-10;

/// Which factor of `H_A ⊗ H_B` an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// A positive, unit-trace operator on `H_A ⊗ H_B`.
///
/// Single-system states are stored with `dim_b = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(dim_a: usize, dim_b: usize, matrix: ComplexMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidShape("zero subsystem dimension".into()));
        }
        let d = dim_a * dim_b;
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "dims {dim_a}x{dim_b} need a {d}x{d} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.max_abs_diff(&matrix.adjoint());
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min = eigvals_hermitian(&matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -NEGATIVE_EIG_TOL {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(Self {
            dim_a,
            dim_b,
            matrix: matrix.hermitian_part(),
        })
    }

    /// State of a single system (`dim_b = 1`).
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(d, 1, matrix)
    }

    /// Rank-one state `|ψ⟩⟨ψ|`; the ket is normalised first.
    pub fn from_pure(dim_a: usize, dim_b: usize, ket: &[C64]) -> Result<Self> {
        let norm = ket.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidShape("zero state vector".into()));
        }
        let psi: Vec<C64> = ket.iter().map(|z| z / norm).collect();
        Self::new(dim_a, dim_b, ComplexMatrix::outer(&psi, &psi))
    }

    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let d = dim_a * dim_b;
        Self {
            dim_a,
            dim_b,
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        }
    }

    /// Wraps the output of a trace-preserving positive map without
    /// re-running the spectral checks.
    pub(crate) fn from_map_output(dim_a: usize, dim_b: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), dim_a * dim_b);
        Self {
            dim_a,
            dim_b,
            matrix: matrix.hermitian_part(),
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dim_a == 2 && self.dim_b == 2
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvals_hermitian(&self.matrix).expect("density matrix is Hermitian")
    }

    /// Von Neumann entropy in nats.
    pub fn entropy(&self) -> f64 {
        spectral_entropy(&self.eigenvalues())
    }

    /// `U ρ U†` for a unitary `U` of matching dimension.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.rows() != self.dim() || !unitary.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} unitary on a {}-dimensional state",
                unitary.rows(),
                unitary.cols(),
                self.dim()
            )));
        }
        if !unitary.is_unitary(1e-9) {
            return Err(Error::InvalidShape("operator is not unitary".into()));
        }
        Ok(Self::from_map_output(
            self.dim_a,
            self.dim_b,
            unitary.conjugate(&self.matrix),
        ))
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// Von Neumann entropy `−Σ λ ln λ` (nats).
pub fn entropy(rho: &DensityMatrix) -> f64 {
    rho.entropy()
}

/// Reduced state on `keep`, returned as a single-system state.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> DensityMatrix {
    let (da, db) = (rho.dim_a, rho.dim_b);
    let m = &rho.matrix;
    let out = match keep {
        Subsystem::A => {
            let mut r = ComplexMatrix::zeros(da, da);
            for i in 0..da {
                for j in 0..da {
                    let mut acc = ZERO;
                    for k in 0..db {
                        acc += m[(i * db + k, j * db + k)];
                    }
                    r[(i, j)] = acc;
                }
            }
            r
        }
        Subsystem::B => {
            let mut r = ComplexMatrix::zeros(db, db);
            for i in 0..db {
                for j in 0..db {
                    let mut acc = ZERO;
                    for k in 0..da {
                        acc += m[(k * db + i, k * db + j)];
                    }
                    r[(i, j)] = acc;
                }
            }
            r
        }
    };
    let d = out.rows();
    DensityMatrix::from_map_output(d, 1, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::tensor;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn singlet() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_pure(2, 2, &[c(0.0), c(h), c(-h), c(0.0)]).unwrap()
    }

    #[test]
    fn validation_errors() {
        let not_herm = ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        assert!(matches!(
            DensityMatrix::single(not_herm),
            Err(Error::NotHermitian(_))
        ));
        let bad_trace = ComplexMatrix::diagonal(&[0.5, 0.6]);
        assert!(matches!(
            DensityMatrix::single(bad_trace),
            Err(Error::InvalidTrace(_))
        ));
        let negative = ComplexMatrix::diagonal(&[1.2, -0.2]);
        assert!(matches!(
            DensityMatrix::single(negative),
            Err(Error::NegativeEigenvalue(_))
        ));
        let wrong = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(matches!(
            DensityMatrix::new(2, 2, wrong),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn tiny_negative_eigenvalue_is_accepted() {
        let m = ComplexMatrix::diagonal(&[1.0 + 5e-11, -5e-11]);
        let rho = DensityMatrix::single(m).unwrap();
        assert!(rho.entropy().abs() < 1e-9);
    }

    #[test]
    fn partial_trace_of_product() {
        let ra = ComplexMatrix::from_rows(&[
            vec![c(0.7), C64::new(0.1, 0.2)],
            vec![C64::new(0.1, -0.2), c(0.3)],
        ])
        .unwrap();
        let rb = ComplexMatrix::diagonal(&[0.6, 0.4]);
        let rho = DensityMatrix::new(2, 2, tensor(&ra, &rb)).unwrap();
        assert!(partial_trace(&rho, Subsystem::A).matrix().max_abs_diff(&ra) < 1e-15);
        assert!(partial_trace(&rho, Subsystem::B).matrix().max_abs_diff(&rb) < 1e-15);
    }

    #[test]
    fn singlet_marginal_is_maximally_mixed() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let s = singlet();
        assert!(partial_trace(&s, Subsystem::A).matrix().max_abs_diff(&half) < 1e-15);
        assert!(partial_trace(&s, Subsystem::B).matrix().max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn entropy_examples() {
        assert!(singlet().entropy().abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2, 2);
        assert!((mixed.entropy() - 4f64.ln()).abs() < 1e-12);
        let d = DensityMatrix::single(ComplexMatrix::diagonal(&[0.75, 0.25])).unwrap();
        assert!((d.entropy() - 0.562_335_144_6).abs() < 1e-9);
    }

    #[test]
    fn evolve_rejects_non_unitary() {
        let rho = DensityMatrix::maximally_mixed(2, 1);
        let m = ComplexMatrix::diagonal(&[1.0, 0.5]);
        assert!(rho.evolve(&m).is_err());
        assert!(rho.evolve(&ComplexMatrix::identity(4)).is_err());
    }
}
