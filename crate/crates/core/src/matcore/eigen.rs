use nalgebra::{DMatrix, SymmetricEigen};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Maximum |M − M†| entry accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues below this contribute nothing to an entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidShape(format!(
            "{}x{} matrix is not square",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.max_abs_diff(&m.adjoint());
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Real eigenvalues of a Hermitian matrix in descending order.
pub fn eigvals_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigh(m)?.0)
}

/// Eigen-decomposition of a Hermitian matrix: descending eigenvalues and
/// the matching orthonormal eigenvectors as matrix columns.
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_hermitian(m)?;
    let n = m.rows();
    let eig = SymmetricEigen::try_new(to_nalgebra(&m.hermitian_part()), f64::EPSILON, 0)
        .ok_or(Error::EigenFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = eig.eigenvectors[(row, k)];
        }
    }
    Ok((values, vectors))
}

/// Eigenvalues of a 2x2 Hermitian block `[[a, b], [b*, d]]`, closed form.
#[inline]
pub(crate) fn eigvals_2x2(a: f64, d: f64, b: C64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = (half * half + b.norm_sqr()).sqrt();
    [mean + r, mean - r]
}

/// Shannon entropy (nats) of a spectrum, with `0 ln 0 = 0`.
#[inline]
pub fn spectral_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x > ENTROPY_CUTOFF)
        .map(|&x| -x * x.ln())
        .sum()
}

/// Applies `f` to the spectrum of a Hermitian matrix: `V f(Λ) V†`.
pub(crate) fn hermitian_function(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let (values, vectors) = eigh(m)?;
    let mapped: Vec<f64> = values.into_iter().map(f).collect();
    Ok(vectors.conjugate(&ComplexMatrix::diagonal(&mapped)))
}
