//! Constructors for the two-qubit state families used throughout the crate.
//!
//! Basis ordering is `{|00⟩, |01⟩, |10⟩, |11⟩}`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{check_range, Error, Result};
use crate::matcore::{tensor, ComplexMatrix, DensityMatrix, C64, ZERO};
use crate::measurement::ProjectiveBasis;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn bell(amplitudes: [f64; 4]) -> DensityMatrix {
    let ket: Vec<C64> = amplitudes.iter().map(|&a| real(a)).collect();
    DensityMatrix::from_pure(2, 2, &ket).expect("Bell state is normalised")
}

/// `(|01⟩ − |10⟩)/√2`
pub fn singlet() -> DensityMatrix {
    bell([0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0])
}

/// `(|00⟩ + |11⟩)/√2`
pub fn bell_phi_plus() -> DensityMatrix {
    bell([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2])
}

/// `(|00⟩ − |11⟩)/√2`
pub fn bell_phi_minus() -> DensityMatrix {
    bell([FRAC_1_SQRT_2, 0.0, 0.0, -FRAC_1_SQRT_2])
}

/// Werner state `(1−μ) I/4 + μ |s⟩⟨s|` for `μ ∈ [0, 1]`.
pub fn werner(mu: f64) -> Result<DensityMatrix> {
    check_range("mu", mu, 0.0, 1.0, "[0, 1]")?;
    let s = singlet();
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - mu) / 4.0);
    let m = &noise + &s.matrix().scale_real(mu);
    Ok(DensityMatrix::from_map_output(2, 2, m))
}

/// `ρ_A ⊗ ρ_B` from two single-system states.
pub fn product(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> Result<DensityMatrix> {
    if rho_a.dim_b() != 1 || rho_b.dim_b() != 1 {
        return Err(Error::DimensionMismatch(
            "product() expects single-system inputs".into(),
        ));
    }
    Ok(DensityMatrix::from_map_output(
        rho_a.dim(),
        rho_b.dim(),
        tensor(rho_a.matrix(), rho_b.matrix()),
    ))
}

/// `Σ_{ab} p_{ab} A_a ⊗ B_b` for a normalised probability table.
pub fn classical_classical(
    table: &[[f64; 2]; 2],
    basis_a: &ProjectiveBasis,
    basis_b: &ProjectiveBasis,
) -> Result<DensityMatrix> {
    if basis_a.dim() != 2 || basis_b.dim() != 2 || basis_a.len() != 2 || basis_b.len() != 2 {
        return Err(Error::DimensionMismatch(
            "classical_classical expects qubit bases".into(),
        ));
    }
    let flat = table.iter().flatten();
    if flat.clone().any(|&p| !(p >= 0.0)) {
        return Err(Error::OutOfRange {
            name: "p_ab",
            value: flat.clone().copied().fold(f64::NAN, f64::min),
            range: "[0, 1]",
        });
    }
    let total: f64 = flat.sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidTrace(total));
    }
    let mut m = ComplexMatrix::zeros(4, 4);
    for (a, pa) in basis_a.projectors().iter().enumerate() {
        for (b, pb) in basis_b.projectors().iter().enumerate() {
            if table[a][b] != 0.0 {
                m = &m + &tensor(pa, pb).scale_real(table[a][b]);
            }
        }
    }
    Ok(DensityMatrix::from_map_output(2, 2, m))
}

/// Computational-basis qubit state `diag(p0, 1 − p0)`.
pub fn qubit_diagonal(p0: f64) -> Result<DensityMatrix> {
    check_range("p0", p0, 0.0, 1.0, "[0, 1]")?;
    Ok(DensityMatrix::from_map_output(
        2,
        1,
        ComplexMatrix::diagonal(&[p0, 1.0 - p0]),
    ))
}

/// Pure qubit state from an (unnormalised) ket.
pub fn qubit_pure(ket: [C64; 2]) -> Result<DensityMatrix> {
    if ket.iter().all(|z| *z == ZERO) {
        return Err(Error::InvalidShape("zero state vector".into()));
    }
    DensityMatrix::from_pure(2, 1, &ket)
}
