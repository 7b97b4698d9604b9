//! Projective measurements on one side of a bipartite state.

use std::f64::consts::{PI, TAU};

pub use crate::matcore::PauliAxis;
use crate::error::{Error, Result};
use crate::matcore::{pauli, tensor, ComplexMatrix, DensityMatrix, Subsystem, C64, ONE};

/// Tolerance for completeness and orthogonality of projectors.
pub const BASIS_TOL: f64 = 1e-10;

/// Entropy differences above `-NEG_CLAMP` are rounded up to zero.
pub const NEG_CLAMP: f64 = 1e-9;

pub(crate) fn clamp_nonneg(x: f64) -> f64 {
    if x < 0.0 && x > -NEG_CLAMP {
        0.0
    } else {
        x
    }
}

/// A direction on the Bloch sphere.
///
/// The polar angle is measured from the σ_x axis: `θ = 0` selects the
/// `|±⟩` eigenbasis, and the Bloch vector is
/// `(cos θ, −sin θ sin φ, sin θ cos φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2pi)",
            });
        }
        Ok(Self { theta, phi })
    }

    /// Canonical angles for arbitrary real inputs.
    pub fn wrapped(theta: f64, phi: f64) -> Self {
        Self::from_bloch(bloch_from_angles(theta, phi))
    }

    pub fn from_bloch(n: [f64; 3]) -> Self {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let [x, y, z] = n.map(|c| c / norm);
        let theta = x.clamp(-1.0, 1.0).acos();
        let mut phi = if (y.abs() + z.abs()) < 1e-15 {
            0.0
        } else {
            (-y).atan2(z)
        };
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn from_axis(axis: PauliAxis) -> Self {
        Self::from_bloch(axis.unit_vector())
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        bloch_from_angles(self.theta, self.phi)
    }

    pub fn antipode(&self) -> Self {
        Self::from_bloch(self.bloch_vector().map(|c| -c))
    }
}

#[inline]
pub(crate) fn bloch_from_angles(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [ct, -st * sp, st * cp]
}

/// A complete set of orthogonal projectors with outcome labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveBasis {
    projectors: Vec<ComplexMatrix>,
    labels: Vec<f64>,
}

impl ProjectiveBasis {
    pub fn new(projectors: Vec<ComplexMatrix>, labels: Vec<f64>) -> Result<Self> {
        let first = projectors
            .first()
            .ok_or_else(|| Error::InvalidBasis("no projectors".into()))?;
        let d = first.rows();
        if labels.len() != projectors.len() {
            return Err(Error::InvalidBasis("one label per projector".into()));
        }
        if projectors.iter().any(|p| p.rows() != d || p.cols() != d) {
            return Err(Error::InvalidBasis("projectors must be square and equal-sized".into()));
        }
        let mut sum = ComplexMatrix::zeros(d, d);
        for (i, p) in projectors.iter().enumerate() {
            if !p.is_hermitian(BASIS_TOL) {
                return Err(Error::InvalidBasis(format!("projector {i} is not Hermitian")));
            }
            for (j, q) in projectors.iter().enumerate() {
                let pq = p * q;
                let expected = if i == j { p.clone() } else { ComplexMatrix::zeros(d, d) };
                if pq.max_abs_diff(&expected) > BASIS_TOL {
                    return Err(Error::InvalidBasis(format!(
                        "projectors {i} and {j} violate P_i P_j = δ_ij P_i"
                    )));
                }
            }
            sum = &sum + p;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(d)) > BASIS_TOL {
            return Err(Error::InvalidBasis("projectors do not sum to identity".into()));
        }
        Ok(Self { projectors, labels })
    }

    /// Qubit basis `{(I + n·σ)/2, (I − n·σ)/2}` for a Bloch vector `n`.
    pub fn from_bloch(n: [f64; 3]) -> Self {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let [x, y, z] = n.map(|c| c / norm);
        let ns = &(&pauli(PauliAxis::X).scale_real(x) + &pauli(PauliAxis::Y).scale_real(y))
            + &pauli(PauliAxis::Z).scale_real(z);
        let id = ComplexMatrix::identity(2);
        Self {
            projectors: vec![(&id + &ns).scale_real(0.5), (&id - &ns).scale_real(0.5)],
            labels: vec![1.0, -1.0],
        }
    }

    pub fn computational(d: usize) -> Self {
        let projectors = (0..d)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(d, d);
                p[(k, k)] = ONE;
                p
            })
            .collect();
        Self {
            projectors,
            labels: (0..d).map(|k| k as f64).collect(),
        }
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Outcome labels (eigenvalues of the associated observable).
    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    /// Hilbert-space dimension the basis acts on.
    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    /// Bloch vector of the first projector, for qubit bases.
    pub fn bloch_vector(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let p = &self.projectors[0];
        Some(PauliAxis::ALL.map(|a| (p * &pauli(a)).trace().re))
    }

    /// Same projectors with the outcome labels exchanged.
    pub fn relabeled(&self, labels: Vec<f64>) -> Result<Self> {
        Self::new(self.projectors.clone(), labels)
    }
}

/// Eigenbasis `{|φ₊⟩⟨φ₊|, |φ₋⟩⟨φ₋|}` with
/// `|φ₊⟩ = cos(θ/2)|+⟩ + e^{iφ} sin(θ/2)|−⟩` and
/// `|φ₋⟩ = −sin(θ/2)|+⟩ + e^{iφ} cos(θ/2)|−⟩`.
pub fn qubit_basis(dir: MeasurementDirection) -> ProjectiveBasis {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = [C64::new(h, 0.0), C64::new(h, 0.0)];
    let minus = [C64::new(h, 0.0), C64::new(-h, 0.0)];
    let (s, c) = (dir.theta / 2.0).sin_cos();
    let phase = C64::from_polar(1.0, dir.phi);
    let up: Vec<C64> = (0..2).map(|k| plus[k] * c + phase * s * minus[k]).collect();
    let down: Vec<C64> = (0..2).map(|k| -plus[k] * s + phase * c * minus[k]).collect();
    ProjectiveBasis {
        projectors: vec![ComplexMatrix::outer(&up, &up), ComplexMatrix::outer(&down, &down)],
        labels: vec![1.0, -1.0],
    }
}

/// Eigenbasis of σ_x, σ_y or σ_z, with the `+1` outcome first.
pub fn pauli_basis(axis: PauliAxis) -> ProjectiveBasis {
    ProjectiveBasis::from_bloch(axis.unit_vector())
}

fn lift(p: &ComplexMatrix, side: Subsystem, rho: &DensityMatrix) -> ComplexMatrix {
    match side {
        Subsystem::A => tensor(p, &ComplexMatrix::identity(rho.dim_b())),
        Subsystem::B => tensor(&ComplexMatrix::identity(rho.dim_a()), p),
    }
}

fn side_dim(rho: &DensityMatrix, side: Subsystem) -> usize {
    match side {
        Subsystem::A => rho.dim_a(),
        Subsystem::B => rho.dim_b(),
    }
}

/// Non-selective measurement on one side: `Σ (P ⊗ 𝟙) ρ (P ⊗ 𝟙)`.
pub fn dephase(rho: &DensityMatrix, basis: &ProjectiveBasis, side: Subsystem) -> Result<DensityMatrix> {
    if basis.dim() != side_dim(rho, side) {
        return Err(Error::DimensionMismatch(format!(
            "{}-dimensional basis on a {}-dimensional subsystem",
            basis.dim(),
            side_dim(rho, side)
        )));
    }
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for p in basis.projectors() {
        let big = lift(p, side, rho);
        out = &out + &big.conjugate(rho.matrix());
    }
    Ok(DensityMatrix::from_map_output(rho.dim_a(), rho.dim_b(), out))
}

/// `Φ_AB = Φ_A ∘ Φ_B`.
pub fn dephase_pair(
    rho: &DensityMatrix,
    basis_a: &ProjectiveBasis,
    basis_b: &ProjectiveBasis,
) -> Result<DensityMatrix> {
    dephase(&dephase(rho, basis_b, Subsystem::B)?, basis_a, Subsystem::A)
}

/// Irreality `S(Φ(ρ)) − S(ρ)` of the observable measured on `side`.
pub fn irreality(basis: &ProjectiveBasis, rho: &DensityMatrix, side: Subsystem) -> Result<f64> {
    let dephased = dephase(rho, basis, side)?;
    Ok(clamp_nonneg(dephased.entropy() - rho.entropy()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{product, qubit_diagonal, qubit_pure, singlet};
    use std::f64::consts::LN_2;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn theta_zero_is_sigma_x_basis() {
        let b = qubit_basis(MeasurementDirection::new(0.0, 0.0).unwrap());
        let x = pauli_basis(PauliAxis::X);
        for (p, q) in b.projectors().iter().zip(x.projectors()) {
            assert!(p.max_abs_diff(q) < 1e-15);
        }
    }

    #[test]
    fn bloch_vector_matches_projectors() {
        for &(t, p) in &[(0.3, 1.1), (2.0, 5.5), (PI / 2.0, 0.0), (1.0, 3.0 * PI / 2.0)] {
            let dir = MeasurementDirection::new(t, p).unwrap();
            let basis = qubit_basis(dir);
            let n = basis.bloch_vector().unwrap();
            let expected = dir.bloch_vector();
            for k in 0..3 {
                assert!((n[k] - expected[k]).abs() < 1e-14);
            }
            let rebuilt = ProjectiveBasis::from_bloch(n);
            assert!(rebuilt.projectors()[0].max_abs_diff(&basis.projectors()[0]) < 1e-14);
        }
    }

    #[test]
    fn completeness_and_validation() {
        let basis = qubit_basis(MeasurementDirection::new(1.234, 4.321).unwrap());
        let checked = ProjectiveBasis::new(basis.projectors().to_vec(), vec![1.0, -1.0]);
        assert!(checked.is_ok());
        let sum = &basis.projectors()[0] + &basis.projectors()[1];
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);

        let z = pauli_basis(PauliAxis::Z);
        let incomplete = ProjectiveBasis::new(vec![z.projectors()[0].clone()], vec![1.0]);
        assert!(incomplete.is_err());
        let doubled = ProjectiveBasis::new(
            vec![z.projectors()[0].clone(), z.projectors()[0].clone()],
            vec![1.0, -1.0],
        );
        assert!(doubled.is_err());
    }

    #[test]
    fn antipodal_direction_swaps_labels() {
        let dir = MeasurementDirection::new(0.7, 2.2).unwrap();
        let a = qubit_basis(dir);
        let b = qubit_basis(dir.antipode());
        assert!(a.projectors()[0].max_abs_diff(&b.projectors()[1]) < 1e-12);
        assert!(a.projectors()[1].max_abs_diff(&b.projectors()[0]) < 1e-12);
    }

    #[test]
    fn direction_ranges() {
        assert!(MeasurementDirection::new(-0.1, 0.0).is_err());
        assert!(MeasurementDirection::new(0.0, TAU).is_err());
        let w = MeasurementDirection::wrapped(-0.5, 7.0);
        assert!((0.0..=PI).contains(&w.theta) && (0.0..TAU).contains(&w.phi));
        let n1 = w.bloch_vector();
        let n2 = bloch_from_angles(-0.5, 7.0);
        assert!((0..3).all(|k| (n1[k] - n2[k]).abs() < 1e-12));
    }

    #[test]
    fn pauli_bases() {
        let z = pauli_basis(PauliAxis::Z);
        assert!(z.projectors()[0].max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0])) < 1e-15);
        let x = pauli_basis(PauliAxis::X);
        let half = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!(x.projectors()[0].max_abs_diff(&half) < 1e-15);
        let y = pauli_basis(PauliAxis::Y);
        for p in y.projectors() {
            for q in z.projectors() {
                assert!(((p * q).trace().re - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dephase_singlet_in_z() {
        let z = pauli_basis(PauliAxis::Z);
        let out = dephase(&singlet(), &z, Subsystem::A).unwrap();
        let expected = ComplexMatrix::diagonal(&[0.0, 0.5, 0.5, 0.0]);
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
        assert!((out.entropy() - LN_2).abs() < 1e-12);
    }

    #[test]
    fn dephase_fixed_point_and_idempotence() {
        let z = pauli_basis(PauliAxis::Z);
        let diag = DensityMatrix::new(2, 2, ComplexMatrix::diagonal(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        assert!(dephase(&diag, &z, Subsystem::B).unwrap().max_abs_diff(&diag) < 1e-15);

        let b = qubit_basis(MeasurementDirection::new(0.4, 1.3).unwrap());
        let once = dephase(&singlet(), &b, Subsystem::B).unwrap();
        let twice = dephase(&once, &b, Subsystem::B).unwrap();
        assert!(once.max_abs_diff(&twice) < 1e-15);
    }

    #[test]
    fn dephase_dimension_mismatch() {
        let q = ProjectiveBasis::computational(3);
        assert!(matches!(
            dephase(&singlet(), &q, Subsystem::A),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn irreality_examples() {
        let z = pauli_basis(PauliAxis::Z);
        let zero_zero = DensityMatrix::new(2, 2, ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(irreality(&z, &zero_zero, Subsystem::A).unwrap(), 0.0);

        let plus = qubit_pure([r(1.0), r(1.0)]).unwrap();
        let mixed = qubit_diagonal(0.5).unwrap();
        let rho = product(&plus, &mixed).unwrap();
        let value = irreality(&z, &rho, Subsystem::A).unwrap();
        assert!((value - (4f64.ln() - LN_2)).abs() < 1e-12);

        let value = irreality(&z, &singlet(), Subsystem::A).unwrap();
        assert!((value - LN_2).abs() < 1e-12);
    }
}
