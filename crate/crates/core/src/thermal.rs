//! Thermal qubits correlated by a fixed two-qubit unitary, and the
//! temperature sweeps over the resulting X state.
//!
//! Units: `k_B = 1`; energy and `kT` share one arbitrary unit. The ground
//! level sits at zero energy.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use crate::channels::{apply_local, ChannelKind, KrausChannel};
use crate::correlations::{ContextEvaluator, OptimizerConfig};
use crate::error::{check_range, Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix, PauliAxis, Subsystem, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    /// Excited-level energy.
    pub energy: f64,
    pub kt: f64,
}

impl ThermalParams {
    pub fn new(energy: f64, kt: f64) -> Result<Self> {
        if !(kt > 0.0) || !kt.is_finite() {
            return Err(Error::OutOfRange {
                name: "kT",
                value: kt,
                range: "(0, inf)",
            });
        }
        check_range("E", energy, 0.0, f64::MAX, "[0, inf)")?;
        Ok(Self { energy, kt })
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.kt
    }

    /// Ground-state population `q = 1/(1 + e^{−βE})`.
    pub fn ground_population(&self) -> f64 {
        1.0 / (1.0 + (-self.beta() * self.energy).exp())
    }
}

/// `τ_β = q|0⟩⟨0| + (1−q)|1⟩⟨1|`
pub fn gibbs_qubit(params: &ThermalParams) -> DensityMatrix {
    let q = params.ground_population();
    DensityMatrix::single(ComplexMatrix::diagonal(&[q, 1.0 - q])).expect("diagonal populations")
}

fn ket(amps: [f64; 4]) -> Vec<C64> {
    amps.iter().map(|&a| C64::new(a, 0.0)).collect()
}

/// `U = V₂V₁`: `V₁` exchanges `|10⟩ ↔ |11⟩`, then `V₂` sends
/// `|00⟩ → |φ₊⟩` and `|11⟩ → |φ₋⟩`.
pub fn correlating_unitary() -> ComplexMatrix {
    let basis = |k: usize| {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        ket(v)
    };
    let h = FRAC_1_SQRT_2;
    let phi_plus = ket([h, 0.0, 0.0, h]);
    let phi_minus = ket([h, 0.0, 0.0, -h]);
    let v1 = [(0, 0), (1, 1), (3, 2), (2, 3)]
        .iter()
        .fold(ComplexMatrix::zeros(4, 4), |acc, &(to, from)| {
            &acc + &ComplexMatrix::outer(&basis(to), &basis(from))
        });
    let v2 = [
        ComplexMatrix::outer(&phi_plus, &basis(0)),
        ComplexMatrix::outer(&basis(1), &basis(1)),
        ComplexMatrix::outer(&basis(2), &basis(2)),
        ComplexMatrix::outer(&phi_minus, &basis(3)),
    ]
    .iter()
    .fold(ComplexMatrix::zeros(4, 4), |acc, m| &acc + m);
    &v2 * &v1
}

/// The correlated thermal X state, written out entrywise in the
/// computational basis.
pub fn rho_x(q: f64) -> Result<DensityMatrix> {
    check_range("q", q, 0.5, 1.0, "[1/2, 1]")?;
    let corner = q * q - q / 2.0;
    let mut m = ComplexMatrix::diagonal(&[q / 2.0, q * (1.0 - q), (1.0 - q) * (1.0 - q), q / 2.0]);
    m[(0, 3)] = C64::new(corner, 0.0);
    m[(3, 0)] = C64::new(corner, 0.0);
    DensityMatrix::new(2, 2, m)
}

/// `U (τ_β ⊗ τ_β) U†`, built from the Gibbs states instead of the closed form.
pub fn correlated_thermal_state(params: &ThermalParams) -> DensityMatrix {
    let tau = gibbs_qubit(params);
    let rho0 = crate::states::product(&tau, &tau).expect("qubit states");
    rho0.evolve(&correlating_unitary()).expect("unitary")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalRow {
    pub energy: f64,
    pub kt: f64,
    pub q: f64,
    pub rbn: f64,
    pub eta_xx: f64,
    pub eta_zz: f64,
    pub gd: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalNoiseRow {
    pub clean: ThermalRow,
    pub channel: ChannelKind,
    pub p: f64,
    pub gamma: Option<f64>,
    pub rbn_noisy: f64,
}

fn thermal_row(energy: f64, kt: f64, cfg: &OptimizerConfig) -> Result<ThermalRow> {
    let params = ThermalParams::new(energy, kt)?;
    let q = params.ground_population();
    let eval = ContextEvaluator::new(&rho_x(q)?)?;
    Ok(ThermalRow {
        energy,
        kt,
        q,
        rbn: eval.rbn(cfg)?.value,
        eta_xx: eval.eta_pauli(PauliAxis::X, PauliAxis::X),
        eta_zz: eval.eta_pauli(PauliAxis::Z, PauliAxis::Z),
        gd: eval.global_discord(cfg)?.value,
    })
}

/// One row per `(E, kT)`, energies outermost, in grid order.
pub fn thermal_sweep(energies: &[f64], kt_grid: &[f64], cfg: &OptimizerConfig) -> Result<Vec<ThermalRow>> {
    cfg.validate()?;
    let points: Vec<(f64, f64)> = energies
        .iter()
        .flat_map(|&e| kt_grid.iter().map(move |&kt| (e, kt)))
        .collect();
    points
        .par_iter()
        .map(|&(e, kt)| thermal_row(e, kt, cfg))
        .collect()
}

/// `N_rb` of the X state after a local channel on Bob's side, for every
/// `kT` and channel parameter pair `(p, γ)`. Rows are kT-major.
pub fn thermal_noise_sweep(
    energy: f64,
    kt_grid: &[f64],
    kind: ChannelKind,
    params: &[(f64, Option<f64>)],
    cfg: &OptimizerConfig,
) -> Result<Vec<ThermalNoiseRow>> {
    cfg.validate()?;
    let channels: Vec<KrausChannel> = params
        .iter()
        .map(|&(p, g)| KrausChannel::from_kind(kind, p, g))
        .collect::<Result<_>>()?;
    let clean = thermal_sweep(&[energy], kt_grid, cfg)?;
    let jobs: Vec<(usize, usize)> = (0..clean.len())
        .flat_map(|i| (0..channels.len()).map(move |j| (i, j)))
        .collect();
    jobs.par_iter()
        .map(|&(i, j)| {
            let row = clean[i];
            let rho = rho_x(row.q)?;
            let noisy = apply_local(&channels[j], &rho, Subsystem::B)?;
            let rbn_noisy = ContextEvaluator::new(&noisy)?.rbn(cfg)?.value;
            Ok(ThermalNoiseRow {
                clean: row,
                channel: kind,
                p: channels[j].p(),
                gamma: channels[j].gamma(),
                rbn_noisy,
            })
        })
        .collect()
}
