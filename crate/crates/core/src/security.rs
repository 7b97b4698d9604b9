//! Eavesdropping on Bob's qubit and the RBN witness that exposes it.

use rand::Rng;
use rayon::prelude::*;

use crate::correlations::{werner_log_term, ContextEvaluator};
use crate::error::{check_range, Error, Result};
use crate::matcore::{partial_trace, tensor, ComplexMatrix, DensityMatrix, PauliAxis, Subsystem};
use crate::measurement::{dephase, qubit_basis, MeasurementDirection, ProjectiveBasis};
use crate::random::{random_direction, substream};
use crate::states::werner;

/// Eve's unread measurement of Bob's qubit: `Σ_b (𝟙 ⊗ B'_b) ρ (𝟙 ⊗ B'_b)`.
pub fn eve_intercept(rho: &DensityMatrix, basis: &ProjectiveBasis) -> Result<DensityMatrix> {
    dephase(rho, basis, Subsystem::B)
}

/// True iff every cross-overlap `|⟨b|b'⟩|²` equals `1/d` within 1e-10.
pub fn mub_overlap_check(b1: &ProjectiveBasis, b2: &ProjectiveBasis) -> Result<bool> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}- vs {}-dimensional bases",
            b1.dim(),
            b2.dim()
        )));
    }
    let target = 1.0 / b1.dim() as f64;
    Ok(b1
        .projectors()
        .iter()
        .all(|p| b2.projectors().iter().all(|q| ((p * q).trace().re - target).abs() <= 1e-10)))
}

/// `Φ_B Φ_B'(ρ)` for mutually unbiased `B`, `B'`; equals `ρ_A ⊗ 𝟙/d_B`.
pub fn double_dephase_mub(
    rho: &DensityMatrix,
    basis_b: &ProjectiveBasis,
    basis_b_prime: &ProjectiveBasis,
) -> Result<DensityMatrix> {
    if !mub_overlap_check(basis_b, basis_b_prime)? {
        return Err(Error::NotMutuallyUnbiased);
    }
    dephase(&dephase(rho, basis_b_prime, Subsystem::B)?, basis_b, Subsystem::B)
}

/// `ρ_A ⊗ 𝟙/d_B`, the closed form of [`double_dephase_mub`].
pub fn marginal_times_mixed(rho: &DensityMatrix) -> DensityMatrix {
    let ra = partial_trace(rho, Subsystem::A);
    let db = rho.dim_b();
    let m = tensor(ra.matrix(), &ComplexMatrix::identity(db).scale_real(1.0 / db as f64));
    DensityMatrix::new(rho.dim_a(), db, m).expect("product of valid states")
}

fn eve_log_term(mu: f64, r: f64) -> f64 {
    werner_log_term(mu * r)
}

/// Shared-axis η of a Werner state after Eve measures along a direction
/// whose Bloch overlap with the shared axis is `r`:
/// `½[F(μ) + F(−μ) − G(μ,r) − G(−μ,r)]`.
///
/// Exact when Eve is unbiased (`r = 0`) or aligned (`r = ±1`) with the
/// shared axis; for intermediate overlaps it overestimates the numeric η.
pub fn eta_after_eve_analytic(mu: f64, r: f64) -> Result<f64> {
    check_range("mu", mu, 0.0, 1.0, "[0, 1]")?;
    check_range("r", r, -1.0, 1.0, "[-1, 1]")?;
    let v = 0.5
        * (werner_log_term(mu) + werner_log_term(-mu) - eve_log_term(mu, r) - eve_log_term(-mu, r));
    Ok(v.max(0.0))
}

/// Largest η an intercepted Werner state can show: `½[F(μ) + F(−μ)] + ln 4`.
pub fn rbn_after_eve_analytic(mu: f64) -> Result<f64> {
    check_range("mu", mu, 0.0, 1.0, "[0, 1]")?;
    Ok((0.5 * (werner_log_term(mu) + werner_log_term(-mu)) + 4f64.ln()).max(0.0))
}

/// Bloch overlap `r` between Eve's direction and the legitimate axis.
pub fn eve_overlap(eve: &MeasurementDirection, axis: [f64; 3]) -> f64 {
    let n = eve.bloch_vector();
    (n[0] * axis[0] + n[1] * axis[1] + n[2] * axis[2]).clamp(-1.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Only Alice and Bob touch the channel.
    Ideal,
    /// Eve measures Bob's qubit along a random direction.
    EveRandom,
    /// Eve measures the same observable as Bob.
    EveAligned,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Ideal => "ideal",
            Scenario::EveRandom => "eve-random",
            Scenario::EveAligned => "eve-aligned",
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ideal" => Ok(Scenario::Ideal),
            "eve-random" => Ok(Scenario::EveRandom),
            "eve-aligned" => Ok(Scenario::EveAligned),
            other => Err(format!("unknown scenario '{other}'")),
        }
    }
}

/// How the legitimate parties pick their measurement directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// One of σ_x, σ_y, σ_z, uniformly.
    Pauli,
    /// `θ ~ U[0, π]`, `φ ~ U[0, 2π)`.
    Continuous,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Pauli => "pauli",
            BasisKind::Continuous => "continuous",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig {
    pub samples: usize,
    pub mu_range: (f64, f64),
    pub scenario: Scenario,
    pub seed: u64,
}

impl ProtocolConfig {
    pub fn new(scenario: Scenario, samples: usize, seed: u64) -> Self {
        Self {
            samples,
            mu_range: (0.0, 1.0),
            scenario,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be >= 1".into()));
        }
        let (lo, hi) = self.mu_range;
        check_range("mu_min", lo, 0.0, 1.0, "[0, 1]")?;
        check_range("mu_max", hi, lo, 1.0, "[mu_min, 1]")?;
        Ok(())
    }
}

/// One protocol run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolRecord {
    pub mu: f64,
    pub kind: BasisKind,
    pub alice: MeasurementDirection,
    pub bob: MeasurementDirection,
    /// Pauli labels when `kind` is [`BasisKind::Pauli`].
    pub alice_axis: Option<PauliAxis>,
    pub bob_axis: Option<PauliAxis>,
    pub eve: Option<MeasurementDirection>,
    /// η in nats.
    pub eta: f64,
}

fn draw_record(cfg: &ProtocolConfig, index: usize) -> Result<ProtocolRecord> {
    let mut rng = substream(cfg.seed, index as u64);
    let (lo, hi) = cfg.mu_range;
    let mu = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
    // Even samples use Pauli observables, odd samples continuous directions.
    let kind = if index % 2 == 0 {
        BasisKind::Pauli
    } else {
        BasisKind::Continuous
    };
    let (alice, bob, alice_axis, bob_axis) = match kind {
        BasisKind::Pauli => {
            let a = PauliAxis::ALL[rng.gen_range(0..3)];
            let b = PauliAxis::ALL[rng.gen_range(0..3)];
            (
                MeasurementDirection::from_axis(a),
                MeasurementDirection::from_axis(b),
                Some(a),
                Some(b),
            )
        }
        BasisKind::Continuous => (random_direction(&mut rng), random_direction(&mut rng), None, None),
    };
    let eve = match cfg.scenario {
        Scenario::Ideal => None,
        Scenario::EveRandom => Some(random_direction(&mut rng)),
        Scenario::EveAligned => Some(bob),
    };
    let rho = werner(mu)?;
    let state = match eve {
        Some(e) => eve_intercept(&rho, &qubit_basis(e))?,
        None => rho,
    };
    let eta = ContextEvaluator::new(&state)?.eta(alice.bloch_vector(), bob.bloch_vector());
    Ok(ProtocolRecord {
        mu,
        kind,
        alice,
        bob,
        alice_axis,
        bob_axis,
        eve,
        eta,
    })
}

/// Monte-Carlo runs of the Werner-state protocol. Record `i` depends only
/// on `(seed, i)`.
pub fn simulate_protocol(cfg: &ProtocolConfig) -> Result<Vec<ProtocolRecord>> {
    cfg.validate()?;
    (0..cfg.samples).into_par_iter().map(|i| draw_record(cfg, i)).collect()
}
