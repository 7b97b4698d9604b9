//! Contextual nonlocality, realism-based nonlocality (RBN), global
//! quantum discord and concurrence.

mod kernel;
mod optimize;

pub use optimize::{OptimizerConfig, OptimizerResult};

use kernel::TwoQubitKernel;
use optimize::{search, Objective};

use crate::error::{check_range, Error, Result};
use crate::matcore::{
    hermitian_function, partial_trace, pauli, spectral_entropy, tensor, ComplexMatrix, DensityMatrix, PauliAxis,
    Subsystem,
};
use crate::measurement::{clamp_nonneg, dephase, dephase_pair, ProjectiveBasis};

/// `η_AB(ρ) = S(Φ_A ρ) + S(Φ_B ρ) − S(Φ_AB ρ) − S(ρ)`, evaluated by
/// explicit dephasing.
pub fn eta(basis_a: &ProjectiveBasis, basis_b: &ProjectiveBasis, rho: &DensityMatrix) -> Result<f64> {
    let s_a = dephase(rho, basis_a, Subsystem::A)?.entropy();
    let s_b = dephase(rho, basis_b, Subsystem::B)?.entropy();
    let s_ab = dephase_pair(rho, basis_a, basis_b)?.entropy();
    Ok(clamp_nonneg(s_a + s_b - s_ab - rho.entropy()))
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.is_two_qubit() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "two-qubit state required, got {}x{}",
            rho.dim_a(),
            rho.dim_b()
        )))
    }
}

/// Repeated context evaluation on one fixed two-qubit state.
#[derive(Debug, Clone)]
pub struct ContextEvaluator {
    kernel: TwoQubitKernel,
}

impl ContextEvaluator {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        require_two_qubit(rho)?;
        Ok(Self {
            kernel: TwoQubitKernel::new(rho),
        })
    }

    /// η for measurement axes given as Bloch vectors.
    pub fn eta(&self, axis_a: [f64; 3], axis_b: [f64; 3]) -> f64 {
        let a = self.kernel.side_a(axis_a);
        let b = self.kernel.side_b(axis_b);
        clamp_nonneg(self.kernel.eta(&a, &b))
    }

    pub fn eta_pauli(&self, a: PauliAxis, b: PauliAxis) -> f64 {
        self.eta(a.unit_vector(), b.unit_vector())
    }

    /// The global-discord functional at a fixed pair of axes.
    pub fn discord_at(&self, axis_a: [f64; 3], axis_b: [f64; 3]) -> f64 {
        let a = self.kernel.side_a(axis_a);
        let b = self.kernel.side_b(axis_b);
        clamp_nonneg(self.kernel.discord_objective(&a, &b))
    }

    pub fn rbn(&self, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
        let mut r = search(&self.kernel, Objective::Rbn, cfg)?;
        r.value = clamp_nonneg(r.value);
        Ok(r)
    }

    pub fn global_discord(&self, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
        let mut r = search(&self.kernel, Objective::Discord, cfg)?;
        r.value = clamp_nonneg(r.value);
        Ok(r)
    }

    pub fn entropy(&self) -> f64 {
        self.kernel.entropy()
    }

    pub fn marginal_entropies(&self) -> (f64, f64) {
        self.kernel.marginal_entropies()
    }
}

/// `N_rb(ρ) = max_{A,B} η_AB(ρ)` over local qubit projective measurements.
pub fn rbn(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    ContextEvaluator::new(rho)?.rbn(cfg)
}

/// Global discord: minimum over local bases of
/// `[S(Φ_AB ρ) − S(ρ)] − [S(Φ_A ρ_A) − S(ρ_A)] − [S(Φ_B ρ_B) − S(ρ_B)]`.
pub fn global_discord(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    ContextEvaluator::new(rho)?.global_discord(cfg)
}

/// `(1+x) ln((1+x)/4)`, zero at `x = −1`.
pub fn werner_log_term(x: f64) -> f64 {
    let y = 1.0 + x;
    if y <= 0.0 {
        0.0
    } else {
        y * (y / 4.0).ln()
    }
}

/// Same-axis η of the Werner state, `−½[F(μ) + F(−μ)] − S(ρ_μ)`.
pub fn werner_rbn_closed_form(mu: f64) -> Result<f64> {
    check_range("mu", mu, 0.0, 1.0, "[0, 1]")?;
    let dephased = -0.5 * (werner_log_term(mu) + werner_log_term(-mu));
    let singlet_weight = (1.0 + 3.0 * mu) / 4.0;
    let triplet_weight = (1.0 - mu) / 4.0;
    let s = spectral_entropy(&[singlet_weight, triplet_weight, triplet_weight, triplet_weight]);
    Ok(clamp_nonneg(dephased - s))
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, with `λ_i` the
/// descending eigenvalues of `√(√ρ ρ̃ √ρ)` and
/// `ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let yy = tensor(&pauli(PauliAxis::Y), &pauli(PauliAxis::Y));
    let flipped = yy.conjugate(&rho.matrix().conj());
    let sqrt_rho = hermitian_function(rho.matrix(), |x| x.max(0.0).sqrt())?;
    let inner: ComplexMatrix = sqrt_rho.conjugate(&flipped);
    let mut lambdas: Vec<f64> = crate::matcore::eigvals_hermitian(&inner.hermitian_part())?
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1..].iter().sum::<f64>();
    Ok(c.clamp(0.0, 1.0))
}

/// The global-discord functional at fixed bases, by explicit dephasing.
pub fn discord_functional(
    basis_a: &ProjectiveBasis,
    basis_b: &ProjectiveBasis,
    rho: &DensityMatrix,
) -> Result<f64> {
    let ra = partial_trace(rho, Subsystem::A);
    let rb = partial_trace(rho, Subsystem::B);
    let joint = dephase_pair(rho, basis_a, basis_b)?.entropy() - rho.entropy();
    let local_a = dephase(&ra, basis_a, Subsystem::A)?.entropy() - ra.entropy();
    let local_b = dephase(&rb, basis_b, Subsystem::A)?.entropy() - rb.entropy();
    Ok(clamp_nonneg(joint - local_a - local_b))
}
