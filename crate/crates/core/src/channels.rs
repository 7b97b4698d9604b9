//! Single-qubit Kraus noise channels applied to one side of a bipartite
//! state.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_range, Error, Result};
use crate::matcore::{pauli, tensor, ComplexMatrix, DensityMatrix, PauliAxis, Subsystem};

/// Tolerance on `Σ K†K = I`.
pub const COMPLETENESS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// Bit inversion, σ₁.
    BitFlip,
    /// Phase inversion, σ₃.
    PhaseFlip,
    /// Bit and phase inversion, σ₂.
    BitPhaseFlip,
    Depolarizing,
    /// Generalized amplitude damping.
    AmplitudeDamping,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 5] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::Depolarizing,
        ChannelKind::AmplitudeDamping,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "IB",
            ChannelKind::PhaseFlip => "IF",
            ChannelKind::BitPhaseFlip => "IBF",
            ChannelKind::Depolarizing => "DP",
            ChannelKind::AmplitudeDamping => "AD",
        }
    }

    pub fn uses_gamma(self) -> bool {
        self == ChannelKind::AmplitudeDamping
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChannelKind::ALL
            .into_iter()
            .find(|k| k.code().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownChannel(s.to_string()))
    }
}

/// A named qubit channel given by its Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kind: ChannelKind,
    kraus_ops: Vec<ComplexMatrix>,
    p: f64,
    gamma: Option<f64>,
}

fn inversion(kind: ChannelKind, axis: PauliAxis, p: f64) -> Result<KrausChannel> {
    check_range("p", p, 0.0, 1.0, "[0, 1]")?;
    Ok(KrausChannel {
        kind,
        kraus_ops: vec![
            ComplexMatrix::identity(2).scale_real(p.sqrt()),
            pauli(axis).scale_real((1.0 - p).sqrt()),
        ],
        p,
        gamma: None,
    })
}

/// `{√p 𝟙, √(1−p) σ₁}`; `p = 1` is the identity channel.
pub fn bit_flip(p: f64) -> Result<KrausChannel> {
    inversion(ChannelKind::BitFlip, PauliAxis::X, p)
}

/// `{√p 𝟙, √(1−p) σ₃}`
pub fn phase_flip(p: f64) -> Result<KrausChannel> {
    inversion(ChannelKind::PhaseFlip, PauliAxis::Z, p)
}

/// `{√p 𝟙, √(1−p) σ₂}`
pub fn bit_phase_flip(p: f64) -> Result<KrausChannel> {
    inversion(ChannelKind::BitPhaseFlip, PauliAxis::Y, p)
}

/// `{√(1−3p/4) 𝟙, √(p/4) σ₁, √(p/4) σ₂, √(p/4) σ₃}`
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    check_range("p", p, 0.0, 1.0, "[0, 1]")?;
    let w = (p / 4.0).sqrt();
    let mut ops = vec![ComplexMatrix::identity(2).scale_real((1.0 - 0.75 * p).sqrt())];
    ops.extend(PauliAxis::ALL.map(|a| pauli(a).scale_real(w)));
    Ok(KrausChannel {
        kind: ChannelKind::Depolarizing,
        kraus_ops: ops,
        p,
        gamma: None,
    })
}

/// Generalized amplitude damping with `s = √(1−γ)`, `t = √γ`:
/// `√p {[[1,0],[0,s]], [[0,t],[0,0]]}` and `√(1−p) {[[s,0],[0,1]], [[0,0],[t,0]]}`.
pub fn amplitude_damping(p: f64, gamma: f64) -> Result<KrausChannel> {
    check_range("p", p, 0.0, 1.0, "[0, 1]")?;
    check_range("gamma", gamma, 0.0, 1.0, "[0, 1]")?;
    let s = (1.0 - gamma).sqrt();
    let t = gamma.sqrt();
    let m = |d: [f64; 4]| ComplexMatrix::from_real(2, 2, &d).expect("2x2");
    let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
    Ok(KrausChannel {
        kind: ChannelKind::AmplitudeDamping,
        kraus_ops: vec![
            m([1.0, 0.0, 0.0, s]).scale_real(a),
            m([0.0, t, 0.0, 0.0]).scale_real(a),
            m([s, 0.0, 0.0, 1.0]).scale_real(b),
            m([0.0, 0.0, t, 0.0]).scale_real(b),
        ],
        p,
        gamma: Some(gamma),
    })
}

impl KrausChannel {
    /// Builds any of the five channels; `gamma` is required for AD only.
    pub fn from_kind(kind: ChannelKind, p: f64, gamma: Option<f64>) -> Result<Self> {
        match kind {
            ChannelKind::BitFlip => bit_flip(p),
            ChannelKind::PhaseFlip => phase_flip(p),
            ChannelKind::BitPhaseFlip => bit_phase_flip(p),
            ChannelKind::Depolarizing => depolarizing(p),
            ChannelKind::AmplitudeDamping => {
                let g = gamma.ok_or(Error::OutOfRange {
                    name: "gamma",
                    value: f64::NAN,
                    range: "[0, 1] (required for AD)",
                })?;
                amplitude_damping(p, g)
            }
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.code()
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    /// `max |Σ K†K − I|`
    pub fn completeness_error(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for k in &self.kraus_ops {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }

    /// The channel applied to a single-qubit state.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 2 || rho.dim_b() != 1 {
            return Err(Error::DimensionMismatch("single-qubit state expected".into()));
        }
        let mut out = ComplexMatrix::zeros(2, 2);
        for k in &self.kraus_ops {
            out = &out + &k.conjugate(rho.matrix());
        }
        Ok(DensityMatrix::from_map_output(2, 1, out))
    }
}

/// True iff `Σ K K† = I` within 1e-10.
pub fn is_unital(channel: &KrausChannel) -> bool {
    let mut sum = ComplexMatrix::zeros(2, 2);
    for k in &channel.kraus_ops {
        sum = &sum + &(k * &k.adjoint());
    }
    sum.max_abs_diff(&ComplexMatrix::identity(2)) <= 1e-10
}

/// `Σ_i (𝟙 ⊗ K_i) ρ (𝟙 ⊗ K_i)†` for `side = B`, mirrored for `A`.
pub fn apply_local(channel: &KrausChannel, rho: &DensityMatrix, side: Subsystem) -> Result<DensityMatrix> {
    let target = match side {
        Subsystem::A => rho.dim_a(),
        Subsystem::B => rho.dim_b(),
    };
    if target != 2 {
        return Err(Error::DimensionMismatch(format!(
            "qubit channel on a {target}-dimensional subsystem"
        )));
    }
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for k in &channel.kraus_ops {
        let big = match side {
            Subsystem::A => tensor(k, &ComplexMatrix::identity(rho.dim_b())),
            Subsystem::B => tensor(&ComplexMatrix::identity(rho.dim_a()), k),
        };
        out = &out + &big.conjugate(rho.matrix());
    }
    Ok(DensityMatrix::from_map_output(rho.dim_a(), rho.dim_b(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::partial_trace;
    use crate::states::{qubit_diagonal, singlet, werner};

    #[test]
    fn completeness_of_all_constructors() {
        for &p in &[0.0, 0.37, 0.5, 1.0] {
            for &g in &[0.0, 0.5, 1.0] {
                for kind in ChannelKind::ALL {
                    let ch = KrausChannel::from_kind(kind, p, Some(g)).unwrap();
                    assert!(ch.completeness_error() <= COMPLETENESS_TOL, "{kind} p={p} g={g}");
                }
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(bit_flip(1.5).is_err());
        assert!(depolarizing(-0.1).is_err());
        assert!(amplitude_damping(0.5, 1.1).is_err());
        assert!(KrausChannel::from_kind(ChannelKind::AmplitudeDamping, 0.5, None).is_err());
        assert!("XX".parse::<ChannelKind>().is_err());
        assert_eq!("ibf".parse::<ChannelKind>().unwrap(), ChannelKind::BitPhaseFlip);
    }

    #[test]
    fn inversion_endpoints() {
        let rho = werner(0.6).unwrap();
        for kind in [ChannelKind::BitFlip, ChannelKind::PhaseFlip, ChannelKind::BitPhaseFlip] {
            let id = KrausChannel::from_kind(kind, 1.0, None).unwrap();
            assert!(apply_local(&id, &rho, Subsystem::B).unwrap().max_abs_diff(&rho) < 1e-15);
            let mixed = qubit_diagonal(0.5).unwrap();
            let half = KrausChannel::from_kind(kind, 0.5, None).unwrap();
            assert!(half.apply(&mixed).unwrap().max_abs_diff(&mixed) < 1e-15);
        }
    }

    #[test]
    fn bit_flip_zero_is_local_sigma_x() {
        let s = singlet();
        let out = apply_local(&bit_flip(0.0).unwrap(), &s, Subsystem::B).unwrap();
        let u = tensor(&ComplexMatrix::identity(2), &pauli(PauliAxis::X));
        assert!(out.matrix().max_abs_diff(&u.conjugate(s.matrix())) < 1e-15);
        assert!(out.entropy().abs() < 1e-12);
        let marginal = partial_trace(&out, Subsystem::A);
        assert!((marginal.entropy() - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn depolarizing_endpoints() {
        let rho = werner(0.8).unwrap();
        let id = depolarizing(0.0).unwrap();
        assert!(apply_local(&id, &rho, Subsystem::B).unwrap().max_abs_diff(&rho) < 1e-15);
        let full = depolarizing(1.0).unwrap();
        let out = apply_local(&full, &rho, Subsystem::B).unwrap();
        assert!(out.max_abs_diff(&DensityMatrix::maximally_mixed(2, 2)) < 1e-15);
        let pure = crate::states::qubit_diagonal(1.0).unwrap();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(full.apply(&pure).unwrap().matrix().max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn amplitude_damping_examples() {
        let rho = werner(0.4).unwrap();
        for p in [0.0, 0.3, 1.0] {
            let id = amplitude_damping(p, 0.0).unwrap();
            assert!(apply_local(&id, &rho, Subsystem::B).unwrap().max_abs_diff(&rho) < 1e-15);
        }
        let mixed = qubit_diagonal(0.5).unwrap();
        let full = amplitude_damping(1.0, 1.0).unwrap();
        let ground = ComplexMatrix::diagonal(&[1.0, 0.0]);
        assert!(full.apply(&mixed).unwrap().matrix().max_abs_diff(&ground) < 1e-15);
        let biased = amplitude_damping(0.8, 0.5).unwrap();
        assert!(biased.apply(&mixed).unwrap().max_abs_diff(&mixed) > 1e-3);
        // Σ K K† = diag(1 + γ(2p−1), 1 − γ(2p−1)): the p = 1/2 member fixes I/2.
        let balanced = amplitude_damping(0.5, 0.5).unwrap();
        assert!(balanced.apply(&mixed).unwrap().max_abs_diff(&mixed) < 1e-15);
    }

    #[test]
    fn unitality() {
        assert!(is_unital(&depolarizing(0.7).unwrap()));
        assert!(is_unital(&bit_flip(0.3).unwrap()));
        assert!(is_unital(&phase_flip(0.9).unwrap()));
        assert!(!is_unital(&amplitude_damping(0.8, 0.5).unwrap()));
        assert!(!is_unital(&amplitude_damping(1.0, 1.0).unwrap()));
        assert!(is_unital(&amplitude_damping(0.5, 0.5).unwrap()));
    }

    #[test]
    fn side_a_mirrors_side_b() {
        let rho = werner(0.7).unwrap();
        let ch = amplitude_damping(0.3, 0.8).unwrap();
        let on_a = apply_local(&ch, &rho, Subsystem::A).unwrap();
        let on_b = apply_local(&ch, &rho, Subsystem::B).unwrap();
        // The singlet mixture is swap-symmetric, so the two images are swaps of each other.
        let m = |r: &DensityMatrix, i: usize, j: usize| r.get(i, j);
        let swap = [0usize, 2, 1, 3];
        for i in 0..4 {
            for j in 0..4 {
                assert!((m(&on_a, i, j) - m(&on_b, swap[i], swap[j])).norm() < 1e-15);
            }
        }
        assert!((on_a.entropy() - on_b.entropy()).abs() < 1e-12);
    }
}
