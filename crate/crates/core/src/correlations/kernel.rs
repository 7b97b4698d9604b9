//! Closed-form two-qubit evaluation of dephased entropies.
//!
//! With rank-one local projectors, `Φ_A(ρ) = Σ_a A_a ⊗ M_a` where
//! `M_a = Tr_A[(A_a ⊗ 𝟙) ρ]`, so its spectrum is the union of the 2x2
//! spectra of the `M_a`. `Φ_AB(ρ)` is diagonal with weights `Tr(B_b M_a)`.

use crate::matcore::{eigvals_2x2, partial_trace, spectral_entropy, DensityMatrix, Subsystem, C64};

/// Hermitian 2x2 block `[[a, b], [b*, d]]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Herm2 {
    a: f64,
    d: f64,
    b: C64,
}

impl Herm2 {
    fn projector(n: [f64; 3]) -> Self {
        Herm2 {
            a: 0.5 * (1.0 + n[2]),
            d: 0.5 * (1.0 - n[2]),
            b: C64::new(0.5 * n[0], -0.5 * n[1]),
        }
    }

    fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// `Tr(self · other)` for Hermitian operands.
    fn trace_product(&self, other: &Herm2) -> f64 {
        self.a * other.a + self.d * other.d + 2.0 * (self.b * other.b.conj()).re
    }

    fn minus(&self, other: &Herm2) -> Herm2 {
        Herm2 {
            a: self.a - other.a,
            d: self.d - other.d,
            b: self.b - other.b,
        }
    }

    fn eigvals(&self) -> [f64; 2] {
        eigvals_2x2(self.a, self.d, self.b)
    }
}

#[inline]
fn xlnx(x: f64) -> f64 {
    if x > 1e-12 {
        -x * x.ln()
    } else {
        0.0
    }
}

#[inline]
fn binary_entropy(p: f64) -> f64 {
    xlnx(p) + xlnx(1.0 - p)
}

/// Everything about one local direction on side A that pair evaluations need.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SideA {
    /// `M_+`; `M_−` is `ρ_B − M_+`.
    block_plus: Herm2,
    block_minus: Herm2,
    /// `S(Φ_A ρ)`
    dephased_entropy: f64,
    /// `S(Φ_A ρ_A)`
    local_entropy: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SideB {
    projector_plus: Herm2,
    dephased_entropy: f64,
    local_entropy: f64,
}

/// Cached data for a fixed two-qubit state.
#[derive(Debug, Clone)]
pub(crate) struct TwoQubitKernel {
    rho: [[C64; 4]; 4],
    marginal_a: Herm2,
    marginal_b: Herm2,
    entropy: f64,
    marginal_a_entropy: f64,
    marginal_b_entropy: f64,
}

fn herm_from(m: &DensityMatrix) -> Herm2 {
    Herm2 {
        a: m.get(0, 0).re,
        d: m.get(1, 1).re,
        b: m.get(0, 1),
    }
}

impl TwoQubitKernel {
    pub(crate) fn new(rho: &DensityMatrix) -> Self {
        debug_assert!(rho.is_two_qubit());
        let mut r = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = rho.get(i, j);
            }
        }
        let ra = partial_trace(rho, Subsystem::A);
        let rb = partial_trace(rho, Subsystem::B);
        Self {
            rho: r,
            marginal_a: herm_from(&ra),
            marginal_b: herm_from(&rb),
            entropy: rho.entropy(),
            marginal_a_entropy: ra.entropy(),
            marginal_b_entropy: rb.entropy(),
        }
    }

    pub(crate) fn entropy(&self) -> f64 {
        self.entropy
    }

    pub(crate) fn marginal_entropies(&self) -> (f64, f64) {
        (self.marginal_a_entropy, self.marginal_b_entropy)
    }

    /// `M = Tr_A[(P ⊗ 𝟙) ρ]`, i.e. `M[j,k] = Σ_{i,m} P[i,m] ρ[(m,j),(i,k)]`.
    fn block_on_b(&self, p: &Herm2) -> Herm2 {
        let pm = [[C64::new(p.a, 0.0), p.b], [p.b.conj(), C64::new(p.d, 0.0)]];
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, prow) in pm.iter().enumerate() {
            for (mm, &pim) in prow.iter().enumerate() {
                for (j, mrow) in m.iter_mut().enumerate() {
                    for (k, z) in mrow.iter_mut().enumerate() {
                        *z += pim * self.rho[2 * mm + j][2 * i + k];
                    }
                }
            }
        }
        Herm2 {
            a: m[0][0].re,
            d: m[1][1].re,
            b: 0.5 * (m[0][1] + m[1][0].conj()),
        }
    }

    /// `N = Tr_B[(𝟙 ⊗ P) ρ]`, i.e. `N[i,i'] = Σ_{j,l} P[j,l] ρ[(i,l),(i',j)]`.
    fn block_on_a(&self, p: &Herm2) -> Herm2 {
        let pm = [[C64::new(p.a, 0.0), p.b], [p.b.conj(), C64::new(p.d, 0.0)]];
        let mut n = [[C64::new(0.0, 0.0); 2]; 2];
        for (j, prow) in pm.iter().enumerate() {
            for (l, &pjl) in prow.iter().enumerate() {
                for (i, nrow) in n.iter_mut().enumerate() {
                    for (ip, z) in nrow.iter_mut().enumerate() {
                        *z += pjl * self.rho[2 * i + l][2 * ip + j];
                    }
                }
            }
        }
        Herm2 {
            a: n[0][0].re,
            d: n[1][1].re,
            b: 0.5 * (n[0][1] + n[1][0].conj()),
        }
    }

    pub(crate) fn side_a(&self, n: [f64; 3]) -> SideA {
        let p = Herm2::projector(n);
        let plus = self.block_on_b(&p);
        let minus = self.marginal_b.minus(&plus);
        let [l0, l1] = plus.eigvals();
        let [l2, l3] = minus.eigvals();
        SideA {
            block_plus: plus,
            block_minus: minus,
            dephased_entropy: spectral_entropy(&[l0, l1, l2, l3]),
            local_entropy: binary_entropy(p.trace_product(&self.marginal_a)),
        }
    }

    pub(crate) fn side_b(&self, n: [f64; 3]) -> SideB {
        let p = Herm2::projector(n);
        let plus = self.block_on_a(&p);
        let minus = self.marginal_a.minus(&plus);
        let [l0, l1] = plus.eigvals();
        let [l2, l3] = minus.eigvals();
        SideB {
            projector_plus: p,
            dephased_entropy: spectral_entropy(&[l0, l1, l2, l3]),
            local_entropy: binary_entropy(p.trace_product(&self.marginal_b)),
        }
    }

    /// `S(Φ_AB ρ)`
    fn joint_entropy(&self, a: &SideA, b: &SideB) -> f64 {
        let pp = b.projector_plus.trace_product(&a.block_plus);
        let pm = a.block_plus.trace() - pp;
        let mp = b.projector_plus.trace_product(&a.block_minus);
        let mm = a.block_minus.trace() - mp;
        xlnx(pp) + xlnx(pm) + xlnx(mp) + xlnx(mm)
    }

    /// Contextual nonlocality, unclamped.
    pub(crate) fn eta(&self, a: &SideA, b: &SideB) -> f64 {
        a.dephased_entropy + b.dephased_entropy - self.joint_entropy(a, b) - self.entropy
    }

    /// Global-discord objective, unclamped.
    pub(crate) fn discord_objective(&self, a: &SideA, b: &SideB) -> f64 {
        (self.joint_entropy(a, b) - self.entropy)
            - (a.local_entropy - self.marginal_a_entropy)
            - (b.local_entropy - self.marginal_b_entropy)
    }
}
