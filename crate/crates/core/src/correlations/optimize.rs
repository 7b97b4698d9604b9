//! Multistart search over pairs of qubit measurement directions.
//!
//! A coarse grid over `(θ_a, φ_a, θ_b, φ_b)` seeds Nelder–Mead refinements
//! from the best cells; the best refined point wins, first found on ties.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use super::kernel::{SideA, SideB, TwoQubitKernel};
use crate::error::{Error, Result};
use crate::measurement::{bloch_from_angles, MeasurementDirection};
use crate::random::substream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Grid points per angle in the coarse scan.
    pub coarse_grid_per_angle: usize,
    /// Number of grid cells refined by the simplex search.
    pub restarts: usize,
    /// Simplex stops once its objective spread falls below this.
    pub refine_tolerance: f64,
    /// Evaluation budget shared by all refinements.
    pub max_evals: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            coarse_grid_per_angle: 12,
            restarts: 32,
            refine_tolerance: 1e-9,
            max_evals: 20_000,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coarse_grid_per_angle < 2 {
            return Err(Error::InvalidConfig("coarse_grid_per_angle must be >= 2".into()));
        }
        if self.restarts == 0 || self.max_evals == 0 {
            return Err(Error::InvalidConfig("restarts and max_evals must be >= 1".into()));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(Error::InvalidConfig("refine_tolerance must be > 0".into()));
        }
        Ok(())
    }
}

/// Located extremum and the measurement directions attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerResult {
    /// Objective value in nats.
    pub value: f64,
    pub angles_a: MeasurementDirection,
    pub angles_b: MeasurementDirection,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Objective {
    /// Maximise the contextual nonlocality.
    Rbn,
    /// Minimise the global-discord functional.
    Discord,
}

impl Objective {
    /// Score to maximise.
    fn score(self, k: &TwoQubitKernel, a: &SideA, b: &SideB) -> f64 {
        match self {
            Objective::Rbn => k.eta(a, b),
            Objective::Discord => -k.discord_objective(a, b),
        }
    }
}

struct Simplex {
    x: [f64; 4],
    fx: f64,
    evals: usize,
    converged: bool,
}

/// Nelder–Mead minimisation of `f` with standard coefficients.
fn nelder_mead(
    f: &mut impl FnMut(&[f64; 4]) -> f64,
    start: [f64; 4],
    step: [f64; 4],
    tol: f64,
    budget: usize,
) -> Simplex {
    const N: usize = 4;
    let mut pts: Vec<[f64; 4]> = Vec::with_capacity(N + 1);
    pts.push(start);
    for k in 0..N {
        let mut p = start;
        p[k] += step[k];
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
    let mut evals = N + 1;
    let mut converged = false;

    let combine = |a: &[f64; 4], b: &[f64; 4], t: f64| -> [f64; 4] {
        let mut out = [0.0; 4];
        for k in 0..N {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
        out
    };

    loop {
        let mut order: Vec<usize> = (0..=N).collect();
        order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = order.iter().map(|&i| pts[i]).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        if vals[N] - vals[0] <= tol {
            converged = true;
            break;
        }
        if evals >= budget {
            break;
        }

        let mut centroid = [0.0; 4];
        for p in &pts[..N] {
            for k in 0..N {
                centroid[k] += p[k] / N as f64;
            }
        }
        let worst = pts[N];
        let reflected = combine(&centroid, &worst, -1.0);
        let fr = f(&reflected);
        evals += 1;

        if fr < vals[0] {
            let expanded = combine(&centroid, &worst, -2.0);
            let fe = f(&expanded);
            evals += 1;
            if fe < fr {
                pts[N] = expanded;
                vals[N] = fe;
            } else {
                pts[N] = reflected;
                vals[N] = fr;
            }
        } else if fr < vals[N - 1] {
            pts[N] = reflected;
            vals[N] = fr;
        } else {
            let (candidate, fc) = if fr < vals[N] {
                let c = combine(&centroid, &reflected, 0.5);
                (c, f(&c))
            } else {
                let c = combine(&centroid, &worst, 0.5);
                (c, f(&c))
            };
            evals += 1;
            if fc < vals[N].min(fr) {
                pts[N] = candidate;
                vals[N] = fc;
            } else {
                let best = pts[0];
                for i in 1..=N {
                    pts[i] = combine(&best, &pts[i], 0.5);
                    vals[i] = f(&pts[i]);
                }
                evals += N;
            }
        }
    }
    Simplex {
        x: pts[0],
        fx: vals[0],
        evals,
        converged,
    }
}

pub(crate) fn grid_angles(n: usize) -> (Vec<f64>, Vec<f64>) {
    let thetas = (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect();
    let phis = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    (thetas, phis)
}

/// Maximises `objective.score` over both directions.
pub(crate) fn search(kernel: &TwoQubitKernel, objective: Objective, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    cfg.validate()?;
    let n = cfg.coarse_grid_per_angle;
    let (thetas, phis) = grid_angles(n);
    let dirs: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect();
    let sides_a: Vec<SideA> = dirs
        .iter()
        .map(|&(t, p)| kernel.side_a(bloch_from_angles(t, p)))
        .collect();
    let sides_b: Vec<SideB> = dirs
        .iter()
        .map(|&(t, p)| kernel.side_b(bloch_from_angles(t, p)))
        .collect();

    let mut cells: Vec<(f64, usize, usize)> = Vec::with_capacity(dirs.len() * dirs.len());
    for (i, a) in sides_a.iter().enumerate() {
        for (j, b) in sides_b.iter().enumerate() {
            cells.push((objective.score(kernel, a, b), i, j));
        }
    }
    let mut evaluations = cells.len();
    // Stable sort keeps grid order among equal scores.
    cells.sort_by(|x, y| y.0.total_cmp(&x.0));

    let dtheta = PI / (n - 1) as f64;
    let dphi = TAU / n as f64;
    let step = [dtheta / 2.0, dphi / 2.0, dtheta / 2.0, dphi / 2.0];
    let mut f = |x: &[f64; 4]| -> f64 {
        let a = kernel.side_a(bloch_from_angles(x[0], x[1]));
        let b = kernel.side_b(bloch_from_angles(x[2], x[3]));
        -objective.score(kernel, &a, &b)
    };

    let restarts = cfg.restarts.min(cells.len());
    let per_run = (cfg.max_evals / restarts).max(20);
    let mut best: Option<Simplex> = None;
    let mut any_converged = false;
    for (r, &(_, i, j)) in cells.iter().take(restarts).enumerate() {
        let mut rng = substream(cfg.seed, r as u64);
        let mut jitter = |scale: f64| rng.gen_range(-0.25..=0.25) * scale;
        let (ta, pa) = dirs[i];
        let (tb, pb) = dirs[j];
        let start = [
            ta + jitter(dtheta),
            pa + jitter(dphi),
            tb + jitter(dtheta),
            pb + jitter(dphi),
        ];
        let run = nelder_mead(&mut f, start, step, cfg.refine_tolerance, per_run);
        evaluations += run.evals;
        any_converged |= run.converged;
        if best.as_ref().map_or(true, |b| run.fx < b.fx) {
            best = Some(run);
        }
    }
    let mut best = best.expect("at least one restart");

    // Polish from the winner with a small simplex.
    let fine = step.map(|s| s / 8.0);
    let polish = nelder_mead(&mut f, best.x, fine, cfg.refine_tolerance, per_run);
    evaluations += polish.evals;
    let converged = any_converged && (best.converged || polish.converged);
    if polish.fx < best.fx {
        best = polish;
    }

    // Never report worse than the best grid cell.
    let grid_best = cells[0];
    let (value, x) = if -best.fx >= grid_best.0 {
        (-best.fx, best.x)
    } else {
        let (ta, pa) = dirs[grid_best.1];
        let (tb, pb) = dirs[grid_best.2];
        (grid_best.0, [ta, pa, tb, pb])
    };
    let value = match objective {
        Objective::Rbn => value,
        Objective::Discord => -value,
    };
    Ok(OptimizerResult {
        value,
        angles_a: MeasurementDirection::wrapped(x[0], x[1]),
        angles_b: MeasurementDirection::wrapped(x[2], x[3]),
        evaluations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let mut f = |x: &[f64; 4]| {
            (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2) + 0.5 * x[2].powi(2) + (x[3] - 3.0).powi(2)
        };
        let run = nelder_mead(&mut f, [0.0; 4], [0.5; 4], 1e-14, 10_000);
        assert!(run.converged);
        assert!((run.x[0] - 1.0).abs() < 1e-4);
        assert!((run.x[1] + 0.5).abs() < 1e-4);
        assert!((run.x[3] - 3.0).abs() < 1e-4);
    }

    #[test]
    fn nelder_mead_respects_budget() {
        let mut f = |x: &[f64; 4]| x.iter().map(|v| v.abs()).sum::<f64>();
        let run = nelder_mead(&mut f, [5.0; 4], [0.1; 4], 0.0, 40);
        assert!(!run.converged);
        assert!(run.evals <= 40 + 4);
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig::default().validate().is_ok());
        let bad = OptimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = OptimizerConfig {
            refine_tolerance: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
