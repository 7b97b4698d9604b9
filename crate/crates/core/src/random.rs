//! Seeded sampling helpers.
//!
//! Every random draw comes from a ChaCha20 stream selected by
//! `(seed, index)`, so results do not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::matcore::{ComplexMatrix, DensityMatrix, C64};
use crate::measurement::MeasurementDirection;

/// Identifier recorded in run manifests.
pub const RNG_ALGORITHM: &str = "chacha20(seed=u64 little-endian key, stream=sample index)";

/// Independent generator for sample `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unitary via Gram–Schmidt on a complex Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<C64> = (0..d).map(|_| gaussian_complex(rng)).collect();
        for u in &cols {
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm = v.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut m = ComplexMatrix::zeros(d, d);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    m
}

/// Random mixed state `G G† / Tr(G G†)` with a `dim x rank` Ginibre `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    dim_a: usize,
    dim_b: usize,
    rank: usize,
) -> DensityMatrix {
    let d = dim_a * dim_b;
    let data = (0..d * rank).map(|_| gaussian_complex(rng)).collect();
    let g = ComplexMatrix::new(d, rank, data).expect("shape");
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::from_map_output(dim_a, dim_b, gg.scale_real(1.0 / tr))
}

/// Direction with `θ ~ U[0, π]` and `φ ~ U[0, 2π)`.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> MeasurementDirection {
    let theta = rng.gen_range(0.0..=std::f64::consts::PI);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    MeasurementDirection { theta, phi }
}
