use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use super::simplex::euclidean_simplex_volume;
use super::{QuadratureConfig, VolumeEstimate};
use crate::geometry::regular_simplex_vertices;
use crate::{Error, Result};

const CHUNK: usize = 8192;

/// Monte Carlo estimate of `∫_{scale·S(n)} f(x) dx`.
///
/// Points are uniform on the simplex: barycentric weights are normalised
/// exponential spacings. Sample block `j` draws from ChaCha stream `j` of
/// the configured seed, and block statistics are merged in block order, so
/// the result is bit-identical regardless of thread count.
pub fn monte_carlo_simplex<F>(
    n: usize,
    scale: f64,
    integrand: F,
    cfg: &QuadratureConfig,
) -> Result<VolumeEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if cfg.mc_samples < 100 {
        return Err(Error::domain("mc_samples must be at least 100"));
    }
    if n == 0 || !(0.0..=1.0).contains(&scale) {
        return Err(Error::domain("invalid simplex for Monte Carlo"));
    }
    let verts = regular_simplex_vertices(n, scale);
    let total = cfg.mc_samples;
    let blocks = total.div_ceil(CHUNK);

    let stats: Vec<(f64, f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(block as u64);
            let count = CHUNK.min(total - block * CHUNK);
            let mut lam = vec![0.0; n + 1];
            let mut x = vec![0.0; n];
            // Welford within the block
            let (mut mean, mut m2) = (0.0, 0.0);
            for i in 0..count {
                let mut sum = 0.0;
                for l in lam.iter_mut() {
                    *l = Exp1.sample(&mut rng);
                    sum += *l;
                }
                x.iter_mut().for_each(|xi| *xi = 0.0);
                for (l, v) in lam.iter().zip(&verts) {
                    let w = l / sum;
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi += w * vi;
                    }
                }
                let fx = integrand(&x);
                let delta = fx - mean;
                mean += delta / (i + 1) as f64;
                m2 += delta * (fx - mean);
            }
            (count as f64, mean, m2)
        })
        .collect();

    // Chan et al. pairwise merge, in block order
    let (mut count, mut mean, mut m2) = (0.0, 0.0, 0.0);
    for (c, mu, m) in stats {
        let new = count + c;
        let delta = mu - mean;
        mean += delta * c / new;
        m2 += m + delta * delta * count * c / new;
        count = new;
    }
    let var = if count > 1.0 { m2 / (count - 1.0) } else { 0.0 };
    let vol = euclidean_simplex_volume(n, scale);
    Ok(VolumeEstimate::new(
        vol * mean,
        vol * (var / count).sqrt(),
        total as u64,
        "monte-carlo",
    ))
}
