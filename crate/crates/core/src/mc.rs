//! Reproducible Monte Carlo sampler for the Gaussian unitary ensemble with
//! an optional external source.
//!
//! Every sample draws from its own counter-based stream keyed by the sample
//! index, so a run is bit-identical for a fixed seed regardless of the
//! worker count: workers only decide who computes which sample, and the
//! reduction is an ordered serial pass over the per-sample values.

use crate::error::{Error, Result};
use crate::source::SourceSpec;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub matrix_size: usize,
    pub weight_scale: f64,
    pub source: Option<SourceSpec>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Pair each sample with its fluctuation-negated partner (X = A − G).
    pub antithetic: bool,
}

impl SamplerConfig {
    pub fn new(matrix_size: usize, weight_scale: f64, samples: u64, seed: u64) -> Self {
        SamplerConfig {
            matrix_size,
            weight_scale,
            source: None,
            samples,
            seed,
            workers: 1,
            antithetic: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.matrix_size == 0 {
            return Err(Error::argument("matrix size must be positive"));
        }
        if !(self.weight_scale > 0.0) {
            return Err(Error::argument("weight scale must be positive"));
        }
        if self.samples == 0 {
            return Err(Error::argument("need at least one sample"));
        }
        if self.workers == 0 {
            return Err(Error::argument("need at least one worker"));
        }
        if let Some(src) = &self.source {
            if src.total_multiplicity() != self.matrix_size {
                return Err(Error::argument("source size must match matrix size"));
            }
        }
        Ok(())
    }

    fn source_diagonal(&self) -> Vec<f64> {
        match &self.source {
            Some(src) => src
                .expand()
                .iter()
                .map(|a| a.to_f64().unwrap_or(f64::NAN))
                .collect(),
            None => vec![0.0; self.matrix_size],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(b"gue-mc\0\0");
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}

/// Zero-mean GUE fluctuation: diagonal real N(0, 1/N), off-diagonal complex
/// with independent real and imaginary parts N(0, 1/(2N)); Hermitian by
/// construction.
fn sample_fluctuation(config: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let m = config.matrix_size;
    let diag_sd = (1.0 / config.weight_scale).sqrt();
    let off_sd = (1.0 / (2.0 * config.weight_scale)).sqrt();
    let mut x = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        let g: f64 = rng.sample(StandardNormal);
        x[i * m + i] = Complex64::new(diag_sd * g, 0.0);
    }
    for i in 0..m {
        for j in i + 1..m {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(off_sd * re, off_sd * im);
            x[i * m + j] = z;
            x[j * m + i] = z.conj();
        }
    }
    x
}

/// The matrix for sample `stream_index`: source diagonal plus fluctuation.
pub fn sample_matrix(config: &SamplerConfig, stream_index: u64) -> Result<Vec<Complex64>> {
    config.validate()?;
    let mut rng = stream_rng(config.seed, stream_index);
    let mut x = sample_fluctuation(config, &mut rng);
    let m = config.matrix_size;
    for (i, a) in config.source_diagonal().into_iter().enumerate() {
        x[i * m + i] += a;
    }
    Ok(x)
}

/// Determinant of a small complex matrix by LU with partial pivoting.
fn det_complex(mut a: Vec<Complex64>, m: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..m {
        let pivot = (k..m)
            .max_by(|&r, &s| {
                a[r * m + k]
                    .norm_sqr()
                    .partial_cmp(&a[s * m + k].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if a[pivot * m + k].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            for j in 0..m {
                a.swap(k * m + j, pivot * m + j);
            }
            det = -det;
        }
        let akk = a[k * m + k];
        det *= akk;
        for r in k + 1..m {
            let f = a[r * m + k] / akk;
            for j in k..m {
                let sub = f * a[k * m + j];
                a[r * m + j] -= sub;
            }
        }
    }
    det
}

fn product_of_dets(
    x: &[Complex64],
    m: usize,
    lambdas: &[f64],
) -> f64 {
    let mut acc = 1.0;
    let mut last: Option<(f64, f64)> = None;
    for &lam in lambdas {
        if let Some((l, d)) = last {
            if l == lam {
                acc *= d;
                continue;
            }
        }
        let mut shifted = x.to_vec();
        for i in 0..m {
            shifted[i * m + i] = Complex64::new(lam, 0.0) - shifted[i * m + i];
        }
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    shifted[i * m + j] = -x[i * m + j];
                }
            }
        }
        let d = det_complex(shifted, m).re; // Hermitian shift ⇒ real determinant
        acc *= d;
        last = Some((lam, d));
    }
    acc
}

/// Monte Carlo estimate of ⟨Π_α det(λ_α − X)⟩: one matrix per sample feeds
/// every factor. Mean and standard error come from an ordered two-pass
/// reduction, so results are bit-identical across worker counts.
pub fn estimate_moment(config: &SamplerConfig, lambdas: &[f64]) -> Result<McEstimate> {
    config.validate()?;
    if lambdas.is_empty() {
        return Ok(McEstimate {
            mean: 1.0,
            stderr: 0.0,
            samples: config.samples,
        });
    }
    let n = config.samples as usize;
    let m = config.matrix_size;
    let diag = config.source_diagonal();
    let mut values = vec![0.0f64; n];
    let workers = config.workers.min(n.max(1));
    let chunk = n.div_ceil(workers);
    std::thread::scope(|scope| {
        for (w, slice) in values.chunks_mut(chunk).enumerate() {
            let diag = &diag;
            let config = &config;
            scope.spawn(move || {
                let base = w * chunk;
                for (off, out) in slice.iter_mut().enumerate() {
                    let idx = (base + off) as u64;
                    let mut rng = stream_rng(config.seed, idx);
                    let mut x = sample_fluctuation(config, &mut rng);
                    for i in 0..m {
                        x[i * m + i] += diag[i];
                    }
                    let v = product_of_dets(&x, m, lambdas);
                    *out = if config.antithetic {
                        // partner: negate the fluctuation, keep the source
                        let mut y = x;
                        for i in 0..m {
                            for j in 0..m {
                                y[i * m + j] = -y[i * m + j];
                            }
                        }
                        for i in 0..m {
                            y[i * m + i] += 2.0 * diag[i];
                        }
                        0.5 * (v + product_of_dets(&y, m, lambdas))
                    } else {
                        v
                    };
                }
            });
        }
    });
    let mean = values.iter().sum::<f64>() / n as f64;
    let stderr = if n < 2 {
        0.0
    } else {
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
        (var / n as f64).sqrt()
    };
    Ok(McEstimate {
        mean,
        stderr,
        samples: config.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn scalar_variance_matches_weight() {
        // M=1: Tr X² = x², variance 1/N
        let config = SamplerConfig::new(1, 4.0, 100_000, 11);
        let mut acc = 0.0;
        let mut acc2 = 0.0;
        for s in 0..config.samples {
            let x = sample_matrix(&config, s).unwrap()[0].re;
            acc += x * x;
            acc2 += x * x * x * x;
        }
        let n = config.samples as f64;
        let mean = acc / n;
        let var_of_sq = (acc2 / n - mean * mean).max(0.0);
        let sd = (var_of_sq / n).sqrt();
        assert!(
            (mean - 0.25).abs() < 3.0 * sd,
            "variance estimate {mean} too far from 1/N"
        );
    }

    #[test]
    fn offdiagonal_second_moment() {
        // ⟨|X_12|²⟩ = 1/N
        let config = SamplerConfig::new(2, 3.0, 60_000, 5);
        let mut acc = 0.0;
        for s in 0..config.samples {
            let x = sample_matrix(&config, s).unwrap();
            acc += x[1].norm_sqr();
        }
        let mean = acc / config.samples as f64;
        assert!((mean - 1.0 / 3.0).abs() < 0.01, "got {mean}");
    }

    #[test]
    fn hermiticity_is_exact() {
        let config = SamplerConfig::new(5, 2.0, 1, 9);
        let x = sample_matrix(&config, 0).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(x[i * 5 + j], x[j * 5 + i].conj());
            }
        }
    }

    #[test]
    fn source_shifts_the_mean() {
        let mut config = SamplerConfig::new(1, 2.0, 50_000, 3);
        config.source = Some(SourceSpec::new(vec![(rat(3, 4), 1)]).unwrap());
        let mut acc = 0.0;
        for s in 0..config.samples {
            acc += sample_matrix(&config, s).unwrap()[0].re;
        }
        let mean = acc / config.samples as f64;
        let sd = (0.5f64 / config.samples as f64).sqrt();
        assert!((mean - 0.75).abs() < 4.0 * sd, "got {mean}");
    }

    #[test]
    fn estimate_hits_exact_center_moment() {
        // (M, N, K, λ) = (2, 3, 2, 0): exact value 1/3
        let mut config = SamplerConfig::new(2, 3.0, 20_000, 42);
        config.workers = 2;
        let est = estimate_moment(&config, &[0.0, 0.0]).unwrap();
        assert!(
            (est.mean - 1.0 / 3.0).abs() < 3.0 * est.stderr,
            "mean {} stderr {}",
            est.mean,
            est.stderr
        );
    }

    #[test]
    fn estimate_gaussian_mean_with_source() {
        let mut config = SamplerConfig::new(1, 3.0, 20_000, 7);
        config.source = Some(SourceSpec::new(vec![(rat(1, 2), 1)]).unwrap());
        let est = estimate_moment(&config, &[2.0]).unwrap();
        assert!((est.mean - 1.5).abs() < 3.0 * est.stderr);
    }

    #[test]
    fn empty_factor_list_is_one() {
        let config = SamplerConfig::new(3, 1.0, 50, 1);
        let est = estimate_moment(&config, &[]).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn worker_count_does_not_change_bits() {
        let mut c1 = SamplerConfig::new(3, 2.0, 5_000, 123);
        c1.workers = 1;
        let mut c4 = c1.clone();
        c4.workers = 4;
        let e1 = estimate_moment(&c1, &[0.5, 0.25]).unwrap();
        let e4 = estimate_moment(&c4, &[0.5, 0.25]).unwrap();
        assert_eq!(e1.mean.to_bits(), e4.mean.to_bits());
        assert_eq!(e1.stderr.to_bits(), e4.stderr.to_bits());
    }

    #[test]
    fn same_seed_reproduces_exactly() {
        let config = SamplerConfig::new(2, 3.0, 1_000, 77);
        let a = estimate_moment(&config, &[0.0, 0.0]).unwrap();
        let b = estimate_moment(&config, &[0.0, 0.0]).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        let other = SamplerConfig::new(2, 3.0, 1_000, 78);
        let c = estimate_moment(&other, &[0.0, 0.0]).unwrap();
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    }

    #[test]
    fn antithetic_runs_and_is_deterministic() {
        let mut config = SamplerConfig::new(2, 3.0, 2_000, 10);
        config.antithetic = true;
        config.source = Some(SourceSpec::new(vec![(rat_int(1), 1), (rat_int(-1), 1)]).unwrap());
        let a = estimate_moment(&config, &[0.0, 0.0]).unwrap();
        let b = estimate_moment(&config, &[0.0, 0.0]).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert!(a.mean.is_finite());
    }

    #[test]
    fn coverage_calibration_over_seeds() {
        // exact value 1/3 should fall inside ±2·stderr for ≥ 90% of seeds
        let exact = 1.0 / 3.0;
        let mut covered = 0;
        let seeds = 50;
        for seed in 0..seeds {
            let mut config = SamplerConfig::new(2, 3.0, 10_000, 1000 + seed);
            config.workers = 4;
            let est = estimate_moment(&config, &[0.0, 0.0]).unwrap();
            if (est.mean - exact).abs() <= 2.0 * est.stderr {
                covered += 1;
            }
        }
        assert!(
            covered * 10 >= seeds * 9,
            "coverage {covered}/{seeds} below 90%"
        );
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(estimate_moment(&SamplerConfig::new(0, 1.0, 10, 1), &[0.0]).is_err());
        assert!(estimate_moment(&SamplerConfig::new(2, -1.0, 10, 1), &[0.0]).is_err());
        assert!(estimate_moment(&SamplerConfig::new(2, 1.0, 0, 1), &[0.0]).is_err());
        let mut bad = SamplerConfig::new(3, 1.0, 10, 1);
        bad.source = Some(SourceSpec::zero(2));
        assert!(estimate_moment(&bad, &[0.0]).is_err());
    }
}
