//! Haar and Mexican-hat wavelet coefficients on a dyadic series and the
//! per-level variance ladder `R̂(j)`.
//!
//! With `N = 2^m` and time rescaled to `t/N ∈ [0, 1)`,
//!
//! ```text
//! ω_{j,k} = 2^{j/2} Σ_{t=0}^{N-1} X_t ψ(2^j t/N - k),   k = 0..2^j - 1,
//! R̂(j)   = 2^{-j} Σ_k ω_{j,k}²,                          j = 4..m-1.
//! ```
//!
//! At level `j` the atom `ψ(2^j t/N - k)` spans `B = N / 2^j` samples
//! starting at `t = kB`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// First level entering the variance ladder.
pub const FIRST_LEVEL: usize = 4;

/// Mexican-hat atoms are evaluated on `|u| ≤ 8` only; `|ψ(8)| < 1e-12`.
pub const MEXICAN_HAT_SUPPORT: f64 = 8.0;

/// Floor applied to `R̂(j)` before logarithms.
pub const LADDER_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveletBasis {
    Haar,
    MexicanHat,
}

impl WaveletBasis {
    pub fn name(self) -> &'static str {
        match self {
            WaveletBasis::Haar => "haar",
            WaveletBasis::MexicanHat => "mexhat",
        }
    }

    /// Mother wavelet.
    #[inline]
    pub fn psi(self, u: f64) -> f64 {
        match self {
            WaveletBasis::Haar => {
                if (0.0..0.5).contains(&u) {
                    1.0
                } else if (0.5..1.0).contains(&u) {
                    -1.0
                } else {
                    0.0
                }
            }
            WaveletBasis::MexicanHat => {
                if u.abs() > MEXICAN_HAT_SUPPORT {
                    0.0
                } else {
                    let u2 = u * u;
                    (1.0 - u2) * (-0.5 * u2).exp()
                }
            }
        }
    }
}

pub fn psi(basis: WaveletBasis, u: f64) -> f64 {
    basis.psi(u)
}

/// Largest dyadic prefix of `x`: `(prefix, m)` with `prefix.len() = 2^m`.
pub fn dyadic_prefix(x: &[f64]) -> Result<(&[f64], usize)> {
    if x.is_empty() {
        return Err(Error::Empty);
    }
    let m = usize::BITS as usize - 1 - x.len().leading_zeros() as usize;
    let len = 1usize << m;
    if len < x.len() {
        log::debug!("wavelet input truncated from {} to {len} samples", x.len());
    }
    Ok((&x[..len], m))
}

fn prepare(x: &[f64], center: bool) -> Result<(Vec<f64>, usize)> {
    let (prefix, m) = dyadic_prefix(x)?;
    let data = if center {
        crate::centered(prefix)
    } else {
        prefix.to_vec()
    };
    Ok((data, m))
}

fn check_level(j: usize, m: usize) -> Result<()> {
    if j >= m {
        return invalid("j", format!("level must be below m = {m}, got {j}"));
    }
    Ok(())
}

/// Coefficients `ω_{j,k}`, `k = 0..2^j`, of the dyadic prefix of `x`.
///
/// Haar uses block sums; the Mexican hat correlates with a sampled atom.
pub fn wavelet_coefficients(
    x: &[f64],
    basis: WaveletBasis,
    j: usize,
    center: bool,
) -> Result<Vec<f64>> {
    let (data, m) = prepare(x, center)?;
    check_level(j, m)?;
    Ok(match basis {
        WaveletBasis::Haar => haar_level(&data, j),
        WaveletBasis::MexicanHat => mexican_hat_level(&data, j),
    })
}

/// Same coefficients by evaluating `ψ(2^j t/N - k)` at every `t`; `O(N 2^j)`.
pub fn wavelet_coefficients_direct(
    x: &[f64],
    basis: WaveletBasis,
    j: usize,
    center: bool,
) -> Result<Vec<f64>> {
    let (data, m) = prepare(x, center)?;
    check_level(j, m)?;
    let n = data.len() as f64;
    let scale = 2f64.powi(j as i32);
    Ok((0..1usize << j)
        .map(|k| {
            let sum: f64 = data
                .iter()
                .enumerate()
                .map(|(t, &v)| v * basis.psi(scale * t as f64 / n - k as f64))
                .sum();
            scale.sqrt() * sum
        })
        .collect())
}

fn haar_from_half_sums(half: &[f64], j: usize) -> Vec<f64> {
    let norm = 2f64.powf(j as f64 / 2.0);
    half.chunks_exact(2).map(|p| norm * (p[0] - p[1])).collect()
}

fn haar_level(data: &[f64], j: usize) -> Vec<f64> {
    let half = data.len() >> (j + 1);
    let sums: Vec<f64> = data.chunks_exact(half).map(|c| c.iter().sum()).collect();
    haar_from_half_sums(&sums, j)
}

/// Haar coefficients for every level `0..m`, from one pairwise-sum pyramid.
fn haar_pyramid(data: &[f64], m: usize) -> Vec<Vec<f64>> {
    let mut levels = vec![Vec::new(); m];
    let mut sums = data.to_vec(); // block sums of size 1 = half blocks of level m-1
    for j in (0..m).rev() {
        levels[j] = haar_from_half_sums(&sums, j);
        sums = sums.chunks_exact(2).map(|p| p[0] + p[1]).collect();
    }
    levels
}

fn mexican_hat_level(data: &[f64], j: usize) -> Vec<f64> {
    let n = data.len();
    let block = n >> j;
    let reach = (MEXICAN_HAT_SUPPORT as usize) * block;
    // kernel[d + reach] = ψ(d / B), d = -reach..=reach
    let kernel: Vec<f64> = (0..=2 * reach)
        .map(|i| WaveletBasis::MexicanHat.psi((i as f64 - reach as f64) / block as f64))
        .collect();
    let norm = 2f64.powf(j as f64 / 2.0);
    (0..1usize << j)
        .map(|k| {
            let centre = k * block;
            let lo = centre.saturating_sub(reach);
            let hi = (centre + reach).min(n - 1);
            let sum: f64 = (lo..=hi)
                .map(|t| data[t] * kernel[t + reach - centre])
                .sum();
            norm * sum
        })
        .collect()
}

/// Per-level mean squared wavelet coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveletLadder {
    pub basis: WaveletBasis,
    /// `N = 2^m` after truncation.
    pub m: usize,
    /// Samples dropped to reach a power of two.
    pub truncated: usize,
    /// `R̂(j)` for `j = 4..m`.
    pub rhat: Vec<f64>,
}

impl WaveletLadder {
    pub fn levels(&self) -> std::ops::Range<usize> {
        FIRST_LEVEL..self.m
    }

    /// `(ln 2^{-2j}, ln R̂(j))` pairs, with `R̂` floored at [`LADDER_FLOOR`];
    /// also returns how many were floored.
    pub fn log_points(&self) -> (Vec<(f64, f64)>, usize) {
        let mut floored = 0;
        let pts = self
            .levels()
            .zip(&self.rhat)
            .map(|(j, &r)| {
                let r = if r < LADDER_FLOOR {
                    floored += 1;
                    LADDER_FLOOR
                } else {
                    r
                };
                (-2.0 * j as f64 * std::f64::consts::LN_2, r.ln())
            })
            .collect();
        (pts, floored)
    }
}

fn mean_square(c: &[f64]) -> f64 {
    c.iter().map(|v| v * v).sum::<f64>() / c.len() as f64
}

/// `R̂(j) = 2^{-j} Σ_k ω_{j,k}²` for `j = 4..m`; requires `m ≥ 6`.
pub fn sample_r(x: &[f64], basis: WaveletBasis, center: bool) -> Result<WaveletLadder> {
    let (data, m) = prepare(x, center)?;
    if m < FIRST_LEVEL + 2 {
        return Err(Error::SeriesTooShort {
            needed: 1 << (FIRST_LEVEL + 2),
            got: x.len(),
        });
    }
    let rhat = match basis {
        WaveletBasis::Haar => haar_pyramid(&data, m)[FIRST_LEVEL..]
            .iter()
            .map(|c| mean_square(c))
            .collect(),
        WaveletBasis::MexicanHat => (FIRST_LEVEL..m)
            .map(|j| mean_square(&mexican_hat_level(&data, j)))
            .collect(),
    };
    Ok(WaveletLadder {
        basis,
        m,
        truncated: x.len() - data.len(),
        rhat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn random_series(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = rng_from_seed(seed);
        (0..n).map(|_| rng.random::<f64>()).collect()
    }

    #[test]
    fn mother_wavelets() {
        let haar = WaveletBasis::Haar;
        assert_eq!(haar.psi(0.25), 1.0);
        assert_eq!(haar.psi(0.75), -1.0);
        assert_eq!(haar.psi(1.5), 0.0);
        assert_eq!(haar.psi(-0.1), 0.0);
        let hat = WaveletBasis::MexicanHat;
        assert_eq!(hat.psi(0.0), 1.0);
        assert_eq!(hat.psi(1.0), 0.0);
        assert_eq!(hat.psi(-1.0), 0.0);
        assert!(hat.psi(8.0).abs() < 1e-12);
    }

    #[test]
    fn mexican_hat_integrates_to_zero() {
        // composite Simpson on [-8, 8]
        let steps = 20_000;
        let h = 16.0 / steps as f64;
        let f = |i: usize| WaveletBasis::MexicanHat.psi(-8.0 + i as f64 * h);
        let mut s = f(0) + f(steps);
        for i in 1..steps {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i);
        }
        assert!((s * h / 3.0).abs() < 1e-8);
    }

    #[test]
    fn haar_fast_matches_direct() {
        let x = random_series(256, 1);
        for center in [false, true] {
            for j in 0..8 {
                let fast = wavelet_coefficients(&x, WaveletBasis::Haar, j, center).unwrap();
                let slow = wavelet_coefficients_direct(&x, WaveletBasis::Haar, j, center).unwrap();
                assert_eq!(fast.len(), 1 << j);
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).abs() < 1e-10, "j = {j}");
                }
            }
        }
        let data = crate::centered(&x);
        let pyramid = haar_pyramid(&data, 8);
        for (j, level) in pyramid.iter().enumerate() {
            for (a, b) in level.iter().zip(&haar_level(&data, j)) {
                assert!((a - b).abs() < 1e-12, "j = {j}");
            }
        }
    }

    #[test]
    fn mexican_hat_fast_matches_direct() {
        let x = random_series(256, 2);
        for j in 0..8 {
            let fast = wavelet_coefficients(&x, WaveletBasis::MexicanHat, j, true).unwrap();
            let slow = wavelet_coefficients_direct(&x, WaveletBasis::MexicanHat, j, true).unwrap();
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-10, "j = {j}");
            }
        }
    }

    #[test]
    fn haar_annihilates_constants() {
        for center in [false, true] {
            for j in 0..6 {
                let c = wavelet_coefficients(&[3.0; 64], WaveletBasis::Haar, j, center).unwrap();
                assert!(c.iter().all(|&v| v == 0.0));
            }
        }
        let zero = wavelet_coefficients(&[0.0; 64], WaveletBasis::MexicanHat, 3, false).unwrap();
        assert!(zero.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn linearity() {
        let x = random_series(128, 3);
        let y = random_series(128, 4);
        let (a, b) = (1.7, -0.4);
        let z: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        for basis in [WaveletBasis::Haar, WaveletBasis::MexicanHat] {
            for j in [0, 3, 6] {
                let cx = wavelet_coefficients(&x, basis, j, false).unwrap();
                let cy = wavelet_coefficients(&y, basis, j, false).unwrap();
                let cz = wavelet_coefficients(&z, basis, j, false).unwrap();
                for k in 0..cz.len() {
                    assert!((cz[k] - (a * cx[k] + b * cy[k])).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn level_and_length_checks() {
        assert!(wavelet_coefficients(&[1.0; 64], WaveletBasis::Haar, 6, true).is_err());
        assert!(sample_r(&[1.0; 63], WaveletBasis::Haar, true).is_err());
        let (prefix, m) = dyadic_prefix(&[0.0; 100]).unwrap();
        assert_eq!((prefix.len(), m), (64, 6));
    }

    #[test]
    fn ladder_is_mean_square() {
        let x = random_series(300, 5);
        for basis in [WaveletBasis::Haar, WaveletBasis::MexicanHat] {
            let ladder = sample_r(&x, basis, true).unwrap();
            assert_eq!(ladder.m, 8);
            assert_eq!(ladder.truncated, 44);
            assert_eq!(ladder.rhat.len(), 4);
            for (j, &r) in ladder.levels().zip(&ladder.rhat) {
                let c = wavelet_coefficients_direct(&x, basis, j, true).unwrap();
                let brute: f64 = c.iter().map(|v| v * v).sum::<f64>() / (1 << j) as f64;
                assert!((r - brute).abs() < 1e-10 * brute.max(1.0));
                assert!(r >= 0.0);
            }
        }
        let zero = sample_r(&[0.0; 128], WaveletBasis::Haar, false).unwrap();
        assert!(zero.rhat.iter().all(|&r| r == 0.0));
        assert_eq!(zero.log_points().1, 3);
    }
}
