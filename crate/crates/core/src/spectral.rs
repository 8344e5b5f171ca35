//! Sample autocovariance, periodogram and lag-window spectral estimates.
//!
//! The periodogram keeps the normalisation
//!
//! ```text
//! I(ω) = |f_N(ω)|²,   f_N(ω) = 1/(2π√N) Σ_{t=1}^{N} x_t e^{-iωt}
//! ```
//!
//! on the Fourier grid `ω_h = 2πh/N`, `h = 1..=N` (`ω_N = 2π` carries the
//! `h = 0` value). Constant factors only move regression intercepts, so the
//! slope-based estimators are unaffected by it.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Floor applied to spectral ordinates before taking logarithms.
pub const LOG_FLOOR: f64 = 1e-15;

/// Sample autocovariances `γ̂(0..=L)` with the biased `1/N` divisor.
#[derive(Debug, Clone, PartialEq)]
pub struct AcvEstimate {
    n: usize,
    values: Vec<f64>,
}

impl AcvEstimate {
    /// Wraps an autocovariance sequence that did not come from a sample,
    /// e.g. an exact model ACV. `n` is the nominal sample size.
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        Ok(AcvEstimate { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ρ̂(h) = γ̂(h) / γ̂(0)`.
    pub fn autocorrelation(&self) -> Result<Vec<f64>> {
        let g0 = self.values[0];
        if g0 == 0.0 {
            return Err(Error::ConstantSeries("autocorrelation"));
        }
        Ok(self.values.iter().map(|g| g / g0).collect())
    }
}

fn fft_forward(buf: &mut [Complex<f64>]) {
    FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
}

/// `γ̂(h) = (1/N) Σ_{t=0}^{N-1-h} (x_t - x̄)(x_{t+h} - x̄)` for `h = 0..=max_lag`.
pub fn sample_acv(x: &[f64], max_lag: usize) -> Result<AcvEstimate> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if max_lag >= n {
        return invalid("max_lag", format!("must be below the series length {n}, got {max_lag}"));
    }
    let mean = crate::mean(x);
    // Zero padding to N + L keeps the circular correlation free of wrap-around.
    let size = (n + max_lag + 1).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = x
        .iter()
        .map(|&v| Complex::new(v - mean, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(size)
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(size).process(&mut buf);
    for c in buf.iter_mut() {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(size).process(&mut buf);
    let scale = 1.0 / (size as f64 * n as f64);
    let values = buf[..=max_lag].iter().map(|c| c.re * scale).collect();
    Ok(AcvEstimate { n, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LagWindow {
    Parzen,
    /// Tukey-Hanning lag window `(1 + cos πx) / 2`.
    CosineBell,
}

impl LagWindow {
    /// Weight at `x = k/m ∈ [0, 1]`.
    #[inline]
    pub fn weight(self, x: f64) -> f64 {
        match self {
            LagWindow::Parzen => {
                if x <= 0.5 {
                    1.0 - 6.0 * x * x + 6.0 * x * x * x
                } else {
                    2.0 * (1.0 - x).powi(3)
                }
            }
            LagWindow::CosineBell => 0.5 * (1.0 + (PI * x).cos()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagWindowSpec {
    pub window: LagWindow,
    /// Truncation point `m`; lags beyond it get zero weight.
    pub truncation: usize,
}

impl LagWindowSpec {
    pub fn new(window: LagWindow, truncation: usize) -> Result<Self> {
        if truncation == 0 {
            return invalid("m", "lag-window truncation must be positive");
        }
        Ok(LagWindowSpec { window, truncation })
    }

    /// `m = ⌊n^exponent⌋`.
    pub fn for_length(window: LagWindow, n: usize, exponent: f64) -> Result<Self> {
        Self::new(window, crate::floor_pow(n, exponent))
    }
}

pub fn lag_window_weight(spec: &LagWindowSpec, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return invalid("x", format!("window argument must lie in [0, 1], got {x}"));
    }
    Ok(spec.window.weight(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpectrumKind {
    Raw,
    Smoothed(LagWindowSpec),
}

/// Spectral ordinates on `ω_h = 2πh/N`, `h = 1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Periodogram {
    n: usize,
    ordinates: Vec<f64>,
    kind: SpectrumKind,
}

impl Periodogram {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn frequency(&self, h: usize) -> f64 {
        2.0 * PI * h as f64 / self.n as f64
    }

    /// Ordinate at `ω_h` for `0 ≤ h ≤ N`; `h = 0` and `h = N` coincide.
    pub fn ordinate(&self, h: usize) -> f64 {
        assert!(h <= self.n, "frequency index {h} beyond N = {}", self.n);
        if h == 0 {
            self.ordinates[self.n - 1]
        } else {
            self.ordinates[h - 1]
        }
    }

    /// Ordinates for `h = 1..=N`.
    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (1..=self.n).map(|h| self.frequency(h)).collect()
    }

    /// `ln` of the ordinates `h = 1..=upto`, each floored at [`LOG_FLOOR`];
    /// also returns how many were floored.
    pub fn log_ordinates(&self, upto: usize) -> (Vec<f64>, usize) {
        let mut clamps = 0;
        let logs = self.ordinates[..upto]
            .iter()
            .map(|&v| {
                if v < LOG_FLOOR {
                    clamps += 1;
                    LOG_FLOOR.ln()
                } else {
                    v.ln()
                }
            })
            .collect();
        (logs, clamps)
    }
}

/// Raw periodogram of `x` as given (no centering).
pub fn periodogram(x: &[f64]) -> Result<Periodogram> {
    let n = x.len();
    if n < 2 {
        return Err(Error::SeriesTooShort { needed: 2, got: n });
    }
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft_forward(&mut buf);
    let scale = 1.0 / (4.0 * PI * PI * n as f64);
    // FFT bin h holds Σ_{t=0}^{N-1} x_t e^{-iω_h t}; the paper-style sum over
    // t = 1..N differs by the unit phase e^{-iω_h}, which |·|² removes.
    let ordinates = (1..=n).map(|h| buf[h % n].norm_sqr() * scale).collect();
    Ok(Periodogram {
        n,
        ordinates,
        kind: SpectrumKind::Raw,
    })
}

/// `(1/2π) Σ_{k=-m}^{m} w_k γ(k) cos(ω_h k)` on `h = 1..=n`, given
/// `weights[k]` for `k = 0..=m` (`m < n`).
pub(crate) fn lag_sum_spectrum(acv: &[f64], weights: &[f64], n: usize) -> Vec<f64> {
    debug_assert_eq!(acv.len(), weights.len());
    debug_assert!(weights.len() <= n);
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    buf[0].re = weights[0] * acv[0];
    for k in 1..weights.len() {
        buf[k].re = 2.0 * weights[k] * acv[k];
    }
    fft_forward(&mut buf);
    (1..=n).map(|h| buf[h % n].re / (2.0 * PI)).collect()
}

/// Lag-window estimate `f_sm(ω_h) = (1/2π)[γ̂(0) + 2 Σ_{k=1}^{m} w(k/m) γ̂(k) cos(ω_h k)]`.
///
/// Cosine-bell estimates can dip below zero; they are returned as computed
/// and floored only by [`Periodogram::log_ordinates`].
pub fn smoothed_periodogram(x: &[f64], spec: &LagWindowSpec) -> Result<Periodogram> {
    let n = x.len();
    if n < 2 {
        return Err(Error::SeriesTooShort { needed: 2, got: n });
    }
    let m = spec.truncation;
    if m == 0 || m >= n {
        return invalid("m", format!("truncation must satisfy 1 <= m < N = {n}, got {m}"));
    }
    let acv = sample_acv(x, m)?;
    let weights: Vec<f64> = (0..=m)
        .map(|k| spec.window.weight(k as f64 / m as f64))
        .collect();
    Ok(Periodogram {
        n,
        ordinates: lag_sum_spectrum(acv.values(), &weights, n),
        kind: SpectrumKind::Smoothed(*spec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn direct_acv(x: &[f64], lag: usize) -> Vec<f64> {
        let n = x.len();
        let m = x.iter().sum::<f64>() / n as f64;
        (0..=lag)
            .map(|h| (0..n - h).map(|t| (x[t] - m) * (x[t + h] - m)).sum::<f64>() / n as f64)
            .collect()
    }

    fn random_binary(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = rng_from_seed(seed);
        (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { 0.0 }).collect()
    }

    #[test]
    fn acv_alternating() {
        let acv = sample_acv(&[1.0, -1.0, 1.0, -1.0], 3).unwrap();
        assert!((acv.values()[0] - 1.0).abs() < 1e-14);
        assert!((acv.values()[1] + 0.75).abs() < 1e-14);
    }

    #[test]
    fn acv_constant_is_zero() {
        let acv = sample_acv(&[1.0; 50], 10).unwrap();
        assert!(acv.values().iter().all(|v| v.abs() < 1e-15));
        assert!(matches!(acv.autocorrelation(), Err(Error::ConstantSeries(_))));
    }

    #[test]
    fn acv_matches_direct_and_is_bounded() {
        for (n, seed) in [(37usize, 1u64), (300, 2), (1024, 3)] {
            let x = random_binary(n, seed);
            let lag = n / 2;
            let fast = sample_acv(&x, lag).unwrap();
            let slow = direct_acv(&x, lag);
            for (a, b) in fast.values().iter().zip(&slow) {
                assert!((a - b).abs() < 1e-12);
            }
            let g0 = fast.values()[0];
            assert!(fast.values().iter().all(|g| g.abs() <= g0 + 1e-14));
            let rho = fast.autocorrelation().unwrap();
            assert!((rho[0] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn acv_rejects_long_lag() {
        assert!(sample_acv(&[1.0, 0.0, 1.0], 3).is_err());
    }

    #[test]
    fn periodogram_impulse() {
        let p = periodogram(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let expected = 1.0 / (16.0 * PI * PI);
        assert!((expected - 0.006_332_6).abs() < 1e-7);
        for h in 0..=4 {
            assert!((p.ordinate(h) - expected).abs() < 1e-15);
        }
        assert_eq!(p.ordinate(0), p.ordinate(4));
    }

    #[test]
    fn periodogram_zero_series() {
        let p = periodogram(&[0.0; 16]).unwrap();
        assert!(p.ordinates().iter().all(|&v| v == 0.0));
        assert!(periodogram(&[1.0]).is_err());
    }

    #[test]
    fn frequencies_increasing_in_unit_circle() {
        let p = periodogram(&random_binary(10, 4)).unwrap();
        let f = p.frequencies();
        assert!(f.windows(2).all(|w| w[0] < w[1]));
        assert!(f[0] > 0.0);
        assert!((f[9] - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn window_shapes() {
        let parzen = LagWindow::Parzen;
        let bell = LagWindow::CosineBell;
        assert_eq!(parzen.weight(0.0), 1.0);
        assert_eq!(parzen.weight(1.0), 0.0);
        // both Parzen pieces meet at 1/2
        assert!((1.0 - 6.0 * 0.25 + 6.0 * 0.125 - 0.25f64).abs() < 1e-15);
        assert!((2.0 * 0.5f64.powi(3) - 0.25).abs() < 1e-15);
        assert!((parzen.weight(0.5) - 0.25).abs() < 1e-15);
        assert!((bell.weight(0.5) - 0.5).abs() < 1e-15);
        assert_eq!(bell.weight(0.0), 1.0);
        assert!(bell.weight(1.0).abs() < 1e-15);
        for w in [parzen, bell] {
            let grid: Vec<f64> = (0..=1000).map(|i| w.weight(i as f64 / 1000.0)).collect();
            assert!(grid.windows(2).all(|p| p[1] <= p[0] + 1e-15));
            assert!(grid.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
        let spec = LagWindowSpec::new(LagWindow::Parzen, 10).unwrap();
        assert!(lag_window_weight(&spec, 1.5).is_err());
        assert!(lag_window_weight(&spec, -0.1).is_err());
    }

    #[test]
    fn unit_weights_recover_lag_sum() {
        let x = random_binary(64, 5);
        let n = x.len();
        let acv = sample_acv(&x, n - 1).unwrap();
        let ones = vec![1.0; n];
        let fast = lag_sum_spectrum(acv.values(), &ones, n);
        for h in 1..=n {
            let w = 2.0 * PI * h as f64 / n as f64;
            let direct = (acv.values()[0]
                + 2.0 * (1..n).map(|k| acv.values()[k] * (w * k as f64).cos()).sum::<f64>())
                / (2.0 * PI);
            assert!((fast[h - 1] - direct).abs() < 1e-12);
        }
        // Full lag sum of the centered series equals 2π times the periodogram.
        let c = crate::centered(&x);
        let p = periodogram(&c).unwrap();
        for h in 1..n {
            assert!((fast[h - 1] - 2.0 * PI * p.ordinate(h)).abs() < 1e-12);
        }
    }

    #[test]
    fn smoothed_zero_series() {
        let spec = LagWindowSpec::new(LagWindow::Parzen, 5).unwrap();
        let p = smoothed_periodogram(&[0.0; 32], &spec).unwrap();
        assert!(p.ordinates().iter().all(|&v| v == 0.0));
        let too_wide = LagWindowSpec::new(LagWindow::Parzen, 32).unwrap();
        assert!(smoothed_periodogram(&[0.0; 32], &too_wide).is_err());
    }

    #[test]
    fn log_floor_counts_clamps() {
        let p = Periodogram {
            n: 4,
            ordinates: vec![1.0, -0.5, 0.0, 2.0],
            kind: SpectrumKind::Raw,
        };
        let (logs, clamps) = p.log_ordinates(4);
        assert_eq!(clamps, 2);
        assert_eq!(logs[1], LOG_FLOOR.ln());
        assert_eq!(logs[0], 0.0);
    }
}
