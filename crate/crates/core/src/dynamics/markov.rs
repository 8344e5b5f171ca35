use rand::distr::Open01;
use rand::Rng;

use super::zeta::ZetaTails;
use super::SeriesGenerator;
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, SimRng};
use crate::series::{check_gamma, BinarySeries, MapParams};

/// `P(X = n) = (n+1)^{-a} / ζ(a)` on `n = 0, 1, 2, ...`, sampled by inverting
/// the survival function.
///
/// The survival table covers `n` up to a million; rarer draws invert the
/// integral tail analytically, so the heavy tail is never cut off.
#[derive(Debug, Clone)]
pub struct ShiftedZeta {
    tails: ZetaTails,
}

impl ShiftedZeta {
    pub fn new(a: f64) -> Result<Self> {
        Ok(ShiftedZeta {
            tails: ZetaTails::new(a)?,
        })
    }

    pub fn pmf(&self, n: u64) -> f64 {
        ((n + 1) as f64).powf(-self.tails.exponent()) / self.tails.zeta()
    }

    /// `P(X ≥ n)`.
    pub fn survival(&self, n: u64) -> f64 {
        self.tails.tail(n + 1) / self.tails.zeta()
    }

    /// Draws `X = max{n : P(X ≥ n) ≥ u}` for `u ~ U(0, 1)`.
    pub fn sample(&self, rng: &mut SimRng) -> u64 {
        let u: f64 = rng.sample(Open01);
        self.quantile_from_survival(u)
    }

    pub fn quantile_from_survival(&self, u: f64) -> u64 {
        self.tails.last_index_at_least(u * self.tails.zeta()) - 1
    }
}

/// Renewal chain on `ℕ`: `n → n-1` for `n > 0`, and `0 → n` with
/// probability `(n+1)^{-γ} / ζ(γ)`.
///
/// The stationary law is `π(k) = Σ_{n≥k} (n+1)^{-γ} / ζ(γ-1)`. A stationary
/// start is drawn as a size-biased cycle length `L` (law `(n+1)^{1-γ}/ζ(γ-1)`)
/// followed by a uniform position in `{0, ..., L}`.
#[derive(Debug, Clone)]
pub struct MarkovChain {
    gamma: f64,
    jump: ShiftedZeta,
    cycle: ShiftedZeta,
}

impl MarkovChain {
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(MarkovChain {
            gamma,
            jump: ShiftedZeta::new(gamma)?,
            cycle: ShiftedZeta::new(gamma - 1.0)?,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `P(0, n)`.
    pub fn jump_probability(&self, n: u64) -> f64 {
        self.jump.pmf(n)
    }

    pub fn stationary(&self, k: u64) -> f64 {
        self.jump.tails.tail(k + 1) / self.cycle.tails.zeta()
    }

    pub fn sample_stationary(&self, rng: &mut SimRng) -> u64 {
        let len = self.cycle.sample(rng);
        rng.random_range(0..=len)
    }

    /// A stationary path `Z_0, ..., Z_{n-1}`.
    pub fn sample_states(&self, n: usize, rng: &mut SimRng) -> Vec<u64> {
        let mut z = self.sample_stationary(rng);
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(z);
            z = if z > 0 { z - 1 } else { self.jump.sample(rng) };
        }
        out
    }
}

impl SeriesGenerator for MarkovChain {
    fn sample_path(&self, n: usize, rng: &mut SimRng) -> Vec<f64> {
        observe_nonzero(&self.sample_states(n, rng))
    }
}

/// `Y_t = 1 - I_{0}(Z_t)`.
pub fn observe_nonzero(states: &[u64]) -> Vec<f64> {
    states
        .iter()
        .map(|&z| if z == 0 { 0.0 } else { 1.0 })
        .collect()
}

/// `π(k)` of the renewal chain. Builds two zeta tables per call; use
/// [`MarkovChain::stationary`] for repeated queries.
pub fn markov_stationary(gamma: f64, k: u64) -> Result<f64> {
    Ok(MarkovChain::new(gamma)?.stationary(k))
}

pub fn simulate_markov(gamma: f64, n: usize, seed: u64) -> Result<BinarySeries> {
    if n == 0 {
        return Err(Error::SeriesTooShort { needed: 1, got: 0 });
    }
    let chain = MarkovChain::new(gamma)?;
    let values = chain.sample_path(n, &mut rng_from_seed(seed));
    Ok(BinarySeries::from_parts(
        values,
        MapParams::MarkovChain { gamma },
        None,
        seed,
        0,
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn observation_of_states() {
        assert_eq!(observe_nonzero(&[0, 3, 2, 1, 0]), vec![0.0, 1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn stationary_law_gamma3() {
        let chain = MarkovChain::new(3.0).unwrap();
        let zeta3 = 1.202_056_903_159_594_2;
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((chain.stationary(0) - zeta3 / zeta2).abs() < 1e-12);
        assert!((chain.stationary(0) - 0.730_763).abs() < 1e-6);
    }

    /// Solves πP = π on the chain truncated to K states (jump law renormalised)
    /// by back substitution, without using the closed form.
    fn truncated_stationary(gamma: f64, k_states: usize) -> Vec<f64> {
        let q: Vec<f64> = (0..k_states).map(|n| ((n + 1) as f64).powf(-gamma)).collect();
        let qsum: f64 = q.iter().sum();
        // π(K-1) = π(0) q_{K-1};  π(k) = π(k+1) + π(0) q_k
        let mut pi = vec![0.0; k_states];
        let mut acc = 0.0;
        for k in (0..k_states).rev() {
            acc += q[k] / qsum;
            pi[k] = acc; // with π(0) = 1 unnormalised
        }
        let total: f64 = pi.iter().sum();
        pi.iter().map(|p| p / total).collect()
    }

    #[test]
    fn matches_truncated_eigenvector() {
        let pi_trunc = truncated_stationary(3.0, 10_000);
        let chain = MarkovChain::new(3.0).unwrap();
        // truncation error is O(1/K) in the normalising constant
        assert!((pi_trunc[0] - chain.stationary(0)).abs() < 1e-4);
        assert!((pi_trunc[5] - chain.stationary(5)).abs() < 1e-4);
    }

    #[test]
    fn balance_and_normalisation() {
        for gamma in [2.2, 3.0, 4.5] {
            let chain = MarkovChain::new(gamma).unwrap();
            let pi0 = chain.stationary(0);
            for k in 0..5000u64 {
                let lhs = chain.stationary(k);
                let rhs = chain.stationary(k + 1) + pi0 * chain.jump_probability(k);
                assert!((lhs - rhs).abs() < 1e-8, "gamma {gamma} k {k}");
            }
            // nonincreasing
            let pis: Vec<f64> = (0..2000).map(|k| chain.stationary(k)).collect();
            assert!(pis.windows(2).all(|w| w[0] >= w[1]));
        }
        // Σ π(k) = Σ_n (n+1) (n+1)^{-γ} / ζ(γ-1): sum directly to K, then the
        // remaining mass Σ_{k≥K} π(k) = Σ_{n≥K} (n+1-K)(n+1)^{-γ}/ζ(γ-1)
        // via its integral approximation.
        let gamma = 4.0;
        let chain = MarkovChain::new(gamma).unwrap();
        let k_max = 200_000u64;
        let head: f64 = (0..k_max).rev().map(|k| chain.stationary(k)).sum();
        let z = chain.cycle.tails.zeta();
        let kf = k_max as f64 + 0.5;
        let rest = (kf.powf(2.0 - gamma) / (gamma - 2.0)
            - (k_max as f64) * kf.powf(1.0 - gamma) / (gamma - 1.0))
            / z;
        assert!((head + rest - 1.0).abs() < 1e-9);
    }

    #[test]
    fn survival_sampler_inverts() {
        let z = ShiftedZeta::new(2.5).unwrap();
        for u in [0.999_999, 0.5, 0.1, 1e-5, 1e-12, 1e-15] {
            let n = z.quantile_from_survival(u);
            assert!(z.survival(n) >= u);
            assert!(z.survival(n + 1) < u);
        }
        assert_eq!(z.quantile_from_survival(1.0), 0);
    }

    #[test]
    fn empirical_zero_frequency() {
        let gamma = 3.5;
        let chain = MarkovChain::new(gamma).unwrap();
        let reps = 400;
        let n = 2000;
        let freqs: Vec<f64> = (0..reps)
            .map(|r| {
                let mut rng = crate::rng::StreamKey::new(77, [0; 3], r).rng();
                let y = chain.sample_path(n, &mut rng);
                y.iter().filter(|&&v| v == 0.0).count() as f64 / n as f64
            })
            .collect();
        let mean = crate::mean(&freqs);
        let se = (crate::sample_variance(&freqs) / reps as f64).sqrt();
        let pi0 = chain.stationary(0);
        assert!((mean - pi0).abs() < 3.0 * se, "mean {mean} pi0 {pi0} se {se}");
    }

    #[test]
    fn ones_come_in_countdown_blocks() {
        let chain = MarkovChain::new(2.5).unwrap();
        let states = chain.sample_states(5000, &mut rng_from_seed(1));
        for w in states.windows(2) {
            if w[0] > 0 {
                assert_eq!(w[1], w[0] - 1);
            }
        }
    }

    #[test]
    fn rejects_gamma_at_most_two() {
        assert!(simulate_markov(2.0, 10, 1).is_err());
        assert!(markov_stationary(1.9, 0).is_err());
    }
}
