//! Weighted-Poisson count distributions whose normalizers are α-Mittag-Leffler
//! or Imoto functions.
//!
//! Every family has the form `P{N = k} = x^k c_k / N(x)` with `x = λt`, so the
//! probability mass is computed from `k ln x + ln c_k - ln N(x)` and never
//! leaves log space until the end.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gamma::{is_integer, ln_gamma};
use crate::series::{NeumaierSum, ScaledSum, SeriesOptions, Sign, SignedLogTerm};
use crate::special::{alpha_ml_scaled, check_gcom_domain, gcom_coefficient, gcom_scaled, MLParams};

/// Hard cap on the support scanned by moments and sampling.
pub const MAX_SUPPORT: usize = 100_000;
/// Bound on the probability mass left out by truncation.
const TAIL_MASS: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Poisson,
    /// `P ∝ x^k / (k!)^ν`.
    ComPoisson { nu: f64 },
    /// `P ∝ x^k / Γ(αk+1)`, `α ∈ (0,1]`.
    FractionalPoisson { alpha: f64 },
    /// `P ∝ x^k / Γ(αk+γ)^ν`.
    FractionalComPoisson { nu: f64, alpha: f64, gamma: f64 },
    /// Imoto's `P ∝ Γ(ν+k)^r x^k / k!`.
    GcomPoisson { r: f64, nu: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Poisson => "poisson",
            Family::ComPoisson { .. } => "com_poisson",
            Family::FractionalPoisson { .. } => "fractional_poisson",
            Family::FractionalComPoisson { .. } => "fractional_com_poisson",
            Family::GcomPoisson { .. } => "gcom_poisson",
        }
    }
}

/// Unvalidated model. `rate` and `time` only enter through `rate * time`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountModel {
    pub family: Family,
    pub rate: f64,
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub dispersion_index: f64,
    /// Number of support points summed.
    pub truncation_k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kernel {
    Ml(MLParams),
    Gcom { r: f64, nu: f64 },
}

impl Kernel {
    fn coefficient(&self, k: usize) -> SignedLogTerm {
        match *self {
            Kernel::Ml(p) => p.coefficient(k),
            Kernel::Gcom { r, nu } => gcom_coefficient(r, nu, k),
        }
    }

    fn normalizer(&self, x: f64) -> Result<ScaledSum> {
        let opts = SeriesOptions::default();
        match *self {
            Kernel::Ml(p) => alpha_ml_scaled(p, x, &opts),
            Kernel::Gcom { r, nu } => gcom_scaled(r, nu, x, &opts),
        }
    }
}

fn positive_finite(name: &str, v: f64, errors: &mut Vec<String>) {
    if !(v > 0.0 && v.is_finite()) {
        errors.push(format!("{name} > 0 required, got {v}"));
    }
}

impl CountModel {
    pub fn new(family: Family, rate: f64, time: f64) -> Self {
        CountModel { family, rate, time }
    }

    /// Checks every constraint and reports all violations together.
    pub fn validate(&self) -> Result<Distribution> {
        let mut errors = Vec::new();
        positive_finite("lambda", self.rate, &mut errors);
        positive_finite("t", self.time, &mut errors);
        let x = self.rate * self.time;

        let kernel = match self.family {
            Family::Poisson => Kernel::Ml(MLParams::new(1.0, 1.0, 1.0)),
            Family::ComPoisson { nu } => {
                positive_finite("nu", nu, &mut errors);
                Kernel::Ml(MLParams::new(nu, 1.0, 1.0))
            }
            Family::FractionalPoisson { alpha } => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    errors.push(format!("alpha in (0, 1] required, got {alpha}"));
                }
                Kernel::Ml(MLParams::new(1.0, alpha, 1.0))
            }
            Family::FractionalComPoisson { nu, alpha, gamma } => {
                positive_finite("nu", nu, &mut errors);
                positive_finite("alpha", alpha, &mut errors);
                if !gamma.is_finite() {
                    errors.push(format!("gamma must be finite, got {gamma}"));
                } else if nu > 0.0 && alpha > 0.0 {
                    check_weights(nu, alpha, gamma, &mut errors);
                }
                Kernel::Ml(MLParams::new(nu, alpha, gamma))
            }
            Family::GcomPoisson { r, nu } => {
                if !r.is_finite() {
                    errors.push(format!("r must be finite, got {r}"));
                } else if let Err(Error::Domain(msg)) = check_gcom_domain(r, nu, x) {
                    errors.push(msg);
                }
                Kernel::Gcom { r, nu }
            }
        };
        if !errors.is_empty() {
            return Err(Error::InvalidModel(errors));
        }

        let norm = kernel.normalizer(x)?;
        let ln_norm = norm.ln_abs();
        if norm.sign() != Sign::Positive || !ln_norm.is_finite() {
            return Err(Error::InvalidModel(vec![format!(
                "normalizer must be finite and positive, got sign {:?}, log {ln_norm}",
                norm.sign()
            )]));
        }
        Ok(Distribution { model: *self, x, ln_x: x.ln(), kernel, ln_norm })
    }
}

/// `Γ(αk+γ)^ν` must be a positive real for every reachable `k`.
fn check_weights(nu: f64, alpha: f64, gamma: f64, errors: &mut Vec<String>) {
    let even_power = is_integer(nu) && (nu / 2.0).fract() == 0.0;
    for k in 0..MAX_SUPPORT {
        let arg = alpha * k as f64 + gamma;
        if arg > 0.0 {
            break;
        }
        let (log, sign) = ln_gamma(arg);
        if !log.is_finite() {
            errors.push(format!("Gamma(alpha*k + gamma) has a pole at k = {k}"));
            return;
        }
        if sign == Sign::Negative && !even_power {
            errors.push(format!("Gamma(alpha*k + gamma)^nu must be positive, fails at k = {k}"));
            return;
        }
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// A validated, immutable model with its log-normalizer cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    model: CountModel,
    x: f64,
    ln_x: f64,
    kernel: Kernel,
    ln_norm: f64,
}

impl Distribution {
    pub fn model(&self) -> &CountModel {
        &self.model
    }

    /// `λt`.
    pub fn argument(&self) -> f64 {
        self.x
    }

    pub fn ln_normalizer(&self) -> f64 {
        self.ln_norm
    }

    pub fn log_pmf(&self, k: u64) -> f64 {
        let c = self.kernel.coefficient(k as usize);
        if c.is_zero() {
            return f64::NEG_INFINITY;
        }
        k as f64 * self.ln_x + c.log_magnitude - self.ln_norm
    }

    pub fn pmf(&self, k: u64) -> f64 {
        self.log_pmf(k).exp()
    }

    /// `G(u) = N(ux) / N(x)` for `|u| ≤ 1`.
    pub fn pgf(&self, u: f64) -> Result<f64> {
        if !(u.abs() <= 1.0) {
            return Err(Error::domain(format!("pgf needs |u| <= 1, got {u}")));
        }
        if u == 1.0 {
            return Ok(1.0);
        }
        let s = self.kernel.normalizer(u * self.x)?;
        Ok(s.sign().as_f64() * (s.ln_abs() - self.ln_norm).exp())
    }

    /// Log-probabilities for `k = 0..K`, with `K` chosen so the remaining mass
    /// is below 1e-16.
    pub fn support_log_pmf(&self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        let mut lp = self.log_pmf(0);
        let mut prev_ratio = f64::INFINITY;
        for k in 0..MAX_SUPPORT as u64 {
            out.push(lp);
            let next = self.log_pmf(k + 1);
            let ratio = (next - lp).exp();
            let bound = self.ratio_bound(ratio);
            if bound < 1.0 && ratio <= prev_ratio && lp.exp() * bound / (1.0 - bound) < TAIL_MASS {
                return Ok(out);
            }
            prev_ratio = ratio;
            lp = next;
        }
        Err(Error::Truncation(MAX_SUPPORT))
    }

    /// Upper bound on later successive-probability ratios, given the current
    /// one. Only the `r = 1` Imoto case has ratios that increase towards
    /// their limit `x`.
    fn ratio_bound(&self, ratio: f64) -> f64 {
        match self.kernel {
            Kernel::Gcom { r: 1.0, .. } => ratio.max(self.x),
            _ => ratio,
        }
    }

    pub fn moments(&self) -> Result<MomentSummary> {
        let lp = self.support_log_pmf()?;
        let p: Vec<f64> = lp.iter().map(|l| l.exp()).collect();
        let mut mean = NeumaierSum::new();
        for (k, &pk) in p.iter().enumerate() {
            mean.add(k as f64 * pk);
        }
        let mean = mean.value();
        let mut var = NeumaierSum::new();
        for (k, &pk) in p.iter().enumerate() {
            let d = k as f64 - mean;
            var.add(d * d * pk);
        }
        let variance = var.value();
        Ok(MomentSummary { mean, variance, dispersion_index: variance / mean, truncation_k: p.len() })
    }

    pub fn sampler(&self) -> Result<Sampler> {
        let lp = self.support_log_pmf()?;
        let mut acc = f64::NEG_INFINITY;
        let log_cdf: Vec<f64> = lp
            .iter()
            .map(|&l| {
                acc = log_add_exp(acc, l);
                acc
            })
            .collect();
        if !(acc >= (-1e-12f64).ln_1p()) {
            return Err(Error::Truncation(log_cdf.len()));
        }
        Ok(Sampler { log_cdf })
    }

    pub fn sample<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<u64>> {
        let sampler = self.sampler()?;
        Ok((0..count).map(|_| sampler.draw(rng)).collect())
    }
}

/// Inverse-transform sampler over a precomputed log-cdf table.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampler {
    log_cdf: Vec<f64>,
}

impl Sampler {
    /// Smallest `k` with `cdf(k) ≥ u`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let lu = rng.random::<f64>().ln();
        let k = self.log_cdf.partition_point(|&c| c < lu);
        k.min(self.log_cdf.len() - 1) as u64
    }

    pub fn support_len(&self) -> usize {
        self.log_cdf.len()
    }
}
