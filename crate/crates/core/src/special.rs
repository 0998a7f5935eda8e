//! The α-Mittag-Leffler family, the Imoto normalizer and the Wright function.

use crate::error::{Error, Result};
use crate::gamma::{gamma_term, is_integer, ln_gamma, reciprocal_gamma_term};
use crate::series::{
    scaled_sum_signed_log_series, PowerSeries, ScaledSum, SeriesOptions, Sign, SignedLogTerm, SumResult,
};

/// Parameters of `E_{α;ν,γ}(z) = Σ z^k / Γ(νk+γ)^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    /// α, the power applied to Γ.
    pub gamma_power: f64,
    /// ν, the multiplier of k inside Γ.
    pub step: f64,
    /// γ, the shift inside Γ.
    pub offset: f64,
}

impl MLParams {
    pub fn new(gamma_power: f64, step: f64, offset: f64) -> Self {
        MLParams { gamma_power, step, offset }
    }

    /// The two-parameter Mittag-Leffler function `E_{ν,γ}`.
    pub fn mittag_leffler(step: f64, offset: f64) -> Self {
        MLParams::new(1.0, step, offset)
    }

    /// Le Roy's function `Σ z^k / ((k+1)!)^α`.
    pub fn le_roy(gamma_power: f64) -> Self {
        MLParams::new(gamma_power, 1.0, 2.0)
    }

    /// Checks `α > 0`, `ν > 0`, and that every `Γ(νk+γ)` with `k < max_terms`
    /// is finite and nonzero with a real α-th power.
    pub fn validate(&self, max_terms: usize) -> Result<()> {
        let MLParams { gamma_power, step, offset } = *self;
        if !(gamma_power > 0.0 && gamma_power.is_finite()) {
            return Err(Error::domain(format!("gamma_power (alpha) must be > 0, got {gamma_power}")));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::domain(format!("step (nu) must be > 0, got {step}")));
        }
        if !offset.is_finite() {
            return Err(Error::domain(format!("offset (gamma) must be finite, got {offset}")));
        }
        for k in 0..max_terms {
            let x = step * k as f64 + offset;
            if x > 0.0 {
                break;
            }
            let (log, sign) = ln_gamma(x);
            if !log.is_finite() {
                return Err(Error::domain(format!("Gamma({x}) is singular at k = {k}")));
            }
            if sign == Sign::Negative && !is_integer(gamma_power) {
                return Err(Error::domain(format!(
                    "Gamma({x}) < 0 at k = {k} has no real power {gamma_power}"
                )));
            }
        }
        Ok(())
    }

    /// `1 / Γ(νk+γ)^α` in signed-log form.
    pub fn coefficient(&self, k: usize) -> SignedLogTerm {
        gamma_term(self.step * k as f64 + self.offset).powf(self.gamma_power).recip()
    }
}

/// `E_{α;ν,γ}(z)` with default series options.
pub fn alpha_ml(params: MLParams, z: f64) -> Result<SumResult> {
    alpha_ml_with(params, z, &SeriesOptions::default())
}

pub fn alpha_ml_with(params: MLParams, z: f64, opts: &SeriesOptions) -> Result<SumResult> {
    alpha_ml_scaled(params, z, opts)?.into_sum_result()
}

pub fn alpha_ml_scaled(params: MLParams, z: f64, opts: &SeriesOptions) -> Result<ScaledSum> {
    params.validate(opts.max_terms)?;
    scaled_sum_signed_log_series(|k| params.coefficient(k), z, 0.0, 1.0, opts)
}

/// Two-parameter Mittag-Leffler `E_{ν,γ}(z)`.
pub fn mittag_leffler(step: f64, offset: f64, z: f64) -> Result<SumResult> {
    alpha_ml(MLParams::mittag_leffler(step, offset), z)
}

/// Le Roy-type `Σ z^k / ((k+1)!)^α`.
pub fn le_roy(gamma_power: f64, z: f64) -> Result<SumResult> {
    alpha_ml(MLParams::le_roy(gamma_power), z)
}

/// `E_{α;ν,γ}(c·t^p)` as a power series in `t`: offset 0, step `p`,
/// coefficient `c^k / Γ(νk+γ)^α`.
pub fn alpha_ml_power_series(params: MLParams, scale: f64, power: f64, max_terms: usize) -> Result<PowerSeries> {
    params.validate(max_terms)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::domain(format!("argument scale must be > 0, got {scale}")));
    }
    let ln_scale = scale.ln();
    PowerSeries::new(0.0, power, max_terms, move |k| {
        params.coefficient(k) * SignedLogTerm::positive(k as f64 * ln_scale)
    })
}

/// Parameters of Imoto's normalizer `C(r,ν,t) = Σ Γ(ν+k)^r t^k / k!`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GcomNormalizerParams {
    pub r: f64,
    pub nu: f64,
    pub t: f64,
}

impl GcomNormalizerParams {
    pub fn new(r: f64, nu: f64, t: f64) -> Self {
        GcomNormalizerParams { r, nu, t }
    }

    /// Accepted: `r < 1/2, ν > 0, t ≥ 0`, or `r = 1, ν > 0, 0 ≤ t < 1`.
    pub fn validate(&self) -> Result<()> {
        if !(self.t >= 0.0) {
            return Err(Error::domain(format!("t must be >= 0, got {}", self.t)));
        }
        check_gcom_domain(self.r, self.nu, self.t)
    }
}

/// Domain of `C(r,ν,x)` in terms of `|x|`.
pub(crate) fn check_gcom_domain(r: f64, nu: f64, x: f64) -> Result<()> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::domain(format!("nu must be > 0, got {nu}")));
    }
    if !x.is_finite() {
        return Err(Error::domain(format!("t must be finite, got {x}")));
    }
    if r == 1.0 {
        if x.abs() < 1.0 {
            Ok(())
        } else {
            Err(Error::domain(format!("r = 1 needs |t| < 1, got t = {x}")))
        }
    } else if r < 0.5 {
        Ok(())
    } else {
        Err(Error::domain(format!("r must satisfy r < 1/2 (or r = 1 with |t| < 1), got r = {r}")))
    }
}

pub(crate) fn gcom_coefficient(r: f64, nu: f64, k: usize) -> SignedLogTerm {
    let lg_nu = ln_gamma(nu + k as f64).0;
    let lg_fact = ln_gamma(k as f64 + 1.0).0;
    SignedLogTerm::positive(r * lg_nu - lg_fact)
}

pub fn gcom_normalizer(params: GcomNormalizerParams) -> Result<SumResult> {
    gcom_normalizer_with(params, &SeriesOptions::default())
}

pub fn gcom_normalizer_with(params: GcomNormalizerParams, opts: &SeriesOptions) -> Result<SumResult> {
    params.validate()?;
    gcom_scaled(params.r, params.nu, params.t, opts)?.into_sum_result()
}

/// `C(r,ν,x)` for any `x` inside the convergence domain, including negative
/// `x` (needed for generating functions at `u < 0`).
pub(crate) fn gcom_scaled(r: f64, nu: f64, x: f64, opts: &SeriesOptions) -> Result<ScaledSum> {
    check_gcom_domain(r, nu, x)?;
    scaled_sum_signed_log_series(|k| gcom_coefficient(r, nu, k), x, 0.0, 1.0, opts)
}

/// Wright function `W_{a,b}(t) = Σ t^k / (k! Γ(ak+b))`, `a > -1`.
///
/// Terms at poles of `Γ(ak+b)` vanish.
pub fn wright(a: f64, b: f64, t: f64) -> Result<SumResult> {
    wright_with(a, b, t, &SeriesOptions::default())
}

pub fn wright_with(a: f64, b: f64, t: f64, opts: &SeriesOptions) -> Result<SumResult> {
    if !(a > -1.0 && a.is_finite()) {
        return Err(Error::domain(format!("wright needs a > -1, got {a}")));
    }
    if !b.is_finite() {
        return Err(Error::domain(format!("wright needs finite b, got {b}")));
    }
    let coeff = |k: usize| {
        let kf = k as f64;
        reciprocal_gamma_term(kf + 1.0) * reciprocal_gamma_term(a * kf + b)
    };
    scaled_sum_signed_log_series(coeff, t, 0.0, 1.0, opts)?.into_sum_result()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn exponential_special_cases() {
        assert!(rel(alpha_ml(MLParams::new(1.0, 1.0, 1.0), 1.0).unwrap().value, E) < 1e-15);
        assert!(rel(wright(0.0, 1.0, 1.0).unwrap().value, E) < 1e-15);
        let c = gcom_normalizer(GcomNormalizerParams::new(0.0, 1.0, 2.0)).unwrap();
        assert!(rel(c.value, 7.389056098930650) < 1e-15);
    }

    #[test]
    fn zero_argument() {
        assert_eq!(alpha_ml(MLParams::new(2.0, 1.0, 1.0), 0.0).unwrap().value, 1.0);
        assert_eq!(wright(1.0, 1.0, 0.0).unwrap().value, 1.0);
    }

    #[test]
    fn geometric_normalizer() {
        let c = gcom_normalizer(GcomNormalizerParams::new(1.0, 1.0, 0.5)).unwrap();
        assert!(rel(c.value, 2.0) < 1e-14);
    }

    #[test]
    fn le_roy_is_shifted_factorial() {
        // Σ z^k/(k+1)! = (e^z - 1)/z
        let v = le_roy(1.0, 2.0).unwrap().value;
        assert!(rel(v, (2f64.exp() - 1.0) / 2.0) < 1e-15);
        // two-parameter E_{2,1}(z^2) = cosh z
        let v = mittag_leffler(2.0, 1.0, 4.0).unwrap().value;
        assert!(rel(v, 2f64.cosh()) < 1e-15);
    }

    #[test]
    fn wright_matches_alpha_ml_on_squared_factorial() {
        let w = wright(1.0, 1.0, 1.0).unwrap().value;
        let e = alpha_ml(MLParams::new(2.0, 1.0, 1.0), 1.0).unwrap().value;
        assert!(rel(w, e) < 1e-15);
    }

    #[test]
    fn wright_agrees_with_negative_r_normalizer() {
        for &(nu, t) in &[(0.5, 0.3), (1.0, 2.0), (2.5, 7.0)] {
            let w = wright(1.0, nu, t).unwrap().value;
            let c = gcom_normalizer(GcomNormalizerParams::new(-1.0, nu, t)).unwrap().value;
            assert!(rel(w, c) < 1e-13, "nu={nu} t={t}: {w} vs {c}");
        }
    }

    #[test]
    fn parameter_domain_errors() {
        assert!(matches!(alpha_ml(MLParams::new(0.0, 1.0, 1.0), 1.0), Err(Error::Domain(_))));
        assert!(matches!(alpha_ml(MLParams::new(1.0, -1.0, 1.0), 1.0), Err(Error::Domain(_))));
        // Γ(k - 2) hits a pole at k = 0
        assert!(matches!(alpha_ml(MLParams::new(1.0, 1.0, -2.0), 1.0), Err(Error::Domain(_))));
        // Γ(-0.5) < 0 with a non-integer power
        assert!(matches!(alpha_ml(MLParams::new(0.5, 1.0, -0.5), 1.0), Err(Error::Domain(_))));
        // integer power is fine
        assert!(alpha_ml(MLParams::new(1.0, 1.0, -0.5), 1.0).is_ok());
        let e = gcom_normalizer(GcomNormalizerParams::new(0.7, 1.0, 1.0)).unwrap_err();
        assert!(e.to_string().contains("r < 1/2"), "{e}");
        assert!(gcom_normalizer(GcomNormalizerParams::new(1.0, 1.0, 1.0)).is_err());
        assert!(gcom_normalizer(GcomNormalizerParams::new(0.2, 0.0, 1.0)).is_err());
        assert!(gcom_normalizer(GcomNormalizerParams::new(0.2, 1.0, -1.0)).is_err());
        assert!(wright(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn monotone_in_z() {
        let p = MLParams::new(1.5, 0.7, 0.4);
        let mut prev = f64::NEG_INFINITY;
        for i in 0..50 {
            let v = alpha_ml(p, i as f64 * 0.2).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn power_series_matches_direct_evaluation() {
        let p = MLParams::new(2.0, 1.0, 1.0);
        let s = alpha_ml_power_series(p, 0.5, 2.0, 10_000).unwrap();
        for &t in &[0.3, 1.0, 2.5] {
            let a = s.evaluate(t, &SeriesOptions::default()).unwrap().value;
            let b = alpha_ml(p, 0.5 * t * t).unwrap().value;
            assert!(rel(a, b) < 1e-14);
        }
    }
}
