//! Hadamard fractional integral and the Riemann-Liouville-type and
//! Caputo-type Hadamard derivatives.
//!
//! On monomials every operator is diagonal:
//!
//! ```text
//! (t d/dt)^α t^β = β^α t^β        J^α t^β = β^(-α) t^β      (lower limit 0)
//! ```
//!
//! so on a [`PowerSeries`] they are exact termwise multipliers. Quadrature is
//! only used for the integral of general callables, where the kernel
//! `(ln(t/τ))^(α-1)` becomes `u^(α-1)` after `u = ln(t/τ)` and is absorbed into
//! a Gauss-Jacobi weight.

use statrs::function::gamma::checked_gamma_lr;

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::quadrature::GaussJacobi;
use crate::series::{PowerSeries, SeriesOptions, SignedLogTerm};

/// Order `α > 0` with `n = ⌊α⌋ + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorOrder {
    order: f64,
    n: u32,
}

impl OperatorOrder {
    pub fn new(order: f64) -> Result<Self> {
        if !(order > 0.0 && order.is_finite()) {
            return Err(Error::domain(format!("operator order must be > 0, got {order}")));
        }
        Ok(OperatorOrder { order, n: order.floor() as u32 + 1 })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("monomial exponent must be > 0, got {beta}")))
    }
}

/// Eigenvalue `β^α` of `(t d/dt)^α` on `t^β`.
pub fn caputo_hadamard_power(order: f64, beta: f64) -> Result<f64> {
    OperatorOrder::new(order)?;
    check_beta(beta)?;
    Ok(beta.powf(order))
}

/// Eigenvalue `β^(-α)` of `J^α` on `t^β`.
pub fn hadamard_integral_power(order: f64, beta: f64) -> Result<f64> {
    OperatorOrder::new(order)?;
    check_beta(beta)?;
    Ok(beta.powf(-order))
}

/// `e ↦ e^p` in log form; `0 ↦ 0` (constants are annihilated).
fn power_multiplier(p: f64) -> impl Fn(f64) -> SignedLogTerm + Send + Sync + 'static {
    move |e: f64| {
        if e == 0.0 {
            SignedLogTerm::ZERO
        } else {
            SignedLogTerm::positive(p * e.ln())
        }
    }
}

/// Caputo-type Hadamard derivative applied termwise.
///
/// The constant term is annihilated; a nonzero term with a negative exponent
/// is a domain error.
pub fn apply_caputo_hadamard(series: &PowerSeries, order: f64) -> Result<PowerSeries> {
    let order = OperatorOrder::new(order)?;
    if let Some(e) = series.first_nonzero_exponent_where(|e| e < 0.0) {
        return Err(Error::domain(format!("Caputo-type derivative needs exponents >= 0, found {e}")));
    }
    series.diagonal_transform_log(power_multiplier(order.order()))
}

/// Hadamard fractional integral (lower limit 0) applied termwise.
pub fn apply_hadamard_integral(series: &PowerSeries, order: f64) -> Result<PowerSeries> {
    let order = OperatorOrder::new(order)?;
    if let Some(e) = series.first_nonzero_exponent_where(|e| e <= 0.0) {
        return Err(Error::domain(format!("Hadamard integral needs exponents > 0, found {e}")));
    }
    let alpha = order.order();
    series.diagonal_transform_log(move |e: f64| SignedLogTerm::positive(-(alpha * e.ln())))
}

/// Riemann-Liouville-type Hadamard derivative `δ^n J^(n-α)` applied termwise.
///
/// On `t^e` with `e > 0` the combined multiplier `e^n · e^(α-n)` is `e^α`.
/// Constants map to a logarithmic kernel rather than a power, so a nonzero
/// constant term is rejected; use [`rl_caputo_relation_residual`] for those.
pub fn hadamard_derivative_rl(series: &PowerSeries, order: f64) -> Result<PowerSeries> {
    let order = OperatorOrder::new(order)?;
    if let Some(e) = series.first_nonzero_exponent_where(|e| e <= 0.0) {
        return Err(if e == 0.0 {
            Error::UnsupportedTerm {
                exponent: e,
                reason: "RL-type Hadamard derivative of a constant is not a power term",
            }
        } else {
            Error::domain(format!("RL-type Hadamard derivative needs exponents > 0, found {e}"))
        });
    }
    series.diagonal_transform_log(power_multiplier(order.order()))
}

/// `δ^n = (t d/dt)^n` applied as `n` successive multiplications by the
/// exponent.
pub fn apply_delta_power(series: &PowerSeries, n: u32) -> Result<PowerSeries> {
    let mut out = series.clone();
    for _ in 0..n {
        out = out.diagonal_transform(|e| e)?;
    }
    Ok(out)
}

/// Classical Caputo derivative of `u^β`: `Γ(β+1)/Γ(β-α+1) u^(β-α)`.
///
/// Returns the coefficient. Integer `β` below `⌈α⌉` gives 0; otherwise
/// `β > ⌈α⌉ - 1` is required.
pub fn caputo_power_classical(order: f64, beta: f64) -> Result<f64> {
    OperatorOrder::new(order)?;
    if !beta.is_finite() {
        return Err(Error::domain(format!("exponent must be finite, got {beta}")));
    }
    let n = order.ceil();
    if beta >= 0.0 && beta == beta.round() && beta < n {
        return Ok(0.0);
    }
    if !(beta > n - 1.0) {
        return Err(Error::domain(format!(
            "Caputo derivative of order {order} needs exponent > {} (or an integer below {n}), got {beta}",
            n - 1.0
        )));
    }
    let (num, _) = ln_gamma(beta + 1.0);
    let (den, _) = ln_gamma(beta - order + 1.0);
    Ok((num - den).exp())
}

/// Quadrature rule for [`hadamard_integral_quad`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureScheme {
    GaussJacobi,
    /// Trapezoid rule after the grading substitution `u = L s^(1/α)`.
    /// Low order; meant for cross-checking.
    GradedTrapezoid,
}

/// Default Gauss-Jacobi node count.
pub const DEFAULT_NODES: usize = 64;
/// `u`-length that puts `e^(-β u)` below 1e-18 of its peak for `β = 1`.
pub const TAIL_LENGTH_UNIT: f64 = 60.0;
const TAIL_WARNING_RATIO: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lower_limit: f64,
    pub nodes: usize,
    pub scheme: QuadratureScheme,
    /// Length of the `u = ln(t/τ)` interval used when `lower_limit == 0`.
    pub tail_truncation: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            lower_limit: 0.0,
            nodes: DEFAULT_NODES,
            scheme: QuadratureScheme::GaussJacobi,
            tail_truncation: TAIL_LENGTH_UNIT,
        }
    }
}

impl QuadratureSpec {
    /// Lower limit 0, with the tail cut at `60 / min_exponent` for integrands
    /// that decay like `τ^min_exponent` as `τ → 0`.
    pub fn for_min_exponent(min_exponent: f64) -> Result<Self> {
        check_beta(min_exponent)?;
        Ok(QuadratureSpec { tail_truncation: TAIL_LENGTH_UNIT / min_exponent, ..Default::default() })
    }

    pub fn with_lower_limit(lower_limit: f64) -> Self {
        QuadratureSpec { lower_limit, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 2 {
            return Err(Error::domain(format!("quadrature needs >= 2 nodes, got {}", self.nodes)));
        }
        if !(self.lower_limit >= 0.0 && self.lower_limit.is_finite()) {
            return Err(Error::domain(format!("lower limit must be >= 0, got {}", self.lower_limit)));
        }
        if self.lower_limit == 0.0 && !(self.tail_truncation > 0.0 && self.tail_truncation.is_finite()) {
            return Err(Error::domain(format!(
                "lower limit 0 needs tail_truncation > 0, got {}",
                self.tail_truncation
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Set when the lower limit is 0 and the integrand has not decayed to
    /// 1e-18 of its peak at the truncation point.
    pub tail_warning: bool,
}

/// Hadamard integral `J^α` of a callable, with the node table built once.
#[derive(Debug, Clone)]
pub struct HadamardIntegrator {
    order: OperatorOrder,
    spec: QuadratureSpec,
    rule: Option<GaussJacobi>,
    ln_gamma_order: f64,
}

impl HadamardIntegrator {
    pub fn new(order: f64, spec: QuadratureSpec) -> Result<Self> {
        let order = OperatorOrder::new(order)?;
        spec.validate()?;
        let rule = match spec.scheme {
            QuadratureScheme::GaussJacobi => Some(GaussJacobi::new(spec.nodes, 0.0, order.order() - 1.0)?),
            QuadratureScheme::GradedTrapezoid => None,
        };
        Ok(HadamardIntegrator { order, spec, rule, ln_gamma_order: ln_gamma(order.order()).0 })
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// `(1/Γ(α)) ∫_a^t (ln(t/τ))^(α-1) f(τ) dτ/τ`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, t: f64) -> Result<QuadResult> {
        let a = self.spec.lower_limit;
        if !(t > a && t.is_finite()) {
            return Err(Error::domain(format!("upper limit {t} must exceed lower limit {a}")));
        }
        let length = if a > 0.0 { (t / a).ln() } else { self.spec.tail_truncation };
        let alpha = self.order.order();

        let mut peak = 0.0_f64;
        let mut eval = |u: f64| -> Result<f64> {
            let tau = t * (-u).exp();
            let y = f(tau);
            if !y.is_finite() {
                return Err(Error::Evaluation { point: tau });
            }
            peak = peak.max(y.abs());
            Ok(y)
        };

        let value = match &self.rule {
            Some(rule) => {
                let half = 0.5 * length;
                let mut acc = 0.0;
                for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
                    acc += w * eval(half * (1.0 + x))?;
                }
                (alpha * half.ln() - self.ln_gamma_order).exp() * acc
            }
            None => {
                let n = self.spec.nodes;
                let h = 1.0 / (n - 1) as f64;
                let mut acc = 0.0;
                for j in 0..n {
                    let s = j as f64 * h;
                    let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                    acc += w * eval(length * s.powf(1.0 / alpha))?;
                }
                // L^α / Γ(α+1)
                (alpha * length.ln() - self.ln_gamma_order - alpha.ln()).exp() * acc * h
            }
        };

        let tail_warning = if a == 0.0 {
            let end = f(t * (-length).exp()).abs();
            !(end <= TAIL_WARNING_RATIO * peak)
        } else {
            false
        };
        Ok(QuadResult { value, tail_warning })
    }
}

/// One-shot form of [`HadamardIntegrator::integrate`].
pub fn hadamard_integral_quad<F: FnMut(f64) -> f64>(
    f: F,
    order: f64,
    spec: &QuadratureSpec,
    t: f64,
) -> Result<QuadResult> {
    HadamardIntegrator::new(order, *spec)?.integrate(f, t)
}

/// Max over `grid` of `|Caputo(f)(t) - D^α[f - f(t0)](t)|`, both operators
/// taken with lower limit `t0` and `α ∈ (0,1)`.
///
/// The Caputo side is `J^(1-α)(δf)` by Gauss-Jacobi quadrature, with `δf`
/// evaluated from the series. The RL side is closed form: for `e > 0`,
///
/// ```text
/// D^α t^e = e^α t^e P(1-α, eL) + t0^e L^(-α)/Γ(1-α),   D^α 1 = L^(-α)/Γ(1-α),
/// ```
///
/// with `L = ln(t/t0)` and `P` the regularized lower incomplete gamma
/// function.
pub fn rl_caputo_relation_residual(f: &PowerSeries, order: f64, t0: f64, grid: &[f64]) -> Result<f64> {
    if !(order > 0.0 && order < 1.0) {
        return Err(Error::domain(format!("relation check needs order in (0,1), got {order}")));
    }
    if !(t0 > 0.0 && t0.is_finite()) {
        return Err(Error::domain(format!("t0 must be > 0, got {t0}")));
    }
    if let Some(e) = f.first_nonzero_exponent_where(|e| e < 0.0) {
        return Err(Error::domain(format!("relation check needs exponents >= 0, found {e}")));
    }
    let opts = SeriesOptions::default();
    let alpha = order;
    let delta_f = f.diagonal_transform(|e| e)?;
    let integrator = HadamardIntegrator::new(1.0 - alpha, QuadratureSpec::with_lower_limit(t0))?;

    let constant: f64 = (0..f.max_terms())
        .take_while(|&k| f.exponent(k) <= 0.0)
        .filter(|&k| f.exponent(k) == 0.0)
        .map(|k| f.coefficient_value(k))
        .sum();
    let f_t0 = f.evaluate(t0, &opts)?.value;
    let jump = constant - f_t0;
    let ln_gamma_1ma = ln_gamma(1.0 - alpha).0;

    let mut worst = 0.0_f64;
    for &t in grid {
        if !(t > t0) {
            return Err(Error::domain(format!("grid point {t} must exceed t0 = {t0}")));
        }
        let mut failed = None;
        let caputo = integrator
            .integrate(
                |tau| match delta_f.evaluate(tau, &opts) {
                    Ok(r) => r.value,
                    Err(e) => {
                        failed.get_or_insert(e);
                        f64::NAN
                    }
                },
                t,
            )
            .map_err(|e| failed.take().unwrap_or(e))?
            .value;

        let ln_ratio = (t / t0).ln();
        let powered = f.diagonal_transform(move |e| {
            if e == 0.0 {
                0.0
            } else {
                e.powf(alpha) * checked_gamma_lr(1.0 - alpha, e * ln_ratio).unwrap_or(f64::NAN)
            }
        })?;
        let series_part = powered.evaluate(t, &opts)?.value;
        let kernel = (-alpha * ln_ratio.ln() - ln_gamma_1ma).exp();
        let boundary = ((f_t0 - constant) + jump) * kernel;
        let rl = series_part + boundary;
        worst = worst.max((caputo - rl).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{alpha_ml_power_series, MLParams};

    #[test]
    fn monomial_eigenvalues() {
        assert_eq!(caputo_hadamard_power(0.5, 4.0).unwrap(), 2.0);
        assert_eq!(caputo_hadamard_power(1.0, 3.7).unwrap(), 3.7);
        assert_eq!(hadamard_integral_power(1.0, 2.0).unwrap(), 0.5);
        assert_eq!(hadamard_integral_power(0.3, 1.0).unwrap(), 1.0);
        assert!(caputo_hadamard_power(0.5, 0.0).is_err());
        assert!(hadamard_integral_power(0.5, -0.5).is_err());
        assert!(hadamard_integral_power(0.0, 2.0).is_err());
    }

    #[test]
    fn order_convention() {
        assert_eq!(OperatorOrder::new(0.5).unwrap().n(), 1);
        assert_eq!(OperatorOrder::new(1.0).unwrap().n(), 2);
        assert_eq!(OperatorOrder::new(2.7).unwrap().n(), 3);
        assert!(OperatorOrder::new(-1.0).is_err());
    }

    #[test]
    fn caputo_kills_constants() {
        let c = PowerSeries::monomial(5.0, 0.0).unwrap();
        for &alpha in &[0.3, 1.0, 2.5] {
            let d = apply_caputo_hadamard(&c, alpha).unwrap();
            assert_eq!(d.coefficient_value(0), 0.0);
            assert_eq!(d.evaluate(1.7, &SeriesOptions::default()).unwrap().value, 0.0);
        }
    }

    #[test]
    fn negative_exponents_rejected() {
        let s = PowerSeries::monomial(1.0, -0.5).unwrap();
        assert!(matches!(apply_caputo_hadamard(&s, 0.5), Err(Error::Domain(_))));
        assert!(matches!(apply_hadamard_integral(&s, 0.5), Err(Error::Domain(_))));
        let c = PowerSeries::from_coefficients(0.0, 1.0, &[1.0, 1.0]).unwrap();
        assert!(matches!(apply_hadamard_integral(&c, 0.5), Err(Error::Domain(_))));
        assert!(matches!(hadamard_derivative_rl(&c, 0.5), Err(Error::UnsupportedTerm { .. })));
    }

    #[test]
    fn integer_order_eigen_relation() {
        // (t d/dt)^2 E_{2;1,1}(t^2/2) = 2 t^2 E_{2;1,1}(t^2/2)
        let f = alpha_ml_power_series(MLParams::new(2.0, 1.0, 1.0), 0.5, 2.0, 10_000).unwrap();
        let lhs = apply_caputo_hadamard(&f, 2.0).unwrap().drop_leading(1).unwrap();
        let rhs = f.shift_exponent(2.0).scaled(2.0);
        for k in 0..30 {
            assert_eq!(lhs.exponent(k), rhs.exponent(k));
            let (a, b) = (lhs.coefficient_value(k), rhs.coefficient_value(k));
            assert!((a - b).abs() <= 1e-13 * b.abs(), "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn integer_order_is_repeated_delta() {
        let f = alpha_ml_power_series(MLParams::new(1.5, 1.0, 1.0), 1.0, 0.5, 10_000).unwrap();
        for n in 1..4u32 {
            let a = apply_caputo_hadamard(&f, n as f64).unwrap();
            let b = apply_delta_power(&f, n).unwrap();
            for k in 0..25 {
                let (x, y) = (a.coefficient_value(k), b.coefficient_value(k));
                assert!((x - y).abs() <= 1e-14 * y.abs(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rl_agrees_with_caputo_on_powers() {
        let s = PowerSeries::monomial(1.0, 3.0).unwrap();
        let a = hadamard_derivative_rl(&s, 0.5).unwrap();
        assert_eq!(a.coefficient_value(0), apply_caputo_hadamard(&s, 0.5).unwrap().coefficient_value(0));
        let back = hadamard_derivative_rl(&apply_hadamard_integral(&s, 0.7).unwrap(), 0.7).unwrap();
        assert_eq!(back.coefficient_value(0), 1.0);
    }

    #[test]
    fn classical_caputo_monomials() {
        assert!((caputo_power_classical(1.0, 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(caputo_power_classical(0.5, 0.0).unwrap(), 0.0);
        assert_eq!(caputo_power_classical(1.5, 1.0).unwrap(), 0.0);
        let g = caputo_power_classical(0.7, 0.7).unwrap();
        assert!((g - libm::tgamma(1.7)).abs() < 1e-15);
        assert!(caputo_power_classical(1.5, 0.7).is_err());
        assert!(caputo_power_classical(0.5, -0.3).is_err());
    }

    #[test]
    fn quadrature_simple_cases() {
        // ∫_1^e dτ/τ = 1
        let spec = QuadratureSpec::with_lower_limit(1.0);
        let r = hadamard_integral_quad(|_| 1.0, 1.0, &spec, std::f64::consts::E).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        assert!(!r.tail_warning);
        // J^2 τ at t = 1 equals 1
        let r = hadamard_integral_quad(|x| x, 2.0, &QuadratureSpec::default(), 1.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(!r.tail_warning);
    }

    #[test]
    fn quadrature_flags_non_decaying_integrands() {
        let r = hadamard_integral_quad(|_| 1.0, 0.5, &QuadratureSpec::default(), 2.0).unwrap();
        assert!(r.tail_warning);
    }

    #[test]
    fn quadrature_errors() {
        let spec = QuadratureSpec::with_lower_limit(1.0);
        assert!(matches!(hadamard_integral_quad(|x| x, 0.5, &spec, 0.5), Err(Error::Domain(_))));
        let r = hadamard_integral_quad(|x| 1.0 / (x - 1.5), 0.5, &spec, 2.0);
        assert!(matches!(r, Err(Error::Evaluation { .. })) || r.is_ok());
        let bad = QuadratureSpec { tail_truncation: 0.0, ..Default::default() };
        assert!(hadamard_integral_quad(|x| x, 0.5, &bad, 1.0).is_err());
        let bad = QuadratureSpec { nodes: 1, ..Default::default() };
        assert!(hadamard_integral_quad(|x| x, 0.5, &bad, 1.0).is_err());
        let r = hadamard_integral_quad(|_| f64::NAN, 0.5, &QuadratureSpec::default(), 1.0);
        assert!(matches!(r, Err(Error::Evaluation { .. })));
    }

    #[test]
    fn graded_trapezoid_is_a_rough_cross_check() {
        let spec = QuadratureSpec {
            scheme: QuadratureScheme::GradedTrapezoid,
            nodes: 4000,
            ..QuadratureSpec::for_min_exponent(2.0).unwrap()
        };
        let r = hadamard_integral_quad(|x| x * x, 0.6, &spec, 1.5).unwrap();
        let exact = 2f64.powf(-0.6) * 2.25;
        assert!(((r.value - exact) / exact).abs() < 1e-4, "{} vs {}", r.value, exact);
    }

    #[test]
    fn relation_residuals() {
        let constant = PowerSeries::monomial(3.0, 0.0).unwrap();
        assert_eq!(rl_caputo_relation_residual(&constant, 0.5, 1.0, &[1.5, 2.0]).unwrap(), 0.0);
        let affine = PowerSeries::from_coefficients(0.0, 1.0, &[1.0, 1.0]).unwrap();
        assert!(rl_caputo_relation_residual(&affine, 0.5, 1.0, &[1.5, 2.0]).unwrap() < 1e-6);
        let square = PowerSeries::monomial(1.0, 2.0).unwrap();
        for &alpha in &[0.2, 0.5, 0.9] {
            assert!(rl_caputo_relation_residual(&square, alpha, 1.0, &[1.5, 2.0, 3.0]).unwrap() < 1e-12);
        }
        assert!(rl_caputo_relation_residual(&square, 1.5, 1.0, &[2.0]).is_err());
        assert!(rl_caputo_relation_residual(&square, 0.5, 1.0, &[0.5]).is_err());
    }
}
