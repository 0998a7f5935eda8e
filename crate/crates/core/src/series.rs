//! Summation of rapidly converging series whose terms are kept in signed-log
//! form, and the generalized power series `Σ c_k t^(μ + kσ)` on which the
//! Hadamard operators act termwise.
//!
//! Every special function in this crate is a series of the shape
//! `Σ c_k z^k` with `c_k` built from products and powers of `Γ`. Evaluating
//! `c_k` directly overflows long before the series has converged, so terms are
//! assembled as `ln|c_k| + e_k ln|z|` and only exponentiated at the very end,
//! relative to a common scale.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default relative stopping tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-15;
/// Default cap on the number of series terms.
pub const DEFAULT_MAX_TERMS: usize = 10_000;
/// Absolute floor for the convergence test when the partial sum is (near) zero.
pub const ABSOLUTE_FLOOR: f64 = 1e-300;

/// Consecutive small, decaying terms required before the sum stops.
const STOP_HITS: usize = 3;
/// Terms whose log-magnitudes all lie in `[-RANGE, RANGE]` are summed unscaled.
const UNSCALED_LOG_RANGE: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real number stored as `sign · exp(log_magnitude)`.
///
/// `sign == Zero` iff the number is exactly zero; `log_magnitude` is then
/// ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogTerm {
    pub log_magnitude: f64,
    pub sign: Sign,
}

impl SignedLogTerm {
    pub const ZERO: SignedLogTerm = SignedLogTerm {
        log_magnitude: f64::NEG_INFINITY,
        sign: Sign::Zero,
    };
    pub const ONE: SignedLogTerm = SignedLogTerm {
        log_magnitude: 0.0,
        sign: Sign::Positive,
    };

    /// Normalizes `log = -inf` and `sign == Zero` to [`SignedLogTerm::ZERO`].
    pub fn new(log_magnitude: f64, sign: Sign) -> Self {
        if sign == Sign::Zero || log_magnitude == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            SignedLogTerm { log_magnitude, sign }
        }
    }

    pub fn positive(log_magnitude: f64) -> Self {
        Self::new(log_magnitude, Sign::Positive)
    }

    pub fn from_value(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(x.abs().ln(), Sign::of(x))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// True for NaN or `+inf` log-magnitudes on a nonzero term.
    pub fn is_non_finite(&self) -> bool {
        !self.is_zero() && !self.log_magnitude.is_finite()
    }

    pub fn value(&self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            s => s.as_f64() * self.log_magnitude.exp(),
        }
    }

    pub fn recip(self) -> SignedLogTerm {
        SignedLogTerm::new(-self.log_magnitude, self.sign)
    }

    /// Real power `x^p`. Negative bases need an integer exponent; otherwise the
    /// result carries a NaN magnitude.
    pub fn powf(self, p: f64) -> SignedLogTerm {
        match self.sign {
            Sign::Zero => {
                if p > 0.0 {
                    Self::ZERO
                } else {
                    SignedLogTerm { log_magnitude: f64::NAN, sign: Sign::Positive }
                }
            }
            Sign::Positive => SignedLogTerm::new(p * self.log_magnitude, Sign::Positive),
            Sign::Negative => {
                if p == p.round() {
                    let sign = if (p as i64) % 2 == 0 { Sign::Positive } else { Sign::Negative };
                    SignedLogTerm::new(p * self.log_magnitude, sign)
                } else {
                    SignedLogTerm { log_magnitude: f64::NAN, sign: Sign::Positive }
                }
            }
        }
    }
}

impl std::ops::Mul for SignedLogTerm {
    type Output = SignedLogTerm;

    fn mul(self, other: SignedLogTerm) -> SignedLogTerm {
        SignedLogTerm::new(self.log_magnitude + other.log_magnitude, self.sign * other.sign)
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Stopping controls for series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Relative tolerance of the stopping test.
    pub tolerance: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { tolerance: DEFAULT_TOLERANCE, max_terms: DEFAULT_MAX_TERMS }
    }
}

impl SeriesOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        SeriesOptions { tolerance, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::domain(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        if self.max_terms == 0 {
            return Err(Error::domain("max_terms must be >= 1"));
        }
        Ok(())
    }
}

/// Result of a series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: f64,
    pub terms_used: usize,
    pub last_term_magnitude: f64,
    pub converged: bool,
}

/// A series sum held as `scaled_value · exp(scale_log)`, which never
/// overflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSum {
    pub scaled_value: f64,
    pub scale_log: f64,
    pub terms_used: usize,
    pub last_term_log: f64,
    pub converged: bool,
}

impl ScaledSum {
    pub fn sign(&self) -> Sign {
        Sign::of(self.scaled_value)
    }

    /// `ln|value|`; `-inf` for a zero sum.
    pub fn ln_abs(&self) -> f64 {
        self.scaled_value.abs().ln() + self.scale_log
    }

    pub fn as_term(&self) -> SignedLogTerm {
        SignedLogTerm::new(self.ln_abs(), self.sign())
    }

    /// Converts to a plain `f64`, failing if the value overflows.
    pub fn into_sum_result(self) -> Result<SumResult> {
        let value = if self.scale_log == 0.0 {
            self.scaled_value
        } else {
            self.scaled_value * self.scale_log.exp()
        };
        if !value.is_finite() {
            return Err(Error::Overflow { index: self.terms_used.saturating_sub(1) });
        }
        Ok(SumResult {
            value,
            terms_used: self.terms_used,
            last_term_magnitude: self.last_term_log.exp(),
            converged: self.converged,
        })
    }
}

/// Sums `Σ_k c_k · z^(offset + k·step)` where `coeff(k)` gives `c_k` in
/// signed-log form.
///
/// For `z < 0` every reachable exponent must be an integer. Stops once three
/// consecutive terms are both past the magnitude hump and below
/// `tolerance · |partial sum|`; `converged` is false when `max_terms` is hit
/// first.
pub fn sum_signed_log_series<F>(
    coeff: F,
    argument: f64,
    offset: f64,
    step: f64,
    opts: &SeriesOptions,
) -> Result<SumResult>
where
    F: Fn(usize) -> SignedLogTerm,
{
    scaled_sum_signed_log_series(coeff, argument, offset, step, opts)?.into_sum_result()
}

/// Like [`sum_signed_log_series`] but keeps the result in scaled form so that
/// sums beyond the `f64` range can still be used through their logarithm.
pub fn scaled_sum_signed_log_series<F>(
    coeff: F,
    argument: f64,
    offset: f64,
    step: f64,
    opts: &SeriesOptions,
) -> Result<ScaledSum>
where
    F: Fn(usize) -> SignedLogTerm,
{
    if !(step > 0.0 && step.is_finite()) || !offset.is_finite() {
        return Err(Error::domain(format!("series needs finite offset and step > 0, got ({offset}, {step})")));
    }
    sum_terms(|k| (coeff(k), offset + k as f64 * step), argument, opts, false)
}

fn sum_terms<F>(term: F, argument: f64, opts: &SeriesOptions, exhaustive: bool) -> Result<ScaledSum>
where
    F: Fn(usize) -> (SignedLogTerm, f64),
{
    opts.validate()?;
    if !argument.is_finite() {
        return Err(Error::domain(format!("series argument must be finite, got {argument}")));
    }
    if argument == 0.0 {
        return sum_at_zero(term, opts.max_terms);
    }

    let ln_arg = argument.abs().ln();
    let ln_tol = opts.tolerance.ln();
    let ln_floor = ABSOLUTE_FLOOR.ln();

    let mut terms: Vec<(f64, Sign)> = Vec::with_capacity(64);
    // Running partial sum, approximately, as approx · exp(approx_ref).
    let mut approx = 0.0_f64;
    let mut approx_ref = f64::NAN;
    let mut hits = 0;
    let mut converged = false;

    for k in 0..opts.max_terms {
        let (c, e) = term(k);
        if c.is_non_finite() {
            return Err(Error::Overflow { index: k });
        }
        let (log, sign) = if c.is_zero() {
            (f64::NEG_INFINITY, Sign::Zero)
        } else {
            let mut sign = c.sign;
            if argument < 0.0 {
                if e != e.round() {
                    return Err(Error::domain(format!(
                        "negative argument {argument} needs integer exponents, got {e}"
                    )));
                }
                if (e as i64) % 2 != 0 {
                    sign = sign.flip();
                }
            }
            let log = c.log_magnitude + e * ln_arg;
            if log.is_nan() || log == f64::INFINITY {
                return Err(Error::Overflow { index: k });
            }
            if log == f64::NEG_INFINITY {
                (log, Sign::Zero)
            } else {
                (log, sign)
            }
        };

        if sign != Sign::Zero {
            if approx_ref.is_nan() {
                approx_ref = log;
            } else if log > approx_ref + UNSCALED_LOG_RANGE {
                approx *= (approx_ref - log).exp();
                approx_ref = log;
            }
            approx += sign.as_f64() * (log - approx_ref).exp();
        }

        if k > 0 && !exhaustive {
            let (prev_log, prev_sign) = terms[k - 1];
            let decaying = sign == Sign::Zero || (prev_sign != Sign::Zero && log < prev_log);
            let partial_log = if approx == 0.0 { f64::NEG_INFINITY } else { approx.abs().ln() + approx_ref };
            let small = sign == Sign::Zero || log <= ln_tol + partial_log || log <= ln_floor;
            if decaying && small {
                hits += 1;
            } else {
                hits = 0;
            }
        }
        terms.push((log, sign));
        if hits >= STOP_HITS {
            converged = true;
            break;
        }
    }
    if exhaustive {
        converged = true;
    }

    let max_log = terms
        .iter()
        .filter(|(_, s)| *s != Sign::Zero)
        .map(|(l, _)| *l)
        .fold(f64::NEG_INFINITY, f64::max);
    let scale_log = if max_log.is_finite() && max_log.abs() > UNSCALED_LOG_RANGE { max_log } else { 0.0 };
    let mut acc = NeumaierSum::new();
    for &(log, sign) in &terms {
        if sign != Sign::Zero {
            acc.add(sign.as_f64() * (log - scale_log).exp());
        }
    }
    let last_term_log = terms.last().map(|t| t.0).unwrap_or(f64::NEG_INFINITY);
    Ok(ScaledSum {
        scaled_value: acc.value(),
        scale_log,
        terms_used: terms.len(),
        last_term_log,
        converged,
    })
}

/// At `z = 0` only the term with exponent exactly zero survives.
fn sum_at_zero<F>(term: F, max_terms: usize) -> Result<ScaledSum>
where
    F: Fn(usize) -> (SignedLogTerm, f64),
{
    let mut value = 0.0;
    let mut used = 0;
    for k in 0..max_terms {
        let (c, e) = term(k);
        used = k + 1;
        if e > 0.0 {
            break;
        }
        if c.is_zero() {
            continue;
        }
        if c.is_non_finite() {
            return Err(Error::Overflow { index: k });
        }
        if e < 0.0 {
            return Err(Error::domain(format!("term with exponent {e} is singular at 0")));
        }
        value = c.value();
        if e == 0.0 {
            break;
        }
    }
    Ok(ScaledSum {
        scaled_value: value,
        scale_log: 0.0,
        terms_used: used.max(1),
        last_term_log: f64::NEG_INFINITY,
        converged: true,
    })
}

type CoeffRule = Arc<dyn Fn(usize) -> SignedLogTerm + Send + Sync>;

#[derive(Clone)]
enum Factor {
    Log(Arc<dyn Fn(f64) -> SignedLogTerm + Send + Sync>),
    Real(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A generalized power series `f(t) = Σ_{k≥0} c_k t^(μ + kσ)`, `t > 0`.
///
/// Coefficients are produced lazily by a rule. Termwise (diagonal) operators
/// are recorded as multipliers of the exponent and applied when a coefficient
/// is requested. Log-form multipliers are accumulated separately from the base
/// coefficient, so that a multiplier followed by its exact reciprocal in log
/// form (`-α ln e` then `α ln e`) restores the coefficient bit for bit.
#[derive(Clone)]
pub struct PowerSeries {
    /// Exponent of rule index 0 in the current frame.
    origin: f64,
    step: f64,
    /// Rule indices dropped from the front.
    skip: usize,
    max_terms: usize,
    finite: bool,
    rule: CoeffRule,
    /// Multipliers, each with the `origin` in force when it was applied.
    factors: Vec<(f64, Factor)>,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSeries")
            .field("offset", &self.offset())
            .field("step", &self.step)
            .field("max_terms", &self.max_terms)
            .field("finite", &self.finite)
            .field("factors", &self.factors.len())
            .finish()
    }
}

impl PowerSeries {
    pub fn new<F>(offset: f64, step: f64, max_terms: usize, rule: F) -> Result<Self>
    where
        F: Fn(usize) -> SignedLogTerm + Send + Sync + 'static,
    {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::domain(format!("series step must be > 0, got {step}")));
        }
        if !offset.is_finite() {
            return Err(Error::domain(format!("series offset must be finite, got {offset}")));
        }
        if max_terms == 0 {
            return Err(Error::domain("series needs max_terms >= 1"));
        }
        Ok(PowerSeries {
            origin: offset,
            step,
            skip: 0,
            max_terms,
            finite: false,
            rule: Arc::new(rule),
            factors: Vec::new(),
        })
    }

    /// A finite series (polynomial in `t^σ` times `t^μ`); it is always summed
    /// in full.
    pub fn from_coefficients(offset: f64, step: f64, coefficients: &[f64]) -> Result<Self> {
        let terms: Vec<SignedLogTerm> = coefficients.iter().map(|&c| SignedLogTerm::from_value(c)).collect();
        let n = terms.len().max(1);
        let mut s = PowerSeries::new(offset, step, n, move |k| terms.get(k).copied().unwrap_or(SignedLogTerm::ZERO))?;
        s.finite = true;
        Ok(s)
    }

    /// `c · t^β`.
    pub fn monomial(coefficient: f64, exponent: f64) -> Result<Self> {
        Self::from_coefficients(exponent, 1.0, &[coefficient])
    }

    pub fn offset(&self) -> f64 {
        self.origin + self.skip as f64 * self.step
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn is_finite_series(&self) -> bool {
        self.finite
    }

    /// Exponent of term `k`.
    pub fn exponent(&self, k: usize) -> f64 {
        self.origin + (k + self.skip) as f64 * self.step
    }

    /// Coefficient of term `k` in signed-log form.
    pub fn coefficient(&self, k: usize) -> SignedLogTerm {
        match self.coefficient_parts(k) {
            None => SignedLogTerm::ZERO,
            Some((base, log_acc, linear, sign)) => {
                let log = base.log_magnitude + log_acc + linear.abs().ln();
                SignedLogTerm::new(log, sign)
            }
        }
    }

    /// Coefficient of term `k` as a plain number.
    pub fn coefficient_value(&self, k: usize) -> f64 {
        match self.coefficient_parts(k) {
            None => 0.0,
            Some((base, log_acc, linear, sign)) => {
                let v = base.log_magnitude.exp() * log_acc.exp() * linear.abs();
                let v = if v.is_finite() && v != 0.0 {
                    v
                } else {
                    (base.log_magnitude + log_acc + linear.abs().ln()).exp()
                };
                sign.as_f64() * v
            }
        }
    }

    fn coefficient_parts(&self, k: usize) -> Option<(SignedLogTerm, f64, f64, Sign)> {
        if k >= self.max_terms && self.finite {
            return None;
        }
        let j = k + self.skip;
        let base = (self.rule)(j);
        if base.is_zero() {
            return None;
        }
        let mut log_acc = NeumaierSum::new();
        let mut linear = 1.0;
        let mut sign = base.sign;
        for (origin, factor) in &self.factors {
            let e = origin + j as f64 * self.step;
            match factor {
                Factor::Log(m) => {
                    let t = m(e);
                    if t.is_zero() {
                        return None;
                    }
                    log_acc.add(t.log_magnitude);
                    sign = sign * t.sign;
                }
                Factor::Real(m) => {
                    let x = m(e);
                    if x == 0.0 {
                        return None;
                    }
                    linear *= x;
                }
            }
        }
        if linear < 0.0 {
            sign = sign.flip();
        }
        Some((base, log_acc.value(), linear, sign))
    }

    /// Scales every coefficient by the real factor `m(e_k)`.
    ///
    /// Fails if `m` is not finite at an exponent whose coefficient is nonzero.
    pub fn diagonal_transform<M>(&self, multiplier: M) -> Result<PowerSeries>
    where
        M: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        for k in 0..self.max_terms {
            let e = self.exponent(k);
            if !multiplier(e).is_finite() && !self.coefficient(k).is_zero() {
                return Err(Error::NonFiniteMultiplier { exponent: e });
            }
        }
        Ok(self.push_factor(Factor::Real(Arc::new(multiplier))))
    }

    /// Scales every coefficient by the signed-log factor `m(e_k)`.
    pub fn diagonal_transform_log<M>(&self, multiplier: M) -> Result<PowerSeries>
    where
        M: Fn(f64) -> SignedLogTerm + Send + Sync + 'static,
    {
        for k in 0..self.max_terms {
            let e = self.exponent(k);
            if multiplier(e).is_non_finite() && !self.coefficient(k).is_zero() {
                return Err(Error::NonFiniteMultiplier { exponent: e });
            }
        }
        Ok(self.push_factor(Factor::Log(Arc::new(multiplier))))
    }

    fn push_factor(&self, factor: Factor) -> PowerSeries {
        let mut out = self.clone();
        out.factors.push((self.origin, factor));
        out
    }

    /// Multiplies the series by `t^delta`.
    pub fn shift_exponent(&self, delta: f64) -> PowerSeries {
        let mut out = self.clone();
        out.origin += delta;
        out
    }

    /// Drops the first `n` terms and re-indexes from zero.
    pub fn drop_leading(&self, n: usize) -> Result<PowerSeries> {
        if n >= self.max_terms {
            return Err(Error::domain(format!("cannot drop {n} of {} terms", self.max_terms)));
        }
        let mut out = self.clone();
        out.skip += n;
        out.max_terms -= n;
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: f64) -> PowerSeries {
        self.push_factor(Factor::Real(Arc::new(move |_| c)))
    }

    /// Ordinary derivative `d/dt`: `t^e ↦ e·t^(e-1)`.
    pub fn differentiate(&self) -> PowerSeries {
        self.push_factor(Factor::Real(Arc::new(|e| e))).shift_exponent(-1.0)
    }

    /// Coefficients `k` for which the exponent satisfies `pred` and the
    /// coefficient is nonzero. Only scans the leading run of such exponents,
    /// which is finite because `step > 0`.
    pub(crate) fn first_nonzero_exponent_where<P>(&self, pred: P) -> Option<f64>
    where
        P: Fn(f64) -> bool,
    {
        (0..self.max_terms)
            .map(|k| (k, self.exponent(k)))
            .take_while(|&(_, e)| pred(e))
            .find(|&(k, _)| !self.coefficient(k).is_zero())
            .map(|(_, e)| e)
    }

    pub fn evaluate(&self, t: f64, opts: &SeriesOptions) -> Result<SumResult> {
        self.evaluate_scaled(t, opts)?.into_sum_result()
    }

    pub fn evaluate_scaled(&self, t: f64, opts: &SeriesOptions) -> Result<ScaledSum> {
        let opts = SeriesOptions { max_terms: opts.max_terms.min(self.max_terms), ..*opts };
        sum_terms(|k| (self.coefficient(k), self.exponent(k)), t, &opts, self.finite)
    }
}

/// Free-function form of [`PowerSeries::diagonal_transform`].
pub fn diagonal_transform<M>(series: &PowerSeries, multiplier: M) -> Result<PowerSeries>
where
    M: Fn(f64) -> f64 + Send + Sync + 'static,
{
    series.diagonal_transform(multiplier)
}
