//! Thin wrappers around the C-library log-gamma.

use crate::series::{Sign, SignedLogTerm};

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
///
/// At the poles (nonpositive integers) the magnitude is `+inf`.
pub fn ln_gamma(x: f64) -> (f64, Sign) {
    if is_nonpositive_integer(x) {
        return (f64::INFINITY, Sign::Positive);
    }
    let (value, sign) = libm::lgamma_r(x);
    let sign = if sign < 0 { Sign::Negative } else { Sign::Positive };
    (value, sign)
}

/// `Γ(x)` as a signed-log term.
pub fn gamma_term(x: f64) -> SignedLogTerm {
    let (log, sign) = ln_gamma(x);
    SignedLogTerm::new(log, sign)
}

/// `1/Γ(x)` as a signed-log term; zero at the poles of `Γ`.
pub fn reciprocal_gamma_term(x: f64) -> SignedLogTerm {
    if is_nonpositive_integer(x) {
        return SignedLogTerm::ZERO;
    }
    let (log, sign) = ln_gamma(x);
    SignedLogTerm::new(-log, sign)
}

pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

pub(crate) fn is_integer(x: f64) -> bool {
    x.is_finite() && x == x.round()
}
