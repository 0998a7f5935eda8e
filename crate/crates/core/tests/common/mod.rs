//! Extended-precision reference values (MPFR, 256-bit mantissa, about 77
//! decimal digits). Series are summed directly term by term; nothing here
//! shares code with the library.

#![allow(dead_code)]

use rug::ops::Pow;
use rug::Float;

pub const PREC: u32 = 256;

pub fn fl(x: f64) -> Float {
    Float::with_val(PREC, x)
}

fn is_pole(x: &Float) -> bool {
    x.is_integer() && *x <= 0
}

/// `1 / Γ(x)^p`; zero at poles. Negative `Γ(x)` needs an integer `p`.
pub fn recip_gamma_pow(x: &Float, p: f64) -> Float {
    if is_pole(x) {
        return fl(0.0);
    }
    let (ln_abs, sign) = x.clone().ln_abs_gamma();
    let mag = (-(ln_abs * fl(p))).exp();
    if sign == std::cmp::Ordering::Less {
        assert!(p.fract() == 0.0, "negative Gamma with non-integer power");
        if (p as i64) % 2 != 0 {
            return -mag;
        }
    }
    mag
}

/// `Γ(x)^p` for `Γ(x) > 0`.
pub fn gamma_pow(x: &Float, p: f64) -> Float {
    let (ln_abs, sign) = x.clone().ln_abs_gamma();
    assert_eq!(sign, std::cmp::Ordering::Greater);
    (ln_abs * fl(p)).exp()
}

/// Sums `term(k)` until five successive terms are below 1e-50 of the running
/// sum, past index `min_terms`.
pub fn sum_series<F: FnMut(u32) -> Float>(mut term: F, min_terms: u32) -> Float {
    let mut sum = fl(0.0);
    let mut small = 0;
    for k in 0..50_000u32 {
        let t = term(k);
        sum += &t;
        let tiny = t.is_zero() || Float::with_val(PREC, t.abs_ref()) < Float::with_val(PREC, sum.abs_ref()) * fl(1e-50);
        small = if tiny { small + 1 } else { 0 };
        if k >= min_terms && small >= 5 {
            return sum;
        }
    }
    panic!("oracle series did not converge");
}

/// `z^k` with `0^0 = 1`.
pub fn powi(z: f64, k: u32) -> Float {
    fl(z).pow(k)
}

/// `Σ z^k / Γ(νk+γ)^α`.
pub fn alpha_ml(alpha: f64, nu: f64, gamma: f64, z: f64) -> Float {
    sum_series(|k| powi(z, k) * recip_gamma_pow(&(fl(nu) * k + fl(gamma)), alpha), 20)
}

/// `Σ Γ(ν+k)^r t^k / k!`.
pub fn gcom(r: f64, nu: f64, t: f64) -> Float {
    sum_series(
        |k| powi(t, k) * gamma_pow(&(fl(nu) + k), r) * recip_gamma_pow(&fl(k as f64 + 1.0), 1.0),
        20,
    )
}

/// `Σ t^k / (k! Γ(ak+b))`.
pub fn wright(a: f64, b: f64, t: f64) -> Float {
    sum_series(
        |k| powi(t, k) * recip_gamma_pow(&fl(k as f64 + 1.0), 1.0) * recip_gamma_pow(&(fl(a) * k + fl(b)), 1.0),
        20,
    )
}

/// `|x/y - 1|`, or `|x|` when `y` is zero, in double precision.
pub fn rel_err(x: f64, y: &Float) -> f64 {
    if y.is_zero() {
        return x.abs();
    }
    ((fl(x) - y) / y).abs().to_f64()
}
