//! Exact scalar and series arithmetic.
//!
//! Scalars are arbitrary-precision rationals. All dependence on the
//! deformation parameter `t` lives in [`RatFunc`], and the regulator `z`
//! appears only as the variable of [`LaurentSeries`].

mod bernoulli;
mod coeff;
mod laurent;
mod poly;
mod ratfunc;

pub use bernoulli::{bernoulli, BernoulliTable};
pub use coeff::Coeff;
pub use laurent::{exp_ratio_power, LaurentSeries};
pub use poly::Poly;
pub use ratfunc::RatFunc;

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(alloc::format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits: String = [whole.trim_start_matches(['-', '+']), frac].concat();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// `p/q` text form, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal text of `r` rounded (half away from zero) to `digits` significant digits.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return String::from("0");
    }
    let ten = BigInt::from(10u32);
    let mag = r.abs();
    // e = floor(log10 |r|)
    let mut e: i64 = mag.numer().to_string().len() as i64 - mag.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > mag {
        e -= 1;
    }
    while pow10(e + 1) <= mag {
        e += 1;
    }
    let mut scale = digits as i64 - 1 - e;
    let round = |scale: i64| -> BigInt {
        let x = &mag * pow10(scale);
        let twice = (x.numer() * 2u32 + x.denom()) / (x.denom() * 2u32);
        twice
    };
    let mut n = round(scale);
    if n.to_string().len() > digits {
        scale -= 1;
        n = round(scale);
    }
    let sign = if r.is_negative() { "-" } else { "" };
    if scale <= 0 {
        let n = n * num_traits::pow(ten, (-scale) as usize);
        return alloc::format!("{sign}{n}");
    }
    let text = n.to_string();
    let scale = scale as usize;
    let padded = if text.len() <= scale { alloc::format!("{}{text}", "0".repeat(scale + 1 - text.len())) } else { text };
    let (whole, frac) = padded.split_at(padded.len() - scale);
    alloc::format!("{sign}{whole}.{frac}")
}

/// Rational within `10^-digits` of `sqrt(r)` for `r >= 0` (rounded down).
pub fn sqrt_approx(r: &Rational, digits: usize) -> Result<Rational> {
    if r.is_negative() {
        return Err(Error::InvalidParameter("square root of a negative number".into()));
    }
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let x = r * Rational::from_integer(&scale * &scale);
    let floor = x.numer() / x.denom();
    Ok(Rational::new(floor.sqrt(), scale))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
