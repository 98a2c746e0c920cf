use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial in `t` with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `t^i`. The highest stored coefficient is
/// nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `a + b t`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// The constant polynomial's value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Evaluates at the Gaussian rational `re + im·i`, returning `(re, im)`.
    pub fn eval_complex(&self, re: &Rational, im: &Rational) -> (Rational, Rational) {
        let mut acc = (Rational::zero(), Rational::zero());
        for c in self.coeffs.iter().rev() {
            let r = &acc.0 * re - &acc.1 * im + c;
            let i = &acc.0 * im + &acc.1 * re;
            acc = (r, i);
        }
        acc
    }

    /// Euclidean division over Q. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Poly::one();
        }
        let (_, a) = self.primitive_integer();
        let (_, b) = other.primitive_integer();
        let g = zpoly::gcd(a, b);
        Poly::new(g.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Splits `self = content · prim` where `prim` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = zpoly::content(&ints);
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        for c in &mut ints {
            *c = &*c / &g;
        }
        (Rational::new(g, lcm), ints)
    }

    /// Exact division by the linear factor `(t - root)`, if it divides.
    pub fn divide_by_root(&self, root: &Rational) -> Option<Poly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(Poly::zero());
        }
        let mut quot = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return v.is_zero().then(|| Poly::new(quot));
            }
            quot[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Text form in the variable `var`, descending degree, e.g. `166t^2+166t+31`.
    pub fn format_in(&self, var: &str) -> String {
        format_terms(self.coeffs.iter().enumerate().rev(), var)
    }
}

pub(crate) fn format_terms<'a, C>(terms: impl Iterator<Item = (usize, &'a C)>, var: &str) -> String
where
    C: fmt::Display + Zero + One + Signed + 'a,
{
    let mut out = String::new();
    for (deg, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let abs = c.abs();
        let unit = abs.is_one();
        if !unit || deg == 0 {
            out.push_str(&alloc::format!("{abs}"));
        }
        match deg {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&alloc::format!("{var}^{deg}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Integer polynomial helpers: ascending `Vec<BigInt>`, no trailing zeros.
pub(crate) mod zpoly {
    use super::*;

    pub fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn content(p: &[BigInt]) -> BigInt {
        let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    pub fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
        let mut g = content(&p);
        if p.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        p.into_iter().map(|c| c / &g).collect()
    }

    /// Pseudo-remainder of `a` by `b` (`b` nonzero).
    pub fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let db = b.len() - 1;
        let lb = &b[db];
        let mut r = a.to_vec();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            let shift = dr - db;
            for (j, bc) in b.iter().enumerate() {
                r[shift + j] -= &lr * bc;
            }
            r = trim(r);
        }
        r
    }

    /// Primitive-part Euclidean algorithm; result is primitive with positive leading coefficient.
    pub fn gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
        let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        while !b.is_empty() {
            let r = prem(&a, &b);
            a = b;
            b = if r.is_empty() { r } else { primitive(r) };
        }
        primitive(a)
    }
}
