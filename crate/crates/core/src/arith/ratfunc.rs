use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{format_terms, zpoly};
use super::{format_rational, Poly, Rational};
use crate::error::{Error, Result};

/// Rational function in `t` over Q in canonical form.
///
/// Numerator and denominator are coprime and the denominator is monic, so
/// two values are equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num / den` to canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        Self::normalized(num, den)
    }

    /// Assumes `num` and `den` coprime; only rescales to a monic denominator.
    pub(crate) fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    /// The variable `t` itself.
    pub fn t() -> Self {
        Self::from_poly(Poly::linear(Rational::zero(), Rational::one()))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        Self::normalized(self.den.clone(), self.num.clone())
    }

    /// Exact value at `t0`; fails if the denominator vanishes there.
    pub fn eval(&self, t0: &Rational) -> Result<Rational> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(Error::PoleAtT(format_rational(t0)));
        }
        Ok(self.num.eval(t0) / d)
    }

    /// Exact value at the Gaussian rational `re + im·i`.
    pub fn eval_complex(&self, re: &Rational, im: &Rational) -> Result<(Rational, Rational)> {
        let (nr, ni) = self.num.eval_complex(re, im);
        let (dr, di) = self.den.eval_complex(re, im);
        let norm = &dr * &dr + &di * &di;
        if norm.is_zero() {
            return Err(Error::PoleAtT(alloc::format!(
                "{}+{}i",
                format_rational(re),
                format_rational(im)
            )));
        }
        let r = (&nr * &dr + &ni * &di) / &norm;
        let i = (&ni * &dr - &nr * &di) / &norm;
        Ok((r, i))
    }

    /// Numerator and denominator scaled to integer coefficients with no
    /// common integer factor and a positive leading denominator coefficient.
    /// Ascending degree.
    pub fn integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        if self.is_zero() {
            return (Vec::new(), alloc::vec![BigInt::one()]);
        }
        let (cn, pn) = self.num.primitive_integer();
        let (cd, pd) = self.den.primitive_integer();
        // num/den = (cn/cd) * pn/pd
        let ratio = cn / cd;
        let a = ratio.numer();
        let b = ratio.denom();
        let num = pn.into_iter().map(|c| c * a).collect();
        let den = pd.into_iter().map(|c| c * b).collect();
        (num, den)
    }

    /// Inverse of [`RatFunc::integer_form`]; accepts any nonzero denominator.
    pub fn from_integer_form(num: &[BigInt], den: &[BigInt]) -> Result<Self> {
        let to_poly = |v: &[BigInt]| Poly::new(v.iter().cloned().map(Rational::from_integer).collect());
        let den = to_poly(den);
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::new(to_poly(num), den))
    }

    /// Text form in `var`: `p/q` for constants, otherwise
    /// `(166t^2+166t+31)/(129024t^2+129024t+24192)` with integer coefficients.
    pub fn format_in(&self, var: &str) -> String {
        if let Some(c) = self.as_constant() {
            return format_rational(&c);
        }
        let (num, den) = self.integer_form();
        let n = format_terms(num.iter().enumerate().rev(), var);
        if den.len() == 1 {
            if den[0].is_one() {
                return n;
            }
            return alloc::format!("({n})/{}", den[0]);
        }
        let d = format_terms(den.iter().enumerate().rev(), var);
        if num.len() == 1 {
            return alloc::format!("{n}/({d})");
        }
        alloc::format!("({n})/({d})")
    }

    /// Rational roots of the denominator (via the rational root theorem on
    /// its integer form).
    pub fn denominator_rational_roots(&self) -> Vec<Rational> {
        let (_, ints) = self.den.primitive_integer();
        rational_roots(&ints)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let other = &n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out
}

fn rational_roots(p: &[BigInt]) -> Vec<Rational> {
    let mut p = zpoly::trim(p.to_vec());
    let mut roots = Vec::new();
    // strip factors of t
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if p.len() <= 1 {
        return roots;
    }
    let poly = Poly::new(p.iter().cloned().map(Rational::from_integer).collect());
    let lead = p.last().unwrap().clone();
    for a in divisors(&p[0]) {
        for b in divisors(&lead) {
            if a.gcd(&b) != BigInt::one() {
                continue;
            }
            for cand in [Rational::new(a.clone(), b.clone()), Rational::new(-a.clone(), b.clone())] {
                if poly.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return RatFunc::new(num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            // coprime denominators: gcd(num, den) = 1 already
            return RatFunc::normalized(num, den);
        }
        let b1 = self.den.div_rem(&g).0;
        let d1 = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = &b1 * &rhs.den;
        let h = num.gcd(&g);
        if h.is_one() {
            RatFunc::normalized(num, den)
        } else {
            RatFunc::normalized(num.div_rem(&h).0, den.div_rem(&h).0)
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: Poly::one() };
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_rem(&g1).0, rhs.den.div_rem(&g1).0)
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_rem(&g2).0, self.den.div_rem(&g2).0)
        };
        RatFunc::normalized(&a * &c, &b * &d)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}
