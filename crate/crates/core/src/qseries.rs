//! Direct nested summation of the modified q-MZVs and the Schlesinger-Zudilin
//! model, in arbitrary-precision binary floating point, for cross-checks of
//! the exact Laurent data.
//!
//! ```text
//! modified(k; q, t) = Σ_{m_1 > ... > m_n > 0} q^{(|k_1| m_1 + ... + |k_n| m_n) t} / Π (1 - q^{m_j})^{k_j}
//! sz(k; q)          = Σ_{m_1 > ... > m_n > 0} q^{k_1 m_1 + ... + k_n m_n} / Π [m_j]_q^{k_j}
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{Float, Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::characters::{CharacterTable, FixedT, NormalizationMode, Signature};
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// A floating-point approximation carried at the working precision.
#[derive(Clone, Debug)]
pub struct Approx(BigFloat);

impl Approx {
    /// Nearest `f64`, for reporting.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        self.sci(20).parse().unwrap_or(f64::NAN)
    }

    /// Scientific decimal text with `digits` significant digits.
    pub fn sci(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return String::from("0");
        }
        if self.0.is_inf_pos() {
            return String::from("inf");
        }
        if self.0.is_inf_neg() {
            return String::from("-inf");
        }
        let mut cc = consts();
        let full = self.0.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| String::from("nan"));
        round_scientific(&full, digits.max(1))
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_inf() || self.0.is_nan())
    }

    pub(crate) fn raw(&self) -> &BigFloat {
        &self.0
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sci(17))
    }
}

/// Rounds astro-float's `d.ddd...e±x` text to `digits` significant digits.
fn round_scientific(s: &str, digits: usize) -> String {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", s),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let mut all: Vec<u8> = [int_part, frac_part].concat().bytes().map(|b| b - b'0').collect();
    // position of the decimal point after the first digit
    let mut exp = exp + int_part.len() as i64 - 1;
    while all.len() > 1 && all[0] == 0 {
        all.remove(0);
        exp -= 1;
    }
    let round_up = all.get(digits).is_some_and(|&d| d >= 5);
    all.truncate(digits);
    all.resize(digits, 0);
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                all.insert(0, 1);
                all.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if all[i] == 9 {
                all[i] = 0;
            } else {
                all[i] += 1;
                break;
            }
        }
    }
    let text: String = all.iter().map(|d| char::from(b'0' + d)).collect();
    let (head, tail) = text.split_at(1);
    if tail.is_empty() {
        alloc::format!("{sign}{head}e{exp}")
    } else {
        alloc::format!("{sign}{head}.{tail}e{exp}")
    }
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constants cache")
}

/// Arithmetic context: precision in bits and the constants cache.
struct Ctx {
    p: usize,
    cc: Consts,
}

impl Ctx {
    fn new(digits: usize) -> Self {
        let bits = (digits as f64 * core::f64::consts::LOG2_10).ceil() as usize + 64;
        Ctx { p: bits.div_ceil(64) * 64, cc: consts() }
    }

    fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        n.div(&d, self.p, RM)
    }

    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    fn cexp(&mut self, a: &Cx) -> Cx {
        let r = self.exp(&a.re);
        if a.im.is_zero() {
            return Cx { re: r, im: self.int(0) };
        }
        let c = a.im.cos(self.p, RM, &mut self.cc);
        let s = a.im.sin(self.p, RM, &mut self.cc);
        Cx { re: self.mul(&r, &c), im: self.mul(&r, &s) }
    }

    fn cmul(&self, a: &Cx, b: &Cx) -> Cx {
        if a.im.is_zero() && b.im.is_zero() {
            return Cx { re: self.mul(&a.re, &b.re), im: self.int(0) };
        }
        Cx {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    fn cadd(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: self.add(&a.re, &b.re), im: self.add(&a.im, &b.im) }
    }

    fn cscale(&self, a: &Cx, r: &BigFloat) -> Cx {
        Cx { re: self.mul(&a.re, r), im: self.mul(&a.im, r) }
    }

    fn zero(&self) -> Cx {
        Cx { re: self.int(0), im: self.int(0) }
    }
}

#[derive(Clone, Debug)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

fn less(a: &BigFloat, b: &BigFloat) -> bool {
    a.cmp(b).is_some_and(|c| c < 0)
}

/// Parameters of a numeric evaluation: `q = e^{log_q}` with `0 < q < 1`,
/// `t` with positive real part, cutoff `M` on `m_1`, working precision in
/// decimal digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEvalParams {
    log_q: QSpec,
    pub t_re: Rational,
    pub t_im: Rational,
    pub cutoff: u64,
    pub digits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum QSpec {
    Q(Rational),
    LogQ(Rational),
}

impl QEvalParams {
    /// `q` given directly, `0 < q < 1`.
    pub fn new(q: Rational, t_re: Rational, t_im: Rational, cutoff: u64, digits: usize) -> Result<Self> {
        if !q.is_positive() || q >= Rational::from_integer(1.into()) {
            return Err(Error::InvalidParameter(alloc::format!("q = {} is not in (0, 1)", format_rational(&q))));
        }
        Self::checked(QSpec::Q(q), t_re, t_im, cutoff, digits)
    }

    /// `q = e^z` with `z < 0`.
    pub fn from_log_q(z: Rational, t_re: Rational, t_im: Rational, cutoff: u64, digits: usize) -> Result<Self> {
        if !z.is_negative() {
            return Err(Error::InvalidParameter(alloc::format!("z = {} is not negative", format_rational(&z))));
        }
        Self::checked(QSpec::LogQ(z), t_re, t_im, cutoff, digits)
    }

    fn checked(q: QSpec, t_re: Rational, t_im: Rational, cutoff: u64, digits: usize) -> Result<Self> {
        if !t_re.is_positive() {
            return Err(Error::InvalidParameter("real part of t must be positive".into()));
        }
        if cutoff == 0 {
            return Err(Error::InvalidParameter("cutoff must be at least 1".into()));
        }
        Ok(QEvalParams { log_q: q, t_re, t_im, cutoff, digits: digits.max(15) })
    }

    pub fn with_cutoff(&self, cutoff: u64) -> Self {
        Self { cutoff: cutoff.max(1), ..self.clone() }
    }

    fn log_q(&self, ctx: &mut Ctx) -> BigFloat {
        match &self.log_q {
            QSpec::Q(q) => {
                let q = ctx.rational(q);
                ctx.ln(&q)
            }
            QSpec::LogQ(z) => ctx.rational(z),
        }
    }
}

/// A numeric value, possibly complex, with a bound on the neglected tail.
#[derive(Clone, Debug)]
pub struct QValue {
    pub re: Approx,
    pub im: Approx,
    /// `|exact - partial sum| <= tail_bound`; infinite when no bound is available.
    pub tail_bound: Approx,
}

/// `Σ_{m_1 > ... > m_n > 0} Π_j f_j(m_j)` over `m_1 <= M`, where
/// `factors[j][i] = f_j(i + 1)`, in `O(nM)` via prefix sums.
fn nested_sum(ctx: &Ctx, factors: &[Vec<Cx>]) -> Cx {
    let n = factors.len();
    // tuples[i]: sum over (m_j = i+1, m_{j+1}, ..., m_n)
    let mut tuples = factors[n - 1].clone();
    for f in factors[..n - 1].iter().rev() {
        let mut prefix = ctx.zero();
        let mut next = Vec::with_capacity(f.len());
        for (fi, ti) in f.iter().zip(&tuples) {
            next.push(ctx.cmul(fi, &prefix));
            prefix = ctx.cadd(&prefix, ti);
        }
        tuples = next;
    }
    tuples.iter().fold(ctx.zero(), |acc, x| ctx.cadd(&acc, x))
}

/// Sum over `m_1 <= M` of the modified q-MZV, with a rigorous tail bound.
///
/// The tail uses `|q^{(Σ|k_j|m_j) t}| <= q^{|k_1| m_1 Re t}`, at most
/// `m_1^{n-1}` inner tuples, and `C = max(1, (1-q)^{-Σ max(k_j, 0)})`.
pub fn qmzv_modified(ks: &[i64], p: &QEvalParams) -> Result<QValue> {
    if ks.is_empty() {
        return Err(Error::EmptyWord);
    }
    if ks[0] == 0 {
        return Err(Error::ZeroLeadingIndex);
    }
    let mut ctx = Ctx::new(p.digits);
    let lq = p.log_q(&mut ctx);
    let t_re = ctx.rational(&p.t_re);
    let t_im = ctx.rational(&p.t_im);
    let m_max = p.cutoff as usize;
    let one = ctx.int(1);
    let q = ctx.exp(&lq);
    let mut factors = Vec::with_capacity(ks.len());
    for &k in ks {
        // x = q^{|k| t} = exp(|k| t log q)
        let scale = ctx.mul(&ctx.int(k.abs()), &lq);
        let x = ctx.cexp(&Cx { re: ctx.mul(&scale, &t_re), im: ctx.mul(&scale, &t_im) });
        let mut xm = x.clone();
        let mut qm = q.clone();
        let mut f = Vec::with_capacity(m_max);
        for _ in 0..m_max {
            let base = ctx.sub(&one, &qm);
            let pow = base.powi(k.unsigned_abs() as usize, ctx.p, RM);
            let v = if k > 0 { ctx.cscale(&xm, &ctx.div(&one, &pow)) } else { ctx.cscale(&xm, &pow) };
            f.push(v);
            xm = ctx.cmul(&xm, &x);
            qm = ctx.mul(&qm, &q);
        }
        factors.push(f);
    }
    let sum = nested_sum(&ctx, &factors);
    let positive: i64 = ks.iter().map(|&k| k.max(0)).sum();
    let c = {
        let base = ctx.sub(&one, &q);
        let v = ctx.div(&one, &base.powi(positive as usize, ctx.p, RM));
        if less(&v, &one) { one.clone() } else { v }
    };
    let x1 = {
        let e = ctx.mul(&ctx.mul(&ctx.int(ks[0].abs()), &lq), &t_re);
        ctx.exp(&e)
    };
    let tail = tail_bound(&mut ctx, &c, &x1, ks.len(), p.cutoff);
    Ok(QValue { re: Approx(sum.re), im: Approx(sum.im), tail_bound: Approx(tail) })
}

/// `C Σ_{m > M} m^{n-1} x^m`, bounded by a geometric series with ratio
/// `((M+2)/(M+1))^{n-1} x`.
fn tail_bound(ctx: &mut Ctx, c: &BigFloat, x: &BigFloat, n: usize, cutoff: u64) -> BigFloat {
    let one = ctx.int(1);
    let m1 = ctx.int(cutoff as i64 + 1);
    let m2 = ctx.int(cutoff as i64 + 2);
    let growth = ctx.div(&m2, &m1).powi(n - 1, ctx.p, RM);
    let rho = ctx.mul(&growth, x);
    if !less(&rho, &one) {
        return astro_float::INF_POS;
    }
    let log_x = ctx.ln(x);
    let x_m1 = ctx.exp(&ctx.mul(&m1, &log_x));
    let lead = ctx.mul(&m1.powi(n - 1, ctx.p, RM), &x_m1);
    let geom = ctx.div(&lead, &ctx.sub(&one, &rho));
    // round the bound up by a relative margin far above the working precision
    let margin = ctx.add(&one, &ctx.div(&one, &ctx.int(1 << 40)));
    ctx.mul(&ctx.mul(c, &geom), &margin)
}

/// Partial sum over `m_1 <= M` of the Schlesinger-Zudilin q-MZV for positive
/// `ks`, computing `[m]_q = 1 + q + ... + q^{m-1}` directly.
pub fn qmzv_sz(ks: &[u32], q: &Rational, cutoff: u64, digits: usize) -> Result<Approx> {
    if ks.is_empty() {
        return Err(Error::EmptyWord);
    }
    if ks.contains(&0) {
        return Err(Error::InvalidSignature("entries must be at least 1".into()));
    }
    if !q.is_positive() || *q >= Rational::from_integer(1.into()) {
        return Err(Error::InvalidParameter(alloc::format!("q = {} is not in (0, 1)", format_rational(q))));
    }
    let mut ctx = Ctx::new(digits.max(15));
    let qf = ctx.rational(q);
    let one = ctx.int(1);
    let m_max = cutoff.max(1) as usize;
    let mut factors = Vec::with_capacity(ks.len());
    for &k in ks {
        let mut bracket = ctx.int(0);
        let mut qm = one.clone(); // q^{m-1}
        let mut f = Vec::with_capacity(m_max);
        for _ in 0..m_max {
            bracket = ctx.add(&bracket, &qm);
            qm = ctx.mul(&qm, &qf);
            // q^{k m} / [m]^k with qm = q^m
            let ratio = ctx.div(&qm, &bracket);
            let v = ratio.powi(k as usize, ctx.p, RM);
            f.push(Cx { re: v, im: ctx.int(0) });
        }
        factors.push(f);
    }
    Ok(Approx(nested_sum(&ctx, &factors).re))
}

/// Symbolic ψ against the q-series it expands, at one point.
#[derive(Clone, Debug)]
pub struct Consistency {
    pub symbolic_value: Approx,
    pub numeric_value: Approx,
    pub relative_error: Approx,
    /// Cutoff used for the numeric side.
    pub cutoff: u64,
    /// `d - lo`, where `d` is the first degree above `N` with a nonzero
    /// coefficient and `lo` the valuation: the expected log-log slope of
    /// the relative error in `|z|`.
    pub predicted_slope: i64,
}

/// Compares ψ truncated at degree `order`, evaluated at `(t, z)`, with
/// `(-1)^{|k|} z^{-|k|}` times the modified q-MZV at `q = e^z`.
pub fn laurent_consistency(sig: &Signature, t: &Rational, z: &Rational, order: i64, digits: usize) -> Result<Consistency> {
    let weight = sig.weight() as i64;
    if order < weight + sig.depth() as i64 {
        return Err(Error::InvalidParameter("order must be at least weight + depth".into()));
    }
    if !t.is_positive() {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let digits = digits.max(30);
    let mut ctx = Ctx::new(digits);
    let zf = ctx.rational(z);

    // symbolic side, with a longer expansion to locate the first omitted term
    let horizon = order + 12;
    let mut table = CharacterTable::new(FixedT(t.clone()), NormalizationMode::LogQ, horizon);
    let series = table.psi(&sig.to_word())?;
    let mut sym = ctx.int(0);
    let mut zpow = ctx.int(1);
    let lo = series.lo();
    for _ in lo..0 {
        zpow = ctx.div(&zpow, &zf);
    }
    let mut next_degree = None;
    for d in lo..=horizon {
        let c = series.coeff(d)?;
        if d <= order {
            if !c.is_zero() {
                let cf = ctx.rational(&c);
                sym = ctx.add(&sym, &ctx.mul(&cf, &zpow));
            }
        } else if next_degree.is_none() && !c.is_zero() {
            next_degree = Some(d);
        }
        zpow = ctx.mul(&zpow, &zf);
    }
    let valuation = series.valuation().unwrap_or(lo);

    // numeric side: pick the cutoff so the tail is far below the target
    let neg: Vec<i64> = sig.ks().iter().map(|&k| -(k as i64)).collect();
    let zero = Rational::zero();
    let x_rate = {
        // |log x| = |k_1| t |z|, in f64 only to size the cutoff
        let zf64 = Approx(zf.clone()).to_f64().abs();
        let tf64 = Approx(ctx.rational(t)).to_f64();
        sig.ks()[0] as f64 * tf64 * zf64
    };
    let needed = (digits as f64 + 10.0) * core::f64::consts::LN_10;
    let mut cutoff = ((needed / x_rate).ceil() as u64).max(16);
    let mut value = qmzv_modified(&neg, &QEvalParams::from_log_q(z.clone(), t.clone(), zero.clone(), cutoff, digits)?)?;
    let target = ctx.div(&ctx.int(1), &BigFloat::from_i64(10, ctx.p).powi(digits, ctx.p, RM));
    for _ in 0..8 {
        let rel = ctx.div(value.tail_bound.raw(), &value.re.raw().abs());
        if less(&rel, &target) {
            break;
        }
        cutoff *= 2;
        value = qmzv_modified(&neg, &QEvalParams::from_log_q(z.clone(), t.clone(), zero.clone(), cutoff, digits)?)?;
    }
    let mut num = value.re.0.clone();
    // (-1)^{|k|} z^{-|k|}
    for _ in 0..weight {
        num = ctx.div(&num, &zf);
    }
    if weight % 2 == 1 {
        num = num.neg();
    }
    let diff = ctx.sub(&sym, &num).abs();
    let rel = ctx.div(&diff, &num.abs());
    let predicted_slope = next_degree.map_or(i64::MAX, |d| d - valuation);
    Ok(Consistency {
        symbolic_value: Approx(sym),
        numeric_value: Approx(num),
        relative_error: Approx(rel),
        cutoff,
        predicted_slope,
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (Float::ln(x), Float::ln(y));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Approx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl Approx {
    pub fn abs_diff(&self, other: &Approx) -> Approx {
        let p = self.0.precision().unwrap_or(128).max(other.0.precision().unwrap_or(128));
        Approx(self.0.sub(&other.0, p, RM).abs())
    }

    pub fn add(&self, other: &Approx) -> Approx {
        let p = self.0.precision().unwrap_or(128).max(other.0.precision().unwrap_or(128));
        Approx(self.0.add(&other.0, p, RM))
    }

    pub fn mul(&self, other: &Approx) -> Approx {
        let p = self.0.precision().unwrap_or(128).max(other.0.precision().unwrap_or(128));
        Approx(self.0.mul(&other.0, p, RM))
    }

    pub fn from_rational(r: &Rational, digits: usize) -> Approx {
        Approx(Ctx::new(digits).rational(r))
    }
}
