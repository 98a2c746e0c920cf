//! The regularised character ψ on negative words, its explicit coefficients,
//! and the Birkhoff factorisation by minimal subtraction.
//!
//! For a word `y_{-k_1}...y_{-k_n}`,
//!
//! ```text
//! ψ(z) = Σ_{m ≥ 0} Π_j (B_{m_j}/m_j!) · C^k_m(t) · z^{|m| - |k| - n}
//! C^k_m(t) = Σ_{l_j ∈ [0, k_j]} Π_j binom(k_j, l_j) (-1)^{l_j+k_j+1} (L_j + K_j t)^{m_j - 1}
//! ```
//!
//! where `L_j = l_1 + ... + l_j` and `K_j = k_1 + ... + k_j`. Only `m_j`
//! that are 0, 1 or even contribute because `B_m = 0` for odd `m ≥ 3`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, BernoulliTable, Coeff, LaurentSeries, Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::quasi_shuffle::{Letter, Word, WordSum};

/// Guard added to the truncation order beyond `weight + depth`.
pub const DEFAULT_GUARD: i64 = 2;

/// Arguments `(k_1, ..., k_n)`, all positive, standing for `y_{-k_1}...y_{-k_n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(Vec<u32>);

impl Signature {
    pub fn new(ks: Vec<u32>) -> Result<Self> {
        if ks.is_empty() {
            return Err(Error::InvalidSignature("signature must be nonempty".into()));
        }
        if ks.contains(&0) {
            return Err(Error::InvalidSignature("entries must be at least 1".into()));
        }
        Ok(Signature(ks))
    }

    /// From the negative arguments `(-k_1, ..., -k_n)` as written in `ζ(-1,-3)`.
    pub fn from_arguments(args: &[i64]) -> Result<Self> {
        let ks = args
            .iter()
            .map(|&a| {
                if a < 0 && a >= -(u32::MAX as i64) {
                    Ok((-a) as u32)
                } else {
                    Err(Error::InvalidSignature(alloc::format!("argument {a} is not a negative integer")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ks)
    }

    pub fn from_word(w: &Word) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidSignature("empty word has no signature".into()));
        }
        if !w.is_negative() {
            return Err(Error::UnsupportedWord(alloc::format!("{w}")));
        }
        Self::new(w.letters().iter().map(|l| l.index().unsigned_abs()).collect())
    }

    pub fn ks(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn to_word(&self) -> Word {
        Word::new(self.0.iter().map(|&k| Letter::new(-(k as i32)).expect("k >= 1")).collect())
    }

    /// The negative arguments `(-k_1, ..., -k_n)`.
    pub fn arguments(&self) -> Vec<i64> {
        self.0.iter().map(|&k| -(k as i64)).collect()
    }

    /// Truncation order `weight + depth + guard` used for the top-level word.
    pub fn required_order(&self, guard: i64) -> i64 {
        required_order(&self.to_word(), guard)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "-{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({self})")
    }
}

pub fn required_order(w: &Word, guard: i64) -> i64 {
    w.weight() as i64 + w.len() as i64 + guard
}

/// How the q-series is turned into a Laurent series in `z` (with `q = e^z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalizationMode {
    /// Multiply by `(-log q)^{-|k|} = (-z)^{-|k|}`.
    LogQ,
    /// Multiply by `(1-q)^{-|k|}`; breaks agreement with the meromorphic continuation.
    OneMinusQ,
}

impl NormalizationMode {
    pub fn tag(self) -> &'static str {
        match self {
            NormalizationMode::LogQ => "log",
            NormalizationMode::OneMinusQ => "1mq",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "log" => Ok(NormalizationMode::LogQ),
            "1mq" => Ok(NormalizationMode::OneMinusQ),
            other => Err(Error::Parse(alloc::format!("unknown normalization mode {other:?}"))),
        }
    }
}

/// Where the deformation parameter `t` lives: symbolic, or substituted by a rational.
pub trait Deformation {
    type Coeff: Coeff;

    /// Coefficients of the log-normalised ψ for degrees `-(|k|+n) ..= hi`.
    fn psi_coefficients(&self, ks: &[u32], hi: i64, bern: &mut BernoulliTable) -> Result<Vec<Self::Coeff>>;

    /// Short label: `sym`, or the value of `t`.
    fn label(&self) -> String;
}

/// `t` kept as an indeterminate; coefficients are rational functions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SymbolicT;

/// `t` fixed to a rational value; coefficients are rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedT(pub Rational);

/// Multi-indices `m` with `Σ m_j ≤ max_sum` and every `m_j ∈ {0, 1} ∪ 2N`.
fn bernoulli_supported_indices(n: usize, max_sum: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if max_sum < 0 {
        return out;
    }
    let mut cur = vec![0u32; n];
    fn rec(j: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == cur.len() {
            out.push(cur.clone());
            return;
        }
        let mut m = 0i64;
        while m <= left {
            cur[j] = m as u32;
            rec(j + 1, left - m, cur, out);
            m = if m == 0 { 1 } else if m == 1 { 2 } else { m + 2 };
        }
    }
    rec(0, max_sum, &mut cur, &mut out);
    out
}

/// One summand of the `l`-sum: signed binomial product and the affine
/// forms `(L_j, K_j)` standing for `L_j + K_j t`.
struct LTerm {
    coef: BigInt,
    affine: Vec<(i64, i64)>,
}

fn l_terms(ks: &[u32]) -> Vec<LTerm> {
    let mut out = vec![LTerm { coef: BigInt::one(), affine: Vec::new() }];
    let mut kcum = 0i64;
    for &k in ks {
        kcum += k as i64;
        let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
        for term in &out {
            let lprev = term.affine.last().map_or(0, |a| a.0);
            for l in 0..=k {
                let mut coef = &term.coef * binomial(k, l);
                if (l + k + 1) % 2 == 1 {
                    coef = -coef;
                }
                let mut affine = term.affine.clone();
                affine.push((lprev + l as i64, kcum));
                next.push(LTerm { coef, affine });
            }
        }
        out = next;
    }
    out
}

fn bernoulli_weight(ms: &[u32], bern: &mut BernoulliTable) -> Rational {
    let mut w = Rational::one();
    for &m in ms {
        let b = bern.get(m as usize);
        if b.is_zero() {
            return Rational::zero();
        }
        w *= b / Rational::from_integer(factorial(m));
    }
    w
}

impl Deformation for FixedT {
    type Coeff = Rational;

    fn psi_coefficients(&self, ks: &[u32], hi: i64, bern: &mut BernoulliTable) -> Result<Vec<Rational>> {
        let n = ks.len() as i64;
        let weight: i64 = ks.iter().map(|&k| k as i64).sum();
        let lo = -(weight + n);
        let mut out = vec![Rational::zero(); (hi - lo + 1).max(0) as usize];
        let terms = l_terms(ks);
        // values a_j = L_j + K_j t0 for every l-term
        let values: Vec<Vec<Rational>> = terms
            .iter()
            .map(|term| {
                term.affine
                    .iter()
                    .map(|&(l, k)| Rational::from_integer(l.into()) + Rational::from_integer(k.into()) * &self.0)
                    .collect()
            })
            .collect();
        for ms in bernoulli_supported_indices(ks.len(), hi - lo) {
            let w = bernoulli_weight(&ms, bern);
            if w.is_zero() {
                continue;
            }
            let mut c = Rational::zero();
            for (term, vals) in terms.iter().zip(&values) {
                let mut prod = Rational::from_integer(term.coef.clone());
                for (a, &m) in vals.iter().zip(&ms) {
                    if m == 0 {
                        if a.is_zero() {
                            return Err(Error::PoleAtT(crate::arith::format_rational(&self.0)));
                        }
                        prod /= a;
                    } else if m > 1 {
                        prod *= num_traits::pow(a.clone(), (m - 1) as usize);
                    }
                }
                c += prod;
            }
            let d: i64 = ms.iter().map(|&m| m as i64).sum::<i64>();
            out[d as usize] += w * c;
        }
        Ok(out)
    }

    fn label(&self) -> String {
        crate::arith::format_rational(&self.0)
    }
}

/// Integer polynomial `(L + K t)^e`, ascending.
fn affine_power(l: i64, k: i64, e: u32) -> Vec<BigInt> {
    let lb = BigInt::from(l);
    let kb = BigInt::from(k);
    (0..=e)
        .map(|i| binomial(e, i) * num_traits::pow(lb.clone(), (e - i) as usize) * num_traits::pow(kb.clone(), i as usize))
        .collect()
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zpoly_add_scaled(acc: &mut Vec<BigInt>, p: &[BigInt], c: &BigInt) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x * c;
    }
}

/// Denominator key: the affine factors `(L, K)` whose exponent is `-1`.
type FactorKey = Vec<(i64, i64)>;

/// `p · (L + K t)` in place.
fn zpoly_mul_linear(p: &mut Vec<BigInt>, l: i64, k: i64) {
    p.push(BigInt::zero());
    for i in (0..p.len()).rev() {
        let mut v = &p[i] * l;
        if i > 0 {
            v += &p[i - 1] * k;
        }
        p[i] = v;
    }
}

/// Exact quotient `p / (L + K t)` over the integers, if it exists.
fn zpoly_div_linear(p: &[BigInt], l: i64, k: i64) -> Option<Vec<BigInt>> {
    let n = p.len();
    if n < 2 {
        return None;
    }
    let kb = BigInt::from(k);
    let mut q = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for i in (1..n).rev() {
        let top = &p[i] - &carry;
        let (d, r) = top.div_rem(&kb);
        if !r.is_zero() {
            return None;
        }
        carry = &d * l;
        q[i - 1] = d;
    }
    (p[0] == carry).then_some(q)
}

/// `(Σ_g num_g / Π key_g) / den` over linear factors, as a canonical rational function.
/// Works over the integers with one common denominator; shared linear factors
/// are cancelled by exact division, so no polynomial gcd is needed.
fn combine_linear_fractions(groups: &BTreeMap<FactorKey, Vec<BigInt>>, den: &BigInt) -> RatFunc {
    // primitive factor (L', K') with K' > 0 -> maximal multiplicity over groups
    let mut union: FactorCounts = BTreeMap::new();
    let mut prepared: Vec<(i64, &Vec<BigInt>, FactorCounts)> = Vec::new();
    let mut common = 1i64;
    for (key, num) in groups {
        if num.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut content = 1i64;
        let mut prims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for &(l, k) in key {
            let g = l.gcd(&k);
            content *= g;
            *prims.entry((l / g, k / g)).or_default() += 1;
        }
        for (p, mult) in &prims {
            let e = union.entry(*p).or_default();
            *e = (*e).max(*mult);
        }
        common = common.lcm(&content);
        prepared.push((content, num, prims));
    }
    let mut numerator: Vec<BigInt> = Vec::new();
    for (content, ints, prims) in prepared {
        let mut term = ints.clone();
        for (p, mult) in &union {
            let have = prims.get(p).copied().unwrap_or(0);
            for _ in have..*mult {
                zpoly_mul_linear(&mut term, p.0, p.1);
            }
        }
        zpoly_add_scaled(&mut numerator, &term, &BigInt::from(common / content));
    }
    while numerator.last().is_some_and(|c| c.is_zero()) {
        numerator.pop();
    }
    if numerator.is_empty() {
        return RatFunc::zero();
    }
    let mut den_factors: Vec<(i64, i64)> = Vec::new();
    for (p, mult) in union {
        let mut left = mult;
        while left > 0 {
            match zpoly_div_linear(&numerator, p.0, p.1) {
                Some(q) => {
                    numerator = q;
                    left -= 1;
                }
                None => break,
            }
        }
        den_factors.extend(core::iter::repeat_n(p, left));
    }
    let mut den = vec![den * common];
    for (l, k) in den_factors {
        zpoly_mul_linear(&mut den, l, k);
    }
    let to_poly = |v: Vec<BigInt>| Poly::new(v.into_iter().map(Rational::from_integer).collect());
    RatFunc::normalized(to_poly(numerator), to_poly(den))
}

/// Integer groups sharing one denominator, accumulating `w · groups` for rational `w`.
struct ScaledGroups {
    den: BigInt,
    groups: BTreeMap<FactorKey, Vec<BigInt>>,
}

impl ScaledGroups {
    fn new() -> Self {
        Self { den: BigInt::one(), groups: BTreeMap::new() }
    }

    fn add(&mut self, w: &Rational, parts: &BTreeMap<FactorKey, Vec<BigInt>>) {
        let b = w.denom();
        if !(&self.den % b).is_zero() {
            let lcm = self.den.lcm(b);
            let f = &lcm / &self.den;
            for v in self.groups.values_mut() {
                for c in v.iter_mut() {
                    *c *= &f;
                }
            }
            self.den = lcm;
        }
        let mult = w.numer() * (&self.den / b);
        for (key, num) in parts {
            zpoly_add_scaled(self.groups.entry(key.clone()).or_default(), num, &mult);
        }
    }
}

impl Deformation for SymbolicT {
    type Coeff = RatFunc;

    fn psi_coefficients(&self, ks: &[u32], hi: i64, bern: &mut BernoulliTable) -> Result<Vec<RatFunc>> {
        let n = ks.len() as i64;
        let weight: i64 = ks.iter().map(|&k| k as i64).sum();
        let lo = -(weight + n);
        let len = (hi - lo + 1).max(0) as usize;
        let mut by_degree: Vec<ScaledGroups> = (0..len).map(|_| ScaledGroups::new()).collect();
        let terms = l_terms(ks);
        let mut powers: BTreeMap<(i64, i64, u32), Vec<BigInt>> = BTreeMap::new();
        for ms in bernoulli_supported_indices(ks.len(), hi - lo) {
            let w = bernoulli_weight(&ms, bern);
            if w.is_zero() {
                continue;
            }
            let c = c_groups(&terms, &ms, &mut powers);
            let d: usize = ms.iter().map(|&m| m as usize).sum();
            by_degree[d].add(&w, &c);
        }
        Ok(by_degree.iter().map(|g| combine_linear_fractions(&g.groups, &g.den)).collect())
    }

    fn label(&self) -> String {
        String::from("sym")
    }
}

/// `C^k_m` split by denominator key: key -> integer numerator polynomial.
fn c_groups(
    terms: &[LTerm],
    ms: &[u32],
    powers: &mut BTreeMap<(i64, i64, u32), Vec<BigInt>>,
) -> BTreeMap<FactorKey, Vec<BigInt>> {
    let mut groups: BTreeMap<FactorKey, Vec<BigInt>> = BTreeMap::new();
    for term in terms {
        let mut key = FactorKey::new();
        let mut num = vec![BigInt::one()];
        for (&(l, k), &m) in term.affine.iter().zip(ms) {
            if m == 0 {
                key.push((l, k));
            } else if m > 1 {
                let p = powers.entry((l, k, m - 1)).or_insert_with(|| affine_power(l, k, m - 1));
                num = zpoly_mul(&num, p);
            }
        }
        zpoly_add_scaled(groups.entry(key).or_default(), &num, &term.coef);
    }
    groups
}

/// The coefficient `C^{k}_{m}(t)` as a canonical rational function.
pub fn c_coeff(ks: &[u32], ms: &[u32]) -> Result<RatFunc> {
    if ks.len() != ms.len() {
        return Err(Error::InvalidParameter("ks and ms must have equal length".into()));
    }
    if ks.contains(&0) {
        return Err(Error::InvalidSignature("entries must be at least 1".into()));
    }
    let terms = l_terms(ks);
    let mut powers = BTreeMap::new();
    Ok(combine_linear_fractions(&c_groups(&terms, ms, &mut powers), &BigInt::one()))
}

/// Birkhoff components `(ψ₋, ψ₊)`.
pub type Split<C> = (LaurentSeries<C>, LaurentSeries<C>);

/// Multiplicities of primitive linear factors `(L, K)`.
type FactorCounts = BTreeMap<(i64, i64), usize>;

/// Counters exposed for diagnostics (`--verbose` in the CLI).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableStats {
    pub psi_evaluations: usize,
    pub birkhoff_steps: usize,
}

/// Memoised ψ, ψ₋ and ψ₊ for one `(deformation, mode, order)` context.
///
/// Every stored ψ series is known through degree `order`. The table is not
/// shared across threads; build one table per worker.
pub struct CharacterTable<D: Deformation = SymbolicT> {
    deformation: D,
    mode: NormalizationMode,
    order: i64,
    bern: BernoulliTable,
    psi: BTreeMap<Word, LaurentSeries<D::Coeff>>,
    minus: BTreeMap<Word, LaurentSeries<D::Coeff>>,
    plus: BTreeMap<Word, LaurentSeries<D::Coeff>>,
    stats: TableStats,
}

impl<D: Deformation> CharacterTable<D> {
    pub fn new(deformation: D, mode: NormalizationMode, order: i64) -> Self {
        Self {
            deformation,
            mode,
            order,
            bern: BernoulliTable::new(),
            psi: BTreeMap::new(),
            minus: BTreeMap::new(),
            plus: BTreeMap::new(),
            stats: TableStats::default(),
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn mode(&self) -> NormalizationMode {
        self.mode
    }

    pub fn deformation(&self) -> &D {
        &self.deformation
    }

    pub fn stats(&self) -> TableStats {
        self.stats
    }

    /// ψ(w), known through degree `order`, lowest degree `-(weight + depth)`.
    pub fn psi(&mut self, w: &Word) -> Result<LaurentSeries<D::Coeff>> {
        if w.is_empty() {
            return Ok(LaurentSeries::one());
        }
        if let Some(hit) = self.psi.get(w) {
            return Ok(hit.clone());
        }
        let sig = Signature::from_word(w)?;
        let lo = -(sig.weight() as i64 + sig.depth() as i64);
        let coeffs = self.deformation.psi_coefficients(sig.ks(), self.order, &mut self.bern)?;
        let mut series = LaurentSeries::truncated(lo, coeffs, self.order);
        if self.mode == NormalizationMode::OneMinusQ {
            // (1-q)^{-|k|} = (-z)^{-|k|} (z/(e^z-1))^{|k|}
            let factor = crate::arith::exp_ratio_power(sig.weight(), self.order - lo).reciprocal()?;
            let factor = factor.try_map(|c| Ok(<D::Coeff as Coeff>::from_rational(c.clone())))?;
            series = series.mul(&factor);
        }
        self.stats.psi_evaluations += 1;
        self.psi.insert(w.clone(), series.clone());
        Ok(series)
    }

    /// Bogoliubov preparation `ψ(w) + Σ_{(w)} ψ₋(w') ψ(w'')`.
    pub fn prepared(&mut self, w: &Word) -> Result<LaurentSeries<D::Coeff>> {
        let mut acc = self.psi(w)?;
        let letters = w.letters();
        for i in 1..letters.len() {
            let left = Word::new(letters[..i].to_vec());
            let right = Word::new(letters[i..].to_vec());
            let m = self.minus(&left)?;
            let p = self.psi(&right)?;
            acc = acc.add(&m.mul(&p));
        }
        Ok(acc)
    }

    /// `(ψ₋(w), ψ₊(w))`: pole part with a minus sign, and regular part, of the preparation.
    pub fn birkhoff(&mut self, w: &Word) -> Result<Split<D::Coeff>> {
        if w.is_empty() {
            return Ok((LaurentSeries::one(), LaurentSeries::one()));
        }
        if let (Some(m), Some(p)) = (self.minus.get(w), self.plus.get(w)) {
            return Ok((m.clone(), p.clone()));
        }
        let prepared = self.prepared(w)?;
        let known = prepared.hi().unwrap_or(i64::MAX);
        if known < 0 {
            return Err(Error::InsufficientTruncation { needed: 0, known });
        }
        let minus = prepared.pole_part()?.neg();
        let plus = prepared.regular_part();
        self.stats.birkhoff_steps += 1;
        self.minus.insert(w.clone(), minus.clone());
        self.plus.insert(w.clone(), plus.clone());
        Ok((minus, plus))
    }

    pub fn minus(&mut self, w: &Word) -> Result<LaurentSeries<D::Coeff>> {
        Ok(self.birkhoff(w)?.0)
    }

    pub fn plus(&mut self, w: &Word) -> Result<LaurentSeries<D::Coeff>> {
        Ok(self.birkhoff(w)?.1)
    }

    /// Linear extension of ψ₋ to a sum of words.
    pub fn minus_on_sum(&mut self, s: &WordSum) -> Result<LaurentSeries<D::Coeff>> {
        let mut acc = LaurentSeries::zero();
        for (w, c) in s.iter() {
            acc = acc.add(&self.minus(w)?.scale(c));
        }
        Ok(acc)
    }
}

/// ψ of a signature with symbolic `t`, known through degree `order`.
pub fn psi(sig: &Signature, order: i64, mode: NormalizationMode) -> Result<LaurentSeries<RatFunc>> {
    if order < -1 {
        return Err(Error::InvalidParameter("order must be at least -1".into()));
    }
    CharacterTable::new(SymbolicT, mode, order).psi(&sig.to_word())
}

/// Birkhoff factors of a signature inside an existing table.
pub fn birkhoff<D: Deformation>(
    sig: &Signature,
    table: &mut CharacterTable<D>,
) -> Result<Split<D::Coeff>> {
    table.birkhoff(&sig.to_word())
}

/// Convolution `(φ ⋆ ψ)(w) = Σ_{uv = w} φ(u) ψ(v)`.
pub fn convolve<C: Coeff>(
    mut phi: impl FnMut(&Word) -> Result<LaurentSeries<C>>,
    mut psi: impl FnMut(&Word) -> Result<LaurentSeries<C>>,
    w: &Word,
) -> Result<LaurentSeries<C>> {
    let mut acc = LaurentSeries::zero();
    for (u, v) in w.deconcatenations() {
        acc = acc.add(&phi(&u)?.mul(&psi(&v)?));
    }
    Ok(acc)
}

/// Collects the distinct primitive linear factors of a denominator; test helper
/// for regularity checks.
pub fn linear_factor_roots(f: &RatFunc) -> BTreeSet<Rational> {
    f.denominator_rational_roots().into_iter().collect()
}
