//! Property suites over small words: Hopf-algebra axioms, the character and
//! Birkhoff identities, and the algebraic relations among renormalised values.
//!
//! Each suite returns a [`CheckOutcome`] listing failing cases, so callers can
//! print counterexamples rather than just a verdict.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{format_rational, int, rat, BernoulliTable, LaurentSeries, RatFunc, Rational};
use crate::characters::{CharacterTable, NormalizationMode, Signature, SymbolicT, DEFAULT_GUARD};
use crate::error::Result;
use crate::quasi_shuffle::{antipode, coproduct, negative_words_of_weight, quasi_shuffle, TensorSum, Word, WordSum};
use crate::renorm::{mero_oracle_with, positive_denominator_roots, renormalised_in};

/// How many counterexamples a suite keeps.
const KEEP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    failed: usize,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        Self { name: name.into(), cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEEP {
                self.failures.push(case());
            }
        }
    }

    fn error(&mut self, case: String, e: crate::Error) {
        self.record(false, || alloc::format!("{case}: {e}"));
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }

    pub fn failed_cases(&self) -> usize {
        self.failed
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} cases", self.name, self.cases)?;
        if self.failed > 0 {
            write!(f, ", {} failed", self.failed)?;
        }
        f.write_str(")")?;
        for c in &self.failures {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Negative words of weight `1..=max_weight` and length at most `max_depth`.
pub fn words_up_to(max_weight: u32, max_depth: usize) -> Vec<Word> {
    (1..=max_weight).flat_map(negative_words_of_weight).filter(|w| w.len() <= max_depth).collect()
}

/// Unordered pairs `(u, v)` of negative words with `wt(u) + wt(v) <= max_weight`
/// and `len(u) + len(v) <= max_depth`.
pub fn word_pairs(max_weight: u32, max_depth: usize) -> Vec<(Word, Word)> {
    let words = words_up_to(max_weight, max_depth);
    let mut out = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.weight() + v.weight() <= max_weight && u.len() + v.len() <= max_depth {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn tensor_apply(t: &TensorSum, f: impl Fn(&Word) -> TensorSum, left: bool) -> BTreeMap<(Word, Word, Word), Rational> {
    let mut out: BTreeMap<(Word, Word, Word), Rational> = BTreeMap::new();
    for ((a, b), c) in t.iter() {
        let split = if left { f(a) } else { f(b) };
        for ((x, y), d) in split.iter() {
            let key = if left { (x.clone(), y.clone(), b.clone()) } else { (a.clone(), x.clone(), y.clone()) };
            let e = out.entry(key).or_insert_with(Rational::zero);
            *e += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ`.
pub fn coassociativity(max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("coassociativity");
    for w in words_up_to(max_weight, max_depth) {
        let d = coproduct(&w);
        let ok = tensor_apply(&d, coproduct, true) == tensor_apply(&d, coproduct, false);
        out.record(ok, || alloc::format!("{w}"));
    }
    out
}

/// `Δ(u ∗ v) = Δ(u) ∗ Δ(v)`.
pub fn bialgebra_compatibility(max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("bialgebra compatibility");
    for (u, v) in word_pairs(max_weight, max_depth) {
        let check = || -> Result<bool> {
            let mut lhs = TensorSum::zero();
            for (w, c) in quasi_shuffle(&u, &v)?.iter() {
                lhs.add_scaled(&coproduct(w), c);
            }
            Ok(lhs == coproduct(&u).quasi_shuffle(&coproduct(&v))?)
        };
        match check() {
            Ok(ok) => out.record(ok, || alloc::format!("{u} * {v}")),
            Err(e) => out.error(alloc::format!("{u} * {v}"), e),
        }
    }
    out
}

/// `m_∗(S ⊗ id)Δ(w) = 0 = m_∗(id ⊗ S)Δ(w)` for nonempty `w`.
pub fn antipode_axiom(max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("antipode axiom");
    for w in words_up_to(max_weight, max_depth) {
        let check = || -> Result<bool> {
            let mut left = WordSum::zero();
            let mut right = WordSum::zero();
            for (a, b) in w.deconcatenations() {
                left.add_scaled(&antipode(&a)?.quasi_shuffle(&WordSum::word(b.clone()))?, &Rational::one());
                right.add_scaled(&WordSum::word(a.clone()).quasi_shuffle(&antipode(&b)?)?, &Rational::one());
            }
            Ok(left.is_zero() && right.is_zero())
        };
        match check() {
            Ok(ok) => out.record(ok, || alloc::format!("{w}")),
            Err(e) => out.error(alloc::format!("{w}"), e),
        }
    }
    out
}

/// Every term of `u ∗ v` has weight `wt(u) + wt(v)`, and both legs of `Δ(w)`
/// have weights summing to `wt(w)`.
pub fn grading(max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("grading");
    for (u, v) in word_pairs(max_weight, max_depth) {
        let ok = quasi_shuffle(&u, &v).is_ok_and(|s| s.iter().all(|(w, _)| w.weight() == u.weight() + v.weight()));
        out.record(ok, || alloc::format!("{u} * {v}"));
    }
    for w in words_up_to(max_weight, max_depth) {
        let ok = coproduct(&w).iter().all(|((a, b), _)| a.weight() + b.weight() == w.weight());
        out.record(ok, || alloc::format!("coproduct of {w}"));
    }
    out
}

/// Deterministic xorshift stream for sampled checks.
struct Sampler(u64);

impl Sampler {
    fn next(&mut self, n: u64) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0 % n
    }

    fn series(&mut self) -> LaurentSeries<Rational> {
        let lo = -(self.next(4) as i64);
        let len = 1 + self.next(6) as usize;
        let coeffs = (0..len).map(|_| rat(self.next(11) as i64 - 5, 1 + self.next(4) as i64)).collect();
        let hi = lo + len as i64 - 1 + self.next(3) as i64;
        LaurentSeries::truncated(lo, coeffs, hi.max(-1))
    }
}

/// `π(a)π(b) = π(π(a)b) + π(aπ(b)) - π(ab)` for the pole-part projector on
/// sampled series.
pub fn rota_baxter(samples: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("Rota-Baxter identity of weight -1");
    let mut rng = Sampler(0x9e3779b97f4a7c15);
    for _ in 0..samples {
        let (a, b) = (rng.series(), rng.series());
        let check = || -> Result<bool> {
            let (pa, pb) = (a.pole_part()?, b.pole_part()?);
            let ab = a.mul(&b);
            if ab.hi().is_some_and(|h| h < -1) {
                return Ok(true);
            }
            let lhs = pa.mul(&pb);
            let rhs = pa.mul(&b).pole_part()?.add(&a.mul(&pb).pole_part()?).sub(&ab.pole_part()?);
            Ok(lhs.agrees_with(&rhs))
        };
        match check() {
            Ok(ok) => out.record(ok, || alloc::format!("a = {a}, b = {b}")),
            Err(e) => out.error(alloc::format!("a = {a}, b = {b}"), e),
        }
    }
    out
}

fn symbolic_table(max_weight: u32, max_depth: usize, guard: i64) -> CharacterTable<SymbolicT> {
    CharacterTable::new(SymbolicT, NormalizationMode::LogQ, max_weight as i64 + max_depth as i64 + guard)
}

/// `ψ(u)ψ(v) = Σ c_w ψ(w)` over `u ∗ v`, on every degree both sides know.
pub fn character_morphism(max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("character is a quasi-shuffle morphism");
    let mut table = symbolic_table(max_weight, max_depth, DEFAULT_GUARD);
    for (u, v) in word_pairs(max_weight, max_depth) {
        let mut check = || -> Result<bool> {
            let lhs = table.psi(&u)?.mul(&table.psi(&v)?);
            let mut rhs = LaurentSeries::zero();
            for (w, c) in quasi_shuffle(&u, &v)?.iter() {
                rhs = rhs.add(&table.psi(w)?.scale(c));
            }
            let known = lhs.hi().unwrap_or(i64::MAX).min(rhs.hi().unwrap_or(i64::MAX));
            Ok(known >= 0 && lhs.agrees_with(&rhs))
        };
        match check() {
            Ok(ok) => out.record(ok, || alloc::format!("{u} * {v}")),
            Err(e) => out.error(alloc::format!("{u} * {v}"), e),
        }
    }
    out
}

/// `ψ₋ ⋆ ψ = ψ₊`, the Birkhoff factorisation read back through convolution,
/// and `(ψ₋ ∘ S) ⋆ ψ₋ = ε`.
pub fn birkhoff_convolution(max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("convolve(psi_minus, psi) = psi_plus");
    let table = core::cell::RefCell::new(symbolic_table(max_weight, max_depth, DEFAULT_GUARD));
    for w in words_up_to(max_weight, max_depth) {
        let check = || -> Result<bool> {
            let conv = crate::characters::convolve(|u| table.borrow_mut().minus(u), |v| table.borrow_mut().psi(v), &w)?;
            let plus = table.borrow_mut().plus(&w)?;
            let inverse = crate::characters::convolve(
                |u| table.borrow_mut().minus_on_sum(&antipode(u)?),
                |v| table.borrow_mut().minus(v),
                &w,
            )?;
            let splitting = {
                let prepared = table.borrow_mut().prepared(&w)?;
                let minus = table.borrow_mut().minus(&w)?;
                plus.sub(&prepared).sub(&minus).terms().all(|(_, c)| c.is_zero())
            };
            Ok(conv.agrees_with(&plus) && inverse.terms().all(|(_, c)| c.is_zero()) && splitting)
        };
        match check() {
            Ok(ok) => out.record(ok, || alloc::format!("{w}")),
            Err(e) => out.error(alloc::format!("{w}"), e),
        }
    }
    out
}

/// Symbolic renormalised values, computed once per word.
pub struct RenormCache {
    table: CharacterTable<SymbolicT>,
    values: BTreeMap<Word, RatFunc>,
}

impl RenormCache {
    /// Covers all negative words of weight `<= max_weight` and depth `<= max_depth`.
    pub fn new(max_weight: u32, max_depth: usize, guard: i64) -> Self {
        Self { table: symbolic_table(max_weight, max_depth, guard), values: BTreeMap::new() }
    }

    pub fn value(&mut self, w: &Word) -> Result<RatFunc> {
        if w.is_empty() {
            return Ok(RatFunc::one());
        }
        if let Some(v) = self.values.get(w) {
            return Ok(v.clone());
        }
        let v = renormalised_in(&mut self.table, &Signature::from_word(w)?)?.value;
        self.values.insert(w.clone(), v.clone());
        Ok(v)
    }

    pub fn stats(&self) -> crate::characters::TableStats {
        self.table.stats()
    }
}

/// `ζ₊(u)ζ₊(v) = Σ c_w ζ₊(w)` over `u ∗ v` as identities in `Q(t)`.
pub fn renorm_morphism(cache: &mut RenormCache, max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("renormalised values respect the quasi-shuffle product");
    out.name = alloc::format!("{} (weight <= {max_weight}, depth <= {max_depth})", out.name);
    for (u, v) in word_pairs(max_weight, max_depth) {
        let mut check = || -> Result<bool> {
            let lhs = &cache.value(&u)? * &cache.value(&v)?;
            let mut rhs = RatFunc::zero();
            for (w, c) in quasi_shuffle(&u, &v)?.iter() {
                rhs = &rhs + &cache.value(w)?.scale(c);
            }
            Ok(lhs == rhs)
        };
        match check() {
            Ok(ok) => out.record(ok, || alloc::format!("{u} * {v}")),
            Err(e) => out.error(alloc::format!("{u} * {v}"), e),
        }
    }
    out
}

/// Depth-one values equal `-B_{k+1}/(k+1)` and depth-two odd-weight values
/// equal `B_{k_1+k_2+1}/(2(k_1+k_2+1))`, with no dependence on `t`.
pub fn meromorphic_agreement(cache: &mut RenormCache, max_weight: u32) -> CheckOutcome {
    let mut out = CheckOutcome::new("agreement with the meromorphic continuation");
    let mut bern = BernoulliTable::new();
    for w in words_up_to(max_weight, 2) {
        let sig = match Signature::from_word(&w) {
            Ok(s) => s,
            Err(e) => {
                out.error(alloc::format!("{w}"), e);
                continue;
            }
        };
        let Some(expect) = mero_oracle_with(&sig, &mut bern).value else { continue };
        match cache.value(&w) {
            Ok(v) => out.record(v.as_constant().as_ref() == Some(&expect), || {
                alloc::format!("{w}: got {v}, expected {}", format_rational(&expect))
            }),
            Err(e) => out.error(alloc::format!("{w}"), e),
        }
    }
    out
}

/// Denominators have no rational root `> 0` and do not vanish at sample points.
pub fn denominator_regularity(cache: &mut RenormCache, max_weight: u32, max_depth: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("denominators regular for t > 0");
    let samples = [rat(1, 7), rat(1, 2), int(1), rat(3, 2), int(2), int(10)];
    for w in words_up_to(max_weight, max_depth) {
        match cache.value(&w) {
            Ok(v) => {
                let ok = positive_denominator_roots(&v).is_empty() && samples.iter().all(|t| v.eval(t).is_ok());
                out.record(ok, || alloc::format!("{w}: {v}"));
            }
            Err(e) => out.error(alloc::format!("{w}"), e),
        }
    }
    out
}

/// Limits for [`run_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteLimits {
    /// Weight bound for the Hopf-algebra axioms.
    pub hopf_weight: u32,
    /// Weight and total depth bound for character and renormalisation checks.
    pub weight: u32,
    pub depth: usize,
}

impl SuiteLimits {
    pub fn new(max_weight: u32) -> Self {
        Self { hopf_weight: max_weight.min(6), weight: max_weight, depth: 2 }
    }
}

pub fn run_all(limits: SuiteLimits) -> Vec<CheckOutcome> {
    let hw = limits.hopf_weight;
    let hd = hw as usize;
    let mut cache = RenormCache::new(limits.weight, limits.depth, DEFAULT_GUARD);
    alloc::vec![
        coassociativity(hw, hd),
        bialgebra_compatibility(hw, hd),
        antipode_axiom(hw, hd),
        grading(hw, hd),
        rota_baxter(200),
        character_morphism(limits.weight, limits.depth),
        birkhoff_convolution(limits.weight, limits.depth),
        renorm_morphism(&mut cache, limits.weight, limits.depth),
        meromorphic_agreement(&mut cache, limits.weight),
        denominator_regularity(&mut cache, limits.weight, limits.depth),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for outcome in run_all(SuiteLimits { hopf_weight: 4, weight: 5, depth: 2 }) {
            assert!(outcome.passed(), "{outcome}");
        }
    }

    #[test]
    fn pairs_are_bounded() {
        let pairs = word_pairs(4, 2);
        assert!(pairs.iter().all(|(u, v)| u.weight() + v.weight() <= 4 && u.len() + v.len() <= 2));
        // {1,1}, {1,2}, {1,3}, {2,2}
        assert_eq!(pairs.len(), 4);
    }

    #[test]
    fn failures_are_reported() {
        let mut o = CheckOutcome::new("demo");
        o.record(true, || unreachable!());
        o.record(false, || String::from("y-1"));
        assert!(!o.passed());
        assert!(alloc::format!("{o}").contains("counterexample: y-1"));
        assert!(!CheckOutcome::new("empty").passed());
    }
}
