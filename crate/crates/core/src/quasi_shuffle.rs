//! The quasi-shuffle Hopf algebra on words over `{y_n : n != 0}`.
//!
//! Product (stuffle), deconcatenation coproduct, antipode and weight grading.
//! Sums carry exact rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::num::NonZeroI32;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// The letter `y_n`, `n != 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(NonZeroI32);

impl Letter {
    pub fn new(index: i32) -> Result<Self> {
        NonZeroI32::new(index).map(Letter).ok_or(Error::ZeroLetter)
    }

    pub fn index(self) -> i32 {
        self.0.get()
    }

    /// Letter for `y_{n+m}`; `ZeroIndexLetter` when the indices cancel.
    pub fn merge(self, other: Letter) -> Result<Letter> {
        let sum = self.index() + other.index();
        Letter::new(sum).map_err(|_| Error::ZeroIndexLetter(self.index(), other.index()))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}", self.index())
    }
}

/// A word in the free monoid; the empty word is the unit `e`.
///
/// Words order by length first, then lexicographically by index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Word from raw indices, e.g. `[-1, -3]` for `y-1.y-3`.
    pub fn from_indices(indices: &[i32]) -> Result<Self> {
        indices.iter().map(|&n| Letter::new(n)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn indices(&self) -> Vec<i32> {
        self.0.iter().map(|l| l.index()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of absolute indices.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| l.index().unsigned_abs()).sum()
    }

    /// True when every letter has negative index (the empty word included).
    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|l| l.index() < 0)
    }

    fn prepend(&self, head: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(head);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// All splittings `w = u v` as `(u, v)`, including the trivial ones.
    pub fn deconcatenations(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.0.len()).map(move |i| (Word(self.0[..i].to_vec()), Word(self.0[i..].to_vec())))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "y{}", l.index())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `y-1.y-3`; `e` is the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word must be spelled \"e\"".into()));
        }
        s.split('.')
            .map(|tok| {
                let digits = tok
                    .strip_prefix('y')
                    .ok_or_else(|| Error::Parse(alloc::format!("letter {tok:?} must start with 'y'")))?;
                let n: i32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad letter index in {tok:?}")))?;
                Letter::new(n)
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Finite Q-linear combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, Rational>,
}

impl WordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WordSum, c: &Rational) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn neg(&self) -> WordSum {
        WordSum { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    /// Bilinear quasi-shuffle product of two sums.
    pub fn quasi_shuffle(&self, other: &WordSum) -> Result<WordSum> {
        let mut out = WordSum::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_scaled(&quasi_shuffle(u, v)?, &(a * b));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}) {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the tensor square, `sum c (u ⊗ v)`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TensorSum {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorSum, c: &Rational) {
        for ((u, v), x) in &other.terms {
            self.add_term(u.clone(), v.clone(), x * c);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Rational {
        self.terms.get(&(u.clone(), v.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Componentwise quasi-shuffle: `(a ⊗ b)(c ⊗ d) = (a * c) ⊗ (b * d)`.
    pub fn quasi_shuffle(&self, other: &TensorSum) -> Result<TensorSum> {
        let mut out = TensorSum::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = quasi_shuffle(a, c)?;
                let right = quasi_shuffle(b, d)?;
                let xy = x * y;
                for (l, lc) in left.iter() {
                    for (r, rc) in right.iter() {
                        out.add_term(l.clone(), r.clone(), &xy * lc * rc);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Sum of absolute indices.
pub fn weight(w: &Word) -> u32 {
    w.weight()
}

/// Quasi-shuffle product `u * v`:
/// `e * u = u * e = u` and
/// `y_n u * y_m v = y_n (u * y_m v) + y_m (y_n u * v) + y_{n+m} (u * v)`.
pub fn quasi_shuffle(u: &Word, v: &Word) -> Result<WordSum> {
    let mut memo = BTreeMap::new();
    stuffle_suffixes(u.letters(), v.letters(), &mut memo)
}

fn stuffle_suffixes(
    u: &[Letter],
    v: &[Letter],
    memo: &mut BTreeMap<(usize, usize), WordSum>,
) -> Result<WordSum> {
    if u.is_empty() {
        return Ok(WordSum::word(Word(v.to_vec())));
    }
    if v.is_empty() {
        return Ok(WordSum::word(Word(u.to_vec())));
    }
    let key = (u.len(), v.len());
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let (a, rest_u) = (u[0], &u[1..]);
    let (b, rest_v) = (v[0], &v[1..]);
    let merged = a.merge(b)?;
    let mut out = WordSum::zero();
    for (head, part) in [
        (a, stuffle_suffixes(rest_u, v, memo)?),
        (b, stuffle_suffixes(u, rest_v, memo)?),
        (merged, stuffle_suffixes(rest_u, rest_v, memo)?),
    ] {
        for (w, c) in part.terms {
            out.add_term(w.prepend(head), c);
        }
    }
    memo.insert(key, out.clone());
    Ok(out)
}

/// Deconcatenation coproduct `Δ(w) = sum_{uv = w} u ⊗ v`.
pub fn coproduct(w: &Word) -> TensorSum {
    let mut out = TensorSum::zero();
    for (u, v) in w.deconcatenations() {
        out.add_term(u, v, Rational::one());
    }
    out
}

/// `Δ(w) - e ⊗ w - w ⊗ e`; empty for single letters.
pub fn reduced_coproduct(w: &Word) -> Result<TensorSum> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = TensorSum::zero();
    for i in 1..w.len() {
        out.add_term(Word(w.0[..i].to_vec()), Word(w.0[i..].to_vec()), Rational::one());
    }
    Ok(out)
}

/// Antipode: `S(e) = e`, `S(w) = -w - sum_{(w)} S(w') * w''`.
pub fn antipode(w: &Word) -> Result<WordSum> {
    let mut memo = BTreeMap::new();
    antipode_memo(w, &mut memo)
}

fn antipode_memo(w: &Word, memo: &mut BTreeMap<Word, WordSum>) -> Result<WordSum> {
    if w.is_empty() {
        return Ok(WordSum::word(Word::empty()));
    }
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    let mut out = WordSum::term(w.clone(), -Rational::one());
    for i in 1..w.len() {
        let prefix = Word(w.0[..i].to_vec());
        let suffix = WordSum::word(Word(w.0[i..].to_vec()));
        let s = antipode_memo(&prefix, memo)?;
        out.add_scaled(&s.quasi_shuffle(&suffix)?, &-Rational::one());
    }
    memo.insert(w.clone(), out.clone());
    Ok(out)
}

/// All words with strictly negative letters of the given weight.
pub fn negative_words_of_weight(weight: u32) -> Vec<Word> {
    compositions(weight)
        .into_iter()
        .map(|parts| Word(parts.into_iter().map(|k| Letter::new(-(k as i32)).unwrap()).collect()))
        .collect()
}

/// Ordered compositions of `n` into positive parts (`[[]]` for `n = 0`).
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Convenience for tests and printing: `y-1.y-3` style text of a signature.
pub fn format_indices(indices: &[i32]) -> String {
    Word::from_indices(indices).map(|w| alloc::format!("{w}")).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::arith::int;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sum(items: &[(&str, i64)]) -> WordSum {
        let mut out = WordSum::zero();
        for (s, c) in items {
            out.add_term(w(s), int(*c));
        }
        out
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("y-1.y-3").indices(), vec![-1, -3]);
        assert_eq!(w("e"), Word::empty());
        assert_eq!(w("y2.y-2").to_string(), "y2.y-2");
        assert!("y0".parse::<Word>().is_err());
        assert!("x1".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&Word::empty()), 0);
        assert_eq!(weight(&w("y-1.y-3")), 4);
        assert_eq!(weight(&w("y2.y-2")), 4);
    }

    #[test]
    fn canonical_order_is_length_then_lexicographic() {
        assert!(w("y-9") < w("y-1.y-1"));
        assert!(w("y-2.y-1") < w("y-1.y-2"));
    }

    #[test]
    fn unit_and_nielsen_products() {
        assert_eq!(quasi_shuffle(&Word::empty(), &w("y-2.y-1")).unwrap(), sum(&[("y-2.y-1", 1)]));
        assert_eq!(
            quasi_shuffle(&w("y-1"), &w("y-2")).unwrap(),
            sum(&[("y-1.y-2", 1), ("y-2.y-1", 1), ("y-3", 1)])
        );
        assert_eq!(quasi_shuffle(&w("y-1"), &w("y-1")).unwrap(), sum(&[("y-1.y-1", 2), ("y-2", 1)]));
    }

    #[test]
    fn depth_two_times_depth_one() {
        // (a,b)(c) = (c,a,b) + (a,b,c) + (a,c,b) + (a,b+c) + (a+c,b) with a=2, b=3, c=5
        let got = quasi_shuffle(&w("y-2.y-3"), &w("y-5")).unwrap();
        let want = sum(&[
            ("y-5.y-2.y-3", 1),
            ("y-2.y-3.y-5", 1),
            ("y-2.y-5.y-3", 1),
            ("y-2.y-8", 1),
            ("y-7.y-3", 1),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn zero_index_is_rejected() {
        assert_eq!(quasi_shuffle(&w("y1"), &w("y-1")), Err(Error::ZeroIndexLetter(1, -1)));
    }

    #[test]
    fn coproducts() {
        let e = Word::empty();
        let c = coproduct(&e);
        assert_eq!(c.len(), 1);
        assert_eq!(c.coeff(&e, &e), int(1));
        let c = coproduct(&w("y-1.y-3"));
        assert_eq!(c.len(), 3);
        assert_eq!(c.coeff(&e, &w("y-1.y-3")), int(1));
        assert_eq!(c.coeff(&w("y-1"), &w("y-3")), int(1));
        assert_eq!(c.coeff(&w("y-1.y-3"), &e), int(1));
        assert_eq!(coproduct(&w("y-1.y-2.y-3")).len(), 4);

        assert!(reduced_coproduct(&w("y-4")).unwrap().is_empty());
        let r = reduced_coproduct(&w("y-1.y-3")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coeff(&w("y-1"), &w("y-3")), int(1));
        let r = reduced_coproduct(&w("y-1.y-2.y-3")).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.coeff(&w("y-1.y-2"), &w("y-3")), int(1));
        assert_eq!(reduced_coproduct(&e), Err(Error::EmptyWord));
    }

    #[test]
    fn antipode_values() {
        assert_eq!(antipode(&Word::empty()).unwrap(), WordSum::word(Word::empty()));
        assert_eq!(antipode(&w("y-4")).unwrap(), sum(&[("y-4", -1)]));
        // S(y_a y_b) = y_b y_a + y_{a+b}
        assert_eq!(antipode(&w("y-1.y-3")).unwrap(), sum(&[("y-3.y-1", 1), ("y-4", 1)]));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(0), vec![Vec::<u32>::new()]);
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(negative_words_of_weight(3).len(), 4);
    }
}
