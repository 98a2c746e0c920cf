//! Renormalised values `ζ₊(-k_1, ..., -k_n)`: constant terms of ψ₊, as rational
//! functions of `t`, their evaluation, and the closed forms known from the
//! meromorphic continuation.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arith::{format_decimal, BernoulliTable, RatFunc, Rational};
use crate::characters::{CharacterTable, Deformation, FixedT, NormalizationMode, Signature, SymbolicT, DEFAULT_GUARD};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenormResult {
    pub sig: Signature,
    pub value: RatFunc,
    pub mode: NormalizationMode,
    pub order_used: i64,
}

/// `ζ₊^{(t)}` with symbolic `t` and the default guard.
pub fn renormalised_mzv(sig: &Signature, mode: NormalizationMode) -> Result<RenormResult> {
    renormalised_mzv_with_guard(sig, mode, DEFAULT_GUARD)
}

pub fn renormalised_mzv_with_guard(sig: &Signature, mode: NormalizationMode, guard: i64) -> Result<RenormResult> {
    let mut table = CharacterTable::new(SymbolicT, mode, sig.required_order(guard));
    renormalised_in(&mut table, sig)
}

/// Constant term of ψ₊ computed in an existing table.
///
/// The table's order must be at least `weight + depth` of `sig`; any larger
/// order gives the same value.
pub fn renormalised_in(table: &mut CharacterTable<SymbolicT>, sig: &Signature) -> Result<RenormResult> {
    let value = renormalised_value_in(table, sig)?;
    Ok(RenormResult { sig: sig.clone(), value, mode: table.mode(), order_used: table.order() })
}

/// Constant term of ψ₊ for any deformation; `Rational` when `t` is fixed.
pub fn renormalised_value_in<D: Deformation>(table: &mut CharacterTable<D>, sig: &Signature) -> Result<D::Coeff> {
    let needed = sig.required_order(0);
    if table.order() < needed {
        return Err(Error::InsufficientTruncation { needed, known: table.order() });
    }
    table.plus(&sig.to_word())?.constant_term()
}

/// `ζ₊^{(t0)}` in the log normalisation, exactly.
pub fn eval_renorm(sig: &Signature, t0: &Rational) -> Result<Rational> {
    eval_renorm_mode(sig, t0, NormalizationMode::LogQ, DEFAULT_GUARD)
}

/// Substitutes `t0` before the recursion when `t0 > 0`; otherwise evaluates
/// the symbolic value, which reports `PoleAtT` where it has one.
pub fn eval_renorm_mode(sig: &Signature, t0: &Rational, mode: NormalizationMode, guard: i64) -> Result<Rational> {
    if t0.is_positive() {
        let mut table = CharacterTable::new(FixedT(t0.clone()), mode, sig.required_order(guard));
        renormalised_value_in(&mut table, sig)
    } else {
        renormalised_mzv_with_guard(sig, mode, guard)?.value.eval(t0)
    }
}

/// Decimal approximation of a complex value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexApprox {
    pub re: String,
    pub im: String,
    /// The exact value at the (Gaussian rational) input point.
    pub exact: (Rational, Rational),
}

/// `ζ₊^{(t0)}` at a Gaussian rational `t0 = re + im·i` with `re > 0`,
/// rounded to `digits` significant digits per component.
pub fn eval_renorm_complex(sig: &Signature, re: &Rational, im: &Rational, digits: usize) -> Result<ComplexApprox> {
    if !re.is_positive() {
        return Err(Error::InvalidParameter("real part of t must be positive".into()));
    }
    let value = renormalised_mzv(sig, NormalizationMode::LogQ)?.value;
    let (vr, vi) = value.eval_complex(re, im)?;
    Ok(ComplexApprox { re: format_decimal(&vr, digits), im: format_decimal(&vi, digits), exact: (vr, vi) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeroOracleResult {
    pub defined: bool,
    pub value: Option<Rational>,
}

/// Values of the meromorphically continued MZV at negative integers where
/// they exist: depth 1, and depth 2 with odd weight.
pub fn mero_oracle(sig: &Signature) -> MeroOracleResult {
    mero_oracle_with(sig, &mut BernoulliTable::new())
}

pub fn mero_oracle_with(sig: &Signature, bern: &mut BernoulliTable) -> MeroOracleResult {
    let ks = sig.ks();
    let value = match ks {
        [k] => {
            let n = *k as usize + 1;
            Some(-bern.get(n).clone() / Rational::from_integer(n.into()))
        }
        [a, b] if (a + b) % 2 == 1 => {
            let n = (a + b) as usize + 1;
            Some(bern.get(n).clone() / Rational::from_integer((2 * n).into()))
        }
        _ => None,
    };
    MeroOracleResult { defined: value.is_some(), value }
}

/// `max_k × max_k` matrix of `ζ₊^{(t0)}(-k_1, -k_2)`, rows indexed by `k_1`.
pub fn table(max_k: u32, mode: NormalizationMode, t0: &Rational) -> Result<Vec<Vec<Rational>>> {
    table_with_guard(max_k, mode, t0, DEFAULT_GUARD)
}

pub fn table_with_guard(max_k: u32, mode: NormalizationMode, t0: &Rational, guard: i64) -> Result<Vec<Vec<Rational>>> {
    let order = 2 * max_k as i64 + 2 + guard;
    let sigs = (1..=max_k).map(|a| (1..=max_k).map(move |b| Signature::new(alloc::vec![a, b])));
    if t0.is_positive() {
        let mut t = CharacterTable::new(FixedT(t0.clone()), mode, order);
        sigs.map(|row| row.map(|s| renormalised_value_in(&mut t, &s?)).collect()).collect()
    } else {
        let mut t = CharacterTable::new(SymbolicT, mode, order);
        sigs.map(|row| row.map(|s| renormalised_value_in(&mut t, &s?)?.eval(t0)).collect()).collect()
    }
}

/// `ζ₊(-a,-b) + ζ₊(-b,-a) - (ζ₊(-a)ζ₊(-b) - ζ₊(-a-b))`, which vanishes.
pub fn pair_sum_defect(table: &mut CharacterTable<SymbolicT>, a: u32, b: u32) -> Result<RatFunc> {
    let v = |table: &mut CharacterTable<SymbolicT>, ks: Vec<u32>| -> Result<RatFunc> {
        Ok(renormalised_in(table, &Signature::new(ks)?)?.value)
    };
    let ab = v(table, alloc::vec![a, b])?;
    let ba = v(table, alloc::vec![b, a])?;
    let za = v(table, alloc::vec![a])?;
    let zb = v(table, alloc::vec![b])?;
    let zab = v(table, alloc::vec![a + b])?;
    Ok(&(&ab + &ba) - &(&(&za * &zb) - &zab))
}

/// Rational roots of the denominator that are not `<= 0`.
pub fn positive_denominator_roots(f: &RatFunc) -> Vec<Rational> {
    f.denominator_rational_roots().into_iter().filter(|r| r.is_positive() && !r.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, sqrt_approx, Poly};

    fn sig(ks: &[u32]) -> Signature {
        Signature::new(ks.to_vec()).unwrap()
    }

    fn log(ks: &[u32]) -> RatFunc {
        renormalised_mzv(&sig(ks), NormalizationMode::LogQ).unwrap().value
    }

    fn zeta_13() -> RatFunc {
        RatFunc::new(Poly::from_ints(&[31, 166, 166]), Poly::from_ints(&[3, 16, 16]).scale(&int(8064)))
    }

    #[test]
    fn symbolic_examples() {
        assert_eq!(log(&[1, 3]), zeta_13());
        let z31 = RatFunc::new(Poly::from_ints(&[239, 1278, 1278]), Poly::from_ints(&[3, 16, 16]).scale(&int(-40320)));
        assert_eq!(log(&[3, 1]), z31);
        let r = renormalised_mzv(&sig(&[1, 3]), NormalizationMode::LogQ).unwrap();
        assert_eq!(r.order_used, 8);
    }

    #[test]
    fn sum_rule() {
        let mut t = CharacterTable::new(SymbolicT, NormalizationMode::LogQ, 8);
        assert!(pair_sum_defect(&mut t, 1, 3).unwrap().is_zero());
        assert_eq!(&log(&[1, 3]) + &log(&[3, 1]), RatFunc::constant(rat(-1, 1440)));
    }

    #[test]
    fn oracle_values() {
        assert_eq!(mero_oracle(&sig(&[1])).value, Some(rat(-1, 12)));
        assert_eq!(mero_oracle(&sig(&[1, 2])).value, Some(rat(-1, 240)));
        assert!(!mero_oracle(&sig(&[1, 3])).defined);
        assert!(!mero_oracle(&sig(&[1, 1, 1])).defined);
        for k in 1..=6 {
            assert_eq!(log(&[k]), RatFunc::constant(mero_oracle(&sig(&[k])).value.unwrap()));
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(eval_renorm(&sig(&[1, 3]), &int(1)).unwrap(), rat(121, 94080));
        assert_eq!(eval_renorm(&sig(&[5, 1]), &int(1)).unwrap(), rat(110879, 53222400));
        for t0 in [rat(1, 2), int(3), rat(7, 5)] {
            assert!(eval_renorm(&sig(&[2, 2]), &t0).unwrap().is_zero());
            assert_eq!(eval_renorm(&sig(&[1, 3]), &t0).unwrap(), zeta_13().eval(&t0).unwrap());
        }
        assert!(matches!(eval_renorm(&sig(&[1, 3]), &rat(-1, 4)), Err(Error::PoleAtT(_))));
    }

    #[test]
    fn one_minus_q_control() {
        let r = renormalised_mzv(&sig(&[1]), NormalizationMode::OneMinusQ).unwrap();
        let expect = RatFunc::new(Poly::from_ints(&[-1, 1, 1]), Poly::from_ints(&[0, 1, 1])).scale(&rat(-1, 12));
        assert_eq!(r.value, expect);
    }

    #[test]
    fn complex_evaluation() {
        let c = eval_renorm_complex(&sig(&[1]), &int(2), &int(1), 10).unwrap();
        assert_eq!(c.exact, (rat(-1, 12), int(0)));
        let c = eval_renorm_complex(&sig(&[1, 3]), &int(1), &int(0), 12).unwrap();
        assert_eq!(c.exact.0, rat(121, 94080));
        assert_eq!(c.re, "0.00128613945578");
        let s2 = sqrt_approx(&int(2), 40).unwrap();
        let c = eval_renorm_complex(&sig(&[1, 3]), &s2, &int(0), 20).unwrap();
        // oracle: (166t^2+166t+31)/(8064(16t^2+16t+3)) at t^2 = 2 is (363 + 166 sqrt2)/(8064 (35 + 16 sqrt2))
        let oracle = (int(363) + int(166) * &s2) / (int(8064) * (int(35) + int(16) * &s2));
        assert_eq!(c.re, format_decimal(&oracle, 20));
        assert!(eval_renorm_complex(&sig(&[1]), &int(0), &int(1), 5).is_err());
    }

    #[test]
    fn corner_of_table() {
        assert_eq!(table(1, NormalizationMode::LogQ, &int(1)).unwrap(), alloc::vec![alloc::vec![rat(1, 288)]]);
        let half = table(2, NormalizationMode::LogQ, &rat(1, 2)).unwrap();
        for a in 1..=2u32 {
            for b in 1..=2u32 {
                assert_eq!(half[a as usize - 1][b as usize - 1], log(&[a, b]).eval(&rat(1, 2)).unwrap());
            }
        }
    }

    #[test]
    fn guard_independence() {
        for ks in [[1u32, 3], [3, 1], [2, 3]] {
            let a = renormalised_mzv_with_guard(&sig(&ks), NormalizationMode::LogQ, 2).unwrap().value;
            let b = renormalised_mzv_with_guard(&sig(&ks), NormalizationMode::LogQ, 5).unwrap().value;
            assert_eq!(a, b);
            assert!(positive_denominator_roots(&a).is_empty());
        }
    }
}
