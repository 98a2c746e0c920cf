//! JSON records. Rationals are carried as decimal strings so that values
//! such as 199275989809861/128121575662080000 survive any JSON reader.

use num_bigint::BigInt;
use qzeta_core::arith::{format_rational, RatFunc, Rational};
use qzeta_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl RationalJson {
    pub fn from_rational(r: &Rational) -> Self {
        Self { num: r.numer().to_string(), den: r.denom().to_string() }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        let num: BigInt = self.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", self.num)))?;
        let den: BigInt = self.den.parse().map_err(|_| Error::Parse(format!("bad denominator {:?}", self.den)))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(num, den))
    }
}

/// Integer-coefficient polynomials, ascending powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
    /// Human-readable form, e.g. `(166t^2+166t+31)/(129024t^2+129024t+24192)`.
    pub text: String,
}

impl RatFuncJson {
    pub fn from_ratfunc(f: &RatFunc) -> Self {
        let (num, den) = f.integer_form();
        Self {
            num: num.iter().map(ToString::to_string).collect(),
            den: den.iter().map(ToString::to_string).collect(),
            text: f.to_string(),
        }
    }

    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        let parse = |v: &[String]| -> Result<Vec<BigInt>> {
            v.iter().map(|s| s.parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))).collect()
        };
        RatFunc::from_integer_form(&parse(&self.num)?, &parse(&self.den)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValuePayload {
    Rational(RationalJson),
    RationalFunction(RatFuncJson),
    /// Decimal approximations plus the exact value at the rational point used.
    Complex { re: String, im: String, exact_re: RationalJson, exact_im: RationalJson },
}

impl ValuePayload {
    pub fn plain(&self) -> String {
        match self {
            ValuePayload::Rational(r) => match r.to_rational() {
                Ok(v) => format_rational(&v),
                Err(_) => format!("{}/{}", r.num, r.den),
            },
            ValuePayload::RationalFunction(f) => f.text.clone(),
            ValuePayload::Complex { re, im, .. } => {
                if im.starts_with('-') {
                    format!("{re}{im}i")
                } else {
                    format!("{re}+{im}i")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Negative arguments, e.g. `[-1, -3]`.
    pub signature: Vec<i64>,
    /// `log` or `1mq`.
    pub mode: String,
    /// `sym`, `p/q`, or `a+bi`.
    pub t: String,
    pub value: ValuePayload,
    pub order_used: i64,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub mode: String,
    pub t: String,
    pub max_k: u32,
    /// `rows[k1-1][k2-1]` is the value at `(-k1, -k2)`.
    pub rows: Vec<Vec<ValuePayload>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use qzeta_core::arith::{rat, Poly};

    #[test]
    fn rational_round_trip() {
        let r = Rational::new("-199275989809861".parse().unwrap(), "128121575662080000".parse().unwrap());
        let j = RationalJson::from_rational(&r);
        assert_eq!(j.num, "-199275989809861");
        assert_eq!(j.to_rational().unwrap(), r);
        assert!(RationalJson { num: "1".into(), den: "0".into() }.to_rational().is_err());
    }

    #[test]
    fn ratfunc_round_trip() {
        let f = RatFunc::new(Poly::from_ints(&[31, 166, 166]), Poly::from_ints(&[3, 16, 16]).scale(&rat(8064, 1)));
        let j = RatFuncJson::from_ratfunc(&f);
        assert_eq!(j.text, "(166t^2+166t+31)/(129024t^2+129024t+24192)");
        assert_eq!(j.num, vec!["31", "166", "166"]);
        assert_eq!(j.to_ratfunc().unwrap(), f);
    }
}
