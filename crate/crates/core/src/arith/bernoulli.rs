use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial, Rational};

/// Bernoulli numbers for the generating series `t e^t / (e^t - 1)`.
///
/// This convention has `B_1 = +1/2`; every other value agrees with the
/// classical `t / (e^t - 1)` numbers. Values are memoised in the table, so
/// long-lived owners (character tables) pay for each index once.
#[derive(Debug, Clone, Default)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: usize) -> &Rational {
        self.extend_to(n);
        &self.values[n]
    }

    fn extend_to(&mut self, n: usize) {
        // sum_{j=0}^{m} C(m+1, j) B_j = m + 1 for this convention.
        while self.values.len() <= n {
            let m = self.values.len();
            if m >= 3 && m % 2 == 1 {
                self.values.push(Rational::zero());
                continue;
            }
            let mut acc = Rational::from_integer(BigInt::from(m + 1));
            for (j, b) in self.values.iter().enumerate() {
                if !b.is_zero() {
                    acc -= b * Rational::from_integer(binomial(m as u32 + 1, j as u32));
                }
            }
            self.values.push(acc / Rational::from_integer(BigInt::from(m + 1)));
        }
    }
}

/// `B_n` with `B_1 = +1/2`. Builds a fresh table; hold a [`BernoulliTable`]
/// when many values are needed.
pub fn bernoulli(n: usize) -> Rational {
    BernoulliTable::new().get(n).clone()
}
