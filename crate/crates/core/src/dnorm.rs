//! Digit sequences `D = (d_n)` and the pseudo-norm `|q|_D = 1/D_{omega(q)}`,
//! where `D_n = d_1 * ... * d_n` and `omega(q)` is the largest `n` with
//! `D_n | q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DNormError {
    #[error("sequence entries must be at least 2, got {0}")]
    DigitTooSmall(u32),
    #[error("sequence period must be nonempty")]
    EmptyPeriod,
    #[error("invalid sequence literal {0:?} (expected e.g. \"per:2\", \"pre:5|per:2,3\")")]
    BadLiteral(String),
    #[error("|q|_D is undefined at q = 0")]
    ZeroArgument,
}

/// An eventually periodic sequence of integers `>= 2`.
///
/// `d_n` (1-based) is `preperiod[n-1]` while `n <= preperiod.len()`, after
/// which the period repeats.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DigitSequence {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl DigitSequence {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self, DNormError> {
        if period.is_empty() {
            return Err(DNormError::EmptyPeriod);
        }
        if let Some(&d) = preperiod.iter().chain(&period).find(|&&d| d < 2) {
            return Err(DNormError::DigitTooSmall(d));
        }
        Ok(DigitSequence { preperiod, period })
    }

    pub fn constant(d: u32) -> Result<Self, DNormError> {
        Self::new(Vec::new(), vec![d])
    }

    pub fn periodic(period: Vec<u32>) -> Result<Self, DNormError> {
        Self::new(Vec::new(), period)
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// `d_n` for `n >= 1`.
    pub fn digit(&self, n: usize) -> u32 {
        assert!(n >= 1, "digit sequences are indexed from 1");
        let k = n - 1;
        if k < self.preperiod.len() {
            self.preperiod[k]
        } else {
            self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn max_digit(&self) -> u32 {
        self.preperiod.iter().chain(&self.period).copied().max().unwrap_or(2)
    }

    /// `D_n`, with `D_0 = 1`.
    pub fn capital_d(&self, n: u32) -> BigUint {
        (1..=n as usize).fold(BigUint::one(), |acc, k| acc * self.digit(k))
    }

    /// `omega(q)`: the largest `n` with `D_n | q`.
    pub fn omega(&self, q: &BigUint) -> Result<u32, DNormError> {
        if q.is_zero() {
            return Err(DNormError::ZeroArgument);
        }
        let mut rest = q.clone();
        let mut n = 0u32;
        loop {
            let d = BigUint::from(self.digit(n as usize + 1));
            let (quot, rem) = rest.div_rem(&d);
            if !rem.is_zero() {
                return Ok(n);
            }
            rest = quot;
            n += 1;
        }
    }

    /// `(omega(q), D_omega(q))` for machine-sized `q`.
    pub fn omega_u64(&self, q: u64) -> Result<(u32, u64), DNormError> {
        if q == 0 {
            return Err(DNormError::ZeroArgument);
        }
        let mut rest = q;
        let mut big_d = 1u64;
        let mut n = 0u32;
        loop {
            let d = self.digit(n as usize + 1) as u64;
            if !rest.is_multiple_of(d) {
                return Ok((n, big_d));
            }
            rest /= d;
            big_d *= d;
            n += 1;
        }
    }

    pub fn d_norm(&self, q: &BigUint) -> Result<DNormValue, DNormError> {
        let level = self.omega(q)?;
        let value = Rational::new(1, BigInt::from(self.capital_d(level))).expect("D_n is positive");
        Ok(DNormValue { level, value })
    }

    pub fn d_norm_u64(&self, q: u64) -> Result<DNormValue, DNormError> {
        let (level, big_d) = self.omega_u64(q)?;
        Ok(DNormValue {
            level,
            value: Rational::new(1, big_d).expect("D_n is positive"),
        })
    }
}

impl fmt::Display for DigitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        if !self.preperiod.is_empty() {
            write!(f, "pre:{}|", join(&self.preperiod))?;
        }
        write!(f, "per:{}", join(&self.period))
    }
}

impl FromStr for DigitSequence {
    type Err = DNormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DNormError::BadLiteral(s.to_string());
        let list = |body: &str| -> Result<Vec<u32>, DNormError> {
            body.split(',')
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect()
        };
        let (pre, per) = match s.split_once('|') {
            Some((p, rest)) => (Some(p), rest),
            None => (None, s),
        };
        let preperiod = match pre {
            Some(p) => list(p.strip_prefix("pre:").ok_or_else(bad)?)?,
            None => Vec::new(),
        };
        let period = list(per.strip_prefix("per:").ok_or_else(bad)?)?;
        DigitSequence::new(preperiod, period)
    }
}

/// `|q|_D` together with the level `omega(q)` it came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DNormValue {
    pub level: u32,
    pub value: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> DigitSequence {
        s.parse().unwrap()
    }

    #[test]
    fn capital_d_examples() {
        assert_eq!(seq("per:2").capital_d(3), BigUint::from(8u32));
        assert_eq!(seq("per:2,3").capital_d(4), BigUint::from(36u32));
        assert_eq!(seq("pre:5|per:2,3").capital_d(0), BigUint::one());
        assert_eq!(seq("pre:5|per:2,3").capital_d(3), BigUint::from(30u32));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(seq("per:2").omega(&12u32.into()), Ok(2));
        assert_eq!(seq("per:2").omega(&1u32.into()), Ok(0));
        assert_eq!(seq("per:2,3").omega(&24u32.into()), Ok(3));
        assert_eq!(seq("per:2").omega(&BigUint::zero()), Err(DNormError::ZeroArgument));
        assert_eq!(seq("per:2").omega_u64(0), Err(DNormError::ZeroArgument));
    }

    #[test]
    fn norm_examples() {
        let v = seq("per:2").d_norm(&12u32.into()).unwrap();
        assert_eq!(v.value, Rational::frac(1, 4));
        assert_eq!(seq("per:2").d_norm_u64(7).unwrap().value, Rational::one());
        assert_eq!(seq("per:2,3").d_norm_u64(24).unwrap().value, Rational::frac(1, 12));
    }

    #[test]
    fn literal_syntax() {
        for s in ["per:2", "per:2,3", "pre:5|per:2,3", "pre:7,4|per:3"] {
            assert_eq!(seq(s).to_string(), s);
        }
        for bad in ["2", "per:", "per:1", "pre:5", "per:2|pre:3", "pre:1|per:2", "per:2,,3"] {
            assert!(bad.parse::<DigitSequence>().is_err(), "{bad:?} accepted");
        }
        assert_eq!(seq("pre:5|per:2,3").digit(1), 5);
        assert_eq!(seq("pre:5|per:2,3").digit(4), 2);
    }

    fn arb_seq() -> impl Strategy<Value = DigitSequence> {
        (
            prop::collection::vec(2u32..7, 0..3),
            prop::collection::vec(2u32..7, 1..4),
        )
            .prop_map(|(a, b)| DigitSequence::new(a, b).unwrap())
    }

    proptest! {
        #[test]
        fn omega_bounded_by_log2(s in arb_seq(), q in 1u64..1_000_000_000) {
            let (w, _) = s.omega_u64(q).unwrap();
            prop_assert!(w <= 63 - q.leading_zeros());
        }

        #[test]
        fn big_and_small_paths_agree(s in arb_seq(), q in 1u64..u64::MAX) {
            let (w, d) = s.omega_u64(q).unwrap();
            prop_assert_eq!(s.omega(&BigUint::from(q)).unwrap(), w);
            prop_assert_eq!(s.capital_d(w), BigUint::from(d));
        }

        #[test]
        fn multiples_of_capital_d_are_small(s in arb_seq(), n in 0u32..8, m in 1u64..10_000) {
            let dn = s.capital_d(n);
            let q = &dn * m;
            let v = s.d_norm(&q).unwrap().value;
            let bound = Rational::new(1, BigInt::from(dn.clone())).unwrap();
            prop_assert!(v <= bound);
        }

        #[test]
        fn capital_d_grows(s in arb_seq(), n in 0u32..20) {
            let a = s.capital_d(n);
            let b = s.capital_d(n + 1);
            prop_assert!(b > a);
            prop_assert!(a >= BigUint::one() << n as usize);
        }
    }
}
