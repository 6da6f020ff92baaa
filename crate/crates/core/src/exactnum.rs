//! Exact arithmetic kernel.
//!
//! Everything numeric in this crate is a [`Rational`] (a normalized big
//! rational) or an integer. Quantities such as `c^j / q^(1+j)` are never
//! evaluated; instead both sides of an inequality are raised to a common
//! integer power and compared as integers ([`cmp_pow`], [`cmp_products`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid interval literal {0:?}")]
    BadInterval(String),
    #[error("interval endpoints out of order: {lo} > {hi}")]
    Reversed { lo: String, hi: String },
    #[error("{0} is not usable as an exponent (need a nonnegative ratio of 32-bit integers)")]
    BadExponent(String),
}

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, NumError> {
        let den = den.into();
        if den.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// `num/den` from machine integers.
    ///
    /// Panics if `den == 0`; meant for constants and tests.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^-t`.
    pub fn pow2_neg(t: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << t as usize))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Fractional part `x - floor(x)`, in `[0, 1)`.
    pub fn fract_part(&self) -> Self {
        Rational(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational(Pow::pow(&self.0, e))
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Lossy conversion, only for human-facing summaries.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Rational {
    type Err = NumError;

    /// Accepts `"-3/8"`, `"5"`, `"0"`. No whitespace, no signed denominators.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumError::BadRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = num.strip_prefix('-').unwrap_or(num);
        if !is_digits(digits) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        match den {
            None => Ok(Rational::from_integer(num)),
            Some(d) => {
                if !is_digits(d) {
                    return Err(bad());
                }
                let d: BigInt = d.parse().map_err(|_| bad())?;
                Rational::new(num, d)
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RInterval {
    lo: Rational,
    hi: Rational,
}

impl RInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, NumError> {
        if lo > hi {
            return Err(NumError::Reversed {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(RInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RInterval { lo: x.clone(), hi: x }
    }

    /// `[lo, lo + len]`; `len` must be nonnegative.
    pub fn with_length(lo: Rational, len: &Rational) -> Result<Self, NumError> {
        let hi = &lo + len;
        Self::new(lo, hi)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2)
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether `inner` is a subset of `self`.
    pub fn contains(&self, inner: &RInterval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    pub fn intersects(&self, other: &RInterval) -> bool {
        intervals_intersect(self, other)
    }

    /// Distance from `x` to the nearest point of the interval; zero inside.
    pub fn distance_to(&self, x: &Rational) -> Rational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lo, self.hi)
    }
}

impl fmt::Debug for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl FromStr for RInterval {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(',')
            .ok_or_else(|| NumError::BadInterval(s.to_string()))?;
        RInterval::new(lo.parse()?, hi.parse()?)
    }
}

/// Closed-interval intersection test; a shared endpoint counts.
pub fn intervals_intersect(a: &RInterval, b: &RInterval) -> bool {
    std::cmp::max(&a.lo, &b.lo) <= std::cmp::min(&a.hi, &b.hi)
}

/// Orders `a` against `b^(u/v)` for `a, b >= 0` by comparing `a^v` with `b^u`.
pub fn cmp_pow(a: &Rational, b: &Rational, u: u32, v: u32) -> Ordering {
    debug_assert!(!a.is_negative() && !b.is_negative(), "cmp_pow needs nonnegative inputs");
    let lhs = Pow::pow(a.numer(), v) * Pow::pow(b.denom(), u);
    let rhs = Pow::pow(b.numer(), u) * Pow::pow(a.denom(), v);
    lhs.cmp(&rhs)
}

/// `floor(n^(1/k))`.
pub fn ifloor_root(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root index must be positive");
    n.nth_root(k)
}

/// `ceil(n^(1/k))`.
pub fn iceil_root(n: &BigUint, k: u32) -> BigUint {
    let r = ifloor_root(n, k);
    if &Pow::pow(&r, k) == n {
        r
    } else {
        r + 1u32
    }
}

/// `n^(1/k)` when it is an integer.
pub fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = ifloor_root(n, k);
    (&Pow::pow(&r, k) == n).then_some(r)
}

/// Nonnegative integer part of a rational as a `BigUint`; negative values
/// clamp to zero.
pub(crate) fn to_biguint_clamped(n: &BigInt) -> BigUint {
    n.to_biguint().unwrap_or_default()
}

/// Nonnegative rational exponent `num/den` with small parts, kept in lowest
/// terms. Used for the weights `i`, `j` and derived powers like `i/(1+j)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Exponent {
    num: u32,
    den: u32,
}

impl Exponent {
    pub const ONE: Exponent = Exponent { num: 1, den: 1 };
    pub const ZERO: Exponent = Exponent { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, NumError> {
        if den == 0 {
            return Err(NumError::ZeroDenominator);
        }
        let g = num.gcd(&den).max(1);
        let (n, d) = (num / g, den / g);
        match (u32::try_from(n), u32::try_from(d)) {
            (Ok(num), Ok(den)) => Ok(Exponent { num, den }),
            _ => Err(NumError::BadExponent(format!("{num}/{den}"))),
        }
    }

    pub fn from_rational(x: &Rational) -> Result<Self, NumError> {
        let bad = || NumError::BadExponent(x.to_string());
        if x.is_negative() {
            return Err(bad());
        }
        let n = x.numer().to_u64().ok_or_else(bad)?;
        let d = x.denom().to_u64().ok_or_else(bad)?;
        Exponent::new(n, d).map_err(|_| bad())
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::frac(self.num as i64, self.den as i64)
    }

    pub fn checked_add(self, o: Exponent) -> Result<Exponent, NumError> {
        let n = self.num as u64 * o.den as u64 + o.num as u64 * self.den as u64;
        Exponent::new(n, self.den as u64 * o.den as u64)
    }

    pub fn checked_mul(self, o: Exponent) -> Result<Exponent, NumError> {
        Exponent::new(self.num as u64 * o.num as u64, self.den as u64 * o.den as u64)
    }

    pub fn checked_div(self, o: Exponent) -> Result<Exponent, NumError> {
        if o.num == 0 {
            return Err(NumError::ZeroDenominator);
        }
        Exponent::new(self.num as u64 * o.den as u64, self.den as u64 * o.num as u64)
    }

    pub fn scale(self, k: u32) -> Result<Exponent, NumError> {
        Exponent::new(self.num as u64 * k as u64, self.den as u64)
    }

    /// `1/self`.
    pub fn inverse(self) -> Result<Exponent, NumError> {
        Exponent::ONE.checked_div(self)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Compares `prod lhs[k].0^lhs[k].1` against `prod rhs[k].0^rhs[k].1`.
///
/// All bases must be nonnegative. Both products are raised to the lcm of the
/// exponent denominators and compared as integers after clearing
/// denominators.
pub fn cmp_products(lhs: &[(&Rational, Exponent)], rhs: &[(&Rational, Exponent)]) -> Ordering {
    let l = lhs
        .iter()
        .chain(rhs)
        .fold(1u64, |acc, (_, e)| acc.lcm(&(e.den() as u64)));
    let side = |terms: &[(&Rational, Exponent)]| -> (BigInt, BigInt) {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (base, e) in terms {
            debug_assert!(!base.is_negative());
            let p = e.num() as u64 * (l / e.den() as u64);
            let p = u32::try_from(p).expect("exponent overflow in cmp_products");
            num *= Pow::pow(base.numer(), p);
            den *= Pow::pow(base.denom(), p);
        }
        (num, den)
    };
    let (ln, ld) = side(lhs);
    let (rn, rd) = side(rhs);
    (ln * rd).cmp(&(rn * ld))
}

/// A product of rational powers `prod base_k^(e_k)` of nonnegative
/// rationals; an exact representation of values like `(4R/|B|)^(-1/j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerProduct {
    terms: Vec<(Rational, Exponent)>,
}

impl PowerProduct {
    pub fn new(terms: Vec<(Rational, Exponent)>) -> Self {
        debug_assert!(terms.iter().all(|(b, _)| !b.is_negative()));
        PowerProduct { terms }
    }

    pub fn terms(&self) -> &[(Rational, Exponent)] {
        &self.terms
    }

    fn refs(&self) -> Vec<(&Rational, Exponent)> {
        self.terms.iter().map(|(b, e)| (b, *e)).collect()
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        cmp_products(&self.refs(), &[(x, Exponent::ONE)])
    }

    pub fn cmp_product(&self, other: &PowerProduct) -> Ordering {
        cmp_products(&self.refs(), &other.refs())
    }

    /// The exact value when every factor is a perfect power.
    pub fn to_rational(&self) -> Option<Rational> {
        let mut acc = Rational::one();
        for (b, e) in &self.terms {
            let n = to_biguint_clamped(b.numer());
            let d = to_biguint_clamped(b.denom());
            let n = exact_root(&Pow::pow(&n, e.num()), e.den())?;
            let d = exact_root(&Pow::pow(&d, e.num()), e.den())?;
            acc = acc * Rational::new(BigInt::from(n), BigInt::from(d)).ok()?;
        }
        Some(acc)
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_rational() {
            return write!(f, "{v}");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, e)| format!("({b})^({e})"))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Rational upper bound `ceil(x^e * 2^bits) / 2^bits` for `x >= 0`.
pub fn pow_upper_bound(x: &Rational, e: Exponent, bits: u32) -> Rational {
    let scaled = pow_scaled_ceil(x, e, bits);
    Rational::new(BigInt::from(scaled), BigInt::one() << bits as usize).expect("nonzero")
}

/// `ceil(x^e * 2^bits)` as an integer, `x >= 0`.
pub fn pow_scaled_ceil(x: &Rational, e: Exponent, bits: u32) -> BigUint {
    // x^(u/v) * 2^bits = (x^u * 2^(bits*v))^(1/v)
    let u = e.num();
    let v = e.den();
    let num = to_biguint_clamped(x.numer());
    let den = to_biguint_clamped(x.denom());
    let top = Pow::pow(&num, u) << (bits as usize * v as usize);
    let bottom = Pow::pow(&den, u);
    let (q, r) = top.div_rem(&bottom);
    let ceil = if r.is_zero() { q } else { q + 1u32 };
    iceil_root(&ceil, v)
}

/// `floor(frac(x) * 2^128)`.
pub fn fract_fixed128(x: &Rational) -> u128 {
    let f = x.fract_part();
    let n = to_biguint_clamped(f.numer()) << 128usize;
    let d = to_biguint_clamped(f.denom());
    (n / d).to_u128().expect("fractional part below one")
}

/// `ceil(x * 2^128)` if it fits in a `u128`, for `x >= 0`.
pub fn ceil_fixed128(x: &Rational) -> Option<u128> {
    if x.is_negative() {
        return None;
    }
    let n = to_biguint_clamped(x.numer()) << 128usize;
    let d = to_biguint_clamped(x.denom());
    let (q, r) = n.div_rem(&d);
    let c = if r.is_zero() { q } else { q + 1u32 };
    c.to_u128()
}

/// Sign helper for `BigInt`s, mapping to `Ordering` against zero.
pub(crate) fn sign_of(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn cmp_pow_examples() {
        assert_eq!(cmp_pow(&q("1/2"), &q("1/4"), 1, 3), Ordering::Less);
        assert_eq!(cmp_pow(&q("2"), &q("8"), 1, 3), Ordering::Equal);
        assert_eq!(cmp_pow(&q("3/4"), &q("1/2"), 1, 2), Ordering::Greater);
    }

    #[test]
    fn floor_root_examples() {
        assert_eq!(ifloor_root(&BigUint::from(8u32), 3), BigUint::from(2u32));
        assert_eq!(ifloor_root(&BigUint::from(80u32), 3), BigUint::from(4u32));
        assert_eq!(ifloor_root(&BigUint::from(1u32), 7), BigUint::from(1u32));
        assert_eq!(iceil_root(&BigUint::from(65u32), 3), BigUint::from(5u32));
        assert_eq!(iceil_root(&BigUint::from(64u32), 3), BigUint::from(4u32));
    }

    #[test]
    fn interval_intersection_examples() {
        let i = |s: &str| -> RInterval { s.parse().unwrap() };
        assert!(intervals_intersect(&i("0,1/2"), &i("1/2,1")));
        assert!(!intervals_intersect(&i("0,1/4"), &i("1/2,1")));
        assert!(intervals_intersect(&i("0,1"), &i("1/3,2/3")));
    }

    #[test]
    fn literals() {
        assert_eq!(q("-3/8").to_string(), "-3/8");
        assert_eq!(q("10/2").to_string(), "5");
        assert_eq!(q("0").to_string(), "0");
        for bad in ["", "1/0", "1/-2", " 1", "1.5", "a/b", "-", "1/"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} accepted");
        }
        let iv: RInterval = "-1,3".parse().unwrap();
        assert_eq!(iv.length(), q("4"));
        assert!("1,0".parse::<RInterval>().is_err());
        assert_eq!("0,1/4".parse::<RInterval>().unwrap().to_string(), "0,1/4");
    }

    #[test]
    fn products_and_exact_roots() {
        // (1/32)^(2) vs 1/1024
        let p = PowerProduct::new(vec![(q("1/32"), Exponent::new(2, 1).unwrap())]);
        assert_eq!(p.to_rational(), Some(q("1/1024")));
        // (1/4)^2 * (1/8)^(2/3) = 1/16 * 1/4
        let p = PowerProduct::new(vec![
            (q("1/4"), Exponent::new(1, 1).unwrap()),
            (q("1/8"), Exponent::new(2, 3).unwrap()),
        ]);
        assert_eq!(p.to_rational(), Some(q("1/16")));
        let sqrt2 = PowerProduct::new(vec![(q("2"), Exponent::new(1, 2).unwrap())]);
        assert_eq!(sqrt2.to_rational(), None);
        assert_eq!(sqrt2.cmp_rational(&q("1414/1000")), Ordering::Greater);
        assert_eq!(sqrt2.cmp_rational(&q("1415/1000")), Ordering::Less);
    }

    #[test]
    fn fixed_point_bounds() {
        assert_eq!(fract_fixed128(&q("1/2")), 1u128 << 127);
        assert_eq!(fract_fixed128(&q("-1/4")), 3u128 << 126);
        assert_eq!(ceil_fixed128(&q("1/4")), Some(1u128 << 126));
        assert_eq!(ceil_fixed128(&q("1")), None);
        let ub = pow_upper_bound(&q("2"), Exponent::new(1, 2).unwrap(), 64);
        assert_eq!(ub.cmp(&q("1414213562373095/1000000000000000")), Ordering::Greater);
        assert_eq!(ub.cmp(&q("1414213562373096/1000000000000000")), Ordering::Less);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::frac(n, d))
    }

    fn arb_nonneg() -> impl Strategy<Value = Rational> {
        (0..1_000_000i64, 1..1_000_000i64).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(x in arb_rational()) {
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn floor_root_brackets(digits in "[1-9][0-9]{0,59}", k in 1u32..9) {
            let n: BigUint = digits.parse().unwrap();
            let r = ifloor_root(&n, k);
            prop_assert!(Pow::pow(&r, k) <= n);
            prop_assert!(Pow::pow(&(r + 1u32), k) > n);
        }

        #[test]
        fn cmp_pow_equal_iff_integer_identity(a in arb_nonneg(), b in arb_nonneg(), u in 1u32..5, v in 1u32..5) {
            let eq = cmp_pow(&a, &b, u, v) == Ordering::Equal;
            prop_assert_eq!(eq, a.pow(v) == b.pow(u));
        }

        #[test]
        fn cmp_pow_matches_floats_away_from_ties(a in arb_nonneg(), b in arb_nonneg(), u in 1u32..5, v in 1u32..5) {
            let af = a.to_f64_lossy();
            let bf = b.to_f64_lossy().powf(u as f64 / v as f64);
            prop_assume!((af - bf).abs() > 1e-6);
            let expected = if af < bf { Ordering::Less } else { Ordering::Greater };
            prop_assert_eq!(cmp_pow(&a, &b, u, v), expected);
        }
    }
}
