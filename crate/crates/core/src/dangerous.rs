//! Dangerous rationals and their forbidden neighbourhoods.
//!
//! A reduced fraction `r/q` is dangerous for `(i, j, c, D)` when
//! `|q|_D < (c/q)^i`; its forbidden interval is
//! `Delta(r/q) = [r/q - c^j/q^(1+j), r/q + c^j/q^(1+j)]`. The endpoints of
//! `Delta` are irrational in general and are never built: every predicate
//! here is an exact comparison of rational powers.
//!
//! The same machinery covers several norm terms at once (`s >= 1` digit
//! sequences with weights `i_1 + ... + i_s + j = 1`): `q` is then dangerous
//! when every term is below `c/q`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dnorm::DigitSequence;
use crate::exactnum::{
    cmp_pow, fract_fixed128, iceil_root, ifloor_root, pow_scaled_ceil, to_biguint_clamped,
    ceil_fixed128, Exponent, NumError, RInterval, Rational,
};

/// Below this denominator the enumerators test every `q` directly.
pub const NAIVE_BELOW: u64 = 10_000;

/// Largest denominator the enumerators accept.
pub const Q_LIMIT: u64 = 1 << 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DangerError {
    #[error("weight {0} must lie strictly between 0 and 1")]
    ExponentRange(String),
    #[error("weights must sum to 1, got {0}")]
    ExponentSum(String),
    #[error("the constant c must be positive, got {0}")]
    NonPositiveC(Rational),
    #[error("at least one norm term is required")]
    NoNorms,
    #[error("band ratio R must exceed 1, got {0}")]
    RatioTooSmall(Rational),
    #[error("band index must be at least 1")]
    ZeroBand,
    #[error("denominator bound exceeds 2^62")]
    QOverflow,
    #[error(transparent)]
    Num(#[from] NumError),
}

/// One `|q|_D^(1/i)` term of the approximation function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormTerm {
    pub seq: DigitSequence,
    pub exponent: Exponent,
}

/// Digit sequences and weights, without the constant `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiNormParams {
    norms: Vec<NormTerm>,
    j: Exponent,
}

fn open_unit(e: Exponent) -> Result<Exponent, DangerError> {
    if e.is_zero() || e.num() >= e.den() {
        return Err(DangerError::ExponentRange(e.to_string()));
    }
    Ok(e)
}

impl MultiNormParams {
    pub fn new(norms: Vec<NormTerm>, j: Exponent) -> Result<Self, DangerError> {
        if norms.is_empty() {
            return Err(DangerError::NoNorms);
        }
        open_unit(j)?;
        let mut sum = j;
        for n in &norms {
            open_unit(n.exponent)?;
            sum = sum.checked_add(n.exponent)?;
        }
        if sum != Exponent::ONE {
            return Err(DangerError::ExponentSum(sum.to_string()));
        }
        Ok(MultiNormParams { norms, j })
    }

    /// The single-norm case `i + j = 1`.
    pub fn single(i: &Rational, j: &Rational, seq: DigitSequence) -> Result<Self, DangerError> {
        let exponent = Exponent::from_rational(i)?;
        let j = Exponent::from_rational(j)?;
        Self::new(vec![NormTerm { seq, exponent }], j)
    }

    pub fn norms(&self) -> &[NormTerm] {
        &self.norms
    }

    pub fn j(&self) -> Exponent {
        self.j
    }

    /// Weight of the first norm term.
    pub fn i(&self) -> Exponent {
        self.norms[0].exponent
    }

    pub fn with_c(&self, c: Rational) -> Result<ApproxParams, DangerError> {
        ApproxParams::from_parts(self.clone(), c)
    }
}

/// Precomputed integer data for testing `c^u * D^v > (q)^u` with `c = cn/cd`.
#[derive(Clone, Debug)]
struct NormCheck {
    u: u32,
    v: u32,
    cn_u: BigUint,
    cd: BigUint,
    cn_u_small: Option<u128>,
    cd_small: Option<u128>,
}

impl NormCheck {
    fn new(e: Exponent, c: &Rational) -> Self {
        let cn = to_biguint_clamped(c.numer());
        let cd = to_biguint_clamped(c.denom());
        let cn_u = Pow::pow(&cn, e.num());
        NormCheck {
            u: e.num(),
            v: e.den(),
            cn_u_small: cn_u.to_u128(),
            cd_small: cd.to_u128(),
            cn_u,
            cd,
        }
    }

    /// Whether `1/big_d` is below (`strict`) or at most `(c/q)^(u/v)`.
    fn below(&self, big_d: u64, q: u64, strict: bool) -> bool {
        // (1/D)^v < (c/q)^u  <=>  cn^u * D^v > (cd*q)^u
        let ord = self.cmp_sides(big_d, q);
        if strict {
            ord == Ordering::Greater
        } else {
            ord != Ordering::Less
        }
    }

    fn cmp_sides(&self, big_d: u64, q: u64) -> Ordering {
        if let (Some(a), Some(cd)) = (self.cn_u_small, self.cd_small) {
            let lhs = (big_d as u128).checked_pow(self.v).and_then(|x| x.checked_mul(a));
            let rhs = cd.checked_mul(q as u128).and_then(|x| x.checked_pow(self.u));
            if let (Some(l), Some(r)) = (lhs, rhs) {
                return l.cmp(&r);
            }
        }
        let lhs = &self.cn_u * Pow::pow(BigUint::from(big_d), self.v);
        let rhs = Pow::pow(&self.cd * q, self.u);
        lhs.cmp(&rhs)
    }

    /// Largest `q` with `(cd*q)^u < cn^u * D^v` (or `<=` when not strict).
    fn level_q_max(&self, big_d: u64, strict: bool) -> u64 {
        let x = &self.cn_u * Pow::pow(BigUint::from(big_d), self.v);
        let y = if strict {
            ifloor_root(&(x - 1u32), self.u)
        } else {
            ifloor_root(&x, self.u)
        };
        (y / &self.cd).to_u64().unwrap_or(u64::MAX)
    }
}

/// The full parameter set `(i_1..i_s, j, c, D_1..D_s)`.
#[derive(Clone, Debug)]
pub struct ApproxParams {
    target: MultiNormParams,
    c: Rational,
    checks: Vec<NormCheck>,
    /// `ceil(c^j * 2^128)` when it fits.
    cj_fixed: Option<u128>,
    /// An integer upper bound for `c^j`.
    cj_ceil: BigInt,
}

impl PartialEq for ApproxParams {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.c == other.c
    }
}

impl ApproxParams {
    /// Single-norm parameters; checks `0 < i, j < 1`, `i + j = 1`, `c > 0`.
    pub fn new(i: &Rational, j: &Rational, c: Rational, seq: DigitSequence) -> Result<Self, DangerError> {
        MultiNormParams::single(i, j, seq)?.with_c(c)
    }

    fn from_parts(target: MultiNormParams, c: Rational) -> Result<Self, DangerError> {
        if !c.is_positive() {
            return Err(DangerError::NonPositiveC(c));
        }
        let checks = target.norms.iter().map(|n| NormCheck::new(n.exponent, &c)).collect();
        let cj_fixed = pow_scaled_ceil(&c, target.j, 128).to_u128();
        let cj_ceil = if c <= Rational::one() {
            BigInt::one()
        } else {
            c.ceil()
        };
        Ok(ApproxParams { target, c, checks, cj_fixed, cj_ceil })
    }

    pub fn target(&self) -> &MultiNormParams {
        &self.target
    }

    pub fn norms(&self) -> &[NormTerm] {
        &self.target.norms
    }

    pub fn i(&self) -> Exponent {
        self.target.i()
    }

    pub fn j(&self) -> Exponent {
        self.target.j
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn seq(&self) -> &DigitSequence {
        &self.target.norms[0].seq
    }

    pub fn with_c(&self, c: Rational) -> Result<Self, DangerError> {
        Self::from_parts(self.target.clone(), c)
    }

    /// `|q|_D < (c/q)^i` for every norm term.
    pub fn is_dangerous_q(&self, q: u64) -> bool {
        self.all_below(q, true)
    }

    /// `|q|_D <= (c/q)^i` for every norm term: the `q` for which the direct
    /// definition has to look at `||qx||`.
    pub fn needs_distance_check(&self, q: u64) -> bool {
        self.all_below(q, false)
    }

    fn all_below(&self, q: u64, strict: bool) -> bool {
        assert!(q >= 1, "denominators start at 1");
        self.target.norms.iter().zip(&self.checks).all(|(n, chk)| {
            let (_, big_d) = n.seq.omega_u64(q).expect("q >= 1");
            chk.below(big_d, q, strict)
        })
    }

    /// Closed membership `x in Delta(r/q)`.
    pub fn point_in_delta(&self, r: &BigInt, q: u64, x: &Rational) -> bool {
        self.interval_meets_delta(r, q, &RInterval::point(x.clone()))
    }

    /// Whether `Delta(r/q)` meets `interval`; tangency counts.
    pub fn interval_meets_delta(&self, r: &BigInt, q: u64, interval: &RInterval) -> bool {
        let qr = Rational::from_integer(q);
        let centre = Rational::new(r.clone(), q).expect("q >= 1");
        let dist = interval.distance_to(&centre);
        // dist <= c^j / q^(1+j)  <=>  dist*q <= (c/q)^j
        let lhs = dist * &qr;
        let rhs = &self.c / &qr;
        cmp_pow(&lhs, &rhs, self.j().num(), self.j().den()) != Ordering::Greater
    }

    /// `dist(qI, Z) <= (c/q)^j`: the direct definition fails at this `q`
    /// for some `x` in the interval (when `q` needs a distance check).
    pub fn distance_fails(&self, q: u64, min_dist: &Rational) -> bool {
        let rhs = &self.c / Rational::from_integer(q);
        cmp_pow(min_dist, &rhs, self.j().num(), self.j().den()) != Ordering::Greater
    }

    /// Largest `q >= 0` with `q^(1+j) < R^t`.
    pub fn largest_q_below(&self, ratio: &Rational, t: u32) -> Result<u64, DangerError> {
        let (v, e) = (self.j().den(), self.j().num() + self.j().den());
        let x = ratio.pow(t * v);
        let top = to_biguint_clamped(&(x.ceil() - 1));
        to_q(ifloor_root(&top, e))
    }

    /// Smallest `q >= 1` with `q^(1+j) >= R^t`.
    pub fn smallest_q_reaching(&self, ratio: &Rational, t: u32) -> Result<u64, DangerError> {
        let (v, e) = (self.j().den(), self.j().num() + self.j().den());
        let x = ratio.pow(t * v);
        let q = iceil_root(&to_biguint_clamped(&x.ceil()), e);
        Ok(to_q(q)?.max(1))
    }

    /// The denominators of band `n`: `R^(n-1) <= q^(1+j) < R^n`.
    pub fn band_q_range(&self, ratio: &Rational, n: u32) -> Result<QRange, DangerError> {
        check_ratio(ratio)?;
        if n == 0 {
            return Err(DangerError::ZeroBand);
        }
        Ok(QRange {
            lo: self.smallest_q_reaching(ratio, n - 1)?,
            hi: self.largest_q_below(ratio, n)?,
        })
    }

    /// Largest `q` covered after `a_moves` moves of the avoiding player:
    /// `q^(1+j) < R^(a_moves - 1)`. Zero when nothing is covered yet.
    pub fn horizon(&self, ratio: &Rational, a_moves: u32) -> Result<u64, DangerError> {
        check_ratio(ratio)?;
        if a_moves <= 1 {
            return Ok(0);
        }
        self.largest_q_below(ratio, a_moves - 1)
    }

    /// Every dangerous rational of band `n` whose `Delta` meets `interval`,
    /// sorted by `(q, r)`.
    pub fn enumerate_dangerous_in(
        &self,
        ratio: &Rational,
        n: u32,
        interval: &RInterval,
    ) -> Result<Vec<DangerousRational>, DangerError> {
        let band = self.band_q_range(ratio, n)?;
        Ok(self.dangerous_meeting(band, interval))
    }

    /// Every dangerous `r/q` with `q` in `range` whose `Delta` meets
    /// `interval`, sorted by `(q, r)`.
    pub fn dangerous_meeting(&self, range: QRange, interval: &RInterval) -> Vec<DangerousRational> {
        let probe = IntervalProbe::new(self, interval);
        let mut out = Vec::new();
        self.for_each_dangerous_q(range, |q| {
            if probe.may_be_near(q) {
                probe.collect_meeting(q, &mut out);
            }
        });
        out.sort();
        out
    }

    /// First dangerous `r/q` with `q` in `range` whose `Delta` meets
    /// `interval`, if any (not necessarily the smallest).
    pub fn any_dangerous_meeting(&self, range: QRange, interval: &RInterval) -> Option<DangerousRational> {
        let probe = IntervalProbe::new(self, interval);
        let mut found = None;
        let mut buf = Vec::new();
        self.try_for_each_candidate(range, true, |q| {
            if probe.may_be_near(q) {
                probe.collect_meeting(q, &mut buf);
                if let Some(w) = buf.pop() {
                    found = Some(w);
                    return false;
                }
            }
            true
        });
        found
    }

    /// Sorted dangerous denominators in `range`.
    pub fn dangerous_qs(&self, range: QRange) -> Vec<u64> {
        let mut v = Vec::new();
        self.for_each_dangerous_q(range, |q| v.push(q));
        v.sort_unstable();
        v
    }

    /// Calls `f` on every dangerous `q` in `range`, in no particular order.
    pub fn for_each_dangerous_q(&self, range: QRange, mut f: impl FnMut(u64)) {
        self.try_for_each_candidate(range, true, |q| {
            f(q);
            true
        });
    }

    /// Calls `f` on every `q` in `range` with `needs_distance_check(q)`.
    pub fn for_each_distance_q(&self, range: QRange, mut f: impl FnMut(u64)) {
        self.try_for_each_candidate(range, false, |q| {
            f(q);
            true
        });
    }

    /// Some `q` in `range` with `needs_distance_check(q)` and `pred(q)`,
    /// not necessarily the smallest.
    pub fn find_distance_q(&self, range: QRange, mut pred: impl FnMut(u64) -> bool) -> Option<u64> {
        let mut hit = None;
        self.try_for_each_candidate(range, false, |q| {
            if pred(q) {
                hit = Some(q);
                return false;
            }
            true
        });
        hit
    }

    /// Enumerates by levels: a `q` with `omega(q) = k` can only qualify when
    /// `q^u < c^u D_k^v`, so each level contributes the multiples of `D_k`
    /// below that bound that are not multiples of `D_(k+1)`. Small `q` are
    /// tested one at a time. Stops early when `f` returns false.
    fn try_for_each_candidate(&self, range: QRange, strict: bool, mut f: impl FnMut(u64) -> bool) {
        if range.is_empty() {
            return;
        }
        let naive_hi = range.hi.min(NAIVE_BELOW);
        for q in range.lo..=naive_hi {
            if self.all_below(q, strict) && !f(q) {
                return;
            }
        }
        let fast_lo = range.lo.max(NAIVE_BELOW + 1);
        if fast_lo > range.hi {
            return;
        }
        let first = &self.checks[0];
        let seq = &self.target.norms[0].seq;
        let others: Vec<(&NormTerm, &NormCheck)> =
            self.target.norms.iter().zip(&self.checks).skip(1).collect();
        let mut level = 0usize;
        let mut big_d = 1u64;
        while big_d <= range.hi {
            let next = seq.digit(level + 1) as u64;
            let top = first.level_q_max(big_d, strict).min(range.hi);
            let bottom = fast_lo.max(big_d);
            if bottom <= top {
                let m_lo = bottom.div_ceil(big_d);
                let m_hi = top / big_d;
                for m in m_lo..=m_hi {
                    if m % next == 0 {
                        continue;
                    }
                    let q = m * big_d;
                    let rest_ok = others.iter().all(|(n, chk)| {
                        let (_, d) = n.seq.omega_u64(q).expect("q >= 1");
                        chk.below(d, q, strict)
                    });
                    if rest_ok && !f(q) {
                        return;
                    }
                }
            }
            match big_d.checked_mul(next) {
                Some(d) => big_d = d,
                None => break,
            }
            level += 1;
        }
    }
}

fn check_ratio(ratio: &Rational) -> Result<(), DangerError> {
    if ratio <= &Rational::one() {
        return Err(DangerError::RatioTooSmall(ratio.clone()));
    }
    Ok(())
}

fn to_q(x: BigUint) -> Result<u64, DangerError> {
    match x.to_u64() {
        Some(q) if q <= Q_LIMIT => Ok(q),
        _ => Err(DangerError::QOverflow),
    }
}

/// Inclusive range of denominators; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QRange {
    pub lo: u64,
    pub hi: u64,
}

impl QRange {
    pub fn new(lo: u64, hi: u64) -> Self {
        QRange { lo, hi }
    }

    /// `1..=hi`.
    pub fn up_to(hi: u64) -> Self {
        QRange { lo: 1, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, q: u64) -> bool {
        self.lo <= q && q <= self.hi
    }
}

/// A reduced fraction `r/q` with a dangerous denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DangerousRational {
    // field order gives the (q, r) sort
    pub q: u64,
    pub r: BigInt,
}

impl DangerousRational {
    pub fn new(r: BigInt, q: u64) -> Self {
        DangerousRational { q, r }
    }

    pub fn value(&self) -> Rational {
        Rational::new(self.r.clone(), self.q).expect("q >= 1")
    }

    pub fn to_record(&self) -> RqRecord {
        RqRecord {
            r: big_to_json(&self.r),
            q: self.q,
        }
    }
}

impl fmt::Display for DangerousRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.q)
    }
}

impl fmt::Debug for DangerousRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form `{"r": int, "q": int}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RqRecord {
    pub r: serde_json::Value,
    pub q: u64,
}

/// Integers that fit an `i64` become JSON numbers, larger ones strings.
pub(crate) fn big_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

/// Per-interval data for rejecting most `q` without big-integer work.
///
/// `may_be_near(q) == false` proves that no integer lies within
/// `c^j q^(-j)` of `q*I`; anything else goes through the exact tests.
pub(crate) struct IntervalProbe<'a> {
    params: &'a ApproxParams,
    interval: &'a RInterval,
    lo_floor: Option<i128>,
    lo_frac: u128,
    width: Option<u128>,
}

/// `q * x` as the high and low parts of the 192-bit product; `high < q`.
fn mul_wide(q: u64, x: u128) -> (u64, u128) {
    let q = q as u128;
    let lo = q * (x & u64::MAX as u128);
    let hi = q * (x >> 64);
    let (low, carry) = (hi << 64).overflowing_add(lo);
    ((hi >> 64) as u64 + carry as u64, low)
}

impl<'a> IntervalProbe<'a> {
    pub(crate) fn new(params: &'a ApproxParams, interval: &'a RInterval) -> Self {
        IntervalProbe {
            params,
            interval,
            lo_floor: interval.lo().floor().to_i128(),
            lo_frac: fract_fixed128(interval.lo()),
            width: ceil_fixed128(&interval.length()),
        }
    }

    /// Upper bound on `(c/q)^j` in units of `2^-128`.
    fn reach_fixed(&self, q: u64) -> Option<u128> {
        let cj = self.params.cj_fixed?;
        // c^j q^-j <= c^j 2^-floor(j*log2 q)
        let bits = 63 - q.leading_zeros() as u64;
        let j = self.params.j();
        let shift = (j.num() as u64 * bits / j.den() as u64) as u32;
        Some((cj >> shift).saturating_add(1))
    }

    pub(crate) fn may_be_near(&self, q: u64) -> bool {
        let (Some(w), Some(eps)) = (self.width, self.reach_fixed(q)) else {
            return true;
        };
        let q128 = q as u128;
        let Some(qw) = q128.checked_mul(w) else {
            return true;
        };
        // frac(q*lo) * 2^128 lies in [v, v + q)
        let v = q128.wrapping_mul(self.lo_frac);
        let Some(end) = v.checked_add(q128) else {
            return true;
        };
        let far = v.min(u128::MAX - end + 1);
        match qw.checked_add(eps) {
            Some(reach) => far <= reach,
            None => true,
        }
    }

    /// Integers `r` that could lie within `c^j q^-j` of `q*I`, from the
    /// fixed-point bounds: at most two values. `None` when the bounds are
    /// not small enough to apply.
    fn r_window_fixed(&self, q: u64) -> Option<(i128, i128)> {
        let (w, eps, fl) = (self.width?, self.reach_fixed(q)?, self.lo_floor?);
        let q128 = q as u128;
        // q*I lies in [base + v/2^128, base + (v + slack - eps)/2^128]
        let slack = q128.checked_mul(w)?.checked_add(q128)?.checked_add(eps)?;
        if slack >= 1 << 127 {
            return None;
        }
        let (int_part, v) = mul_wide(q, self.lo_frac);
        let base = (q as i128).checked_mul(fl)?.checked_add(int_part as i128)?;
        let (_, carry) = v.overflowing_add(slack);
        Some((base + i128::from(v > eps), base + i128::from(carry)))
    }

    /// Integers `r` that could lie within `c^j q^-j` of `q*I`.
    fn r_window(&self, q: u64) -> (BigInt, BigInt) {
        let qr = Rational::from_integer(q);
        let lo = (self.interval.lo() * &qr).floor() - &self.params.cj_ceil;
        let hi = (self.interval.hi() * &qr).ceil() + &self.params.cj_ceil;
        (lo, hi)
    }

    pub(crate) fn collect_meeting(&self, q: u64, out: &mut Vec<DangerousRational>) {
        if let Some((lo, hi)) = self.r_window_fixed(q) {
            for r in lo..=hi {
                if r.unsigned_abs().gcd(&(q as u128)) == 1 {
                    let r = BigInt::from(r);
                    if self.params.interval_meets_delta(&r, q, self.interval) {
                        out.push(DangerousRational::new(r, q));
                    }
                }
            }
            return;
        }
        let (mut r, hi) = self.r_window(q);
        let qb = BigInt::from(q);
        while r <= hi {
            if r.gcd(&qb).is_one() && self.params.interval_meets_delta(&r, q, self.interval) {
                out.push(DangerousRational::new(r.clone(), q));
            }
            r += 1;
        }
    }
}

/// `min over x in I of ||qx||`, i.e. the distance from `q*I` to the integers.
pub fn min_grid_distance(interval: &RInterval, q: u64) -> Rational {
    let qr = Rational::from_integer(q);
    let lo = interval.lo() * &qr;
    let hi = interval.hi() * &qr;
    if Rational::from_integer(lo.ceil()) <= hi {
        return Rational::zero();
    }
    let below = &lo - Rational::from_integer(lo.floor());
    let above = Rational::from_integer(hi.ceil()) - &hi;
    below.min(above)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn params(i: &str, j: &str, c: &str, seq: &str) -> ApproxParams {
        ApproxParams::new(&q(i), &q(j), q(c), seq.parse().unwrap()).unwrap()
    }

    fn iv(s: &str) -> RInterval {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        let seq: DigitSequence = "per:2".parse().unwrap();
        assert!(ApproxParams::new(&q("1/3"), &q("1/3"), q("1"), seq.clone()).is_err());
        assert!(ApproxParams::new(&q("1"), &q("0"), q("1"), seq.clone()).is_err());
        assert!(ApproxParams::new(&q("1/2"), &q("1/2"), q("0"), seq.clone()).is_err());
        assert!(ApproxParams::new(&q("1/2"), &q("1/2"), q("1/7"), seq).is_ok());
    }

    #[test]
    fn dangerous_q_examples() {
        let p = params("1/3", "2/3", "1/10", "per:2");
        assert!(p.is_dangerous_q(8));
        assert!(!p.is_dangerous_q(6));
        // |q|_D = 1 and c < q
        for odd in [1u64, 3, 5, 7, 999] {
            assert!(!p.is_dangerous_q(odd));
        }
    }

    #[test]
    fn equality_is_not_dangerous() {
        // q = 4, c = 1/4, i = 1/2: |4|^2 = 1/16 = c/q exactly
        let p = params("1/2", "1/2", "1/4", "per:2");
        assert!(!p.is_dangerous_q(4));
        assert!(p.needs_distance_check(4));
        assert!(p.is_dangerous_q(8));
    }

    #[test]
    fn delta_membership_examples() {
        let p = params("1/3", "2/3", "1/10", "per:2");
        let one = BigInt::one();
        assert!(p.point_in_delta(&one, 8, &q("1/8")));
        assert!(!p.point_in_delta(&one, 8, &(q("1/8") + q("1/100"))));
        assert!(p.point_in_delta(&one, 8, &(q("1/8") + q("1/1000"))));
        assert!(!p.interval_meets_delta(&one, 8, &iv("0,1/16")));
        let near = RInterval::new(q("1/8") - q("1/1000"), q("1/8") - q("1/2000")).unwrap();
        assert!(p.interval_meets_delta(&one, 8, &near));
        assert!(p.interval_meets_delta(&one, 8, &iv("0,1")));
    }

    #[test]
    fn band_examples() {
        let p = params("1/2", "1/2", "1/4", "per:2");
        assert_eq!(p.band_q_range(&q("8"), 1).unwrap(), QRange::new(1, 3));
        assert_eq!(p.band_q_range(&q("8"), 2).unwrap(), QRange::new(4, 15));
        let p = params("1/3", "2/3", "1/4", "per:2");
        assert_eq!(p.band_q_range(&q("8"), 1).unwrap(), QRange::new(1, 3));
        assert!(p.band_q_range(&q("1"), 1).is_err());
        assert!(p.band_q_range(&q("8"), 0).is_err());
    }

    #[test]
    fn horizon_matches_band_tops() {
        let p = params("1/2", "1/2", "1/4", "per:2");
        let r = q("8");
        assert_eq!(p.horizon(&r, 1).unwrap(), 0);
        assert_eq!(p.horizon(&r, 2).unwrap(), 3);
        assert_eq!(p.horizon(&r, 3).unwrap(), 15);
    }

    #[test]
    fn enumeration_examples() {
        let r = q("8");
        let p = params("1/2", "1/2", "1/2048", "per:2");
        assert!(p.enumerate_dangerous_in(&r, 1, &iv("0,1")).unwrap().is_empty());

        let p = params("1/2", "1/2", "1/4", "per:2");
        let got: Vec<String> = p
            .enumerate_dangerous_in(&r, 2, &iv("0,1"))
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(got, ["1/8", "3/8", "5/8", "7/8"]);

        // a zero-length interval at a point no Delta reaches
        let p = params("1/2", "1/2", "1/4096", "per:2");
        let pt = RInterval::point(q("1/3"));
        for n in 1..6 {
            assert!(p.enumerate_dangerous_in(&r, n, &pt).unwrap().is_empty());
        }
    }

    #[test]
    fn delta_is_symmetric() {
        let p = params("1/2", "1/2", "1/64", "per:2");
        let r = BigInt::from(3);
        let centre = q("3/16");
        for k in 1..200 {
            let t = Rational::frac(k, 40_000);
            assert_eq!(
                p.point_in_delta(&r, 16, &(&centre + &t)),
                p.point_in_delta(&r, 16, &(&centre - &t))
            );
        }
    }

    #[test]
    fn fast_levels_match_direct_tests() {
        for (i, j, c, s) in [
            ("1/2", "1/2", "1/4096", "per:2"),
            ("1/3", "2/3", "1/512", "per:2"),
            ("2/3", "1/3", "1/131072", "per:3"),
            ("1/2", "1/2", "1", "per:2,3"),
            ("1/3", "2/3", "1/7", "pre:5|per:2,3"),
        ] {
            let p = params(i, j, c, s);
            let range = QRange::new(NAIVE_BELOW - 50, 3 * NAIVE_BELOW);
            let naive: Vec<u64> = (range.lo..=range.hi).filter(|&q| p.is_dangerous_q(q)).collect();
            assert_eq!(p.dangerous_qs(range), naive, "{i} {j} {c} {s}");
            let mut wide = Vec::new();
            p.for_each_distance_q(range, |q| wide.push(q));
            wide.sort_unstable();
            let naive: Vec<u64> = (range.lo..=range.hi).filter(|&q| p.needs_distance_check(q)).collect();
            assert_eq!(wide, naive);
        }
    }

    #[test]
    fn grid_distance() {
        assert_eq!(min_grid_distance(&iv("1/3,1/3"), 3), Rational::zero());
        assert_eq!(min_grid_distance(&iv("1/10,1/5"), 3), q("3/10"));
        assert_eq!(min_grid_distance(&iv("1/10,1/8"), 7), q("1/8"));
    }

    #[test]
    fn wide_product_halves() {
        assert_eq!(mul_wide(3, u128::MAX), (2, u128::MAX - 2));
        assert_eq!(mul_wide(1 << 40, 1 << 100), (1 << 12, 0));
        assert_eq!(mul_wide(7, 5), (0, 35));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn fixed_window_holds_every_meeting_r(
            num in -5_000i64..5_000,
            den in 1i64..4_000,
            len_bits in 20u32..70,
            q_raw in 0u64..1_000_000_000_000,
            which in 0usize..3,
        ) {
            // keep q |I| below 1/4, where the fixed-point path applies
            let q = 1 + q_raw % (1u64 << (len_bits - 2).min(40));
            let (i, j) = [("1/3", "2/3"), ("1/2", "1/2"), ("2/3", "1/3")][which];
            let p = params(i, j, "1/64", "per:2");
            let lo = Rational::new(num, den).unwrap();
            let hi = &lo + Rational::pow2_neg(len_bits);
            let interval = RInterval::new(lo, hi).unwrap();
            let probe = IntervalProbe::new(&p, &interval);
            let (a, b) = probe.r_window_fixed(q).expect("small bounds apply");
            prop_assert!(b - a <= 1);
            let (mut r, top) = probe.r_window(q);
            while r <= top {
                if p.interval_meets_delta(&r, q, &interval) {
                    let ri = r.to_i128().unwrap();
                    prop_assert!(a <= ri && ri <= b, "r={} window=({}, {})", ri, a, b);
                }
                r += 1;
            }
        }
    }
}
