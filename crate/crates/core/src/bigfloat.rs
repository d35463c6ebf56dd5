//! Arbitrary-precision binary floating point.
//!
//! A [`BigFloat`] is `mant · 2^exp` with `|mant|` holding at most `prec`
//! significant bits. Arithmetic rounds half-to-even to the larger precision
//! of its operands. The transcendental functions (`ln`, `exp`, `ln_gamma`)
//! work internally with at least 32 guard bits and return results accurate
//! to within a few units in the last place of the requested precision.
//!
//! This is the numeric substrate of the log-level [`Magnitude`]s; it only
//! needs `alloc`.
//!
//! [`Magnitude`]: crate::magnitude::Magnitude

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Error, Result};

/// Bits needed for `digits` significant decimal digits (plus a small pad).
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) < 3.3219281
    ((digits as u64 * 33_219_281).div_ceil(10_000_000)) as u32 + 4
}

#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn mag_bits(m: &BigInt) -> i64 {
    m.magnitude().bits() as i64
}

fn bit_len(v: u64) -> u32 {
    64 - v.leading_zeros()
}

/// `|m| >> sh`, rounded half to even.
fn round_shift(m: &BigUint, sh: u64) -> BigUint {
    if sh == 0 {
        return m.clone();
    }
    if sh > m.bits() + 1 {
        return BigUint::zero();
    }
    let q = m >> sh;
    let half_bit = sh - 1;
    if !m.bit(half_bit) {
        return q;
    }
    let below_half = m.trailing_zeros().is_some_and(|tz| tz < half_bit);
    if below_half || q.bit(0) {
        q + 1u32
    } else {
        q
    }
}

fn signed_round_shift(m: &BigInt, sh: u64) -> BigInt {
    BigInt::from_biguint(m.sign(), round_shift(m.magnitude(), sh))
}

fn shl(m: &BigInt, sh: i64) -> BigInt {
    debug_assert!(sh >= 0);
    m << (sh as usize)
}

impl BigFloat {
    fn normalize(mant: BigInt, exp: i64, prec: u32) -> BigFloat {
        if mant.is_zero() {
            return BigFloat { mant, exp: 0, prec };
        }
        let (mut mant, mut exp) = (mant, exp);
        let b = mag_bits(&mant);
        if b > prec as i64 {
            let sh = (b - prec as i64) as u64;
            mant = signed_round_shift(&mant, sh);
            exp += sh as i64;
        }
        if let Some(tz) = mant.magnitude().trailing_zeros() {
            if tz > 0 {
                mant >>= tz as usize;
                exp += tz as i64;
            }
        }
        BigFloat { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> BigFloat {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> BigFloat {
        BigFloat { mant: BigInt::one(), exp: 0, prec }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> BigFloat {
        Self::normalize(v.clone(), 0, prec)
    }

    pub fn from_biguint(v: &BigUint, prec: u32) -> BigFloat {
        Self::normalize(BigInt::from(v.clone()), 0, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> BigFloat {
        Self::normalize(BigInt::from(v), 0, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> BigFloat {
        Self::normalize(BigInt::from(v), 0, prec)
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> BigFloat {
        Self::from_bigint(num, prec + 2).div(&Self::from_bigint(den, prec + 2)).with_prec(prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> BigFloat {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    /// `v · 2^-wp`
    pub fn from_fixed(v: BigInt, wp: u32, prec: u32) -> BigFloat {
        Self::normalize(v, -(wp as i64), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value at a different precision (rounding when lowering).
    pub fn with_prec(&self, prec: u32) -> BigFloat {
        Self::normalize(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.exp >= 0
    }

    /// `floor(log2 |x|)`; meaningless for zero.
    pub fn top(&self) -> i64 {
        mag_bits(&self.mant) + self.exp - 1
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn mul_pow2(&self, k: i64) -> BigFloat {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn add(&self, o: &BigFloat) -> BigFloat {
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return o.with_prec(prec);
        }
        if o.is_zero() {
            return self.with_prec(prec);
        }
        let (hi, lo) = if self.top() >= o.top() { (self, o) } else { (o, self) };
        if hi.top() - lo.top() > prec as i64 + 2 {
            return hi.with_prec(prec);
        }
        let e = self.exp.min(o.exp);
        let a = shl(&self.mant, self.exp - e);
        let b = shl(&o.mant, o.exp - e);
        Self::normalize(a + b, e, prec)
    }

    pub fn sub(&self, o: &BigFloat) -> BigFloat {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn mul(&self, o: &BigFloat) -> BigFloat {
        let prec = self.prec.max(o.prec);
        Self::normalize(&self.mant * &o.mant, self.exp + o.exp, prec)
    }

    /// Division; panics on a zero divisor (an internal invariant everywhere
    /// this crate divides).
    pub fn div(&self, o: &BigFloat) -> BigFloat {
        assert!(!o.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let shift = (prec as i64 + 3 + mag_bits(&o.mant) - mag_bits(&self.mant)).max(0);
        let num = shl(&self.mant, shift);
        let (q, r) = num.div_rem(&o.mant);
        // sticky bit so that the final rounding sees an inexact tail
        let mut q2 = q << 1usize;
        if !r.is_zero() {
            let sticky = if (num.sign() == Sign::Minus) != (o.mant.sign() == Sign::Minus) { -1 } else { 1 };
            q2 += sticky;
        }
        Self::normalize(q2, self.exp - o.exp - shift - 1, prec)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            return shl(&self.mant, self.exp);
        }
        let sh = -self.exp;
        if sh > mag_bits(&self.mant) + 1 {
            return if self.is_negative() { BigInt::from(-1) } else { BigInt::zero() };
        }
        self.mant.div_floor(&(BigInt::one() << (sh as usize)))
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Nearest integer, ties to even.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            return shl(&self.mant, self.exp);
        }
        signed_round_shift(&self.mant, (-self.exp) as u64)
    }

    /// `round(x · 2^wp)` as an integer.
    pub fn to_fixed(&self, wp: u32) -> BigInt {
        let sh = self.exp + wp as i64;
        if sh >= 0 {
            shl(&self.mant, sh)
        } else {
            signed_round_shift(&self.mant, (-sh) as u64)
        }
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(shl(&self.mant, self.exp))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    /// Nearest `f64` (saturating to ±inf / 0 outside its range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = mag_bits(&self.mant);
        let (m, e) = if b > 63 {
            (signed_round_shift(&self.mant, (b - 63) as u64), self.exp + b - 63)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mut v = m.to_f64().unwrap_or(0.0);
        let mut e = e;
        while e != 0 {
            let step = e.clamp(-1000, 1000);
            v *= pow2_f64(step);
            e -= step;
            if v == 0.0 || v.is_infinite() {
                break;
            }
        }
        v
    }

    /// Natural logarithm; `None` unless `x > 0`.
    pub fn ln(&self) -> Option<BigFloat> {
        if !self.is_positive() {
            return None;
        }
        let prec = self.prec;
        let t = mag_bits(&self.mant);
        let mut k = t + self.exp;
        // extra bits when x is close to 1, so the result keeps relative accuracy
        let near_one = {
            let d = self.with_prec(prec + 64).sub(&BigFloat::one(prec + 64));
            if d.is_zero() {
                return Some(BigFloat::zero(prec));
            }
            (-d.top()).clamp(0, 8 * prec as i64 + 64) as u32
        };
        let wp = prec + 40 + bit_len(k.unsigned_abs()) + near_one;
        let one = BigInt::one() << (wp as usize);
        let mut y = if wp as i64 >= t {
            shl(&self.mant, wp as i64 - t)
        } else {
            signed_round_shift(&self.mant, (t - wp as i64) as u64)
        };
        if &y * &y < (BigInt::one() << (2 * wp as usize - 1)) {
            y <<= 1usize;
            k -= 1;
        }
        let z = ((&y - &one) << (wp as usize)) / (&y + &one);
        let ln_y = atanh_fixed(&z, wp) * 2;
        let total = ln_y + ln2_fixed(wp) * BigInt::from(k);
        Some(Self::from_fixed(total, wp, prec))
    }

    /// `e^x`. Panics if the result's binary exponent would not fit in an
    /// `i64` (|x| beyond ~6·10^18).
    pub fn exp(&self) -> BigFloat {
        let prec = self.prec;
        if self.is_zero() {
            return BigFloat::one(prec);
        }
        let top = self.top();
        assert!(top < 61, "BigFloat::exp argument out of range");
        let kbits = (top + 2).max(0) as u32;
        let wp = prec + 48 + kbits;
        let one = BigInt::one() << (wp as usize);
        let ln2 = ln2_fixed(wp);
        let xf = self.to_fixed(wp);
        let two_xf: BigInt = &xf * 2;
        let k = Integer::div_floor(&(two_xf + &ln2), &(&ln2 * 2));
        let r = xf - &k * &ln2;
        const HALVINGS: usize = 16;
        let r = r / (BigInt::one() << HALVINGS);
        let mut sum = one.clone();
        let mut term = one.clone();
        let mut i = 1u32;
        loop {
            term = &term * &r / &one / i;
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        for _ in 0..HALVINGS {
            sum = &sum * &sum / &one;
        }
        let k = k.to_i64().expect("exponent range checked above");
        Self::from_fixed(sum, wp, prec + 2).mul_pow2(k).with_prec(prec)
    }

    pub fn log10(&self) -> Option<BigFloat> {
        let p = self.prec;
        let l = self.with_prec(p + 16).ln()?;
        Some(l.div(&ln10(p + 16)).with_prec(p))
    }

    /// `10^x`
    pub fn pow10(&self) -> BigFloat {
        let p = self.prec;
        let guard = (self.top().max(0) as u32) + 16;
        self.with_prec(p + guard).mul(&ln10(p + guard)).exp().with_prec(p)
    }

    /// `x^y` for `x > 0`.
    pub fn powf(&self, y: &BigFloat) -> Option<BigFloat> {
        let p = self.prec.max(y.prec);
        let l = self.with_prec(p + 16).ln()?;
        Some(l.mul(y).exp().with_prec(p))
    }

    /// `ln Γ(x)` for `x > 0`, via the Stirling series after shifting the
    /// argument up to at least the working precision (in bits).
    pub fn ln_gamma(&self) -> Option<BigFloat> {
        if !self.is_positive() {
            return None;
        }
        let prec = self.prec;
        let wp = prec + 32 + bit_len(self.top().max(1) as u64);
        let y0 = BigFloat::from_u64(wp as u64, wp);
        let mut y = self.with_prec(wp);
        let mut shift_product = BigFloat::one(wp);
        let one = BigFloat::one(wp);
        while y < y0 {
            shift_product = shift_product.mul(&y);
            y = y.add(&one);
        }
        let half = BigFloat::one(wp).mul_pow2(-1);
        let ln_y = y.ln()?;
        let half_ln_2pi = pi(wp).mul_pow2(1).ln()?.mul(&half);
        let mut s = y.sub(&half).mul(&ln_y).sub(&y).add(&half_ln_2pi);
        let y2 = y.mul(&y);
        let mut ypow = y.clone();
        let mut bern = Bernoulli::new();
        for k in 1u64..=400 {
            let b = bern.even(k as usize);
            let denom = BigFloat::from_u64((2 * k) * (2 * k - 1), wp).mul(&ypow);
            let term = BigFloat::from_rational(&b, wp).div(&denom);
            s = s.add(&term);
            let scale = s.abs().top().max(0);
            if term.is_zero() || term.top() < scale - wp as i64 {
                break;
            }
            ypow = ypow.mul(&y2);
        }
        if !shift_product.is_zero() && shift_product != one {
            s = s.sub(&shift_product.ln()?);
        }
        Some(s.with_prec(prec))
    }

    /// Decimal rendering with `digits` significant digits (trailing zeros
    /// dropped). Plain notation for decimal exponents in `[-7, 21)`,
    /// scientific (`1.5e-30`) otherwise.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let (d, k) = self.decimal_digits(digits);
        let mut ds = d.to_string();
        while ds.len() > 1 && ds.ends_with('0') {
            ds.pop();
        }
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        let n = ds.len() as i64;
        if (0..21).contains(&k) {
            if n <= k + 1 {
                out.push_str(&ds);
                out.extend(core::iter::repeat_n('0', (k + 1 - n) as usize));
            } else {
                out.push_str(&ds[..(k + 1) as usize]);
                out.push('.');
                out.push_str(&ds[(k + 1) as usize..]);
            }
        } else if (-7..0).contains(&k) {
            out.push_str("0.");
            out.extend(core::iter::repeat_n('0', (-k - 1) as usize));
            out.push_str(&ds);
        } else {
            out.push_str(&ds[..1]);
            if n > 1 {
                out.push('.');
                out.push_str(&ds[1..]);
            }
            out.push('e');
            out.push_str(&k.to_string());
        }
        out
    }

    /// `(D, k)` with `|x| ≈ D · 10^(k − digits + 1)` and `D` exactly
    /// `digits` digits long.
    fn decimal_digits(&self, digits: u32) -> (BigUint, i64) {
        let top = self.top() as i128;
        // floor(top · log10 2)
        let mut k = Integer::div_floor(&(top * 301_029_995_663_981_195), &1_000_000_000_000_000_000) as i64;
        let lo = BigUint::from(10u32).pow(digits - 1);
        let hi = &lo * 10u32;
        for _ in 0..4 {
            let d = self.scaled_abs(digits as i64 - 1 - k);
            if d >= hi {
                k += 1;
            } else if d < lo {
                k -= 1;
            } else {
                return (d, k);
            }
        }
        let d = self.scaled_abs(digits as i64 - 1 - k);
        (d, k)
    }

    /// `round(|x| · 10^s)`, half to even.
    fn scaled_abs(&self, s: i64) -> BigUint {
        let ten = BigUint::from(10u32);
        let mut num = self.mant.magnitude().clone();
        let mut den = BigUint::one();
        if s >= 0 {
            num *= ten.pow(s as u32);
        } else {
            den *= ten.pow((-s) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as usize;
        } else {
            den <<= (-self.exp) as usize;
        }
        let (q, r) = num.div_rem(&den);
        let twice = r << 1usize;
        match twice.cmp(&den) {
            Ordering::Greater => q + 1u32,
            Ordering::Equal if q.bit(0) => q + 1u32,
            _ => q,
        }
    }

    /// Parses `[-+]digits[.digits][e[-+]digits]` into a float of the given
    /// precision.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<BigFloat> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exp_part) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            bail!(Parse, "empty decimal {s:?}");
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            bail!(Parse, "invalid decimal {s:?}");
        }
        let mut exp10: i64 = match exp_part {
            Some(e) => e.parse().map_err(|_| Error::Parse(alloc::format!("invalid exponent in {s:?}")))?,
            None => 0,
        };
        exp10 -= frac_part.len() as i64;
        if exp10.unsigned_abs() > 1_000_000 {
            bail!(Parse, "decimal exponent out of range in {s:?}");
        }
        let digits: String = int_part.chars().chain(frac_part.chars()).collect();
        let mut n: BigInt = digits.parse().map_err(|_| Error::Parse(alloc::format!("invalid decimal {s:?}")))?;
        if neg {
            n = -n;
        }
        let ten = BigInt::from(10);
        Ok(if exp10 >= 0 {
            BigFloat::from_bigint(&(n * ten.pow(exp10 as u32)), prec)
        } else {
            BigFloat::from_ratio(&n, &ten.pow((-exp10) as u32), prec)
        })
    }

    fn cmp_value(&self, o: &BigFloat) -> Ordering {
        let (sa, sb) = (self.mant.sign(), o.mant.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = match self.top().cmp(&o.top()) {
            Ordering::Equal => {
                let e = self.exp.min(o.exp);
                (self.mant.magnitude() << ((self.exp - e) as usize))
                    .cmp(&(o.mant.magnitude() << ((o.exp - e) as usize)))
            }
            other => other,
        };
        if sa == Sign::Minus { mag.reverse() } else { mag }
    }
}

fn pow2_f64(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (e + 1074))
    }
}

/// `atanh(z / 2^wp) · 2^wp` for a fixed-point `|z| < 2^wp / 2`.
fn atanh_fixed(z: &BigInt, wp: u32) -> BigInt {
    let neg = z.is_negative();
    let z = z.magnitude();
    let z2 = (z * z) >> (wp as usize);
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut i = 1u64;
    loop {
        term = (&term * &z2) >> (wp as usize);
        if term.is_zero() {
            break;
        }
        sum += &term / (2 * i + 1);
        i += 1;
    }
    let sum = BigInt::from(sum);
    if neg { -sum } else { sum }
}

/// `atanh(1/n) · 2^wp` or, with `alternate`, `atan(1/n) · 2^wp`.
fn inv_series_fixed(n: u64, wp: u32, alternate: bool) -> BigInt {
    let wp2 = wp + 16;
    let n2 = BigUint::from(n) * n;
    let mut term = (BigUint::one() << (wp2 as usize)) / n;
    let mut sum = BigInt::from(term.clone());
    let mut i = 1u64;
    loop {
        term /= &n2;
        if term.is_zero() {
            break;
        }
        let t = BigInt::from(&term / (2 * i + 1));
        if alternate && i % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        i += 1;
    }
    sum >> 16usize
}

fn ln2_fixed(wp: u32) -> BigInt {
    inv_series_fixed(3, wp, false) * 2
}

fn ln10_fixed(wp: u32) -> BigInt {
    // ln 10 = 3 ln 2 + ln(5/4),  5/4 = (1 + 1/9)/(1 − 1/9)
    ln2_fixed(wp) * 3 + inv_series_fixed(9, wp, false) * 2
}

pub fn ln2(prec: u32) -> BigFloat {
    BigFloat::from_fixed(ln2_fixed(prec + 16), prec + 16, prec)
}

pub fn ln10(prec: u32) -> BigFloat {
    BigFloat::from_fixed(ln10_fixed(prec + 16), prec + 16, prec)
}

pub fn pi(prec: u32) -> BigFloat {
    let wp = prec + 16;
    let v = inv_series_fixed(5, wp, true) * 16 - inv_series_fixed(239, wp, true) * 4;
    BigFloat::from_fixed(v, wp, prec)
}

/// Euler's number.
pub fn e(prec: u32) -> BigFloat {
    BigFloat::one(prec).exp()
}

/// Bernoulli numbers generated on demand from
/// `Σ_{j=0}^{m} binom(m+1, j) B_j = 0`.
struct Bernoulli {
    b: Vec<BigRational>,
}

impl Bernoulli {
    fn new() -> Self {
        Bernoulli { b: alloc::vec![BigRational::one()] }
    }

    fn even(&mut self, k: usize) -> BigRational {
        while self.b.len() <= 2 * k {
            let m = self.b.len();
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // binom(m+1, j)
            for (j, bj) in self.b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += bj * &binom;
                }
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            self.b.push(-acc / BigInt::from(m + 1));
        }
        self.b[2 * k].clone()
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &BigFloat) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &BigFloat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, o: &BigFloat) -> Ordering {
        self.cmp_value(o)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                BigFloat::$m(self, rhs)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::neg(self)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // digits that the precision actually supports
        let digits = ((self.prec as u64 * 30103) / 100_000).max(1) as u32;
        f.write_str(&self.to_decimal_string(digits))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({self}, prec={})", self.prec)
    }
}
