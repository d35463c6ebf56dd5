//! Tiered non-negative numbers: exact integers, `log10 x`, or `log10 log10 x`.
//!
//! A [`Magnitude`] is immutable. Arithmetic goes through a [`Policy`], which
//! fixes the working precision and the promotion thresholds. Values are
//! promoted upward when they outgrow their level and are never demoted.
//!
//! A magnitude may carry an *enclosure*: a width `w` (in `log10` units)
//! such that the true quantity lies in `[x · 10^-w, x]`. The headline value
//! `x` is then a certified upper end.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bigfloat::{bits_for_digits, ln10, BigFloat};
use crate::error::{bail, Result};
use crate::ratpoly;

#[derive(Clone, Debug)]
enum Repr {
    Exact(BigUint),
    Log10(BigFloat),
    LogLog10(BigFloat),
}

#[derive(Clone, Debug)]
pub struct Magnitude {
    repr: Repr,
    width: Option<BigFloat>,
}

fn log10_big(n: &BigUint, prec: u32) -> BigFloat {
    BigFloat::from_biguint(n, prec + 16)
        .log10()
        .expect("positive integer")
        .with_prec(prec)
}

/// `floor(b · log10 2)`, for bit counts
fn bits_to_digits_floor(b: u64) -> u64 {
    ((b as u128 * 30_102_999_566) / 100_000_000_000) as u64
}

/// Number of decimal digits of `n` is greater than `max`.
fn exceeds_digits(n: &BigUint, max: u64) -> bool {
    let b = n.bits();
    if b == 0 {
        return false;
    }
    // n ∈ [2^(b−1), 2^b)
    let lo = bits_to_digits_floor(b - 1) + 1;
    let hi = bits_to_digits_floor(b) + 1;
    if lo > max {
        true
    } else if hi <= max {
        false
    } else {
        *n >= BigUint::from(10u32).pow(max as u32)
    }
}

impl Magnitude {
    pub fn exact(n: BigUint) -> Magnitude {
        Magnitude { repr: Repr::Exact(n), width: None }
    }

    pub fn from_u64(n: u64) -> Magnitude {
        Self::exact(BigUint::from(n))
    }

    pub fn zero() -> Magnitude {
        Self::exact(BigUint::zero())
    }

    pub fn one() -> Magnitude {
        Self::exact(BigUint::one())
    }

    /// The value `10^l`; `l` must be non-negative.
    pub fn from_log10(l: BigFloat) -> Result<Magnitude> {
        if l.is_negative() {
            bail!(Domain, "level-1 magnitude needs log10 >= 0, got {l}");
        }
        Ok(Magnitude { repr: Repr::Log10(l), width: None })
    }

    /// The value `10^10^ll`; `ll` must be non-negative.
    pub fn from_loglog10(ll: BigFloat) -> Result<Magnitude> {
        if ll.is_negative() {
            bail!(Domain, "level-2 magnitude needs log10 log10 >= 0, got {ll}");
        }
        Ok(Magnitude { repr: Repr::LogLog10(ll), width: None })
    }

    /// Attaches an enclosure `[x · 10^-w, x]`.
    pub fn with_enclosure(mut self, w: BigFloat) -> Result<Magnitude> {
        if w.is_negative() {
            bail!(Domain, "enclosure width must be non-negative, got {w}");
        }
        self.width = Some(w);
        Ok(self)
    }

    pub fn without_enclosure(mut self) -> Magnitude {
        self.width = None;
        self
    }

    pub fn level(&self) -> u8 {
        match self.repr {
            Repr::Exact(_) => 0,
            Repr::Log10(_) => 1,
            Repr::LogLog10(_) => 2,
        }
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Exact(n) => Some(n),
            _ => None,
        }
    }

    /// Stored `log10 x` of a level-1 value.
    pub fn as_log10(&self) -> Option<&BigFloat> {
        match &self.repr {
            Repr::Log10(l) => Some(l),
            _ => None,
        }
    }

    /// Stored `log10 log10 x` of a level-2 value.
    pub fn as_loglog10(&self) -> Option<&BigFloat> {
        match &self.repr {
            Repr::LogLog10(l) => Some(l),
            _ => None,
        }
    }

    pub fn enclosure_log10_width(&self) -> Option<&BigFloat> {
        self.width.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Exact(n) if n.is_zero())
    }

    /// Exactly one (at any level).
    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Exact(n) => n.is_one(),
            Repr::Log10(l) => l.is_zero(),
            Repr::LogLog10(_) => false,
        }
    }

    /// `log10 x` at precision `prec`; `None` for zero. Panics for level-2
    /// values too large for a binary exponent (log10 log10 x beyond ~10^17).
    pub fn log10_value(&self, prec: u32) -> Option<BigFloat> {
        match &self.repr {
            Repr::Exact(n) if n.is_zero() => None,
            Repr::Exact(n) => Some(log10_big(n, prec)),
            Repr::Log10(l) => Some(l.clone()),
            Repr::LogLog10(ll) => Some(ll.with_prec(prec).pow10()),
        }
    }

    /// `log10 log10 x` at precision `prec`; `None` when `x <= 1`.
    pub fn loglog10_value(&self, prec: u32) -> Option<BigFloat> {
        match &self.repr {
            Repr::LogLog10(ll) => Some(ll.clone()),
            _ => {
                let l = self.log10_value(prec)?;
                if l.is_positive() {
                    l.with_prec(prec).log10()
                } else {
                    None
                }
            }
        }
    }

    fn coord_prec(&self) -> u32 {
        match &self.repr {
            Repr::Exact(_) => 0,
            Repr::Log10(l) | Repr::LogLog10(l) => l.prec(),
        }
    }

    /// Human-readable form: `12345`, `≈10^114.96`, `≈10^10^341.5`.
    pub fn to_human(&self, digits: u32) -> String {
        let mut s = match &self.repr {
            Repr::Exact(n) => n.to_string(),
            Repr::Log10(l) => format!("≈10^{}", l.to_decimal_string(digits)),
            Repr::LogLog10(ll) => format!("≈10^10^{}", ll.to_decimal_string(digits)),
        };
        if let Some(w) = &self.width {
            s.push_str(&format!(" [enclosure width {} in log10]", w.to_decimal_string(digits)));
        }
        s
    }

    fn cmp_value(&self, o: &Magnitude) -> Ordering {
        fn opt(a: Option<BigFloat>, b: Option<BigFloat>) -> Ordering {
            match (a, b) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(a), Some(b)) => a.cmp(&b),
            }
        }
        let p = self.coord_prec().max(o.coord_prec()).max(64);
        match self.level().max(o.level()) {
            0 => self.as_exact().unwrap().cmp(o.as_exact().unwrap()),
            1 => opt(self.log10_value(p), o.log10_value(p)),
            _ => opt(self.loglog10_value(p), o.loglog10_value(p)),
        }
    }
}

/// Comparison is by headline value; enclosures are ignored. Values on
/// different levels are compared in the higher level's coordinate.
impl PartialEq for Magnitude {
    fn eq(&self, o: &Magnitude) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, o: &Magnitude) -> Option<Ordering> {
        Some(self.cmp_value(o))
    }
}

impl From<u64> for Magnitude {
    fn from(n: u64) -> Magnitude {
        Magnitude::from_u64(n)
    }
}

impl From<BigUint> for Magnitude {
    fn from(n: BigUint) -> Magnitude {
        Magnitude::exact(n)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_human(12))
    }
}

/// Precision and promotion settings for [`Magnitude`] arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Policy {
    /// Significant decimal digits carried by level-1/2 values.
    pub digits: u32,
    /// Exact integers with more decimal digits than this become level 1.
    pub max_exact_digits: u64,
    /// Level-1 values whose log10 exceeds this become level 2.
    pub level2_log10_threshold: u64,
    /// `sum_dominant` adds terms one by one up to this many.
    pub sum_iteration_limit: u64,
    /// Log-space binomials multiply factors directly up to this many.
    pub binom_iteration_limit: u64,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            digits: 50,
            max_exact_digits: 100_000,
            level2_log10_threshold: 1_000_000_000_000_000,
            sum_iteration_limit: 10_000,
            binom_iteration_limit: 2_000,
        }
    }
}

impl Policy {
    pub fn with_digits(digits: u32) -> Policy {
        Policy { digits, ..Policy::default() }
    }

    /// Bits stored in level-1/2 values.
    pub fn prec(&self) -> u32 {
        bits_for_digits(self.digits)
    }

    fn wp(&self) -> u32 {
        self.prec() + 32
    }

    fn max_exact_bits(&self) -> u64 {
        // digits · log2(10), rounded up
        (self.max_exact_digits as u128 * 33_219_281 / 10_000_000) as u64 + 4
    }

    /// Builds a value from `log10 x`, choosing level 1 or 2 by the threshold.
    fn from_l1(&self, l: BigFloat) -> Magnitude {
        let l = if l.is_negative() { BigFloat::zero(l.prec()) } else { l };
        let threshold = BigFloat::from_u64(self.level2_log10_threshold, 64);
        if l > threshold {
            let ll = l.with_prec(self.wp()).log10().expect("positive");
            Magnitude { repr: Repr::LogLog10(ll.with_prec(self.prec())), width: None }
        } else {
            Magnitude { repr: Repr::Log10(l.with_prec(self.prec())), width: None }
        }
    }

    fn from_l2(&self, ll: BigFloat) -> Magnitude {
        let threshold = BigFloat::from_u64(self.level2_log10_threshold, 64);
        let ll_threshold = threshold.with_prec(self.wp()).log10().expect("positive");
        if ll <= ll_threshold {
            self.from_l1(ll.with_prec(self.wp()).pow10())
        } else {
            let ll = if ll.is_negative() { BigFloat::zero(ll.prec()) } else { ll };
            Magnitude { repr: Repr::LogLog10(ll.with_prec(self.prec())), width: None }
        }
    }

    /// Moves a value up to the level its size calls for. Never demotes.
    pub fn normalize(&self, x: Magnitude) -> Magnitude {
        let width = x.width.clone();
        let mut out = match &x.repr {
            Repr::Exact(n) if exceeds_digits(n, self.max_exact_digits) => {
                self.from_l1(log10_big(n, self.wp()))
            }
            Repr::Log10(l) => {
                let y = self.from_l1(l.clone());
                if y.level() == 1 {
                    // keep the stored coordinate bit-for-bit
                    return x;
                }
                y
            }
            _ => return x,
        };
        out.width = width;
        out
    }

    /// Re-expresses `x` at `level` (which must not be below its current
    /// level).
    pub fn promote_to(&self, x: &Magnitude, level: u8) -> Result<Magnitude> {
        if level < x.level() {
            bail!(PreconditionViolated, "cannot demote a level-{} magnitude to level {level}", x.level());
        }
        let mut out = match level {
            0 => x.clone(),
            1 => match x.log10_value(self.prec()) {
                Some(l) => Magnitude { repr: Repr::Log10(l), width: None },
                None => bail!(Domain, "zero has no level-1 representation"),
            },
            2 => match x.loglog10_value(self.prec()) {
                Some(ll) if !ll.is_negative() => Magnitude { repr: Repr::LogLog10(ll), width: None },
                _ => bail!(Domain, "values below 10 have no level-2 representation"),
            },
            _ => bail!(PreconditionViolated, "magnitude levels are 0, 1 and 2"),
        };
        out.width = x.width.clone();
        Ok(out)
    }

    fn add_widths(&self, a: &Magnitude, b: &Magnitude) -> Option<BigFloat> {
        match (&a.width, &b.width) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w.clone()),
            (Some(x), Some(y)) => Some(x.add(y).with_prec(self.prec())),
        }
    }

    /// `a · b`.
    pub fn mul(&self, a: &Magnitude, b: &Magnitude) -> Magnitude {
        let width = self.add_widths(a, b);
        let mut out = self.mul_plain(a, b);
        out.width = width;
        out
    }

    fn mul_plain(&self, a: &Magnitude, b: &Magnitude) -> Magnitude {
        if a.is_zero() || b.is_zero() {
            return Magnitude::zero();
        }
        if a.is_one() {
            return self.normalize(b.clone().without_enclosure());
        }
        if b.is_one() {
            return self.normalize(a.clone().without_enclosure());
        }
        let wp = self.wp();
        match (&a.repr, &b.repr) {
            (Repr::Exact(x), Repr::Exact(y)) if x.bits() + y.bits() <= self.max_exact_bits() + 8 => {
                self.normalize(Magnitude::exact(x * y))
            }
            _ if a.level() < 2 && b.level() < 2 => {
                let la = a.log10_value(wp).unwrap();
                let lb = b.log10_value(wp).unwrap();
                self.from_l1(la.add(&lb))
            }
            _ => {
                // at least one level-2 operand: combine log10 values in loglog space
                let (lla, llb) = (a.loglog10_value(wp), b.loglog10_value(wp));
                let ll = match (lla, llb) {
                    (Some(x), Some(y)) => log10_sum_of_pow10(&x, &y, wp),
                    (Some(x), None) | (None, Some(x)) => {
                        // the other factor lies in (1, 10]: add its log10 directly
                        let small = if a.level() == 2 { b } else { a };
                        let ls = small.log10_value(wp).unwrap();
                        let lx = x.with_prec(wp).pow10();
                        lx.add(&ls).log10().unwrap()
                    }
                    (None, None) => unreachable!("a level-2 operand exceeds 10"),
                };
                self.from_l2(ll)
            }
        }
    }

    /// `a + b`. Enclosure width is the larger of the two.
    pub fn add(&self, a: &Magnitude, b: &Magnitude) -> Magnitude {
        let width = match (&a.width, &b.width) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w.clone()),
            (Some(x), Some(y)) => Some(if x >= y { x.clone() } else { y.clone() }),
        };
        let mut out = self.add_plain(a, b);
        out.width = width;
        out
    }

    fn add_plain(&self, a: &Magnitude, b: &Magnitude) -> Magnitude {
        if a.is_zero() {
            return self.normalize(b.clone().without_enclosure());
        }
        if b.is_zero() {
            return self.normalize(a.clone().without_enclosure());
        }
        let wp = self.wp();
        if let (Repr::Exact(x), Repr::Exact(y)) = (&a.repr, &b.repr) {
            return self.normalize(Magnitude::exact(x + y));
        }
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi.level() < 2 {
            let lh = hi.log10_value(wp).unwrap();
            let ll = lo.log10_value(wp).unwrap();
            return self.from_l1(log10_sum_of_pow10(&lh, &ll, wp));
        }
        // hi is level 2: L = Lh + log10(1 + 10^(Ll − Lh)), in loglog coordinates
        let llh = hi.loglog10_value(wp).unwrap();
        let lh = llh.with_prec(wp).pow10();
        let ll = lo.log10_value(wp).unwrap();
        let diff = ll.sub(&lh);
        let one = BigFloat::one(wp);
        // below −(digits + margin) the smaller term cannot move the result
        if diff < BigFloat::from_i64(-(wp as i64), wp) {
            return hi.clone().without_enclosure();
        }
        let bump = one.add(&diff.pow10()).log10().unwrap();
        let ll_new = llh.add(&one.add(&bump.div(&lh)).log10().unwrap());
        self.from_l2(ll_new)
    }

    /// `base ^ exp` for `base >= 1`.
    pub fn pow(&self, base: &Magnitude, exp: &Magnitude) -> Result<Magnitude> {
        if base.is_zero() {
            bail!(Domain, "pow needs base >= 1, got 0");
        }
        let plain = self.pow_plain(base, exp)?;
        let width = self.pow_width(base, exp, &plain)?;
        Ok(Magnitude { width, ..plain })
    }

    fn pow_plain(&self, base: &Magnitude, exp: &Magnitude) -> Result<Magnitude> {
        let wp = self.wp();
        if exp.is_zero() || base.is_one() {
            return Ok(if exp.is_zero() { Magnitude::one() } else { base.clone().without_enclosure() });
        }
        if let (Repr::Exact(b), Repr::Exact(e)) = (&base.repr, &exp.repr) {
            if let Some(e64) = e.to_u64() {
                let est = (b.bits() - 1) as u128 * e64 as u128;
                if est <= self.max_exact_bits() as u128 {
                    return Ok(self.normalize(Magnitude::exact(num_traits::pow(b.clone(), e64 as usize))));
                }
            }
        }
        // log10 result = E · Lb
        let le = exp.log10_value(wp).unwrap();
        let ll = if base.level() == 2 {
            le.add(base.as_loglog10().unwrap())
        } else {
            let lb = base.log10_value(wp).unwrap();
            le.add(&lb.log10().unwrap())
        };
        let threshold = BigFloat::from_u64(self.level2_log10_threshold, 64);
        let ll_threshold = threshold.with_prec(wp).log10().unwrap();
        if ll <= ll_threshold && base.level() < 2 {
            // E · Lb directly, which is more accurate than 10^ll
            let e = match &exp.repr {
                Repr::Exact(e) => BigFloat::from_biguint(e, wp),
                _ => le.pow10(),
            };
            let lb = base.log10_value(wp).unwrap();
            return Ok(self.from_l1(e.mul(&lb)));
        }
        Ok(self.from_l2(ll))
    }

    fn pow_width(&self, base: &Magnitude, exp: &Magnitude, res: &Magnitude) -> Result<Option<BigFloat>> {
        if base.width.is_none() && exp.width.is_none() {
            return Ok(None);
        }
        let wp = self.wp();
        let zero = BigFloat::zero(wp);
        let r = res.log10_value(wp).unwrap_or_else(|| zero.clone());
        let check = |v: &BigFloat| -> Result<()> {
            if v.top() > 60 {
                bail!(Overflow, "enclosure of pow result not representable");
            }
            Ok(())
        };
        let le = exp.log10_value(wp).unwrap_or_else(|| zero.clone());
        let lb = base.log10_value(wp).unwrap_or_else(|| zero.clone());
        check(&le)?;
        let e_low = le.sub(exp.width.as_ref().unwrap_or(&zero)).pow10();
        let lb_low = lb.sub(base.width.as_ref().unwrap_or(&zero));
        let lb_low = if lb_low.is_negative() { zero.clone() } else { lb_low };
        let low = e_low.mul(&lb_low);
        let w = r.sub(&low);
        Ok(Some(if w.is_negative() { zero } else { w.with_prec(self.prec()) }))
    }

    /// `binom(top, m)`.
    pub fn binom(&self, top: &Magnitude, m: &BigUint) -> Result<Magnitude> {
        if top.width.is_some() {
            bail!(PreconditionViolated, "binomial of an enclosed magnitude is not monotone-safe");
        }
        let wp = self.wp();
        match &top.repr {
            Repr::Exact(t) => {
                if t < m {
                    bail!(Domain, "binom({t}, {m}) has top < bottom");
                }
                let tm = t - m;
                let k = if &tm < m { tm } else { m.clone() };
                if k.is_zero() {
                    return Ok(Magnitude::one());
                }
                // log2 binom(t, k) <= k · (bits(t) − bits(k) + 3)
                let est = (k.clone()) * (t.bits() - k.bits() + 3);
                if est <= BigUint::from(self.max_exact_bits() + 64) {
                    let k64 = k.to_u64().expect("small by the estimate above");
                    return Ok(self.normalize(Magnitude::exact(ratpoly::binomial(t, k64))));
                }
                let ln = self.ln_binom_exact(t, &k, wp);
                Ok(self.from_l1(ln.div(&ln10(wp))))
            }
            Repr::Log10(l) => {
                if Magnitude::exact(m.clone()) >= *top {
                    bail!(Domain, "binom(10^{l}, {m}) has top <= bottom");
                }
                if m.is_zero() {
                    return Ok(Magnitude::one());
                }
                let l10_m = log10_big(m, wp);
                // T > 2^wp · m² makes the Σ log(1 − i/T) correction negligible
                let cut = BigFloat::from_u64(wp as u64, wp)
                    .mul(&BigFloat::from_u64(2, wp).log10().unwrap())
                    .add(&l10_m.mul_pow2(1));
                let res = if *l > cut {
                    BigFloat::from_biguint(m, wp).mul(l).sub(&log10_factorial(m, wp))
                } else {
                    let boost = (l.to_f64() * 3.33) as u32 + 16;
                    let p = wp + boost;
                    let t = l.with_prec(p).pow10();
                    let one = BigFloat::one(p);
                    let mf = BigFloat::from_biguint(m, p);
                    let ln = t.add(&one).ln_gamma().unwrap()
                        .sub(&t.sub(&mf).add(&one).ln_gamma().unwrap())
                        .sub(&mf.add(&one).ln_gamma().unwrap());
                    ln.div(&ln10(p)).with_prec(wp)
                };
                Ok(self.from_l1(res))
            }
            Repr::LogLog10(ll) => {
                if m.is_zero() {
                    return Ok(Magnitude::one());
                }
                // log10 T = 10^ll is astronomically larger than log10(2^wp m²)
                let mf = BigFloat::from_biguint(m, wp);
                let l = ll.with_prec(wp).pow10();
                let res_ll = mf.log10().unwrap().add(ll);
                let mlogt = mf.mul(&l);
                if mlogt.top() > 60 {
                    // the log10 M! term is far below the working precision
                    return Ok(self.from_l2(res_ll));
                }
                Ok(self.from_l1(mlogt.sub(&log10_factorial(m, wp))))
            }
        }
    }

    /// `ln binom(t, k)` for exact `t >= k > 0`.
    fn ln_binom_exact(&self, t: &BigUint, k: &BigUint, wp: u32) -> BigFloat {
        if let Some(k64) = k.to_u64().filter(|&k| k <= self.binom_iteration_limit) {
            let p = wp + 16;
            let num = ratpoly::falling_factorial(t, k64);
            let den = ratpoly::factorial(k64);
            let ln_num = BigFloat::from_biguint(&num, p).ln().unwrap();
            let ln_den = BigFloat::from_biguint(&den, p).ln().unwrap();
            return ln_num.sub(&ln_den).with_prec(wp);
        }
        let k_sq = k * k;
        if t.bits() > k_sq.bits() + wp as u64 + 1 {
            // k ln t − ln k!, the Σ ln(1 − i/t) tail is below 2^-wp
            let kf = BigFloat::from_biguint(k, wp + 16);
            let lt = BigFloat::from_biguint(t, wp + 16).ln().unwrap();
            return kf.mul(&lt).sub(&ln_factorial(k, wp + 16)).with_prec(wp);
        }
        let p = wp + (t.bits() - k.bits()) as u32 + 64 - (t.bits().leading_zeros()) + 16;
        let one = BigFloat::one(p);
        let tf = BigFloat::from_biguint(t, p);
        let kf = BigFloat::from_biguint(k, p);
        let lg = |x: BigFloat| x.ln_gamma().unwrap();
        lg(tf.add(&one))
            .sub(&lg(kf.add(&one)))
            .sub(&lg(tf.sub(&kf).add(&one)))
            .with_prec(wp)
    }

    /// `Σ_{ν=1}^{count} term(ν)` for a non-decreasing sequence of terms.
    ///
    /// Up to `sum_iteration_limit` terms are added one by one. Beyond that
    /// the result is `count · term(count)`, carrying the enclosure
    /// `[term(count), count · term(count)]` (width `log10 count`).
    pub fn sum_dominant<F>(&self, count: &Magnitude, mut term: F) -> Result<Magnitude>
    where
        F: FnMut(&Magnitude) -> Result<Magnitude>,
    {
        if let Some(c) = count.as_exact() {
            if *c <= BigUint::from(self.sum_iteration_limit) {
                let c = c.to_u64().unwrap();
                let mut acc = Magnitude::zero();
                for nu in 1..=c {
                    acc = self.add(&acc, &term(&Magnitude::from_u64(nu))?);
                }
                return Ok(acc);
            }
        }
        if count.width.is_some() {
            bail!(PreconditionViolated, "sum_dominant needs a count without enclosure");
        }
        let t_max = term(count)?;
        let mut out = self.mul(count, &t_max);
        let wp = self.wp();
        let lc = count.log10_value(wp).unwrap_or_else(|| BigFloat::zero(wp));
        let w = match &t_max.width {
            Some(w) => w.add(&lc),
            None => lc,
        };
        out.width = Some(w.with_prec(self.prec()));
        Ok(out)
    }
}

/// `log10(10^x + 10^y)`
fn log10_sum_of_pow10(x: &BigFloat, y: &BigFloat, wp: u32) -> BigFloat {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    let diff = lo.sub(hi);
    if diff < BigFloat::from_i64(-(wp as i64), wp) {
        return hi.with_prec(wp);
    }
    let one = BigFloat::one(wp);
    hi.add(&one.add(&diff.with_prec(wp).pow10()).log10().unwrap())
}

/// `ln m!` to about `wp` bits.
fn ln_factorial(m: &BigUint, wp: u32) -> BigFloat {
    if m.is_zero() {
        return BigFloat::zero(wp);
    }
    let p = wp + 64 - m.bits().leading_zeros() + 8;
    BigFloat::from_biguint(m, p).add(&BigFloat::one(p)).ln_gamma().unwrap().with_prec(wp)
}

fn log10_factorial(m: &BigUint, wp: u32) -> BigFloat {
    ln_factorial(m, wp + 8).div(&ln10(wp + 8)).with_prec(wp)
}
