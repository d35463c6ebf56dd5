//! The effective constants `m0, δ(m), d(k,a), N, d, M` and the component
//! counts `C(g,s,h)` / `C(g,s,n,v)`.
//!
//! Every quantity up to `N` and `M` is an exact integer. `ℓ0*`, `d` and `C`
//! are [`Magnitude`]s, which stay exact while the policy allows.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{self, BigFloat};
use crate::error::{bail, Result};
use crate::gotzmann;
use crate::hilbert::coeff_bound;
use crate::magnitude::{Magnitude, Policy};
use crate::ratpoly::{factorial, floor_rational, RatPoly};

/// `(e+½)n^{7/3} + ½n^{5/3} + (e+½)n^{4/3} + 3n + ½n^{2/3} + 5` to `prec`
/// bits.
pub fn m0_expression(n: u64, prec: u32) -> BigFloat {
    let p = prec + 24;
    let one = BigFloat::one(p);
    let half = one.mul_pow2(-1);
    let e_half = bigfloat::e(p).add(&half);
    let ln_n = BigFloat::from_u64(n, p).ln().expect("n >= 1");
    let third = one.div(&BigFloat::from_u64(3, p));
    let root = |k: u64| ln_n.mul(&third).mul(&BigFloat::from_u64(k, p)).exp();
    let terms = [
        e_half.mul(&root(7)),
        half.mul(&root(5)),
        e_half.mul(&root(4)),
        BigFloat::from_u64(3 * n, p),
        half.mul(&root(2)),
        BigFloat::from_u64(5, p),
    ];
    terms.iter().fold(BigFloat::zero(p), |acc, t| acc.add(t)).with_prec(prec)
}

/// The smallest integer not less than [`m0_expression`]. The ceiling is
/// taken at 128 bits and confirmed at 256; if the value sits within
/// `10^-20` of an integer the precision is doubled (up to 2048 bits) before
/// giving up with `PrecisionAmbiguity`.
pub fn m0(n: u64) -> Result<u64> {
    if n == 0 {
        bail!(PreconditionViolated, "m0 needs n >= 1");
    }
    let mut prec = 128;
    let tie = BigFloat::parse_decimal("1e-20", 96)?;
    while prec <= 1024 {
        let lo = m0_expression(n, prec);
        let hi = m0_expression(n, 2 * prec);
        let dist = hi.sub(&BigFloat::from_bigint(&hi.round(), 2 * prec)).abs();
        if lo.ceil() == hi.ceil() && dist > tie {
            return hi.ceil().to_u64().ok_or_else(|| crate::Error::Overflow(format!("m0({n}) does not fit in u64")));
        }
        prec *= 2;
    }
    bail!(PrecisionAmbiguity, "m0({n}): expression is within 1e-20 of an integer")
}

/// Whether the pipeline runs on the given Hilbert polynomial or on the
/// worst case allowed by `(n, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    ExactH,
    VolumeBounded,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ExactH => "exact-h",
            Mode::VolumeBounded => "volume-bounded",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A problem instance: base genus `g`, `s` degenerate points, fiber
/// dimension `n`, canonical volume `v`, optional fiber Hilbert polynomial
/// `h`, and the twist degree `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    g: u64,
    s: u64,
    n: usize,
    v: BigRational,
    h: Option<RatPoly>,
    a: u64,
}

impl FamilyParams {
    /// Validates `2g − 2 + s > 0`, `n ≥ 1`, `v` a positive integer and,
    /// for a given `h`: `deg h = n`, leading coefficient `v/n!`, integer
    /// values. `a` starts at 2.
    pub fn new(g: u64, s: u64, n: usize, v: BigRational, h: Option<RatPoly>) -> Result<Self> {
        if 2 * g + s <= 2 {
            bail!(PreconditionViolated, "2g-2+s must be positive (g = {g}, s = {s})");
        }
        if n == 0 {
            bail!(PreconditionViolated, "fiber dimension n must be positive");
        }
        if !v.is_positive() || !v.is_integer() {
            bail!(PreconditionViolated, "volume v must be a positive integer (n!·h_n), got {v}");
        }
        if let Some(h) = &h {
            crate::hilbert::CanonicalPolarization::new(n, v.clone(), Some(h.clone()))?;
        }
        Ok(FamilyParams { g, s, n, v, h, a: 2 })
    }

    pub fn with_a(mut self, a: u64) -> Result<Self> {
        if a < 2 {
            bail!(PreconditionViolated, "twist degree a must be at least 2, got {a}");
        }
        self.a = a;
        Ok(self)
    }

    /// `a = (m0 − 1)(2g − 2)`, the pluricanonical choice (needs `g ≥ 2`).
    pub fn pluricanonical(self) -> Result<Self> {
        if self.g < 2 {
            bail!(PreconditionViolated, "the pluricanonical twist needs g >= 2, got g = {}", self.g);
        }
        let m = m0(self.n as u64)?;
        let a = (m - 1) * (2 * self.g - 2);
        self.with_a(a)
    }

    pub fn without_h(mut self) -> Self {
        self.h = None;
        self
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }

    pub fn h(&self) -> Option<&RatPoly> {
        self.h.as_ref()
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    fn v_int(&self) -> BigInt {
        self.v.to_integer()
    }

    /// `n(2g−2+s) + s`
    fn delta_factor(&self) -> BigInt {
        let base = BigInt::from(2 * self.g + self.s) - 2;
        BigInt::from(self.n) * base + self.s
    }

    /// `2g − 2 + a`
    fn twist_factor(&self) -> BigInt {
        BigInt::from(2 * self.g + self.a) - 2
    }
}

/// `H⁺(m) = Σ_k B_k m^k` with `B_n = v/n!` and
/// `B_{n−k} = coeff_bound(n, k, v)`: an upper bound for every Hilbert
/// polynomial of dimension `n` and volume `v` at `m ≥ 0`.
pub fn volume_hilbert_bound(n: usize, v: &BigRational) -> RatPoly {
    let mut c: Vec<BigRational> = (0..=n)
        .map(|i| coeff_bound(n as u64, (n - i) as u64, v))
        .collect();
    c[n] = v / BigRational::from_integer(BigInt::from(factorial(n as u64)));
    RatPoly::new(c)
}

/// Evaluation context shared by both modes.
struct Ctx<'a> {
    p: &'a FamilyParams,
    mode: Mode,
    m0: BigInt,
    hpoly: RatPoly,
}

impl<'a> Ctx<'a> {
    fn new(p: &'a FamilyParams, mode: Mode) -> Result<Self> {
        let hpoly = match mode {
            Mode::ExactH => match p.h() {
                Some(h) => h.clone(),
                None => bail!(PreconditionViolated, "exact-h mode needs a Hilbert polynomial h"),
            },
            Mode::VolumeBounded => volume_hilbert_bound(p.n, &p.v),
        };
        Ok(Ctx { p, mode, m0: BigInt::from(m0(p.n as u64)?), hpoly })
    }

    /// `h(m)` (exact mode) or `⌊H⁺(m)⌋` (volume mode).
    fn h_at(&self, m: &BigInt) -> Result<BigInt> {
        let val = self.hpoly.eval_int(m);
        let out = match self.mode {
            Mode::ExactH => {
                if !val.is_integer() {
                    bail!(NonIntegral, "h({m}) = {val} is not an integer");
                }
                val.to_integer()
            }
            Mode::VolumeBounded => floor_rational(&val),
        };
        if !out.is_positive() {
            bail!(NonPositive, "h({m}) = {out} must be positive");
        }
        Ok(out)
    }

    fn delta(&self, m: &BigInt) -> Result<BigInt> {
        let h = self.h_at(m)?;
        let mn_v = num_traits::pow(m.clone(), self.p.n) * self.p.v_int();
        Ok(self.p.delta_factor() * m * (mn_v + 1) * h)
    }

    fn d_ka(&self, k: &BigInt) -> Result<BigInt> {
        let m = &self.m0 * k;
        let h = self.h_at(&m)?;
        Ok(self.delta(&m)? + k * self.p.twist_factor() * h)
    }

    fn mu(&self) -> Result<BigUint> {
        match self.mode {
            Mode::ExactH => gotzmann::mu(&self.hpoly.substitute_scale(&self.m0), self.p.n),
            Mode::VolumeBounded => {
                // max{ k!·m0^k·B_k (floored), n }; at k = n this is m0^n·v
                let scaled = self.hpoly.substitute_scale(&self.m0);
                let mut best = BigInt::from(self.p.n);
                for k in 0..=self.p.n {
                    let kf = BigRational::from_integer(BigInt::from(factorial(k as u64)));
                    best = best.max(floor_rational(&(kf * scaled.coeff(k))));
                }
                Ok(best.to_biguint().expect("non-negative"))
            }
        }
    }

    /// `Σ ⌈|c_i|⌉ m^i` in magnitude arithmetic: an upper bound for `h(m)`.
    fn h_upper(&self, m: &Magnitude, policy: &Policy) -> Result<Magnitude> {
        let mut acc = Magnitude::zero();
        for (i, c) in self.hpoly.coeffs().iter().enumerate() {
            let c = c.abs().ceil().to_integer().to_biguint().unwrap();
            if c.is_zero() {
                continue;
            }
            let t = policy.mul(&Magnitude::exact(c), &policy.pow(m, &Magnitude::from_u64(i as u64))?);
            acc = policy.add(&acc, &t);
        }
        Ok(acc)
    }

    /// `d(k, a)` for a magnitude `k`: exact when `k` is, otherwise an upper
    /// bound assembled from [`Ctx::h_upper`].
    fn d_ka_magnitude(&self, k: &Magnitude, policy: &Policy) -> Result<Magnitude> {
        if let Some(k) = k.as_exact() {
            let d = self.d_ka(&BigInt::from(k.clone()))?;
            return Ok(policy.normalize(mag_of(&d)?));
        }
        let m = policy.mul(&mag_of(&self.m0)?, k);
        let h = self.h_upper(&m, policy)?;
        let mn_v = policy.mul(&policy.pow(&m, &Magnitude::from_u64(self.p.n as u64))?, &mag_of(&self.p.v_int())?);
        let mut delta = policy.mul(&mag_of(&self.p.delta_factor())?, &m);
        delta = policy.mul(&delta, &policy.add(&mn_v, &Magnitude::one()));
        delta = policy.mul(&delta, &h);
        let twist = policy.mul(&policy.mul(k, &mag_of(&self.p.twist_factor())?), &h);
        Ok(policy.add(&delta, &twist))
    }
}

/// Non-negative integer as a magnitude.
fn mag_of(x: &BigInt) -> Result<Magnitude> {
    match x.sign() {
        Sign::Minus => bail!(Domain, "negative value {x} cannot be a magnitude"),
        _ => Ok(Magnitude::exact(x.magnitude().clone())),
    }
}

/// `δ(m) = (n(2g−2+s) + s) · m · (m^n v + 1) · h(m)` on the given `h`.
pub fn delta(m: &BigInt, p: &FamilyParams) -> Result<BigInt> {
    if *m < BigInt::from(2) {
        bail!(PreconditionViolated, "δ(m) needs m >= 2, got {m}");
    }
    Ctx::new(p, Mode::ExactH)?.delta(m)
}

/// `d(k, a) = δ(m0 k) + k (2g − 2 + a) h(m0 k)` on the given `h`.
pub fn d_ka(k: &BigInt, p: &FamilyParams) -> Result<BigInt> {
    if !k.is_positive() {
        bail!(PreconditionViolated, "d(k, a) needs k >= 1, got {k}");
    }
    Ctx::new(p, Mode::ExactH)?.d_ka(k)
}

fn n_from(ctx: &Ctx, d1: &BigInt, h_m0: &BigInt) -> Result<BigInt> {
    let g = BigInt::from(ctx.p.g);
    let signed = match ctx.mode {
        Mode::ExactH => (BigInt::one() - g) * h_m0,
        // (1−g)h(m0) is at most h⁺(m0) for g = 0 and at most 0 for g ≥ 1
        Mode::VolumeBounded if ctx.p.g == 0 => h_m0.clone(),
        Mode::VolumeBounded => BigInt::zero(),
    };
    let n = d1 + signed - 1;
    if n < BigInt::one() {
        bail!(NonPositive, "N = {n} must be at least 1");
    }
    Ok(n)
}

/// `N = d(1, a) + (1 − g) h(m0) − 1` on the given `h`.
pub fn n_const(p: &FamilyParams) -> Result<BigInt> {
    let ctx = Ctx::new(p, Mode::ExactH)?;
    let h_m0 = ctx.h_at(&ctx.m0)?;
    n_from(&ctx, &ctx.d_ka(&BigInt::one())?, &h_m0)
}

fn d_from(
    ctx: &Ctx,
    d1: &BigInt,
    h_m0: &BigInt,
    ell_star: &Magnitude,
    d_ell: &Magnitude,
    policy: &Policy,
) -> Result<Magnitude> {
    let n = BigInt::from(ctx.p.n);
    if *h_m0 < &n + 2 {
        bail!(ExponentNegative, "h(m0) = {h_m0} < n + 2 = {}", &n + 2);
    }
    let e1: BigUint = (h_m0 - &n - 1u32).to_biguint().unwrap();
    let e2 = &e1 - 1u32;
    let base = policy.add(ell_star, &Magnitude::one());
    let first = policy.mul(&mag_of(d1)?, &policy.pow(&base, &Magnitude::exact(e1.clone()))?);
    let inner = policy.add(d_ell, &Magnitude::from_u64(2 * ctx.p.g));
    let second = policy.mul(
        &policy.mul(&Magnitude::exact(e1), &inner),
        &policy.pow(&base, &Magnitude::exact(e2))?,
    );
    Ok(policy.add(&first, &second))
}

/// `d = d(1,a)(ℓ*+1)^{h(m0)−n−1} + (h(m0)−n−1)(d(ℓ*,a)+2g)(ℓ*+1)^{h(m0)−n−2}`
/// on the given `h`.
pub fn d_const(p: &FamilyParams, ell_star: &Magnitude, policy: &Policy) -> Result<Magnitude> {
    let ctx = Ctx::new(p, Mode::ExactH)?;
    let h_m0 = ctx.h_at(&ctx.m0)?;
    let d1 = ctx.d_ka(&BigInt::one())?;
    let d_ell = ctx.d_ka_magnitude(ell_star, policy)?;
    d_from(&ctx, &d1, &h_m0, ell_star, &d_ell, policy)
}

/// Bound on the number of components of the Chow variety:
/// `binom((M+1) max{δ1, δ2}, M)^{(M+1)(δ2 binom(δ2+κ−1, κ) + binom(δ2+κ−1, κ−1))}`.
pub fn chow_bound(m: &BigUint, kappa: u64, delta1: &BigUint, delta2: &Magnitude, policy: &Policy) -> Result<Magnitude> {
    if m.is_zero() || kappa == 0 || delta1.is_zero() || *delta2 < Magnitude::one() {
        bail!(PreconditionViolated, "chow_bound needs M, κ, δ1, δ2 >= 1");
    }
    let m1 = Magnitude::exact(m + 1u32);
    let d1 = Magnitude::exact(delta1.clone());
    let dmax = if *delta2 > d1 { delta2.clone() } else { d1 };
    let base = policy.binom(&policy.mul(&m1, &dmax), m)?;
    let top = policy.add(delta2, &Magnitude::from_u64(kappa - 1));
    let b1 = policy.binom(&top, &BigUint::from(kappa))?;
    let b2 = policy.binom(&top, &BigUint::from(kappa - 1))?;
    let exp = policy.mul(&m1, &policy.add(&policy.mul(delta2, &b1), &b2));
    policy.pow(&base, &exp)
}

/// Every constant of one pipeline run.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub mode: Mode,
    pub params: FamilyParams,
    /// Significant digits carried by log-level values.
    pub digits: u32,
    pub m0: u64,
    pub h_m0: BigInt,
    pub mu: BigUint,
    pub ell_star: Magnitude,
    pub delta_m0: BigInt,
    pub d_1: BigInt,
    pub d_ell_star: Magnitude,
    pub n_const: BigInt,
    pub d_const: Magnitude,
    pub m_const: BigInt,
    pub c: Magnitude,
}

impl BoundReport {
    /// Field-by-field comparison `self ≤ upper`, as `(field, holds)` pairs.
    pub fn dominated_by(&self, upper: &BoundReport) -> Vec<(&'static str, bool)> {
        let int = |a: &BigInt, b: &BigInt| a <= b;
        alloc::vec![
            ("m0", self.m0 <= upper.m0),
            ("h_m0", int(&self.h_m0, &upper.h_m0)),
            ("mu", self.mu <= upper.mu),
            ("ell_star", self.ell_star <= upper.ell_star),
            ("delta_m0", int(&self.delta_m0, &upper.delta_m0)),
            ("d_1", int(&self.d_1, &upper.d_1)),
            ("d_ell_star", self.d_ell_star <= upper.d_ell_star),
            ("N", int(&self.n_const, &upper.n_const)),
            ("d", self.d_const <= upper.d_const),
            ("M", int(&self.m_const, &upper.m_const)),
            ("C", self.c <= upper.c),
        ]
    }
}

fn run(p: &FamilyParams, mode: Mode, policy: &Policy) -> Result<BoundReport> {
    let ctx = Ctx::new(p, mode)?;
    let h_m0 = ctx.h_at(&ctx.m0)?;
    let mu = ctx.mu()?;
    let ell_star = gotzmann::length_bound_from_mu(&mu, p.n, policy)?;
    let delta_m0 = ctx.delta(&ctx.m0)?;
    let d_1 = ctx.d_ka(&BigInt::one())?;
    let d_ell_star = ctx.d_ka_magnitude(&ell_star, policy)?;
    let n_const = n_from(&ctx, &d_1, &h_m0)?;
    let d_const = d_from(&ctx, &d_1, &h_m0, &ell_star, &d_ell_star, policy)?;
    let m_const: BigInt = (&n_const + 1u32) * BigInt::from(p.g + 2) - 1u32;
    let m_u = m_const.to_biguint().expect("M >= 1");
    let kappa = p.n as u64 + 1;
    let delta1 = BigUint::from(2 * p.g + 1);
    let step = Magnitude::exact(BigUint::from(kappa) * &delta1);
    let c = policy.sum_dominant(&d_const, |nu| {
        let p_nu = policy.mul(&step, nu);
        chow_bound(&m_u, kappa, &delta1, &p_nu, policy)
    })?;
    Ok(BoundReport {
        mode,
        params: p.clone(),
        digits: policy.digits,
        m0: ctx.m0.to_u64().unwrap(),
        h_m0,
        mu,
        ell_star,
        delta_m0,
        d_1,
        d_ell_star,
        n_const,
        d_const,
        m_const,
        c,
    })
}

/// Full pipeline on the given Hilbert polynomial.
pub fn c_gsh(p: &FamilyParams, policy: &Policy) -> Result<BoundReport> {
    run(p, Mode::ExactH, policy)
}

/// Full pipeline on the worst case allowed by `(g, s, n, v)`; any `h` in
/// `p` is ignored.
pub fn c_gsnv(p: &FamilyParams, policy: &Policy) -> Result<BoundReport> {
    run(p, Mode::VolumeBounded, policy)
}

/// One line per field, for logs and the text output format.
pub fn summary(r: &BoundReport) -> String {
    let d = r.digits.min(20);
    format!(
        "mode {}\nm0 {}\nh(m0) {}\nmu {}\nell* {}\ndelta(m0) {}\nd(1,a) {}\nN {}\nd {}\nM {}\nC {}",
        r.mode,
        r.m0,
        r.h_m0,
        r.mu,
        r.ell_star.to_human(d),
        r.delta_m0,
        r.d_1,
        r.n_const,
        r.d_const.to_human(d),
        r.m_const,
        r.c.to_human(d),
    )
}
