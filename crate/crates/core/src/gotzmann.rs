//! Binomial-sum (Gotzmann) decompositions of Hilbert polynomials.
//!
//! A Hilbert polynomial has a unique expansion
//! `P(x) = Σ_{i=1}^{ℓ} binom(x + a_i − (i−1), a_i)` with
//! `a_1 ≥ a_2 ≥ … ≥ a_ℓ ≥ 0`. This module finds it greedily, computes the
//! length `ℓ` independently through the recursion on
//! `ℓ_k = #{i : a_i ≥ k}`, and evaluates the closed-form bound
//! `ℓ ≤ Σ_k γ_k μ^{(k+1)!}`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};
use crate::magnitude::{Magnitude, Policy};
use crate::ratpoly::{binomial_poly, factorial, RatPoly};

/// `binom(x + a − (i−1), a)`; the constant 1 when `a = 0`.
pub fn binomial_term(a: usize, i: u64) -> RatPoly {
    let shift = BigInt::from(a as u64) - BigInt::from(i) + 1;
    binomial_poly(&shift, a)
}

/// The sequence `a_1 ≥ … ≥ a_ℓ ≥ 0` of a binomial-sum expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GotzmannDecomposition {
    a: Vec<u32>,
}

impl GotzmannDecomposition {
    /// Validates monotonicity.
    pub fn new(a: Vec<u32>) -> Result<Self> {
        if a.windows(2).any(|w| w[0] < w[1]) {
            bail!(PreconditionViolated, "a-sequence must be non-increasing");
        }
        Ok(GotzmannDecomposition { a })
    }

    pub fn a_seq(&self) -> &[u32] {
        &self.a
    }

    pub fn length(&self) -> usize {
        self.a.len()
    }

    /// `Σ binomial_term(a_i, i)`. Runs of `a = 0` are summed as a count.
    pub fn reconstruct(&self) -> RatPoly {
        let mut acc = RatPoly::zero();
        let zeros = self.a.iter().rev().take_while(|&&a| a == 0).count();
        let nonzero = self.a.len() - zeros;
        for (idx, &a) in self.a[..nonzero].iter().enumerate() {
            acc = &acc + &binomial_term(a as usize, idx as u64 + 1);
        }
        let zeros = RatPoly::constant(BigRational::from_integer(BigInt::from(zeros)));
        &acc + &zeros
    }
}

/// Limits for [`decompose_greedy`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyConfig {
    /// Largest decomposition length accepted.
    pub max_terms: u64,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig { max_terms: 10_000_000 }
    }
}

pub fn decompose_greedy(p: &RatPoly) -> Result<GotzmannDecomposition> {
    decompose_greedy_with(p, &GreedyConfig::default())
}

/// Greedy expansion: `a_i = deg R_i`, `R_{i+1} = R_i − binomial_term(a_i, i)`.
pub fn decompose_greedy_with(p: &RatPoly, cfg: &GreedyConfig) -> Result<GotzmannDecomposition> {
    if p.is_zero() {
        bail!(PreconditionViolated, "cannot decompose the zero polynomial");
    }
    if !p.is_integer_valued() {
        bail!(PreconditionViolated, "polynomial {p} is not integer-valued");
    }
    if !p.leading().unwrap().is_positive() {
        bail!(PreconditionViolated, "leading coefficient of {p} must be positive");
    }
    let mut a: Vec<u32> = Vec::new();
    let mut r = p.clone();
    loop {
        let d = r.degree();
        if d < 0 {
            break;
        }
        let lead = r.leading().unwrap();
        if !lead.is_positive() {
            bail!(NotGotzmann, "remainder {r} has non-positive leading coefficient after {} terms", a.len());
        }
        if let Some(&prev) = a.last() {
            if d as u32 > prev {
                bail!(NotGotzmann, "remainder degree {d} exceeds previous a = {prev}");
            }
        }
        if d == 0 {
            // the remaining terms are all binom(·, 0) = 1
            let c = lead.to_integer();
            let total = BigInt::from(a.len()) + &c;
            if total > BigInt::from(cfg.max_terms) {
                bail!(NotGotzmann, "length {total} exceeds the cap {}", cfg.max_terms);
            }
            a.extend(core::iter::repeat_n(0u32, c.to_usize().unwrap()));
            break;
        }
        if a.len() as u64 >= cfg.max_terms {
            bail!(NotGotzmann, "more than {} terms", cfg.max_terms);
        }
        let i = a.len() as u64 + 1;
        a.push(d as u32);
        r = &r - &binomial_term(d as usize, i);
    }
    Ok(GotzmannDecomposition { a })
}

/// Elementary symmetric polynomial of degree `r` in `u_i = i − j + 1`,
/// `i = 1..k`. Zero when `r > k`.
pub fn sigma_symmetric(k: u64, j: &BigInt, r: u64) -> BigInt {
    if r > k {
        return BigInt::zero();
    }
    let mut e = vec![BigInt::zero(); r as usize + 1];
    e[0] = BigInt::one();
    for i in 1..=k {
        let u = BigInt::from(i) - j + 1;
        for t in (1..=(i.min(r) as usize)).rev() {
            let add = &u * &e[t - 1];
            e[t] += add;
        }
    }
    e.swap_remove(r as usize)
}

/// The table `ℓ_{n+1} = 0, ℓ_n, …, ℓ_0` together with the coefficients
/// `q_{k,m}` of `Q_k(x) = Σ_{ℓ_{k+1} < j ≤ ℓ_k} binom(x + k − (j−1), k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthTable {
    /// `ell[i] = ℓ_{n+1−i}`
    ell: Vec<BigUint>,
    /// `q[k][m] = q_{k,m}`, `0 ≤ m ≤ k ≤ n`
    q: Vec<Vec<BigRational>>,
}

impl LengthTable {
    pub fn n(&self) -> usize {
        self.q.len() - 1
    }

    /// `(ℓ_{n+1}, ℓ_n, …, ℓ_0)`
    pub fn ell(&self) -> &[BigUint] {
        &self.ell
    }

    pub fn ell_k(&self, k: usize) -> &BigUint {
        &self.ell[self.n() + 1 - k]
    }

    pub fn ell0(&self) -> &BigUint {
        self.ell.last().unwrap()
    }

    pub fn q(&self) -> &[Vec<BigRational>] {
        &self.q
    }
}

/// Ranges up to this many indices are summed term by term through
/// symmetric products; longer ones use the hockey-stick identity.
const SIGMA_RANGE_LIMIT: u64 = 4096;

/// Coefficients of `Q_k` from the index range `(lo, hi]`, via symmetric
/// products.
pub fn q_row_sigma(k: u64, lo: &BigUint, hi: &BigUint) -> Vec<BigRational> {
    let kf = BigInt::from(factorial(k));
    let mut row = vec![BigInt::zero(); k as usize + 1];
    let mut j = BigInt::from(lo.clone()) + 1;
    let hi = BigInt::from(hi.clone());
    while j <= hi {
        for (m, slot) in row.iter_mut().enumerate() {
            *slot += sigma_symmetric(k, &j, k - m as u64);
        }
        j += 1;
    }
    row.into_iter().map(|c| BigRational::new(c, kf.clone())).collect()
}

/// Coefficients of `Q_k = binom(x+k+1−lo, k+1) − binom(x+k+1−hi, k+1)`.
pub fn q_row_hockey(k: u64, lo: &BigUint, hi: &BigUint) -> Vec<BigRational> {
    let base = BigInt::from(k + 1);
    let a = binomial_poly(&(&base - BigInt::from(lo.clone())), k as usize + 1);
    let b = binomial_poly(&(&base - BigInt::from(hi.clone())), k as usize + 1);
    let diff = &a - &b;
    (0..=k as usize).map(|m| diff.coeff(m)).collect()
}

fn q_row(k: u64, lo: &BigUint, hi: &BigUint) -> Vec<BigRational> {
    if hi - lo <= BigUint::from(SIGMA_RANGE_LIMIT) {
        q_row_sigma(k, lo, hi)
    } else {
        q_row_hockey(k, lo, hi)
    }
}

/// `ℓ_n = n!·p_n`, then `ℓ_k = ℓ_{k+1} + k!(p_k − Σ_{j>k} q_{j,k})` for
/// `k = n−1, …, 0`.
pub fn lengths_recursive(p: &RatPoly, n: usize) -> Result<LengthTable> {
    if p.degree() != n as isize {
        bail!(PreconditionViolated, "deg P = {} but n = {n}", p.degree());
    }
    let mut ell_desc: Vec<BigUint> = vec![BigUint::zero()]; // ℓ_{n+1}
    let mut q: Vec<Vec<BigRational>> = vec![Vec::new(); n + 1];
    for k in (0..=n).rev() {
        let kf = BigRational::from_integer(BigInt::from(factorial(k as u64)));
        let mut bracket = p.coeff(k);
        for row in q.iter().skip(k + 1) {
            bracket -= &row[k];
        }
        if bracket.is_negative() {
            bail!(NotGotzmann, "p_{k} − Σ_(j>{k}) q_(j,{k}) = {bracket} is negative");
        }
        let step = &kf * &bracket;
        if !step.is_integer() {
            bail!(NotGotzmann, "ℓ_{k} − ℓ_{} = {step} is not an integer", k + 1);
        }
        let prev = ell_desc.last().unwrap().clone();
        let cur = &prev + step.to_integer().to_biguint().unwrap();
        if k == n && cur.is_zero() {
            bail!(NotGotzmann, "ℓ_{n} = n!·p_n must be positive");
        }
        q[k] = q_row(k as u64, &prev, &cur);
        ell_desc.push(cur);
    }
    Ok(LengthTable { ell: ell_desc, q })
}

/// `k!·p_k` as an integer, or `NonIntegral`.
fn scaled_coeff(p: &RatPoly, k: usize) -> Result<BigInt> {
    let v = BigRational::from_integer(BigInt::from(factorial(k as u64))) * p.coeff(k);
    if !v.is_integer() {
        bail!(NonIntegral, "{k}!·p_{k} = {v} is not an integer");
    }
    Ok(v.to_integer())
}

/// `μ_P = max{n!p_n, |(n−1)!p_{n−1}|, …, |p_0|, n}`.
pub fn mu(p: &RatPoly, n: usize) -> Result<BigUint> {
    if p.degree() != n as isize {
        bail!(PreconditionViolated, "deg P = {} but n = {n}", p.degree());
    }
    let top = scaled_coeff(p, n)?;
    if !top.is_positive() {
        bail!(PreconditionViolated, "n!·p_n = {top} must be positive");
    }
    let mut best = BigUint::from(n as u64);
    for k in 0..=n {
        let v = scaled_coeff(p, k)?.abs().to_biguint().unwrap();
        best = best.max(v);
    }
    Ok(best)
}

/// `γ_0 = 1`, `γ_1 = 2`, `γ_k = k^{k+1} γ_{k−1}^{k+1}`.
pub fn gamma(k: u32) -> BigUint {
    match k {
        0 => BigUint::one(),
        _ => {
            let mut g = BigUint::from(2u32);
            for i in 2..=k {
                g = num_traits::pow(BigUint::from(i) * g, i as usize + 1);
            }
            g
        }
    }
}

/// `γ_k` as a magnitude (exact while the policy allows).
pub fn gamma_magnitude(k: u32, policy: &Policy) -> Result<Magnitude> {
    let mut g = Magnitude::from_u64(if k == 0 { 1 } else { 2 });
    for i in 2..=k {
        let base = policy.mul(&Magnitude::from_u64(i as u64), &g);
        g = policy.pow(&base, &Magnitude::from_u64(i as u64 + 1))?;
    }
    Ok(g)
}

/// `c_0 = 1`, `c_1 = 2`, `c_k = (Σ_{j<k} c_j)^{k+1} + 1`.
pub fn c_seq(k: u32) -> BigUint {
    let mut sum = BigUint::zero();
    let mut c = BigUint::one();
    for i in 0..=k {
        c = if i == 0 { BigUint::one() } else { num_traits::pow(sum.clone(), i as usize + 1) + 1u32 };
        sum += &c;
    }
    c
}

/// `Σ_{k=0}^{n} γ_k μ^{(k+1)!}`.
pub fn length_bound_from_mu(mu: &BigUint, n: usize, policy: &Policy) -> Result<Magnitude> {
    let mu = Magnitude::exact(mu.clone());
    let mut acc = Magnitude::zero();
    for k in 0..=n {
        let e = Magnitude::exact(factorial(k as u64 + 1));
        let term = policy.mul(&gamma_magnitude(k as u32, policy)?, &policy.pow(&mu, &e)?);
        acc = policy.add(&acc, &term);
    }
    Ok(acc)
}

/// `ℓ_0* = Σ_{k=0}^{n} γ_k μ_P^{(k+1)!}`.
pub fn length_upper_bound(p: &RatPoly, n: usize, policy: &Policy) -> Result<Magnitude> {
    length_bound_from_mu(&mu(p, n)?, n, policy)
}
