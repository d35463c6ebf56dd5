//! Exact univariate polynomials with rational coefficients, plus the
//! integer/binomial helpers the rest of the crate leans on.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with exact rational coefficients, stored ascending by degree.
///
/// The coefficient vector never has a trailing zero, so structural equality
/// is value equality and the zero polynomial is the empty vector
/// (degree −1).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x + c`
    pub fn linear(c: BigRational) -> Self {
        Self::new(vec![c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(t.clone()))
    }

    /// `P(x + c)`.
    pub fn shift(&self, c: &BigRational) -> RatPoly {
        let lin = RatPoly::linear(c.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, a| &(&acc * &lin) + &RatPoly::constant(a.clone()))
    }

    /// `P(x) − P(x − 1)`.
    pub fn backward_difference(&self) -> RatPoly {
        self - &self.shift(&-BigRational::one())
    }

    /// `P(m·x)`: coefficient `k` is multiplied by `m^k`.
    pub fn substitute_scale(&self, m: &BigInt) -> RatPoly {
        let m = BigRational::from_integer(m.clone());
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= &m;
        }
        RatPoly::new(out)
    }

    /// Coefficients `c_k = Δ^k P(0)` of `P` in the basis `binom(x, k)`.
    pub fn newton_coefficients(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = self.coeffs.len() - 1;
        let mut row: Vec<BigRational> = (0..=d)
            .map(|t| self.eval(&BigRational::from_integer(BigInt::from(t))))
            .collect();
        let mut out = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            out.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// True iff `P(t)` is an integer for every integer `t`.
    pub fn is_integer_valued(&self) -> bool {
        self.newton_coefficients().iter().all(BigRational::is_integer)
    }

    /// Builds `P` back from its coefficients in the `binom(x, k)` basis.
    pub fn from_newton_coefficients(c: &[BigRational]) -> RatPoly {
        c.iter().enumerate().fold(RatPoly::zero(), |acc, (k, ck)| {
            &acc + &binomial_poly(&BigInt::zero(), k).scale(ck)
        })
    }
}

/// `binom(x + shift, k)` as a polynomial in `x` (degree `k`, and the
/// constant 1 for `k = 0`).
pub fn binomial_poly(shift: &BigInt, k: usize) -> RatPoly {
    let mut p = RatPoly::one();
    for r in 0..k {
        let c = BigRational::from_integer(shift - BigInt::from(r));
        p = &p * &RatPoly::linear(c);
    }
    p.scale(&BigRational::new(BigInt::one(), factorial(k as u64).into()))
}

pub fn factorial(n: u64) -> BigUint {
    product_range(1, n)
}

/// `lo · (lo+1) ⋯ hi`, by binary splitting; 1 when the range is empty.
pub fn product_range(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        return (lo..=hi).fold(BigUint::one(), |acc, i| acc * i);
    }
    let mid = lo + (hi - lo) / 2;
    product_range(lo, mid) * product_range(mid + 1, hi)
}

/// `top · (top−1) ⋯ (top−count+1)` for big `top`.
pub fn falling_factorial(top: &BigUint, count: u64) -> BigUint {
    fn go(top: &BigUint, lo: u64, hi: u64) -> BigUint {
        if lo > hi {
            return BigUint::one();
        }
        if hi - lo < 16 {
            return (lo..=hi).fold(BigUint::one(), |acc, i| acc * (top - i));
        }
        let mid = lo + (hi - lo) / 2;
        go(top, lo, mid) * go(top, mid + 1, hi)
    }
    if count == 0 {
        return BigUint::one();
    }
    go(top, 0, count - 1)
}

/// Exact binomial coefficient for big `top`; zero when `k > top`.
pub fn binomial(top: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *top {
        return BigUint::zero();
    }
    let k = {
        let rest = top - k;
        match u64::try_from(&rest) {
            Ok(r) if r < k => r,
            _ => k,
        }
    };
    falling_factorial(top, k) / factorial(k)
}

pub fn binomial_u64(top: u64, k: u64) -> BigUint {
    binomial(&BigUint::from(top), k)
}

/// Floor of a rational as a big integer.
pub fn floor_rational(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

fn add_coeffs(a: &[BigRational], b: &[BigRational], negate_b: bool) -> RatPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let coeffs = (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            if negate_b { x - y } else { x + y }
        })
        .collect();
    RatPoly::new(coeffs)
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
