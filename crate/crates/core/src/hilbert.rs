//! Hilbert polynomials `h(t) = χ(tK)` of canonically polarized manifolds
//! and the effective bounds on their coefficients.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{bail, Error, Result};
use crate::matrix::Matrix;
use crate::ratpoly::{binomial_u64, factorial, RatPoly};

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rat_u(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dimension, canonical volume `v = K^n` and optionally the Hilbert
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPolarization {
    n: usize,
    volume: BigRational,
    hilbert: Option<RatPoly>,
}

impl CanonicalPolarization {
    /// Checks `v > 0` and, when `h` is given, `deg h = n`, leading
    /// coefficient `v/n!` and integer values at integers.
    pub fn new(n: usize, volume: BigRational, hilbert: Option<RatPoly>) -> Result<Self> {
        if n == 0 {
            bail!(PreconditionViolated, "dimension n must be positive");
        }
        if !volume.is_positive() {
            bail!(PreconditionViolated, "volume v must be positive, got {volume}");
        }
        if let Some(h) = &hilbert {
            if h.degree() != n as isize {
                bail!(PreconditionViolated, "deg h = {} but n = {n}", h.degree());
            }
            let lead = &volume / rat_u(factorial(n as u64));
            if h.leading() != Some(&lead) {
                bail!(PreconditionViolated, "leading coefficient of h must be v/n! = {lead}");
            }
            if !h.is_integer_valued() {
                bail!(PreconditionViolated, "h = {h} is not integer-valued");
            }
        }
        Ok(CanonicalPolarization { n, volume, hilbert })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn volume(&self) -> &BigRational {
        &self.volume
    }

    pub fn hilbert(&self) -> Option<&RatPoly> {
        self.hilbert.as_ref()
    }
}

/// A curve of genus `g ≥ 2`: `n = 1`, `v = 2g − 2`, `h(t) = vt − v/2`.
pub fn curve_canonical_hilbert(genus: u64) -> Result<CanonicalPolarization> {
    if genus < 2 {
        bail!(PreconditionViolated, "curve genus must be at least 2, got {genus}");
    }
    let v = rat(2 * genus - 2);
    let h = RatPoly::new(alloc::vec![-&v / rat(2), v.clone()]);
    CanonicalPolarization::new(1, v, Some(h))
}

/// `m_n = 1 + (n+1)(n+2)/2`
pub fn m_n_constant(n: u64) -> BigUint {
    BigUint::from(1 + (n + 1) * (n + 2) / 2)
}

/// `a_p = 2^{p(p+3)/2 − 2} / p!`
pub fn a_p_constant(p: u64) -> BigRational {
    let e = p * (p + 3) / 2 - 2;
    BigRational::new(BigInt::one() << e as usize, BigInt::from(factorial(p)))
}

/// `n! · a_1 ⋯ a_n · m_n^k · (1 + m_n)^{nk} · v`
pub fn coeff_bound(n: u64, k: u64, v: &BigRational) -> BigRational {
    let mut b = rat_u(factorial(n));
    for p in 1..=n {
        b *= a_p_constant(p);
    }
    let m = m_n_constant(n);
    let mk = num_traits::pow(m.clone(), k as usize);
    let m1 = num_traits::pow(m + 1u32, (n * k) as usize);
    b * rat_u(mk * m1) * v
}

/// Entry `k` (for `k = 0..n`) says whether coefficient `h_{n−k}` obeys the
/// coefficient bound. For `k = 0` this means `h_n = v/n!` exactly; for
/// `k ≥ 1`, `|h_{n−k}| < coeff_bound(n, k, v)` (strict).
pub fn check_coeff_bounds(cp: &CanonicalPolarization) -> Result<Vec<bool>> {
    let Some(h) = cp.hilbert() else {
        bail!(PreconditionViolated, "check_coeff_bounds needs a Hilbert polynomial");
    };
    let n = cp.n() as u64;
    let v = cp.volume();
    Ok((0..=n)
        .map(|k| {
            let c = h.coeff((n - k) as usize);
            if k == 0 {
                c == v / rat_u(factorial(n))
            } else {
                c.abs() < coeff_bound(n, k, v)
            }
        })
        .collect())
}

/// The lower-triangular `U` with `u_ij = (−1)^{i−j} binom(n+1−j, n−i)`
/// (one-based, `j ≤ i`) and its inverse `W`.
///
/// `U` maps the coefficients `(x_n, …, x_1)` of `h(t)` to the coefficients
/// `(y_{n−1}, …, y_0)` of `h(t) − h(t−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    n: usize,
    u: Matrix,
    w: Matrix,
}

impl TransferMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn w(&self) -> &Matrix {
        &self.w
    }
}

/// `U` alone.
pub fn transfer_u(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i0, j0| {
        let (i, j) = (i0 as u64 + 1, j0 as u64 + 1);
        if j > i {
            return BigRational::zero();
        }
        let b = rat_u(binomial_u64(n as u64 + 1 - j, n as u64 - i));
        if (i - j) % 2 == 0 { b } else { -b }
    })
}

/// Builds `U`, inverts it by forward substitution and verifies
/// `det U = n!`, `U·W = I` and, for `n ≥ 2`, `|w_ij| < a_n`.
pub fn transfer_matrix(n: usize) -> Result<TransferMatrix> {
    if n == 0 {
        bail!(PreconditionViolated, "transfer matrix needs n >= 1");
    }
    let u = transfer_u(n);
    let w = u.lower_triangular_inverse()?;
    let det = u.det()?;
    let nf = rat_u(factorial(n as u64));
    if det != nf {
        bail!(InternalInconsistency, "det U = {det}, expected {nf}");
    }
    if u.mul(&w)? != Matrix::identity(n) {
        bail!(InternalInconsistency, "U·W is not the identity for n = {n}");
    }
    // the entry bound comes from the minor lemma, which needs n ≥ 2
    if n >= 2 {
        let an = a_p_constant(n as u64);
        let max = w.max_abs();
        if max >= an {
            bail!(InternalInconsistency, "max |w_ij| = {max} is not below a_{n} = {an}");
        }
    }
    Ok(TransferMatrix { n, u, w })
}

/// `W` through cofactors, `w_ij = (−1)^{i+j} det U_ji / det U`.
pub fn inverse_by_cofactors(u: &Matrix) -> Result<Matrix> {
    let n = u.rows();
    let det = u.det()?;
    if det.is_zero() {
        bail!(PreconditionViolated, "singular matrix");
    }
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = if n == 1 { BigRational::one() } else { u.minor(j, i).det()? };
            let c = if (i + j) % 2 == 0 { c } else { -c };
            out.set(i, j, c / &det);
        }
    }
    Ok(out)
}

/// Checks the hypotheses of the minor lemma on an `(n−1)×(n−1)` matrix
/// (`v_ij = 0` for `i+1 < j`, `|v_ij| < 2^{n+1−j}`) and returns whether
/// `|det V| < 2^{n(n+3)/2−2}`.
pub fn minor_bound_holds(v: &Matrix, n: usize) -> Result<bool> {
    if n < 2 {
        bail!(HypothesisViolated, "the minor bound needs n >= 2, got {n}");
    }
    if v.rows() != n - 1 || v.cols() != n - 1 {
        bail!(HypothesisViolated, "expected a {0}x{0} matrix, got {1}x{2}", n - 1, v.rows(), v.cols());
    }
    for i in 1..n {
        for j in 1..n {
            let x = v.get(i - 1, j - 1);
            if i + 1 < j && !x.is_zero() {
                return Err(Error::HypothesisViolated(format!("v_{i}{j} = {x} must vanish (i+1 < j)")));
            }
            let lim = rat(BigInt::one() << (n + 1 - j));
            if x.abs() >= lim {
                return Err(Error::HypothesisViolated(format!("|v_{i}{j}| = {} is not below 2^{}", x.abs(), n + 1 - j)));
            }
        }
    }
    let bound = rat(BigInt::one() << (n * (n + 3) / 2 - 2));
    Ok(v.det()?.abs() < bound)
}

/// `h(t) − h(t−1)`: the Hilbert polynomial of a general member of the
/// polarizing linear system.
pub fn hyperplane_section_poly(h: &RatPoly) -> Result<RatPoly> {
    if h.degree() < 1 {
        bail!(PreconditionViolated, "hyperplane section needs deg >= 1");
    }
    Ok(h.backward_difference())
}
