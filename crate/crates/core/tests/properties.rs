use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use shafbound_core::gotzmann::{self, c_seq, decompose_greedy, gamma, lengths_recursive, length_upper_bound};
use shafbound_core::hilbert::{self, check_coeff_bounds, hyperplane_section_poly, transfer_u, CanonicalPolarization};
use shafbound_core::matrix::Matrix;
use shafbound_core::ratpoly::{binomial, factorial};
use shafbound_core::{bounds, BigInt, BigRational, BigUint, Error, FamilyParams, Magnitude, Policy, RatPoly};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rat() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..7).prop_map(|(n, d)| q(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(rat(), 1..=max_deg + 1).prop_map(RatPoly::new)
}

/// Integer-valued polynomials as integer combinations of `binom(t, k)`.
fn int_valued(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-20i64..20, 1..=max_deg + 1)
        .prop_map(|c| RatPoly::from_newton_coefficients(&c.into_iter().map(int).collect::<Vec<_>>()))
}

fn big_uint(max_digits: usize) -> impl Strategy<Value = BigUint> {
    prop::collection::vec(0u8..10, 1..=max_digits).prop_map(|d| {
        let s: String = d.iter().map(|x| char::from(b'0' + x)).collect();
        s.parse::<BigUint>().unwrap() + 1u32
    })
}

fn log10(x: &Magnitude) -> f64 {
    x.log10_value(128).unwrap().to_f64()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eval_is_a_ring_map(a in poly(5), b in poly(5), t in rat()) {
        prop_assert_eq!((&a + &b).eval(&t), a.eval(&t) + b.eval(&t));
        prop_assert_eq!((&a - &b).eval(&t), a.eval(&t) - b.eval(&t));
        prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
    }

    #[test]
    fn backward_difference_degree(p in poly(6)) {
        prop_assume!(p.degree() >= 1);
        let d = p.backward_difference();
        prop_assert_eq!(d.degree(), p.degree() - 1);
        prop_assert_eq!(d.leading().unwrap(), &(p.leading().unwrap() * int(p.degree() as i64)));
    }

    #[test]
    fn substitute_scale_composes(p in poly(5), a in -9i64..9, b in -9i64..9) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(p.substitute_scale(&a).substitute_scale(&b), p.substitute_scale(&(&a * &b)));
    }

    #[test]
    fn integer_valued_survives_difference(p in int_valued(6)) {
        prop_assert!(p.is_integer_valued());
        prop_assert!(p.backward_difference().is_integer_valued());
    }

    #[test]
    fn gotzmann_round_trip_and_oracle(p in int_valued(3)) {
        prop_assume!(p.leading().is_some_and(|c| c.is_positive()));
        let n = p.degree() as usize;
        match decompose_greedy(&p) {
            Ok(dec) => {
                prop_assert_eq!(dec.reconstruct(), p.clone());
                let table = lengths_recursive(&p, n).unwrap();
                prop_assert_eq!(table.ell0(), &BigUint::from(dec.length()));
                // ℓ_n = n!·p_n and the chain is non-decreasing
                let top = BigRational::from_integer(factorial(n as u64).into()) * p.coeff(n);
                prop_assert_eq!(BigRational::from_integer(table.ell_k(n).clone().into()), top);
                prop_assert!(!table.ell_k(n).is_zero());
                prop_assert!(table.ell().windows(2).all(|w| w[0] <= w[1]));
                // μ_P needs every k!·p_k integral
                match length_upper_bound(&p, n, &Policy::default()) {
                    Ok(star) => prop_assert!(Magnitude::exact(table.ell0().clone()) <= star),
                    Err(e) => prop_assert!(matches!(e, Error::NonIntegral(_)), "{e:?}"),
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::NotGotzmann(_)), "{e:?}"),
        }
    }

    #[test]
    fn hyperplane_is_difference(p in poly(5)) {
        prop_assume!(p.degree() >= 1);
        prop_assert_eq!(hyperplane_section_poly(&p).unwrap(), p.backward_difference());
    }

    #[test]
    fn transfer_matches_coefficient_formula(n in 1usize..8, xs in prop::collection::vec(rat(), 8)) {
        // x = (x_n, …, x_1); y_i = −Σ_{j>i} (−1)^{j−i} binom(j, i) x_j
        let x_of = |j: usize| xs[j - 1].clone();
        let x: Vec<BigRational> = (1..=n).rev().map(x_of).collect();
        let y: Vec<BigRational> = (0..n)
            .rev()
            .map(|i| {
                let mut s = BigRational::zero();
                for j in i + 1..=n {
                    let b = BigRational::from_integer(binomial(&BigUint::from(j), i as u64).into());
                    let t = b * x_of(j);
                    s += if (j - i) % 2 == 0 { t } else { -t };
                }
                -s
            })
            .collect();
        prop_assert_eq!(transfer_u(n).mul_vec(&x).unwrap(), y);
    }

    #[test]
    fn exact_and_log_mul_pow_agree(a in big_uint(300), b in big_uint(300), e in 1u64..40) {
        let pol = Policy::default();
        let la = pol.promote_to(&Magnitude::exact(a.clone()), 1).unwrap();
        let lb = pol.promote_to(&Magnitude::exact(b.clone()), 1).unwrap();
        let exact = Magnitude::exact(&a * &b);
        prop_assert!(close(log10(&exact), log10(&pol.mul(&la, &lb)), 1e-9));
        let pe = Magnitude::exact(num_traits::pow(a.clone(), e as usize));
        let pl = pol.pow(&la, &Magnitude::from_u64(e)).unwrap();
        prop_assert!(close(log10(&pe), log10(&pl), 1e-9));
    }

    #[test]
    fn binom_exact_small(t in 0u64..10_000, frac in 0.0f64..=1.0) {
        let m = ((t as f64) * frac) as u64;
        let got = Policy::default().binom(&Magnitude::from_u64(t), &BigUint::from(m)).unwrap();
        prop_assert_eq!(got.as_exact(), Some(&binomial(&BigUint::from(t), m)));
    }

    #[test]
    fn promotion_preserves_order(a in big_uint(60), b in big_uint(60), la in 0u8..3, lb in 0u8..3) {
        let pol = Policy::default();
        // level 2 starts at 10
        let (a, b) = (a + 9u32, b + 9u32);
        let (x, y) = (Magnitude::exact(a.clone()), Magnitude::exact(b.clone()));
        let px = pol.promote_to(&x, la).unwrap();
        let py = pol.promote_to(&y, lb).unwrap();
        let digits_apart = (log10(&x) - log10(&y)).abs() > 1e-30;
        if a != b && digits_apart {
            prop_assert_eq!(px.partial_cmp(&py), x.partial_cmp(&y));
        }
    }

    #[test]
    fn mul_monotone(a in big_uint(40), da in big_uint(5), b in big_uint(40), db in big_uint(5), la in 0u8..3, lb in 0u8..3) {
        let pol = Policy::default();
        let (a, b) = (a + 9u32, b + 9u32);
        let lift = |v: BigUint, l: u8| pol.promote_to(&Magnitude::exact(v), l).unwrap();
        let lo = pol.mul(&lift(a.clone(), la), &lift(b.clone(), lb));
        let hi = pol.mul(&lift(&a + &da, lb), &lift(&b + &db, la));
        prop_assert!(lo <= hi);
    }

    #[test]
    fn minor_lemma_random(n in 2usize..=8, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v = Matrix::from_fn(n - 1, n - 1, |i0, j0| {
            let (i, j) = (i0 + 1, j0 + 1);
            if i + 1 < j {
                return BigRational::zero();
            }
            let lim = 1i64 << (n + 1 - j);
            int(rng.random_range(-lim + 1..lim))
        });
        prop_assert!(hilbert::minor_bound_holds(&v, n).unwrap());
    }

    #[test]
    fn volume_dominates_any_admissible_curve_h(v in 1i64..5, b in -20i64..60, g in 0u64..4, s in 0u64..4) {
        prop_assume!(2 * g + s > 2);
        let h = RatPoly::from_integers(&[b, v]);
        let cp = CanonicalPolarization::new(1, int(v), Some(h.clone())).unwrap();
        prop_assume!(check_coeff_bounds(&cp).unwrap().into_iter().all(|ok| ok));
        let p = FamilyParams::new(g, s, 1, int(v), Some(h)).unwrap();
        let pol = Policy::default();
        match bounds::c_gsh(&p, &pol) {
            Ok(exact) => {
                let vol = bounds::c_gsnv(&p, &pol).unwrap();
                for (field, ok) in exact.dominated_by(&vol) {
                    prop_assert!(ok, "{}", field);
                }
            }
            // h(m0) < n + 2 or N < 1 for tiny data
            Err(e) => prop_assert!(matches!(e, Error::ExponentNegative(_) | Error::NonPositive(_)), "{e:?}"),
        }
    }
}

#[test]
fn tower_domination() {
    for k in 0..=4 {
        assert!(c_seq(k) <= gamma(k), "k = {k}");
    }
    assert!(gotzmann::gamma(3).to_u64().is_some());
}

#[test]
fn curve_coefficients_in_bounds() {
    for g in 2..=50 {
        let cp = hilbert::curve_canonical_hilbert(g).unwrap();
        assert!(check_coeff_bounds(&cp).unwrap().iter().all(|&ok| ok));
    }
}

#[test]
fn determinants_of_u() {
    for n in 1..=12usize {
        let u = transfer_u(n);
        assert_eq!(u.det().unwrap(), BigRational::from_integer(factorial(n as u64).into()));
        assert!(u.is_lower_triangular());
        assert!(!u.get(0, 0).is_negative() && !u.get(0, 0).is_zero());
    }
    assert!(BigInt::one().is_positive());
}
