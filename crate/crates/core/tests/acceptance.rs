//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shafbound_core::bigfloat::BigFloat;
use shafbound_core::bounds::{c_gsh, c_gsnv, d_const, m0, m0_expression};
use shafbound_core::gotzmann::{decompose_greedy, lengths_recursive, length_upper_bound};
use shafbound_core::hilbert::{a_p_constant, check_coeff_bounds, curve_canonical_hilbert, minor_bound_holds, transfer_matrix};
use shafbound_core::matrix::Matrix;
use shafbound_core::ratpoly::{binomial, factorial};
use shafbound_core::{BigInt, BigRational, BigUint, Error, FamilyParams, Magnitude, Policy, RatPoly};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn f64_of(x: &BigFloat) -> f64 {
    x.to_f64()
}

fn log10(x: &Magnitude) -> f64 {
    f64_of(&x.log10_value(128).unwrap())
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(1.0)
}

/// Constants 1..20, `cx + b` for `1 ≤ c ≤ 20`, `|b| ≤ 20`, and the curve
/// polynomials `vt − v/2` (genus 2..50) under `t ↦ 3t` and `t ↦ 16t`.
fn corpus() -> Vec<RatPoly> {
    let mut out: Vec<RatPoly> = (1..=20).map(|c| RatPoly::from_integers(&[c])).collect();
    for c in 1..=20 {
        for b in -20..=20 {
            out.push(RatPoly::from_integers(&[b, c]));
        }
    }
    for g in 2..=50 {
        let h = curve_canonical_hilbert(g).unwrap().hilbert().unwrap().clone();
        for m in [3, 16] {
            out.push(h.substitute_scale(&BigInt::from(m)));
        }
    }
    out
}

struct Decomposed {
    p: RatPoly,
    length: usize,
}

fn successes(corpus: &[RatPoly]) -> Result<Vec<Decomposed>, String> {
    let mut ok = Vec::new();
    for p in corpus {
        match decompose_greedy(p) {
            Ok(dec) => {
                if dec.reconstruct() != *p {
                    return Err(format!("{p} does not reconstruct"));
                }
                ok.push(Decomposed { p: p.clone(), length: dec.length() });
            }
            Err(Error::NotGotzmann(_)) => {}
            Err(e) => return Err(format!("{p}: unexpected error {e}")),
        }
    }
    Ok(ok)
}

fn criterion_1() -> Outcome {
    let corpus = corpus();
    let t = Instant::now();
    match successes(&corpus) {
        Ok(ok) if t.elapsed() < Duration::from_secs(5) => pass(format!(
            "{} polynomials, {} decomposed and reconstructed, {} not Gotzmann",
            corpus.len(),
            ok.len(),
            corpus.len() - ok.len()
        )),
        Ok(_) => fail(format!("took {:.2?}, limit 5 s", t.elapsed())),
        Err(e) => fail(e),
    }
}

fn criterion_2() -> Outcome {
    let ok = match successes(&corpus()) {
        Ok(ok) => ok,
        Err(e) => return fail(e),
    };
    for d in &ok {
        let n = d.p.degree() as usize;
        match lengths_recursive(&d.p, n) {
            Ok(t) if *t.ell0() == BigUint::from(d.length) => {}
            Ok(t) => return fail(format!("{}: recursion {} vs greedy {}", d.p, t.ell0(), d.length)),
            Err(e) => return fail(format!("{}: {e}", d.p)),
        }
    }
    let a = decompose_greedy(&RatPoly::from_integers(&[1, 3])).unwrap();
    let b = decompose_greedy(&RatPoly::from_integers(&[0, 3])).unwrap();
    if a.a_seq() != [1, 1, 1, 0] || b.a_seq() != [1, 1, 1] {
        return fail(format!("3x+1 -> {:?}, 3x -> {:?}", a.a_seq(), b.a_seq()));
    }
    pass(format!("{} successes agree; 3x+1 -> (1,1,1,0), 3x -> (1,1,1)", ok.len()))
}

fn criterion_3() -> Outcome {
    let ok = match successes(&corpus()) {
        Ok(ok) => ok,
        Err(e) => return fail(e),
    };
    let pol = Policy::default();
    let mut checked = 0;
    for d in &ok {
        let n = d.p.degree() as usize;
        let star = match length_upper_bound(&d.p, n, &pol) {
            Ok(s) => s,
            Err(e) => return fail(format!("{}: {e}", d.p)),
        };
        if let Some(star) = star.as_exact() {
            checked += 1;
            if BigUint::from(d.length) > *star {
                return fail(format!("{}: l0 = {} > l0* = {star}", d.p, d.length));
            }
        }
    }
    let p = RatPoly::from_integers(&[-1, 32]);
    let l0 = lengths_recursive(&p, 1).unwrap().ell0().clone();
    let greedy = decompose_greedy(&p).unwrap();
    let star = length_upper_bound(&p, 1, &pol).unwrap();
    // 32 linear terms leave the constant −464, so 495 = 32 + 463 terms in all
    let zeros = greedy.a_seq().iter().filter(|&&a| a == 0).count();
    if l0 != BigUint::from(495u32) || greedy.length() != 495 || zeros != 463 {
        return fail(format!("32x-1: l0 = {l0}, greedy {}, a=0 terms {zeros}", greedy.length()));
    }
    if star.as_exact() != Some(&BigUint::from(2080u32)) {
        return fail(format!("32x-1: l0* = {star}"));
    }
    pass(format!("{checked} exact l0* checked; 32x-1: l0 = 495 (463 of them a=0) <= l0* = 2080"))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=12usize {
        // transfer_matrix checks det U = n! and U·W = I; the entry bound is
        // re-checked here for every n, n = 1 included
        let tm = match transfer_matrix(n) {
            Ok(tm) => tm,
            Err(e) => return fail(format!("n = {n}: {e}")),
        };
        if tm.u().det().unwrap() != BigRational::from_integer(factorial(n as u64).into()) {
            return fail(format!("n = {n}: det U != n!"));
        }
        if tm.u().mul(tm.w()).unwrap() != Matrix::identity(n) {
            return fail(format!("n = {n}: U·W != I"));
        }
        let max = tm.w().max_abs();
        let an = a_p_constant(n as u64);
        if max >= an {
            bad.push(format!("n = {n}: max|w_ij| = {max} is not < a_{n} = {an}"));
        }
    }
    let el = t.elapsed();
    if !bad.is_empty() {
        return fail(format!("det U = n! and U·W = I for n = 1..12, but {}", bad.join("; ")));
    }
    if el >= Duration::from_secs(1) {
        return fail(format!("took {el:.2?}, limit 1 s"));
    }
    pass("det U = n!, U·W = I and max|w_ij| < a_n for n = 1..12")
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for n in 2..=8usize {
        for _ in 0..10_000 {
            let v = Matrix::from_fn(n - 1, n - 1, |i0, j0| {
                let (i, j) = (i0 + 1, j0 + 1);
                if i + 1 < j {
                    return int(0);
                }
                let lim = 1i64 << (n + 1 - j);
                int(rng.random_range(-lim + 1..lim))
            });
            match minor_bound_holds(&v, n) {
                Ok(true) => {}
                Ok(false) => return fail(format!("n = {n}: |det V| bound fails for {v:?}")),
                Err(e) => return fail(format!("n = {n}: {e}")),
            }
        }
    }
    let el = t.elapsed();
    if el >= Duration::from_secs(30) {
        return fail(format!("took {el:.2?}, limit 30 s"));
    }
    pass("7 x 10^4 matrices, zero failures")
}

fn criterion_6() -> Outcome {
    for g in 2..=50 {
        let cp = curve_canonical_hilbert(g).unwrap();
        let ok = check_coeff_bounds(&cp).unwrap();
        if !ok.iter().all(|&b| b) {
            return fail(format!("genus {g}: {ok:?}"));
        }
    }
    pass("genus 2..50 all within bounds")
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let p = FamilyParams::new(2, 0, 1, int(2), Some(RatPoly::from_integers(&[-1, 2]))).unwrap();
    let pol = Policy::default();
    let r = match c_gsh(&p, &pol) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let checks = [
        ("m0", r.m0 == 16),
        ("h(m0)", r.h_m0 == BigInt::from(31)),
        ("delta(m0)", r.delta_m0 == BigInt::from(32736)),
        ("d(1,2)", r.d_1 == BigInt::from(32860)),
        ("N", r.n_const == BigInt::from(32828)),
        ("M", r.m_const == BigInt::from(131315)),
        ("mu", r.mu == BigUint::from(32u32)),
        ("l0*", r.ell_star.as_exact() == Some(&BigUint::from(2080u32))),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return fail(format!("{name} mismatch"));
    }
    let Some(d) = r.d_const.as_exact() else {
        return fail("d is not exact");
    };
    let digits = d.to_string().len();
    let ld = log10(&r.d_const);
    if digits != 109 || !(108.8..=108.9).contains(&ld) {
        return fail(format!("d has {digits} digits, log10 d = {ld}"));
    }
    let log_only = Policy { max_exact_digits: 0, ..Policy::default() };
    let dl = d_const(&p, &Magnitude::from_u64(2080), &log_only).unwrap();
    let ll = f64_of(dl.as_log10().unwrap());
    if dl.level() != 1 || !rel_close(ld, ll, 1e-6) {
        return fail(format!("exact log10 d = {ld}, log path {ll}"));
    }
    if r.c.level() != 2 {
        return fail(format!("C at level {}", r.c.level()));
    }
    let llc = f64_of(r.c.as_loglog10().unwrap());
    let Some(w) = r.c.enclosure_log10_width() else {
        return fail("C carries no enclosure");
    };
    if !(340.0..=345.0).contains(&llc) {
        return fail(format!("log10 log10 C = {llc}"));
    }
    let el = t.elapsed();
    if el >= Duration::from_secs(10) {
        return fail(format!("took {el:.2?}, limit 10 s"));
    }
    pass(format!(
        "all 8 constants exact; d has 109 digits, log10 d = {ld:.4}; C = 10^10^{llc:.4}, enclosure width {} in log10",
        w.to_decimal_string(6)
    ))
}

fn criterion_8() -> Outcome {
    let want = [(1, 16), (2, 38), (3, 74)];
    for (n, m) in want {
        match m0(n) {
            Ok(x) if x == m => {}
            Ok(x) => return fail(format!("m0({n}) = {x}, expected {m}")),
            Err(e) => return fail(format!("m0({n}): {e}")),
        }
        for prec in [128, 256, 512] {
            if m0_expression(n, prec).ceil() != BigInt::from(m) {
                return fail(format!("m0({n}) unstable at {prec} bits"));
            }
        }
    }
    pass("m0 = 16, 38, 74, stable at 128/256/512 bits")
}

/// Values at or above 10, so that every level can hold them.
fn lattice() -> Vec<Magnitude> {
    let exact = ["10", "1000", "12345678901234567890", "1000000000000000000000000000000000000000000000000000000000003", "7"]
        .iter()
        .map(|s| Magnitude::exact(s.parse().unwrap()));
    let l1 = ["1.5", "75.25", "1234.5", "1000000.7", "100000000000000"]
        .iter()
        .map(|s| Magnitude::from_log10(BigFloat::parse_decimal(s, 200).unwrap()).unwrap());
    let l2 = ["15.5", "20", "100.5", "1000", "100000"]
        .iter()
        .map(|s| Magnitude::from_loglog10(BigFloat::parse_decimal(s, 200).unwrap()).unwrap());
    exact.chain(l1).chain(l2).collect()
}

fn criterion_9() -> Outcome {
    let pol = Policy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let rand_big = |rng: &mut ChaCha8Rng, digits: usize| -> BigUint {
        let len = rng.random_range(1..=digits);
        let s: String = (0..len).map(|i| char::from(b'0' + rng.random_range(if i == 0 { 1 } else { 0 }..10u8))).collect();
        s.parse().unwrap()
    };
    let tol = BigFloat::parse_decimal("1e-9", 128).unwrap();
    let mut worst = BigFloat::zero(128);
    for i in 0..10_000 {
        let (exact, logged) = match i % 3 {
            0 => {
                let (a, b) = (rand_big(&mut rng, 300), rand_big(&mut rng, 300));
                let la = pol.promote_to(&Magnitude::exact(a.clone()), 1).unwrap();
                let lb = pol.promote_to(&Magnitude::exact(b.clone()), 1).unwrap();
                (Magnitude::exact(a * b), pol.mul(&la, &lb))
            }
            1 => {
                let a = rand_big(&mut rng, 300) + 1u32;
                let e = rng.random_range(1..200u64);
                let la = pol.promote_to(&Magnitude::exact(a.clone()), 1).unwrap();
                (Magnitude::exact(num_traits::pow(a, e as usize)), pol.pow(&la, &Magnitude::from_u64(e)).unwrap())
            }
            _ => {
                let top = rng.random_range(2..5000u64);
                let k = rng.random_range(1..top);
                let lt = pol.promote_to(&Magnitude::from_u64(top), 1).unwrap();
                let exact = binomial(&BigUint::from(top), k);
                (Magnitude::exact(exact), pol.binom(&lt, &BigUint::from(k)).unwrap())
            }
        };
        let x = exact.log10_value(256).unwrap();
        let y = logged.log10_value(256).unwrap();
        let scale = if x > BigFloat::one(256) { x.clone() } else { BigFloat::one(256) };
        let err = x.sub(&y).abs().div(&scale);
        if err > tol {
            return fail(format!("cross-check {i}: exact log10 {x} vs log path {y}"));
        }
        if err > worst {
            worst = err;
        }
    }
    // monotonicity on the lattice: a ≤ a', b ≤ b' ⇒ mul and pow are ordered
    let pts = lattice();
    let mut pairs = 0usize;
    let mul: Vec<Vec<Magnitude>> = pts.iter().map(|a| pts.iter().map(|b| pol.mul(a, b)).collect()).collect();
    let pow: Vec<Vec<Magnitude>> = pts.iter().map(|a| pts.iter().map(|b| pol.pow(a, b).unwrap()).collect()).collect();
    for (i, a) in pts.iter().enumerate() {
        for (i2, a2) in pts.iter().enumerate() {
            if a > a2 {
                continue;
            }
            for (j, b) in pts.iter().enumerate() {
                for (j2, b2) in pts.iter().enumerate() {
                    if b > b2 {
                        continue;
                    }
                    pairs += 1;
                    if mul[i][j] > mul[i2][j2] {
                        return fail(format!("mul not monotone: {a} * {b} > {a2} * {b2}"));
                    }
                    if pow[i][j] > pow[i2][j2] {
                        return fail(format!("pow not monotone: {a} ^ {b} > {a2} ^ {b2}"));
                    }
                }
            }
        }
    }
    pass(format!(
        "10^4 cross-checks, worst relative log10 error {}; {pairs} ordered lattice pairs monotone",
        worst.to_decimal_string(3)
    ))
}

fn criterion_10() -> Outcome {
    let p = FamilyParams::new(2, 0, 1, int(2), Some(RatPoly::from_integers(&[-1, 2]))).unwrap();
    let pol = Policy::default();
    let (exact, vol) = match (c_gsh(&p, &pol), c_gsnv(&p, &pol)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(e.to_string()),
    };
    let cmp = exact.dominated_by(&vol);
    let bad: Vec<&str> = cmp.iter().filter(|(_, ok)| !ok).map(|(f, _)| *f).collect();
    if !bad.is_empty() {
        return fail(format!("volume-bounded below exact-h in {}", bad.join(", ")));
    }
    pass(format!("{} fields dominated; C: {} <= {}", cmp.len(), exact.c.to_human(8), vol.c.to_human(8)))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Gotzmann round-trip", criterion_1),
        ("Oracle equivalence", criterion_2),
        ("Tower bound", criterion_3),
        ("Transfer matrix", criterion_4),
        ("Minor lemma suite", criterion_5),
        ("Coefficient bounds on curves", criterion_6),
        ("Pipeline instance", criterion_7),
        ("m0 table", criterion_8),
        ("Magnitude consistency", criterion_9),
        ("Dominance", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {} [{:.2?}]", i + 1, out.detail, t.elapsed());
        failed += usize::from(!out.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
