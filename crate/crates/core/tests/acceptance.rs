//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line.

use std::time::{Duration, Instant};

use liouheun_core::coverings::{
    compose, cyclic_covering, dihedral_covering, dihedral_pair, nonbelyi_covering,
};
use liouheun_core::identities::{
    heun_polynomial_holds, p19_holds, p20_holds, run_all, run_identity, theta1_heun, theta2_heun,
    Profile, RunConfig, Status,
};
use liouheun_core::liouvillian::{lv_eval, BranchConvention, LiouvillianExpr, PowerProduct, Term};
use liouheun_core::numeric;
use liouheun_core::pullback::{
    dihedral_spec, exponent_difference_multiset, finite_singular_support, match_heun,
    nonbelyi_spec, p1_spec, transform_ode, trivpbf_spec, Point,
};
use liouheun_core::series::{eval_heun, HeunParams, HpgParams, Policy};
use liouheun_core::{Poly, Rational, RationalFunction};
use rug::Complex;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn report(n: u32, title: &str, start: Instant, outcome: Result<(), String>) {
    let secs = start.elapsed().as_secs_f64();
    match &outcome {
        Ok(()) => println!("criterion {n:>2} PASS  {title} ({secs:.2}s)"),
        Err(w) => println!("criterion {n:>2} FAIL  {title} ({secs:.2}s): {w}"),
    }
    if let Err(w) = outcome {
        panic!("criterion {n} failed: {w}");
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    if start.elapsed() > limit {
        return Err(format!("took {:?}, limit {limit:?}", start.elapsed()));
    }
    Ok(())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Expected cyclic passport `{0: 2,1^(D−2); 1: N,M; ∞: D}`.
fn cyclic_profile(n: u32, m: u32) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let d = n + m;
    let mut zero = vec![2];
    zero.extend(std::iter::repeat_n(1, (d - 2) as usize));
    let mut one = vec![n, m];
    one.sort_by(|a, b| b.cmp(a));
    (zero, one, vec![d])
}

#[test]
fn criterion_01_cyclic_family() {
    let start = Instant::now();
    let outcome = (|| {
        for n in 1..=8 {
            for m in 1..=8 {
                let c = cyclic_covering(n, m).map_err(|e| e.to_string())?;
                let (zero, one, inf) = cyclic_profile(n, m);
                let p = c.passport();
                ensure(p.zero == zero && p.one == one && p.inf == inf, || {
                    format!("(N,M)=({n},{m}): passport {p:?}")
                })?;
                ensure(c.degree() == (n + m) as usize, || {
                    format!("({n},{m}): degree {}", c.degree())
                })?;
                ensure(p.distinct_points() == (n + m + 2) as usize, || {
                    format!("({n},{m}): point count")
                })?;
                ensure(c.is_belyi(), || format!("({n},{m}) not Belyi"))?;
                // independent check of the fiber over 1: 1 − φ = (1−x)^N (1+Nx/M)^M
                let rest = &Poly::one() - c.phi().num();
                let expect = &Poly::from_i64s(&[1, -1]).pow(n)
                    * &Poly::new(vec![q(1, 1), q(n as i64, m as i64)]).pow(m);
                ensure(rest == expect, || format!("({n},{m}): 1 − φ = {rest}"))?;
            }
        }
        within(start, Duration::from_secs(5))
    })();
    report(
        1,
        "cyclic coverings 1 ≤ N, M ≤ 8 are Belyi with the predicted passport",
        start,
        outcome,
    );
}

#[test]
fn criterion_02_dihedral_family() {
    let start = Instant::now();
    let outcome = (|| {
        for n in 1..=9u32 {
            for m in (n + 1)..=9 {
                let (cov, pair) = dihedral_covering(n, m).map_err(|e| e.to_string())?;
                let lhs =
                    &pair.theta1.pow(2) - &(&Poly::monomial(q(1, 1), 3) * &pair.theta2.pow(2));
                let rhs = &Poly::from_i64s(&[1, -1]).pow(n)
                    * &Poly::new(vec![q(1, 1), q(-((n * n) as i64), (m * m) as i64)]).pow(m);
                ensure(lhs == rhs, || format!("({n},{m}): Θ₁² − x³Θ₂² = {lhs}"))?;
                ensure(cov.degree() == (n + m) as usize, || {
                    format!("({n},{m}): degree {}", cov.degree())
                })?;
                ensure(cov.is_belyi(), || format!("({n},{m}) not Belyi"))?;
                let t = q((m * m) as i64, (n * n) as i64);
                ensure(pair.t() == t, || format!("({n},{m}): t = {}", pair.t()))?;
                let one_minus = cov.phi().den() - cov.phi().num();
                ensure(one_minus.eval(&t).is_zero(), || {
                    format!("({n},{m}): 1 − φ does not vanish at t")
                })?;
            }
        }
        within(start, Duration::from_secs(10))
    })();
    report(
        2,
        "dihedral coverings 1 ≤ N < M ≤ 9: norm identity, Belyi, t = M²/N²",
        start,
        outcome,
    );
}

/// `x(x−1)(x−t)y'' + [c(x−1)(x−t) + d·x(x−t) + e·x(x−1)]y' + (abx − q)y`.
fn heun_operator(p: &HeunParams, y: &Poly) -> Poly {
    let x = Poly::x();
    let xm1 = Poly::from_i64s(&[-1, 1]);
    let xmt = Poly::new(vec![Rational::from(-&p.t), q(1, 1)]);
    let e = Rational::from(&p.a + &p.b) - &p.c - &p.d + 1u32;
    let lead = &(&x * &xm1) * &xmt;
    let mid = &(&(&xm1 * &xmt).scale(&p.c) + &(&x * &xmt).scale(&p.d)) + &(&x * &xm1).scale(&e);
    let low = Poly::new(vec![Rational::from(-&p.q), Rational::from(&p.a * &p.b)]);
    let y1 = y.derivative();
    let y2 = y1.derivative();
    &(&(&lead * &y2) + &(&mid * &y1)) + &(&low * y)
}

#[test]
fn criterion_03_heun_polynomials() {
    let start = Instant::now();
    let outcome = (|| {
        for n in 1..=9u32 {
            for m in (n + 1)..=9 {
                let pair = dihedral_pair(n, m).map_err(|e| e.to_string())?;
                let p1 = theta1_heun(n, m);
                let (p2, pref) = theta2_heun(n, m);
                let d = (n + m) as i64;
                let want = q(n as i64 * d * (m as i64 - n as i64), 3 * (m * m) as i64);
                ensure(pref == want, || format!("({n},{m}): prefactor {pref}"))?;
                let r1 = heun_operator(&p1, &pair.theta1);
                ensure(r1.is_zero(), || format!("({n},{m}): Θ₁ residual {r1}"))?;
                let r2 = heun_operator(&p2, &pair.theta2);
                ensure(r2.is_zero(), || format!("({n},{m}): Θ₂ residual {r2}"))?;
                for (theta, p, c) in [
                    (&pair.theta1, &p1, q(1, 1)),
                    (&pair.theta2, &p2, pref.clone()),
                ] {
                    if let Some(w) =
                        heun_polynomial_holds(theta, p, &c).map_err(|e| e.to_string())?
                    {
                        return Err(format!("({n},{m}): {w}"));
                    }
                }
            }
        }
        Ok(())
    })();
    report(
        3,
        "Θ₁, Θ₂ are Heun polynomials with the stated parameters and prefactor",
        start,
        outcome,
    );
}

fn p1_expected(a: &Rational, b: &Rational, c: &Rational) -> HeunParams {
    HeunParams::new(
        q(-1, 1),
        q(0, 1),
        Rational::from(a * 2u32),
        Rational::from(b * 2u32),
        Rational::from(c * 2u32) - 1u32,
        Rational::from(a + b) - c + 1u32,
    )
}

fn trivpbf_expected(n: u32, m: u32, alpha: &Rational) -> HeunParams {
    let r = q(m as i64, n as i64);
    let d = (n + m) as i64;
    HeunParams::new(
        Rational::from(-&r),
        (q(1, 1) - r) * 2u32,
        q(2, 1),
        q(2, 1) - Rational::from(alpha * d),
        q(3, 1),
        q(1, 1) - Rational::from(alpha * n),
    )
}

fn nonbelyi_expected(e: &Rational) -> HeunParams {
    HeunParams::new(
        q(2, 1),
        q(0, 1),
        q(0, 1),
        Rational::from(e * 2u32),
        Rational::from(e + 1u32),
        q(-1, 1),
    )
}

fn p1_samples() -> Vec<(Rational, Rational, Rational)> {
    vec![
        (q(1, 3), q(1, 5), q(1, 2)),
        (q(-2, 7), q(3, 4), q(5, 3)),
        (q(1, 2), q(-1, 6), q(2, 9)),
    ]
}

fn nonbelyi_samples() -> Vec<(Rational, Rational)> {
    vec![(q(1, 2), q(1, 3)), (q(-3, 5), q(2, 7)), (q(7, 4), q(-1, 5))]
}

const ALPHAS: [(i64, i64); 3] = [(1, 5), (1, 7), (2, 9)];

#[test]
fn criterion_04_equation_level_pullbacks() {
    let start = Instant::now();
    let outcome = (|| {
        for (a, b, c) in p1_samples() {
            let (spec, _) = p1_spec(&HpgParams::new(a.clone(), b.clone(), c.clone()));
            let ode = transform_ode(&spec).map_err(|e| e.to_string())?;
            let rep = match_heun(&ode, &p1_expected(&a, &b, &c)).map_err(|e| e.to_string())?;
            ensure(rep.matched, || {
                format!("quadratic map ({a},{b},{c}): {:?}", rep.witness)
            })?;
        }
        for n in 1..=6 {
            for m in 1..=6 {
                for (an, ad) in ALPHAS {
                    let alpha = q(an, ad);
                    let (spec, _) = trivpbf_spec(n, m, &alpha).map_err(|e| e.to_string())?;
                    let ode = transform_ode(&spec).map_err(|e| e.to_string())?;
                    let rep = match_heun(&ode, &trivpbf_expected(n, m, &alpha))
                        .map_err(|e| e.to_string())?;
                    ensure(rep.matched, || {
                        format!("cyclic ({n},{m},{alpha}): {:?}", rep.witness)
                    })?;
                }
            }
        }
        for (s, e) in nonbelyi_samples() {
            let (spec, _) = nonbelyi_spec(&s, &e).map_err(|e| e.to_string())?;
            let ode = transform_ode(&spec).map_err(|e| e.to_string())?;
            let rep = match_heun(&ode, &nonbelyi_expected(&e)).map_err(|e| e.to_string())?;
            ensure(rep.matched, || {
                format!("degree-4 (s,e)=({s},{e}): {:?}", rep.witness)
            })?;
        }
        Ok(())
    })();
    report(
        4,
        "pull-backs reproduce the quadratic, cyclic and degree-4 Heun tuples",
        start,
        outcome,
    );
}

#[test]
fn criterion_05_dihedral_exponent_differences() {
    let start = Instant::now();
    let grid = [q(1, 7), q(2, 9), q(3, 11)];
    let outcome = (|| {
        for n in 1..=6u32 {
            for m in (n + 1)..=6 {
                for alpha in &grid {
                    let (spec, _) = dihedral_spec(n, m, alpha).map_err(|e| e.to_string())?;
                    let ode = transform_ode(&spec).map_err(|e| e.to_string())?;
                    let mut want = vec![
                        q(1, 2),
                        q(3, 2),
                        Rational::from(alpha * n),
                        Rational::from(alpha * m),
                    ];
                    want.sort();
                    let got = exponent_difference_multiset(&ode).map_err(|e| e.to_string())?;
                    ensure(got == want, || {
                        format!("({n},{m},{alpha}): differences {got:?}")
                    })?;
                    let support = finite_singular_support(&ode).map_err(|e| e.to_string())?;
                    let pts = [q(0, 1), q(1, 1), q((m * m) as i64, (n * n) as i64)];
                    let ok = support.len() == 3
                        && pts.iter().all(|p| {
                            support
                                .iter()
                                .any(|s| matches!(s, Point::Finite(r) if r == p))
                        });
                    ensure(ok, || format!("({n},{m},{alpha}): support {support:?}"))?;
                }
            }
        }
        Ok(())
    })();
    report(
        5,
        "dihedral pull-backs have exponent differences {1/2, 3/2, Nα, Mα}",
        start,
        outcome,
    );
}

const CRITERION_6_NUMERIC: [&str; 15] = [
    "CYC1",
    "CYC2",
    "CYC3",
    "CYC4",
    "CYC-TRIV",
    "CYC-PSI",
    "REM-POW1",
    "REM-POW2",
    "REM-CONTIG",
    "P1",
    "DIH-EVAL1",
    "DIH-EVAL2",
    "DIH-EVAL3",
    "DIH-EVAL4",
    "DIH-EVAL5",
];
const CRITERION_6_EXACT: [&str; 7] = [
    "CYC-KLEIN",
    "POLY-P15",
    "POLY-P19",
    "POLY-P20",
    "DIH-THETA-SMALL",
    "DIH-N1",
    "DIH-CHEB",
];

#[test]
fn criterion_06_identity_catalog() {
    let start = Instant::now();
    let reports = run_all(Profile::Full, 20240611);
    let outcome = (|| {
        for id in CRITERION_6_NUMERIC {
            let r = reports
                .iter()
                .find(|r| r.id == id)
                .ok_or(format!("{id} missing"))?;
            ensure(r.status == Status::Pass, || {
                format!("{id}: {:?} at {:?}", r.witness, r.binding)
            })?;
            let w = r.worst_error.ok_or(format!("{id}: no numeric samples"))?;
            ensure(w <= 1e-10, || format!("{id}: worst error {w:e}"))?;
            ensure(r.bindings >= 20 && r.samples >= 200, || {
                format!("{id}: {} bindings, {} samples", r.bindings, r.samples)
            })?;
        }
        for id in CRITERION_6_EXACT {
            let r = reports
                .iter()
                .find(|r| r.id == id)
                .ok_or(format!("{id} missing"))?;
            ensure(r.status == Status::Pass, || {
                format!("{id}: {:?} at {:?}", r.witness, r.binding)
            })?;
        }
        within(start, Duration::from_secs(300))
    })();
    report(
        6,
        "closed-form catalog, full profile at 50 digits",
        start,
        outcome,
    );
}

/// `−(2M/(N·D·x²))(N log(1−x) + M log(1 + Nx/M))`, built here from terms.
fn log_form(n: u32, m: u32) -> LiouvillianExpr {
    let d = (n + m) as i64;
    let c = RationalFunction::new(
        Poly::constant(q(-2 * m as i64, n as i64 * d)),
        Poly::monomial(q(1, 1), 2),
    )
    .unwrap();
    LiouvillianExpr::from_terms(vec![
        Term::new(
            c.scale(&q(n as i64, 1)),
            PowerProduct::one(),
            Some(Poly::from_i64s(&[1, -1])),
        ),
        Term::new(
            c.scale(&q(m as i64, 1)),
            PowerProduct::one(),
            Some(Poly::new(vec![q(1, 1), q(n as i64, m as i64)])),
        ),
    ])
}

#[test]
fn criterion_07_logarithmic_degeneration() {
    let start = Instant::now();
    let outcome = (|| {
        let cfg = RunConfig::for_profile(Profile::Full, 7);
        let r = run_identity("CYC-LOG", &cfg).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("catalog case: {:?}", r.witness))?;
        let digits = numeric::DEFAULT_DIGITS;
        let prec = numeric::bits_for_digits(digits);
        let policy = Policy::with_digits(digits);
        let bc = BranchConvention::default();
        let small = q(1, 1_000_000);
        for (n, m) in [(1, 1), (2, 1), (1, 3), (3, 2), (4, 5)] {
            let p = trivpbf_expected(n, m, &small).to_complex(prec);
            let f = log_form(n, m);
            let r = 0.8 * (m as f64 / n as f64).min(1.0);
            for k in 1..=4 {
                let x = Complex::with_val(prec, (r * k as f64 / 5.0, 0.0));
                let h = eval_heun(&p, &x, &policy).map_err(|e| e.to_string())?.value;
                let l = lv_eval(&f, &x, digits, &bc).map_err(|e| e.to_string())?;
                let err = numeric::relative_error(&h, &l);
                ensure(err < 1e-4, || {
                    format!(
                        "({n},{m}) at x = {}: relative error {err:e}",
                        r * k as f64 / 5.0
                    )
                })?;
            }
        }
        Ok(())
    })();
    report(
        7,
        "logarithmic case exact at α = 0, consistent at α = 10⁻⁶",
        start,
        outcome,
    );
}

fn generic_s() -> Vec<Rational> {
    let mut out = Vec::new();
    let mut k = 1i64;
    while out.len() < 20 {
        let s = q(if k % 2 == 0 { k } else { -k }, k + 3);
        if s != 0 && s != 1 && s != -1 {
            out.push(s);
        }
        k += 1;
    }
    out
}

#[test]
fn criterion_08_nonbelyi_family() {
    let start = Instant::now();
    let outcome = (|| {
        for s in generic_s() {
            let c = nonbelyi_covering(&s).map_err(|e| e.to_string())?;
            ensure(!c.is_belyi(), || format!("s = {s} reported Belyi"))?;
            let extra = c.extra_branches();
            ensure(extra.len() == 1, || {
                format!("s = {s}: {} extra branch classes", extra.len())
            })?;
            let e = &extra[0];
            ensure(e.order == 2, || format!("s = {s}: order {}", e.order))?;
            ensure(e.points.as_ref().is_some_and(|p| p.deg() == 1), || {
                format!("s = {s}: points {:?}", e.points)
            })?;
            let sp1 = Rational::from(&s + 1u32);
            let want = Rational::from(&s * 4u32) / sp1.square();
            ensure(e.value.as_ref() == Some(&want), || {
                format!("s = {s}: value {:?}", e.value)
            })?;
            // x = 1 is a simple critical point with that value
            let phi = c.phi();
            let d1 = phi.derivative();
            let d2 = d1.derivative();
            let one = q(1, 1);
            ensure(phi.eval(&one).ok() == Some(want.clone()), || {
                format!("s = {s}: φ(1)")
            })?;
            ensure(d1.eval(&one).is_ok_and(|v| v.is_zero()), || {
                format!("s = {s}: φ'(1) ≠ 0")
            })?;
            ensure(d2.eval(&one).is_ok_and(|v| !v.is_zero()), || {
                format!("s = {s}: φ''(1) = 0")
            })?;
        }
        for s in [q(1, 1), q(-1, 1)] {
            let c = nonbelyi_covering(&s).map_err(|e| e.to_string())?;
            ensure(c.is_belyi(), || format!("s = {s} is not Belyi"))?;
        }
        Ok(())
    })();
    report(
        8,
        "degree-4 family: one extra order-2 branch point at 4s/(s+1)², Belyi at s = ±1",
        start,
        outcome,
    );
}

#[test]
fn criterion_09_composition() {
    let start = Instant::now();
    let outcome = (|| {
        let c = cyclic_covering(2, 2).map_err(|e| e.to_string())?;
        let g = RationalFunction::from_poly(Poly::from_i64s(&[0, 2, -1]));
        let h = RationalFunction::from_poly(Poly::from_i64s(&[0, 0, 1]));
        ensure(g.degree() == 2 && h.degree() == 2, || {
            "factor degrees".into()
        })?;
        let gh = compose(&g, &h);
        ensure(c.phi() == &gh, || format!("φ = {}, g∘h = {gh}", c.phi()))
    })();
    report(
        9,
        "cyclic_covering(2,2) factors as a composition of two quadratic maps",
        start,
        outcome,
    );
}

fn perturb(r: &Rational) -> Rational {
    Rational::from(r + q(1, 1000))
}

fn q_hat(coeffs: &[Rational; 3], n: u32, a: &Rational) -> Rational {
    let n = q(n as i64, 1);
    Rational::from(&coeffs[0] * &n) * a
        + Rational::from(&coeffs[1] * &n) * &n
        + Rational::from(&coeffs[2] * &n)
}

fn perturbed_tuples(p: &HeunParams) -> Vec<(usize, HeunParams)> {
    let arr: Vec<Rational> = p.as_array().iter().map(|r| (*r).clone()).collect();
    (0..6)
        .map(|i| {
            let mut v = arr.clone();
            v[i] = perturb(&v[i]);
            let [t, qq, a, b, c, d]: [Rational; 6] = v.try_into().unwrap();
            (i, HeunParams::new(t, qq, a, b, c, d))
        })
        .collect()
}

#[test]
fn criterion_10_mutation_sensitivity() {
    let start = Instant::now();
    let outcome = (|| {
        // q̂₁ = 9na + 18n² − 6n and q̂₂ = −9na + 9n² + 3n/2
        let forms: [(&str, [Rational; 3]); 2] = [
            ("q̂₁", [q(9, 1), q(18, 1), q(-6, 1)]),
            ("q̂₂", [q(-9, 1), q(9, 1), q(3, 2)]),
        ];
        for (k, (name, coeffs)) in forms.iter().enumerate() {
            for n in 1..=3u32 {
                let a = q(2, 7);
                let base = q_hat(coeffs, n, &a);
                let holds = |qv: &Rational| {
                    if k == 0 {
                        p19_holds(n, &a, qv)
                    } else {
                        p20_holds(n, &a, qv)
                    }
                };
                let ok = holds(&base).map_err(|e| e.to_string())?;
                ensure(ok.is_none(), || {
                    format!("{name}, n = {n}: unperturbed check fails: {ok:?}")
                })?;
                for i in 0..3 {
                    let mut c = coeffs.clone();
                    c[i] = perturb(&c[i]);
                    let w = holds(&q_hat(&c, n, &a)).map_err(|e| e.to_string())?;
                    ensure(w.is_some(), || {
                        format!("{name}, n = {n}: perturbing coefficient {i} goes unnoticed")
                    })?;
                }
            }
        }
        for (n, m) in [(1, 4), (2, 5), (3, 7)] {
            let pair = dihedral_pair(n, m).map_err(|e| e.to_string())?;
            let (p2, pref) = theta2_heun(n, m);
            for (theta, p, c) in [
                (&pair.theta1, theta1_heun(n, m), q(1, 1)),
                (&pair.theta2, p2, pref),
            ] {
                for (i, bad) in perturbed_tuples(&p) {
                    let w = heun_polynomial_holds(theta, &bad, &c).map_err(|e| e.to_string())?;
                    ensure(w.is_some(), || {
                        format!("Θ ({n},{m}): perturbing entry {i} goes unnoticed")
                    })?;
                }
                let w =
                    heun_polynomial_holds(theta, &p, &perturb(&c)).map_err(|e| e.to_string())?;
                ensure(w.is_some(), || {
                    format!("Θ ({n},{m}): perturbed prefactor goes unnoticed")
                })?;
            }
        }
        let mut cases: Vec<(String, liouheun_core::ode::Ode, HeunParams)> = Vec::new();
        let (a, b, c) = p1_samples().remove(0);
        let (spec, _) = p1_spec(&HpgParams::new(a.clone(), b.clone(), c.clone()));
        cases.push((
            "quadratic".into(),
            transform_ode(&spec).unwrap(),
            p1_expected(&a, &b, &c),
        ));
        let alpha = q(1, 5);
        let (spec, _) = trivpbf_spec(2, 3, &alpha).unwrap();
        cases.push((
            "cyclic".into(),
            transform_ode(&spec).unwrap(),
            trivpbf_expected(2, 3, &alpha),
        ));
        let (s, e) = nonbelyi_samples().remove(0);
        let (spec, _) = nonbelyi_spec(&s, &e).unwrap();
        cases.push((
            "degree-4".into(),
            transform_ode(&spec).unwrap(),
            nonbelyi_expected(&e),
        ));
        for (name, ode, p) in &cases {
            for (i, bad) in perturbed_tuples(p) {
                let rep = match_heun(ode, &bad).map_err(|e| e.to_string())?;
                ensure(!rep.matched && rep.witness.is_some(), || {
                    format!("{name}: perturbing entry {i} goes unnoticed")
                })?;
            }
        }
        Ok(())
    })();
    report(
        10,
        "perturbing any checked parameter by 1/1000 produces a witness",
        start,
        outcome,
    );
}
