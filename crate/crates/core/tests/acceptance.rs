//! One test per acceptance criterion. Each prints a single
//! `[PASS]`/`[FAIL]` line to stderr (visible without `--nocapture`) and then
//! asserts the verdict.

mod common;

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use cl2::oracle::{exp_series, pow_naive, sample_in_sector, verify_root, SplitMix64};
use cl2::textio::{decode, encode};
use cl2::{
    classify, exp, format_mv, nth_roots, parse_eval, polar, pow_int, EpsilonClass, Multivector, PolarForm, RootMode,
    RootSet, RootSolution, SectorLabel, Style, Tolerances,
};
use common::{mv, random_box, random_epsilon, rel_dev};

/// Per-coefficient agreement with a closed-form golden value.
const COEFF_TOL: f64 = 1e-12;
/// Largest coefficient of `pow_naive(w, n) - a`.
const REPOWER_TOL: f64 = 1e-10;
/// `pow_int` against `pow_naive`, relative to `|a|^|n|`.
const POW_REL_TOL: f64 = 1e-9;
/// `RootSolution::contains` tolerance for recovered roots.
const MEMBERSHIP_TOL: f64 = 1e-8;
/// Absolute tolerance for exponential identities.
const EXP_ABS_TOL: f64 = 1e-10;
/// Relative tolerance for `I(exp a) = e^(2 a0)`.
const EXP_I_REL_TOL: f64 = 1e-9;
/// Associativity, relative to `|a| |b| |c|` per coefficient.
const ASSOC_REL_TOL: f64 = 1e-12;
/// `I(ab) = I(a) I(b)`, relative to `|a|^2 |b|^2`.
const I_MULT_REL_TOL: f64 = 1e-10;
/// `V(t a) = t^2 V(a)`, relative to `t^2 |a|^2`.
const V_SCALE_REL_TOL: f64 = 1e-12;
/// V-of-power identities, relative to `|a|^(2n)`.
const VCASE_REL_TOL: f64 = 1e-8;

fn report(id: &str, what: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[{verdict}] {id} {what}: {detail}");
    assert!(pass, "{id} {what}: {detail}");
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn repower_dev(a: &Multivector, n: u64, w: &Multivector) -> f64 {
    pow_naive(w, n).max_abs_diff(a)
}

fn roots(a: &Multivector, n: i64, mode: RootMode) -> RootSolution {
    nth_roots(a, n, mode, &tol()).unwrap()
}

/// `m * (c + s * eps)`.
fn polar_value(m: f64, c: f64, s: f64, eps: &Multivector) -> Multivector {
    Multivector::scalar(m * c).unwrap() + eps.scale(m * s)
}

/// Every expected value is matched by a distinct root and nothing is left over.
fn same_set(got: &[Multivector], want: &[Multivector], tol: f64) -> bool {
    let mut left: Vec<Multivector> = want.to_vec();
    for g in got {
        match left.iter().position(|w| w.max_abs_diff(g) <= tol) {
            Some(i) => {
                left.remove(i);
            }
            None => return false,
        }
    }
    left.is_empty()
}

fn s1_example() -> (Multivector, Multivector, f64) {
    let a = mv(SQRT_2, 7.0, 4.0, 8.0);
    let eps = mv(0.0, 7.0, 4.0, 8.0);
    (a, eps, (1.0 + SQRT_2).ln())
}

#[test]
fn ac01_s1_cube_root() {
    let (a, eps, t) = s1_example();
    let want = polar_value(1.0, (t / 3.0).cosh(), (t / 3.0).sinh(), &eps);
    let mut ok = true;
    let mut worst = 0.0f64;
    for mode in [RootMode::PaperFaithful, RootMode::Complete] {
        let got = roots(&a, 3, mode).finite_roots();
        ok &= same_set(&got, &[want], COEFF_TOL);
        for w in &got {
            worst = worst.max(repower_dev(&a, 3, w));
        }
    }
    ok &= worst <= REPOWER_TOL;
    report(
        "AC1",
        "S1 cube root golden value",
        ok,
        &format!("root = {want}, max re-power deviation {worst:.2e}"),
    );
}

#[test]
fn ac02_s1_square_roots() {
    let (a, eps, t) = s1_example();
    let (c, s) = ((t / 2.0).cosh(), (t / 2.0).sinh());
    let paper = [polar_value(1.0, c, s, &eps), polar_value(1.0, s, c, &eps)];
    let faithful = roots(&a, 2, RootMode::PaperFaithful).finite_roots();
    let complete = roots(&a, 2, RootMode::Complete).finite_roots();
    let all = [paper[0], paper[1], -paper[0], -paper[1]];

    let worst = faithful
        .iter()
        .chain(&complete)
        .map(|w| repower_dev(&a, 2, w))
        .fold(0.0, f64::max);
    let ok = same_set(&faithful, &paper, COEFF_TOL)
        && same_set(&complete, &all, COEFF_TOL)
        && complete.len() == 4
        && complete.iter().all(|w| verify_root(&a, 2, w, &tol()))
        && worst <= REPOWER_TOL;
    report(
        "AC2",
        "S1 square roots (theta/2), complete mode has 4",
        ok,
        &format!(
            "paper mode {} roots, complete mode {} roots, max re-power deviation {worst:.2e}",
            faithful.len(),
            complete.len()
        ),
    );
}

#[test]
fn ac03_s2_fourth_roots() {
    let a = mv(1.0, 0.0, 0.0, -1.0);
    let eps = mv(0.0, 0.0, 0.0, -1.0);
    let m = 2f64.powf(0.125);
    let want: Vec<Multivector> = (0..4)
        .map(|k| {
            let phi = (PI / 4.0 + 2.0 * PI * f64::from(k)) / 4.0;
            polar_value(m, phi.cos(), phi.sin(), &eps)
        })
        .collect();
    let mut ok = true;
    let mut worst = 0.0f64;
    for mode in [RootMode::PaperFaithful, RootMode::Complete] {
        let got = roots(&a, 4, mode).finite_roots();
        ok &= same_set(&got, &want, COEFF_TOL);
        worst = got.iter().map(|w| repower_dev(&a, 4, w)).fold(worst, f64::max);
    }
    ok &= worst <= REPOWER_TOL;
    report(
        "AC3",
        "S2 fourth roots of 1 - e3",
        ok,
        &format!("4 roots at N = 2^(1/8), max re-power deviation {worst:.2e}"),
    );
}

#[test]
fn ac04_s3_roots() {
    let a = mv(1.0, 1.0, -1.0, 0.0);
    let eps = mv(0.0, 1.0, -1.0, 0.0).scale(1.0 / SQRT_2);
    let t = (1.0 + SQRT_2).ln();
    let want = polar_value(1.0, (t / 3.0).sinh(), (t / 3.0).cosh(), &eps);
    let mut ok = true;
    let mut worst = 0.0f64;
    for mode in [RootMode::PaperFaithful, RootMode::Complete] {
        ok &= roots(&a, 2, mode).parts == [RootSet::Empty];
        let got = roots(&a, 3, mode).finite_roots();
        ok &= same_set(&got, &[want], COEFF_TOL);
        worst = got.iter().map(|w| repower_dev(&a, 3, w)).fold(worst, f64::max);
    }
    ok &= worst <= REPOWER_TOL;
    report(
        "AC4",
        "S3: no square root, one cube root",
        ok,
        &format!("cube root {want}, re-power deviation {worst:.2e}"),
    );
}

#[test]
fn ac05_s4_printed_roots() {
    let a = mv(2.0, 5.0, 10.0, 11.0);
    let k = 0.5f64.cbrt();
    let cube = mv(k, 2.5 * k, 5.0 * k, 5.5 * k);
    let square = a.scale(0.5);
    let got3 = roots(&a, 3, RootMode::PaperFaithful).finite_roots();
    let got2 = roots(&a, 2, RootMode::PaperFaithful).finite_roots();
    let complete2 = roots(&a, 2, RootMode::Complete).finite_roots();
    let worst = [(3, cube), (2, square)]
        .iter()
        .map(|(n, w)| repower_dev(&a, *n, w))
        .fold(0.0, f64::max);
    let ok = same_set(&got3, &[cube], COEFF_TOL)
        && same_set(&got2, &[square], COEFF_TOL)
        && same_set(&complete2, &[square, -square], COEFF_TOL)
        && worst <= REPOWER_TOL;
    report(
        "AC5",
        "S4 printed cube and square roots",
        ok,
        &format!("max re-power deviation {worst:.2e}"),
    );
}

#[test]
fn ac06_s5_corrected_roots() {
    let t = tol();
    let im = mv(0.0, 3.0, -4.0, 5.0);
    let cases = [
        // (a, n, corrected root, printed root)
        (
            Multivector::scalar(8.0).unwrap() + im,
            3u64,
            mv(2.0, 0.0, 0.0, 0.0) + im.scale(1.0 / 12.0),
            (Multivector::scalar(8.0).unwrap() + im).scale(0.25),
        ),
        (
            Multivector::scalar(16.0).unwrap() + im,
            4,
            mv(2.0, 0.0, 0.0, 0.0) + im.scale(1.0 / 32.0),
            (Multivector::scalar(16.0).unwrap() + im).scale(0.125),
        ),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for (a, n, fixed, printed) in cases {
        let got = roots(&a, n as i64, RootMode::PaperFaithful).finite_roots();
        let dev = repower_dev(&a, n, &fixed);
        let printed_dev = repower_dev(&a, n, &printed);
        ok &= same_set(&got, &[fixed], COEFF_TOL);
        ok &= dev <= REPOWER_TOL && verify_root(&a, n, &fixed, &t);
        ok &= !verify_root(&a, n, &printed, &t);
        details.push(format!("n={n}: corrected dev {dev:.2e}, printed dev {printed_dev:.3}"));
    }
    report(
        "AC6",
        "S5 corrected roots verify, printed roots fail",
        ok,
        &details.join("; "),
    );
}

#[test]
fn ac07_scalar_families() {
    let t = tol();
    let mut rng = SplitMix64::new(7);
    let mut ok = true;
    let mut checked = 0;

    let one = Multivector::ONE;
    let paper = roots(&one, 4, RootMode::PaperFaithful);
    match paper.parts.as_slice() {
        [RootSet::CircularFamily { scale, angles }] => {
            let want = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];
            ok &= *scale == 1.0 && angles.len() == 4;
            ok &= angles.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-15);
        }
        _ => ok = false,
    }
    for _ in 0..8 {
        let eps = random_epsilon(EpsilonClass::Eminus1, &mut rng);
        for w in paper.parts[0].instantiate(&eps, &t).unwrap() {
            ok &= verify_root(&one, 4, &w, &t);
            checked += 1;
        }
    }

    let complete = roots(&one, 4, RootMode::Complete);
    ok &= complete.parts.len() == 2 && complete.parts[0] == paper.parts[0];
    ok &= complete.parts[1] == RootSet::HyperbolicUnitFamily { scale: 1.0 };
    let mut unit: Vec<Multivector> = vec![Multivector::E1, Multivector::E2];
    unit.extend((0..8).map(|_| random_epsilon(EpsilonClass::E1, &mut rng)));
    for eps in unit {
        for w in complete.parts[1].instantiate(&eps, &t).unwrap() {
            ok &= verify_root(&one, 4, &w, &t);
            checked += 1;
        }
    }

    let minus_two = Multivector::scalar(-2.0).unwrap();
    let sol = roots(&minus_two, 3, RootMode::PaperFaithful);
    match sol.parts.as_slice() {
        [RootSet::CircularFamily { scale, angles }] => {
            ok &= (scale - 2f64.cbrt()).abs() <= COEFF_TOL;
            let want = [PI / 3.0, PI, 5.0 * PI / 3.0];
            ok &= angles.len() == 3 && angles.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-15);
            for _ in 0..8 {
                let eps = random_epsilon(EpsilonClass::Eminus1, &mut rng);
                for w in sol.parts[0].instantiate(&eps, &t).unwrap() {
                    ok &= verify_root(&minus_two, 3, &w, &t);
                    checked += 1;
                }
            }
        }
        _ => ok = false,
    }
    report(
        "AC7",
        "scalar root families",
        ok,
        &format!("{checked} sampled family members verified"),
    );
}

#[test]
fn ac08_de_moivre_vs_naive() {
    let t = tol();
    let mut rng = SplitMix64::new(8);
    let mut pairs = 0;
    let mut worst = 0.0f64;
    let mut failures = 0;
    for i in 0..700u64 {
        let label = SectorLabel::ALL[(i % 7) as usize];
        let a = sample_in_sector(label, rng.next_u64());
        let n = if label.is_invertible() {
            rng.int_in(-4, 8)
        } else {
            rng.int_in(0, 8)
        };
        let (base, k) = if n < 0 {
            (a.inverse(&t).unwrap(), n.unsigned_abs())
        } else {
            (a, n as u64)
        };
        let dev = match pow_int(&a, n, &t) {
            Ok(p) => rel_dev(&p, &pow_naive(&base, k), base.norm().powi(k as i32).max(1.0)),
            Err(_) => f64::INFINITY,
        };
        if dev > POW_REL_TOL {
            failures += 1;
        }
        worst = worst.max(dev);
        pairs += 1;
    }
    report(
        "AC8",
        "pow_int matches pow_naive, n in -4..8",
        pairs >= 500 && failures == 0,
        &format!("{pairs} pairs, {failures} failures, max relative deviation {worst:.2e}"),
    );
}

/// Draws roots `w` and exponents `n` until `target` radicands `w^n` land in
/// `expect`; returns (accepted, skipped, misses).
fn recovery_case(
    seed: u64,
    target: usize,
    expect: SectorLabel,
    mut draw: impl FnMut(&mut SplitMix64) -> (Multivector, i64),
) -> (usize, usize, usize) {
    let t = tol();
    let mut rng = SplitMix64::new(seed);
    let (mut accepted, mut skipped, mut misses) = (0, 0, 0);
    while accepted < target && accepted + skipped < 20 * target {
        let (w, n) = draw(&mut rng);
        let a = pow_naive(&w, n as u64);
        if classify(&a, &t) != expect {
            skipped += 1;
            continue;
        }
        accepted += 1;
        if !roots(&a, n, RootMode::Complete).contains(&w, MEMBERSHIP_TOL) {
            misses += 1;
        }
    }
    (accepted, skipped, misses)
}

#[test]
fn ac09_root_recovery() {
    const PER_CASE: usize = 200;
    let sample = |label: SectorLabel| move |rng: &mut SplitMix64| sample_in_sector(label, rng.next_u64());
    let with_positive_scalar = |w: Multivector| if w.s() < 0.0 { -w } else { w };
    type Draw = Box<dyn FnMut(&mut SplitMix64) -> (Multivector, i64)>;
    let cases: Vec<(&str, SectorLabel, Draw)> = vec![
        (
            "S2, n in 2..6",
            SectorLabel::S2,
            Box::new(move |r| (sample(SectorLabel::S2)(r), r.int_in(2, 6))),
        ),
        (
            "S1 a0 > 0, odd n",
            SectorLabel::S1,
            Box::new(move |r| (with_positive_scalar(sample(SectorLabel::S1)(r)), 2 * r.int_in(1, 2) + 1)),
        ),
        (
            "S1 a0 > 0, even n",
            SectorLabel::S1,
            Box::new(move |r| (with_positive_scalar(sample(SectorLabel::S1)(r)), 2 * r.int_in(1, 3))),
        ),
        (
            "S1 a0 < 0, any n",
            SectorLabel::S1,
            Box::new(move |r| (-with_positive_scalar(sample(SectorLabel::S1)(r)), r.int_in(2, 6))),
        ),
        (
            "S3, odd n",
            SectorLabel::S3,
            Box::new(move |r| (sample(SectorLabel::S3)(r), 2 * r.int_in(1, 2) + 1)),
        ),
        (
            "S3, even n",
            SectorLabel::S1,
            Box::new(move |r| (sample(SectorLabel::S3)(r), 2 * r.int_in(1, 3))),
        ),
        (
            "S4 a0 > 0, n in 2..6",
            SectorLabel::S4only,
            Box::new(move |r| (with_positive_scalar(sample(SectorLabel::S4only)(r)), r.int_in(2, 6))),
        ),
        (
            "S4 a0 < 0, n in 2..6",
            SectorLabel::S4only,
            Box::new(move |r| (-with_positive_scalar(sample(SectorLabel::S4only)(r)), r.int_in(2, 6))),
        ),
        (
            "S5 a0 != 0, n in 2..6",
            SectorLabel::S5only,
            Box::new(move |r| (sample(SectorLabel::S5only)(r), r.int_in(2, 6))),
        ),
        (
            "real radicand via circular family",
            SectorLabel::S5only,
            Box::new(|r| {
                let n = r.int_in(2, 6);
                let phi = PI * r.int_in(0, 2 * n - 1) as f64 / n as f64;
                let eps = random_epsilon(EpsilonClass::Eminus1, r);
                (polar_value(r.uniform(0.2, 3.0), phi.cos(), phi.sin(), &eps), n)
            }),
        ),
        (
            "real radicand via unit E1 family",
            SectorLabel::S5only,
            Box::new(|r| {
                let eps = random_epsilon(EpsilonClass::E1, r);
                (eps.scale(r.uniform(0.2, 3.0)), 2 * r.int_in(1, 3))
            }),
        ),
        (
            "zero radicand via null cone",
            SectorLabel::Zero,
            Box::new(move |r| (sample(SectorLabel::NullImaginary)(r), r.int_in(2, 6))),
        ),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (i, (name, expect, draw)) in cases.into_iter().enumerate() {
        let (accepted, skipped, misses) = recovery_case(900 + i as u64, PER_CASE, expect, draw);
        ok &= accepted >= PER_CASE && misses == 0;
        lines.push(format!(
            "{name}: {accepted} ok-sector, {misses} missed, {skipped} skipped"
        ));
    }
    report("AC9", "root recovery in complete mode", ok, &lines.join("; "));
}

#[test]
fn ac10_exponential() {
    let mut rng = SplitMix64::new(10);
    let (mut series_dev, mut inverse_dev, mut i_dev) = (0.0f64, 0.0f64, 0.0f64);
    let samples = 600;
    for k in 0..samples {
        let mut a = random_box(&mut rng, 3.0);
        let radius = 3.0 * rng.next_f64();
        if a.norm() > 0.0 {
            a = a.scale(radius / a.norm());
        }
        if k % 10 == 0 {
            // land some samples on the null cone of Im(a)
            let u = a.im();
            let x3 = u.x1().hypot(u.x2()).copysign(u.x3());
            a = mv(a.s(), u.x1(), u.x2(), x3);
        }
        let e = exp(&a).unwrap();
        series_dev = series_dev.max(e.max_abs_diff(&exp_series(&a, 40)));
        inverse_dev = inverse_dev.max((e * exp(&-a).unwrap()).max_abs_diff(&Multivector::ONE));
        let want = (2.0 * a.s()).exp();
        i_dev = i_dev.max((e.i() - want).abs() / want);
    }
    let ok = series_dev <= EXP_ABS_TOL && inverse_dev <= EXP_ABS_TOL && i_dev <= EXP_I_REL_TOL;
    report(
        "AC10",
        "closed-form exp vs series, inverse, norm",
        ok,
        &format!(
            "{samples} samples; series {series_dev:.2e}, exp(a)exp(-a)-1 {inverse_dev:.2e}, I relative {i_dev:.2e}"
        ),
    );
}

/// `V(a^n)` predicted from the polar form of `a`.
fn predicted_v_of_power(a: &Multivector, n: i32) -> f64 {
    let i = a.i();
    let nf = f64::from(n);
    match polar(a, &tol()).unwrap() {
        PolarForm::HyperbolicCosh { theta, .. } => i.powi(n) * (nf * theta).sinh().powi(2),
        PolarForm::Circular { theta, .. } => -i.powi(n) * (nf * theta).sin().powi(2),
        // odd powers: |I|^n, since I < 0 here and V(a^n) > 0
        PolarForm::HyperbolicSinh { theta, .. } if n % 2 == 1 => i.abs().powi(n) * (nf * theta).cosh().powi(2),
        PolarForm::HyperbolicSinh { theta, .. } => i.powi(n) * (nf * theta).sinh().powi(2),
        PolarForm::Parabolic { a0, im, .. } => {
            if classify(a, &tol()) == SectorLabel::S4only {
                (2.0 * a0).powi(2 * n - 2) * im.v()
            } else {
                0.0
            }
        }
    }
}

#[test]
fn ac11_algebraic_identities() {
    const SAMPLES: usize = 600;
    let mut rng = SplitMix64::new(11);
    let (mut assoc, mut conj_bad, mut imult, mut vscale) = (0.0f64, 0, 0.0f64, 0.0f64);
    for _ in 0..SAMPLES {
        let (a, b, c) = (
            random_box(&mut rng, 10.0),
            random_box(&mut rng, 10.0),
            random_box(&mut rng, 10.0),
        );
        assoc = assoc.max(rel_dev(&((a * b) * c), &(a * (b * c)), a.norm() * b.norm() * c.norm()));
        if (a * b).conj() != b.conj() * a.conj() {
            conj_bad += 1;
        }
        imult = imult.max(((a * b).i() - a.i() * b.i()).abs() / (a.norm_sq() * b.norm_sq()));
        let t = rng.uniform(-50.0, 50.0);
        vscale = vscale.max((a.scale(t).v() - t * t * a.v()).abs() / (t * t * a.norm_sq()));
    }

    let mut vcase = 0.0f64;
    let mut vcase_samples = 0;
    for label in [
        SectorLabel::S1,
        SectorLabel::S2,
        SectorLabel::S3,
        SectorLabel::S4only,
        SectorLabel::S5only,
    ] {
        for _ in 0..SAMPLES {
            let a = sample_in_sector(label, rng.next_u64());
            let n = rng.int_in(1, 8) as i32;
            let got = pow_naive(&a, n as u64).v();
            let dev = (got - predicted_v_of_power(&a, n)).abs() / a.norm().powi(2 * n);
            vcase = vcase.max(dev);
            vcase_samples += 1;
        }
    }
    let ok = assoc <= ASSOC_REL_TOL
        && conj_bad == 0
        && imult <= I_MULT_REL_TOL
        && vscale <= V_SCALE_REL_TOL
        && vcase <= VCASE_REL_TOL;
    report(
        "AC11",
        "algebraic identities",
        ok,
        &format!(
            "{SAMPLES} samples each; associativity {assoc:.2e}, conj mismatches {conj_bad}, \
             I multiplicativity {imult:.2e}, V scaling {vscale:.2e}, V of powers {vcase:.2e} over {vcase_samples}"
        ),
    );
}

const TOKENS: [&str; 24] = [
    "1", "0.5", "2e3", "1e999", "e1", "e2", "e3", "e12", "+", "-", "*", "^", "(", ")", "exp", "inv", "sqrt", "conj",
    " ", "-3", "e", ".", "9", "^-",
];

#[test]
fn ac12_round_trips_and_fuzz() {
    let t = tol();
    let mut rng = SplitMix64::new(12);
    let mut round_trips = 0;
    let mut mismatches = 0;
    for _ in 0..1200 {
        let mut c = [0.0; 4];
        for x in &mut c {
            let mag = 10f64.powf(rng.uniform(-300.0, 300.0));
            *x = match rng.int_in(0, 5) {
                0 => 0.0,
                1 => rng.int_in(-100, 100) as f64,
                _ => rng.sign() * mag * rng.next_f64(),
            };
        }
        let a = Multivector::from_coeffs(c).unwrap();
        let set = RootSet::CircularFamily {
            scale: rng.uniform(1e-3, 1e3),
            angles: (0..rng.int_in(0, 5)).map(|_| rng.uniform(-7.0, 7.0)).collect(),
        };
        let ok = parse_eval(&format_mv(&a, Style::Machine), &t).ok() == Some(a)
            && parse_eval(&format_mv(&a, Style::Human), &t).ok() == Some(a)
            && decode::<Multivector>(&encode(&a)).ok() == Some(a)
            && decode::<RootSet>(&encode(&RootSet::Finite(vec![a]))).ok() == Some(RootSet::Finite(vec![a]))
            && decode::<RootSet>(&encode(&set)).ok() == Some(set);
        if !ok {
            mismatches += 1;
        }
        round_trips += 1;
    }

    let mut fuzzed = 0;
    let mut crashes = 0;
    for k in 0..20_000 {
        let text = if k % 2 == 0 {
            let bytes: Vec<u8> = (0..rng.int_in(0, 64)).map(|_| rng.next_u64() as u8).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        } else {
            (0..rng.int_in(0, 30))
                .map(|_| TOKENS[rng.int_in(0, TOKENS.len() as i64 - 1) as usize])
                .collect()
        };
        let outcome = catch_unwind(AssertUnwindSafe(|| match parse_eval(&text, &t) {
            Ok(v) => v.is_finite(),
            Err(e) => e.position <= text.len(),
        }));
        if !matches!(outcome, Ok(true)) {
            crashes += 1;
        }
        fuzzed += 1;
    }
    report(
        "AC12",
        "bit-exact round trips and parser fuzz",
        round_trips >= 1000 && mismatches == 0 && fuzzed >= 10_000 && crashes == 0,
        &format!("{round_trips} round trips ({mismatches} mismatches), {fuzzed} fuzz inputs ({crashes} crashes)"),
    );
}
