//! Acceptance suite: one PASS/FAIL line per criterion, with the measured runtime.
//!
//! Every expected value is either a printed formula typed in below or computed here by a
//! route independent of the code under test. Runs in the test profile (opt-level 3).

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;

use knotfield_core::algebra::rational::{int, rat};
use knotfield_core::algebra::{to_semiholo, SemiholoPolynomial};
use knotfield_core::braid::predict::{CrossingPrediction, FIGURE_EIGHT_FAMILY};
use knotfield_core::braid::{
    braid_permutation, braid_word, crossing_signs, default_lambda, lemniscate_strands, reduce_tangle, spiral_predictions, tangle_notation,
    ExpTerm,
};
use knotfield_core::field::eval::NumericSemiholo;
use knotfield_core::field::hopfion::{hopfion_field, SOUTH_POLE};
use knotfield_core::field::presets::{cable_13n4587_strands, fig8hopf_paper};
use knotfield_core::field::{braid_polynomial, build_field, build_field_from_strands, milnor_polynomial, Preset};
use knotfield_core::knot::{alexander_from_braid, theorem2_alexander};
use knotfield_core::verify::{
    certify_spec, hopf_charge, recover_braid_word, track_braid, verify_milnor_sphere, PreimageOptions, ScanOptions,
};
use knotfield_core::{AlgebraError, FieldError, IntLaurentPoly, LemniscateSpec, TrigStrand, VerifyOptions};

/// Criteria whose failure is understood and recorded; see the f5r2 line of criterion 2.
const KNOWN_FAILURES: &[u32] = &[2];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into().trim_end().to_string() }
}

/// Criterion id, runtime limit, check.
type Check = (u32, Option<Duration>, fn() -> Outcome);

type Terms = Vec<(u32, u32, u32, i64)>;

fn poly(terms: &[(u32, u32, u32, i64)]) -> SemiholoPolynomial {
    let t: Vec<_> = terms.iter().map(|&(a, b, c, k)| (a, b, c, k, 0)).collect();
    SemiholoPolynomial::from_int_terms(&t).expect("valid terms")
}

// 64u³ − 12u(3 + 2[v² − v̄²]) − 14(v² + v̄²) − (v⁴ − v̄⁴)
fn printed_fig8() -> Terms {
    vec![(3, 0, 0, 64), (1, 0, 0, -36), (1, 2, 0, -24), (1, 0, 2, 24), (0, 2, 0, -14), (0, 0, 2, -14), (0, 4, 0, -1), (0, 0, 4, 1)]
}

// 1024u⁵ − 960u³ − 160u²(vʳ + v̄ʳ) + 20u(21 − 10(vʳ + v̄ʳ)) − 82(vʳ + v̄ʳ) − v²ʳ + v̄²ʳ
fn printed_f5(r: u32) -> Terms {
    vec![
        (5, 0, 0, 1024),
        (3, 0, 0, -960),
        (2, r, 0, -160),
        (2, 0, r, -160),
        (1, 0, 0, 420),
        (1, r, 0, -200),
        (1, 0, r, -200),
        (0, r, 0, -82),
        (0, 0, r, -82),
        (0, 2 * r, 0, -1),
        (0, 0, 2 * r, 1),
    ]
}

// 20736u⁴ − 576u²(8 + 3(vʳ − v̄ʳ)) + (92 − 39vʳ − 231v̄ʳ + 6v²ʳ + 30v̄²ʳ − v³ʳ − v̄³ʳ)
fn printed_f4(r: u32) -> Terms {
    vec![
        (4, 0, 0, 20736),
        (2, 0, 0, -4608),
        (2, r, 0, -1728),
        (2, 0, r, 1728),
        (0, 0, 0, 92),
        (0, r, 0, -39),
        (0, 0, r, -231),
        (0, 2 * r, 0, 6),
        (0, 0, 2 * r, 30),
        (0, 3 * r, 0, -1),
        (0, 0, 3 * r, -1),
    ]
}

// 256u⁴ − 512u²v³ + 64uv² − v + 256v⁶
fn printed_cable() -> Terms {
    vec![(4, 0, 0, 256), (2, 3, 0, -512), (1, 2, 0, 64), (0, 1, 0, -1), (0, 6, 0, 256)]
}

fn matches_printed(ours: &SemiholoPolynomial, printed: &Terms) -> bool {
    ours.positive_ratio_to(&poly(printed)).is_some()
}

/// Largest `|f(Z_j(h), e^{ih})|` over sample points, relative to the coefficient mass.
fn strand_residual(f: &SemiholoPolynomial, strands: &[TrigStrand]) -> f64 {
    let num = NumericSemiholo::new(f);
    let mass: f64 = f.terms().values().map(|c| c.to_complex().norm()).sum();
    let mut worst: f64 = 0.0;
    for k in 0..97 {
        let h = 0.0651 * k as f64;
        let v = Complex64::from_polar(1.0, h);
        for z in strands {
            worst = worst.max(num.eval(z.eval(h), v).norm() / mass);
        }
    }
    worst
}

fn criterion_1() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_knotfield"))
        .args(["generate", "--s", "3", "--r", "2", "--l", "2", "--no-spatial"])
        .output()
        .expect("binary runs");
    if !out.status.success() {
        return outcome(false, format!("generate exited with {:?}", out.status.code()));
    }
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json output");
    let f = SemiholoPolynomial::from_json(&json["f"]).expect("polynomial json");
    match f.positive_ratio_to(&poly(&printed_fig8())) {
        Some(k) => outcome(k == int(1) && json["clearing"] == "64", format!("ratio {k}, clearing {}", json["clearing"])),
        None => outcome(false, format!("got {}", json["fText"])),
    }
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    let mut oracle_ok = true;
    for r in 1..=3 {
        let f4 = Preset::F4r3.spec().unwrap();
        let spec4 = LemniscateSpec::with_params(4, r, 3, f4.a, f4.b, f4.lambda).unwrap();
        let ok4 = matches_printed(&build_field(&spec4).unwrap(), &printed_f4(r));
        passed &= ok4;
        parts.push(format!("f4r3 r={r} {}", if ok4 { "exact" } else { "MISMATCH" }));

        let spec5 = LemniscateSpec::new(5, r, 2).unwrap();
        let ours5 = build_field(&spec5).unwrap();
        let ok5 = matches_printed(&ours5, &printed_f5(r));
        passed &= ok5;
        // the printed form must vanish on the strands if it describes this braid
        let strands = lemniscate_strands(&spec5);
        let ours_res = strand_residual(&ours5, &strands);
        let printed_res = strand_residual(&poly(&printed_f5(r)), &strands);
        oracle_ok &= ours_res < 1e-12 && printed_res > 1e-3;
        parts.push(format!(
            "f5r2 r={r} {} (strand residual ours {ours_res:.1e}, printed {printed_res:.1e})",
            if ok5 { "exact" } else { "differs from printed" }
        ));
    }
    if !oracle_ok {
        // our field must vanish on its own strands whatever the printed form says
        return outcome(false, format!("strand-root oracle failed: {}", parts.join("; ")));
    }
    outcome(passed, parts.join("; "))
}

fn criterion_3() -> Outcome {
    let f = build_field_from_strands(&cable_13n4587_strands(), &int(1)).unwrap();
    let ok = matches_printed(&f, &printed_cable());
    outcome(ok, if ok { "exact".to_string() } else { format!("got {f}") })
}

/// Numerator of the continued fraction `[a₁; a₂, …, a_k]`, i.e. the determinant of the
/// two-bridge knot with that tangle.
fn continued_fraction_numerator(t: &[i64]) -> i64 {
    let (mut p, mut q) = (1i64, 0i64);
    for &a in t.iter().rev() {
        (p, q) = (a * p + q, p);
    }
    p
}

fn at_minus_one(p: &IntLaurentPoly) -> BigInt {
    (p.min_exp()..=p.max_exp()).map(|k| if k.rem_euclid(2) == 0 { p.coeff(k) } else { -p.coeff(k) }).sum()
}

fn criterion_4() -> Outcome {
    // knot-table Alexander polynomials (lowest coefficient first) for 4_1, 6_3, 8_9, 10_17
    let table: [&[i64]; 4] = [&[1, -3, 1], &[1, -3, 5, -3, 1], &[1, -3, 5, -7, 5, -3, 1], &[1, -3, 5, -7, 9, -7, 5, -3, 1]];
    let mut bad = Vec::new();
    for n in 1..=6u32 {
        let spec = LemniscateSpec::new(2 * n + 1, 2, 2).unwrap();
        let delta = alexander_from_braid(&braid_word(&spec)).unwrap();
        if !delta.equals_up_to_unit(&theorem2_alexander(n)) {
            bad.push(format!("n={n}: braid vs closed form"));
        }
        if delta.at_one() != BigInt::from(1) || !delta.is_symmetric() {
            bad.push(format!("n={n}: normalisation"));
        }
        if let Some(coeffs) = table.get(n as usize - 1) {
            let fixture = IntLaurentPoly::from_i64(0, coeffs);
            if !delta.equals_up_to_unit(&fixture) {
                bad.push(format!("n={n}: knot table"));
            }
        }
        let row = &FIGURE_EIGHT_FAMILY[n as usize - 1];
        let det = continued_fraction_numerator(row.tangle);
        if at_minus_one(&delta).magnitude() != &BigInt::from(det).magnitude().clone() {
            bad.push(format!("n={n}: determinant {} vs tangle {det}", at_minus_one(&delta)));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "n = 1..6 agree".into() } else { bad.join("; ") })
}

fn criterion_5() -> Outcome {
    let opts = VerifyOptions::default();
    let mut count = 0;
    let mut bad = Vec::new();
    for s in 2..=7u32 {
        for r in 1..=4u32 {
            for l in 1..=3u32 {
                if s <= l || num_integer::gcd(s, l) != 1 {
                    continue;
                }
                count += 1;
                let spec = LemniscateSpec::new(s, r, l).unwrap().with_lambda(default_lambda(l).unwrap());
                let f = NumericSemiholo::new(&build_field(&spec).unwrap());
                let expected = braid_word(&spec);
                let result = track_braid(&f, &opts).and_then(|t| Ok((recover_braid_word(&t)?, t.components())));
                match result {
                    Ok((w, c)) if w == expected && c == num_integer::gcd(s, r) as usize => {}
                    Ok((w, c)) => bad.push(format!("({s},{r},{l}): {:?} / {c} components", w.letters())),
                    Err(e) => bad.push(format!("({s},{r},{l}): {e}")),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} specs, {} mismatches {}", bad.len(), bad.join("; ")))
}

fn certified_specs() -> Vec<LemniscateSpec> {
    let table1 = (3..=13).step_by(2).map(|s| LemniscateSpec::new(s, 2, 2).unwrap());
    let table2 = [4, 5, 7].into_iter().map(|s| LemniscateSpec::new(s, 2, 3).unwrap().with_lambda(rat(1, 2)));
    table1.chain(table2).collect()
}

/// Criteria 6 and 7 share one certification run per spec.
fn criteria_6_7() -> (Outcome, Outcome) {
    let opts = VerifyOptions::default();
    let scan = ScanOptions::default();
    let (mut nodal_bad, mut fib_bad, mut margins) = (Vec::new(), Vec::new(), Vec::new());
    for spec in certified_specs() {
        let tag = format!("({},{},{}) λ={}", spec.s, spec.r, spec.l, spec.lambda);
        match certify_spec(&spec, &opts, Some(&scan)) {
            Ok(c) => {
                let nodal_ok = c.error.is_none() && c.word == c.expected_word && c.components == c.expected_components;
                if !nodal_ok {
                    nodal_bad.push(format!("{tag}: {:?}", c.error));
                }
                match &c.fibration {
                    Some(f) if f.margin_positive => margins.push(f.min_grad_norm),
                    _ => fib_bad.push(tag),
                }
            }
            Err(e) => {
                nodal_bad.push(format!("{tag}: {e}"));
                fib_bad.push(tag);
            }
        }
    }
    let n = certified_specs().len();
    let low = margins.iter().copied().fold(f64::INFINITY, f64::min);
    (
        outcome(nodal_bad.is_empty(), format!("{} of {n} specs certified {}", n - nodal_bad.len(), nodal_bad.join("; "))),
        outcome(
            fib_bad.is_empty(),
            format!("{} of {n} margins positive, smallest min |∇arg f| {low:.4} {}", margins.len(), fib_bad.join("; ")),
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for row in FIGURE_EIGHT_FAMILY {
        let spec = LemniscateSpec::new(row.s, 2, 2).unwrap();
        let t = tangle_notation(&crossing_signs(&spec), 2).unwrap();
        let reduced: Vec<i64> = reduce_tangle(&t).iter().map(|x| x.abs()).collect();
        if reduced != row.tangle {
            bad.push(format!("s={}: {reduced:?}", row.s));
        }
    }
    for s in [4u32, 5, 7, 8] {
        let spec = LemniscateSpec::new(s, 2, 3).unwrap();
        let p = spiral_predictions(&spec);
        // an alternating rational diagram realises the crossing number: sum of |tangle entries|
        let from_tangle: i64 = p.tangle.as_ref().map_or(0, |t| t.iter().map(|x| x.abs()).sum());
        match p.crossings {
            CrossingPrediction::Exact { crossings } if crossings == s + 2 && from_tangle == (s + 2) as i64 => {}
            other => bad.push(format!("s={s} ℓ=3: {other:?}, tangle sum {from_tangle}")),
        }
        if p.is_knot && p.braid_index != Some(4) {
            bad.push(format!("s={s} ℓ=3: braid index {:?}", p.braid_index));
        }
        if p.is_knot != (braid_permutation(&braid_word(&spec)).cycles == 1) {
            bad.push(format!("s={s} ℓ=3: knot flag"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "table tangles, c = s + ℓ − 1, b = ℓ + 1".into() } else { bad.join("; ") })
}

fn criterion_9() -> Outcome {
    let spec = fig8hopf_paper(2, 2);
    let field = hopfion_field(&spec).unwrap();
    let opts = PreimageOptions { grid: 96, half_width: 6.0, ..PreimageOptions::default() };
    let predicted = (spec.n * 3) as i64;
    match hopf_charge(&field, SOUTH_POLE, [1.0, 0.0, 0.0], &opts) {
        Ok((q, _)) => outcome(
            q.charge == predicted && q.charge == 6 && (q.raw_charge - 6.0).abs() < 0.1,
            format!("Q = {} (raw {:.6}, loops {:?})", q.charge, q.raw_charge, q.loops),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn criterion_10() -> Outcome {
    let spec = LemniscateSpec::new(3, 2, 2).unwrap();
    let big = milnor_polynomial(&build_field(&spec).unwrap(), 2).unwrap();
    let expected = braid_word(&spec);
    let opts = VerifyOptions::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for radius in [0.1, 0.05, 0.01] {
        match verify_milnor_sphere(&big, radius, &opts) {
            Ok(c) => {
                ok &= c.nodal.word == expected && c.min_regularity > opts.transversality;
                parts.push(format!("ρ={radius}: {:?} regularity {:.3}", c.nodal.word.letters(), c.min_regularity));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("ρ={radius}: {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn criterion_11() -> Outcome {
    let spec = LemniscateSpec::new(3, 2, 2).unwrap();
    let big_lambda = certify_spec(&spec.with_lambda(int(100)), &VerifyOptions::default(), None);
    let lambda_fails = matches!(&big_lambda, Ok(c) if !c.passed) || big_lambda.is_err();

    // every root turned by a third of a turn: the product has non-Gaussian coefficients
    let third = rat(1, 3);
    let corrupted: Vec<TrigStrand> = lemniscate_strands(&LemniscateSpec::new(2, 3, 1).unwrap())
        .iter()
        .map(|z| TrigStrand::new(z.terms().iter().map(|t| ExpTerm::new(t.coeff.clone(), t.freq.clone(), &t.phase + &third))))
        .collect();
    let not_gaussian = match braid_polynomial(&corrupted, &int(1)) {
        Ok(p) => matches!(to_semiholo(&p), Err(AlgebraError::NotGaussian(_))),
        Err(e) => matches!(e, AlgebraError::NotGaussian(_)),
    };

    let f = build_field(&LemniscateSpec::new(3, 3, 2).unwrap()).unwrap();
    let odd = matches!(milnor_polynomial(&f, 3), Err(FieldError::OddRepeats(3)));
    outcome(lambda_fails && not_gaussian && odd, format!("λ=100 rejected: {lambda_fails}; NotGaussian: {not_gaussian}; OddRepeats: {odd}"))
}

fn report(id: u32, limit: Option<Duration>, elapsed: Duration, o: &Outcome, failures: &mut Vec<u32>) {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let passed = o.passed && in_time;
    if !passed {
        failures.push(id);
    }
    let limit_text = limit.map_or(String::new(), |l| format!(" / limit {:.0} s", l.as_secs_f64()));
    println!(
        "criterion {id:>2}: {} [{:.2} s{limit_text}]{} {}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if in_time { "" } else { " over time" },
        o.detail
    );
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() -> ExitCode {
    let mut failures = Vec::new();
    let secs = |s: u64| Some(Duration::from_secs(s));
    let simple: [Check; 4] = [(1, secs(1), criterion_1), (2, secs(5), criterion_2), (3, secs(5), criterion_3), (4, secs(10), criterion_4)];
    for (id, limit, f) in simple {
        let (o, t) = timed(f);
        report(id, limit, t, &o, &mut failures);
    }
    let (o, t) = timed(criterion_5);
    report(5, secs(120), t, &o, &mut failures);
    let ((o6, o7), t) = timed(criteria_6_7);
    report(6, secs(300), t, &o6, &mut failures);
    report(7, None, t, &o7, &mut failures);
    let rest: [Check; 4] =
        [(8, secs(1), criterion_8), (9, secs(300), criterion_9), (10, secs(120), criterion_10), (11, None, criterion_11)];
    for (id, limit, f) in rest {
        let (o, t) = timed(f);
        report(id, limit, t, &o, &mut failures);
    }
    let passed = 11 - failures.len();
    println!("acceptance: {passed}/11 passed; failing {failures:?}; recorded known failures {KNOWN_FAILURES:?}");
    if failures == KNOWN_FAILURES {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failures differ from the recorded set");
        ExitCode::FAILURE
    }
}
