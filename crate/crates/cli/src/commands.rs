use std::fs;
use std::io::Write;

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use knotfield_core::algebra::rational::{int, parse_rational, rat};
use knotfield_core::braid::{braid_permutation, braid_word, crossing_signs, default_lambda, rotating_word, spiral_predictions};
use knotfield_core::field::eval::NumericSemiholo;
use knotfield_core::field::hopfion::{hopfion_field, Profile, SOUTH_POLE};
use knotfield_core::field::presets::{cable_13n4587_strands, fig8hopf_paper, fig8hopf_paper_denominator};
use knotfield_core::field::{
    brauner_polynomial, build_field, build_field_from_strands, integerize, milnor_polynomial, stereographic_substitute, HopfionSpec, Preset,
};
use knotfield_core::knot::{alexander_from_braid, genus_degree_check, murasugi_mod_check, theorem2_alexander, KnotError};
use knotfield_core::verify::{
    certify_spec, curves_to_csv, hopf_charge, lambda_threshold_search, verify_milnor_sphere, verify_nodal_on_sphere, PreimageOptions,
    ScanOptions,
};
use knotfield_core::{
    BraidError, BraidWord, FieldError, IntLaurentPoly, LemniscateSpec, Rational, SemiholoPolynomial, VerifyError, VerifyOptions,
};

use crate::args::{BraidArgs, Format, GenerateArgs, GridArgs, HopfionArgs, MilnorArgs, OutputArgs, SpecArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("algebra error: {0}")]
    Algebra(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Algebra(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Algebra(a) => CliError::Algebra(a.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<knotfield_core::AlgebraError> for CliError {
    fn from(e: knotfield_core::AlgebraError) -> Self {
        CliError::Algebra(e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::InvalidInput(msg) => CliError::Invalid(msg),
            VerifyError::Field(f) => f.into(),
            other => CliError::Algebra(other.to_string()),
        }
    }
}

/// Whether the command's checks passed; failing checks exit with 1.
pub type Outcome = Result<bool, CliError>;

fn parse_q(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|_| CliError::Invalid(format!("--{flag}: expected p/q or a decimal, got {text:?}")))
}

fn q_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `csv` is the curve data of commands that produce curves; others reject `--format csv`.
fn emit(output: &OutputArgs, json: &Value, text: impl FnOnce() -> String, csv: Option<String>) -> Result<(), CliError> {
    let body = match output.format {
        Format::Csv => csv.ok_or_else(|| CliError::Invalid("--format csv is only available for verify and hopfion".into()))?,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = text();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    };
    write_out(&output.out, &body)
}

fn write_out(path: &str, body: &str) -> Result<(), CliError> {
    if path == "-" {
        let mut stdout = std::io::stdout().lock();
        match stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        }
    } else {
        fs::write(path, body)?;
    }
    Ok(())
}

/// What the spec flags describe.
enum Source {
    Lemniscate { spec: Box<LemniscateSpec>, lambda_source: &'static str },
    Cable,
    HopfPreset { r: u32 },
}

fn grid_options(grid: &GridArgs) -> VerifyOptions {
    VerifyOptions {
        h_steps: grid.h_steps,
        root_residual: grid.root_residual,
        transversality: grid.transversality,
        closure: grid.closure,
        ..VerifyOptions::default()
    }
}

fn resolve(args: &SpecArgs, opts: &VerifyOptions) -> Result<Source, CliError> {
    let given_lambda = args.lambda.as_deref().map(|t| parse_q("lambda", t)).transpose()?;
    if let Some(lambda) = &given_lambda {
        if *lambda <= int(0) {
            return Err(CliError::Invalid("--lambda must be positive".into()));
        }
    }
    let base = match &args.preset {
        Some(name) => {
            let preset: Preset = name.parse()?;
            if args.s.is_some() || args.l.is_some() {
                return Err(CliError::Invalid(format!("preset {preset} fixes s and ℓ; only --r may be overridden")));
            }
            match preset.spec() {
                Some(spec) => {
                    let r = args.r.unwrap_or(spec.r);
                    LemniscateSpec::with_params(spec.s, r, spec.l, spec.a, spec.b, spec.lambda)?
                }
                None if preset == Preset::Cable13n4587 => return Ok(Source::Cable),
                None => return Ok(Source::HopfPreset { r: args.r.unwrap_or(2) }),
            }
        }
        None => {
            let (Some(s), Some(r), Some(l)) = (args.s, args.r, args.l) else {
                return Err(CliError::Invalid("--s, --r and --l are required unless --preset is given".into()));
            };
            let a = parse_q("a", &args.a)?;
            let b = parse_q("b", &args.b)?;
            LemniscateSpec::with_params(s, r, l, a, b, int(1))?
        }
    };
    let preset_lambda = args.preset.is_some().then(|| base.lambda.clone());
    let (lambda, lambda_source) = match (given_lambda, preset_lambda, default_lambda(base.l)) {
        (Some(l), _, _) => (l, "given"),
        (None, Some(l), _) => (l, "preset"),
        (None, None, Some(l)) => (l, "default"),
        (None, None, None) => {
            let search = lambda_threshold_search(&base, 1.0, opts)?;
            let milli = (search.lambda_star * 1000.0).floor() as i64;
            (rat(milli.max(1), 1000), "search")
        }
    };
    let spec = base.with_lambda(lambda).with_rotation(args.n_rot);
    Ok(Source::Lemniscate { spec: Box::new(spec), lambda_source })
}

fn expected_word(spec: &LemniscateSpec) -> BraidWord {
    if spec.n_rot == 0 {
        braid_word(spec)
    } else {
        rotating_word(spec, spec.n_rot)
    }
}

fn field_json(f: &SemiholoPolynomial, spatial: bool) -> Value {
    let (g, k) = integerize(f);
    let mut out = json!({
        "clearing": k.to_string(),
        "f": g.to_json(),
        "fText": g.to_string(),
    });
    if spatial {
        out["F"] = stereographic_substitute(&g).to_json();
    }
    out
}

pub fn generate(args: &GenerateArgs) -> Outcome {
    let opts = VerifyOptions::default();
    let source = resolve(&args.spec, &opts)?;
    let (header, f) = match source {
        Source::Lemniscate { spec, lambda_source } => {
            let f = build_field(&spec)?;
            (json!({"spec": spec.to_json(), "lambda": q_text(&spec.lambda), "lambdaSource": lambda_source}), f)
        }
        Source::Cable => {
            let f = build_field_from_strands(&cable_13n4587_strands(), &int(1))?;
            (json!({"preset": Preset::Cable13n4587.name()}), f)
        }
        Source::HopfPreset { r } => (json!({"preset": Preset::Fig8HopfPaper.name(), "r": r}), fig8hopf_paper_denominator(r)),
    };
    let mut out = header;
    let body = field_json(&f, !args.no_spatial);
    for (k, v) in body.as_object().expect("object") {
        out[k] = v.clone();
    }
    let text = out["fText"].as_str().unwrap_or_default().to_string();
    emit(&args.output, &out, || text, None)?;
    Ok(true)
}

fn lemniscate_only(source: Source, command: &str) -> Result<(LemniscateSpec, &'static str), CliError> {
    match source {
        Source::Lemniscate { spec, lambda_source } => Ok((*spec, lambda_source)),
        _ => Err(CliError::Invalid(format!("{command} needs a lemniscate spec (--s/--r/--l or a lemniscate preset)"))),
    }
}

/// λ does not affect the braid, so no threshold search is needed.
fn topology_spec(args: &SpecArgs) -> Result<LemniscateSpec, CliError> {
    let mut args = args.clone();
    if args.lambda.is_none() {
        args.lambda = Some("1".into());
    }
    lemniscate_only(resolve(&args, &VerifyOptions::default())?, "this command").map(|(s, _)| s)
}

pub fn braid(args: &BraidArgs) -> Outcome {
    let spec = topology_spec(&args.spec)?;
    let word = expected_word(&spec);
    let perm = braid_permutation(&word);
    let pred = spiral_predictions(&spec);
    let out = json!({
        "spec": spec.to_json(),
        "word": word.to_json(),
        "wordText": word.to_string(),
        "epsilon": crossing_signs(&spec).signs,
        "permutation": perm.image,
        "components": perm.cycles,
        "predictions": serde_json::to_value(&pred).expect("serializable"),
    });
    emit(
        &args.output,
        &out,
        || {
            let mut t = format!("word: {word}\ncomponents: {}\n", perm.cycles);
            if let Some(tangle) = &pred.tangle_reduced {
                t.push_str(&format!("tangle: {tangle:?}\n"));
            }
            t
        },
        None,
    )?;
    Ok(true)
}

fn alexander_at_minus_one(p: &IntLaurentPoly) -> i64 {
    let mut total = num_bigint::BigInt::from(0);
    for (i, c) in p.coeffs().iter().enumerate() {
        if (p.min_exp() + i as i64).rem_euclid(2) == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    total.to_i64().map_or(i64::MAX, i64::abs)
}

pub fn invariants(args: &BraidArgs) -> Outcome {
    let spec = topology_spec(&args.spec)?;
    let word = expected_word(&spec);
    let pred = spiral_predictions(&spec);
    let mut out = json!({
        "spec": spec.to_json(),
        "word": word.to_json(),
        "components": pred.component_count,
        "predictions": serde_json::to_value(&pred).expect("serializable"),
    });
    let mut ok = true;
    let text;
    match alexander_from_braid(&word) {
        Ok(delta) => {
            let genus = genus_degree_check(&delta, spec.s, spec.r);
            ok &= delta.is_symmetric() && delta.at_one() == 1.into() && (spec.n_rot != 0 || genus.consistent);
            out["alexander"] = delta.to_json();
            out["alexanderText"] = json!(delta.to_string());
            out["determinant"] = json!(alexander_at_minus_one(&delta));
            out["genus"] = serde_json::to_value(&genus).expect("serializable");
            out["murasugi"] = match murasugi_mod_check(&delta, spec.s, spec.r) {
                Ok(b) => {
                    ok &= spec.n_rot != 0 || b;
                    json!(b)
                }
                Err(KnotError::NotPrimePower(_)) => Value::Null,
                Err(e) => return Err(CliError::Algebra(e.to_string())),
            };
            if spec.l == 2 && spec.r == 2 && spec.n_rot == 0 && spec.b > int(0) {
                let n = (spec.s - 1) / 2;
                let closed = theorem2_alexander(n);
                let agrees = closed.equals_up_to_unit(&delta);
                ok &= agrees;
                out["closedForm"] = json!({"n": n, "alexander": closed.to_json(), "text": closed.to_string(), "agreesUpToUnit": agrees});
            }
            text = format!("{delta}");
        }
        Err(KnotError::MultiComponent(c)) => {
            out["alexander"] = Value::Null;
            out["notice"] = json!(format!("closure has {c} components; only knot Alexander polynomials are computed"));
            text = format!("link with {c} components: no Alexander polynomial computed");
        }
        Err(e) => return Err(CliError::Algebra(e.to_string())),
    }
    out["checksPassed"] = json!(ok);
    emit(&args.output, &out, || text, None)?;
    Ok(ok)
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let opts = grid_options(&args.grid);
    let (spec, lambda_source) = lemniscate_only(resolve(&args.spec, &opts)?, "verify")?;
    let scan = ScanOptions { samples: args.grid.samples, tube: args.grid.tube, ..ScanOptions::default() };
    let cert = certify_spec(&spec, &opts, (!args.no_scan).then_some(&scan))?;
    let mut passed = cert.passed;
    if spec.n_rot != 0 {
        // rotations add full twists that interleave with the basic crossings; compare
        // what survives reordering
        let expected = expected_word(&spec);
        let recovered = BraidWord::new(spec.s, cert.word.clone())?;
        passed = cert.error.is_none()
            && recovered.exponent_sum() == expected.exponent_sum()
            && cert.components == cert.expected_components
            && cert.fibration.as_ref().is_none_or(|f| f.margin_positive);
    }
    let mut out = cert.to_json();
    out["expectedWord"] = expected_word(&spec).to_json();
    out["lambdaSource"] = json!(lambda_source);
    out["passed"] = json!(passed);
    out["options"] = json!({
        "hSteps": opts.h_steps, "samples": scan.samples, "tube": scan.tube,
        "rootResidual": opts.root_residual, "transversality": opts.transversality, "closure": opts.closure,
    });
    if let Some(max) = args.search_lambda {
        let search = lambda_threshold_search(&spec, max, &opts)?;
        out["lambdaSearch"] = serde_json::to_value(&search).expect("serializable");
    }
    let mut curves_csv = None;
    if args.curve_out.is_some() || args.output.format == Format::Csv {
        let f = NumericSemiholo::new(&build_field(&spec)?);
        match verify_nodal_on_sphere(&f, &opts) {
            Ok(nodal) => curves_csv = Some(curves_to_csv(&nodal.curves)),
            Err(e) => eprintln!("no curve available: {e}"),
        }
    }
    if let (Some(path), Some(csv)) = (&args.curve_out, &curves_csv) {
        write_out(path, csv)?;
    }
    let verdict = if passed { "passed" } else { "FAILED" };
    let text = || format!("{verdict}: word {:?}, min |grad arg f| {:?}", cert.word, cert.min_grad_norm);
    emit(&args.output, &out, text, curves_csv.or_else(|| Some("index,x,y,z,w\n".into())))?;
    Ok(passed)
}

fn parse_target(text: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Invalid(format!("--target: expected x,y,z, got {text:?}")))?;
    let [x, y, z] = parts[..] else {
        return Err(CliError::Invalid(format!("--target: expected three numbers, got {text:?}")));
    };
    let n = (x * x + y * y + z * z).sqrt();
    if n == 0.0 {
        return Err(CliError::Invalid("--target must be non-zero".into()));
    }
    Ok([x / n, y / n, z / n])
}

pub fn hopfion(args: &HopfionArgs) -> Outcome {
    let source = resolve(&args.spec, &VerifyOptions::default())?;
    let (mut spec, label) = match source {
        Source::HopfPreset { r } => (fig8hopf_paper(r, args.n), json!({"preset": Preset::Fig8HopfPaper.name(), "r": r})),
        Source::Lemniscate { spec, .. } => {
            let f = integerize(&build_field(&spec)?).0;
            (HopfionSpec::new(f, args.n), spec.to_json())
        }
        Source::Cable => {
            let f = integerize(&build_field_from_strands(&cable_13n4587_strands(), &int(1))?).0;
            (HopfionSpec::new(f, args.n), json!({"preset": Preset::Cable13n4587.name()}))
        }
    };
    spec.m = args.m;
    if let Some(c) = &args.c {
        spec.numerator_constant = parse_q("c", c)?;
    }
    spec.profile = Profile::Arctan { width: args.width };
    let field = hopfion_field(&spec)?;
    let target = parse_target(&args.target)?;
    if target == SOUTH_POLE {
        return Err(CliError::Invalid("--target must differ from the south pole".into()));
    }
    if args.grid < 2 || args.half_width <= 0.0 {
        return Err(CliError::Invalid("--grid must be at least 2 and --box positive".into()));
    }
    let popts = PreimageOptions { grid: args.grid, half_width: args.half_width, ..PreimageOptions::default() };
    let predicted = spec.predicted_charge() as i64;
    let mut out = json!({
        "field": label,
        "N": spec.n,
        "m": spec.m,
        "numeratorConstant": q_text(&spec.numerator_constant),
        "profile": {"kind": "arctan", "width": args.width},
        "grid": args.grid,
        "box": args.half_width,
        "predictedCharge": predicted,
    });
    let mut curves_csv = None;
    let passed = match hopf_charge(&field, SOUTH_POLE, target, &popts) {
        Ok((q, curves)) => {
            let all: Vec<_> = curves.iter().flatten().cloned().collect();
            let csv = curves_to_csv(&all);
            if let Some(path) = &args.curves_out {
                write_out(path, &csv)?;
            }
            curves_csv = Some(csv);
            let ok = q.charge == predicted && (q.raw_charge - predicted as f64).abs() < 0.1;
            out["charge"] = json!(q.charge);
            out["rawCharge"] = json!(q.raw_charge);
            out["certificate"] = serde_json::to_value(&q).expect("serializable");
            ok
        }
        Err(e) => {
            out["error"] = json!(e.to_string());
            false
        }
    };
    out["passed"] = json!(passed);
    if let Some(path) = &args.export {
        let n = args.export_grid.max(2);
        let mut csv = String::from("x,y,z,phi1,phi2,phi3\n");
        let coord = |i: usize| -args.half_width + 2.0 * args.half_width * i as f64 / (n - 1) as f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let p = [coord(i), coord(j), coord(k)];
                    let phi = field.phi(p);
                    csv.push_str(&format!("{:.6},{:.6},{:.6},{:.9},{:.9},{:.9}\n", p[0], p[1], p[2], phi[0], phi[1], phi[2]));
                }
            }
        }
        write_out(path, &csv)?;
    }
    let text = || format!("predicted Q = {predicted}, measured {}", out["charge"]);
    emit(&args.output, &out, text, curves_csv.or_else(|| Some("index,x,y,z\n".into())))?;
    Ok(passed)
}

fn parse_brauner(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Invalid(format!("--brauner: expected p,q with coprime p, q ≥ 2, got {text:?}"));
    let (p, q) = text.split_once(',').ok_or_else(bad)?;
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let q: u32 = q.trim().parse().map_err(|_| bad())?;
    if p < 2 || q < 2 || num_integer::gcd(p, q) != 1 {
        return Err(bad());
    }
    Ok((p, q))
}

pub fn milnor(args: &MilnorArgs) -> Outcome {
    let opts = VerifyOptions { h_steps: args.h_steps, ..VerifyOptions::default() };
    if args.radii.is_empty() || args.radii.iter().any(|r| r.is_nan() || *r <= 0.0) {
        return Err(CliError::Invalid("--radii must be positive".into()));
    }
    let (poly, expected, label) = match &args.brauner {
        Some(text) => {
            let (p, q) = parse_brauner(text)?;
            let one_turn: Vec<i32> = (1..p as i32).collect();
            let word = BraidWord::new(p, one_turn.repeat(q as usize))?;
            (brauner_polynomial(p, q), word, json!({"brauner": [p, q]}))
        }
        None => {
            let spec = topology_spec(&args.spec)?;
            let f1 = build_field(&spec.with_lambda(int(1)))?;
            (milnor_polynomial(&f1, spec.r)?, expected_word(&spec), spec.to_json())
        }
    };
    let mut certs = Vec::new();
    let mut words = Vec::new();
    let mut passed = true;
    for &radius in &args.radii {
        match verify_milnor_sphere(&poly, radius, &opts) {
            Ok(c) => {
                let ok = c.nodal.word == expected;
                passed &= ok;
                words.push(c.nodal.word.letters().to_vec());
                certs.push(json!({
                    "radius": radius, "word": c.nodal.word.to_json(), "components": c.nodal.components(),
                    "minRegularity": c.min_regularity, "passed": ok,
                }));
            }
            Err(e) => {
                passed = false;
                certs.push(json!({"radius": radius, "error": e.to_string(), "passed": false}));
            }
        }
    }
    let same = !words.is_empty() && words.len() == args.radii.len() && words.windows(2).all(|w| w[0] == w[1]);
    let out = json!({
        "source": label,
        "polynomial": poly.to_json(),
        "degree": poly.total_degree(),
        "minDegree": poly.min_degree(),
        "expectedWord": expected.to_json(),
        "certificates": certs,
        "sameWord": same,
        "passed": passed,
    });
    emit(&args.output, &out, || format!("words {words:?}; passed {passed}"), None)?;
    Ok(passed)
}
