use std::fmt::Write as _;

use cl2::oracle::{exp_scaled_series, pow_naive, root_residual, verify_root};
use cl2::transcend::standard_epsilons;
use cl2::{
    classify, format_mv, nth_roots, parse_eval, polar, pow_int, reconstruct, Error, Multivector, ParseError,
    ParseErrorKind, PolarForm, RootMode, RootSet, SectorLabel, Style, Tolerances,
};
use serde_json::{json, Map, Value};

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;

pub struct Ctx {
    pub tol: Tolerances,
    pub verify: bool,
}

/// A successful command: human text, the JSON `result`, extra envelope keys.
pub struct Output {
    pub text: String,
    pub result: Value,
    pub extra: Map<String, Value>,
    pub code: u8,
}

impl Output {
    fn new(text: String, result: Value) -> Self {
        Self {
            text,
            result,
            extra: Map::new(),
            code: 0,
        }
    }

    /// Appends an oracle check line and records it in the envelope.
    fn check(&mut self, what: &str, ok: bool, deviation: f64) {
        let verdict = if ok { "ok" } else { "FAILED" };
        let _ = writeln!(self.text, "check: {what}: {verdict} (deviation {})", fmt(deviation));
        self.extra.insert("verified".into(), Value::Bool(ok));
        self.extra.insert("deviation".into(), num(deviation));
        if !ok {
            self.code = EXIT_DOMAIN;
        }
    }
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }

    fn parse(err: &ParseError, input: &str) -> Self {
        let code = match err.kind {
            ParseErrorKind::Lexical | ParseErrorKind::Syntax => EXIT_PARSE,
            ParseErrorKind::Domain | ParseErrorKind::NonInvertible => EXIT_DOMAIN,
        };
        let caret = " ".repeat(input[..err.position.min(input.len())].chars().count());
        Self {
            code,
            message: format!("{err}\n  {input}\n  {caret}^"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::domain(e.to_string())
    }
}

pub type Outcome = Result<Output, Failure>;

fn fmt(x: f64) -> String {
    cl2::textio::format_number(x)
}

fn show(a: &Multivector) -> String {
    format_mv(a, Style::Human)
}

/// JSON number; integral values below 2^53 print without a fraction.
pub fn num(x: f64) -> Value {
    if x.fract() == 0.0 && x.abs() < 9_007_199_254_740_992.0 {
        Value::from(x as i64)
    } else {
        Value::from(x)
    }
}

fn mv_json(a: &Multivector) -> Value {
    json!({"s": num(a.s()), "e1": num(a.x1()), "e2": num(a.x2()), "e3": num(a.x3())})
}

fn parse(text: &str, ctx: &Ctx) -> Result<Multivector, Failure> {
    parse_eval(text, &ctx.tol).map_err(|e| Failure::parse(&e, text))
}

/// Oracle acceptance: `|got - want| <= tau_verify * max(1, |want|)`.
fn agrees(got: &Multivector, want: &Multivector, tol: &Tolerances) -> (bool, f64) {
    let dev = got.distance(want);
    (dev <= tol.tau_verify() * want.norm().max(1.0), dev)
}

pub fn eval(expr: &str, ctx: &Ctx) -> Outcome {
    let a = parse(expr, ctx)?;
    let mut out = Output::new(format!("{}\n", show(&a)), mv_json(&a));
    if ctx.verify {
        let machine = format_mv(&a, Style::Machine);
        let back = parse(&machine, ctx)?;
        out.check("machine text round-trip", back == a, back.max_abs_diff(&a));
    }
    Ok(out)
}

fn polar_text(p: &PolarForm) -> String {
    match p {
        PolarForm::HyperbolicCosh { sign, n, theta, eps } => format!(
            "polar: sign*N*(cosh(theta) + eps*sinh(theta))\n  sign = {}\n  N = {}\n  theta = {}\n  eps = {}\n",
            fmt(*sign),
            fmt(*n),
            fmt(*theta),
            show(eps)
        ),
        PolarForm::Circular { n, theta, eps } => format!(
            "polar: N*(cos(theta) + eps*sin(theta))\n  N = {}\n  theta = {}\n  eps = {}\n",
            fmt(*n),
            fmt(*theta),
            show(eps)
        ),
        PolarForm::HyperbolicSinh { n, theta, eps } => format!(
            "polar: N*(sinh(theta) + eps*cosh(theta))\n  N = {}\n  theta = {}\n  eps = {}\n",
            fmt(*n),
            fmt(*theta),
            show(eps)
        ),
        PolarForm::Parabolic { a0, im, .. } => {
            format!("polar: a0 + u (parabolic)\n  a0 = {}\n  u = {}\n", fmt(*a0), show(im))
        }
    }
}

fn polar_json(p: &PolarForm) -> Value {
    match p {
        PolarForm::HyperbolicCosh { sign, n, theta, eps } => json!({
            "form": "hyperbolic_cosh", "sign": num(*sign), "N": num(*n), "theta": num(*theta), "eps": mv_json(eps)
        }),
        PolarForm::Circular { n, theta, eps } => json!({
            "form": "circular", "N": num(*n), "theta": num(*theta), "eps": mv_json(eps)
        }),
        PolarForm::HyperbolicSinh { n, theta, eps } => json!({
            "form": "hyperbolic_sinh", "N": num(*n), "theta": num(*theta), "eps": mv_json(eps)
        }),
        PolarForm::Parabolic { a0, im, .. } => json!({
            "form": "parabolic", "a0": num(*a0), "u": mv_json(im)
        }),
    }
}

pub fn classify_cmd(expr: &str, ctx: &Ctx) -> Outcome {
    let a = parse(expr, ctx)?;
    let label = classify(&a, &ctx.tol);
    let q = a.invariants();
    let shown = match label {
        SectorLabel::Zero => "zero".to_string(),
        other => other.to_string(),
    };
    let mut text = format!("{shown}\nI = {}\nN = {}\nV = {}\n", fmt(q.i), fmt(q.n), fmt(q.v));
    let form = polar(&a, &ctx.tol).ok();
    if let Some(p) = &form {
        text.push_str(&polar_text(p));
    }
    let result = json!({
        "sector": label.name(),
        "label": shown,
        "I": num(q.i),
        "N": num(q.n),
        "V": num(q.v),
        "polar": form.as_ref().map(polar_json),
    });
    let mut out = Output::new(text, result);
    if ctx.verify {
        if let Some(p) = &form {
            let (ok, dev) = agrees(&reconstruct(p), &a, &ctx.tol);
            out.check("polar form reconstructs the input", ok, dev);
        }
    }
    Ok(out)
}

pub fn exp_cmd(expr: &str, ctx: &Ctx) -> Outcome {
    let a = parse(expr, ctx)?;
    let e = cl2::exp(&a)?;
    let mut out = Output::new(format!("{}\n", show(&e)), mv_json(&e));
    if ctx.verify {
        let (ok, dev) = agrees(&e, &exp_scaled_series(&a), &ctx.tol);
        out.check("power series", ok, dev);
    }
    Ok(out)
}

pub fn pow_cmd(n: i64, expr: &str, ctx: &Ctx) -> Outcome {
    let a = parse(expr, ctx)?;
    let p = pow_int(&a, n, &ctx.tol)?;
    let mut out = Output::new(format!("{}\n", show(&p)), mv_json(&p));
    if ctx.verify {
        let base = if n < 0 { a.inverse(&ctx.tol)? } else { a };
        let naive = pow_naive(&base, n.unsigned_abs());
        let (ok, _) = agrees(&p, &naive, &ctx.tol);
        out.check("repeated multiplication", ok, p.max_abs_diff(&naive));
    }
    Ok(out)
}

/// Members of one family part: at the user's epsilon when it fits this
/// family, otherwise at the standard samples.
fn family_members(part: &RootSet, user: Option<&Multivector>, ctx: &Ctx) -> Vec<(Multivector, Vec<Multivector>)> {
    let Some(class) = part.family_class() else {
        return Vec::new();
    };
    let epsilons = match user {
        Some(e) => vec![*e],
        None => standard_epsilons(class),
    };
    epsilons
        .into_iter()
        .filter_map(|e| part.instantiate(&e, &ctx.tol).ok().map(|m| (e, m)))
        .collect()
}

fn family_header(part: &RootSet) -> String {
    match part {
        RootSet::CircularFamily { scale, angles } => {
            let phis: Vec<String> = angles.iter().map(|p| fmt(*p)).collect();
            format!(
                "circular family: r*(cos(phi) + eps*sin(phi)), eps in E-1\n  r = {}\n  phi in {{{}}}\n",
                fmt(*scale),
                phis.join(", ")
            )
        }
        RootSet::HyperbolicUnitFamily { scale } => {
            format!("hyperbolic unit family: r*eps, eps in E1\n  r = {}\n", fmt(*scale))
        }
        RootSet::NullCone => "null cone: every eps in E0 (V = 0), and 0\n".to_string(),
        _ => String::new(),
    }
}

pub struct RootsArgs<'a> {
    pub n: i64,
    pub expr: &'a str,
    pub mode: RootMode,
    pub eps: Option<&'a str>,
    pub strict_empty: bool,
}

pub fn roots_cmd(args: &RootsArgs<'_>, ctx: &Ctx) -> Outcome {
    let a = parse(args.expr, ctx)?;
    let user_eps = args.eps.map(|e| parse(e, ctx)).transpose()?;
    let sol = nth_roots(&a, args.n, args.mode, &ctx.tol)?;

    if sol.is_empty() && args.strict_empty {
        let why = sol.note.map(|n| format!(": {n}")).unwrap_or_default();
        return Err(Failure::domain(format!("no roots{why}")));
    }

    let families: Vec<&RootSet> = sol.parts.iter().filter(|p| p.family_class().is_some()).collect();
    if let Some(e) = &user_eps {
        if !families.is_empty() && !families.iter().any(|p| !family_members(p, Some(e), ctx).is_empty()) {
            let expected = families[0].family_class().unwrap_or(cl2::EpsilonClass::None);
            return Err(Error::EpsilonMismatch {
                expected,
                found: cl2::epsilon_class(e, &ctx.tol),
            }
            .into());
        }
    }

    let mut text = String::new();
    let mut samples = Vec::new();
    let mut checked: Vec<Multivector> = Vec::new();
    for (index, part) in sol.parts.iter().enumerate() {
        match part {
            RootSet::Empty => text.push_str("empty: no roots\n"),
            RootSet::Finite(roots) => {
                let _ = writeln!(text, "{} root{}:", roots.len(), if roots.len() == 1 { "" } else { "s" });
                for r in roots {
                    let _ = writeln!(text, "{}", show(r));
                }
                checked.extend(roots.iter().copied());
            }
            family => {
                text.push_str(&family_header(family));
                for (eps, members) in family_members(family, user_eps.as_ref(), ctx) {
                    let _ = writeln!(text, "  at eps = {}:", show(&eps));
                    for m in &members {
                        let _ = writeln!(text, "{}", show(m));
                    }
                    samples.push(json!({
                        "part": index,
                        "eps": mv_json(&eps),
                        "roots": members.iter().map(mv_json).collect::<Vec<_>>(),
                    }));
                    checked.extend(members);
                }
            }
        }
    }
    if let Some(note) = sol.note {
        let _ = writeln!(text, "note: {note}");
    }

    let mut result = serde_json::to_value(&sol).map_err(|e| Failure::domain(e.to_string()))?;
    if let Value::Object(map) = &mut result {
        if !samples.is_empty() {
            map.insert("samples".into(), Value::Array(samples));
        }
    }
    let mut out = Output::new(text, result);
    if ctx.verify && args.n > 0 {
        let n = args.n.unsigned_abs();
        let ok = checked.iter().all(|w| verify_root(&a, n, w, &ctx.tol));
        let worst = checked.iter().map(|w| root_residual(&a, n, w)).fold(0.0, f64::max);
        out.check(
            &format!("{} listed roots re-power to the input", checked.len()),
            ok,
            worst,
        );
    }
    Ok(out)
}

pub fn verify_cmd(n: u64, a: &str, w: &str, ctx: &Ctx) -> Outcome {
    let a = parse(a, ctx)?;
    let w = parse(w, ctx)?;
    let holds = verify_root(&a, n, &w, &ctx.tol);
    let residual = root_residual(&a, n, &w);
    let bound = ctx.tol.tau_verify() * a.norm().max(1.0);
    let text = format!("{holds}\nresidual = {}\nbound = {}\n", fmt(residual), fmt(bound));
    let mut out = Output::new(text, Value::Bool(holds));
    out.extra.insert("residual".into(), num(residual));
    out.extra.insert("bound".into(), num(bound));
    Ok(out)
}
