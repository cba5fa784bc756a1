//! Subcommand implementations. Each returns an [`Outcome`] carrying both the
//! plain and the JSON rendering.

use std::fmt::Write;
use std::io::Read;
use std::path::Path;

use kpotent::colfinite::{decompose14, FamilySpec};
use kpotent::decompose::{
    decompose_finite_order, decompose_linear_combination, decompose_theorem1, decompose_theorem4, Decomposition,
};
use kpotent::io::{DecompositionJson, MatrixJson, TruncationJson};
use kpotent::scalars::{ComplexField, Cyclotomic, Field};
use kpotent::trace::{extract_certificate_from_potent, find_certificate, MultiRootCertificate, SignedCertificate, TraceCertificate};
use kpotent::{Error, Matrix, Result};
use serde_json::{json, Value};

use crate::render::{banner, fields, grid, mark};
use crate::{Backend, Cli, Command, DecomposeMode};

pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(ok: bool, text: String, json: Value) -> Self {
        Outcome { code: if ok { 0 } else { 1 }, text, json }
    }
}

/// 1 for a well-posed question answered negatively, 2 for bad input.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_)
        | Error::NonIntegral(_)
        | Error::Unreachable(_)
        | Error::InvalidCertificate(_)
        | Error::NotPotent { .. }
        | Error::NotOfOrder { .. } => 1,
        _ => 2,
    }
}

fn reason(e: &Error) -> &'static str {
    match e {
        Error::Infeasible(_) => "infeasible",
        Error::NonIntegral(_) => "non-integral",
        Error::Unreachable(_) => "unreachable",
        Error::InvalidCertificate(_) => "invalid-certificate",
        Error::Parse(_) => "parse",
        Error::Unsupported(_) => "unsupported",
        Error::FieldMismatch(_) => "field-mismatch",
        Error::NotSquare { .. } | Error::DimensionMismatch(_) | Error::Shape(_) => "shape",
        _ => "input",
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(mut o) => {
            if let Value::Object(map) = &mut o.json {
                map.insert("seed".into(), json!(cli.seed));
            }
            o
        }
        Err(e) => {
            let code = exit_code(&e);
            let text = format!("error ({}): {e}\n", reason(&e));
            let json = json!({"ok": false, "seed": cli.seed, "error": {"reason": reason(&e), "message": e.to_string()}});
            Outcome { code, text, json }
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Inline JSON or a file holding it.
fn inline_or_file(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read_input(Path::new(arg))
    }
}

fn backend_of(cli: &Cli, file_backend: &str) -> Backend {
    cli.backend.unwrap_or(if file_backend == "float" { Backend::Float } else { Backend::Exact })
}

/// Runs `$body` with `$f` bound to the chosen backend.
macro_rules! with_field {
    ($backend:expr, $k:expr, $eps:expr, |$f:ident| $body:expr) => {
        match $backend {
            Backend::Exact => {
                let $f = Cyclotomic::new($k)?;
                $body
            }
            Backend::Float => {
                let $f = ComplexField::new($k, $eps)?;
                $body
            }
        }
    };
}

fn decorate(mut o: Outcome, backend: Backend, eps: f64) -> Outcome {
    let approximate = backend == Backend::Float;
    if approximate {
        o.text = format!("{}{}", banner(eps), o.text);
    }
    if let Value::Object(map) = &mut o.json {
        map.insert("backend".into(), json!(if approximate { "float" } else { "exact" }));
        if approximate {
            map.insert("approximate".into(), json!(true));
            map.insert("banner".into(), json!(format!("approximate verification (ε={eps:e})")));
        }
    }
    o
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::CheckPotent { k, input } => {
            let mj = MatrixJson::parse(&read_input(input)?)?;
            let b = backend_of(cli, &mj.backend);
            let o = with_field!(b, mj.k, cli.eps, |f| check_potent(&mj.to_matrix(&f)?, *k)?);
            Ok(decorate(o, b, cli.eps))
        }
        Command::Order { bound, input } => {
            let mj = MatrixJson::parse(&read_input(input)?)?;
            let b = backend_of(cli, &mj.backend);
            let o = with_field!(b, mj.k, cli.eps, |f| order(&mj.to_matrix(&f)?, *bound)?);
            Ok(decorate(o, b, cli.eps))
        }
        Command::Analyze { k, budget, input } => {
            let mj = MatrixJson::parse(&read_input(input)?)?;
            let b = backend_of(cli, &mj.backend);
            let k = k.unwrap_or(mj.k);
            let o = with_field!(b, mj.k, cli.eps, |f| analyze(&mj.to_matrix(&f)?, k, *budget)?);
            Ok(decorate(o, b, cli.eps))
        }
        Command::Decompose { k, mode, cert, multiroot, input } => {
            let mj = MatrixJson::parse(&read_input(input)?)?;
            let b = backend_of(cli, &mj.backend);
            let k = k.unwrap_or(mj.k);
            let multi = match multiroot {
                Some(p) => Some(MultiRootCertificate::from_json(&read_input(p)?)?),
                None => None,
            };
            let o = with_field!(b, mj.k, cli.eps, |f| {
                let a = mj.to_matrix(&f)?;
                let d = decompose(&a, k, *mode, cert.as_deref(), multi.as_ref())?;
                report_decomposition(&d)
            });
            Ok(decorate(o, b, cli.eps))
        }
        Command::Decompose14 { k, truncate, input } => {
            let mut spec = FamilySpec::parse(&read_input(input)?)?;
            if let Some(k) = k {
                spec.k = *k;
            }
            let b = cli.backend.unwrap_or(Backend::Exact);
            let o = with_field!(b, spec.k, cli.eps, |f| columns(&spec, &f, *truncate)?);
            Ok(decorate(o, b, cli.eps))
        }
        Command::Verify { input } => {
            let dj = DecompositionJson::parse(&read_input(input)?)?;
            let b = backend_of(cli, &dj.target.backend);
            let o = with_field!(b, dj.target.k, cli.eps, |f| {
                let mut d = dj.to_decomposition(&f)?;
                d.verify();
                report_decomposition(&d)
            });
            Ok(decorate(o, b, cli.eps))
        }
    }
}

fn check_potent<F: Field>(a: &Matrix<F>, k: u32) -> Result<Outcome> {
    let e = k + 1;
    let potent = a.is_kpotent(e as u64)?;
    let text = format!("{e}-potent: {potent}\n");
    Ok(Outcome::new(potent, text, json!({"ok": potent, "k": k, "exponent": e, "potent": potent})))
}

fn order<F: Field>(a: &Matrix<F>, bound: u64) -> Result<Outcome> {
    let o = a.order_of(bound)?;
    let text = match o {
        Some(m) => format!("order: {m}\n"),
        None => format!("order: none up to {bound}\n"),
    };
    Ok(Outcome::new(o.is_some(), text, json!({"ok": o.is_some(), "bound": bound, "order": o})))
}

fn analyze<F: Field>(a: &Matrix<F>, k: u32, budget: u64) -> Result<Outcome> {
    let f = a.field();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let rank = a.rank();
    let trace = a.trace()?;
    let mut pairs = vec![("k", k.to_string()), ("rank", rank.to_string()), ("trace", f.format(&trace))];
    let mut out = json!({"k": k, "rank": rank, "trace": f.format(&trace)});
    if k >= 1 && f.root_order().is_multiple_of(k) && a.is_kpotent((k + 1) as u64)? {
        let m = extract_certificate_from_potent(a, k)?;
        pairs.push(("eigenvalues", m.to_string()));
        out["multiplicities"] = json!(m.coeffs());
    }
    if f.root_order() != k {
        return Err(Error::Unsupported(format!("certificate search needs k = {} (the file's root order)", f.root_order())));
    }
    let t = f
        .to_cyclo(&trace)
        .ok_or_else(|| Error::Unsupported(format!("{} backend has no exact trace", f.name())))?;
    let ok = match find_certificate(&t, rank, budget) {
        Ok(c) => {
            pairs.push(("certificate", c.to_string()));
            pairs.push(("F(1)", c.f1().to_string()));
            out["certificate"] = serde_json::from_str(&c.to_json()).expect("certificate JSON");
            true
        }
        Err(e) if exit_code(&e) == 1 => {
            pairs.push(("certificate", format!("none ({e})")));
            out["error"] = json!({"reason": reason(&e), "message": e.to_string()});
            false
        }
        Err(e) => return Err(e),
    };
    out["ok"] = json!(ok);
    Ok(Outcome::new(ok, fields(&pairs), out))
}

fn decompose<F: Field>(
    a: &Matrix<F>,
    k: u32,
    mode: DecomposeMode,
    cert: Option<&str>,
    multi: Option<&MultiRootCertificate>,
) -> Result<Decomposition<F>> {
    match mode {
        DecomposeMode::Sum => match (multi, cert) {
            (Some(m), _) => decompose_theorem4(a, m),
            (None, Some(c)) => decompose_theorem1(a, k, Some(&TraceCertificate::from_json(&inline_or_file(c)?)?)),
            (None, None) => decompose_theorem1(a, k, None),
        },
        DecomposeMode::Lincomb => {
            let text = cert.ok_or_else(|| Error::InvalidParameter("lincomb mode needs --cert".into()))?;
            decompose_linear_combination(a, &SignedCertificate::parse_single(k, text)?)
        }
        DecomposeMode::FiniteOrder => decompose_finite_order(a, k),
    }
}

fn report_decomposition<F: Field>(d: &Decomposition<F>) -> Outcome {
    let f = d.target.field();
    let j = DecompositionJson::from_decomposition(d);
    let check = j.verification.clone().expect("fresh check");
    let mut text = String::new();
    let mut pairs = vec![("mode", d.mode.to_string()), ("summands", d.len().to_string())];
    if let Some(c) = &d.certificate {
        pairs.push(("certificate", c.clone()));
    }
    if let Some(c) = d.claimed_count {
        pairs.push(("claimed count", c.to_string()));
    }
    pairs.push(("sum matches", check.sum_matches.to_string()));
    pairs.push(("verified", check.ok.to_string()));
    text.push_str(&fields(&pairs));
    for note in &d.notes {
        let _ = writeln!(text, "note: {note}");
    }
    for (i, (s, ok)) in d.summands.iter().zip(&check.summands).enumerate() {
        let coeff = s.coefficient.as_ref().map(|c| format!(" × {}", f.format(c))).unwrap_or_default();
        let _ = writeln!(text, "\n#{} {}{} [{}] {}", i + 1, s.kind, coeff, mark(*ok), s.provenance);
        text.push_str(&grid(&s.matrix.to_strings()));
    }
    let mut json = serde_json::to_value(&j).expect("decomposition JSON");
    json["ok"] = json!(check.ok);
    Outcome::new(check.ok, text, json)
}

fn columns<F: Field>(spec: &FamilySpec, f: &F, n: usize) -> Result<Outcome> {
    let a = spec.build(f)?;
    let d = decompose14(&a, spec.k)?;
    let report = d.verify_truncated(n);
    let j = TruncationJson::build(&d, &report);
    let mut text = fields(&[
        ("family", spec.to_json()),
        ("k", spec.k.to_string()),
        ("truncation", n.to_string()),
        ("summands", format!("{} (upper {}, lower {}, diagonal {})", d.len(), j.counts.upper, j.counts.lower, j.counts.diagonal)),
        ("reconstruction", mark(report.reconstruction).to_string()),
        ("verified", report.ok().to_string()),
    ]);
    for (i, s) in j.summands.iter().enumerate() {
        let _ = writeln!(
            text,
            "\n#{} {} ({}) N'={} potent {} support {}",
            i + 1,
            s.label,
            s.part,
            s.size,
            mark(s.potent),
            mark(s.support)
        );
        text.push_str(&grid(&s.matrix.entries));
    }
    let json = serde_json::to_value(&j).expect("truncation JSON");
    Ok(Outcome::new(report.ok(), text, json))
}
