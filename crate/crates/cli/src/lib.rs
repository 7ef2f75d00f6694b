//! The `salemrel` command line: argument parsing, dispatch, text and JSON rendering.
//!
//! [`run`] does everything except touching the process, so tests drive it directly.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use salemrel_core::cyclo::{
    bs_candidates, cyclotomic, cyclotomic_part, gn_progressions, seq_poly, SalemSeq,
};
use salemrel_core::factor::{factor, is_irreducible, kronecker_factor_oracle};
use salemrel_core::poly::{lemma4_lift, quadratic_pullback, trace_lift, trace_project};
use salemrel_core::relations::{find_relations, pair_reduce, Evidence, RelationReport, Status};
use salemrel_core::salem::{
    enum_deg6_trace0, family_degree_shift, lemma4_enum, salem_check, trace, trace0_salem,
    Trace0Source,
};
use salemrel_core::{parse_poly, Bound, IntPoly, SalemCertificate};
use salemrel_core::realroots::{count_roots, decimal_string};

mod verify;

#[derive(Debug, Parser)]
#[command(
    name = "salemrel",
    version,
    about = "Exact tools for Salem numbers and linear relations among their conjugates"
)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check results against independent oracles; exit 2 on disagreement.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PolyArg {
    /// Polynomial such as "x^4-2x^3+x-1" or "[c0,c1,...]"; "-" reads stdin.
    #[arg(allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a polynomial is the minimal polynomial of a Salem number.
    SalemCheck(PolyArg),
    /// g with f(x) = x^s g(x + 1/x) for reciprocal f of degree 2s.
    TracePoly(PolyArg),
    /// x^s g(x + 1/x) for g of degree s.
    TraceLift(PolyArg),
    /// (-1)^k x^(2k) h((x+1/x)(1-x-1/x)) for h of degree k.
    Lemma4Lift(PolyArg),
    /// Factor over the integers.
    Factor(PolyArg),
    /// Cyclotomic factors with multiplicity.
    CyclotomicFactors(PolyArg),
    /// Member n of one of the three Salem sequences.
    Seq {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        family: u8,
        #[arg(long)]
        n: u64,
    },
    /// Indices and degrees where a family member has a cyclotomic factor.
    BadDegrees {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        family: u8,
        #[arg(long)]
        max_degree: u64,
    },
    /// A Salem number of the given even degree >= 6 with trace 0.
    Trace0 {
        #[arg(long)]
        degree: usize,
    },
    /// Enumerations of Salem numbers.
    Enum(EnumArgs),
    /// Search and certify linear relations among the conjugates.
    Relations {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 12)]
        max_length: u32,
        #[arg(long, default_value_t = 128)]
        precision: u32,
    },
    /// Parse and print a polynomial canonically.
    Parse(PolyArg),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct EnumArgs {
    /// Degree 6, trace 0.
    #[arg(long)]
    deg6_trace0: bool,
    /// Salem numbers from degree-K polynomials with k-1 roots in (-2,1/4) and one in (-6,-2).
    #[arg(long, value_name = "K")]
    lemma4: Option<usize>,
}

/// Exit code, standard output, standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn input_error(msg: impl Into<String>) -> Self {
        Output {
            code: 1,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// What a subcommand produced, before rendering.
#[derive(Default)]
struct Outcome {
    input: Value,
    result: Value,
    certificates: Vec<SalemCertificate>,
    reports: Vec<RelationReport>,
    text: String,
    /// `None` when nothing was checked.
    checks: Option<Vec<(String, bool)>>,
}

#[derive(Serialize)]
struct Document<'a> {
    command: &'a str,
    input: &'a Value,
    result: &'a Value,
    certificates: &'a [SalemCertificate],
    reports: &'a [RelationReport],
    verified: Option<bool>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 1 } else { 0 };
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output::input_error(text)
            };
        }
    };
    let threads = std::env::var("SALEMREL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0);
    let mut piped = None;
    if poly_arg(&cli.command) == Some("-") {
        let mut s = String::new();
        if let Err(e) = stdin.read_to_string(&mut s) {
            return Output::input_error(format!("error: reading stdin: {e}\n"));
        }
        piped = Some(s);
    }
    let piped = piped.as_deref();
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(|| execute(&cli, piped)),
        None => execute(&cli, piped),
    }
}

fn poly_arg(c: &Command) -> Option<&str> {
    match c {
        Command::SalemCheck(a)
        | Command::TracePoly(a)
        | Command::TraceLift(a)
        | Command::Lemma4Lift(a)
        | Command::Factor(a)
        | Command::CyclotomicFactors(a)
        | Command::Parse(a) => Some(&a.poly),
        Command::Relations { poly, .. } => Some(poly),
        _ => None,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::SalemCheck(_) => "salem-check",
        Command::TracePoly(_) => "trace-poly",
        Command::TraceLift(_) => "trace-lift",
        Command::Lemma4Lift(_) => "lemma4-lift",
        Command::Factor(_) => "factor",
        Command::CyclotomicFactors(_) => "cyclotomic-factors",
        Command::Seq { .. } => "seq",
        Command::BadDegrees { .. } => "bad-degrees",
        Command::Trace0 { .. } => "trace0",
        Command::Enum(_) => "enum",
        Command::Relations { .. } => "relations",
        Command::Parse(_) => "parse",
    }
}

fn execute(cli: &Cli, stdin: Option<&str>) -> Output {
    let name = command_name(&cli.command);
    let outcome = match dispatch(&cli.command, cli.verify, stdin) {
        Ok(o) => o,
        Err(msg) => return Output::input_error(format!("error: {msg}\n")),
    };
    let verified = outcome
        .checks
        .as_ref()
        .map(|c| c.iter().all(|(_, ok)| *ok));
    let mut stdout = if cli.json {
        let doc = Document {
            command: name,
            input: &outcome.input,
            result: &outcome.result,
            certificates: &outcome.certificates,
            reports: &outcome.reports,
            verified,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    } else {
        outcome.text.clone()
    };
    let mut stderr = String::new();
    if let Some(checks) = &outcome.checks {
        if !cli.json {
            stdout.push_str(&format!(
                "verified: {}\n",
                if verified == Some(true) { "yes" } else { "NO" }
            ));
        }
        for (what, ok) in checks {
            if !ok {
                stderr.push_str(&format!("cross-check failed: {what}\n"));
            }
        }
    }
    Output {
        code: if verified == Some(false) { 2 } else { 0 },
        stdout,
        stderr,
    }
}

fn read_poly(arg: &str, stdin: Option<&str>) -> Result<IntPoly, String> {
    let text = match (arg, stdin) {
        ("-", Some(s)) => s,
        _ => arg,
    };
    parse_poly(text.trim()).map_err(|e| e.to_string())
}

fn poly_json(p: &IntPoly) -> Value {
    json!({ "coeffs": p, "text": p.to_string() })
}

fn checks(verify: bool, f: impl FnOnce() -> Vec<(String, bool)>) -> Option<Vec<(String, bool)>> {
    verify.then(f)
}

fn dispatch(cmd: &Command, verify: bool, stdin: Option<&str>) -> Result<Outcome, String> {
    match cmd {
        Command::SalemCheck(a) => {
            let f = read_poly(&a.poly, stdin)?;
            cmd_salem_check(f, verify)
        }
        Command::TracePoly(a) => {
            let f = read_poly(&a.poly, stdin)?;
            let g = trace_project(&f).map_err(|e| e.to_string())?;
            Ok(Outcome {
                input: json!(f.to_string()),
                result: poly_json(&g),
                text: format!("{g}\n"),
                checks: checks(verify, || {
                    vec![(
                        "trace_lift(result) = input".into(),
                        trace_lift(&g).ok().as_ref() == Some(&f),
                    )]
                }),
                ..Outcome::default()
            })
        }
        Command::TraceLift(a) => {
            let g = read_poly(&a.poly, stdin)?;
            let f = trace_lift(&g).map_err(|e| e.to_string())?;
            Ok(Outcome {
                input: json!(g.to_string()),
                result: poly_json(&f),
                text: format!("{f}\n"),
                checks: checks(verify, || {
                    vec![
                        (
                            "trace_project(result) = input".into(),
                            trace_project(&f).ok().as_ref() == Some(&g),
                        ),
                        ("result is reciprocal".into(), f.is_reciprocal()),
                    ]
                }),
                ..Outcome::default()
            })
        }
        Command::Lemma4Lift(a) => {
            let h = read_poly(&a.poly, stdin)?;
            let f = lemma4_lift(&h).map_err(|e| e.to_string())?;
            Ok(Outcome {
                input: json!(h.to_string()),
                result: poly_json(&f),
                text: format!("{f}\n"),
                checks: checks(verify, || verify::lemma4_lift_checks(&h, &f)),
                ..Outcome::default()
            })
        }
        Command::Factor(a) => {
            let p = read_poly(&a.poly, stdin)?;
            cmd_factor(p, verify)
        }
        Command::CyclotomicFactors(a) => {
            let p = read_poly(&a.poly, stdin)?;
            if p.is_zero() {
                return Err("the zero polynomial has every cyclotomic factor".into());
            }
            let hits = cyclotomic_part(&p);
            let mut text = String::new();
            for h in &hits {
                text.push_str(&format!("Phi_{}^{}  = ({})\n", h.order, h.multiplicity, cyclotomic(h.order)));
            }
            if hits.is_empty() {
                text.push_str("no cyclotomic factors\n");
            }
            let hits_c = hits.clone();
            Ok(Outcome {
                input: json!(p.to_string()),
                result: json!(hits),
                text,
                checks: checks(verify, || verify::cyclotomic_checks(&p, &hits_c)),
                ..Outcome::default()
            })
        }
        Command::Seq { family, n } => {
            let seq = SalemSeq::family(*family).expect("validated family");
            let p = seq_poly(&seq, *n).map_err(|e| e.to_string())?;
            let raw = seq.raw(*n);
            let mut result = poly_json(&p);
            result["degree"] = json!(p.deg());
            result["raw"] = poly_json(&raw);
            Ok(Outcome {
                input: json!({ "family": family, "n": n }),
                result,
                text: format!("{p}\n"),
                checks: checks(verify, || {
                    let rebuilt = if seq.divide_by_x_minus_1 {
                        &p * &IntPoly::from_coeffs(&[-1, 1])
                    } else {
                        p.clone()
                    };
                    vec![
                        ("member times divisor = raw".into(), rebuilt == raw),
                        ("member is reciprocal".into(), p.is_reciprocal()),
                    ]
                }),
                ..Outcome::default()
            })
        }
        Command::BadDegrees { family, max_degree } => cmd_bad_degrees(*family, *max_degree, verify),
        Command::Trace0 { degree } => {
            let c = trace0_salem(*degree).map_err(|e| e.to_string())?;
            let source = match c.source {
                Trace0Source::Sextic => "sextic enumeration".to_string(),
                Trace0Source::Family(k) => format!("family {k}"),
            };
            let mut text = format!("degree {degree}: {source}");
            if let Some(n) = c.n {
                text.push_str(&format!(", n = {n}"));
            }
            text.push('\n');
            for a in &c.attempts {
                if let Some(r) = a.outcome {
                    text.push_str(&format!("  family {} (n = {}) rejected: {r}\n", a.family, a.n));
                }
            }
            text.push_str(&cert_text(&c.certificate));
            let cert = c.certificate.clone();
            let d = *degree;
            Ok(Outcome {
                input: json!({ "degree": degree }),
                result: json!({
                    "degree": c.certificate.degree,
                    "trace": c.certificate.trace.to_string(),
                    "source": c.source,
                    "n": c.n,
                    "attempts": c.attempts,
                }),
                certificates: vec![c.certificate],
                text,
                checks: checks(verify, || {
                    let mut v = verify::certificate_checks(&cert);
                    v.push(("trace is 0".into(), trace(&cert.minpoly) == 0.into()));
                    v.push(("degree as requested".into(), cert.degree == d));
                    v
                }),
                ..Outcome::default()
            })
        }
        Command::Enum(e) => match (e.deg6_trace0, e.lemma4) {
            (true, _) => cmd_enum_deg6(verify),
            (false, Some(k)) => cmd_enum_lemma4(k, verify),
            _ => Err("choose --deg6-trace0 or --lemma4 K".into()),
        },
        Command::Relations {
            poly,
            max_length,
            precision,
        } => {
            let f = read_poly(poly, stdin)?;
            cmd_relations(f, *max_length, *precision, verify)
        }
        Command::Parse(a) => {
            let p = read_poly(&a.poly, stdin)?;
            let printed = p.to_string();
            Ok(Outcome {
                input: json!(a.poly),
                result: poly_json(&p),
                text: format!("{printed}\n"),
                checks: checks(verify, || {
                    vec![(
                        "parse(print(p)) = p".into(),
                        parse_poly(&printed).ok().as_ref() == Some(&p),
                    )]
                }),
                ..Outcome::default()
            })
        }
    }
}

fn cert_text(c: &SalemCertificate) -> String {
    let mut s = format!(
        "minimal polynomial: {}\ndegree: {}\ntrace: {}\nalpha ~ {} in ({}, {})\ntrace polynomial: {}\n",
        c.minpoly,
        c.degree,
        c.trace,
        c.alpha.approx(12),
        decimal_string(&c.alpha.lo, 15),
        decimal_string(&c.alpha.hi, 15),
        c.trace_poly
    );
    for (j, b) in c.beta_boxes.iter().enumerate() {
        s.push_str(&format!("  beta_{} ~ {}\n", j + 1, b.approx(12)));
    }
    s
}

fn cmd_salem_check(f: IntPoly, verify: bool) -> Result<Outcome, String> {
    match salem_check(&f) {
        Ok(cert) => {
            let text = format!("Salem number: yes\n{}", cert_text(&cert));
            let c2 = cert.clone();
            Ok(Outcome {
                input: json!(f.to_string()),
                result: json!({ "salem": true, "rejection": null }),
                certificates: vec![cert],
                text,
                checks: checks(verify, || verify::certificate_checks(&c2)),
                ..Outcome::default()
            })
        }
        Err(r) => Ok(Outcome {
            input: json!(f.to_string()),
            result: json!({ "salem": false, "rejection": r, "reason": r.to_string() }),
            text: format!("Salem number: no ({r})\n"),
            checks: checks(verify, || verify::rejection_checks(&f, r)),
            ..Outcome::default()
        }),
    }
}

fn cmd_factor(p: IntPoly, verify: bool) -> Result<Outcome, String> {
    let fz = factor(&p).map_err(|e| e.to_string())?;
    let mut text = format!("content: {}\n", fz.content);
    for (g, m) in &fz.factors {
        text.push_str(&format!("({g})^{m}\n"));
    }
    let factors: Vec<Value> = fz
        .factors
        .iter()
        .map(|(g, m)| json!({ "coeffs": g, "text": g.to_string(), "multiplicity": m }))
        .collect();
    let fz2 = fz.clone();
    Ok(Outcome {
        input: json!(p.to_string()),
        result: json!({ "content": fz.content.to_string(), "factors": factors }),
        text,
        checks: checks(verify, || {
            let mut v = vec![("product of factors = input".into(), fz2.expand() == p)];
            for (g, _) in &fz2.factors {
                if g.deg() <= 8 {
                    let ok = kronecker_factor_oracle(g)
                        .map(|k| k.is_irreducible())
                        .unwrap_or(false);
                    v.push((format!("{g} irreducible (Kronecker)"), ok));
                }
            }
            v
        }),
        ..Outcome::default()
    })
}

fn cmd_bad_degrees(family: u8, max_degree: u64, verify: bool) -> Result<Outcome, String> {
    let seq = SalemSeq::family(family).expect("validated family");
    let shift = family_degree_shift(family);
    let cands = bs_candidates(&seq);
    let prog = gn_progressions(&seq).map_err(|e| e.to_string())?;
    let first = 2 + shift;
    let bad: Vec<u64> = (first..=max_degree).filter(|&d| prog.is_bad(d - shift)).collect();
    let d_prog = prog.shifted(shift);
    let sporadic_d: Vec<u64> = prog
        .entries
        .iter()
        .flat_map(|e| e.sporadic.iter().map(|n| n + shift))
        .collect();
    let mut text = format!(
        "family {family}: x^n f(x) {} f*(x){}, degree n + {shift}\ncandidate orders: {:?}\n",
        if seq.eps > 0 { "+" } else { "-" },
        if seq.divide_by_x_minus_1 { ", divided by x - 1" } else { "" },
        cands.orders
    );
    text.push_str("n-progressions:");
    for e in &prog.entries {
        for r in &e.residues {
            text.push_str(&format!(" {}k+{}", e.order, r));
        }
        for n in &e.sporadic {
            text.push_str(&format!(" n={n} (Phi_{})", e.order));
        }
    }
    text.push_str("\nd-progressions:");
    for (m, r) in &d_prog {
        text.push_str(&format!(" {m}k+{r}"));
    }
    for d in &sporadic_d {
        text.push_str(&format!(" d={d}"));
    }
    text.push_str(&format!("\nbad degrees up to {max_degree}: {bad:?}\n"));
    let entries: Vec<Value> = prog
        .entries
        .iter()
        .map(|e| {
            json!({
                "order": e.order,
                "residues": e.residues,
                "sporadic": e.sporadic,
                "flagged": e.f_zero_at_root,
            })
        })
        .collect();
    let prog2 = prog.clone();
    Ok(Outcome {
        input: json!({ "family": family, "max_degree": max_degree }),
        result: json!({
            "family": family,
            "degree_shift": shift,
            "candidate_orders": cands.orders,
            "n_progressions": entries,
            "d_progressions": d_prog.iter().map(|(m, r)| json!({ "modulus": m, "residue": r })).collect::<Vec<_>>(),
            "sporadic_degrees": sporadic_d,
            "bad_degrees": bad,
        }),
        text,
        checks: checks(verify, || {
            verify::progression_checks(&seq, &prog2, &cands.orders, max_degree.saturating_sub(shift))
        }),
        ..Outcome::default()
    })
}

fn cmd_enum_deg6(verify: bool) -> Result<Outcome, String> {
    let e = enum_deg6_trace0();
    let mut text = String::from("pairs (a, b) with x^3 - a x + b in the window:");
    for (a, b) in &e.pairs {
        text.push_str(&format!(" ({a},{b})"));
    }
    text.push_str("\nreducible, discarded:");
    for d in &e.discarded {
        text.push_str(&format!(" {d};"));
    }
    text.push_str(&format!("\n{} Salem numbers of degree 6 and trace 0:\n", e.certificates.len()));
    for c in &e.certificates {
        text.push_str(&format!("  {}  alpha ~ {}\n", c.minpoly, c.alpha.approx(12)));
    }
    let certs = e.certificates.clone();
    Ok(Outcome {
        input: json!({ "deg6_trace0": true }),
        result: json!({
            "pairs": e.pairs,
            "discarded": e.discarded.iter().map(poly_json).collect::<Vec<_>>(),
            "count": e.certificates.len(),
        }),
        certificates: e.certificates,
        text,
        checks: checks(verify, || {
            let mut v = Vec::new();
            for c in &certs {
                v.extend(verify::certificate_checks(c));
                v.push((format!("{} has trace 0", c.minpoly), c.trace == 0.into()));
            }
            for (a, b) in &e.pairs {
                let cubic = IntPoly::from_coeffs(&[*b, -*a, 0, 1]);
                let ok = count_roots(&cubic, &Bound::int(-2), &Bound::int(2)) == Ok(2)
                    && count_roots(&cubic, &Bound::int(2), &Bound::PosInf) == Ok(1);
                v.push((format!("window for ({a},{b}) by Sturm count"), ok));
            }
            for d in &e.discarded {
                let ok = kronecker_factor_oracle(d)
                    .map(|k| !k.is_irreducible())
                    .unwrap_or(false);
                v.push((format!("{d} reducible (Kronecker)"), ok));
            }
            v
        }),
        ..Outcome::default()
    })
}

fn cmd_enum_lemma4(k: usize, verify: bool) -> Result<Outcome, String> {
    let e = lemma4_enum(k).map_err(|e| e.to_string())?;
    let mut text = format!(
        "k = {k}: {} polynomials h satisfy the root conditions, {} give Salem numbers\n",
        e.satisfying.len(),
        e.salem.len()
    );
    for s in &e.salem {
        text.push_str(&format!(
            "  h = {}  ->  {}  alpha ~ {}\n",
            s.h,
            s.certificate.minpoly,
            s.certificate.alpha.approx(12)
        ));
    }
    let salem_info: Vec<Value> = e
        .salem
        .iter()
        .map(|s| json!({ "h": poly_json(&s.h), "pair_sums_verified": s.pair_sums_verified }))
        .collect();
    let certs: Vec<SalemCertificate> = e.salem.iter().map(|s| s.certificate.clone()).collect();
    let e2 = e.clone();
    Ok(Outcome {
        input: json!({ "lemma4": k }),
        result: json!({
            "k": k,
            "satisfying_count": e.satisfying.len(),
            "satisfying": e.satisfying.iter().map(poly_json).collect::<Vec<_>>(),
            "salem_count": e.salem.len(),
            "salem": salem_info,
        }),
        certificates: certs,
        text,
        checks: checks(verify, || {
            let mut v = Vec::new();
            for s in &e2.salem {
                v.extend(verify::certificate_checks(&s.certificate));
                v.push((
                    format!("trace polynomial = (-1)^k h(x(1-x)) for h = {}", s.h),
                    s.certificate.trace_poly == quadratic_pullback(&s.h),
                ));
            }
            for h in &e2.satisfying {
                let salem = e2.salem.iter().any(|s| &s.h == h);
                let lift = lemma4_lift(h).expect("degree k");
                v.push((
                    format!("lift of {h} irreducible iff listed as Salem"),
                    is_irreducible(&lift) == salem,
                ));
            }
            v
        }),
        ..Outcome::default()
    })
}

fn cmd_relations(f: IntPoly, max_length: u32, precision: u32, verify: bool) -> Result<Outcome, String> {
    let cert = salem_check(&f).map_err(|r| format!("not a Salem minimal polynomial: {r}"))?;
    let reports = find_relations(&cert, max_length, precision).map_err(|e| e.to_string())?;
    let mut text = format!(
        "{} (degree {}, trace {})\nrelations of length <= {max_length} at {precision} bits:\n",
        cert.minpoly, cert.degree, cert.trace
    );
    if reports.is_empty() {
        text.push_str("  none\n");
    }
    for r in &reports {
        text.push_str(&format!(
            "  {:?}  length {}  reduced {:?}  {}{}\n",
            r.vector.coeffs,
            r.vector.length,
            r.reduced,
            r.status.as_str(),
            if r.nontrivial { "" } else { " (trivial)" }
        ));
        match &r.evidence {
            Some(Evidence::Pairsum { h, pairs }) => {
                text.push_str(&format!("    h = {h}, beta pairs summing to 1: {pairs:?}\n"));
            }
            Some(Evidence::Quadsplit { p, q, m, groups }) => {
                text.push_str(&format!(
                    "    trace polynomial = ({p})^2 - {m} ({q})^2, groups {groups:?}\n"
                ));
            }
            None if r.status == Status::NumericOnly => {
                text.push_str("    numeric evidence only, not a proof\n");
            }
            None => {}
        }
    }
    let nontrivial = reports.iter().filter(|r| r.nontrivial).count();
    let (c2, r2) = (cert.clone(), reports.clone());
    Ok(Outcome {
        input: json!({ "poly": f.to_string(), "max_length": max_length, "precision": precision }),
        result: json!({ "count": reports.len(), "nontrivial_count": nontrivial }),
        certificates: vec![cert],
        reports,
        text,
        checks: checks(verify, || {
            let mut v = verify::certificate_checks(&c2);
            for r in &r2 {
                v.push((
                    format!("{:?} pairs reduce", r.vector.coeffs),
                    pair_reduce(&r.vector.coeffs).ok().as_ref() == Some(&r.reduced),
                ));
                v.extend(verify::report_checks(&c2, r));
            }
            v
        }),
    })
}
