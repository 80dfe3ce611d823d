//! Command-line front end: `construct`, `check`, `null-ideal`, `pi-sequence`,
//! `quat` and `verify-paper`, all reporting through one JSON envelope.

mod cases;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use intvalmat::construct::construct_f;
use intvalmat::dvr::{make_context, AnyDvr, Backend, Dvr, DvrContext};
use intvalmat::membership::{closure_membership, int_matrix_membership, mu_table, properly_integral};
use intvalmat::nullideal::{lcm_primary, minimal_monic_degree, verify_phi_theorem};
use intvalmat::poly::{parse_int_poly, KPoly, Poly, PolyRing};
use intvalmat::quat::{find_iso, quat_membership_failure, QuatOrder};
use intvalmat::Error;

pub use cases::{run_case, CaseId, CaseParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CONTRADICTION: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "intvalmat", about = "Integer-valued polynomials on matrix rings over a DVR")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for enumeration.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Ring {
    /// Residue characteristic (the zp backend unless --context says otherwise).
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// JSON file describing the DVR, e.g. {"backend":"fqt","p":2,"e":2,"field_modulus":[1,1,1]}.
    #[arg(long)]
    context: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build θ, h, H, F and Φ.
    Construct {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Membership of g/π^k in Int_K(M_n(V)) and its integral closure.
    Check {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Polynomial file: JSON {"coeffs"|"text", "den_exp"} or plain text.
        #[arg(long, conflicts_with = "expr")]
        poly: Option<PathBuf>,
        /// Inline integer polynomial text, e.g. "x(x^2+2)".
        #[arg(long)]
        expr: Option<String>,
        /// Denominator exponent for text input.
        #[arg(long)]
        den_exp: Option<u32>,
        #[arg(long, group = "mode")]
        closure: bool,
        #[arg(long = "ring", group = "mode")]
        ring_flag: bool,
        #[arg(long, group = "mode")]
        proper: bool,
    },
    /// Null ideals of M_n(V/π^k).
    NullIdeal {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, group = "what")]
        verify: bool,
        #[arg(long, group = "what")]
        min_degree: bool,
        /// Monic irreducible ι (text over the residue field, or JSON coefficients).
        #[arg(long, group = "what")]
        lcm: Option<String>,
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// The π-sequence μ_d from the closed formula and from null-ideal searches.
    PiSequence {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        dmax: usize,
    },
    /// Quaternion orders modulo p^k and the isomorphism with M_2(Z/p^k).
    Quat {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value = "lipschitz")]
        order: String,
        #[arg(long)]
        check_f: bool,
    },
    /// Run the built-in reproducibility cases.
    VerifyPaper {
        #[arg(long, conflicts_with = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
    },
}

/// Outcome of one command: exit code plus the report.
struct Outcome {
    code: i32,
    case: String,
    pass: bool,
    evidence: Value,
    text: String,
}

fn envelope(o: &Outcome) -> Value {
    json!({ "schema": 1, "case": o.case, "pass": o.pass, "evidence": o.evidence })
}

macro_rules! with_dvr {
    ($any:expr, $d:ident => $body:expr) => {
        match $any {
            AnyDvr::Zp($d) => $body,
            AnyDvr::Fqt($d) => $body,
        }
    };
}

fn load_ring(ring: &Ring) -> intvalmat::Result<AnyDvr> {
    match &ring.context {
        Some(path) => {
            let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            DvrContext::from_json_str(&s)?.instantiate()
        }
        None => make_context(Backend::Zp, ring.p, 1, None)?.instantiate(),
    }
}

/// Runs the command line and returns the exit code and standard output.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return (code, e.render().to_string());
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(o) => {
            let out = match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&envelope(&o)).expect("json")),
                Format::Text => o.text.clone(),
            };
            (o.code, out)
        }
        Err(e) => {
            let code = match e {
                Error::UnexpectedVanishing(_) => EXIT_CONTRADICTION,
                _ => EXIT_ERROR,
            };
            let v = json!({ "schema": 1, "error": e.to_string() });
            let out = match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&v).expect("json")),
                Format::Text => format!("error: {e}\n"),
            };
            (code, out)
        }
    }
}

fn dispatch(cli: Cli) -> intvalmat::Result<Outcome> {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Construct { ring, n } => {
            let any = load_ring(&ring)?;
            with_dvr!(any, d => construct(&d, n))
        }
        Command::Check { ring, n, poly, expr, den_exp, closure, ring_flag, proper: _ } => {
            let any = load_ring(&ring)?;
            let mode = if closure {
                Mode::Closure
            } else if ring_flag {
                Mode::Ring
            } else {
                Mode::Proper
            };
            let src = match (poly, expr) {
                (Some(path), _) => std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                (None, Some(e)) => e,
                (None, None) => return Err(Error::Parse("one of --poly or --expr is required".into())),
            };
            with_dvr!(any, d => check(&d, n, &src, den_exp, mode, threads))
        }
        Command::NullIdeal { ring, n, k, verify, min_degree: _, lcm, dmax } => {
            let any = load_ring(&ring)?;
            with_dvr!(any, d => null_ideal(&d, n, k, verify, lcm.as_deref(), dmax, threads))
        }
        Command::PiSequence { ring, n, dmax } => {
            let any = load_ring(&ring)?;
            with_dvr!(any, d => pi_sequence(&d, n, dmax, threads))
        }
        Command::Quat { p, k, order, check_f } => quat(p, k, order.parse()?, check_f),
        Command::VerifyPaper { case, all, p, n, k } => {
            let params = CaseParams { p, n, k, threads };
            let ids: Vec<CaseId> = if all {
                CaseId::ALL.to_vec()
            } else {
                let id = case.ok_or_else(|| Error::Parse("one of --case or --all is required".into()))?;
                vec![id.parse()?]
            };
            let mut reports = Vec::new();
            let mut text = String::new();
            let mut pass = true;
            for id in ids {
                let r = run_case(id, &params)?;
                text.push_str(&format!("{} {}: {}\n", if r.pass { "PASS" } else { "FAIL" }, id.name(), r.summary));
                pass &= r.pass;
                reports.push(json!({ "case": id.name(), "pass": r.pass, "evidence": r.evidence }));
            }
            let (case, evidence) = if reports.len() == 1 {
                let r = reports.pop().expect("one");
                (r["case"].as_str().expect("name").to_string(), r["evidence"].clone())
            } else {
                ("all".to_string(), Value::Array(reports))
            };
            Ok(Outcome {
                code: if pass { EXIT_OK } else { EXIT_CONTRADICTION },
                case,
                pass,
                evidence,
                text,
            })
        }
    }
}

fn construct<D: Dvr>(dvr: &D, n: usize) -> intvalmat::Result<Outcome> {
    let b = construct_f(dvr, n)?;
    let px = PolyRing::new(dvr.clone());
    let check = b.degree_check();
    let text = format!(
        "phi = {}\ntheta = {}\nh = {}\nH = {}\nF = ({}) / pi^{}\ndeg F = {}\n",
        px.render(&b.phi),
        px.render(&b.theta),
        px.render(&b.little_h),
        px.render(&b.big_h),
        px.render(b.f.num()),
        b.f.den_exp(),
        b.f.degree().unwrap_or(0),
    );
    Ok(Outcome {
        code: if check.holds { EXIT_OK } else { EXIT_CONTRADICTION },
        case: "construct".into(),
        pass: check.holds,
        evidence: b.to_json(),
        text,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Closure,
    Ring,
    Proper,
}

/// JSON `{"coeffs"|"text", "den_exp"}`, or integer polynomial text.
fn parse_kpoly<D: Dvr>(dvr: &D, src: &str, den_exp: Option<u32>) -> intvalmat::Result<KPoly<D>> {
    let trimmed = src.trim();
    if trimmed.starts_with('{') {
        let mut v: Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
        if let Some(k) = den_exp {
            v["den_exp"] = json!(k);
        }
        return KPoly::from_json(dvr, &v);
    }
    let ints = parse_int_poly(trimmed)?;
    let coeffs = ints
        .coeffs()
        .iter()
        .map(|c| dvr.from_json(&Value::String(c.to_string())))
        .collect::<intvalmat::Result<Vec<_>>>()?;
    Ok(KPoly::new(dvr, PolyRing::new(dvr.clone()).from_coeffs(coeffs), den_exp.unwrap_or(0)))
}

fn check<D: Dvr>(dvr: &D, n: usize, src: &str, den_exp: Option<u32>, mode: Mode, threads: usize) -> intvalmat::Result<Outcome> {
    let f = parse_kpoly(dvr, src, den_exp)?;
    let px = PolyRing::new(dvr.clone());
    let poly = json!({ "text": px.render(f.num()), "den_exp": f.den_exp() });
    let (pass, evidence, summary) = match mode {
        Mode::Closure => {
            let v = closure_membership(dvr, &f, n, threads)?;
            (v.member, json!({ "poly": poly, "closure": v }), format!("closure member: {}", v.member))
        }
        Mode::Ring => {
            let v = int_matrix_membership(dvr, &f, n, threads)?;
            (v.member, json!({ "poly": poly, "ring": v }), format!("ring member: {}", v.member))
        }
        Mode::Proper => {
            let v = properly_integral(dvr, &f, n, threads)?;
            let s = format!(
                "properly integral: {} (closure {}, ring {})",
                v.properly_integral, v.closure.member, v.ring.member
            );
            (v.properly_integral, json!({ "poly": poly, "verdict": v }), s)
        }
    };
    Ok(Outcome {
        code: if pass { EXIT_OK } else { EXIT_NON_MEMBER },
        case: "check".into(),
        pass,
        evidence,
        text: format!("{summary}\n"),
    })
}

fn parse_residue_poly<D: Dvr>(dvr: &D, src: &str) -> intvalmat::Result<Poly<D::Elem>> {
    Ok(parse_kpoly(dvr, src, None)?.num().clone())
}

fn null_ideal<D: Dvr>(
    dvr: &D,
    n: usize,
    k: u32,
    verify: bool,
    lcm: Option<&str>,
    dmax: Option<usize>,
    threads: usize,
) -> intvalmat::Result<Outcome> {
    if let Some(iota) = lcm {
        let ring = dvr.residue_ring(k)?;
        let px = PolyRing::new(dvr.clone());
        let iota = px.reduce(&ring, &parse_residue_poly(dvr, iota)?);
        let r = lcm_primary(dvr, &iota, k, n, dmax)?;
        let pass = u64::from(k) > dvr.residue_size() || r.matches;
        return Ok(Outcome {
            code: if pass { EXIT_OK } else { EXIT_CONTRADICTION },
            case: "null-ideal-lcm".into(),
            pass,
            text: format!("lcm of {}-primary moduli: degree {} (k·D = {})\n", r.iota, r.degree, r.expected),
            evidence: json!(r),
        });
    }
    if verify {
        let r = verify_phi_theorem(dvr, n, k, threads)?;
        return Ok(Outcome {
            code: if r.pass { EXIT_OK } else { EXIT_CONTRADICTION },
            case: "null-ideal-verify".into(),
            pass: r.pass,
            text: format!(
                "generators in N_k: {}; min degree: {:?}; pass: {}\n",
                r.generators_in_null_ideal, r.min_monic_degree, r.pass
            ),
            evidence: r.to_json(),
        });
    }
    let r = minimal_monic_degree(dvr, n, k, dmax)?;
    let pass = r.witness_in_null_ideal;
    Ok(Outcome {
        code: if pass { EXIT_OK } else { EXIT_CONTRADICTION },
        case: "null-ideal-min-degree".into(),
        pass,
        text: format!("deg phi_{} = {}\nphi_{} = {}\n", k, r.min_monic_degree, k, r.witness_phi_k),
        evidence: json!(r),
    })
}

fn pi_sequence<D: Dvr>(dvr: &D, n: usize, dmax: usize, threads: usize) -> intvalmat::Result<Outcome> {
    let t = mu_table(dvr, n, dmax, threads)?;
    let mut text = String::from("d\tformula\toracle\n");
    for e in &t.entries {
        let f = e.mu_formula.map_or("-".to_string(), |v| v.to_string());
        text.push_str(&format!("{}\t{}\t{}\n", e.d, f, e.mu_oracle));
    }
    text.push_str(&format!("agreement: {}\n", t.agreement));
    Ok(Outcome {
        code: if t.agreement { EXIT_OK } else { EXIT_NON_MEMBER },
        case: "pi-sequence".into(),
        pass: t.agreement,
        evidence: json!(t),
        text,
    })
}

fn quat(p: u64, k: u32, order: QuatOrder, check_f: bool) -> intvalmat::Result<Outcome> {
    let iso = find_iso(p, k)?;
    let mut evidence = json!({ "order": order, "iso": iso });
    let mut pass = iso.relations_hold && iso.spans;
    let mut text = format!(
        "a = {}, b = {} (a^2 + b^2 = -1 mod {}^{})\nrelations: {}, spans: {}\n",
        iso.a, iso.b, p, k, iso.relations_hold, iso.spans
    );
    if check_f {
        let z = intvalmat::dvr::Zp::new(p)?;
        let b = construct_f(&z, 2)?;
        let w = quat_membership_failure(&b.f, p, order)?;
        pass &= w.is_some();
        if let Some(w) = &w {
            text.push_str(&format!(
                "F fails at quaternion {:?}: value {:?} mod {}^{}\n",
                w.quaternion.coords, w.value.coords, p, w.precision
            ));
        }
        evidence["f_failure"] = json!(w);
    }
    Ok(Outcome {
        code: if pass { EXIT_OK } else { EXIT_CONTRADICTION },
        case: "quat".into(),
        pass,
        evidence,
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        run(std::iter::once("intvalmat").chain(args.iter().copied()))
    }

    #[test]
    fn construct_json() {
        let (code, out) = run_args(&["construct", "--p", "2", "--n", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["evidence"]["phi"]["text"], "x^6 - x^5 - x^3 + x^2");
        assert_eq!(v["evidence"]["F"]["den_exp"], 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["construct", "--n", "two"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["construct", "--p", "4"]).0, EXIT_ERROR);
    }

    #[test]
    fn check_modes() {
        let (code, _) = run_args(&["check", "--p", "2", "--n", "2", "--expr", "x", "--den-exp", "1", "--closure"]);
        assert_eq!(code, EXIT_NON_MEMBER);
        let (code, _) = run_args(&[
            "check", "--p", "2", "--n", "2", "--expr", "(x^4-x)^2(x^2-x)^2", "--den-exp", "2", "--ring",
        ]);
        assert_eq!(code, EXIT_OK);
        let (code, out) = run_args(&[
            "--format", "text", "check", "--p", "2", "--n", "2", "--expr",
            "x(x^2+2)(x-1)((x-1)^2+2)(x^2+x+1)^2", "--den-exp", "2",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("properly integral: true"));
    }

    #[test]
    fn deterministic_output() {
        let a = run_args(&["--threads", "1", "null-ideal", "--p", "2", "--n", "2", "--k", "2", "--min-degree"]);
        let b = run_args(&["--threads", "3", "null-ideal", "--p", "2", "--n", "2", "--k", "2", "--min-degree"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }

    #[test]
    fn lcm_flag() {
        let (code, out) = run_args(&["null-ideal", "--p", "2", "--n", "2", "--k", "2", "--lcm", "x^2+x+1"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["evidence"]["degree"], 4);
    }

    #[test]
    fn fqt_context_file() {
        let dir = std::env::temp_dir().join(format!("intvalmat-ctx-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f4.json");
        std::fs::write(&path, r#"{"backend":"fqt","p":2,"e":2,"field_modulus":[1,1,1]}"#).unwrap();
        let (code, out) = run_args(&["construct", "--context", path.to_str().unwrap(), "--n", "2"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["evidence"]["q"], 4);
        assert_eq!(v["evidence"]["degrees"]["holds"], true);
    }

    #[test]
    fn quat_command() {
        let (code, out) = run_args(&["quat", "--p", "3", "--k", "3", "--order", "hurwitz", "--check-f"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["evidence"]["iso"]["b"], 5);
        assert_eq!(run_args(&["quat", "--order", "nope"]).0, EXIT_ERROR);
    }
}
