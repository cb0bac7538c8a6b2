//! Command-line front end: compute individual function values, run identity
//! suites, and emit machine-readable reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed or did not converge,
//! 2 usage or validation errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use spinhl::error::Error;
use spinhl::formulas::{self, DetKind};
use spinhl::identities;
use spinhl::lattice::{self, ConjugationRoute};
use spinhl::report::CheckConfig;
use spinhl::signature::{enumerate_signatures, Signature};
use spinhl::weights::WeightFamily;
use spinhl::{Params, Scalar};

#[derive(Parser)]
#[command(
    name = "spinhl",
    about = "Spin Hall-Littlewood rational functions: exact evaluation and identity verification",
    after_help = "Thread count for suite parallelism follows the RAYON_NUM_THREADS environment variable."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function value (exact rational or complex).
    Compute(ComputeArgs),
    /// Run identity checks and write a JSON report.
    Verify(VerifyArgs),
    /// Tabulate F or G values over an enumerated signature range as CSV.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ComputeKind {
    /// Lattice F_{mu/lambda}(u..)
    F,
    /// Lattice G_{nu/lambda}(v..)
    G,
    /// Conjugated lattice F
    Fc,
    /// Conjugated lattice G
    Gc,
    /// Symmetrization formula for F_mu(u..)
    FSym,
    /// Symmetrization formula for G_nu(v..)
    GSym,
    /// Principal specialization F_mu(u, qu, ..., q^{M-1}u)
    FPrincipal,
    /// Principal specialization G_nu(v, qv, ..., q^{N-1}v)
    GPrincipal,
    /// Classical Hall-Littlewood polynomial P_lambda(u..; q)
    HlP,
    /// q = 0 determinant forms (pick with --variant)
    SchurDet,
    /// Rational (q -> 1) limit family (needs --zeta; --mu for F, --nu for G)
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum DetVariant {
    FQ0,
    GQ0,
    FInhom,
    GInhom,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    kind: ComputeKind,
    /// q as a rational "a/b" or complex "x+yi" literal.
    #[arg(long, default_value = "1/3")]
    q: String,
    /// s as a rational or complex literal.
    #[arg(long, default_value = "1/5")]
    s: String,
    /// Top signature for f/fc (comma-separated parts; empty string = empty).
    #[arg(long)]
    mu: Option<String>,
    /// Top signature for g/gc.
    #[arg(long)]
    nu: Option<String>,
    /// Bottom signature for skew values (defaults: empty for F, zeros for G).
    #[arg(long)]
    lambda: Option<String>,
    /// Comma-separated u variables (or the single u for f-principal).
    #[arg(long)]
    u: Option<String>,
    /// Comma-separated v variables (or the single v for g-principal).
    #[arg(long)]
    v: Option<String>,
    /// Number of principal variables for g-principal.
    #[arg(long)]
    n: Option<usize>,
    /// zeta for the rational family.
    #[arg(long)]
    zeta: Option<String>,
    /// Determinant variant for schur-det.
    #[arg(long, value_enum)]
    variant: Option<DetVariant>,
    /// Emit JSON {manifest, value} instead of the bare value.
    #[arg(long, default_value_t = false)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct VerifyArgs {
    /// Identity ids to run, or "all".
    #[arg(default_value = "all")]
    ids: Vec<String>,
    /// Optional explicit q for point-parameterized checks.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    s: Option<String>,
    /// Optional explicit u list for point-parameterized checks.
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    v: Option<String>,
    /// Optional boundary signatures for point-parameterized checks.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// Free fusion parameter t for fused-eigenrelation overrides.
    #[arg(long)]
    t: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Relative tolerance for truncated checks.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Truncation budget (part cap ceiling).
    #[arg(long, default_value_t = 144)]
    cap: usize,
    /// Sample points per randomized check.
    #[arg(long, default_value_t = 20)]
    points: usize,
    /// Pretty-print the JSON report to stdout as well.
    #[arg(long, default_value_t = false)]
    json: bool,
    /// Report file path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Serialize, Deserialize, Clone)]
struct TableArgs {
    /// f or g.
    #[arg(long)]
    kind: String,
    /// Signature length to enumerate.
    #[arg(long)]
    length: usize,
    /// Part ceiling (negative = empty range).
    #[arg(long)]
    max_part: i64,
    #[arg(long, default_value = "1/3")]
    q: String,
    #[arg(long, default_value = "1/5")]
    s: String,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    v: Option<String>,
    /// CSV file path (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
}

/// Everything needed to reproduce a run; round-trips through serde.
#[derive(Serialize, Deserialize, Clone)]
#[serde(rename_all = "camelCase", tag = "command")]
enum RunManifest {
    Compute(ComputeArgs),
    Verify(VerifyArgs),
    Table(TableArgs),
}

fn parse_scalar_list(text: &Option<String>) -> Result<Vec<Scalar>, Error> {
    match text {
        None => Ok(Vec::new()),
        Some(t) if t.trim().is_empty() => Ok(Vec::new()),
        Some(t) => t.split(',').map(Scalar::parse).collect(),
    }
}

fn parse_signature(text: &Option<String>) -> Result<Option<Signature>, Error> {
    match text {
        None => Ok(None),
        Some(t) => Signature::parse(t).map(Some),
    }
}

fn depth_for(sigs: &[&Option<Signature>], vars: usize) -> usize {
    let mut len = vars;
    let mut part = 4i64;
    for s in sigs.iter().filter_map(|s| s.as_ref()) {
        len = len.max(s.len());
        part = part.max(s.first().unwrap_or(0));
    }
    2 * (len + part.max(0) as usize)
}

fn compute_value(args: &ComputeArgs) -> Result<Scalar, Error> {
    let q = Scalar::parse(&args.q)?;
    let s = Scalar::parse(&args.s)?;
    let mu = parse_signature(&args.mu)?;
    let nu = parse_signature(&args.nu)?;
    let lambda = parse_signature(&args.lambda)?;
    let us = parse_scalar_list(&args.u)?;
    let vs = parse_scalar_list(&args.v)?;
    let depth = depth_for(&[&mu, &nu, &lambda], us.len().max(vs.len()).max(args.n.unwrap_or(0)));
    let params = Params::new(q.clone(), s, depth)?;

    let need = |opt: &Option<Signature>, what: &str| -> Result<Signature, Error> {
        opt.clone()
            .ok_or_else(|| Error::Validation(format!("missing required flag --{what}")))
    };
    let first_sig = || -> Result<Signature, Error> {
        mu.clone()
            .or_else(|| nu.clone())
            .or_else(|| lambda.clone())
            .ok_or_else(|| Error::Validation("missing signature (--mu/--nu/--lambda)".into()))
    };

    match args.kind {
        ComputeKind::F => {
            let top = need(&mu, "mu")?;
            let bottom = lambda.unwrap_or_else(Signature::empty);
            lattice::skew_f(&top, &bottom, &us, &WeightFamily::Basic, &params)
        }
        ComputeKind::G => {
            let top = need(&nu, "nu")?;
            let bottom = lambda.unwrap_or_else(|| Signature::zeros(top.len()));
            lattice::skew_g(&top, &bottom, &vs, &WeightFamily::Basic, &params)
        }
        ComputeKind::Fc => {
            let top = need(&mu, "mu")?;
            let bottom = lambda.unwrap_or_else(Signature::empty);
            lattice::skew_f_conjugated(&top, &bottom, &us, &params, ConjugationRoute::CFactorRatio)
        }
        ComputeKind::Gc => {
            let top = need(&nu, "nu")?;
            let bottom = lambda.unwrap_or_else(|| Signature::zeros(top.len()));
            lattice::skew_g_conjugated(&top, &bottom, &vs, &params, ConjugationRoute::CFactorRatio)
        }
        ComputeKind::FSym => formulas::f_symmetrized(&need(&mu, "mu")?, &us, &params),
        ComputeKind::GSym => formulas::g_symmetrized(&need(&nu, "nu")?, &vs, &params),
        ComputeKind::FPrincipal => {
            let u = us
                .first()
                .ok_or_else(|| Error::Validation("f-principal needs --u".into()))?;
            formulas::f_principal(&need(&mu, "mu")?, u, &params)
        }
        ComputeKind::GPrincipal => {
            let v = vs
                .first()
                .ok_or_else(|| Error::Validation("g-principal needs --v".into()))?;
            let n = args
                .n
                .ok_or_else(|| Error::Validation("g-principal needs --n".into()))?;
            formulas::g_principal(&need(&nu, "nu")?, v, n, &params)
        }
        ComputeKind::HlP => {
            let sig = first_sig()?;
            formulas::hall_littlewood_p(&sig, &us, &q)
        }
        ComputeKind::SchurDet => {
            let variant = args
                .variant
                .ok_or_else(|| Error::Validation("schur-det needs --variant".into()))?;
            let (kind, vars) = match variant {
                DetVariant::FQ0 => (DetKind::FQ0, &us),
                DetVariant::FInhom => (DetKind::FInhom, &us),
                DetVariant::GQ0 => (DetKind::GQ0, &vs),
                DetVariant::GInhom => (DetKind::GInhom, &vs),
            };
            formulas::schur_like_determinant(kind, &first_sig()?, vars, &params)
        }
        ComputeKind::Rational => {
            let zeta = Scalar::parse(
                args.zeta
                    .as_deref()
                    .ok_or_else(|| Error::Validation("rational needs --zeta".into()))?,
            )?;
            if let Some(m) = &mu {
                formulas::rational_limit_f(m, &us, &zeta)
            } else if let Some(n) = &nu {
                formulas::rational_limit_g(n, &vs, &zeta)
            } else {
                Err(Error::Validation("rational needs --mu or --nu".into()))
            }
        }
    }
}

fn emit(text: String, out: &Option<String>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.write_all(b"\n")
        }
    }
}

fn run_compute(args: ComputeArgs) -> Result<ExitCode, Error> {
    let value = compute_value(&args)?;
    let text = if args.json {
        let manifest = RunManifest::Compute(args.clone());
        serde_json::to_string_pretty(&json!({
            "manifest": manifest,
            "value": value.to_string(),
        }))
        .expect("serializable")
    } else {
        value.to_string()
    };
    emit(text, &args.out).map_err(|e| Error::Validation(format!("cannot write output: {e}")))?;
    Ok(ExitCode::SUCCESS)
}

/// Checks that accept an explicit (q, s, u, v) evaluation point.
fn run_override_check(
    id: &str,
    args: &VerifyArgs,
    params: &Params,
    us: &[Scalar],
    vs: &[Scalar],
    cfg: &CheckConfig,
) -> Result<Option<spinhl::report::Report>, Error> {
    let lambda = parse_signature(&args.lambda)?;
    let mu = parse_signature(&args.mu)?;
    let one_u = || -> Result<&Scalar, Error> {
        us.first()
            .ok_or_else(|| Error::Validation(format!("{id} with an explicit point needs --u")))
    };
    let one_v = || -> Result<&Scalar, Error> {
        vs.first()
            .ok_or_else(|| Error::Validation(format!("{id} with an explicit point needs --v")))
    };
    let report = match id {
        "cauchy" => Some(identities::check_cauchy(us, vs, params, cfg)?),
        "skew-cauchy-single" => {
            let l = lambda.unwrap_or_else(Signature::empty);
            let m = mu.unwrap_or_else(|| Signature::zeros(l.len() + 1));
            Some(identities::check_skew_cauchy_single(&l, &m, one_u()?, one_v()?, params, cfg)?)
        }
        "skew-cauchy" => {
            let l = lambda.unwrap_or_else(Signature::empty);
            let m = mu.unwrap_or_else(|| Signature::zeros(l.len() + us.len()));
            Some(identities::check_skew_cauchy(
                &l,
                &m,
                us,
                vs,
                params,
                cfg,
                "skew-cauchy",
                "multi-variable skew Cauchy identity",
            )?)
        }
        "pieri-f" => {
            let m = mu.unwrap_or_else(|| Signature::zeros(us.len()));
            Some(identities::check_pieri_f(&m, us, one_v()?, params, cfg)?)
        }
        "pieri-g" => {
            let l = lambda.unwrap_or_else(Signature::empty);
            Some(identities::check_pieri_g(&l, one_u()?, vs, params, cfg)?)
        }
        "skew-cauchy-companions" => {
            let l = lambda.unwrap_or_else(Signature::empty);
            let m = mu.unwrap_or_else(|| Signature::zeros(l.len()));
            Some(identities::check_skew_cauchy_companions(&l, &m, one_u()?, one_v()?, params, cfg)?)
        }
        "fused-eigenrelation" => {
            let m = mu.unwrap_or_else(|| Signature::zeros(us.len()));
            let t = match &args.t {
                Some(t) => Scalar::parse(t)?,
                None => params.q().pow_i(2, "t")?,
            };
            Some(identities::check_fused_eigenrelation(&m, us, one_v()?, &t, params, cfg)?)
        }
        _ => None,
    };
    Ok(report)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let cfg = CheckConfig {
        tolerance: args.tol,
        max_part_cap: args.cap,
        seed: args.seed,
        points: args.points,
        ..Default::default()
    };
    cfg.validate()?;

    let ids: Vec<String> = if args.ids.len() == 1 && args.ids[0] == "all" {
        identities::catalog().iter().map(|c| c.id.to_string()).collect()
    } else {
        // Validate ids up front: unknown ids are usage errors.
        for id in &args.ids {
            identities::find(id)?;
        }
        args.ids.clone()
    };

    let explicit_point = args.q.is_some() && args.s.is_some();
    let mut reports = Vec::new();
    if explicit_point {
        let q = Scalar::parse(args.q.as_deref().unwrap())?;
        let s = Scalar::parse(args.s.as_deref().unwrap())?;
        let us = parse_scalar_list(&args.u)?;
        let vs = parse_scalar_list(&args.v)?;
        let params = Params::new(q, s, 2 * (4 + args.cap.min(16)))?;
        for id in &ids {
            match run_override_check(id, &args, &params, &us, &vs, &cfg)? {
                Some(rep) => reports.push(rep),
                None => reports.push(identities::find(id)?.run(&cfg)?),
            }
        }
        reports.sort_by(|a, b| a.id.cmp(&b.id));
    } else {
        reports = identities::run_suite(&ids, &cfg)?;
    }

    let manifest = RunManifest::Verify(args.clone());
    let envelope = json!({
        "manifest": manifest,
        "reports": reports,
    });
    let pretty = serde_json::to_string_pretty(&envelope).expect("serializable");
    if let Some(out) = &args.out {
        std::fs::write(out, pretty.as_bytes())
            .map_err(|e| Error::Validation(format!("cannot write report: {e}")))?;
    }
    if args.json || args.out.is_none() {
        println!("{pretty}");
    }

    let mut all_pass = true;
    for r in &reports {
        eprintln!(
            "{:28} {:12} residual {:.3e}  {}",
            r.id,
            format!("[{:?}]", r.kind).to_lowercase(),
            r.residual,
            if r.pass { "pass" } else { "FAIL" }
        );
        all_pass &= r.pass;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_table(args: TableArgs) -> Result<ExitCode, Error> {
    let q = Scalar::parse(&args.q)?;
    let s = Scalar::parse(&args.s)?;
    let us = parse_scalar_list(&args.u)?;
    let vs = parse_scalar_list(&args.v)?;
    let depth = 2 * (args.length + args.max_part.max(1) as usize);
    let params = Params::new(q, s, depth)?;

    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["signature", "value"])
        .map_err(|e| Error::Validation(e.to_string()))?;
    for sig in enumerate_signatures(args.length, args.max_part) {
        let value = match args.kind.as_str() {
            "f" => {
                if us.len() != args.length {
                    return Err(Error::Validation(format!(
                        "table f needs exactly {} u variables",
                        args.length
                    )));
                }
                lattice::f_lattice(&sig, &us, &params)?
            }
            "g" => lattice::g_lattice(&sig, &vs, &params)?,
            other => {
                return Err(Error::Validation(format!(
                    "table kind must be f or g, got {other:?}"
                )))
            }
        };
        wtr.write_record([sig.to_string(), value.to_string()])
            .map_err(|e| Error::Validation(e.to_string()))?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Validation(e.to_string()))?;
    let text = String::from_utf8(bytes).expect("csv is utf-8");
    match &args.out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| Error::Validation(format!("cannot write CSV: {e}")))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Verify(args) => run_verify(args),
        Command::Table(args) => run_table(args),
    };
    match result {
        Ok(code) => code,
        Err(Error::UnknownIdentity(id)) => {
            eprintln!("error: unknown identity id: {id}");
            ExitCode::from(2)
        }
        Err(e @ Error::Validation(_)) | Err(e @ Error::Precondition(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_roundtrip() {
        let args = VerifyArgs {
            ids: vec!["cauchy".into()],
            q: Some("1/3".into()),
            s: Some("1/5".into()),
            u: Some("1/4".into()),
            v: Some("1/4".into()),
            lambda: None,
            mu: None,
            t: None,
            seed: 7,
            tol: 1e-10,
            cap: 144,
            points: 20,
            json: false,
            out: None,
        };
        let manifest = RunManifest::Verify(args);
        let text = serde_json::to_string(&manifest).unwrap();
        let back: RunManifest = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string(&back).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn compute_zero_row_formula() {
        // F_{0^2}(2,3) = (q;q)_2 / ((1-s*2)(1-s*3)) as a reduced fraction.
        let args = ComputeArgs {
            kind: ComputeKind::F,
            q: "1/3".into(),
            s: "1/5".into(),
            mu: Some("0,0".into()),
            nu: None,
            lambda: None,
            u: Some("2,3".into()),
            v: None,
            n: None,
            zeta: None,
            variant: None,
            json: false,
            out: None,
        };
        let value = compute_value(&args).unwrap();
        // (1-1/3)(1-1/9) / ((3/5)(2/5)) = (2/3)(8/9)(25/6) = 200/81.
        assert_eq!(value, Scalar::ratio(200, 81));
    }

    #[test]
    fn compute_empty_g_is_one() {
        let args = ComputeArgs {
            kind: ComputeKind::G,
            q: "1/3".into(),
            s: "1/5".into(),
            mu: None,
            nu: Some("".into()),
            lambda: None,
            u: None,
            v: Some("".into()),
            n: None,
            zeta: None,
            variant: None,
            json: false,
            out: None,
        };
        assert!(compute_value(&args).unwrap().is_one());
    }

    #[test]
    fn compute_methods_agree() {
        let mk = |kind: ComputeKind| ComputeArgs {
            kind,
            q: "1/3".into(),
            s: "1/5".into(),
            mu: Some("3,1,0".into()),
            nu: None,
            lambda: None,
            u: Some("2,3,7/2".into()),
            v: None,
            n: None,
            zeta: None,
            variant: None,
            json: false,
            out: None,
        };
        let lat = compute_value(&mk(ComputeKind::F)).unwrap();
        let sym = compute_value(&mk(ComputeKind::FSym)).unwrap();
        assert_eq!(lat, sym);
    }
}
