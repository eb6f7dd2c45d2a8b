use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liouheun_core::coverings::{
    cyclic_covering, dihedral_covering, dihedral_json, nonbelyi_covering, Covering,
};
use liouheun_core::exact::parse_rational;
use liouheun_core::identities::{
    run_all_with, run_identity, summary_json, Profile, RunConfig, VerificationReport,
};
use liouheun_core::numeric;
use liouheun_core::pullback::{run_scenario, Scenario, ScenarioParams};
use liouheun_core::series::{
    eval_heun, eval_hpg, hpg_degenerate_closed, hpg_dihedral_closed, DihedralVariant, Evaluation,
    HeunParams, HpgParams, Policy, Scalar,
};
use liouheun_core::{Error, Rational};
use rug::{Complex, Float};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "liouheun",
    version,
    about = "Liouvillian Heun functions from hypergeometric pull-backs"
)]
struct Cli {
    /// Working precision in decimal digits (at least 15).
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Quick)]
    profile: ProfileArg,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Build a covering and print its passport.
    Covering {
        #[command(subcommand)]
        family: Family,
    },
    /// Run one catalog identity, or `all`.
    Verify { id: String },
    /// Evaluate a local Heun or Gauss solution, or a closed form.
    Eval {
        #[command(subcommand)]
        function: EvalFn,
    },
    /// Pull back a Gauss equation along a named scenario and compare.
    Pullback {
        /// One of P1, TRIVPBF, NONBELYI, DIHEDRAL-DIFF.
        scenario: String,
        #[arg(long = "A", allow_hyphen_values = true)]
        a_upper: Option<String>,
        #[arg(long = "B", allow_hyphen_values = true)]
        b_upper: Option<String>,
        #[arg(long = "C", allow_hyphen_values = true)]
        c_upper: Option<String>,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long = "M")]
        m: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        e: Option<String>,
    },
}

#[derive(Subcommand)]
enum Family {
    Cyclic {
        n: u32,
        m: u32,
    },
    Dihedral {
        n: u32,
        m: u32,
    },
    Nonbelyi {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
}

#[derive(Subcommand)]
enum EvalFn {
    Heun {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[command(flatten)]
        point: PointArgs,
    },
    #[command(name = "2f1")]
    Hpg {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        point: PointArgs,
    },
    Closed {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        point: PointArgs,
    },
}

#[derive(clap::Args)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Imaginary part of the evaluation point.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Degenerate,
    Upper,
    Half,
}

enum Failure {
    Verification(String),
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn exact(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s)
        .ok_or_else(|| Failure::Usage(format!("{name} = {s:?}: expected an exact rational p/q")))
}

fn exact_opt(name: &str, s: &Option<String>) -> Result<Option<Rational>, Failure> {
    s.as_deref().map(|v| exact(name, v)).transpose()
}

/// A rational `p/q` or a decimal string, at working precision.
fn numeric_value(name: &str, s: &str, prec: u32) -> Result<Complex, Failure> {
    if let Some(r) = parse_rational(s) {
        return Ok(Complex::with_val(prec, &r));
    }
    Float::parse(s.trim())
        .map(|f| Complex::with_val(prec, Float::with_val(prec, f)))
        .map_err(|_| Failure::Usage(format!("{name} = {s:?}: not a number")))
}

fn point(p: &PointArgs, prec: u32) -> Result<Complex, Failure> {
    let mut z = numeric_value("x", &p.x, prec)?;
    if let Some(im) = &p.xi {
        let i = numeric_value("xi", im, prec)?;
        z = Complex::with_val(prec, (z.real(), i.real()));
    }
    Ok(z)
}

fn emit_doc(v: &Value, output: Output) {
    match output {
        Output::Pretty => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        _ => println!("{v}"),
    }
}

fn covering_csv(v: &Value) {
    let join = |k: &str| {
        v["passport"][k]
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default()
    };
    println!("family,degree,belyi,passport_0,passport_1,passport_inf");
    println!(
        "{},{},{},{},{},{}",
        v["family"].as_str().unwrap_or(""),
        v["degree"],
        v["belyi"],
        join("0"),
        join("1"),
        join("inf")
    );
}

fn cmd_covering(family: &Family, output: Output) -> Outcome {
    let doc = match family {
        Family::Cyclic { n, m } => cyclic_covering(*n, *m)?.to_json(),
        Family::Dihedral { n, m } => {
            let (cov, pair) = dihedral_covering(*n, *m)?;
            dihedral_json(&cov, &pair)
        }
        Family::Nonbelyi { s } => {
            let cov: Covering = nonbelyi_covering(&exact("s", s)?)?;
            cov.to_json()
        }
    };
    match output {
        Output::Csv => covering_csv(&doc),
        _ => emit_doc(&doc, output),
    }
    Ok(())
}

fn cmd_verify(id: &str, cfg: &RunConfig, profile: Profile, output: Output) -> Outcome {
    let reports: Vec<VerificationReport> = if id == "all" {
        run_all_with(cfg)
    } else {
        vec![run_identity(id, cfg)?]
    };
    match output {
        Output::Json => {
            for r in &reports {
                println!("{}", r.to_json(false));
            }
            if id == "all" {
                println!("{}", summary_json(&reports, profile, cfg.seed));
            }
        }
        Output::Csv => {
            println!("{}", VerificationReport::csv_header());
            for r in &reports {
                println!("{}", r.to_csv());
            }
        }
        Output::Pretty => {
            println!(
                "{:<16} {:<6} {:>12} {:>8}  mode",
                "id", "status", "worst", "samples"
            );
            for r in &reports {
                let worst = r
                    .worst_error
                    .map(|w| format!("{w:.2e}"))
                    .unwrap_or_else(|| "-".into());
                println!(
                    "{:<16} {:<6} {:>12} {:>8}  {}",
                    r.id,
                    r.status.as_str(),
                    worst,
                    r.samples,
                    r.mode.as_str()
                );
                if let Some(w) = &r.witness {
                    println!("    witness: {w}");
                }
                for f in &r.flags {
                    println!("    flag: {f}");
                }
            }
        }
    }
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Failure::Verification(format!(
            "first failing identity: {}",
            r.id
        ))),
        None => Ok(()),
    }
}

fn emit_eval(function: &str, z: &Complex, ev: &Evaluation, digits: u32, output: Output) {
    let shown = (digits - 5) as usize;
    let re = numeric::fmt_float(ev.value.real(), shown);
    let im = numeric::fmt_float(ev.value.imag(), shown);
    let x = numeric::fmt_complex(z, shown);
    match output {
        Output::Csv => {
            println!("function,x,value_re,value_im,error_estimate,terms");
            println!(
                "{function},{x},{re},{im},{:e},{}",
                ev.error_estimate, ev.terms
            );
        }
        Output::Json => println!(
            "{}",
            json!({"function": function, "x": x, "value": {"re": re, "im": im}, "error_estimate": ev.error_estimate, "terms": ev.terms})
        ),
        Output::Pretty => println!(
            "{function}({x}) = {}\n  error estimate {:e}, {} terms",
            numeric::fmt_complex(&ev.value, shown),
            ev.error_estimate,
            ev.terms
        ),
    }
}

fn cmd_eval(function: &EvalFn, digits: u32, output: Output) -> Outcome {
    let prec = numeric::bits_for_digits(digits);
    let policy = Policy::with_digits(digits);
    let v = |name: &str, s: &str| numeric_value(name, s, prec);
    let (name, z, ev) = match function {
        EvalFn::Heun {
            t,
            q,
            a,
            b,
            c,
            d,
            point: p,
        } => {
            let params = HeunParams::new(
                v("t", t)?,
                v("q", q)?,
                v("a", a)?,
                v("b", b)?,
                v("c", c)?,
                v("d", d)?,
            );
            let z = point(p, prec)?;
            let ev = eval_heun(&params, &z, &policy)?;
            ("heun", z, ev)
        }
        EvalFn::Hpg { a, b, c, point: p } => {
            let params = HpgParams::new(v("A", a)?, v("B", b)?, v("C", c)?);
            let z = point(p, prec)?;
            let ev = eval_hpg(&params, &z, &policy)?;
            ("2f1", z, ev)
        }
        EvalFn::Closed {
            variant,
            a,
            point: p,
        } => {
            let z = point(p, prec)?;
            let value = match variant {
                Variant::Degenerate => {
                    let s = match parse_rational(a) {
                        Some(r) => Scalar::Exact(r),
                        None => Scalar::Approx(v("a", a)?),
                    };
                    hpg_degenerate_closed(&s, &z, digits)?
                }
                Variant::Upper => {
                    hpg_dihedral_closed(DihedralVariant::Upper, &v("a", a)?, &z, digits)?
                }
                Variant::Half => {
                    hpg_dihedral_closed(DihedralVariant::Half, &v("a", a)?, &z, digits)?
                }
            };
            let ev = Evaluation {
                value,
                error_estimate: 0.0,
                terms: 0,
            };
            ("closed", z, ev)
        }
    };
    emit_eval(name, &z, &ev, digits, output);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_pullback(
    scenario: &str,
    a: &Option<String>,
    b: &Option<String>,
    c: &Option<String>,
    n: Option<u32>,
    m: Option<u32>,
    alpha: &Option<String>,
    s: &Option<String>,
    e: &Option<String>,
    output: Output,
) -> Outcome {
    let sc = Scenario::parse(scenario).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown scenario {scenario:?}; expected P1, TRIVPBF, NONBELYI or DIHEDRAL-DIFF"
        ))
    })?;
    let hpg = match (exact_opt("A", a)?, exact_opt("B", b)?, exact_opt("C", c)?) {
        (None, None, None) => None,
        (Some(a), Some(b), Some(c)) => Some(HpgParams::new(a, b, c)),
        _ => {
            return Err(Failure::Usage(
                "--A, --B and --C must be given together".into(),
            ))
        }
    };
    let params = ScenarioParams {
        hpg,
        n,
        m,
        alpha: exact_opt("alpha", alpha)?,
        s: exact_opt("s", s)?,
        e: exact_opt("e", e)?,
    };
    let report = run_scenario(sc, &params)?;
    let doc = report.to_json();
    match output {
        Output::Csv => {
            println!("scenario,match,exponent_differences,singular_points");
            let join = |k: &str| {
                doc[k]
                    .as_array()
                    .map(|a| {
                        a.iter()
                            .filter_map(|x| x.as_str())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default()
            };
            println!(
                "{},{},{},{}",
                report.scenario,
                report.matched,
                join("exponent_differences"),
                join("singular_points")
            );
        }
        _ => emit_doc(&doc, output),
    }
    if report.matched {
        Ok(())
    } else {
        Err(Failure::Verification(
            report.witness.unwrap_or_else(|| "no match".into()),
        ))
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.precision < 15 {
        return Err(Failure::Usage(format!(
            "--precision {} is below the minimum of 15",
            cli.precision
        )));
    }
    let profile = match cli.profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    match &cli.command {
        Command::Covering { family } => cmd_covering(family, cli.output),
        Command::Verify { id } => {
            let mut cfg = RunConfig::for_profile(profile, cli.seed);
            cfg.digits = cli.precision;
            cmd_verify(id, &cfg, profile, cli.output)
        }
        Command::Eval { function } => cmd_eval(function, cli.precision, cli.output),
        Command::Pullback {
            scenario,
            a_upper,
            b_upper,
            c_upper,
            n,
            m,
            alpha,
            s,
            e,
        } => cmd_pullback(
            scenario, a_upper, b_upper, c_upper, *n, *m, alpha, s, e, cli.output,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
