use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadfact::format::g17;
use quadfact::{
    holder_bound, tan_fixed_point, verify_factorization, BoundReport64, CharacteristicSpec64, Complex64, Error,
    ExpPolynomial64, Exponent, Factorization64, Measure64, SimpsonParam64, SmoothFunction64, Term, ZetaParams64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEFAULT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "quadfact",
    version,
    about = "Kernel factorizations and error bounds for quadrature remainders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hölder bound |A(f)| <= |D f|_p |g|_q for one rule and function.
    Bound(BoundArgs),
    /// Dump the kernel g as "t,g" rows.
    Kernel(KernelArgs),
    /// Table of tan fixed points "n,tau_n,residual".
    Tau(TauArgs),
    /// Check A(f) = ∫ D(f) g over a set of functions.
    Verify(VerifyArgs),
    /// Evaluate ζ_{n,k,γ} or one of its derivatives on a grid.
    Zeta(ZetaArgs),
    /// Evaluate the characteristic solution ω of an operator on a grid.
    Omega(OmegaArgs),
}

#[derive(Args)]
struct RuleArgs {
    /// trap:n | trap-multi:n1,n2,... | simpson:w,v | simpson-classical | zeta:n,k,gamma
    #[arg(long, allow_hyphen_values = true)]
    rule: String,
    /// Integration interval "a,b".
    #[arg(long, allow_hyphen_values = true)]
    interval: String,
    /// JSON measure used by zeta rules instead of the trapezoid remainder.
    #[arg(long)]
    measure: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    rule: RuleArgs,
    /// poly:c0,c1,... | exp:beta | sin:beta | cos:beta
    #[arg(long = "f", allow_hyphen_values = true)]
    function: String,
    /// Exponent p of the derivative norm: 1, 2 or inf.
    #[arg(long, default_value = "inf")]
    p: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    rule: RuleArgs,
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TauArgs {
    #[arg(long, default_value_t = 10)]
    max: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    rule: RuleArgs,
    /// Single function to check; the built-in set is used when absent.
    #[arg(long = "f", allow_hyphen_values = true)]
    function: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ZetaArgs {
    /// "n,k,gamma".
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    #[arg(long, default_value_t = 0)]
    derivative: usize,
    #[arg(long, allow_hyphen_values = true)]
    interval: String,
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OmegaArgs {
    /// Operator roots "re:im:multiplicity;..." (conjugate-closed).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "rule")]
    roots: Option<String>,
    /// Use the operator of a rule instead of explicit roots.
    #[arg(long, allow_hyphen_values = true)]
    rule: Option<String>,
    /// Rule interval; also the default evaluation interval.
    #[arg(long, allow_hyphen_values = true)]
    interval: String,
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::InvalidInput(_)
            | Error::NearCoincidentRoots(..)
            | Error::Order { .. }
            | Error::KernelCondition(_) => Failure::Input(e.to_string()),
            other => Failure::Violation(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn input<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

fn parse_f64(s: &str) -> Result<f64, Failure> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return input(format!("not a finite number: {s:?}"));
    }
    Ok(v)
}

fn parse_list(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',').map(parse_f64).collect()
}

fn parse_usize(s: &str) -> Result<usize, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Input(format!("not a non-negative integer: {s:?}")))
}

fn parse_interval(s: &str) -> Result<(f64, f64), Failure> {
    match parse_list(s)?[..] {
        [a, b] if a < b => Ok((a, b)),
        [a, b] => input(format!("interval needs a < b, got {a},{b}")),
        _ => input(format!("interval must be \"a,b\", got {s:?}")),
    }
}

fn parse_function(s: &str) -> Result<SmoothFunction64, Failure> {
    let Some((kind, rest)) = s.split_once(':') else {
        return input(format!("function must look like kind:args, got {s:?}"));
    };
    let f = match kind {
        "poly" => SmoothFunction64::polynomial(parse_list(rest)?),
        "exp" => SmoothFunction64::exp(parse_f64(rest)?),
        "sin" => SmoothFunction64::sin(parse_f64(rest)?),
        "cos" => SmoothFunction64::cos(parse_f64(rest)?),
        _ => return input(format!("unknown function family {kind:?}")),
    };
    Ok(f.with_label(s))
}

fn parse_zeta(s: &str) -> Result<ZetaParams64, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    let [n, k, gamma] = parts.as_slice() else {
        return input(format!("zeta parameters must be \"n,k,gamma\", got {s:?}"));
    };
    Ok(ZetaParams64::new(parse_usize(n)?, parse_usize(k)?, parse_f64(gamma)?)?)
}

fn load_measure(path: &PathBuf) -> Result<Measure64, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn build_rule(args: &RuleArgs) -> Result<Factorization64, Failure> {
    let (a, b) = parse_interval(&args.interval)?;
    let spec = args.rule.as_str();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let fact = match kind {
        "trap" => Factorization64::trapezoid(a, b, &[parse_usize(rest)?])?,
        "trap-multi" => {
            let indices = rest.split(',').map(parse_usize).collect::<Result<Vec<_>, _>>()?;
            Factorization64::trapezoid(a, b, &indices)?
        }
        "simpson" => match parse_list(rest)?.as_slice() {
            &[w, v] => Factorization64::simpson(a, b, SimpsonParam64::new(w, v)?)?,
            _ => return input(format!("simpson rule needs \"simpson:w,v\", got {spec:?}")),
        },
        "simpson-classical" if rest.is_empty() => Factorization64::simpson_classical(a, b)?,
        "zeta" => {
            let measure = match &args.measure {
                Some(path) => load_measure(path)?,
                None => Measure64::trapezoid(a, b)?,
            };
            if measure.a() != a || measure.b() != b {
                return input("measure support differs from --interval");
            }
            Factorization64::zeta(measure, parse_zeta(rest)?, true)?
        }
        _ => return input(format!("unknown rule {spec:?}")),
    };
    Ok(fact.with_label(spec))
}

fn parse_roots(s: &str) -> Result<CharacteristicSpec64, Failure> {
    let mut roots = Vec::new();
    for part in s.split(';').filter(|p| !p.trim().is_empty()) {
        let fields: Vec<&str> = part.split(':').collect();
        let [re, im, m] = fields.as_slice() else {
            return input(format!("root must be \"re:im:multiplicity\", got {part:?}"));
        };
        roots.push((Complex64::new(parse_f64(re)?, parse_f64(im)?), parse_usize(m)?));
    }
    Ok(CharacteristicSpec64::from_roots(roots)?)
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn grid(a: f64, b: f64, points: usize) -> Result<Vec<f64>, Failure> {
    if points < 2 {
        return input("need at least 2 points");
    }
    let last = points - 1;
    Ok((0..points)
        .map(|i| {
            if i == last {
                b
            } else {
                a + (b - a) * i as f64 / last as f64
            }
        })
        .collect())
}

fn verification_tol() -> Result<f64, Failure> {
    match std::env::var("QUADFACT_TOL") {
        Ok(s) => match parse_f64(&s) {
            Ok(t) if t > 0.0 => Ok(t),
            _ => input(format!("QUADFACT_TOL must be a positive number, got {s:?}")),
        },
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn cmd_bound(args: &BoundArgs) -> Outcome {
    let fact = build_rule(&args.rule)?;
    let f = parse_function(&args.function)?;
    let p: Exponent = args.p.parse().map_err(|e: Error| Failure::Input(e.to_string()))?;
    let report = holder_bound(&fact, &f, p)?;
    let mut out = open_output(&args.out.output)?;
    match args.out.format {
        Format::Csv => {
            writeln!(out, "{}", BoundReport64::CSV_HEADER)?;
            writeln!(out, "{}", report.csv_row())?;
        }
        Format::Json => writeln!(out, "{}", report.to_json())?,
    }
    out.flush()?;
    if report.holds {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "bound violated: |{}| > {}",
            g17(report.functional_value),
            g17(report.bound)
        )))
    }
}

fn cmd_kernel(args: &KernelArgs) -> Outcome {
    let fact = build_rule(&args.rule)?;
    let ts = grid(fact.a(), fact.b(), args.points)?;
    let mut out = open_output(&args.output)?;
    writeln!(out, "t,g")?;
    for t in ts {
        writeln!(out, "{},{}", g17(t), g17(fact.kernel(t)?))?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_tau(args: &TauArgs) -> Outcome {
    let mut out = open_output(&args.output)?;
    writeln!(out, "n,tau_n,residual")?;
    for n in 0..=args.max {
        let tau: f64 = tan_fixed_point(n);
        writeln!(out, "{n},{},{}", g17(tau), g17((tau.tan() - tau).abs()))?;
    }
    out.flush()?;
    Ok(())
}

/// Monomials up to degree 6, `e^{±x}`, `sin`, `cos` and two seeded exponential polynomials.
fn builtin_functions() -> Vec<SmoothFunction64> {
    let mut fs: Vec<SmoothFunction64> = (0..=6).map(SmoothFunction64::monomial).collect();
    fs.push(SmoothFunction64::exp(1.0).with_label("exp:1"));
    fs.push(SmoothFunction64::exp(-1.0).with_label("exp:-1"));
    fs.push(SmoothFunction64::sin(1.0).with_label("sin:1"));
    fs.push(SmoothFunction64::cos(1.0).with_label("cos:1"));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..2 {
        let terms: Vec<Term<f64>> = (0..3)
            .map(|_| {
                let lambda = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-2.0..2.0));
                let coeff = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                Term::new(lambda, rng.gen_range(0..2), coeff)
            })
            .collect();
        fs.push(SmoothFunction64::exp_poly(ExpPolynomial64::new(terms)).with_label(format!("exppoly:{i}")));
    }
    fs
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let tol = verification_tol()?;
    let fact = build_rule(&args.rule)?;
    let fs = match &args.function {
        Some(s) => vec![parse_function(s)?],
        None => builtin_functions(),
    };
    let mut out = open_output(&args.out.output)?;
    if args.out.format == Format::Csv {
        writeln!(out, "rule,f,lhs,rhs,abs_err,pass")?;
    }
    let mut failed = 0;
    for f in &fs {
        let rec = verify_factorization(&fact, f, tol)?;
        failed += usize::from(!rec.pass);
        match args.out.format {
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{},{}",
                rec.rule,
                rec.f,
                g17(rec.lhs),
                g17(rec.rhs),
                g17(rec.abs_err),
                rec.pass
            )?,
            Format::Json => writeln!(out, "{}", rec.to_json_line())?,
        }
    }
    out.flush()?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "{failed} of {} checks failed at tolerance {tol}",
            fs.len()
        )))
    }
}

fn cmd_zeta(args: &ZetaArgs) -> Outcome {
    let params = parse_zeta(&args.params)?;
    if args.derivative > params.n() {
        return input(format!(
            "derivative order {} exceeds n = {}",
            args.derivative,
            params.n()
        ));
    }
    let (a, b) = parse_interval(&args.interval)?;
    let ts = grid(a, b, args.points)?;
    let mut out = open_output(&args.output)?;
    writeln!(out, "t,zeta")?;
    for t in ts {
        writeln!(out, "{},{}", g17(t), g17(params.derivative(args.derivative, t)?))?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_omega(args: &OmegaArgs) -> Outcome {
    let (a, b) = parse_interval(&args.interval)?;
    let spec = match (&args.roots, &args.rule) {
        (Some(r), _) => parse_roots(r)?,
        (None, Some(rule)) => {
            let fact = build_rule(&RuleArgs {
                rule: rule.clone(),
                interval: args.interval.clone(),
                measure: None,
            })?;
            fact.characteristic_spec()?
        }
        (None, None) => return input("omega needs --roots or --rule"),
    };
    let omega = spec.characteristic_solution()?;
    let ts = grid(a, b, args.points)?;
    let mut out = open_output(&args.output)?;
    writeln!(out, "t,omega")?;
    for t in ts {
        writeln!(out, "{},{}", g17(t), g17(omega.eval_real(t)?))?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Bound(a) => cmd_bound(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Tau(a) => cmd_tau(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Zeta(a) => cmd_zeta(a),
        Command::Omega(a) => cmd_omega(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
