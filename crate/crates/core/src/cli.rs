//! The `dworklab` command line. JSON results go to `out`, tables and
//! diagnostics to `err`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::{CacheKey, CountCache, CountKind};
use crate::dwork::{self, group_elements, group_order, DworkParams};
use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::hypersurface::{projective_size, CountConfig};
use crate::zeta::{congruence_check, elliptic_zeta, newton_polygon, unit_root_count, CountSeries};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_THEOREM: i32 = 3;
pub const EXIT_REFUSED: i32 = 4;

const DEFAULT_CAP: u64 = 300_000_000;

#[derive(Parser, Debug)]
#[command(name = "dworklab", version, about = "Point counts of Dwork hypersurfaces and their quotients over finite fields")]
struct Cli {
    /// Worker threads; 1 runs the sequential reference path.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON-lines count cache.
    #[arg(long, global = true, default_value = "./dworklab-cache.jsonl")]
    cache: PathBuf,
    /// Refuse jobs whose ambient projective space has more points than this.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// #X_lambda(F_(q^m))
    Count(CountArgs),
    /// #(X_lambda / G)(F_(q^m)) by Burnside over twisted forms
    QuotientCount(CountArgs),
    /// Compare counts of X_lambda and X_lambda / G for m = 1..max-m
    Verify(VerifyArgs),
    /// Every lambda in F_q with a smooth member
    ScanSmooth(FamilyArgs),
    /// Zeta numerator, Newton polygon and unit roots of a Dwork cubic curve
    Zeta(ZetaArgs),
    /// Newton polygon of an integer polynomial
    Newton(NewtonArgs),
    /// Modulus and generator of F_(p^k)
    FieldInfo(FieldArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Integer for k = 1, constant-first coefficients for k > 1
    #[arg(long)]
    lambda: String,
    #[arg(long, default_value_t = 1)]
    m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    WanMirror,
    FuWan,
    IsogenyN2,
}

impl Theorem {
    fn tag(self) -> &'static str {
        match self {
            Theorem::WanMirror => "wan-mirror",
            Theorem::FuWan => "fu-wan",
            Theorem::IsogenyN2 => "isogeny-n2",
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    lambda: String,
    #[arg(long, default_value_t = 2)]
    max_m: u32,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["lambda", "n1"]))]
struct ZetaArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    lambda: Option<String>,
    /// Use this N_1 instead of counting
    #[arg(long)]
    n1: Option<u64>,
}

#[derive(Args, Debug)]
struct NewtonArgs {
    /// Constant-first integer coefficients
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    coeffs: Vec<i128>,
    #[arg(long)]
    q: u64,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::TableCapExceeded { .. } | Error::FieldTooLarge { .. } => EXIT_CAP,
            Error::CharacteristicDividesDegree { .. }
            | Error::NonSplit { .. }
            | Error::NotDivisor { .. }
            | Error::HasseBound { .. } => EXIT_REFUSED,
            Error::NonIntegralBurnside { .. } | Error::NonIntegralCharacterSum => EXIT_THEOREM,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if informational {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if threads == 0 {
        let _ = writeln!(err, "error: --threads must be at least 1");
        return EXIT_USAGE;
    }
    let cfg = CountConfig { enumeration_cap: cli.cap, sequential: threads == 1, ..CountConfig::default() };
    let mut ctx = Context { cfg, cache_path: cli.cache.clone(), cache: None, log: Vec::new() };
    let result = if threads == 1 {
        dispatch(&cli.command, &mut ctx)
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &mut ctx)),
            Err(e) => Err(Failure::new(EXIT_USAGE, format!("cannot start {threads} threads: {e}"))),
        }
    };
    let _ = err.write_all(&ctx.log);
    match result {
        Ok(value) => finish(out, err, &value),
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn finish(out: &mut dyn Write, err: &mut dyn Write, value: &Value) -> i32 {
    // verify reports carry their own verdict
    let code = if value.get("verdict").and_then(Value::as_str) == Some("fail") { EXIT_THEOREM } else { EXIT_OK };
    if let Err(e) = writeln!(out, "{value}") {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}

struct Context {
    cfg: CountConfig,
    cache_path: PathBuf,
    cache: Option<CountCache>,
    /// Human-readable output, written to stderr once the command finishes.
    log: Vec<u8>,
}

impl Context {
    fn cache(&mut self) -> std::result::Result<&mut CountCache, Failure> {
        if self.cache.is_none() {
            self.cache = Some(CountCache::open(&self.cache_path)?);
        }
        Ok(self.cache.as_mut().expect("cache opened above"))
    }

    fn plain(&mut self, params: &DworkParams, m: u32) -> std::result::Result<u64, Failure> {
        let cfg = self.cfg.clone();
        let (count, hit) =
            self.cache()?.get_or_compute(CacheKey::new(params, m, &CountKind::Plain), || dwork::count_dwork(params, m, &cfg))?;
        log::info!("#X(F_q^{m}) = {count}{}", if hit { " (cached)" } else { "" });
        Ok(count)
    }

    fn quotient(&mut self, params: &DworkParams, m: u32) -> std::result::Result<u64, Failure> {
        let key = CacheKey::new(params, m, &CountKind::Quotient);
        if let Some(count) = self.cache()?.get(&key) {
            log::info!("#(X/G)(F_q^{m}) = {count} (cached)");
            return Ok(count);
        }
        let counter = dwork::TwistedCounter::new(params, m, &self.cfg)?;
        let mut counts = Vec::new();
        for g in group_elements(params.n()) {
            let cfg_key = CacheKey::new(params, m, &CountKind::Twisted(g.clone()));
            let (c, _) = self.cache()?.get_or_compute(cfg_key, || counter.count(&g))?;
            counts.push(c);
        }
        let count = dwork::burnside_reduce(&counts, group_order(params.n()))?;
        self.cache()?.insert(key, count)?;
        log::info!("#(X/G)(F_q^{m}) = {count}");
        Ok(count)
    }
}

fn dispatch(command: &Command, ctx: &mut Context) -> Outcome {
    match command {
        Command::Count(a) => {
            let params = parse_params(&a.family, &a.lambda)?;
            check_cap(params.n(), params.field().q() as u64, a.m, ctx.cfg.enumeration_cap, "--m")?;
            let count = ctx.plain(&params, a.m)?;
            Ok(json!({"q": params.field().q(), "m": a.m, "count": count}))
        }
        Command::QuotientCount(a) => {
            let params = parse_params(&a.family, &a.lambda)?;
            check_cap(params.n(), params.field().q() as u64, a.m, ctx.cfg.enumeration_cap, "--m")?;
            let count = ctx.quotient(&params, a.m)?;
            Ok(json!({"q": params.field().q(), "m": a.m, "count": count}))
        }
        Command::Verify(a) => verify(a, ctx),
        Command::ScanSmooth(a) => {
            let field = parse_field(&a.field)?;
            let smooth = dwork::smooth_parameters(a.n, &field)?;
            let values: Vec<Value> = smooth.iter().map(|&l| lambda_json(&field, l)).collect();
            let _ = writeln!(ctx.log, "{} of {} parameters give smooth members", values.len(), field.q());
            Ok(json!({"q": field.q(), "n": a.n, "smooth": values}))
        }
        Command::Zeta(a) => zeta(a, ctx),
        Command::Newton(a) => {
            let np = newton_polygon(&a.coeffs, a.q)?;
            let _ = writeln!(ctx.log, "slopes {np}");
            Ok(json!({"q": a.q, "polygon": np, "unit_roots": unit_root_count(&np)}))
        }
        Command::FieldInfo(a) => {
            let field = parse_field(a)?;
            let g = field.multiplicative_generator();
            Ok(json!({
                "p": field.p(),
                "k": field.k(),
                "q": field.q(),
                "modulus": field.descriptor().modulus,
                "generator": field.coeffs(g),
            }))
        }
    }
}

fn parse_field(a: &FieldArgs) -> std::result::Result<Field, Failure> {
    Ok(Field::new(a.p, a.k)?)
}

fn parse_lambda(field: &Field, text: &str) -> std::result::Result<FieldElement, Failure> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::new(EXIT_USAGE, format!("cannot parse lambda {text:?}")))?;
    let k = field.k() as usize;
    if parts.len() > k {
        return Err(Failure::new(EXIT_USAGE, format!("lambda has {} coefficients, F_{} needs at most {k}", parts.len(), field.q())));
    }
    if let Some(&bad) = parts.iter().find(|&&c| c >= field.p() as u64) {
        let what = if k == 1 { "lambda" } else { "lambda coefficient" };
        return Err(Failure::new(EXIT_USAGE, format!("{what} {bad} out of range for F_{}", field.p())));
    }
    let mut coeffs: Vec<u32> = parts.iter().map(|&c| c as u32).collect();
    coeffs.resize(k, 0);
    Ok(field.element(&coeffs)?)
}

fn parse_params(a: &FamilyArgs, lambda: &str) -> std::result::Result<DworkParams, Failure> {
    let field = parse_field(&a.field)?;
    let lambda = parse_lambda(&field, lambda)?;
    Ok(DworkParams::new(a.n, lambda, &field)?)
}

fn lambda_json(field: &Field, lambda: FieldElement) -> Value {
    if field.k() == 1 {
        json!(lambda.index())
    } else {
        json!(field.coeffs(lambda))
    }
}

fn check_cap(n: usize, q: u64, m: u32, cap: u64, flag: &str) -> std::result::Result<(), Failure> {
    let size = q.checked_pow(m).map(|qm| projective_size(n, qm));
    match size {
        Some(points) if points <= cap as u128 => Ok(()),
        _ => Err(Failure::new(
            EXIT_CAP,
            format!("P^{n}(F_{q}^{m}) has more than {cap} points; lower {flag} or raise --cap"),
        )),
    }
}

fn verify(a: &VerifyArgs, ctx: &mut Context) -> Outcome {
    let params = parse_params(&a.family, &a.lambda)?;
    let field = params.field().clone();
    let q = field.q() as u64;
    let n = params.n();
    if a.max_m < 1 {
        return Err(Failure::new(EXIT_USAGE, "--max-m must be at least 1"));
    }
    if a.theorem == Theorem::IsogenyN2 && n != 2 {
        return Err(Failure::new(EXIT_REFUSED, "isogeny-n2 applies to n = 2 only"));
    }
    if !dwork::is_smooth(&params) {
        return Err(Failure::new(
            EXIT_REFUSED,
            format!(
                "X_lambda is singular for lambda = {} (lambda^{d} = (-{d})^{d}); the theorems assume a smooth member, try scan-smooth",
                lambda_json(&field, params.lambda()),
                d = n + 1
            ),
        ));
    }
    if let Some(m) = (1..=a.max_m).find(|&m| (q.pow(m) - 1) % (n as u64 + 1) != 0) {
        return Err(Failure::new(
            EXIT_REFUSED,
            format!("{} does not divide q^{m} - 1 = {}; quotient counts need the split case", n + 1, q.pow(m) - 1),
        ));
    }
    check_cap(n, q, a.max_m, ctx.cfg.enumeration_cap, "--max-m")?;

    let mut x = Vec::new();
    let mut y = Vec::new();
    for m in 1..=a.max_m {
        x.push(ctx.plain(&params, m)?);
        y.push(ctx.quotient(&params, m)?);
    }
    let series_x = CountSeries::new(q, x.clone(), "X_lambda")?;
    let series_y = CountSeries::new(q, y.clone(), "X_lambda/G")?;
    let report = congruence_check(&series_x, &series_y)?;
    let exact: Vec<bool> = x.iter().zip(&y).map(|(a, b)| a == b).collect();
    let pass = match a.theorem {
        Theorem::IsogenyN2 => report.pass && exact.iter().all(|&e| e),
        _ => report.pass,
    };

    let _ = writeln!(ctx.log, "theorem {}: q = {q}, n = {n}, lambda = {}", a.theorem.tag(), lambda_json(&field, params.lambda()));
    let _ = writeln!(ctx.log, "{:>3} {:>14} {:>14} {:>16} {:>14} {:>14} {:>5}", "m", "#X", "#X/G", "q^m", "#X mod q^m", "#X/G mod q^m", "ok");
    for (row, &eq) in report.rows.iter().zip(&exact) {
        let ok = if a.theorem == Theorem::IsogenyN2 { row.pass && eq } else { row.pass };
        let _ = writeln!(
            ctx.log,
            "{:>3} {:>14} {:>14} {:>16} {:>14} {:>14} {:>5}",
            row.m, row.n_a, row.n_b, row.modulus, row.residue_a, row.residue_b, if ok { "yes" } else { "NO" }
        );
    }
    let _ = writeln!(ctx.log, "verdict: {}", if pass { "pass" } else { "fail" });

    let mut value = json!({
        "theorem": a.theorem.tag(),
        "p": field.p(),
        "k": field.k(),
        "q": q,
        "n": n,
        "lambda": lambda_json(&field, params.lambda()),
        "smooth": true,
        "series": [series_x, series_y],
        "report": report,
        "verdict": if pass { "pass" } else { "fail" },
    });
    if a.theorem == Theorem::IsogenyN2 {
        value["exact"] = json!(exact);
    }
    Ok(value)
}

fn zeta(a: &ZetaArgs, ctx: &mut Context) -> Outcome {
    if a.n != 2 {
        return Err(Failure::new(EXIT_USAGE, "zeta supports --n 2 only"));
    }
    let field = parse_field(&a.field)?;
    let q = field.q() as u64;
    let n1 = match (&a.lambda, a.n1) {
        (_, Some(n1)) => n1,
        (Some(text), None) => {
            let params = DworkParams::new(2, parse_lambda(&field, text)?, &field)?;
            if !dwork::is_smooth(&params) {
                return Err(Failure::new(EXIT_REFUSED, "singular member is not an elliptic curve"));
            }
            ctx.plain(&params, 1)?
        }
        (None, None) => return Err(Failure::new(EXIT_USAGE, "give --lambda or --n1")),
    };
    let e = elliptic_zeta(n1, q)?;
    let np = newton_polygon(&e.coeffs(), q)?;
    let _ = writeln!(ctx.log, "P(T) = 1 {:+}T {:+}T^2, slopes {np}", -e.a, q);
    Ok(json!({
        "q": q,
        "n1": n1,
        "a": e.a,
        "P": e.coeffs(),
        "polygon": np,
        "unit_roots": unit_root_count(&np),
        "predicted": e.predict_series(3),
    }))
}
