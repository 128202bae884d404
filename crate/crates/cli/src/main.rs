//! `prmc`: explore projective and generalized Reed–Muller codes over small
//! finite fields — build codes, enumerate weight spectra, evaluate the
//! classical point-count bounds, construct extremal hypersurfaces, and run
//! censuses of plane curves.
//!
//! Every subcommand emits JSON by default (`--format text` for prose,
//! `--format csv` for the two histogram payloads). Exit codes: 0 success,
//! 1 failed verification, 2 domain violation, 3 budget exceeded, 64 usage.

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use prmc_core::codes::{CodeMeta, SpectrumReport};
use prmc_core::extremal::{
    affine_type1, affine_type2, four_lines_general_position, hermitian_curve,
    hermitian_surface_cone, hyperbolic_quadric, line_plus_conic, near_pencil,
    pencil_of_lines, pencil_with_double_line, Construction,
};
use prmc_core::poly::zero_count;
use prmc_core::verify::run_all;
use prmc_core::{
    bound_table, build_code, census, classify, field_from_order, make_field, weight_spectrum,
    CensusMode, CodeKind, EnumOptions, Error, Field, Form, Space, SpectrumMode, Tier,
    DEFAULT_BUDGET,
};

#[derive(Debug, Parser)]
#[command(name = "prmc", version, about = "Reed-Muller codes and point counts over small fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output format; csv applies to histogram payloads only
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for parallel walks; 0 uses all cores
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Enumeration budget in visited messages; overrides PRMC_BUDGET
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print field parameters and the modulus polynomial
    Field {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Print code metadata: length, dimension, parameters
    Code {
        #[command(flatten)]
        field: FieldArgs,
        /// Code family
        #[arg(long, value_enum, default_value_t = KindArg::Prm)]
        kind: KindArg,
        /// Degree bound
        #[arg(long)]
        d: u32,
        /// Ambient dimension (projective P^m or affine A^m)
        #[arg(long)]
        m: u32,
    },
    /// Enumerate or sample the weight spectrum of a code
    Spectrum {
        #[command(flatten)]
        field: FieldArgs,
        /// Code family
        #[arg(long, value_enum, default_value_t = KindArg::Prm)]
        kind: KindArg,
        /// Degree bound
        #[arg(long)]
        d: u32,
        /// Ambient dimension
        #[arg(long)]
        m: u32,
        /// Enumeration strategy
        #[arg(long, value_enum, default_value_t = SpectrumModeArg::ExhaustiveUpToScalar)]
        mode: SpectrumModeArg,
        /// Sample count for --mode sampled
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// RNG seed for --mode sampled
        #[arg(long, default_value_t = 0xC0DE)]
        seed: u64,
    },
    /// Evaluate every point-count bound at (q, d, m)
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
        /// Hypersurface degree
        #[arg(long)]
        d: u64,
        /// Projective dimension
        #[arg(long)]
        m: u64,
    },
    /// Build a named extremal configuration and re-measure its point count
    Extremal {
        #[command(flatten)]
        field: FieldArgs,
        /// Which configuration to build
        #[arg(long, value_enum)]
        config: ConfigArg,
        /// Degree, where the configuration needs one
        #[arg(long)]
        d: Option<u64>,
        /// Ambient dimension, where the configuration varies in it
        #[arg(long)]
        m: Option<u32>,
    },
    /// Walk degree-d forms on P^m and report the top point counts
    Census {
        #[command(flatten)]
        field: FieldArgs,
        /// Form degree
        #[arg(long)]
        d: u32,
        /// Projective dimension
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Walk strategy
        #[arg(long, value_enum, default_value_t = CensusModeArg::Exhaustive)]
        mode: CensusModeArg,
        /// Sample count for --mode sampled
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// RNG seed for --mode sampled
        #[arg(long, default_value_t = 0xC0DE)]
        seed: u64,
        /// How many of the highest counts to report
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// Classify a serialized form: line content, tags, structural conditions
    Classify {
        /// Path to a JSON form, or - for stdin
        #[arg(long)]
        input: String,
    },
    /// Run the invariant suite; exits nonzero if any criterion fails
    Verify {
        /// How much of the suite to run
        #[arg(long, value_enum, default_value_t = LevelArg::Full)]
        level: LevelArg,
    },
}

/// Field selection: either `--q <order>` or `--p <char> --e <degree>`.
#[derive(Debug, Args)]
struct FieldArgs {
    /// Field order q = p^e
    #[arg(long, conflicts_with_all = ["p", "e"])]
    q: Option<u64>,
    /// Field characteristic (with --e)
    #[arg(long, requires = "e")]
    p: Option<u32>,
    /// Extension degree (with --p)
    #[arg(long, requires = "p")]
    e: Option<u32>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<Field, CliError> {
        match (self.q, self.p, self.e) {
            (Some(q), None, None) => Ok(field_from_order(q)?),
            (None, Some(p), Some(e)) => Ok(make_field(p, e)?),
            _ => Err(CliError::Usage(
                "specify a field with --q <order> or with --p <char> --e <degree>".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Prm,
    Grm,
}

impl From<KindArg> for CodeKind {
    fn from(k: KindArg) -> CodeKind {
        match k {
            KindArg::Prm => CodeKind::Prm,
            KindArg::Grm => CodeKind::Grm,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpectrumModeArg {
    ExhaustiveUpToScalar,
    ExhaustiveFull,
    Sampled,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CensusModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
    Long,
}

impl From<LevelArg> for Tier {
    fn from(l: LevelArg) -> Tier {
        match l {
            LevelArg::Quick => Tier::Quick,
            LevelArg::Full => Tier::Full,
            LevelArg::Long => Tier::Long,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConfigArg {
    /// d concurrent lines in the plane
    Pencil,
    /// d-1 concurrent lines plus a transversal
    NearPencil,
    /// Affine maximum: parallel hyperplane slices
    TypeI,
    /// Affine second maximum: a tilted slice through the stack
    TypeIi,
    /// d-1 concurrent lines with one doubled
    PencilDoubleLine,
    /// Hermitian curve, q a square
    Hermitian,
    /// Cone over the Hermitian curve, q a square
    HermitianSurfaceCone,
    /// Smooth hyperbolic quadric
    HyperbolicQuadric,
    /// A conic plus a chord
    LinePlusConic,
    /// Four lines, no three concurrent
    FourLines,
    /// d hyperplanes through a codimension-2 flat, m >= 3
    SerreHyperplanes,
}

enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(64),
            CliError::Core(Error::BudgetExceeded { .. }) => ExitCode::from(3),
            CliError::Core(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(s) => s.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap treats --help/--version as "errors" that exit 0.
            return match err.print() {
                Ok(()) if err.use_stderr() => ExitCode::from(64),
                Ok(()) => ExitCode::SUCCESS,
                Err(_) => ExitCode::from(64),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let opts = EnumOptions {
        budget: resolve_budget(cli.budget)?,
        workers: cli.workers,
    };
    let format = cli.format;
    match cli.cmd {
        Cmd::Field { field } => {
            let f = field.resolve()?;
            match format {
                Format::Json => print_json(&json!({
                    "q": f.q(),
                    "p": f.p(),
                    "e": f.e(),
                    "modulus": f.modulus(),
                })),
                Format::Text => println!(
                    "GF({}) = GF({}^{}), modulus {}",
                    f.q(),
                    f.p(),
                    f.e(),
                    fmt_modulus(f.modulus())
                ),
                Format::Csv => return Err(no_csv()),
            }
        }
        Cmd::Code { field, kind, d, m } => {
            let f = field.resolve()?;
            let code = build_code(kind.into(), &f, d, m)?;
            let meta = CodeMeta::of(&code);
            match format {
                Format::Json => print_json(&meta),
                Format::Text => println!(
                    "{:?}(q={}, d={}, m={}): length {}, dimension {}",
                    meta.kind, meta.q, meta.d, meta.m, meta.n, meta.k
                ),
                Format::Csv => return Err(no_csv()),
            }
        }
        Cmd::Spectrum { field, kind, d, m, mode, samples, seed } => {
            let f = field.resolve()?;
            let code = build_code(kind.into(), &f, d, m)?;
            let mode = match mode {
                SpectrumModeArg::ExhaustiveUpToScalar => SpectrumMode::ExhaustiveUpToScalar,
                SpectrumModeArg::ExhaustiveFull => SpectrumMode::ExhaustiveFull,
                SpectrumModeArg::Sampled => SpectrumMode::Sampled { n_samples: samples, seed },
            };
            let spectrum = weight_spectrum(&code, mode, &opts)?;
            let report = SpectrumReport::of(&code, &spectrum);
            match format {
                Format::Json => print_json(&report),
                Format::Csv => {
                    print!("{}", spectrum_csv(&report));
                }
                Format::Text => {
                    let meta = &report.code;
                    println!(
                        "{:?}(q={}, d={}, m={}) weight spectrum, n={}, k={}:",
                        meta.kind, meta.q, meta.d, meta.m, meta.n, meta.k
                    );
                    for (w, c) in &report.spectrum {
                        println!("  weight {w}: {c}");
                    }
                }
            }
        }
        Cmd::Bounds { field, d, m } => {
            let f = field.resolve()?;
            let table = bound_table(f.q() as u64, d, m);
            match format {
                Format::Json => print_json(&table),
                Format::Text => {
                    println!(
                        "bounds at q={}, d={}, m={} (P^{} has {} points)",
                        table.q, table.d, table.m, table.m, table.ambient
                    );
                    println!("  serre  {}", table.serre);
                    println!("  second {}", table.second);
                    if let Some(t) = table.third {
                        println!("  third  {t}");
                    }
                    for (name, b) in &table.details {
                        let mark = if b.valid { "" } else { "  [outside domain]" };
                        println!("  {name:<20} {}{mark}", b.value);
                    }
                }
                Format::Csv => return Err(no_csv()),
            }
        }
        Cmd::Extremal { field, config, d, m } => {
            let f = field.resolve()?;
            let c = build_config(&f, config, d, m)?;
            let space = match config {
                ConfigArg::TypeI | ConfigArg::TypeIi => Space::Affine,
                _ => Space::Projective,
            };
            let measured = zero_count(&c.form, space)?;
            match format {
                Format::Json => print_json(&json!({
                    "config_tag": c.config_tag,
                    "predicted_count": c.predicted_count,
                    "measured_count": measured,
                    "form": c.form,
                })),
                Format::Text => println!(
                    "{} over GF({}): predicted {}, measured {}\n  form: {}",
                    c.config_tag,
                    f.q(),
                    c.predicted_count,
                    measured,
                    fmt_form(&c.form)
                ),
                Format::Csv => return Err(no_csv()),
            }
        }
        Cmd::Census { field, d, m, mode, samples, seed, top } => {
            let f = field.resolve()?;
            let mode = match mode {
                CensusModeArg::Exhaustive => CensusMode::Exhaustive,
                CensusModeArg::Sampled => CensusMode::Sampled { n_samples: samples, seed },
            };
            let report = census(&f, d, m, mode, top, &opts)?;
            match format {
                Format::Json => print_json(&report),
                Format::Csv => print!("{}", report.to_csv()),
                Format::Text => {
                    println!("census of degree-{d} forms on P^{m} over GF({}):", f.q());
                    for entry in &report.top {
                        println!(
                            "  {} points: {} forms, e.g. {}",
                            entry.count,
                            entry.tally,
                            fmt_form(&entry.witness)
                        );
                    }
                    for check in &report.checks {
                        let mark = if check.ok { "respected" } else { "VIOLATED" };
                        println!("  bound {} = {}: {mark}", check.bound, check.value);
                    }
                }
            }
        }
        Cmd::Classify { input } => {
            let raw = read_input(&input)?;
            let form: Form = serde_json::from_str(&raw)
                .map_err(|e| CliError::Core(Error::Malformed(format!("form JSON: {e}"))))?;
            let classification = classify(&form)?;
            match format {
                Format::Json => print_json(&classification),
                Format::Text => {
                    println!(
                        "degree-{} form over GF({}), {} points: label {}",
                        classification.degree,
                        form.field().q(),
                        classification.points,
                        classification.label()
                    );
                    println!(
                        "  {} linear factors, residual degree {}",
                        classification.s, classification.linefree_degree
                    );
                    let tags: Vec<String> =
                        classification.tags.iter().map(|t| format!("{t:?}")).collect();
                    println!("  tags: [{}]", tags.join(", "));
                }
                Format::Csv => return Err(no_csv()),
            }
        }
        Cmd::Verify { level } => {
            let reports = run_all(Tier::from(level), &opts)?;
            let all_pass = reports.iter().all(|r| r.pass);
            match format {
                Format::Json => print_json(&reports),
                _ => {
                    for r in &reports {
                        println!("{}", r.line());
                    }
                }
            }
            if !all_pass {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("PRMC_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("PRMC_BUDGET must be a nonnegative integer, got {s:?}"))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn build_config(
    f: &Field,
    config: ConfigArg,
    d: Option<u64>,
    m: Option<u32>,
) -> Result<Construction, CliError> {
    let need_d = |d: Option<u64>| {
        d.ok_or_else(|| CliError::Usage("this configuration needs --d <degree>".into()))
    };
    Ok(match config {
        ConfigArg::Pencil => pencil_of_lines(f, need_d(d)?, m.unwrap_or(2))?,
        ConfigArg::SerreHyperplanes => pencil_of_lines(f, need_d(d)?, m.unwrap_or(3))?,
        ConfigArg::NearPencil => near_pencil(f, need_d(d)?)?,
        ConfigArg::TypeI => affine_type1(f, need_d(d)?, m.unwrap_or(2))?,
        ConfigArg::TypeIi => affine_type2(f, need_d(d)?, m.unwrap_or(2))?,
        ConfigArg::PencilDoubleLine => pencil_with_double_line(f, need_d(d)?)?,
        ConfigArg::Hermitian => hermitian_curve(f)?,
        ConfigArg::HermitianSurfaceCone => hermitian_surface_cone(f, m.unwrap_or(3))?,
        ConfigArg::HyperbolicQuadric => hyperbolic_quadric(f, m.unwrap_or(3))?,
        ConfigArg::LinePlusConic => line_plus_conic(f)?,
        ConfigArg::FourLines => four_lines_general_position(f)?,
    })
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report serialization is infallible")
    );
}

fn no_csv() -> CliError {
    CliError::Usage("csv output only applies to histogram payloads (spectrum, census)".into())
}

fn spectrum_csv(report: &SpectrumReport) -> String {
    let mut out = String::from("weight,count\n");
    for (w, c) in &report.spectrum {
        out.push_str(&format!("{w},{c}\n"));
    }
    out
}

/// Modulus polynomial in `t`, coefficients low degree first on input.
fn fmt_modulus(coeffs: &[u16]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        terms.push(match (c, deg) {
            (c, 0) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (c, 1) => format!("{c}t"),
            (1, _) => format!("t^{deg}"),
            (c, _) => format!("{c}t^{deg}"),
        });
    }
    terms.join(" + ")
}

/// A form as a sum of monomials; coefficients print by element encoding.
fn fmt_form(form: &Form) -> String {
    let mut terms = Vec::new();
    for (mono, c) in form.basis().iter().zip(form.coeffs()) {
        if c.is_zero() {
            continue;
        }
        let mut vars = String::new();
        for (i, &e) in mono.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => vars.push_str(&format!("x{i}")),
                _ => vars.push_str(&format!("x{i}^{e}")),
            }
        }
        terms.push(if vars.is_empty() {
            format!("{}", c.value())
        } else if c.value() == 1 {
            vars
        } else {
            format!("{}{vars}", c.value())
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
