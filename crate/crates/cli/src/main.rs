use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use superint_cli::sample::{grid, WaveFunction};
use superint_core::compat::compatibility_ledger;
use superint_core::operators::{EnergySign, Model, XiPairing};
use superint_core::orthopoly::{laguerre, little_jacobi};
use superint_core::rational::{int, parse_rational, to_exact_string, Params, Rational};
use superint_core::report::{Bounds, Status};
use superint_core::spectrum::{multiplets, radial_exponent, signed_eigenvalue};
use superint_core::suites::{default_grid, run_report, Suite, SuiteOptions};
use superint_core::symmetry::{structure_diff, structure_polynomials, StructureGrid, XiSystem};

#[derive(Parser, Debug)]
#[command(name = "superint", version, about = "Exact verification of superintegrable Hamiltonians with reflections")]
struct Cli {
    /// TOML file whose keys mirror the flags; flags win on conflict.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate energies and multiplets.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite and emit a JSON report.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Coulomb coupling for the ccm suite.
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the ledger of printed formulas against implemented ones.
    Compat {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample a wave function on a polar grid as CSV.
    Sample {
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 3.0)]
        r_max: f64,
        #[arg(long, default_value_t = 10)]
        r_points: usize,
        #[arg(long, default_value_t = 10)]
        theta_points: usize,
        /// Also report the numerical norm on stderr.
        #[arg(long)]
        norm: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump the coefficients of P_n and of L_m^{k|a_n|}.
    Poly {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Angular index fixing the Laguerre parameter k|a_n|.
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump the structure polynomials of the symmetry algebra.
    Algebra {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    omega: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct BoundArgs {
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

/// Optional configuration file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct Config {
    k: Option<String>,
    alpha: Option<String>,
    beta: Option<String>,
    omega: Option<String>,
    m_max: Option<usize>,
    n_max: Option<usize>,
    suite: Option<String>,
    g: Option<String>,
    format: Option<Format>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(anyhow::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn rational_flag(name: &str, value: &str) -> Result<Rational, Failure> {
    parse_rational(value).map_err(|e| usage(format!("--{name}: {e}")))
}

impl ParamArgs {
    fn merged(&self, cfg: &Config) -> ParamArgs {
        ParamArgs {
            k: self.k.clone().or_else(|| cfg.k.clone()),
            alpha: self.alpha.clone().or_else(|| cfg.alpha.clone()),
            beta: self.beta.clone().or_else(|| cfg.beta.clone()),
            omega: self.omega.clone().or_else(|| cfg.omega.clone()),
        }
    }

    fn is_empty(&self) -> bool {
        self.k.is_none() && self.alpha.is_none() && self.beta.is_none() && self.omega.is_none()
    }

    /// One parameter set; unspecified values default to `k = 1`,
    /// `alpha = beta = 0`, `omega = 1`.
    fn resolve(&self) -> Result<Params, Failure> {
        let get = |name: &str, v: &Option<String>, default: &str| rational_flag(name, v.as_deref().unwrap_or(default));
        Params::new(
            get("k", &self.k, "1")?,
            get("alpha", &self.alpha, "0")?,
            get("beta", &self.beta, "0")?,
            get("omega", &self.omega, "1")?,
        )
        .map_err(|e| usage(e.to_string()))
    }
}

impl BoundArgs {
    fn resolve(&self, cfg: &Config) -> Bounds {
        let d = Bounds::default();
        Bounds {
            m_max: self.m_max.or(cfg.m_max).unwrap_or(d.m_max),
            n_max: self.n_max.or(cfg.n_max).unwrap_or(d.n_max),
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))
        .map_err(Failure::Io)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| Failure::Io(anyhow::Error::new(e.error).context(format!("cannot write {}", path.display()))))?;
    Ok(())
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_text<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String, Failure> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(|e| Failure::Io(e.into()))?;
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Io(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(anyhow::anyhow!(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

#[derive(Serialize)]
struct SpectrumRow {
    m: usize,
    n: usize,
    a_n: String,
    gamma: String,
    energy: String,
    multiplet: usize,
}

fn cmd_spectrum(params: &Params, b: &Bounds, format: Format, output: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    let mut rows = Vec::new();
    for (id, level) in multiplets(params, b.m_max, b.n_max).into_iter().enumerate() {
        for (m, n) in level.members {
            rows.push(SpectrumRow {
                m,
                n,
                a_n: to_exact_string(&signed_eigenvalue(n, params)),
                gamma: to_exact_string(&radial_exponent(n, params)),
                energy: to_exact_string(&level.value),
                multiplet: id,
            });
        }
    }
    let text = match format {
        Format::Json => json(&rows),
        Format::Csv => csv_text(&rows, &["m", "n", "a_n", "gamma", "energy", "multiplet"])?,
    };
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: Suite, params: Vec<Params>, opts: SuiteOptions, output: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    let report = run_report(suite, &params, &opts);
    emit(output, &json(&report))?;
    let (pass, fail, dev) = (report.count(Status::Pass), report.count(Status::Fail), report.count(Status::DeviationDocumented));
    eprintln!("{pass} passed, {fail} failed, {dev} documented deviations");
    for c in report.checks.iter().filter(|c| c.status == Status::Fail) {
        eprintln!("FAIL {}: {}", c.id, c.details);
    }
    Ok(if report.has_failures() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

#[derive(Serialize)]
struct CompatRow<'a> {
    id: &'a str,
    paper_location: &'a str,
    printed_form: &'a str,
    implemented_form: &'a str,
    oracle: &'a str,
    status: &'a str,
    details: &'a str,
}

fn cmd_compat(params: &Params, format: Format, output: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    let ledger = compatibility_ledger(params);
    let text = match format {
        Format::Json => json(&ledger),
        Format::Csv => {
            let statuses: Vec<String> = ledger
                .iter()
                .map(|e| serde_json::to_value(e.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default())
                .collect();
            let rows: Vec<CompatRow> = ledger
                .iter()
                .zip(&statuses)
                .map(|(e, s)| CompatRow {
                    id: &e.id,
                    paper_location: &e.paper_location,
                    printed_form: &e.printed_form,
                    implemented_form: &e.implemented_form,
                    oracle: &e.oracle,
                    status: s,
                    details: &e.details,
                })
                .collect();
            csv_text(&rows, &["id", "paper_location", "printed_form", "implemented_form", "oracle", "status", "details"])?
        }
    };
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    m: usize,
    n: usize,
    params: &Params,
    r_max: f64,
    r_points: usize,
    theta_points: usize,
    norm: bool,
    output: &Option<PathBuf>,
) -> Result<ExitCode, Failure> {
    if !(r_max > 0.0) || r_points == 0 || theta_points == 0 {
        return Err(usage("the sampling grid must be nonempty with r-max > 0"));
    }
    let wf = WaveFunction::new(m, n, params).map_err(|e| usage(e.to_string()))?;
    let k = superint_core::rational::to_f64(&params.k());
    let mut rows = Vec::new();
    for (r, theta) in grid(r_max, r_points, k, theta_points) {
        match wf.sample(r, theta) {
            Ok(p) => rows.push(p),
            Err(e) => {
                eprintln!("{e}");
                return Ok(ExitCode::from(1));
            }
        }
    }
    if norm {
        eprintln!("norm = {:.12}", wf.norm_squared());
    }
    emit(output, &csv_text(&rows, &["r", "theta", "psi", "psi_gauged", "rel_error"])?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PolyDump {
    params: Params,
    jacobi: Vec<PolyEntry>,
    laguerre: Vec<PolyEntry>,
}

#[derive(Serialize)]
struct PolyEntry {
    degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<String>,
    /// Coefficients from the constant term upwards.
    coeffs: Vec<String>,
}

fn coeff_strings(p: &superint_core::poly::Poly) -> Vec<String> {
    p.coeffs().iter().map(to_exact_string).collect()
}

fn cmd_poly(params: &Params, b: &Bounds, n: usize, output: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    let (a, be) = (params.alpha(), params.beta());
    let jacobi = (0..=b.n_max)
        .map(|d| {
            let p = little_jacobi(d, a, be).map_err(|e| usage(e.to_string()))?;
            Ok(PolyEntry { degree: d, gamma: None, coeffs: coeff_strings(&p) })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let gamma = radial_exponent(n, params);
    let laguerre = (0..=b.m_max)
        .map(|d| {
            let p = laguerre(d, &gamma).map_err(|e| usage(e.to_string()))?;
            Ok(PolyEntry { degree: d, gamma: Some(to_exact_string(&gamma)), coeffs: coeff_strings(&p) })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    emit(output, &json(&PolyDump { params: params.clone(), jacobi, laguerre }))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AlgebraDump {
    params: Params,
    commutator: String,
    commutator_terms: Vec<superint_core::bipoly::BiTerm>,
    anticommutator: String,
    anticommutator_terms: Vec<superint_core::bipoly::BiTerm>,
    degree_h: [Option<usize>; 2],
    degree_q: [Option<usize>; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    printed_diff: Option<[Vec<String>; 2]>,
    checks: Vec<superint_core::report::Check>,
}

fn cmd_algebra(params: &Params, output: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    let model = Model::new(params.clone());
    let sys = XiSystem::new(&model, XiPairing::Corrected, EnergySign::Corrected);
    let r = structure_polynomials(&sys, StructureGrid::default_for(params)).map_err(|e| usage(e.to_string()))?;
    let printed_diff = (params.k() == int(1)).then(|| {
        [
            structure_diff(&r.commutator, &superint_core::symmetry::printed_commutator_k1(params)),
            structure_diff(&r.anticommutator, &superint_core::symmetry::printed_anticommutator_k1(params)),
        ]
    });
    let failed = r.checks.iter().any(|c| c.status == Status::Fail);
    let dump = AlgebraDump {
        params: params.clone(),
        commutator: r.commutator.to_string(),
        commutator_terms: r.commutator.to_terms(),
        anticommutator: r.anticommutator.to_string(),
        anticommutator_terms: r.anticommutator.to_terms(),
        degree_h: [r.commutator.degree_x(), r.anticommutator.degree_x()],
        degree_q: [r.commutator.degree_y(), r.anticommutator.degree_y()],
        printed_diff,
        checks: r.checks,
    };
    emit(output, &json(&dump))?;
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn half() -> Rational {
    parse_rational("1/2").expect("literal")
}

fn load_config(path: &Option<PathBuf>) -> Result<Config, Failure> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Io)?;
    toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let cfg = load_config(&cli.config)?;
    let format_of = |f: Option<Format>, default| f.or(cfg.format).unwrap_or(default);
    match cli.command {
        Command::Spectrum { params, bounds, format, output } => {
            let p = params.merged(&cfg).resolve()?;
            cmd_spectrum(&p, &bounds.resolve(&cfg), format_of(format, Format::Json), &output)
        }
        Command::Verify { suite, params, bounds, g, output } => {
            let suite: Suite = suite
                .or_else(|| cfg.suite.clone())
                .unwrap_or_else(|| "all".into())
                .parse()
                .map_err(usage)?;
            let merged = params.merged(&cfg);
            let sets = if merged.is_empty() { default_grid() } else { vec![merged.resolve()?] };
            let g = match g.or_else(|| cfg.g.clone()) {
                Some(v) => rational_flag("g", &v)?,
                None => int(1),
            };
            if g == int(0) {
                return Err(usage("--g must be nonzero"));
            }
            cmd_verify(suite, sets, SuiteOptions { bounds: bounds.resolve(&cfg), g }, &output)
        }
        Command::Compat { params, format, output } => {
            let merged = params.merged(&cfg);
            let p = if merged.is_empty() {
                Params::new(int(2), half(), half(), int(1))
                    .expect("valid parameters")
            } else {
                merged.resolve()?
            };
            cmd_compat(&p, format_of(format, Format::Json), &output)
        }
        Command::Sample { m, n, params, r_max, r_points, theta_points, norm, output } => {
            let p = params.merged(&cfg).resolve()?;
            cmd_sample(m, n, &p, r_max, r_points, theta_points, norm, &output)
        }
        Command::Poly { params, bounds, n, output } => {
            let p = params.merged(&cfg).resolve()?;
            cmd_poly(&p, &bounds.resolve(&cfg), n, &output)
        }
        Command::Algebra { params, output } => {
            let p = params.merged(&cfg).resolve()?;
            cmd_algebra(&p, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
