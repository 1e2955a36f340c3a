//! Command-line front end. Exit codes: 0 pass, 1 verdict failure, 2 invalid input.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::census::{counting_check, euler_cross_check, Outcome};
use crate::cliffordlab::{
    check_size, eta_scaling, kernel_and_parity, model_l, run_checks, spectrum_scaling,
    verify_square, CheckKind, CliffordError, Field, Mode,
};
use crate::complexes::{betti, cone};
use crate::files::{load_census, load_matrix, load_model, parse_ts, PreparedModel};
use crate::qlinalg::{format_rational, Rational, SparseMat};
use crate::suite::{run_all, CRITERIA};

pub use report::{ModelInfo, OscillatorSection, Report};

#[derive(Parser, Debug)]
#[command(
    name = "symsemi",
    version,
    about = "Symplectic semi-characteristics of finite cochain models"
)]
pub struct Cli {
    /// Arithmetic for operator computations.
    #[arg(long, env = "SYMSEMI_MODE", default_value = "exact", global = true)]
    pub mode: Mode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Checks {
    Car,
    Star,
    Omega,
    ComplexStructure,
    All,
}

impl From<Checks> for CheckKind {
    fn from(c: Checks) -> Self {
        match c {
            Checks::Car => CheckKind::Car,
            Checks::Star => CheckKind::Star,
            Checks::Omega => CheckKind::Omega,
            Checks::ComplexStructure => CheckKind::ComplexStructure,
            Checks::All => CheckKind::All,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cone Betti numbers, χ and k(M,ω) of a model (`builtin:NAME` or a JSON file).
    Compute {
        model: String,
        /// Use the cone of ω^(p+1).
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long)]
        allow_degenerate: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare k(M,ω) with a zero census.
    Verify {
        model: String,
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        allow_degenerate: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Clifford-algebra identities on the exterior algebra of R^(4n).
    Clifford {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        checks: Checks,
        /// Random unit vectors for the complex-structure check.
        #[arg(long, default_value_t = 10)]
        vectors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Model oscillator for a linearization matrix A.
    Oscillator {
        /// Rows file, `identity:N` or `diag:a,b,...`.
        #[arg(long)]
        matrix: String,
        #[arg(long = "T", value_delimiter = ',', num_args = 1.., default_values = ["1", "4", "16"])]
        t: Vec<String>,
        #[arg(long, default_value_t = 2)]
        degree_cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run every acceptance criterion.
    Suite {
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: Output,
    },
}

struct Invalid(String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.to_string())
    }
}

fn model_info(p: &PreparedModel) -> ModelInfo {
    ModelInfo {
        name: p.name.clone(),
        manifold_dim: p.manifold_dim,
        dims: p.complex.dims().to_vec(),
        omega: p.omega_terms.clone(),
        symplectic: p.symplectic.clone(),
    }
}

fn prepare(
    input: &str,
    allow_degenerate: bool,
    report: &mut Report,
) -> Result<PreparedModel, Invalid> {
    let model = load_model(input)?;
    report.model = Some(model_info(&model));
    if !model.symplectic.closed {
        return Err(Invalid(format!(
            "ω is not closed: dω = {}",
            model.symplectic.d_omega
        )));
    }
    if !model.symplectic.nondegenerate && !allow_degenerate {
        return Err(Invalid(
            "ω is degenerate (ω^n = 0); pass --allow-degenerate to continue".into(),
        ));
    }
    Ok(model)
}

fn fill_cone(model: &PreparedModel, p: usize, report: &mut Report) -> Result<(), Invalid> {
    let c = cone(&model.complex, &model.omega, p)?;
    let b = betti(&c);
    report.p = Some(p);
    report.chi = Some(b.euler_characteristic());
    report.k = Some(b.semi_characteristic());
    let dim = model.manifold_dim;
    report.flags.push(match dim % 4 {
        0 => "dim ≡ 0 mod 4: counting formula applies".to_string(),
        2 => "dim ≡ 2 mod 4: k is informational, counting formula not applicable".to_string(),
        _ => format!("odd manifold dimension {dim}"),
    });
    report.flags.push(if b.is_palindromic() {
        "duality observed: b_k = b_(top+1-k)".to_string()
    } else {
        "no palindromic duality".to_string()
    });
    report.cone_betti = Some(b);
    Ok(())
}

fn compute(input: &str, p: usize, allow: bool, report: &mut Report) -> Result<(), Invalid> {
    let model = prepare(input, allow, report)?;
    fill_cone(&model, p, report)?;
    report.passed = report.chi == Some(0);
    Ok(())
}

fn verify(
    input: &str,
    census: &std::path::Path,
    allow: bool,
    report: &mut Report,
) -> Result<(), Invalid> {
    let model = prepare(input, allow, report)?;
    let census = load_census(census)?;
    fill_cone(&model, 0, report)?;
    let k = report.k.expect("filled");
    let v = counting_check(k, &census, model.manifold_dim)?;
    let mut passed = v.outcome != Outcome::Fail && report.chi == Some(0);
    if v.outcome == Outcome::NotApplicable {
        report.warnings.push(v.note.clone());
    }
    if census.nonvanishing || census.zeros.iter().all(|z| z.det_sign.value().is_some()) {
        let chi = betti(&model.complex).euler_characteristic();
        let e = euler_cross_check(&census, chi)?;
        passed &= e.outcome == Outcome::Pass;
        report.euler = Some(e);
    }
    report.counting = Some(v);
    report.passed = passed;
    Ok(())
}

fn clifford(
    n: usize,
    checks: Checks,
    vectors: usize,
    seed: u64,
    report: &mut Report,
) -> Result<(), Invalid> {
    use rand::SeedableRng;
    if n == 0 {
        return Err(Invalid("--n must be positive".into()));
    }
    check_size(4 * n, report.mode)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let results = match report.mode {
        Mode::Exact => run_checks::<Rational, _>(n, checks.into(), vectors, &mut rng)?,
        Mode::Float => run_checks::<f64, _>(n, checks.into(), vectors, &mut rng)?,
    };
    report.passed = results.iter().all(|c| c.passed);
    report.clifford = results;
    Ok(())
}

fn oscillator_in<F: Field>(
    a: &SparseMat,
    ts: &[Rational],
    cap: usize,
) -> Result<OscillatorSection, CliffordError> {
    let op = model_l::<F>(a, &ts[0])?;
    let (kernel, _) = kernel_and_parity(&op, 1)?;
    let square_identity = verify_square(&op, 1)?;
    let spectrum = spectrum_scaling::<F>(a, ts, cap)?;
    let eta = eta_scaling::<F>(a, ts)?;
    Ok(OscillatorSection {
        matrix: a
            .to_dense()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect(),
        det_sign: op.det_sign,
        kernel,
        square_identity,
        spectrum,
        eta,
    })
}

fn oscillator(matrix: &str, t: &[String], cap: usize, report: &mut Report) -> Result<(), Invalid> {
    let a = load_matrix(matrix)?;
    let ts = parse_ts(t)?;
    if ts.is_empty() {
        return Err(Invalid("no T values".into()));
    }
    let section = match report.mode {
        Mode::Exact => match oscillator_in::<Rational>(&a, &ts, cap) {
            Err(CliffordError::NoRationalRoot) => {
                report
                    .warnings
                    .push("AᵗA has no rational square root; fell back to float mode".into());
                report.mode = Mode::Float;
                oscillator_in::<f64>(&a, &ts, cap)?
            }
            other => other?,
        },
        Mode::Float => oscillator_in::<f64>(&a, &ts, cap)?,
    };
    report.passed = section.kernel.passed
        && section.square_identity.passed
        && section.spectrum.passed
        && section.eta.passed;
    if section.eta.eta_zero {
        report.warnings.push("η vanished; C1 reported as 0".into());
    }
    report.oscillator = Some(section);
    Ok(())
}

fn emit(report: &Report, output: &Output, stdout: &mut dyn Write) -> Result<(), Invalid> {
    let text = match output.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Invalid(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(Invalid::from),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    let name = match &cli.command {
        Command::Compute { .. } => "compute",
        Command::Verify { .. } => "verify",
        Command::Clifford { .. } => "clifford",
        Command::Oscillator { .. } => "oscillator",
        Command::Suite { .. } => "suite",
    };
    let mut report = Report::new(name, cli.mode);
    let (result, output) = match &cli.command {
        Command::Compute {
            model,
            p,
            allow_degenerate,
            output,
        } => (compute(model, *p, *allow_degenerate, &mut report), output),
        Command::Verify {
            model,
            census,
            allow_degenerate,
            output,
        } => (
            verify(model, census, *allow_degenerate, &mut report),
            output,
        ),
        Command::Clifford {
            n,
            checks,
            vectors,
            seed,
            output,
        } => (clifford(*n, *checks, *vectors, *seed, &mut report), output),
        Command::Oscillator {
            matrix,
            t,
            degree_cap,
            output,
        } => (oscillator(matrix, t, *degree_cap, &mut report), output),
        Command::Suite { list, output } => {
            if *list {
                for (id, title) in CRITERIA {
                    let _ = writeln!(stdout, "{id:>2}  {title}");
                }
                return 0;
            }
            report.suite = run_all(cli.mode);
            report.passed = report.suite.iter().all(|c| c.passed);
            (Ok(()), output)
        }
    };
    if let Err(Invalid(msg)) = result {
        let _ = writeln!(stderr, "error: {msg}");
        return 2;
    }
    report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    if let Err(Invalid(msg)) = emit(&report, output, stdout) {
        let _ = writeln!(stderr, "error: {msg}");
        return 2;
    }
    for w in &report.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    if report.passed {
        0
    } else {
        1
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_from(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}
