//! Command-line front end.
//!
//! Exit codes: 0 success, 2 unreadable or invalid input, 3 a mathematical
//! rejection (the error name is printed), 4 an I/O failure.

pub mod number;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::AlgebraElement;
use crate::applications::{
    expectation_module_frame, magic_sum, ConditionalExpectation, ExpectationKind,
};
use crate::dilation::{
    classify_equivalence, complement_frame, riesz_dilation, similarity_projection,
};
use crate::error::Error;
use crate::frame::{
    canonical_dual, classify_frame_with, dual_pair_residual, frame_bounds, is_dual_pair_with,
    tighten, FrameAnalysis, ModuleFrame,
};
use crate::module::ProjectiveModule;
use crate::oracle::{random_instance, Limits};
use crate::tol;
use problem::{InputError, ProblemFile};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "cstar-frames",
    version,
    about = "Frames of Hilbert C*-modules over finite-dimensional C*-algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Classification tolerance.
    #[arg(long, global = true, default_value_t = tol::DEFAULT)]
    tol: f64,

    /// Seed for generator-backed commands.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Where to write a resulting problem file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FrameArgs {
    file: PathBuf,
    #[arg(long)]
    frame: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    NormalizedTrace,
    UnnormalizedTrace,
    Diagonal,
}

impl From<Kind> for ExpectationKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::NormalizedTrace => ExpectationKind::NormalizedTrace,
            Kind::UnnormalizedTrace => ExpectationKind::UnnormalizedTrace,
            Kind::Diagonal => ExpectationKind::Diagonal,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal bounds and every classification flag.
    Analyze(FrameArgs),
    /// Canonical dual frame.
    Dual(FrameArgs),
    /// Normalized tight frame with the same range.
    Tighten(FrameArgs),
    /// Complement to an orthonormal basis, or a Riesz basis for non-tight input.
    Dilate(FrameArgs),
    /// Compare two frames by their range projections.
    Equiv {
        file: PathBuf,
        #[arg(long)]
        frame: String,
        #[arg(long)]
        with: String,
        /// Read the second frame from this file instead.
        #[arg(long)]
        with_file: Option<PathBuf>,
    },
    /// Pointwise ranks from a normalized tight frame over a commutative algebra.
    Magic(FrameArgs),
    /// Quasi-basis of a conditional expectation of M_n.
    Expectation {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
    /// Random problem file.
    Generate {
        #[arg(long, default_value_t = 3)]
        max_blocks: usize,
        #[arg(long, default_value_t = 3)]
        max_block_dim: usize,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 6)]
        max_frame_size: usize,
    },
}

enum Failure {
    Input(String),
    Math(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

fn input(path: &Path, e: InputError) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        let _ = writeln!(stderr, "error: --tol must be a positive number");
        return EXIT_INPUT;
    }
    match execute(&cli) {
        Ok(Output::Report(r)) => {
            let text = if cli.json { r.to_json() } else { r.to_text() };
            match stdout.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(_) => EXIT_IO,
            }
        }
        Ok(Output::Raw(s)) => match stdout.write_all(s.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_IO,
        },
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", e.name());
            EXIT_MATH
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_IO
        }
    }
}

enum Output {
    Report(Report),
    Raw(String),
}

fn load(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    ProblemFile::parse(&text).map_err(|e| input(path, e))
}

fn load_frame(path: &Path, name: &str) -> Result<(ProblemFile, ModuleFrame), Failure> {
    let p = load(path)?;
    let f = p.frame(name).map_err(|e| input(path, e))?;
    Ok((p, f))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn save(path: &Path, p: &ProblemFile) -> Result<(), Failure> {
    std::fs::write(path, p.write()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn header(command: &str, args: &FrameArgs) -> Report {
    let mut r = Report::new(command);
    r.text("input", &file_name(&args.file))
        .text("frame", &args.frame);
    r
}

fn max_distance(a: &ModuleFrame, b: &ModuleFrame) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for (x, y) in a.elements().iter().zip(b.elements()) {
        worst = worst.max(x.distance(y)?);
    }
    Ok(worst)
}

fn push_flags(r: &mut Report, a: &FrameAnalysis) {
    r.real("lower_bound", a.lower_bound)
        .real("upper_bound", a.upper_bound)
        .flag("is_frame", a.is_frame)
        .flag("is_tight", a.is_tight)
        .flag("is_normalized_tight", a.is_normalized_tight)
        .flag("is_orthogonal", a.is_orthogonal)
        .flag(
            "inner_products_are_projections",
            a.inner_products_are_projections,
        )
        .flag("is_riesz_basis", a.is_riesz_basis)
        .flag("is_orthonormal_basis", a.is_orthonormal_basis);
}

fn require_frame(a: &FrameAnalysis) -> Result<(), Failure> {
    if a.is_frame {
        Ok(())
    } else {
        Err(Failure::Math(Error::NotAFrame {
            lower_bound: a.lower_bound,
        }))
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let tol = cli.tol;
    match &cli.command {
        Command::Analyze(args) => {
            let (_, f) = load_frame(&args.file, &args.frame)?;
            let a = classify_frame_with(&f, tol)?;
            require_frame(&a)?;
            let mut r = header("analyze", args);
            r.text("algebra", &f.module().spec().to_string())
                .int("ambient_rank", f.module().ambient_rank())
                .ints("module_ranks", f.module().block_ranks())
                .int("elements", f.len());
            push_flags(&mut r, &a);
            if a.is_normalized_tight {
                let one = AlgebraElement::one(f.module().spec());
                let mut bounded = true;
                for x in f.elements() {
                    bounded &= x.inner(x)?.le(&one, tol)?;
                }
                r.flag("inner_products_at_most_one", bounded);
            }
            Ok(Output::Report(r))
        }
        Command::Dual(args) => {
            let (p, f) = load_frame(&args.file, &args.frame)?;
            let dual = canonical_dual(&f)?;
            let bidual = canonical_dual(&dual)?;
            let b = frame_bounds(&dual)?;
            let mut r = header("dual", args);
            r.int("elements", dual.len())
                .real("lower_bound", b.lower)
                .real("upper_bound", b.upper)
                .flag("is_dual_pair", is_dual_pair_with(&f, &dual, tol)?)
                .real("dual_pair_residual", dual_pair_residual(&f, &dual)?)
                .real("bidual_error", max_distance(&f, &bidual)?)
                .real("max_distance_to_input", max_distance(&f, &dual)?);
            write_frame(cli, &mut r, &p, &format!("{}_dual", args.frame), &dual)?;
            Ok(Output::Report(r))
        }
        Command::Tighten(args) => {
            let (p, f) = load_frame(&args.file, &args.frame)?;
            let before = frame_bounds(&f)?;
            let t = tighten(&f)?;
            let a = classify_frame_with(&t, tol)?;
            let mut r = header("tighten", args);
            r.int("elements", t.len())
                .real("lower_bound_before", before.lower)
                .real("upper_bound_before", before.upper)
                .real("lower_bound", a.lower_bound)
                .real("upper_bound", a.upper_bound)
                .flag("is_normalized_tight", a.is_normalized_tight)
                .real("max_distance_to_input", max_distance(&f, &t)?);
            write_frame(cli, &mut r, &p, &format!("{}_tight", args.frame), &t)?;
            Ok(Output::Report(r))
        }
        Command::Dilate(args) => {
            let (_, f) = load_frame(&args.file, &args.frame)?;
            let a = classify_frame_with(&f, tol)?;
            require_frame(&a)?;
            let (mode, d) = if a.is_normalized_tight {
                ("complement", complement_frame(&f)?)
            } else {
                ("riesz", riesz_dilation(&f)?)
            };
            let c = classify_frame_with(&d.combined, tol)?;
            let mut r = header("dilate", args);
            r.text("mode", mode)
                .int("elements", f.len())
                .int("combined_ambient_rank", d.combined.module().ambient_rank())
                .ints(
                    "complement_module_ranks",
                    d.complement.module().block_ranks(),
                )
                .real("lower_bound", a.lower_bound)
                .real("upper_bound", a.upper_bound)
                .real("combined_lower_bound", c.lower_bound)
                .real("combined_upper_bound", c.upper_bound)
                .flag("combined_is_riesz_basis", c.is_riesz_basis)
                .flag("combined_is_orthonormal_basis", c.is_orthonormal_basis)
                .real("gram_residual", d.gram_residual);
            if let Some(out) = &cli.out {
                let file = ProblemFile::new(d.combined.module().clone())
                    .with_frame(&format!("{}_dilated", args.frame), &d.combined);
                save(out, &file)?;
                r.text("written", &file_name(out));
            }
            Ok(Output::Report(r))
        }
        Command::Equiv {
            file,
            frame,
            with,
            with_file,
        } => {
            let (_, f) = load_frame(file, frame)?;
            let other_path = with_file.as_deref().unwrap_or(file);
            let (_, g) = load_frame(other_path, with)?;
            let relation = classify_equivalence(&f, &g)?;
            let pf = ProjectiveModule::new(similarity_projection(&f)?, tol::PROJECTION_EQUALITY)?;
            let pg = ProjectiveModule::new(similarity_projection(&g)?, tol::PROJECTION_EQUALITY)?;
            let mut r = Report::new("equiv");
            r.text("input", &file_name(file)).text("frame", frame);
            if let Some(w) = with_file {
                r.text("with_input", &file_name(w));
            }
            r.text("with", with)
                .text("relation", relation.label())
                .ints("frame_projection_ranks", pf.block_ranks())
                .real("frame_projection_trace", trace(&pf))
                .ints("with_projection_ranks", pg.block_ranks())
                .real("with_projection_trace", trace(&pg))
                .real(
                    "projection_distance",
                    pf.projection().distance(pg.projection())?,
                );
            Ok(Output::Report(r))
        }
        Command::Magic(args) => {
            let (_, f) = load_frame(&args.file, &args.frame)?;
            let ranks = magic_sum(&f)?;
            let mut r = header("magic", args);
            r.ints("magic", ranks)
                .ints("module_ranks", f.module().block_ranks());
            Ok(Output::Report(r))
        }
        Command::Expectation { kind, n } => {
            let e = ConditionalExpectation::new((*kind).into(), *n)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let ef = expectation_module_frame(&e)?;
            let a = classify_frame_with(&ef.frame, tol)?;
            let scale = ef.quasi_basis.u[0]
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            let units: Vec<String> = (0..n * n)
                .map(|k| format!("e{},{}", k / n + 1, k % n + 1))
                .collect();
            let mut r = Report::new("expectation");
            r.text("kind", e.kind.name())
                .int("n", *n)
                .text("algebra", &e.range_spec().to_string())
                .int("quasi_basis_size", ef.quasi_basis.u.len())
                .text("quasi_basis", &units.join(" "))
                .real("unit_scale", scale)
                .real("identity_residual", ef.quasi_basis.residual)
                .real("lower_bound", a.lower_bound)
                .real("upper_bound", a.upper_bound)
                .flag("is_normalized_tight", a.is_normalized_tight)
                .flag("is_dual_pair", is_dual_pair_with(&ef.frame, &ef.dual, tol)?);
            if let Some(out) = &cli.out {
                let file = ProblemFile::new(ef.frame.module().clone())
                    .with_frame("u", &ef.frame)
                    .with_frame("v", &ef.dual);
                save(out, &file)?;
                r.text("written", &file_name(out));
            }
            Ok(Output::Report(r))
        }
        Command::Generate {
            max_blocks,
            max_block_dim,
            max_rank,
            max_frame_size,
        } => {
            let seed = cli.seed.unwrap_or(0);
            let limits = Limits::new(*max_blocks, *max_block_dim, *max_rank, *max_frame_size);
            let inst = random_instance(seed, limits)?;
            let file = ProblemFile::new(inst.module.clone()).with_frame("random", &inst.frame);
            match &cli.out {
                Some(out) => {
                    save(out, &file)?;
                    let mut r = Report::new("generate");
                    r.text("seed", &seed.to_string())
                        .text("algebra", &inst.spec.to_string())
                        .int("ambient_rank", inst.module.ambient_rank())
                        .int("elements", inst.frame.len())
                        .text("written", &file_name(out));
                    Ok(Output::Report(r))
                }
                None => Ok(Output::Raw(file.write())),
            }
        }
    }
}

fn trace(m: &ProjectiveModule) -> f64 {
    m.block_ranks().iter().sum::<usize>() as f64
}

fn write_frame(
    cli: &Cli,
    r: &mut Report,
    source: &ProblemFile,
    name: &str,
    frame: &ModuleFrame,
) -> Result<(), Failure> {
    if let Some(out) = &cli.out {
        let mut file = ProblemFile::new(source.module.clone()).with_frame(name, frame);
        file.explicit_projection = source.explicit_projection;
        save(out, &file)?;
        r.text("written", &file_name(out));
    }
    Ok(())
}
