//! `halftwist` command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use halftwist::axioms::check_all;
use halftwist::pingeo::abk;
use halftwist::ribbon::{evaluate_with, parse, EvalOptions};
use halftwist::superalgebra::{from_text, parse_algebra_spec, to_text};
use halftwist::tqft::{
    classify, partition_function, projector_obstruction, stacking_check, state_space, Classification,
};
use halftwist::{Cyclo, Error, HalfTwistAlgebra, PinSurfacePresentation, Sector, SurfaceSpec};

#[derive(Parser, Debug)]
#[command(name = "halftwist", version, about = "Exact state sums for pin- surface theories")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Default alpha for algebra specs, as an element of Q(zeta_8) (e.g. `sqrt2`).
    #[arg(long, default_value = "1", global = true, allow_hyphen_values = true)]
    alpha: String,

    /// Largest number of simultaneous strands the diagram evaluator accepts.
    #[arg(long, global = true)]
    max_width: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the thirteen move identities and the derived structure.
    Check { algebra: String },
    /// Evaluate a ribbon diagram file to a linear map.
    Eval { algebra: String, diagram: PathBuf },
    /// Partition function on a closed surface (`sphere`, `rp2:1`, `torus:ns,r`, `klein:1,3`, `csum:1,1,1`).
    Partition { algebra: String, surface: String },
    /// Circle state spaces in both sectors.
    States { algebra: String },
    /// Arf-Brown-Kervaire invariant of `g=..,c=..,q=[..|..]`.
    Abk { presentation: String },
    /// Invertible class `k` with `Z(RP2_1) = alpha e^{i k pi/4}`.
    Classify { algebra: String },
    /// Compare the stacked theory `A (x) B` with the product of the two; no surfaces means the whole library.
    Stack {
        algebra_a: String,
        algebra_b: String,
        surfaces: Vec<String>,
    },
    /// Print an algebra in the text format accepted by `file:<path>`.
    Export { algebra: String },
}

/// A failed command: exit status plus message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidArgument(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

struct Ctx {
    format: Format,
    alpha: Cyclo,
    opts: EvalOptions,
}

impl Ctx {
    fn algebra(&self, spec: &str) -> Result<HalfTwistAlgebra, Failure> {
        if let Some(path) = spec.strip_prefix("file:") {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
            return from_text(&text).map_err(|e| Failure::usage(format!("{path}: {e}")));
        }
        Ok(parse_algebra_spec(spec, &self.alpha)?)
    }

    fn kv(&self) -> bool {
        self.format == Format::Kv
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let alpha: Cyclo = cli
        .alpha
        .parse()
        .map_err(|e| Failure::usage(format!("--alpha: {e}")))?;
    let mut opts = EvalOptions::default();
    if let Some(w) = cli.max_width {
        opts.max_width = w;
    }
    let ctx = Ctx { format: cli.format, alpha, opts };
    match cli.command {
        Command::Check { algebra } => check(&ctx, &algebra),
        Command::Eval { algebra, diagram } => eval(&ctx, &algebra, &diagram),
        Command::Partition { algebra, surface } => partition(&ctx, &algebra, &surface),
        Command::States { algebra } => states(&ctx, &algebra),
        Command::Abk { presentation } => abk_cmd(&ctx, &presentation),
        Command::Classify { algebra } => classify_cmd(&ctx, &algebra),
        Command::Stack { algebra_a, algebra_b, surfaces } => stack(&ctx, &algebra_a, &algebra_b, &surfaces),
        Command::Export { algebra } => Ok((to_text(&ctx.algebra(&algebra)?), true)),
    }
}

fn check(ctx: &Ctx, spec: &str) -> Outcome {
    let a = ctx.algebra(spec)?;
    let report = check_all(&a);
    let out = if ctx.kv() {
        format!("algebra = {}\ndim = {}\n{}", a.family(), a.dim(), report.render_kv())
    } else {
        format!("algebra: {} (dim {})\n{}", a.family(), a.dim(), report.render_text())
    };
    Ok((out, report.passed()))
}

fn eval(ctx: &Ctx, spec: &str, path: &PathBuf) -> Outcome {
    let a = ctx.algebra(spec)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let d = parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let block = evaluate_with(&d, &a, &ctx.opts)?;
    let mut out = String::new();
    let entries = block.sorted_entries();
    if ctx.kv() {
        let _ = writeln!(out, "inputs = {}\noutputs = {}\nnonzero = {}", block.n(), block.m(), block.nnz());
        if let Some(s) = block.scalar() {
            let _ = writeln!(out, "value = {s}\ndecimal = {}\npolar = {}", s.to_decimal(), s.polar_label());
        }
        for (key, v) in &entries {
            let _ = writeln!(out, "entry.{} = {v}", index_key(key, block.n(), &a));
        }
    } else {
        let _ = writeln!(out, "map: {} -> {} strands, {} nonzero entries", block.n(), block.m(), block.nnz());
        if let Some(s) = block.scalar() {
            let _ = writeln!(out, "value: {s}\ndecimal: {}\npolar: {}", s.to_decimal(), s.polar_label());
        } else {
            for (key, v) in &entries {
                let _ = writeln!(out, "  {}  {}", index_key(key, block.n(), &a), v.compact());
            }
        }
    }
    Ok((out, true))
}

/// `in1,in2->out1` with basis labels.
fn index_key(key: &[usize], n: usize, a: &HalfTwistAlgebra) -> String {
    let name = |ix: &[usize]| ix.iter().map(|&i| a.labels()[i].clone()).collect::<Vec<_>>().join(",");
    format!("{}->{}", name(&key[..n]), name(&key[n..]))
}

/// `ABK^k` when the algebra is invertible and `Z` has the expected form.
fn abk_label(a: &HalfTwistAlgebra, s: &SurfaceSpec, z: &Cyclo) -> Option<String> {
    let Ok(Classification::Invertible { k, euler_alpha }) = classify(a) else {
        return None;
    };
    let abk_s = abk(&s.presentation()).ok()?;
    let chi = s.euler_characteristic();
    let expect = &euler_alpha.powi(chi).ok()? * &abk_s.pow(k as u32);
    if &expect != z {
        return None;
    }
    let scale = euler_alpha.powi(chi).ok()?;
    Some(if scale.is_one() {
        format!("ABK^{k}")
    } else {
        format!("{} * ABK^{k}", scale.polar_label())
    })
}

fn partition(ctx: &Ctx, spec: &str, surface: &str) -> Outcome {
    let a = ctx.algebra(spec)?;
    let s: SurfaceSpec = surface.parse()?;
    let z = partition_function(&a, &s)?;
    let label = abk_label(&a, &s, &z);
    let mut out = String::new();
    if ctx.kv() {
        let _ = writeln!(out, "algebra = {}\nsurface = {s}\nchi = {}", a.family(), s.euler_characteristic());
        let _ = writeln!(out, "value = {z}\ndecimal = {}\npolar = {}", z.to_decimal(), z.polar_label());
        if let Some(l) = label {
            let _ = writeln!(out, "label = {l}");
        }
    } else {
        let _ = writeln!(out, "Z({s}) = {}", z.polar_label());
        let _ = writeln!(out, "  exact:   {z}");
        let _ = writeln!(out, "  decimal: {}", z.to_decimal());
        if let Some(l) = label {
            let _ = writeln!(out, "  matches: {l}");
        }
    }
    Ok((out, true))
}

fn states(ctx: &Ctx, spec: &str) -> Outcome {
    let a = ctx.algebra(spec)?;
    let obstruction = projector_obstruction(&a);
    let mut out = String::new();
    for sector in Sector::BOTH {
        let sp = state_space(&a, sector)?;
        let (e, o) = sp.superdim();
        let key = sector.to_string().to_ascii_lowercase();
        if ctx.kv() {
            let _ = writeln!(out, "{key}.even = {e}\n{key}.odd = {o}");
            for (i, v) in sp.basis.iter().enumerate() {
                let _ = writeln!(out, "{key}.basis.{i} = {}", v.render(a.labels()));
            }
        } else {
            let _ = writeln!(out, "{sector}: C^{{{e}|{o}}}");
            for (v, p) in sp.basis.iter().zip(&sp.parities) {
                let _ = writeln!(out, "  [{}] {}", if *p == 0 { "even" } else { "odd" }, v.render(a.labels()));
            }
        }
    }
    match (&obstruction, ctx.kv()) {
        (None, true) => out.push_str("projector = orthogonal\n"),
        (Some(why), true) => {
            let _ = writeln!(out, "projector = none\nprojector.reason = {why}");
        }
        (None, false) => out.push_str("projectors: orthogonal\n"),
        (Some(why), false) => {
            let _ = writeln!(out, "projectors: unavailable, {why}");
        }
    }
    Ok((out, true))
}

fn abk_cmd(ctx: &Ctx, text: &str) -> Outcome {
    let p: PinSurfacePresentation = text.parse()?;
    let v = abk(&p)?;
    let out = if ctx.kv() {
        format!(
            "presentation = {p}\nchi = {}\nvalue = {v}\ndecimal = {}\npolar = {}\n",
            p.euler_characteristic(),
            v.to_decimal(),
            v.polar_label()
        )
    } else {
        format!("ABK({p}) = {}\n  exact:   {v}\n  decimal: {}\n", v.polar_label(), v.to_decimal())
    };
    Ok((out, true))
}

fn classify_cmd(ctx: &Ctx, spec: &str) -> Outcome {
    let a = ctx.algebra(spec)?;
    let out = match (classify(&a)?, ctx.kv()) {
        (Classification::Invertible { k, euler_alpha }, false) => {
            format!("k = {k} (ABK^{k})\neuler alpha = {}\n", euler_alpha.compact())
        }
        (Classification::Invertible { k, euler_alpha }, true) => {
            format!("invertible = true\nk = {k}\neuler_alpha = {euler_alpha}\n")
        }
        (Classification::NonInvertible { ns_dim, r_dim }, false) => {
            format!("not invertible (NS dim {ns_dim}, R dim {r_dim})\n")
        }
        (Classification::NonInvertible { ns_dim, r_dim }, true) => {
            format!("invertible = false\nns_dim = {ns_dim}\nr_dim = {r_dim}\n")
        }
    };
    Ok((out, true))
}

fn stack(ctx: &Ctx, spec_a: &str, spec_b: &str, surfaces: &[String]) -> Outcome {
    let a = ctx.algebra(spec_a)?;
    let b = ctx.algebra(spec_b)?;
    let specs = if surfaces.is_empty() {
        SurfaceSpec::library()
    } else {
        surfaces.iter().map(|s| s.parse()).collect::<halftwist::Result<Vec<_>>>()?
    };
    let report = stacking_check(&a, &b, &specs)?;
    let mut out = String::new();
    let mark = |ok: bool| if ok { "ok" } else { "MISMATCH" };
    for row in &report.surfaces {
        if ctx.kv() {
            let k = row.surface.to_string();
            let _ = writeln!(out, "surface.{k}.stacked = {}", row.stacked);
            let _ = writeln!(out, "surface.{k}.product = {}", &row.left * &row.right);
            let _ = writeln!(out, "surface.{k}.ok = {}", row.ok());
        } else {
            let _ = writeln!(
                out,
                "{:<12} {} = {} * {}  {}",
                row.surface.to_string(),
                row.stacked.polar_label(),
                row.left.polar_label(),
                row.right.polar_label(),
                mark(row.ok())
            );
        }
    }
    for row in &report.sectors {
        let show = |(e, o): (usize, usize)| format!("{e}|{o}");
        if ctx.kv() {
            let k = row.sector.to_string().to_ascii_lowercase();
            let _ = writeln!(out, "sector.{k}.stacked = {}", show(row.stacked));
            let _ = writeln!(out, "sector.{k}.expected = {}", show(row.expected()));
            let _ = writeln!(out, "sector.{k}.ok = {}", row.ok());
        } else {
            let _ = writeln!(
                out,
                "{:<12} C^{{{}}} vs C^{{{}}}  {}",
                row.sector.to_string(),
                show(row.stacked),
                show(row.expected()),
                mark(row.ok())
            );
        }
    }
    if ctx.kv() {
        let _ = writeln!(out, "passed = {}", report.passed());
    } else {
        let _ = writeln!(out, "summary: {}", if report.passed() { "stacking holds" } else { "stacking fails" });
    }
    Ok((out, report.passed()))
}
