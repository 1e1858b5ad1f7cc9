mod config;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use vh_core::braiding::{braid_matrix, BraidWord};
use vh_core::compositions::compositions;
use vh_core::homology::{HVector, HomologyModule};
use vh_core::operator::{Basis, Colors, OperatorMatrix};
use vh_core::ring::parse_assignment;
use vh_core::{checks, RingHom};

use config::{ColorSpec, Format, JobConfig};

const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Parser)]
#[command(name = "vh", version, about = "Homological and quantum braid representations on Verma modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the composition indices of a weight space.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
    },
    /// Compute the matrix of a braid word on one weight space.
    Matrix(MatrixArgs),
    /// Run a verification suite.
    Check {
        /// One of: relations, hopf, monoidality, kohno, bridge, basis-change,
        /// agreement, equivariance, irreducibility.
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long = "rmax", visible_alias = "r", default_value_t = 2)]
        r_max: u32,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Rewrite a homological vector (JSON file) in another basis.
    ChangeBasis {
        input: PathBuf,
        /// Expected basis of the input; read from the file when omitted.
        #[arg(long)]
        from: Option<Basis>,
        #[arg(long)]
        to: Basis,
        /// Colors of the punctures; guessed from the vector's variables when omitted.
        #[arg(long)]
        colors: Option<ColorSpec>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct MatrixArgs {
    /// Load the whole job from a JSON file instead of flags.
    #[arg(long, conflicts_with_all = ["n", "r", "word", "basis", "colors", "subst", "eval", "format", "endomorphism"])]
    config: Option<PathBuf>,
    /// Print the resolved job as JSON and exit.
    #[arg(long)]
    dump_config: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, visible_alias = "rmax")]
    r: Option<u32>,
    /// Whitespace-separated letters `s<i>` and `s<i>^-1`.
    #[arg(long)]
    word: Option<String>,
    #[arg(long, default_value = "verma")]
    basis: Basis,
    /// `distinct`, `unicolor`, or one color per strand such as `s1,s1,s2`.
    #[arg(long, default_value = "distinct")]
    colors: ColorSpec,
    /// Substitution applied to every entry, e.g. `tt=q^-2`.
    #[arg(long)]
    subst: Option<String>,
    /// Numeric evaluation, e.g. `q=3/2,s1=2,s2=root(1/5)`.
    #[arg(long)]
    eval: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fail unless the word returns every strand to a strand of the same color.
    #[arg(long)]
    endomorphism: bool,
}

/// Bad input from the caller; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// A suite or check reported a failure; exits with status 1.
#[derive(Debug)]
struct Failed;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &anyhow::Error) -> u8 {
    use vh_core::Error as E;
    for cause in e.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::Parse(_)
                | E::UnknownVariable(_)
                | E::InvalidVariables(_)
                | E::InvalidBraid(_)
                | E::NegativeArgument(_)
                | E::Unassigned(_)
                | E::WrongBasis { .. }
                | E::Dimension(_) => 2,
                _ => 1,
            };
        }
        if cause.is::<serde_json::Error>() {
            return 2;
        }
    }
    1
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("VH_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| usage(format!("VH_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn run(cli: Cli) -> Result<Result<(), Failed>> {
    match cli.command {
        Command::Basis { n, r } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            print!("{}", basis_listing(n, r));
        }
        Command::Matrix(args) => {
            let job = resolve_job(args.config.as_deref(), &args)?;
            if args.dump_config {
                println!("{}", serde_json::to_string_pretty(&job)?);
                return Ok(Ok(()));
            }
            let text = matrix_job(&job)?;
            emit(job.out.as_deref(), &text)?;
        }
        Command::Check { suite, n, r_max, seed } => {
            if !checks::SUITES.contains(&suite.as_str()) {
                return Err(usage(format!(
                    "unknown suite `{suite}` (expected one of {})",
                    checks::SUITES.join(", ")
                )));
            }
            let report = checks::run(&suite, n, r_max, seed)?;
            println!("{report}");
            if !report.passed() {
                return Ok(Err(Failed));
            }
        }
        Command::ChangeBasis { input, from, to, colors, out } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let v: HVector = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
            let converted = change_basis(&v, from, to, colors.as_ref())?;
            emit(out.as_deref(), &(serde_json::to_string_pretty(&converted)? + "\n"))?;
        }
    }
    Ok(Ok(()))
}

fn basis_listing(n: usize, r: u32) -> String {
    let list = compositions(n, r);
    let mut out = String::new();
    for k in &list {
        let parts: Vec<String> = k.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "({})", parts.join(","));
    }
    let _ = writeln!(out, "count={}", list.len());
    out
}

fn resolve_job(config: Option<&Path>, args: &MatrixArgs) -> Result<JobConfig> {
    if let Some(path) = config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut job: JobConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if args.out.is_some() {
            job.out = args.out.clone();
        }
        return Ok(job);
    }
    let n = args.n.ok_or_else(|| usage("--n is required"))?;
    let r = args.r.ok_or_else(|| usage("--r is required"))?;
    let word = args.word.clone().ok_or_else(|| usage("--word is required"))?;
    Ok(JobConfig {
        n,
        r,
        word,
        basis: args.basis,
        colors: args.colors.clone(),
        subst: args.subst.clone(),
        eval: args.eval.clone(),
        format: args.format,
        out: args.out.clone(),
        endomorphism: args.endomorphism,
    })
}

fn matrix_job(job: &JobConfig) -> Result<String> {
    if job.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let word = BraidWord::parse(job.n, &job.word)?;
    let (vars, colors) = job.colors.resolve(job.n).map_err(|e| usage(format!("{e:#}")))?;
    let target = word.target_colors(&colors);
    if job.endomorphism && target != colors {
        bail!(
            "`{}` is not an endomorphism: strand colors [{}] become [{}] (strand permutation {})",
            job.word,
            colors.names(&vars).join(", "),
            target.names(&vars).join(", "),
            permutation_text(&word),
        );
    }
    let mut op = braid_matrix(&vars, &word, job.r, job.basis, &colors)?;
    if let Some(spec) = &job.subst {
        let hom = RingHom::parse(&vars, &vars, spec)?;
        op = op.specialize(&hom)?;
    }
    match &job.eval {
        Some(spec) => render_values(&op, spec, job.format),
        None => Ok(render_matrix(&op, job.format)?),
    }
}

fn permutation_text(word: &BraidWord) -> String {
    let p: Vec<String> = word.permutation().iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", p.join(" "))
}

fn render_matrix(op: &OperatorMatrix, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(op)? + "\n",
        Format::Csv => {
            let den = (!op.denominator.is_one()).then(|| format!("({})", op.denominator));
            csv(op.matrix.to_rows().iter().map(|row| {
                row.iter()
                    .map(|p| match &den {
                        None => p.to_string(),
                        Some(d) => format!("({p})/{d}"),
                    })
                    .collect()
            }))
        }
    })
}

fn render_values(op: &OperatorMatrix, spec: &str, format: Format) -> Result<String> {
    let assignment = parse_assignment(spec)?;
    let rows: Vec<Vec<String>> = op
        .evaluate(&assignment)?
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    Ok(match format {
        Format::Csv => csv(rows.into_iter()),
        Format::Json => {
            let doc = serde_json::json!({
                "n": op.n,
                "r_source": op.r_source,
                "r_target": op.r_target,
                "basis_source": op.basis_source,
                "basis_target": op.basis_target,
                "eval": spec,
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    })
}

fn csv(rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn change_basis(v: &HVector, from: Option<Basis>, to: Basis, colors: Option<&ColorSpec>) -> Result<HVector> {
    if let Some(from) = from {
        if from != v.basis {
            return Err(usage(format!("--from {from} but the vector is written in {}", v.basis)));
        }
    }
    let vars = v.vars().clone();
    let n = v.n();
    let colors = match colors {
        Some(ColorSpec::Distinct) => Colors::distinct(&vars, n)?,
        Some(ColorSpec::Unicolor) => Colors::uniform(&vars, n)?,
        Some(ColorSpec::Explicit(names)) => {
            if names.len() != n {
                return Err(usage(format!("{} colors given for {n} punctures", names.len())));
            }
            Colors::from_names(&vars, names)?
        }
        None if vars.index_of("s").is_some() => Colors::uniform(&vars, n)?,
        None => Colors::distinct(&vars, n)
            .map_err(|e| anyhow!(e))
            .context("vector variables do not carry s1..sn; pass --colors")?,
    };
    Ok(HomologyModule::new(&vars, colors).change_basis(v, to)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing() {
        assert_eq!(basis_listing(2, 1), "(0,1)\n(1,0)\ncount=2\n");
        assert!(basis_listing(3, 3).ends_with("count=10\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(exit_status(&usage("x")), 2);
        assert_eq!(exit_status(&anyhow!(vh_core::Error::Parse("x".into()))), 2);
        assert_eq!(exit_status(&anyhow!(vh_core::Error::Singular)), 1);
    }
}
