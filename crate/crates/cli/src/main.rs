mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tessgroup::census::{analyze, CensusOptions, LARGE_FACE_COUNT};
use tessgroup::checks::run_checks;
use tessgroup::enumerator::enumerate;
use tessgroup::export::write_off_files;
use tessgroup::group::builtin::{Builtin, BUILTIN_CAP};
use tessgroup::group::io::{read_generators, read_table};
use tessgroup::oracles::{compare, Expectation};
use tessgroup::parallel::with_threads;
use tessgroup::{Error, Group};


#[derive(Parser)]
#[command(name = "tessgroup", version, about = "Tesselated surfaces from noncommuting pairs of a finite group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose X(G) and report the genus census, L and the cell structures.
    Census(CensusArgs),
    /// Run the invariant suite and report pass/fail per check.
    Check(CheckArgs),
    /// List the admissible tesselation data of one genus.
    Enumerate(EnumerateArgs),
    /// Write the census JSON and one OFF mesh per component.
    Export(ExportArgs),
    /// Basic facts about a group.
    GroupInfo(GroupInfoArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSpec {
    /// Built-in group: symmetric:n, alternating:n, dihedral:order, quaternion8,
    /// extraspecial:p, frobenius21, or a product A*B.
    #[arg(long)]
    builtin: Option<String>,
    /// JSON Cayley table file.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Permutation generators file (JSON array or one per line).
    #[arg(long)]
    generators: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    group: GroupSpec,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, env = "TESSGROUP_THREADS", default_value_t = 0)]
    threads: usize,
    /// Largest group order for which automorphisms are searched.
    #[arg(long, default_value_t = tessgroup::automorphism::DEFAULT_SEARCH_CAP)]
    auto_cap: usize,
    /// Allow groups with more than 10 million faces.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare with a closed-form census: dihedral:n or extraspecial:p.
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Keep going after a failed check.
    #[arg(long)]
    continue_on_error: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    genus: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Output directory for census.json and off/*.off.
    #[arg(long)]
    dir: PathBuf,
    /// Skip the OFF meshes.
    #[arg(long)]
    no_off: bool,
}

#[derive(Args)]
struct GroupInfoArgs {
    #[command(flatten)]
    group: GroupSpec,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// A failed run, classified by exit code.
#[derive(Debug)]
enum Failure {
    Io(String),
    Input(String),
    Invariant(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Input(m) | Failure::Invariant(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Failure::Io(e.to_string()),
            e if e.is_input_error() => Failure::Input(e.to_string()),
            e => Failure::Invariant(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load_group(spec: &GroupSpec) -> Result<Group, Failure> {
    let g = if let Some(b) = &spec.builtin {
        b.parse::<Builtin>()?.build()?
    } else if let Some(path) = &spec.table {
        read_table(path)?
    } else if let Some(path) = &spec.generators {
        read_generators(path, BUILTIN_CAP)?
    } else {
        return Err(Failure::Input("no group given".into()));
    };
    for w in g.warnings() {
        eprintln!("warning: {w:?}");
    }
    Ok(g)
}

fn face_count(g: &Group) -> u64 {
    let n = g.order() as u64;
    n * n - n * g.class_count() as u64
}

fn load_checked(run: &RunArgs) -> Result<Group, Failure> {
    let g = load_group(&run.group)?;
    let faces = face_count(&g);
    if faces > LARGE_FACE_COUNT && !run.allow_large {
        return Err(Failure::Input(format!(
            "{} has {faces} faces (more than {LARGE_FACE_COUNT}); pass --allow-large to proceed",
            g.label()
        )));
    }
    Ok(g)
}

fn threads(run: &RunArgs) -> Option<usize> {
    (run.threads > 0).then_some(run.threads)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn cmd_census(args: &CensusArgs) -> Outcome {
    let expectation = args.expect.as_deref().map(str::parse::<Expectation>).transpose()?;
    let g = load_checked(&args.run)?;
    let opts = CensusOptions {
        search_cap: args.run.auto_cap,
    };
    let (census, comparison) = with_threads(threads(&args.run), || -> Result<_, Error> {
        let analysis = analyze(&g, opts)?;
        let comparison = expectation.map(|e| compare(e, &analysis.cells)).transpose()?;
        Ok((analysis.census, comparison))
    })??;
    let text = match args.format {
        Format::Json => with_newline(census.to_json()),
        Format::Text => render::census_text(&census),
    };
    emit(args.out.as_deref(), &text)?;
    if let Some(cmp) = comparison {
        if cmp.matches {
            eprintln!("expectation {}: match ({} components)", cmp.expectation, cmp.expected.total());
        } else {
            let detail = serde_json::to_string_pretty(&cmp).expect("comparison serializes");
            return Err(Failure::Mismatch(format!("expectation {} does not match:\n{detail}", cmp.expectation)));
        }
    }
    Ok(())
}

fn cmd_check(args: &CheckArgs) -> Outcome {
    let g = load_checked(&args.run)?;
    let opts = CensusOptions {
        search_cap: args.run.auto_cap,
    };
    let report = with_threads(threads(&args.run), || run_checks(&g, opts, args.continue_on_error))?;
    let text = match args.format {
        Format::Json => with_newline(serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => render::check_text(&report),
    };
    emit(None, &text)?;
    let Some(first) = report.failures().next() else {
        return Ok(());
    };
    let message = format!("{}: {}", first.name, first.detail);
    if report.has_input_error() {
        Err(Failure::Input(message))
    } else {
        Err(Failure::Invariant(message))
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Outcome {
    let data = enumerate(args.genus);
    let text = match args.format {
        Format::Json => with_newline(
            serde_json::to_string_pretty(&json!({
                "schema_version": tessgroup::census::SCHEMA_VERSION,
                "genus": args.genus,
                "rows": data,
            }))
            .expect("rows serialize"),
        ),
        Format::Text => render::enumerate_text(args.genus, &data),
    };
    emit(None, &text)
}

fn cmd_export(args: &ExportArgs) -> Outcome {
    let g = load_checked(&args.run)?;
    let opts = CensusOptions {
        search_cap: args.run.auto_cap,
    };
    let dir = &args.dir;
    let written = with_threads(threads(&args.run), || -> Result<_, Error> {
        let analysis = analyze(&g, opts)?;
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.clone(),
            source: e,
        })?;
        let census_path = dir.join("census.json");
        std::fs::write(&census_path, with_newline(analysis.census.to_json())).map_err(|e| Error::Io {
            path: census_path.clone(),
            source: e,
        })?;
        let mut written = vec![census_path];
        if !args.no_off {
            let all: Vec<usize> = (0..analysis.decomposition.component_count()).collect();
            written.extend(write_off_files(&analysis.decomposition, &dir.join("off"), &all)?);
        }
        Ok(written)
    })??;
    let meshes = written.len() - 1;
    emit(None, &format!("wrote {} and {meshes} OFF meshes under {}\n", written[0].display(), dir.display()))
}

fn cmd_group_info(args: &GroupInfoArgs) -> Outcome {
    let g = load_group(&args.group)?;
    let text = match args.format {
        Format::Json => with_newline(serde_json::to_string_pretty(&render::group_info_json(&g, face_count(&g))).unwrap()),
        Format::Text => render::group_info_text(&g, face_count(&g)),
    };
    emit(None, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Census(a) => cmd_census(a),
        Command::Check(a) => cmd_check(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Export(a) => cmd_export(a),
        Command::GroupInfo(a) => cmd_group_info(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(Failure::from(Error::Abelian).code(), 2);
        assert_eq!(Failure::from(Error::Parse("x".into())).code(), 2);
        assert_eq!(Failure::from(Error::Topology("x".into())).code(), 3);
        let io = Error::Io {
            path: "p".into(),
            source: std::io::Error::other("gone"),
        };
        assert_eq!(Failure::from(io).code(), 1);
        assert_eq!(Failure::Mismatch(String::new()).code(), 4);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
