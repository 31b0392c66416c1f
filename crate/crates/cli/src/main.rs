//! `weylbranch` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification reports failures, 2 on
//! usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use weylbranch::embedcat::{self, branch_char0, catalog, restrict_weight, ParamValue, Params};
use weylbranch::permact::{falling_factorial, tuple_orbit_size, PermGroup};
use weylbranch::rootsys::{build_root_system, Family, Weight};
use weylbranch::verify::{self, Options, Report, Summary};
use weylbranch::weylchar::{weyl_dim, DEFAULT_DIM_CAP};
use weylbranch::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "weylbranch", version, about = "Weights, branching and irreducibility checks for classical groups")]
struct Cli {
    /// Directory holding the table fixtures (default: the bundled copies).
    #[arg(long, global = true, env = "WEYLBRANCH_DATA_DIR")]
    data_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,

    /// Largest module dimension whose full character may be expanded.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: u64,

    /// Worker threads for `verify`.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension of the irreducible module with the given highest weight.
    Dim {
        family: Family,
        rank: usize,
        /// Comma-separated fundamental coefficients, e.g. 0,0,0,1.
        coeffs: String,
    },
    /// Restriction of a weight along a catalog embedding.
    Restrict {
        id: u32,
        coeffs: String,
        /// Catalog parameter `name=value`; lists as `dims=3,3,3`.
        #[arg(short, long = "param")]
        params: Vec<String>,
    },
    /// Characteristic-zero decomposition along a catalog embedding.
    Branch {
        id: u32,
        coeffs: String,
        #[arg(short, long = "param")]
        params: Vec<String>,
    },
    /// Verify `all` fixtures, the `chains` fixture, or a fixture file.
    Verify {
        target: String,
        /// Zero all timings so that reports compare byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
    /// Whether a permutation group is t-transitive.
    Transitivity {
        /// `sym:N`, `alt:N`, `cyclic:N`, `dihedral:N`, `M11`, `M12`, `M23`,
        /// `M24` or a path to a generator file.
        group: String,
        t: usize,
    },
    /// Composition factors of a spin module on an orthogonal decomposition.
    Spincount {
        family: Family,
        n: usize,
        /// Comma-separated summand dimensions.
        dims: String,
    },
    /// List catalog embeddings, or show one.
    Catalog { id: Option<u32> },
}

/// Errors that end the run, with their exit code.
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>, Failure> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Input(format!("{x:?} is not an integer")))
        })
        .collect()
}

fn parse_params(raw: &[String]) -> Result<Params, Failure> {
    let mut out = Params::new();
    for item in raw {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("parameter {item:?} is not name=value")))?;
        let v = v.trim();
        let value = if v.contains(',') || v.starts_with('[') {
            ParamValue::List(parse_list(v)?)
        } else {
            ParamValue::Int(
                v.parse()
                    .map_err(|_| Failure::Input(format!("parameter {k}: {v:?} is not an integer")))?,
            )
        };
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn emit(cli: &Cli, human: String, value: Value) {
    match cli.output {
        Output::Human => println!("{human}"),
        Output::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize")),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Dim { family, rank, coeffs } => {
            let sys = build_root_system(*family, *rank)?;
            let w = Weight::new(&sys, parse_list(coeffs)?)?;
            let d = weyl_dim(&w)?;
            emit(
                cli,
                d.to_string(),
                json!({ "system": sys.to_string(), "weight": w.coeffs(), "dim": d.to_string() }),
            );
        }
        Command::Restrict { id, coeffs, params } => {
            let e = catalog(*id, &parse_params(params)?)?;
            let w = Weight::new(e.ambient(), parse_list(coeffs)?)?;
            let r = restrict_weight(&e, &w)?;
            emit(
                cli,
                format!("{r}\n{}", r.omega_string()),
                json!({
                    "catalog": id,
                    "ambient": e.ambient().to_string(),
                    "subgroup": e.subgroup().label,
                    "weight": w.coeffs(),
                    "restriction": r,
                    "omega": r.omega_string(),
                }),
            );
        }
        Command::Branch { id, coeffs, params } => {
            let e = catalog(*id, &parse_params(params)?)?;
            let w = Weight::new(e.ambient(), parse_list(coeffs)?)?;
            let br = branch_char0(&e, &w, cli.dim_cap)?;
            let mut lines = Vec::new();
            for f in &br.factors {
                lines.push(format!("{} x {}  dim {}", f.multiplicity, f.highest, f.dim));
            }
            lines.push(format!("kappa {}  total {}", br.kappa, br.total_dim));
            let factors: Vec<Value> = br
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "highest": f.highest,
                        "multiplicity": f.multiplicity,
                        "dim": f.dim.to_string(),
                    })
                })
                .collect();
            emit(
                cli,
                lines.join("\n"),
                json!({
                    "catalog": id,
                    "ambient": e.ambient().to_string(),
                    "subgroup": e.subgroup().label,
                    "weight": w.coeffs(),
                    "factors": factors,
                    "kappa": br.kappa,
                    "total_dim": br.total_dim.to_string(),
                }),
            );
        }
        Command::Verify { target, no_timing } => return run_verify(cli, target, *no_timing),
        Command::Transitivity { group, t } => {
            let g = load_group(group)?;
            let orbit = tuple_orbit_size(&g, *t)?;
            let tuples = falling_factorial(g.degree() as u64, *t as u64);
            let transitive = orbit == tuples;
            emit(
                cli,
                format!(
                    "{} on {} points: {} of {} ordered {}-tuples in one orbit; {}-transitive: {}",
                    g.name(),
                    g.degree(),
                    orbit,
                    tuples,
                    t,
                    t,
                    if transitive { "yes" } else { "no" }
                ),
                json!({
                    "group": g.name(),
                    "degree": g.degree(),
                    "t": t,
                    "orbit_size": orbit,
                    "tuples": tuples,
                    "transitive": transitive,
                }),
            );
        }
        Command::Spincount { family, n, dims } => {
            let parts: Vec<usize> = parse_list(dims)?
                .into_iter()
                .map(|d| usize::try_from(d).map_err(|_| Failure::Input(format!("dimension {d} is negative"))))
                .collect::<Result<_, _>>()?;
            let (kappa, fdim) = verify::spin_decomposition_count(*family, *n, &parts)?;
            emit(
                cli,
                format!("kappa {kappa}  factor dimension {fdim}"),
                json!({ "family": family, "n": n, "dims": parts, "kappa": kappa, "factor_dim": fdim }),
            );
        }
        Command::Catalog { id } => {
            let manifest = embedcat::manifest();
            let entries: Vec<_> = match id {
                Some(i) => {
                    let e = manifest
                        .into_iter()
                        .find(|e| e.id == *i)
                        .ok_or_else(|| Failure::from(Error::UnknownCatalog(i.to_string())))?;
                    vec![e]
                }
                None => manifest,
            };
            let human = entries
                .iter()
                .map(|e| {
                    format!(
                        "{:>2}  {} < {}  [{}]  {}  ({})",
                        e.id,
                        e.subgroup,
                        e.ambient,
                        e.params.join(", "),
                        e.name,
                        e.constraints
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(cli, human, serde_json::to_value(&entries).expect("manifest serializes"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_group(spec: &str) -> Result<PermGroup, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
        Ok(PermGroup::parse(spec, &text)?)
    } else {
        Ok(PermGroup::by_name(spec)?)
    }
}

fn render_report(r: &Report) -> String {
    let mut out = vec![format!("== {}", if r.title.is_empty() { "(untitled)" } else { &r.title })];
    for row in &r.rows {
        out.push(format!(
            "{:<21} {:<28} {:<13} {:>6}ms  {}",
            row.status.to_string(),
            row.row_id,
            row.mode.to_string(),
            row.millis,
            row.detail
        ));
    }
    let declared = match r.declared_flagged {
        Some(d) if d != r.flagged_count => format!(" (declared {d}, MISMATCH)"),
        Some(d) => format!(" (declared {d})"),
        None => String::new(),
    };
    out.push(format!(
        "pass {}  fail {}  flagged {}{declared}",
        r.pass_count, r.fail_count, r.flagged_count
    ));
    out.join("\n")
}

fn run_verify(cli: &Cli, target: &str, no_timing: bool) -> Result<ExitCode, Failure> {
    let opts = Options {
        dim_cap: cli.dim_cap,
        jobs: cli.jobs,
    };
    let data_dir = cli.data_dir.as_deref();
    let summary = match target {
        "all" => verify::verify_all(data_dir, &opts)?,
        "chains" => {
            let text = verify::fixture_text(data_dir, "chains.toml")?;
            Summary::new(vec![verify::verify_table_str("chains.toml", &text, &opts)?])
        }
        path => Summary::new(vec![verify::verify_table(Path::new(path), &opts)?]),
    };
    let summary = if no_timing { summary.without_timing() } else { summary };
    let human = summary
        .tables
        .iter()
        .map(render_report)
        .chain(std::iter::once(format!(
            "total: pass {}  fail {}  flagged {}",
            summary.pass_count, summary.fail_count, summary.flagged_count
        )))
        .collect::<Vec<_>>()
        .join("\n\n");
    emit(cli, human, serde_json::to_value(&summary).expect("reports serialize"));
    Ok(if summary.is_success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
