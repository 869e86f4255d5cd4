//! Command-line surface for the metricdim library: construct candidate
//! resolving sets, generate designs, verify candidates exhaustively, solve
//! for exact metric dimension, and summarize bounds.
//!
//! Exit codes: 0 success / resolved; 1 verified not resolved; 2 usage or
//! parameter errors; 3 solver timeout (partial result still printed).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use metricdim::bounds::{bound_table, exact_metric_dimension, SolveLimits, SolveProof};
use metricdim::constructions::{
    johnson_partition, kneser_diam3, kneser_partition, matrix_basic, toroidal_paths, Construction,
};
use metricdim::designs::{
    affine_plane, hadamard_design, projective_plane, steiner_triple_system, validate_t_design,
    IncidenceStructure, TDesignCheck,
};
use metricdim::graphs::{Family, GraphInstance};
use metricdim::subsets::KSubset;
use metricdim::verify::{verify_resolving, CandidateFile, Oracle, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "metricdim",
    about = "Resolving sets and metric dimension for Johnson and Kneser graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a resolving-set candidate and write it in the candidate-set
    /// file format.
    Construct(ConstructArgs),
    /// Generate (or load and revalidate) an incidence structure.
    Design(DesignArgs),
    /// Verify a candidate file exhaustively against its graph instance.
    Verify(VerifyArgs),
    /// Exact metric dimension by branch and bound.
    Exact(ExactArgs),
    /// Evaluate every applicable bound for an instance.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// johnson-partition | kneser-partition | kneser-diam3 | matrix-basic | toroidal:A,B
    #[arg(long)]
    method: String,
    /// Target family; inferred from the method when omitted.
    #[arg(long)]
    family: Option<String>,
    /// Ground-set size; for toroidal methods this must equal A*B.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: usize,
    /// Output path for the candidate-set file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    /// pg:Q | ag:Q | hadamard:M | sts:N
    #[arg(long, conflicts_with = "load")]
    kind: Option<String>,
    /// Load and revalidate an incidence-structure file instead.
    #[arg(long)]
    load: Option<PathBuf>,
    /// Output path for the incidence-structure file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Candidate-set file, or an incidence-structure file whose blocks are
    /// the candidate landmarks.
    #[arg(long)]
    input: PathBuf,
    /// Required when the input is an incidence-structure file; checked for
    /// consistency otherwise.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// formula | bfs
    #[arg(long, default_value = "formula")]
    oracle: String,
    /// Max admissible vertex count C(n,k).
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (0 = machine default); the report is identical for
    /// every worker count.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Also write the report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Emit the report as JSON instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Per-instance time budget in seconds.
    #[arg(long, default_value_t = 60)]
    timeout_secs: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    json: bool,
}

fn parse_family(name: &str) -> Result<Family> {
    Family::parse(name).ok_or_else(|| anyhow!("unknown family {name:?}; use johnson or kneser"))
}

fn write_or_print(out: &Option<PathBuf>, content: &str, summary: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
            println!("wrote {}", path.display());
        }
        None => {
            print!("{content}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn run_construct(args: &ConstructArgs) -> Result<()> {
    let (construction, family): (Construction, Family) =
        if let Some(rest) = args.method.strip_prefix("toroidal:") {
            let (a, b) = rest
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| anyhow!("toroidal method takes `toroidal:A,B`"))?;
            if let Some(n) = args.n {
                if n != a * b {
                    bail!("--n {n} does not match the torus size {a}x{b} = {}", a * b);
                }
            }
            (toroidal_paths(a, b, args.k)?.construction, Family::Kneser)
        } else {
            let n = args
                .n
                .ok_or_else(|| anyhow!("--n is required for this method"))?;
            match args.method.as_str() {
                "johnson-partition" => (johnson_partition(n, args.k)?, Family::Johnson),
                "kneser-partition" => (kneser_partition(n, args.k)?, Family::Kneser),
                "kneser-diam3" => (kneser_diam3(n, args.k)?, Family::Kneser),
                "matrix-basic" => (matrix_basic(n, args.k)?, Family::Johnson),
                other => bail!(
                    "unknown method {other:?}; use johnson-partition, kneser-partition, \
                     kneser-diam3, matrix-basic or toroidal:A,B"
                ),
            }
        };
    if let Some(requested) = &args.family {
        let requested = parse_family(requested)?;
        if requested != family {
            bail!(
                "method {} targets the {family} graph, not {requested}",
                args.method
            );
        }
    }
    let plan = &construction.plan;
    let file = CandidateFile::new(family, plan.n, plan.k, construction.sets.clone());
    let summary = format!(
        "method={} family={family} n={} k={} predicted_size={} actual_size={}",
        plan.method.name(),
        plan.n,
        plan.k,
        plan.predicted_size,
        plan.actual_size
    );
    write_or_print(&args.out, &file.to_file_string(), &summary)
}

/// Symmetric-design λ from (n, k): λ = k(k-1)/(n-1).
fn symmetric_lambda(n: usize, k: usize) -> u64 {
    (k * (k - 1) / (n - 1)) as u64
}

fn describe_structure(ic: &IncidenceStructure) -> Result<Vec<String>> {
    let mut notes = Vec::new();
    let n = ic.n_points();
    let Some(k) = ic.block_size() else {
        notes.push("blocks are not uniform; no resolving-set theorem applies".into());
        return Ok(notes);
    };
    notes.push(format!(
        "points={n} blocks={} block_size={k}",
        ic.blocks().len()
    ));
    if ic.blocks().len() == n && n > 1 {
        let lambda = symmetric_lambda(n, k);
        if let TDesignCheck::Valid(params) = validate_t_design(ic, 2, lambda)? {
            notes.push(format!(
                "symmetric ({},{},{}) design: blocks resolve J({n},{k})",
                params.n, params.k, params.lambda
            ));
            if n == 2 * k + 1 {
                notes.push(format!(
                    "odd-graph parameters: the same blocks resolve K({n},{k})"
                ));
            }
        }
    }
    if k >= 2 && n + 2 >= 4 * k {
        if let TDesignCheck::Valid(_) = validate_t_design(ic, k - 1, 1)? {
            if n >= 4 * k - 2 {
                notes.push(format!(
                    "Steiner system S({},{k},{n}): blocks resolve K({n},{k})",
                    k - 1
                ));
            }
        }
    }
    Ok(notes)
}

fn run_design(args: &DesignArgs) -> Result<()> {
    let ic: IncidenceStructure = match (&args.kind, &args.load) {
        (Some(kind), None) => {
            let (name, value) = kind
                .split_once(':')
                .ok_or_else(|| anyhow!("design kind takes `name:value`, e.g. pg:2"))?;
            let value: usize = value.trim().parse().context("design kind parameter")?;
            match name {
                "pg" => projective_plane(value as u32)?,
                "ag" => affine_plane(value as u32)?,
                "hadamard" => hadamard_design(value)?,
                "sts" => steiner_triple_system(value)?,
                other => bail!("unknown design kind {other:?}; use pg, ag, hadamard or sts"),
            }
        }
        (None, Some(path)) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let (ic, warnings) = IncidenceStructure::parse(&text)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            ic
        }
        _ => bail!("exactly one of --kind or --load is required"),
    };
    let mut summary = describe_structure(&ic)?;
    if let Some(kind) = &args.kind {
        match kind.split(':').next() {
            Some("ag") => {
                let q = ic.block_size().unwrap_or(0);
                if q >= 3 {
                    summary.push(format!(
                        "partial geometry pg({},{q},{q}): lines resolve K({},{q})",
                        q - 1,
                        q * q
                    ));
                }
            }
            Some("pg") => {
                let k = ic.block_size().unwrap_or(0);
                if k > 3 {
                    summary.push(format!(
                        "lines do NOT resolve K({},{k}) (projective planes of order > 2 fail)",
                        ic.n_points()
                    ));
                }
            }
            _ => {}
        }
    }
    write_or_print(&args.out, &ic.to_file_string(), &summary.join("\n"))
}

enum VerifyOutcome {
    Resolved,
    NotResolved,
}

fn run_verify(args: &VerifyArgs) -> Result<VerifyOutcome> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;

    // Candidate files carry the instance; incidence files need --family.
    let (family, n, k, sets) = if text.trim_start().starts_with("# points=") {
        let (ic, warnings) = IncidenceStructure::parse(&text)?;
        for w in warnings {
            eprintln!("warning: {w}");
        }
        let family = parse_family(
            args.family
                .as_deref()
                .ok_or_else(|| anyhow!("--family is required for incidence-structure input"))?,
        )?;
        let k = ic
            .block_size()
            .ok_or_else(|| anyhow!("blocks are not uniform; not a valid candidate set"))?;
        (family, ic.n_points(), k, ic.blocks().to_vec())
    } else {
        let file = CandidateFile::parse(&text)?;
        if let Some(f) = &args.family {
            if parse_family(f)? != file.family {
                bail!("--family {f} contradicts the file header ({})", file.family);
            }
        }
        (file.family, file.n, file.k, file.sets)
    };
    if let Some(expected) = args.n {
        if expected != n {
            bail!("--n {expected} contradicts the input ({n})");
        }
    }
    if let Some(expected) = args.k {
        if expected != k {
            bail!("--k {expected} contradicts the input ({k})");
        }
    }

    let oracle = match args.oracle.as_str() {
        "formula" => Oracle::Formula,
        "bfs" => Oracle::Bfs,
        other => bail!("unknown oracle {other:?}; use formula or bfs"),
    };
    let g = GraphInstance::new(family, n, k)?;
    let opts = VerifyOptions {
        oracle,
        budget: args.budget,
        workers: args.workers,
    };
    let report = verify_resolving(&g, &sets, &opts)?;

    let rendered = if args.json {
        report.to_json()
    } else {
        report.to_kv()
    };
    print!("{rendered}");
    if let Some(path) = &args.report {
        fs::write(path, &rendered).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.resolved {
        VerifyOutcome::Resolved
    } else {
        VerifyOutcome::NotResolved
    })
}

fn subset_json(s: &KSubset) -> serde_json::Value {
    serde_json::json!({ "n": s.n(), "elements": s.to_vec() })
}

fn run_exact(args: &ExactArgs) -> Result<SolveProof> {
    let g = GraphInstance::new(parse_family(&args.family)?, args.n, args.k)?;
    let limits = SolveLimits::with_timeout(Duration::from_secs(args.timeout_secs));
    let result = exact_metric_dimension(&g, &limits)?;
    if args.json {
        let value = serde_json::json!({
            "family": g.family().as_str(),
            "n": g.n(),
            "k": g.k(),
            "dimension": result.dimension,
            "proof": match result.proof {
                SolveProof::Exhaustive => "exhaustive",
                SolveProof::TimeoutPartial => "timeout-partial",
            },
            "nodes_explored": result.nodes_explored,
            "basis": result.basis.iter().map(subset_json).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("family={} n={} k={}", g.family(), g.n(), g.k());
        println!("dimension={}", result.dimension);
        println!(
            "proof={}",
            match result.proof {
                SolveProof::Exhaustive => "exhaustive",
                SolveProof::TimeoutPartial => "timeout-partial",
            }
        );
        println!("nodes_explored={}", result.nodes_explored);
        for s in &result.basis {
            println!("basis: {s}");
        }
    }
    Ok(result.proof)
}

fn run_bounds(args: &BoundsArgs) -> Result<()> {
    let g = GraphInstance::new(parse_family(&args.family)?, args.n, args.k)?;
    let rows = bound_table(&g);
    if args.json {
        let value: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "name": r.name,
                    "source": r.source,
                    "direction": r.direction.as_str(),
                    "value": r.value,
                    "applicable": r.applicable,
                    "reason": r.reason,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&value)?);
        return Ok(());
    }
    println!(
        "bounds for {}({},{})",
        match g.family() {
            Family::Johnson => "J",
            Family::Kneser => "K",
        },
        g.n(),
        g.k()
    );
    let name_width = rows.iter().map(|r| r.name.len()).max().unwrap_or(4);
    for r in &rows {
        let value = r.value.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "{:<name_width$}  {:<5}  {:>8}  {}",
            r.name,
            r.direction.as_str(),
            value,
            if r.applicable {
                r.reason.clone()
            } else {
                format!("not applicable: {}", r.reason)
            }
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Construct(args) => run_construct(args).map(|()| ExitCode::SUCCESS),
        Command::Design(args) => run_design(args).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => run_verify(args).map(|outcome| match outcome {
            VerifyOutcome::Resolved => ExitCode::SUCCESS,
            VerifyOutcome::NotResolved => ExitCode::from(1),
        }),
        Command::Exact(args) => run_exact(args).map(|proof| match proof {
            SolveProof::Exhaustive => ExitCode::SUCCESS,
            SolveProof::TimeoutPartial => ExitCode::from(3),
        }),
        Command::Bounds(args) => run_bounds(args).map(|()| ExitCode::SUCCESS),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
