//! Single-binary front end: graph generation, hole analysis, exact
//! colouring, levellings, stable-levelling extraction, covering search and
//! the chromatic-bound harness, with machine-readable output for pipelines.
//!
//! Exit codes: 0 on success, 1 on capability/budget limits, 2 on usage
//! errors. Results go to stdout, diagnostics to stderr. Identical
//! invocations produce byte-identical stdout regardless of `--threads`.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pentagonal::bounds;
use pentagonal::coloring;
use pentagonal::cover;
use pentagonal::extraction;
use pentagonal::generators::CorpusSpec;
use pentagonal::holes;
use pentagonal::io as gio;
use pentagonal::levelling;
use pentagonal::{Error, Graph, VertexSet};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "pentagonal", about = "Graph toolkit for odd-hole structure and chromatic bounds", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input graph format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
    /// Input path; `-` reads standard input.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Emit JSON instead of the human-readable form.
    #[arg(long, global = true)]
    json: bool,
    /// Seed override for generated corpora.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Node-expansion budget for searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker-parallelism cap; 1 is the determinism reference.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Any,
    Odd,
    Even,
}

impl From<ParityArg> for holes::Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Any => holes::Parity::Any,
            ParityArg::Odd => holes::Parity::Odd,
            ParityArg::Even => holes::Parity::Even,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a graph corpus as graph6 lines.
    Gen {
        /// Corpus spec, e.g. mode=random,n=4-9,p=0.5,count=100,seed=7,filters=triangle-free.
        #[arg(long)]
        spec: String,
    },
    /// Enumerate induced cycles of one graph.
    Holes {
        #[arg(long, default_value_t = 4)]
        min: usize,
        /// Defaults to the vertex count.
        #[arg(long)]
        max: Option<usize>,
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity: ParityArg,
        /// Print only the number of cycles.
        #[arg(long)]
        count_only: bool,
        /// Print only the first cycle found.
        #[arg(long)]
        witness: bool,
    },
    /// Exact chromatic number.
    Chi {
        /// Also print the colour classes of a witness colouring.
        #[arg(long)]
        witness: bool,
    },
    /// Is every induced odd cycle a pentagon?
    Pentagonal,
    /// BFS levelling from a root vertex.
    Levelling {
        #[arg(long)]
        root: usize,
        /// Also validate the stable-levelling clauses.
        #[arg(long)]
        check_stable: bool,
    },
    /// Certifying stable-levelling extraction from the BFS levelling of a root.
    Extract {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        kappa: u32,
        #[arg(long)]
        root: usize,
    },
    /// Exhaustive bounded search for a 1-covering host.
    CoverSearch {
        /// grotzsch, c5, or file (reads --input).
        #[arg(long, default_value = "grotzsch")]
        target: String,
        #[arg(long, default_value_t = 6)]
        max_cover: usize,
    },
    /// Evaluate every applicable chromatic bound over a graph stream.
    BoundsCheck {
        /// Generate the corpus instead of reading graph6 lines from input.
        #[arg(long)]
        spec: Option<String>,
    },
    /// Full structural profile of one graph.
    Analyze,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("pentagonal: {e}");
            match e {
                Error::Usage(_) | Error::Parse(_) => 2,
                Error::Capability(_) | Error::Budget { .. } => 1,
            }
        }
    };
    std::process::exit(code);
}

fn read_input(common: &Common) -> Result<String, Error> {
    if common.input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(&common.input)
            .map_err(|e| Error::usage(format!("reading {}: {e}", common.input)))
    }
}

fn read_graph(common: &Common) -> Result<Graph, Error> {
    let text = read_input(common)?;
    match common.format {
        Format::Edgelist => gio::parse_edge_list(&text),
        Format::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Error::parse("no graph6 line in input"))?;
            gio::parse_graph6(line.trim())
        }
    }
}

fn emit(common: &Common, value: serde_json::Value, human: String) {
    if common.json {
        println!("{value}");
    } else {
        println!("{human}");
    }
}

fn cycle_csv(c: &holes::InducedCycle) -> String {
    c.vertices
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn set_csv(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Gen { spec } => cmd_gen(&cli.common, spec),
        Command::Holes {
            min,
            max,
            parity,
            count_only,
            witness,
        } => cmd_holes(&cli.common, *min, *max, (*parity).into(), *count_only, *witness),
        Command::Chi { witness } => cmd_chi(&cli.common, *witness),
        Command::Pentagonal => cmd_pentagonal(&cli.common),
        Command::Levelling { root, check_stable } => cmd_levelling(&cli.common, *root, *check_stable),
        Command::Extract { ell, kappa, root } => cmd_extract(&cli.common, *ell, *kappa, *root),
        Command::CoverSearch { target, max_cover } => cmd_cover_search(&cli.common, target, *max_cover),
        Command::BoundsCheck { spec } => cmd_bounds_check(&cli.common, spec.as_deref()),
        Command::Analyze => cmd_analyze(&cli.common),
    }
}

/// Errors on anything except a closed pipe, which ends output quietly.
fn write_line(out: &mut impl Write, line: std::fmt::Arguments<'_>) -> Result<bool, Error> {
    match out.write_fmt(format_args!("{line}\n")) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(false),
        Err(e) => Err(Error::usage(format!("writing stdout: {e}"))),
    }
}

fn cmd_gen(common: &Common, spec: &str) -> Result<(), Error> {
    let mut spec: CorpusSpec = spec.parse()?;
    if let Some(seed) = common.seed {
        spec.seed = seed;
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for g in pentagonal::generators::corpus_stream(&spec)? {
        let g = g?;
        if !write_line(&mut out, format_args!("{}", gio::to_graph6(&g)))? {
            break;
        }
    }
    Ok(())
}

fn cmd_holes(
    common: &Common,
    min: usize,
    max: Option<usize>,
    parity: holes::Parity,
    count_only: bool,
    witness: bool,
) -> Result<(), Error> {
    let g = read_graph(common)?;
    let max = max.unwrap_or(g.vertex_count()).max(min);
    if witness {
        let mut found = None;
        holes::visit_induced_cycles(&g, min, max, parity, common.budget, |c| {
            found = Some(c);
            std::ops::ControlFlow::Break(())
        })?;
        match found {
            Some(c) => emit(
                common,
                json!({"schema": SCHEMA, "witness": c.vertices}),
                cycle_csv(&c),
            ),
            None => emit(common, json!({"schema": SCHEMA, "witness": null}), "none".into()),
        }
        return Ok(());
    }
    let cycles = holes::enumerate_induced_cycles(&g, min, max, parity, common.budget)?;
    if count_only {
        emit(
            common,
            json!({"schema": SCHEMA, "count": cycles.len()}),
            cycles.len().to_string(),
        );
    } else if common.json {
        let lists: Vec<&Vec<usize>> = cycles.iter().map(|c| &c.vertices).collect();
        println!("{}", json!({"schema": SCHEMA, "cycles": lists}));
    } else {
        for c in &cycles {
            println!("{}", cycle_csv(c));
        }
    }
    Ok(())
}

fn cmd_chi(common: &Common, witness: bool) -> Result<(), Error> {
    let g = read_graph(common)?;
    let (chi, colouring) = coloring::chromatic_number(&g)?;
    if common.json {
        let classes: Option<Vec<Vec<usize>>> = witness.then(|| colouring.classes());
        println!("{}", json!({"schema": SCHEMA, "chi": chi, "classes": classes}));
    } else {
        println!("{chi}");
        if witness {
            for (i, class) in colouring.classes().iter().enumerate() {
                let members = class.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                println!("{i}: {members}");
            }
        }
    }
    Ok(())
}

fn cmd_pentagonal(common: &Common) -> Result<(), Error> {
    let g = read_graph(common)?;
    match holes::pentagonality_witness(&g) {
        None => emit(
            common,
            json!({"schema": SCHEMA, "pentagonal": true, "witness": null}),
            "true".into(),
        ),
        Some(c) => emit(
            common,
            json!({"schema": SCHEMA, "pentagonal": false, "witness": c.vertices}),
            format!("false\n{}", cycle_csv(&c)),
        ),
    }
    Ok(())
}

fn cmd_levelling(common: &Common, root: usize, check_stable: bool) -> Result<(), Error> {
    let g = read_graph(common)?;
    let lv = levelling::bfs_levelling(&g, root)?;
    let verdict = check_stable.then(|| levelling::validate_levelling(&g, &lv, true));
    if common.json {
        let levels: Vec<Vec<usize>> = lv.levels.iter().map(|l| l.to_vec()).collect();
        let stable = verdict.as_ref().map(|v| v.is_ok());
        let violation = verdict
            .as_ref()
            .and_then(|v| v.as_ref().err())
            .map(|v| v.to_string());
        println!(
            "{}",
            json!({"schema": SCHEMA, "root": root, "levels": levels, "stable": stable, "violation": violation})
        );
    } else {
        for (i, l) in lv.levels.iter().enumerate() {
            println!("{i}: {}", set_csv(l));
        }
        if let Some(v) = verdict {
            match v {
                Ok(()) => println!("stable: true"),
                Err(violation) => println!("stable: false ({violation})"),
            }
        }
    }
    Ok(())
}

fn cmd_extract(common: &Common, ell: u32, kappa: u32, root: usize) -> Result<(), Error> {
    let g = read_graph(common)?;
    let lv = levelling::bfs_levelling(&g, root)?;
    let outcome = extraction::extract_stable_levelling(&g, &lv, ell, kappa)?;
    let value = match outcome {
        extraction::ExtractOutcome::Stable {
            levelling,
            trace,
            chi_base,
            guaranteed,
        } => {
            let levels: Vec<Vec<usize>> = levelling.levels().iter().map(|l| l.to_vec()).collect();
            let trace_summary = trace.map(|t| {
                json!({
                    "spine": t.spine,
                    "chosen_type": t.chosen_type,
                    "alpha_set_size": t.alpha_set.len(),
                    "j_level_sizes": t.j_levels.iter().map(|l| l.len()).collect::<Vec<_>>(),
                    "return_paths": t.return_paths.len(),
                })
            });
            json!({
                "schema": SCHEMA,
                "outcome": "stable",
                "levels": levels,
                "chi_base": chi_base,
                "guaranteed": guaranteed,
                "trace": trace_summary,
            })
        }
        extraction::ExtractOutcome::Witness(w) => {
            let payload = match &w {
                extraction::Witness::Triangle(c) | extraction::Witness::LongOddHole(c) => {
                    json!({"cycle": c.vertices})
                }
                extraction::Witness::HighChiBall { vertex, ball } => {
                    json!({"vertex": vertex, "ball": ball.to_vec()})
                }
            };
            json!({"schema": SCHEMA, "outcome": "witness", "kind": w.kind(), "payload": payload})
        }
    };
    println!("{value}");
    Ok(())
}

fn cmd_cover_search(common: &Common, target: &str, max_cover: usize) -> Result<(), Error> {
    let h = match target {
        "grotzsch" => pentagonal::generators::grotzsch(),
        "c5" => pentagonal::generators::cycle(5)?,
        "file" => read_graph(common)?,
        other => {
            return Err(Error::usage(format!(
                "unknown cover-search target {other:?} (grotzsch, c5, file)"
            )))
        }
    };
    let outcome = cover::search_one_covering(&h, max_cover, 2, common.budget)?;
    let value = match &outcome {
        cover::CoverSearchOutcome::Found {
            host,
            levelling,
            explored,
            ..
        } => {
            let levels: Vec<Vec<usize>> = levelling.levels().iter().map(|l| l.to_vec()).collect();
            json!({
                "schema": SCHEMA,
                "verdict": "found",
                "explored": explored,
                "witness": {"host_graph6": gio::to_graph6(host), "levels": levels},
            })
        }
        cover::CoverSearchOutcome::Absent { explored } => {
            json!({"schema": SCHEMA, "verdict": "absent", "explored": explored, "witness": null})
        }
        cover::CoverSearchOutcome::BudgetExhausted { explored } => {
            json!({"schema": SCHEMA, "verdict": "budget_exhausted", "explored": explored, "witness": null})
        }
    };
    println!("{value}");
    Ok(())
}

fn report_line(g: &Graph) -> serde_json::Value {
    let g6 = gio::to_graph6(g);
    match bounds::check_graph_against_theorems(g) {
        Err(e) => json!({"schema": SCHEMA, "graph6": g6, "skipped": e.to_string()}),
        Ok(report) => {
            let entries: Vec<serde_json::Value> = report
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id,
                        "applicable": e.applicable,
                        "parameters": e.parameters,
                        "bound": e.bound,
                        "strict": e.strict,
                        "satisfied": e.satisfied,
                    })
                })
                .collect();
            json!({
                "schema": SCHEMA,
                "graph6": g6,
                "n": report.profile.n,
                "chi": report.profile.chi,
                "violations": report.violations(),
                "entries": entries,
            })
        }
    }
}

fn cmd_bounds_check(common: &Common, spec: Option<&str>) -> Result<(), Error> {
    let graphs: Vec<Graph> = match spec {
        Some(spec) => {
            let mut spec: CorpusSpec = spec.parse()?;
            if let Some(seed) = common.seed {
                spec.seed = seed;
            }
            pentagonal::generators::corpus_vec(&spec)?
        }
        None => {
            let text = read_input(common)?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(gio::parse_graph6)
                .collect::<Result<_, _>>()?
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads.max(1))
        .build()
        .map_err(|e| Error::usage(format!("thread pool: {e}")))?;
    let lines: Vec<serde_json::Value> = pool.install(|| {
        use rayon::prelude::*;
        graphs.par_iter().map(report_line).collect()
    });
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut violations = 0usize;
    let mut applicable_counts = std::collections::BTreeMap::<String, usize>::new();
    for line in &lines {
        if line.get("skipped").is_some_and(|s| !s.is_null()) {
            skipped += 1;
        } else {
            checked += 1;
            violations += line["violations"].as_u64().unwrap_or(0) as usize;
            for e in line["entries"].as_array().into_iter().flatten() {
                if e["applicable"].as_bool() == Some(true) {
                    *applicable_counts.entry(e["id"].as_str().unwrap_or("?").into()).or_default() += 1;
                }
            }
        }
        if !write_line(&mut out, format_args!("{line}"))? {
            return Ok(());
        }
    }
    let summary = json!({
        "schema": SCHEMA,
        "summary": true,
        "checked": checked,
        "skipped": skipped,
        "applicable_counts": applicable_counts,
        "violations": violations,
    });
    write_line(&mut out, format_args!("{summary}"))?;
    Ok(())
}

fn cmd_analyze(common: &Common) -> Result<(), Error> {
    let g = read_graph(common)?;
    let p = bounds::profile(&g)?;
    let pentagonal = holes::is_pentagonal(&g);
    let value = json!({
        "schema": SCHEMA,
        "n": p.n,
        "m": p.m,
        "omega": p.omega,
        "chi": p.chi,
        "odd_hole_number": p.odd_hole_number,
        "max_hole_length": p.max_hole_length,
        "has_5_hole": p.has_5_hole,
        "has_7_hole": p.has_7_hole,
        "triangle_free": p.triangle_free,
        "kappa2": p.kappa2,
        "kappa3": p.kappa3,
        "pentagonal": pentagonal,
    });
    if common.json {
        println!("{value}");
    } else {
        println!(
            "n={} m={} omega={} chi={} odd_hole_number={} max_hole_length={} pentagonal={} kappa2={} kappa3={}",
            p.n, p.m, p.omega, p.chi, p.odd_hole_number, p.max_hole_length, pentagonal, p.kappa2, p.kappa3
        );
    }
    Ok(())
}
