//! Command-line front end for the [`heptacensus`] library.
//!
//! Exit codes: 0 = success / verified, 1 = verification mismatch,
//! 2 = invalid input (usage errors and module errors alike).

use clap::{Parser, Subcommand, ValueEnum};
use heptacensus::{
    census_extend_jobs, census_subsets, check_bounds, check_integrality, construct,
    count_polygons_jobs, emit_graph6, evaluate_h, evaluate_p, feasible_params, fit_and_verify,
    generate_catalog, load_or_build, parse_graph6, verify_srg, Catalog, Classifier, CountVector,
    HostGraph, SrgFailure, SrgParams, SrgVerdict,
};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "heptacensus",
    version,
    about = "Catalog, census, and counting-identity checks for 7-vertex subgraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the 19-class catalog of admissible Hamiltonian order-7 graphs.
    Catalog {
        /// json: one array with id, graph6, edges, hamiltonian, automorphisms;
        /// g6: one graph6 record per line in id order.
        #[arg(long, value_enum, default_value_t = CatalogFormat::Json)]
        format: CatalogFormat,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count induced occurrences of every catalog class in a host graph.
    Census {
        /// Host file: graph6, one record per line.
        #[arg(long)]
        host: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
        /// Worker threads for the extension engine (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Process every record in the host file (one JSON object per line).
        #[arg(long)]
        all: bool,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count induced cycles p_3..p_7 and compare them with the closed forms.
    Polygons {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fit the free variables and verify all 19 counting identities.
    Identities {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether a host is strongly regular, reporting the signature or a witness.
    VerifySrg {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        all: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the feasible (n, k) parameter pairs with λ = 1, μ = 2.
    Params {
        #[arg(long = "max-k")]
        max_k: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a named host graph as graph6.
    Construct {
        /// rook3x3, paley9, paley(5), cycle(m), or complete(m).
        #[arg(long)]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Currently the extension engine.
    Auto,
    /// Exhaustive 7-subset oracle (hosts up to order 64).
    Subset,
    /// Connected-extension enumerator.
    Extend,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalogFormat {
    Json,
    G6,
}

/// Parses an argument list (without the binary name), as the shell would.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    Cli::try_parse_from(
        std::iter::once(OsString::from("heptacensus")).chain(argv.into_iter().map(Into::into)),
    )
}

/// Executes a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match execute(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn execute(cmd: Command) -> Result<u8, String> {
    match cmd {
        Command::Catalog { format, output } => cmd_catalog(format, output.as_deref()),
        Command::Census {
            host,
            engine,
            jobs,
            format,
            all,
            output,
        } => cmd_census(
            &host,
            engine,
            resolve_jobs(jobs),
            format,
            all,
            output.as_deref(),
        ),
        Command::Polygons {
            host,
            jobs,
            all,
            output,
        } => cmd_polygons(&host, resolve_jobs(jobs), all, output.as_deref()),
        Command::Identities {
            host,
            jobs,
            all,
            output,
        } => cmd_identities(&host, resolve_jobs(jobs), all, output.as_deref()),
        Command::VerifySrg { host, all, output } => cmd_verify_srg(&host, all, output.as_deref()),
        Command::Params { max_k, output } => cmd_params(max_k, output.as_deref()),
        Command::Construct { name, output } => cmd_construct(&name, output.as_deref()),
    }
}

fn resolve_jobs(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

fn the_catalog() -> Result<Catalog, String> {
    generate_catalog(7, true).map_err(|e| e.to_string())
}

fn the_classifier(catalog: &Catalog) -> Result<Classifier, String> {
    load_or_build(catalog).map_err(|e| e.to_string())
}

/// Reads the host file: the first graph6 record, or all of them under `--all`.
fn read_hosts(path: &Path, all: bool) -> Result<Vec<HostGraph>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut hosts = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|e| format!("{}:{}: {e}", path.display(), idx + 1))?;
        hosts.push(g);
        if !all {
            break;
        }
    }
    if hosts.is_empty() {
        return Err(format!("{}: no graph6 records", path.display()));
    }
    Ok(hosts)
}

/// Writes one record per host: pretty JSON for a single host, one compact
/// JSON object per line in batch mode.
fn emit_records(records: &[Value], output: Option<&Path>) -> Result<(), String> {
    let text = if records.len() == 1 {
        let mut t = serde_json::to_string_pretty(&records[0]).expect("serializable");
        t.push('\n');
        t
    } else {
        let mut t = String::new();
        for r in records {
            t.push_str(&serde_json::to_string(r).expect("serializable"));
            t.push('\n');
        }
        t
    };
    write_out(&text, output)
}

fn write_out(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn host_json(host: &HostGraph) -> Value {
    json!({ "n": host.order(), "g6": emit_graph6(host) })
}

fn cmd_catalog(format: CatalogFormat, output: Option<&Path>) -> Result<u8, String> {
    let cat = the_catalog()?;
    let text = match format {
        CatalogFormat::G6 => {
            let mut t = String::new();
            for e in cat.entries() {
                t.push_str(&emit_graph6(&HostGraph::from(&e.graph)));
                t.push('\n');
            }
            t
        }
        CatalogFormat::Json => {
            let arr: Vec<Value> = cat
                .entries()
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id,
                        "graph6": emit_graph6(&HostGraph::from(&e.graph)),
                        "edges": e.edge_count,
                        "hamiltonian": e.hamiltonian,
                        "automorphisms": e.automorphism_count,
                    })
                })
                .collect();
            let mut t = serde_json::to_string_pretty(&Value::Array(arr)).expect("serializable");
            t.push('\n');
            t
        }
    };
    write_out(&text, output)?;
    Ok(0)
}

fn run_census(
    host: &HostGraph,
    classifier: &Classifier,
    engine: Engine,
    jobs: usize,
) -> Result<CountVector, String> {
    match engine {
        Engine::Subset => census_subsets(host, classifier),
        Engine::Auto | Engine::Extend => census_extend_jobs(host, classifier, jobs),
    }
    .map_err(|e| e.to_string())
}

fn cmd_census(
    host_path: &Path,
    engine: Engine,
    jobs: usize,
    format: OutputFormat,
    all: bool,
    output: Option<&Path>,
) -> Result<u8, String> {
    if all && format == OutputFormat::Csv {
        return Err("--all emits one JSON object per line; use --format json".into());
    }
    let cat = the_catalog()?;
    let cls = the_classifier(&cat)?;
    let hosts = read_hosts(host_path, all)?;
    let mut records = Vec::new();
    let mut csv = String::from("id,graph6,count\n");
    for host in &hosts {
        let t0 = Instant::now();
        let counts = run_census(host, &cls, engine, jobs)?;
        let elapsed_ms = t0.elapsed().as_millis() as u64;
        match format {
            OutputFormat::Json => records.push(json!({
                "host": host_json(host),
                "catalog_hash": cat.content_hash_hex(),
                "counts": cat.entries().iter().map(|e| json!({
                    "id": e.id,
                    "g6": emit_graph6(&HostGraph::from(&e.graph)),
                    "count": counts.counts[e.id],
                })).collect::<Vec<Value>>(),
                "elapsed_ms": elapsed_ms,
            })),
            OutputFormat::Csv => {
                for e in cat.entries() {
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        e.id,
                        emit_graph6(&HostGraph::from(&e.graph)),
                        counts.counts[e.id]
                    ));
                }
            }
        }
    }
    match format {
        OutputFormat::Json => emit_records(&records, output)?,
        OutputFormat::Csv => write_out(&csv, output)?,
    }
    Ok(0)
}

fn cmd_polygons(
    host_path: &Path,
    jobs: usize,
    all: bool,
    output: Option<&Path>,
) -> Result<u8, String> {
    let hosts = read_hosts(host_path, all)?;
    let mut records = Vec::new();
    let mut worst = 0u8;
    for host in &hosts {
        let measured = count_polygons_jobs(host, jobs);
        let params = host
            .regular_degree()
            .and_then(|k| SrgParams::new(host.order() as u64, k as u64).ok());
        let mut notes: Vec<String> = Vec::new();
        let mut code = 0u8;
        let formula = match &params {
            None => {
                notes.push(
                    "host is not a regular srg(n,k,1,2) candidate; closed forms not evaluated"
                        .into(),
                );
                Value::Null
            }
            Some(p) => {
                let (p3, p4, p5, p6_lower, p7_upper) = evaluate_p(p);
                for (name, formula, measured) in [
                    ("p_3", &p3, measured.p3),
                    ("p_4", &p4, measured.p4),
                    ("p_5", &p5, measured.p5),
                ] {
                    if *formula == rational(measured) {
                        notes.push(format!("{name} matches the closed form"));
                    } else {
                        notes.push(format!(
                            "{name} measured {measured} differs from the closed form {formula}"
                        ));
                        code = 1;
                    }
                }
                if p6_lower == rational(measured.p6) {
                    notes
                        .push("p_6 attains its lower bound — conjecture holds on this host".into());
                } else if p6_lower < rational(measured.p6) {
                    notes.push(format!(
                        "p_6 measured {} exceeds its lower bound {p6_lower}",
                        measured.p6
                    ));
                } else {
                    notes.push(format!(
                        "p_6 measured {} violates its lower bound {p6_lower}",
                        measured.p6
                    ));
                    code = 1;
                }
                if p7_upper == rational(measured.p7) {
                    notes
                        .push("p_7 attains its upper bound — conjecture holds on this host".into());
                } else if p7_upper > rational(measured.p7) {
                    notes.push(format!(
                        "p_7 measured {} is below its upper bound {p7_upper}",
                        measured.p7
                    ));
                } else {
                    notes.push(format!(
                        "p_7 measured {} violates its upper bound {p7_upper}",
                        measured.p7
                    ));
                    code = 1;
                }
                json!({
                    "p3": p3.to_string(),
                    "p4": p4.to_string(),
                    "p5": p5.to_string(),
                    "p6_lower": p6_lower.to_string(),
                    "p7_upper": p7_upper.to_string(),
                })
            }
        };
        records.push(json!({
            "host": host_json(host),
            "params": params_json(&params),
            "measured": {
                "p3": measured.p3,
                "p4": measured.p4,
                "p5": measured.p5,
                "p6": measured.p6,
                "p7": measured.p7,
            },
            "formula": formula,
            "notes": notes,
        }));
        worst = worst.max(code);
    }
    emit_records(&records, output)?;
    Ok(worst)
}

fn rational(x: u64) -> heptacensus::BigRational {
    heptacensus::BigRational::from_integer(x.into())
}

fn params_json(params: &Option<SrgParams>) -> Value {
    match params {
        None => Value::Null,
        Some(p) => json!({ "n": p.n, "k": p.k, "lambda": p.lambda(), "mu": p.mu() }),
    }
}

fn cmd_identities(
    host_path: &Path,
    jobs: usize,
    all: bool,
    output: Option<&Path>,
) -> Result<u8, String> {
    let cat = the_catalog()?;
    let cls = the_classifier(&cat)?;
    let hosts = read_hosts(host_path, all)?;
    let mut records = Vec::new();
    let mut worst = 0u8;
    for host in &hosts {
        let k = host
            .regular_degree()
            .ok_or_else(|| "identities require a regular host".to_string())?;
        let params = SrgParams::new(host.order() as u64, k as u64).map_err(|e| e.to_string())?;
        let census = census_extend_jobs(host, &cls, jobs).map_err(|e| e.to_string())?;
        let fit = fit_and_verify(&census, &params).map_err(|e| e.to_string())?;

        let free = fit
            .fitted()
            .or_else(|| fit.residual.as_ref().and_then(|r| r.free));
        let bounds_ok = free.is_some_and(|fv| check_bounds(&fv));
        let violations: Vec<Value> = check_integrality(&params, &free.unwrap_or_default())
            .into_iter()
            .map(|v| json!({ "formula": v.formula, "value": v.value.to_string() }))
            .collect();

        let per_index: Vec<Value> = match fit.candidates.first() {
            Some(c) => {
                let table = evaluate_h(&params, &c.free);
                (0..19)
                    .map(|id| {
                        let fi = c.assignment[id];
                        json!({
                            "id": id,
                            "formula": format!("h_{fi}"),
                            "predicted": table.h[fi].to_string(),
                            "measured": census.counts[id],
                        })
                    })
                    .collect()
            }
            None => (0..19)
                .map(|id| {
                    json!({
                        "id": id,
                        "formula": Value::Null,
                        "predicted": Value::Null,
                        "measured": census.counts[id],
                    })
                })
                .collect(),
        };
        let residual = match &fit.residual {
            None => Value::Null,
            Some(r) => json!({
                "free": r.free.map(|fv| json!({ "n3": fv.n3, "h11": fv.h11 })),
                "unmatched_predicted": r.unmatched_predicted.iter().map(|(name, v)| {
                    json!({ "formula": name, "value": v.to_string() })
                }).collect::<Vec<Value>>(),
                "unmatched_measured": r.unmatched_measured,
            }),
        };

        records.push(json!({
            "host": host_json(host),
            "params": params_json(&Some(params)),
            "catalog_hash": cat.content_hash_hex(),
            "fitted": fit.fitted().map(|fv| json!({ "n3": fv.n3, "h11": fv.h11 })),
            "matched": fit.matched,
            "per_index": per_index,
            "bounds_ok": bounds_ok,
            "integrality_violations": violations,
            "residual": residual,
        }));
        if !fit.matched {
            worst = 1;
        }
    }
    emit_records(&records, output)?;
    Ok(worst)
}

fn failure_json(failure: &SrgFailure) -> Value {
    match *failure {
        SrgFailure::NotRegular { a, deg_a, b, deg_b } => json!({
            "kind": "not-regular",
            "witness": format!("deg({a}) = {deg_a} but deg({b}) = {deg_b}"),
            "a": a, "deg_a": deg_a, "b": b, "deg_b": deg_b,
        }),
        SrgFailure::Complete => json!({
            "kind": "complete",
            "witness": "k = n - 1: no non-adjacent pairs, μ is vacuous",
        }),
        SrgFailure::Edgeless => json!({
            "kind": "edgeless",
            "witness": "k = 0: no adjacent pairs, λ is vacuous",
        }),
        SrgFailure::AdjacentCommonMismatch {
            u,
            v,
            common,
            expected,
        } => json!({
            "kind": "adjacent-common-mismatch",
            "witness": format!(
                "adjacent pair ({u}, {v}) has {common} common neighbors, expected λ = {expected}"
            ),
            "u": u, "v": v, "common": common, "expected": expected,
        }),
        SrgFailure::NonAdjacentCommonMismatch {
            u,
            v,
            common,
            expected,
        } => json!({
            "kind": "non-adjacent-common-mismatch",
            "witness": format!(
                "non-adjacent pair ({u}, {v}) has {common} common neighbors, expected μ = {expected}"
            ),
            "u": u, "v": v, "common": common, "expected": expected,
        }),
    }
}

fn cmd_verify_srg(host_path: &Path, all: bool, output: Option<&Path>) -> Result<u8, String> {
    let hosts = read_hosts(host_path, all)?;
    let mut records = Vec::new();
    let mut worst = 0u8;
    for host in &hosts {
        let verdict = verify_srg(host);
        let record = match verdict {
            SrgVerdict::Srg(sig) => json!({
                "host": host_json(host),
                "is_srg": true,
                "signature": { "n": sig.n, "k": sig.k, "lambda": sig.lambda, "mu": sig.mu },
                "failure": Value::Null,
            }),
            SrgVerdict::NotSrg(f) => {
                worst = 1;
                json!({
                    "host": host_json(host),
                    "is_srg": false,
                    "signature": Value::Null,
                    "failure": failure_json(&f),
                })
            }
        };
        records.push(record);
    }
    emit_records(&records, output)?;
    Ok(worst)
}

fn cmd_params(max_k: u64, output: Option<&Path>) -> Result<u8, String> {
    let arr: Vec<Value> = feasible_params(max_k)
        .iter()
        .map(|p| json!({ "n": p.n, "k": p.k, "lambda": p.lambda(), "mu": p.mu() }))
        .collect();
    let record = json!({ "max_k": max_k, "feasible": arr });
    emit_records(&[record], output)?;
    Ok(0)
}

fn cmd_construct(name: &str, output: Option<&Path>) -> Result<u8, String> {
    let host = construct(name).map_err(|e| e.to_string())?;
    let mut text = emit_graph6(&host);
    text.push('\n');
    write_out(&text, output)?;
    Ok(0)
}
