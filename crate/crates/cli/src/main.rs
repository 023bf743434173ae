//! `gcoh`: groupoid cohomology, twists and Brauer groups from the command line.
//!
//! Exit codes: 0 on success, 2 when the input is rejected, 1 when an engine
//! reports an internal inconsistency or a verified law fails.

mod cache;
mod job;
mod render;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gcoh_core::abelian::{IntMatrix, JsonInt};
use gcoh_core::groupoid::FiniteSystem;
use gcoh_core::simplicial::{SimplicialComplex, VertexMapJson};
use gcoh_core::tower::Tower;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use cache::Cache;
use job::{Job, JobError, Status, DEFAULT_MAX_M, DEFAULT_MAX_WITNESS, DEFAULT_SAMPLES};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(name = "gcoh", version, about = "Cohomology, twists and Brauer groups of Γ(X, σ)")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Seed for randomized data (cocycle values, bundles, samples).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Directory of cached reports.
    #[arg(long, global = true, env = "GCOH_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Bounds {
    #[arg(long, default_value_t = DEFAULT_MAX_M)]
    max_m: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_WITNESS)]
    max_witness: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Covering map of the k-torus given by an integer matrix.
    Torus {
        /// Square matrix as JSON rows, inline or a path.
        #[arg(long)]
        matrix: String,
    },
    /// The (p, q) solenoid.
    Solenoid {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Simplicial self-map of a finite complex.
    Simplicial {
        /// `{"vertices": [...], "simplices": [[...], ...]}`.
        #[arg(long)]
        complex: String,
        /// `{"vertexMap": {v: w, ...}}` or the bare object.
        #[arg(long)]
        map: String,
    },
    /// A tower of groups, or a list of towers indexed by degree.
    Tower {
        #[arg(long)]
        tower: String,
    },
    /// Groupoid laws and cocycle extension on a truncation.
    GroupoidVerify {
        /// `{"points": [...], "sigma": {x: y, ...}}`.
        #[arg(long)]
        system: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Skew product by a finite-group-valued function.
    Skew {
        #[arg(long)]
        system: String,
        /// Products of `Z/n` and `S3`, e.g. `Z/2xZ/3`.
        #[arg(long)]
        group: String,
        /// `{x: element index, ...}`; random when omitted.
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Twist built from Z/n-bundle data.
    Twist {
        #[arg(long)]
        system: String,
        #[arg(long)]
        fiber_n: usize,
        /// `{x: [ψ_x(0), ..., ψ_x(n-1)], ...}`; random when omitted.
        #[arg(long, conflicts_with = "trivial_bundle")]
        bundle: Option<String>,
        /// Use `ψ_x = id` at every point.
        #[arg(long)]
        trivial_bundle: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Hilbert-module identities of ℓ²(σ).
    Correspondence {
        #[arg(long)]
        system: String,
        /// Random functions added to the point indicators.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Runs a JSON array of jobs, each `{"command": ..., ...}`.
    Batch {
        #[arg(long)]
        manifest: String,
        #[arg(long)]
        workers: Option<usize>,
    },
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn read_json<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T, JobError> {
    let trimmed = arg.trim_start();
    let source = if trimmed.starts_with(['{', '[', '"']) || trimmed.parse::<f64>().is_ok() {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| JobError::invalid(format!("cannot read --{} file {:?}: {}", what, arg, e)))?
    };
    serde_json::from_str(&source).map_err(|e| JobError::invalid(format!("--{}: {}", what, e)))
}

fn parse_int(what: &str, s: &str) -> Result<JsonInt, JobError> {
    s.trim()
        .parse()
        .map(JsonInt)
        .map_err(|_| JobError::invalid(format!("--{}: not an integer: {:?}", what, s)))
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum MapArg {
    Wrapped(VertexMapJson),
    Bare(BTreeMap<String, String>),
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum TowerArg {
    One(Tower),
    Many(Vec<Tower>),
}

fn build_job(command: Command, seed: u64) -> Result<Job, JobError> {
    Ok(match command {
        Command::Torus { matrix } => Job::Torus {
            matrix: read_json::<IntMatrix>("matrix", &matrix)?,
        },
        Command::Solenoid { p, q } => Job::Solenoid {
            p: parse_int("p", &p)?,
            q: parse_int("q", &q)?,
        },
        Command::Simplicial { complex, map } => Job::Simplicial {
            complex: read_json::<SimplicialComplex>("complex", &complex)?,
            map: match read_json::<MapArg>("map", &map)? {
                MapArg::Wrapped(w) => w.vertex_map,
                MapArg::Bare(b) => b,
            },
        },
        Command::Tower { tower } => Job::Tower {
            towers: match read_json::<TowerArg>("tower", &tower)? {
                TowerArg::One(t) => vec![t],
                TowerArg::Many(ts) => ts,
            },
        },
        Command::GroupoidVerify { system, bounds } => Job::GroupoidVerify {
            system: read_json("system", &system)?,
            max_m: bounds.max_m,
            max_witness: bounds.max_witness,
            seed,
        },
        Command::Skew {
            system,
            group,
            c,
            bounds,
        } => Job::Skew {
            system: read_json("system", &system)?,
            group,
            c: c.map(|c| read_json("c", &c)).transpose()?,
            max_m: bounds.max_m,
            max_witness: bounds.max_witness,
            seed,
        },
        Command::Twist {
            system,
            fiber_n,
            bundle,
            trivial_bundle,
            bounds,
        } => {
            let system: FiniteSystem = read_json("system", &system)?;
            let bundle = if trivial_bundle {
                Some(
                    system
                        .labels()
                        .iter()
                        .map(|l| (l.clone(), (0..fiber_n).collect()))
                        .collect(),
                )
            } else {
                bundle.map(|b| read_json("bundle", &b)).transpose()?
            };
            Job::Twist {
                system,
                fiber_n,
                bundle,
                max_m: bounds.max_m,
                max_witness: bounds.max_witness,
                seed,
            }
        }
        Command::Correspondence { system, samples } => Job::Correspondence {
            system: read_json("system", &system)?,
            samples,
            seed,
        },
        Command::Batch { .. } => unreachable!("batch is dispatched separately"),
    })
}

/// A finished job: exit status plus the rendered JSON report, if any.
struct Outcome {
    status: Status,
    report: Option<String>,
    error: Option<String>,
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn run_job(job: &Job, cache: Option<&Cache>) -> Outcome {
    let input = job.canonical();
    let key = Cache::key(&input, VERSION);
    if let Some(text) = cache.and_then(|c| c.get(&key, &input, VERSION)) {
        return Outcome {
            status: Status::Ok,
            report: Some(text),
            error: None,
        };
    }
    match job.evaluate() {
        Ok(eval) => {
            let envelope = json!({
                "tool": "gcoh",
                "version": VERSION,
                "command": job.name(),
                "input": input,
                "result": eval.result,
                "pass": eval.pass,
            });
            let text = render(&envelope);
            let status = if eval.pass { Status::Ok } else { Status::Internal };
            if status == Status::Ok {
                if let Some(c) = cache {
                    if let Err(e) = c.put(&key, &text) {
                        log::warn!("could not write cache entry {}: {}", key, e);
                    }
                }
            }
            Outcome {
                status,
                report: Some(text),
                error: (!eval.pass).then(|| "a verified law failed".to_string()),
            }
        }
        Err(e) => Outcome {
            status: e.status,
            report: None,
            error: Some(e.message),
        },
    }
}

fn open_cache(dir: Option<&PathBuf>) -> Option<Cache> {
    let dir = dir?;
    match Cache::open(dir) {
        Ok(c) => Some(c),
        Err(e) => {
            log::warn!("cache directory {} unusable: {}", dir.display(), e);
            None
        }
    }
}

fn emit(format: Format, command: &str, report: &str) {
    match format {
        Format::Json => print!("{}", report),
        Format::Table => {
            let v: Value = serde_json::from_str(report).expect("reports are JSON");
            print!("{}", render::table(command, &v["result"]));
        }
    }
}

fn batch(manifest: &str, workers: Option<usize>, cache: Option<&Cache>, format: Format) -> Status {
    let entries: Vec<Value> = match read_json("manifest", manifest) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.status;
        }
    };
    if entries.is_empty() {
        eprintln!("error: invalid input: manifest is empty");
        return Status::Invalid;
    }
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = workers {
            b = b.num_threads(w.max(1));
        }
        b.build().expect("thread pool")
    };
    let outcomes: Vec<(String, Outcome)> = pool.install(|| {
        entries
            .par_iter()
            .map(|entry| match serde_json::from_value::<Job>(entry.clone()) {
                Ok(job) => (job.name().to_string(), run_job(&job, cache)),
                Err(e) => (
                    entry.get("command").and_then(Value::as_str).unwrap_or("?").to_string(),
                    Outcome {
                        status: Status::Invalid,
                        report: None,
                        error: Some(format!("invalid input: {}", e)),
                    },
                ),
            })
            .collect()
    });
    let overall = outcomes.iter().map(|(_, o)| o.status).max().unwrap_or(Status::Ok);
    match format {
        Format::Json => {
            let jobs: Vec<Value> = outcomes
                .iter()
                .enumerate()
                .map(|(i, (name, o))| {
                    let mut v = json!({"index": i, "command": name, "exitCode": o.status.code()});
                    if let Some(r) = &o.report {
                        v["report"] = serde_json::from_str(r).expect("reports are JSON");
                    }
                    if let Some(e) = &o.error {
                        v["error"] = json!(e);
                    }
                    v
                })
                .collect();
            print!(
                "{}",
                render(&json!({"tool": "gcoh", "version": VERSION, "jobs": jobs, "exitCode": overall.code()}))
            );
        }
        Format::Table => {
            for (i, (name, o)) in outcomes.iter().enumerate() {
                println!("== job {} ({}): exit {}", i, name, o.status.code());
                if let Some(r) = &o.report {
                    emit(Format::Table, name, r);
                }
                if let Some(e) = &o.error {
                    println!("error: {}", e);
                }
            }
        }
    }
    overall
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cache = open_cache(cli.cache_dir.as_ref());
    let status = match cli.command {
        Command::Batch { manifest, workers } => batch(&manifest, workers, cache.as_ref(), cli.format),
        command => match build_job(command, cli.seed) {
            Ok(job) => {
                let out = run_job(&job, cache.as_ref());
                if let Some(r) = &out.report {
                    emit(cli.format, job.name(), r);
                }
                if let Some(e) = &out.error {
                    eprintln!("error: {}", e);
                }
                out.status
            }
            Err(e) => {
                eprintln!("error: {}", e.message);
                e.status
            }
        },
    };
    ExitCode::from(status.code() as u8)
}
