//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or arguments, 2 fast path
//! inapplicable (rerun with `--oracle`), 3 oracle budget exhausted,
//! 4 `eta --check` found a disagreement.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use phylo_zigzag::bench::run_bench;
use phylo_zigzag::report::{check_record, fast_report, oracle_report, stats_record, EtaReport};
use phylo_zigzag::{
    build_mcst_via_resolution, decompose, eta_exact_with, eta_fast_with, export_dot, phn, random_network,
    validate_network, FastResult, GenParams, OracleError, OracleOptions, PhyloNetwork,
};

#[derive(Parser)]
#[command(name = "phylo-zigzag", version, about = "Zig-zag decomposition and covering subtrees of phylogenetic networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a network against the structural rules.
    Validate(Common),
    /// Maximal zig-zag trails.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Write a trail-colored DOT graph here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Trail counts, δ* and tree-basedness.
    Stats(Common),
    /// η*: fast path by default.
    Eta {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exact: Exact,
        /// Run fast path and oracle and compare.
        #[arg(long, conflicts_with = "oracle")]
        check: bool,
    },
    /// A maximum covering subtree as `.phn`.
    Mcst {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exact: Exact,
    },
    /// Emit a random network as `.phn`.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        leaves: usize,
        #[arg(long, default_value_t = 2)]
        reticulations: usize,
        #[arg(long, default_value_t = 0.0)]
        p11: f64,
        #[arg(long, default_value_t = 0.0)]
        p22: f64,
    },
    /// Time decomposition + fast path over growing random networks.
    Bench {
        /// Target edge counts.
        #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Input `.phn` file; `-` or absent reads standard input.
    file: Option<PathBuf>,
    #[arg(short, long, conflicts_with = "file")]
    input: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Exact {
    /// Force the exhaustive search.
    #[arg(long)]
    oracle: bool,
    /// Cap on oracle search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads for the oracle.
    #[arg(long)]
    threads: Option<usize>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate(c) => validate(&c),
        Command::Decompose { common, dot } => decompose_cmd(&common, dot, true),
        Command::Stats(c) => decompose_cmd(&c, None, false),
        Command::Eta { common, exact, check } => eta(&common, &exact, check),
        Command::Mcst { common, exact } => mcst(&common, &exact),
        Command::Gen {
            seed,
            leaves,
            reticulations,
            p11,
            p22,
        } => {
            let params = GenParams::new(leaves, reticulations, seed).with_probabilities(p11, p22);
            let n = random_network(&params).map_err(|e| fail(1, e.to_string()))?;
            print!("{}", phn::to_phn(&n));
            Ok(())
        }
        Command::Bench {
            sizes,
            seed,
            repeats,
            json,
        } => {
            let report = run_bench(&sizes, seed, repeats).map_err(|e| fail(1, e.to_string()))?;
            if json {
                return print_json(&report);
            }
            println!("{:>10} {:>10} {:>8} {:>10} {:>10}", "edges", "vertices", "W", "seconds", "ns/edge");
            for r in &report.rows {
                println!(
                    "{:>10} {:>10} {:>8} {:>10.4} {:>10.1}",
                    r.edges, r.vertices, r.w_fences, r.seconds, r.ns_per_edge
                );
            }
            if let Some(f) = &report.fit {
                println!("fit: slope {:.2} ns/edge per decade, endpoint ratio {:.3}", f.slope, f.endpoint_ratio);
            }
            Ok(())
        }
    }
}

fn read_input(c: &Common) -> Result<String, Failure> {
    let path = c.file.as_ref().or(c.input.as_ref());
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| fail(1, format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| fail(1, format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn load(c: &Common) -> Result<PhyloNetwork, Failure> {
    phn::parse_phn(&read_input(c)?).map_err(|e| fail(1, e.to_string()))
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let s = serde_json::to_string_pretty(value).map_err(|e| fail(1, e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn validate(c: &Common) -> Outcome {
    let raw = phn::parse_raw(&read_input(c)?).map_err(|e| fail(1, e.to_string()))?;
    let report = validate_network(&raw);
    if c.json {
        print_json(&report)?;
    } else if report.ok {
        println!("ok");
    } else {
        for v in &report.violations {
            println!("{} [{}]: {}", v.rule, v.witness, v.message);
        }
    }
    if report.ok {
        Ok(())
    } else {
        Err(fail(1, format!("{} violation(s)", report.violations.len())))
    }
}

fn decompose_cmd(c: &Common, dot: Option<PathBuf>, with_trails: bool) -> Outcome {
    let n = load(c)?;
    let d = decompose(&n);
    if let Some(path) = dot {
        fs::write(&path, export_dot(&n, Some(&d))).map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
    }
    let rec = stats_record(&n, &d, with_trails);
    if c.json {
        return print_json(&rec);
    }
    println!(
        "vertices {}  edges {}  leaves {}",
        rec.vertices, rec.edges, rec.leaves
    );
    println!(
        "crowns {}  M-fences {}  N-fences {}  W-fences {}",
        rec.counts.crown, rec.counts.m_fence, rec.counts.n_fence, rec.counts.w_fence
    );
    println!("δ* = {}  tree-based: {}", rec.delta_star, if rec.tree_based { "yes" } else { "no" });
    for t in rec.trails.iter().flatten() {
        let edges: Vec<String> = t.edges.iter().map(|[a, b]| format!("{a}->{b}")).collect();
        println!("  #{} {}: {}", t.index, t.kind.as_str(), edges.join(" "));
    }
    Ok(())
}

fn options(e: &Exact) -> Result<OracleOptions, Failure> {
    let parallel = match e.threads {
        Some(0) => return Err(fail(1, "--threads must be at least 1")),
        Some(t) if t > 1 => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .map_err(|err| fail(1, err.to_string()))?;
            true
        }
        _ => false,
    };
    Ok(OracleOptions {
        budget: e.budget,
        parallel,
    })
}

fn oracle_failure(e: OracleError) -> Failure {
    fail(3, e.to_string())
}

fn inapplicable(fast: &FastResult) -> Failure {
    let FastResult::Inapplicable { matching, w_fences } = fast else {
        unreachable!("called on an applicable result")
    };
    fail(
        2,
        format!(
            "fast path inapplicable: only {} of {w_fences} W-fences can be matched, so η* > {w_fences}; rerun with --oracle",
            matching.len()
        ),
    )
}

fn print_eta(report: &EtaReport, json: bool) -> Outcome {
    if json {
        return print_json(report);
    }
    let method = match report.method {
        phylo_zigzag::report::Method::Fast => "fast",
        phylo_zigzag::report::Method::Oracle => "oracle",
    };
    println!("η* = {} ({method}; δ* = {})", report.eta, report.delta_star);
    println!("uncovered: {}", report.uncovered.join(" "));
    if let Some(c) = &report.check {
        let fast = c.fast_eta.map_or("inapplicable".to_owned(), |e| e.to_string());
        println!("check: fast {fast}, oracle {}, {}", c.oracle_eta, if c.agree { "agree" } else { "DISAGREE" });
    }
    Ok(())
}

fn eta(c: &Common, e: &Exact, check: bool) -> Outcome {
    let n = load(c)?;
    let d = decompose(&n);
    let fast = eta_fast_with(&n, &d);
    if !e.oracle && !check {
        if fast.eta().is_none() {
            return Err(inapplicable(&fast));
        }
        let tree = build_mcst_via_resolution(&n).map_err(|err| fail(1, err.to_string()))?;
        return print_eta(&fast_report(&n, &d, &fast, &tree), c.json);
    }
    let exact = eta_exact_with(&n, &options(e)?).map_err(oracle_failure)?;
    let mut report = oracle_report(&n, &d, &fast, &exact);
    if check {
        let rec = check_record(&fast, d.counts().w_fence, exact.eta);
        let agree = rec.agree;
        report.check = Some(rec);
        print_eta(&report, c.json)?;
        if !agree {
            return Err(fail(4, "fast path and oracle disagree"));
        }
        return Ok(());
    }
    print_eta(&report, c.json)
}

fn mcst(c: &Common, e: &Exact) -> Outcome {
    let n = load(c)?;
    let d = decompose(&n);
    let tree = if e.oracle {
        eta_exact_with(&n, &options(e)?).map_err(oracle_failure)?.witness
    } else {
        let fast = eta_fast_with(&n, &d);
        if fast.eta().is_none() {
            return Err(inapplicable(&fast));
        }
        build_mcst_via_resolution(&n).map_err(|err| fail(1, err.to_string()))?
    };
    if c.json {
        #[derive(Serialize)]
        struct Out {
            eta: usize,
            edges: Vec<[String; 2]>,
            uncovered: Vec<String>,
        }
        let out = Out {
            eta: tree.uncovered().len(),
            edges: tree
                .edges()
                .iter()
                .map(|&id| {
                    let (a, b) = n.edge_names(id);
                    [a.to_owned(), b.to_owned()]
                })
                .collect(),
            uncovered: tree.uncovered_names(&n).into_iter().map(str::to_owned).collect(),
        };
        return print_json(&out);
    }
    print!("{}", tree.to_phn(&n));
    Ok(())
}
