//! `dbe`: count and list lines of graph metrics, recognise bisplit graphs,
//! and run the exhaustive theorem sweeps.
//!
//! Exit codes: 0 on success, 1 when a verification finds a counterexample or
//! a mismatch, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use dbe_core::bisplit::{find_max_partition, refine, Class};
use dbe_core::enumerate::gen_bisplit_graphs;
use dbe_core::lemmas::verify_lemmas;
use dbe_core::lines::all_lines;
use dbe_core::proof::verify_proof_on_graph;
use dbe_core::sweep::{verify_theorem, SweepConfig, SweepMode, DEFAULT_SWEEP_MAX_N};
use dbe_core::Graph;

#[derive(Parser, Debug)]
#[command(name = "dbe", version, about = "Lines in graph metrics and the de Bruijn-Erdos property")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the number of distinct lines and whether one is universal.
    LinesCount { file: PathBuf },
    /// List every distinct line.
    LinesShow {
        file: PathBuf,
        /// Also list the pairs generating each line.
        #[arg(long)]
        pairs: bool,
    },
    /// Find a bisplit partition maximising |Y ∪ Z|.
    BisplitCheck {
        file: PathBuf,
        /// Print the refined classes as well.
        #[arg(long)]
        refined: bool,
    },
    /// Check every connected bisplit graph up to a size bound.
    VerifyTheorem {
        #[arg(long, default_value_t = DEFAULT_SWEEP_MAX_N)]
        max_n: usize,
        /// Replay every step of the case analysis, not just the conclusion.
        #[arg(long)]
        full_proof: bool,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        json: bool,
    },
    /// Replay the case analysis on one graph.
    VerifyProof {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force the two counting lemmas on a square grid.
    VerifyLemmas {
        #[arg(long, default_value_t = 100)]
        bound: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generate the connected bisplit graphs on N vertices, in graph6.
    GenBisplit {
        #[arg(long)]
        n: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        graph6: Option<PathBuf>,
    },
}

/// Reads a graph in graph6 or edge-list form.
fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let looks_graph6 = first
        .bytes()
        .next()
        .is_some_and(|b| (63..=126).contains(&b) || b == b'>');
    if looks_graph6 {
        if let Ok(g) = Graph::parse_graph6(first) {
            return Ok(g);
        }
    }
    Graph::parse_edge_list(&text).with_context(|| format!("{}", path.display()))
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::LinesCount { file } => {
            let g = read_graph(&file)?;
            let lines = all_lines(&g)?;
            println!(
                "n={} lines={} universal={}",
                g.n(),
                lines.distinct_count(),
                if lines.universal_pair().is_some() { "yes" } else { "no" }
            );
            Ok(true)
        }
        Command::LinesShow { file, pairs } => {
            let g = read_graph(&file)?;
            let lines = all_lines(&g)?;
            for (members, gens) in lines.lines().iter().zip(lines.generators_by_line()) {
                if pairs {
                    let gens: Vec<String> = gens.iter().map(|(a, b)| format!("({a},{b})")).collect();
                    println!("{members} <- {}", gens.join(" "));
                } else {
                    println!("{members}");
                }
            }
            Ok(true)
        }
        Command::BisplitCheck { file, refined } => {
            let g = read_graph(&file)?;
            match find_max_partition(&g)? {
                None => println!("bisplit: no"),
                Some(p) => {
                    println!("bisplit: yes X={} Y={} Z={}", p.x, p.y, p.z);
                    if refined {
                        let r = refine(&g, &p)?;
                        let parts: Vec<String> = Class::ALL
                            .iter()
                            .map(|&c| format!("{}={}", c.name(), r.class(c)))
                            .collect();
                        println!("{}", parts.join(" "));
                    }
                }
            }
            Ok(true)
        }
        Command::VerifyTheorem {
            max_n,
            full_proof,
            workers,
            json,
        } => {
            let cfg = SweepConfig {
                max_n,
                mode: if full_proof {
                    SweepMode::FullProof
                } else {
                    SweepMode::TheoremOnly
                },
                workers,
                output: None,
            };
            let report = verify_theorem(&cfg)?;
            if json {
                print_json(&report)?;
            } else {
                for s in &report.sizes {
                    let claims = s.claim_totals();
                    println!(
                        "n={:2} graphs={:6} universal={:6} enough_lines={:6} fails={} checks pass={} vacuous={} mismatch={}",
                        s.n, s.graphs, s.universal, s.enough_lines, s.fails, claims.pass, claims.vacuous, claims.fail
                    );
                }
                println!(
                    "counterexamples: {} PROOF_MISMATCH: {}",
                    report.counterexamples.len(),
                    report.mismatches.len()
                );
                for g in &report.counterexamples {
                    println!("counterexample {g}");
                }
                for m in &report.mismatches {
                    println!("mismatch {} {}", m.graph, m.messages.join("; "));
                }
            }
            Ok(report.ok())
        }
        Command::VerifyProof { file, json } => {
            let g = read_graph(&file)?;
            let report = verify_proof_on_graph(&g)?;
            if json {
                print_json(&report)?;
            } else {
                let case = report.case.map_or("-".to_string(), |c| c.to_string());
                println!("case: {case} route: {}", report.route);
                println!("partition: X={} Y={} Z={}", report.partition.x, report.partition.y, report.partition.z);
                for f in &report.facts {
                    println!("fact {}: {}", f.id, f.status);
                }
                for t in &report.table_reports {
                    println!(
                        "table {}: {} ({} distinct lines, summed bound {} vs {})",
                        t.table, t.status, t.union_count, t.summed_bound, t.target
                    );
                }
                let failed = report.checks.iter().filter(|c| c.status.to_string() == "fail");
                for c in failed {
                    println!("failed check {}: {}", c.id, c.detail);
                }
                println!("verdict: {} oracle: {}", report.verdict, report.oracle_verdict);
                for m in &report.mismatches {
                    println!("{m}");
                }
            }
            Ok(!report.is_mismatch())
        }
        Command::VerifyLemmas { bound, json } => {
            let report = verify_lemmas(bound)?;
            if json {
                print_json(&report)?;
            } else {
                let ok = |b: bool| if b { "OK" } else { "FAILED" };
                let sols: Vec<String> = report
                    .lemma2_solutions
                    .iter()
                    .map(|(x, y)| format!("({x},{y})"))
                    .collect();
                println!(
                    "lemma1: {} lemma2: {{{}}} {} trinomial: {}",
                    ok(report.lemma1_ok),
                    sols.join(","),
                    ok(report.lemma2_ok),
                    ok(report.trinomial_ok)
                );
            }
            Ok(report.all_ok())
        }
        Command::GenBisplit { n, graph6 } => {
            let graphs = gen_bisplit_graphs(n)?;
            let mut out = String::new();
            for g in &graphs {
                out.push_str(&g.to_graph6());
                out.push('\n');
            }
            match graph6 {
                Some(path) => {
                    fs::write(&path, out).with_context(|| format!("cannot write {}", path.display()))?;
                    println!("{} graphs written to {}", graphs.len(), path.display());
                }
                None => print!("{out}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
