use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fpt_ip::generate::{generate, GeneratorSpec, Kind};
use fpt_ip::io::{default_labels, format_intervals, parse_edge_list, parse_intervals};
use fpt_ip::matching::{kernel_bound, kernelize, max_matching, Verdict};
use fpt_ip::oracle::{subset_longest_path, ORACLE_LIMIT};
use fpt_ip::pipeline::{longest_path, reduce};
use fpt_ip::Error;

mod bench;
mod dump;

#[derive(Parser)]
#[command(
    name = "fpt-ip",
    version,
    about = "Longest path on interval graphs near proper interval graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance in the interval format.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        /// Planted deletion set size (planted only).
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Longest path of an interval file with unit weights.
    Solve {
        file: PathBuf,
        /// Also run the exhaustive search (n <= 18) and fail on disagreement.
        #[arg(long)]
        verify_oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Dump the graph after the first or second reduction.
    Reduce {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        stage: u8,
    },
    /// Time the pipeline on planted instances.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        k_list: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Compare against the exhaustive search where n + k <= 18.
        #[arg(long)]
        verify_oracle: bool,
        /// Print one CSV row per run instead of the summary table.
        #[arg(long)]
        csv: bool,
    },
    /// Decide whether an edge-list graph has a matching of size k.
    Match {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    Proper,
    Planted,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Random => Kind::Random,
            KindArg::Proper => Kind::Proper,
            KindArg::Planted => Kind::Planted,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verify(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::DuplicateEndpoint(_)
            | Error::DegenerateInterval { .. }
            | Error::DuplicateVertexId(_)
            | Error::VertexIdOutOfRange { .. }
            | Error::NegativeWeight(_)
            | Error::WeightCount { .. }
            | Error::InvalidSpec(_)
            | Error::NonUnitWeights => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Gen { kind, n, k, seed } => cmd_gen(kind.into(), n, k, seed),
        Cmd::Solve {
            file,
            verify_oracle,
            json,
        } => cmd_solve(&file, verify_oracle, json),
        Cmd::Reduce { file, stage } => cmd_reduce(&file, stage),
        Cmd::Bench {
            n_list,
            k_list,
            reps,
            seed,
            verify_oracle,
            csv,
        } => bench::run(
            &bench::BenchSpec {
                n_list,
                k_list,
                reps,
                seed,
                verify_oracle,
            },
            csv,
        ),
        Cmd::Match { file, k } => cmd_match(&file, k),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Verify(msg) => eprintln!("verification failed: {msg}"),
                Failure::Internal(msg) => eprintln!("internal error: {msg}"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Usage(_) => 2,
        Failure::Verify(_) => 3,
        Failure::Internal(_) => 1,
    }
}

fn check_oracle(found: usize, oracle: usize) -> Result<(), Failure> {
    if found == oracle {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "pipeline found {found} but exhaustive search found {oracle}"
        )))
    }
}

fn cmd_gen(kind: Kind, n: usize, k: usize, seed: u64) -> Result<(), Failure> {
    let g = generate(&GeneratorSpec { kind, n, k, seed })?;
    print!("{}", format_intervals(&g, &default_labels(g.n()), &[]));
    Ok(())
}

#[derive(serde::Serialize)]
struct SolveDoc<'a> {
    length: usize,
    path: Vec<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_length: Option<usize>,
    stats: fpt_ip::pipeline::Stats,
}

fn cmd_solve(file: &PathBuf, verify_oracle: bool, json: bool) -> Result<(), Failure> {
    let lg = parse_intervals(&read(file)?)?;
    let mut res = longest_path(&lg.graph)?;
    if res.path.first() > res.path.last() {
        res.path.reverse();
    }
    let oracle_length = if verify_oracle && lg.graph.n() <= ORACLE_LIMIT {
        let (len, _) = subset_longest_path(&lg.graph)?;
        check_oracle(res.length, len)?;
        Some(len)
    } else {
        if verify_oracle {
            eprintln!(
                "note: n = {} exceeds {ORACLE_LIMIT}, oracle skipped",
                lg.graph.n()
            );
        }
        None
    };
    let labels: Vec<&str> = res.path.iter().map(|&v| lg.labels[v].as_str()).collect();
    if json {
        let doc = SolveDoc {
            length: res.length,
            path: labels,
            oracle_length,
            stats: res.stats,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::Internal(e.to_string()))?
        );
    } else {
        let mut line = res.length.to_string();
        for l in labels {
            line.push(' ');
            line.push_str(l);
        }
        println!("{line}");
    }
    Ok(())
}

fn cmd_reduce(file: &PathBuf, stage: u8) -> Result<(), Failure> {
    let lg = parse_intervals(&read(file)?)?;
    let red = reduce(&lg.graph)?;
    let text = match stage {
        1 => dump::stage1(&lg, &red),
        _ => dump::stage2(&lg, &red),
    };
    print!("{text}");
    Ok(())
}

fn cmd_match(file: &PathBuf, k: usize) -> Result<(), Failure> {
    let g = parse_edge_list(&read(file)?)?;
    let out = kernelize(&g, k);
    let mut lines = Vec::new();
    let yes = match (&out.verdict, &out.kernel) {
        (Verdict::Kernel, Some((kg, kk, _))) => {
            let mm = max_matching(kg).len();
            lines.push(format!("kernel_vertices {}", kg.n()));
            lines.push(format!("kernel_edges {}", kg.m()));
            lines.push(format!("k_prime {kk}"));
            lines.push(format!("kernel_bound {}", kernel_bound(*kk)));
            lines.push(format!("kernel_matching {mm}"));
            mm >= *kk
        }
        _ => true,
    };
    println!("{}", if yes { "YES" } else { "NO" });
    println!("n {}\nm {}\nk {k}", g.n(), g.m());
    println!("removed_high_degree {}", out.removed_high_degree);
    println!("kernel_skipped {}", out.verdict == Verdict::Yes);
    for l in lines {
        println!("{l}");
    }
    println!("max_probes {}", out.max_probes);
    Ok(())
}
