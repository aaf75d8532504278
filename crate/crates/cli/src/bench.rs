//! Timing runs over planted instances.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use fpt_ip::generate::{generate, GeneratorSpec, Kind};
use fpt_ip::oracle::{subset_longest_path, ORACLE_LIMIT};
use fpt_ip::pipeline::longest_path;

use crate::{check_oracle, Failure};

pub struct BenchSpec {
    pub n_list: Vec<usize>,
    pub k_list: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub verify_oracle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub instance_id: usize,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub d_size: usize,
    pub kappa: u128,
    pub b_size: usize,
    pub answer_length: usize,
    pub t_preprocess_ns: u64,
    pub t_reduce1_ns: u64,
    pub t_reduce2_ns: u64,
    pub t_dp_ns: u64,
    pub t_lift_ns: u64,
    pub oracle_length: Option<usize>,
}

/// Instances in `(n, k, rep)` order; instance `i` uses seed `seed + i`.
fn corpus(spec: &BenchSpec) -> Vec<(usize, GeneratorSpec)> {
    let mut out = Vec::new();
    for &n in &spec.n_list {
        for &k in &spec.k_list {
            for _ in 0..spec.reps {
                let id = out.len();
                out.push((
                    id,
                    GeneratorSpec {
                        kind: Kind::Planted,
                        n,
                        k,
                        seed: spec.seed.wrapping_add(id as u64),
                    },
                ));
            }
        }
    }
    out
}

fn run_one(id: usize, gs: &GeneratorSpec, verify: bool) -> Result<BenchRecord, Failure> {
    let g = generate(gs)?;
    let r = longest_path(&g)?;
    let oracle_length = if verify && g.n() <= ORACLE_LIMIT {
        Some(subset_longest_path(&g)?.0)
    } else {
        None
    };
    let s = r.stats;
    Ok(BenchRecord {
        instance_id: id,
        n: s.n,
        m: s.m,
        seed: gs.seed,
        d_size: s.d_size,
        kappa: s.kappa,
        b_size: s.b_size,
        answer_length: r.length,
        t_preprocess_ns: s.t_preprocess_ns,
        t_reduce1_ns: s.t_reduce1_ns,
        t_reduce2_ns: s.t_reduce2_ns,
        t_dp_ns: s.t_dp_ns,
        t_lift_ns: s.t_lift_ns,
        oracle_length,
    })
}

fn threads() -> Result<Option<usize>, Failure> {
    match std::env::var("FPT_IP_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Failure::Usage(format!(
                "FPT_IP_THREADS must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

pub fn records(spec: &BenchSpec) -> Result<Vec<BenchRecord>, Failure> {
    if spec.n_list.is_empty() || spec.k_list.is_empty() || spec.reps == 0 {
        return Err(Failure::Usage(
            "n-list, k-list and reps must be nonempty".into(),
        ));
    }
    let jobs = corpus(spec);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads()? {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Failure::Internal(e.to_string()))?;
    let rows: Vec<Result<BenchRecord, Failure>> = pool.install(|| {
        jobs.par_iter()
            .map(|(id, gs)| run_one(*id, gs, spec.verify_oracle))
            .collect()
    });
    rows.into_iter().collect()
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn write_table(spec: &BenchSpec, rows: &[BenchRecord], out: &mut impl Write) -> io::Result<()> {
    let line = |out: &mut dyn Write, c: [String; 9]| {
        writeln!(
            out,
            "{:>8} {:>3} {:>6} {:>8} {:>12} {:>12} {:>12} {:>12} {:>12}",
            c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8]
        )
    };
    let head = [
        "n", "k", "d_size", "b_size", "pre_ns", "red1_ns", "red2_ns", "dp_ns", "lift_ns",
    ];
    line(out, head.map(String::from))?;
    for (block, k) in rows
        .chunks(spec.reps)
        .zip(spec.n_list.iter().flat_map(|_| spec.k_list.iter()))
    {
        let col = |f: fn(&BenchRecord) -> u64| median(block.iter().map(f).collect()).to_string();
        line(
            out,
            [
                block[0].n.to_string(),
                k.to_string(),
                block[0].d_size.to_string(),
                block[0].b_size.to_string(),
                col(|r| r.t_preprocess_ns),
                col(|r| r.t_reduce1_ns),
                col(|r| r.t_reduce2_ns),
                col(|r| r.t_dp_ns),
                col(|r| r.t_lift_ns),
            ],
        )?;
    }
    Ok(())
}

pub fn run(spec: &BenchSpec, csv: bool) -> Result<(), Failure> {
    let rows = records(spec)?;
    let io_err = |e: io::Error| Failure::Internal(e.to_string());
    let stdout = io::stdout();
    if csv {
        let mut w = csv::Writer::from_writer(stdout.lock());
        for r in &rows {
            w.serialize(r)
                .map_err(|e| Failure::Internal(e.to_string()))?;
        }
        w.flush().map_err(io_err)?;
    } else {
        write_table(spec, &rows, &mut stdout.lock()).map_err(io_err)?;
    }
    for r in &rows {
        if let Some(o) = r.oracle_length {
            check_oracle(r.answer_length, o).map_err(|_| {
                Failure::Verify(format!(
                    "instance {}: pipeline {} vs oracle {o}",
                    r.instance_id, r.answer_length
                ))
            })?;
        }
    }
    Ok(())
}
