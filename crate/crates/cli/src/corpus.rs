//! Verdict tables for symmetric powers of `SL₂(F_l)`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use mbig_core::bigness::{is_m_big, replay_certificate, Verdict};
use mbig_core::field::Field;
use mbig_core::matgroup::{enumerate, sym_power_generators, GroupSpec};
use serde_json::{json, Value};

use crate::{pretty, write_file, Caps, CliError, Outcome, EXIT_INDETERMINATE};

#[derive(Clone, Debug)]
pub struct CorpusArgs {
    /// Inclusive range; only primes are used.
    pub l_range: (u64, u64),
    pub sym_powers: Vec<usize>,
    pub m_list: Vec<u64>,
    pub seed: u64,
    pub caps: Caps,
    pub workers: Option<usize>,
    pub strict: bool,
    pub out: Option<PathBuf>,
}

/// One `(l, k, m)` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub l: u64,
    pub k: usize,
    pub m: u64,
    pub dim: usize,
    pub order: Option<usize>,
    pub verdict: Verdict,
    pub certificate: Value,
    pub submodules: Value,
    /// Number of witnesses re-validated, or the replay error.
    pub replay: Result<usize, String>,
}

impl Cell {
    fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "k": self.k,
            "m": self.m,
            "dim": self.dim,
            "order": self.order,
            "verdict": self.verdict.as_str(),
            "replayed": self.replay.as_ref().ok(),
            "replay_error": self.replay.as_ref().err(),
            "certificate": self.certificate,
        })
    }
}

/// Least `l` from which a `(k, m)` row is BIG through the end of the scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub k: usize,
    pub m: u64,
    pub least_big_l: Option<u64>,
    /// No NOT_BIG or INDETERMINATE cell after the first BIG one.
    pub monotone: bool,
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub cells: Vec<Cell>,
    pub thresholds: Vec<Threshold>,
}

impl CorpusReport {
    pub fn indeterminate(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.verdict == Verdict::Indeterminate)
            .count()
    }

    pub fn cell(&self, l: u64, k: usize, m: u64) -> Option<&Cell> {
        self.cells.iter().find(|c| (c.l, c.k, c.m) == (l, k, m))
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("l,k,m,dim,order,b1,b2,h1_dim,b4,verdict\n");
        for c in &self.cells {
            let cert = &c.certificate;
            let show = |v: &Value| match v {
                Value::Null => String::new(),
                other => other.to_string(),
            };
            let b4 = match cert["b4"].as_array() {
                Some(list) => format!(
                    "{}/{}",
                    list.iter().filter(|w| !w["element"].is_null()).count(),
                    list.len()
                ),
                None => String::new(),
            };
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                c.l,
                c.k,
                c.m,
                c.dim,
                c.order.map(|o| o.to_string()).unwrap_or_default(),
                show(&cert["b1"]),
                show(&cert["b2"]),
                show(&cert["b3"]["h1_dim"]),
                b4,
                c.verdict
            ));
        }
        s.push_str("\nk,m,least_big_l,monotone\n");
        for t in &self.thresholds {
            s.push_str(&format!(
                "{},{},{},{}\n",
                t.k,
                t.m,
                t.least_big_l.map(|l| l.to_string()).unwrap_or_default(),
                t.monotone
            ));
        }
        s
    }

    pub fn json(&self, args: &CorpusArgs) -> Value {
        json!({
            "l_range": [args.l_range.0, args.l_range.1],
            "sym_powers": args.sym_powers,
            "m_list": args.m_list,
            "seed": args.seed,
            "caps": args.caps.to_json(),
            "cells": self.cells.iter().map(Cell::to_json).collect::<Vec<_>>(),
            "thresholds": self.thresholds.iter().map(|t| json!({
                "k": t.k,
                "m": t.m,
                "least_big_l": t.least_big_l,
                "monotone": t.monotone,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn witnesses_json(&self) -> Value {
        Value::from(
            self.cells
                .iter()
                .map(|c| {
                    json!({
                        "l": c.l,
                        "k": c.k,
                        "m": c.m,
                        "submodules": c.submodules,
                        "b4": c.certificate["b4"],
                    })
                })
                .collect::<Vec<_>>(),
        )
    }
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

/// Parses `5..31`, `5..=31` or `5-31` as an inclusive range.
pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("bad range {s:?}; expected LO..HI"));
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn run_group(l: u64, k: usize, args: &CorpusArgs) -> Vec<Cell> {
    let field = Field::new(l, 1).expect("prime");
    let spec = sym_power_generators(&GroupSpec::sl2(&field), k).expect("2x2 generators");
    let cfg = args.caps.bigness(args.seed);
    match enumerate(&spec, args.caps.elements) {
        Err(e) => args
            .m_list
            .iter()
            .map(|&m| Cell {
                l,
                k,
                m,
                dim: k + 1,
                order: None,
                verdict: Verdict::Indeterminate,
                certificate: json!({ "caps_hit": [format!("element_cap: {e}")] }),
                submodules: Value::Null,
                replay: Ok(0),
            })
            .collect(),
        Ok(g) => args
            .m_list
            .iter()
            .map(|&m| {
                let cert = is_m_big(&g, m, &cfg);
                Cell {
                    l,
                    k,
                    m,
                    dim: k + 1,
                    order: Some(g.order()),
                    verdict: cert.verdict,
                    certificate: cert.to_json(),
                    submodules: cert.submodules_json(g.n()),
                    replay: replay_certificate(&g, &cert).map_err(|e| e.to_string()),
                }
            })
            .collect(),
    }
}

fn thresholds(cells: &[Cell], ks: &[usize], ms: &[u64]) -> Vec<Threshold> {
    let mut rows: BTreeMap<(usize, u64), Vec<(u64, Verdict)>> = BTreeMap::new();
    for c in cells {
        rows.entry((c.k, c.m)).or_default().push((c.l, c.verdict));
    }
    let mut out = Vec::new();
    for &k in ks {
        for &m in ms {
            let Some(row) = rows.get(&(k, m)) else { continue };
            let first_big = row.iter().position(|&(_, v)| v == Verdict::Big);
            let monotone = match first_big {
                None => true,
                Some(i) => row[i..].iter().all(|&(_, v)| v == Verdict::Big),
            };
            let start = row
                .iter()
                .rposition(|&(_, v)| v != Verdict::Big)
                .map_or(0, |i| i + 1);
            let least_big_l = row.get(start).map(|&(l, _)| l);
            out.push(Threshold {
                k,
                m,
                least_big_l,
                monotone,
            });
        }
    }
    out
}

/// Computes every cell; independent of worker count and completion order.
pub fn run_corpus(args: &CorpusArgs) -> CorpusReport {
    let mut ks = args.sym_powers.clone();
    ks.sort_unstable();
    ks.dedup();
    let mut ms = args.m_list.clone();
    ms.sort_unstable();
    ms.dedup();
    let args = CorpusArgs {
        sym_powers: ks.clone(),
        m_list: ms.clone(),
        ..args.clone()
    };
    let jobs: Vec<(u64, usize)> = primes_in(args.l_range.0, args.l_range.1)
        .into_iter()
        .flat_map(|l| ks.iter().map(move |&k| (l, k)))
        .collect();
    let mut cells: Vec<Cell> = run_jobs(&jobs, &args).into_iter().flatten().collect();
    cells.sort_by_key(|c| (c.l, c.k, c.m));
    let thresholds = thresholds(&cells, &ks, &ms);
    CorpusReport { cells, thresholds }
}

#[cfg(feature = "parallel")]
fn run_jobs(jobs: &[(u64, usize)], args: &CorpusArgs) -> Vec<Vec<Cell>> {
    use rayon::prelude::*;
    let work = || {
        jobs.par_iter()
            .map(|&(l, k)| run_group(l, k, args))
            .collect()
    };
    match args.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_jobs(jobs: &[(u64, usize)], args: &CorpusArgs) -> Vec<Vec<Cell>> {
    jobs.iter().map(|&(l, k)| run_group(l, k, args)).collect()
}

/// Runs the corpus and writes `corpus.csv`, `corpus.json` and
/// `witnesses.json` under `--out` (if given); stdout gets the CSV.
pub fn cmd_corpus(args: &CorpusArgs) -> Result<Outcome, CliError> {
    if args.m_list.is_empty() || args.sym_powers.is_empty() {
        return Err(CliError::Usage("--m-list and --sym-powers must be nonempty".into()));
    }
    if args.m_list.contains(&0) || args.sym_powers.contains(&0) {
        return Err(CliError::Usage("m and k must be at least 1".into()));
    }
    let report = run_corpus(args);
    if let Some(dir) = &args.out {
        write_file(&dir.join("corpus.csv"), &report.csv())?;
        write_file(&dir.join("corpus.json"), &pretty(&report.json(args)))?;
        write_file(&dir.join("witnesses.json"), &pretty(&report.witnesses_json()))?;
    }
    let code = if args.strict && report.indeterminate() > 0 {
        EXIT_INDETERMINATE
    } else {
        0
    };
    Ok(Outcome {
        code,
        stdout: report.csv(),
    })
}
