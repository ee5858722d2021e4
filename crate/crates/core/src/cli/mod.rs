mod corpus;

pub use corpus::{
    corpus_run, load_corpus, parse_corpus, parse_filter, CorpusEntry, CorpusReport, EntryReport, Expected, Outcome,
    BUILTIN_CORPUS,
};

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::classify::{classify, tf_rank_oracle, OracleReport, TClassification};
use crate::error::{Error, Result};
use crate::liea::{build_sylow, compute_params};
use crate::matgrp::{default_cap, LinearGroupSpec};
use crate::rho::{replay_proof_certificates, RhoEngine, RhoSummary, Status, Verdict, FAMILIES};

#[derive(Parser, Debug)]
#[command(name = "endotriv", about = "Endotrivial module groups of finite linear groups of type A")]
struct Cli {
    /// Emit JSON with sorted keys.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration cap; overrides ENDOTRIV_CAP.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lie-type parameters e, t, d, r, f and Sylow data.
    Params {
        n: u64,
        q: u64,
        p: u64,
        #[arg(long, default_value_t = 1)]
        det: u64,
        #[arg(long, default_value_t = 1)]
        z: u64,
    },
    /// Build a Sylow p-subgroup and check its order by closure.
    Sylow {
        n: u64,
        q: u64,
        p: u64,
        #[arg(long, default_value_t = 1)]
        det: u64,
        /// Print the generator matrices.
        #[arg(long)]
        generators: bool,
    },
    /// The rho chain of a subgroup Q of a Sylow subgroup.
    Rho {
        group: String,
        p: u64,
        /// `S` (default), `Z(S)`, or `cyc:K` for the K-th cyclic subgroup of S.
        #[arg(long = "Q", default_value = "S")]
        q: String,
        #[arg(long = "max-i", default_value_t = 4)]
        max_i: usize,
    },
    /// Replay the certificates of a proof family (`all` for every family).
    Certify {
        family: String,
        n: Option<u64>,
        q: Option<u64>,
        p: Option<u64>,
    },
    /// T(G/Z) with its case tag.
    Classify {
        n: u64,
        q: u64,
        p: u64,
        #[arg(long, default_value_t = 1)]
        det: u64,
        #[arg(long, default_value_t = 1)]
        z: u64,
        /// Also run the brute-force rank oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Brute-force torsion-free rank of T(G/Z).
    Oracle { group: String, p: u64 },
    /// The regression corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Run entries, optionally filtered by `column=value`.
    Run {
        filter: Vec<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Skip the oracles on enumerable entries.
        #[arg(long)]
        no_oracle: bool,
    },
    /// List entries.
    List {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// Output of `sylow`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowReport {
    pub group: String,
    pub p: u64,
    pub shape: String,
    pub claimed_order: u128,
    pub closure_order: Option<usize>,
    pub levi_blocks: Vec<usize>,
    pub generators: Vec<Vec<Vec<u32>>>,
}

/// Output of `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoReport {
    pub group: String,
    pub p: u64,
    pub q: String,
    pub group_order: usize,
    pub sylow_order: usize,
    pub subgroups_of_s: usize,
    pub chain: RhoSummary,
}

/// `classify --verify` comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub status: Outcome,
    pub oracle: Option<OracleReport>,
    pub detail: String,
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    // serde_json::Value keeps object keys in a BTreeMap, so keys come out sorted
    let v = serde_json::to_value(value).map_err(|e| Error::domain(e.to_string()))?;
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("values serialize")).map_err(io)?;
    Ok(())
}

fn io(e: std::io::Error) -> Error {
    Error::domain(format!("write failed: {e}"))
}

fn spec(s: &str) -> Result<LinearGroupSpec> {
    s.parse::<LinearGroupSpec>()
}

/// Parses `argv` (program name first), runs the command and returns the exit status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cap = cli.cap.unwrap_or_else(default_cap);
    match &cli.command {
        Command::Params { n, q, p, det, z } => {
            let params = compute_params(*n, *q, *p, *det, *z)?;
            if cli.json {
                emit(out, &params)?;
            } else {
                writeln!(
                    out,
                    "{} p={}: e={} t={} d={} r={} f={} |S|={} |S/Z_p|={} rank={} cyclic={} abelian={}",
                    params.group_spec()?,
                    params.p,
                    params.e,
                    params.t,
                    params.d,
                    params.r,
                    params.f,
                    params.sylow_order,
                    params.quotient_sylow_order,
                    params.p_rank,
                    params.sylow_cyclic,
                    params.sylow_abelian
                )
                .map_err(io)?;
            }
            Ok(0)
        }
        Command::Sylow { n, q, p, det, generators } => {
            let params = compute_params(*n, *q, *p, *det, 1)?;
            let s = build_sylow(&params)?;
            let closure_order = match s.enumerate(cap) {
                Ok(g) => Some(g.order()),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            let rep = SylowReport {
                group: params.group_spec()?.to_string(),
                p: *p,
                shape: s.shape.clone(),
                claimed_order: s.claimed_order,
                closure_order,
                levi_blocks: s.levi_blocks.clone(),
                generators: s.generators.iter().map(|m| m.rows()).collect(),
            };
            if let Some(c) = closure_order {
                if c as u128 != s.claimed_order {
                    return Err(Error::domain(format!("closure order {c} differs from the claimed {}", s.claimed_order)));
                }
            }
            if cli.json {
                emit(out, &rep)?;
            } else {
                let seen = closure_order.map_or("not enumerated (cap)".to_string(), |c| c.to_string());
                writeln!(out, "{} p={}: {} of order {} (closure {seen}), Levi blocks {:?}", rep.group, p, rep.shape, rep.claimed_order, rep.levi_blocks)
                    .map_err(io)?;
                if *generators {
                    for m in &s.generators {
                        writeln!(out, "{}", s.ctx().format(m)).map_err(io)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Rho { group, p, q, max_i } => {
            let gs = spec(group)?;
            let g = gs.enumerate(cap)?;
            let s = g.sylow_subgroup(&g.whole(), *p)?;
            let mut engine = RhoEngine::new(&g, &s, *p)?;
            let qsub = match q.as_str() {
                "S" => s.clone(),
                "Z(S)" => {
                    let cs = g.centralizer(&s)?;
                    g.intersection(&cs, &s)
                }
                other => {
                    let k: usize = other
                        .strip_prefix("cyc:")
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(|| Error::Usage(format!("--Q must be S, Z(S) or cyc:K, not {other:?}")))?;
                    let cyc: Vec<_> = g.cyclic_subgroups(&s).into_iter().filter(|c| !c.is_trivial()).collect();
                    cyc.get(k).cloned().ok_or_else(|| Error::Usage(format!("S has only {} nontrivial cyclic subgroups", cyc.len())))?
                }
            };
            let chain = engine.chain(&qsub, *max_i)?;
            let rep = RhoReport {
                group: gs.to_string(),
                p: *p,
                q: q.clone(),
                group_order: g.order(),
                sylow_order: s.order(),
                subgroups_of_s: engine.subgroups().len(),
                chain: chain.summary(),
            };
            if cli.json {
                emit(out, &rep)?;
            } else {
                let c = &rep.chain;
                writeln!(
                    out,
                    "{} p={} Q={} |Q|={} |N_G(Q)|={} rho orders {:?} stabilized at {:?} reached N_G(Q): {}",
                    rep.group, p, q, c.base_order, c.normalizer_order, c.chain_orders, c.stabilized_at, c.reached_normalizer
                )
                .map_err(io)?;
            }
            Ok(0)
        }
        Command::Certify { family, n, q, p } => {
            let families: Vec<&str> = if family == "all" { FAMILIES.to_vec() } else { vec![family.as_str()] };
            let mut verdicts: Vec<Verdict> = Vec::new();
            for fam in families {
                let instances = match (n, q, p) {
                    (Some(n), Some(q), Some(p)) => vec![(*n, *q, *p)],
                    (None, None, None) => crate::rho::default_instances(fam),
                    _ => return Err(Error::Usage("give all of n q p or none".into())),
                };
                if instances.is_empty() {
                    return Err(Error::Usage(format!("unknown certificate family {fam:?}; known: all, {}", FAMILIES.join(", "))));
                }
                for (n, q, p) in instances {
                    verdicts.extend(replay_proof_certificates(fam, n, q, p, cap)?);
                }
            }
            if cli.json {
                emit(out, &verdicts)?;
            } else {
                for v in &verdicts {
                    let why = v.failed_clause.as_deref().map(|c| format!(" at {c}")).unwrap_or_default();
                    writeln!(out, "{} {}: {}{why}", v.family, v.instance, v.status).map_err(io)?;
                    for c in &v.report {
                        writeln!(out, "  {:<10} {}  {}", c.status.to_string(), c.clause, c.detail).map_err(io)?;
                    }
                }
            }
            Ok(if verdicts.iter().any(|v| v.status == Status::Fail) { 1 } else { 0 })
        }
        Command::Classify { n, q, p, det, z, verify } => {
            let c = classify(*n, *q, *p, *det, *z)?;
            let check = if *verify { Some(verify_with_oracle(&c, cap)) } else { None };
            if cli.json {
                let mut v = serde_json::to_value(&c).map_err(|e| Error::domain(e.to_string()))?;
                if let Some(r) = &check {
                    v["verify"] = serde_json::to_value(r).map_err(|e| Error::domain(e.to_string()))?;
                }
                emit(out, &v)?;
            } else {
                print_classification(out, &c)?;
                if let Some(r) = &check {
                    writeln!(out, "verify: {} {}", r.status, r.detail).map_err(io)?;
                }
            }
            Ok(if check.is_some_and(|r| r.status == Outcome::Fail) { 1 } else { 0 })
        }
        Command::Oracle { group, p } => {
            let r = tf_rank_oracle(&spec(group)?, *p, cap)?;
            if cli.json {
                emit(out, &r)?;
            } else {
                writeln!(out, "{} p={}: |G/Z|={} p-rank={} n_G={} tf_rank={}", r.group, p, r.group_order, r.p_rank, r.n_g, r.tf_rank)
                    .map_err(io)?;
            }
            Ok(0)
        }
        Command::Corpus { action } => match action {
            CorpusAction::List { file } => {
                let entries = load_corpus(file.as_deref())?;
                if cli.json {
                    emit(out, &entries)?;
                } else {
                    for e in &entries {
                        writeln!(out, "{:<24} {:<22} {:<20} {}", e.id, e.column("expected"), e.case_tag, e.source).map_err(io)?;
                    }
                }
                Ok(0)
            }
            CorpusAction::Run { filter, file, no_oracle } => {
                let entries = load_corpus(file.as_deref())?;
                let filter = parse_filter(filter)?;
                let rep = corpus_run(&entries, &filter, cap, !no_oracle);
                if cli.json {
                    emit(out, &rep)?;
                } else {
                    for r in &rep.entries {
                        writeln!(out, "{:<4} {:<24} formula {:<4} oracle {:<4} {}", r.status().to_string(), r.id, r.formula.to_string(), r.oracle.to_string(), r.got)
                            .map_err(io)?;
                        for d in &r.diff {
                            writeln!(out, "       diff: {d}").map_err(io)?;
                        }
                    }
                    writeln!(out, "{} entries: {} passed, {} failed, {} oracle runs", rep.entries.len(), rep.passed, rep.failed, rep.oracle_runs)
                        .map_err(io)?;
                }
                Ok(if rep.failed > 0 { 1 } else { 0 })
            }
        },
    }
}

fn print_classification(out: &mut dyn Write, c: &TClassification) -> Result<()> {
    let g = LinearGroupSpec::new(c.n as usize, c.q, c.det_order, c.z_order)?;
    writeln!(out, "T({g}) at p={} = {}  [{}]", c.p, c.result, c.case_tag).map_err(io)?;
    if let crate::classify::TResult::Extension(x) = &c.result {
        if x.resolved.is_none() {
            let cands: Vec<String> = x.candidates.iter().map(ToString::to_string).collect();
            writeln!(out, "  0 -> {} -> T -> {} -> 0; middle term one of: {}", x.sub, x.quot, cands.join(", ")).map_err(io)?;
        }
    }
    writeln!(out, "  X = {}, TF rank = {}", c.x_factor, c.tf_rank).map_err(io)?;
    for n in &c.notes {
        writeln!(out, "  - {n}").map_err(io)?;
    }
    Ok(())
}

/// Oracle comparison of the torsion-free rank; SKIP when `G/Z` exceeds the cap.
pub fn verify_with_oracle(c: &TClassification, cap: usize) -> VerifyReport {
    let res = LinearGroupSpec::new(c.n as usize, c.q, c.det_order, c.z_order).and_then(|s| {
        if s.order() > cap as u128 {
            Err(Error::CapExceeded { what: s.to_string(), cap })
        } else {
            tf_rank_oracle(&s, c.p, cap)
        }
    });
    match res {
        Ok(r) if r.tf_rank as u32 == c.tf_rank => {
            VerifyReport { status: Outcome::Pass, detail: format!("oracle tf_rank {} = formula", r.tf_rank), oracle: Some(r) }
        }
        Ok(r) => VerifyReport {
            status: Outcome::Fail,
            detail: format!("oracle tf_rank {} (n_G = {}) but formula gives {}", r.tf_rank, r.n_g, c.tf_rank),
            oracle: Some(r),
        },
        Err(e @ Error::CapExceeded { .. }) => VerifyReport { status: Outcome::Skip, detail: e.to_string(), oracle: None },
        Err(e) => VerifyReport { status: Outcome::Fail, detail: e.to_string(), oracle: None },
    }
}
