mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use endotriv::arith;
use endotriv::classify::{classify, tf_rank_oracle};
use endotriv::cli::{corpus_run, load_corpus, run, Outcome};
use endotriv::gf::FieldSpec;
use endotriv::liea::{build_sylow, compute_params, levi_normalizer, scalar_center_order};
use endotriv::matgrp::{closure, LinearGroupSpec, MatrixContext};
use endotriv::rho::{check_certificate, replay_proof_certificates, rho_chain, rp_case, RhoEngine, Status};
use endotriv::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

const ALL_TAGS: &[&str] = &[
    "cyclic.a", "cyclic.b", "cyclic.c.i", "cyclic.c.ii", "cyclic.d.i", "cyclic.d.ii", "cyclic.ext",
    "sl2-odd.a", "sl2-odd.b",
    "sl3-char3.a", "sl3-char3.b", "sl3-char3.c",
    "sl3-char2.a", "sl3-char2.b.i", "sl3-char2.b.ii",
    "sl2-char2.A.1.a", "sl2-char2.A.1.b.i", "sl2-char2.A.1.b.ii", "sl2-char2.A.2.a", "sl2-char2.A.2.b",
    "sl2-char2.B.1.a", "sl2-char2.B.1.b", "sl2-char2.B.2.a", "sl2-char2.B.2.b.i", "sl2-char2.B.2.b.ii", "sl2-char2.B.2.c",
    "main",
];

fn corpus_formulas() -> Check {
    let entries = load_corpus(None).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let rep = corpus_run(&entries, &[], 0, false);
    let dt = t.elapsed().as_secs_f64();
    ensure(rep.failed == 0, format!("{} entries failed", rep.failed))?;
    ensure(rep.passed >= 20, format!("only {} entries", rep.passed))?;
    ensure(dt < 1.0, format!("took {dt:.2}s"))?;
    let required = [
        ((2, 3, 2, 1, 2), "Z + Z/3"),
        ((2, 5, 2, 1, 1), "Z/2 + Z/4"),
        ((2, 7, 2, 1, 2), "Z^2"),
        ((3, 7, 2, 1, 1), "Z + Z/2"),
        ((3, 5, 2, 1, 1), "Z"),
        ((3, 7, 3, 6, 6), "Z^3"),
        ((3, 4, 3, 1, 3), "Z + Z/2 + Z/2"),
        ((4, 5, 2, 4, 1), "Z"),
        ((2, 5, 3, 1, 1), "Z/2 + Z/4"),
        ((4, 3, 5, 2, 1), "Z/2 + Z/8"),
    ];
    for ((n, q, p, d, z), want) in required {
        let e = entries
            .iter()
            .find(|e| (e.n, e.q, e.p, e.det, e.z) == (n, q, p, d, z))
            .ok_or(format!("corpus lacks ({n},{q},{p},{d},{z})"))?;
        ensure(e.column("expected") == want, format!("{} expects {}", e.id, e.column("expected")))?;
        let r = rep.entries.iter().find(|r| r.id == e.id).unwrap();
        ensure(r.got == want, format!("{} gave {}", e.id, r.got))?;
    }
    let tags: BTreeSet<&str> = entries.iter().map(|e| e.case_tag.as_str()).collect();
    let missing: Vec<&&str> = ALL_TAGS.iter().filter(|t| !tags.contains(**t)).collect();
    ensure(missing.is_empty(), format!("clauses without entries: {missing:?}"))?;
    Ok(format!("{} entries, {} clauses, {dt:.3}s", rep.passed, ALL_TAGS.len()))
}

fn oracle_agreement() -> Check {
    let entries = load_corpus(None).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let rep = corpus_run(&entries, &[], 100_000, true);
    let dt = t.elapsed().as_secs_f64();
    for r in &rep.entries {
        ensure(r.status() == Outcome::Pass, format!("{}: {:?}", r.id, r.diff))?;
    }
    let ran: BTreeSet<String> = entries
        .iter()
        .zip(&rep.entries)
        .filter(|(_, r)| r.oracle == Outcome::Pass)
        .map(|(e, _)| e.spec().unwrap().to_string())
        .collect();
    for g in ["SL(2,4)", "SL(2,5)", "SL(2,7)", "SL(2,9)", "SL(3,2)", "PSL(3,4)", "PGL(3,4)", "SL(2,3)"] {
        let name = g.parse::<LinearGroupSpec>().unwrap().to_string();
        ensure(ran.contains(&name), format!("no oracle run on {g}"))?;
    }
    let pgl = tf_rank_oracle(&"PGL(3,4)".parse().unwrap(), 3, 100_000).map_err(|e| e.to_string())?;
    let psl = tf_rank_oracle(&"PSL(3,4)".parse().unwrap(), 3, 100_000).map_err(|e| e.to_string())?;
    ensure(pgl.n_g == 3, format!("PGL(3,4) n_G = {}", pgl.n_g))?;
    ensure(psl.n_g == 1, format!("PSL(3,4) n_G = {}", psl.n_g))?;
    ensure(dt < 300.0, format!("took {dt:.1}s"))?;
    Ok(format!("{} oracle runs agree, n_G(PGL(3,4)) = 3, n_G(PSL(3,4)) = 1, {dt:.1}s", rep.oracle_runs))
}

fn sylow_suite() -> Check {
    let mut cases = 0;
    for n in 1..=4u64 {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for p in [2u64, 3, 5, 7] {
                if q % p == 0 {
                    continue;
                }
                for det in [q - 1, 1] {
                    let Ok(par) = compute_params(n, q, p, det, 1) else { continue };
                    if par.sylow_order <= 1 || par.sylow_order > 1 << 12 {
                        continue;
                    }
                    let tag = format!("n={n} q={q} p={p} det={det}");
                    let g = build_sylow(&par).and_then(|s| s.enumerate(1 << 14)).map_err(|e| format!("{tag}: {e}"))?;
                    let order = LinearGroupSpec::new(n as usize, q, det, 1).unwrap().order();
                    ensure(g.order() as u128 == arith::p_part(order, p as u128), format!("{tag}: closure {}", g.order()))?;
                    if det == q - 1 {
                        let abelian = g.commutator_subgroup(&g.whole()).map_err(|e| e.to_string())?.is_trivial();
                        ensure(abelian == (n < p * par.e), format!("{tag}: abelian = {abelian}"))?;
                        if p != 2 {
                            let ea = g.elementary_abelian_subgroups(p);
                            let top = ea.iter().map(|e| e.rank).max().unwrap();
                            let count = ea.iter().filter(|e| e.rank == top).count();
                            ensure(count == 1, format!("{tag}: {count} elementary abelian subgroups of rank {top}"))?;
                        }
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} Sylow subgroups, zero failures"))
}

fn levi_suite() -> Check {
    // (block size, blocks, q, expected); q = 2 uses blocks of size 3 so that the blocks are perfect
    let cases = [(2, 2, 3, "Z/2 + Z/2"), (2, 2, 5, "Z/2 + Z/2"), (3, 2, 2, "Z/2"), (2, 2, 4, "Z/2"), (2, 3, 3, "Z/2")];
    let mut seen = Vec::new();
    for (s, r, q, want) in cases {
        let spec = LinearGroupSpec::sl(s * r, q).map_err(|e| e.to_string())?;
        let n = levi_normalizer(s, r, &spec).and_then(|l| l.enumerate(1 << 21)).map_err(|e| e.to_string())?;
        let d = n.commutator_subgroup(&n.whole()).map_err(|e| e.to_string())?;
        let ab = n.quotient_structure(&n.whole(), &d).map_err(|e| e.to_string())?.to_string();
        ensure(ab == want, format!("SL({},{q}) r={r}: {ab}", s * r))?;
        seen.push(format!("SL({},{q}) r={r}: {ab}", s * r));
    }
    Ok(seen.join("; "))
}

fn rho_suite() -> Check {
    let mut groups = BTreeSet::new();
    for e in load_corpus(None).map_err(|e| e.to_string())? {
        let s = e.spec().unwrap();
        if s.order() <= 2000 {
            groups.insert((s.to_string(), e.p));
        }
    }
    let mut compared = 0;
    let res = catch_unwind(AssertUnwindSafe(|| -> std::result::Result<(), String> {
        for (name, p) in &groups {
            let g = name.parse::<LinearGroupSpec>().unwrap().enumerate(10_000).map_err(|e| e.to_string())?;
            let s = g.sylow_subgroup(&g.whole(), *p).map_err(|e| e.to_string())?;
            let mut engine = RhoEngine::new(&g, &s, *p).map_err(|e| format!("{name}: {e}"))?;
            let subs = engine.subgroups().to_vec();
            let naive = common::naive_rho(&g, &subs, 3);
            for (k, q) in subs.iter().enumerate() {
                let c = engine.chain(q, 3).map_err(|e| e.to_string())?;
                for i in 0..3 {
                    ensure(c.chain[i] == naive[i][k], format!("{name} p={p}: subgroup {k} differs at level {}", i + 1))?;
                }
                compared += 1;
            }
        }
        Ok(())
    }));
    match res {
        Ok(r) => r?,
        Err(_) => return Err("a monotonicity or boundedness assertion fired".into()),
    }
    let f = FieldSpec::new(3).unwrap();
    let ctx = MatrixContext::new(&f, 2, 1).unwrap();
    let i = ctx.from_ints(&[&[0, 1], &[-1, 0]]).unwrap();
    let j = ctx.from_ints(&[&[1, 1], &[1, -1]]).unwrap();
    let q8 = closure(&ctx, &[i, j], 100).map_err(|e| e.to_string())?;
    let c = rho_chain(&q8, None, &q8.whole(), 2, 5).map_err(|e| e.to_string())?;
    ensure(c.stabilized_at.is_some() && !c.reached_normalizer, "Q8 chain reached its normalizer")?;
    Ok(format!(
        "{} groups, {compared} subgroups agree with the naive dual; Q8 stalls at order {} < {}",
        groups.len(),
        c.chain.last().unwrap().order(),
        c.normalizer.order()
    ))
}

fn certificate_suite() -> Check {
    let good = check_certificate(&rp_case(3, 19, 3, false).map_err(|e| e.to_string())?, 1 << 20).map_err(|e| e.to_string())?;
    ensure(good.status == Status::Pass, format!("rp-case PSL(3,19): {} at {:?}", good.status, good.failed_clause))?;
    let bad = check_certificate(&rp_case(3, 19, 3, true).map_err(|e| e.to_string())?, 1 << 20).map_err(|e| e.to_string())?;
    let clause = bad.failed_clause.clone().unwrap_or_default();
    ensure(bad.status == Status::Fail && clause.starts_with("(2)(b)"), format!("corrupted: {} at {clause}", bad.status))?;
    let sl62 = replay_proof_certificates("sl62", 6, 2, 3, 1 << 20).map_err(|e| e.to_string())?;
    ensure(sl62.iter().all(|v| v.status == Status::Skipped), "SL(6,2) not SKIPPED")?;
    Ok(format!("rp-case PSL(3,19) PASS, corrupted witness FAIL at {clause}, SL(6,2) SKIPPED"))
}

fn totality_fuzz() -> Check {
    let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 13];
    let ps = [2u64, 3, 5, 7, 11, 13];
    let divisors = |k: u64| (1..=k).filter(|d| k % d == 0).collect::<Vec<_>>();
    let mut rng = StdRng::seed_from_u64(99);
    let (mut ok, mut typed) = (0, 0);
    while ok + typed < 10_000 {
        let n = rng.gen_range(1..=6u64);
        let q = qs[rng.gen_range(0..qs.len())];
        let dets = divisors(q - 1);
        let det = dets[rng.gen_range(0..dets.len())];
        let valid: Vec<u64> =
            ps.iter().copied().filter(|&p| q % p != 0 && compute_params(n, q, p, det, 1).is_ok_and(|x| x.sylow_order > 1)).collect();
        if valid.is_empty() {
            continue;
        }
        let p = valid[rng.gen_range(0..valid.len())];
        let zs = divisors(scalar_center_order(n, q, det).unwrap());
        let z = zs[rng.gen_range(0..zs.len())];
        match catch_unwind(|| classify(n, q, p, det, z)) {
            Ok(Ok(c)) if !c.case_tag.is_empty() => ok += 1,
            Ok(Err(Error::Domain(_) | Error::Ambiguous(_))) => typed += 1,
            Ok(other) => return Err(format!("({n},{q},{p},{det},{z}): {other:?}")),
            Err(_) => return Err(format!("({n},{q},{p},{det},{z}) panicked")),
        }
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["endotriv", "classify", "2", "5", "2", "--det", "4", "--z", "2"], &mut out, &mut err);
    ensure(code == 3, format!("ambiguous tuple exited {code}"))?;
    ensure(String::from_utf8_lossy(&err).contains("ambiguous"), "no AMBIGUOUS message")?;
    Ok(format!("{ok} tagged results, {typed} typed errors; GL(2,5)/<-I> exits 3"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("classification corpus", corpus_formulas),
        ("torsion-free rank oracle agreement", oracle_agreement),
        ("Sylow construction suite", sylow_suite),
        ("Levi normalizer abelianizations", levi_suite),
        ("rho chain properties", rho_suite),
        ("certificate replay", certificate_suite),
        ("totality fuzz", totality_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS {} {name}: {msg} [{dt:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} [{dt:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
