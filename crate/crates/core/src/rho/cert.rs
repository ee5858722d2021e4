use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::liea::levi;
use crate::matgrp::{closure, EnumeratedGroup, LinearGroupSpec, Matrix, Subgroup};

/// Checkable reasons why every trivial-Sylow-restriction module of a group
/// is one-dimensional.
#[derive(Clone, Debug)]
pub enum LocalEvidence {
    /// A nontrivial normal p-subgroup, given by generators.
    NormalPSubgroup(Vec<Matrix>),
    SelfNormalizingSylow,
    /// The group is `Levi(blocks) n G` and the Levi split applies.
    LeviSplit(Vec<usize>),
    /// Nothing checkable; the certificate can only be INCOMPLETE.
    Unproved(String),
}

/// How `N_G(S) <= H` is established.
#[derive(Clone, Debug)]
pub enum Containment {
    /// Enumerate `G/Z` and compute the normalizer.
    FullScan,
    /// `Q` (generators) is characteristic in `S` and consists of diagonal
    /// matrices; `H` is the full stabilizer of the weight spaces of `Q`.
    WeightSpaces(Vec<Matrix>),
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// `g in [H,H]S`.
    DerivedTimesSylow,
    /// `g in [H_i,H_i]` with `p | |H_i n H|` and evidence for `H_i`.
    Subgroup { name: String, generators: Vec<Matrix>, evidence: LocalEvidence },
}

#[derive(Clone, Debug)]
pub struct MethodCertificate {
    pub family: String,
    pub group: LinearGroupSpec,
    pub p: u64,
    pub sylow: Vec<Matrix>,
    /// `H = <g_1, ..., g_m>`, each with a witness.
    pub generators: Vec<(String, Matrix, Witness)>,
    pub h_evidence: LocalEvidence,
    pub containment: Containment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Incomplete,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Incomplete => "INCOMPLETE",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub clause: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub family: String,
    pub instance: String,
    pub status: Status,
    pub failed_clause: Option<String>,
    pub report: Vec<ClauseReport>,
}

impl Verdict {
    pub fn skipped(family: &str, instance: &str, reason: &str) -> Verdict {
        Verdict {
            family: family.into(),
            instance: instance.into(),
            status: Status::Skipped,
            failed_clause: None,
            report: vec![ClauseReport { clause: "scope".into(), status: Status::Skipped, detail: reason.into() }],
        }
    }

    fn from_report(family: &str, instance: &str, report: Vec<ClauseReport>) -> Verdict {
        let first = |s: Status| report.iter().find(|c| c.status == s).map(|c| c.clause.clone());
        let (status, failed_clause) = if let Some(c) = first(Status::Fail) {
            (Status::Fail, Some(c))
        } else if let Some(c) = first(Status::Skipped) {
            (Status::Skipped, Some(c))
        } else if let Some(c) = first(Status::Incomplete) {
            (Status::Incomplete, Some(c))
        } else {
            (Status::Pass, None)
        };
        Verdict { family: family.into(), instance: instance.into(), status, failed_clause, report }
    }
}

struct Log(Vec<ClauseReport>);

impl Log {
    fn put(&mut self, clause: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.0.push(ClauseReport { clause: clause.into(), status, detail: detail.into() });
    }

    fn put_status(&mut self, clause: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.0.push(ClauseReport { clause: clause.into(), status, detail: detail.into() });
    }
}

fn is_p_power(n: usize, p: u64) -> bool {
    arith::p_part(n as u128, p as u128) == n as u128
}

/// Checks a local evidence claim for the enumerated group `k`.
fn check_evidence(k: &EnumeratedGroup, spec: &LinearGroupSpec, p: u64, ev: &LocalEvidence) -> Result<(Status, String)> {
    Ok(match ev {
        LocalEvidence::NormalPSubgroup(gens) => {
            let Ok(r) = k.subgroup_from_matrices(gens) else {
                return Ok((Status::Fail, "claimed normal subgroup is not inside the group".into()));
            };
            let ok = !r.is_trivial() && is_p_power(r.order(), p) && k.is_normal(&r, &k.whole());
            let d = format!("normal p-subgroup of order {} in a group of order {}", r.order(), k.order());
            (if ok { Status::Pass } else { Status::Fail }, d)
        }
        LocalEvidence::SelfNormalizingSylow => {
            let s = k.sylow_subgroup(&k.whole(), p)?;
            let n = k.normalizer(&s)?;
            let ok = !s.is_trivial() && n == s;
            (if ok { Status::Pass } else { Status::Fail }, format!("|S| = {}, |N(S)| = {}", s.order(), n.order()))
        }
        LocalEvidence::LeviSplit(blocks) => {
            if spec.z_order != 1 {
                return Ok((Status::Incomplete, "Levi split evidence is only accepted for trivial Z".into()));
            }
            let l = levi(blocks, spec)?;
            let Ok(lk) = l.subgroup_in(k) else {
                return Ok((Status::Fail, format!("Levi {blocks:?} is not contained in the group")));
            };
            let full = lk.order() == k.order() && lk.order() as u128 == l.block_order();
            let split = l.split(p).map(|s| s.holds()).unwrap_or(false);
            let d = format!("Levi {blocks:?}: order {} vs {}, split {}", lk.order(), k.order(), split);
            (if full && split { Status::Pass } else { Status::Fail }, d)
        }
        LocalEvidence::Unproved(why) => (Status::Incomplete, format!("unproved: {why}")),
    })
}

fn is_diagonal(m: &Matrix) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j) == 0))
}

/// Coordinate classes of equal weight for a set of diagonal matrices.
fn weight_classes(ms: &[Matrix], n: usize) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match classes.iter_mut().find(|c| ms.iter().all(|m| m.get(c[0], c[0]) == m.get(i, i))) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

fn gl_order(n: u32, q: u128) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn check_containment(
    cert: &MethodCertificate,
    h: &EnumeratedGroup,
    s: &EnumeratedGroup,
    cap: usize,
    log: &mut Log,
) -> Result<()> {
    let spec = &cert.group;
    match &cert.containment {
        Containment::FullScan => {
            if spec.order() > cap as u128 {
                log.put_status("N_G(S) <= H", Status::Skipped, format!("|G/Z| = {} exceeds the cap {cap}", spec.order()));
                return Ok(());
            }
            let g = spec.enumerate(cap)?;
            let sg = g.subgroup_from_matrices(&cert.sylow)?;
            let n = g.normalizer(&sg)?;
            let inside = n.elements().iter().all(|&x| h.index_of(g.element(x)).is_some());
            log.put("N_G(S) <= H", inside, format!("full scan: |N_G(S)| = {}", n.order()));
        }
        Containment::WeightSpaces(qgens) => {
            let n = spec.n;
            let Ok(q) = s.subgroup_from_matrices(qgens) else {
                log.put("N_G(S) <= H", false, "Q is not contained in S");
                return Ok(());
            };
            if !s.matrices(&q).iter().all(is_diagonal) {
                log.put("N_G(S) <= H", false, "Q is not diagonal");
                return Ok(());
            }
            // a characteristic subgroup of S containing Q, required to be diagonal
            let (c, why) = if s.center() == q {
                (q.clone(), "Q = Z(S)".to_string())
            } else {
                let target = s.quotient_structure(&q, &s.trivial())?;
                let subs = s.all_subgroups(&s.whole(), 1 << 16)?;
                let same: Vec<&Subgroup> = subs
                    .iter()
                    .filter(|r| r.order() == q.order())
                    .filter(|r| s.quotient_structure(r, &s.trivial()).map(|a| a == target).unwrap_or(false))
                    .collect();
                if same.len() == 1 {
                    (q.clone(), format!("Q is the only abelian subgroup of S of type {target}"))
                } else {
                    let gens: Vec<u32> = same.iter().flat_map(|r| r.generators().to_vec()).collect();
                    let j = s.subgroup(&gens);
                    (j, format!("the {} abelian subgroups of S of type {target} generate a diagonal group", same.len()))
                }
            };
            let qm = s.matrices(&c);
            if !qm.iter().all(is_diagonal) {
                log.put_status("N_G(S) <= H", Status::Incomplete, "no diagonal characteristic subgroup of S contains Q");
                return Ok(());
            }
            let classes = weight_classes(&qm, n);
            let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
            let qq = spec.q as u128;
            let (stab, shape_ok): (u128, Box<dyn Fn(&Matrix) -> bool>) = if sizes.iter().all(|&c| c == 1) {
                let o = (qq - 1).pow(n as u32 - 1) * spec.det_order as u128 * factorial(n as u128);
                let f = |m: &Matrix| (0..m.dim()).all(|i| (0..m.dim()).filter(|&j| m.get(i, j) != 0).count() == 1);
                (o, Box::new(f))
            } else {
                let mut sorted = sizes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != sizes.len() {
                    log.put_status("N_G(S) <= H", Status::Skipped, format!("weight spaces of Q have repeated dimensions {sizes:?}"));
                    return Ok(());
                }
                let o = sizes.iter().map(|&c| gl_order(c as u32, qq)).product::<u128>() / (qq - 1) * spec.det_order as u128;
                let mut class_of = vec![0usize; n];
                for (c, members) in classes.iter().enumerate() {
                    for &i in members {
                        class_of[i] = c;
                    }
                }
                let f = move |m: &Matrix| (0..n).all(|i| (0..n).all(|j| class_of[i] == class_of[j] || m.get(i, j) == 0));
                (o, Box::new(f))
            };
            let stab = stab / spec.z_order as u128;
            let shaped = h.elements().iter().all(|m| shape_ok(m));
            let ok = shaped && h.order() as u128 == stab;
            log.put(
                "N_G(S) <= H",
                ok,
                format!("{why}; weight spaces {sizes:?}; |H| = {} vs stabilizer {stab}", h.order()),
            );
        }
    }
    Ok(())
}

/// Verifies every hypothesis of the method theorem that the certificate
/// claims, in the order: generation, (A), normalizer containment, then for
/// each generator (B)(1) or (2)(b), (2)(c), (2)(a).
pub fn check_certificate(cert: &MethodCertificate, cap: usize) -> Result<Verdict> {
    let spec = &cert.group;
    let ctx = spec.context()?;
    let instance = format!("{} p={}", spec, cert.p);
    let mut log = Log(Vec::new());
    let gens: Vec<Matrix> = cert.generators.iter().map(|(_, m, _)| *m).collect();
    if let Some((name, _, _)) = cert.generators.iter().find(|(_, m, _)| !spec.contains(&ctx, m)) {
        log.put("H <= G", false, format!("generator {name} is not in G"));
        return Ok(Verdict::from_report(&cert.family, &instance, log.0));
    }
    let h = match closure(&ctx, &gens, cap) {
        Ok(h) => h,
        Err(Error::CapExceeded { cap, .. }) => {
            log.put_status("H = <g_i>", Status::Skipped, format!("H exceeds the cap {cap}"));
            return Ok(Verdict::from_report(&cert.family, &instance, log.0));
        }
        Err(e) => return Err(e),
    };
    log.put("H = <g_i>", true, format!("|H| = {}", h.order()));
    let s = closure(&ctx, &cert.sylow, cap)?;
    let expected = arith::p_part(spec.order(), cert.p as u128);
    let in_h = cert.sylow.iter().all(|m| h.index_of(m).is_some());
    log.put(
        "S Sylow in H",
        s.order() as u128 == expected && in_h,
        format!("|S| = {}, p-part of |G/Z| = {expected}", s.order()),
    );
    let (st, d) = check_evidence(&h, spec, cert.p, &cert.h_evidence)?;
    log.put_status("(A)", st, d);
    check_containment(cert, &h, &s, cap, &mut log)?;

    let hw = h.whole();
    let derived = h.commutator_subgroup(&hw)?;
    let s_in_h = h.subgroup_from_matrices(&cert.sylow)?;
    let ds = h.join(&derived, &s_in_h);
    for (name, g, w) in &cert.generators {
        let gi = h.index_of(g).expect("generator of H");
        match w {
            Witness::DerivedTimesSylow => {
                log.put(format!("(B)(1) {name}"), ds.contains(gi), format!("|[H,H]S| = {}", ds.order()));
            }
            Witness::Subgroup { name: hname, generators, evidence } => {
                let hi = match closure(&ctx, generators, cap) {
                    Ok(k) => k,
                    Err(Error::CapExceeded { cap, .. }) => {
                        log.put_status(format!("(B)(2) {name}"), Status::Skipped, format!("{hname} exceeds the cap {cap}"));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                if !generators.iter().all(|m| spec.contains(&ctx, m)) {
                    log.put(format!("(B)(2) {name}"), false, format!("{hname} is not a subgroup of G"));
                    continue;
                }
                let meet = h.elements().iter().filter(|m| hi.index_of(m).is_some()).count();
                log.put(
                    format!("(2)(b) {name}"),
                    meet as u64 % cert.p == 0,
                    format!("|{hname} n H| = {meet}"),
                );
                let dh = hi.commutator_subgroup(&hi.whole())?;
                let inside = hi.index_of(g).map(|x| dh.contains(x)).unwrap_or(false);
                log.put(format!("(2)(c) {name}"), inside, format!("|[{hname},{hname}]| = {}", dh.order()));
                let (st, d) = check_evidence(&hi, spec, cert.p, evidence)?;
                log.put_status(format!("(2)(a) {name}"), st, format!("{hname}: {d}"));
            }
        }
    }
    Ok(Verdict::from_report(&cert.family, &instance, log.0))
}
