use crate::arith;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::liea::{build_sylow, compute_params, levi};
use crate::matgrp::{default_cap, LinearGroupSpec, Matrix, MatrixContext};

use super::cert::{check_certificate, Containment, LocalEvidence, MethodCertificate, Verdict, Witness};

pub const FAMILIES: &[&str] = &["rp-case", "composite-case-i", "composite-case-ii", "composite-case-iii", "sleps", "sl62"];

/// Default instances `(n, q, p)` tried when none is given.
pub fn default_instances(family: &str) -> Vec<(u64, u64, u64)> {
    match family {
        "rp-case" => vec![(3, 19, 3), (4, 5, 2)],
        "composite-case-iii" => vec![(4, 4, 3)],
        "composite-case-i" => vec![(12, 2, 3)],
        "composite-case-ii" => vec![(30, 2, 5)],
        "sleps" | "sl62" => vec![(6, 2, 3)],
        _ => vec![],
    }
}

fn diag(ctx: &MatrixContext, d: &[u32]) -> Result<Matrix> {
    ctx.diag(d)
}

fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

/// Generator of the Sylow p-subgroup of `GF(q)^x`.
fn sylow_root(f: &FieldSpec, p: u64) -> u32 {
    let qm1 = f.order() as u64 - 1;
    f.exp(arith::p_prime_part(qm1 as u128, p as u128) as u64)
}

/// The signed transposition `[[0,1],[-1,0]]` on coordinates `i, i+1`.
fn signed_swap(ctx: &MatrixContext, f: &FieldSpec, n: usize, i: usize) -> Result<Matrix> {
    let mut r = identity(n);
    r[i][i] = 0;
    r[i + 1][i + 1] = 0;
    r[i][i + 1] = 1;
    r[i + 1][i] = f.neg(1);
    ctx.from_rows(&r)
}

/// `SL(n,q)/Z` with `n = rp`, `p | q-1`, `Z` the full centre: `H` is the
/// monomial group mod `Z`, each signed swap lies in `[L/Z, L/Z]` for the
/// Levi `L` of a 2-block, and `L` normalizes `R = <Y>`.
pub fn rp_case(n: u64, q: u64, p: u64, corrupt: bool) -> Result<MethodCertificate> {
    if n < 3 || n % p != 0 || (q - 1) % p != 0 {
        return Err(Error::domain("rp-case needs n = rp >= 3 and p | q-1"));
    }
    let z = arith::gcd(n, q - 1);
    let spec = LinearGroupSpec::new(n as usize, q, 1, z)?;
    let ctx = spec.context()?;
    let f = spec.field()?;
    let nn = n as usize;
    let w = f.generator();
    let zeta = sylow_root(&f, p);
    let zeta_m2 = f.inv(f.mul(zeta, zeta));

    let sylow_lift = build_sylow(&compute_params(n, q, p, 1, 1)?)?;
    let sylow: Vec<Matrix> = sylow_lift.generators.iter().map(|m| ctx.canonical(m)).collect();
    let mut qgens = Vec::new();
    let mut generators = Vec::new();
    for i in 0..nn - 1 {
        let mut d = vec![1u32; nn];
        d[i] = zeta;
        d[i + 1] = f.inv(zeta);
        qgens.push(diag(&ctx, &d)?);
        let mut t = vec![1u32; nn];
        t[i] = w;
        t[i + 1] = f.inv(w);
        generators.push((format!("t{}", i + 1), diag(&ctx, &t)?, Witness::DerivedTimesSylow));
    }
    for i in 0..nn - 1 {
        let x = signed_swap(&ctx, &f, nn, i)?;
        // blocks with the 2-block at position i
        let mut blocks = vec![1usize; i];
        blocks.push(2);
        blocks.extend(std::iter::repeat(1).take(nn - i - 2));
        let mut y = vec![1u32; nn];
        y[i] = zeta;
        y[i + 1] = zeta;
        y[if i + 2 < nn { i + 2 } else { 0 }] = zeta_m2;
        let y = diag(&ctx, &y)?;
        let l = levi(&blocks, &spec)?;
        let (hname, hgens) = if corrupt { ("<X>".to_string(), vec![x]) } else { (format!("L{blocks:?}/Z"), l.generators.clone()) };
        generators.push((
            format!("X{}", i + 1),
            x,
            Witness::Subgroup { name: hname, generators: hgens, evidence: LocalEvidence::NormalPSubgroup(vec![y]) },
        ));
    }
    Ok(MethodCertificate {
        family: "rp-case".into(),
        group: spec,
        p,
        sylow,
        generators,
        h_evidence: LocalEvidence::NormalPSubgroup(qgens.clone()),
        containment: Containment::WeightSpaces(qgens),
    })
}

/// `SL(n,q)` with `n = r e`, `r = a p^s + b`: `H` is the Levi of blocks
/// `(b e, a p^s e)` matching the built Sylow subgroup, the generator `sigma`
/// lies in the derived subgroup of the Levi with blocks `(b e + 1, a p^s e - 1)`.
pub fn composite_case_iii(n: u64, q: u64, p: u64) -> Result<MethodCertificate> {
    let params = compute_params(n, q, p, 1, 1)?;
    let (e, r) = (params.e, params.r);
    if params.f != 0 || r < 2 {
        return Err(Error::domain("composite case needs e | n and r >= 2"));
    }
    let mut ps = 1;
    while ps * p <= r {
        ps *= p;
    }
    let (a, b) = (r / ps, r % ps);
    if b == 0 || ps == 1 {
        return Err(Error::domain("composite case (iii) needs r = a p^s + b with s >= 1 and 1 <= b < p^s"));
    }
    let spec = LinearGroupSpec::sl(n as usize, q)?;
    let ctx = spec.context()?;
    let f = spec.field()?;
    let nn = n as usize;
    let sylow = build_sylow(&params)?.generators;
    // the Sylow tower places the digit-b part first
    let small = (b * e) as usize;
    let big = (a * ps * e) as usize;
    let outer = levi(&[small, big], &spec)?;
    let w = f.generator();
    let mut sigma = vec![1u32; nn];
    sigma[small - 1] = w;
    sigma[small] = f.inv(w);
    let sigma = diag(&ctx, &sigma)?;
    let inner = levi(&[small + 1, big - 1], &spec)?;
    let mut generators: Vec<(String, Matrix, Witness)> = Vec::new();
    for (k, g) in outer.generators.iter().enumerate() {
        // block root elements lie in [H,H]; the torus and det generators are replaced by sigma
        if !ctx.is_identity(&ctx.pow(g, f.characteristic() as u64)) {
            continue;
        }
        generators.push((format!("u{}", k + 1), *g, Witness::DerivedTimesSylow));
    }
    generators.push((
        "sigma".into(),
        sigma,
        Witness::Subgroup {
            name: format!("L[{}, {}]", small + 1, big - 1),
            generators: inner.generators.clone(),
            evidence: LocalEvidence::LeviSplit(vec![small + 1, big - 1]),
        },
    ));
    // central element of order p, scalar on the big block, det fixed on the small one
    let mut qgen = None;
    if e == 1 {
        let u = f.exp((q - 1) / p);
        let mut c = vec![1u32; nn];
        for x in c.iter_mut().skip(small) {
            *x = u;
        }
        c[0] = f.inv(f.pow(u, big as i64));
        qgen = Some(diag(&ctx, &c)?);
    }
    let (h_evidence, containment) = match qgen {
        Some(qm) => (LocalEvidence::NormalPSubgroup(vec![qm]), Containment::WeightSpaces(vec![qm])),
        None => (LocalEvidence::Unproved("no central p-element for e > 1".into()), Containment::FullScan),
    };
    Ok(MethodCertificate {
        family: "composite-case-iii".into(),
        group: spec,
        p,
        sylow,
        generators,
        h_evidence,
        containment,
    })
}

/// Builds and checks the certificates of a family for one instance.
/// Families whose witness subgroups are beyond desk scale report SKIPPED.
pub fn replay_proof_certificates(family: &str, n: u64, q: u64, p: u64, cap: usize) -> Result<Vec<Verdict>> {
    let inst = format!("n={n} q={q} p={p}");
    match family {
        "rp-case" => Ok(vec![check_certificate(&rp_case(n, q, p, false)?, cap)?]),
        "composite-case-iii" => Ok(vec![check_certificate(&composite_case_iii(n, q, p)?, cap)?]),
        "composite-case-i" | "composite-case-ii" => Ok(vec![Verdict::skipped(
            family,
            &inst,
            "smallest instance has n >= 12 with e > 1; the witness subgroups exceed desk scale",
        )]),
        "sleps" | "sl62" => Ok(vec![Verdict::skipped(
            family,
            &inst,
            "needs rho^3(Q) in SL(6,2) (|SL(6,2)| = 20158709760); beyond desk scale",
        )]),
        _ => Err(Error::Usage(format!("unknown certificate family {family:?}; known: {}", FAMILIES.join(", ")))),
    }
}

/// Every family over its default instances at the default cap.
pub fn replay_all() -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for fam in FAMILIES {
        for (n, q, p) in default_instances(fam) {
            out.extend(replay_proof_certificates(fam, n, q, p, default_cap())?);
        }
    }
    Ok(out)
}
