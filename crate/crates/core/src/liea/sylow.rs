use std::sync::Arc;

use super::LieParams;
use crate::arith;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matgrp::{closure, default_cap, EnumeratedGroup, Matrix, MatrixContext, Subgroup, MAX_DIM};

type Rows = Vec<Vec<u32>>;

pub(crate) fn identity_rows(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

/// Places `block` on the diagonal of `I_n` starting at `offset`.
pub(crate) fn embed(n: usize, offset: usize, block: &Rows) -> Rows {
    let mut m = identity_rows(n);
    for (i, row) in block.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m[offset + i][offset + j] = v;
        }
    }
    m
}

/// Permutation matrix cycling `p` consecutive chunks of size `chunk` from `offset`.
pub(crate) fn chunk_cycle(n: usize, offset: usize, chunk: usize, p: usize) -> Rows {
    let mut m = vec![vec![0u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        if i < offset || i >= offset + chunk * p {
            row[i] = 1;
        }
    }
    for k in 0..p {
        for x in 0..chunk {
            let src = offset + k * chunk + x;
            let dst = offset + ((k + 1) % p) * chunk + x;
            m[dst][src] = 1;
        }
    }
    m
}

fn mat_pow_rows(ctx: &MatrixContext, rows: &Rows, k: u64) -> Result<Rows> {
    let m = ctx.from_rows(rows)?;
    Ok(ctx.pow(&m, k).rows())
}

/// Companion matrix of the least primitive monic polynomial of degree `e`
/// over GF(q), acting on the basis `1, x, ..., x^(e-1)`. For `e = 1` this is
/// the least primitive element.
pub fn primitive_companion(field: &Arc<FieldSpec>, e: usize) -> Result<Rows> {
    if e == 1 {
        return Ok(vec![vec![field.generator()]]);
    }
    let q = field.order() as u64;
    let ctx = MatrixContext::new(field, e, 1)?;
    let big = (q as u128).pow(e as u32) - 1;
    let big = u64::try_from(big).map_err(|_| Error::domain("extension field too large"))?;
    let primes: Vec<u64> = arith::factorize(big).into_iter().map(|(l, _)| l).collect();
    let total = q.pow(e as u32);
    for code in 0..total {
        let mut c = Vec::with_capacity(e);
        let mut x = code;
        for _ in 0..e {
            c.push((x % q) as u32);
            x /= q;
        }
        if c[0] == 0 {
            continue;
        }
        let mut rows = vec![vec![0u32; e]; e];
        for j in 0..e - 1 {
            rows[j + 1][j] = 1;
        }
        for (i, &ci) in c.iter().enumerate() {
            rows[i][e - 1] = field.neg(ci);
        }
        let m = ctx.from_rows(&rows)?;
        if ctx.is_identity(&ctx.pow(&m, big)) && primes.iter().all(|&l| !ctx.is_identity(&ctx.pow(&m, big / l))) {
            return Ok(rows);
        }
    }
    Err(Error::domain("no primitive polynomial found"))
}

/// The Frobenius element `g` with `g w g^-1 = w^q` for a companion matrix `w`.
pub(crate) fn frobenius(field: &Arc<FieldSpec>, w: &Rows) -> Result<Rows> {
    let e = w.len();
    let q = field.order() as u64;
    let ctx = MatrixContext::new(field, e, 1)?;
    let wm = ctx.from_rows(w)?;
    let mut g = vec![vec![0u32; e]; e];
    for j in 0..e {
        let c = ctx.pow(&wm, j as u64 * q);
        for (i, row) in g.iter_mut().enumerate() {
            row[j] = c.get(i, 0);
        }
    }
    Ok(g)
}

/// `N_{GL(e,q)}(C) = <w, g>`, of order `e(q^e - 1)`.
pub fn sylow_normalizer_block(e: u64, q: u64, p: u64) -> Result<EnumeratedGroup> {
    if !arith::is_prime(p) || q % p == 0 {
        return Err(Error::domain("p must be a prime not dividing q"));
    }
    if e == 0 || (e == 1 && (q - 1) % p != 0) {
        return Err(Error::domain("need e > 1 or p | q-1"));
    }
    if e as usize > MAX_DIM {
        return Err(Error::domain("block too large"));
    }
    let field = FieldSpec::new(q)?;
    let ctx = MatrixContext::new(&field, e as usize, 1)?;
    let w = primitive_companion(&field, e as usize)?;
    let mut gens = vec![ctx.from_rows(&w)?];
    if e > 1 {
        gens.push(ctx.from_rows(&frobenius(&field, &w)?)?);
    }
    closure(&ctx, &gens, default_cap())
}

/// Generators of a Sylow p-subgroup of `G` (inside `GL(n,q)`, trivial `Z`).
#[derive(Clone, Debug)]
pub struct SylowPresentation {
    pub params: LieParams,
    /// Generators of the Sylow subgroup of `GL(n,q)` before the determinant filter.
    pub gl_generators: Vec<Matrix>,
    pub generators: Vec<Matrix>,
    pub claimed_order: u128,
    pub shape: String,
    /// Diagonal block sizes of the Levi subgroup holding the construction.
    pub levi_blocks: Vec<usize>,
    ctx: Arc<MatrixContext>,
}

impl SylowPresentation {
    pub fn ctx(&self) -> &Arc<MatrixContext> {
        &self.ctx
    }

    pub fn enumerate(&self, cap: usize) -> Result<EnumeratedGroup> {
        closure(&self.ctx, &self.generators, cap)
    }

    /// The image of the Sylow subgroup inside an enumerated `G/Z`.
    pub fn subgroup_in(&self, g: &EnumeratedGroup) -> Result<Subgroup> {
        g.subgroup_from_matrices(&self.generators)
    }
}

fn digits(mut r: u64, p: u64) -> Vec<u64> {
    let mut v = Vec::new();
    while r > 0 {
        v.push(r % p);
        r /= p;
    }
    v
}

fn tower_name(base: &str, p: u64, i: usize) -> String {
    let mut s = base.to_string();
    for _ in 0..i {
        s = format!("{s} wr C{p}");
    }
    s
}

pub fn build_sylow(params: &LieParams) -> Result<SylowPresentation> {
    let n = params.n as usize;
    if n > MAX_DIM {
        return Err(Error::domain(format!("n = {n} exceeds the matrix dimension limit {MAX_DIM}")));
    }
    let field = FieldSpec::new(params.q)?;
    let ctx = MatrixContext::new(&field, n, 1)?;
    let p = params.p;
    let q = params.q;
    let mut gens: Vec<Rows> = Vec::new();
    let mut factors: Vec<String> = Vec::new();
    let mut blocks: Vec<usize> = Vec::new();
    let mut offset = 0usize;

    if p != 2 || q % 4 == 1 {
        let e = params.e as usize;
        let ctx_e = MatrixContext::new(&field, e, 1)?;
        let w = primitive_companion(&field, e)?;
        let big = (q as u128).pow(e as u32) - 1;
        let pt = (p as u128).pow(params.t);
        let u = mat_pow_rows(&ctx_e, &w, (big / pt) as u64)?;
        let base = format!("C{pt}");
        for (i, &a) in digits(params.r, p).iter().enumerate() {
            for _ in 0..a {
                gens.push(embed(n, offset, &u));
                for j in 1..=i {
                    gens.push(chunk_cycle(n, offset, p.pow(j as u32 - 1) as usize * e, p as usize));
                }
                let size = p.pow(i as u32) as usize * e;
                blocks.push(size);
                offset += size;
            }
            if a > 0 {
                let t = tower_name(&base, p, i);
                factors.push(if a > 1 { format!("({t})^{a}") } else { t });
            }
        }
    } else {
        // q = 3 mod 4: semidihedral blocks on pairs of coordinates
        let ctx2 = MatrixContext::new(&field, 2, 1)?;
        let w = primitive_companion(&field, 2)?;
        let big = (q * q - 1) as u128;
        let a = arith::valuation(big, 2);
        let u = mat_pow_rows(&ctx2, &w, (big >> a) as u64)?;
        let g = frobenius(&field, &w)?;
        let base = format!("SD{}", 1u64 << (a + 1));
        for (i, &c) in digits(params.n / 2, 2).iter().enumerate() {
            if c == 0 {
                continue;
            }
            gens.push(embed(n, offset, &u));
            gens.push(embed(n, offset, &g));
            for j in 1..=i {
                gens.push(chunk_cycle(n, offset, 2usize.pow(j as u32), 2));
            }
            let size = 2usize.pow(i as u32 + 1);
            blocks.push(size);
            offset += size;
            factors.push(tower_name(&base, 2, i));
        }
        if n % 2 == 1 {
            gens.push(embed(n, offset, &vec![vec![field.neg(1)]]));
            blocks.push(1);
            offset += 1;
            factors.push("C2".into());
        }
    }
    blocks.extend(std::iter::repeat(1).take(n - offset));

    let gl_generators = gens.iter().map(|r| ctx.from_rows(r)).collect::<Result<Vec<Matrix>>>()?;
    let det_order = params.det_order as u32;
    let generators = if gl_generators.iter().all(|g| ctx.det_in(g, det_order)) {
        gl_generators.clone()
    } else {
        let s = closure(&ctx, &gl_generators, default_cap())?;
        let inside: Vec<u32> =
            (0..s.order() as u32).filter(|&i| ctx.det_in(s.element(i), det_order)).collect();
        let sub = s.subgroup_from_elements(inside);
        s.generator_matrices(&sub)
    };
    let mut shape = if factors.is_empty() { "1".to_string() } else { factors.join(" x ") };
    if generators != gl_generators {
        shape = format!("({shape}) n G");
    }
    Ok(SylowPresentation {
        params: params.clone(),
        gl_generators,
        generators,
        claimed_order: params.sylow_order,
        shape,
        levi_blocks: blocks,
        ctx,
    })
}
