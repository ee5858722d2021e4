use std::collections::BTreeMap;
use std::sync::Arc;

use super::sylow::{embed, identity_rows};
use super::LieParams;
use crate::arith;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matgrp::{Matrix, MatrixContext};

pub const NAMED_TAGS: &[&str] = &[
    "sigma-swap",
    "tau-diag",
    "X-block",
    "Y-torus",
    "X-diag",
    "Y-cycle",
    "T-swap",
    "A-invol",
    "B-invol",
    "X-cube",
    "Y-cube",
    "sl3-wreath",
    "wreath-2",
    "levi-sigma",
];

fn need(cond: bool, tag: &str, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(format!("tag '{tag}' requires {what}")))
    }
}

/// Element of `F_q^x` generating its Sylow `l`-subgroup.
fn sylow_root(f: &FieldSpec, l: u64) -> u32 {
    let qm1 = f.order() as u64 - 1;
    f.exp(arith::p_prime_part(qm1 as u128, l as u128) as u64)
}

/// The explicit matrices of the proofs, keyed by name, over `GF(q)` in
/// dimension `n` with trivial `Z`.
pub fn named_matrices(tag: &str, params: &LieParams) -> Result<(Arc<MatrixContext>, BTreeMap<String, Matrix>)> {
    let n = params.n as usize;
    let q = params.q;
    let field = FieldSpec::new(q)?;
    let ctx = MatrixContext::new(&field, n, 1)?;
    let f = &*field;
    let minus = f.neg(1);
    let mut out: BTreeMap<String, Matrix> = BTreeMap::new();
    let mut put = |name: &str, rows: Vec<Vec<u32>>| -> Result<()> {
        out.insert(name.to_string(), ctx.from_rows(&rows)?);
        Ok(())
    };
    let diag = |d: &[u32]| -> Vec<Vec<u32>> {
        let mut m = identity_rows(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[i][i] = v;
        }
        m
    };
    match tag {
        "sigma-swap" | "tau-diag" => {
            need(n % 2 == 0, tag, "even n")?;
            let m = n / 2;
            if tag == "sigma-swap" {
                let mut s = vec![vec![0u32; n]; n];
                for i in 0..m {
                    s[i][m + i] = 1;
                    s[m + i][i] = minus;
                }
                put("sigma", s)?;
            } else {
                need(q % 2 == 1, tag, "odd q")?;
                let c = sylow_root(f, 2);
                let mut d = vec![1u32; n];
                d[0] = c;
                d[m] = f.inv(c);
                put("tau", diag(&d))?;
            }
        }
        "X-block" => {
            need(n >= 2, tag, "n >= 2")?;
            put("X", embed(n, 0, &vec![vec![0, 1], vec![minus, 0]]))?;
            put("U", {
                let mut u = identity_rows(n);
                u[0][0] = 0;
                u[0][1] = 1;
                u[1][0] = minus;
                u[1][1] = 0;
                u
            })?;
        }
        "Y-torus" => {
            need(n >= 3 && params.e == 1, tag, "n >= 3 and p | q-1")?;
            let z = sylow_root(f, params.p);
            let mut d = vec![1u32; n];
            d[0] = z;
            d[1] = z;
            d[2] = f.inv(f.mul(z, z));
            put("Y", diag(&d))?;
        }
        "X-diag" | "T-swap" | "Y-cycle" => {
            need(n == 3, tag, "n = 3")?;
            if tag == "X-diag" {
                need((q - 1) % 3 == 0, tag, "3 | q-1")?;
                let z = sylow_root(f, 3);
                for i in 0..3 {
                    let mut d = vec![1u32; 3];
                    d[i] = z;
                    put(&format!("X{}", i + 1), diag(&d))?;
                }
            } else if tag == "Y-cycle" {
                put("Y", vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])?;
            } else {
                put("T", vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]])?;
            }
        }
        "A-invol" | "B-invol" => {
            need(n == 3 && q % 2 == 1, tag, "n = 3 and odd q")?;
            if tag == "A-invol" {
                put("A", diag(&[minus, minus, 1]))?;
            } else {
                put("B", diag(&[1, minus, minus]))?;
            }
        }
        "X-cube" | "Y-cube" => {
            need(n == 3 && (q - 1) % 3 == 0, tag, "n = 3 and 3 | q-1")?;
            let u = f.exp((q - 1) / 3);
            let u2 = f.mul(u, u);
            if tag == "X-cube" {
                put("X", diag(&[u, u2, 1]))?;
            } else {
                put("Y", diag(&[1, u2, u]))?;
            }
        }
        "sl3-wreath" => {
            need(n == 3 && q % 4 == 1, tag, "n = 3 and q = 1 mod 4")?;
            let z = sylow_root(f, 2);
            let zi = f.inv(z);
            put("X1", diag(&[z, zi, 1]))?;
            put("X2", diag(&[1, z, zi]))?;
            put("Y", vec![vec![0, 1, 0], vec![minus, 0, 0], vec![0, 0, 1]])?;
        }
        "wreath-2" => {
            need(n == 2 && q % 2 == 1, tag, "n = 2 and odd q")?;
            let z = sylow_root(f, 2);
            put("P", vec![vec![0, 1], vec![1, 0]])?;
            put("D1", diag(&[z, 1]))?;
            put("D2", diag(&[1, z]))?;
        }
        "levi-sigma" => {
            // r = a p^s + b with 1 <= a < p, 1 <= b < p^s
            need(params.f == 0, tag, "e | n")?;
            let (p, r) = (params.p, params.r);
            let mut ps = 1;
            while ps * p <= r {
                ps *= p;
            }
            let (a, b) = (r / ps, r % ps);
            need(b >= 1, tag, "r not of the form a p^s")?;
            let pos = (a * ps * params.e) as usize;
            let w = f.generator();
            let mut d = vec![1u32; n];
            d[pos - 1] = w;
            d[pos] = f.inv(w);
            put("sigma", diag(&d))?;
        }
        _ => return Err(Error::domain(format!("unknown tag '{tag}'"))),
    }
    Ok((ctx, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liea::compute_params;

    #[test]
    fn spec_examples() {
        let (ctx, m) = named_matrices("sigma-swap", &compute_params(4, 3, 2, 1, 1).unwrap()).unwrap();
        assert_eq!(m["sigma"], ctx.from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]).unwrap());
        let (ctx, m) = named_matrices("Y-cycle", &compute_params(3, 7, 3, 1, 1).unwrap()).unwrap();
        assert_eq!(ctx.order(&m["Y"]), 3);
        let (ctx, m) = named_matrices("A-invol", &compute_params(3, 7, 2, 1, 1).unwrap()).unwrap();
        assert_eq!(m["A"], ctx.diag(&[6, 6, 1]).unwrap());
        assert!(named_matrices("nope", &compute_params(3, 7, 2, 1, 1).unwrap()).is_err());
    }

    #[test]
    fn determinants_and_orders() {
        let p = compute_params(3, 19, 3, 1, 1).unwrap();
        let (ctx, m) = named_matrices("Y-torus", &p).unwrap();
        assert_eq!(ctx.det(&m["Y"]), 1);
        assert_eq!(ctx.order(&m["Y"]), 9);
        let (ctx, m) = named_matrices("X-diag", &compute_params(3, 7, 3, 6, 1).unwrap()).unwrap();
        assert_eq!(ctx.order(&m["X2"]), 3);
        let (ctx, m) = named_matrices("levi-sigma", &compute_params(4, 4, 3, 1, 1).unwrap()).unwrap();
        assert_eq!(ctx.det(&m["sigma"]), 1);
        for t in NAMED_TAGS {
            let _ = named_matrices(t, &compute_params(3, 7, 3, 6, 1).unwrap());
        }
    }
}
