use std::sync::Arc;

use super::sylow::{embed, identity_rows};
use super::group_p_part;
use crate::arith;
use crate::error::{Error, Result};
use crate::matgrp::{closure, EnumeratedGroup, LinearGroupSpec, Matrix, MatrixContext, Subgroup};

/// A block-diagonal subgroup of `G/Z`, or its block-permuting normalizer.
#[derive(Clone, Debug)]
pub struct Levi {
    pub blocks: Vec<usize>,
    pub spec: LinearGroupSpec,
    pub generators: Vec<Matrix>,
    /// Whether block swaps were added (see [`levi_normalizer`]).
    pub with_swaps: bool,
    ctx: Arc<MatrixContext>,
}

/// The direct-factor split `L^ = H x J` with `p` dividing both `|H n L|` and `|J n L|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviSplit {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub a_p_part: u128,
    pub b_p_part: u128,
}

impl LeviSplit {
    pub fn holds(&self) -> bool {
        self.a_p_part > 1 && self.b_p_part > 1
    }
}

fn block_offsets(blocks: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        off.push(acc);
        acc += b;
    }
    off
}

pub fn levi(blocks: &[usize], spec: &LinearGroupSpec) -> Result<Levi> {
    if blocks.iter().sum::<usize>() != spec.n || blocks.contains(&0) {
        return Err(Error::domain(format!("blocks {blocks:?} do not sum to n = {}", spec.n)));
    }
    let ctx = spec.context()?;
    let f = ctx.field().clone();
    let n = spec.n;
    let offs = block_offsets(blocks);
    let mut gens = Vec::new();
    for (&b, &o) in blocks.iter().zip(&offs) {
        for i in 0..b.saturating_sub(1) {
            for j in 0..f.degree() as u64 {
                for (r, c) in [(i, i + 1), (i + 1, i)] {
                    let mut rows = identity_rows(n);
                    rows[o + r][o + c] = f.exp(j);
                    gens.push(ctx.from_rows(&rows)?);
                }
            }
        }
    }
    let w = f.generator();
    for k in 0..blocks.len().saturating_sub(1) {
        let mut d = vec![1u32; n];
        d[offs[k]] = w;
        d[offs[k + 1]] = f.inv(w);
        gens.push(ctx.diag(&d)?);
    }
    if spec.det_order > 1 {
        let mut d = vec![1u32; n];
        d[0] = f.exp((spec.q - 1) / spec.det_order);
        gens.push(ctx.diag(&d)?);
    }
    if gens.is_empty() {
        gens.push(ctx.identity());
    }
    Ok(Levi { blocks: blocks.to_vec(), spec: spec.clone(), generators: gens, with_swaps: false, ctx })
}

/// `N_G(L)` for `r` equal blocks of size `s`: the Levi subgroup together with
/// the swaps `[[0, I_s], [-I_s, 0]]` of adjacent blocks.
pub fn levi_normalizer(s: usize, r: usize, spec: &LinearGroupSpec) -> Result<Levi> {
    if r < 2 || s * r != spec.n {
        return Err(Error::domain(format!("need r >= 2 blocks of size s with s*r = n = {}", spec.n)));
    }
    let mut l = levi(&vec![s; r], spec)?;
    let f = l.ctx.field().clone();
    let minus = f.neg(1);
    for k in 0..r - 1 {
        let mut sigma = vec![vec![0u32; 2 * s]; 2 * s];
        for i in 0..s {
            sigma[i][s + i] = 1;
            sigma[s + i][i] = minus;
        }
        l.generators.push(l.ctx.from_rows(&embed(spec.n, k * s, &sigma))?);
    }
    l.with_swaps = true;
    Ok(l)
}

impl Levi {
    pub fn ctx(&self) -> &Arc<MatrixContext> {
        &self.ctx
    }

    pub fn enumerate(&self, cap: usize) -> Result<EnumeratedGroup> {
        closure(&self.ctx, &self.generators, cap)
    }

    pub fn subgroup_in(&self, g: &EnumeratedGroup) -> Result<Subgroup> {
        g.subgroup_from_matrices(&self.generators)
    }

    /// Order of the block-diagonal subgroup of `G` (before dividing by `Z`).
    pub fn block_order(&self) -> u128 {
        let q = self.spec.q as u128;
        let mut o: u128 = 1;
        for &b in &self.blocks {
            for i in 0..b as u32 {
                o *= q.pow(b as u32) - q.pow(i);
            }
        }
        o / (q - 1) * self.spec.det_order as u128
    }

    /// The Levi direct-factor split when at least two blocks carry
    /// p-elements of determinant one: blocks of size >= 2 when `p | q-1`,
    /// of size >= e otherwise. Only meaningful inside `SL(n,q)`.
    pub fn split(&self, p: u64) -> Option<LeviSplit> {
        let q = self.spec.q;
        if !arith::is_prime(p) || q % p == 0 {
            return None;
        }
        let e = arith::mult_order_mod(q % p, p) as usize;
        let threshold = if e == 1 { 2 } else { e };
        let big: Vec<usize> = (0..self.blocks.len()).filter(|&i| self.blocks[i] >= threshold).collect();
        if big.len() < 2 {
            return None;
        }
        let a = vec![big[0]];
        let b: Vec<usize> = (0..self.blocks.len()).filter(|&i| i != big[0]).collect();
        let part = |idx: &[usize]| -> u128 {
            // p-part of |prod GL(n_i) n SL| = p-part of prod |GL(n_i)| / (q-1)
            let mut v: u128 = 1;
            for &i in idx {
                v *= group_p_part(self.blocks[i] as u64, q, p, q - 1).unwrap_or(1);
            }
            v / arith::p_part((q - 1) as u128, p as u128)
        };
        Some(LeviSplit { a_p_part: part(&a), b_p_part: part(&b), a, b })
    }
}
