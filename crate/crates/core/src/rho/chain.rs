use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::matgrp::{EnumeratedGroup, Subgroup};

/// Largest Sylow subgroup whose full subgroup lattice is enumerated.
pub const SYLOW_LIMIT: usize = 256;

#[derive(Clone, Debug)]
pub struct RhoChain {
    pub base: Subgroup,
    pub normalizer: Subgroup,
    /// `chain[i]` is rho^(i+1)(Q).
    pub chain: Vec<Subgroup>,
    /// First `i` (1-based) with rho^i(Q) = rho^(i+1)(Q).
    pub stabilized_at: Option<usize>,
    pub reached_normalizer: bool,
}

/// Orders only, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoSummary {
    pub base_order: usize,
    pub normalizer_order: usize,
    pub chain_orders: Vec<usize>,
    pub stabilized_at: Option<usize>,
    pub reached_normalizer: bool,
}

impl RhoChain {
    pub fn summary(&self) -> RhoSummary {
        RhoSummary {
            base_order: self.base.order(),
            normalizer_order: self.normalizer.order(),
            chain_orders: self.chain.iter().map(Subgroup::order).collect(),
            stabilized_at: self.stabilized_at,
            reached_normalizer: self.reached_normalizer,
        }
    }
}

/// The rho^i subgroups of every nontrivial subgroup of a Sylow subgroup `S`.
pub struct RhoEngine<'g> {
    g: &'g EnumeratedGroup,
    p: u64,
    subs: Vec<Subgroup>,
    normalizers: Vec<Subgroup>,
    /// `levels[i][k]` = rho^(i+1)(subs[k]).
    levels: Vec<Vec<Subgroup>>,
}

impl<'g> RhoEngine<'g> {
    /// Enumerates the nontrivial subgroups of `s` and their normalizers; the
    /// normalizer and commutator subgroup are computed once per `G`-class and
    /// conjugated to the other members.
    pub fn new(g: &'g EnumeratedGroup, s: &Subgroup, p: u64) -> Result<Self> {
        let target = arith::p_part(g.order() as u128, p as u128) as usize;
        if s.order() != target || arith::p_part(s.order() as u128, p as u128) as usize != s.order() {
            return Err(Error::domain(format!("S (order {}) is not a Sylow {p}-subgroup", s.order())));
        }
        if s.order() > SYLOW_LIMIT {
            return Err(Error::CapExceeded { what: "Sylow subgroup for the rho lattice".into(), cap: SYLOW_LIMIT });
        }
        if s.is_trivial() {
            return Err(Error::domain("the Sylow subgroup is trivial"));
        }
        let subs: Vec<Subgroup> = g.all_subgroups(s, 1 << 16)?.into_iter().filter(|h| !h.is_trivial()).collect();
        let mut normalizers: Vec<Option<Subgroup>> = vec![None; subs.len()];
        let mut rho1: Vec<Option<Subgroup>> = vec![None; subs.len()];
        let pos: FxHashMap<&[u32], usize> = subs.iter().enumerate().map(|(i, h)| (h.elements(), i)).collect();
        for i in 0..subs.len() {
            if normalizers[i].is_some() {
                continue;
            }
            let n = g.normalizer(&subs[i])?;
            let c = g.commutator_subgroup(&n)?;
            for (k, x) in orbit_transversal(g, &subs[i], &pos) {
                if normalizers[k].is_none() {
                    normalizers[k] = Some(g.conjugate(x, &n));
                    rho1[k] = Some(g.conjugate(x, &c));
                }
            }
        }
        let normalizers: Vec<Subgroup> = normalizers.into_iter().map(|n| n.expect("every subgroup lies in its own orbit")).collect();
        let level1: Vec<Subgroup> = rho1.into_iter().map(|n| n.expect("every subgroup lies in its own orbit")).collect();
        Ok(RhoEngine { g, p, subs, normalizers, levels: vec![level1] })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subs
    }

    /// Reorders the subgroup list; only allowed before higher levels exist.
    pub fn permute(&mut self, perm: &[usize]) {
        assert_eq!(self.levels.len(), 1, "permute before computing higher levels");
        let take = |v: &Vec<Subgroup>| perm.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        self.subs = take(&self.subs);
        self.normalizers = take(&self.normalizers);
        self.levels[0] = take(&self.levels[0]);
    }

    fn ensure_level(&mut self, i: usize) {
        while self.levels.len() < i {
            let prev = self.levels.last().expect("level 1 exists");
            let next: Vec<Subgroup> = (0..self.subs.len())
                .map(|k| {
                    let gens: Vec<u32> = prev
                        .iter()
                        .flat_map(|r| self.g.intersection(&self.normalizers[k], r).generators().to_vec())
                        .collect();
                    self.g.subgroup(&gens)
                })
                .collect();
            for k in 0..self.subs.len() {
                assert!(prev[k].is_subgroup_of(&next[k]), "rho chain is not monotone");
                assert!(next[k].is_subgroup_of(&self.normalizers[k]), "rho term escapes the normalizer");
            }
            self.levels.push(next);
        }
    }

    /// rho^i(subs[k]).
    pub fn term(&mut self, i: usize, k: usize) -> &Subgroup {
        assert!(i >= 1);
        self.ensure_level(i);
        &self.levels[i - 1][k]
    }

    /// The chain rho^1(Q), ..., rho^max_i(Q) for a nontrivial `Q <= S`.
    pub fn chain(&mut self, q: &Subgroup, max_i: usize) -> Result<RhoChain> {
        if q.is_trivial() {
            return Err(Error::domain("Q must be nontrivial"));
        }
        let k = self
            .subs
            .iter()
            .position(|h| h == q)
            .ok_or_else(|| Error::domain("Q is not a subgroup of S"))?;
        let max_i = max_i.max(1);
        self.ensure_level(max_i);
        let chain: Vec<Subgroup> = (0..max_i).map(|i| self.levels[i][k].clone()).collect();
        let normalizer = self.normalizers[k].clone();
        for w in chain.windows(2) {
            assert!(w[0].is_subgroup_of(&w[1]), "rho chain is not monotone");
        }
        for c in &chain {
            assert!(c.is_subgroup_of(&normalizer), "rho term escapes the normalizer");
        }
        let stabilized_at = chain.windows(2).position(|w| w[0] == w[1]).map(|i| i + 1);
        let reached_normalizer = chain.last() == Some(&normalizer);
        Ok(RhoChain { base: q.clone(), normalizer, chain, stabilized_at, reached_normalizer })
    }
}

/// Members of the `G`-class of `h` among the indexed subgroups, each with an
/// element conjugating `h` onto it.
fn orbit_transversal(g: &EnumeratedGroup, h: &Subgroup, pos: &FxHashMap<&[u32], usize>) -> Vec<(usize, u32)> {
    let mut seen: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let start = h.elements().to_vec();
    seen.insert(start.clone(), 0);
    let mut queue = vec![(start, 0u32)];
    let mut out = Vec::new();
    while let Some((e, x)) = queue.pop() {
        if let Some(&k) = pos.get(e.as_slice()) {
            out.push((k, x));
        }
        for &s in g.generator_indices() {
            let mut c: Vec<u32> = e.iter().map(|&y| g.conj(s, y)).collect();
            c.sort_unstable();
            if !seen.contains_key(&c) {
                let sx = g.mul(s, x);
                seen.insert(c.clone(), sx);
                queue.push((c, sx));
            }
        }
    }
    out
}

/// Convenience wrapper: a Sylow subgroup is found when `s` is `None`.
pub fn rho_chain(g: &EnumeratedGroup, s: Option<&Subgroup>, q: &Subgroup, p: u64, max_i: usize) -> Result<RhoChain> {
    let s = match s {
        Some(s) => s.clone(),
        None => g.sylow_subgroup(&g.whole(), p)?,
    };
    RhoEngine::new(g, &s, p)?.chain(q, max_i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::matgrp::{closure, MatrixContext};

    #[test]
    fn quaternion_stalls_below_normalizer() {
        let f = FieldSpec::new(3).unwrap();
        let ctx = MatrixContext::new(&f, 2, 1).unwrap();
        let i = ctx.from_ints(&[&[0, 1], &[-1, 0]]).unwrap();
        let j = ctx.from_ints(&[&[1, 1], &[1, -1]]).unwrap();
        let g = closure(&ctx, &[i, j], 100).unwrap();
        assert_eq!(g.order(), 8);
        let c = rho_chain(&g, None, &g.whole(), 2, 4).unwrap();
        assert!(c.chain.iter().all(|h| h.order() == 2));
        assert_eq!(c.stabilized_at, Some(1));
        assert!(!c.reached_normalizer);
    }

    #[test]
    fn sl23_sylow3() {
        let g = "SL(2,3)".parse::<crate::matgrp::LinearGroupSpec>().unwrap().enumerate(1000).unwrap();
        let s = g.sylow_subgroup(&g.whole(), 3).unwrap();
        let c = rho_chain(&g, Some(&s), &s, 3, 3).unwrap();
        assert_eq!(c.normalizer.order(), 6);
        assert_eq!(c.chain[0], g.commutator_subgroup(&c.normalizer).unwrap());
    }
}
