#![allow(dead_code)]

use endotriv::matgrp::{EnumeratedGroup, Subgroup};

/// rho^1..rho^max_i of every subgroup in `subs`, straight from the definition:
/// normalizers by scanning all of `G`, commutator subgroups from all commutators,
/// intersections by membership.
pub fn naive_rho(g: &EnumeratedGroup, subs: &[Subgroup], max_i: usize) -> Vec<Vec<Subgroup>> {
    let n = g.order() as u32;
    let normalizers: Vec<Subgroup> = subs
        .iter()
        .map(|r| {
            let elems: Vec<u32> = (0..n).filter(|&x| r.elements().iter().all(|&y| r.contains(g.conj(x, y)))).collect();
            g.subgroup_from_elements(elems)
        })
        .collect();
    let mut level: Vec<Subgroup> = normalizers
        .iter()
        .map(|nr| {
            let mut comms = Vec::new();
            for &a in nr.elements() {
                for &b in nr.elements() {
                    comms.push(g.commutator(a, b));
                }
            }
            comms.sort_unstable();
            comms.dedup();
            g.subgroup(&comms)
        })
        .collect();
    let mut out = vec![level.clone()];
    for _ in 1..max_i {
        level = normalizers
            .iter()
            .map(|nr| {
                let mut gens = Vec::new();
                for r in &level {
                    gens.extend(nr.elements().iter().copied().filter(|&x| r.contains(x)));
                }
                gens.sort_unstable();
                gens.dedup();
                g.subgroup(&gens)
            })
            .collect();
        out.push(level.clone());
    }
    out
}
