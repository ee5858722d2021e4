use endotriv::matgrp::LinearGroupSpec;
use endotriv::rho::RhoEngine;

fn main() {
    let spec: LinearGroupSpec = "SL(2,7)".parse().unwrap();
    let g = spec.enumerate(100_000).unwrap();
    let s = g.sylow_subgroup(&g.whole(), 2).unwrap();
    let mut engine = RhoEngine::new(&g, &s, 2).unwrap();
    println!("{spec}: {} nontrivial subgroups of S", engine.subgroups().len());
    for q in engine.subgroups().to_vec() {
        let c = engine.chain(&q, 3).unwrap().summary();
        println!("|Q| = {:>2}  |N_G(Q)| = {:>3}  rho orders {:?}", c.base_order, c.normalizer_order, c.chain_orders);
    }
}
