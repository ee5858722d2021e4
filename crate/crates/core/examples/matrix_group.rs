use endotriv::matgrp::LinearGroupSpec;

fn main() {
    let spec: LinearGroupSpec = "PSL(2,7)".parse().unwrap();
    let g = spec.enumerate(1_000_000).unwrap();
    println!("{spec}: order {}", g.order());
    let s = g.sylow_subgroup(&g.whole(), 2).unwrap();
    let n = g.normalizer(&s).unwrap();
    println!("Sylow 2-subgroup of order {}, normalizer of order {}", s.order(), n.order());
    let d = g.commutator_subgroup(&n).unwrap();
    println!("N/[N,N] = {}", g.quotient_structure(&n, &d).unwrap());
    let classes = g.subgroup_conjugacy_classes(&g.cyclic_subgroups(&g.whole())).unwrap();
    println!("classes of cyclic subgroups: {}", classes.len());
}
