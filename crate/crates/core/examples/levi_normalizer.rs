use endotriv::liea::levi_normalizer;
use endotriv::matgrp::LinearGroupSpec;

fn main() {
    for (s, r, q) in [(2, 2, 3), (2, 2, 5), (3, 2, 2), (2, 2, 2), (2, 2, 4), (2, 3, 3)] {
        let spec = LinearGroupSpec::sl(s * r, q).unwrap();
        let n = levi_normalizer(s, r, &spec).unwrap().enumerate(1 << 21).unwrap();
        let d = n.commutator_subgroup(&n.whole()).unwrap();
        let ab = n.quotient_structure(&n.whole(), &d).unwrap();
        println!("{spec}, {r} blocks of size {s}: |N| = {}, N/[N,N] = {ab}", n.order());
    }
}
