use endotriv::liea::{build_sylow, compute_params};

fn main() {
    for (n, q, p) in [(4, 3, 2), (3, 7, 3), (4, 2, 3), (6, 2, 3)] {
        let params = compute_params(n, q, p, 1, 1).unwrap();
        let s = build_sylow(&params).unwrap();
        let seen = s.enumerate(1 << 20).map(|g| g.order().to_string()).unwrap_or_else(|e| e.to_string());
        println!(
            "SL({n},{q}) p={p}: e={} r={} f={} rank {}, {} of order {} (closure {seen})",
            params.e, params.r, params.f, params.p_rank, s.shape, s.claimed_order
        );
    }
}
