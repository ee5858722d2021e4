use endotriv::classify::tf_rank_oracle;

fn main() {
    for (g, p) in [("SL(2,4)", 2), ("PSL(3,4)", 3), ("PGL(3,4)", 3), ("SL(3,2)", 3)] {
        let r = tf_rank_oracle(&g.parse().unwrap(), p, 1 << 20).unwrap();
        println!("{g} p={p}: p-rank {}, n_G = {}, TF rank {}", r.p_rank, r.n_g, r.tf_rank);
    }
}
