use endotriv::classify::classify;

fn main() {
    let cases = [(2, 3, 2, 1, 2), (2, 5, 2, 1, 1), (3, 4, 3, 1, 3), (3, 7, 3, 6, 6), (4, 5, 2, 4, 1), (3, 7, 2, 1, 1), (2, 5, 3, 1, 1), (4, 3, 5, 2, 1)];
    for (n, q, p, det, z) in cases {
        let c = classify(n, q, p, det, z).unwrap();
        println!("n={n} q={q} p={p} det={det} z={z}: {}  [{}]", c.result, c.case_tag);
    }
    println!("{}", classify(2, 5, 2, 4, 2).unwrap_err());
}
