use endotriv::rho::{check_certificate, replay_all, rp_case};

fn main() {
    for v in replay_all().unwrap() {
        println!("{:<20} {:<22} {}", v.family, v.instance, v.status);
    }
    let corrupt = check_certificate(&rp_case(3, 19, 3, true).unwrap(), 1 << 20).unwrap();
    println!("corrupted witness: {} at {:?}", corrupt.status, corrupt.failed_clause);
}
