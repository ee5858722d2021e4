use endotriv::abst::{direct_sum, smith_normal_form, AbelianStructure};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// A random product of elementary unimodular row or column operations.
fn unimodular(rng: &mut StdRng, k: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if i == j {
            u.swap(0, i);
            continue;
        }
        let c = rng.gen_range(-2..=2);
        for col in 0..k {
            u[i][col] += c * u[j][col];
        }
    }
    u
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

#[test]
fn smith_form_is_unimodular_invariant() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..5));
        let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-12..=12)).collect()).collect();
        let u = unimodular(&mut rng, r);
        let v = unimodular(&mut rng, c);
        let m2 = mul(&mul(&u, &m), &v);
        let a = smith_normal_form(&big(&m), c);
        let b = smith_normal_form(&big(&m2), c);
        assert_eq!(a, b, "{m:?} vs {m2:?}");
        let d = &a.diagonal;
        for w in d.windows(2) {
            assert_eq!(&w[1] % &w[0], BigInt::from(0), "divisibility chain broken in {d:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn structure_is_independent_of_decomposition(rank in 0u32..3, orders in prop::collection::vec(1u64..40, 0..5)) {
        let a = AbelianStructure::new(rank, &orders);
        let torsion: u128 = orders.iter().map(|&d| d as u128).product();
        prop_assert_eq!(a.torsion_order(), torsion);
        prop_assert_eq!(a.free_rank(), rank);
        let f = a.invariant_factors();
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let back: AbelianStructure = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let prim: AbelianStructure = a.primary_string().parse().unwrap();
        prop_assert_eq!(&prim, &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<AbelianStructure>(&json).unwrap(), a);
    }

    #[test]
    fn direct_sum_multiplies_orders(x in prop::collection::vec(1u64..30, 0..4), y in prop::collection::vec(1u64..30, 0..4)) {
        let a = AbelianStructure::new(1, &x);
        let b = AbelianStructure::new(0, &y);
        let s = direct_sum(&a, &b);
        prop_assert_eq!(s.free_rank(), 1);
        prop_assert_eq!(s.torsion_order(), a.torsion_order() * b.torsion_order());
    }
}

#[test]
fn relation_presentations() {
    assert_eq!(AbelianStructure::from_relations(&[vec![4, 6]], 2).to_string(), "Z + Z/2");
    assert_eq!(AbelianStructure::from_relations(&[vec![2, 0], vec![0, 3]], 2).to_string(), "Z/6");
    assert!(AbelianStructure::from_relations(&[vec![1, 0], vec![0, 1]], 2).is_trivial());
}
