use endotriv::gf::{FieldElement, FieldSpec};
use proptest::prelude::*;

const ORDERS: &[u64] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 243, 256];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn distributive(qi in 0..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = FieldSpec::new(ORDERS[qi]).unwrap();
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
    }

    #[test]
    fn inverses(qi in 0..ORDERS.len(), a in any::<u32>()) {
        let f = FieldSpec::new(ORDERS[qi]).unwrap();
        let a = a % f.order();
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            prop_assert_eq!(f.exp(f.log(a) as u64), a);
            prop_assert_eq!((f.order() as u64 - 1) % f.order_of(a), 0);
        }
    }

    #[test]
    fn frobenius_is_additive(qi in 0..ORDERS.len(), a in any::<u32>(), b in any::<u32>()) {
        let f = FieldSpec::new(ORDERS[qi]).unwrap();
        let (a, b) = (a % f.order(), b % f.order());
        let p = f.characteristic() as i64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }
}

#[test]
fn elements_check_their_field() {
    let f4 = FieldSpec::new(4).unwrap();
    let f8 = FieldSpec::new(8).unwrap();
    let a = FieldElement::new(&f4, 2).unwrap();
    let b = FieldElement::new(&f8, 2).unwrap();
    assert!(a.mul(&b).is_err());
    assert!(FieldElement::new(&f4, 4).is_err());
    assert!(FieldElement::zero(&f4).inv().is_err());
}

#[test]
fn gf4_multiplication_table() {
    let f = FieldSpec::new(4).unwrap();
    // [0,1] is the class of x, with x^2 = x + 1
    let x = 2;
    assert_eq!(f.format(f.mul(x, x)), "[1,1]");
    assert_eq!(f.mul(x, f.mul(x, x)), 1);
}
