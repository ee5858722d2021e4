use endotriv::gf::{primitive_element, FieldElement, FieldSpec};

fn main() {
    let f = FieldSpec::new(9).unwrap();
    let w = primitive_element(&f);
    println!("GF(9): characteristic {}, generator {}", f.characteristic(), f.format(w.value()));
    let mut x = FieldElement::one(&f);
    for i in 0..8 {
        println!("w^{i} = {}", f.format(x.value()));
        x = x.mul(&w).unwrap();
    }
    println!("order of w: {}", w.mult_order().unwrap());
}
