use endotriv::abst::{abelian_extensions, AbelianStructure};

fn main() {
    // Z^3 / <(2,0,0), (0,4,6)>
    let a = AbelianStructure::from_relations(&[vec![2, 0, 0], vec![0, 4, 6]], 3);
    println!("invariant factors: {a}");
    println!("primary form: {}", a.primary_string());
    let b: AbelianStructure = "Z/6 + Z/4".parse().unwrap();
    println!("{b} has order {:?}", b.order());
    let ext = abelian_extensions(&"Z/2".parse().unwrap(), &"Z/2".parse().unwrap()).unwrap();
    let names: Vec<String> = ext.iter().map(ToString::to_string).collect();
    println!("abelian extensions of Z/2 by Z/2: {}", names.join(", "));
}
