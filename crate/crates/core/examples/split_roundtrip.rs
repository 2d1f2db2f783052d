//! Passing between the two flavors of twisted complex, with the round-trip certificates.

use twistalg::adams::Context;
use twistalg::complex::{roundtrip_a, roundtrip_b, split_to_b, unsplit_to_a};
use twistalg::gen::Generator;

fn main() {
    let mut g = Generator::new(Context::default(), 11, 2);
    let b = g.complex_b();
    let a = unsplit_to_a(&b);
    println!("B levels {}, A components {}", b.levels.len(), a.c0.components.len());

    let (_, iso) = roundtrip_b(&b).unwrap();
    println!("split(unsplit(D)) ≅ D: {}", iso.is_iso());
    let (_, iso) = roundtrip_a(&a).unwrap();
    println!("unsplit(split(C)) ≅ C: {}", iso.is_iso());
    assert!(split_to_b(&a).same_data(&b.normalize().0));
}
