//! Diagram data to a twisted complex and back, plus the hocolim comparison.

use twistalg::adams::Context;
use twistalg::cli::module_text;
use twistalg::gen::Generator;
use twistalg::qfun::{classes_survive, hocolim_homology, image_is_b, q_build, q_inverse, q_roundtrip};

fn main() {
    let d = Generator::new(Context::default(), 2, 2).diagram();
    let c = q_build(&d).unwrap();
    println!("image(d) = B: {}", image_is_b(&d, &c));
    let (_, iso) = q_roundtrip(&c).unwrap();
    println!("Q(Q^-1(C)) ≅ C: {}", iso.is_iso());
    println!("classes survive: {}", classes_survive(&q_inverse(&c)).unwrap());

    let h = hocolim_homology(&d).unwrap();
    for (i, (k, hi)) in h.kernels.iter().zip(&h.cohomology).enumerate() {
        println!("i = {i}: H^i = {:<12} ker(pi_(i+1)) = {}", module_text(&hi.module), module_text(&k.module));
    }
    println!("hocolim identity: {}", h.holds);
}
