//! Chain maps between two Q-constructions, assembled from ladders and Ext¹ obstructions.

use twistalg::adams::Context;
use twistalg::cli::module_text;
use twistalg::gen::Generator;
use twistalg::qfun::assemble_hom;

fn main() {
    let mut g = Generator::new(Context::default(), 8, 1);
    let (d1, d2) = (g.diagram(), g.diagram());
    let h = assemble_hom(&d1, &d2).unwrap();
    println!("N  = {}", module_text(&h.n.module));
    println!("N' = {}", module_text(&h.n_prime.module));
    println!("M  = {}", module_text(&h.m));
    println!("Hom(Q D1, Q D2) = {}", module_text(&h.chain_maps.module));
    println!("exactness {:?}, M matches {}", h.exact, h.m_matches);
}
