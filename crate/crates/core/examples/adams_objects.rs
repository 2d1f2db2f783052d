//! Objects with an Adams operation, twists and equivariant maps.

use twistalg::adams::{BObject, Context};
use twistalg::cli::module_text;

fn main() {
    let ctx = Context::default();
    println!("p = {}, g = {}, period {}", ctx.p, ctx.g, ctx.period());

    let z9 = BObject::cyclic(ctx, 2, 1).unwrap();
    let twisted = z9.twist(1);
    println!("psi on Z/9 after one twist: {}", twisted.psi.get(0, 0));

    // equivariant maps need the operations to agree where the target is killed
    println!("Hom(Z/9, Z/9)        = {}", module_text(&z9.hom(&z9).module));
    println!("Hom(Z/9, twist Z/9)  = {}", module_text(&z9.hom(&twisted).module));
    let s0 = BObject::sphere(ctx, 0);
    println!("Hom(S^0, S^1)        = {}", module_text(&s0.hom(&BObject::sphere(ctx, 1)).module));
}
