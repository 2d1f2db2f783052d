//! Ext¹ between spheres of different weight: Z/p^{1 + v_p(k)}.

use twistalg::adams::{BObject, Context};
use twistalg::cli::module_text;
use twistalg::homalg::ext;

fn main() {
    let ctx = Context::default();
    let s0 = BObject::sphere(ctx, 0);
    for k in 1..=12 {
        let e = ext(&s0, &BObject::sphere(ctx, k), 1).unwrap();
        println!("Ext^1(S^0, S^{k:<2}) = {}", module_text(e.module()));
    }
}
