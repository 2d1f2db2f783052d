//! Projective dimension through 0 -> L -> K -> C -> 0 with K free.

use twistalg::adams::{BObject, Context};
use twistalg::homalg::dimension_shift_check;

fn main() {
    let ctx = Context::default();
    let cases = [("S^0", BObject::sphere(ctx, 0)), ("Z/27", BObject::cyclic(ctx, 3, 1).unwrap())];
    for (name, c) in cases {
        for k in 1..=2 {
            let r = dimension_shift_check(&c, k).unwrap();
            println!(
                "{name}, k = {k}: len C = {}, len L = {}, exact = {}, implication holds = {}",
                r.len_c, r.len_l, r.splice_exact, r.holds
            );
        }
    }
}
