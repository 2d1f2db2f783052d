//! Twisted complexes, chain maps and cones.

use twistalg::adams::{BObject, Context};
use twistalg::cli::module_text;
use twistalg::complex::{cone_b, make_v_b, BChainMap};
use twistalg::linalg::{Matrix, Scalar};

fn main() {
    let ctx = Context::default();
    let v = make_v_b(&BObject::sphere(ctx, 0));
    let three: Vec<Matrix> = v.levels.iter().map(|l| Matrix::scalar_identity(l.ngens(), &Scalar::from_int(3))).collect();
    let f = BChainMap::new(v.clone(), v.clone(), three).unwrap();
    println!("3 is a quasi-iso: {}", f.is_quasi_iso());

    let c = cone_b(&f);
    for (i, h) in c.cohomology().iter().enumerate() {
        println!("H^{i}(cone) = {}", module_text(&h.object.module));
    }
}
