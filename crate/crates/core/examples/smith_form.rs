//! Smith form over Z_(3) and the invariants of a presented module.

use twistalg::cli::module_text;
use twistalg::linalg::{FPModule, Matrix, Snf};

fn main() {
    // 7 is a unit at 3, so only the 3-parts of the elementary divisors survive
    let m = Matrix::from_int_rows(&[&[6, 9, 0], &[3, 21, 27], &[0, 0, 14]]);
    let snf = Snf::compute(&m, 3);
    println!("rank {}, valuations {:?}", snf.rank, snf.exponents);
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);

    let module = FPModule::new(3, 3, m).unwrap();
    println!("Z^3 / columns = {}", module_text(&module));

    let free_part = FPModule::new(3, 2, Matrix::from_int_rows(&[&[9], &[0]])).unwrap();
    println!("with a free summand: {}", module_text(&free_part));
}
