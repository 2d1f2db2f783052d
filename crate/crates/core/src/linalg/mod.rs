//! Exact linear algebra over the p-local integers.

pub mod hom;
pub mod matrix;
pub mod module;
pub mod scalar;

pub use hom::{linear_hom_map, HomSpace, MapGroup};
pub use matrix::{Matrix, Snf};
pub use module::{invert_endomorphism, is_exact_at, FPModule, Invariants, ModuleMap, NormalForm, Subquotient};
pub use scalar::Scalar;

/// Smith normal form of `m`: returns `(U, D, V)` with `U m V = D`.
pub fn snf(m: &Matrix, p: u64) -> (Matrix, Matrix, Matrix) {
    let s = Snf::compute(m, p);
    (s.u, s.d, s.v)
}

pub fn kernel(f: &ModuleMap) -> (FPModule, ModuleMap) {
    f.kernel()
}

pub fn cokernel(f: &ModuleMap) -> (FPModule, ModuleMap) {
    f.cokernel()
}

pub fn iso_test(a: &FPModule, b: &FPModule) -> bool {
    a.iso_test(b)
}
