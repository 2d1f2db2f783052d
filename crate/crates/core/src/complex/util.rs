use crate::linalg::Matrix;

pub(crate) use crate::linalg::invert_endomorphism as inverse_on;

/// `a^q` for any integer `q`, using `a_inv` for negative powers.
pub(crate) fn signed_pow(a: &Matrix, a_inv: &Matrix, q: i64) -> Matrix {
    if q >= 0 {
        a.pow(q as u32)
    } else {
        a_inv.pow((-q) as u32)
    }
}
