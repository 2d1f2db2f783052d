//! Dimension shifting along `0 -> L -> K -> C -> 0` with `K` free over the operator ring.
//!
//! `L` is the first syzygy of `C`: the image of `∂1` in the free cover `Q0`, resolved by
//! `0 -> Q2 -> Q1 -> L -> 0`. Splicing this onto `Q0 -> C` recovers the resolution of `C`.

use crate::adams::BObject;
use crate::error::{Error, Result};

use super::classes::ShortExact;
use super::resolution::FreeResolution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimShiftReport {
    pub bound: usize,
    pub len_c: usize,
    pub len_l: usize,
    /// The spliced sequence `0 -> Q2 -> Q1 -> Q0 -> C -> 0` is exact on the test window.
    pub splice_exact: bool,
    /// `len(L) ≤ k − 1` implies `len(C) ≤ k`.
    pub holds: bool,
}

const WINDOW: i64 = 3;

/// Runs the check with `K` the canonical free cover of `c`.
pub fn dimension_shift_check(c: &BObject, k: usize) -> Result<DimShiftReport> {
    if k == 0 {
        return Err(Error::Precondition("the bound k must be at least 1".into()));
    }
    let res = FreeResolution::build(c);
    let len_c = res.length();
    let ranks = res.stage_ranks();
    // the syzygy is resolved by the tail Q1 <- Q2
    let len_l = ranks.len().saturating_sub(2);
    let splice_exact = res.certify_exact(WINDOW).is_ok();
    let holds = splice_exact && (len_l + 1 > k || len_c <= k);
    Ok(DimShiftReport { bound: k, len_c, len_l, splice_exact, holds })
}

/// The same check for an explicit sequence `0 -> L -> K -> C -> 0`. A nonzero finitely
/// generated `K` is never free over the operator ring, so only the zero sequence qualifies.
pub fn dimension_shift_check_ses(ses: &ShortExact, k: usize) -> Result<DimShiftReport> {
    if !ses.mid.is_zero() {
        return Err(Error::Precondition("middle term is not projective over the operator ring".into()));
    }
    dimension_shift_check(&ses.quot, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::Context;

    #[test]
    fn dimension_shift_examples() {
        let c = Context::default();
        let z3 = BObject::cyclic(c, 1, 1).unwrap();
        let r = dimension_shift_check(&z3, 2).unwrap();
        assert_eq!((r.len_c, r.len_l), (2, 1));
        assert!(r.holds && r.splice_exact);
        let r = dimension_shift_check(&BObject::sphere(c, 0), 1).unwrap();
        assert_eq!((r.len_c, r.len_l), (1, 0));
        assert!(r.holds);
        let zero = ShortExact::split(&BObject::zero(c), &BObject::zero(c));
        assert!(dimension_shift_check_ses(&zero, 1).unwrap().holds);
        let bad = ShortExact::split(&z3, &z3);
        assert!(matches!(dimension_shift_check_ses(&bad, 2), Err(Error::Precondition(_))));
    }
}
