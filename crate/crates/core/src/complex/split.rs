//! The equivalence between complexes over 𝒜 and `(2p−2)`-periodic complexes over ℬ.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::aflavor::{AChainMap, AComplex};
use super::bflavor::{BChainMap, BComplex};
use crate::adams::{AObject, BObject};

fn wrap(j: i64, n: usize) -> usize {
    j.rem_euclid(n as i64) as usize
}

/// The internal-degree-0 part `C*_(0)`.
///
/// Level `i` is `(T^i C^0)_(0) = twist(i, C^0_(−i))`, the differentials are the degree-0
/// components of the unrolled ones, and `α_B^r = α_(1−r)^N`.
pub fn split_to_b(c: &AComplex) -> BComplex {
    let n = c.period();
    let levels: Vec<BObject> = (0..n as i64).map(|i| c.level(i).components[0].clone()).collect();
    let diffs = (0..n as i64).map(|i| c.diff(i).swap_remove(0)).collect();
    let alpha = (0..n as i64).map(|r| c.alpha[wrap(1 - r, n)].pow(n as u32)).collect();
    BComplex::assemble(c.ctx, levels, diffs, alpha)
}

pub fn split_chain_map(f: &AChainMap) -> BChainMap {
    let n = f.source.period();
    let levels = (0..n as i64).map(|i| f.at(i).swap_remove(0)).collect();
    BChainMap { source: split_to_b(&f.source), target: split_to_b(&f.target), levels }
}

/// `C̄^0_(j) = twist(−i, D^i)` with `i ≡ −j (mod N)`, built from the normalized `D`.
pub fn unsplit_to_a(d: &BComplex) -> AComplex {
    let d = if d.alpha_is_identity() { d.clone() } else { d.normalize().0 };
    let n = d.period();
    let comps: Vec<BObject> = (0..n as i64)
        .map(|j| {
            let i = wrap(-j, n);
            d.levels[i].twist(-(i as i64))
        })
        .collect();
    let dd = (0..n as i64).map(|j| d.diffs[wrap(-j, n)].clone()).collect();
    let c0 = AObject { ctx: d.ctx, components: comps };
    let alpha = c0.cyclic_twist(1).components.iter().map(|x| Matrix::identity(x.ngens())).collect();
    AComplex::assemble(d.ctx, c0, dd, alpha)
}

/// `unsplit_to_a` on a morphism between complexes with identity structure maps.
pub fn unsplit_chain_map(f: &BChainMap) -> Result<AChainMap> {
    if !f.source.alpha_is_identity() || !f.target.alpha_is_identity() {
        return Err(Error::Precondition("unsplit of a morphism needs normalized complexes".into()));
    }
    let n = f.source.period();
    let comps = (0..n as i64).map(|j| f.levels[wrap(-j, n)].clone()).collect();
    Ok(AChainMap { source: unsplit_to_a(&f.source), target: unsplit_to_a(&f.target), f: comps })
}

/// Round trip on the ℬ side: `split(unsplit(D))` and a certified isomorphism from `D`.
pub fn roundtrip_b(d: &BComplex) -> Result<(BComplex, BChainMap)> {
    let back = split_to_b(&unsplit_to_a(d));
    let (norm, iso) = d.normalize();
    if !back.same_data(&norm) {
        return Err(Error::Internal("split(unsplit(D)) differs from the normalized D".into()));
    }
    let iso = BChainMap { source: d.clone(), target: back.clone(), levels: iso.levels };
    iso.validate().map_err(|e| Error::Internal(format!("round-trip map: {e}")))?;
    if !iso.is_iso() {
        return Err(Error::Internal("round-trip map is not an isomorphism".into()));
    }
    Ok((back, iso))
}

/// Round trip on the 𝒜 side: `unsplit(split(C))` and a certified isomorphism from `C`.
pub fn roundtrip_a(c: &AComplex) -> Result<(AComplex, AChainMap)> {
    let (cn, n_a) = c.normalize();
    let sb = split_to_b(c);
    let (_, n_b) = sb.normalize();
    let h = split_chain_map(&n_a).compose(&n_b.inverse().ok_or_else(|| Error::Internal("normalization is not invertible".into()))?);
    let uh = unsplit_chain_map(&h)?;
    let back = uh.source.clone();
    if !uh.target.same_data(&cn) {
        return Err(Error::Internal("unsplit(split(C)) of a normalized C changed its data".into()));
    }
    let uh_inv = uh.inverse().ok_or_else(|| Error::Internal("unsplit map is not invertible".into()))?;
    let phi = AChainMap { source: c.clone(), target: back.clone(), f: uh_inv.compose(&n_a).f };
    phi.validate().map_err(|e| Error::Internal(format!("round-trip map: {e}")))?;
    if !phi.is_iso() {
        return Err(Error::Internal("round-trip map is not an isomorphism".into()));
    }
    Ok((back, phi))
}
