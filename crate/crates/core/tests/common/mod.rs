//! Independent oracles. Nothing here touches resolutions or Smith forms.
#![allow(dead_code)]

use twistalg::adams::{BObject, Context};
use twistalg::linalg::{FPModule, Matrix, Scalar};

pub fn vp(p: i64, k: i64) -> u32 {
    let (mut k, mut v) = (k.abs(), 0);
    assert!(k != 0);
    while k % p == 0 {
        k /= p;
        v += 1;
    }
    v
}

/// Exponent of `Ext¹(S⁰, S^k)` predicted by lifting the exponent: `1 + v_p(k)`.
pub fn image_of_j_exponent(p: i64, k: i64) -> u32 {
    1 + vp(p, k)
}

/// A finite abelian p-group `⊕ Z/p^{e_i}` with `ψ = u`.
#[derive(Clone, Debug)]
pub struct Scalarish {
    pub p: i64,
    pub exps: Vec<u32>,
    pub u: i64,
}

impl Scalarish {
    pub fn moduli(&self) -> Vec<i64> {
        self.exps.iter().map(|&e| self.p.pow(e)).collect()
    }

    pub fn order(&self) -> i64 {
        self.moduli().iter().product()
    }

    pub fn to_bobject(&self, ctx: Context) -> BObject {
        let m = FPModule::diagonal(ctx.p, &self.exps.iter().map(|&e| Some(e)).collect::<Vec<_>>());
        let psi = Matrix::scalar_identity(self.exps.len(), &Scalar::from_int(self.u));
        BObject::new(ctx, m, psi, Default::default()).unwrap()
    }

    /// Every element, as residue vectors.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for n in self.moduli() {
            out = out.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }

    fn scale(&self, c: i64, x: &[i64]) -> Vec<i64> {
        x.iter().zip(self.moduli()).map(|(a, n)| (c * a).rem_euclid(n)).collect()
    }
}

/// Finite abelian 3-groups of order at most 27, each with `ψ ∈ {1, 4, 7}`.
pub fn small_objects() -> Vec<Scalarish> {
    let groups: [&[u32]; 6] = [&[1], &[2], &[1, 1], &[3], &[1, 2], &[1, 1, 1]];
    let mut out = Vec::new();
    for g in groups {
        for u in [1, 4, 7] {
            out.push(Scalarish { p: 3, exps: g.to_vec(), u });
        }
    }
    out
}

/// `|Hom(M, N)|` of ψ-equivariant maps, by counting images of each generator.
pub fn hom_order(m: &Scalarish, n: &Scalarish) -> i64 {
    let elems = n.elements();
    let d = n.u - m.u;
    m.moduli()
        .iter()
        .map(|&mi| {
            elems
                .iter()
                .filter(|y| n.scale(mi, y).iter().all(|&z| z == 0) && n.scale(d, y).iter().all(|&z| z == 0))
                .count() as i64
        })
        .product()
}

/// `|Ext¹(M, N)|`: abelian extensions `m_i ẽ_i = c_i`, lifts `ψẽ_i = uẽ_i + x_i` with
/// `m_i x_i = (v − u)c_i`, modulo re-sectioning `x_i ↦ x_i + (u − v)y_i`, `y_i ∈ N[m_i]`.
/// Returned as a rational count `num/den` that must be an integer.
pub fn ext1_order(m: &Scalarish, n: &Scalarish) -> i64 {
    let elems = n.elements();
    let d = n.u - m.u;
    let mut total: i64 = 1;
    for mi in m.moduli() {
        let mut lifts = 0i64;
        for c in &elems {
            let rhs = n.scale(d, c);
            lifts += elems.iter().filter(|x| n.scale(mi, x) == rhs).count() as i64;
        }
        let mut image_m: Vec<Vec<i64>> = elems.iter().map(|x| n.scale(mi, x)).collect();
        image_m.sort();
        image_m.dedup();
        let mut t: Vec<Vec<i64>> = elems
            .iter()
            .filter(|y| n.scale(mi, y).iter().all(|&z| z == 0))
            .map(|y| n.scale(-d, y))
            .collect();
        t.sort();
        t.dedup();
        let den = image_m.len() as i64 * t.len() as i64;
        assert_eq!(lifts % den, 0, "orbit count is not an integer");
        total *= lifts / den;
    }
    total
}

/// `p^{Σ torsion}`, and panics on a free part.
pub fn finite_order(m: &FPModule) -> i64 {
    let inv = m.invariants();
    assert_eq!(inv.free_rank, 0);
    inv.torsion.iter().map(|&e| (m.p() as i64).pow(e)).product()
}
