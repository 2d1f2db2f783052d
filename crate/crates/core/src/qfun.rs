//! The Q-construction: twisted complexes over ℬ from diagram data `(G_i, B_i, π_i, S_i)`,
//! its inverse, the homotopy-colimit identity and the Hom bookkeeping.

use crate::adams::{split_embed, AObject, BObject, Context};
use crate::complex::{BChainMap, BComplex};
use crate::error::{Error, Result};
use crate::homalg::{ext, ext_class_of, ExtClass, ShortExact};
use crate::linalg::{FPModule, Matrix, ModuleMap, Scalar};

mod hom;
pub use hom::{assemble_hom, chain_map_group, HomAssembly};

/// For each `i` in one period: `π_i: G_i -> B_i` and a realization
/// `0 -> B_i --ι_i--> C_i --ρ_i--> G_{i+1} -> 0`, where `G_N` means `twist(N, G_0)`.
#[derive(Clone, Debug)]
pub struct DiagramData {
    pub ctx: Context,
    pub g: Vec<BObject>,
    pub b: Vec<BObject>,
    pub pi: Vec<Matrix>,
    pub ses: Vec<ShortExact>,
}

impl DiagramData {
    pub fn new(ctx: Context, g: Vec<BObject>, b: Vec<BObject>, pi: Vec<Matrix>, ses: Vec<ShortExact>) -> Result<Self> {
        let n = ctx.period();
        if g.len() != n || b.len() != n || pi.len() != n || ses.len() != n {
            return Err(Error::Shape(format!("diagram data needs {n} entries of each kind")));
        }
        let d = DiagramData { ctx, g, b, pi, ses };
        d.validate()?;
        Ok(d)
    }

    pub fn period(&self) -> usize {
        self.ctx.period()
    }

    /// `G_{i+1}` as it appears in the `i`-th sequence.
    pub fn g_next(&self, i: usize) -> BObject {
        let n = self.period();
        if i + 1 == n {
            self.g[0].twist(n as i64)
        } else {
            self.g[i + 1].clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..self.period() {
            let (g, b) = (&self.g[i], &self.b[i]);
            g.validate()?;
            b.validate()?;
            let f = ModuleMap::new(g.module.clone(), b.module.clone(), self.pi[i].clone())
                .map_err(|e| Error::Invariant(format!("π_{i}: {e}")))?;
            if !g.is_equivariant(b, &self.pi[i]) {
                return Err(Error::Invariant(format!("π_{i} is not equivariant")));
            }
            if !f.is_surjective() {
                return Err(Error::Precondition(format!("π_{i} is not surjective")));
            }
            let s = &self.ses[i];
            if !s.sub.same_data(b) || !s.quot.same_data(&self.g_next(i)) {
                return Err(Error::Invariant(format!("sequence {i} does not connect B_{i} and G_{}", i + 1)));
            }
            ShortExact::new(s.sub.clone(), s.mid.clone(), s.quot.clone(), s.iota.clone(), s.pi.clone())?;
        }
        Ok(())
    }

    /// `S_i ∈ Ext^1(G_{i+1}, B_i)`.
    pub fn class(&self, i: usize) -> Result<ExtClass> {
        ext_class_of(&self.ses[i])
    }

    /// Realizes the class with the given coordinates in each `Ext^1(G_{i+1}, B_i)`.
    pub fn from_classes(ctx: Context, g: Vec<BObject>, b: Vec<BObject>, pi: Vec<Matrix>, coords: &[Vec<Scalar>]) -> Result<Self> {
        let n = ctx.period();
        if g.len() != n || b.len() != n || coords.len() != n {
            return Err(Error::Shape(format!("diagram data needs {n} entries of each kind")));
        }
        let mut ses = Vec::with_capacity(n);
        for i in 0..n {
            let q = if i + 1 == n { g[0].twist(n as i64) } else { g[i + 1].clone() };
            let grp = ext(&q, &b[i], 1)?;
            if coords[i].len() != grp.module().ngens() {
                return Err(Error::Shape(format!("class {i} needs {} coordinates", grp.module().ngens())));
            }
            ses.push(ExtClass::from_coords(grp, &coords[i]).realize());
        }
        DiagramData::new(ctx, g, b, pi, ses)
    }

    /// `G_i = twist(i − 1, I)`, `B_i = 0`: the data of `V(I)`.
    pub fn of_v(obj: &BObject) -> Self {
        let ctx = obj.ctx;
        let n = ctx.period();
        let z = BObject::zero(ctx);
        let g: Vec<BObject> = (0..n as i64).map(|i| obj.twist(i - 1)).collect();
        let b = vec![z.clone(); n];
        let pi = vec![Matrix::zeros(0, obj.ngens()); n];
        let ses = (0..n)
            .map(|i| {
                let q = obj.twist(i as i64);
                let k = q.ngens();
                ShortExact { sub: z.clone(), mid: q.clone(), quot: q, iota: Matrix::zeros(k, 0), pi: Matrix::identity(k) }
            })
            .collect();
        DiagramData { ctx, g, b, pi, ses }
    }

    /// `G_i = B_i = twist(i, I)`, `π_i = id`, every sequence split.
    pub fn split_identity(obj: &BObject) -> Self {
        let ctx = obj.ctx;
        let n = ctx.period();
        let g: Vec<BObject> = (0..n as i64).map(|i| obj.twist(i)).collect();
        let pi = g.iter().map(|x| Matrix::identity(x.ngens())).collect();
        let ses = (0..n).map(|i| ShortExact::split(&g[i], &obj.twist(i as i64 + 1))).collect();
        DiagramData { ctx, b: g.clone(), g, pi, ses }
    }
}

/// The complex `C_i --ρ_i--> G_{i+1} --π_{i+1}--> B_{i+1} --ι_{i+1}--> C_{i+1}`.
pub fn q_build(d: &DiagramData) -> Result<BComplex> {
    let n = d.period();
    let levels: Vec<BObject> = d.ses.iter().map(|s| s.mid.clone()).collect();
    let diffs = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            d.ses[j].iota.mul(&d.pi[j]).mul(&d.ses[i].pi)
        })
        .collect();
    let alpha = levels.iter().map(|l| Matrix::identity(l.ngens())).collect();
    BComplex::new(d.ctx, levels, diffs, alpha).map_err(|e| Error::Internal(format!("Q-construction: {e}")))
}

/// `B_i = im(d^{i−1})`, `G_{i+1} = C_i / B_i`, with `π` induced by `d`.
///
/// Both `B_{i+1}` and `G_{i+1}` are presented on the generators of `C_i`, so `π_{i+1}`
/// is the identity matrix and `ι_{i+1} = d^i`.
pub fn q_inverse(c: &BComplex) -> DiagramData {
    let (c, _) = c.normalize();
    let ctx = c.ctx;
    let n = c.period();
    let mut b_next = Vec::with_capacity(n);
    let mut g_next = Vec::with_capacity(n);
    for i in 0..n {
        let lvl = &c.levels[i];
        let d = c.diff_map(i as i64);
        let (im, _) = d.image();
        let tgt = c.level(i as i64 + 1);
        b_next.push(BObject::unchecked(ctx, im, lvl.psi.clone(), tgt.weights.clone()));
        let (q, _) = c.diff_map(i as i64 - 1).cokernel();
        g_next.push(BObject::unchecked(ctx, q, lvl.psi.clone(), lvl.weights.clone()));
    }
    let shift = |x: &BObject| x.twist(-(n as i64));
    let b: Vec<BObject> = (0..n).map(|i| if i == 0 { shift(&b_next[n - 1]) } else { b_next[i - 1].clone() }).collect();
    let g: Vec<BObject> = (0..n).map(|i| if i == 0 { shift(&g_next[n - 1]) } else { g_next[i - 1].clone() }).collect();
    let pi = g.iter().map(|x| Matrix::identity(x.ngens())).collect();
    let ses = (0..n)
        .map(|i| {
            let iota = c.diff((i as i64) - 1);
            let mid = c.levels[i].clone();
            let k = mid.ngens();
            ShortExact { sub: b[i].clone(), mid, quot: g_next[i].clone(), iota, pi: Matrix::identity(k) }
        })
        .collect();
    DiagramData { ctx, g, b, pi, ses }
}

/// `q_build(q_inverse(c))` with a certified isomorphism from `c`.
pub fn q_roundtrip(c: &BComplex) -> Result<(BComplex, BChainMap)> {
    let d = q_inverse(c);
    d.validate().map_err(|e| Error::Internal(format!("recovered diagram data: {e}")))?;
    let back = q_build(&d)?;
    let (norm, iso) = c.normalize();
    if !back.same_data(&norm) {
        return Err(Error::Internal("rebuilt complex differs from the normalized input".into()));
    }
    let iso = BChainMap::new(c.clone(), back.clone(), iso.levels)
        .map_err(|e| Error::Internal(format!("round-trip map: {e}")))?;
    if !iso.is_iso() {
        return Err(Error::Internal("round-trip map is not an isomorphism".into()));
    }
    Ok((back, iso))
}

/// `im(d^{i−1}) = ι_i(B_i)` as submodules of `C_i`, for every `i`.
pub fn image_is_b(d: &DiagramData, c: &BComplex) -> bool {
    (0..d.period()).all(|i| {
        let s = &d.ses[i];
        let dm = c.diff_map(i as i64 - 1);
        let iota = ModuleMap::new_unchecked(s.sub.module.clone(), s.mid.module.clone(), s.iota.clone());
        dm.lift_through(&iota).is_some() && iota.lift_through(&dm).is_some()
    })
}

/// Maps of diagram data `d -> q_inverse(q_build(d))` on `B` and `G` under which the
/// identity of `C` is a map of extensions, so the classes agree.
pub fn classes_survive(d: &DiagramData) -> Result<bool> {
    let c = q_build(d)?;
    let e = q_inverse(&c);
    for i in 0..d.period() {
        let (s, t) = (&d.ses[i], &e.ses[i]);
        let t_iota = ModuleMap::new_unchecked(t.sub.module.clone(), t.mid.module.clone(), t.iota.clone());
        let s_iota = ModuleMap::new_unchecked(s.sub.module.clone(), s.mid.module.clone(), s.iota.clone());
        let Some(f_b) = s_iota.lift_through(&t_iota) else { return Ok(false) };
        let free = FPModule::free(d.ctx.p, s.quot.ngens());
        let s_pi = ModuleMap::new_unchecked(s.mid.module.clone(), s.quot.module.clone(), s.pi.clone());
        let id_g = ModuleMap::new_unchecked(free, s.quot.module.clone(), Matrix::identity(s.quot.ngens()));
        let Some(sec) = id_g.lift_through(&s_pi) else { return Ok(false) };
        let f_g = t.pi.mul(&sec.matrix);
        let id_c = Matrix::identity(s.mid.ngens());
        if !crate::homalg::verify_ladder(s, t, &f_b.matrix, &f_g, &id_c) {
            return Ok(false);
        }
        let g_iso = ModuleMap::new(s.quot.module.clone(), t.quot.module.clone(), f_g.clone())?;
        if !f_b.is_iso() || !g_iso.is_iso() {
            return Ok(false);
        }
        let l = crate::homalg::lifting_obstruction(s, t, &f_b.matrix, &f_g)?;
        if !l.liftable || !l.consistent() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of `⊕ ker(π_i)[−i+1] ≅ ⊕ H^i(Q)[−i]` and the comparison maps.
#[derive(Clone, Debug)]
pub struct HocolimReport {
    /// `ker(π_{i+1})` for `i` in the window, sitting over `H^i`.
    pub kernels: Vec<BObject>,
    pub cohomology: Vec<BObject>,
    /// `H^i -> ker(π_{i+1})` induced by `ρ_i`, where an isomorphism was found.
    pub maps: Vec<Option<Matrix>>,
    pub left: AObject,
    pub right: AObject,
    pub holds: bool,
}

pub fn hocolim_homology(d: &DiagramData) -> Result<HocolimReport> {
    let c = q_build(d)?;
    let n = d.period();
    let (mut kernels, mut cohomology, mut maps) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        let s = &d.ses[i];
        let j = (i + 1) % n;
        let g = &s.quot;
        let pi = ModuleMap::new_unchecked(g.module.clone(), d.b[j].module.clone(), d.pi[j].clone());
        let (kmod, kincl) = pi.kernel();
        let psi = ModuleMap::new_unchecked(kmod.clone(), g.module.clone(), g.psi.mul(&kincl.matrix))
            .lift_through(&kincl)
            .ok_or_else(|| Error::Internal("ker π is not ψ-stable".into()))?
            .matrix;
        let ker = BObject::unchecked(d.ctx, kmod, psi, g.weights.clone());
        let h = c.homology_at(i as i64);
        let to_g = ModuleMap::new_unchecked(h.object.module.clone(), g.module.clone(), s.pi.mul(&h.sub.cycles.matrix));
        let map = to_g.lift_through(&kincl).and_then(|m| {
            let m = ModuleMap::new(h.object.module.clone(), ker.module.clone(), m.matrix).ok()?;
            (m.is_iso() && h.object.is_equivariant(&ker, &m.matrix)).then_some(m.matrix)
        });
        kernels.push(ker);
        cohomology.push(h.object);
        maps.push(map);
    }
    let ctx = d.ctx;
    let lefts: Vec<AObject> = kernels.iter().enumerate().map(|(i, k)| split_embed(ctx, -(i as i64), k)).collect();
    let rights: Vec<AObject> = cohomology.iter().enumerate().map(|(i, h)| split_embed(ctx, -(i as i64), h)).collect();
    let left = AObject::direct_sum(ctx, &lefts.iter().collect::<Vec<_>>());
    let right = AObject::direct_sum(ctx, &rights.iter().collect::<Vec<_>>());
    let holds = maps.iter().all(Option::is_some)
        && left.components.iter().zip(&right.components).all(|(a, b)| a.module.iso_test(&b.module));
    Ok(HocolimReport { kernels, cohomology, maps, left, right, holds })
}

#[cfg(test)]
mod tests;
