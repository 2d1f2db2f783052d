//! Extension classes, their realizations, functoriality, and the lifting obstruction.

use crate::adams::BObject;
use crate::error::{Error, Result};
use crate::linalg::{is_exact_at, linear_hom_map, FPModule, HomSpace, Matrix, ModuleMap, Scalar};

use super::ext::{ext, ExtGroup};
use super::resolution::{solve_r, FreeResolution};

/// `0 -> sub --ι--> mid --π--> quot -> 0` in ℬ.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub sub: BObject,
    pub mid: BObject,
    pub quot: BObject,
    pub iota: Matrix,
    pub pi: Matrix,
}

impl ShortExact {
    pub fn new(sub: BObject, mid: BObject, quot: BObject, iota: Matrix, pi: Matrix) -> Result<Self> {
        let bad = |what: &str| Error::Invariant(format!("short exact sequence: {what}"));
        let i = ModuleMap::new(sub.module.clone(), mid.module.clone(), iota.clone()).map_err(|e| bad(&format!("ι: {e}")))?;
        let q = ModuleMap::new(mid.module.clone(), quot.module.clone(), pi.clone()).map_err(|e| bad(&format!("π: {e}")))?;
        if !sub.is_equivariant(&mid, &iota) || !mid.is_equivariant(&quot, &pi) {
            return Err(bad("maps are not equivariant"));
        }
        if !i.is_injective() {
            return Err(bad("ι is not injective"));
        }
        if !q.is_surjective() {
            return Err(bad("π is not surjective"));
        }
        if !is_exact_at(&i, &q) {
            return Err(bad("not exact in the middle"));
        }
        Ok(ShortExact { sub, mid, quot, iota, pi })
    }

    /// `0 -> N -> N ⊕ M -> M -> 0`.
    pub fn split(n: &BObject, m: &BObject) -> Self {
        let mid = BObject::direct_sum(n.ctx, &[n, m]);
        let (a, b) = (n.ngens(), m.ngens());
        let iota = Matrix::identity(a).vstack(&Matrix::zeros(b, a));
        let pi = Matrix::zeros(b, a).hstack(&Matrix::identity(b));
        ShortExact { sub: n.clone(), mid, quot: m.clone(), iota, pi }
    }

    fn iota_map(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.sub.module.clone(), self.mid.module.clone(), self.iota.clone())
    }

    fn pi_map(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.mid.module.clone(), self.quot.module.clone(), self.pi.clone())
    }
}

/// A class in `Ext^1(M, N)` with a cocycle `(a, b) ∈ Hom(F1, N) ⊕ Hom(F0, N)`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub group: ExtGroup,
    pub a: Matrix,
    pub b: Matrix,
}

fn lift_columns(x: &Matrix, target: &FPModule, through: &ModuleMap) -> Option<Matrix> {
    let f = ModuleMap::new_unchecked(FPModule::free(target.p(), x.cols()), target.clone(), x.clone());
    f.lift_through(through).map(|g| g.matrix)
}

impl ExtClass {
    pub fn new(group: ExtGroup, a: Matrix, b: Matrix) -> Result<Self> {
        if group.s != 1 {
            return Err(Error::Precondition("extension classes live in Ext^1".into()));
        }
        if group.coords_of(&[a.clone(), b.clone()]).is_none() {
            return Err(Error::Invariant("(a, b) is not a cocycle".into()));
        }
        Ok(ExtClass { group, a, b })
    }

    pub fn zero(group: ExtGroup) -> Self {
        let res = &group.complex.resolution;
        let n = group.target().ngens();
        let a = Matrix::zeros(n, res.rank_f1());
        let b = Matrix::zeros(n, res.rank_f0());
        ExtClass { group, a, b }
    }

    pub fn from_coords(group: ExtGroup, coords: &[Scalar]) -> Self {
        let mut c = group.cocycle(coords);
        let b = c.pop().unwrap();
        let a = c.pop().unwrap();
        ExtClass { group, a, b }
    }

    /// Canonical coordinates in the normal form of the group.
    pub fn coords(&self) -> Vec<Scalar> {
        let c = self.group.coords_of(&[self.a.clone(), self.b.clone()]).expect("stored cochain is a cocycle");
        self.group.canonical(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_coboundary(&[self.a.clone(), self.b.clone()])
    }

    pub fn sub(&self, other: &ExtClass) -> ExtClass {
        ExtClass { group: self.group.clone(), a: self.a.sub(&other.a), b: self.b.sub(&other.b) }
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        ExtClass { group: self.group.clone(), a: self.a.add(&other.a), b: self.b.add(&other.b) }
    }

    pub fn equals(&self, other: &ExtClass) -> bool {
        self.sub(other).is_zero()
    }

    /// The extension `0 -> N -> E -> M -> 0` with `E = N ⊕ F0` modulo `R_N` and the
    /// columns `(−a_i; R e_i)`, and `ψ_E = [[ψ_N, b], [0, ψ0]]`.
    pub fn realize(&self) -> ShortExact {
        let res = &self.group.complex.resolution;
        let n = self.group.target();
        let m = self.group.source();
        let (nn, k) = (n.ngens(), res.rank_f0());
        let rn = n.module.relations();
        let left = rn.vstack(&Matrix::zeros(k, rn.cols()));
        let right = self.a.neg().vstack(&res.r);
        let e_mod = FPModule::new(n.p(), nn + k, left.hstack(&right)).expect("relations are p-local");
        let psi = n.psi.hstack(&self.b).vstack(&Matrix::zeros(k, nn).hstack(&res.psi0));
        let weights = n.weights.union(&m.weights).copied().collect();
        let mid = BObject::unchecked(n.ctx, e_mod, psi, weights);
        let iota = Matrix::identity(nn).vstack(&Matrix::zeros(k, nn));
        let pi = Matrix::zeros(m.ngens(), nn).hstack(&res.augmentation);
        ShortExact { sub: n.clone(), mid, quot: m.clone(), iota, pi }
    }
}

/// The class of an extension against the canonical resolution of its quotient.
pub fn ext_class_of(ses: &ShortExact) -> Result<ExtClass> {
    let group = ext(&ses.quot, &ses.sub, 1)?;
    ext_class_in(group, ses)
}

pub fn ext_class_in(group: ExtGroup, ses: &ShortExact) -> Result<ExtClass> {
    let res = group.complex.resolution.clone();
    let mid = &ses.mid.module;
    let s_hat = lift_columns(&res.augmentation, &ses.quot.module, &ses.pi_map())
        .ok_or_else(|| Error::Invariant("π is not surjective".into()))?;
    let iota = ses.iota_map();
    let a = lift_columns(&s_hat.mul(&res.r), mid, &iota)
        .ok_or_else(|| Error::Invariant("sequence is not exact in the middle".into()))?;
    let b = lift_columns(&ses.mid.psi.mul(&s_hat).sub(&s_hat.mul(&res.psi0)), mid, &iota)
        .ok_or_else(|| Error::Invariant("sequence is not exact in the middle".into()))?;
    ExtClass::new(group, a, b).map_err(|e| Error::Internal(format!("connecting cocycle: {e}")))
}

/// Post-composition with `f: N -> N'`.
pub fn pushforward(f: &Matrix, target: &BObject, cls: &ExtClass) -> Result<ExtClass> {
    let n = cls.group.target();
    if f.rows() != target.ngens() || f.cols() != n.ngens() {
        return Err(Error::Shape("pushforward map does not match the class".into()));
    }
    let group = ext(cls.group.source(), target, 1)?;
    ExtClass::new(group, f.mul(&cls.a), f.mul(&cls.b))
}

/// Chain map data `(G0, G1, K)` between resolutions over `g: M' -> M`:
/// `R G1 = G0 R'` and `ψ0 G0 − G0 ψ0' = R K`.
pub fn comparison(res: &FreeResolution, res2: &FreeResolution, g: &Matrix) -> (Matrix, Matrix, Matrix) {
    let p = res.p();
    let g0 = res.target.module.normal_form().to_normal.mul(g).mul(&res2.augmentation);
    let mut g0r = g0.clone();
    // reduce into canonical representatives so that R G1 = G0 R' is exact
    let exps = &res.target.module.normal_form().exps;
    for (i, e) in exps.iter().enumerate() {
        if let Some(e) = e {
            for j in 0..g0r.cols() {
                let v = g0r.get(i, j).reduce_mod_p_pow(p, *e);
                g0r.set(i, j, v);
            }
        }
    }
    let g1 = solve_r(&res.r, &g0r.mul(&res2.r), p);
    let k = solve_r(&res.r, &res.psi0.mul(&g0r).sub(&g0r.mul(&res2.psi0)), p);
    (g0r, g1, k)
}

/// Pre-composition with `g: M' -> M`.
pub fn pullback(g: &Matrix, source: &BObject, cls: &ExtClass) -> Result<ExtClass> {
    let m = cls.group.source();
    if g.rows() != m.ngens() || g.cols() != source.ngens() {
        return Err(Error::Shape("pullback map does not match the class".into()));
    }
    let group = ext(source, cls.group.target(), 1)?;
    let (g0, g1, k) = comparison(&cls.group.complex.resolution, &group.complex.resolution, g);
    ExtClass::new(group, cls.a.mul(&g1), cls.a.mul(&k).add(&cls.b.mul(&g0)))
}

/// Pushout of an extension along `f: N -> N'`.
pub fn pushout_realization(ses: &ShortExact, f: &Matrix, target: &BObject) -> Result<ShortExact> {
    let (n2, e) = (target.ngens(), ses.mid.ngens());
    let rels = Matrix::block_diag(&[target.module.relations(), ses.mid.module.relations()]);
    let glue = f.vstack(&ses.iota.neg());
    let module = FPModule::new(target.p(), n2 + e, rels.hstack(&glue))?;
    let psi = Matrix::block_diag(&[&target.psi, &ses.mid.psi]);
    let weights = target.weights.union(&ses.mid.weights).copied().collect();
    let mid = BObject::unchecked(target.ctx, module, psi, weights);
    let iota = Matrix::identity(n2).vstack(&Matrix::zeros(e, n2));
    let pi = Matrix::zeros(ses.quot.ngens(), n2).hstack(&ses.pi);
    ShortExact::new(target.clone(), mid, ses.quot.clone(), iota, pi)
}

/// Pullback of an extension along `g: M' -> M`.
pub fn pullback_realization(ses: &ShortExact, g: &Matrix, source: &BObject) -> Result<ShortExact> {
    let (e, m2) = (ses.mid.ngens(), source.ngens());
    let ambient = FPModule::direct_sum(source.p(), &[&ses.mid.module, &source.module]);
    let diff = ModuleMap::new(ambient.clone(), ses.quot.module.clone(), ses.pi.hstack(&g.neg()))?;
    let (kmod, incl) = diff.kernel();
    let amb_psi = Matrix::block_diag(&[&ses.mid.psi, &source.psi]);
    let psi = lift_columns(&amb_psi.mul(&incl.matrix), &ambient, &incl)
        .ok_or_else(|| Error::Internal("fibre product is not ψ-stable".into()))?;
    let iota = lift_columns(&ses.iota.vstack(&Matrix::zeros(m2, ses.sub.ngens())), &ambient, &incl)
        .ok_or_else(|| Error::Internal("ι does not land in the fibre product".into()))?;
    let pi = Matrix::zeros(m2, e).hstack(&Matrix::identity(m2)).mul(&incl.matrix);
    let weights = ses.mid.weights.union(&source.weights).copied().collect();
    let mid = BObject::unchecked(source.ctx, kmod, psi, weights);
    ShortExact::new(ses.sub.clone(), mid, source.clone(), iota, pi)
}

/// A map of the outer terms of two extensions, `f_B: B -> B̃` and `f_G: G -> G̃`.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub top: ShortExact,
    pub bottom: ShortExact,
    pub f_b: Matrix,
    pub f_g: Matrix,
}

impl Ladder {
    pub fn lifting(&self) -> Result<Lifting> {
        lifting_obstruction(&self.top, &self.bottom, &self.f_b, &self.f_g)
    }
}

/// Outcome of the lifting problem for a map of extensions.
#[derive(Clone, Debug)]
pub struct Lifting {
    /// `(f_B)_* S − (f_G)^* S̃` in `Ext^1(G, B̃)`.
    pub obstruction: ExtClass,
    pub liftable: bool,
    /// A middle map making the ladder commute, found by solving the linear system directly.
    pub witness: Option<Matrix>,
    /// Decision reached by comparing the classes of the pushout and pullback realizations.
    pub realization_route: bool,
}

impl Lifting {
    /// All three routes give the same answer, and any witness satisfies the ladder.
    pub fn consistent(&self) -> bool {
        self.liftable == self.witness.is_some() && self.liftable == self.realization_route
    }
}

pub fn lifting_obstruction(top: &ShortExact, bottom: &ShortExact, f_b: &Matrix, f_g: &Matrix) -> Result<Lifting> {
    if f_b.rows() != bottom.sub.ngens() || f_b.cols() != top.sub.ngens() {
        return Err(Error::Shape("f_B does not match the sub-objects".into()));
    }
    if f_g.rows() != bottom.quot.ngens() || f_g.cols() != top.quot.ngens() {
        return Err(Error::Shape("f_G does not match the quotients".into()));
    }
    if !top.sub.is_equivariant(&bottom.sub, f_b) || !top.quot.is_equivariant(&bottom.quot, f_g) {
        return Err(Error::Invariant("ladder maps must be equivariant".into()));
    }
    let s = ext_class_of(top)?;
    let s2 = ext_class_of(bottom)?;
    let push = pushforward(f_b, &bottom.sub, &s)?;
    let pull = pullback(f_g, &top.quot, &s2)?;
    let obstruction = push.sub(&pull);
    let liftable = obstruction.is_zero();

    let pushed = ext_class_of(&pushout_realization(top, f_b, &bottom.sub)?)?;
    let pulled = ext_class_of(&pullback_realization(bottom, f_g, &top.quot)?)?;
    let realization_route = pushed.equals(&pulled);

    let witness = solve_middle_map(top, bottom, f_b, f_g);
    Ok(Lifting { obstruction, liftable, witness, realization_route })
}

/// Solves `f_C ι = ι̃ f_B`, `π̃ f_C = f_G π`, `f_C ψ = ψ̃ f_C`.
fn solve_middle_map(top: &ShortExact, bottom: &ShortExact, f_b: &Matrix, f_g: &Matrix) -> Option<Matrix> {
    let h = HomSpace::new(&top.mid.module, &bottom.mid.module);
    let targets = [
        HomSpace::new(&top.sub.module, &bottom.mid.module),
        HomSpace::new(&top.mid.module, &bottom.quot.module),
        h.clone(),
    ];
    let lin = linear_hom_map(std::slice::from_ref(&h), &targets, |f| {
        let f = &f[0];
        vec![f.mul(&top.iota), bottom.pi.mul(f), f.mul(&top.mid.psi).sub(&bottom.mid.psi.mul(f))]
    });
    let rhs = [bottom.iota.mul(f_b), f_g.mul(&top.pi), Matrix::zeros(bottom.mid.ngens(), top.mid.ngens())];
    let coords = crate::linalg::hom::join_coords(&targets, &rhs);
    let col = Matrix::from_columns(&[coords], lin.target.ngens());
    let want = ModuleMap::new_unchecked(FPModule::free(h.module().p(), 1), lin.target.clone(), col);
    let x = want.lift_through(&lin)?.matrix.column(0);
    let f_c = h.to_matrix(&x);
    verify_ladder(top, bottom, f_b, f_g, &f_c).then_some(f_c)
}

/// Checks the two squares and equivariance of a middle map by direct multiplication.
pub fn verify_ladder(top: &ShortExact, bottom: &ShortExact, f_b: &Matrix, f_g: &Matrix, f_c: &Matrix) -> bool {
    let left = f_c.mul(&top.iota).sub(&bottom.iota.mul(f_b));
    let right = bottom.pi.mul(f_c).sub(&f_g.mul(&top.pi));
    ModuleMap::new(top.mid.module.clone(), bottom.mid.module.clone(), f_c.clone()).is_ok()
        && ModuleMap::new_unchecked(top.sub.module.clone(), bottom.mid.module.clone(), left).is_zero()
        && ModuleMap::new_unchecked(top.mid.module.clone(), bottom.quot.module.clone(), right).is_zero()
        && top.mid.is_equivariant(&bottom.mid, f_c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::Context;

    fn z(e: u32) -> BObject {
        BObject::cyclic(Context::default(), e, 1).unwrap()
    }

    /// `0 -> Z/3 --3--> Z/9 --1--> Z/3 -> 0`
    fn nonsplit() -> ShortExact {
        let m = |x: i64| Matrix::from_int_rows(&[&[x]]);
        ShortExact::new(z(1), z(2), z(1), m(3), m(1)).unwrap()
    }

    #[test]
    fn classes_of_standard_extensions() {
        let s = ShortExact::split(&z(1), &z(1));
        assert!(ext_class_of(&s).unwrap().is_zero());
        let c = ext_class_of(&nonsplit()).unwrap();
        assert!(!c.is_zero());
        let back = ext_class_of(&c.realize()).unwrap();
        assert!(back.equals(&c));
        assert!(c.realize().mid.module.iso_test(&z(2).module));
    }

    #[test]
    fn malformed_sequences_are_rejected() {
        let m = |x: i64| Matrix::from_int_rows(&[&[x]]);
        assert!(ShortExact::new(z(1), z(2), z(1), m(3), m(2)).is_ok());
        assert!(ShortExact::new(z(1), z(2), z(1), m(1), m(1)).is_err());
        assert!(ShortExact::new(z(1), z(2), z(1), m(3), m(0)).is_err());
    }

    #[test]
    fn functoriality_matches_realizations() {
        let s = nonsplit();
        let c = ext_class_of(&s).unwrap();
        let two = Matrix::from_int_rows(&[&[2]]);
        let pushed = pushforward(&two, &z(1), &c).unwrap();
        let via = ext_class_of(&pushout_realization(&s, &two, &z(1)).unwrap()).unwrap();
        assert!(pushed.equals(&via));
        assert!(pushed.equals(&c.add(&c)));
        let pulled = pullback(&two, &z(1), &c).unwrap();
        let via = ext_class_of(&pullback_realization(&s, &two, &z(1)).unwrap()).unwrap();
        assert!(pulled.equals(&via));
        let zero = Matrix::zeros(1, 1);
        assert!(pushforward(&zero, &z(1), &c).unwrap().is_zero());
    }

    #[test]
    fn lifting_examples() {
        let id = Matrix::identity(1);
        let top = ShortExact::split(&z(1), &z(1));
        let bottom = nonsplit();
        let l = lifting_obstruction(&top, &bottom, &id, &id).unwrap();
        assert!(!l.liftable && l.consistent());
        let s2 = ext_class_of(&bottom).unwrap();
        assert!(l.obstruction.add(&s2).is_zero());
        let l = lifting_obstruction(&bottom, &bottom, &id, &id).unwrap();
        assert!(l.liftable && l.consistent());
        let f = l.witness.unwrap();
        assert!(verify_ladder(&bottom, &bottom, &id, &id, &f));
        let zero = Matrix::zeros(1, 1);
        let l = lifting_obstruction(&top, &bottom, &zero, &zero).unwrap();
        assert!(l.liftable && l.consistent());
    }
}
