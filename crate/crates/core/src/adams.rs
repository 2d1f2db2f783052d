//! Modules with an Adams operator: the categories ℬ (one module) and 𝒜 (internally graded).
//!
//! The whole family of operations is encoded by the single operator `ψ = ψ^g` for a
//! primitive root `g` modulo `p²`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{FPModule, HomSpace, MapGroup, Matrix, ModuleMap, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Context {
    pub p: u64,
    pub g: i64,
}

impl Default for Context {
    fn default() -> Self {
        Context { p: 3, g: 2 }
    }
}

impl Context {
    pub fn new(p: u64, g: i64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Invariant(format!("p = {p} must be an odd prime")));
        }
        if !is_primitive_root_mod_p2(g, p) {
            return Err(Error::Invariant(format!("g = {g} is not a primitive root modulo {p}^2")));
        }
        Ok(Context { p, g })
    }

    /// `2p − 2`, the number of internal degrees in a fundamental window.
    pub fn period(&self) -> usize {
        2 * self.p as usize - 2
    }

    /// `g^{j(p−1)}`.
    pub fn twist_unit(&self, j: i64) -> Scalar {
        Scalar::from_int(self.g).pow(j * (self.p as i64 - 1))
    }

    /// Splits an internal degree as `r + q·period` with `0 ≤ r < period`.
    pub fn split_degree(&self, i: i64) -> (usize, i64) {
        let n = self.period() as i64;
        (i.rem_euclid(n) as usize, i.div_euclid(n))
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn is_primitive_root_mod_p2(g: i64, p: u64) -> bool {
    let m = (p as u128) * (p as u128);
    let g = (g as i128).rem_euclid(m as i128) as u128;
    if g.is_multiple_of(p as u128) {
        return false;
    }
    let order = (p as u128) * (p as u128 - 1);
    let mut n = order;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            primes.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes.iter().all(|q| pow_mod(g, order / q, m) != 1)
}

/// An object of ℬ: a finitely presented `Z_(p)`-module with an invertible operator.
#[derive(Clone, Debug)]
pub struct BObject {
    pub ctx: Context,
    pub module: FPModule,
    /// Matrix of `ψ^g` on the generators.
    pub psi: Matrix,
    pub weights: BTreeSet<i64>,
}

impl BObject {
    pub fn new(ctx: Context, module: FPModule, psi: Matrix, weights: BTreeSet<i64>) -> Result<Self> {
        let b = BObject { ctx, module, psi, weights };
        b.validate()?;
        Ok(b)
    }

    pub fn unchecked(ctx: Context, module: FPModule, psi: Matrix, weights: BTreeSet<i64>) -> Self {
        BObject { ctx, module, psi, weights }
    }

    pub fn zero(ctx: Context) -> Self {
        BObject::unchecked(ctx, FPModule::zero(ctx.p), Matrix::zeros(0, 0), BTreeSet::new())
    }

    /// `Z_(p)` of pure weight `j`.
    pub fn sphere(ctx: Context, j: i64) -> Self {
        BObject::unchecked(
            ctx,
            FPModule::free(ctx.p, 1),
            Matrix::scalar_identity(1, &ctx.twist_unit(j)),
            [j].into_iter().collect(),
        )
    }

    /// `Z/p^e` with `ψ` acting by the unit `u`.
    pub fn cyclic(ctx: Context, e: u32, u: i64) -> Result<Self> {
        BObject::new(ctx, FPModule::cyclic(ctx.p, e), Matrix::from_int_rows(&[&[u]]), BTreeSet::new())
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    pub fn ngens(&self) -> usize {
        self.module.ngens()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn psi_map(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.module.clone(), self.module.clone(), self.psi.clone())
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ngens();
        if self.psi.rows() != n || self.psi.cols() != n {
            return Err(Error::Shape(format!("psi must be {n}x{n}")));
        }
        let psi = ModuleMap::new(self.module.clone(), self.module.clone(), self.psi.clone())
            .map_err(|e| Error::Invariant(format!("psi: {e}")))?;
        if !psi.is_iso() {
            return Err(Error::Invariant("psi is not invertible".into()));
        }
        if !self.weight_condition_holds() {
            return Err(Error::Invariant(
                "rational weight condition: minimal polynomial of psi does not divide the declared weight polynomial"
                    .into(),
            ));
        }
        Ok(())
    }

    /// `∏_j (ψ − g^{j(p−1)})` vanishes on the free part of the module.
    pub fn weight_condition_holds(&self) -> bool {
        let nf = self.module.normal_form();
        let f = nf.free_rank();
        if f == 0 {
            return true;
        }
        let t = nf.len() - f;
        let full = nf.to_normal.mul(&self.psi).mul(&nf.from_normal);
        let block = full.submatrix(t..nf.len(), t..nf.len());
        let mut prod = Matrix::identity(f);
        for &j in &self.weights {
            let shifted = block.sub(&Matrix::scalar_identity(f, &self.ctx.twist_unit(j)));
            prod = prod.mul(&shifted);
        }
        prod.is_zero()
    }

    pub fn twist(&self, j: i64) -> BObject {
        BObject {
            ctx: self.ctx,
            module: self.module.clone(),
            psi: self.psi.scale(&self.ctx.twist_unit(j)),
            weights: self.weights.iter().map(|w| w + j).collect(),
        }
    }

    pub fn direct_sum(ctx: Context, parts: &[&BObject]) -> BObject {
        let mods: Vec<&FPModule> = parts.iter().map(|b| &b.module).collect();
        let psis: Vec<&Matrix> = parts.iter().map(|b| &b.psi).collect();
        BObject {
            ctx,
            module: FPModule::direct_sum(ctx.p, &mods),
            psi: Matrix::block_diag(&psis),
            weights: parts.iter().flat_map(|b| b.weights.iter().copied()).collect(),
        }
    }

    /// Equivariant maps `self -> other`.
    pub fn hom(&self, other: &BObject) -> MapGroup {
        let h = HomSpace::new(&self.module, &other.module);
        let targets = [h.clone()];
        MapGroup::kernel_of(vec![h], &targets, |f| {
            vec![f[0].mul(&self.psi).sub(&other.psi.mul(&f[0]))]
        })
    }

    pub fn is_equivariant(&self, other: &BObject, f: &Matrix) -> bool {
        let d = f.mul(&self.psi).sub(&other.psi.mul(f));
        ModuleMap::new_unchecked(self.module.clone(), other.module.clone(), d).is_zero()
    }

    /// Same presentation, operator and weights.
    pub fn same_data(&self, other: &BObject) -> bool {
        self.ngens() == other.ngens()
            && self.module.relations() == other.module.relations()
            && self.psi == other.psi
            && self.weights == other.weights
    }
}

/// Hom group of ℬ as a module.
pub fn hom_b(m: &BObject, n: &BObject) -> FPModule {
    m.hom(n).module
}

/// An equivariant map of ℬ.
#[derive(Clone, Debug)]
pub struct BMorphism {
    pub source: BObject,
    pub target: BObject,
    pub matrix: Matrix,
}

impl BMorphism {
    pub fn new(source: BObject, target: BObject, matrix: Matrix) -> Result<Self> {
        ModuleMap::new(source.module.clone(), target.module.clone(), matrix.clone())?;
        if !source.is_equivariant(&target, &matrix) {
            return Err(Error::Invariant("map is not equivariant".into()));
        }
        Ok(BMorphism { source, target, matrix })
    }

    pub fn identity(b: &BObject) -> Self {
        BMorphism { source: b.clone(), target: b.clone(), matrix: Matrix::identity(b.ngens()) }
    }

    pub fn module_map(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.module.clone(), self.target.module.clone(), self.matrix.clone())
    }
}

/// An object of 𝒜, stored as its fundamental window of internal degrees `0..2p−2`.
///
/// Degree `r + q(2p−2)` is `twist(q, components[r])`.
#[derive(Clone, Debug)]
pub struct AObject {
    pub ctx: Context,
    pub components: Vec<BObject>,
}

impl AObject {
    pub fn new(ctx: Context, components: Vec<BObject>) -> Result<Self> {
        if components.len() != ctx.period() {
            return Err(Error::Shape(format!(
                "expected {} components, got {}",
                ctx.period(),
                components.len()
            )));
        }
        for c in &components {
            c.validate()?;
        }
        Ok(AObject { ctx, components })
    }

    pub fn zero(ctx: Context) -> Self {
        AObject { ctx, components: vec![BObject::zero(ctx); ctx.period()] }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BObject::is_zero)
    }

    /// The component in an arbitrary internal degree.
    pub fn degree(&self, n: i64) -> BObject {
        let (r, q) = self.ctx.split_degree(n);
        self.components[r].twist(q)
    }

    pub fn direct_sum(ctx: Context, parts: &[&AObject]) -> AObject {
        let components = (0..ctx.period())
            .map(|i| {
                let cs: Vec<&BObject> = parts.iter().map(|a| &a.components[i]).collect();
                BObject::direct_sum(ctx, &cs)
            })
            .collect();
        AObject { ctx, components }
    }

    /// Degree-preserving equivariant maps, one Hom group per component.
    pub fn hom(&self, other: &AObject) -> Vec<MapGroup> {
        self.components.iter().zip(&other.components).map(|(a, b)| a.hom(b)).collect()
    }

    /// Order-free description of the Hom group as a single module.
    pub fn hom_module(&self, other: &AObject) -> FPModule {
        let groups = self.hom(other);
        let mods: Vec<&FPModule> = groups.iter().map(|g| &g.module).collect();
        FPModule::direct_sum(self.ctx.p, &mods)
    }

    /// The twisted cyclic shift `T`: `(T X)_j = twist(1, X_{j−1})`, with `T^{2p−2}` the
    /// componentwise twist by `2p − 2`.
    pub fn cyclic_twist(&self, k: i64) -> AObject {
        let n = self.ctx.period() as i64;
        let components = (0..n)
            .map(|j| self.components[(j - k).rem_euclid(n) as usize].twist(k))
            .collect();
        AObject { ctx: self.ctx, components }
    }

    pub fn twist(&self, j: i64) -> AObject {
        AObject { ctx: self.ctx, components: self.components.iter().map(|c| c.twist(j)).collect() }
    }
}

/// `m` placed in internal degree `i`.
pub fn split_embed(ctx: Context, i: i64, m: &BObject) -> AObject {
    let (r, q) = ctx.split_degree(i);
    let mut a = AObject::zero(ctx);
    a.components[r] = m.twist(-q);
    a
}

pub fn split_project(a: &AObject) -> Vec<BObject> {
    a.components.clone()
}

/// `a[i]`, with `a[i]_n = a_{n−i}`.
pub fn shift_internal(i: i64, a: &AObject) -> AObject {
    let n = a.ctx.period() as i64;
    let components = (0..n).map(|k| a.degree(k - i)).collect();
    AObject { ctx: a.ctx, components }
}

/// A degree-preserving equivariant map of 𝒜.
#[derive(Clone, Debug)]
pub struct AMorphism {
    pub source: AObject,
    pub target: AObject,
    pub components: Vec<Matrix>,
}

impl AMorphism {
    pub fn new(source: AObject, target: AObject, components: Vec<Matrix>) -> Result<Self> {
        if components.len() != source.ctx.period() {
            return Err(Error::Shape("wrong number of components".into()));
        }
        for ((s, t), f) in source.components.iter().zip(&target.components).zip(&components) {
            BMorphism::new(s.clone(), t.clone(), f.clone())?;
        }
        Ok(AMorphism { source, target, components })
    }

    pub fn identity(a: &AObject) -> Self {
        AMorphism {
            source: a.clone(),
            target: a.clone(),
            components: a.components.iter().map(|c| Matrix::identity(c.ngens())).collect(),
        }
    }

    pub fn component(&self, i: usize) -> BMorphism {
        BMorphism {
            source: self.source.components[i].clone(),
            target: self.target.components[i].clone(),
            matrix: self.components[i].clone(),
        }
    }

    pub fn cyclic_twist(&self, k: i64) -> AMorphism {
        let n = self.source.ctx.period() as i64;
        AMorphism {
            source: self.source.cyclic_twist(k),
            target: self.target.cyclic_twist(k),
            components: (0..n).map(|j| self.components[(j - k).rem_euclid(n) as usize].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::default()
    }

    #[test]
    fn default_context_is_valid() {
        assert!(Context::new(3, 2).is_ok());
        // 4 is a square, never primitive
        assert!(Context::new(3, 4).is_err());
        assert!(Context::new(4, 3).is_err());
        assert!(Context::new(5, 2).is_ok());
        // 7 is a primitive root mod 5 but 7^4 = 2401 ≡ 1 mod 25
        assert!(Context::new(5, 7).is_err());
        assert_eq!(ctx().period(), 4);
    }

    #[test]
    fn twist_of_sphere() {
        let s = BObject::sphere(ctx(), 0);
        let t = s.twist(1);
        assert_eq!(t.psi, Matrix::from_int_rows(&[&[4]]));
        assert_eq!(t.weights, [1].into_iter().collect());
        assert!(t.validate().is_ok());
        assert_eq!(t.twist(-1).psi, s.psi);
        assert_eq!(s.twist(0).psi, s.psi);
    }

    #[test]
    fn weight_condition_rejects_wrong_weights() {
        let c = ctx();
        let bad = BObject::new(c, FPModule::free(3, 1), Matrix::from_int_rows(&[&[4]]), [0].into_iter().collect());
        assert!(matches!(bad, Err(Error::Invariant(_))));
        let sing = BObject::new(c, FPModule::free(3, 1), Matrix::from_int_rows(&[&[3]]), BTreeSet::new());
        assert!(sing.is_err());
    }

    #[test]
    fn hom_examples() {
        let c = ctx();
        let s0 = BObject::sphere(c, 0);
        assert!(hom_b(&s0, &s0.twist(1)).is_zero());
        assert_eq!(hom_b(&s0, &s0).invariants().free_rank, 1);
        let z3 = BObject::cyclic(c, 1, 1).unwrap();
        assert_eq!(hom_b(&z3, &z3).invariants().torsion, vec![1]);
        // ψ = 2 on Z/3 versus ψ = 1: no nonzero equivariant maps
        let z3b = BObject::cyclic(c, 1, 2).unwrap();
        assert!(hom_b(&z3, &z3b).is_zero());
    }

    #[test]
    fn split_and_shift() {
        let c = ctx();
        let m = BObject::cyclic(c, 2, 1).unwrap();
        let a = split_embed(c, 0, &m);
        let b = split_embed(c, 1, &m);
        assert!(a.hom_module(&b).is_zero());
        let shifted = shift_internal(1, &a);
        for (x, y) in shifted.components.iter().zip(&b.components) {
            assert_eq!(x.psi, y.psi);
            assert!(x.module.iso_test(&y.module));
        }
        let full = shift_internal(c.period() as i64, &a);
        for (x, y) in full.components.iter().zip(&a.twist(-1).components) {
            assert_eq!(x.psi, y.psi);
        }
        assert!(split_embed(c, 0, &BObject::zero(c)).is_zero());
    }
}
