//! `(T, 1)`-twisted complexes over 𝒜.
//!
//! `T` is the twisted cyclic shift `(T X)_(j) = twist(1, X_(j−1))`. A complex is stored as
//! `C^0`, the differential `d: C^0 -> T(C^0)` and the structure map `α`, an automorphism of
//! `T(C^0)`. Level `k` is `T^k(C^0)` and, componentwise,
//! `(d^k)_(j) = α_(j−k)^k d_(j−k) α_(j−k+1)^{−k}`.

use crate::adams::{AObject, BObject, Context};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, ModuleMap, Subquotient};

use super::util::{inverse_on, signed_pow};

#[derive(Clone, Debug)]
pub struct AComplex {
    pub ctx: Context,
    pub c0: AObject,
    /// Components `d_(j): C^0_(j) -> twist(1, C^0_(j−1))`.
    pub d: Vec<Matrix>,
    /// Components `α_(j)`, automorphisms of `twist(1, C^0_(j−1))`.
    pub alpha: Vec<Matrix>,
    alpha_inv: Vec<Matrix>,
}

fn wrap(j: i64, n: usize) -> usize {
    j.rem_euclid(n as i64) as usize
}

impl AComplex {
    pub fn new(ctx: Context, c0: AObject, d: Vec<Matrix>, alpha: Vec<Matrix>) -> Result<Self> {
        let n = ctx.period();
        if c0.components.len() != n || d.len() != n || alpha.len() != n {
            return Err(Error::Shape(format!("twisted complex over A needs {n} components")));
        }
        for c in &c0.components {
            c.validate()?;
        }
        let t = c0.cyclic_twist(1);
        let mut alpha_inv = Vec::with_capacity(n);
        for j in 0..n {
            let a = &alpha[j];
            let tj = &t.components[j];
            if a.rows() != tj.ngens() || a.cols() != tj.ngens() {
                return Err(Error::Shape(format!("alpha component {j} has the wrong size")));
            }
            if !tj.is_equivariant(tj, a) {
                return Err(Error::Invariant(format!("alpha component {j} is not equivariant")));
            }
            alpha_inv.push(
                inverse_on(&tj.module, a)
                    .ok_or_else(|| Error::Invariant(format!("alpha component {j} is not invertible")))?,
            );
        }
        for j in 0..n {
            let (s, tj) = (&c0.components[j], &t.components[j]);
            let dj = &d[j];
            if dj.rows() != tj.ngens() || dj.cols() != s.ngens() {
                return Err(Error::Shape(format!("differential component {j} has the wrong size")));
            }
            ModuleMap::new(s.module.clone(), tj.module.clone(), dj.clone())
                .map_err(|e| Error::Invariant(format!("differential component {j}: {e}")))?;
            if !s.is_equivariant(tj, dj) {
                return Err(Error::Invariant(format!("differential component {j} is not equivariant")));
            }
        }
        let c = AComplex { ctx, c0, d, alpha, alpha_inv };
        let d0 = c.diff(0);
        let d1 = c.diff(1);
        let t2 = c.level(2);
        for j in 0..n {
            let m = ModuleMap::new_unchecked(c.c0.components[j].module.clone(), t2.components[j].module.clone(), d1[j].mul(&d0[j]));
            if !m.is_zero() {
                return Err(Error::Invariant(format!("d∘d is not zero in component {j}")));
            }
        }
        Ok(c)
    }

    pub(crate) fn assemble(ctx: Context, c0: AObject, d: Vec<Matrix>, alpha: Vec<Matrix>) -> Self {
        let t = c0.cyclic_twist(1);
        let alpha_inv = t
            .components
            .iter()
            .zip(&alpha)
            .map(|(c, a)| inverse_on(&c.module, a).expect("structure map must be invertible"))
            .collect();
        AComplex { ctx, c0, d, alpha, alpha_inv }
    }

    pub fn zero(ctx: Context) -> Self {
        let n = ctx.period();
        AComplex::assemble(ctx, AObject::zero(ctx), vec![Matrix::zeros(0, 0); n], vec![Matrix::zeros(0, 0); n])
    }

    pub fn period(&self) -> usize {
        self.ctx.period()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero()
    }

    pub fn level(&self, k: i64) -> AObject {
        self.c0.cyclic_twist(k)
    }

    fn alpha_pow(&self, j: i64, q: i64) -> Matrix {
        let j = wrap(j, self.period());
        signed_pow(&self.alpha[j], &self.alpha_inv[j], q)
    }

    pub fn alpha_inverse(&self, j: usize) -> &Matrix {
        &self.alpha_inv[j]
    }

    /// Components of `d^k: T^k C^0 -> T^{k+1} C^0`.
    pub fn diff(&self, k: i64) -> Vec<Matrix> {
        let n = self.period();
        (0..n as i64)
            .map(|j| {
                let d = &self.d[wrap(j - k, n)];
                if k == 0 {
                    return d.clone();
                }
                self.alpha_pow(j - k, k).mul(d).mul(&self.alpha_pow(j - k + 1, -k))
            })
            .collect()
    }

    pub fn diff_map(&self, k: i64, j: usize) -> ModuleMap {
        let s = self.level(k);
        let t = self.level(k + 1);
        ModuleMap::new_unchecked(s.components[j].module.clone(), t.components[j].module.clone(), self.diff(k)[j].clone())
    }

    /// `H^k` componentwise, with the subquotient data for each component.
    pub fn homology_at(&self, k: i64) -> (AObject, Vec<Subquotient>) {
        let n = self.period();
        let c = self.level(k);
        let din = self.diff(k - 1);
        let dout = self.diff(k);
        let cin = self.level(k - 1);
        let cout = self.level(k + 1);
        let mut comps = Vec::with_capacity(n);
        let mut subs = Vec::with_capacity(n);
        for j in 0..n {
            let m = &c.components[j];
            let inc = ModuleMap::new_unchecked(cin.components[j].module.clone(), m.module.clone(), din[j].clone());
            let out = ModuleMap::new_unchecked(m.module.clone(), cout.components[j].module.clone(), dout[j].clone());
            let sub = Subquotient::compute(&inc, &out).expect("d∘d = 0 was checked");
            let psi_cyc = ModuleMap::new_unchecked(sub.cycles.source.clone(), m.module.clone(), m.psi.mul(&sub.cycles.matrix));
            let psi = psi_cyc.lift_through(&sub.cycles).expect("cycles are ψ-stable").matrix;
            comps.push(BObject::unchecked(self.ctx, sub.module.clone(), psi, m.weights.clone()));
            subs.push(sub);
        }
        (AObject { ctx: self.ctx, components: comps }, subs)
    }

    pub fn cohomology(&self) -> AObject {
        self.homology_at(0).0
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().is_zero()
    }

    pub fn normalize(&self) -> (AComplex, AChainMap) {
        let d = self.d.iter().zip(&self.alpha_inv).map(|(d, ai)| ai.mul(d)).collect();
        let alpha = self.alpha.iter().map(|a| Matrix::identity(a.rows())).collect();
        let target = AComplex::assemble(self.ctx, self.c0.clone(), d, alpha);
        let mut iso = AChainMap::identity(self);
        iso.target = target.clone();
        (target, iso)
    }

    pub fn same_data(&self, other: &AComplex) -> bool {
        self.c0.components.iter().zip(&other.c0.components).all(|(a, b)| {
            a.module.relations() == b.module.relations() && a.psi == b.psi && a.weights == b.weights
        }) && self.d == other.d
            && self.alpha == other.alpha
    }
}

/// A morphism of twisted complexes over 𝒜, given by its components in degree 0.
#[derive(Clone, Debug)]
pub struct AChainMap {
    pub source: AComplex,
    pub target: AComplex,
    pub f: Vec<Matrix>,
}

impl AChainMap {
    pub fn new(source: AComplex, target: AComplex, f: Vec<Matrix>) -> Result<Self> {
        let m = AChainMap { source, target, f };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.source.period();
        if self.f.len() != n {
            return Err(Error::Shape("morphism needs one map per component".into()));
        }
        let f1 = self.at(1);
        let dc = self.source.diff(0);
        let dd = self.target.diff(0);
        let t1 = self.target.level(1);
        for j in 0..n {
            let (s, t) = (&self.source.c0.components[j], &self.target.c0.components[j]);
            let f = &self.f[j];
            if f.rows() != t.ngens() || f.cols() != s.ngens() {
                return Err(Error::Shape(format!("component {j} has the wrong size")));
            }
            ModuleMap::new(s.module.clone(), t.module.clone(), f.clone())
                .map_err(|e| Error::Invariant(format!("component {j}: {e}")))?;
            if !s.is_equivariant(t, f) {
                return Err(Error::Invariant(format!("component {j} is not equivariant")));
            }
            let diff = dd[j].mul(f).sub(&f1[j].mul(&dc[j]));
            if !ModuleMap::new_unchecked(s.module.clone(), t1.components[j].module.clone(), diff).is_zero() {
                return Err(Error::Invariant(format!("chain condition fails in component {j}")));
            }
        }
        Ok(())
    }

    pub fn identity(c: &AComplex) -> Self {
        let f = c.c0.components.iter().map(|x| Matrix::identity(x.ngens())).collect();
        AChainMap { source: c.clone(), target: c.clone(), f }
    }

    /// Components of `f^k`: `(f^k)_(j) = α_D(j−k+1)^k f_(j−k) α_C(j−k+1)^{−k}`.
    pub fn at(&self, k: i64) -> Vec<Matrix> {
        let n = self.source.period();
        (0..n as i64)
            .map(|j| {
                let f = &self.f[wrap(j - k, n)];
                if k == 0 {
                    return f.clone();
                }
                self.target.alpha_pow(j - k + 1, k).mul(f).mul(&self.source.alpha_pow(j - k + 1, -k))
            })
            .collect()
    }

    fn component_map(&self, j: usize) -> ModuleMap {
        ModuleMap::new_unchecked(
            self.source.c0.components[j].module.clone(),
            self.target.c0.components[j].module.clone(),
            self.f[j].clone(),
        )
    }

    pub fn compose(&self, other: &AChainMap) -> AChainMap {
        AChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            f: self.f.iter().zip(&other.f).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn is_iso(&self) -> bool {
        (0..self.f.len()).all(|j| self.component_map(j).is_iso())
    }

    pub fn inverse(&self) -> Option<AChainMap> {
        let f: Option<Vec<Matrix>> = (0..self.f.len()).map(|j| self.component_map(j).inverse().map(|m| m.matrix)).collect();
        Some(AChainMap { source: self.target.clone(), target: self.source.clone(), f: f? })
    }

    pub fn on_cohomology(&self) -> Vec<ModuleMap> {
        let (_, hs) = self.source.homology_at(0);
        let (_, ht) = self.target.homology_at(0);
        (0..self.f.len())
            .map(|j| hs[j].induced(&ht[j], &self.component_map(j)).expect("chain maps preserve cycles"))
            .collect()
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.on_cohomology().iter().all(ModuleMap::is_iso)
    }
}
