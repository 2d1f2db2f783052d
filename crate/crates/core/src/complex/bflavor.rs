//! `(T, 2p−2)`-twisted complexes over ℬ, stored on the window `0..N` with `N = 2p − 2`.
//!
//! Level `r + qN` is `twist(qN, C^r)` on the same module, and the structure map
//! `α^r: T(C^r) -> C^{r+N}` is an equivariant automorphism of `C^r`. Unrolled:
//! `d^{r+qN} = (α^{r+1})^q d^r (α^r)^{−q}` with `α^N = α^0`.

use crate::adams::{BObject, Context};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, ModuleMap, Subquotient};

use super::util::{inverse_on, signed_pow};

#[derive(Clone, Debug)]
pub struct BComplex {
    pub ctx: Context,
    pub levels: Vec<BObject>,
    /// `d^i: C^i -> C^{i+1}`; the last one lands in `T(C^0)`.
    pub diffs: Vec<Matrix>,
    pub alpha: Vec<Matrix>,
    alpha_inv: Vec<Matrix>,
}

/// Cohomology in one window degree.
#[derive(Clone, Debug)]
pub struct LevelHomology {
    pub object: BObject,
    pub sub: Subquotient,
}

impl BComplex {
    pub fn new(ctx: Context, levels: Vec<BObject>, diffs: Vec<Matrix>, alpha: Vec<Matrix>) -> Result<Self> {
        let n = ctx.period();
        if levels.len() != n || diffs.len() != n || alpha.len() != n {
            return Err(Error::Shape(format!("twisted complex over B needs {n} levels, differentials and alphas")));
        }
        for l in &levels {
            l.validate()?;
        }
        let mut alpha_inv = Vec::with_capacity(n);
        for (i, (l, a)) in levels.iter().zip(&alpha).enumerate() {
            if a.rows() != l.ngens() || a.cols() != l.ngens() {
                return Err(Error::Shape(format!("alpha^{i} has the wrong size")));
            }
            if !l.is_equivariant(l, a) {
                return Err(Error::Invariant(format!("alpha^{i} is not equivariant")));
            }
            alpha_inv.push(
                inverse_on(&l.module, a).ok_or_else(|| Error::Invariant(format!("alpha^{i} is not invertible")))?,
            );
        }
        let c = BComplex { ctx, levels, diffs, alpha, alpha_inv };
        c.check_differentials()?;
        Ok(c)
    }

    /// Builds a complex whose data is known to be consistent.
    pub(crate) fn assemble(ctx: Context, levels: Vec<BObject>, diffs: Vec<Matrix>, alpha: Vec<Matrix>) -> Self {
        let alpha_inv = levels
            .iter()
            .zip(&alpha)
            .map(|(l, a)| inverse_on(&l.module, a).expect("structure map must be invertible"))
            .collect();
        BComplex { ctx, levels, diffs, alpha, alpha_inv }
    }

    fn check_differentials(&self) -> Result<()> {
        let n = self.period();
        for i in 0..n {
            let s = &self.levels[i];
            let t = self.level(i as i64 + 1);
            let d = &self.diffs[i];
            if d.rows() != t.ngens() || d.cols() != s.ngens() {
                return Err(Error::Shape(format!("d^{i} has the wrong size")));
            }
            ModuleMap::new(s.module.clone(), t.module.clone(), d.clone())
                .map_err(|e| Error::Invariant(format!("d^{i}: {e}")))?;
            if !s.is_equivariant(&t, d) {
                return Err(Error::Invariant(format!("d^{i} is not equivariant")));
            }
        }
        for i in 0..n as i64 {
            let dd = self.diff(i + 1).mul(&self.diff(i));
            let m = ModuleMap::new_unchecked(self.level(i).module, self.level(i + 2).module, dd);
            if !m.is_zero() {
                return Err(Error::Invariant(format!("d^{} d^{i} is not zero", i + 1)));
            }
        }
        Ok(())
    }

    pub fn zero(ctx: Context) -> Self {
        let n = ctx.period();
        BComplex::assemble(ctx, vec![BObject::zero(ctx); n], vec![Matrix::zeros(0, 0); n], vec![Matrix::zeros(0, 0); n])
    }

    pub fn period(&self) -> usize {
        self.ctx.period()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(BObject::is_zero)
    }

    /// The level in an arbitrary cohomological degree.
    pub fn level(&self, k: i64) -> BObject {
        let (r, q) = self.ctx.split_degree(k);
        self.levels[r].twist(q * self.period() as i64)
    }

    fn alpha_pow(&self, r: usize, q: i64) -> Matrix {
        let r = r % self.period();
        signed_pow(&self.alpha[r], &self.alpha_inv[r], q)
    }

    /// The differential `d^k` for any `k`.
    pub fn diff(&self, k: i64) -> Matrix {
        let (r, q) = self.ctx.split_degree(k);
        if q == 0 {
            return self.diffs[r].clone();
        }
        self.alpha_pow(r + 1, q).mul(&self.diffs[r]).mul(&self.alpha_pow(r, -q))
    }

    pub fn diff_map(&self, k: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.level(k).module, self.level(k + 1).module, self.diff(k))
    }

    pub fn alpha_is_identity(&self) -> bool {
        self.alpha.iter().all(|a| *a == Matrix::identity(a.rows()))
    }

    pub fn alpha_inverse(&self, r: usize) -> &Matrix {
        &self.alpha_inv[r]
    }

    pub fn homology_at(&self, i: i64) -> LevelHomology {
        let sub = Subquotient::compute(&self.diff_map(i - 1), &self.diff_map(i)).expect("d∘d = 0 was checked");
        let c = self.level(i);
        let psi_cyc = ModuleMap::new_unchecked(sub.cycles.source.clone(), c.module.clone(), c.psi.mul(&sub.cycles.matrix));
        let psi = psi_cyc.lift_through(&sub.cycles).expect("cycles are ψ-stable").matrix;
        let object = BObject::unchecked(self.ctx, sub.module.clone(), psi, c.weights.clone());
        LevelHomology { object, sub }
    }

    /// `H^i` for `i` in the window.
    pub fn cohomology(&self) -> Vec<LevelHomology> {
        (0..self.period() as i64).map(|i| self.homology_at(i)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().iter().all(|h| h.object.is_zero())
    }

    /// An isomorphic complex with identity structure maps, and the isomorphism to it.
    pub fn normalize(&self) -> (BComplex, BChainMap) {
        let n = self.period();
        let mut diffs = self.diffs.clone();
        diffs[n - 1] = self.alpha_inv[0].mul(&self.diffs[n - 1]);
        let alpha = self.levels.iter().map(|l| Matrix::identity(l.ngens())).collect();
        let target = BComplex::assemble(self.ctx, self.levels.clone(), diffs, alpha);
        let iso = BChainMap::identity(self).retarget(&target);
        (target, iso)
    }

    /// Equality of the stored data.
    pub fn same_data(&self, other: &BComplex) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| {
            a.module.relations() == b.module.relations() && a.psi == b.psi && a.weights == b.weights
        }) && self.diffs == other.diffs
            && self.alpha == other.alpha
    }
}

/// A morphism of twisted complexes over ℬ, given on the window.
///
/// Unrolled: `f^{r+qN} = (α_D^r)^q f^r (α_C^r)^{−q}`.
#[derive(Clone, Debug)]
pub struct BChainMap {
    pub source: BComplex,
    pub target: BComplex,
    pub levels: Vec<Matrix>,
}

impl BChainMap {
    pub fn new(source: BComplex, target: BComplex, levels: Vec<Matrix>) -> Result<Self> {
        let f = BChainMap { source, target, levels };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.source.period();
        if self.levels.len() != n {
            return Err(Error::Shape("morphism needs one map per window level".into()));
        }
        for i in 0..n {
            let (s, t) = (&self.source.levels[i], &self.target.levels[i]);
            let f = &self.levels[i];
            if f.rows() != t.ngens() || f.cols() != s.ngens() {
                return Err(Error::Shape(format!("f^{i} has the wrong size")));
            }
            ModuleMap::new(s.module.clone(), t.module.clone(), f.clone())
                .map_err(|e| Error::Invariant(format!("f^{i}: {e}")))?;
            if !s.is_equivariant(t, f) {
                return Err(Error::Invariant(format!("f^{i} is not equivariant")));
            }
            let k = i as i64;
            let lhs = self.target.diff(k).mul(f);
            let rhs = self.at(k + 1).mul(&self.source.diff(k));
            let m = ModuleMap::new_unchecked(s.module.clone(), self.target.level(k + 1).module, lhs.sub(&rhs));
            if !m.is_zero() {
                return Err(Error::Invariant(format!("chain condition fails at degree {i}")));
            }
        }
        Ok(())
    }

    pub fn identity(c: &BComplex) -> Self {
        BChainMap {
            source: c.clone(),
            target: c.clone(),
            levels: c.levels.iter().map(|l| Matrix::identity(l.ngens())).collect(),
        }
    }

    pub fn zero(source: &BComplex, target: &BComplex) -> Self {
        let levels = source.levels.iter().zip(&target.levels).map(|(s, t)| Matrix::zeros(t.ngens(), s.ngens())).collect();
        BChainMap { source: source.clone(), target: target.clone(), levels }
    }

    fn retarget(mut self, target: &BComplex) -> Self {
        self.target = target.clone();
        self
    }

    /// `f^k` for any `k`.
    pub fn at(&self, k: i64) -> Matrix {
        let (r, q) = self.source.ctx.split_degree(k);
        if q == 0 {
            return self.levels[r].clone();
        }
        self.target.alpha_pow(r, q).mul(&self.levels[r]).mul(&self.source.alpha_pow(r, -q))
    }

    pub fn level_map(&self, k: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.level(k).module, self.target.level(k).module, self.at(k))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BChainMap) -> BChainMap {
        BChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            levels: self.levels.iter().zip(&other.levels).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn sub(&self, other: &BChainMap) -> BChainMap {
        BChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            levels: self.levels.iter().zip(&other.levels).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..self.levels.len() as i64).all(|k| self.level_map(k).is_zero())
    }

    /// Levelwise isomorphism.
    pub fn is_iso(&self) -> bool {
        (0..self.levels.len() as i64).all(|k| self.level_map(k).is_iso())
    }

    pub fn inverse(&self) -> Option<BChainMap> {
        let levels: Option<Vec<Matrix>> = (0..self.levels.len() as i64)
            .map(|k| self.level_map(k).inverse().map(|m| m.matrix))
            .collect();
        Some(BChainMap { source: self.target.clone(), target: self.source.clone(), levels: levels? })
    }

    /// The maps induced on window cohomology.
    pub fn on_cohomology(&self) -> Vec<ModuleMap> {
        let hs = self.source.cohomology();
        let ht = self.target.cohomology();
        hs.iter()
            .zip(&ht)
            .enumerate()
            .map(|(i, (a, b))| a.sub.induced(&b.sub, &self.level_map(i as i64)).expect("chain maps preserve cycles"))
            .collect()
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.on_cohomology().iter().all(ModuleMap::is_iso)
    }
}
