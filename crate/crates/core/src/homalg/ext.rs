//! Ext groups as the cohomology of `Hom_Λ(Q_*, N)`.
//!
//! `C^0 = Hom(F0, N)`, `C^1 = Hom(F1, N) ⊕ Hom(F0, N)`, `C^2 = Hom(F1, N)` with
//! `d0(h) = (hR, ψ_N h − h ψ0)` and `d1(a, b) = bR − (ψ_N a − a ψ1)`.

use std::sync::Arc;

use crate::adams::BObject;
use crate::error::{Error, Result};
use crate::linalg::hom::{join_coords, split_coords};
use crate::linalg::{FPModule, HomSpace, Matrix, ModuleMap, Scalar, Subquotient};

use super::resolution::FreeResolution;

/// The cochain complex `Hom_Λ(Q_*, N)`.
#[derive(Debug)]
pub struct HomComplex {
    pub source: BObject,
    pub target: BObject,
    pub resolution: FreeResolution,
    pub c0: Vec<HomSpace>,
    pub c1: Vec<HomSpace>,
    pub c2: Vec<HomSpace>,
    pub d0: ModuleMap,
    pub d1: ModuleMap,
}

impl HomComplex {
    pub fn new(m: &BObject, n: &BObject) -> Self {
        Self::with_resolution(FreeResolution::build(m), n)
    }

    pub fn with_resolution(res: FreeResolution, n: &BObject) -> Self {
        let p = n.p();
        let f0 = FPModule::free(p, res.rank_f0());
        let f1 = FPModule::free(p, res.rank_f1());
        let h0 = HomSpace::new(&f0, &n.module);
        let h1 = HomSpace::new(&f1, &n.module);
        let c0 = vec![h0.clone()];
        let c1 = vec![h1.clone(), h0.clone()];
        let c2 = vec![h1];
        let psi_n = n.psi.clone();
        let (r, psi0, psi1) = (res.r.clone(), res.psi0.clone(), res.psi1.clone());
        let d0 = crate::linalg::linear_hom_map(&c0, &c1, |h| {
            vec![h[0].mul(&r), psi_n.mul(&h[0]).sub(&h[0].mul(&psi0))]
        });
        let d1 = crate::linalg::linear_hom_map(&c1, &c2, |ab| {
            let (a, b) = (&ab[0], &ab[1]);
            vec![b.mul(&r).sub(&psi_n.mul(a).sub(&a.mul(&psi1)))]
        });
        HomComplex { source: res.target.clone(), target: n.clone(), resolution: res, c0, c1, c2, d0, d1 }
    }

    fn spaces(&self, s: usize) -> &[HomSpace] {
        match s {
            0 => &self.c0,
            1 => &self.c1,
            _ => &self.c2,
        }
    }

    fn subquotient(&self, s: usize) -> Subquotient {
        let res = match s {
            0 => {
                let z = FPModule::zero(self.target.p());
                Subquotient::compute(&ModuleMap::zero(&z, &self.d0.source), &self.d0)
            }
            1 => Subquotient::compute(&self.d0, &self.d1),
            _ => {
                let z = FPModule::zero(self.target.p());
                Subquotient::compute(&self.d1, &ModuleMap::zero(&self.d1.target, &z))
            }
        };
        res.expect("Hom complex squares to zero")
    }
}

/// `Ext^s(source, target)` with a presentation on cocycle generators.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub s: usize,
    pub complex: Arc<HomComplex>,
    pub sub: Subquotient,
}

impl ExtGroup {
    pub fn module(&self) -> &FPModule {
        &self.sub.module
    }

    pub fn source(&self) -> &BObject {
        &self.complex.source
    }

    pub fn target(&self) -> &BObject {
        &self.complex.target
    }

    pub fn is_zero(&self) -> bool {
        self.sub.module.is_zero()
    }

    /// The cochain (one map per summand of `C^s`) representing a coordinate vector.
    pub fn cocycle(&self, coords: &[Scalar]) -> Vec<Matrix> {
        let x = self.sub.cycles.matrix.mul_vec(coords);
        split_coords(self.complex.spaces(self.s), &x)
    }

    /// Cocycles for the generators of the group.
    pub fn basis(&self) -> Vec<Vec<Matrix>> {
        let k = self.sub.module.ngens();
        (0..k)
            .map(|i| {
                let mut c = vec![Scalar::zero(); k];
                c[i] = Scalar::one();
                self.cocycle(&c)
            })
            .collect()
    }

    /// Coordinates on the group's generators of a cocycle, or `None` if it is not a cocycle.
    pub fn coords_of(&self, cochain: &[Matrix]) -> Option<Vec<Scalar>> {
        let x = join_coords(self.complex.spaces(self.s), cochain);
        let col = Matrix::from_columns(&[x], self.sub.cycles.target.ngens());
        let one = FPModule::free(self.target().p(), 1);
        let f = ModuleMap::new_unchecked(one, self.sub.cycles.target.clone(), col);
        f.lift_through(&self.sub.cycles).map(|g| g.matrix.column(0))
    }

    /// Canonical coordinates of a class in the normal form of the group.
    pub fn canonical(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.sub.module.canonical(coords)
    }

    pub fn is_coboundary(&self, cochain: &[Matrix]) -> bool {
        self.coords_of(cochain).is_some_and(|c| self.sub.module.is_zero_element(&c))
    }
}

pub fn ext(m: &BObject, n: &BObject, s: usize) -> Result<ExtGroup> {
    ext_in(Arc::new(HomComplex::new(m, n)), s)
}

pub fn ext_in(complex: Arc<HomComplex>, s: usize) -> Result<ExtGroup> {
    if s > 2 {
        return Err(Error::Precondition(format!("Ext^{s} is identically zero; only s ≤ 2 is computed")));
    }
    let sub = complex.subquotient(s);
    Ok(ExtGroup { s, complex, sub })
}

/// All three groups sharing one Hom complex.
pub fn ext_all(m: &BObject, n: &BObject) -> [ExtGroup; 3] {
    let c = Arc::new(HomComplex::new(m, n));
    [0, 1, 2].map(|s| ext_in(c.clone(), s).expect("s ≤ 2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::{hom_b, Context};

    #[test]
    fn ext_examples() {
        let c = Context::default();
        let s0 = BObject::sphere(c, 0);
        let s1 = BObject::sphere(c, 1);
        // distinct weights: no maps, and Ext^1 is Z/(16 − 1) = Z/3, never zero
        let s2 = BObject::sphere(c, 2);
        assert!(ext(&s0, &s2, 0).unwrap().is_zero());
        assert_eq!(ext(&s0, &s2, 1).unwrap().module().invariants().torsion, vec![1]);
        assert!(ext(&s0, &s2, 2).unwrap().is_zero());
        let e = ext(&s0, &s1, 1).unwrap();
        assert_eq!(e.module().invariants().torsion, vec![1]);
        let z3 = BObject::cyclic(c, 1, 1).unwrap();
        let e = ext(&z3, &z3, 1).unwrap();
        assert_eq!(e.module().invariants().torsion, vec![1, 1]);
        assert!(ext(&z3, &z3, 3).is_err());
        let e0 = ext(&z3, &z3, 0).unwrap();
        assert!(e0.module().iso_test(&hom_b(&z3, &z3)));
        // k = 3: 4^3 − 1 = 63 = 9·7
        let e = ext(&s0, &BObject::sphere(c, 3), 1).unwrap();
        assert_eq!(e.module().invariants().torsion, vec![2]);
    }
}
