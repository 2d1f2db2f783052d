//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adams::{BObject, Context};
use crate::complex::{unsplit_to_a, AComplex, BComplex};
use crate::homalg::{ext, pullback_realization, pushout_realization, ExtClass, Ladder, ShortExact};
use crate::linalg::{FPModule, Matrix, Scalar};
use crate::qfun::{q_build, DiagramData};

pub struct Generator {
    rng: ChaCha8Rng,
    pub ctx: Context,
    /// Bound on the total torsion exponent of a generated finite object.
    pub size: u32,
}

impl Generator {
    pub fn new(ctx: Context, seed: u64, size: u32) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), ctx, size: size.max(1) }
    }

    fn p(&self) -> i64 {
        self.ctx.p as i64
    }

    /// A unit congruent to 1 mod p.
    pub fn principal_unit(&mut self) -> i64 {
        1 + self.p() * self.rng.gen_range(0..self.p())
    }

    fn unit(&mut self) -> Scalar {
        let p = self.p();
        let cands: Vec<i64> = [1, -1, 2, -2, 1 + p, 1 - p].into_iter().filter(|u| u % p != 0).collect();
        Scalar::from_int(*cands.choose(&mut self.rng).unwrap())
    }

    fn exps(&mut self) -> Vec<u32> {
        let mut left = self.rng.gen_range(1..=self.size);
        let mut out = Vec::new();
        while left > 0 {
            let e = self.rng.gen_range(1..=left);
            out.push(e);
            left -= e;
        }
        out.sort_unstable();
        out
    }

    /// A finite object in diagonal form with `ψ = u + pX`.
    pub fn finite_bobject(&mut self) -> BObject {
        let exps = self.exps();
        let n = exps.len();
        let p = self.p();
        let u = self.principal_unit();
        let mut psi = Matrix::scalar_identity(n, &Scalar::from_int(u));
        for i in 0..n {
            for j in 0..n {
                if self.rng.gen_bool(0.3) {
                    let need = exps[i].saturating_sub(exps[j] + 1);
                    let x = self.rng.gen_range(0..p) * p.pow(need) * p;
                    psi.set(i, j, psi.get(i, j) + &Scalar::from_int(x));
                }
            }
        }
        let module = FPModule::diagonal(self.ctx.p, &exps.iter().map(|&e| Some(e)).collect::<Vec<_>>());
        BObject::new(self.ctx, module, psi, Default::default()).expect("generated object is valid")
    }

    /// A finite object with scalar `ψ`.
    pub fn scalar_bobject(&mut self) -> BObject {
        let exps = self.exps();
        let u = self.principal_unit();
        let module = FPModule::diagonal(self.ctx.p, &exps.iter().map(|&e| Some(e)).collect::<Vec<_>>());
        let psi = Matrix::scalar_identity(exps.len(), &Scalar::from_int(u));
        BObject::new(self.ctx, module, psi, Default::default()).expect("generated object is valid")
    }

    /// A finite object, sometimes with a free summand of random weight.
    pub fn bobject(&mut self) -> BObject {
        let t = self.finite_bobject();
        if self.rng.gen_bool(0.5) {
            let j = self.rng.gen_range(-3..=3);
            BObject::direct_sum(self.ctx, &[&t, &BObject::sphere(self.ctx, j)])
        } else {
            t
        }
    }

    fn coords(&mut self, n: usize) -> Vec<Scalar> {
        let bound = self.p().pow(2);
        (0..n).map(|_| Scalar::from_int(self.rng.gen_range(0..bound))).collect()
    }

    fn random_class(&mut self, g: &BObject, b: &BObject) -> ExtClass {
        let grp = ext(g, b, 1).expect("s = 1");
        let c = self.coords(grp.module().ngens());
        ExtClass::from_coords(grp, &c)
    }

    /// `G_i` random, `B_i = G_i / p^k G_i` with `π = id`, random classes.
    pub fn diagram(&mut self) -> DiagramData {
        let n = self.ctx.period();
        let g: Vec<BObject> = (0..n).map(|_| self.finite_bobject()).collect();
        let b: Vec<BObject> = g
            .iter()
            .map(|x| {
                let top = x.module.normal_form().exps.iter().map(|e| e.unwrap()).max().unwrap_or(0);
                let k = self.rng.gen_range(0..=top);
                let exps: Vec<Option<u32>> = x.module.normal_form().exps.iter().map(|e| Some(e.unwrap().min(k))).collect();
                let module = FPModule::diagonal(self.ctx.p, &exps);
                BObject::unchecked(self.ctx, module, x.psi.clone(), x.weights.clone())
            })
            .collect();
        let pi = g.iter().map(|x| Matrix::identity(x.ngens())).collect();
        let coords: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let q = if i + 1 == n { g[0].twist(n as i64) } else { g[i + 1].clone() };
                let k = ext(&q, &b[i], 1).expect("s = 1").module().ngens();
                self.coords(k)
            })
            .collect();
        DiagramData::from_classes(self.ctx, g, b, pi, &coords).expect("generated diagram data is valid")
    }

    /// The Q-construction of random data with random scalar structure maps.
    pub fn complex_b(&mut self) -> BComplex {
        let c = q_build(&self.diagram()).expect("generated diagram data builds");
        let alpha: Vec<Matrix> = c.levels.iter().map(|l| Matrix::scalar_identity(l.ngens(), &self.unit())).collect();
        BComplex::new(c.ctx, c.levels, c.diffs, alpha).expect("scalar structure maps commute with everything")
    }

    pub fn complex_a(&mut self) -> AComplex {
        let a = unsplit_to_a(&self.complex_b());
        let alpha: Vec<Matrix> = a.alpha.iter().map(|m| Matrix::scalar_identity(m.rows(), &self.unit())).collect();
        AComplex::new(a.ctx, a.c0, a.d, alpha).expect("scalar structure maps commute with everything")
    }

    fn hom_element(&mut self, a: &BObject, b: &BObject) -> Matrix {
        let h = a.hom(b);
        let c = self.coords(h.module.ngens());
        h.element(&c).remove(0)
    }

    /// Pullback of a random extension along `g` mapped to its pushout along `f`.
    pub fn ladder_liftable(&mut self) -> Ladder {
        let (g_obj, b_obj) = (self.finite_bobject(), self.finite_bobject());
        let s = self.random_class(&g_obj, &b_obj).realize();
        let g2 = self.finite_bobject();
        let b2 = self.finite_bobject();
        let g = self.hom_element(&g2, &g_obj);
        let f = self.hom_element(&b_obj, &b2);
        let top = pullback_realization(&s, &g, &g2).expect("pullback of a valid extension");
        let bottom = pushout_realization(&s, &f, &b2).expect("pushout of a valid extension");
        Ladder { top, bottom, f_b: f, f_g: g }
    }

    /// Split top, nonsplit bottom, outer maps powers of ψ times units.
    pub fn ladder_obstructed(&mut self) -> Ladder {
        loop {
            let (g_obj, b_obj) = (self.finite_bobject(), self.finite_bobject());
            let cls = self.random_class(&g_obj, &b_obj);
            if cls.is_zero() {
                continue;
            }
            let k = self.rng.gen_range(0..3u32);
            let u = self.unit();
            let f_b = b_obj.psi.pow(k).scale(&u);
            let f_g = g_obj.psi.pow(k);
            let top = ShortExact::split(&b_obj, &g_obj);
            return Ladder { top, bottom: cls.realize(), f_b, f_g };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instances() {
        let c = Context::default();
        let a = Generator::new(c, 7, 2).diagram();
        let b = Generator::new(c, 7, 2).diagram();
        assert!(a.ses.iter().zip(&b.ses).all(|(x, y)| x.mid.same_data(&y.mid) && x.iota == y.iota));
    }

    #[test]
    fn generated_ladders_decide_as_built() {
        let mut g = Generator::new(Context::default(), 3, 2);
        for _ in 0..3 {
            let l = g.ladder_liftable().lifting().unwrap();
            assert!(l.liftable && l.consistent());
            let l = g.ladder_obstructed().lifting().unwrap();
            assert!(!l.liftable && l.consistent());
        }
    }
}
