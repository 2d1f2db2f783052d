//! Free resolutions over the operator ring `Λ = Z_(p)[t, t⁻¹]`, where `t` acts as `ψ`.
//!
//! From the normal form `0 -> F1 --R--> F0 -> M -> 0` and a lift `ψ0` of `ψ` with
//! `ψ0 R = R ψ1`, the resolution is
//! `0 -> Λ⊗F1 --[−(t−ψ1); R]--> Λ⊗F1 ⊕ Λ⊗F0 --[R | t−ψ0]--> Λ⊗F0 -> M -> 0`.

use crate::adams::BObject;
use crate::linalg::invert_endomorphism;
use crate::error::{Error, Result};
use crate::linalg::{FPModule, Matrix, ModuleMap, Scalar, Snf};

/// A matrix over `Λ`, stored as `Σ t^e A_e`.
#[derive(Clone, Debug)]
pub struct OpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub terms: Vec<(i64, Matrix)>,
}

impl OpMatrix {
    /// Restriction to source degrees `lo..=hi`, landing in degrees `lo+emin..=hi+emax`.
    pub fn truncate(&self, lo: i64, hi: i64) -> (Matrix, i64, i64) {
        let emin = self.terms.iter().map(|t| t.0).min().unwrap_or(0);
        let emax = self.terms.iter().map(|t| t.0).max().unwrap_or(0);
        let (tlo, thi) = (lo + emin, hi + emax);
        let nsrc = (hi - lo + 1) as usize;
        let ntgt = (thi - tlo + 1) as usize;
        let mut m = Matrix::zeros(ntgt * self.rows, nsrc * self.cols);
        for s in 0..nsrc {
            for (e, a) in &self.terms {
                let t = (lo + s as i64 + e - tlo) as usize;
                let mut block = m.submatrix(t * self.rows..(t + 1) * self.rows, s * self.cols..(s + 1) * self.cols);
                block = block.add(a);
                m.set_block(t * self.rows, s * self.cols, &block);
            }
        }
        (m, tlo, thi)
    }

    pub fn mul(&self, other: &OpMatrix) -> OpMatrix {
        let mut terms: Vec<(i64, Matrix)> = Vec::new();
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                let e = e1 + e2;
                let ab = a.mul(b);
                match terms.iter_mut().find(|t| t.0 == e) {
                    Some(t) => t.1 = t.1.add(&ab),
                    None => terms.push((e, ab)),
                }
            }
        }
        OpMatrix { rows: self.rows, cols: other.cols, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub target: BObject,
    /// `R: F1 -> F0`, diagonal with entries `p^{a_i}` on the torsion generators.
    pub r: Matrix,
    pub psi0: Matrix,
    pub psi1: Matrix,
    /// Augmentation `F0 -> M` in the original coordinates of `M`.
    pub augmentation: Matrix,
}

impl FreeResolution {
    pub fn build(m: &BObject) -> FreeResolution {
        Self::build_with_perturbation(m, None)
    }

    /// Same construction with the lift `ψ0 + R X` in place of the canonical one.
    pub fn build_with_perturbation(m: &BObject, x: Option<&Matrix>) -> FreeResolution {
        let p = m.p();
        let nf = m.module.normal_form();
        let n = nf.len();
        let t = n - nf.free_rank();
        let mut r = Matrix::zeros(n, t);
        for (i, e) in nf.exps.iter().enumerate().take(t) {
            r.set(i, i, Scalar::p_pow(p, e.expect("torsion generators come first")));
        }
        let mut psi0 = nf.to_normal.mul(&m.psi).mul(&nf.from_normal);
        for i in 0..t {
            let e = nf.exps[i].unwrap();
            for j in 0..n {
                let v = psi0.get(i, j).reduce_mod_p_pow(p, e);
                psi0.set(i, j, v);
            }
        }
        if let Some(x) = x {
            psi0 = psi0.add(&r.mul(x));
        }
        let psi1 = solve_r(&r, &psi0.mul(&r), p);
        FreeResolution { target: m.clone(), r, psi0, psi1, augmentation: nf.from_normal.clone() }
    }

    pub fn p(&self) -> u64 {
        self.target.p()
    }

    pub fn rank_f0(&self) -> usize {
        self.r.rows()
    }

    pub fn rank_f1(&self) -> usize {
        self.r.cols()
    }

    /// Ranks over `Λ` of the nonzero stages `Q0, Q1, Q2`.
    pub fn stage_ranks(&self) -> Vec<usize> {
        let (n, t) = (self.rank_f0(), self.rank_f1());
        [n, n + t, t].into_iter().take_while(|&r| r > 0).collect()
    }

    pub fn length(&self) -> usize {
        self.stage_ranks().len().saturating_sub(1)
    }

    /// `∂1 = [R | t − ψ0]`.
    pub fn d1(&self) -> OpMatrix {
        let (n, t) = (self.rank_f0(), self.rank_f1());
        let c0 = self.r.hstack(&self.psi0.neg());
        let c1 = Matrix::zeros(n, t).hstack(&Matrix::identity(n));
        OpMatrix { rows: n, cols: n + t, terms: vec![(0, c0), (1, c1)] }
    }

    /// `∂2 = [−(t − ψ1); R]`.
    pub fn d2(&self) -> OpMatrix {
        let (n, t) = (self.rank_f0(), self.rank_f1());
        let c0 = self.psi1.vstack(&self.r);
        let c1 = Matrix::identity(t).neg().vstack(&Matrix::zeros(n, t));
        OpMatrix { rows: n + t, cols: t, terms: vec![(0, c0), (1, c1)] }
    }

    /// Exactness on the Laurent window `[−w, w]`: `∂1 ∂2 = 0`, every cycle of the truncated
    /// maps is a boundary from a slightly larger window, the augmentation is onto, and the
    /// last differential is injective.
    pub fn certify_exact(&self, w: i64) -> Result<()> {
        let p = self.p();
        if self.rank_f0() == 0 {
            return if self.target.is_zero() { Ok(()) } else { Err(Error::Internal("empty resolution of a nonzero object".into())) };
        }
        let d1 = self.d1();
        let d2 = self.d2();
        if self.rank_f1() > 0 && !d1.mul(&d2).is_zero() {
            return Err(Error::Internal("∂1∂2 ≠ 0".into()));
        }
        // augmentation
        let m = &self.target.module;
        let aug0 = ModuleMap::new_unchecked(FPModule::free(p, self.rank_f0()), m.clone(), self.augmentation.clone());
        if !aug0.is_surjective() {
            return Err(Error::Internal("augmentation is not onto".into()));
        }
        let psi_inv = invert_endomorphism(m, &self.target.psi).ok_or_else(|| Error::Internal("ψ not invertible".into()))?;
        let mut blocks = Vec::new();
        for e in -w..=w {
            let pw = if e >= 0 { self.target.psi.pow(e as u32) } else { psi_inv.pow((-e) as u32) };
            blocks.push(pw.mul(&self.augmentation));
        }
        let aug = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.hstack(b));
        let aug = ModuleMap::new_unchecked(FPModule::free(p, aug.cols()), m.clone(), aug);
        let (_, kincl) = aug.kernel();
        check_in_image(&kincl.matrix, -w, w, &d1, p).map_err(|e| Error::Internal(format!("exactness at Q0: {e}")))?;
        // at Q1
        let (t1, _, _) = d1.truncate(-w, w);
        let k1 = Snf::compute(&t1, p).kernel_basis();
        if self.rank_f1() == 0 {
            return if k1.cols() == 0 { Ok(()) } else { Err(Error::Internal("∂1 is not injective".into())) };
        }
        check_in_image(&k1, -w, w, &d2, p).map_err(|e| Error::Internal(format!("exactness at Q1: {e}")))?;
        let (t2, _, _) = d2.truncate(-w, w);
        if Snf::compute(&t2, p).kernel_basis().cols() != 0 {
            return Err(Error::Internal("∂2 is not injective".into()));
        }
        Ok(())
    }
}

/// `X` with `R X = Y` for the diagonal injective `R`.
pub(crate) fn solve_r(r: &Matrix, y: &Matrix, p: u64) -> Matrix {
    let t = r.cols();
    let mut x = Matrix::zeros(t, y.cols());
    for i in 0..t {
        let d = r.get(i, i);
        for j in 0..y.cols() {
            let v = y.get(i, j).div_exact(d, p).expect("ψ0 must preserve the relations");
            x.set(i, j, v);
        }
    }
    debug_assert_eq!(&r.mul(&x), y);
    x
}

/// Every column of `k` (an element of the stage on degrees `lo..=hi`) is `op` of something
/// supported on `lo−1..=hi`.
fn check_in_image(k: &Matrix, lo: i64, hi: i64, op: &OpMatrix, p: u64) -> std::result::Result<(), String> {
    let (big, tlo, thi) = op.truncate(lo - 1, hi);
    let r = op.rows;
    let ntgt = (thi - tlo + 1) as usize;
    let mut emb = Matrix::zeros(ntgt * r, k.cols());
    emb.set_block(((lo - tlo) as usize) * r, 0, k);
    let free = FPModule::free(p, big.rows());
    let img = ModuleMap::new_unchecked(FPModule::free(p, big.cols()), free.clone(), big);
    let target = ModuleMap::new_unchecked(FPModule::free(p, emb.cols()), free, emb);
    match target.lift_through(&img) {
        Some(_) => Ok(()),
        None => Err("a cycle in the window is not a boundary".into()),
    }
}
