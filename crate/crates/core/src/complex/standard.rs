//! Standard complexes, mapping cones and total cohomology.

use crate::adams::{split_embed, AObject, BObject};
use crate::linalg::Matrix;

use super::aflavor::{AChainMap, AComplex};
use super::bflavor::{BChainMap, BComplex};

fn identities(objs: &[BObject]) -> Vec<Matrix> {
    objs.iter().map(|o| Matrix::identity(o.ngens())).collect()
}

/// `V(I)^n = twist(n, I)` with zero differential and identity structure maps.
pub fn make_v_b(i: &BObject) -> BComplex {
    let ctx = i.ctx;
    let n = ctx.period();
    let levels: Vec<BObject> = (0..n as i64).map(|k| i.twist(k)).collect();
    let diffs = (0..n).map(|_| Matrix::zeros(i.ngens(), i.ngens())).collect();
    let alpha = identities(&levels);
    BComplex::assemble(ctx, levels, diffs, alpha)
}

/// `C(I)^n = twist(n, I) ⊕ twist(n − 1, I)` with `d(a, b) = (0, a)`.
pub fn make_c_b(i: &BObject) -> BComplex {
    let ctx = i.ctx;
    let n = ctx.period();
    let levels: Vec<BObject> = (0..n as i64).map(|k| BObject::direct_sum(ctx, &[&i.twist(k), &i.twist(k - 1)])).collect();
    let m = i.ngens();
    let d = shift_block(m);
    let diffs = (0..n).map(|_| d.clone()).collect();
    let alpha = identities(&levels);
    BComplex::assemble(ctx, levels, diffs, alpha)
}

fn shift_block(m: usize) -> Matrix {
    let mut d = Matrix::zeros(2 * m, 2 * m);
    d.set_block(m, 0, &Matrix::identity(m));
    d
}

/// The 𝒜-complex with `C^0 = I` and zero differential.
pub fn make_v_a(i: &AObject) -> AComplex {
    let t = i.cyclic_twist(1);
    let d = i.components.iter().zip(&t.components).map(|(s, t)| Matrix::zeros(t.ngens(), s.ngens())).collect();
    AComplex::assemble(i.ctx, i.clone(), d, identities(&t.components))
}

/// `C^0 = I ⊕ T^{−1}(I)` with `d(a, b) = (0, a)`.
pub fn make_c_a(i: &AObject) -> AComplex {
    let c0 = AObject::direct_sum(i.ctx, &[i, &i.cyclic_twist(-1)]);
    let t = c0.cyclic_twist(1);
    let d = (0..i.ctx.period())
        .map(|j| {
            let a = i.components[j].ngens();
            let b = c0.components[j].ngens() - a;
            let rows = t.components[j].ngens();
            let mut m = Matrix::zeros(rows, a + b);
            m.set_block(rows - a, 0, &Matrix::identity(a));
            m
        })
        .collect();
    AComplex::assemble(i.ctx, c0, d, identities(&t.components))
}

/// The Eilenberg–MacLane complex of `I`: `C^0 = I`, zero differential.
pub fn make_em(i: &AObject) -> AComplex {
    make_v_a(i)
}

/// Mapping cone: level `i` is `D^i ⊕ C^{i+1}`, `d(y, x) = (d y + f x, −d x)`.
pub fn cone_b(f: &BChainMap) -> BComplex {
    let (c, d) = (&f.source, &f.target);
    let ctx = c.ctx;
    let n = ctx.period();
    let levels: Vec<BObject> = (0..n as i64).map(|i| BObject::direct_sum(ctx, &[&d.level(i), &c.level(i + 1)])).collect();
    let diffs = (0..n as i64)
        .map(|i| {
            let dd = d.diff(i);
            let fc = f.at(i + 1);
            let dc = c.diff(i + 1).neg();
            let z = Matrix::zeros(dc.rows(), dd.cols());
            let top = dd.hstack(&fc);
            let bottom = z.hstack(&dc);
            top.vstack(&bottom)
        })
        .collect();
    let alpha = (0..n)
        .map(|i| {
            let ac = if i + 1 == n { c.alpha[0].clone() } else { c.alpha[i + 1].clone() };
            Matrix::block_diag(&[&d.alpha[i], &ac])
        })
        .collect();
    BComplex::assemble(ctx, levels, diffs, alpha)
}

/// Mapping cone over 𝒜: `C^0 = D^0 ⊕ T(C^0)` with structure map `α_D ⊕ T(α_C)`.
pub fn cone_a(f: &AChainMap) -> AComplex {
    let (c, d) = (&f.source, &f.target);
    let ctx = c.ctx;
    let n = ctx.period();
    let c0 = AObject::direct_sum(ctx, &[&d.c0, &c.level(1)]);
    let dd = d.diff(0);
    let f1 = f.at(1);
    let dc = c.diff(1);
    let diffs = (0..n)
        .map(|j| {
            let top = dd[j].hstack(&f1[j]);
            let z = Matrix::zeros(dc[j].rows(), dd[j].cols());
            top.vstack(&z.hstack(&dc[j].neg()))
        })
        .collect();
    let alpha = (0..n)
        .map(|j| {
            let tac = &c.alpha[(j + n - 1) % n];
            Matrix::block_diag(&[&d.alpha[j], tac])
        })
        .collect();
    AComplex::assemble(ctx, c0, diffs, alpha)
}

/// `⊕_{0 ≤ i < N} H^i[−i]` as an object of 𝒜.
pub fn total_homology_b(c: &BComplex) -> AObject {
    let ctx = c.ctx;
    let parts: Vec<AObject> =
        c.cohomology().into_iter().enumerate().map(|(i, h)| split_embed(ctx, -(i as i64), &h.object)).collect();
    let refs: Vec<&AObject> = parts.iter().collect();
    AObject::direct_sum(ctx, &refs)
}

/// For complexes over 𝒜 the period is one, so the total object is `H^0`.
pub fn total_homology_a(c: &AComplex) -> AObject {
    c.cohomology()
}
