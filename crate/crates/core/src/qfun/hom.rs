//! Morphisms between Q-constructions: ladders of extensions, the obstruction sequence, and
//! the chain-map group they assemble to.

use std::sync::Arc;

use crate::complex::BComplex;
use crate::error::{Error, Result};
use crate::homalg::{comparison, ext_class_of, ext_in, ExtGroup, HomComplex};
use crate::linalg::{is_exact_at, FPModule, HomSpace, MapGroup, Matrix, ModuleMap, Scalar};

use super::{q_build, DiagramData};

#[derive(Clone, Debug)]
pub struct HomAssembly {
    /// Morphisms of the short exact sequences, as triples `(f_B^i, f_C^i, f_G^{i+1})`.
    pub n: MapGroup,
    /// `⊕ Hom(G_{i+1}, B̃_i)`.
    pub kernel_part: MapGroup,
    /// Pairs `(f_B^i, f_G^{i+1})`.
    pub n_prime: MapGroup,
    pub ext_groups: Vec<ExtGroup>,
    pub inclusion: ModuleMap,
    pub restriction: ModuleMap,
    /// `(f_B, f_G) ↦ (f_B)_* S − (f_G)^* S̃`.
    pub obstruction_map: ModuleMap,
    /// `f_B^{i+1} π_{i+1} − π̃_{i+1} f_G^{i+1}`.
    pub d_map: ModuleMap,
    pub m: FPModule,
    pub m_inclusion: ModuleMap,
    pub chain_maps: MapGroup,
    /// Exactness at `⊕ Hom(G, B̃)`, at `N` and at `N'`.
    pub exact: [bool; 3],
    /// `M -> chain maps`, `(f_B, f_C, f_G) ↦ f_C`, is an isomorphism.
    pub m_matches: bool,
}

impl HomAssembly {
    pub fn holds(&self) -> bool {
        self.exact.iter().all(|&e| e) && self.m_matches
    }
}

fn by_generators<F>(source: &FPModule, target: &FPModule, what: &str, f: F) -> Result<ModuleMap>
where
    F: Fn(usize) -> Option<Vec<Scalar>>,
{
    let cols: Option<Vec<_>> = (0..source.ngens()).map(f).collect();
    let cols = cols.ok_or_else(|| Error::Internal(format!("{what}: image is outside the target")))?;
    let m = Matrix::from_columns(&cols, target.ngens());
    ModuleMap::new(source.clone(), target.clone(), m).map_err(|e| Error::Internal(format!("{what}: {e}")))
}

/// Twist-compatible chain maps `c1 -> c2`, one matrix per window level.
pub fn chain_map_group(c1: &BComplex, c2: &BComplex) -> MapGroup {
    let n = c1.period();
    let spaces: Vec<HomSpace> = (0..n).map(|i| HomSpace::new(&c1.levels[i].module, &c2.levels[i].module)).collect();
    let mut targets = spaces.clone();
    targets.extend((0..n).map(|i| HomSpace::new(&c1.levels[i].module, &c2.level(i as i64 + 1).module)));
    let wrap = |f0: &Matrix| c2.alpha[0].mul(f0).mul(c1.alpha_inverse(0));
    MapGroup::kernel_of(spaces, &targets, |f| {
        let mut out: Vec<Matrix> = (0..n).map(|i| f[i].mul(&c1.levels[i].psi).sub(&c2.levels[i].psi.mul(&f[i]))).collect();
        for i in 0..n {
            let next = if i + 1 == n { wrap(&f[0]) } else { f[i + 1].clone() };
            out.push(c2.diffs[i].mul(&f[i]).sub(&next.mul(&c1.diffs[i])));
        }
        out
    })
}

pub fn assemble_hom(d1: &DiagramData, d2: &DiagramData) -> Result<HomAssembly> {
    let n = d1.period();
    if d2.period() != n {
        return Err(Error::Shape("diagram data over different contexts".into()));
    }
    let (s, t) = (&d1.ses, &d2.ses);
    let hs = |a: &FPModule, b: &FPModule| HomSpace::new(a, b);

    // N: ladders
    let mut sp = Vec::new();
    let mut tg = Vec::new();
    for i in 0..n {
        let (x, y) = (&s[i], &t[i]);
        sp.extend([hs(&x.sub.module, &y.sub.module), hs(&x.mid.module, &y.mid.module), hs(&x.quot.module, &y.quot.module)]);
        tg.extend([hs(&x.sub.module, &y.sub.module), hs(&x.mid.module, &y.mid.module), hs(&x.quot.module, &y.quot.module)]);
        tg.extend([hs(&x.sub.module, &y.mid.module), hs(&x.mid.module, &y.quot.module)]);
    }
    let n_grp = MapGroup::kernel_of(sp, &tg, |f| {
        let mut out = Vec::new();
        for i in 0..n {
            let (x, y) = (&s[i], &t[i]);
            let (fb, fc, fg) = (&f[3 * i], &f[3 * i + 1], &f[3 * i + 2]);
            out.push(fb.mul(&x.sub.psi).sub(&y.sub.psi.mul(fb)));
            out.push(fc.mul(&x.mid.psi).sub(&y.mid.psi.mul(fc)));
            out.push(fg.mul(&x.quot.psi).sub(&y.quot.psi.mul(fg)));
            out.push(fc.mul(&x.iota).sub(&y.iota.mul(fb)));
            out.push(y.pi.mul(fc).sub(&fg.mul(&x.pi)));
        }
        out
    });

    // N': pairs
    let mut sp = Vec::new();
    for i in 0..n {
        sp.extend([hs(&s[i].sub.module, &t[i].sub.module), hs(&s[i].quot.module, &t[i].quot.module)]);
    }
    let tg = sp.clone();
    let np_grp = MapGroup::kernel_of(sp, &tg, |f| {
        let mut out = Vec::new();
        for i in 0..n {
            let (fb, fg) = (&f[2 * i], &f[2 * i + 1]);
            out.push(fb.mul(&s[i].sub.psi).sub(&t[i].sub.psi.mul(fb)));
            out.push(fg.mul(&s[i].quot.psi).sub(&t[i].quot.psi.mul(fg)));
        }
        out
    });

    // ⊕ Hom(G_{i+1}, B̃_i)
    let sp: Vec<HomSpace> = (0..n).map(|i| hs(&s[i].quot.module, &t[i].sub.module)).collect();
    let tg = sp.clone();
    let k_grp = MapGroup::kernel_of(sp, &tg, |f| {
        (0..n).map(|i| f[i].mul(&s[i].quot.psi).sub(&t[i].sub.psi.mul(&f[i]))).collect()
    });

    let inclusion = by_generators(&k_grp.module, &n_grp.module, "inclusion", |g| {
        let phi = k_grp.generator(g);
        let mut maps = Vec::new();
        for i in 0..n {
            let (x, y) = (&s[i], &t[i]);
            maps.push(Matrix::zeros(y.sub.ngens(), x.sub.ngens()));
            maps.push(y.iota.mul(&phi[i]).mul(&x.pi));
            maps.push(Matrix::zeros(y.quot.ngens(), x.quot.ngens()));
        }
        n_grp.coords_of(&maps)
    })?;

    let restriction = by_generators(&n_grp.module, &np_grp.module, "restriction", |g| {
        let f = n_grp.generator(g);
        let maps: Vec<Matrix> = (0..n).flat_map(|i| [f[3 * i].clone(), f[3 * i + 2].clone()]).collect();
        np_grp.coords_of(&maps)
    })?;

    // obstruction map into ⊕ Ext^1(G_{i+1}, B̃_i)
    let mut groups = Vec::new();
    let mut classes = Vec::new();
    for i in 0..n {
        let cs = ext_class_of(&s[i])?;
        let ct = ext_class_of(&t[i])?;
        let res = cs.group.complex.resolution.clone();
        let hc = Arc::new(HomComplex::with_resolution(res, &t[i].sub));
        groups.push(ext_in(hc, 1)?);
        classes.push((cs, ct));
    }
    let ext_mods: Vec<&FPModule> = groups.iter().map(|g| g.module()).collect();
    let ext_sum = FPModule::direct_sum(d1.ctx.p, &ext_mods);
    let obstruction_map = by_generators(&np_grp.module, &ext_sum, "obstruction", |g| {
        let f = np_grp.generator(g);
        let mut col = Vec::new();
        for i in 0..n {
            let (fb, fg) = (&f[2 * i], &f[2 * i + 1]);
            let (cs, ct) = &classes[i];
            let (g0, g1, k) = comparison(&ct.group.complex.resolution, &cs.group.complex.resolution, fg);
            let a = fb.mul(&cs.a).sub(&ct.a.mul(&g1));
            let b = fb.mul(&cs.b).sub(&ct.a.mul(&k).add(&ct.b.mul(&g0)));
            col.extend(groups[i].coords_of(&[a, b])?);
        }
        Some(col)
    })?;

    // D and M
    let hom_gb: Vec<MapGroup> = (0..n).map(|j| d1.g[j].hom(&d2.b[j])).collect();
    let hom_mods: Vec<&FPModule> = hom_gb.iter().map(|h| &h.module).collect();
    let hom_sum = FPModule::direct_sum(d1.ctx.p, &hom_mods);
    let d_map = by_generators(&n_grp.module, &hom_sum, "D", |g| {
        let f = n_grp.generator(g);
        let mut col = Vec::new();
        for j in 0..n {
            let i = (j + n - 1) % n;
            let fg = &f[3 * i + 2];
            let fb = &f[3 * j];
            let v = fb.mul(&d1.pi[j]).sub(&d2.pi[j].mul(fg));
            col.extend(hom_gb[j].coords_of(&[v])?);
        }
        Some(col)
    })?;
    let (m, m_inclusion) = d_map.kernel();

    let c1 = q_build(d1)?;
    let c2 = q_build(d2)?;
    let chain_maps = chain_map_group(&c1, &c2);
    let to_chain = by_generators(&m, &chain_maps.module, "M -> chain maps", |g| {
        let f = n_grp.element(&m_inclusion.matrix.column(g));
        let fc: Vec<Matrix> = (0..n).map(|i| f[3 * i + 1].clone()).collect();
        chain_maps.coords_of(&fc)
    });
    let m_matches = to_chain.map(|f| f.is_iso()).unwrap_or(false) && m.iso_test(&chain_maps.module);

    let exact = [
        inclusion.is_injective(),
        is_exact_at(&inclusion, &restriction),
        is_exact_at(&restriction, &obstruction_map),
    ];
    Ok(HomAssembly {
        n: n_grp,
        kernel_part: k_grp,
        n_prime: np_grp,
        ext_groups: groups,
        inclusion,
        restriction,
        obstruction_map,
        d_map,
        m,
        m_inclusion,
        chain_maps,
        exact,
        m_matches,
    })
}
