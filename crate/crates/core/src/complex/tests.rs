use super::*;
use crate::adams::{split_embed, BObject, Context};
use crate::linalg::Matrix;

fn ctx() -> Context {
    Context::default()
}

fn z3() -> BObject {
    BObject::cyclic(ctx(), 1, 1).unwrap()
}

/// `M` in window degree `k`, zero elsewhere.
fn concentrated(m: &BObject, k: usize) -> BComplex {
    let c = ctx();
    let n = c.period();
    let levels: Vec<BObject> = (0..n).map(|i| if i == k { m.clone() } else { BObject::zero(c) }).collect();
    let diffs = (0..n)
        .map(|i| {
            let t = if i + 1 == n { &levels[0] } else { &levels[i + 1] };
            Matrix::zeros(t.ngens(), levels[i].ngens())
        })
        .collect();
    let alpha = levels.iter().map(|l| Matrix::identity(l.ngens())).collect();
    BComplex::new(c, levels, diffs, alpha).unwrap()
}

#[test]
fn v_complex_has_itself_as_cohomology() {
    let s = BObject::sphere(ctx(), 0);
    let v = make_v_b(&s);
    for (n, h) in v.cohomology().iter().enumerate() {
        assert_eq!(h.object.module.invariants().free_rank, 1);
        assert_eq!(h.object.psi, Matrix::from_int_rows(&[&[4i64.pow(n as u32)]]));
    }
    assert!(make_v_b(&BObject::zero(ctx())).is_zero());
}

#[test]
fn c_complex_is_acyclic() {
    assert!(make_c_b(&z3()).is_acyclic());
    assert!(make_c_b(&BObject::sphere(ctx(), 1)).is_acyclic());
    let a = split_embed(ctx(), 1, &z3());
    assert!(make_c_a(&a).is_acyclic());
}

#[test]
fn cone_of_identity_is_acyclic() {
    let v = make_v_b(&z3());
    assert!(cone_b(&BChainMap::identity(&v)).is_acyclic());
}

#[test]
fn cone_of_multiplication_by_p() {
    let s = BObject::sphere(ctx(), 0);
    let c = concentrated(&s, 0);
    let mut levels = BChainMap::identity(&c).levels;
    levels[0] = Matrix::from_int_rows(&[&[3]]);
    let f = BChainMap::new(c.clone(), c, levels).unwrap();
    let cone = cone_b(&f);
    let h = cone.cohomology();
    assert_eq!(h[0].object.module.invariants().torsion, vec![1]);
    for x in &h[1..] {
        assert!(x.object.is_zero());
    }
}

#[test]
fn cone_of_zero_map_splits() {
    let c = make_v_b(&z3());
    let z = BComplex::zero(ctx());
    let f = BChainMap::zero(&z, &c);
    let cone = cone_b(&f);
    for (a, b) in cone.cohomology().iter().zip(c.cohomology()) {
        assert!(a.object.module.iso_test(&b.object.module));
    }
}

#[test]
fn quasi_isomorphisms() {
    let v = make_v_b(&z3());
    assert!(BChainMap::identity(&v).is_quasi_iso());
    let c = make_c_b(&z3());
    assert!(BChainMap::zero(&c, &BComplex::zero(ctx())).is_quasi_iso());
    // V(twist(−1, I)) -> C(I), b ↦ (0, b)
    let v1 = make_v_b(&z3().twist(-1));
    let incl = (0..ctx().period()).map(|_| Matrix::from_int_rows(&[&[0], &[1]])).collect();
    let f = BChainMap::new(v1, c.clone(), incl).unwrap();
    assert!(!f.is_quasi_iso());
    // C(I) -> V(I), (a, b) ↦ a
    let proj = (0..ctx().period()).map(|_| Matrix::from_int_rows(&[&[1, 0]])).collect();
    assert!(BChainMap::new(c, v, proj).is_ok());
}

#[test]
fn split_examples() {
    let c = ctx();
    assert!(split_to_b(&AComplex::zero(c)).is_zero());
    let a = make_v_a(&split_embed(c, 0, &z3()));
    let b = split_to_b(&a);
    assert_eq!(b.levels[0].module.invariants().torsion, vec![1]);
    assert!(b.levels[1..].iter().all(BObject::is_zero));
    assert!(b.diffs.iter().all(Matrix::is_zero));
}

#[test]
fn unsplit_places_levels_in_predicted_degrees() {
    let c = ctx();
    let m = BObject::sphere(c, 0);
    let d = concentrated(&m, 1);
    let a = unsplit_to_a(&d);
    // level 1 goes to internal degree N − 1 twisted by −1
    let n = c.period();
    for (j, comp) in a.c0.components.iter().enumerate() {
        if j == n - 1 {
            assert_eq!(comp.psi, m.twist(-1).psi);
        } else {
            assert!(comp.is_zero());
        }
    }
}

#[test]
fn round_trips_certify() {
    let c = ctx();
    let v = make_c_b(&BObject::sphere(c, 0));
    let (back, iso) = roundtrip_b(&v).unwrap();
    assert!(back.same_data(&v));
    assert!(iso.is_iso());
    let a = make_c_a(&split_embed(c, 3, &z3()));
    let (_, phi) = roundtrip_a(&a).unwrap();
    assert!(phi.is_iso());
}

#[test]
fn normalization_is_an_isomorphism() {
    let c = ctx();
    let s = BObject::sphere(c, 0);
    let v = make_c_b(&s);
    // structure map −1 on every level
    let alpha: Vec<Matrix> = v.levels.iter().map(|l| Matrix::identity(l.ngens()).neg()).collect();
    let twisted = BComplex::new(c, v.levels.clone(), v.diffs.clone(), alpha);
    let twisted = twisted.unwrap();
    let (norm, iso) = twisted.normalize();
    assert!(norm.alpha_is_identity());
    iso.validate().unwrap();
    assert!(iso.is_iso());
    let (_, back) = roundtrip_b(&twisted).unwrap();
    assert!(back.is_iso());
}

#[test]
fn em_object_recovers_its_input() {
    let c = ctx();
    let i = AObject::direct_sum(c, &[&split_embed(c, 0, &z3()), &split_embed(c, 2, &BObject::sphere(c, 0))]);
    let e = make_em(&i);
    let t = total_homology_a(&e);
    for (x, y) in t.components.iter().zip(&i.components) {
        assert!(x.module.iso_test(&y.module));
    }
    assert!(make_em(&AObject::zero(c)).is_zero());
}

#[test]
fn invalid_complexes_are_rejected() {
    let c = ctx();
    let n = c.period();
    let s = BObject::sphere(c, 0);
    let levels: Vec<BObject> = (0..n as i64).map(|k| s.twist(k)).collect();
    // ψ = 4^k on level k, so the identity is never equivariant between neighbours
    let diffs = (0..n).map(|_| Matrix::identity(1)).collect();
    let alpha = (0..n).map(|_| Matrix::identity(1)).collect();
    assert!(matches!(BComplex::new(c, levels, diffs, alpha), Err(crate::Error::Invariant(_))));
}
