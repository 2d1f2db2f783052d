use super::*;
use crate::complex::{make_c_b, make_v_b};

fn ctx() -> Context {
    Context::default()
}

fn z3() -> BObject {
    BObject::cyclic(ctx(), 1, 1).unwrap()
}

/// `G_i = B_i = twist(i, Z/3)` with `π = id` and the first generator class everywhere.
fn nonsplit() -> DiagramData {
    let c = ctx();
    let n = c.period();
    let g: Vec<BObject> = (0..n as i64).map(|i| z3().twist(i)).collect();
    let pi = vec![Matrix::identity(1); n];
    let coords = vec![vec![Scalar::one(), Scalar::zero()]; n];
    DiagramData::from_classes(c, g.clone(), g, pi, &coords).unwrap()
}

#[test]
fn v_data_builds_v() {
    let i = BObject::sphere(ctx(), 0);
    let d = DiagramData::of_v(&i);
    d.validate().unwrap();
    let q = q_build(&d).unwrap();
    assert!(q.same_data(&make_v_b(&i)));
    assert!(image_is_b(&d, &q));
    let back = q_inverse(&make_v_b(&z3()));
    assert!(back.b.iter().all(BObject::is_zero));
    let h = hocolim_homology(&d).unwrap();
    assert!(h.holds);
    assert!(h.kernels.iter().all(|k| k.module.invariants().free_rank == 1));
}

#[test]
fn split_identity_data_is_acyclic() {
    let d = DiagramData::split_identity(&z3());
    d.validate().unwrap();
    let q = q_build(&d).unwrap();
    assert!(q.is_acyclic());
    let h = hocolim_homology(&d).unwrap();
    assert!(h.holds && h.kernels.iter().all(BObject::is_zero));
}

#[test]
fn inverse_of_c_complex() {
    let d = q_inverse(&make_c_b(&z3()));
    for i in 0..d.period() {
        let f = ModuleMap::new(d.g[i].module.clone(), d.b[i].module.clone(), d.pi[i].clone()).unwrap();
        assert!(f.is_iso());
    }
    let q = q_build(&d).unwrap();
    assert!(q.is_acyclic());
}

#[test]
fn roundtrips_and_classes() {
    let s = BObject::sphere(ctx(), 0);
    for c in [make_c_b(&s), make_v_b(&z3()), q_build(&nonsplit()).unwrap()] {
        let (_, iso) = q_roundtrip(&c).unwrap();
        assert!(iso.is_iso());
    }
    let d = nonsplit();
    assert!(!d.class(0).unwrap().is_zero());
    assert!(classes_survive(&d).unwrap());
    assert!(classes_survive(&DiagramData::split_identity(&z3())).unwrap());
    let q = q_build(&d).unwrap();
    assert!(image_is_b(&d, &q));
    assert!(hocolim_homology(&d).unwrap().holds);
}

#[test]
fn non_surjective_pi_is_rejected() {
    let mut d = DiagramData::split_identity(&z3());
    d.pi[0] = Matrix::zeros(1, 1);
    assert!(matches!(d.validate(), Err(Error::Precondition(_))));
}

#[test]
fn hom_assembly_examples() {
    let d = nonsplit();
    let h = assemble_hom(&d, &d).unwrap();
    assert!(h.holds(), "{:?} {}", h.exact, h.m_matches);
    let n = d.period();
    let id: Vec<Matrix> = (0..n).map(|i| Matrix::identity(d.ses[i].mid.ngens())).collect();
    assert!(h.chain_maps.coords_of(&id).is_some());

    let v = DiagramData::of_v(&z3());
    let h = assemble_hom(&v, &v).unwrap();
    assert!(h.holds());
    assert!(h.d_map.is_zero());
    assert!(h.m.iso_test(&h.n.module));

    let s = DiagramData::split_identity(&z3());
    let h = assemble_hom(&s, &d).unwrap();
    assert!(h.holds());
}
