//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use twistalg::adams::{BObject, Context};
use twistalg::adams_ss::{e2_page, sphere_model, vanishing_check};
use twistalg::complex::{roundtrip_a, roundtrip_b};
use twistalg::gen::Generator;
use twistalg::homalg::{ext, verify_ladder, FreeResolution};
use twistalg::qfun::{assemble_hom, hocolim_homology, image_is_b, q_build, q_roundtrip};

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn image_of_j() -> Result<String, String> {
    let start = Instant::now();
    let c = Context::default();
    let s0 = BObject::sphere(c, 0);
    for k in 1..=81 {
        let inv = ext(&s0, &BObject::sphere(c, k), 1).map_err(|e| e.to_string())?.module().invariants();
        ensure(inv.free_rank == 0 && inv.torsion == vec![image_of_j_exponent(3, k)], format!("k = {k}"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("k = 1..81 in {:.2?}", start.elapsed()))
}

fn ext_brute_force() -> Result<String, String> {
    let start = Instant::now();
    let c = Context::default();
    let objs = small_objects();
    let bs: Vec<BObject> = objs.iter().map(|o| o.to_bobject(c)).collect();
    let mut pairs = 0;
    for (i, m) in objs.iter().enumerate() {
        for (j, n) in objs.iter().enumerate() {
            let e0 = ext(&bs[i], &bs[j], 0).map_err(|e| e.to_string())?;
            let e1 = ext(&bs[i], &bs[j], 1).map_err(|e| e.to_string())?;
            ensure(finite_order(e0.module()) == hom_order(m, n), format!("Ext⁰ {m:?} {n:?}"))?;
            ensure(finite_order(e1.module()) == ext1_order(m, n), format!("Ext¹ {m:?} {n:?}"))?;
            pairs += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{pairs} pairs in {:.2?}", start.elapsed()))
}

fn resolution_length() -> Result<String, String> {
    let c = Context::default();
    let mut n = 0;
    for seed in 0..1000u64 {
        let mut g = Generator::new(c, seed, 1 + (seed % 5) as u32);
        let res = FreeResolution::build(&g.bobject());
        ensure(res.length() <= 2, format!("seed {seed}: length {}", res.length()))?;
        n += 1;
    }
    Ok(format!("{n} resolutions, none longer than 2"))
}

fn q_construction() -> Result<String, String> {
    let start = Instant::now();
    let c = Context::default();
    for seed in 0..100u64 {
        let d = Generator::new(c, seed, 2).diagram();
        let cx = q_build(&d).map_err(|e| format!("seed {seed}: {e}"))?;
        for k in 0..cx.period() as i64 {
            let dd = cx.diff_map(k + 1).compose(&cx.diff_map(k));
            ensure(dd.is_zero(), format!("seed {seed}: d² ≠ 0 at {k}"))?;
        }
        ensure(image_is_b(&d, &cx), format!("seed {seed}: image of d is not B"))?;
        q_roundtrip(&cx).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("100 diagrams in {:.2?}", start.elapsed()))
}

fn hocolim() -> Result<String, String> {
    let c = Context::default();
    for seed in 0..30u64 {
        let d = Generator::new(c, seed, 2).diagram();
        let r = hocolim_homology(&d).map_err(|e| e.to_string())?;
        ensure(r.holds, format!("seed {seed}"))?;
    }
    Ok("30 diagrams".into())
}

fn split_roundtrip() -> Result<String, String> {
    let c = Context::default();
    for seed in 0..60u64 {
        let mut g = Generator::new(c, seed, 2);
        roundtrip_b(&g.complex_b()).map_err(|e| format!("seed {seed} (B): {e}"))?;
        roundtrip_a(&g.complex_a()).map_err(|e| format!("seed {seed} (A): {e}"))?;
    }
    Ok("120 complexes".into())
}

fn hom_assembly() -> Result<String, String> {
    let c = Context::default();
    for seed in 0..100u64 {
        let mut g = Generator::new(c, seed, 1 + (seed % 2) as u32);
        let (d1, d2) = (g.diagram(), g.diagram());
        let h = assemble_hom(&d1, &d2).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(h.holds(), format!("seed {seed}: exact {:?}, M matches {}", h.exact, h.m_matches))?;
    }
    Ok("100 pairs".into())
}

fn sphere_chart() -> Result<String, String> {
    let c = Context::default();
    let m = sphere_model(c);
    let (lo, hi) = (-4, 16);
    let page = e2_page(&m, &m, lo, hi).map_err(|e| e.to_string())?;
    let r = vanishing_check(&page);
    ensure(r.holds, format!("violations {:?} {:?}", r.violations, r.line_violations))?;
    for t in lo..=hi {
        let nonzero = (0..=2).any(|s| !page.cells[&(s, t)].is_zero());
        ensure(nonzero == (t % 4 == 0), format!("column t = {t}"))?;
    }
    Ok(format!("t window {lo}..={hi} (width {})", hi - lo + 1))
}

fn lifting() -> Result<String, String> {
    let c = Context::default();
    for seed in 0..20u64 {
        let mut g = Generator::new(c, seed, 2);
        let l = g.ladder_liftable();
        let r = l.lifting().map_err(|e| e.to_string())?;
        let w = r.witness.as_ref().ok_or(format!("seed {seed}: no witness"))?;
        ensure(r.liftable && verify_ladder(&l.top, &l.bottom, &l.f_b, &l.f_g, w), format!("seed {seed}: witness"))?;
        ensure(r.consistent(), format!("seed {seed}: routes disagree"))?;
        let l = g.ladder_obstructed();
        let r = l.lifting().map_err(|e| e.to_string())?;
        ensure(!r.liftable && !r.obstruction.is_zero(), format!("seed {seed}: obstruction"))?;
        ensure(r.consistent(), format!("seed {seed}: routes disagree"))?;
    }
    Ok("20 liftable and 20 obstructed ladders".into())
}

fn main() {
    let checks: [(&str, Check); 9] = [
        ("image-of-J Ext¹ against valuations", image_of_j),
        ("Ext⁰/Ext¹ against brute force", ext_brute_force),
        ("resolution length at most 2", resolution_length),
        ("Q-construction d², image, round trip", q_construction),
        ("hocolim identity", hocolim),
        ("split/unsplit round trips", split_roundtrip),
        ("|M| equals the chain-map group", hom_assembly),
        ("sphere E₂ checkerboard", sphere_chart),
        ("lifting obstruction", lifting),
    ];
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
