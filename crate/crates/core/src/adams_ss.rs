//! E₂ pages `E₂^{s,t} = Ext^s(⊕H^i(C₁)[−i−t], ⊕H^i(C₂)[−i])`, their vanishing pattern and
//! the positional collapse argument.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::adams::{shift_internal, split_embed, AObject, BObject, Context};
use crate::complex::{make_v_a, TwistedComplex};
use crate::error::{Error, Result};
use crate::homalg::{ext, ExtGroup};
use crate::linalg::{FPModule, Invariants};

/// One cell: the componentwise Ext groups that can be nonzero.
#[derive(Clone, Debug)]
pub struct Cell {
    pub s: usize,
    pub t: i64,
    pub parts: Vec<(usize, ExtGroup)>,
    pub module: FPModule,
}

impl Cell {
    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn invariants(&self) -> Invariants {
        self.module.invariants()
    }
}

#[derive(Clone, Debug)]
pub struct E2Page {
    pub ctx: Context,
    pub source: AObject,
    pub target: AObject,
    pub t_lo: i64,
    pub t_hi: i64,
    pub cells: BTreeMap<(usize, i64), Cell>,
    /// Cells that vanish because no component of the source meets a component of the target.
    pub vanishing_certificate: Vec<(usize, i64, String)>,
}

fn support(a: &AObject) -> Vec<usize> {
    (0..a.components.len()).filter(|&j| !a.components[j].is_zero()).collect()
}

/// `Ext^s(X[−t], Y)` computed componentwise.
pub fn cell(ctx: Context, x: &AObject, y: &AObject, s: usize, t: i64) -> Result<Cell> {
    if s > 2 {
        return Err(Error::Precondition("E2 has no rows above s = 2".into()));
    }
    let shifted = shift_internal(-t, x);
    let mut parts = Vec::new();
    for j in 0..ctx.period() {
        let (a, b) = (&shifted.components[j], &y.components[j]);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        parts.push((j, ext(a, b, s)?));
    }
    let mods: Vec<&FPModule> = parts.iter().map(|(_, g)| g.module()).collect();
    let module = FPModule::direct_sum(ctx.p, &mods);
    Ok(Cell { s, t, parts, module })
}

/// The page for `t` in `t_lo..=t_hi`.
pub fn e2_page(c1: &TwistedComplex, c2: &TwistedComplex, t_lo: i64, t_hi: i64) -> Result<E2Page> {
    let x = c1.total_homology();
    let y = c2.total_homology();
    e2_page_of(&x, &y, t_lo, t_hi)
}

pub fn e2_page_of(x: &AObject, y: &AObject, t_lo: i64, t_hi: i64) -> Result<E2Page> {
    if t_hi < t_lo {
        return Err(Error::Precondition("empty t window".into()));
    }
    let ctx = x.ctx;
    let n = ctx.period() as i64;
    let (sx, sy) = (support(x), support(y));
    let mut cells = BTreeMap::new();
    let mut vanishing = Vec::new();
    for t in t_lo..=t_hi {
        let meets = sx.iter().any(|&r| sy.contains(&(((r as i64) - t).rem_euclid(n) as usize)));
        for s in 0..=2 {
            let c = cell(ctx, x, y, s, t)?;
            if !meets {
                vanishing.push((s, t, "no source component meets a target component".to_string()));
            }
            cells.insert((s, t), c);
        }
    }
    Ok(E2Page { ctx, source: x.clone(), target: y.clone(), t_lo, t_hi, cells, vanishing_certificate: vanishing })
}

/// `V` of the weight-zero sphere placed in internal degree 0: its total homology is
/// `ℤ₍ₚ₎` in a single split component.
pub fn sphere_model(ctx: Context) -> TwistedComplex {
    TwistedComplex::A(make_v_a(&split_embed(ctx, 0, &BObject::sphere(ctx, 0))))
}

#[derive(Clone, Debug)]
pub struct VanishingReport {
    /// Residues of `t` mod `2p − 2` at which nonzero cells are permitted.
    pub allowed: Vec<i64>,
    /// Nonzero cells at forbidden residues.
    pub violations: Vec<(usize, i64)>,
    /// Nonzero cells on the lines `t = s` (s ≠ 0) and `t − s = 1`, checked when the only
    /// permitted residue is 0.
    pub line_violations: Vec<(usize, i64)>,
    pub holds: bool,
}

pub fn vanishing_check(page: &E2Page) -> VanishingReport {
    let n = page.ctx.period() as i64;
    let (sx, sy) = (support(&page.source), support(&page.target));
    let mut allowed: Vec<i64> = sx
        .iter()
        .flat_map(|&r| sy.iter().map(move |&q| (r as i64 - q as i64).rem_euclid(n)))
        .collect();
    allowed.sort();
    allowed.dedup();
    let mut violations = Vec::new();
    let mut line_violations = Vec::new();
    for (&(s, t), c) in &page.cells {
        if c.is_zero() {
            continue;
        }
        if !allowed.contains(&t.rem_euclid(n)) {
            violations.push((s, t));
        }
        if allowed == [0] && ((t == s as i64 && s != 0) || t - s as i64 == 1) {
            line_violations.push((s, t));
        }
    }
    let holds = violations.is_empty() && line_violations.is_empty();
    VanishingReport { allowed, violations, line_violations, holds }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The abutment is determined by the pieces.
    Determined,
    /// Collapse holds but the extension problem is left open.
    AssociatedGradedOnly,
    /// A d₂ could be nonzero for positional reasons.
    UndeterminedDifferential,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Determined => "determined",
            Status::AssociatedGradedOnly => "associated-graded-only",
            Status::UndeterminedDifferential => "undetermined-differential",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub n: i64,
    /// `(s, t, E∞^{s,t})` with `t − s = n`.
    pub pieces: Vec<(usize, i64, FPModule)>,
    /// Every nonzero cell involved, each with its `d₂` source and target checked zero.
    pub collapse_certificate: Option<Vec<(usize, i64)>>,
    pub status: Status,
}

/// Pieces of total degree `n = t − s` and the positional argument that `d₂: (s,t) -> (s+2,t+1)`
/// vanishes on and into them.
pub fn collapse_and_assemble(page: &E2Page, n: i64) -> Result<Assembly> {
    let ctx = page.ctx;
    let get = |s: usize, t: i64| -> Result<FPModule> {
        match page.cells.get(&(s, t)) {
            Some(c) => Ok(c.module.clone()),
            None => Ok(cell(ctx, &page.source, &page.target, s, t)?.module),
        }
    };
    let mut pieces = Vec::new();
    let mut cert = Vec::new();
    let mut blocked = false;
    for s in 0..=2usize {
        let t = n + s as i64;
        let m = get(s, t)?;
        if m.is_zero() {
            pieces.push((s, t, m));
            continue;
        }
        if s == 0 && !get(2, t + 1)?.is_zero() {
            blocked = true;
        }
        if s == 2 && !get(0, t - 1)?.is_zero() {
            blocked = true;
        }
        cert.push((s, t));
        pieces.push((s, t, m));
    }
    let nonzero: Vec<&FPModule> = pieces.iter().map(|p| &p.2).filter(|m| !m.is_zero()).collect();
    let status = if blocked {
        Status::UndeterminedDifferential
    } else if nonzero.len() <= 1 || (nonzero.len() == 2 && nonzero[0].invariants().torsion.is_empty()) {
        // a free top quotient splits the one remaining extension
        Status::Determined
    } else {
        Status::AssociatedGradedOnly
    };
    let collapse_certificate = (!blocked).then_some(cert);
    Ok(Assembly { n, pieces, collapse_certificate, status })
}

/// Rows `s = 2, 1, 0` top to bottom, `t` left to right; `*` marks a nonzero cell.
pub fn ascii_chart(page: &E2Page) -> String {
    let mut out = String::new();
    for s in (0..=2usize).rev() {
        let _ = write!(out, "s={s} |");
        for t in page.t_lo..=page.t_hi {
            let c = if page.cells[&(s, t)].is_zero() { '.' } else { '*' };
            let _ = write!(out, " {c:>3}");
        }
        out.push('\n');
    }
    let _ = write!(out, "    +");
    for _ in page.t_lo..=page.t_hi {
        out.push_str("----");
    }
    out.push('\n');
    let _ = write!(out, "  t  ");
    for t in page.t_lo..=page.t_hi {
        let _ = write!(out, " {t:>3}");
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::AComplex;

    fn v3(k: i64) -> u32 {
        let (mut k, mut v) = (k.abs(), 0);
        while k % 3 == 0 {
            k /= 3;
            v += 1;
        }
        v
    }

    #[test]
    fn sphere_page() {
        let c = Context::default();
        let m = sphere_model(c);
        let page = e2_page(&m, &m, -4, 12).unwrap();
        assert_eq!(page.cells[&(0, 0)].invariants().free_rank, 1);
        for t in -4..=12i64 {
            let c1 = &page.cells[&(1, t)];
            if t % 4 != 0 {
                assert!(c1.is_zero() && page.cells[&(0, t)].is_zero() && page.cells[&(2, t)].is_zero());
            } else if t != 0 {
                assert_eq!(c1.invariants().torsion, vec![1 + v3(t / 4)]);
            }
        }
        let r = vanishing_check(&page);
        assert!(r.holds && r.allowed == vec![0]);
        let a = collapse_and_assemble(&page, 4 * 3 - 1).unwrap();
        assert_eq!(a.status, Status::Determined);
        assert!(a.collapse_certificate.is_some());
        let nz: Vec<_> = a.pieces.iter().filter(|p| !p.2.is_zero()).collect();
        assert_eq!(nz.len(), 1);
        assert_eq!((nz[0].0, nz[0].2.invariants().torsion.clone()), (1, vec![2]));
        let a = collapse_and_assemble(&page, 1).unwrap();
        assert!(a.pieces.iter().all(|p| p.2.is_zero()) && a.status == Status::Determined);
        assert!(ascii_chart(&page).contains('*'));
    }

    #[test]
    fn forged_cell_fails_the_check() {
        let c = Context::default();
        let m = sphere_model(c);
        let mut page = e2_page(&m, &m, 0, 4).unwrap();
        let fake = page.cells[&(0, 0)].clone();
        page.cells.insert((1, 2), Cell { s: 1, t: 2, ..fake });
        assert!(!vanishing_check(&page).holds);
    }

    #[test]
    fn zero_page_and_blocked_collapse() {
        let c = Context::default();
        let z = TwistedComplex::A(AComplex::zero(c));
        let page = e2_page(&z, &z, 0, 8).unwrap();
        assert!(page.cells.values().all(Cell::is_zero));
        assert!(vanishing_check(&page).holds);

        let z3 = BObject::cyclic(c, 1, 1).unwrap();
        let x = AObject::direct_sum(c, &[&split_embed(c, 0, &z3), &split_embed(c, 1, &z3)]);
        let y = split_embed(c, 0, &z3);
        let page = e2_page_of(&x, &y, 0, 2).unwrap();
        assert!(!page.cells[&(0, 0)].is_zero());
        assert!(!page.cells[&(2, 1)].is_zero());
        let a = collapse_and_assemble(&page, 0).unwrap();
        assert_eq!(a.status, Status::UndeterminedDifferential);
        assert!(a.collapse_certificate.is_none());
    }
}
