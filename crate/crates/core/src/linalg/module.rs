//! Finitely presented modules over the p-local integers.
//!
//! A module is `Z_(p)^n / colspan(R)`. Elements are coordinate vectors on the
//! generators. Presentations are never silently simplified: each module caches a
//! [`NormalForm`] that records how to move to and from a diagonal presentation.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::matrix::{Matrix, Snf};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Diagonal presentation of a module: torsion summands `Z/p^e` first, then free summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// Exponent for each normalized generator; `None` for a free summand.
    pub exps: Vec<Option<u32>>,
    /// Original coordinates -> normalized coordinates (`n' x ngens`).
    pub to_normal: Matrix,
    /// Normalized coordinates -> original coordinates (`ngens x n'`).
    pub from_normal: Matrix,
}

impl NormalForm {
    pub fn free_rank(&self) -> usize {
        self.exps.iter().filter(|e| e.is_none()).count()
    }

    pub fn torsion(&self) -> Vec<u32> {
        self.exps.iter().filter_map(|e| *e).collect()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }
}

/// Free rank plus the multiset of torsion exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|e| format!("Z/p^{e}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z_(p)".into() } else { format!("Z_(p)^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct ModuleData {
    p: u64,
    ngens: usize,
    relations: Matrix,
    normal: OnceLock<NormalForm>,
}

/// A finitely presented `Z_(p)`-module. Cheap to clone.
#[derive(Clone)]
pub struct FPModule {
    inner: Arc<ModuleData>,
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.ngens == other.inner.ngens
            && self.inner.relations == other.inner.relations
    }
}

impl Eq for FPModule {}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPModule({} gens, {} rels ≅ {})", self.ngens(), self.relations().cols(), self.invariants())
    }
}

impl FPModule {
    /// `relations` has one column per relation and `ngens` rows.
    pub fn new(p: u64, ngens: usize, relations: Matrix) -> Result<Self> {
        if relations.rows() != ngens {
            return Err(Error::Shape(format!(
                "relation matrix has {} rows for {ngens} generators",
                relations.rows()
            )));
        }
        if !relations.all_plocal(p) {
            return Err(Error::Invariant(format!("relation entries must be {p}-local")));
        }
        Ok(Self::from_parts(p, ngens, relations))
    }

    fn from_parts(p: u64, ngens: usize, relations: Matrix) -> Self {
        FPModule { inner: Arc::new(ModuleData { p, ngens, relations, normal: OnceLock::new() }) }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_parts(p, 0, Matrix::zeros(0, 0))
    }

    pub fn free(p: u64, rank: usize) -> Self {
        Self::from_parts(p, rank, Matrix::zeros(rank, 0))
    }

    /// `Z/p^e`.
    pub fn cyclic(p: u64, e: u32) -> Self {
        Self::from_parts(p, 1, Matrix::from_data(1, 1, vec![Scalar::p_pow(p, e)]).unwrap())
    }

    /// Direct sum of `Z/p^e` (for `Some(e)`) and `Z_(p)` (for `None`), in order.
    pub fn diagonal(p: u64, exps: &[Option<u32>]) -> Self {
        let rels: Vec<Vec<Scalar>> = exps
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                e.map(|e| {
                    let mut c = vec![Scalar::zero(); exps.len()];
                    c[i] = Scalar::p_pow(p, e);
                    c
                })
            })
            .collect();
        Self::from_parts(p, exps.len(), Matrix::from_columns(&rels, exps.len()))
    }

    pub fn direct_sum(p: u64, parts: &[&FPModule]) -> Self {
        let ngens = parts.iter().map(|m| m.ngens()).sum();
        let rels: Vec<&Matrix> = parts.iter().map(|m| m.relations()).collect();
        Self::from_parts(p, ngens, Matrix::block_diag(&rels))
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn ngens(&self) -> usize {
        self.inner.ngens
    }

    pub fn relations(&self) -> &Matrix {
        &self.inner.relations
    }

    pub fn normal_form(&self) -> &NormalForm {
        self.inner.normal.get_or_init(|| compute_normal_form(self))
    }

    pub fn invariants(&self) -> Invariants {
        let nf = self.normal_form();
        Invariants { free_rank: nf.free_rank(), torsion: nf.torsion() }
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form().is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.normal_form().free_rank() == 0
    }

    /// `log_p` of the order, for finite modules.
    pub fn order_exponent(&self) -> Option<u32> {
        self.is_finite().then(|| self.normal_form().torsion().iter().sum())
    }

    /// Whether `x` is zero in the module.
    pub fn is_zero_element(&self, x: &[Scalar]) -> bool {
        let nf = self.normal_form();
        let y = nf.to_normal.mul_vec(x);
        y.iter().zip(&nf.exps).all(|(c, e)| match e {
            Some(e) => c.divisible_by_p_pow(self.p(), *e),
            None => c.is_zero(),
        })
    }

    /// Canonical coordinates of `x`: normalized, torsion entries reduced into `[0, p^e)`.
    pub fn canonical(&self, x: &[Scalar]) -> Vec<Scalar> {
        let nf = self.normal_form();
        nf.to_normal
            .mul_vec(x)
            .into_iter()
            .zip(&nf.exps)
            .map(|(c, e)| match e {
                Some(e) => c.reduce_mod_p_pow(self.p(), *e),
                None => c,
            })
            .collect()
    }

    pub fn elements_equal(&self, x: &[Scalar], y: &[Scalar]) -> bool {
        let d: Vec<Scalar> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_element(&d)
    }

    /// The same module presented diagonally, with the isomorphism from `self`.
    pub fn normalized(&self) -> (FPModule, ModuleMap) {
        let nf = self.normal_form();
        let m = FPModule::diagonal(self.p(), &nf.exps);
        let iso = ModuleMap::new_unchecked(self.clone(), m.clone(), nf.to_normal.clone());
        (m, iso)
    }

    pub fn iso_test(&self, other: &FPModule) -> bool {
        self.invariants() == other.invariants()
    }
}

fn compute_normal_form(m: &FPModule) -> NormalForm {
    let p = m.p();
    let snf = Snf::compute(m.relations(), p);
    let mut torsion_idx = Vec::new();
    let mut exps = Vec::new();
    for (i, &e) in snf.exponents.iter().enumerate() {
        if e > 0 {
            torsion_idx.push(i);
            exps.push(Some(e));
        }
    }
    let free_idx: Vec<usize> = (snf.rank..m.ngens()).collect();
    exps.extend(free_idx.iter().map(|_| None));
    let idx: Vec<usize> = torsion_idx.into_iter().chain(free_idx).collect();
    NormalForm { exps, to_normal: snf.u.select_rows(&idx), from_normal: snf.u_inv.select_cols(&idx) }
}

/// A `Z_(p)`-linear map between finitely presented modules, given on generators.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: FPModule,
    pub target: FPModule,
    /// `target.ngens x source.ngens`.
    pub matrix: Matrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}: {:?})", self.source, self.target, self.matrix)
    }
}

/// A solver for `G z ≡ x` modulo the relations of the target of `G`.
pub(crate) struct LiftSolver {
    snf: Snf,
    width: usize,
}

impl LiftSolver {
    pub fn new(gens: &Matrix, target: &FPModule) -> Self {
        let sys = gens.hstack(target.relations());
        LiftSolver { snf: Snf::compute(&sys, target.p()), width: gens.cols() }
    }

    pub fn solve(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        self.snf.solve(x).map(|mut z| {
            z.truncate(self.width);
            z
        })
    }
}

impl ModuleMap {
    /// Checks that relations of the source map into the relation span of the target.
    pub fn new(source: FPModule, target: FPModule, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        if !matrix.all_plocal(source.p()) {
            return Err(Error::Invariant("map entries must be p-local".into()));
        }
        let m = Self::new_unchecked(source, target, matrix);
        if !m.is_well_defined() {
            return Err(Error::Invariant("map does not respect the source relations".into()));
        }
        Ok(m)
    }

    pub fn new_unchecked(source: FPModule, target: FPModule, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.ngens());
        debug_assert_eq!(matrix.cols(), source.ngens());
        ModuleMap { source, target, matrix }
    }

    pub fn is_well_defined(&self) -> bool {
        let img = self.matrix.mul(self.source.relations());
        (0..img.cols()).all(|j| self.target.is_zero_element(&img.column(j)))
    }

    pub fn identity(m: &FPModule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.ngens()))
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), Matrix::zeros(target.ngens(), source.ngens()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(other.target.ngens(), self.source.ngens(), "composition shape mismatch");
        Self::new_unchecked(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.sub(other).is_zero()
    }

    /// Matrix of the map between the normal forms of source and target.
    pub fn normalized_matrix(&self) -> Matrix {
        let s = self.source.normal_form();
        let t = self.target.normal_form();
        t.to_normal.mul(&self.matrix).mul(&s.from_normal)
    }

    /// Kernel generators (in source coordinates) and the kernel module.
    pub fn kernel(&self) -> (FPModule, ModuleMap) {
        let p = self.source.p();
        let snf_s = self.source.normal_form();
        let snf_t = self.target.normal_form();
        let a = self.normalized_matrix();
        let dt = diag_relations(p, &snf_t.exps);
        // x with a x in the relation span of the target
        let sys = a.hstack(&dt);
        let kb = Snf::compute(&sys, p).kernel_basis();
        let k = kb.submatrix(0..a.cols(), 0..kb.cols());
        // relations among the kernel generators
        let ds = diag_relations(p, &snf_s.exps);
        let sys2 = k.hstack(&ds);
        let kb2 = Snf::compute(&sys2, p).kernel_basis();
        let rels = kb2.submatrix(0..k.cols(), 0..kb2.cols());
        let kmod = FPModule::from_parts(p, k.cols(), rels);
        let incl = Self::new_unchecked(kmod.clone(), self.source.clone(), snf_s.from_normal.mul(&k));
        (kmod, incl)
    }

    pub fn cokernel(&self) -> (FPModule, ModuleMap) {
        let p = self.target.p();
        let rels = self.target.relations().hstack(&self.matrix);
        let c = FPModule::from_parts(p, self.target.ngens(), rels);
        let proj = Self::new_unchecked(self.target.clone(), c.clone(), Matrix::identity(self.target.ngens()));
        (c, proj)
    }

    /// Image, presented on the source generators, with its inclusion into the target.
    pub fn image(&self) -> (FPModule, ModuleMap) {
        let p = self.source.p();
        let snf_t = self.target.normal_form();
        let a = snf_t.to_normal.mul(&self.matrix);
        let sys = a.hstack(&diag_relations(p, &snf_t.exps));
        let kb = Snf::compute(&sys, p).kernel_basis();
        let rels = kb.submatrix(0..a.cols(), 0..kb.cols());
        let im = FPModule::from_parts(p, self.source.ngens(), rels);
        let incl = Self::new_unchecked(im.clone(), self.target.clone(), self.matrix.clone());
        (im, incl)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Finds `X` with `through ∘ X = self`, if possible.
    pub fn lift_through(&self, through: &ModuleMap) -> Option<ModuleMap> {
        let solver = LiftSolver::new(&through.matrix, &self.target);
        let cols: Option<Vec<Vec<Scalar>>> =
            (0..self.matrix.cols()).map(|j| solver.solve(&self.matrix.column(j))).collect();
        let x = Matrix::from_columns(&cols?, through.source.ngens());
        Some(Self::new_unchecked(self.source.clone(), through.source.clone(), x))
    }

    /// Two-sided inverse of an isomorphism.
    pub fn inverse(&self) -> Option<ModuleMap> {
        if !self.is_iso() {
            return None;
        }
        let id = ModuleMap::identity(&self.target);
        let inv = id.lift_through(self)?;
        debug_assert!(inv.compose(self).equals(&ModuleMap::identity(&self.source)));
        Some(inv)
    }
}

/// Inverse of an automorphism of `m` given by its matrix on the generators.
pub fn invert_endomorphism(m: &FPModule, a: &Matrix) -> Option<Matrix> {
    if *a == Matrix::identity(m.ngens()) {
        return Some(a.clone());
    }
    ModuleMap::new_unchecked(m.clone(), m.clone(), a.clone()).inverse().map(|f| f.matrix)
}

pub(crate) fn diag_relations(p: u64, exps: &[Option<u32>]) -> Matrix {
    FPModule::diagonal(p, exps).relations().clone()
}

/// `ker(out) / im(inc)` at the middle term of `A --inc--> B --out--> C`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// The homology module; its generators are those of `cycles`.
    pub module: FPModule,
    /// Inclusion of the cycle module into the middle term.
    pub cycles: ModuleMap,
    /// Incoming map lifted into the cycles.
    pub boundaries: ModuleMap,
}

impl Subquotient {
    pub fn compute(inc: &ModuleMap, out: &ModuleMap) -> Result<Self> {
        let (kmod, kincl) = out.kernel();
        let lifted = inc
            .lift_through(&kincl)
            .ok_or_else(|| Error::Precondition("composite of consecutive maps is not zero".into()))?;
        let rels = kmod.relations().hstack(&lifted.matrix);
        let h = FPModule::from_parts(kmod.p(), kmod.ngens(), rels);
        Ok(Subquotient { module: h, cycles: kincl, boundaries: lifted })
    }

    /// Map `H -> H'` induced by `f` on the ambient middle terms.
    pub fn induced(&self, other: &Subquotient, f: &ModuleMap) -> Option<ModuleMap> {
        let g = f.compose(&self.cycles);
        let lifted = g.lift_through(&other.cycles)?;
        Some(ModuleMap::new_unchecked(self.module.clone(), other.module.clone(), lifted.matrix))
    }
}

/// `g ∘ f = 0` and every element of `ker g` is in the image of `f`.
pub fn is_exact_at(f: &ModuleMap, g: &ModuleMap) -> bool {
    if !g.compose(f).is_zero() {
        return false;
    }
    let (_, kincl) = g.kernel();
    kincl.lift_through(f).is_some()
}
