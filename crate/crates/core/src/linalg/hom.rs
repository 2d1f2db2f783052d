//! `Hom_{Z_(p)}(M, N)` as a finitely presented module, and linear maps between such spaces.

use super::matrix::Matrix;
use super::module::{FPModule, ModuleMap};
use super::scalar::Scalar;

#[derive(Clone, Debug)]
struct HomGen {
    row: usize,
    col: usize,
    shift: u32,
}

/// The module of all `Z_(p)`-linear maps `source -> target`.
///
/// Generators are the elementary maps between cyclic summands of the normal forms:
/// `Z/p^a -> Z/p^b` is generated by `1 ↦ p^{max(b-a,0)}` and has order `p^{min(a,b)}`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: FPModule,
    pub target: FPModule,
    gens: Vec<HomGen>,
    module: FPModule,
}

impl HomSpace {
    pub fn new(source: &FPModule, target: &FPModule) -> Self {
        let p = source.p();
        let se = &source.normal_form().exps;
        let te = &target.normal_form().exps;
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (row, b) in te.iter().enumerate() {
            for (col, a) in se.iter().enumerate() {
                let (shift, order) = match (a, b) {
                    (Some(_), None) => continue,
                    (None, None) => (0, None),
                    (None, Some(b)) => (0, Some(*b)),
                    (Some(a), Some(b)) => (b.saturating_sub(*a), Some(*a.min(b))),
                };
                gens.push(HomGen { row, col, shift });
                orders.push(order);
            }
        }
        HomSpace {
            source: source.clone(),
            target: target.clone(),
            gens,
            module: FPModule::diagonal(p, &orders),
        }
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    fn p(&self) -> u64 {
        self.source.p()
    }

    /// Map in original coordinates for the given coordinate vector.
    pub fn to_matrix(&self, coords: &[Scalar]) -> Matrix {
        let sn = self.source.normal_form();
        let tn = self.target.normal_form();
        let mut f = Matrix::zeros(tn.len(), sn.len());
        for (g, c) in self.gens.iter().zip(coords) {
            if !c.is_zero() {
                f.set(g.row, g.col, c * &Scalar::p_pow(self.p(), g.shift));
            }
        }
        tn.from_normal.mul(&f).mul(&sn.to_normal)
    }

    pub fn generator_matrix(&self, i: usize) -> Matrix {
        let mut c = vec![Scalar::zero(); self.ngens()];
        c[i] = Scalar::one();
        self.to_matrix(&c)
    }

    /// Coordinates of a well-defined map given in original coordinates.
    pub fn coords(&self, a: &Matrix) -> Vec<Scalar> {
        let sn = self.source.normal_form();
        let tn = self.target.normal_form();
        let f = tn.to_normal.mul(a).mul(&sn.from_normal);
        self.gens
            .iter()
            .map(|g| {
                let x = f.get(g.row, g.col);
                match tn.exps[g.row] {
                    Some(b) => {
                        let x = x.reduce_mod_p_pow(self.p(), b);
                        x.div_p_pow(self.p(), g.shift)
                    }
                    None => x.div_p_pow(self.p(), g.shift),
                }
            })
            .collect()
    }
}

/// Builds the `Z_(p)`-linear map `⊕ sources -> ⊕ targets` determined by a function on maps.
///
/// `f` receives one matrix per source space (original coordinates) and must return one
/// matrix per target space. It must be additive.
pub fn linear_hom_map<F>(sources: &[HomSpace], targets: &[HomSpace], f: F) -> ModuleMap
where
    F: Fn(&[Matrix]) -> Vec<Matrix>,
{
    let p = sources.first().or(targets.first()).map_or(2, |h| h.p());
    let src = FPModule::direct_sum(p, &sources.iter().map(|h| h.module()).collect::<Vec<_>>());
    let tgt = FPModule::direct_sum(p, &targets.iter().map(|h| h.module()).collect::<Vec<_>>());
    let zeros: Vec<Matrix> =
        sources.iter().map(|h| Matrix::zeros(h.target.ngens(), h.source.ngens())).collect();
    let mut cols = Vec::with_capacity(src.ngens());
    for (k, h) in sources.iter().enumerate() {
        for i in 0..h.ngens() {
            let mut input = zeros.clone();
            input[k] = h.generator_matrix(i);
            let out = f(&input);
            assert_eq!(out.len(), targets.len(), "linear_hom_map: wrong number of outputs");
            let mut col = Vec::with_capacity(tgt.ngens());
            for (t, m) in targets.iter().zip(&out) {
                col.extend(t.coords(m));
            }
            cols.push(col);
        }
    }
    ModuleMap::new_unchecked(src, tgt.clone(), Matrix::from_columns(&cols, tgt.ngens()))
}

/// Splits a coordinate vector of `⊕ spaces` into one map per space.
pub fn split_coords(spaces: &[HomSpace], coords: &[Scalar]) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(spaces.len());
    let mut off = 0;
    for h in spaces {
        out.push(h.to_matrix(&coords[off..off + h.ngens()]));
        off += h.ngens();
    }
    out
}

/// Coordinates in `⊕ spaces` of a tuple of maps.
pub fn join_coords(spaces: &[HomSpace], maps: &[Matrix]) -> Vec<Scalar> {
    spaces.iter().zip(maps).flat_map(|(h, m)| h.coords(m)).collect()
}


/// A subgroup of `⊕ Hom(S_k, T_k)` cut out as the kernel of a linear condition.
#[derive(Clone, Debug)]
pub struct MapGroup {
    pub spaces: Vec<HomSpace>,
    pub module: FPModule,
    /// Inclusion of `module` into the direct sum of the spaces' modules.
    pub inclusion: ModuleMap,
}

impl MapGroup {
    /// `{ x in ⊕ sources : f(x) = 0 in ⊕ targets }`.
    pub fn kernel_of<F>(sources: Vec<HomSpace>, targets: &[HomSpace], f: F) -> Self
    where
        F: Fn(&[Matrix]) -> Vec<Matrix>,
    {
        let lin = linear_hom_map(&sources, targets, f);
        let (module, inclusion) = lin.kernel();
        MapGroup { spaces: sources, module, inclusion }
    }

    /// The tuple of maps represented by a coordinate vector on `module`'s generators.
    pub fn element(&self, coords: &[Scalar]) -> Vec<Matrix> {
        split_coords(&self.spaces, &self.inclusion.matrix.mul_vec(coords))
    }

    pub fn generator(&self, i: usize) -> Vec<Matrix> {
        split_coords(&self.spaces, &self.inclusion.matrix.column(i))
    }

    /// Coordinates of a tuple of maps on `module`'s generators, if it belongs to the group.
    pub fn coords_of(&self, maps: &[Matrix]) -> Option<Vec<Scalar>> {
        let x = join_coords(&self.spaces, maps);
        let solver = super::module::LiftSolver::new(&self.inclusion.matrix, &self.inclusion.target);
        solver.solve(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_between_cyclic_groups() {
        let p = 3;
        let z3 = FPModule::cyclic(p, 1);
        let z9 = FPModule::cyclic(p, 2);
        let z = FPModule::free(p, 1);
        assert_eq!(HomSpace::new(&z3, &z9).module().invariants().torsion, vec![1]);
        assert_eq!(HomSpace::new(&z9, &z3).module().invariants().torsion, vec![1]);
        assert!(HomSpace::new(&z3, &z).module().is_zero());
        assert_eq!(HomSpace::new(&z, &z9).module().invariants().torsion, vec![2]);
        assert_eq!(HomSpace::new(&z, &z).module().invariants().free_rank, 1);
        // Z/3 -> Z/9 is generated by 1 -> 3
        let h = HomSpace::new(&z3, &z9);
        assert_eq!(h.generator_matrix(0), Matrix::from_int_rows(&[&[3]]));
        assert_eq!(h.coords(&Matrix::from_int_rows(&[&[6]])), vec![Scalar::from_int(2)]);
    }
}
