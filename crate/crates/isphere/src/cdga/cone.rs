//! Mapping cones of persistent cochain maps.
//!
//! For `f : M → A` the cone complex here is the suspension-friendly
//! truncation `C^j = M^j ⊕ A^{j-1}` with `d(x, a) = (−dx, f(x) + da)`, i.e.
//! the classical cone shifted up one degree so that it stays non-negatively
//! graded. With that convention `H^k(cone of f) := H^{k+1}(C)`; the long
//! exact sequence reads off kernel and cokernel of `H(f)` in one module,
//! which is exactly what indexes the next stage of cell attachments in the
//! minimal-model construction.

use crate::complex::{Cohomology, PersComplex, PersComplexMap};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::module::PersModule;

/// The shifted cone complex `C^j = M^j ⊕ A^{j-1}` of `f : M → A`.
pub fn mapping_cone(f: &PersComplexMap) -> Result<PersComplex> {
    let m = f.source();
    let a = f.target();
    let grid = m.grid().clone();
    let n = grid.node_count();
    let nmax = m.max_degree();
    let mut modules = Vec::with_capacity(nmax + 1);
    for j in 0..=nmax as isize {
        let dims: Vec<usize> = (0..n)
            .map(|v| m.dim_signed(j, v) + a.dim_signed(j - 1, v))
            .collect();
        let steps = (0..n - 1)
            .map(|v| RatMatrix::block_diag(&[&m.step(j, v), &a.step(j - 1, v)]))
            .collect();
        modules.push(PersModule::new(grid.clone(), dims, steps)?);
    }
    let mut diffs = Vec::with_capacity(nmax);
    for j in 0..nmax as isize {
        let per_node = (0..n)
            .map(|v| {
                // (x, a) ↦ (−d x, f(x) + d a)
                let top = (-&m.diff(j, v))
                    .hstack(&RatMatrix::zero(m.dim_signed(j + 1, v), a.dim_signed(j - 1, v)));
                let bottom = f.comp_signed(j, v).hstack(&a.diff(j - 1, v));
                top.vstack(&bottom)
            })
            .collect();
        diffs.push(per_node);
    }
    PersComplex::new(grid, nmax, modules, diffs)
}

/// Cohomology of the cone in cone degree `k` (which is degree `k + 1` of the
/// shifted complex), valid for `k ≤ N − 2`.
pub fn mapping_cone_cohomology(f: &PersComplexMap, k: usize) -> Result<Cohomology> {
    let nmax = f.source().max_degree();
    if k + 2 > nmax {
        return Err(Error::Truncation(k, nmax.saturating_sub(2)));
    }
    mapping_cone(f)?.cohomology(k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::EventGrid;
    use crate::scalar::rat;

    #[test]
    fn cone_of_identity_is_acyclic() {
        let g = EventGrid::from_ints(&[0, 1]);
        let x = PersComplex::sphere(&g, 2, &rat(0), Some(&rat(1)), 4).unwrap();
        let id = PersComplexMap::identity(&x);
        for k in 0..=2 {
            let h = mapping_cone_cohomology(&id, k).unwrap();
            assert!(h.module.is_zero(), "H^{k} of the cone of the identity");
        }
    }

    #[test]
    fn cone_of_map_from_zero_recovers_cohomology() {
        let g = EventGrid::from_ints(&[0, 1]);
        let x = PersComplex::sphere(&g, 2, &rat(0), Some(&rat(1)), 4).unwrap();
        let from_zero =
            PersComplexMap::zero_map(PersComplex::zero(g, 4), x.clone()).unwrap();
        for k in 0..=2 {
            let hc = mapping_cone_cohomology(&from_zero, k).unwrap();
            let hx = x.cohomology(k).unwrap();
            assert_eq!(hc.module.dims(), hx.module.dims(), "degree {k}");
        }
    }
}
