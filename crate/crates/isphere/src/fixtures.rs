//! Shared fixtures: the counterexample objects and the sphere-cohomology
//! algebras the walkthroughs and test suites keep coming back to.

use crate::cdga::nodewise::{NodeAlgebra, NodewiseAlgebra};
use crate::complex::{PersComplex, PersComplexMap};
use crate::error::Result;
use crate::grid::EventGrid;
use crate::matrix::RatMatrix;
use crate::scalar::Rat;

/// The quotient map `D^k_s → D^k_s / D^k_t` on a grid containing `s < t`.
///
/// Pointwise surjective and a pointwise quasi-isomorphism, yet not a
/// fibration: the pair of zero upstairs past `t` and the surviving quotient
/// generator downstairs has no common preimage.
pub fn quotient_of_disks(
    grid: &EventGrid,
    k: usize,
    s: &Rat,
    t: &Rat,
    max_degree: usize,
) -> Result<PersComplexMap> {
    let big = PersComplex::disk(grid, k, s, max_degree)?;
    let small = PersComplex::disk(grid, k, t, max_degree)?;
    let n = grid.node_count();
    let comps: Vec<Vec<RatMatrix>> = (0..=max_degree)
        .map(|deg| {
            (0..n)
                .map(|v| {
                    if small.dim(deg, v) == 1 && big.dim(deg, v) == 1 {
                        RatMatrix::identity(1)
                    } else {
                        RatMatrix::zero(big.dim(deg, v), small.dim(deg, v))
                    }
                })
                .collect()
        })
        .collect();
    let incl = PersComplexMap::new(small, big.clone(), comps)?;
    let (_, proj) = big.quotient(&incl)?;
    Ok(proj)
}

/// The cohomology algebra of the 2-sphere as a nodewise persistent CDGA:
/// `ℚ[a]/(a²)` with `|a| = 2`, constant, or collapsing onto `ℚ` from
/// `dies_at` on.
pub fn sphere_cohomology_cdga(
    grid: &EventGrid,
    max_degree: usize,
    dies_at: Option<&Rat>,
) -> Result<NodewiseAlgebra> {
    let n = grid.node_count();
    let death_node = match dies_at {
        Some(t) => grid.at_node_of(t)?,
        None => usize::MAX,
    };
    let alive = |v: usize| v < death_node;
    let node_algebra = |v: usize| -> NodeAlgebra {
        let mut dims = vec![0; max_degree + 1];
        dims[0] = 1;
        if alive(v) && max_degree >= 2 {
            dims[2] = 1;
        }
        let mult = (0..=max_degree)
            .map(|p| {
                (0..=max_degree - p)
                    .map(|q| {
                        let mut t = RatMatrix::zero(dims[p + q], dims[p] * dims[q]);
                        if dims[p] * dims[q] == 1 && dims[p + q] == 1 && (p == 0 || q == 0) {
                            t.set(0, 0, Rat::one());
                        }
                        // a·a lands in degree 4, which is zero: the truncated
                        // polynomial relation a² = 0
                        t
                    })
                    .collect()
            })
            .collect();
        let diff = (0..max_degree)
            .map(|k| RatMatrix::zero(dims[k + 1], dims[k]))
            .collect();
        NodeAlgebra {
            dims,
            unit: vec![Rat::one()],
            mult,
            diff,
        }
    };
    let nodes: Vec<NodeAlgebra> = (0..n).map(node_algebra).collect();
    let steps = (0..n - 1)
        .map(|v| {
            (0..=max_degree)
                .map(|k| {
                    let rows = nodes[v + 1].dims[k];
                    let cols = nodes[v].dims[k];
                    if rows == 1 && cols == 1 {
                        RatMatrix::identity(1)
                    } else {
                        RatMatrix::zero(rows, cols)
                    }
                })
                .collect()
        })
        .collect();
    NodewiseAlgebra::new(grid.clone(), max_degree, nodes, steps)
}

/// A simply-connected tame algebra whose degree-2 cohomology merges at `t`:
/// two closed lines `a, b` throughout, with a degree-1 element appearing at
/// `t` whose differential is `b`. `H²` is `I[0,∞) ⊕ I[0,t)`, but the dying
/// class is killed by becoming *exact* rather than by vanishing — the
/// obstruction case for strictly commuting models.
pub fn merging_classes_cdga(
    grid: &EventGrid,
    max_degree: usize,
    t: &Rat,
) -> Result<NodewiseAlgebra> {
    let n = grid.node_count();
    let t_node = grid.at_node_of(t)?;
    let node_algebra = |v: usize| -> NodeAlgebra {
        let mut dims = vec![0; max_degree + 1];
        dims[0] = 1;
        dims[2] = 2;
        if v >= t_node {
            dims[1] = 1;
        }
        let mult = (0..=max_degree)
            .map(|p| {
                (0..=max_degree - p)
                    .map(|q| {
                        let mut m = RatMatrix::zero(dims[p + q], dims[p] * dims[q]);
                        if p == 0 {
                            // 1 · x = x
                            for j in 0..dims[q] {
                                m.set(j, j, Rat::one());
                            }
                        } else if q == 0 {
                            for i in 0..dims[p] {
                                m.set(i, i * dims[0], Rat::one());
                            }
                        }
                        // all positive-degree products land in degrees with
                        // dimension zero here
                        m
                    })
                    .collect()
            })
            .collect();
        let mut diff: Vec<RatMatrix> = (0..max_degree)
            .map(|k| RatMatrix::zero(dims[k + 1], dims[k]))
            .collect();
        if v >= t_node {
            // d(w) = b (the second degree-2 basis vector)
            diff[1] = RatMatrix::from_int_rows(&[&[0], &[1]]);
        }
        NodeAlgebra {
            dims,
            unit: vec![Rat::one()],
            mult,
            diff,
        }
    };
    let nodes: Vec<NodeAlgebra> = (0..n).map(node_algebra).collect();
    let steps = (0..n - 1)
        .map(|v| {
            (0..=max_degree)
                .map(|k| {
                    let rows = nodes[v + 1].dims[k];
                    let cols = nodes[v].dims[k];
                    if rows == cols {
                        RatMatrix::identity(rows)
                    } else {
                        RatMatrix::zero(rows, cols)
                    }
                })
                .collect()
        })
        .collect();
    NodewiseAlgebra::new(grid.clone(), max_degree, nodes, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn fixtures_validate() {
        let g = EventGrid::from_ints(&[0, 1]);
        quotient_of_disks(&g, 2, &rat(0), &rat(1), 2).unwrap();
        let a = sphere_cohomology_cdga(&g, 6, None).unwrap();
        assert_eq!(a.dim(2, 3), 1);
        let b = sphere_cohomology_cdga(&g, 6, Some(&rat(1))).unwrap();
        assert_eq!(b.dim(2, 1), 1);
        assert_eq!(b.dim(2, 2), 0);
    }
}
