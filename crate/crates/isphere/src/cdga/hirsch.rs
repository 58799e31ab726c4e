//! Hirsch extensions: algebra-level cell attachment.
//!
//! Attaching `ΛS^{q}[s,t) → ΛD^{q}_s` along a cocycle `x_s` (with a bounding
//! element `u_t` when `t` is finite) adjoins one free generator of degree
//! `q - 1` with `d e = x`, alive on `[s,t)` and glued onto `u_t` across the
//! death edge; nodewise the result is `A(v) ⊗ Λ(e)` on the support and `A(v)`
//! beyond it. The disk-shaped cell `ΛD^{q}_t → ΛD^{q}_s` along `w_t` adjoins
//! a contractible pair `(e, de)` on `[s,t)` glued onto `(w_t, d w_t)`; its
//! inclusion is a weak equivalence.
//!
//! Extensions operate on free presentations — the extension of a free
//! algebra is free again, and re-evaluating the appended presentation *is*
//! the pushout, computed on the canonical monomial basis. That keeps replay
//! exact: a skeleton of extension records rebuilds bit-identical tables.

use serde::{Deserialize, Serialize};

use crate::cells::{CellKind, HalfOpenSupport};
use crate::cdga::free::{Evaluation, FreeGen, FreePcdga};
use crate::cdga::nodewise::PersCdgaMap;
use crate::error::{Error, Result};
use crate::matrix::{vec_is_zero, RatMatrix};
use crate::scalar::Rat;

/// One algebra cell: a support, the attaching cocycle (sphere cells), and
/// the gluing element at the death instant.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HirschCell {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub interval: HalfOpenSupport,
    /// Sphere cells: ambient coordinates of the attaching cocycle in
    /// `A^{degree}(At(s))`. Absent for disk cells.
    #[serde(rename = "x_s", skip_serializing_if = "Option::is_none", default)]
    pub cocycle: Option<Vec<Rat>>,
    /// Sphere cells: `u_t ∈ A^{degree-1}(At(t))` with `d u_t = x_t`; disk
    /// cells: the gluing target `w_t`. Absent iff `t = ∞`.
    #[serde(rename = "u_t", skip_serializing_if = "Option::is_none", default)]
    pub bounding: Option<Vec<Rat>>,
}

/// A simultaneous batch of cells of one degree and kind.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HirschExtensionRecord {
    pub kind: CellKind,
    /// Cell degree `q ≥ 2`: sphere cells adjoin a generator in degree
    /// `q - 1`, disk cells a pair in degrees `q - 1`, `q`.
    #[serde(rename = "k")]
    pub degree: usize,
    pub cells: Vec<HirschCell>,
}

/// Output of a Hirsch extension.
#[derive(Clone, Debug)]
pub struct HirschExtension {
    pub extended: FreePcdga,
    pub evaluation: Evaluation,
    pub inclusion: PersCdgaMap,
    /// Names of the adjoined generators, in attachment order.
    pub new_names: Vec<String>,
}

/// Attach a batch of algebra cells to a free persistent CDGA.
pub fn hirsch_extension(base: &FreePcdga, rec: &HirschExtensionRecord) -> Result<HirschExtension> {
    let ev0 = base.evaluate()?;
    let a = &ev0.algebra;
    let nmax = base.max_degree;
    let q = rec.degree;
    if q < 2 {
        return Err(Error::Attachment(
            "algebra cells need degree at least 2 (generators live in positive degrees)".into(),
        ));
    }
    if q > nmax + 1 || (rec.kind == CellKind::Disk && q > nmax) {
        return Err(Error::Attachment(format!(
            "cell degree {q} exceeds the truncation degree {nmax}"
        )));
    }

    let mut extended = base.clone();
    let mut new_names = Vec::new();
    for cell in &rec.cells {
        let (first, last) = cell.interval.node_span(&base.grid)?;
        let finite = cell.interval.right.is_some();
        let death_node = last + 1;
        let name = cell
            .name
            .clone()
            .unwrap_or_else(|| format!("a{}_{}", q - 1, extended.gens.len()));
        match rec.kind {
            CellKind::Sphere => {
                let x = cell.cocycle.as_ref().ok_or_else(|| {
                    Error::Attachment("sphere cell needs an attaching cocycle".into())
                })?;
                let x_dim = if q <= nmax { a.dim(q, first) } else { 0 };
                if x.len() != x_dim {
                    return Err(Error::Attachment(format!(
                        "cocycle for {name} has length {}, expected {x_dim}",
                        x.len()
                    )));
                }
                if q < nmax && !vec_is_zero(&a.node(first).d(q, x)) {
                    return Err(Error::Attachment(format!(
                        "attaching vector for {name} is not a cocycle"
                    )));
                }
                let exit = match (finite, &cell.bounding) {
                    (true, Some(u)) => {
                        if u.len() != a.dim(q - 1, death_node) {
                            return Err(Error::Attachment(format!(
                                "bounding element for {name} has the wrong length"
                            )));
                        }
                        if q <= nmax {
                            let x_t = a.composite_step(q, first, death_node).mul_vec(x);
                            if a.node(death_node).d(q - 1, u) != x_t {
                                return Err(Error::Attachment(format!(
                                    "bounding element for {name} does not bound the pushed cocycle"
                                )));
                            }
                        }
                        ev0.coords_to_poly(death_node, q - 1, u)
                    }
                    (true, None) => {
                        return Err(Error::Attachment(format!(
                            "finite cell {name} needs a bounding element"
                        )));
                    }
                    (false, Some(_)) => {
                        return Err(Error::Attachment(format!(
                            "unbounded cell {name} takes no bounding element"
                        )));
                    }
                    (false, None) => crate::cdga::poly::Poly::zero(),
                };
                let d_poly = if q <= nmax {
                    ev0.coords_to_poly(first, q, x)
                } else {
                    crate::cdga::poly::Poly::zero()
                };
                extended.gens.push(FreeGen {
                    name: name.clone(),
                    degree: q - 1,
                    support: cell.interval.clone(),
                    d: d_poly,
                    exit,
                });
                new_names.push(name);
            }
            CellKind::Disk => {
                if cell.cocycle.is_some() {
                    return Err(Error::Attachment("disk cells take no cocycle".into()));
                }
                let (exit_e, exit_de) = match (finite, &cell.bounding) {
                    (true, Some(w)) => {
                        if w.len() != a.dim(q - 1, death_node) {
                            return Err(Error::Attachment(format!(
                                "gluing target for {name} has the wrong length"
                            )));
                        }
                        let dw = a.node(death_node).d(q - 1, w);
                        (
                            ev0.coords_to_poly(death_node, q - 1, w),
                            if q <= nmax {
                                ev0.coords_to_poly(death_node, q, &dw)
                            } else {
                                crate::cdga::poly::Poly::zero()
                            },
                        )
                    }
                    (true, None) => {
                        return Err(Error::Attachment(format!(
                            "finite disk cell {name} needs a gluing target"
                        )));
                    }
                    (false, Some(_)) => {
                        return Err(Error::Attachment(format!(
                            "unbounded disk cell {name} takes no gluing target"
                        )));
                    }
                    (false, None) => (
                        crate::cdga::poly::Poly::zero(),
                        crate::cdga::poly::Poly::zero(),
                    ),
                };
                let eps_index = extended.gens.len();
                let eps_name = format!("{name}'");
                extended.gens.push(FreeGen {
                    name: eps_name.clone(),
                    degree: q,
                    support: cell.interval.clone(),
                    d: crate::cdga::poly::Poly::zero(),
                    exit: exit_de,
                });
                extended.gens.push(FreeGen {
                    name: name.clone(),
                    degree: q - 1,
                    support: cell.interval.clone(),
                    d: crate::cdga::poly::Poly::generator(eps_index),
                    exit: exit_e,
                });
                new_names.push(name);
                new_names.push(eps_name);
            }
        }
    }

    let evaluation = extended.evaluate()?;
    // the inclusion sends each base monomial to itself
    let n = base.grid.node_count();
    let comps: Vec<Vec<RatMatrix>> = (0..=nmax)
        .map(|k| {
            (0..n)
                .map(|v| {
                    let mut m = RatMatrix::zero(
                        evaluation.algebra.dim(k, v),
                        ev0.algebra.dim(k, v),
                    );
                    for (col, mono) in ev0.basis[v][k].iter().enumerate() {
                        let row = evaluation
                            .index_of(v, k, mono)
                            .expect("base monomials stay alive");
                        m.set(row, col, Rat::one());
                    }
                    m
                })
                .collect()
        })
        .collect();
    let inclusion = PersCdgaMap::new(ev0.algebra.clone(), evaluation.algebra.clone(), comps)?;
    Ok(HirschExtension {
        extended,
        evaluation,
        inclusion,
    new_names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::is_weak_equivalence_cdga;
    use crate::grid::EventGrid;
    use crate::scalar::rat;

    fn grid01() -> EventGrid {
        EventGrid::from_ints(&[0, 1])
    }

    #[test]
    fn disk_cell_on_the_line_is_contractible_on_its_support() {
        // ΛD²_1 → ΛD²_0 attached to ℚ along the only map: Λ(a, da) on [0,1),
        // collapsing back to ℚ afterwards; the inclusion is a weak equivalence
        let base = FreePcdga::constant(grid01(), 4);
        let rec = HirschExtensionRecord {
            kind: CellKind::Disk,
            degree: 2,
            cells: vec![HirschCell {
                name: Some("u".into()),
                interval: HalfOpenSupport::new(rat(0), Some(rat(1))),
                cocycle: None,
                bounding: Some(vec![]),
            }],
        };
        let ext = hirsch_extension(&base, &rec).unwrap();
        // on [0,1): Λ(u₁, u₂=du) — dims 1,1,1,1,1 up to 4 (1, u, du, u·du, du²)
        let dims: Vec<usize> = (0..=4).map(|k| ext.evaluation.algebra.dim(k, 0)).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 1]);
        // past t: back to ℚ
        let dims: Vec<usize> = (0..=4).map(|k| ext.evaluation.algebra.dim(k, 2)).collect();
        assert_eq!(dims, vec![1, 0, 0, 0, 0]);
        let v = is_weak_equivalence_cdga(&ext.inclusion).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn sphere_cell_on_the_line_adds_a_cocycle() {
        // ΛS²[0,1) → ΛD²_0 along zero: a closed degree-1 generator on [0,1)
        let base = FreePcdga::constant(grid01(), 4);
        let rec = HirschExtensionRecord {
            kind: CellKind::Sphere,
            degree: 2,
            cells: vec![HirschCell {
                name: Some("y".into()),
                interval: HalfOpenSupport::new(rat(0), Some(rat(1))),
                cocycle: Some(vec![]),
                bounding: Some(vec![]),
            }],
        };
        let ext = hirsch_extension(&base, &rec).unwrap();
        // on [0,1): Λ(y₁) = ℚ ⊕ ℚy; H¹ = ℚ there
        assert_eq!(ext.evaluation.algebra.dim(1, 0), 1);
        assert_eq!(ext.evaluation.algebra.dim(2, 0), 0);
        let h1 = ext.evaluation.algebra.cohomology(1).unwrap();
        assert_eq!(h1.module.dims(), &[1, 1, 0, 0]);
        // not a weak equivalence: it genuinely adds cohomology
        assert!(!is_weak_equivalence_cdga(&ext.inclusion).unwrap().holds);
    }

    /// Algebra maps out of an extension correspond exactly to maps out of
    /// the base together with an element carrying the prescribed
    /// differential and gluing: the data space and the extension space have
    /// the same dimension, and every datum yields a validated map.
    #[test]
    fn extension_maps_match_prescribed_elements() {
        let base = FreePcdga::constant(grid01(), 4);
        let rec = HirschExtensionRecord {
            kind: CellKind::Sphere,
            degree: 2,
            cells: vec![HirschCell {
                name: Some("y".into()),
                interval: HalfOpenSupport::new(rat(0), Some(rat(1))),
                cocycle: Some(vec![]),
                bounding: Some(vec![]),
            }],
        };
        let ext = hirsch_extension(&base, &rec).unwrap();
        let b = &ext.evaluation.algebra;
        // data space: elements v of B¹(at 0) with d v = 0 and v ↦ 0 at time 1
        let constraints = b
            .node(0)
            .diff[1]
            .clone()
            .vstack(&b.composite_step(1, 0, 2));
        let data_dim = constraints.kernel_basis().cols();
        assert_eq!(data_dim, 1, "the generator line itself");
        // every datum extends the unit map ℚ -> B to a validated algebra map
        for scale in [rat(0), rat(1), rat(-3)] {
            let image = vec![scale];
            let phi = crate::cdga::minimal::map_from_images(
                &ext.extended,
                &ext.evaluation,
                b,
                &[image],
            );
            assert!(phi.is_ok(), "datum fails to extend: {:?}", phi.err());
        }
        // and an element violating the gluing is rejected: d(v) = 0 holds for
        // any multiple of y, so corrupt the exit instead by mapping y to an
        // element that survives past 1 — none exists in degree 1 here, so
        // instead check a wrong-degree image is refused
        assert!(crate::cdga::minimal::map_from_images(
            &ext.extended,
            &ext.evaluation,
            b,
            &[vec![rat(1), rat(1)]],
        )
        .is_err());
    }

    #[test]
    fn empty_record_is_the_identity() {
        let base = FreePcdga::constant(grid01(), 3);
        let rec = HirschExtensionRecord {
            kind: CellKind::Sphere,
            degree: 2,
            cells: vec![],
        };
        let ext = hirsch_extension(&base, &rec).unwrap();
        assert_eq!(ext.extended.gens.len(), 0);
        assert_eq!(ext.evaluation.algebra, base.evaluate().unwrap().algebra);
    }

    #[test]
    fn tensor_dimension_formula_for_disk_cells() {
        // base Λ(x₂); J-cell of degree 3 on [0,1): on the support the
        // dimensions match Λ(x) ⊗ Λ(a₂, da₃)... cell degree 3: pair in
        // degrees 2, 3
        let mut base = FreePcdga::constant(grid01(), 4);
        base.gens.push(FreeGen {
            name: "x".into(),
            degree: 2,
            support: HalfOpenSupport::new(rat(0), None),
            d: crate::cdga::poly::Poly::zero(),
            exit: crate::cdga::poly::Poly::zero(),
        });
        let a = base.evaluate().unwrap();
        let rec = HirschExtensionRecord {
            kind: CellKind::Disk,
            degree: 3,
            cells: vec![HirschCell {
                name: Some("u".into()),
                interval: HalfOpenSupport::new(rat(0), Some(rat(1))),
                cocycle: None,
                bounding: Some(vec![rat(0)]), // w = 0 in A²(1) = ℚx
            }],
        };
        let ext = hirsch_extension(&base, &rec).unwrap();
        // free pair dims per degree up to 4: Λ(u₂, ε₃): 1,0,1,1,1
        let pair_dims = [1usize, 0, 1, 1, 1];
        for v in 0..2 {
            for k in 0..=4 {
                let expect: usize = (0..=k)
                    .map(|j| a.algebra.dim(j, v) * pair_dims[k - j])
                    .sum();
                assert_eq!(
                    ext.evaluation.algebra.dim(k, v),
                    expect,
                    "tensor dimension in degree {k} at node {v}"
                );
            }
        }
        assert!(is_weak_equivalence_cdga(&ext.inclusion).unwrap().holds);
    }
}
