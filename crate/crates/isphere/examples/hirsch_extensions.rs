//! Free persistent CDGAs, Hirsch extensions, and mapping-cone cohomology.

use isphere::cdga::{
    hirsch_extension, is_weak_equivalence_cdga, mapping_cone_cohomology, FreeGen, FreePcdga,
    HirschCell, HirschExtensionRecord, Poly,
};
use isphere::cells::{CellKind, HalfOpenSupport};
use isphere::grid::EventGrid;
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    let grid = EventGrid::from_ints(&[0, 1]);

    // the free algebra on one degree-2 generator, truncated at 4
    let mut poly_algebra = FreePcdga::constant(grid.clone(), 4);
    poly_algebra.gens.push(FreeGen {
        name: "x".into(),
        degree: 2,
        support: HalfOpenSupport::new(rat(0), None),
        d: Poly::zero(),
        exit: Poly::zero(),
    });
    let ev = poly_algebra.evaluate()?;
    let dims: Vec<usize> = (0..=4).map(|k| ev.algebra.dim(k, 0)).collect();
    println!("Λ(x₂) dims up to 4: {dims:?}");

    // a disk-shaped Hirsch extension on [0,1): nodewise A ⊗ Λ(a, da) on the
    // support, with a weakly equivalent inclusion
    let jcell = HirschExtensionRecord {
        kind: CellKind::Disk,
        degree: 3,
        cells: vec![HirschCell {
            name: Some("a".into()),
            interval: HalfOpenSupport::new(rat(0), Some(rat(1))),
            cocycle: None,
            bounding: Some(vec![rat(0)]),
        }],
    };
    let ext = hirsch_extension(&poly_algebra, &jcell)?;
    let dims: Vec<usize> = (0..=4).map(|k| ext.evaluation.algebra.dim(k, 0)).collect();
    println!("after the disk cell, dims on the support: {dims:?}");
    println!(
        "inclusion is a weak equivalence: {}",
        is_weak_equivalence_cdga(&ext.inclusion)?.holds
    );

    // a sphere-shaped extension genuinely adds cohomology
    let icell = HirschExtensionRecord {
        kind: CellKind::Sphere,
        degree: 3,
        cells: vec![HirschCell {
            name: Some("y".into()),
            interval: HalfOpenSupport::new(rat(0), None),
            cocycle: Some(vec![]), // A³(0) = 0, so the only cocycle is zero
            bounding: None,
        }],
    };
    let ext = hirsch_extension(&poly_algebra, &icell)?;
    println!(
        "after ΛS³[0,∞): H² dims {:?}",
        ext.evaluation.algebra.cohomology(2)?.module.dims()
    );

    // the mapping cone of the unit ℚ -> Λ(x) sees x as the first obstruction
    let line = FreePcdga::constant(grid, 4).evaluate()?.algebra;
    let unit_map = isphere::cdga::minimal::map_from_images(
        &FreePcdga::constant(line.grid().clone(), 4),
        &FreePcdga::constant(line.grid().clone(), 4).evaluate()?,
        &ev.algebra,
        &[],
    )?;
    let h2 = mapping_cone_cohomology(&unit_map.underlying_map()?, 2)?;
    println!(
        "H² of the cone of ℚ -> Λ(x₂): dims {:?}",
        h2.module.dims()
    );
    assert_eq!(h2.module.dims(), &[1, 1, 1, 1], "one obstruction line, alive forever");
    Ok(())
}
