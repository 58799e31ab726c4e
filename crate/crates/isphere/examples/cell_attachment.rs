//! Pushout cell attachment and presentation replay.

use isphere::cells::{attach_cells, CellAttachment, CellPresentation};
use isphere::complex::PersComplex;
use isphere::grid::{DecoratedInterval, EventGrid};
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    let grid = EventGrid::from_ints(&[0, 1]);

    // attaching S³[0,1) -> D³_0 to the zero complex along zero produces the
    // interval [0,1) in degree 2
    let zero = PersComplex::zero(grid.clone(), 3);
    let cell = CellAttachment::sphere(3, rat(0), Some(rat(1)), vec![], Some(vec![]));
    let att = attach_cells(&zero, &[cell.clone()])?;
    let expected =
        PersComplex::interval_tensor(&grid, &DecoratedInterval::half_open(rat(0), rat(1)), 2, 3)?;
    assert_eq!(att.complex, expected);
    println!("one sphere cell over zero = interval [0,1) in degree 2");

    // disk-shaped cells attach acyclic pairs: cohomology is unchanged
    let x = PersComplex::sphere(&grid, 2, &rat(0), None, 3)?;
    let jcell = CellAttachment::disk(2, rat(0), Some(rat(1)), Some(vec![]));
    let att = attach_cells(&x, &[jcell])?;
    for k in 0..=3 {
        assert_eq!(
            x.cohomology(k)?.barcode(),
            att.complex.cohomology(k)?.barcode()
        );
    }
    println!("a disk cell leaves every cohomology barcode unchanged");

    // presentations replay stage by stage
    let p = CellPresentation::new(
        &zero,
        vec![
            vec![cell],
            vec![CellAttachment::sphere(3, rat(1), None, vec![], None)],
        ],
    );
    let replay = p.replay()?;
    println!(
        "replaying a two-stage presentation: degree-2 dims {:?}",
        replay.total.module(2).dims()
    );
    assert!(replay.inclusion.is_mono());
    Ok(())
}
