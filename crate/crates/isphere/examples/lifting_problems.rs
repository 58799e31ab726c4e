//! Constructive lifting: one exact solve per square, with separating
//! functionals when no lift exists.

use isphere::cells::CellAttachment;
use isphere::complex::{PersComplex, PersComplexMap};
use isphere::fixtures::quotient_of_disks;
use isphere::grid::EventGrid;
use isphere::lifting::{solve_lifting, verify_lift, LiftOutcome, LiftProblem};
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    let grid = EventGrid::from_ints(&[0, 1]);
    let q = quotient_of_disks(&grid, 2, &rat(0), &rat(1), 2)?;

    // the free-disk square lifts: q is pointwise surjective
    let free = LiftProblem {
        cell: CellAttachment::disk(2, rat(0), None, None),
        bottom: vec![rat(1)],
    };
    match solve_lifting(&q, &free)? {
        LiftOutcome::Lift { vector, .. } => {
            println!("free disk square lifts with v = {vector:?}");
            assert!(verify_lift(&q, &free, &vector)?);
        }
        LiftOutcome::Obstructed(_) => unreachable!("q is surjective"),
    }

    // the pinned disk square does not: zero on top, the quotient generator
    // at the bottom
    let pinned = LiftProblem {
        cell: CellAttachment::disk(2, rat(0), Some(rat(1)), Some(vec![rat(0)])),
        bottom: vec![rat(1)],
    };
    match solve_lifting(&q, &pinned)? {
        LiftOutcome::Lift { .. } => unreachable!("no lift can exist"),
        LiftOutcome::Obstructed(obs) => {
            println!(
                "pinned square is obstructed; functional {:?} separates (re-verifies: {})",
                obs.functional,
                obs.verify()
            );
        }
    }

    // sphere squares against a trivial fibration always lift
    let disk = PersComplex::disk(&grid, 2, &rat(0), 2)?;
    let collapse = PersComplexMap::zero_map(disk, PersComplex::zero(grid, 2))?;
    let sphere_square = LiftProblem {
        cell: CellAttachment::sphere(2, rat(0), Some(rat(1)), vec![rat(1)], Some(vec![rat(1)])),
        bottom: vec![],
    };
    let out = solve_lifting(&collapse, &sphere_square)?;
    let lift = out.lift().expect("trivial fibrations lift sphere squares");
    println!("sphere square against D²_0 -> 0 lifts with v = {lift:?}");
    assert!(verify_lift(&collapse, &sphere_square, lift)?);
    Ok(())
}
