//! Persistent Sullivan minimal models of the sphere-cohomology fixtures:
//! the constant one and the one that collapses onto ℚ at time 1.

use isphere::cdga::{minimal_model, verify_minimality};
use isphere::fixtures::sphere_cohomology_cdga;
use isphere::grid::EventGrid;
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    for (label, grid, dies_at) in [
        ("constant H*(S²)", EventGrid::from_ints(&[0]), None),
        (
            "H*(S²) dying at 1",
            EventGrid::from_ints(&[0, 1]),
            Some(rat(1)),
        ),
    ] {
        let a = sphere_cohomology_cdga(&grid, 6, dies_at.as_ref())?;
        let mm = minimal_model(&a)?;
        println!("{label}:");
        let names = mm.model.gen_names();
        for g in &mm.model.gens {
            println!(
                "  generator {} (degree {}) on {}, d = {}",
                g.name,
                g.degree,
                g.support,
                g.d.render(&names)
            );
        }
        println!("  minimal: {}", verify_minimality(&mm.model).holds);
        println!(
            "  quasi-isomorphism through degree {}: {}",
            mm.report.checked_through_degree, mm.report.quasi_isomorphism
        );
        println!("  skeleton replays exactly: {}", mm.report.skeleton_replays);
        println!(
            "  skeleton: {} stage(s), {} cell(s) total",
            mm.skeleton.len(),
            mm.skeleton.iter().map(|s| s.cells.len()).sum::<usize>()
        );
    }
    Ok(())
}
