//! Tameness, right-closed vectors, local compactness, and the cofibrancy
//! obstruction they drive.

use isphere::complex::PersComplex;
use isphere::factor::not_cofibrant_certificate;
use isphere::grid::{DecoratedInterval, EventGrid};
use isphere::module::PersModule;
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    let grid = EventGrid::from_ints(&[0, 1]);

    for (label, interval) in [
        ("[0,1)", DecoratedInterval::half_open(rat(0), rat(1))),
        ("[0,1]", DecoratedInterval::closed(rat(0), rat(1))),
        ("(0,1)", DecoratedInterval::open(rat(0), rat(1))),
    ] {
        let m = PersModule::interval(&grid, &interval)?;
        let lc = m.local_compactness();
        println!(
            "{label}: tame {}, right-closed points {}, locally compact {}",
            m.is_tame(),
            m.right_closed_points().len(),
            lc.locally_compact
        );
    }

    // the closed interval in degree 1 is not cofibrant …
    let closed =
        PersComplex::interval_tensor(&grid, &DecoratedInterval::closed(rat(0), rat(1)), 1, 2)?;
    match not_cofibrant_certificate(&closed) {
        Some((k, w)) => println!(
            "closed interval in degree {k}: right-closed witness at value {} -> not cofibrant",
            w.value
        ),
        None => unreachable!(),
    }

    // … while the obstruction says nothing in degree 0
    let degree0 =
        PersComplex::interval_tensor(&grid, &DecoratedInterval::closed(rat(0), rat(1)), 0, 2)?;
    println!(
        "same interval in degree 0: witness {:?} (the obstruction needs positive degree)",
        not_cofibrant_certificate(&degree0).map(|(k, _)| k)
    );
    Ok(())
}
