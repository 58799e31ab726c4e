//! Interval spheres and disks, their cohomology, and the Hom identities
//! that make maps out of them pure linear algebra.

use isphere::complex::PersComplex;
use isphere::grid::EventGrid;
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    let grid = EventGrid::from_ints(&[0, 1]);

    // S²[0,1): a degree-2 line born at 0 that bounds from time 1 on
    let sphere = PersComplex::sphere(&grid, 2, &rat(0), Some(&rat(1)), 2)?;
    println!("S²[0,1) dims:");
    for k in (0..=2).rev() {
        println!("  degree {k}: {:?}", sphere.module(k).dims());
    }
    let h2 = sphere.cohomology(2)?;
    println!(
        "H² has barcode {}",
        h2.barcode()
            .bars
            .iter()
            .map(|b| b.interval.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );

    // disks are acyclic
    let disk = PersComplex::disk(&grid, 2, &rat(0), 2)?;
    assert!((0..=2).all(|k| disk.cohomology(k).map(|h| h.module.is_zero()).unwrap_or(false)));
    println!("D²_0 is acyclic in every degree");

    // Hom(D²_0, X) is X¹(0): for X = D²_0 itself that is one line
    let hom_disk = disk.hom_from_disk(2, &rat(0))?;
    println!("dim Hom(D²_0, D²_0) = {}", hom_disk.dim);
    let f = hom_disk.to_map(&[rat(1)])?;
    assert!(f.is_iso());

    // Hom(S²[0,1), X) is the fiber product of cocycles at 0 with bounding
    // elements at 1; it contains the identity
    let hom_sphere = sphere.hom_from_sphere(2, &rat(0), Some(&rat(1)))?;
    println!("dim Hom(S²[0,1), S²[0,1)) = {}", hom_sphere.dim());
    for i in 0..hom_sphere.dim() {
        let mut coords = vec![rat(0); hom_sphere.dim()];
        coords[i] = rat(1);
        hom_sphere.to_map(&coords)?; // every basis element is a genuine map
    }
    println!("every basis element converts to a validated cochain map");

    // quotients are computed nodewise: D²_0 / D²_1 lives on [0,1) with the
    // identity differential, hence is acyclic too. The inclusion D²_1 ↪ D²_0
    // is itself a Hom(D², -) element.
    let incl = disk.hom_from_disk(2, &rat(1))?.to_map(&[rat(1)])?;
    let (quotient, _) = disk.quotient(&incl)?;
    println!(
        "D²_0/D²_1 dims in degree 2: {:?} (acyclic: {})",
        quotient.module(2).dims(),
        (0..=2).all(|k| quotient.cohomology(k).map(|h| h.module.is_zero()).unwrap_or(false))
    );
    Ok(())
}
