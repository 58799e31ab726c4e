//! Write the JSON fixtures under `examples/data/`, documenting every file
//! schema the CLI consumes along the way.

use std::path::Path;

use isphere::cells::CellAttachment;
use isphere::complex::PersComplex;
use isphere::fixtures;
use isphere::grid::{DecoratedInterval, EventGrid};
use isphere::io::{self, CdgaFile, ComplexFile, MapFile, ModuleFile};
use isphere::lifting::LiftProblem;
use isphere::matrix::RatMatrix;
use isphere::module::PersModule;
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    std::fs::create_dir_all(&dir)?;
    let grid = EventGrid::from_ints(&[0, 1]);

    // persistence modules
    let half_open = PersModule::interval(&grid, &DecoratedInterval::half_open(rat(0), rat(1)))?;
    io::write_json(&dir.join("interval_module.json"), &ModuleFile::from_module(&half_open))?;
    let entangled = PersModule::new(
        grid.clone(),
        vec![2, 2, 1, 1],
        vec![
            RatMatrix::identity(2),
            RatMatrix::from_int_rows(&[&[1, 1]]),
            RatMatrix::identity(1),
        ],
    )?;
    io::write_json(&dir.join("entangled_module.json"), &ModuleFile::from_module(&entangled))?;
    io::write_json(
        &dir.join("empty_module.json"),
        &ModuleFile::from_module(&PersModule::zero(grid.clone())),
    )?;

    // complexes
    let sphere = PersComplex::sphere(&grid, 2, &rat(0), Some(&rat(1)), 3)?;
    io::write_json(&dir.join("sphere_complex.json"), &ComplexFile::from_complex(&sphere))?;
    let closed =
        PersComplex::interval_tensor(&grid, &DecoratedInterval::closed(rat(0), rat(1)), 1, 2)?;
    io::write_json(
        &dir.join("closed_interval_complex.json"),
        &ComplexFile::from_complex(&closed),
    )?;

    // maps
    let q = fixtures::quotient_of_disks(&grid, 2, &rat(0), &rat(1), 2)?;
    io::write_json(&dir.join("quotient_map.json"), &MapFile::from_map(&q))?;
    let zero_into_sphere = isphere::complex::PersComplexMap::zero_map(
        PersComplex::zero(grid.clone(), 3),
        sphere.clone(),
    )?;
    io::write_json(
        &dir.join("zero_into_sphere_map.json"),
        &MapFile::from_map(&zero_into_sphere),
    )?;

    // the pinned lifting problem against the quotient map
    let problem = LiftProblem {
        cell: CellAttachment::disk(2, rat(0), Some(rat(1)), Some(vec![rat(0)])),
        bottom: vec![rat(1)],
    };
    io::write_json(&dir.join("pinned_lift_problem.json"), &problem)?;

    // CDGA fixtures
    let constant = fixtures::sphere_cohomology_cdga(&EventGrid::from_ints(&[0]), 6, None)?;
    io::write_json(&dir.join("hs2_constant.json"), &CdgaFile::from_nodewise(&constant))?;
    let dying = fixtures::sphere_cohomology_cdga(&grid, 6, Some(&rat(1)))?;
    io::write_json(&dir.join("hs2_dies_at_1.json"), &CdgaFile::from_nodewise(&dying))?;

    println!("fixtures written under {}", dir.display());
    Ok(())
}
