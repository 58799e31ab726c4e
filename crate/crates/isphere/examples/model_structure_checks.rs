//! The class decision procedures on the running counterexample: a pointwise
//! surjective quasi-isomorphism that fails to be a fibration.

use isphere::classes::{
    is_fibration, is_i0_injective, is_j0_injective, is_j_infinity_injective,
    is_trivial_fibration, is_weak_equivalence, verify_certificate,
};
use isphere::fixtures::quotient_of_disks;
use isphere::grid::EventGrid;
use isphere::scalar::rat;

fn main() -> isphere::Result<()> {
    let grid = EventGrid::from_ints(&[0, 1]);
    let q = quotient_of_disks(&grid, 2, &rat(0), &rat(1), 2)?;

    println!("q : D²_0 -> D²_0/D²_1");
    println!("  pointwise surjective: {}", is_j_infinity_injective(&q)?.holds);
    println!("  weak equivalence:     {}", is_weak_equivalence(&q)?.holds);

    let j0 = is_j0_injective(&q)?;
    println!("  disk-gap surjective:  {}", j0.holds);
    if let Some(cert) = &j0.certificate {
        println!("    certificate: {}", serde_json::to_string(cert)?);
        println!("    re-verifies: {}", verify_certificate(&q, cert)?);
    }

    println!("  fibration:            {}", is_fibration(&q)?.holds);
    println!("  sphere-gap (cube):    {}", is_i0_injective(&q)?.holds);
    println!("  trivial fibration:    {}", is_trivial_fibration(&q)?.holds);

    // on a batch of random maps the two routes to "trivial fibration" agree
    let mut rng = isphere::sample::rng(0xC1A55);
    let mut agree = 0;
    for _ in 0..40 {
        let g = isphere::sample::random_grid(&mut rng, 3);
        let f = isphere::sample::random_map(&mut rng, &g, 3);
        let lhs = is_trivial_fibration(&f)?.holds;
        let rhs = is_fibration(&f)?.holds && is_weak_equivalence(&f)?.holds;
        assert_eq!(lhs, rhs);
        agree += 1;
    }
    println!("trivial-fibration = fibration ∧ weq on {agree}/{agree} random maps");
    Ok(())
}
