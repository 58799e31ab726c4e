//! The three counterexample walkthroughs, with every claim re-derived by
//! the engine at run time.
//!
//! * `not-projective` — the quotient `D²_0 → D²_0/D²_1` is pointwise
//!   surjective and a pointwise quasi-isomorphism, yet not a fibration: the
//!   pointwise-surjective maps do not cut out the fibrations, so this is not
//!   the projective structure.
//! * `closed-interval` — the closed interval in degree 1 has a right-closed
//!   vector and is therefore not cofibrant, while every object is cofibrant
//!   injectively: this is not the injective structure either. The open
//!   interval shows the gap between locally compact and tame.
//! * `j-pushout-weq` — attaching disk-shaped cells never changes
//!   cohomology: inclusions into their pushouts are pointwise
//!   quasi-isomorphisms, checked on a batch of random attachments.

use serde::Serialize;

use crate::cells::{attach_cells, CellAttachment};
use crate::classes;
use crate::complex::PersComplex;
use crate::error::Result;
use crate::fixtures;
use crate::grid::{DecoratedInterval, EventGrid};
use crate::lifting::{solve_lifting, LiftOutcome, LiftProblem};
use crate::scalar::{rat, Rat};

/// One checked claim of a transcript.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub text: String,
    pub holds: bool,
}

/// A narrative with its machine-checked claims.
#[derive(Clone, Debug, Serialize)]
pub struct Transcript {
    pub name: String,
    pub claims: Vec<Claim>,
}

impl Transcript {
    fn claim(&mut self, text: impl Into<String>, holds: bool) {
        self.claims.push(Claim {
            text: text.into(),
            holds,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    /// Render for humans, one line per claim.
    pub fn render(&self) -> String {
        let mut out = format!("demo: {}\n", self.name);
        for c in &self.claims {
            out.push_str(if c.holds { "  [ok] " } else { "  [FAILED] " });
            out.push_str(&c.text);
            out.push('\n');
        }
        out
    }
}

pub const DEMO_NAMES: [&str; 3] = ["not-projective", "closed-interval", "j-pushout-weq"];

pub fn run_demo(name: &str) -> Result<Transcript> {
    match name {
        "not-projective" => not_projective(),
        "closed-interval" => closed_interval(),
        "j-pushout-weq" => j_pushout_weq(),
        other => Err(crate::error::Error::invalid(format!(
            "unknown demo {other:?}; available: {}",
            DEMO_NAMES.join(", ")
        ))),
    }
}

/// A pointwise surjective quasi-isomorphism that is not a fibration.
fn not_projective() -> Result<Transcript> {
    let mut t = Transcript {
        name: "not-projective".into(),
        claims: Vec::new(),
    };
    let grid = EventGrid::from_ints(&[0, 1]);
    let q = fixtures::quotient_of_disks(&grid, 2, &rat(0), &rat(1), 2)?;

    let epi = classes::is_j_infinity_injective(&q)?;
    t.claim("q : D²_0 → D²_0/D²_1 is pointwise surjective", epi.holds);

    let weq = classes::is_weak_equivalence(&q)?;
    t.claim(
        "q is a pointwise quasi-isomorphism (both sides are acyclic)",
        weq.holds,
    );

    let fib = classes::is_fibration(&q)?;
    t.claim("q is NOT a fibration", !fib.holds);
    if let Some(cert) = &fib.certificate {
        let ok = classes::verify_certificate(&q, cert)?;
        t.claim("the failing gap pair re-verifies against q", ok);
    }

    // the lifting problem from the square D²_1 → D²_0 over q, with zero on
    // top and the surviving quotient generator at the bottom
    let problem = LiftProblem {
        cell: CellAttachment::disk(2, rat(0), Some(rat(1)), Some(vec![rat(0)])),
        bottom: vec![rat(1)],
    };
    match solve_lifting(&q, &problem)? {
        LiftOutcome::Lift { .. } => {
            t.claim("no lift exists in the pinned square", false);
        }
        LiftOutcome::Obstructed(obs) => {
            t.claim("no lift exists in the pinned square", true);
            t.claim(
                "the obstruction functional kills the gap image but not the pair (0_u, 1_s)",
                obs.verify(),
            );
        }
    }
    t.claim(
        "hence the interval-sphere structure is not the projective one",
        epi.holds && !fib.holds,
    );
    Ok(t)
}

/// A non-cofibrant object: the closed interval in a positive degree.
fn closed_interval() -> Result<Transcript> {
    let mut t = Transcript {
        name: "closed-interval".into(),
        claims: Vec::new(),
    };
    let grid = EventGrid::from_ints(&[0, 1]);
    let closed = PersComplex::interval_tensor(
        &grid,
        &DecoratedInterval::closed(rat(0), rat(1)),
        1,
        2,
    )?;

    let module = closed.module(1);
    let rc = module.right_closed_points();
    t.claim(
        "the closed interval [0,1] in degree 1 has a right-closed vector at 1",
        rc.len() == 1 && rc[0].value == Rat::from_int(1),
    );
    let lc = module.local_compactness();
    t.claim("it is not locally compact", !lc.locally_compact);

    let cert = crate::factor::not_cofibrant_certificate(&closed);
    t.claim(
        "so it is not cofibrant (witness in degree 1 at value 1)",
        matches!(&cert, Some((1, w)) if w.value == Rat::from_int(1)),
    );
    t.claim(
        "every object is injectively cofibrant, so this is not the injective structure",
        cert.is_some(),
    );

    // degree 0 is outside the obstruction's scope
    let degree0 = PersComplex::interval_tensor(
        &grid,
        &DecoratedInterval::closed(rat(0), rat(1)),
        0,
        2,
    )?;
    t.claim(
        "the same interval in degree 0 yields no witness (the obstruction needs degree ≥ 1)",
        crate::factor::not_cofibrant_certificate(&degree0).is_none(),
    );

    // the open interval: locally compact but not tame
    let open =
        PersComplex::interval_tensor(&grid, &DecoratedInterval::open(rat(0), rat(1)), 1, 2)?;
    let m = open.module(1);
    t.claim(
        "the open interval (0,1) in degree 1 is locally compact but not tame",
        m.local_compactness().locally_compact && !m.is_tame(),
    );
    Ok(t)
}

/// Disk-shaped pushouts are weak equivalences.
fn j_pushout_weq() -> Result<Transcript> {
    let mut t = Transcript {
        name: "j-pushout-weq".into(),
        claims: Vec::new(),
    };
    let mut rng = crate::sample::rng(0x0de0);
    for round in 0..12 {
        let grid = crate::sample::random_grid(&mut rng, 3);
        let x = crate::sample::random_tame_complex(&mut rng, &grid, 3, 2);
        let cells = crate::sample::random_disk_cells(&mut rng, &x, 2);
        let att = attach_cells(&x, &cells)?;
        let weq = classes::is_weak_equivalence(&att.inclusion)?;
        t.claim(
            format!(
                "round {round}: the inclusion into the pushout of {} disk cells is a \
                 pointwise quasi-isomorphism",
                cells.len()
            ),
            weq.holds,
        );
    }
    // and the cofiber of the deterministic example is the acyclic D²_0/D²_1
    let grid = EventGrid::from_ints(&[0, 1]);
    let x = PersComplex::sphere(&grid, 2, &rat(0), None, 2)?;
    let cell = CellAttachment::disk(2, rat(0), Some(rat(1)), Some(vec![]));
    let att = attach_cells(&x, &[cell])?;
    let (cofiber, _) = att.complex.quotient(&att.inclusion)?;
    let acyclic = (0..=2).all(|k| {
        cofiber
            .cohomology(k)
            .map(|h| h.module.is_zero())
            .unwrap_or(false)
    });
    t.claim(
        "the pinned attachment has cofiber D²_0/D²_1, which is acyclic",
        acyclic,
    );
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_demos_pass_their_claims() {
        for name in DEMO_NAMES {
            let t = run_demo(name).unwrap();
            assert!(t.all_hold(), "{}", t.render());
        }
    }

    #[test]
    fn unknown_demo_is_an_error() {
        assert!(run_demo("nope").is_err());
    }
}
