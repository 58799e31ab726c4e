//! Persistent commutative differential graded algebras.
//!
//! Two presentations coexist: [`free::FreePcdga`] (a finite list of
//! interval-supported generators with differential and exit polynomials —
//! the form Sullivan models take) and [`nodewise::NodewiseAlgebra`] (explicit
//! bases, multiplication tables, differentials and steps — the form
//! arbitrary inputs such as cohomology algebras take). Everything
//! homological factors through the underlying persistent cochain complex;
//! everything algebraic (Hirsch extensions, minimal models) lives on the
//! free side.

pub mod cone;
pub mod free;
pub mod hirsch;
pub mod minimal;
pub mod nodewise;
pub mod poly;

pub use cone::{mapping_cone, mapping_cone_cohomology};
pub use free::{Evaluation, FreeGen, FreePcdga};
pub use hirsch::{hirsch_extension, HirschCell, HirschExtensionRecord};
pub use minimal::{minimal_model, verify_minimality, MinimalModel};
pub use nodewise::{NodeAlgebra, NodewiseAlgebra, PersCdgaMap};
pub use poly::{Monomial, Poly};

use crate::classes::Verdict;
use crate::error::Result;

/// Weak equivalence of persistent CDGAs: the underlying map is a pointwise
/// quasi-isomorphism through degree `N - 1` (degree `N` products are
/// truncated away, so it is excluded).
pub fn is_weak_equivalence_cdga(f: &PersCdgaMap) -> Result<Verdict> {
    let u = f.underlying_map()?;
    let cohom = crate::classes::CohomologyPair::compute(&u)?;
    let max_check = f.source().max_degree().saturating_sub(1);
    let v = crate::classes::is_weak_equivalence_upto(&u, &cohom, max_check)?;
    Ok(v.with_note(format!(
        "cohomology compared through degree {max_check}; the top truncation degree is excluded"
    )))
}
