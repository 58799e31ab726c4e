//! Interval-sphere homotopy machinery for tame persistent cochain complexes
//! over ℚ.
//!
//! The crate provides, bottom to top:
//!
//! * [`matrix`] — dense exact rational linear algebra (`rref`, solving,
//!   kernels, fiber products);
//! * [`grid`], [`module`], [`barcode`] — persistence modules on a finite
//!   event grid, decorated interval decomposition, tameness and
//!   right-closed-point diagnostics;
//! * [`complex`], [`cells`] — persistent cochain complexes, interval spheres
//!   and disks, Hom computations, and pushout cell attachment;
//! * [`classes`], [`lifting`], [`factor`] — decision procedures for the
//!   interval-sphere model structure classes (fibrations, trivial
//!   fibrations, weak equivalences) with re-verifiable certificates, a
//!   constructive lifting solver, cellular factorization of monomorphisms
//!   between tame complexes, and cofibrant replacement;
//! * [`cdga`] — persistent commutative differential graded algebras, Hirsch
//!   extensions, and persistent Sullivan minimal models presented as
//!   interval-cell complexes.
//!
//! The `examples/` directory holds one runnable walkthrough per capability,
//! and the thin `isphere` binary exposes the same operations on JSON files.
//!
//! ```
//! use isphere::barcode::barcode;
//! use isphere::classes::{is_fibration, is_weak_equivalence};
//! use isphere::fixtures::quotient_of_disks;
//! use isphere::grid::{DecoratedInterval, EventGrid};
//! use isphere::module::PersModule;
//! use isphere::scalar::rat;
//!
//! # fn main() -> isphere::Result<()> {
//! // a barcode with its endpoint decorations
//! let grid = EventGrid::from_ints(&[0, 1]);
//! let closed = PersModule::interval(&grid, &DecoratedInterval::closed(rat(0), rat(1)))?;
//! let bars = barcode(&closed).barcode;
//! assert_eq!(bars.bars[0].interval.to_string(), "[0, 1]");
//! assert!(!closed.is_tame());
//!
//! // the running counterexample: a pointwise surjective quasi-isomorphism
//! // that is not a fibration
//! let q = quotient_of_disks(&grid, 2, &rat(0), &rat(1), 2)?;
//! assert!(is_weak_equivalence(&q)?.holds);
//! assert!(!is_fibration(&q)?.holds);
//! # Ok(())
//! # }
//! ```

pub mod barcode;
pub mod cdga;
pub mod cells;
pub mod classes;
pub mod cli;
pub mod complex;
pub mod io;
pub mod lifting;
pub mod demos;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod grid;
pub mod matrix;
pub mod module;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
