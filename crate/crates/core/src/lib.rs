//! Obstruction computations for condensing non-invertible surface symmetries.
//!
//! The crate is organised bottom-up:
//!
//! * [`abelian`]: finite abelian groups in invariant-factor form and the
//!   group-valued functors appearing in spectral sequence tables.
//! * [`gf2`]: small dense linear algebra over the field with two elements.
//! * [`steenrod`]: admissible monomials, Adem relations, excess, and
//!   Margolis homology of A(1)-modules.
//! * [`em_cohomology`]: mod 2 cohomology of products of Eilenberg-MacLane
//!   spaces as polynomial algebras on Serre generators.
//! * [`coefficients`]: coefficient spectra and circle-group cohomology rows.
//! * [`ahss`]: Atiyah-Hirzebruch spectral sequence pages and differentials.
//! * [`condense`]: component-level condensation bookkeeping and verdicts.
//! * [`cli`], [`selftest`]: the command-line surface.

pub mod abelian;
pub mod ahss;
pub mod cli;
pub mod coefficients;
pub mod condense;
pub mod em_cohomology;
mod error;
pub mod gf2;
pub mod selftest;
pub mod steenrod;

pub use error::{Error, Result};
