//! Exact computations in the 2-category of arrows over finitely presented
//! modules (over `Z` and `Z/m`), its full sub-2-category of arrows with free
//! target, and checkers for the symmetric categorical group identities.
//!
//! The layers build on each other:
//!
//! * [`ring`], [`matrix`], [`snf`]: exact arithmetic and Smith normal form.
//! * [`fgmod`]: the base abelian category of finitely presented modules.
//! * [`homalg`]: free resolutions, `Ext^1`, `Ext^2` and the class `ch(a)`.
//! * [`arrow2`]: arrow objects, commuting squares, homotopies, `pi_0`/`pi_1`.
//! * [`twoabelian`]: 2-kernels, 2-cokernels, suspension, loops, pips, copips.
//! * [`scg`]: the bracket identities of symmetric categorical groups.
//! * [`generate`], [`brute`], [`verify`]: seeded instances, finite brute-force
//!   oracles and the verification suites.

pub mod arrow2;
pub mod brute;
mod error;
pub mod fgmod;
pub mod generate;
pub mod homalg;
pub mod instance;
pub mod matrix;
pub mod ring;
pub mod scg;
pub mod snf;
pub mod twoabelian;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::Ring;
