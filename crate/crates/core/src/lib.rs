//! Random links as braid closures of random walks on the braid group.
//!
//! The closure of an `n`-strand braid has one component per cycle of the
//! permutation the braid induces on its strands. Everything here hangs off
//! that correspondence:
//!
//! * [`perm`] and [`braid`]: permutations, braid words and their projection.
//! * [`exact`]: Stirling numbers of the first kind in exact arithmetic, the
//!   modal component count, the Hammersley residual and the Erdős bounds.
//! * [`partition`]: cycle types, centralizers and conjugacy class sizes.
//! * [`walk`]: seeded Monte Carlo walks and convergence diagnostics.
//! * [`cli`]: the command-line harness.

pub mod braid;
pub mod caps;
pub mod cli;
pub mod error;
pub mod exact;
pub mod partition;
pub mod perm;
pub mod rational;
pub mod tolerances;
pub mod walk;

pub use braid::BraidWord;
pub use caps::Caps;
pub use error::{Error, Result};
pub use partition::Partition;
pub use perm::{CycleDecomposition, Permutation};
pub use rational::Rational;
