//! Sidon sets on unions of integer intervals.
//!
//! A set of integers is Sidon when all its pairwise sums are distinct. This
//! crate builds large Sidon subsets of one or two intervals, bounds how large
//! such subsets can be in a union of `k` intervals, and solves small
//! instances exactly so both sides can be cross-checked.
//!
//! * [`sets`], [`sidon`]: interval unions, integer sets and verification.
//! * [`primes`], [`field`], [`singer`]: perfect difference sets from GF(p³)
//!   and dense Sidon sets in `[1, N]`.
//! * [`two_interval`]: constructions for `I₁ ∪ I₂`.
//! * [`bound`]: window-counting upper bounds.
//! * [`geometric`]: an exponentially spaced family in `n` blocks.
//! * [`solver`]: exact maximum Sidon subsets.
//! * [`thresholds`]: optimizing the case thresholds of [`two_interval`].
//! * [`sweep`]: `(α, β)` sweeps and CSV output.

pub mod bound;
pub mod error;
pub mod field;
pub mod geometric;
pub mod primes;
pub mod sets;
pub mod sidon;
pub mod singer;
pub mod solver;
pub mod sweep;
pub mod thresholds;
pub mod two_interval;

pub use error::{Result, SidonError};
pub use sets::{IntegerSet, Interval, IntervalUnion};
pub use sidon::{is_sidon, SidonCheck, SidonMode};
