//! Finite discrete systems `(X, σ)`: truncated enumeration of `Γ(X, σ)` and
//! exhaustive checks of the groupoid, cocycle, twist, skew-product and
//! correspondence identities on explicit truncations.

pub mod cocycle;
pub mod correspondence;
pub mod finite_group;
pub mod laws;
pub mod report;
pub mod skew;
pub mod system;
pub mod twist;

pub use cocycle::{verify_cocycle, ExtendedCocycle};
pub use correspondence::{correspondence_check, random_function, Correspondence};
pub use finite_group::FiniteGroup;
pub use laws::verify_groupoid;
pub use report::{LawCheck, VerificationReport};
pub use skew::{word_shift, SkewProduct};
pub use system::{enumerate, FiniteSystem, GroupoidElement, Truncation};
pub use twist::{BundleData, BundleJson, Twist, TwistElement};
