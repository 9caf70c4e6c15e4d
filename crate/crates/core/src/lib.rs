//! Exact arithmetic on element-order sums over finite groups.
//!
//! The crate computes ψ(G) = Σ o(x) over all elements x of a concretely
//! constructed finite group G, enumerates all groups of supported odd
//! orders, and verifies extremal bounds on ψ(G)/ψ(C_n) with exact rational
//! comparisons throughout. Floating point appears only in display columns,
//! never in any assertion.
//!
//! Modules:
//! - [`arith`]: big-integer rationals, primes, factorization, Euler φ, and
//!   ψ over cyclic groups via its multiplicative structure.
//! - [`bounds`]: the bound functions f and g_q, prime-gap helpers, and
//!   monotonicity / ordering verifiers.
//! - [`groups`]: the concrete finite-group engine (multiplication tables,
//!   element orders, subsets, Sylow subgroups, isomorphism testing).
//! - [`catalog`]: the construction DSL, named families, and exhaustive
//!   isomorphism-class enumeration for supported odd orders.
//! - [`harness`]: verification suites producing structured reports over
//!   order ranges, with CSV/JSON emission.

pub mod arith;
pub mod bounds;
pub mod catalog;
pub mod groups;
pub mod harness;

pub use arith::{ExactRatio, Factorization};
pub use catalog::GroupDescriptor;
pub use groups::FiniteGroup;
pub use harness::VerificationReport;
