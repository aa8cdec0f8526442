//! Exact and high-precision arithmetic substrate: rationals, Laurent
//! polynomials, signed multisets, big-float complex numbers, randomized
//! identity testing and small-prime helpers.

pub mod complex;
pub mod identity;
pub mod modp;
pub mod multiset;
pub mod par;
pub mod poly;
pub mod scalar;

pub use complex::{check_precision, BigComplex, PrecisionError, Real, MIN_PRECISION};
pub use identity::{identity_check_fn, identity_check_random, IdentityError, IdentityOutcome};
pub use multiset::{multiset_difference, SignedMultiset};
pub use par::Exec;
pub use poly::{laurent_substitute, ExactPoly, Monomial, PolyError};
pub use scalar::{binomial, binomial_general, factorial, ExactScalar};
