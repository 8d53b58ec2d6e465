//! Exact q-series engine for Eisenstein-type series identities, divisor
//! convolution sums and theta special values.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: exact rationals, Bernoulli numbers, the divisor sums σ, σ̃, σ̂
//!   and the brute-force convolution oracle.
//! - [`qseries`]: truncated power series in `q` over the rationals.
//! - [`generators`]: every named series (Eisenstein, Hahn, theta families,
//!   Lambert doubles Φ and Φ̃).
//! - [`symbolic`]: graded polynomials in `P, Q, R` or `𝒫, ℰ, 𝒬, ℛ` with the
//!   `q d/dq` derivations, and the ratio / Φ polynomial recurrences.
//! - [`identities`]: the registry of identities and the verification engine.
//! - [`numeric`]: arbitrary-precision evaluation at `q = ±e^{-π}` and friends,
//!   compared against closed forms in `π` and `Γ(3/4)`.

pub mod arith;
pub mod error;
pub mod generators;
pub mod identities;
pub mod numeric;
pub mod qseries;
pub mod symbolic;

pub use arith::{DivisorKind, Rational};
pub use error::{Error, Result};
pub use generators::SeriesName;
pub use qseries::Series;
pub use symbolic::{Ring, WeightedPoly};
