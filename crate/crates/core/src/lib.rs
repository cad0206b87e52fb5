//! Exact arithmetic for counting supersingular abelian surfaces in the
//! isogeny class of the Weil number `√p` over `F_p`.
//!
//! The pipeline is: invariants of `F = Q(√p)` ([`quadratic`], [`zeta`]),
//! class numbers of the CM fields `K_j = F(√-j)` ([`cmfield`]), and finally
//! masses, elliptic parts and class numbers of the quaternion orders
//! `O_1`, `O_8`, `O_16` ([`classno`]). Everything is exact; any
//! non-integral class number is reported as an error.

pub mod arith;
pub mod classno;
pub mod cmfield;
mod error;
pub mod quadratic;
pub mod zeta;

pub use arith::ExactRational;
pub use classno::{census, IsogenyCensus, OrderKind, OrderReport};
pub use error::{CensusError, Result};
