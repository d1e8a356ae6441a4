//! Digit-sum arithmetic of Carmichael numbers.
//!
//! The crate is organised bottom-up:
//!
//! - [`factorint`]: exact 64-bit factorization, radical, `P(m)`, `l(m)`.
//! - [`digitsum`]: base-p expansions, `s_p(n)` and Legendre's formula.
//! - [`berndenom`]: denominators of Bernoulli numbers and polynomials, with
//!   an exact-rational oracle.
//! - [`numbersets`]: membership in `SF`, `S`, `C`, `C'`, `S_d`, `K_d`, and the
//!   functions `lambda` and `rho`.
//! - [`polygon`]: polygonal numbers and the polygonal forms of members of `S`.
//! - [`enumerate`]: the segmented sieve behind the counts and streams.
//! - [`verify`]: named reproduction checks grouped into profiles.

pub mod berndenom;
pub mod digitsum;
pub mod enumerate;
pub mod error;
pub mod factorint;
pub mod numbersets;
pub mod polygon;
pub mod verify;

pub use error::{Error, Result};
