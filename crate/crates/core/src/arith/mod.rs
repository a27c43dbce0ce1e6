//! Exact arithmetic: integers, rationals, residue rings, finite fields,
//! quadratic fields, polynomials, factorisation and Smith normal form.

pub mod factor;
pub mod ffield;
pub mod fp;
pub mod poly;
pub mod quad;
pub mod residue;
pub mod ring;
pub mod snf;
pub mod sqrt;

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

pub use factor::{factor_over_q, factor_over_quad};
pub use ffield::{FqElem, FqField};
pub use fp::{Fp, FpPoly};
pub use poly::Poly;
pub use quad::QuadElem;
pub use residue::Zmod;
pub use ring::{rat, rat_int, RingElem};
pub use snf::{smith_normal_form, IntMatrix, Snf};
pub use sqrt::{is_prime_u64, prime_factors_u64, sqrt_rational};
