//! Rational torsion subgroups of Jacobians of hyperelliptic curves of genus
//! 1 to 3, by reduction bounds, p-adic lifting on the Kummer variety and
//! lattice recognition.

pub mod arith;
pub mod error;
pub mod jacobian;
pub mod kummer;
pub mod lattice;
pub mod pack;
pub mod torsion;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/bound.md")]
    mod bound {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/torsion.md")]
    mod torsion {}
    #[doc = include_str!("../../../book/src/packs.md")]
    mod packs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
