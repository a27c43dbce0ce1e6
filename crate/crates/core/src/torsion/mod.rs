//! Rational torsion: height bounds, Hensel lifting, q-parts, two-torsion and
//! the assembled torsion subgroup.

pub mod backend;
pub mod bound;
pub mod full;
pub mod height;
pub mod lift;
pub mod qpart;
pub mod two_torsion;

pub use backend::{EllipticBackend, KummerBackend};
pub use height::HeightBound;
pub use lift::{lift_and_recognize, LiftCertificate, LiftConfig, LiftOutcome};
pub use two_torsion::{two_torsion, TwoTorsion};
pub use bound::{reduction_upper_bound, ReductionBound};
pub use full::{full_torsion, torsion_subgroup, TorsionConfig, TorsionReport};
pub use qpart::{q_part, QPartReport};
