//! Kummer varieties: points, explicit models, the multiplication ladder, the
//! elliptic x-line and the explicit genus-3 formulas on degree-2 divisors.

pub mod elliptic;
pub mod genus2;
pub mod genus3;
pub mod model;
pub mod mpoly;
pub mod packmodel;
pub mod point;

pub use elliptic::elliptic_model;
pub use model::{bqf_index, KummerModel, ModelKind};
pub use mpoly::MPoly;
pub use point::KummerPoint;
