//! Curves over ℚ and their Jacobians over finite fields.

pub mod count;
pub mod curve;
pub mod divisor;
pub mod group;

pub use count::{count_points, jacobian_order, l_polynomial};
pub use curve::{CurveFp, HyperellipticCurveQ};
pub use divisor::{JacElem, JacobianFp, ModelType};
pub use group::{group_structure, sylow_subgroup, SylowBasis};
