use crate::arith::Rat;

use super::mpoly::MPoly;

/// Curve-specific data carried by a model built from a formula pack.
#[derive(Clone, Debug)]
pub struct PackData {
    /// f₀..f_{2g+2} of the curve the pack was specialised to.
    pub f: Vec<Rat>,
    /// Kummer coordinates as polynomials in the Mumford coefficients.
    pub xi: Option<Vec<MPoly>>,
    /// Entries of the 4×4 lift-check matrix in ξ₁..ξ₇ (genus 3), row-major.
    pub minors: Option<Vec<MPoly>>,
    pub checksum: String,
}
