//! Height-difference bounds, kept as exact rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Int, Rat};
use crate::kummer::MPoly;

/// Rational upper bound for ln 2.
fn ln2_up() -> Rat {
    Rat::new(BigInt::from(6_931_472), BigInt::from(10_000_000))
}

/// Rational upper bound for 1/ln 2.
fn log2e_up() -> Rat {
    Rat::new(BigInt::from(14_426_951), BigInt::from(10_000_000))
}

/// A bound β ≥ |ĥ − h| together with an integer E ≥ e^β.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightBound {
    pub beta: Rat,
    pub exp_beta: Int,
}

impl HeightBound {
    pub fn from_beta(beta: Rat) -> Self {
        let beta = if beta.is_negative() { Rat::zero() } else { beta };
        let exp_beta = exp_upper(&beta);
        HeightBound { beta, exp_beta }
    }

    /// Bound with e^β replaced by a known integer bound on torsion heights.
    fn with_height(beta: Rat, h: Int) -> Self {
        let e = exp_upper(&beta);
        HeightBound { beta, exp_beta: if h < e { h } else { e } }
    }
}

/// Upper bound for ln|n| (0 when |n| ≤ 1).
pub fn log_upper(n: &Int) -> Rat {
    let a = n.abs();
    if a <= BigInt::one() {
        return Rat::zero();
    }
    Rat::from_integer(BigInt::from(a.bits())) * ln2_up()
}

/// Upper bound for the logarithmic height of a rational number.
pub fn height_upper(r: &Rat) -> Rat {
    let a = log_upper(r.numer());
    let b = log_upper(r.denom());
    if a > b { a } else { b }
}

/// An integer ≥ e^β for β ≥ 0.
pub fn exp_upper(beta: &Rat) -> Int {
    let t = (beta * log2e_up()).ceil().to_integer();
    let t: u64 = t.try_into().unwrap_or(u64::MAX);
    BigInt::one() << t
}

/// Bound for y² = X³ + a2X² + a4X + a6 with integral coefficients on the
/// x-line (X : Z). It is the larger of Silverman's bound and the bound on
/// |X| from the Nagell–Lutz theorem; the integer part bounds the naive
/// height of κ(T) for every rational torsion point T.
pub fn elliptic_height_bound(a2: &Int, a4: &Int, a6: &Int) -> HeightBound {
    let disc = -BigInt::from(4) * a2.pow(3) * a6 + a2 * a2 * a4 * a4 + BigInt::from(18) * a2 * a4 * a6
        - BigInt::from(4) * a4.pow(3)
        - BigInt::from(27) * a6 * a6;
    let delta = BigInt::from(16) * &disc;
    let c4 = BigInt::from(16) * (a2 * a2 - BigInt::from(3) * a4);
    let j = Rat::new(c4.pow(3), delta.clone());
    // ½h(x) ≤ h(j)/8 + h(Δ)/12 + 0.973 + ½·log 2 for torsion points
    let silverman = height_upper(&j) / Rat::from_integer(4.into())
        + log_upper(&delta) / Rat::from_integer(6.into())
        + Rat::new(264.into(), 100.into());
    let a = [a2, a4, a6].iter().map(|x| x.abs()).max().unwrap();
    let cube = (BigInt::from(2) * disc.abs()).cbrt() + 1;
    let nl = std::cmp::max(BigInt::from(4) * a + 2, cube);
    let nl_log = log_upper(&nl);
    let beta = if nl_log > silverman { nl_log } else { silverman };
    HeightBound::with_height(beta, nl)
}

/// ⅓·log|2⁶·disc| + ⅓·γ, with γ = max over the doubling polynomials of the
/// log of the sum of absolute values of their coefficients.
pub fn pack_height_bound(disc: &Int, delta: &[MPoly]) -> HeightBound {
    let mut gamma = Rat::zero();
    for d in delta {
        let s: Rat = d.terms.iter().map(|(c, _)| c.abs()).sum();
        let l = log_upper(&s.ceil().to_integer());
        if l > gamma {
            gamma = l;
        }
    }
    let three = Rat::from_integer(3.into());
    let beta = log_upper(&(disc * BigInt::from(64))) / &three + gamma / three;
    HeightBound::from_beta(beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_bounds_dominate() {
        for n in [2i64, 3, 10, 1000, 123_456_789] {
            let l = log_upper(&BigInt::from(n));
            let f = (n as f64).ln();
            assert!(l.numer().to_string().parse::<f64>().unwrap() / l.denom().to_string().parse::<f64>().unwrap() >= f);
        }
        assert!(exp_upper(&Rat::from_integer(3.into())) >= BigInt::from(21));
    }
}
