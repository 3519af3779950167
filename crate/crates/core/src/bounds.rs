//! Closed-form lower and upper bounds on the largest bihole order.
//!
//! Formulas return their raw value, possibly negative or fractional.
//! Ceilings and clamping at zero happen where a value is compared with a
//! bihole order. Values involving `ln` or the fixed point `p` are reals
//! accurate to 1e-9; everything else is an exact rational.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::randomized::solve_p_fixed_point;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundNum {
    Exact(Rational),
    Approx(f64),
}

impl BoundNum {
    pub fn to_f64(self) -> f64 {
        match self {
            BoundNum::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            BoundNum::Approx(x) => x,
        }
    }

    pub fn exact(self) -> Option<Rational> {
        match self {
            BoundNum::Exact(r) => Some(r),
            BoundNum::Approx(_) => None,
        }
    }

    /// Smallest integer order meeting this bound, never below 0.
    pub fn ceil_clamped(self) -> usize {
        match self {
            BoundNum::Exact(r) => r.ceil().to_integer().max(0) as usize,
            BoundNum::Approx(x) => (x - 1e-9).ceil().max(0.0) as usize,
        }
    }

    /// Largest integer not above this bound (used for upper bounds).
    pub fn floor(self) -> i64 {
        match self {
            BoundNum::Exact(r) => r.floor().to_integer(),
            BoundNum::Approx(x) => (x + 1e-9).floor() as i64,
        }
    }
}

impl fmt::Display for BoundNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundNum::Exact(r) => f.write_str(&format_rational(*r)),
            BoundNum::Approx(x) => f.write_str(&format_real(*x)),
        }
    }
}

impl Serialize for BoundNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal with 12 significant digits, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.trim().split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub name: &'static str,
    pub value: BoundNum,
    /// Whether the formula's preconditions hold for the queried parameters.
    pub applicable: bool,
    /// Holds only for unspecified large parameters; never asserted per instance.
    pub asymptotic: bool,
}

impl BoundValue {
    fn exact(name: &'static str, value: Rational, applicable: bool) -> Self {
        BoundValue {
            name,
            value: BoundNum::Exact(value),
            applicable,
            asymptotic: false,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if !self.applicable {
            f.write_str(" (not applicable)")?;
        }
        if self.asymptotic {
            f.write_str(" (asymptotic)")?;
        }
        Ok(())
    }
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n as i64)
}

/// `⌈n/2⌉ − 1`: the minimum bihole order over balanced graphs with A-degrees
/// at most 2. Needs `n ≥ 2`.
pub fn f2_value(n: usize) -> BoundValue {
    BoundValue::exact("f2", int(n.div_ceil(2)) - 1, n >= 2)
}

/// `⌊(n−2)/Δ⌋` for A-degrees at most `Δ`; needs `n ≥ Δ ≥ 2`.
pub fn delta_floor_bound(n: usize, delta: usize) -> BoundValue {
    let applicable = n >= delta && delta >= 2;
    let value = if applicable { (n - 2) / delta } else { 0 };
    BoundValue::exact("delta-floor", int(value), applicable)
}

/// `n/(d+1) − 2` for balanced graphs with at most `dn` edges.
pub fn avg_degree_bound(n: usize, d: Rational) -> BoundValue {
    let applicable = d >= Rational::from_integer(0);
    let value = if applicable {
        int(n) / (d + 1) - 2
    } else {
        Rational::from_integer(0)
    };
    BoundValue::exact("avg-degree", value, applicable)
}

/// `(n−2)/3` for balanced graphs with at most `2n` edges.
pub fn avg2_bound(n: usize) -> BoundValue {
    BoundValue::exact("avg2", (int(n) - 2) / 3, n >= 2)
}

/// `n₀ + n₁/2 − 1/2` for A-degrees at most 1.
pub fn profile01_bound(n0: usize, n1: usize) -> BoundValue {
    BoundValue::exact("profile01", int(n0) + Rational::new(n1 as i64 - 1, 2), true)
}

/// `3n₀/4 + (n₁+n₂)/2 − 7/4` for A-degrees at most 2.
pub fn profile012_bound(n0: usize, n1: usize, n2: usize) -> BoundValue {
    let value =
        Rational::new(3 * n0 as i64, 4) + Rational::new((n1 + n2) as i64, 2) - Rational::new(7, 4);
    BoundValue::exact("profile012", value, true)
}

/// `⌊i² + 3i/4⌋`, an upper bound on the bihole order of the extremal path
/// family with parameter `i` (even, `i ≥ 2`).
pub fn extremal_upper(i: usize) -> BoundValue {
    let applicable = i >= 2 && i.is_multiple_of(2);
    let value = (int(i * i) + Rational::new(3 * i as i64, 4)).floor();
    BoundValue::exact("extremal-upper", value, applicable)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct F3Window {
    /// `0.3411 n`, the earlier lower bound.
    pub lower_old: f64,
    /// `0.34917 n`.
    pub lower_new: f64,
    /// `0.4591 n`, the known upper bound.
    pub upper: f64,
    pub asymptotic: bool,
}

/// Reference values for `f(n,3)`; asymptotic, not per instance.
pub fn f3_window(n: usize) -> F3Window {
    let n = n as f64;
    F3Window {
        lower_old: 0.3411 * n,
        lower_new: 0.34917 * n,
        upper: 0.4591 * n,
        asymptotic: true,
    }
}

/// `n ln(d) / (8d)`; asymptotic in both `d` and `n`, applicable for `d > 1`.
pub fn asymp_avg_bound(n: usize, d: f64) -> BoundValue {
    let applicable = d > 1.0;
    let value = if applicable {
        n as f64 * d.ln() / (8.0 * d)
    } else {
        0.0
    };
    BoundValue {
        name: "asymp-avg",
        value: BoundNum::Approx(value),
        applicable,
        asymptotic: true,
    }
}

/// `1 / (2 ln 8)`, the exclusive upper limit for the sampling slack ε.
pub fn epsilon_limit() -> f64 {
    1.0 / (2.0 * 8f64.ln())
}

/// `3/4 (p³ − ε) + 1/2 (1 − p³ − p)` with `p = (1−p)³`; the per-`n` linear
/// coefficient behind the `f(n,3)` lower bound.
pub fn theorem1_constant(epsilon: Rational) -> Result<f64> {
    let eps = *epsilon.numer() as f64 / *epsilon.denom() as f64;
    if !(0.0..epsilon_limit()).contains(&eps) {
        return Err(Error::InvalidInput(format!(
            "epsilon {epsilon} outside [0, 1/(2 ln 8))"
        )));
    }
    let p = solve_p_fixed_point(1e-12);
    let p3 = p * p * p;
    Ok(0.75 * (p3 - eps) + 0.5 * (1.0 - p3 - p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BoundNum {
        BoundNum::Exact(Rational::new(p, q))
    }

    #[test]
    fn f2_examples() {
        assert_eq!(f2_value(7).value, r(3, 1));
        assert_eq!(f2_value(2).value, r(0, 1));
        assert_eq!(f2_value(10).value, r(4, 1));
        assert!(!f2_value(1).applicable);
    }

    #[test]
    fn delta_floor_examples() {
        assert_eq!(delta_floor_bound(11, 3).value, r(3, 1));
        assert_eq!(delta_floor_bound(4, 2).value, r(1, 1));
        for delta in 2..10 {
            assert_eq!(delta_floor_bound(delta + 2, delta).value, r(1, 1));
        }
        assert!(!delta_floor_bound(3, 4).applicable);
        assert!(!delta_floor_bound(5, 1).applicable);
    }

    #[test]
    fn avg_degree_examples() {
        assert_eq!(
            avg_degree_bound(12, Rational::from_integer(2)).value,
            r(2, 1)
        );
        assert_eq!(
            avg_degree_bound(3, Rational::from_integer(0)).value,
            r(1, 1)
        );
        assert_eq!(
            avg_degree_bound(5, Rational::from_integer(4)).value,
            r(-1, 1)
        );
        assert!(!avg_degree_bound(5, Rational::new(-1, 2)).applicable);
    }

    #[test]
    fn avg2_examples() {
        assert_eq!(avg2_bound(11).value, r(3, 1));
        assert_eq!(avg2_bound(2).value, r(0, 1));
        assert_eq!(avg2_bound(15).value, r(13, 3));
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile01_bound(3, 4).value, r(9, 2));
        assert_eq!(profile01_bound(0, 3).value, r(1, 1));
        assert_eq!(profile01_bound(5, 0).value, r(9, 2));
        assert_eq!(profile012_bound(2, 0, 8).value, r(15, 4));
        assert_eq!(profile012_bound(4, 0, 32).value, r(69, 4));
        for n in 0..20 {
            assert_eq!(
                profile012_bound(0, 0, n).value,
                BoundNum::Exact(Rational::new(n as i64, 2) - Rational::new(7, 4))
            );
        }
    }

    #[test]
    fn extremal_upper_examples() {
        assert_eq!(extremal_upper(2).value, r(5, 1));
        assert_eq!(extremal_upper(4).value, r(19, 1));
        assert!(!extremal_upper(3).applicable);
        // window between the two formulas on the i = 2 instance
        let lo = profile012_bound(2, 0, 8).value.ceil_clamped() as i64;
        let hi = extremal_upper(2).value.floor();
        assert_eq!((lo, hi), (4, 5));
    }

    #[test]
    fn f3_window_values() {
        let w = f3_window(10_000);
        assert!((w.lower_old - 3411.0).abs() < 1e-9);
        assert!((w.lower_new - 3491.7).abs() < 1e-9);
        assert!((w.upper - 4591.0).abs() < 1e-9);
        assert!(w.asymptotic);
        for n in 1..100 {
            let w = f3_window(n);
            assert!(w.lower_new > w.lower_old && w.upper > w.lower_new);
        }
    }

    #[test]
    fn asymp_avg_examples() {
        let e = std::f64::consts::E;
        let b = asymp_avg_bound(100, e);
        assert!((b.value.to_f64() - 100.0 / (8.0 * e)).abs() < 1e-9);
        assert!((b.value.to_f64() - 4.5985).abs() < 1e-4);
        let b = asymp_avg_bound(80, e * e);
        assert!((b.value.to_f64() - 2.7067).abs() < 1e-4);
        assert!(b.asymptotic);
        assert!(!asymp_avg_bound(80, 1.0).applicable);
    }

    #[test]
    fn theorem1_constant_values() {
        let c0 = theorem1_constant(Rational::from_integer(0)).unwrap();
        assert!((0.34917..=0.34920).contains(&c0), "{c0}");
        assert!((c0 - 0.3491785).abs() < 1e-6);
        let c = theorem1_constant(Rational::new(1, 10)).unwrap();
        assert!((c - (c0 - 0.075)).abs() < 1e-12);
        assert!(theorem1_constant(Rational::new(1, 4)).is_err());
        assert!(theorem1_constant(Rational::new(-1, 10)).is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(Rational::new(15, 4)), "15/4");
        assert_eq!(format_rational(Rational::new(6, 2)), "3");
        assert_eq!(format_rational(Rational::new(-1, 1)), "-1");
        assert_eq!(format_real(0.349178496296), "0.349178496296");
        assert_eq!(format_real(3491.7), "3491.7");
        assert_eq!(parse_rational("1/10").unwrap(), Rational::new(1, 10));
        assert_eq!(parse_rational(" 7 ").unwrap(), Rational::from_integer(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn ceil_clamped_behaviour() {
        assert_eq!(r(15, 4).ceil_clamped(), 4);
        assert_eq!(r(-7, 4).ceil_clamped(), 0);
        assert_eq!(r(3, 1).ceil_clamped(), 3);
    }
}
