//! Arithmetic on the extended half-line `[0, ∞]`.
//!
//! Infinity is an explicit state rather than an IEEE `inf` leaking out of an
//! overflow: finite values are capped at [`OVERFLOW_GUARD`] and anything above
//! it is reported as [`ExtError::Overflow`]. NaN is never representable.
//!
//! The conventions are the ones needed to make nonnegative integrals of
//! possibly infinite integrands well defined:
//!
//! * `0⁻¹ = ∞` and `∞⁻¹ = 0`;
//! * `f · g = 0` whenever the finite factor `f` is zero, even if `g = ∞`.
//!
//! Only the asymmetric product (finite first factor) is provided.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest magnitude accepted for a finite value.
pub const OVERFLOW_GUARD: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ExtError {
    #[error("negative value {0} is outside [0, inf]")]
    Negative(f64),
    #[error("NaN is not an extended nonnegative real")]
    NotANumber,
    #[error("finite computation overflowed the guard ({0:e} > 1e300)")]
    Overflow(f64),
}

/// A number in `[0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Inf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);
    pub const ONE: ExtReal = ExtReal::Finite(1.0);
    pub const INF: ExtReal = ExtReal::Inf;

    /// Checked constructor for a finite value.
    ///
    /// IEEE `+inf` is treated as an overflow, not as the distinguished `INF`:
    /// genuine infinities only arise from the inversion of zero.
    pub fn new(x: f64) -> Result<Self, ExtError> {
        if x.is_nan() {
            Err(ExtError::NotANumber)
        } else if x < 0.0 {
            Err(ExtError::Negative(x))
        } else if x > OVERFLOW_GUARD {
            Err(ExtError::Overflow(x))
        } else {
            // normalizes -0.0
            Ok(ExtReal::Finite(x + 0.0))
        }
    }

    pub fn is_inf(self) -> bool {
        matches!(self, ExtReal::Inf)
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    pub fn is_zero(self) -> bool {
        self == ExtReal::ZERO
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::Inf => None,
        }
    }

    /// Lossy conversion to `f64`, mapping `INF` to IEEE infinity.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::Finite(x) => x,
            ExtReal::Inf => f64::INFINITY,
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Inf, ExtReal::Inf) => Ordering::Equal,
            (ExtReal::Inf, _) => Ordering::Greater,
            (_, ExtReal::Inf) => Ordering::Less,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => fmt::Display::fmt(x, f),
            ExtReal::Inf => f.write_str("inf"),
        }
    }
}

impl fmt::LowerExp for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => fmt::LowerExp::fmt(x, f),
            ExtReal::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ExtReal::Inf);
        }
        let x: f64 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
        if !x.is_finite() {
            return Err(format!("{s:?}: only the literal \"inf\" denotes infinity"));
        }
        ExtReal::new(x).map_err(|e| e.to_string())
    }
}

/// `s⁻¹` with `0⁻¹ = ∞` and `∞⁻¹ = 0`.
pub fn inv_ext(s: ExtReal) -> ExtReal {
    match s {
        ExtReal::Inf => ExtReal::ZERO,
        ExtReal::Finite(0.0) => ExtReal::Inf,
        // 1/x for x >= 1e-300 stays below the guard; smaller inputs saturate
        ExtReal::Finite(x) => ExtReal::Finite((1.0 / x).min(OVERFLOW_GUARD)),
    }
}

/// `f · g` with a finite nonnegative first factor; `0 · ∞ = 0`.
pub fn mul_ext(f: f64, g: ExtReal) -> Result<ExtReal, ExtError> {
    let f = ExtReal::new(f)?;
    let f = f.finite().unwrap_or_default();
    if f == 0.0 {
        return Ok(ExtReal::ZERO);
    }
    match g {
        ExtReal::Inf => Ok(ExtReal::Inf),
        ExtReal::Finite(g) => ExtReal::new(f * g),
    }
}

/// Neumaier-compensated accumulator for nonnegative finite terms.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sum over `[0, ∞]`: `INF` if any term is `INF`, else the compensated finite sum.
pub fn sum_ext<I>(terms: I) -> Result<ExtReal, ExtError>
where
    I: IntoIterator<Item = ExtReal>,
{
    let mut acc = Compensated::default();
    for t in terms {
        match t {
            ExtReal::Inf => return Ok(ExtReal::Inf),
            ExtReal::Finite(x) => {
                acc.add(x);
                if acc.sum > OVERFLOW_GUARD {
                    return Err(ExtError::Overflow(acc.sum));
                }
            }
        }
    }
    ExtReal::new(acc.value())
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(x) => serializer.serialize_f64(*x),
            ExtReal::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                ExtReal::new(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fin(x: f64) -> ExtReal {
        ExtReal::new(x).unwrap()
    }

    #[test]
    fn inversion_conventions() {
        assert_eq!(inv_ext(ExtReal::ZERO), ExtReal::INF);
        assert_eq!(inv_ext(ExtReal::INF), ExtReal::ZERO);
        assert_eq!(inv_ext(fin(2.0)), fin(0.5));
    }

    #[test]
    fn zero_times_infinity_is_zero() {
        assert_eq!(mul_ext(0.0, ExtReal::INF).unwrap(), ExtReal::ZERO);
        assert_eq!(mul_ext(3.0, fin(2.0)).unwrap(), fin(6.0));
        assert_eq!(mul_ext(5.0, ExtReal::INF).unwrap(), ExtReal::INF);
    }

    #[test]
    fn sums() {
        assert_eq!(sum_ext([fin(1.0), fin(2.0), fin(3.0)]).unwrap(), fin(6.0));
        assert_eq!(sum_ext([fin(1.0), ExtReal::INF]).unwrap(), ExtReal::INF);
        assert_eq!(sum_ext(std::iter::empty()).unwrap(), ExtReal::ZERO);
    }

    #[test]
    fn rejects_nan_negative_and_overflow() {
        assert_eq!(ExtReal::new(f64::NAN), Err(ExtError::NotANumber));
        assert!(matches!(ExtReal::new(-1.0), Err(ExtError::Negative(_))));
        assert!(matches!(ExtReal::new(f64::INFINITY), Err(ExtError::Overflow(_))));
        assert!(matches!(mul_ext(1e200, fin(1e200)), Err(ExtError::Overflow(_))));
        assert!(matches!(sum_ext([fin(9e299), fin(9e299)]), Err(ExtError::Overflow(_))));
    }

    #[test]
    fn ordering_puts_inf_on_top() {
        assert!(ExtReal::INF > fin(1e300));
        assert_eq!(fin(1.0).min(ExtReal::INF), fin(1.0));
        assert_eq!(fin(1.0).max(ExtReal::INF), ExtReal::INF);
    }

    #[test]
    fn text_form_uses_inf_literal() {
        assert_eq!(ExtReal::INF.to_string(), "inf");
        assert_eq!("inf".parse::<ExtReal>().unwrap(), ExtReal::INF);
        assert!("Infinity".parse::<ExtReal>().is_err());
        let json = serde_json::to_string(&vec![fin(1.5), ExtReal::INF]).unwrap();
        assert_eq!(json, r#"[1.5,"inf"]"#);
        let back: Vec<ExtReal> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![fin(1.5), ExtReal::INF]);
    }

    fn ext_strategy() -> impl Strategy<Value = ExtReal> {
        prop_oneof![
            1 => Just(ExtReal::INF),
            1 => Just(ExtReal::ZERO),
            8 => (1e-6f64..1e6).prop_map(|x| ExtReal::new(x).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn double_inversion_is_identity(s in ext_strategy()) {
            let back = inv_ext(inv_ext(s));
            match s {
                ExtReal::Finite(x) if x > 0.0 => {
                    let y = back.finite().unwrap();
                    prop_assert!(((y - x) / x).abs() <= 1e-15);
                }
                _ => prop_assert_eq!(back, s),
            }
        }

        #[test]
        fn product_is_monotone_in_second_factor(f in 1e-3f64..1e3, g1 in ext_strategy(), g2 in ext_strategy()) {
            let (lo, hi) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
            prop_assert!(mul_ext(f, lo).unwrap() <= mul_ext(f, hi).unwrap());
        }

        #[test]
        fn sum_is_permutation_invariant(
            mut terms in prop::collection::vec(ext_strategy(), 0..64),
            seed in any::<u64>(),
        ) {
            let a = sum_ext(terms.iter().copied()).unwrap();
            // deterministic shuffle
            let n = terms.len();
            let mut state = seed | 1;
            for i in (1..n).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                terms.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let b = sum_ext(terms.iter().copied()).unwrap();
            prop_assert_eq!(a.is_inf(), b.is_inf());
            if let (Some(x), Some(y)) = (a.finite(), b.finite()) {
                prop_assert!((x - y).abs() <= 1e-14 * x.max(y).max(f64::MIN_POSITIVE));
            }
        }
    }
}
