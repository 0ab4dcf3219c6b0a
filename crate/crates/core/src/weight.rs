//! Exact edge weights of the form `base + eps_coeff * ε`.
//!
//! `ε` is a symbolic positive infinitesimal: two weights compare by `base`
//! first and only fall back to the `ε` coefficient on ties. Both parts are
//! arbitrary precision, since path weights grow like `8^n` and completion
//! weights like `3^N`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A weight `base + eps_coeff * ε`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactWeight {
    base: BigInt,
    eps_coeff: BigInt,
}

impl ExactWeight {
    pub fn new(base: impl Into<BigInt>, eps_coeff: impl Into<BigInt>) -> Self {
        ExactWeight {
            base: base.into(),
            eps_coeff: eps_coeff.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn int(base: impl Into<BigInt>) -> Self {
        Self::new(base, 0)
    }

    /// `j * ε`.
    pub fn eps(j: impl Into<BigInt>) -> Self {
        Self::new(0, j)
    }

    pub fn base(&self) -> &BigInt {
        &self.base
    }

    pub fn eps_coeff(&self) -> &BigInt {
        &self.eps_coeff
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.eps_coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    pub fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    /// Componentwise product with an integer scalar.
    pub fn scale(&self, factor: &BigInt) -> Self {
        ExactWeight {
            base: &self.base * factor,
            eps_coeff: &self.eps_coeff * factor,
        }
    }

    /// `max(self, 0)`.
    pub fn positive_part(&self) -> Self {
        if self.is_negative() {
            Self::zero()
        } else {
            self.clone()
        }
    }

    /// `max(-self, 0)`.
    pub fn negative_part(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            Self::zero()
        }
    }
}

impl Ord for ExactWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.eps_coeff.cmp(&other.eps_coeff))
    }
}

impl PartialOrd for ExactWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for ExactWeight {
    fn from(v: i64) -> Self {
        ExactWeight::int(v)
    }
}

impl From<BigInt> for ExactWeight {
    fn from(v: BigInt) -> Self {
        ExactWeight::int(v)
    }
}

impl Add for ExactWeight {
    type Output = ExactWeight;
    fn add(mut self, rhs: ExactWeight) -> ExactWeight {
        self += &rhs;
        self
    }
}

impl<'a> Add<&'a ExactWeight> for ExactWeight {
    type Output = ExactWeight;
    fn add(mut self, rhs: &'a ExactWeight) -> ExactWeight {
        self += rhs;
        self
    }
}

impl<'a> Add<&'a ExactWeight> for &'a ExactWeight {
    type Output = ExactWeight;
    fn add(self, rhs: &'a ExactWeight) -> ExactWeight {
        ExactWeight {
            base: &self.base + &rhs.base,
            eps_coeff: &self.eps_coeff + &rhs.eps_coeff,
        }
    }
}

impl<'a> AddAssign<&'a ExactWeight> for ExactWeight {
    fn add_assign(&mut self, rhs: &'a ExactWeight) {
        self.base += &rhs.base;
        self.eps_coeff += &rhs.eps_coeff;
    }
}

impl AddAssign for ExactWeight {
    fn add_assign(&mut self, rhs: ExactWeight) {
        *self += &rhs;
    }
}

impl Sub for ExactWeight {
    type Output = ExactWeight;
    fn sub(mut self, rhs: ExactWeight) -> ExactWeight {
        self -= &rhs;
        self
    }
}

impl<'a> Sub<&'a ExactWeight> for ExactWeight {
    type Output = ExactWeight;
    fn sub(mut self, rhs: &'a ExactWeight) -> ExactWeight {
        self -= rhs;
        self
    }
}

impl<'a> Sub<&'a ExactWeight> for &'a ExactWeight {
    type Output = ExactWeight;
    fn sub(self, rhs: &'a ExactWeight) -> ExactWeight {
        ExactWeight {
            base: &self.base - &rhs.base,
            eps_coeff: &self.eps_coeff - &rhs.eps_coeff,
        }
    }
}

impl<'a> SubAssign<&'a ExactWeight> for ExactWeight {
    fn sub_assign(&mut self, rhs: &'a ExactWeight) {
        self.base -= &rhs.base;
        self.eps_coeff -= &rhs.eps_coeff;
    }
}

impl Neg for ExactWeight {
    type Output = ExactWeight;
    fn neg(self) -> ExactWeight {
        ExactWeight {
            base: -self.base,
            eps_coeff: -self.eps_coeff,
        }
    }
}

impl Mul<i64> for &ExactWeight {
    type Output = ExactWeight;
    fn mul(self, rhs: i64) -> ExactWeight {
        self.scale(&BigInt::from(rhs))
    }
}

impl Sum for ExactWeight {
    fn sum<I: Iterator<Item = ExactWeight>>(iter: I) -> Self {
        iter.fold(ExactWeight::zero(), |acc, w| acc + w)
    }
}

impl<'a> Sum<&'a ExactWeight> for ExactWeight {
    fn sum<I: Iterator<Item = &'a ExactWeight>>(iter: I) -> Self {
        iter.fold(ExactWeight::zero(), |mut acc, w| {
            acc += w;
            acc
        })
    }
}

impl fmt::Display for ExactWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps_coeff.is_zero() {
            return write!(f, "{}", self.base);
        }
        let sign = if self.eps_coeff.is_negative() { '-' } else { '+' };
        let mag = self.eps_coeff.abs();
        let coeff = if mag.is_one() {
            String::new()
        } else {
            mag.to_string()
        };
        if self.base.is_zero() {
            if sign == '-' {
                write!(f, "-{coeff}ε")
            } else {
                write!(f, "{coeff}ε")
            }
        } else {
            write!(f, "{}{sign}{coeff}ε", self.base)
        }
    }
}

// JSON: `["<base>", "<eps_coeff>"]` with decimal strings.
impl Serialize for ExactWeight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.base.to_string(), self.eps_coeff.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactWeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [base, eps]: [String; 2] = Deserialize::deserialize(d)?;
        let base: BigInt = base.parse().map_err(D::Error::custom)?;
        let eps: BigInt = eps.parse().map_err(D::Error::custom)?;
        Ok(ExactWeight::new(base, eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(a: i64, b: i64) -> ExactWeight {
        ExactWeight::new(a, b)
    }

    #[test]
    fn add_examples() {
        assert_eq!(w(7, 0) + w(0, -1), w(7, -1));
        assert_eq!(w(13, -4) + w(0, 0), w(13, -4));
        assert_eq!(w(-8, 0) + w(8, 0), w(0, 0));
    }

    #[test]
    fn cmp_examples() {
        assert!(w(7, -1) < w(7, 0));
        assert!(w(7, -1000) > w(6, 0));
        assert_eq!(w(0, 0).cmp(&w(0, 0)), Ordering::Equal);
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let three = BigInt::from(3);
        let big = ExactWeight::int(7).scale(&num_traits::pow(three, 400));
        assert!(big.clone() + big.clone() > big);
        assert_eq!((big.clone() - big).is_zero(), true);
    }

    #[test]
    fn parts() {
        assert_eq!(w(-5, 2).positive_part(), w(0, 0));
        assert_eq!(w(-5, 2).negative_part(), w(5, -2));
        assert_eq!(w(0, 3).positive_part(), w(0, 3));
    }

    #[test]
    fn display() {
        assert_eq!(w(7, 0).to_string(), "7");
        assert_eq!(w(7, -1).to_string(), "7-ε");
        assert_eq!(w(-3, 4).to_string(), "-3+4ε");
        assert_eq!(w(0, -2).to_string(), "-2ε");
    }

    #[test]
    fn json_is_decimal_string_pair() {
        let s = serde_json::to_string(&w(-12, 3)).unwrap();
        assert_eq!(s, r#"["-12","3"]"#);
        let back: ExactWeight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w(-12, 3));
        assert!(serde_json::from_str::<ExactWeight>(r#"["x","0"]"#).is_err());
    }

    proptest! {
        #[test]
        fn order_is_lexicographic(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let expected = a.cmp(&c).then(b.cmp(&d));
            prop_assert_eq!(w(a, b).cmp(&w(c, d)), expected);
        }

        #[test]
        fn addition_is_monotone(a in -50i64..50, b in -50i64..50, c in -50i64..50,
                                d in -50i64..50, e in -50i64..50, f in -50i64..50) {
            let (x, y, z) = (w(a, b), w(c, d), w(e, f));
            if x <= y {
                prop_assert!(x.clone() + z.clone() <= y + z);
            }
        }

        #[test]
        fn json_round_trip(a in any::<i64>(), b in any::<i64>()) {
            let x = w(a, b);
            let back: ExactWeight = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
