//! Rationals whose denominator is a power of two.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// `numerator / 2^exponent`, kept canonical: the exponent is nonnegative, and
/// when it is positive the numerator is odd. Zero is `0 / 2^0`. Canonical form
/// makes structural equality coincide with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigInt,
    exponent: u64,
}

impl DyadicRational {
    /// `numerator / 2^exponent` for any signed exponent.
    pub fn new(numerator: BigInt, exponent: i64) -> Self {
        if numerator.is_zero() {
            return Self::zero();
        }
        if exponent <= 0 {
            return DyadicRational { numerator: numerator << exponent.unsigned_abs(), exponent: 0 };
        }
        let twos = numerator.magnitude().trailing_zeros().unwrap_or(0);
        let cancel = twos.min(exponent as u64);
        DyadicRational { numerator: numerator >> cancel, exponent: exponent as u64 - cancel }
    }

    pub fn zero() -> Self {
        DyadicRational { numerator: BigInt::zero(), exponent: 0 }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        DyadicRational { numerator: n.into(), exponent: 0 }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    /// The integer value, if this is one.
    pub fn to_integer(&self) -> Option<&BigInt> {
        self.is_integer().then_some(&self.numerator)
    }

    /// Nearest `f64`; only for display and sanity checks.
    pub fn to_f64(&self) -> f64 {
        let bits = self.numerator.bits();
        // keep 64 significant bits, then scale
        let drop = bits.saturating_sub(64);
        let head = (&self.numerator >> drop).to_f64().unwrap_or(f64::NAN);
        let scale = drop as i64 - self.exponent as i64;
        head * 2f64.powi(scale.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        let den = BigUint::one() << self.exponent;
        let digits = format_ratio(self.numerator.magnitude(), &den, sig);
        if self.numerator.sign() == Sign::Minus {
            format!("-{digits}")
        } else {
            digits
        }
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let e = self.exponent.max(rhs.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &rhs.numerator << (e - rhs.exponent);
        DyadicRational::new(a + b, e as i64)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigUint> for DyadicRational {
    fn from(n: BigUint) -> Self {
        Self::from_integer(BigInt::from(n))
    }
}

impl From<u64> for DyadicRational {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl PartialEq<BigUint> for DyadicRational {
    fn eq(&self, other: &BigUint) -> bool {
        self.is_integer()
            && !self.numerator.is_negative()
            && self.numerator.magnitude() == other
    }
}

impl PartialOrd<BigUint> for DyadicRational {
    fn partial_cmp(&self, other: &BigUint) -> Option<Ordering> {
        Some(self.cmp(&DyadicRational::from(other.clone())))
    }
}

/// `num` or `num/2^e`.
impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DyadicRational", 2)?;
        st.serialize_field("exponent", &self.exponent)?;
        st.serialize_field("numerator", &self.numerator.to_string())?;
        st.end()
    }
}

/// Decimal rendering of `num / den` rounded half-up to `sig` significant
/// digits. Plain notation for magnitudes in `[1e-5, 1e21)`, otherwise
/// `d.ddde±x`.
pub fn format_ratio(num: &BigUint, den: &BigUint, sig: usize) -> String {
    assert!(!den.is_zero(), "zero denominator");
    let sig = sig.max(1);
    if num.is_zero() {
        return "0.0".to_owned();
    }
    // decimal exponent d with 10^d <= num/den < 10^(d+1)
    let ten = BigUint::from(10u32);
    let mut d = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ge_pow = |d: i64| -> bool {
        if d >= 0 {
            num >= &(den * ten.pow(d as u32))
        } else {
            &(num * ten.pow((-d) as u32)) >= den
        }
    };
    while !ge_pow(d) {
        d -= 1;
    }
    while ge_pow(d + 1) {
        d += 1;
    }
    // scaled = round(num / den * 10^(sig-1-d))
    let shift = sig as i64 - 1 - d;
    let (n2, d2) = if shift >= 0 {
        (num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), den * ten.pow((-shift) as u32))
    };
    let (q, r) = n2.div_rem(&d2);
    let mut scaled = if &r * 2u32 >= d2 { q + 1u32 } else { q };
    if scaled == ten.pow(sig as u32) {
        scaled /= 10u32;
        d += 1;
    }
    let digits = scaled.to_string();
    let (int_part, frac_part) = if (-5..21).contains(&d) {
        if d >= 0 {
            let d = d as usize;
            let mut int_part = digits.chars().take(d + 1).collect::<String>();
            while int_part.len() < d + 1 {
                int_part.push('0');
            }
            (int_part, digits.chars().skip(d + 1).collect::<String>())
        } else {
            ("0".to_owned(), "0".repeat((-d - 1) as usize) + &digits)
        }
    } else {
        let mantissa = (digits[..1].to_owned(), digits[1..].to_owned());
        let frac = mantissa.1.trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        return format!("{}.{}e{}{}", mantissa.0, frac, if d < 0 { "-" } else { "+" }, d.abs());
    };
    let frac = frac_part.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    format!("{int_part}.{frac}")
}
