//! Subsets of `{1, ..., 63}` packed into a single machine word.

use std::fmt;

use crate::error::{Error, Result};

/// Largest element label an [`ElementSet`] can hold.
pub const MAX_ELEMENT: u32 = 63;

/// A finite set of positive integers, element `e` stored in bit `e - 1`.
///
/// Ordering is by the numeric value of the mask. A proper subset always has a
/// strictly smaller mask, so ascending mask order is a linear extension of
/// inclusion.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    /// Wraps a raw mask. Bit 63 is reserved and must be clear.
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits >> MAX_ELEMENT != 0 {
            return Err(Error::ElementOutOfRange(64));
        }
        Ok(ElementSet(bits))
    }

    pub(crate) const fn from_bits_unchecked(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > MAX_ELEMENT {
                return Err(Error::ElementOutOfRange(e as u64));
            }
            bits |= 1 << (e - 1);
        }
        Ok(ElementSet(bits))
    }

    pub fn singleton(e: u32) -> Result<Self> {
        Self::from_elements([e])
    }

    /// `[n] = {1, ..., n}`.
    pub fn full(n: u32) -> Result<Self> {
        if n > MAX_ELEMENT {
            return Err(Error::UniverseTooLarge { n, max: MAX_ELEMENT });
        }
        Ok(ElementSet(low_bits(n)))
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn contains(self, e: u32) -> bool {
        e >= 1 && e <= MAX_ELEMENT && self.0 & (1 << (e - 1)) != 0
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() + 1;
            bits &= bits - 1;
            Some(e)
        })
    }
}

pub(crate) const fn low_bits(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_bit_mapping() {
        let s = ElementSet::from_elements([1, 3]).unwrap();
        assert_eq!(s.bits(), 0b101);
        assert!(s.contains(1) && !s.contains(2) && s.contains(3));
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(ElementSet::EMPTY.to_string(), "∅");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ElementSet::from_elements([0]).is_err());
        assert!(ElementSet::from_elements([64]).is_err());
        assert!(ElementSet::from_elements([63]).is_ok());
        assert!(ElementSet::from_bits(1 << 63).is_err());
        assert!(ElementSet::full(64).is_err());
        assert_eq!(ElementSet::full(63).unwrap().len(), 63);
    }

    #[test]
    fn containment_is_bitwise() {
        let a = ElementSet::from_elements([1, 2]).unwrap();
        let b = ElementSet::from_elements([1, 2, 3]).unwrap();
        assert!(a.is_proper_subset(b));
        assert!(!b.is_subset(a));
        assert!(a.is_subset(a) && !a.is_proper_subset(a));
        assert_eq!(b.difference(a), ElementSet::singleton(3).unwrap());
        assert!(a.bits() < b.bits());
    }
}
