//! Set families: universe, union-closedness, length, element splits,
//! top-layer families and element frequencies.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::set::{low_bits, ElementSet};

/// Largest `n` for which constructors materialize whole binomial layers.
pub const MAX_MATERIALIZED_N: u32 = 24;

/// A family of distinct sets, stored in ascending mask order together with
/// the union of its members.
///
/// [`SetFamily::new`] enforces the invariants of an input family: at least one
/// member, at least one nonempty member, no duplicates. Families produced by
/// splitting or stripping (see [`SetFamily::derived`]) may be empty or equal to
/// `{∅}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    members: Vec<ElementSet>,
    universe: ElementSet,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = ElementSet>>(members: I) -> Result<Self> {
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0]));
        }
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if members.iter().all(|s| s.is_empty()) {
            return Err(Error::OnlyEmptySet);
        }
        Ok(Self::from_sorted(members))
    }

    /// Builds a family from element lists, e.g. `&[&[1, 2], &[]]` for `{{1,2}, ∅}`.
    pub fn from_lists(lists: &[&[u32]]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| ElementSet::from_elements(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    /// A derived family: duplicates are merged and no nonempty member is required.
    pub fn derived<I: IntoIterator<Item = ElementSet>>(members: I) -> Self {
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self::from_sorted(members)
    }

    pub(crate) fn from_sorted(members: Vec<ElementSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let universe = members.iter().fold(ElementSet::EMPTY, |u, &s| u.union(s));
        SetFamily { members, universe }
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `U(A)`, the union of all members.
    pub fn universe(&self) -> ElementSet {
        self.universe
    }

    /// Size of the universe.
    pub fn n(&self) -> u32 {
        self.universe.len()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// True when the family has at least one nonempty member.
    pub fn has_nonempty_member(&self) -> bool {
        self.members.last().is_some_and(|s| !s.is_empty())
    }

    pub fn is_union_closed(&self) -> bool {
        self.closure_violation().is_none()
    }

    /// The first pair of members (in mask order) whose union is missing.
    pub fn closure_violation(&self) -> Option<(ElementSet, ElementSet)> {
        let m = &self.members;
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                let u = a.union(b);
                // a ⊆ b or b ⊆ a needs no lookup
                if u != a && u != b && !self.contains(u) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// For every member, the size of the longest chain whose largest set is
    /// that member. Ascending mask order is a topological order of the strict
    /// containment DAG, so one forward pass suffices.
    pub(crate) fn chain_heights(&self) -> Vec<u32> {
        let m = &self.members;
        let mut heights = vec![1u32; m.len()];
        for i in 0..m.len() {
            let mut best = 0;
            for j in 0..i {
                if heights[j] > best && m[j].is_proper_subset(m[i]) {
                    best = heights[j];
                }
            }
            heights[i] = best + 1;
        }
        heights
    }

    /// One less than the size of a largest chain. `{∅}` and the empty family
    /// both have length 0.
    pub fn length(&self) -> u32 {
        self.chain_heights()
            .into_iter()
            .max()
            .map_or(0, |h| h - 1)
    }

    /// Splits on element `x` into the members containing `x`, those members
    /// with `x` removed, and the members avoiding `x`.
    pub fn split_on_element(&self, x: u32) -> Result<ElementSplit> {
        if !self.universe.contains(x) {
            return Err(Error::NotInUniverse { element: x, universe: self.universe });
        }
        let xs = ElementSet::singleton(x)?;
        let (containing, avoiding): (Vec<ElementSet>, Vec<ElementSet>) =
            self.members.iter().partition(|s| s.contains(x));
        // removing x from an ascending list of x-sets keeps it ascending
        let stripped = containing.iter().map(|s| s.difference(xs)).collect();
        Ok(ElementSplit {
            containing: SetFamily::from_sorted(containing),
            stripped: SetFamily::from_sorted(stripped),
            avoiding: SetFamily::from_sorted(avoiding),
        })
    }

    /// All subsets of `[n]` with at least `n - ell` elements.
    pub fn top_layers(n: u32, ell: u32) -> Result<Self> {
        if n == 0 || n > MAX_MATERIALIZED_N {
            return Err(Error::UniverseTooLarge { n, max: MAX_MATERIALIZED_N });
        }
        if ell > n {
            return Err(Error::LengthExceedsUniverse { n, ell });
        }
        let min_size = n - ell;
        let members = (0..=low_bits(n))
            .filter(|b| b.count_ones() >= min_size)
            .map(ElementSet::from_bits_unchecked)
            .collect();
        Ok(Self::from_sorted(members))
    }

    /// For each element of the universe, how many members contain it.
    pub fn element_frequencies(&self) -> BTreeMap<u32, usize> {
        let mut counts = [0usize; 64];
        for s in &self.members {
            for e in s.elements() {
                counts[e as usize] += 1;
            }
        }
        self.universe.elements().map(|e| (e, counts[e as usize])).collect()
    }

    /// Sum of member cardinalities.
    pub fn total_size(&self) -> u64 {
        self.members.iter().map(|s| u64::from(s.len())).sum()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Result of [`SetFamily::split_on_element`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSplit {
    /// Members containing `x`.
    pub containing: SetFamily,
    /// Members containing `x`, with `x` removed.
    pub stripped: SetFamily,
    /// Members not containing `x`.
    pub avoiding: SetFamily,
}

/// Sets ordered by strict inclusion, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    sets: Vec<ElementSet>,
}

impl Chain {
    pub fn new(sets: Vec<ElementSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidChain("a chain needs at least one set".into()));
        }
        if let Some(w) = sets.windows(2).find(|w| !w[1].is_proper_subset(w[0])) {
            return Err(Error::InvalidChain(format!(
                "{} is not a proper subset of {}",
                w[1], w[0]
            )));
        }
        Ok(Chain { sets })
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn top(&self) -> ElementSet {
        self.sets[0]
    }

    pub fn bottom(&self) -> ElementSet {
        self.sets[self.sets.len() - 1]
    }
}
