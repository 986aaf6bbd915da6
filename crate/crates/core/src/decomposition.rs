//! Maximum-chain decomposition of a union-closed family.
//!
//! Given a maximum chain `C_1 ⊋ C_2 ⊋ ... ⊋ C_{ℓ+1}` with `C_1 = U(A)`, block
//! `i` (for `1 <= i <= ℓ`) has difference mask `Δ_i = C_i ∖ C_{i+1}` and
//!
//! * `𝒞_i`: members containing `Δ_i` and disjoint from `Δ_1 ∪ ... ∪ Δ_{i-1}`;
//! * `𝒟_i`: the members of `𝒞_i` with `Δ_i` removed.
//!
//! The blocks partition `A ∖ {C_{ℓ+1}}`, so `|A| = 1 + Σ |𝒟_i|`. Every `𝒟_i`
//! with `C_{i+1} ≠ ∅` is union-closed, has a universe of at most `n - i`
//! elements and length at most `ℓ`.

use crate::error::{Error, Result};
use crate::family::{Chain, SetFamily};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// `C_i ∖ C_{i+1}`.
    pub diff: ElementSet,
    pub c_family: SetFamily,
    pub d_family: SetFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub chain: Chain,
    pub blocks: Vec<Block>,
    /// The bottom of the chain, `C_{ℓ+1}`. Not necessarily empty.
    pub residual: ElementSet,
}

/// Outcome of [`verify_decomposition`]. A `false` flag means the input
/// falsifies the corresponding statement; nothing here panics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verification {
    /// The `𝒞_i` are pairwise disjoint and cover `A ∖ {C_{ℓ+1}}`.
    pub partition_ok: bool,
    /// `1 + Σ |𝒟_i| = |A|`.
    pub size_ok: bool,
    /// Every `𝒟_i` with `C_{i+1} ≠ ∅` is union-closed.
    pub closure_ok: bool,
    /// `|U(𝒟_i)| <= n - i` and `ℓ(𝒟_i) <= ℓ` for every block.
    pub shrink_ok: bool,
    /// 1-based indices of blocks whose closure check was skipped because
    /// `C_{i+1} = ∅`.
    pub closure_skipped: Vec<usize>,
}

impl Verification {
    pub fn all_ok(&self) -> bool {
        self.partition_ok && self.size_ok && self.closure_ok && self.shrink_ok
    }
}

/// A longest chain from the universe downwards. At each step the
/// numerically smallest successor that still lies on a longest path is taken.
pub fn max_chain(family: &SetFamily) -> Result<Chain> {
    if let Some((a, b)) = family.closure_violation() {
        return Err(Error::NotUnionClosed { a, b });
    }
    let members = family.members();
    let heights = family.chain_heights();
    // the universe is the largest mask
    let mut i = members.len() - 1;
    let mut sets = vec![members[i]];
    while heights[i] > 1 {
        i = (0..i)
            .find(|&j| heights[j] == heights[i] - 1 && members[j].is_proper_subset(members[i]))
            .expect("a member of height h > 1 has a subset of height h - 1");
        sets.push(members[i]);
    }
    Chain::new(sets)
}

pub fn build_decomposition(family: &SetFamily, chain: &Chain) -> Result<Decomposition> {
    if let Some((a, b)) = family.closure_violation() {
        return Err(Error::NotUnionClosed { a, b });
    }
    let ell = family.length() as usize;
    if chain.len() != ell + 1 {
        return Err(Error::InvalidChain(format!(
            "chain has {} sets but a maximum chain has {}",
            chain.len(),
            ell + 1
        )));
    }
    if chain.top() != family.universe() {
        return Err(Error::InvalidChain(format!(
            "chain starts at {} instead of the universe {}",
            chain.top(),
            family.universe()
        )));
    }
    if let Some(&s) = chain.sets().iter().find(|&&s| !family.contains(s)) {
        return Err(Error::InvalidChain(format!("{s} is not a member")));
    }

    let mut blocks = Vec::with_capacity(ell);
    let mut earlier = ElementSet::EMPTY;
    for w in chain.sets().windows(2) {
        let diff = w[0].difference(w[1]);
        let c: Vec<ElementSet> = family
            .iter()
            .copied()
            .filter(|x| diff.is_subset(*x) && x.is_disjoint(earlier))
            .collect();
        // every member contains diff, so removing it preserves order
        let d = c.iter().map(|x| x.difference(diff)).collect();
        blocks.push(Block {
            diff,
            c_family: SetFamily::from_sorted(c),
            d_family: SetFamily::from_sorted(d),
        });
        earlier = earlier.union(diff);
    }
    Ok(Decomposition { chain: chain.clone(), blocks, residual: chain.bottom() })
}

pub fn verify_decomposition(family: &SetFamily, d: &Decomposition) -> Verification {
    let n = family.n() as usize;
    let ell = family.length();

    let mut covered: Vec<ElementSet> =
        d.blocks.iter().flat_map(|b| b.c_family.iter().copied()).collect();
    let total = covered.len();
    covered.sort_unstable();
    covered.dedup();
    let rest: Vec<ElementSet> =
        family.iter().copied().filter(|&s| s != d.residual).collect();
    let partition_ok = covered.len() == total && covered == rest;

    let size_ok = 1 + d.blocks.iter().map(|b| b.d_family.len()).sum::<usize>() == family.len();

    let mut closure_ok = true;
    let mut closure_skipped = Vec::new();
    let mut shrink_ok = true;
    for (idx, b) in d.blocks.iter().enumerate() {
        let i = idx + 1;
        if d.chain.sets()[i].is_empty() {
            closure_skipped.push(i);
        } else if !b.d_family.is_union_closed() {
            closure_ok = false;
        }
        let u = b.d_family.universe().len() as usize;
        if u + i > n || b.d_family.length() > ell {
            shrink_ok = false;
        }
    }

    Verification { partition_ok, size_ok, closure_ok, shrink_ok, closure_skipped }
}

/// Chain, blocks and verification in one call.
pub fn decompose(family: &SetFamily) -> Result<(Decomposition, Verification)> {
    let chain = max_chain(family)?;
    let d = build_decomposition(family, &chain)?;
    let v = verify_decomposition(family, &d);
    Ok((d, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::union_closure;
    use proptest::prelude::*;

    fn fam(lists: &[&[u32]]) -> SetFamily {
        SetFamily::from_lists(lists).unwrap()
    }

    fn set(elems: &[u32]) -> ElementSet {
        ElementSet::from_elements(elems.iter().copied()).unwrap()
    }

    #[test]
    fn max_chain_examples() {
        assert_eq!(max_chain(&fam(&[&[1]])).unwrap().sets(), &[set(&[1])]);
        assert_eq!(max_chain(&fam(&[&[1], &[]])).unwrap().sets(), &[set(&[1]), ElementSet::EMPTY]);
        let top = SetFamily::top_layers(3, 1).unwrap();
        assert_eq!(max_chain(&top).unwrap().sets(), &[set(&[1, 2, 3]), set(&[1, 2])]);
        assert!(matches!(max_chain(&fam(&[&[1], &[2]])), Err(Error::NotUnionClosed { .. })));
    }

    #[test]
    fn top_layers_block() {
        let top = SetFamily::top_layers(3, 1).unwrap();
        let chain = max_chain(&top).unwrap();
        let d = build_decomposition(&top, &chain).unwrap();
        assert_eq!(d.blocks.len(), 1);
        let b = &d.blocks[0];
        assert_eq!(b.diff, set(&[3]));
        assert_eq!(b.c_family, fam(&[&[1, 2, 3], &[1, 3], &[2, 3]]));
        assert_eq!(b.d_family, fam(&[&[1, 2], &[1], &[2]]));
        assert_eq!(d.residual, set(&[1, 2]));
        let v = verify_decomposition(&top, &d);
        assert!(v.all_ok());
        assert!(v.closure_skipped.is_empty());
    }

    #[test]
    fn base_case_block() {
        let f = fam(&[&[1], &[]]);
        let (d, v) = decompose(&f).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].diff, set(&[1]));
        assert_eq!(d.blocks[0].c_family, fam(&[&[1]]));
        assert_eq!(d.blocks[0].d_family, SetFamily::derived(vec![ElementSet::EMPTY]));
        assert_eq!(d.residual, ElementSet::EMPTY);
        assert!(v.size_ok && v.all_ok());
        assert_eq!(v.closure_skipped, vec![1]);
    }

    #[test]
    fn length_zero_has_no_blocks() {
        let f = fam(&[&[1]]);
        let (d, v) = decompose(&f).unwrap();
        assert!(d.blocks.is_empty());
        assert_eq!(d.residual, set(&[1]));
        assert!(v.all_ok());
    }

    #[test]
    fn rejects_bad_chains() {
        let top = SetFamily::top_layers(3, 2).unwrap();
        let short = Chain::new(vec![set(&[1, 2, 3]), set(&[1, 2])]).unwrap();
        assert!(matches!(build_decomposition(&top, &short), Err(Error::InvalidChain(_))));
        let not_top = Chain::new(vec![set(&[1, 2]), set(&[1]), ElementSet::EMPTY]).unwrap();
        assert!(build_decomposition(&top, &not_top).is_err());
        let foreign = Chain::new(vec![set(&[1, 2, 3]), set(&[1, 2]), ElementSet::EMPTY]).unwrap();
        assert!(build_decomposition(&top, &foreign).is_err());
    }

    #[test]
    fn verification_reports_falsified_partition() {
        let f = SetFamily::top_layers(3, 1).unwrap();
        let (mut d, _) = decompose(&f).unwrap();
        d.blocks[0].d_family = SetFamily::derived(vec![set(&[1])]);
        d.blocks[0].c_family = SetFamily::derived(vec![set(&[1, 3])]);
        let v = verify_decomposition(&f, &d);
        assert!(!v.partition_ok && !v.size_ok);
    }

    fn union_closed_family() -> impl Strategy<Value = SetFamily> {
        (1u32..=5).prop_flat_map(|n| {
            prop::collection::btree_set(0u64..(1 << n), 1..10).prop_filter_map(
                "needs a nonempty set",
                |s| {
                    let g = SetFamily::new(
                        s.into_iter().map(|b| ElementSet::from_bits(b).unwrap()),
                    )
                    .ok()?;
                    Some(union_closure(&g))
                },
            )
        })
    }

    proptest! {
        #[test]
        fn decomposition_holds(f in union_closed_family()) {
            let chain = max_chain(&f).unwrap();
            prop_assert_eq!(chain.len() as u32, f.length() + 1);
            prop_assert_eq!(chain.top(), f.universe());
            prop_assert_eq!(&max_chain(&f).unwrap(), &chain);

            let d = build_decomposition(&f, &chain).unwrap();
            let v = verify_decomposition(&f, &d);
            prop_assert!(v.all_ok(), "{:?} on {:?}", v, f);

            let mut earlier = ElementSet::EMPTY;
            for (i, b) in d.blocks.iter().enumerate() {
                let c = chain.sets();
                prop_assert_eq!(b.diff, c[i].difference(c[i + 1]));
                prop_assert!(!b.diff.is_empty());
                prop_assert!(b.diff.is_disjoint(earlier));
                for &x in &b.c_family {
                    prop_assert!(b.diff.is_subset(x) && x.is_disjoint(earlier));
                }
                prop_assert!(b.c_family.contains(c[i]));
                prop_assert!(b.d_family.contains(c[i + 1]));
                prop_assert_eq!(b.c_family.len(), b.d_family.len());
                earlier = earlier.union(b.diff);
            }
        }
    }
}
