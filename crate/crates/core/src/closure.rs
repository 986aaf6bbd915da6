//! Smallest union-closed superfamily of a generator family.
//!
//! Two independent routes are provided. [`closure_fixpoint`] repeatedly
//! unions new sets against everything found so far until nothing new appears.
//! [`closure_dense`] works on a bitmap over the subsets of the universe: a set
//! `X` is in the closure exactly when the union of the generators below `X`
//! is `X` itself. [`union_closure`] picks whichever is cheaper.

use std::collections::HashSet;

use crate::family::{SetFamily, MAX_MATERIALIZED_N};
use crate::set::ElementSet;

/// Returns the smallest union-closed family containing every generator.
pub fn union_closure(generators: &SetFamily) -> SetFamily {
    let k = generators.n();
    let g = generators.len() as u64;
    if k <= 12 || (k <= MAX_MATERIALIZED_N && g.saturating_mul(g) >= 1u64 << k) {
        closure_dense(generators)
    } else {
        closure_fixpoint(generators)
    }
}

/// Semi-naive fixpoint: each round unions only the sets discovered in the
/// previous round against all sets known so far.
pub fn closure_fixpoint(generators: &SetFamily) -> SetFamily {
    let mut all: Vec<ElementSet> = generators.members().to_vec();
    let mut seen: HashSet<ElementSet> = all.iter().copied().collect();
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &f in &frontier {
            for &a in &all {
                let u = f.union(a);
                if seen.insert(u) {
                    next.push(u);
                }
            }
        }
        all.extend_from_slice(&next);
        frontier = next;
    }
    all.sort_unstable();
    SetFamily::from_sorted(all)
}

/// Bitmap route over the `2^k` subsets of a `k`-element universe.
///
/// # Panics
///
/// When the universe has more than 24 elements.
pub fn closure_dense(generators: &SetFamily) -> SetFamily {
    let universe = generators.universe();
    let k = universe.len();
    assert!(k <= MAX_MATERIALIZED_N, "dense closure needs a universe of at most 24 elements");
    let positions: Vec<u32> = universe.elements().map(|e| e - 1).collect();
    let compress = |s: ElementSet| -> usize {
        positions
            .iter()
            .enumerate()
            .filter(|&(_, &p)| s.bits() >> p & 1 == 1)
            .fold(0usize, |acc, (i, _)| acc | 1 << i)
    };
    let expand = |c: usize| -> ElementSet {
        let bits = positions
            .iter()
            .enumerate()
            .filter(|&(i, _)| c >> i & 1 == 1)
            .fold(0u64, |acc, (_, &p)| acc | 1 << p);
        ElementSet::from_bits_unchecked(bits)
    };

    // below[X] = union of all generators contained in X
    let size = 1usize << k;
    let mut below = vec![0u32; size];
    for &g in generators {
        let c = compress(g);
        below[c] = c as u32;
    }
    for bit in 0..k {
        let b = 1usize << bit;
        for x in 0..size {
            if x & b != 0 {
                below[x] |= below[x ^ b];
            }
        }
    }

    let mut members = Vec::new();
    if generators.contains(ElementSet::EMPTY) {
        members.push(ElementSet::EMPTY);
    }
    members.extend(
        (1..size)
            .filter(|&x| below[x] as usize == x)
            .map(expand),
    );
    // expansion is monotone, so order is preserved
    SetFamily::from_sorted(members)
}
