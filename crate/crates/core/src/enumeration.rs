//! Generating union-closed families with universe exactly `[n]` and auditing
//! every size bound and decomposition property over them.
//!
//! Exhaustive mode walks all subfamilies of `2^[n] ∖ {[n]}` with `[n]` forced
//! in (a union-closed family always contains its universe), which is
//! `2^(2^n - 1)` candidates: 32768 at `n = 4`, and `2^31` at `n = 5`, so
//! exhaustive mode stops at 4. Sampled mode draws random generators and closes
//! them under union; every sample has its own ChaCha stream keyed by
//! `(seed, index)`, so results do not depend on how work is split.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    binomial_prefix_sum, p_hat, reimer_check, theorem1_bound, theta,
};
use crate::closure::union_closure;
use crate::decomposition::decompose;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::family::{SetFamily, MAX_MATERIALIZED_N};
use crate::set::{low_bits, ElementSet};

pub const MAX_EXHAUSTIVE_N: u32 = 4;

/// Generator densities; each sample picks one uniformly.
pub const DENSITIES: [f64; 10] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

fn check_exhaustive(n: u32) -> Result<()> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::ExhaustiveTooLarge { n, max: MAX_EXHAUSTIVE_N });
    }
    Ok(())
}

fn check_sampled(n: u32) -> Result<()> {
    if n == 0 || n > MAX_MATERIALIZED_N {
        return Err(Error::UniverseTooLarge { n, max: MAX_MATERIALIZED_N });
    }
    Ok(())
}

/// Number of exhaustive candidates for `n`.
pub fn exhaustive_candidates(n: u32) -> Result<u64> {
    check_exhaustive(n)?;
    Ok(1u64 << ((1u64 << n) - 1))
}

/// Candidate `index`: `[n]` plus every mask `j < 2^n - 1` whose bit is set in
/// `index`. `None` when that family is not union-closed.
pub fn exhaustive_family(n: u32, index: u64) -> Option<SetFamily> {
    let full = low_bits(n);
    let mut members: Vec<ElementSet> = (0..full)
        .filter(|j| index >> j & 1 == 1)
        .map(ElementSet::from_bits_unchecked)
        .collect();
    members.push(ElementSet::from_bits_unchecked(full));
    let f = SetFamily::from_sorted(members);
    f.is_union_closed().then_some(f)
}

/// Visits every union-closed family with universe exactly `[n]`, once each,
/// in ascending candidate order. Returns the number visited.
pub fn enumerate_exhaustive<F: FnMut(&SetFamily)>(n: u32, mut visitor: F) -> Result<u64> {
    let total = exhaustive_candidates(n)?;
    let mut visited = 0;
    for index in 0..total {
        if let Some(f) = exhaustive_family(n, index) {
            visitor(&f);
            visited += 1;
        }
    }
    Ok(visited)
}

/// Sample `index` of the stream keyed by `seed`.
///
/// A density is drawn from [`DENSITIES`]; each nonempty proper subset of
/// `[n]` joins the generators with that probability, `∅` with probability
/// 1/2, and `[n]` always. The result is the union closure.
pub fn sample_family(n: u32, seed: u64, index: u64) -> Result<SetFamily> {
    check_sampled(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let density = DENSITIES[rng.gen_range(0..DENSITIES.len())];
    let full = low_bits(n);
    let mut generators = Vec::new();
    if rng.gen_bool(0.5) {
        generators.push(ElementSet::EMPTY);
    }
    for mask in 1..full {
        if rng.gen_bool(density) {
            generators.push(ElementSet::from_bits_unchecked(mask));
        }
    }
    generators.push(ElementSet::from_bits_unchecked(full));
    Ok(union_closure(&SetFamily::from_sorted(generators)))
}

/// Visits `count` sampled families in index order.
pub fn sample_random<F: FnMut(&SetFamily)>(
    n: u32,
    count: u64,
    seed: u64,
    mut visitor: F,
) -> Result<u64> {
    check_sampled(n)?;
    for index in 0..count {
        visitor(&sample_family(n, seed, index)?);
    }
    Ok(count)
}

/// Tallies from an audit run. Every count except `families_checked` and
/// `theorem1_equalities` is expected to be zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: u32,
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub families_checked: u64,
    pub theorem1_violations: u64,
    pub theorem1_equalities: u64,
    /// Tight families that are not the top-layers family.
    pub equality_mismatches: u64,
    pub corollary21_violations: u64,
    pub decomposition_failures: u64,
    pub theorem2_violations: u64,
    pub reimer_violations: u64,
}

impl AuditReport {
    fn empty(n: u32, mode: AuditMode) -> Self {
        let (mode, seed) = match mode {
            AuditMode::Exhaustive => ("exhaustive", None),
            AuditMode::Sampled { seed, .. } => ("sampled", Some(seed)),
        };
        AuditReport { n, mode, seed, ..Default::default() }
    }

    fn merge(mut self, other: &Tally) -> Self {
        self.families_checked += other.families_checked;
        self.theorem1_violations += other.theorem1_violations;
        self.theorem1_equalities += other.theorem1_equalities;
        self.equality_mismatches += other.equality_mismatches;
        self.corollary21_violations += other.corollary21_violations;
        self.decomposition_failures += other.decomposition_failures;
        self.theorem2_violations += other.theorem2_violations;
        self.reimer_violations += other.reimer_violations;
        self
    }

    pub fn violations(&self) -> u64 {
        self.theorem1_violations
            + self.equality_mismatches
            + self.corollary21_violations
            + self.decomposition_failures
            + self.theorem2_violations
            + self.reimer_violations
    }

    pub fn all_clear(&self) -> bool {
        self.families_checked > 0 && self.violations() == 0
    }

    pub const CSV_HEADER: &'static str = "n,mode,seed,families_checked,theorem1_violations,\
        theorem1_equalities,equality_mismatches,corollary21_violations,\
        decomposition_failures,theorem2_violations,reimer_violations";

    pub fn csv_row(&self) -> String {
        let mut row = String::new();
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_default();
        write!(
            row,
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.mode,
            seed,
            self.families_checked,
            self.theorem1_violations,
            self.theorem1_equalities,
            self.equality_mismatches,
            self.corollary21_violations,
            self.decomposition_failures,
            self.theorem2_violations,
            self.reimer_violations
        )
        .unwrap();
        row
    }
}

/// Per-worker counts, merged associatively.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub families_checked: u64,
    pub theorem1_violations: u64,
    pub theorem1_equalities: u64,
    pub equality_mismatches: u64,
    pub corollary21_violations: u64,
    pub decomposition_failures: u64,
    pub theorem2_violations: u64,
    pub reimer_violations: u64,
}

impl Tally {
    fn add(mut self, o: Tally) -> Tally {
        self.families_checked += o.families_checked;
        self.theorem1_violations += o.theorem1_violations;
        self.theorem1_equalities += o.theorem1_equalities;
        self.equality_mismatches += o.equality_mismatches;
        self.corollary21_violations += o.corollary21_violations;
        self.decomposition_failures += o.decomposition_failures;
        self.theorem2_violations += o.theorem2_violations;
        self.reimer_violations += o.reimer_violations;
        self
    }
}

/// Runs every check on one union-closed family with universe `[n]`.
pub fn audit_family(f: &SetFamily) -> Tally {
    let n = f.n();
    let ell = f.length();
    let size = num_bigint::BigUint::from(f.len());
    let mut t = Tally { families_checked: 1, ..Default::default() };

    let t1 = theorem1_bound(n, ell).expect("length never exceeds the universe size");
    if size > t1 {
        t.theorem1_violations += 1;
    } else if size == t1 {
        t.theorem1_equalities += 1;
        let matches = SetFamily::top_layers(n, ell).is_ok_and(|top| top == *f);
        if !matches {
            t.equality_mismatches += 1;
        }
    }

    let cap = binomial_prefix_sum(n.saturating_sub(1), i64::from(ell));
    let min_freq = f.element_frequencies().into_values().min().unwrap_or(0);
    if num_bigint::BigUint::from(min_freq) > cap {
        t.corollary21_violations += 1;
    }

    match decompose(f) {
        Ok((_, v)) if v.all_ok() => {}
        _ => t.decomposition_failures += 1,
    }

    if ell >= 1 {
        let size = DyadicRational::from(size);
        let ph = p_hat(n, ell).expect("1 <= ell <= n");
        if (0..=ph).any(|p| size > theta(ell, n, p)) {
            t.theorem2_violations += 1;
        }
    }

    if !reimer_check(f) {
        t.reimer_violations += 1;
    }
    t
}

/// Audits every family produced by `mode` using `threads` workers. The
/// report does not depend on `threads`.
pub fn audit(n: u32, mode: AuditMode, threads: usize) -> Result<AuditReport> {
    let (total, family_at): (u64, Box<dyn Fn(u64) -> Option<SetFamily> + Sync>) = match mode {
        AuditMode::Exhaustive => {
            let total = exhaustive_candidates(n)?;
            (total, Box::new(move |i| exhaustive_family(n, i)))
        }
        AuditMode::Sampled { count, seed } => {
            check_sampled(n)?;
            (count, Box::new(move |i| sample_family(n, seed, i).ok()))
        }
    };
    let run_one = |i: u64| family_at(i).map(|f| audit_family(&f)).unwrap_or_default();

    let tally = if threads <= 1 {
        (0..total).map(run_one).fold(Tally::default(), Tally::add)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..total)
                .into_par_iter()
                .map(run_one)
                .reduce(Tally::default, Tally::add)
        })
    };
    Ok(AuditReport::empty(n, mode).merge(&tally))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_visits_base_families() {
        let mut seen = Vec::new();
        let count = enumerate_exhaustive(1, |f| seen.push(f.clone())).unwrap();
        assert_eq!(count, 2);
        assert_eq!(
            seen,
            vec![
                SetFamily::from_lists(&[&[1]]).unwrap(),
                SetFamily::from_lists(&[&[], &[1]]).unwrap(),
            ]
        );
    }

    #[test]
    fn n2_families_contain_top() {
        let top = ElementSet::full(2).unwrap();
        let count = enumerate_exhaustive(2, |f| assert!(f.contains(top))).unwrap();
        assert_eq!(count, 8);
    }

    #[test]
    fn refuses_large_exhaustive() {
        assert!(matches!(enumerate_exhaustive(5, |_| {}), Err(Error::ExhaustiveTooLarge { .. })));
        assert!(audit(9, AuditMode::Exhaustive, 1).is_err());
        assert!(sample_random(25, 1, 0, |_| {}).is_err());
    }

    #[test]
    fn samples_are_closed_and_replayable() {
        let mut first = Vec::new();
        sample_random(5, 50, 3, |f| first.push(f.clone())).unwrap();
        let mut second = Vec::new();
        sample_random(5, 50, 3, |f| second.push(f.clone())).unwrap();
        assert_eq!(first, second);
        let full = ElementSet::full(5).unwrap();
        for f in &first {
            assert!(f.is_union_closed());
            assert_eq!(f.universe(), full);
        }
        assert!(first.iter().any(|f| f.contains(ElementSet::EMPTY)));
        assert!(first.iter().any(|f| !f.contains(ElementSet::EMPTY)));
    }

    #[test]
    fn audit_n1() {
        let r = audit(1, AuditMode::Exhaustive, 1).unwrap();
        assert_eq!(r.families_checked, 2);
        assert_eq!(r.theorem1_equalities, 2);
        assert!(r.all_clear());
    }

    #[test]
    fn audit_n3_equalities() {
        let r = audit(3, AuditMode::Exhaustive, 1).unwrap();
        assert_eq!(r.theorem1_equalities, 4);
        assert_eq!(r.equality_mismatches, 0);
        assert!(r.all_clear());
    }

    #[test]
    fn threads_do_not_change_report() {
        let a = audit(3, AuditMode::Exhaustive, 1).unwrap();
        let b = audit(3, AuditMode::Exhaustive, 4).unwrap();
        assert_eq!(a, b);
        let mode = AuditMode::Sampled { count: 200, seed: 11 };
        assert_eq!(audit(5, mode, 1).unwrap(), audit(5, mode, 3).unwrap());
    }

    #[test]
    fn audit_flags_a_bad_family() {
        // not union-closed: the decomposition refuses it
        let f = SetFamily::from_lists(&[&[1], &[2], &[1, 2, 3]]).unwrap();
        let t = audit_family(&f);
        assert_eq!(t.decomposition_failures, 1);
    }

    #[test]
    fn csv_row_layout() {
        let r = audit(2, AuditMode::Exhaustive, 1).unwrap();
        assert_eq!(r.csv_row(), "2,exhaustive,,8,0,3,0,0,0,0,0");
        assert_eq!(AuditReport::CSV_HEADER.split(',').count(), r.csv_row().split(',').count());
    }
}
