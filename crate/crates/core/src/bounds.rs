//! Exact evaluation of union-closed family size bounds.
//!
//! Everything here is integer or dyadic-rational arithmetic; no comparison
//! ever goes through a float.
//!
//! * [`theorem1_bound`]: `sum_{i=0}^{ell} C(n, i)`, the bound for a union-closed
//!   family with universe `[n]` and length `ell`.
//! * [`erdos_bound`]: the sum of the `ell + 1` largest binomial coefficients of
//!   `n`, valid for any family.
//! * [`reimer_check`]: `|A| <= 4^(sum |X| / |A|)`, in the exponentiated form
//!   `|A|^|A| <= 4^(sum |X|)`.
//! * [`theta`]: `Θ(x, y, z) = (x^z - 1)/(x - 1) + 2^y (1 - 2^-x)^z`, with the
//!   first term read as the geometric sum `1 + x + ... + x^(z-1)`.
//! * [`p_hat`] and [`theorem2_bound`]: the minimizing depth of `Θ` over `z` and
//!   the resulting upper bound on the first `k + 1` binomial coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::family::SetFamily;

/// Cap on `n` for operations that only evaluate formulas.
pub const MAX_FORMULA_N: u32 = 1000;

fn check_formula_n(n: u32) -> Result<()> {
    if n > MAX_FORMULA_N {
        return Err(Error::UniverseTooLarge { n, max: MAX_FORMULA_N });
    }
    Ok(())
}

/// `C(n, i)`, zero outside `0..=n`.
pub fn binomial(n: u32, i: i64) -> BigUint {
    if i < 0 || i > i64::from(n) {
        return BigUint::zero();
    }
    let i = (i as u32).min(n - i as u32);
    let mut acc = BigUint::one();
    for j in 0..i {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// The whole row `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: u32) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * (n - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

/// `sum_{i=0}^{upto} C(n, i)`; empty (zero) when `upto < 0`.
pub fn binomial_prefix_sum(n: u32, upto: i64) -> BigUint {
    if upto < 0 {
        return BigUint::zero();
    }
    binomial_row(n).into_iter().take(upto as usize + 1).sum()
}

pub fn theorem1_bound(n: u32, ell: u32) -> Result<BigUint> {
    check_formula_n(n)?;
    if ell > n {
        return Err(Error::LengthExceedsUniverse { n, ell });
    }
    Ok(binomial_prefix_sum(n, i64::from(ell)))
}

/// Walks outward from `floor(n/2)`, taking the lower index first on ties.
pub fn erdos_bound(n: u32, ell: u32) -> Result<BigUint> {
    check_formula_n(n)?;
    if ell > n {
        return Err(Error::LengthExceedsUniverse { n, ell });
    }
    let row = binomial_row(n);
    let mid = (n / 2) as i64;
    let (mut lo, mut hi) = (mid, mid + 1);
    let mut sum = BigUint::zero();
    for _ in 0..=ell {
        let take_lo = match (lo >= 0, hi <= n as i64) {
            (true, true) => row[lo as usize] >= row[hi as usize],
            (l, _) => l,
        };
        if take_lo {
            sum += &row[lo as usize];
            lo -= 1;
        } else {
            sum += &row[hi as usize];
            hi += 1;
        }
    }
    Ok(sum)
}

/// Whether `|A|^|A| <= 4^(sum of member sizes)`.
pub fn reimer_check(family: &SetFamily) -> bool {
    reimer_holds(family.len() as u64, family.total_size())
}

/// `m^m <= 2^(2 * total)`, decided exactly.
pub fn reimer_holds(m: u64, total: u64) -> bool {
    let rhs_log = 2 * u128::from(total);
    if m <= 1 {
        return true;
    }
    if m.is_power_of_two() {
        return u128::from(m.trailing_zeros()) * u128::from(m) <= rhs_log;
    }
    // 2^((b-1)m) < m^m < 2^(bm) with b the bit length of m
    let b = u128::from(64 - m.leading_zeros());
    if b * u128::from(m) <= rhs_log {
        return true;
    }
    if (b - 1) * u128::from(m) >= rhs_log {
        return false;
    }
    // m^m is not a power of two, so it never equals 2^rhs_log: a tight
    // enough bracket always decides
    let lower = bracketed_pow(m, false);
    if greater_than_pow2(&lower, rhs_log) {
        return false;
    }
    let upper = bracketed_pow(m, true);
    if !greater_than_pow2(&upper, rhs_log) {
        return true;
    }
    BigUint::from(m).pow(m as u32) <= BigUint::one() << rhs_log
}

const BRACKET_BITS: u64 = 256;

/// `m^m` as `mantissa * 2^shift`, rounded down or up at every step.
fn bracketed_pow(m: u64, round_up: bool) -> (BigUint, u128) {
    let trim = |(mant, shift): (BigUint, u128)| -> (BigUint, u128) {
        let bits = mant.bits();
        if bits <= BRACKET_BITS {
            return (mant, shift);
        }
        let drop = bits - BRACKET_BITS;
        let mut t = mant >> drop;
        if round_up {
            t += 1u32;
        }
        (t, shift + u128::from(drop))
    };
    let mut acc = (BigUint::one(), 0u128);
    for bit in (0..64 - m.leading_zeros()).rev() {
        acc = trim((&acc.0 * &acc.0, acc.1 * 2));
        if m >> bit & 1 == 1 {
            acc = trim((acc.0 * m, acc.1));
        }
    }
    acc
}

fn greater_than_pow2((mant, shift): &(BigUint, u128), exp: u128) -> bool {
    // mant * 2^shift > 2^exp
    if *shift > exp {
        return !mant.is_zero();
    }
    let rest = exp - shift;
    let bits = u128::from(mant.bits());
    if bits != rest + 1 {
        return bits > rest + 1;
    }
    *mant > BigUint::one() << rest
}

/// `1 + x + ... + x^(z-1)`: `z` when `x = 1`, zero when `z = 0`.
pub fn geometric_sum(x: u64, z: u32) -> BigUint {
    let mut sum = BigUint::zero();
    let mut term = BigUint::one();
    for _ in 0..z {
        sum += &term;
        term *= x;
    }
    sum
}

/// `Θ(x, y, z) = geometric_sum(x, z) + (2^x - 1)^z * 2^(y - x z)`.
pub fn theta(x: u32, y: u32, z: u32) -> DyadicRational {
    let geometric = DyadicRational::from(geometric_sum(u64::from(x), z));
    let base = (BigUint::one() << x) - 1u32;
    let decay = DyadicRational::new(
        BigInt::from(base.pow(z)),
        i64::from(x) * i64::from(z) - i64::from(y),
    );
    geometric + decay
}

fn check_k(n: u32, k: u32) -> Result<()> {
    check_formula_n(n)?;
    if k < 1 || k > n {
        return Err(Error::InvalidK { n, k });
    }
    Ok(())
}

/// `Θ(k, n, p + 1) <= Θ(k, n, p)` holds exactly when
/// `(k 2^k)^p <= 2^(n-k) (2^k - 1)^p`; this evaluates the right-hand test.
pub fn theta_step_criterion(n: u32, k: u32, p: u32) -> bool {
    let lhs = (BigUint::from(k) << k).pow(p);
    let decay = ((BigUint::one() << k) - 1u32).pow(p);
    if k <= n {
        lhs <= decay << (n - k)
    } else {
        lhs << (k - n) <= decay
    }
}

/// `floor((n - k) / log2(k / (1 - 2^-k))) + 1`, found as one more than the
/// largest `p` with `(k 2^k)^p <= 2^(n-k) (2^k - 1)^p`.
pub fn p_hat(n: u32, k: u32) -> Result<u32> {
    check_k(n, k)?;
    let step_lhs = BigUint::from(k) << k;
    let step_rhs = (BigUint::one() << k) - 1u32;
    let mut lhs = BigUint::one();
    let mut rhs = BigUint::one() << (n - k);
    let mut p = 0u32;
    loop {
        lhs *= &step_lhs;
        rhs *= &step_rhs;
        if lhs > rhs {
            return Ok(p + 1);
        }
        p += 1;
    }
}

/// `Θ(k, n, p_hat(n, k))`, an upper bound on `sum_{i=0}^{k} C(n, i)`.
pub fn theorem2_bound(n: u32, k: u32) -> Result<DyadicRational> {
    Ok(theta(k, n, p_hat(n, k)?))
}

/// Minimum of `Θ(k, n, p)` over `0 <= p <= p_max`, reporting the smallest
/// minimizing `p`.
pub fn theta_min_scan(n: u32, k: u32, p_max: u32) -> Result<(u32, DyadicRational)> {
    let need = p_hat(n, k)? + 2;
    if p_max < need {
        return Err(Error::ScanTooShort { p_max, need });
    }
    let mut best = (0, theta(k, n, 0));
    for p in 1..=p_max {
        let v = theta(k, n, p);
        if v < best.1 {
            best = (p, v);
        }
    }
    Ok(best)
}

/// `sum_{i=0}^{k} C(n,i) = sum_{i=0}^{m} C(m,i) sum_{j=0}^{k-i} C(n-m,j)`,
/// evaluated exactly on both sides.
pub fn chain_identity_check(n: u32, k: u32, m: u32) -> Result<bool> {
    check_formula_n(n)?;
    if k > n || m > n {
        return Err(Error::IdentityRange { n, k, m });
    }
    let lhs = binomial_prefix_sum(n, i64::from(k));
    let rest = binomial_row(n - m);
    let mut tail = Vec::with_capacity(rest.len());
    let mut acc = BigUint::zero();
    for c in &rest {
        acc += c;
        tail.push(acc.clone());
    }
    let inner = |upto: i64| -> BigUint {
        if upto < 0 {
            BigUint::zero()
        } else {
            tail[(upto as usize).min(tail.len() - 1)].clone()
        }
    };
    let rhs: BigUint = binomial_row(m)
        .iter()
        .enumerate()
        .map(|(i, c)| c * inner(i64::from(k) - i as i64))
        .sum();
    Ok(lhs == rhs)
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// All bounds evaluated at a union-closed family's own `n` and length.
///
/// Big integers serialize as decimal strings. `p_hat` and `theta_at_phat`
/// are absent for length 0, where the depth formula needs `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub ell: u32,
    #[serde(serialize_with = "ser_big")]
    pub erdos: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub family_size: BigUint,
    pub member_total: u64,
    pub n: u32,
    pub p_hat: Option<u32>,
    pub reimer_holds: bool,
    pub theta_at_phat: Option<DyadicRational>,
    #[serde(serialize_with = "ser_big")]
    pub theorem1: BigUint,
    pub theorem1_tight: bool,
}

impl BoundReport {
    /// Whether the family respects every bound in the report.
    pub fn all_hold(&self) -> bool {
        self.family_size <= self.theorem1
            && self.theorem1 <= self.erdos
            && self.reimer_holds
            && self
                .theta_at_phat
                .as_ref()
                .is_none_or(|t| DyadicRational::from(self.family_size.clone()) <= *t)
    }
}

pub fn bound_report(family: &SetFamily) -> Result<BoundReport> {
    if let Some((a, b)) = family.closure_violation() {
        return Err(Error::NotUnionClosed { a, b });
    }
    let n = family.n();
    let ell = family.length();
    let family_size = BigUint::from(family.len());
    let theorem1 = theorem1_bound(n, ell)?;
    let (p_hat, theta_at_phat) = if ell >= 1 {
        let p = p_hat(n, ell)?;
        (Some(p), Some(theta(ell, n, p)))
    } else {
        (None, None)
    };
    Ok(BoundReport {
        ell,
        erdos: erdos_bound(n, ell)?,
        theorem1_tight: family_size == theorem1,
        family_size,
        member_total: family.total_size(),
        n,
        p_hat,
        reimer_holds: reimer_check(family),
        theta_at_phat,
        theorem1,
    })
}
