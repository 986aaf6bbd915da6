//! Union-closed set families: exact size bounds, maximum-chain
//! decompositions, and exhaustive audits on small universes.
//!
//! A family `A` of finite sets is union-closed when `X ∪ Y ∈ A` for all
//! `X, Y ∈ A`. Its universe `U(A)` is the union of its members and its length
//! `ℓ` is one less than the size of its longest chain under inclusion. For
//! such a family with `|U(A)| = n`,
//!
//! ```text
//! |A| <= C(n,0) + C(n,1) + ... + C(n,ℓ)
//! ```
//!
//! with equality only for the family of all subsets of `[n]` with at least
//! `n - ℓ` elements.
//!
//! ```
//! use ucf_core::{bounds, SetFamily};
//!
//! let family = SetFamily::from_lists(&[&[1, 2, 3], &[1, 2], &[1, 3], &[2, 3]])?;
//! assert!(family.is_union_closed());
//! assert_eq!(family.length(), 1);
//!
//! let report = bounds::bound_report(&family)?;
//! assert!(report.theorem1_tight);
//! # Ok::<(), ucf_core::Error>(())
//! ```
//!
//! The guide under `book/` walks through each module; its code blocks are
//! compiled and run as doctests of this crate.

pub mod bounds;
pub mod closure;
pub mod decomposition;
pub mod dyadic;
pub mod enumeration;
mod error;
pub mod family;
pub mod set;
pub mod ucf;

pub use closure::union_closure;
pub use decomposition::{Decomposition, Verification};
pub use dyadic::DyadicRational;
pub use enumeration::{AuditMode, AuditReport};
pub use error::{Error, Result};
pub use family::{Chain, ElementSplit, SetFamily};
pub use set::ElementSet;

// Every chapter of the guide is compiled as a doctest so its snippets stay in
// sync with the code.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/auditing.md")]
    mod auditing {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
