//! Exact enumeration, construction and verification of the single-element
//! extensions of the clique matroid `M(K_{n+1})`.
//!
//! The crate follows the chain
//! extensions ↔ linear subclasses ↔ linear set families ↔ (scarce case)
//! intersecting antichains, and every link can be checked exhaustively for
//! small `n`:
//!
//! * [`subset`]: subsets of `[n]` as machine words, related triples, the
//!   precedence order and the small-side family.
//! * [`clique`]: the cycle matroid of `K_{n+1}`, flats as vertex partitions,
//!   hyperplanes and the apex map between hyperplanes and subsets.
//! * [`family`]: linear and scarce families, the compression map and exact
//!   counting by pruned depth-first search.
//! * [`antichain`]: antichain predicates and exact independent-set counting.
//! * [`extension`]: modular cuts and the extension matroids they define.
//! * [`bounds`]: the bound exponents and trend tables.

pub mod antichain;
pub mod bounds;
pub mod clique;
pub mod error;
pub mod extension;
pub mod family;
pub mod report;
pub mod run;
pub mod subset;

pub use error::{Error, Result};
pub use report::VerificationReport;
pub use run::RunOptions;
pub use subset::{GroundScale, SubsetWord};
