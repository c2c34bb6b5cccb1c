//! Finite groups built from a small spec language, with subset calculus.

mod classes;
mod finite;
mod hom;
mod mask;
pub(crate) mod repr;
mod sets;
mod spec;
mod structure;

pub use classes::{conjugacy_classes, ClassPartition};
pub use finite::{build_group, FiniteGroup, DEFAULT_ORDER_CAP, TABLE_LIMIT};
pub use hom::{surject_onto_prime_cyclic, Homomorphism};
pub use mask::SubsetMask;
pub use spec::{sl_order, CocycleSource, GroupSpec, NormalSource};
pub use structure::{StructureReport, StructureSummary};
pub(crate) use repr::split_top as split_top_level;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("subsets belong to different groups")]
    GroupMismatch,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is trivial")]
    TrivialGroup,
    #[error("cannot read element {text:?}: {reason}")]
    BadElement { text: String, reason: String },
    #[error("subset is not a normal subgroup")]
    NotNormalSubgroup,
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}
