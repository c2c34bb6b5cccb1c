//! Verification kernels for finite groups, type-A Chevalley generators,
//! thick subsets, permutation factorizations and central extensions.

pub mod arith;
pub mod chevalley;
pub mod cli;
pub mod ext;
pub mod group;
pub mod matrix;
pub mod perm;
pub mod roots;
pub mod thick;
