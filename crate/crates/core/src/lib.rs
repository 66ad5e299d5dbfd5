//! Finite n-ary groups: verification, retracts, Hosszú–Gluskin forms,
//! actions, covering groups, subgroups and representations.

pub mod action;
pub mod binary;
pub mod budget;
pub mod cmatrix;
pub mod cover;
pub mod error;
pub mod fixtures;
pub mod nary;
pub mod rep;
pub mod report;
pub mod retract_hg;
pub mod structure;

/// Elements of a carrier of order `m` are the indices `0..m`.
pub type Element = usize;

pub use action::{Action, Partition};
pub use binary::{Automorphism, BinaryGroup};
pub use budget::Budget;
pub use cmatrix::CMatrix;
pub use cover::{CoverElement, CoveringGroup};
pub use error::{Error, Result};
pub use nary::NaryGroup;
pub use rep::{Character, Representation};
pub use report::{Failure, VerificationReport};
pub use retract_hg::{hg_construct, HgData};
pub use structure::{CosetPartition, Quotient, Simplicity, SubgroupRef};
