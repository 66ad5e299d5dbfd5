use thiserror::Error;

use crate::report::VerificationReport;
use crate::Element;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("element index {index} out of range for carrier of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("sequence of length {len} cannot be folded by an operation of arity {arity}")]
    InvalidLength { len: usize, arity: usize },

    #[error("invalid arity {0}: n-ary groups need n >= 3")]
    InvalidArity(usize),

    #[error("table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },

    #[error("dense table of {order}^{arity} entries exceeds the 2^24 limit")]
    TableTooLarge { order: usize, arity: usize },

    #[error("not a group: {axiom} fails at {witness:?}")]
    NotAGroup { axiom: &'static str, witness: Vec<Element> },

    #[error("n-ary group axioms fail: {0}")]
    Unverified(VerificationReport),

    #[error("no element is skew to {0}")]
    NoSkew(Element),

    #[error("element {0} has more than one skew candidate")]
    AmbiguousSkew(Element),

    #[error("{0} is not central")]
    NotCentral(Element),

    #[error("not an automorphism: {reason} at {witness:?}")]
    NotAutomorphism {
        reason: &'static str,
        witness: Vec<Element>,
    },

    #[error("Hosszu-Gluskin condition {condition} fails at {witness:?}")]
    HgCondition {
        condition: &'static str,
        witness: Vec<Element>,
    },

    /// A property that holds for every finite n-ary group was found to fail.
    #[error("expected identity `{claim}` fails at {witness:?}")]
    ClaimFailed { claim: &'static str, witness: Vec<Element> },

    #[error("group is not semiabelian")]
    NotSemiabelian,

    #[error("not an n-ary subgroup: {reason} ({witness:?})")]
    NotSubgroup {
        reason: &'static str,
        witness: Vec<Element>,
    },

    #[error("subgroup is not normal: witness {witness:?}")]
    NotNormal { witness: Vec<Element> },

    #[error("element {0} is not in the kernel")]
    NotInKernel(Element),

    #[error("subgroup is not contained in the kernel of the representation")]
    SubgroupNotInKernel,

    #[error("matrix dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("expected {expected} matrices, got {got}")]
    ImageCount { expected: usize, got: usize },

    #[error("not a representation: {0}")]
    NotARepresentation(VerificationReport),

    #[error("subspace is not invariant under the image of {0}")]
    NotInvariant(Element),

    #[error("group has no central element")]
    NoCentralElement,

    #[error("equivalence criterion unavailable: no central element and not semiabelian")]
    CriterionUnavailable,

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed group file: {0}")]
    Format(String),
}
