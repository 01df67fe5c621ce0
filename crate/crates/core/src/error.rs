use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A factorial-size enumeration was requested beyond its configured limit.
    #[error("{what}: n = {requested} exceeds the enumeration budget (max {max})")]
    BudgetExceeded {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    #[error("invalid permutation {input:?}: {reason}")]
    InvalidPermutation { input: String, reason: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("elements {0} and {1} are not comparable with {0} <= {1}")]
    Incomparable(usize, usize),

    #[error("element {0} out of range for a poset of size {1}")]
    ElementOutOfRange(usize, usize),

    #[error("poset has no unique minimal element")]
    NoUniqueBottom,

    #[error("poset has no unique maximal element")]
    NoUniqueTop,

    #[error("poset is not ranked")]
    Unranked,

    #[error("invalid rank function: {0}")]
    InvalidRank(String),

    #[error("cover relations contain a cycle")]
    CyclicCovers,

    #[error("pair ({0}, {1}) is not a cover relation: {1} is reachable through a longer path")]
    NotACover(usize, usize),

    #[error("value {0} is not a merge maximum (valid values are 2..={1})")]
    NotAMergeValue(usize, usize),

    #[error("inadmissible Y: {0}")]
    InadmissibleY(String),

    #[error("{0} is not a linear extension of the poset")]
    NotLinearExtension(String),

    #[error("invalid vertex labeling: {0}")]
    InvalidLabeling(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

/// Refuse `requested > max` with [`Error::BudgetExceeded`].
pub(crate) fn check_budget(what: &'static str, requested: usize, max: usize) -> Result<()> {
    if requested > max {
        Err(Error::BudgetExceeded {
            what,
            requested,
            max,
        })
    } else {
        Ok(())
    }
}
