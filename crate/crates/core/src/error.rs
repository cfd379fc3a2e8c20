use thiserror::Error;

/// Errors raised by group construction and the analyses built on top of it.
#[derive(Error, Debug)]
pub enum Error {
    #[error("element id {id} out of range for a group of order {order}")]
    IdOutOfRange { id: usize, order: usize },

    #[error("group order exceeds the enumeration ceiling of {ceiling} elements")]
    SizeCeiling { ceiling: usize },

    #[error("invalid group spec {spec:?}: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cannot read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("sequence has odd length {0}; a symplectic sequence has 2r entries")]
    OddLength(usize),

    #[error("sequence entry {position} is the identity")]
    IdentityInSequence { position: usize },

    #[error("search budget must be positive")]
    ZeroBudget,

    #[error("coset table is not closed")]
    TableNotClosed,

    #[error("map and groups disagree: {0}")]
    MismatchedGroups(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
