use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group order {order} exceeds the configured cap of {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),

    /// `g * h * g^-1` left the subgroup.
    #[error("subgroup is not normal: conjugating {h} by {g} leaves the subgroup")]
    NotNormal { g: usize, h: usize },

    #[error("group is not nilpotent: the Sylow {prime}-subgroup {sylow:?} is not normal")]
    NotNilpotent { prime: u64, sylow: Vec<usize> },

    #[error("group is not an abelian p-group: {0}")]
    NotAbelianPGroup(String),

    #[error("family is not a lattice: no unique {bound} for nodes {a} and {b}")]
    NotALattice {
        a: usize,
        b: usize,
        bound: &'static str,
    },

    #[error("lattice is not a chain")]
    NotAChain,

    #[error("order set is not closed under divisors: {0} is missing")]
    NotDivisorClosed(u64),

    #[error("automorphism group of order {count} is too large to list (limit {limit})")]
    TooManyAutomorphisms { count: u128, limit: u128 },

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("cannot parse group spec at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("corpus manifest: {0}")]
    Manifest(String),
}
