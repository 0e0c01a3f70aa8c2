use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group is abelian; the complex is empty")]
    Abelian,

    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element {0} is central")]
    CentralElement(usize),

    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("homomorphism is not injective on the commutator subgroup")]
    NotInjectiveOnCommutators,

    #[error("the component/vertex incidence graph is disconnected")]
    DisconnectedIncidenceGraph,

    #[error("identity {name} violated: lhs = {lhs}, rhs = {rhs}")]
    IdentityViolation { name: String, lhs: i64, rhs: i64 },

    #[error("monotonicity violated: {0}")]
    MonotonicityViolation(String),

    #[error("component {component}: polygons with {first} and {second} sides")]
    InconsistentGonality {
        component: usize,
        first: u32,
        second: u32,
    },

    #[error("component {component}: more than two valencies {valencies:?}")]
    MoreThanTwoValencies { component: usize, valencies: Vec<u32> },

    #[error("component {component}: diamond condition fails: {detail}")]
    DiamondViolation { component: usize, detail: String },

    #[error("component {component}: divisibility fails: {detail}")]
    DivisibilityViolation { component: usize, detail: String },

    #[error("no enumerated tesselation matches {0}")]
    NoMatch(String),

    #[error("topological invariant broken: {0}")]
    Topology(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input, as opposed to a broken
    /// mathematical invariant (which indicates an implementation bug).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotAGroup(_)
                | Error::Abelian
                | Error::CapExceeded { .. }
                | Error::InvalidParameter(_)
                | Error::Parse(_)
                | Error::CentralElement(_)
                | Error::NotAHomomorphism(_)
                | Error::NotInjectiveOnCommutators
                | Error::Io { .. }
                | Error::Json(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
