pub mod alpha;
pub mod automorphism;
pub mod cells;
pub mod census;
pub mod checks;
pub mod complex;
pub mod decomposition;
pub mod enumerator;
pub mod error;
pub mod export;
pub mod group;
pub mod oracles;
pub mod parallel;
pub mod schlafli;
pub mod unionfind;

pub use census::{analyze, census, Analysis, Census, CensusOptions};
pub use error::{Error, Result};
pub use group::{Group, Homomorphism, Perm};
