//! Exact-integer VCSP representation and the structural checks that go with it.

mod decomposition;
mod domain;
mod eval;
mod instance;
mod landscape;

pub use decomposition::{check_path_decomposition, PathDecomposition, PathViolation};
pub use domain::DomainSpec;
pub use eval::Hyperedge;
pub use instance::{Assignment, Defect, InstanceMeta, IntRange, ValuedConstraint, VcspInstance};
pub use landscape::{Landscape, SearchState};

/// Index of a variable in an instance (0-based).
pub type VarId = usize;
/// Index of a state within its variable's domain.
pub type StateId = usize;
/// Exact fitness and constraint values.
pub type Value = i128;
