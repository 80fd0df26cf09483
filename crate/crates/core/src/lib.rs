//! Exact-integer valued constraint landscapes on which steepest ascent takes
//! exponentially many steps, with the engines and checkers to demonstrate it.

pub mod ascent;
pub mod constructions;
pub mod error;
pub mod io;
pub mod model;
pub mod verification;

pub use ascent::{
    first_improvement_ascent, ordered_ascent, steepest_ascent, verify_ascent, verify_ordered,
    verify_steepest, AscentTrace, Engine, Policy, RunOutcome, StepRecord, StepSink, TraceRecorder,
    NO_LIMIT,
};
pub use constructions::{
    build_2by3, build_3by5, build_boolean_pw4, build_family, canonical_start, expand_landscape,
    f_max, simulate_ascent, BooleanCodec, Family,
};
pub use error::{Error, Result};
pub use model::{
    check_path_decomposition, Assignment, DomainSpec, IntRange, PathDecomposition, StateId, Value,
    ValuedConstraint, VarId, VcspInstance,
};
