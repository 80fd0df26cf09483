//! Steepest, ordered and first-improvement ascents plus independent verifiers.

mod engine;
mod trace;
mod verify;

pub use engine::{
    first_improvement_ascent, ordered_ascent, steepest_ascent, Engine, RunOutcome, NO_LIMIT,
};
pub use trace::{AscentTrace, Policy, StepRecord, StepSink, TraceRecorder};
pub use verify::{verify_ascent, verify_ordered, verify_steepest, Violation};
