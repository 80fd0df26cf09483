use serde::{Deserialize, Serialize};

use crate::model::{Assignment, StateId, Value, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub var: VarId,
    pub from: StateId,
    pub to: StateId,
    pub fitness_after: Value,
}

/// Which rule produced a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Policy {
    /// Maximum-fitness neighbor; ties go to the lowest variable, then lowest state.
    Steepest,
    /// Minimal variable in `order` with an improving change; among its
    /// improving states the largest gain, then the lowest state.
    Ordered { order: Vec<VarId> },
    /// First improving neighbor of a seeded shuffle of the neighborhood.
    FirstImprovement { seed: u64 },
    /// Built by padding a base ascent rather than by running an engine.
    Simulated,
    /// Steepest rule evaluated from scratch at every step.
    Oracle,
}

/// Receives steps as an engine produces them.
pub trait StepSink {
    /// `flagged` marks a steepest tie or an ordered-ascent ambiguity.
    fn record(&mut self, step: StepRecord, flagged: bool);
}

/// Discards steps; useful when only the [`RunOutcome`](super::RunOutcome) matters.
impl StepSink for () {
    fn record(&mut self, _: StepRecord, _: bool) {}
}

impl<F: FnMut(StepRecord, bool)> StepSink for F {
    fn record(&mut self, step: StepRecord, flagged: bool) {
        self(step, flagged)
    }
}

/// Collects steps and flags into memory.
#[derive(Clone, Debug, Default)]
pub struct TraceRecorder {
    pub steps: Vec<StepRecord>,
    pub flagged: Vec<usize>,
}

impl StepSink for TraceRecorder {
    fn record(&mut self, step: StepRecord, flagged: bool) {
        if flagged {
            self.flagged.push(self.steps.len());
        }
        self.steps.push(step);
    }
}

/// An ascent `x^0, ..., x^T` stored as a start plus `T` single-variable steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AscentTrace {
    pub start: Assignment,
    pub start_fitness: Value,
    pub steps: Vec<StepRecord>,
    /// True iff the last assignment is a local solution; false when the
    /// step limit cut the run short.
    pub terminal: bool,
    pub policy: Policy,
    /// Steps at which more than one neighbor attained the steepest maximum.
    #[serde(default)]
    pub tie_steps: Vec<usize>,
    /// Steps at which the chosen variable had more than one improving state.
    #[serde(default)]
    pub ambiguous_steps: Vec<usize>,
}

impl AscentTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_fitness(&self) -> Value {
        self.steps
            .last()
            .map_or(self.start_fitness, |s| s.fitness_after)
    }

    /// Every assignment on the path, `start` first.
    pub fn states(&self) -> Vec<Assignment> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut x = self.start.clone();
        out.push(x.clone());
        for s in &self.steps {
            x.set(s.var, s.to);
            out.push(x.clone());
        }
        out
    }

    pub fn final_assignment(&self) -> Assignment {
        let mut x = self.start.clone();
        for s in &self.steps {
            x.set(s.var, s.to);
        }
        x
    }

    pub fn fitness_sequence(&self) -> Vec<Value> {
        std::iter::once(self.start_fitness)
            .chain(self.steps.iter().map(|s| s.fitness_after))
            .collect()
    }

    /// Same start and the same steps, regardless of policy and flags.
    pub fn same_path(&self, other: &AscentTrace) -> bool {
        self.start == other.start
            && self.start_fitness == other.start_fitness
            && self.steps == other.steps
    }
}
