use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::trace::{AscentTrace, Policy, StepRecord, StepSink, TraceRecorder};
use crate::error::{Error, Result};
use crate::model::{Assignment, Landscape, SearchState, StateId, Value, VarId, VcspInstance};

pub const NO_LIMIT: u64 = u64::MAX;

/// Summary of an engine run, independent of how steps were sunk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub steps: u64,
    pub terminal: bool,
    pub start_fitness: Value,
    pub final_fitness: Value,
    pub final_assignment: Assignment,
    pub flagged: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Engine {
    Steepest,
    Ordered(Vec<VarId>),
    FirstImprovement { seed: u64 },
}

impl Engine {
    pub fn policy(&self) -> Policy {
        match self {
            Engine::Steepest => Policy::Steepest,
            Engine::Ordered(order) => Policy::Ordered {
                order: order.clone(),
            },
            Engine::FirstImprovement { seed } => Policy::FirstImprovement { seed: *seed },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Engine::Steepest => "steepest",
            Engine::Ordered(_) => "ordered",
            Engine::FirstImprovement { .. } => "first",
        }
    }

    /// Runs to a local solution or `step_limit` steps, streaming steps into `sink`.
    pub fn run<S: StepSink>(
        &self,
        instance: &VcspInstance,
        start: &Assignment,
        step_limit: u64,
        sink: &mut S,
    ) -> Result<RunOutcome> {
        let land = Landscape::new(instance);
        let state = land.start(start)?;
        match self {
            Engine::Steepest => run_steepest(state, step_limit, sink),
            Engine::Ordered(order) => {
                check_order(instance, order)?;
                run_ordered(state, order, step_limit, sink)
            }
            Engine::FirstImprovement { seed } => run_first(state, *seed, step_limit, sink),
        }
    }

    pub fn trace(
        &self,
        instance: &VcspInstance,
        start: &Assignment,
        step_limit: u64,
    ) -> Result<AscentTrace> {
        let mut rec = TraceRecorder::default();
        let out = self.run(instance, start, step_limit, &mut rec)?;
        let (tie_steps, ambiguous_steps) = match self {
            Engine::Steepest => (rec.flagged, Vec::new()),
            Engine::Ordered(_) => (Vec::new(), rec.flagged),
            Engine::FirstImprovement { .. } => (Vec::new(), Vec::new()),
        };
        Ok(AscentTrace {
            start: start.clone(),
            start_fitness: out.start_fitness,
            steps: rec.steps,
            terminal: out.terminal,
            policy: self.policy(),
            tie_steps,
            ambiguous_steps,
        })
    }
}

pub fn steepest_ascent(
    instance: &VcspInstance,
    start: &Assignment,
    step_limit: u64,
) -> Result<AscentTrace> {
    Engine::Steepest.trace(instance, start, step_limit)
}

pub fn ordered_ascent(
    instance: &VcspInstance,
    start: &Assignment,
    order: &[VarId],
    step_limit: u64,
) -> Result<AscentTrace> {
    Engine::Ordered(order.to_vec()).trace(instance, start, step_limit)
}

pub fn first_improvement_ascent(
    instance: &VcspInstance,
    start: &Assignment,
    step_limit: u64,
    seed: u64,
) -> Result<AscentTrace> {
    Engine::FirstImprovement { seed }.trace(instance, start, step_limit)
}

fn check_order(instance: &VcspInstance, order: &[VarId]) -> Result<()> {
    let n = instance.n_vars();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidOrder);
    }
    for &k in order {
        if k >= n || std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidOrder);
        }
    }
    Ok(())
}

/// Best improving move at one variable.
#[derive(Clone, Copy, Debug)]
struct LocalBest {
    gain: Value,
    to: StateId,
    /// Number of states attaining `gain`.
    count: u32,
    /// Number of states with positive gain.
    improving: u32,
}

fn local_best(state: &SearchState<'_, '_>, k: VarId) -> Option<LocalBest> {
    let from = state.values()[k];
    let mut best: Option<LocalBest> = None;
    let mut improving = 0;
    for &v in state.landscape().moves(k, from) {
        let gain = state.delta(k, v);
        if gain <= 0 {
            continue;
        }
        improving += 1;
        match &mut best {
            Some(b) if gain == b.gain => b.count += 1,
            Some(b) if gain < b.gain => {}
            _ => {
                best = Some(LocalBest {
                    gain,
                    to: v,
                    count: 1,
                    improving: 0,
                })
            }
        }
    }
    best.map(|b| LocalBest { improving, ..b })
}

fn refresh(cache: &mut [Option<LocalBest>], state: &SearchState<'_, '_>, k: VarId) {
    for &j in state.landscape().interacting(k) {
        cache[j] = local_best(state, j);
    }
}

fn outcome(
    state: &SearchState<'_, '_>,
    start_fitness: Value,
    steps: u64,
    terminal: bool,
    flagged: u64,
) -> RunOutcome {
    RunOutcome {
        steps,
        terminal,
        start_fitness,
        final_fitness: state.fitness(),
        final_assignment: state.assignment(),
        flagged,
    }
}

fn run_steepest<S: StepSink>(
    mut state: SearchState<'_, '_>,
    step_limit: u64,
    sink: &mut S,
) -> Result<RunOutcome> {
    let n = state.values().len();
    let start_fitness = state.fitness();
    let mut cache: Vec<Option<LocalBest>> = (0..n).map(|k| local_best(&state, k)).collect();
    let (mut steps, mut flagged) = (0u64, 0u64);
    loop {
        let mut chosen: Option<(VarId, LocalBest)> = None;
        let mut at_max = 0u32;
        for (k, b) in cache.iter().enumerate() {
            let Some(b) = b else { continue };
            match chosen {
                Some((_, c)) if b.gain < c.gain => {}
                Some((_, c)) if b.gain == c.gain => at_max += b.count,
                _ => {
                    chosen = Some((k, *b));
                    at_max = b.count;
                }
            }
        }
        let Some((k, b)) = chosen else {
            return Ok(outcome(&state, start_fitness, steps, true, flagged));
        };
        if steps == step_limit {
            return Ok(outcome(&state, start_fitness, steps, false, flagged));
        }
        let from = state.values()[k];
        let fitness_after = state.apply(k, b.to);
        let tie = at_max > 1;
        flagged += tie as u64;
        steps += 1;
        sink.record(
            StepRecord {
                var: k,
                from,
                to: b.to,
                fitness_after,
            },
            tie,
        );
        refresh(&mut cache, &state, k);
    }
}

fn run_ordered<S: StepSink>(
    mut state: SearchState<'_, '_>,
    order: &[VarId],
    step_limit: u64,
    sink: &mut S,
) -> Result<RunOutcome> {
    let n = state.values().len();
    let start_fitness = state.fitness();
    let mut cache: Vec<Option<LocalBest>> = (0..n).map(|k| local_best(&state, k)).collect();
    let (mut steps, mut flagged) = (0u64, 0u64);
    loop {
        let Some((k, b)) = order.iter().find_map(|&k| cache[k].map(|b| (k, b))) else {
            return Ok(outcome(&state, start_fitness, steps, true, flagged));
        };
        if steps == step_limit {
            return Ok(outcome(&state, start_fitness, steps, false, flagged));
        }
        let from = state.values()[k];
        let ambiguous = b.improving > 1;
        let fitness_after = state.apply(k, b.to);
        flagged += ambiguous as u64;
        steps += 1;
        sink.record(
            StepRecord {
                var: k,
                from,
                to: b.to,
                fitness_after,
            },
            ambiguous,
        );
        refresh(&mut cache, &state, k);
    }
}

fn run_first<S: StepSink>(
    mut state: SearchState<'_, '_>,
    seed: u64,
    step_limit: u64,
    sink: &mut S,
) -> Result<RunOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start_fitness = state.fitness();
    let n = state.values().len();
    let mut steps = 0u64;
    let mut moves: Vec<(VarId, StateId)> = Vec::new();
    loop {
        moves.clear();
        for k in 0..n {
            let from = state.values()[k];
            moves.extend(state.landscape().moves(k, from).iter().map(|&v| (k, v)));
        }
        moves.shuffle(&mut rng);
        let Some(&(k, v)) = moves.iter().find(|&&(k, v)| state.delta(k, v) > 0) else {
            return Ok(outcome(&state, start_fitness, steps, true, 0));
        };
        if steps == step_limit {
            return Ok(outcome(&state, start_fitness, steps, false, 0));
        }
        let from = state.values()[k];
        let fitness_after = state.apply(k, v);
        steps += 1;
        sink.record(
            StepRecord {
                var: k,
                from,
                to: v,
                fitness_after,
            },
            false,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DomainSpec, InstanceMeta, IntRange, ValuedConstraint};

    /// One variable, three states on a path, fitness equal to the state index.
    fn staircase() -> VcspInstance {
        VcspInstance {
            meta: InstanceMeta {
                family: "custom".into(),
                n: 1,
                int_range: IntRange::Wide,
            },
            domains: vec![DomainSpec::new("x", &["0", "1", "2"], &[(0, 1), (1, 2)])],
            constraints: vec![ValuedConstraint::new("up", vec![0], vec![0, 1, 2])],
        }
    }

    #[test]
    fn climbs_a_staircase() {
        let inst = staircase();
        for engine in [
            Engine::Steepest,
            Engine::Ordered(vec![0]),
            Engine::FirstImprovement { seed: 7 },
        ] {
            let t = engine.trace(&inst, &vec![0].into(), NO_LIMIT).unwrap();
            assert_eq!(t.fitness_sequence(), vec![0, 1, 2]);
            assert!(t.terminal);
        }
    }

    #[test]
    fn step_limit_is_not_an_error() {
        let inst = staircase();
        let t = steepest_ascent(&inst, &vec![0].into(), 1).unwrap();
        assert_eq!(t.len(), 1);
        assert!(!t.terminal);
        let t = steepest_ascent(&inst, &vec![0].into(), 0).unwrap();
        assert!(t.is_empty());
        assert!(!t.terminal);
        // Reaching the optimum exactly at the limit still counts as terminal.
        let t = steepest_ascent(&inst, &vec![0].into(), 2).unwrap();
        assert!(t.terminal);
    }

    #[test]
    fn order_must_be_a_permutation() {
        let inst = staircase();
        assert_eq!(
            ordered_ascent(&inst, &vec![0].into(), &[0, 0], NO_LIMIT),
            Err(Error::InvalidOrder)
        );
        assert_eq!(
            ordered_ascent(&inst, &vec![0].into(), &[1], NO_LIMIT),
            Err(Error::InvalidOrder)
        );
    }

    #[test]
    fn invalid_start_is_rejected() {
        let inst = staircase();
        assert!(steepest_ascent(&inst, &vec![3].into(), NO_LIMIT).is_err());
        assert!(steepest_ascent(&inst, &vec![0, 0].into(), NO_LIMIT).is_err());
    }
}
