//! Trace checks that re-evaluate every assignment from scratch.
//!
//! Nothing here goes through [`Landscape`](crate::model::Landscape), so the
//! verifiers stay independent of the delta evaluation the engines use.

use std::fmt;

use serde::Serialize;

use super::trace::AscentTrace;
use crate::model::{Assignment, StateId, Value, VarId, VcspInstance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Index of the offending step; `trace.len()` for the terminal condition.
    pub step: usize,
    pub reason: String,
    /// A neighbor demonstrating the violation, when there is one.
    pub witness: Option<(VarId, StateId)>,
}

impl Violation {
    fn new(step: usize, reason: impl Into<String>) -> Self {
        Violation {
            step,
            reason: reason.into(),
            witness: None,
        }
    }

    fn with_witness(mut self, k: VarId, v: StateId) -> Self {
        self.witness = Some((k, v));
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)?;
        if let Some((k, v)) = self.witness {
            write!(f, " (witness: variable {k} -> state {v})")?;
        }
        Ok(())
    }
}

fn fitness(instance: &VcspInstance, x: &Assignment) -> Value {
    instance.fitness_unchecked(x.as_slice())
}

fn all_neighbors<'a>(
    instance: &'a VcspInstance,
    x: &Assignment,
) -> impl Iterator<Item = (VarId, StateId)> + 'a {
    let x = x.clone();
    instance
        .domains
        .iter()
        .enumerate()
        .flat_map(move |(k, d)| d.moves_from(x[k]).into_iter().map(move |v| (k, v)))
}

/// Adjacency, permitted transitions, recorded fitness and strict increase at
/// every step; local optimality at the end when the trace claims to be terminal.
pub fn verify_ascent(instance: &VcspInstance, trace: &AscentTrace) -> Result<(), Violation> {
    if let Err(e) = instance.check_assignment(&trace.start) {
        return Err(Violation::new(0, format!("invalid start: {e}")));
    }
    let mut x = trace.start.clone();
    let mut fx = fitness(instance, &x);
    if fx != trace.start_fitness {
        return Err(Violation::new(
            0,
            format!(
                "recorded start fitness {} but start evaluates to {fx}",
                trace.start_fitness
            ),
        ));
    }
    for (t, s) in trace.steps.iter().enumerate() {
        if s.var >= instance.n_vars() {
            return Err(Violation::new(
                t,
                format!("variable {} does not exist", s.var),
            ));
        }
        if x[s.var] != s.from {
            return Err(Violation::new(
                t,
                format!(
                    "step leaves state {} but variable {} holds {}",
                    s.from, s.var, x[s.var]
                ),
            ));
        }
        if s.from == s.to || !instance.domains[s.var].permits(s.from, s.to) {
            return Err(Violation::new(
                t,
                format!(
                    "transition {} -> {} is not permitted on variable {}",
                    s.from, s.to, s.var
                ),
            ));
        }
        x.set(s.var, s.to);
        let fy = fitness(instance, &x);
        if fy != s.fitness_after {
            return Err(Violation::new(
                t,
                format!(
                    "recorded fitness {} but assignment evaluates to {fy}",
                    s.fitness_after
                ),
            ));
        }
        if fy <= fx {
            return Err(Violation::new(
                t,
                format!("fitness does not increase ({fx} -> {fy})"),
            ));
        }
        fx = fy;
    }
    if trace.terminal {
        for (k, v) in all_neighbors(instance, &x) {
            let fy = fitness(instance, &x.with(k, v));
            if fy > fx {
                return Err(Violation::new(
                    trace.steps.len(),
                    format!("trace claims a local solution but a neighbor improves {fx} -> {fy}"),
                )
                .with_witness(k, v));
            }
        }
    }
    Ok(())
}

/// [`verify_ascent`] plus: each step reaches the maximum fitness over the
/// full neighborhood of the assignment it leaves.
pub fn verify_steepest(instance: &VcspInstance, trace: &AscentTrace) -> Result<(), Violation> {
    verify_ascent(instance, trace)?;
    let mut x = trace.start.clone();
    for (t, s) in trace.steps.iter().enumerate() {
        for (k, v) in all_neighbors(instance, &x) {
            let fy = fitness(instance, &x.with(k, v));
            if fy > s.fitness_after {
                return Err(Violation::new(
                    t,
                    format!(
                        "neighbor reaches {fy}, above the chosen {}",
                        s.fitness_after
                    ),
                )
                .with_witness(k, v));
            }
        }
        x.set(s.var, s.to);
    }
    Ok(())
}

/// [`verify_ascent`] plus: no variable earlier in `order` than the one
/// changed had an improving permitted change.
pub fn verify_ordered(
    instance: &VcspInstance,
    trace: &AscentTrace,
    order: &[VarId],
) -> Result<(), Violation> {
    verify_ascent(instance, trace)?;
    let n = instance.n_vars();
    let mut rank = vec![usize::MAX; n];
    for (r, &k) in order.iter().enumerate() {
        if k < n {
            rank[k] = r;
        }
    }
    if order.len() != n || rank.contains(&usize::MAX) {
        return Err(Violation::new(
            0,
            "order is not a permutation of the variables",
        ));
    }
    let mut x = trace.start.clone();
    for (t, s) in trace.steps.iter().enumerate() {
        let fx = fitness(instance, &x);
        for &j in &order[..rank[s.var]] {
            for v in instance.domains[j].moves_from(x[j]) {
                if fitness(instance, &x.with(j, v)) > fx {
                    return Err(Violation::new(
                        t,
                        format!(
                            "variable {j} precedes {} in the order and has an improving change",
                            s.var
                        ),
                    )
                    .with_witness(j, v));
                }
            }
        }
        x.set(s.var, s.to);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ascent::{Policy, StepRecord};
    use crate::model::{DomainSpec, InstanceMeta, IntRange, ValuedConstraint};

    fn single() -> VcspInstance {
        VcspInstance {
            meta: InstanceMeta {
                family: "custom".into(),
                n: 1,
                int_range: IntRange::Wide,
            },
            domains: vec![DomainSpec::new("x", &["0", "1", "2"], &[(0, 1), (1, 2)])],
            constraints: vec![ValuedConstraint::new("u", vec![0], vec![0, 1, 2])],
        }
    }

    fn trace(steps: Vec<StepRecord>, terminal: bool) -> AscentTrace {
        AscentTrace {
            start: vec![0].into(),
            start_fitness: 0,
            steps,
            terminal,
            policy: Policy::Steepest,
            tie_steps: vec![],
            ambiguous_steps: vec![],
        }
    }

    fn step(from: StateId, to: StateId, f: Value) -> StepRecord {
        StepRecord {
            var: 0,
            from,
            to,
            fitness_after: f,
        }
    }

    #[test]
    fn single_variable_ascent_is_ordered() {
        let t = trace(vec![step(0, 1, 1), step(1, 2, 2)], true);
        assert_eq!(verify_ascent(&single(), &t), Ok(()));
        assert_eq!(verify_ordered(&single(), &t, &[0]), Ok(()));
        assert_eq!(verify_steepest(&single(), &t), Ok(()));
    }

    #[test]
    fn premature_terminal_claim() {
        let t = trace(vec![step(0, 1, 1)], true);
        let v = verify_ascent(&single(), &t).unwrap_err();
        assert_eq!(v.step, 1);
        assert_eq!(v.witness, Some((0, 2)));
        assert!(verify_ascent(&single(), &trace(vec![step(0, 1, 1)], false)).is_ok());
    }

    #[test]
    fn forbidden_jump_and_wrong_fitness() {
        let v = verify_ascent(&single(), &trace(vec![step(0, 2, 2)], true)).unwrap_err();
        assert_eq!(v.step, 0);
        assert!(v.reason.contains("not permitted"));
        let v = verify_ascent(&single(), &trace(vec![step(0, 1, 5)], false)).unwrap_err();
        assert!(v.reason.contains("recorded fitness"));
    }

    #[test]
    fn descending_step_is_rejected() {
        let mut t = trace(vec![step(0, 1, 1), step(1, 0, 0)], false);
        let v = verify_ascent(&single(), &t).unwrap_err();
        assert_eq!(v.step, 1);
        t.steps.truncate(1);
        assert!(verify_ascent(&single(), &t).is_ok());
    }
}
