use crate::ascent::{AscentTrace, Policy, StepRecord};
use crate::error::Result;
use crate::model::{Assignment, VcspInstance};

/// Steepest ascent that re-evaluates every neighbor from scratch with
/// [`VcspInstance::evaluate_fitness`]. Same tie-break as the engine: the
/// lowest variable, then the lowest state, among maximal neighbors.
pub fn exhaustive_steepest_oracle(
    instance: &VcspInstance,
    start: &Assignment,
) -> Result<AscentTrace> {
    let start_fitness = instance.evaluate_fitness(start)?;
    let mut x = start.clone();
    let mut fx = start_fitness;
    let mut steps = Vec::new();
    let mut tie_steps = Vec::new();
    loop {
        let mut best = None;
        let mut at_max = 0;
        for (k, v) in instance.neighbors(&x)? {
            let fy = instance.evaluate_fitness(&x.with(k, v))?;
            if fy <= fx {
                continue;
            }
            match best {
                Some((_, _, fb)) if fy < fb => {}
                Some((_, _, fb)) if fy == fb => at_max += 1,
                _ => {
                    best = Some((k, v, fy));
                    at_max = 1;
                }
            }
        }
        let Some((k, v, fy)) = best else { break };
        if at_max > 1 {
            tie_steps.push(steps.len());
        }
        steps.push(StepRecord {
            var: k,
            from: x[k],
            to: v,
            fitness_after: fy,
        });
        x.set(k, v);
        fx = fy;
    }
    Ok(AscentTrace {
        start: start.clone(),
        start_fitness,
        steps,
        terminal: true,
        policy: Policy::Oracle,
        tie_steps,
        ambiguous_steps: Vec::new(),
    })
}
