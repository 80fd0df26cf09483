use std::collections::BTreeSet;

use serde::Serialize;

use super::{Assignment, StateId, Value, VarId, VcspInstance};
use crate::error::{Error, Result};

/// A constraint's scope as a vertex set of the constraint hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperedge {
    pub label: String,
    pub vars: BTreeSet<VarId>,
}

impl VcspInstance {
    /// Sum of every constraint at `x`.
    pub fn evaluate_fitness(&self, x: &Assignment) -> Result<Value> {
        self.check_assignment(x)?;
        Ok(self.fitness_unchecked(x.as_slice()))
    }

    pub(crate) fn fitness_unchecked(&self, x: &[StateId]) -> Value {
        self.constraints
            .iter()
            .map(|c| c.value_at(&self.domains, x))
            .sum()
    }

    /// `f_k(x)`: the sum over constraints whose scope contains `k`.
    pub fn restricted_fitness(&self, k: VarId, x: &Assignment) -> Result<Value> {
        self.check_assignment(x)?;
        self.check_var(k)?;
        Ok(self.restricted_unchecked(k, x.as_slice()))
    }

    fn restricted_unchecked(&self, k: VarId, x: &[StateId]) -> Value {
        self.constraints
            .iter()
            .filter(|c| c.scope.contains(&k))
            .map(|c| c.value_at(&self.domains, x))
            .sum()
    }

    /// `f(x[k:v]) - f(x)`, evaluated on the constraints containing `k` only.
    pub fn delta_fitness(&self, x: &Assignment, k: VarId, v: StateId) -> Result<Value> {
        self.check_assignment(x)?;
        self.check_var(k)?;
        let dom = &self.domains[k];
        if v >= dom.size() {
            return Err(Error::StateOutOfRange {
                var: k,
                state: v,
                size: dom.size(),
            });
        }
        let u = x[k];
        if u == v {
            return Ok(0);
        }
        if !dom.permits(u, v) {
            return Err(Error::TransitionNotPermitted {
                var: k,
                from: u,
                to: v,
            });
        }
        let y = x.with(k, v);
        Ok(self.restricted_unchecked(k, y.as_slice()) - self.restricted_unchecked(k, x.as_slice()))
    }

    /// Every permitted single-variable change, ascending by variable then state.
    pub fn neighbors(&self, x: &Assignment) -> Result<Vec<(VarId, StateId)>> {
        self.check_assignment(x)?;
        Ok(self
            .domains
            .iter()
            .enumerate()
            .flat_map(|(k, dom)| dom.moves_from(x[k]).into_iter().map(move |v| (k, v)))
            .collect())
    }

    /// No neighbor has strictly higher fitness.
    pub fn is_local_solution(&self, x: &Assignment) -> Result<bool> {
        let fx = self.evaluate_fitness(x)?;
        for (k, v) in self.neighbors(x)? {
            if self.fitness_unchecked(x.with(k, v).as_slice()) > fx {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn constraint_hypergraph(&self) -> Vec<Hyperedge> {
        self.constraints
            .iter()
            .map(|c| Hyperedge {
                label: c.label.clone(),
                vars: c.scope.iter().copied().collect(),
            })
            .collect()
    }

    pub fn max_arity(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| c.arity())
            .max()
            .unwrap_or(0)
    }

    /// Every assignment of the instance, in lexicographic order.
    ///
    /// Meant for exhaustive checks on small instances; the caller is
    /// responsible for keeping the product of domain sizes reasonable.
    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        let sizes: Vec<usize> = self.domains.iter().map(|d| d.size()).collect();
        let total: usize = sizes.iter().product();
        let empty = sizes.contains(&0);
        let count = if empty { 0 } else { total };
        (0..count).map(move |mut i| {
            let mut x = vec![0; sizes.len()];
            for (slot, &s) in x.iter_mut().zip(&sizes).rev() {
                *slot = i % s;
                i /= s;
            }
            Assignment::new(x)
        })
    }
}
