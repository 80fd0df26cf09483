use super::{Assignment, StateId, Value, VarId, VcspInstance};
use crate::error::Result;

/// Precomputed incidence for delta evaluation.
///
/// Built once per instance; every engine step then only touches the
/// constraints that contain the changed variable.
#[derive(Debug)]
pub struct Landscape<'a> {
    instance: &'a VcspInstance,
    /// Per variable: (constraint index, stride of the variable in that tensor).
    incidence: Vec<Vec<(usize, usize)>>,
    /// Per variable, per state: permitted targets, ascending.
    moves: Vec<Vec<Vec<StateId>>>,
    /// Per variable: itself plus every variable it shares a constraint with.
    interacting: Vec<Vec<VarId>>,
}

impl<'a> Landscape<'a> {
    pub fn new(instance: &'a VcspInstance) -> Self {
        let n = instance.n_vars();
        let mut incidence = vec![Vec::new(); n];
        let mut interacting: Vec<Vec<VarId>> = (0..n).map(|k| vec![k]).collect();
        for (ci, c) in instance.constraints.iter().enumerate() {
            let mut stride = 1;
            for &var in c.scope.iter().rev() {
                incidence[var].push((ci, stride));
                stride *= instance.domains[var].size();
            }
            for &a in &c.scope {
                interacting[a].extend(c.scope.iter().copied());
            }
        }
        for list in &mut interacting {
            list.sort_unstable();
            list.dedup();
        }
        let moves = instance
            .domains
            .iter()
            .map(|d| (0..d.size()).map(|s| d.moves_from(s)).collect())
            .collect();
        Landscape {
            instance,
            incidence,
            moves,
            interacting,
        }
    }

    pub fn instance(&self) -> &'a VcspInstance {
        self.instance
    }

    pub fn n_vars(&self) -> usize {
        self.moves.len()
    }

    pub fn moves(&self, k: VarId, from: StateId) -> &[StateId] {
        &self.moves[k][from]
    }

    pub fn interacting(&self, k: VarId) -> &[VarId] {
        &self.interacting[k]
    }

    pub fn start(&self, x: &Assignment) -> Result<SearchState<'_, 'a>> {
        self.instance.check_assignment(x)?;
        let inst = self.instance;
        let cidx: Vec<usize> = inst
            .constraints
            .iter()
            .map(|c| c.index(&inst.domains, x.as_slice()))
            .collect();
        let fitness = inst
            .constraints
            .iter()
            .zip(&cidx)
            .map(|(c, &i)| c.values[i])
            .sum();
        Ok(SearchState {
            land: self,
            x: x.as_slice().to_vec(),
            cidx,
            fitness,
        })
    }
}

/// A current assignment with cached tensor indices and fitness.
#[derive(Clone, Debug)]
pub struct SearchState<'l, 'a> {
    land: &'l Landscape<'a>,
    x: Vec<StateId>,
    cidx: Vec<usize>,
    fitness: Value,
}

impl<'l, 'a> SearchState<'l, 'a> {
    pub fn fitness(&self) -> Value {
        self.fitness
    }

    pub fn values(&self) -> &[StateId] {
        &self.x
    }

    pub fn assignment(&self) -> Assignment {
        Assignment::new(self.x.clone())
    }

    pub fn landscape(&self) -> &'l Landscape<'a> {
        self.land
    }

    /// Fitness change of `x[k:v]`; the transition is assumed permitted.
    #[inline]
    pub fn delta(&self, k: VarId, v: StateId) -> Value {
        let u = self.x[k];
        let constraints = &self.land.instance.constraints;
        let mut d = 0;
        for &(ci, stride) in &self.land.incidence[k] {
            let cur = self.cidx[ci];
            let next = cur + v * stride - u * stride;
            let vals = &constraints[ci].values;
            d += vals[next] - vals[cur];
        }
        d
    }

    /// Moves to `x[k:v]` and returns the new fitness.
    pub fn apply(&mut self, k: VarId, v: StateId) -> Value {
        let d = self.delta(k, v);
        let u = self.x[k];
        for &(ci, stride) in &self.land.incidence[k] {
            self.cidx[ci] = self.cidx[ci] + v * stride - u * stride;
        }
        self.x[k] = v;
        self.fitness += d;
        self.fitness
    }
}
