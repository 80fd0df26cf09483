//! Padding a landscape with intermediate states so that an ordered ascent
//! becomes a steepest one.

use crate::ascent::{verify_ascent, AscentTrace, Policy, StepRecord};
use crate::error::{Error, Result};
use crate::model::{Assignment, DomainSpec, StateId, Value, VarId, VcspInstance};

/// Main states plus one intermediate `σ_uv` per transition of a base domain.
///
/// Intermediates are numbered after the mains, in the order the base
/// transitions are listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedDomain {
    pub mains: usize,
    /// Endpoints `(u, v)` with `u < v`; intermediate `i` has state id `mains + i`.
    pub intermediates: Vec<(StateId, StateId)>,
}

impl ExpandedDomain {
    pub fn of(d: &DomainSpec) -> Self {
        ExpandedDomain {
            mains: d.size(),
            intermediates: d
                .transitions
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.mains + self.intermediates.len()
    }

    pub fn is_main(&self, s: StateId) -> bool {
        s < self.mains
    }

    /// The intermediate between two main states, if they are adjacent.
    pub fn sigma(&self, u: StateId, v: StateId) -> Option<StateId> {
        let key = (u.min(v), u.max(v));
        self.intermediates
            .iter()
            .position(|&p| p == key)
            .map(|i| self.mains + i)
    }

    pub fn endpoints(&self, s: StateId) -> Option<(StateId, StateId)> {
        s.checked_sub(self.mains)
            .and_then(|i| self.intermediates.get(i))
            .copied()
    }

    /// The expanded domain: every transition goes through its intermediate.
    pub fn spec(&self, base: &DomainSpec) -> DomainSpec {
        let mut states = base.states.clone();
        let mut transitions = Vec::with_capacity(2 * self.intermediates.len());
        for (i, &(u, v)) in self.intermediates.iter().enumerate() {
            states.push(format!("sigma_{}{}", base.label(u), base.label(v)));
            transitions.push((u, self.mains + i));
            transitions.push((self.mains + i, v));
        }
        DomainSpec {
            name: base.name.clone(),
            states,
            transitions,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionMap {
    pub vars: Vec<ExpandedDomain>,
}

impl ExpansionMap {
    pub fn of(base: &VcspInstance) -> Self {
        ExpansionMap {
            vars: base.domains.iter().map(ExpandedDomain::of).collect(),
        }
    }

    pub fn domains(&self, base: &VcspInstance) -> Vec<DomainSpec> {
        self.vars
            .iter()
            .zip(&base.domains)
            .map(|(e, d)| e.spec(d))
            .collect()
    }

    /// Positions holding an intermediate state.
    pub fn intermediates_in(&self, xh: &Assignment) -> Vec<VarId> {
        (0..xh.len())
            .filter(|&k| !self.vars[k].is_main(xh[k]))
            .collect()
    }

    pub fn check(&self, xh: &Assignment) -> Result<()> {
        if xh.len() != self.vars.len() {
            return Err(Error::AssignmentLength {
                expected: self.vars.len(),
                got: xh.len(),
            });
        }
        for (k, (e, &s)) in self.vars.iter().zip(xh.iter()).enumerate() {
            if s >= e.size() {
                return Err(Error::StateOutOfRange {
                    var: k,
                    state: s,
                    size: e.size(),
                });
            }
        }
        Ok(())
    }
}

/// An intermediate-valued variable and the two main states it sits between.
type Straddle = (VarId, (StateId, StateId));

/// The expanded fitness `f̂` of a base instance, evaluated directly from the
/// base fitness. This is the reference every padded instance is checked against.
#[derive(Clone, Debug)]
pub struct ExpandedLandscape {
    base: VcspInstance,
    map: ExpansionMap,
    /// 1-based position of each variable in the ordering.
    rank: Vec<usize>,
    scale: Value,
}

fn overflow() -> Error {
    Error::Overflow("expanded fitness".into())
}

/// `f̂` for `base` under `order` (a permutation of the variables).
pub fn expand_landscape(base: &VcspInstance, order: &[VarId]) -> Result<ExpandedLandscape> {
    base.ensure_valid()?;
    let n = base.n_vars();
    let mut rank = vec![0; n];
    if order.len() != n {
        return Err(Error::InvalidOrder);
    }
    for (i, &k) in order.iter().enumerate() {
        if k >= n || rank[k] != 0 {
            return Err(Error::InvalidOrder);
        }
        rank[k] = i + 1;
    }
    Ok(ExpandedLandscape {
        base: base.clone(),
        map: ExpansionMap::of(base),
        rank,
        scale: 2 * n as Value + 1,
    })
}

impl ExpandedLandscape {
    pub fn base(&self) -> &VcspInstance {
        &self.base
    }

    pub fn map(&self) -> &ExpansionMap {
        &self.map
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    /// `2n + 1`
    pub fn scale(&self) -> Value {
        self.scale
    }

    pub fn position(&self, k: VarId) -> usize {
        self.rank[k]
    }

    pub fn domains(&self) -> Vec<DomainSpec> {
        self.map.domains(&self.base)
    }

    fn scaled(&self, v: Value) -> Result<Value> {
        v.checked_mul(self.scale).ok_or_else(overflow)
    }

    /// Minimum base fitness over all main completions of the intermediates.
    fn min_completion(&self, x: &mut [StateId], inter: &[(VarId, (StateId, StateId))]) -> Value {
        let mut best = Value::MAX;
        for mask in 0..(1u64 << inter.len()) {
            for (b, &(k, (u, v))) in inter.iter().enumerate() {
                x[k] = if mask >> b & 1 == 0 { u } else { v };
            }
            best = best.min(self.base.fitness_unchecked(x));
        }
        best
    }

    fn split(&self, xh: &Assignment) -> Result<(Vec<StateId>, Vec<Straddle>)> {
        self.map.check(xh)?;
        let mut x = xh.as_slice().to_vec();
        let mut inter = Vec::new();
        for (k, e) in self.map.vars.iter().enumerate() {
            if let Some(ends) = e.endpoints(xh[k]) {
                inter.push((k, ends));
                x[k] = ends.0;
            }
        }
        Ok((x, inter))
    }

    /// `f̂(x̂)`: `(2n+1) f` on main-only assignments; one intermediate at
    /// position `k` adds the bonus `n - k + 1` when its completions differ;
    /// two or more intermediates get `(2n+1)` times the worst completion.
    pub fn fitness(&self, xh: &Assignment) -> Result<Value> {
        let (mut x, inter) = self.split(xh)?;
        match inter.as_slice() {
            [] => self.scaled(self.base.fitness_unchecked(&x)),
            &[(k, (u, v))] => {
                x[k] = u;
                let fu = self.base.fitness_unchecked(&x);
                x[k] = v;
                let fv = self.base.fitness_unchecked(&x);
                let m = self.scaled(fu.min(fv))?;
                if fu == fv {
                    Ok(m)
                } else {
                    let bonus = (self.n() - self.rank[k] + 1) as Value;
                    m.checked_add(bonus).ok_or_else(overflow)
                }
            }
            _ => {
                let m = self.min_completion(&mut x, &inter);
                self.scaled(m)
            }
        }
    }

    /// Right-hand side of the two-intermediate inequality, or `None` when
    /// `x̂` does not hold exactly two intermediates.
    pub fn eq4_bound(&self, xh: &Assignment) -> Result<Option<Value>> {
        let (mut x, inter) = self.split(xh)?;
        if inter.len() != 2 {
            return Ok(None);
        }
        let (j, k) = (self.rank[inter[0].0], self.rank[inter[1].0]);
        let slack = 2 * self.n() as Value + 2 - (j + k) as Value;
        let m = self.scaled(self.min_completion(&mut x, &inter))?;
        m.checked_add(slack).map(Some).ok_or_else(overflow)
    }

    /// Main-only assignments are shared between the base and the expansion.
    pub fn embed(&self, x: &Assignment) -> Result<Assignment> {
        self.base.check_assignment(x)?;
        Ok(x.clone())
    }
}

/// The padded ascent of `p`: every base step `u -> v` at `k` becomes
/// `u -> σ_uv -> v`, with fitness taken from `f̂`.
pub fn simulate_ascent(p: &AscentTrace, land: &ExpandedLandscape) -> Result<AscentTrace> {
    verify_ascent(land.base(), p).map_err(|v| Error::InvalidAscent {
        step: v.step,
        reason: v.reason,
    })?;
    let start = land.embed(&p.start)?;
    let start_fitness = land.fitness(&start)?;
    let mut x = start.clone();
    let mut steps = Vec::with_capacity(2 * p.len());
    for s in &p.steps {
        let sigma = land.map().vars[s.var]
            .sigma(s.from, s.to)
            .expect("verified steps follow base transitions");
        x.set(s.var, sigma);
        steps.push(StepRecord {
            var: s.var,
            from: s.from,
            to: sigma,
            fitness_after: land.fitness(&x)?,
        });
        x.set(s.var, s.to);
        steps.push(StepRecord {
            var: s.var,
            from: sigma,
            to: s.to,
            fitness_after: land.fitness(&x)?,
        });
    }
    Ok(AscentTrace {
        start,
        start_fitness,
        steps,
        terminal: p.terminal,
        policy: Policy::Simulated,
        tie_steps: Vec::new(),
        ambiguous_steps: Vec::new(),
    })
}
