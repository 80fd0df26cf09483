use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use super::{DomainSpec, StateId, Value, VarId};
use crate::error::{Error, Result};

/// Bound on the magnitude of any fitness an instance may produce.
///
/// Values are always stored as `i128`; the range decides how large the
/// worst-case fitness magnitude may grow before a builder refuses `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntRange {
    #[serde(rename = "64")]
    I64,
    #[default]
    #[serde(rename = "wide")]
    Wide,
}

impl IntRange {
    pub const ENV_VAR: &'static str = "ASCENTLAB_INT_RANGE";

    pub fn limit(self) -> Value {
        match self {
            IntRange::I64 => i64::MAX as Value,
            IntRange::Wide => Value::MAX,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "64" => Ok(IntRange::I64),
            "wide" => Ok(IntRange::Wide),
            other => Err(Error::Format(format!(
                "unknown integer range {other:?} (expected \"64\" or \"wide\")"
            ))),
        }
    }

    /// Reads `ASCENTLAB_INT_RANGE`, defaulting to [`IntRange::Wide`] when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(IntRange::default()),
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntRange::I64 => f.write_str("64"),
            IntRange::Wide => f.write_str("wide"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceMeta {
    pub family: String,
    pub n: usize,
    pub int_range: IntRange,
}

/// One value per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(Vec<StateId>);

impl Assignment {
    pub fn new(values: Vec<StateId>) -> Self {
        Assignment(values)
    }

    pub fn uniform(len: usize, state: StateId) -> Self {
        Assignment(vec![state; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[StateId] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<StateId> {
        self.0
    }

    pub fn set(&mut self, k: VarId, v: StateId) {
        self.0[k] = v;
    }

    /// `x[k:v]`
    pub fn with(&self, k: VarId, v: StateId) -> Assignment {
        let mut y = self.clone();
        y.0[k] = v;
        y
    }

    pub fn iter(&self) -> impl Iterator<Item = &StateId> {
        self.0.iter()
    }
}

impl Index<VarId> for Assignment {
    type Output = StateId;

    fn index(&self, k: VarId) -> &StateId {
        &self.0[k]
    }
}

impl From<Vec<StateId>> for Assignment {
    fn from(v: Vec<StateId>) -> Self {
        Assignment(v)
    }
}

impl AsRef<[StateId]> for Assignment {
    fn as_ref(&self) -> &[StateId] {
        &self.0
    }
}

/// A constraint over an ordered scope, stored as a dense row-major tensor:
/// the last scope position varies fastest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuedConstraint {
    pub label: String,
    pub scope: Vec<VarId>,
    pub values: Vec<Value>,
}

impl ValuedConstraint {
    pub fn new<S: Into<String>>(label: S, scope: Vec<VarId>, values: Vec<Value>) -> Self {
        ValuedConstraint {
            label: label.into(),
            scope,
            values,
        }
    }

    pub fn arity(&self) -> usize {
        self.scope.len()
    }

    pub fn max_abs(&self) -> Option<Value> {
        self.values
            .iter()
            .map(|v| v.checked_abs())
            .try_fold(0, |m, v| v.map(|v| m.max(v)))
    }

    /// Tensor index selected by `x` restricted to the scope.
    pub(crate) fn index(&self, domains: &[DomainSpec], x: &[StateId]) -> usize {
        self.scope
            .iter()
            .fold(0, |acc, &var| acc * domains[var].size() + x[var])
    }

    pub(crate) fn value_at(&self, domains: &[DomainSpec], x: &[StateId]) -> Value {
        self.values[self.index(domains, x)]
    }
}

/// A structural problem found by [`VcspInstance::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    EmptyDomain {
        var: VarId,
    },
    TransitionOutOfRange {
        var: VarId,
        pair: (StateId, StateId),
    },
    SelfLoop {
        var: VarId,
        state: StateId,
    },
    DuplicateTransition {
        var: VarId,
        pair: (StateId, StateId),
    },
    ScopeOutOfRange {
        constraint: String,
        var: VarId,
    },
    ScopeRepeats {
        constraint: String,
        var: VarId,
    },
    TensorLength {
        constraint: String,
        expected: usize,
        got: usize,
    },
    RangeExceeded {
        range: IntRange,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::EmptyDomain { var } => write!(f, "variable {var} has an empty domain"),
            Defect::TransitionOutOfRange { var, pair } => {
                write!(
                    f,
                    "variable {var}: transition {pair:?} references a missing state"
                )
            }
            Defect::SelfLoop { var, state } => {
                write!(f, "variable {var}: self-loop transition on state {state}")
            }
            Defect::DuplicateTransition { var, pair } => {
                write!(f, "variable {var}: duplicate transition {pair:?}")
            }
            Defect::ScopeOutOfRange { constraint, var } => {
                write!(
                    f,
                    "constraint {constraint}: scope references variable {var} which does not exist"
                )
            }
            Defect::ScopeRepeats { constraint, var } => {
                write!(
                    f,
                    "constraint {constraint}: variable {var} appears twice in scope"
                )
            }
            Defect::TensorLength {
                constraint,
                expected,
                got,
            } => write!(
                f,
                "constraint {constraint}: tensor has {got} entries, scope requires {expected}"
            ),
            Defect::RangeExceeded { range } => {
                write!(
                    f,
                    "worst-case fitness magnitude exceeds the {range} integer range"
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcspInstance {
    pub meta: InstanceMeta,
    pub domains: Vec<DomainSpec>,
    pub constraints: Vec<ValuedConstraint>,
}

impl VcspInstance {
    pub fn n_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn check_assignment(&self, x: &Assignment) -> Result<()> {
        if x.len() != self.domains.len() {
            return Err(Error::AssignmentLength {
                expected: self.domains.len(),
                got: x.len(),
            });
        }
        for (var, (&state, dom)) in x.iter().zip(&self.domains).enumerate() {
            if state >= dom.size() {
                return Err(Error::StateOutOfRange {
                    var,
                    state,
                    size: dom.size(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_var(&self, k: VarId) -> Result<()> {
        if k < self.domains.len() {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange(k))
        }
    }

    /// Sum over constraints of the largest absolute entry, or `None` if that
    /// sum does not fit in `i128`.
    pub fn worst_case_magnitude(&self) -> Option<Value> {
        self.constraints
            .iter()
            .try_fold(0 as Value, |acc, c| acc.checked_add(c.max_abs()?))
    }

    /// Checks every structural invariant plus the integer-range bound.
    pub fn validate(&self) -> std::result::Result<(), Vec<Defect>> {
        let mut defects = Vec::new();
        for (var, dom) in self.domains.iter().enumerate() {
            if dom.states.is_empty() {
                defects.push(Defect::EmptyDomain { var });
            }
            let mut seen = BTreeSet::new();
            for &(a, b) in &dom.transitions {
                if a >= dom.size() || b >= dom.size() {
                    defects.push(Defect::TransitionOutOfRange { var, pair: (a, b) });
                } else if a == b {
                    defects.push(Defect::SelfLoop { var, state: a });
                } else if !seen.insert((a.min(b), a.max(b))) {
                    defects.push(Defect::DuplicateTransition { var, pair: (a, b) });
                }
            }
        }
        for c in &self.constraints {
            let mut seen = BTreeSet::new();
            let mut in_range = true;
            for &var in &c.scope {
                if var >= self.domains.len() {
                    defects.push(Defect::ScopeOutOfRange {
                        constraint: c.label.clone(),
                        var,
                    });
                    in_range = false;
                } else if !seen.insert(var) {
                    defects.push(Defect::ScopeRepeats {
                        constraint: c.label.clone(),
                        var,
                    });
                }
            }
            if in_range {
                let expected = c
                    .scope
                    .iter()
                    .try_fold(1usize, |acc, &v| acc.checked_mul(self.domains[v].size()));
                if expected != Some(c.values.len()) {
                    defects.push(Defect::TensorLength {
                        constraint: c.label.clone(),
                        expected: expected.unwrap_or(usize::MAX),
                        got: c.values.len(),
                    });
                }
            }
        }
        match self.worst_case_magnitude() {
            Some(m) if m <= self.meta.int_range.limit() => {}
            _ => defects.push(Defect::RangeExceeded {
                range: self.meta.int_range,
            }),
        }
        if defects.is_empty() {
            Ok(())
        } else {
            Err(defects)
        }
    }

    /// [`validate`](Self::validate) folded into an [`Error`].
    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(|defects| {
            if defects
                .iter()
                .all(|d| matches!(d, Defect::RangeExceeded { .. }))
            {
                Error::Overflow(defects[0].to_string())
            } else {
                Error::InvalidInstance(defects.iter().map(|d| d.to_string()).collect())
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> VcspInstance {
        VcspInstance {
            meta: InstanceMeta {
                family: "custom".into(),
                n: 2,
                int_range: IntRange::I64,
            },
            domains: vec![
                DomainSpec::new("x0", &["A", "B"], &[(0, 1)]),
                DomainSpec::new("x1", &["A", "B", "C"], &[(0, 1), (1, 2)]),
            ],
            constraints: vec![ValuedConstraint::new(
                "M",
                vec![0, 1],
                vec![0, 1, 0, 1, 0, 1],
            )],
        }
    }

    #[test]
    fn valid_instance_passes() {
        assert_eq!(tiny().validate(), Ok(()));
    }

    #[test]
    fn wrong_tensor_length_names_the_constraint() {
        let mut inst = tiny();
        inst.constraints[0].values.pop();
        let defects = inst.validate().unwrap_err();
        assert_eq!(
            defects,
            vec![Defect::TensorLength {
                constraint: "M".into(),
                expected: 6,
                got: 5
            }]
        );
    }

    #[test]
    fn scope_past_last_variable_is_a_defect() {
        let mut inst = tiny();
        inst.constraints
            .push(ValuedConstraint::new("bad", vec![2], vec![0, 0]));
        let defects = inst.validate().unwrap_err();
        assert!(defects.contains(&Defect::ScopeOutOfRange {
            constraint: "bad".into(),
            var: 2
        }));
    }

    #[test]
    fn transition_defects() {
        let mut inst = tiny();
        inst.domains[1].transitions.push((2, 1));
        inst.domains[1].transitions.push((0, 0));
        inst.domains[0].transitions.push((0, 5));
        let defects = inst.validate().unwrap_err();
        assert_eq!(defects.len(), 3);
        assert!(defects.contains(&Defect::SelfLoop { var: 1, state: 0 }));
    }

    #[test]
    fn range_bound_is_enforced() {
        let mut inst = tiny();
        inst.constraints[0].values[1] = i64::MAX as Value + 1;
        assert!(inst.validate().is_err());
        inst.meta.int_range = IntRange::Wide;
        assert!(inst.validate().is_ok());
        assert!(matches!(
            {
                inst.meta.int_range = IntRange::I64;
                inst.ensure_valid()
            },
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn validate_is_idempotent() {
        let mut inst = tiny();
        inst.constraints[0].values.push(3);
        assert_eq!(inst.validate(), inst.validate());
    }

    #[test]
    fn int_range_parsing() {
        assert_eq!(IntRange::parse("64").unwrap(), IntRange::I64);
        assert_eq!(IntRange::parse("wide").unwrap(), IntRange::Wide);
        assert!(IntRange::parse("32").is_err());
    }
}
