use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{VarId, VcspInstance};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<VarId>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<VarId>>) -> Self {
        PathDecomposition { bags }
    }

    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

/// The first reason a supplied decomposition is not a path decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathViolation {
    VariableOutOfRange {
        bag: usize,
        var: VarId,
    },
    UncoveredScope {
        constraint: usize,
        label: String,
        scope: Vec<VarId>,
    },
    BrokenInterval {
        var: VarId,
        bags: Vec<usize>,
    },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::VariableOutOfRange { bag, var } => {
                write!(
                    f,
                    "bag {bag} references variable {var}, which does not exist"
                )
            }
            PathViolation::UncoveredScope { label, scope, .. } => {
                write!(
                    f,
                    "scope {scope:?} of constraint {label} is not contained in any bag"
                )
            }
            PathViolation::BrokenInterval { var, bags } => {
                write!(f, "variable {var} occurs in non-contiguous bags {bags:?}")
            }
        }
    }
}

/// Validates `d` against the instance and returns its width.
///
/// Every constraint scope must fit inside one bag, and the bags containing
/// any given variable must form a contiguous run.
pub fn check_path_decomposition(
    instance: &VcspInstance,
    d: &PathDecomposition,
) -> Result<usize, PathViolation> {
    let n = instance.n_vars();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sets = Vec::with_capacity(d.bags.len());
    for (bi, bag) in d.bags.iter().enumerate() {
        let mut set = BTreeSet::new();
        for &var in bag {
            if var >= n {
                return Err(PathViolation::VariableOutOfRange { bag: bi, var });
            }
            if set.insert(var) {
                occurs[var].push(bi);
            }
        }
        sets.push(set);
    }

    for (ci, c) in instance.constraints.iter().enumerate() {
        let covered = match c.scope.first() {
            None => true,
            Some(&first) => occurs[first]
                .iter()
                .any(|&bi| c.scope.iter().all(|v| sets[bi].contains(v))),
        };
        if !covered {
            return Err(PathViolation::UncoveredScope {
                constraint: ci,
                label: c.label.clone(),
                scope: c.scope.clone(),
            });
        }
    }

    for (var, bags) in occurs.iter().enumerate() {
        if let (Some(&lo), Some(&hi)) = (bags.first(), bags.last()) {
            if hi - lo + 1 != bags.len() {
                return Err(PathViolation::BrokenInterval {
                    var,
                    bags: bags.clone(),
                });
            }
        }
    }
    Ok(d.width())
}
