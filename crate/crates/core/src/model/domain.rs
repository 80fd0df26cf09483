use serde::{Deserialize, Serialize};

use super::StateId;

/// A variable's states together with its undirected transition relation.
///
/// Pairs in `transitions` are unordered; their listed order is kept because
/// the padding expansion numbers intermediate states by it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub name: String,
    pub states: Vec<String>,
    pub transitions: Vec<(StateId, StateId)>,
}

impl DomainSpec {
    pub fn new<S: Into<String>>(
        name: S,
        states: &[&str],
        transitions: &[(StateId, StateId)],
    ) -> Self {
        DomainSpec {
            name: name.into(),
            states: states.iter().map(|s| s.to_string()).collect(),
            transitions: transitions.to_vec(),
        }
    }

    /// Two-state Boolean domain with the single flip `0 <-> 1`.
    pub fn boolean<S: Into<String>>(name: S) -> Self {
        DomainSpec::new(name, &["0", "1"], &[(0, 1)])
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn permits(&self, u: StateId, v: StateId) -> bool {
        self.transitions
            .iter()
            .any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    /// States reachable from `u` in one transition, ascending.
    pub fn moves_from(&self, u: StateId) -> Vec<StateId> {
        let mut out: Vec<StateId> = self
            .transitions
            .iter()
            .filter_map(|&(a, b)| {
                if a == u {
                    Some(b)
                } else if b == u {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn state_index(&self, label: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == label)
    }

    pub fn label(&self, s: StateId) -> &str {
        self.states.get(s).map(String::as_str).unwrap_or("?")
    }
}
