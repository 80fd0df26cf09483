//! Deliberate corruptions, to show that each check can actually fail.

use crate::error::{Error, Result};
use crate::model::{PathDecomposition, Value, VarId, VcspInstance};

/// Adds `delta` to every non-zero entry of the constraint labelled `label`;
/// for a unary bonus this raises its weight by `delta`.
pub fn bump_weight(instance: &VcspInstance, label: &str, delta: Value) -> Result<VcspInstance> {
    let mut out = instance.clone();
    let c = out
        .constraints
        .iter_mut()
        .find(|c| c.label == label)
        .ok_or_else(|| Error::Format(format!("no constraint labelled {label:?}")))?;
    for v in c.values.iter_mut().filter(|v| **v != 0) {
        *v += delta;
    }
    Ok(out)
}

/// Drops every constraint whose label starts with `prefix`.
pub fn without_constraints(instance: &VcspInstance, prefix: &str) -> VcspInstance {
    let mut out = instance.clone();
    out.constraints.retain(|c| !c.label.starts_with(prefix));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tamper {
    /// Remove the last variable of a bag.
    DropLast { bag: usize },
    /// Add a variable to a bag.
    Insert { bag: usize, var: VarId },
}

pub fn tamper_decomposition(d: &PathDecomposition, t: Tamper) -> PathDecomposition {
    let mut out = d.clone();
    match t {
        Tamper::DropLast { bag } => {
            out.bags[bag].pop();
        }
        Tamper::Insert { bag, var } => out.bags[bag].push(var),
    }
    out
}
