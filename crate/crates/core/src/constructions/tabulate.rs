use crate::error::{Error, Result};
use crate::model::{StateId, Value, ValuedConstraint, VarId};

/// One position of a constraint under construction: either a real variable
/// or a phantom whose state is fixed.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Slot {
    Var { var: VarId, size: usize },
    Fixed(StateId),
}

/// Builds a dense tensor over the real slots by evaluating `f` on the full
/// slot tuple (phantoms included). `f` returns `None` on overflow.
pub(crate) fn tabulate<F>(
    label: impl Into<String>,
    slots: &[Slot],
    f: F,
) -> Result<ValuedConstraint>
where
    F: Fn(&[StateId]) -> Option<Value>,
{
    let label = label.into();
    let scope: Vec<VarId> = slots
        .iter()
        .filter_map(|s| match s {
            Slot::Var { var, .. } => Some(*var),
            Slot::Fixed(_) => None,
        })
        .collect();
    let sizes: Vec<usize> = slots
        .iter()
        .map(|s| match s {
            Slot::Var { size, .. } => *size,
            Slot::Fixed(_) => 1,
        })
        .collect();
    let total: usize = sizes.iter().product();
    let mut tuple: Vec<StateId> = slots
        .iter()
        .map(|s| match s {
            Slot::Var { .. } => 0,
            Slot::Fixed(v) => *v,
        })
        .collect();
    let mut values = Vec::with_capacity(total);
    for mut i in 0..total {
        for (p, slot) in slots.iter().enumerate().rev() {
            if let Slot::Var { size, .. } = slot {
                tuple[p] = i % size;
                i /= size;
            }
        }
        let v = f(&tuple).ok_or_else(|| Error::Overflow(format!("entries of {label}")))?;
        values.push(v);
    }
    Ok(ValuedConstraint::new(label, scope, values))
}

/// `a * b`, `None` on overflow.
pub(crate) fn mul(a: Value, b: Value) -> Option<Value> {
    a.checked_mul(b)
}
