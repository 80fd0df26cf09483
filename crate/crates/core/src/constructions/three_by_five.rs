use super::expansion::ExpansionMap;
use super::tables::{q, r, P, U_HAT, V_HAT};
use super::tabulate::{mul, tabulate, Slot};
use super::two_by_three::{build_2by3_with, A};
use super::weights::WeightSchedule;
use crate::error::{Error, Result};
use crate::model::{
    DomainSpec, InstanceMeta, IntRange, StateId, Value, ValuedConstraint, VcspInstance,
};

/// Expanded state ids.
const SIGMA_ODD: StateId = 2;
const SIGMA_AB: StateId = 3;
const SIGMA_BC: StateId = 4;

/// Lifts a base constraint onto expanded domains: `w` times the base value
/// when every scoped variable holds a main state, 0 otherwise.
pub(crate) fn lift_mains(
    c: &ValuedConstraint,
    label: String,
    base: &VcspInstance,
    map: &ExpansionMap,
    w: Value,
) -> Result<ValuedConstraint> {
    let slots: Vec<Slot> = c
        .scope
        .iter()
        .map(|&var| Slot::Var {
            var,
            size: map.vars[var].size(),
        })
        .collect();
    tabulate(label, &slots, |t| {
        if t.iter()
            .zip(&c.scope)
            .all(|(&s, &var)| map.vars[var].is_main(s))
        {
            let mut idx = 0;
            for (&s, &var) in t.iter().zip(&c.scope) {
                idx = idx * base.domains[var].size() + s;
            }
            mul(w, c.values[idx])
        } else {
            Some(0)
        }
    })
}

/// The padded 2-by-3 path: five-state and three-state domains, arity 3.
pub fn build_3by5(n: usize) -> Result<VcspInstance> {
    build_3by5_with(n, IntRange::default())
}

pub fn build_3by5_with(n: usize, range: IntRange) -> Result<VcspInstance> {
    let base = build_2by3_with(n, range)?;
    let map = ExpansionMap::of(&base);
    let domains: Vec<DomainSpec> = map.domains(&base);
    let w = 2 * n as Value + 1;
    let weights = WeightSchedule::new(n / 2 + 1)?;
    let slot = |k: usize| {
        if k <= n {
            Slot::Var {
                var: k - 1,
                size: domains[k - 1].size(),
            }
        } else {
            Slot::Fixed(A)
        }
    };

    let mut constraints = Vec::new();
    for c in &base.constraints {
        let label = c.label.replacen('^', "hat^", 1);
        constraints.push(lift_mains(c, label, &base, &map, w)?);
    }
    for k in 1..=n {
        let bonus = (n - k + 1) as Value;
        if k % 2 == 1 {
            let l = k / 2;
            if l >= 1 {
                let tw = mul(w, weights.get(l).unwrap() + 1)
                    .ok_or_else(|| Error::Overflow("That weight".into()))?;
                let slots = [slot(k - 1), slot(k + 1), slot(k)];
                constraints.push(tabulate(format!("That^{l}"), &slots, |t| {
                    if t[2] == SIGMA_ODD && t[0] < 3 && t[1] < 3 {
                        mul(tw, P[t[0]][t[1]])
                    } else {
                        Some(0)
                    }
                })?);
            }
            constraints.push(tabulate(format!("Uhat@x{k}"), &[slot(k)], |t| {
                mul(bonus, U_HAT[t[0]])
            })?);
        } else {
            let l = k / 2;
            let m = weights.get(l).unwrap();
            let (qt, rt) = (q(m), r(m));
            let slots = [slot(k - 1), slot(k + 1), slot(k)];
            constraints.push(tabulate(format!("Shat^{l}"), &slots, |t| {
                let (u, v) = (t[0], t[1]);
                if u >= 2 || v >= 2 {
                    return Some(0);
                }
                match t[2] {
                    SIGMA_AB => mul(w, qt[u][v]),
                    SIGMA_BC => mul(w, rt[u][v]),
                    _ => Some(0),
                }
            })?);
            constraints.push(tabulate(format!("Vhat@x{k}"), &[slot(k)], |t| {
                mul(bonus, V_HAT[t[0]])
            })?);
        }
    }

    let instance = VcspInstance {
        meta: InstanceMeta {
            family: "3by5".into(),
            n,
            int_range: range,
        },
        domains,
        constraints,
    };
    instance.ensure_valid()?;
    Ok(instance)
}
