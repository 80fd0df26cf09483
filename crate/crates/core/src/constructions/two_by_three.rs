use super::tables::{L, M};
use super::tabulate::{mul, tabulate, Slot};
use super::weights::{f_max, WeightSchedule};
use crate::error::{Error, Result};
use crate::model::{DomainSpec, InstanceMeta, IntRange, Value, ValuedConstraint, VcspInstance};

pub(crate) const A: usize = 0;

/// Domain of `x_k` (1-based): `{A, B}` for odd `k`, `{A, B, C}` for even `k`.
pub(crate) fn base_domain(k: usize) -> DomainSpec {
    if k % 2 == 1 {
        DomainSpec::new(format!("x{k}"), &["A", "B"], &[(0, 1)])
    } else {
        DomainSpec::new(format!("x{k}"), &["A", "B", "C"], &[(0, 1), (1, 2)])
    }
}

/// The two-state/three-state path whose ordered ascent from `A^n` has
/// length `f_max(n)`, with the default integer range.
pub fn build_2by3(n: usize) -> Result<VcspInstance> {
    build_2by3_with(n, IntRange::default())
}

pub fn build_2by3_with(n: usize, range: IntRange) -> Result<VcspInstance> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let fmax = f_max(n)?;
    if fmax > range.limit() {
        return Err(Error::Overflow(format!(
            "f_max({n}) = {fmax} exceeds the {range} range"
        )));
    }
    let weights = WeightSchedule::new(n / 2 + 1)?;
    let domains: Vec<DomainSpec> = (1..=n).map(base_domain).collect();
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

    let mut constraints: Vec<ValuedConstraint> = Vec::with_capacity(n);
    for k in 1..=n {
        let (label, w, table): (String, Value, &dyn Fn(usize, usize) -> Value) = if k % 2 == 0 {
            let l = k / 2;
            (format!("L^{l}"), weights.get(l).unwrap() + 1, &|u, v| {
                L[u][v]
            })
        } else {
            let l = k.div_ceil(2);
            (format!("M^{l}"), weights.get(l).unwrap(), &|u, v| M[u][v])
        };
        let label = if k == n {
            format!("{label}(-,A)")
        } else {
            label
        };
        constraints.push(tabulate(label, &[slot(k), slot(k + 1)], |t| {
            mul(w, table(t[0], t[1]))
        })?);
    }

    let instance = VcspInstance {
        meta: InstanceMeta {
            family: "2by3".into(),
            n,
            int_range: range,
        },
        domains,
        constraints,
    };
    instance.ensure_valid()?;
    Ok(instance)
}
