use crate::error::{Error, Result};
use crate::model::Value;

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} does not fit in 128-bit integers"))
}

/// `m_k = 2^(k+1) - 3`, the weight of the k-th level of the 2-by-3 path.
pub fn weight_m(k: u32) -> Result<Value> {
    if k == 0 {
        return Err(Error::Overflow("weight index must be at least 1".into()));
    }
    (2 as Value)
        .checked_pow(k + 1)
        .and_then(|p| p.checked_sub(3))
        .ok_or_else(|| overflow(&format!("m_{k}")))
}

/// Maximum fitness of the 2-by-3 instance on `n` variables, which is also
/// the length of its ordered ascent from the all-`A` assignment.
pub fn f_max(n: usize) -> Result<Value> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let h = (n / 2) as Value;
    let hu = u32::try_from(n / 2).map_err(|_| overflow("f_max"))?;
    let value = if n % 2 == 0 {
        (2 as Value)
            .checked_pow(hu + 2)
            .and_then(|p| p.checked_mul(3))
            .and_then(|p| p.checked_sub(7 * h + 12))
    } else {
        (2 as Value)
            .checked_pow(hu + 4)
            .and_then(|p| p.checked_sub(7 * h + 15))
    };
    value.ok_or_else(|| overflow(&format!("f_max({n})")))
}

/// `m_1, ..., m_h` generated by the recurrence `m_{k+1} = 2 m_k + 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSchedule {
    m: Vec<Value>,
}

impl WeightSchedule {
    pub fn new(h: usize) -> Result<Self> {
        let mut m = Vec::with_capacity(h);
        let mut cur: Value = 1;
        for k in 1..=h {
            if k > 1 {
                cur = cur
                    .checked_mul(2)
                    .and_then(|c| c.checked_add(3))
                    .ok_or_else(|| overflow(&format!("m_{k}")))?;
            }
            m.push(cur);
        }
        Ok(WeightSchedule { m })
    }

    /// `m_k` for `1 <= k <= h`.
    pub fn get(&self, k: usize) -> Option<Value> {
        k.checked_sub(1).and_then(|i| self.m.get(i)).copied()
    }

    pub fn as_slice(&self) -> &[Value] {
        &self.m
    }
}
