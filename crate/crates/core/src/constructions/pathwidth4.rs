//! The arity-5, pathwidth-4 Boolean instance: collections of two and three
//! bits arranged in a path of repeating chunks.

use std::collections::HashMap;

use serde::Serialize;

use super::boolean::{BooleanCodec, Collection};
use super::expansion::{expand_landscape, ExpandedLandscape};
use super::tables::{
    even_row, l_tilde, m_tilde, odd_col, s_tilde, t_minus, t_plus, u_tilde, v_tilde, J_TILDE,
    S_FLANKS,
};
use super::tabulate::{mul, tabulate, Slot};
use super::two_by_three::build_2by3_with;
use super::weights::{f_max, WeightSchedule};
use crate::error::{Error, Result};
use crate::model::{
    Assignment, InstanceMeta, IntRange, PathDecomposition, StateId, Value, ValuedConstraint,
    VcspInstance,
};

/// Instances up to this size verify their own master invariant when built.
pub const SELF_CHECK_MAX_N: usize = 4;

/// Code of a phantom collection beyond `G_n` (the state `A`).
const PHANTOM_EVEN: u32 = 0b100;
const PHANTOM_ODD: u32 = 0b10;

#[derive(Clone, Debug)]
pub struct BooleanPw4 {
    pub instance: VcspInstance,
    pub codec: BooleanCodec,
    pub decomposition: PathDecomposition,
    pub start: Assignment,
}

fn odd_collection(offset: usize) -> Collection {
    Collection {
        offset,
        bits: 2,
        codes: [(0b10, 0), (0b01, 1), (0b00, 2), (0b11, 2)]
            .into_iter()
            .collect(),
        primary: vec![0b10, 0b01, 0b11],
        labels: vec!["A".into(), "B".into(), "sigma_AB".into()],
    }
}

fn even_collection(offset: usize) -> Collection {
    Collection {
        offset,
        bits: 3,
        codes: [(0b100, 0), (0b010, 1), (0b001, 2), (0b110, 3), (0b011, 4)]
            .into_iter()
            .collect(),
        primary: vec![0b100, 0b010, 0b001, 0b110, 0b011],
        labels: ["A", "B", "C", "sigma_AB", "sigma_BC"]
            .map(String::from)
            .to_vec(),
    }
}

/// Codec for `n` collections, odd ones two bits wide and even ones three.
pub fn pw4_codec(n: usize) -> BooleanCodec {
    let mut offset = 0;
    let collections = (1..=n)
        .map(|g| {
            let c = if g % 2 == 1 {
                odd_collection(offset)
            } else {
                even_collection(offset)
            };
            offset += c.bits;
            c
        })
        .collect();
    BooleanCodec { collections }
}

fn read(bits: &[StateId]) -> u32 {
    bits.iter().fold(0, |a, &b| a << 1 | b as u32)
}

struct Layout<'a> {
    n: usize,
    codec: &'a BooleanCodec,
}

impl Layout<'_> {
    /// Bits of collection `g` (1-based), or fixed phantom bits past `G_n`.
    fn slots(&self, g: usize) -> Vec<Slot> {
        if g <= self.n {
            self.codec.collections[g - 1]
                .vars()
                .map(|var| Slot::Var { var, size: 2 })
                .collect()
        } else {
            let (code, bits) = if g % 2 == 0 {
                (PHANTOM_EVEN, 3)
            } else {
                (PHANTOM_ODD, 2)
            };
            (0..bits)
                .rev()
                .map(|b| Slot::Fixed((code >> b & 1) as StateId))
                .collect()
        }
    }

    fn pair(&self, g: usize, h: usize) -> Vec<Slot> {
        let mut s = self.slots(g);
        s.extend(self.slots(h));
        s
    }
}

fn scaled(w: Value, factor: Value, what: &str) -> Result<Value> {
    w.checked_mul(factor)
        .ok_or_else(|| Error::Overflow(format!("weight of {what}")))
}

pub fn build_boolean_pw4(n: usize) -> Result<BooleanPw4> {
    build_boolean_pw4_with(n, IntRange::default())
}

pub fn build_boolean_pw4_with(n: usize, range: IntRange) -> Result<BooleanPw4> {
    let pw4 = assemble(n, range)?;
    if n <= SELF_CHECK_MAX_N {
        let land = expand_landscape(&build_2by3_with(n, range)?, &(0..n).collect::<Vec<_>>())?;
        master_invariant(&pw4.instance, &pw4.codec, &land)
            .map_err(|m| Error::SelfCheck(m.to_string()))?;
    }
    Ok(pw4)
}

fn assemble(n: usize, range: IntRange) -> Result<BooleanPw4> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let w = 2 * n as Value + 1;
    let fmax = f_max(n)?;
    let penalty = -scaled(w, fmax, "J~")?;
    let weights = WeightSchedule::new(n / 2 + 1)?;
    let codec = pw4_codec(n);
    let lay = Layout { n, codec: &codec };
    let nv = n as Value;

    let mut constraints: Vec<ValuedConstraint> = Vec::new();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    // A scope already inside the previous bag (the last, phantom-restricted
    // M~ for odd n) would be a redundant bag.
    let mut bag = |c: &ValuedConstraint| {
        let redundant = bags
            .last()
            .is_some_and(|b| c.scope.iter().all(|v| b.contains(v)));
        if !c.scope.is_empty() && !redundant {
            bags.push(c.scope.clone());
        }
    };

    constraints.push(tabulate("U~^0@G1", &lay.slots(1), |t| {
        Some(u_tilde(nv, 0)[odd_col(read(t))])
    })?);
    let mut l = 1;
    while 2 * l - 1 <= n {
        let (odd, even, next) = (2 * l - 1, 2 * l, 2 * l + 1);
        let m = weights.get(l).unwrap();
        let lv = l as Value;

        let mt = m_tilde(m);
        let c = tabulate(format!("M~^{l}"), &lay.pair(odd, even), |t| {
            mul(w, mt[odd_col(read(&t[..2]))][even_row(read(&t[2..]))])
        })?;
        bag(&c);
        constraints.push(c);
        if even > n {
            break;
        }
        constraints.push(tabulate(
            format!("J~@G{odd}G{even}"),
            &lay.pair(odd, even),
            |t| {
                mul(
                    penalty,
                    J_TILDE[odd_col(read(&t[..2]))][even_row(read(&t[2..]))],
                )
            },
        )?);

        let st = s_tilde(m);
        let mut slots = vec![lay.slots(odd)[1]];
        slots.extend(lay.slots(even));
        slots.push(lay.slots(next)[0]);
        let c = tabulate(format!("S~^{l}"), &slots, |t| {
            let col = S_FLANKS
                .iter()
                .position(|&f| f == (t[0] as u32, t[4] as u32))
                .unwrap();
            mul(w, st[even_row(read(&t[1..4]))][col])
        })?;
        bag(&c);
        constraints.push(c);
        constraints.push(tabulate(
            format!("V~^{l}@G{even}"),
            &lay.slots(even),
            |t| Some(v_tilde(nv, lv)[even_row(read(t))]),
        )?);

        let lt = l_tilde(m);
        let c = tabulate(format!("L~^{l}"), &lay.pair(even, next), |t| {
            mul(w, lt[even_row(read(&t[..3]))][odd_col(read(&t[3..]))])
        })?;
        bag(&c);
        constraints.push(c);

        if next <= n {
            constraints.push(tabulate(
                format!("J~@G{even}G{next}"),
                &lay.pair(even, next),
                |t| {
                    mul(
                        penalty,
                        J_TILDE[odd_col(read(&t[3..]))][even_row(read(&t[..3]))],
                    )
                },
            )?);
            let tm = t_minus(m);
            constraints.push(tabulate(format!("T~^{l}-"), &lay.pair(even, next), |t| {
                mul(w, tm[even_row(read(&t[..3]))][odd_col(read(&t[3..]))])
            })?);
            let tp = t_plus(m);
            constraints.push(tabulate(
                format!("T~^{l}+"),
                &lay.pair(next, next + 1),
                |t| mul(w, tp[odd_col(read(&t[..2]))][even_row(read(&t[2..]))]),
            )?);
            constraints.push(tabulate(
                format!("U~^{l}@G{next}"),
                &lay.slots(next),
                |t| Some(u_tilde(nv, lv)[odd_col(read(t))]),
            )?);
        }
        l += 1;
    }

    let start = codec.encode(&Assignment::uniform(n, 0))?;
    let instance = VcspInstance {
        meta: InstanceMeta {
            family: "bool-pw4".into(),
            n,
            int_range: range,
        },
        domains: codec.domains(),
        constraints,
    };
    instance.ensure_valid()?;
    Ok(BooleanPw4 {
        instance,
        codec,
        decomposition: PathDecomposition::new(bags),
        start,
    })
}

/// A Boolean assignment at which the encoded fitness disagrees with `f̂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasterMismatch {
    pub rule: &'static str,
    pub bits: Assignment,
    pub expanded: Assignment,
    pub expected: Value,
    pub actual: Value,
}

impl std::fmt::Display for MasterMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: bits {:?} (decoded {:?}) evaluate to {}, expected {}",
            self.rule,
            self.bits.as_slice(),
            self.expanded.as_slice(),
            self.actual,
            self.expected
        )
    }
}

/// Exhaustively compares an encoded instance with `f̂`: equality on main-only
/// assignments, `max` over encodings equal to `f̂` (and no encoding above
/// it) with one intermediate, and the two-intermediate bound. Returns the
/// number of Boolean assignments examined.
pub fn master_invariant(
    instance: &VcspInstance,
    codec: &BooleanCodec,
    land: &ExpandedLandscape,
) -> std::result::Result<u64, MasterMismatch> {
    let mut best: HashMap<Assignment, (Value, Assignment)> = HashMap::new();
    let mut count = 0;
    for bits in instance.assignments() {
        count += 1;
        let Some(xh) = codec
            .decode_states(&bits)
            .expect("codec matches the instance")
        else {
            continue;
        };
        let actual = instance.fitness_unchecked(bits.as_slice());
        let mismatch = |rule, expected| MasterMismatch {
            rule,
            bits: bits.clone(),
            expanded: xh.clone(),
            expected,
            actual,
        };
        match land.map().intermediates_in(&xh).len() {
            0 => {
                let expected = land.fitness(&xh).expect("oracle in range");
                if actual != expected {
                    return Err(mismatch("main-only equality", expected));
                }
            }
            1 => {
                let expected = land.fitness(&xh).expect("oracle in range");
                if actual > expected {
                    return Err(mismatch("single intermediate exceeds the oracle", expected));
                }
                let e = best.entry(xh.clone()).or_insert((Value::MIN, bits.clone()));
                if actual > e.0 {
                    *e = (actual, bits.clone());
                }
            }
            2 => {
                let bound = land.eq4_bound(&xh).expect("oracle in range").unwrap();
                if actual > bound {
                    return Err(mismatch("two-intermediate bound", bound));
                }
            }
            _ => {}
        }
    }
    let mut seen: Vec<_> = best.into_iter().collect();
    seen.sort();
    for (xh, (actual, bits)) in seen {
        let expected = land.fitness(&xh).expect("oracle in range");
        if actual != expected {
            return Err(MasterMismatch {
                rule: "single intermediate: best encoding differs from the oracle",
                bits,
                expanded: xh,
                expected,
                actual,
            });
        }
    }
    Ok(count)
}
