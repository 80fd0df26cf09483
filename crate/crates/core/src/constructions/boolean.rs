//! Boolean encodings: each expanded variable becomes a collection of bits.

use std::collections::BTreeMap;

use serde::Serialize;

use super::expansion::ExpansionMap;
use super::tabulate::{tabulate, Slot};
use crate::error::{Error, Result};
use crate::model::{
    Assignment, DomainSpec, InstanceMeta, StateId, ValuedConstraint, VarId, VcspInstance,
};

/// What a collection's bits spell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decoded {
    State { state: StateId, code: u32 },
    Junk { code: u32 },
}

impl Decoded {
    pub fn state(self) -> Option<StateId> {
        match self {
            Decoded::State { state, .. } => Some(state),
            Decoded::Junk { .. } => None,
        }
    }
}

/// The bits standing for one expanded variable. Codes are read with the
/// first bit most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    pub offset: VarId,
    pub bits: usize,
    pub codes: BTreeMap<u32, StateId>,
    /// Code used when encoding each state.
    pub primary: Vec<u32>,
    pub labels: Vec<String>,
}

impl Collection {
    pub fn decode(&self, code: u32) -> Decoded {
        match self.codes.get(&code) {
            Some(&state) => Decoded::State { state, code },
            None => Decoded::Junk { code },
        }
    }

    pub fn codes_of(&self, state: StateId) -> Vec<u32> {
        self.codes
            .iter()
            .filter(|(_, &s)| s == state)
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn code_string(&self, code: u32) -> String {
        format!("{:0width$b}", code, width = self.bits)
    }

    pub fn vars(&self) -> std::ops::Range<VarId> {
        self.offset..self.offset + self.bits
    }

    /// Reads this collection's code from a full bit assignment.
    pub fn read(&self, bits: &[StateId]) -> u32 {
        bits[self.vars()]
            .iter()
            .fold(0, |acc, &b| acc << 1 | b as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanCodec {
    pub collections: Vec<Collection>,
}

impl BooleanCodec {
    pub fn n_bits(&self) -> usize {
        self.collections.iter().map(|c| c.bits).sum()
    }

    pub fn domains(&self) -> Vec<DomainSpec> {
        self.collections
            .iter()
            .enumerate()
            .flat_map(|(g, c)| {
                (0..c.bits).map(move |b| DomainSpec::boolean(format!("G{}.{}", g + 1, b + 1)))
            })
            .collect()
    }

    pub fn encode(&self, x: &Assignment) -> Result<Assignment> {
        if x.len() != self.collections.len() {
            return Err(Error::AssignmentLength {
                expected: self.collections.len(),
                got: x.len(),
            });
        }
        let mut bits = Vec::with_capacity(self.n_bits());
        for (k, (c, &s)) in self.collections.iter().zip(x.iter()).enumerate() {
            let &code = c.primary.get(s).ok_or(Error::StateOutOfRange {
                var: k,
                state: s,
                size: c.primary.len(),
            })?;
            bits.extend((0..c.bits).rev().map(|b| (code >> b & 1) as StateId));
        }
        Ok(bits.into())
    }

    pub fn decode(&self, bits: &Assignment) -> Result<Vec<Decoded>> {
        if bits.len() != self.n_bits() {
            return Err(Error::AssignmentLength {
                expected: self.n_bits(),
                got: bits.len(),
            });
        }
        if let Some(k) = bits.iter().position(|&b| b > 1) {
            return Err(Error::StateOutOfRange {
                var: k,
                state: bits[k],
                size: 2,
            });
        }
        Ok(self
            .collections
            .iter()
            .map(|c| c.decode(c.read(bits.as_slice())))
            .collect())
    }

    /// The decoded expanded assignment, or `None` if any collection is junk.
    pub fn decode_states(&self, bits: &Assignment) -> Result<Option<Assignment>> {
        Ok(self
            .decode(bits)?
            .into_iter()
            .map(Decoded::state)
            .collect::<Option<Vec<_>>>()
            .map(Assignment::new))
    }
}

/// Per-collection decoding of a bit assignment; total, junk included.
pub fn decode_assignment(codec: &BooleanCodec, bits: &Assignment) -> Result<Vec<Decoded>> {
    codec.decode(bits)
}

/// One-hot mains and two-hot intermediates over `|D_k|` bits per variable.
pub fn generic_codec(expanded_domains: &[DomainSpec], map: &ExpansionMap) -> BooleanCodec {
    let mut offset = 0;
    let collections = map
        .vars
        .iter()
        .zip(expanded_domains)
        .map(|(e, d)| {
            let bits = e.mains;
            let hot = |u: StateId| 1u32 << (bits - 1 - u);
            let primary: Vec<u32> = (0..e.mains)
                .map(hot)
                .chain(e.intermediates.iter().map(|&(u, v)| hot(u) | hot(v)))
                .collect();
            let codes = primary.iter().enumerate().map(|(s, &c)| (c, s)).collect();
            let c = Collection {
                offset,
                bits,
                codes,
                primary,
                labels: d.states.clone(),
            };
            offset += bits;
            c
        })
        .collect();
    BooleanCodec { collections }
}

/// Lifts every constraint of an expanded instance to its bits: the original
/// value wherever each scoped collection decodes to a state, 0 on junk.
pub fn boolean_encode_generic(
    expanded: &VcspInstance,
    map: &ExpansionMap,
) -> Result<(VcspInstance, BooleanCodec)> {
    expanded.ensure_valid()?;
    if map.vars.len() != expanded.n_vars()
        || map
            .vars
            .iter()
            .zip(&expanded.domains)
            .any(|(e, d)| e.size() != d.size())
    {
        return Err(Error::InvalidInstance(vec![
            "expansion map does not match the expanded domains".into(),
        ]));
    }
    let codec = generic_codec(&expanded.domains, map);
    let constraints = expanded
        .constraints
        .iter()
        .map(|c| lift_constraint(c, expanded, &codec))
        .collect::<Result<Vec<_>>>()?;
    let instance = VcspInstance {
        meta: InstanceMeta {
            family: format!("{}-bool", expanded.meta.family),
            n: expanded.meta.n,
            int_range: expanded.meta.int_range,
        },
        domains: codec.domains(),
        constraints,
    };
    instance.ensure_valid()?;
    Ok((instance, codec))
}

fn lift_constraint(
    c: &ValuedConstraint,
    expanded: &VcspInstance,
    codec: &BooleanCodec,
) -> Result<ValuedConstraint> {
    let cols: Vec<&Collection> = c.scope.iter().map(|&k| &codec.collections[k]).collect();
    let slots: Vec<Slot> = cols
        .iter()
        .flat_map(|col| col.vars().map(|var| Slot::Var { var, size: 2 }))
        .collect();
    tabulate(c.label.clone(), &slots, |t| {
        let mut idx = 0;
        let mut pos = 0;
        for (col, &k) in cols.iter().zip(&c.scope) {
            let code = t[pos..pos + col.bits]
                .iter()
                .fold(0u32, |a, &b| a << 1 | b as u32);
            pos += col.bits;
            match col.decode(code) {
                Decoded::State { state, .. } => idx = idx * expanded.domains[k].size() + state,
                Decoded::Junk { .. } => return Some(0),
            }
        }
        Some(c.values[idx])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_2by3, build_3by5};

    fn generic(n: usize) -> (VcspInstance, VcspInstance, BooleanCodec) {
        let base = build_2by3(n).unwrap();
        let expanded = build_3by5(n).unwrap();
        let (bool_inst, codec) =
            boolean_encode_generic(&expanded, &ExpansionMap::of(&base)).unwrap();
        (expanded, bool_inst, codec)
    }

    #[test]
    fn codes_follow_the_hot_rules() {
        let (_, _, codec) = generic(2);
        let even = &codec.collections[1];
        assert_eq!(even.code_string(even.primary[0]), "100");
        assert_eq!(even.code_string(even.primary[3]), "110");
        assert_eq!(even.code_string(even.primary[4]), "011");
        assert_eq!(even.decode(0b101), Decoded::Junk { code: 0b101 });
        let odd = &codec.collections[0];
        assert_eq!(odd.code_string(odd.primary[2]), "11");
        assert_eq!(odd.decode(0b00), Decoded::Junk { code: 0 });
    }

    #[test]
    fn round_trip_and_lifted_values() {
        let (expanded, bool_inst, codec) = generic(3);
        // The even-centred ternary spans 2 + 2 + 3 bits.
        assert_eq!(bool_inst.max_arity(), 7);
        for x in expanded.assignments() {
            let bits = codec.encode(&x).unwrap();
            assert_eq!(codec.decode_states(&bits).unwrap(), Some(x.clone()));
            assert_eq!(
                bool_inst.evaluate_fitness(&bits).unwrap(),
                expanded.evaluate_fitness(&x).unwrap()
            );
        }
    }

    #[test]
    fn junk_contributes_nothing() {
        let (_, bool_inst, codec) = generic(2);
        // Both collections junk: 00 and 000.
        let bits = Assignment::new(vec![0; codec.n_bits()]);
        assert_eq!(codec.decode_states(&bits).unwrap(), None);
        assert_eq!(bool_inst.evaluate_fitness(&bits).unwrap(), 0);
    }
}
