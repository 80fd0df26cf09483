use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::boolean::BooleanCodec;
use super::pathwidth4::{build_boolean_pw4_with, pw4_codec};
use super::three_by_five::build_3by5_with;
use super::two_by_three::build_2by3_with;
use crate::error::{Error, Result};
use crate::model::{Assignment, IntRange, PathDecomposition, VcspInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "2by3")]
    TwoByThree,
    #[serde(rename = "3by5")]
    ThreeByFive,
    #[serde(rename = "bool-pw4")]
    BoolPw4,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::TwoByThree, Family::ThreeByFive, Family::BoolPw4];

    pub fn name(self) -> &'static str {
        match self {
            Family::TwoByThree => "2by3",
            Family::ThreeByFive => "3by5",
            Family::BoolPw4 => "bool-pw4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                Error::Format(format!(
                    "unknown family {s:?} (expected 2by3, 3by5 or bool-pw4)"
                ))
            })
    }
}

/// A built instance with whatever sidecars its family has.
#[derive(Clone, Debug)]
pub struct Built {
    pub family: Family,
    pub instance: VcspInstance,
    pub codec: Option<BooleanCodec>,
    pub decomposition: Option<PathDecomposition>,
    pub start: Assignment,
}

pub fn build_family(family: Family, n: usize, range: IntRange) -> Result<Built> {
    Ok(match family {
        Family::TwoByThree => Built {
            family,
            instance: build_2by3_with(n, range)?,
            codec: None,
            decomposition: None,
            start: Assignment::uniform(n, 0),
        },
        Family::ThreeByFive => Built {
            family,
            instance: build_3by5_with(n, range)?,
            codec: None,
            decomposition: None,
            start: Assignment::uniform(n, 0),
        },
        Family::BoolPw4 => {
            let p = build_boolean_pw4_with(n, range)?;
            Built {
                family,
                instance: p.instance,
                codec: Some(p.codec),
                decomposition: Some(p.decomposition),
                start: p.start,
            }
        }
    })
}

/// `A^n`, encoded for the Boolean family.
pub fn canonical_start(family: Family, n: usize) -> Result<Assignment> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let all_a = Assignment::uniform(n, 0);
    match family {
        Family::TwoByThree | Family::ThreeByFive => Ok(all_a),
        Family::BoolPw4 => pw4_codec(n).encode(&all_a),
    }
}
