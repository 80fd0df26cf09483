//! Builders for the exponential-ascent instances and the transforms between them.

mod boolean;
mod expansion;
mod family;
mod pathwidth4;
pub mod tables;
mod tabulate;
mod three_by_five;
mod two_by_three;
mod weights;

pub use boolean::{
    boolean_encode_generic, decode_assignment, generic_codec, BooleanCodec, Collection, Decoded,
};
pub use expansion::{
    expand_landscape, simulate_ascent, ExpandedDomain, ExpandedLandscape, ExpansionMap,
};
pub use family::{build_family, canonical_start, Built, Family};
pub use pathwidth4::{
    build_boolean_pw4, build_boolean_pw4_with, master_invariant, pw4_codec, BooleanPw4,
    MasterMismatch, SELF_CHECK_MAX_N,
};
pub use three_by_five::{build_3by5, build_3by5_with};
pub use two_by_three::{build_2by3, build_2by3_with};
pub use weights::{f_max, weight_m, WeightSchedule};
