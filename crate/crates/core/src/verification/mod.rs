//! Brute-force oracles and checkers for the construction's claims.

mod checks;
pub mod faults;
mod oracle;
mod rank1;
mod report;

pub use checks::{
    brute_force_check_prop11, check_boolean_equivalence, check_boolean_master, check_boolean_trace,
    check_engine_oracle, check_padding_equations, check_padding_on, check_pathwidth,
    check_pathwidth_on, check_rank1_report, check_theorem8, doubling_increment, run_all, run_check,
    Caps, CHECK_NAMES,
};
pub use oracle::exhaustive_steepest_oracle;
pub use rank1::{check_rank1_impossibility, rank1_sum, Rank1Outcome};
pub use report::{CheckReport, Counterexample, Tally, Verdict};
