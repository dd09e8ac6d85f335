//! Apportionment with weighted seats.
//!
//! Seats carry integer weights and parties are entitled to a share of the
//! total weight proportional to their votes. The crate provides
//!
//! * the weighted assignment methods (`Adams_w`, `D'Hondt_w`, Greedy) and
//!   their unit-count counterparts ([`methods`]),
//! * checkers for the lower-quota, upper-quota and envy axioms ([`axioms`]),
//! * exact solvers and a brute-force oracle for assignments meeting the
//!   obtainable quotas ([`solvers`]),
//! * house-monotonicity probes ([`monotonicity`]),
//! * document formats, corpus generation and study reports ([`harness`]).
//!
//! All decisions use exact rational arithmetic.

pub mod axioms;
pub mod error;
pub mod fraction;
pub mod harness;
pub mod instance;
pub mod limits;
pub mod methods;
pub mod monotonicity;
pub mod quota;
pub mod reachable;
pub mod solvers;

pub use axioms::{
    check_all, check_envy, check_lower_quota, check_upper_quota, delta_distance, Axiom,
    AxiomChecker, AxiomReport, AxiomVerdict, EnvyAxiom, LowerQuotaAxiom, UpperQuotaAxiom,
    Violation, Witness,
};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use instance::{validate_instance, ElectionInstance, SeatAssignment};
pub use limits::Limits;
pub use methods::{
    classic_assign, divisor_assign, greedy_assign, ClassicMethod, DivisorFamily, Method,
    MethodTrace, Score, TieBreak,
};
pub use monotonicity::{check_house_monotonicity, search_hm_violation, HmMode, HmReport};
pub use quota::{
    lower_quota_seats, obtainable_lower_quota, obtainable_upper_quota, quota, representation,
    QuotaTable,
};
pub use reachable::{reachable_weights, ReachableSet};
pub use solvers::{
    brute_force, find_by_dp, search_counterexample, two_party_construct, Claim, DpTarget,
    SolveResult, SolveStatus,
};
