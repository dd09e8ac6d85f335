/// Resource budgets shared by the DP routines and the enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest total weight `omega` the subset-sum tables will accept.
    pub max_total_weight: u64,
    /// Largest number of per-party weight tuples the assignment DP may hold.
    pub dp_states: usize,
    /// Largest `m^k` the brute-force enumerator will walk.
    pub brute_force_assignments: u64,
}

impl Limits {
    pub const DEFAULT_MAX_TOTAL_WEIGHT: u64 = 1_000_000;
    pub const DEFAULT_DP_STATES: usize = 4_000_000;
    pub const DEFAULT_BRUTE_FORCE_ASSIGNMENTS: u64 = 1 << 24;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_total_weight: Self::DEFAULT_MAX_TOTAL_WEIGHT,
            dp_states: Self::DEFAULT_DP_STATES,
            brute_force_assignments: Self::DEFAULT_BRUTE_FORCE_ASSIGNMENTS,
        }
    }
}
