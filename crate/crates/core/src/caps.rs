//! Resource caps. Every potentially explosive operation checks one of these
//! before doing work and refuses loudly instead of thrashing.

/// Caps applied across the crate. All fields are plain data so callers can
/// tighten or relax individual limits.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum group order that will be fully enumerated.
    pub max_order: u64,
    /// Maximum group order for automorphism-group brute force.
    pub aut_max_order: u64,
    /// Maximum group order for ordered-pair classification sweeps.
    pub pair_max_order: u64,
    /// Maximum number of word evaluations a single image computation may take.
    pub eval_budget: u128,
    /// Maximum number of distinct states a word search may visit.
    pub search_state_cap: u64,
    /// Cayley tables up to this order get a full associativity check;
    /// larger tables are spot-checked on a fixed sample.
    pub cayley_full_assoc: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 1_000_000,
            aut_max_order: 10_000,
            pair_max_order: 1_000,
            eval_budget: 1_000_000_000,
            search_state_cap: 2_000_000,
            cayley_full_assoc: 512,
        }
    }
}
