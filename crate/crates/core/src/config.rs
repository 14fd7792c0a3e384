//! Named size limits shared by the constructions and the algorithms.

/// Largest group order accepted by constructions unless overridden.
pub const DEFAULT_SIZE_BUDGET: usize = 2_000_000;

/// Groups up to this order get a materialized multiplication table.
pub const TABLE_LIMIT: usize = 4096;

/// Axiom and homomorphism checks are exhaustive up to this order.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 200;

/// Default number of conjugacy classes the character table solver accepts.
pub const DEFAULT_CLASS_LIMIT: usize = 80;

/// Default seed for every randomized internal.
pub const DEFAULT_SEED: u64 = 0x0067_656c_6661_6e64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum order of any constructed group.
    pub size_budget: usize,
    /// Maximum number of conjugacy classes for character tables.
    pub class_limit: usize,
    /// Maximum group order for character tables.
    pub chartab_order_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            size_budget: DEFAULT_SIZE_BUDGET,
            class_limit: DEFAULT_CLASS_LIMIT,
            chartab_order_limit: DEFAULT_SIZE_BUDGET,
        }
    }
}
