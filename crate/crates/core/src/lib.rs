//! Pattern frequency sequences of permutations.
//!
//! * [`perm`]: permutations, patterns, layer profiles, occurrence counting.
//! * [`freq`]: exhaustive frequency sequences over `S_n` and internal zeros.
//! * [`layered`]: the optimal-count recursion for `1(l+1)l…2`.
//! * [`realize`]: permutations with a prescribed number of copies.
//! * [`poset`]: finite posets, ordinal sums, LOT structure, `A_1 ⊕ A_l` counts.
//! * [`verify`]: numerical sweeps that re-check the structural claims.

pub mod error;
pub mod freq;
pub mod layered;
pub mod perm;
pub mod poset;
pub mod realize;
pub mod verify;

pub use error::{Error, Result};
pub use freq::{
    frequency_sequence, internal_zeros, max_count_bruteforce, Classification, EnumConfig,
    FrequencySequence, IzReport, Parallelism,
};
pub use layered::OptimalTable;
pub use poset::{Decomposition, Poset};
pub use realize::{inversions_no_132, monotone_second_best, realize_132, Realization, Realizer132};
pub use verify::{verify, verify_all, Ledger, VerificationReport, VerifyParams};
pub use perm::{
    count_inversions, count_monotone, count_occurrences, count_q_in_layered, from_layers,
    is_layered, Count, LayerProfile, Pattern, PatternKind, Permutation,
};
