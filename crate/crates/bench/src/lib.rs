//! Shared inputs for the benchmarks.

use patfreq::{LayerProfile, OptimalTable, Pattern, Permutation};

/// The canonical 132-optimal permutation of length `n`.
pub fn optimal_132(n: usize) -> Permutation {
    let table = OptimalTable::build(2, n.max(3)).expect("valid table range");
    let profile: LayerProfile = table.optimal_profile(n).expect("n within table");
    patfreq::from_layers(&profile)
}

pub fn pattern(word: &str) -> Pattern {
    word.parse().expect("benchmark patterns are valid")
}
