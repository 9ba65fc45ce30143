//! Constructions of permutations with a prescribed number of pattern copies.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freq::{witnesses_by_count, EnumConfig};
use crate::layered::OptimalTable;
use crate::perm::{binomial, count_monotone, count_occurrences, Count, Pattern, Permutation};

/// Lexicographically first 132-witnesses for every realizable `(n, c)` with
/// small `n`, produced by exhaustive search (`patfreq base-table`).
const BASE_TABLE_JSON: &str = include_str!("../data/realize132_base.json");
pub const BASE_TABLE_FORMAT: u32 = 1;
pub const BASE_TABLE_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseEntry {
    pub n: usize,
    pub c: u64,
    pub perm: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseTable {
    pub format_version: u32,
    pub pattern: String,
    pub max_n: usize,
    pub witnesses: Vec<BaseEntry>,
}

impl BaseTable {
    pub fn parse(json: &str) -> Result<Self> {
        let table: BaseTable = serde_json::from_str(json).map_err(|e| Error::Data(e.to_string()))?;
        if table.format_version != BASE_TABLE_FORMAT {
            return Err(Error::Data(format!(
                "base table format {} (expected {BASE_TABLE_FORMAT})",
                table.format_version
            )));
        }
        if table.pattern != "132" {
            return Err(Error::Data(format!("base table is for pattern {}", table.pattern)));
        }
        Ok(table)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("base table serializes");
        s.push('\n');
        s
    }

    fn lookup(&self) -> HashMap<(usize, u64), Permutation> {
        self.witnesses.iter().map(|e| ((e.n, e.c), e.perm.clone())).collect()
    }
}

/// Regenerates the base table by exhaustive enumeration of `S_1..S_max_n`.
pub fn generate_base_table(max_n: usize, config: &EnumConfig) -> Result<BaseTable> {
    let q = Pattern::two_layer(2)?;
    let mut witnesses = Vec::new();
    for n in 1..=max_n {
        for (c, w) in witnesses_by_count(n, &q, config)?.into_iter().enumerate() {
            if let Some(perm) = w {
                witnesses.push(BaseEntry { n, c: c as u64, perm });
            }
        }
    }
    Ok(BaseTable { format_version: BASE_TABLE_FORMAT, pattern: "132".into(), max_n, witnesses })
}

fn base_lookup() -> &'static HashMap<(usize, u64), Permutation> {
    static LOOKUP: OnceLock<HashMap<(usize, u64), Permutation>> = OnceLock::new();
    LOOKUP.get_or_init(|| {
        BaseTable::parse(BASE_TABLE_JSON)
            .expect("embedded base table is well formed")
            .lookup()
    })
}

/// A permutation with `c` inversions and no copy of 132.
///
/// Built recursively: for `c <= C(n-1, 2)` append `n` to a solution for
/// `n - 1`; otherwise put `n` first and solve for `c - (n - 1)`.
pub fn inversions_no_132(n: usize, c: u64) -> Result<Permutation> {
    let max = binomial(n as u64, 2).ok_or(Error::Overflow("inversions_no_132"))?;
    if c > max {
        return Err(Error::OutOfRange(format!("c = {c} exceeds C({n}, 2) = {max}")));
    }
    let mut front = Vec::new();
    let mut back = Vec::new();
    let (mut size, mut rest) = (n, c);
    while size > 0 {
        let top = size as u32;
        let below = binomial(size as u64 - 1, 2).unwrap_or(u64::MAX);
        if rest <= below {
            back.push(top);
        } else {
            front.push(top);
            rest -= size as u64 - 1;
        }
        size -= 1;
    }
    back.reverse();
    front.extend(back);
    Ok(Permutation::from_word_unchecked(front))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    Realized(Permutation),
    /// No construction found; for `n <= 10` this certifies an internal zero.
    Unrealizable,
}

impl Realization {
    pub fn permutation(&self) -> Option<&Permutation> {
        match self {
            Realization::Realized(p) => Some(p),
            Realization::Unrealizable => None,
        }
    }
}

/// Builds 132-permutations with a prescribed copy count.
///
/// For target `c` in `S_n` the realizer writes `c = k*s + t`, realizes `t`
/// in `S_k` and stacks the shifted `inversions_no_132(n - k, s)` on top:
/// each of the `k` low entries forms one copy with each inversion above it.
/// `k = k_n` is tried first, then the exhaustive base table (`n <= 8`), then
/// every other split `k`.
pub struct Realizer132 {
    table: OptimalTable,
    memo: HashMap<(usize, u64), Option<Permutation>>,
}

impl Realizer132 {
    pub fn new(n_max: usize) -> Result<Self> {
        Ok(Realizer132 { table: OptimalTable::build(2, n_max.max(3))?, memo: HashMap::new() })
    }

    pub fn table(&self) -> &OptimalTable {
        &self.table
    }

    pub fn realize(&mut self, n: usize, c: u64) -> Result<Realization> {
        if n > self.table.n_max() {
            return Err(Error::OutOfRange(format!(
                "n = {n} above realizer range {}",
                self.table.n_max()
            )));
        }
        let max = self.table.m(n).get();
        if c > max {
            return Err(Error::OutOfRange(format!("c = {c} exceeds M_{n} = {max}")));
        }
        match self.search(n, c) {
            Some(p) => {
                let got = count_occurrences(&p, &Pattern::two_layer(2)?)?;
                if got.get() != c {
                    return Err(Error::SelfCheck(format!("built {p} with {got} copies, wanted {c}")));
                }
                Ok(Realization::Realized(p))
            }
            None => Ok(Realization::Unrealizable),
        }
    }

    fn search(&mut self, n: usize, c: u64) -> Option<Permutation> {
        if c == 0 {
            return Some(Permutation::decreasing(n));
        }
        if n < 3 {
            return None;
        }
        if let Some(hit) = self.memo.get(&(n, c)) {
            return hit.clone();
        }
        let kn = self.table.k(n).expect("n >= 3");
        let mut found = self.split(n, c, kn);
        if found.is_none() && n <= BASE_TABLE_MAX_N {
            found = base_lookup().get(&(n, c)).cloned();
        }
        if found.is_none() {
            found = (1..n).rev().filter(|&k| k != kn).find_map(|k| self.split(n, c, k));
        }
        self.memo.insert((n, c), found.clone());
        found
    }

    fn split(&mut self, n: usize, c: u64, k: usize) -> Option<Permutation> {
        let m = n - k;
        let k64 = k as u64;
        let max_s = binomial(m as u64, 2)?.min(c / k64);
        let mk = self.table.m(k).get();
        for s in (0..=max_s).rev() {
            let t = c - k64 * s;
            if t > mk {
                break;
            }
            if let Some(lower) = self.search(k, t) {
                let upper = inversions_no_132(m, s).ok()?;
                return Some(lower.direct_sum(&upper));
            }
        }
        None
    }
}

/// Convenience wrapper around [`Realizer132`].
pub fn realize_132(n: usize, c: u64) -> Result<Realization> {
    Realizer132::new(n)?.realize(n, c)
}

/// `2134…n` and its number of `12…l` copies, `C(n-1, l) + C(n-2, l-1)`:
/// the runner-up count after the identity.
pub fn monotone_second_best(n: usize, l: usize) -> Result<(Permutation, Count)> {
    if l < 3 || n < l {
        return Err(Error::InvalidArgument(format!("need n >= l >= 3, got n = {n}, l = {l}")));
    }
    let p = Permutation::identity(n).adjacent_transposition(0);
    let (n64, l64) = (n as u64, l as u64);
    let expected = binomial(n64 - 1, l64)
        .zip(binomial(n64 - 2, l64 - 1))
        .and_then(|(a, b)| a.checked_add(b))
        .ok_or(Error::Overflow("monotone_second_best"))?;
    let got = count_monotone(&p, l)?;
    if got.get() != expected {
        return Err(Error::SelfCheck(format!("{p} has {got} copies of 12..{l}, expected {expected}")));
    }
    Ok((p, got))
}
