//! Exhaustive frequency sequences over `S_n` and internal-zero classification.
//!
//! The enumerator walks the prefix tree of `S_n` depth first, which visits
//! permutations in lexicographic order. The copy count is carried down the
//! tree: appending value `v` to a prefix adds exactly the copies whose last
//! entry is `v`. Work is split by the first entry into `n` independent units
//! whose results are merged in unit order, so the outcome does not depend on
//! the thread count.

use std::num::NonZeroUsize;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::layered::OptimalTable;
use crate::perm::{binomial, factorial, Count, Matcher, Pattern, PatternKind, Permutation};

/// Largest `n` that can be enabled without the override flag.
pub const SOFT_LIMIT: usize = 13;
pub const DEFAULT_MAX_N: usize = 12;
/// Enumeration never goes past this: values are stored as `u8` and used
/// entries as a `u32` mask.
pub const HARD_LIMIT: usize = 16;

/// Rough single-thread throughput used for the refusal message.
const PERMS_PER_SECOND: f64 = 3.0e7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Threads(NonZeroUsize),
}

impl Parallelism {
    pub fn available() -> Self {
        std::thread::available_parallelism()
            .map(Parallelism::Threads)
            .unwrap_or(Parallelism::Sequential)
    }

    pub fn threads(n: usize) -> Self {
        match NonZeroUsize::new(n) {
            Some(t) if n > 1 => Parallelism::Threads(t),
            _ => Parallelism::Sequential,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    max_n: usize,
    pub parallelism: Parallelism,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { max_n: DEFAULT_MAX_N, parallelism: Parallelism::available() }
    }
}

impl EnumConfig {
    pub fn sequential() -> Self {
        EnumConfig { parallelism: Parallelism::Sequential, ..Default::default() }
    }

    /// Sets the enumeration bound. Values above 13 need `allow_override`.
    pub fn with_max_n(mut self, max_n: usize, allow_override: bool) -> Result<Self> {
        if max_n > HARD_LIMIT || (max_n > SOFT_LIMIT && !allow_override) {
            return Err(Error::BoundExceeded {
                n: max_n,
                bound: if allow_override { HARD_LIMIT } else { SOFT_LIMIT },
                estimate: cost_estimate(max_n),
            });
        }
        self.max_n = max_n;
        Ok(self)
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::BoundExceeded { n, bound: self.max_n, estimate: cost_estimate(n) });
        }
        Ok(())
    }
}

fn cost_estimate(n: usize) -> String {
    match factorial(n) {
        Some(count) => {
            let secs = count as f64 / PERMS_PER_SECOND;
            format!("S_{n} has {count} permutations (roughly {secs:.0} s single-threaded)")
        }
        None => format!("S_{n} is too large to enumerate"),
    }
}

/// Counts the copies of the pattern that end at a newly appended value.
#[derive(Clone, Debug)]
enum Extender {
    Monotone { l: usize },
    TwoLayer { l: usize },
    General(Matcher),
}

impl Extender {
    fn new(q: &Pattern) -> Self {
        match q.kind() {
            PatternKind::Monotone { l } => Extender::Monotone { l },
            PatternKind::TwoLayer { l } => Extender::TwoLayer { l },
            PatternKind::General => Extender::General(Matcher::last_first(q.perm().word())),
        }
    }

    /// Copies of the pattern in `prefix · v` that use `v`.
    fn copies_ending(&self, prefix: &[u8], v: u8, scratch: &mut Scratch) -> u64 {
        match *self {
            Extender::Monotone { l } => {
                if l == 1 {
                    return 1;
                }
                // runs[r][j]: increasing runs of length r+1 ending at j, all
                // entries below v.
                let t = prefix.len();
                let runs = &mut scratch.runs;
                for j in 0..t {
                    runs[j] = u64::from(prefix[j] < v);
                }
                for _ in 2..l {
                    for j in (0..t).rev() {
                        if prefix[j] >= v {
                            continue;
                        }
                        let mut acc = 0;
                        for i in 0..j {
                            if prefix[i] < prefix[j] {
                                acc += runs[i];
                            }
                        }
                        runs[j] = acc;
                    }
                }
                (0..t).filter(|&j| prefix[j] < v).map(|j| runs[j]).sum()
            }
            Extender::TwoLayer { l } => {
                // v plays the role of the final "2": pick a smaller entry,
                // then l - 1 entries above v in decreasing order.
                let t = prefix.len();
                if l == 1 {
                    return prefix.iter().filter(|&&w| w < v).count() as u64;
                }
                if l == 2 {
                    let mut smaller = 0u64;
                    let mut total = 0u64;
                    for &w in prefix {
                        if w < v {
                            smaller += 1;
                        } else {
                            total += smaller;
                        }
                    }
                    return total;
                }
                let chains = &mut scratch.runs;
                let mut smaller = 0u64;
                for j in 0..t {
                    if prefix[j] < v {
                        smaller += 1;
                        chains[j] = 0;
                    } else {
                        chains[j] = smaller;
                    }
                }
                for _ in 2..l {
                    for j in (0..t).rev() {
                        if prefix[j] < v {
                            continue;
                        }
                        let mut acc = 0;
                        for i in 0..j {
                            if prefix[i] > prefix[j] {
                                acc += chains[i];
                            }
                        }
                        chains[j] = acc;
                    }
                }
                (0..t).filter(|&j| prefix[j] > v).map(|j| chains[j]).sum()
            }
            Extender::General(ref matcher) => {
                let chosen = &mut scratch.chosen;
                chosen[0] = v;
                matcher.count_from(prefix, 0, 1, chosen)
            }
        }
    }
}

struct Scratch {
    runs: Vec<u64>,
    chosen: Vec<u8>,
}

struct Walker<'a, A, V> {
    n: usize,
    extender: &'a Extender,
    visit: &'a V,
    scratch: Scratch,
    word: Vec<u8>,
    acc: &'a mut A,
}

impl<A, V: Fn(&mut A, &[u8], u64)> Walker<'_, A, V> {
    fn walk(&mut self, used: u32, count: u64) {
        let depth = self.word.len();
        if depth == self.n {
            (self.visit)(self.acc, &self.word, count);
            return;
        }
        for v in 1..=self.n as u8 {
            if used & (1 << v) != 0 {
                continue;
            }
            let add = self.extender.copies_ending(&self.word, v, &mut self.scratch);
            self.word.push(v);
            self.walk(used | (1 << v), count + add);
            self.word.pop();
        }
    }
}

/// Folds `visit(acc, word, copies)` over every permutation of `S_n`.
///
/// Each first-entry unit starts from `init()`; unit results are merged left
/// to right, so `merge` sees units in lexicographic order.
pub fn fold_permutations<A, I, V, M>(
    n: usize,
    q: &Pattern,
    config: &EnumConfig,
    init: I,
    visit: V,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[u8], u64) + Sync,
    M: Fn(A, A) -> A,
{
    config.check(n)?;
    if n > HARD_LIMIT {
        return Err(Error::BoundExceeded { n, bound: HARD_LIMIT, estimate: cost_estimate(n) });
    }
    let extender = Extender::new(q);
    if n == 0 {
        let mut acc = init();
        visit(&mut acc, &[], 0);
        return Ok(acc);
    }
    let run_unit = |first: u8| -> A {
        let mut acc = init();
        let mut scratch = Scratch { runs: vec![0; n], chosen: vec![0; q.len()] };
        let start = extender.copies_ending(&[], first, &mut scratch);
        let mut walker = Walker {
            n,
            extender: &extender,
            visit: &visit,
            scratch,
            word: Vec::with_capacity(n),
            acc: &mut acc,
        };
        walker.word.push(first);
        walker.walk(1 << first, start);
        if n >= 10 {
            log::info!("S_{n}: finished unit {first}/{n} for pattern {q}");
        }
        acc
    };
    let units: Vec<u8> = (1..=n as u8).collect();
    let results: Vec<A> = match config.parallelism {
        Parallelism::Sequential => units.iter().map(|&f| run_unit(f)).collect(),
        Parallelism::Threads(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.get())
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| units.par_iter().map(|&f| run_unit(f)).collect())
        }
    };
    let mut iter = results.into_iter();
    let first = iter.next().expect("n >= 1 gives at least one unit");
    Ok(iter.fold(first, merge))
}

/// Histogram of copy counts of `q` over `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencySequence {
    n: usize,
    q: Pattern,
    counts: Vec<u64>,
}

impl FrequencySequence {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pattern(&self) -> &Pattern {
        &self.q
    }

    /// `counts()[c]` is the number of permutations with exactly `c` copies.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, c: usize) -> u64 {
        self.counts.get(c).copied().unwrap_or(0)
    }

    /// Largest realized count, `M_{n,q}`.
    pub fn max_c(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| u128::from(c)).sum()
    }

    /// Realized counts in decreasing order.
    pub fn realized_desc(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.counts.len()).rev().filter(|&c| self.counts[c] != 0)
    }

    pub fn is_log_concave(&self) -> bool {
        self.counts
            .windows(3)
            .all(|w| u128::from(w[1]) * u128::from(w[1]) >= u128::from(w[0]) * u128::from(w[2]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let report = internal_zeros(self);
        serde_json::json!({
            "n": self.n,
            "q": self.q.to_string(),
            "counts": self.counts,
            "internal_zeros": report.zero_positions,
            "classification": report.classification,
        })
    }

    /// `c,count` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("c,count\n");
        for (c, count) in self.counts.iter().enumerate() {
            out.push_str(&format!("{c},{count}\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    /// No internal zeros.
    Niz,
    /// At least one internal zero.
    Iz,
    /// `n` is shorter than the pattern.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IzReport {
    pub n: usize,
    pub q: Pattern,
    pub classification: Classification,
    pub zero_positions: Vec<usize>,
    pub max_c: Count,
}

/// Upper bound on the copy count used to size the histogram, when known.
fn known_maximum(n: usize, q: &Pattern) -> Option<usize> {
    match q.kind() {
        PatternKind::Monotone { l } => binomial(n as u64, l as u64).map(|m| m as usize),
        PatternKind::TwoLayer { l } if l >= 2 && n > l => {
            OptimalTable::build(l, n).ok().map(|t| t.m(n).get() as usize)
        }
        _ => None,
    }
}

pub fn frequency_sequence(n: usize, q: &Pattern, config: &EnumConfig) -> Result<FrequencySequence> {
    config.check(n)?;
    if n < q.len() {
        let total = factorial(n).ok_or(Error::Overflow("factorial"))?;
        return Ok(FrequencySequence { n, q: q.clone(), counts: vec![total] });
    }
    let size = known_maximum(n, q).map_or(1, |m| m + 1);
    let mut counts = fold_permutations(
        n,
        q,
        config,
        || vec![0u64; size],
        |hist, _, c| {
            let c = c as usize;
            if c >= hist.len() {
                hist.resize(c + 1, 0);
            }
            hist[c] += 1;
        },
        |mut a, b| {
            if b.len() > a.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )?;
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(FrequencySequence { n, q: q.clone(), counts })
}

pub fn internal_zeros(seq: &FrequencySequence) -> IzReport {
    let counts = seq.counts();
    let first_nonzero = counts.iter().position(|&c| c != 0);
    let zero_positions: Vec<usize> = match first_nonzero {
        Some(lo) => (lo..counts.len()).filter(|&c| counts[c] == 0).collect(),
        None => Vec::new(),
    };
    let classification = if seq.n < seq.q.len() {
        Classification::Trivial
    } else if zero_positions.is_empty() {
        Classification::Niz
    } else {
        Classification::Iz
    };
    IzReport {
        n: seq.n,
        q: seq.q.clone(),
        classification,
        zero_positions,
        max_c: Count::new(seq.max_c() as u64),
    }
}

/// `M_{n,q}` with the lexicographically first permutation attaining it.
pub fn max_count_bruteforce(n: usize, q: &Pattern, config: &EnumConfig) -> Result<(Count, Permutation)> {
    let (best, word) = fold_permutations(
        n,
        q,
        config,
        || (0u64, None::<Vec<u8>>),
        |acc, word, c| {
            if acc.1.is_none() || c > acc.0 {
                *acc = (c, Some(word.to_vec()));
            }
        },
        |a, b| if b.0 > a.0 { b } else { a },
    )?;
    let word = word.expect("S_n is non-empty");
    Ok((Count::new(best), Permutation::from_bytes(&word)))
}

/// For each realized count, the lexicographically first permutation with
/// exactly that many copies.
pub fn witnesses_by_count(
    n: usize,
    q: &Pattern,
    config: &EnumConfig,
) -> Result<Vec<Option<Permutation>>> {
    let firsts = fold_permutations(
        n,
        q,
        config,
        Vec::<Option<Vec<u8>>>::new,
        |acc, word, c| {
            let c = c as usize;
            if c >= acc.len() {
                acc.resize(c + 1, None);
            }
            if acc[c].is_none() {
                acc[c] = Some(word.to_vec());
            }
        },
        |mut a, b| {
            if b.len() > a.len() {
                a.resize(b.len(), None);
            }
            for (x, y) in a.iter_mut().zip(b) {
                if x.is_none() {
                    *x = y;
                }
            }
            a
        },
    )?;
    Ok(firsts.into_iter().map(|w| w.map(|w| Permutation::from_bytes(&w))).collect())
}

/// Every permutation of `S_n` whose copy count satisfies `keep`, in
/// lexicographic order, with its count.
pub fn collect_where<F>(
    n: usize,
    q: &Pattern,
    config: &EnumConfig,
    keep: F,
) -> Result<Vec<(Permutation, Count)>>
where
    F: Fn(u64) -> bool + Sync,
{
    fold_permutations(
        n,
        q,
        config,
        Vec::new,
        |acc, word, c| {
            if keep(c) {
                acc.push((Permutation::from_bytes(word), Count::new(c)));
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::count_occurrences;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn seq(n: usize, q: &str) -> FrequencySequence {
        frequency_sequence(n, &pat(q), &EnumConfig::sequential()).unwrap()
    }

    #[test]
    fn small_132() {
        // Only 132 itself contains 132 in S_3.
        assert_eq!(seq(3, "132").counts(), &[5, 1]);
        let trivial = seq(2, "132");
        assert_eq!(trivial.counts(), &[2]);
        assert_eq!(internal_zeros(&trivial).classification, Classification::Trivial);
        assert_eq!(internal_zeros(&seq(4, "132")).classification, Classification::Niz);
    }

    #[test]
    fn n6_132_is_iz_near_the_top() {
        let s = seq(6, "132");
        let report = internal_zeros(&s);
        assert_eq!(report.classification, Classification::Iz);
        let m = s.max_c();
        assert_eq!(m, 12);
        assert!(!report.zero_positions.is_empty());
        assert!(report.zero_positions.iter().all(|&c| c == m - 1 || c == m - 2));
    }

    #[test]
    fn monotone_123_n4() {
        let s = seq(4, "123");
        assert_eq!(s.get(4), 1);
        assert_eq!(s.get(3), 0);
        assert_ne!(s.get(2), 0);
    }

    #[test]
    fn counts_agree_with_direct_counting() {
        for q in ["132", "123", "231", "1432", "2413", "21", "1"] {
            let q = pat(q);
            let all = collect_where(6, &q, &EnumConfig::sequential(), |_| true).unwrap();
            assert_eq!(all.len(), 720);
            for (p, c) in &all {
                assert_eq!(count_occurrences(p, &q).unwrap(), *c, "{p} / {q}");
            }
            assert!(all.windows(2).all(|w| w[0].0 < w[1].0), "lexicographic order");
        }
    }

    #[test]
    fn totals_are_factorial() {
        for n in 0..=8 {
            for q in ["132", "12", "1432", "321"] {
                let s = seq(n, q);
                assert_eq!(s.total(), u128::from(factorial(n).unwrap()));
                assert_ne!(*s.counts().last().unwrap(), 0);
            }
        }
    }

    #[test]
    fn inversions_have_no_internal_zeros_and_are_log_concave() {
        for n in 1..=9 {
            for q in ["12", "21"] {
                let s = seq(n, q);
                assert_eq!(internal_zeros(&s).zero_positions, Vec::<usize>::new());
                assert!(s.is_log_concave(), "n = {n}");
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let par = EnumConfig::default().with_parallelism(Parallelism::threads(4));
        for q in ["132", "2413"] {
            let a = frequency_sequence(8, &pat(q), &EnumConfig::sequential()).unwrap();
            let b = frequency_sequence(8, &pat(q), &par).unwrap();
            assert_eq!(a, b);
            let wa = witnesses_by_count(7, &pat(q), &EnumConfig::sequential()).unwrap();
            let wb = witnesses_by_count(7, &pat(q), &par).unwrap();
            assert_eq!(wa, wb);
        }
    }

    #[test]
    fn max_examples() {
        let cfg = EnumConfig::sequential();
        assert_eq!(max_count_bruteforce(5, &pat("132"), &cfg).unwrap().0.get(), 6);
        assert_eq!(max_count_bruteforce(4, &pat("1432"), &cfg).unwrap().0.get(), 1);
        for n in 2..=8 {
            let (m, w) = max_count_bruteforce(n, &pat("12"), &cfg).unwrap();
            assert_eq!(m.get(), binomial(n as u64, 2).unwrap());
            assert_eq!(w, Permutation::identity(n));
        }
    }

    #[test]
    fn bound_is_enforced() {
        let cfg = EnumConfig::sequential().with_max_n(5, false).unwrap();
        let err = frequency_sequence(6, &pat("132"), &cfg).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { n: 6, bound: 5, .. }));
        assert!(err.to_string().contains("720 permutations"));
        assert!(EnumConfig::default().with_max_n(14, false).is_err());
        assert!(EnumConfig::default().with_max_n(13, false).is_ok());
        assert!(EnumConfig::default().with_max_n(14, true).is_ok());
        assert!(EnumConfig::default().with_max_n(17, true).is_err());
    }

    #[test]
    fn json_and_csv() {
        let s = seq(3, "132");
        assert_eq!(
            s.to_json().to_string(),
            r#"{"classification":"niz","counts":[5,1],"internal_zeros":[],"n":3,"q":"132"}"#
        );
        assert_eq!(s.to_csv(), "c,count\n0,5\n1,1\n");
    }
}
