//! Permutations, patterns, layer profiles and occurrence counting.
//!
//! Permutations use one-line notation over the values `1..=n`. A copy of a
//! pattern `q` in `p` is an index subsequence of `p` whose entries are in the
//! same relative order as `q`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact, non-negative number of copies (or of permutations).
///
/// All arithmetic on counts is checked; overflow surfaces as
/// [`Error::Overflow`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Count(u64);

impl Count {
    pub const ZERO: Count = Count(0);

    pub const fn new(value: u64) -> Self {
        Count(value)
    }

    pub const fn get(self) -> u64 {
        self.0
    }

    pub fn checked_add(self, rhs: Count) -> Result<Count> {
        self.0.checked_add(rhs.0).map(Count).ok_or(Error::Overflow("count addition"))
    }

    pub fn checked_mul(self, rhs: u64) -> Result<Count> {
        self.0.checked_mul(rhs).map(Count).ok_or(Error::Overflow("count multiplication"))
    }

    /// Converts a wide accumulator, failing loudly when it does not fit.
    pub fn from_wide(value: u128) -> Result<Count> {
        u64::try_from(value).map(Count).map_err(|_| Error::Overflow("count narrowing"))
    }
}

impl From<u64> for Count {
    fn from(value: u64) -> Self {
        Count(value)
    }
}

impl From<Count> for u64 {
    fn from(c: Count) -> Self {
        c.0
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    u64::try_from(acc).ok()
}

pub(crate) fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[idx - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub(crate) fn from_bytes(word: &[u8]) -> Self {
        Self::from_word_unchecked(word.iter().map(|&v| u32::from(v)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation { word: (1..=n as u32).collect() }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation { word: (1..=n as u32).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// Reverse followed by complement (`v -> n + 1 - v`).
    pub fn reverse_complement(&self) -> Self {
        let n = self.len() as u32;
        Permutation { word: self.word.iter().rev().map(|&v| n + 1 - v).collect() }
    }

    /// Swaps the entries at positions `i` and `i + 1`.
    pub fn adjacent_transposition(&self, i: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i, i + 1);
        Permutation { word }
    }

    /// Concatenates `self` with `upper` shifted up by `self.len()`.
    pub fn direct_sum(&self, upper: &Permutation) -> Self {
        let k = self.len() as u32;
        let mut word = self.word.clone();
        word.extend(upper.word.iter().map(|&v| v + k));
        Permutation { word }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.word.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts a comma-free digit string (`41523`) or comma-separated
    /// integers (`10,2,1,...`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::InvalidPermutation(format!("`{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidPermutation(format!("unexpected `{c}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The families with specialized counting routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternKind {
    /// `12…l`
    Monotone { l: usize },
    /// `1(l+1)l…2`: a singleton layer below a descending layer of length `l`.
    TwoLayer { l: usize },
    General,
}

/// A pattern: a non-empty permutation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    perm: Permutation,
}

impl Pattern {
    pub fn new(perm: Permutation) -> Result<Self> {
        if perm.is_empty() {
            return Err(Error::InvalidPermutation("pattern must have length >= 1".into()));
        }
        Ok(Pattern { perm })
    }

    pub fn monotone(l: usize) -> Result<Self> {
        Pattern::new(Permutation::identity(l))
    }

    /// The pattern `1(l+1)l…2`; `two_layer(2)` is `132`.
    pub fn two_layer(l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidArgument("two-layer pattern needs l >= 1".into()));
        }
        let mut word = vec![1];
        word.extend((2..=l as u32 + 1).rev());
        Pattern::new(Permutation::from_word_unchecked(word))
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn kind(&self) -> PatternKind {
        let w = self.perm.word();
        let l = w.len();
        if w.iter().enumerate().all(|(i, &v)| v as usize == i + 1) {
            PatternKind::Monotone { l }
        } else if l >= 2 && w[0] == 1 && w[1..].windows(2).all(|p| p[0] == p[1] + 1) {
            PatternKind::TwoLayer { l: l - 1 }
        } else {
            PatternKind::General
        }
    }

    pub fn reverse_complement(&self) -> Self {
        Pattern { perm: self.perm.reverse_complement() }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.perm.fmt(f)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(s.parse()?)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.perm.serialize(serializer)
    }
}

/// Layer lengths `(a_1, …, a_k)` of a layered permutation, left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LayerProfile {
    lengths: Vec<usize>,
}

impl LayerProfile {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidProfile("profile must have at least one layer".into()));
        }
        if let Some(pos) = lengths.iter().position(|&a| a == 0) {
            return Err(Error::InvalidProfile(format!("layer {pos} has length 0")));
        }
        Ok(LayerProfile { lengths })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn n(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn layers(&self) -> usize {
        self.lengths.len()
    }

    /// Length of the last layer.
    pub fn last(&self) -> usize {
        *self.lengths.last().expect("profile is non-empty")
    }

    /// Length of the penultimate layer, if there is one.
    pub fn penultimate(&self) -> Option<usize> {
        self.lengths.len().checked_sub(2).map(|i| self.lengths[i])
    }
}

impl fmt::Display for LayerProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.lengths.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for LayerProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lengths = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidProfile(format!("`{t}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        LayerProfile::new(lengths)
    }
}

impl Serialize for LayerProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Order-isomorphism matcher for one pattern.
///
/// The pattern entries are visited in a fixed order (`order`); for every step
/// the matcher remembers which earlier step holds the closest smaller and the
/// closest larger pattern value, so the consistency test for a candidate is
/// two comparisons.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    /// Pattern values in visiting order.
    values: Vec<u32>,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl Matcher {
    pub(crate) fn new(pattern: &[u32], order: &[usize]) -> Self {
        let values: Vec<u32> = order.iter().map(|&i| pattern[i]).collect();
        let mut below = Vec::with_capacity(values.len());
        let mut above = Vec::with_capacity(values.len());
        for (step, &v) in values.iter().enumerate() {
            let prev = &values[..step];
            below.push(
                prev.iter()
                    .enumerate()
                    .filter(|(_, &u)| u < v)
                    .max_by_key(|(_, &u)| u)
                    .map(|(j, _)| j),
            );
            above.push(
                prev.iter()
                    .enumerate()
                    .filter(|(_, &u)| u > v)
                    .min_by_key(|(_, &u)| u)
                    .map(|(j, _)| j),
            );
        }
        Matcher { values, below, above }
    }

    /// Matcher visiting the pattern left to right.
    pub(crate) fn natural(pattern: &[u32]) -> Self {
        let order: Vec<usize> = (0..pattern.len()).collect();
        Self::new(pattern, &order)
    }

    /// Matcher that fixes the last pattern entry first, then the rest left to
    /// right. Used to count copies ending at a given position.
    pub(crate) fn last_first(pattern: &[u32]) -> Self {
        let l = pattern.len();
        let mut order = vec![l - 1];
        order.extend(0..l - 1);
        Self::new(pattern, &order)
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub(crate) fn fits<T: Copy + Ord>(&self, step: usize, chosen: &[T], w: T) -> bool {
        if let Some(j) = self.below[step] {
            if chosen[j] >= w {
                return false;
            }
        }
        if let Some(j) = self.above[step] {
            if chosen[j] <= w {
                return false;
            }
        }
        true
    }

    /// Counts extensions of `chosen[..step]` using entries of `word[start..]`.
    pub(crate) fn count_from<T: Copy + Ord>(
        &self,
        word: &[T],
        start: usize,
        step: usize,
        chosen: &mut [T],
    ) -> u64 {
        if step == self.len() {
            return 1;
        }
        let remaining = self.len() - step;
        if word.len() < start + remaining {
            return 0;
        }
        let mut total = 0;
        for pos in start..=word.len() - remaining {
            let w = word[pos];
            if self.fits(step, chosen, w) {
                chosen[step] = w;
                total += self.count_from(word, pos + 1, step + 1, chosen);
            }
        }
        total
    }
}

/// Number of copies of `q` in `p`.
pub fn count_occurrences(p: &Permutation, q: &Pattern) -> Result<Count> {
    if q.len() > p.len() {
        return Ok(Count::ZERO);
    }
    // Copies are bounded by C(n, l); if that fits, the walk cannot overflow.
    binomial(p.len() as u64, q.len() as u64).ok_or(Error::Overflow("count_occurrences"))?;
    let matcher = Matcher::natural(q.perm().word());
    let mut chosen = vec![0u32; q.len()];
    Ok(Count(matcher.count_from(p.word(), 0, 0, &mut chosen)))
}

/// Number of copies of `12…l` in `p`, by increasing-subsequence DP.
pub fn count_monotone(p: &Permutation, l: usize) -> Result<Count> {
    if l == 0 {
        return Err(Error::InvalidArgument("monotone pattern needs l >= 1".into()));
    }
    let w = p.word();
    let n = w.len();
    if l > n {
        return Ok(Count::ZERO);
    }
    // ending[j] = number of increasing subsequences of the current length
    // that end at position j.
    let mut ending = vec![1u64; n];
    for _ in 1..l {
        let mut next = vec![0u64; n];
        for j in 0..n {
            let mut acc = 0u64;
            for i in 0..j {
                if w[i] < w[j] {
                    acc = acc.checked_add(ending[i]).ok_or(Error::Overflow("count_monotone"))?;
                }
            }
            next[j] = acc;
        }
        ending = next;
    }
    ending
        .into_iter()
        .try_fold(Count::ZERO, |acc, c| acc.checked_add(Count(c)))
}

/// Number of inversions, pairs `i < j` with `p_i > p_j`.
pub fn count_inversions(p: &Permutation) -> Result<Count> {
    // Fenwick tree over values.
    let n = p.len();
    let mut tree = vec![0u64; n + 1];
    let mut inversions = 0u64;
    for (seen, &v) in p.word().iter().enumerate() {
        let mut smaller = 0u64;
        let mut i = v as usize;
        while i > 0 {
            smaller += tree[i];
            i &= i - 1;
        }
        inversions = inversions
            .checked_add(seen as u64 - smaller)
            .ok_or(Error::Overflow("count_inversions"))?;
        let mut i = v as usize;
        while i <= n {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    Ok(Count(inversions))
}

/// The layer profile of `p` if it is layered: descending runs whose values
/// increase from one run to the next.
pub fn is_layered(p: &Permutation) -> Option<LayerProfile> {
    let w = p.word();
    if w.is_empty() {
        return None;
    }
    let mut lengths = Vec::new();
    let mut start = 0;
    while start < w.len() {
        // A layer starting at `start` with top value `top` must contain
        // exactly the values start+1..=top in descending order.
        let top = w[start] as usize;
        if top <= start {
            return None;
        }
        let len = top - start;
        if start + len > w.len() {
            return None;
        }
        for (offset, &v) in w[start..start + len].iter().enumerate() {
            if v as usize != top - offset {
                return None;
            }
        }
        lengths.push(len);
        start += len;
    }
    Some(LayerProfile { lengths })
}

/// The layered permutation with the given layer lengths.
pub fn from_layers(profile: &LayerProfile) -> Permutation {
    let mut word = Vec::with_capacity(profile.n());
    let mut base = 0u32;
    for &a in profile.lengths() {
        let a = a as u32;
        word.extend((base + 1..=base + a).rev());
        base += a;
    }
    Permutation { word }
}

/// Copies of `1(l+1)l…2` in the layered permutation with this profile:
/// one entry from some layer and `l` entries from a later layer.
pub fn count_q_in_layered(profile: &LayerProfile, l: usize) -> Result<Count> {
    if l < 2 {
        return Err(Error::InvalidArgument("count_q_in_layered needs l >= 2".into()));
    }
    let overflow = || Error::Overflow("count_q_in_layered");
    let mut earlier = 0u64;
    let mut total = Count::ZERO;
    for &a in profile.lengths() {
        let choose = binomial(a as u64, l as u64).ok_or_else(overflow)?;
        total = total.checked_add(Count(earlier.checked_mul(choose).ok_or_else(overflow)?))?;
        earlier += a as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(perm("41523").word(), &[4, 1, 5, 2, 3]);
        let long = Permutation::identity(11);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("0123".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("".parse::<Pattern>().is_err());
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(count_occurrences(&perm("41523"), &pat("132")).unwrap().get(), 2);
        assert_eq!(count_occurrences(&perm("321"), &pat("123")).unwrap().get(), 0);
        assert_eq!(count_occurrences(&perm("15432"), &pat("132")).unwrap().get(), 6);
        assert_eq!(count_occurrences(&perm("21534"), &pat("132")).unwrap().get(), 4);
        assert_eq!(count_occurrences(&perm("12"), &pat("132")).unwrap().get(), 0);
    }

    #[test]
    fn monotone_examples() {
        assert_eq!(count_monotone(&perm("1234"), 3).unwrap().get(), 4);
        assert_eq!(count_monotone(&perm("2134"), 3).unwrap().get(), 2);
        assert_eq!(count_monotone(&perm("4321"), 2).unwrap().get(), 0);
        assert!(count_monotone(&perm("4321"), 0).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(count_inversions(&perm("4213")).unwrap().get(), 4);
        assert_eq!(count_inversions(&Permutation::identity(12)).unwrap().get(), 0);
        assert_eq!(count_inversions(&perm("312")).unwrap().get(), 2);
    }

    #[test]
    fn layered_examples() {
        assert_eq!(is_layered(&perm("321548769")).unwrap().lengths(), &[3, 2, 3, 1]);
        assert_eq!(is_layered(&Permutation::identity(5)).unwrap().lengths(), &[1; 5]);
        assert_eq!(is_layered(&perm("231")), None);
        assert_eq!(is_layered(&perm("1243")).unwrap().lengths(), &[1, 1, 2]);
        assert_eq!(is_layered(&perm("2413")), None);

        let pr = |s: &str| s.parse::<LayerProfile>().unwrap();
        assert_eq!(from_layers(&pr("1,4")), perm("15432"));
        assert_eq!(from_layers(&pr("3,2,3,1")), perm("321548769"));
        assert_eq!(from_layers(&pr("6")), Permutation::decreasing(6));
        assert!("1,0,2".parse::<LayerProfile>().is_err());
    }

    #[test]
    fn layered_count_examples() {
        let pr = |s: &str| s.parse::<LayerProfile>().unwrap();
        assert_eq!(count_q_in_layered(&pr("1,4"), 3).unwrap().get(), 4);
        assert_eq!(count_q_in_layered(&pr("3,2,4"), 2).unwrap().get(), 33);
        assert_eq!(
            count_occurrences(&perm("321549876"), &pat("132")).unwrap().get(),
            33
        );
        assert_eq!(count_q_in_layered(&pr("9"), 4).unwrap().get(), 0);
        assert!(count_q_in_layered(&pr("9"), 1).is_err());
    }

    #[test]
    fn pattern_kinds() {
        assert_eq!(pat("1234").kind(), PatternKind::Monotone { l: 4 });
        assert_eq!(pat("132").kind(), PatternKind::TwoLayer { l: 2 });
        assert_eq!(pat("15432").kind(), PatternKind::TwoLayer { l: 4 });
        assert_eq!(pat("12").kind(), PatternKind::Monotone { l: 2 });
        assert_eq!(pat("231").kind(), PatternKind::General);
        assert_eq!(Pattern::two_layer(3).unwrap(), pat("1432"));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 3), Some(84));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(60, 30), Some(118_264_581_564_861_424));
        assert_eq!(binomial(200, 100), None);
    }
}
