//! Finite posets: ordinal sums, antichains, LOT and layered structure, counts
//! of the pattern poset `A_1 ⊕ A_l`, and the `x → y` reassignment.
//!
//! Elements are labeled `0..size`. Posets built from a permutation label the
//! element for value `v` as `v - 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Count, LayerProfile, Permutation};

/// A finite strict partial order stored as a dense relation matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    /// `less[x * size + y]` iff `x < y`.
    less: Vec<bool>,
}

impl Poset {
    /// Validates irreflexivity, antisymmetry and transitivity.
    pub fn new(size: usize, less: Vec<bool>) -> Result<Self> {
        if less.len() != size * size {
            return Err(Error::InvalidPoset(format!(
                "relation matrix has {} entries, expected {}",
                less.len(),
                size * size
            )));
        }
        let p = Poset { size, less };
        p.validate()?;
        Ok(p)
    }

    /// The transitive closure of the given `(lower, upper)` pairs.
    pub fn from_relations(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![false; size * size];
        for &(x, y) in pairs {
            if x >= size || y >= size {
                return Err(Error::InvalidPoset(format!("relation ({x}, {y}) outside 0..{size}")));
            }
            less[x * size + y] = true;
        }
        // Warshall
        for k in 0..size {
            for i in 0..size {
                if less[i * size + k] {
                    for j in 0..size {
                        if less[k * size + j] {
                            less[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(size, less)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        for x in 0..n {
            if self.less(x, x) {
                return Err(Error::InvalidPoset(format!("{x} < {x}")));
            }
            for y in 0..n {
                if !self.less(x, y) {
                    continue;
                }
                if self.less(y, x) {
                    return Err(Error::InvalidPoset(format!("{x} < {y} and {y} < {x}")));
                }
                for z in 0..n {
                    if self.less(y, z) && !self.less(x, z) {
                        return Err(Error::InvalidPoset(format!(
                            "{x} < {y} < {z} but not {x} < {z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Poset { size: 0, less: Vec::new() }
    }

    /// `A_n`: `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        Poset { size: n, less: vec![false; n * n] }
    }

    pub fn chain(n: usize) -> Self {
        let mut less = vec![false; n * n];
        for x in 0..n {
            for y in x + 1..n {
                less[x * n + y] = true;
            }
        }
        Poset { size: n, less }
    }

    /// `P_p`: `a < b` iff `a` precedes `b` in `p` and `a < b` as values.
    pub fn from_permutation(p: &Permutation) -> Self {
        let n = p.len();
        let w = p.word();
        let mut less = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                if w[i] < w[j] {
                    let (a, b) = (w[i] as usize - 1, w[j] as usize - 1);
                    less[a * n + b] = true;
                }
            }
        }
        Poset { size: n, less }
    }

    /// `A_{a_1} ⊕ … ⊕ A_{a_k}`.
    pub fn from_profile(profile: &LayerProfile) -> Self {
        profile
            .lengths()
            .iter()
            .fold(Poset::empty(), |acc, &a| acc.ordinal_sum(&Poset::antichain(a)))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.less[x * self.size + y]
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.less(x, y) || self.less(y, x)
    }

    /// `self ⊕ upper`: the elements of `upper` are relabeled `size..` and sit
    /// above every element of `self`.
    pub fn ordinal_sum(&self, upper: &Poset) -> Poset {
        let (a, b) = (self.size, upper.size);
        let n = a + b;
        let mut less = vec![false; n * n];
        for x in 0..a {
            for y in 0..a {
                less[x * n + y] = self.less(x, y);
            }
            for y in a..n {
                less[x * n + y] = true;
            }
        }
        for x in 0..b {
            for y in 0..b {
                less[(a + x) * n + a + y] = upper.less(x, y);
            }
        }
        Poset { size: n, less }
    }

    /// The subposet induced on `elements`, relabeled `0..len` in the given
    /// order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let n = elements.len();
        let mut less = vec![false; n * n];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                less[i * n + j] = self.less(x, y);
            }
        }
        Poset { size: n, less }
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        (0..self.size).all(|y| !self.less(x, y))
    }

    pub fn max_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_maximal(x)).collect()
    }

    /// The open down-set `P_{<x}`.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.size).filter(|&y| self.less(y, x)).collect()
    }

    /// `P̄ = P \ max P`, with the remaining elements relabeled in order.
    pub fn strip_max(&self) -> Poset {
        let rest: Vec<usize> = (0..self.size).filter(|&x| !self.is_maximal(x)).collect();
        self.induced(&rest)
    }

    /// LOT ("layered on top"): `P = P̄ ⊕ max P`.
    pub fn is_lot(&self) -> bool {
        let maxima = self.max_elements();
        (0..self.size)
            .filter(|&x| !self.is_maximal(x))
            .all(|x| maxima.iter().all(|&y| self.less(x, y)))
    }

    /// The antichain sizes, bottom to top, if `P` is an ordinal sum of
    /// antichains. The empty poset has no profile.
    pub fn layered_profile(&self) -> Option<LayerProfile> {
        let mut remaining: Vec<usize> = (0..self.size).collect();
        let mut lengths = Vec::new();
        while !remaining.is_empty() {
            let (minimal, rest): (Vec<usize>, Vec<usize>) = remaining
                .iter()
                .partition(|&&x| remaining.iter().all(|&y| !self.less(y, x)));
            if !minimal.iter().all(|&x| rest.iter().all(|&y| self.less(x, y))) {
                return None;
            }
            lengths.push(minimal.len());
            remaining = rest;
        }
        LayerProfile::new(lengths).ok()
    }

    pub fn is_layered(&self) -> bool {
        self.layered_profile().is_some()
    }

    /// Largest number of maximal elements sharing one open down-set.
    pub fn mu(&self) -> usize {
        let mut groups: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for x in self.max_elements() {
            *groups.entry(self.down_set(x)).or_default() += 1;
        }
        groups.into_values().max().unwrap_or(0)
    }

    /// `P^{x→y}`: the down-set of `x` becomes that of `y`; nothing else moves.
    pub fn reassign(&self, x: usize, y: usize) -> Result<Poset> {
        if x >= self.size || y >= self.size {
            return Err(Error::OutOfRange(format!("elements {x}, {y} outside 0..{}", self.size)));
        }
        if x == y {
            return Err(Error::InvalidArgument("reassign needs x != y".into()));
        }
        if !self.is_maximal(x) || !self.is_maximal(y) {
            return Err(Error::InvalidArgument(format!("{x} and {y} must both be maximal")));
        }
        let mut less = self.less.clone();
        for z in 0..self.size {
            less[z * self.size + x] = self.less(z, y);
        }
        Poset::new(self.size, less)
    }

    /// Cover relations `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.less(x, y) && !(0..n).any(|z| self.less(x, z) && self.less(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Calls `visit` with every induced copy of `A_1 ⊕ A_l`, bottom element
    /// first, tops in increasing label order.
    pub fn for_each_copy<F: FnMut(&[usize])>(&self, l: usize, mut visit: F) {
        let mut copy = Vec::with_capacity(l + 1);
        for bottom in 0..self.size {
            let above: Vec<usize> = (0..self.size).filter(|&y| self.less(bottom, y)).collect();
            if above.len() < l {
                continue;
            }
            copy.clear();
            copy.push(bottom);
            self.extend_antichain(&above, 0, l, &mut copy, &mut visit);
        }
    }

    fn extend_antichain<F: FnMut(&[usize])>(
        &self,
        pool: &[usize],
        start: usize,
        l: usize,
        copy: &mut Vec<usize>,
        visit: &mut F,
    ) {
        let have = copy.len() - 1;
        if have == l {
            visit(copy);
            return;
        }
        let need = l - have;
        for i in start..pool.len() {
            if pool.len() - i < need {
                break;
            }
            let y = pool[i];
            if copy[1..].iter().all(|&t| !self.comparable(t, y)) {
                copy.push(y);
                self.extend_antichain(pool, i + 1, l, copy, visit);
                copy.pop();
            }
        }
    }

    /// Number of induced copies of `A_1 ⊕ A_l`. A copy counts only if it meets
    /// `require` (when `require` is non-empty) and avoids `forbid`.
    pub fn count_pattern(&self, l: usize, require: &[usize], forbid: &[usize]) -> Result<Count> {
        if l < 2 {
            return Err(Error::InvalidArgument(format!("pattern A_1 ⊕ A_{l} needs l >= 2")));
        }
        if require.iter().any(|x| forbid.contains(x)) {
            return Err(Error::InvalidArgument("require and forbid must be disjoint".into()));
        }
        if let Some(&x) = require.iter().chain(forbid).find(|&&x| x >= self.size) {
            return Err(Error::OutOfRange(format!("element {x} outside 0..{}", self.size)));
        }
        let mut total = 0u64;
        self.for_each_copy(l, |copy| {
            let meets = require.is_empty() || copy.iter().any(|x| require.contains(x));
            let avoids = !copy.iter().any(|x| forbid.contains(x));
            if meets && avoids {
                total += 1;
            }
        });
        Ok(Count::new(total))
    }

    /// `c_Q(P)` with `Q = A_1 ⊕ A_l`.
    pub fn count(&self, l: usize) -> Result<Count> {
        self.count_pattern(l, &[], &[])
    }

    /// Number of induced subposets isomorphic to an arbitrary small `pattern`,
    /// by trying every bijection on every subset. Meant for patterns of at
    /// most a handful of elements.
    pub fn count_induced(&self, pattern: &Poset) -> Count {
        let k = pattern.size;
        if k > self.size {
            return Count::ZERO;
        }
        let mut subset = Vec::with_capacity(k);
        let mut total = 0u64;
        self.subsets(k, 0, &mut subset, &mut |s| {
            let mut image = Vec::with_capacity(k);
            let mut used = vec![false; k];
            if self.embeds(pattern, s, &mut image, &mut used) {
                total += 1;
            }
        });
        Count::new(total)
    }

    fn subsets<F: FnMut(&[usize])>(&self, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut F) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for x in start..self.size {
            if self.size - x < k - acc.len() {
                break;
            }
            acc.push(x);
            self.subsets(k, x + 1, acc, f);
            acc.pop();
        }
    }

    /// Whether pattern element `image.len()` onward can be mapped into
    /// `subset` consistently with the choices so far.
    fn embeds(&self, pattern: &Poset, subset: &[usize], image: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = image.len();
        if i == pattern.size {
            return true;
        }
        for (slot, &x) in subset.iter().enumerate() {
            if used[slot] {
                continue;
            }
            let consistent = image.iter().enumerate().all(|(j, &y)| {
                pattern.less(j, i) == self.less(y, x) && pattern.less(i, j) == self.less(x, y)
            });
            if consistent {
                used[slot] = true;
                image.push(x);
                if self.embeds(pattern, subset, image, used) {
                    return true;
                }
                image.pop();
                used[slot] = false;
            }
        }
        false
    }

    /// Every split `P = P_1 ⊕ P_2` as `(P_1, P_2)` element lists, smallest
    /// `P_1` first. Includes `∅ ⊕ P` and `P ⊕ ∅`.
    pub fn ordinal_cuts(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.size;
        let mut order: Vec<(usize, usize)> = (0..n).map(|x| (self.down_set(x).len(), x)).collect();
        order.sort_unstable();
        let mut cuts = Vec::new();
        for split in 0..=n {
            // Across a valid cut every upper down-set contains all of P_1,
            // while lower down-sets are strictly smaller.
            if split > 0 && split < n && order[split - 1].0 == order[split].0 {
                continue;
            }
            let mut lower: Vec<usize> = order[..split].iter().map(|&(_, x)| x).collect();
            let mut upper: Vec<usize> = order[split..].iter().map(|&(_, x)| x).collect();
            lower.sort_unstable();
            upper.sort_unstable();
            if lower.iter().all(|&x| upper.iter().all(|&y| self.less(x, y))) {
                cuts.push((lower, upper));
            }
        }
        cuts
    }

    /// Smallest `|P_1|` with `P = P_1 ⊕ P_2` and `P_2` non-empty and layered.
    pub fn layered_top_split(&self) -> Option<usize> {
        self.ordinal_cuts()
            .into_iter()
            .find(|(_, upper)| !upper.is_empty() && self.induced(upper).is_layered())
            .map(|(lower, _)| lower.len())
    }

    /// First `l`-decomposition `P = P_1 ⊕ P_2` (`P_2` layered, no copy of
    /// `A_1 ⊕ A_l` with two or more elements in `P_1`), scanning splits from
    /// `P_1 = ∅` upward so the largest `P_2` wins.
    pub fn find_l_decomposition(&self, l: usize) -> Option<Decomposition> {
        for (lower, upper) in self.ordinal_cuts() {
            let top = self.induced(&upper);
            if !upper.is_empty() && !top.is_layered() {
                continue;
            }
            if self.max_overlap(l, &lower) >= 2 {
                continue;
            }
            let bottom = self.induced(&lower);
            return Some(Decomposition { split_index: lower.len(), lower, upper, parts: (bottom, top) });
        }
        None
    }

    /// Largest `|A ∩ set|` over copies `A` of `A_1 ⊕ A_l`.
    pub fn max_overlap(&self, l: usize, set: &[usize]) -> usize {
        let mut most = 0;
        self.for_each_copy(l, |copy| {
            most = most.max(copy.iter().filter(|x| set.contains(x)).count());
        });
        most
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PosetJson::from(self)).expect("poset serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: PosetJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Data(e.to_string()))?;
        Poset::from_relations(raw.size, &raw.covers)
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset").field("size", &self.size).field("covers", &self.covers()).finish()
    }
}

/// Wire form: element count plus cover relations.
#[derive(Serialize, Deserialize)]
struct PosetJson {
    size: usize,
    covers: Vec<(usize, usize)>,
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        PosetJson { size: p.size, covers: p.covers() }
    }
}

/// `P = P_1 ⊕ P_2` with element labels of both parts in `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `|P_1|`
    pub split_index: usize,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub parts: (Poset, Poset),
}

pub fn ordinal_sum(lower: &Poset, upper: &Poset) -> Poset {
    lower.ordinal_sum(upper)
}

pub fn antichain(n: usize) -> Poset {
    Poset::antichain(n)
}
