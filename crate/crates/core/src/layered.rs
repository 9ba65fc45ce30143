//! Optimal copy counts for the two-layer patterns `1(l+1)l…2`.
//!
//! Some optimal permutation is layered, and removing its last layer (length
//! `m`) leaves an optimal `k`-permutation, `k = n - m`. That gives
//!
//! ```text
//! M_n     = max_{1 <= k < n} c_{n,k}
//! c_{n,k} = M_k + k * C(n - k, l)
//! ```
//!
//! `k_n` is the largest maximizing `k`, and `l_n` is the least `i > k_n`
//! with `c_{n,i} <= c_{n,i+1}` (or `n - 1` when there is none).

use crate::error::{Error, Result};
use crate::perm::{Count, LayerProfile};

/// Default upper end of the DP range.
pub const DEFAULT_N_MAX: usize = 512;

/// Exact binomials `C(n, j)` for `n <= n_max`, `j <= l`.
#[derive(Clone, Debug)]
struct Pascal {
    cols: usize,
    rows: Vec<u128>,
}

impl Pascal {
    fn new(n_max: usize, max_k: usize) -> Result<Self> {
        let cols = max_k + 1;
        let mut rows = vec![0u128; (n_max + 1) * cols];
        for n in 0..=n_max {
            rows[n * cols] = 1;
            for k in 1..cols.min(n + 1) {
                let above = rows[(n - 1) * cols + k];
                let diag = rows[(n - 1) * cols + k - 1];
                rows[n * cols + k] = above.checked_add(diag).ok_or(Error::Overflow("binomial table"))?;
            }
        }
        Ok(Pascal { cols, rows })
    }

    fn get(&self, n: usize, k: usize) -> u128 {
        debug_assert!(k < self.cols);
        self.rows[n * self.cols + k]
    }
}

/// `M_n`, `k_n` and `l_n` for one pattern `1(l+1)l…2` and `n <= n_max`.
#[derive(Clone, Debug)]
pub struct OptimalTable {
    l: usize,
    n_max: usize,
    /// Indexed by n; `m[0] = 0`.
    m: Vec<Count>,
    /// Indexed by n; zero for n < 2 where no split exists.
    k: Vec<usize>,
    valley: Vec<usize>,
    pascal: Pascal,
}

impl OptimalTable {
    pub fn build(l: usize, n_max: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidArgument(format!("pattern parameter l = {l}, need l >= 2")));
        }
        if n_max < l + 1 {
            return Err(Error::InvalidArgument(format!(
                "n_max = {n_max}, need n_max >= l + 1 = {}",
                l + 1
            )));
        }
        let pascal = Pascal::new(n_max, l)?;
        let mut wide = vec![0u128; n_max + 1];
        let mut k = vec![0usize; n_max + 1];
        for n in 2..=n_max {
            let mut best = 0u128;
            let mut arg = 0usize;
            for (split, &prefix) in wide.iter().enumerate().take(n).skip(1) {
                let c = prefix
                    .checked_add(
                        (split as u128)
                            .checked_mul(pascal.get(n - split, l))
                            .ok_or(Error::Overflow("optimal table"))?,
                    )
                    .ok_or(Error::Overflow("optimal table"))?;
                // `>=` keeps the largest maximizer.
                if c >= best {
                    best = c;
                    arg = split;
                }
            }
            wide[n] = best;
            k[n] = arg;
        }
        let m = wide.into_iter().map(Count::from_wide).collect::<Result<Vec<_>>>()?;
        let mut table = OptimalTable { l, n_max, m, k, valley: vec![0; n_max + 1], pascal };
        for n in 2..=n_max {
            let kn = table.k[n];
            let mut valley = n - 1;
            for i in kn + 1..n - 1 {
                if table.c_ni(n, i)? <= table.c_ni(n, i + 1)? {
                    valley = i;
                    break;
                }
            }
            table.valley[n] = valley;
        }
        Ok(table)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `M_n`. Panics if `n > n_max`.
    pub fn m(&self, n: usize) -> Count {
        self.m[n]
    }

    /// `k_n` for `2 <= n <= n_max`.
    pub fn k(&self, n: usize) -> Option<usize> {
        (2..=self.n_max).contains(&n).then(|| self.k[n])
    }

    /// `l_n` for `2 <= n <= n_max`.
    pub fn valley(&self, n: usize) -> Option<usize> {
        (2..=self.n_max).contains(&n).then(|| self.valley[n])
    }

    /// `C(n, j)` for `n <= n_max`, `j <= l`.
    pub fn binomial(&self, n: usize, j: usize) -> u128 {
        self.pascal.get(n, j)
    }

    /// `c_{n,i} = M_i + i * C(n - i, l)`, for `1 <= i <= n - 1`, `n <= n_max`.
    pub fn c_ni(&self, n: usize, i: usize) -> Result<Count> {
        if n > self.n_max || i == 0 || i >= n {
            return Err(Error::OutOfRange(format!(
                "c_(n,i) needs 1 <= i <= n - 1 and n <= {}; got n = {n}, i = {i}",
                self.n_max
            )));
        }
        let tail = (i as u128)
            .checked_mul(self.pascal.get(n - i, self.l))
            .ok_or(Error::Overflow("c_ni"))?;
        Count::from_wide(tail)?.checked_add(self.m[i])
    }

    /// Layer profile of the canonical optimal permutation, found by following
    /// the `k_n` chain: last layer `n - k_n`, then recurse on `k_n`.
    pub fn optimal_profile(&self, n: usize) -> Result<LayerProfile> {
        if n == 0 || n > self.n_max {
            return Err(Error::OutOfRange(format!("optimal_profile needs 1 <= n <= {}", self.n_max)));
        }
        let mut layers = Vec::new();
        let mut rest = n;
        while rest >= 2 {
            let k = self.k[rest];
            layers.push(rest - k);
            rest = k;
        }
        layers.push(rest);
        layers.reverse();
        LayerProfile::new(layers)
    }

    /// `(n, M_n, k_n, l_n)` for `l + 1 <= n <= n_max`.
    pub fn rows(&self) -> impl Iterator<Item = TableRow> + '_ {
        (self.l + 1..=self.n_max).map(|n| TableRow {
            n,
            m: self.m[n],
            k: self.k[n],
            valley: self.valley[n],
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TableRow {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Count,
    pub k: usize,
    #[serde(rename = "l_n")]
    pub valley: usize,
}
