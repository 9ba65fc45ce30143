//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Set `PATFREQ_ACCEPTANCE_FULL=1` to extend criterion 1 to n = 11, 12.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use patfreq::freq::collect_where;
use patfreq::verify::{verify, VerifyParams};
use patfreq::{
    count_inversions, count_occurrences, frequency_sequence, internal_zeros, inversions_no_132,
    max_count_bruteforce, Classification, EnumConfig, FrequencySequence, OptimalTable, Parallelism,
    Pattern, Permutation, Poset, Realization, Realizer132,
};

const IZ_EXPECTED: [usize; 3] = [6, 8, 9];
const C1_N: std::ops::RangeInclusive<usize> = 3..=10;
const C1_LIMIT: Duration = Duration::from_secs(60);
const C1_FULL_LIMIT: Duration = Duration::from_secs(30 * 60);
const C3_N_132: usize = 10;
const C3_N_1432: usize = 9;
const C4_N: std::ops::RangeInclusive<usize> = 4..=8;
const C4_LIMIT: Duration = Duration::from_secs(10);
const C5_LS: [usize; 4] = [2, 3, 4, 5];
const C5_N_MAX: usize = 200;
const C5_LIMIT: Duration = Duration::from_secs(5);
const C6_N_MAX: usize = 10;
const C6_INV_N_MAX: usize = 9;
const C6_LIMIT: Duration = Duration::from_secs(30);
const C7_POSET_N_MAX: usize = 7;
const C7_M11_L3: u64 = 168;
const C7_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j as u128 + 1))
}

/// Straight recursion for M_n, k_n (largest maximizer), l_n and c_(n,i).
struct Oracle {
    l: usize,
    m: Vec<u128>,
    k: Vec<usize>,
}

impl Oracle {
    fn new(l: usize, n_max: usize) -> Self {
        let mut m = vec![0u128; n_max + 1];
        let mut k = vec![0usize; n_max + 1];
        for n in 2..=n_max {
            for i in 1..n {
                let c = m[i] + i as u128 * binom(n - i, l);
                if c >= m[n] {
                    m[n] = c;
                    k[n] = i;
                }
            }
        }
        Oracle { l, m, k }
    }

    fn c(&self, n: usize, i: usize) -> u128 {
        self.m[i] + i as u128 * binom(n - i, self.l)
    }

    fn valley(&self, n: usize) -> usize {
        (self.k[n] + 1..n - 1)
            .find(|&i| self.c(n, i) <= self.c(n, i + 1))
            .unwrap_or(n - 1)
    }
}

fn criterion_1(seqs: &mut BTreeMap<usize, FrequencySequence>) -> Outcome {
    let mut out = Outcome::new();
    let q = pat("132");
    let config = EnumConfig::sequential();
    let start = Instant::now();
    let mut iz = Vec::new();
    for n in C1_N {
        let seq = frequency_sequence(n, &q, &config).unwrap();
        let total: u128 = (1..=n as u128).product();
        out.check(seq.total() == total, || format!("n={n}: histogram sums to {}", seq.total()));
        if internal_zeros(&seq).classification == Classification::Iz {
            iz.push(n);
        }
        seqs.insert(n, seq);
    }
    let elapsed = start.elapsed();
    out.check(iz == IZ_EXPECTED, || format!("IZ set {iz:?}"));
    out.check(elapsed < C1_LIMIT, || format!("took {elapsed:?}"));
    out.notes.push(format!("n=3..10 IZ={iz:?} in {elapsed:.1?} single-threaded"));

    if std::env::var_os("PATFREQ_ACCEPTANCE_FULL").is_some() {
        let config = EnumConfig::default()
            .with_max_n(12, false)
            .unwrap()
            .with_parallelism(Parallelism::available());
        let start = Instant::now();
        for n in 11..=12 {
            let seq = frequency_sequence(n, &q, &config).unwrap();
            let class = internal_zeros(&seq).classification;
            out.check(class == Classification::Niz, || format!("n={n} classified {class:?}"));
        }
        let elapsed = start.elapsed();
        out.check(elapsed < C1_FULL_LIMIT, || format!("n=11,12 took {elapsed:?}"));
        out.notes.push(format!("n=11,12 NIZ in {elapsed:.1?}"));
    } else {
        out.notes.push("n=11,12 skipped (set PATFREQ_ACCEPTANCE_FULL=1)".into());
    }
    out
}

fn criterion_2(seqs: &BTreeMap<usize, FrequencySequence>) -> Outcome {
    let mut out = Outcome::new();
    let table = OptimalTable::build(2, 10).unwrap();
    for n in IZ_EXPECTED {
        let seq = &seqs[&n];
        let m = table.m(n).get() as usize;
        out.check(seq.max_c() == m, || format!("n={n}: max c {} vs M_n {m}", seq.max_c()));
        let zeros = internal_zeros(seq).zero_positions;
        let inside = zeros.iter().all(|&z| z == m - 1 || z == m - 2);
        out.check(!zeros.is_empty() && inside && zeros.len() < 2, || {
            format!("n={n}: zeros {zeros:?}, M_n={m}")
        });
        out.notes.push(format!("n={n}: zero at {zeros:?}, M={m}"));
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let config = EnumConfig::default();
    for (q, l, n_max) in [("132", 2, C3_N_132), ("1432", 3, C3_N_1432)] {
        let q = pat(q);
        let table = OptimalTable::build(l, n_max).unwrap();
        for n in 1..=n_max {
            let (best, witness) = max_count_bruteforce(n, &q, &config).unwrap();
            out.check(best == table.m(n), || format!("q={q} n={n}: brute {best} vs DP {}", table.m(n)));
            out.check(count_occurrences(&witness, &q).unwrap() == best, || {
                format!("q={q} n={n}: witness {witness} miscounted")
            });
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let q = pat("123");
    let config = EnumConfig::sequential();
    let start = Instant::now();
    for n in C4_N {
        let top = binom(n, 3) as usize;
        let seq = frequency_sequence(n, &q, &config).unwrap();
        out.check(seq.max_c() == top && seq.get(top) == 1, || format!("n={n}: S({top}) = {}", seq.get(top)));

        let second = seq.realized_desc().nth(1).unwrap();
        let expected = (binom(n - 1, 3) + binom(n - 2, 2)) as usize;
        out.check(second == expected, || format!("n={n}: runner-up {second}, expected {expected}"));

        let holders = collect_where(n, &q, &config, |c| c == second as u64).unwrap();
        let transpositions: Vec<Permutation> =
            (0..n - 1).map(|i| Permutation::identity(n).adjacent_transposition(i)).collect();
        let mut found: Vec<Permutation> = holders.into_iter().map(|(p, _)| p).collect();
        found.sort();
        let mut want = transpositions.clone();
        want.sort();
        out.check(found == want, || format!("n={n}: runner-up holders {found:?}"));

        let gap = binom(n, 3) - binom(n - 1, 3) - binom(n - 2, 2);
        out.check(gap == binom(n - 2, 1), || format!("n={n}: gap {gap}"));
    }
    let elapsed = start.elapsed();
    out.check(elapsed < C4_LIMIT, || format!("took {elapsed:?}"));
    out
}

/// Position of n against the roots of d_i, with exact integers:
/// 2d_i(n) and the discriminant D of 2d_i scaled by 4.
fn twice_d(oracle: &Oracle, i: usize, n: usize) -> i128 {
    let (n, i) = (n as i128, i as i128);
    let dm = (oracle.m[i as usize + 1] - oracle.m[i as usize]) as i128;
    n * n - (4 * i + 3) * n + 2 * dm + 3 * i * i + 5 * i + 2
}

fn discriminant(oracle: &Oracle, i: usize) -> i128 {
    let dm = (oracle.m[i + 1] - oracle.m[i]) as i128;
    let i = i as i128;
    4 * i * i + 4 * i + 1 - 8 * dm
}

fn at_or_above_high(oracle: &Oracle, i: usize, n: usize) -> bool {
    twice_d(oracle, i, n) >= 0 && 2 * n >= 4 * i + 3
}

fn at_or_below_low(oracle: &Oracle, i: usize, n: usize) -> bool {
    twice_d(oracle, i, n) >= 0 && 2 * n < 4 * i + 3
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for l in C5_LS {
        let o = Oracle::new(l, C5_N_MAX);
        let t = OptimalTable::build(l, C5_N_MAX).unwrap();
        for n in 0..=C5_N_MAX {
            out.check(t.m(n).get() as u128 == o.m[n], || format!("l={l} n={n}: M table {} vs {}", t.m(n), o.m[n]));
        }
        out.check(o.k[l + 1] == 1, || format!("l={l}: k_(l+1) = {}", o.k[l + 1]));
        for n in l + 1..=C5_N_MAX {
            let k = o.k[n];
            out.check(t.k(n) == Some(k), || format!("l={l} n={n}: k table {:?} vs {k}", t.k(n)));
            out.check(t.valley(n) == Some(o.valley(n)), || format!("l={l} n={n}: l_n mismatch"));
            if n < C5_N_MAX {
                let k1 = o.k[n + 1];
                out.check(k <= k1 && k1 <= k + 1, || format!("l={l} n={n}: k_n={k} k_n+1={k1}"));
            }
            out.check(l * k < n, || format!("l={l} n={n}: k_n={k} not < n/l"));
            let m = n - k;
            out.check(m * (l + 1) <= l * (n + 1), || format!("l={l} n={n}: m={m}"));
            let ln = o.valley(n);
            for i in 1..n - 1 {
                let (a, b) = (o.c(n, i), o.c(n, i + 1));
                let ok = if i < k || i >= ln { a <= b } else { a >= b };
                out.check(ok, || format!("l={l} n={n} i={i}: not bimodal (k={k}, l_n={ln})"));
            }
        }
        for i in 1..=C5_N_MAX - 2 {
            let dd = o.m[i + 2] as i128 - 2 * o.m[i + 1] as i128 + o.m[i] as i128;
            let cap = binom(i, l - 1) as i128;
            out.check((0..=cap).contains(&dd), || format!("l={l} i={i}: second difference {dd} vs {cap}"));
        }
    }

    let o = Oracle::new(2, C5_N_MAX);
    for n in 1..C5_N_MAX {
        let diff = o.m[n + 1] - o.m[n];
        out.check(16 * diff <= 5 * (n * n) as u128, || format!("n={n}: M_n+1 - M_n = {diff}"));
    }
    let mut literal_misses = 0;
    for i in 1..C5_N_MAX {
        let disc = discriminant(&o, i);
        out.check(disc >= 0, || format!("i={i}: complex roots"));
        out.check(2 * disc > 3 * (i * i) as i128, || format!("i={i}: r_i bound fails"));
    }
    for n in 3..=C5_N_MAX {
        let k = o.k[n];
        for i in 1..n {
            if i + 1 < n {
                let twice_diff = 2 * (o.c(n, i + 1) as i128 - o.c(n, i) as i128);
                out.check(twice_d(&o, i, n) == twice_diff, || format!("n={n} i={i}: d_i(n) disagrees"));
            }
            let above = at_or_above_high(&o, i, n);
            out.check(above == (i < k), || format!("n={n} i={i} k_n={k}: n>=s_i is {above}"));
            if above != (i <= k) {
                literal_misses += 1;
            }
        }
        let ln = o.valley(n);
        out.check(at_or_below_low(&o, ln, n), || format!("n={n}: n > r_(l_n), l_n={ln}"));
    }
    let ks: std::collections::BTreeSet<usize> = (3..=C5_N_MAX).map(|n| o.k[n]).collect();
    let top = o.k[C5_N_MAX];
    out.check((1..=top).all(|k| ks.contains(&k)), || format!("k_n misses a value in 1..={top}"));

    let elapsed = start.elapsed();
    out.check(elapsed < C5_LIMIT, || format!("took {elapsed:?}"));
    out.notes.push(format!(
        "n>=s_i <=> i<k_n holds; the non-strict form i<=k_n has {literal_misses} counterexamples, all at i=k_n"
    ));
    out
}

fn criterion_6(seqs: &BTreeMap<usize, FrequencySequence>) -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let q = pat("132");
    let mut realizer = Realizer132::new(C6_N_MAX).unwrap();
    let table = OptimalTable::build(2, C6_N_MAX).unwrap();
    for n in 1..=C6_N_MAX {
        let mut unrealizable = Vec::new();
        for c in 0..=table.m(n).get() {
            match realizer.realize(n, c).unwrap() {
                Realization::Realized(p) => {
                    let got = count_occurrences(&p, &q).unwrap().get();
                    out.check(p.len() == n && got == c, || format!("n={n} c={c}: {p} has {got}"));
                }
                Realization::Unrealizable => unrealizable.push(c as usize),
            }
        }
        let expected = seqs.get(&n).map(|s| internal_zeros(s).zero_positions).unwrap_or_default();
        out.check(unrealizable == expected, || {
            format!("n={n}: unrealizable {unrealizable:?}, internal zeros {expected:?}")
        });
        if IZ_EXPECTED.contains(&n) {
            out.check(unrealizable.len() == 1, || format!("n={n}: {unrealizable:?}"));
        }
    }
    for n in 1..=C6_INV_N_MAX {
        for c in 0..=binom(n, 2) as u64 {
            let p = inversions_no_132(n, c).unwrap();
            let inv = count_inversions(&p).unwrap().get();
            let avoids = count_occurrences(&p, &q).unwrap().get() == 0;
            out.check(p.len() == n && inv == c && avoids, || format!("n={n} c={c}: {p}"));
        }
    }
    let elapsed = start.elapsed();
    out.check(elapsed < C6_LIMIT, || format!("took {elapsed:?}"));
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();

    let p312 = Poset::from_permutation(&perm("312"));
    let p231 = Poset::from_permutation(&perm("231"));
    let induced = p312.count_induced(&p231).get();
    let perm_count = count_occurrences(&perm("312"), &pat("231")).unwrap().get();
    out.check(induced == 1 && perm_count == 0, || {
        format!("c_P231(P312)={induced}, c_231(312)={perm_count}")
    });
    let a1a2 = p312.count(2).unwrap().get();
    out.notes.push(format!("c_P231(P312)={induced}, c_231(312)={perm_count}; c_A1+A2(P312)={a1a2}"));

    let big = p231.ordinal_sum(&Poset::antichain(8));
    let c = big.count(3).unwrap().get();
    let m11 = OptimalTable::build(3, 11).unwrap().m(11).get();
    out.check(m11 == C7_M11_L3 && c == m11, || format!("c_A1+A3(P231+A8)={c}, M_11={m11}"));
    out.check(big.layered_profile().is_none(), || "P231+A8 reported layered".into());

    let c5 = count_occurrences(&perm("15423"), &pat("132")).unwrap().get();
    let m5 = OptimalTable::build(2, 5).unwrap().m(5).get();
    out.check(c5 + 1 == m5, || format!("c_132(15423)={c5}, M_5={m5}"));

    let params = VerifyParams { poset_n_max: C7_POSET_N_MAX, ..VerifyParams::default() };
    for id in ["permposetequiv", "stromLOT"] {
        let report = verify(id, &params).unwrap();
        out.check(report.passed(), || format!("{id}: {} failures, witness {:?}", report.failures, report.witness));
        out.notes.push(format!("{id}: {} checks", report.checked));
    }
    let elapsed = start.elapsed();
    out.check(elapsed < C7_LIMIT, || format!("took {elapsed:?}"));
    out
}

fn main() -> ExitCode {
    let mut seqs = BTreeMap::new();
    let results: Vec<(u8, &str, Outcome)> = vec![
        (1, "IZ classification for 132, n=3..10", criterion_1(&mut seqs)),
        (2, "IZ location for 132, n in {6,8,9}", criterion_2(&seqs)),
        (3, "layered recursion vs exhaustive maximum", criterion_3()),
        (4, "monotone 123 structure, n=4..8", criterion_4()),
        (5, "inequality sweeps, l=2..5, n<=200", criterion_5()),
        (6, "constructive realizability", criterion_6(&seqs)),
        (7, "poset suite", criterion_7()),
    ];

    let mut failed = 0;
    for (id, name, outcome) in &results {
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id} {verdict}: {name}");
        for note in &outcome.notes {
            println!("    {note}");
        }
        for f in outcome.failures.iter().take(5) {
            println!("    failure: {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
