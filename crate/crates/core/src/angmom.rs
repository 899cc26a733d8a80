//! Wigner 3j symbols for integer angular momenta.
//!
//! Values come from the Racah single-sum formula evaluated with tabulated
//! log-factorials. Every selection-rule violation returns exactly `0.0`.
//! Evaluated symbols are memoized under a permutation/reflection canonical
//! key, so the many repeated requests made while building rotor blocks and
//! multipole elements hit the cache.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

const LOG_FACTORIAL_TABLE: usize = 512;

static LOG_FACTORIALS: LazyLock<Vec<f64>> = LazyLock::new(|| {
    let mut table = Vec::with_capacity(LOG_FACTORIAL_TABLE);
    table.push(0.0);
    for n in 1..LOG_FACTORIAL_TABLE {
        table.push(table[n - 1] + (n as f64).ln());
    }
    table
});

type CacheKey = [i32; 6];

static CACHE: LazyLock<RwLock<HashMap<CacheKey, f64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn ln_factorial(n: i64) -> f64 {
    debug_assert!(n >= 0);
    let n = n as usize;
    if n < LOG_FACTORIAL_TABLE {
        LOG_FACTORIALS[n]
    } else {
        LOG_FACTORIALS[LOG_FACTORIAL_TABLE - 1]
            + (LOG_FACTORIAL_TABLE..=n).map(|k| (k as f64).ln()).sum::<f64>()
    }
}

/// Arguments of a 3j symbol `(j1 j2 j3; m1 m2 m3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThreeJArgs {
    pub j1: u32,
    pub j2: u32,
    pub j3: u32,
    pub m1: i32,
    pub m2: i32,
    pub m3: i32,
}

impl ThreeJArgs {
    pub fn new(j1: u32, j2: u32, j3: u32, m1: i32, m2: i32, m3: i32) -> Self {
        Self { j1, j2, j3, m1, m2, m3 }
    }

    pub fn value(&self) -> f64 {
        wigner_3j(self.j1, self.j2, self.j3, self.m1, self.m2, self.m3)
    }

    /// True when some selection rule forces the symbol to vanish.
    pub fn is_forbidden(&self) -> bool {
        let (j1, j2, j3) = (self.j1 as i64, self.j2 as i64, self.j3 as i64);
        self.m1 as i64 + self.m2 as i64 + self.m3 as i64 != 0
            || (self.m1 as i64).abs() > j1
            || (self.m2 as i64).abs() > j2
            || (self.m3 as i64).abs() > j3
            || j3 < (j1 - j2).abs()
            || j3 > j1 + j2
            || (self.m1 == 0 && self.m2 == 0 && self.m3 == 0 && (j1 + j2 + j3) % 2 == 1)
    }
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)` for integer arguments.
pub fn wigner_3j(j1: u32, j2: u32, j3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    let args = ThreeJArgs::new(j1, j2, j3, m1, m2, m3);
    if args.is_forbidden() {
        return 0.0;
    }

    let (key, sign) = canonical_key(&args);
    if let Some(&value) = CACHE.read().expect("3j cache poisoned").get(&key) {
        return sign * value;
    }
    let value = racah(&key);
    CACHE.write().expect("3j cache poisoned").insert(key, value);
    sign * value
}

/// Number of symbols currently memoized.
pub fn cache_len() -> usize {
    CACHE.read().expect("3j cache poisoned").len()
}

pub fn clear_cache() {
    CACHE.write().expect("3j cache poisoned").clear();
}

// The twelve column permutations and reflections m -> -m related to the
// input by a phase of +-1. The lexicographically largest tuple is the key.
fn canonical_key(args: &ThreeJArgs) -> (CacheKey, f64) {
    let cols = [
        (args.j1 as i32, args.m1),
        (args.j2 as i32, args.m2),
        (args.j3 as i32, args.m3),
    ];
    let odd_total = (args.j1 + args.j2 + args.j3) % 2 == 1;
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], false),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([1, 0, 2], true),
        ([0, 2, 1], true),
        ([2, 1, 0], true),
    ];

    let mut best: Option<(CacheKey, f64)> = None;
    for (perm, odd_perm) in PERMS {
        for flip in [false, true] {
            let s = if flip { -1 } else { 1 };
            let key = [
                cols[perm[0]].0,
                cols[perm[1]].0,
                cols[perm[2]].0,
                s * cols[perm[0]].1,
                s * cols[perm[1]].1,
                s * cols[perm[2]].1,
            ];
            let odd_phase = odd_total && (odd_perm ^ flip);
            let sign = if odd_phase { -1.0 } else { 1.0 };
            if best.as_ref().is_none_or(|(b, _)| key > *b) {
                best = Some((key, sign));
            }
        }
    }
    best.expect("at least one permutation")
}

fn racah(key: &CacheKey) -> f64 {
    let [j1, j2, j3, m1, m2, m3] = key.map(i64::from);

    let ln_delta = 0.5
        * (ln_factorial(j1 + j2 - j3) + ln_factorial(j1 - j2 + j3) + ln_factorial(-j1 + j2 + j3)
            - ln_factorial(j1 + j2 + j3 + 1));
    let ln_norm = 0.5
        * (ln_factorial(j1 + m1)
            + ln_factorial(j1 - m1)
            + ln_factorial(j2 + m2)
            + ln_factorial(j2 - m2)
            + ln_factorial(j3 + m3)
            + ln_factorial(j3 - m3));

    let k_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let k_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    if k_min > k_max {
        return 0.0;
    }

    let terms: Vec<(f64, f64)> = (k_min..=k_max)
        .map(|k| {
            let ln_den = ln_factorial(k)
                + ln_factorial(j3 - j2 + k + m1)
                + ln_factorial(j3 - j1 + k - m2)
                + ln_factorial(j1 + j2 - j3 - k)
                + ln_factorial(j1 - k - m1)
                + ln_factorial(j2 - k + m2);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (sign, -ln_den)
        })
        .collect();
    let ln_max = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|(s, l)| s * (l - ln_max).exp()).sum();

    let phase = if (j1 - j2 - m3).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    phase * sum * (ln_delta + ln_norm + ln_max).exp()
}
