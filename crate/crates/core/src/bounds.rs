//! The divisor function `c_m` and the bounds on EK(n) it yields.

use std::sync::{OnceLock, RwLock};

use serde::Serialize;

/// `c_m`: the least odd positive integer with at least `m` positive,
/// nontrivial, proper divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmEntry {
    pub m: usize,
    pub value: u64,
}

/// Number of divisors of `n` other than 1 and `n`.
pub fn nontrivial_proper_divisor_count(n: u64) -> u64 {
    if n <= 1 {
        return 0;
    }
    let mut rest = n;
    let mut tau = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        tau *= k + 1;
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        tau *= 2;
    }
    tau - 2
}

/// Divisor counts of the odd numbers `1, 3, 5, ..., limit`, indexed by `(n - 1) / 2`.
fn odd_divisor_counts(limit: u64) -> Vec<u32> {
    let slots = (limit as usize).div_ceil(2);
    let mut tau = vec![0u32; slots];
    let mut d = 1u64;
    while d <= limit {
        let mut k = d;
        while k <= limit {
            tau[(k / 2) as usize] += 1;
            k += 2 * d;
        }
        d += 2;
    }
    tau
}

fn cache() -> &'static RwLock<Vec<u64>> {
    static CM: OnceLock<RwLock<Vec<u64>>> = OnceLock::new();
    CM.get_or_init(|| RwLock::new(vec![3]))
}

fn fill_until(m: usize) {
    let mut values = cache().write().expect("c_m cache poisoned");
    if values.len() > m {
        return;
    }
    let mut limit: u64 = 1 << 12;
    loop {
        let tau = odd_divisor_counts(limit);
        let mut found = vec![3u64];
        for (i, &t) in tau.iter().enumerate() {
            let count = t.saturating_sub(2) as usize;
            let n = 2 * i as u64 + 1;
            while found.len() <= count && found.len() <= m {
                found.push(n);
            }
            if found.len() > m {
                break;
            }
        }
        if found.len() > m {
            *values = found;
            return;
        }
        limit *= 2;
    }
}

/// `c_m` with `c_0 = 3`. Values are memoized process-wide.
pub fn c_m(m: usize) -> u64 {
    if let Some(&v) = cache().read().expect("c_m cache poisoned").get(m) {
        return v;
    }
    fill_until(m);
    cache().read().expect("c_m cache poisoned")[m]
}

pub fn cm_entry(m: usize) -> CmEntry {
    CmEntry { m, value: c_m(m) }
}

/// `⌊(n - 3) / 6⌋`, an upper bound for EK(n).
pub fn ek_upper_bound(n: u64) -> u64 {
    n.saturating_sub(3) / 6
}

/// The largest `m` with `c_m <= n`: no 2-bridge knot with `n` crossings lies
/// strictly above more than this many nontrivial knots.
pub fn crossing_bound(n: u64) -> usize {
    let mut m = 0;
    while c_m(m + 1) <= n {
        m += 1;
    }
    m
}

/// `EK(c_m) = m` exactly when `c_{m+1} > c_m`.
pub fn ek_exact_at_cm(m: usize) -> bool {
    c_m(m + 1) > c_m(m)
}
