//! Divisor-driven enumeration of admissible tuples.
//!
//! For fixed `(k0, A)` both families force `k1 = g1 g2 e` with
//! `g1 | A+1`, `g2 | A+k0` and `e ∈ {1, λ}`, and `k1` determines `z`. So
//! instead of scanning `z` we walk the divisor pairs, which keeps the work
//! near-linear in λ. [`classify_family`] then confirms the real gcds.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    block_size_bound, classify_family, derived_tuple, make_candidate, symmetric_family, Family, FeasibilityError,
    ParamCandidate, MAX_LAMBDA,
};
use crate::arith::is_prime;

/// Largest λ for which `keep_rejected` scans every `(k0, z, A)`.
pub const MAX_REJECTED_LAMBDA: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Worker threads; 0 is treated as 1.
    pub threads: usize,
    /// Also scan every tuple under the bound and report the rejected ones.
    pub keep_rejected: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            threads: 1,
            keep_rejected: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub schema_version: u32,
    pub lambda: u64,
    pub candidates: Vec<ParamCandidate>,
    /// Empty unless requested.
    pub rejected: Vec<ParamCandidate>,
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `(z, A)` pairs for one `k0` whose `k1` has the divisor shape.
fn stratum(k0: u64, lambda: u64) -> Vec<(u64, u64)> {
    let bound = block_size_bound(lambda);
    let mut found = BTreeSet::new();
    for a in 1..=(lambda - 1) / (k0 - 1) {
        let (first, second) = (divisors(a + 1), divisors(a + k0));
        for &g1 in &first {
            for &g2 in &second {
                for e in [1, lambda] {
                    let k1 = g1 * g2 * e;
                    if k1 < 2 || (k1 - 1) % a != 0 || (k0 * k1) as u128 > bound {
                        continue;
                    }
                    let m = (k1 - 1) / a;
                    if m < k0 || (m - 1) % (k0 - 1) != 0 {
                        continue;
                    }
                    let z = (m - 1) / (k0 - 1);
                    if z >= 1 && !(a == 1 && z == 1) {
                        found.insert((z, a));
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Every `(z, A)` for one `k0` with `k <= 2λ²(λ-1)` and `λ >= (k0-1)A+1`.
fn full_stratum(k0: u64, lambda: u64) -> Vec<(u64, u64)> {
    let bound = block_size_bound(lambda);
    let mut out = Vec::new();
    for a in 1..=(lambda - 1) / (k0 - 1) {
        for z in 1.. {
            if (k0 * derived_tuple(k0, z, a).k1) as u128 > bound {
                break;
            }
            if !(a == 1 && z == 1) {
                out.push((z, a));
            }
        }
    }
    out
}

fn sort_candidates(list: &mut [ParamCandidate]) {
    list.sort_by_key(|c| c.sort_key());
}

/// All admissible tuples for a prime λ, plus the symmetric records with
/// `2 <= k0 <= λ`. Output order does not depend on `threads`.
pub fn enumerate_candidates(lambda: u64, options: EnumerateOptions) -> Result<Enumeration, FeasibilityError> {
    if !is_prime(lambda) {
        return Err(FeasibilityError::NotPrime(lambda));
    }
    if lambda > MAX_LAMBDA {
        return Err(FeasibilityError::LambdaTooLarge {
            lambda,
            limit: MAX_LAMBDA,
        });
    }
    if options.keep_rejected && lambda > MAX_REJECTED_LAMBDA {
        return Err(FeasibilityError::LambdaTooLarge {
            lambda,
            limit: MAX_REJECTED_LAMBDA,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads.max(1))
        .build()
        .map_err(|e| FeasibilityError::ThreadPool(e.to_string()))?;

    let (mut candidates, mut rejected) = pool.install(|| {
        let strata: Vec<u64> = (2..=lambda + 1).collect();
        let accepted: Vec<ParamCandidate> = strata
            .par_iter()
            .flat_map_iter(|&k0| {
                stratum(k0, lambda).into_iter().filter_map(move |(z, a)| {
                    let label = classify_family(k0, z, a, lambda);
                    (label.family != Family::NoFamily).then(|| make_candidate(k0, z, a, lambda, label))
                })
            })
            .collect();
        let rejected: Vec<ParamCandidate> = if options.keep_rejected {
            strata
                .par_iter()
                .flat_map_iter(|&k0| {
                    full_stratum(k0, lambda).into_iter().filter_map(move |(z, a)| {
                        let label = classify_family(k0, z, a, lambda);
                        (label.family == Family::NoFamily).then(|| make_candidate(k0, z, a, lambda, label))
                    })
                })
                .collect()
        } else {
            Vec::new()
        };
        (accepted, rejected)
    });

    for k0 in 2..=lambda {
        candidates.push(symmetric_family(k0, lambda)?);
    }
    sort_candidates(&mut candidates);
    sort_candidates(&mut rejected);
    Ok(Enumeration {
        schema_version: crate::SCHEMA_VERSION,
        lambda,
        candidates,
        rejected,
    })
}
