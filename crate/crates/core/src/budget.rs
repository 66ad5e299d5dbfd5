//! Exhaustiveness budget and the tuple-space scanner behind every axiom check.
//!
//! A scan over `base^len` tuples is exhaustive when the tuple count fits in the
//! budget. Otherwise `max_tuples` tuples are drawn from ChaCha8 seeded with
//! [`SAMPLE_SEED`], chunk `c` of the sample using stream `c`, so the sampled set
//! does not depend on the number of worker threads. Both modes report the
//! first failing tuple in scan order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::Element;

pub const DEFAULT_MAX_TUPLES: u64 = 10_000_000;
pub const SAMPLE_SEED: u64 = 0xC0FFEE;
pub const BUDGET_ENV: &str = "POLYAD_BUDGET";

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    max_tuples: u64,
}

impl Budget {
    /// Never samples.
    pub const MAX: Budget = Budget { max_tuples: u64::MAX };

    pub fn new(max_tuples: u64) -> Self {
        Budget {
            max_tuples: max_tuples.max(1),
        }
    }

    /// Reads `POLYAD_BUDGET`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn max_tuples(&self) -> u64 {
        self.max_tuples
    }

    pub fn covers(&self, count: u128) -> bool {
        count <= self.max_tuples as u128
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_MAX_TUPLES)
    }
}

/// `base^len`, saturating at `u128::MAX`.
pub fn tuple_count(base: usize, len: usize) -> u128 {
    (0..len)
        .try_fold(1u128, |acc, _| acc.checked_mul(base as u128))
        .unwrap_or(u128::MAX)
}

#[derive(Debug)]
pub(crate) struct ScanOutcome<W> {
    pub first: Option<W>,
    pub sampled: bool,
}

/// Runs `check` over `base^len` tuples (lexicographic, first coordinate most
/// significant) and returns the first non-`None` result. `check` receives a
/// scratch buffer that is reused within a chunk.
pub(crate) fn scan_tuples<W, F>(base: usize, len: usize, budget: Budget, check: F) -> ScanOutcome<W>
where
    W: Send,
    F: Fn(&[Element], &mut Vec<Element>) -> Option<W> + Sync,
{
    let total = tuple_count(base, len);
    if budget.covers(total) {
        let total = total as u64;
        let chunks = total.div_ceil(CHUNK);
        let first = (0..chunks).into_par_iter().find_map_first(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut tuple = vec![0; len];
            let mut scratch = Vec::new();
            decode(start, base, &mut tuple);
            for _ in start..end {
                if let Some(w) = check(&tuple, &mut scratch) {
                    return Some(w);
                }
                advance(&mut tuple, base);
            }
            None
        });
        ScanOutcome { first, sampled: false }
    } else {
        let samples = budget.max_tuples;
        let chunks = samples.div_ceil(CHUNK);
        let first = (0..chunks).into_par_iter().find_map_first(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            rng.set_stream(c);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut tuple = vec![0; len];
            let mut scratch = Vec::new();
            for _ in 0..count {
                for slot in tuple.iter_mut() {
                    *slot = rng.gen_range(0..base);
                }
                if let Some(w) = check(&tuple, &mut scratch) {
                    return Some(w);
                }
            }
            None
        });
        ScanOutcome { first, sampled: true }
    }
}

fn decode(mut index: u64, base: usize, out: &mut [Element]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % base as u64) as usize;
        index /= base as u64;
    }
}

fn advance(tuple: &mut [Element], base: usize) {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return;
        }
        *slot = 0;
    }
}

/// Sequential lexicographic iterator over all tuples; used where the space is
/// small by construction.
pub(crate) struct Tuples {
    base: usize,
    current: Option<Vec<Element>>,
}

impl Tuples {
    pub fn new(base: usize, len: usize) -> Self {
        Tuples {
            base,
            current: if base == 0 && len > 0 { None } else { Some(vec![0; len]) },
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<Element>;

    fn next(&mut self) -> Option<Vec<Element>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut carried = true;
        for slot in next.iter_mut().rev() {
            *slot += 1;
            if *slot < self.base {
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.current = Some(next);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_scan_returns_lowest_witness() {
        let out = scan_tuples(3, 3, Budget::default(), |t, _| {
            (t[0] + t[1] + t[2] == 4).then(|| t.to_vec())
        });
        assert!(!out.sampled);
        assert_eq!(out.first, Some(vec![0, 2, 2]));
    }

    #[test]
    fn small_budget_switches_to_sampling() {
        let out = scan_tuples(4, 4, Budget::new(10), |_, _| None::<()>);
        assert!(out.sampled);
        assert!(out.first.is_none());
    }

    #[test]
    fn sampling_is_reproducible() {
        let run = || {
            scan_tuples(10, 6, Budget::new(5000), |t, _| {
                (t.iter().sum::<usize>() == 50).then(|| t.to_vec())
            })
            .first
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn tuples_iterator_enumerates_in_order() {
        let all: Vec<_> = Tuples::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(Tuples::new(5, 0).count(), 1);
    }

    #[test]
    fn tuple_count_saturates() {
        assert_eq!(tuple_count(4, 3), 64);
        assert_eq!(tuple_count(1000, 40), u128::MAX);
    }
}
