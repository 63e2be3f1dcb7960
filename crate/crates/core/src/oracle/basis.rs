//! Fixed-excitation basis states as bit patterns.
//!
//! Site `i` of an `N`-site pattern is bit `N - 1 - i`, so ascending numeric
//! order is lexicographic order of the site string `s_0 s_1 ... s_{N-1}`.

use crate::error::{Error, Result};

/// Largest supported site count; patterns are stored in a `u64`.
pub const MAX_SITES: usize = 63;

#[inline]
pub fn site_mask(n_total: usize, site: usize) -> u64 {
    1u64 << (n_total - 1 - site)
}

/// Next larger integer with the same popcount (Gosper's hack).
#[inline]
fn next_same_weight(v: u64) -> u64 {
    let lowest = v & v.wrapping_neg();
    let ripple = v + lowest;
    ripple | (((v ^ ripple) >> 2) / lowest)
}

/// All `n_total`-bit patterns with exactly `weight` set bits, ascending.
pub fn fixed_weight_patterns(n_total: usize, weight: usize) -> Vec<u64> {
    if weight > n_total {
        return Vec::new();
    }
    if weight == 0 {
        return vec![0];
    }
    let limit = 1u64 << n_total;
    let mut out = Vec::new();
    let mut v = (1u64 << weight) - 1;
    while v < limit {
        out.push(v);
        if v == (limit - 1) ^ ((1u64 << (n_total - weight)) - 1) {
            break;
        }
        v = next_same_weight(v);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    n_total: usize,
    excitation_count: usize,
    states: Vec<u64>,
}

impl SectorBasis {
    pub fn new(n_total: usize, excitation_count: usize) -> Result<Self> {
        if n_total == 0 || n_total > MAX_SITES {
            return Err(Error::Domain(format!(
                "site count {n_total} outside 1..={MAX_SITES}"
            )));
        }
        if excitation_count > n_total {
            return Err(Error::Domain(format!(
                "{excitation_count} excitations do not fit on {n_total} sites"
            )));
        }
        Ok(Self {
            n_total,
            excitation_count,
            states: fixed_weight_patterns(n_total, excitation_count),
        })
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn excitation_count(&self) -> usize {
        self.excitation_count
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn index_of(&self, pattern: u64) -> Option<usize> {
        self.states.binary_search(&pattern).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: usize, w: usize) -> Vec<u64> {
        (0..1u64 << n)
            .filter(|v| v.count_ones() as usize == w)
            .collect()
    }

    #[test]
    fn matches_brute_force_enumeration() {
        for n in 1..=12 {
            for w in 0..=n {
                assert_eq!(fixed_weight_patterns(n, w), brute(n, w), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn dimension_is_binomial() {
        let b = SectorBasis::new(14, 7).unwrap();
        assert_eq!(b.dim(), 3432);
        for (i, &s) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(s), Some(i));
        }
        assert_eq!(b.index_of(0), None);
    }

    #[test]
    fn site_zero_is_most_significant() {
        assert_eq!(site_mask(4, 0), 0b1000);
        assert_eq!(
            SectorBasis::new(3, 1).unwrap().states(),
            &[0b001, 0b010, 0b100]
        );
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(SectorBasis::new(3, 4).is_err());
        assert!(SectorBasis::new(0, 0).is_err());
    }
}
