//! Exact binomial coefficients and the rational coefficient table `b_mn`
//! that defines the closed-form amplitudes.
//!
//! Everything here is exact (big integers and big rationals). The alternating
//! sum behind `b_mn` cancels badly in floating point, so conversion to `f64`
//! happens only once the table is complete.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Configuration of the spin system and its bipartition.
///
/// `n_total` sites, of which the first `m_excited` (subsystem A) start in
/// `|1>` and the rest (subsystem B) in `|0>`. `coupling` is the exchange
/// strength `kappa` in inverse time units; the library itself works in the
/// dimensionless time `tau = kappa * t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    n_total: usize,
    m_excited: usize,
    coupling: f64,
}

impl ModelSpec {
    pub fn new(n_total: usize, m_excited: usize) -> Result<Self> {
        Self::with_coupling(n_total, m_excited, 1.0)
    }

    pub fn with_coupling(n_total: usize, m_excited: usize, coupling: f64) -> Result<Self> {
        if n_total < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 sites, got N = {n_total}"
            )));
        }
        if m_excited > n_total {
            return Err(Error::Domain(format!(
                "M = {m_excited} excited sites exceeds N = {n_total}"
            )));
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(Error::Domain(format!(
                "coupling must be positive and finite, got {coupling}"
            )));
        }
        Ok(Self {
            n_total,
            m_excited,
            coupling,
        })
    }

    #[inline]
    pub fn n_total(&self) -> usize {
        self.n_total
    }

    #[inline]
    pub fn m_excited(&self) -> usize {
        self.m_excited
    }

    #[inline]
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// `M' = min(M, N - M)`: the number of Schmidt pairs is `M' + 1`.
    #[inline]
    pub fn m_prime(&self) -> usize {
        self.m_excited.min(self.n_total - self.m_excited)
    }

    /// Converts a physical time to the dimensionless `tau = kappa * t`.
    #[inline]
    pub fn tau_from_time(&self, t: f64) -> f64 {
        self.coupling * t
    }

    /// Schmidt multiplicity `C(M, m) * C(N - M, m)` of pair `m`.
    pub fn multiplicity(&self, m: usize) -> f64 {
        let (a, b) = (
            self.m_excited as u64,
            (self.n_total - self.m_excited) as u64,
        );
        match small_binomial(a, m as u64)
            .zip(small_binomial(b, m as u64))
            .and_then(|(x, y)| x.checked_mul(y))
        {
            Some(v) => v as f64,
            None => (binomial(a, m as i64) * binomial(b, m as i64))
                .to_f64()
                .unwrap_or(f64::INFINITY),
        }
    }
}

/// `C(x, y)`, extended by zero outside `0 <= y <= x`.
pub fn binomial(x: u64, y: i64) -> BigUint {
    if y < 0 || y as u64 > x {
        return BigUint::zero();
    }
    let y = (y as u64).min(x - y as u64);
    let mut acc = BigUint::one();
    // Each partial product is itself a binomial, so the division is exact.
    for i in 0..y {
        acc *= x - i;
        acc /= i + 1;
    }
    acc
}

/// `C(x, y)` in `u128`, `None` on overflow.
fn small_binomial(x: u64, y: u64) -> Option<u128> {
    if y > x {
        return Some(0);
    }
    let y = y.min(x - y);
    let mut acc: u128 = 1;
    for i in 0..y as u128 {
        acc = acc.checked_mul(x as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// Memoized Pascal triangle of rows `0..=max_row`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
    zero: BigUint,
}

impl BinomialTable {
    pub fn new(max_row: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_row + 1);
        for x in 0..=max_row {
            let mut row = Vec::with_capacity(x + 1);
            for y in 0..=x {
                if y == 0 || y == x {
                    row.push(BigUint::one());
                } else {
                    let prev = &rows[x - 1];
                    row.push(&prev[y - 1] + &prev[y]);
                }
            }
            rows.push(row);
        }
        Self {
            rows,
            zero: BigUint::zero(),
        }
    }

    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(x, y)` with zero extension. Falls back to direct evaluation past the memoized rows.
    pub fn get(&self, x: i64, y: i64) -> BigUint {
        if x < 0 || y < 0 || y > x {
            return BigUint::zero();
        }
        match self.rows.get(x as usize) {
            Some(row) => row.get(y as usize).unwrap_or(&self.zero).clone(),
            None => binomial(x as u64, y),
        }
    }
}

fn signed(v: BigUint) -> BigInt {
    BigInt::from(v)
}

fn check_index(spec: &ModelSpec, m: usize, n: usize) -> Result<()> {
    let mp = spec.m_prime();
    if m > mp || n > mp {
        return Err(Error::Domain(format!(
            "index (m = {m}, n = {n}) out of range 0..={mp} for N = {}, M = {}",
            spec.n_total, spec.m_excited
        )));
    }
    Ok(())
}

fn b_entry(binom: &BinomialTable, spec: &ModelSpec, m: usize, n: usize) -> BigRational {
    let big_n = spec.n_total as i64;
    let big_m = spec.m_excited as i64;
    let (m, n) = (m as i64, n as i64);
    let mut sum = BigRational::zero();
    for k in 0..=m {
        let denom = signed(binom.get(big_n - 2 * k, big_m - k));
        let bracket = signed(binom.get(big_n + 1 - 2 * k, n - k))
            - BigInt::from(2) * signed(binom.get(big_n - 2 * k, n - k - 1));
        let mut numer = signed(binom.get(m, k)) * bracket;
        if k % 2 == 1 {
            numer = -numer;
        }
        // k <= M' guarantees M - k <= N - 2k, so denom > 0.
        sum += BigRational::new(numer, denom);
    }
    sum
}

/// Exact `b_mn` for `0 <= m, n <= M'`:
///
/// `sum_{k=0..m} (-1)^k C(m,k) / C(N-2k, M-k) * [C(N+1-2k, n-k) - 2 C(N-2k, n-k-1)]`.
pub fn b_coefficient(spec: &ModelSpec, m: usize, n: usize) -> Result<BigRational> {
    check_index(spec, m, n)?;
    let binom = BinomialTable::new(spec.n_total + 1);
    Ok(b_entry(&binom, spec, m, n))
}

/// The full `(M'+1) x (M'+1)` table of `b_mn`, exact with a cached `f64` copy.
#[derive(Debug, Clone)]
pub struct BCoefficientTable {
    spec: ModelSpec,
    entries: Vec<Vec<BigRational>>,
    approx: Vec<f64>,
}

impl BCoefficientTable {
    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    /// Side length `M' + 1`.
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, m: usize, n: usize) -> &BigRational {
        &self.entries[m][n]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    /// Double-precision value of `b_mn`.
    #[inline]
    pub fn value(&self, m: usize, n: usize) -> f64 {
        self.approx[m * self.dim() + n]
    }
}

pub fn b_table(spec: &ModelSpec) -> BCoefficientTable {
    let binom = BinomialTable::new(spec.n_total + 1);
    let dim = spec.m_prime() + 1;
    let entries: Vec<Vec<BigRational>> = (0..dim)
        .map(|m| (0..dim).map(|n| b_entry(&binom, spec, m, n)).collect())
        .collect();
    let approx = entries
        .iter()
        .flatten()
        .map(|r| r.to_f64().expect("b_mn is finite"))
        .collect();
    BCoefficientTable {
        spec: *spec,
        entries,
        approx,
    }
}
