//! Exact cycle-count statistics of a uniform permutation.
//!
//! `c(n, m)`, the number of permutations of `n` letters with `m` cycles, is
//! the number of `n`-strand braids (mod the pure braid group) whose closure
//! has `m` components. Rows come from the recurrence
//! `c(n, m) = c(n−1, m−1) + (n−1)·c(n−1, m)` in big-integer arithmetic.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::DEFAULT_EXACT_N;
use crate::error::{check_cap, Error, Result};
use crate::rational::{biguint_vec_string, Rational};

/// Euler–Mascheroni constant γ, rounded to double precision
/// (0.57721566490153286060651209008240243…).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// ζ(2) = π²/6.
pub const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
/// Apéry's constant ζ(3) = 1.20205690315959428539973816151144999…
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Smallest `n` for which the Erdős bounds on the mode are claimed.
pub const ERDOS_MIN_N: usize = 189;
/// Open interval the Hammersley residual is claimed to lie in.
pub const HAMMERSLEY_H_RANGE: (f64, f64) = (-1.1, 1.5);

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `c(n, 1), …, c(n, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingRow {
    n: usize,
    #[serde(with = "biguint_vec_string")]
    values: Vec<BigUint>,
}

impl StirlingRow {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// `c(n, m)`; zero outside `1..=n`.
    pub fn get(&self, m: usize) -> BigUint {
        if m == 0 || m > self.n {
            return BigUint::zero();
        }
        self.values[m - 1].clone()
    }

    pub fn sum(&self) -> BigUint {
        self.values.iter().sum()
    }

    /// Smallest maximizing `m`, and whether the maximum is attained once.
    pub fn mode(&self) -> ComponentMode {
        let mut best = 0;
        let mut unique = true;
        for (i, v) in self.values.iter().enumerate().skip(1) {
            match v.cmp(&self.values[best]) {
                Ordering::Greater => {
                    best = i;
                    unique = true;
                }
                Ordering::Equal => unique = false,
                Ordering::Less => {}
            }
        }
        ComponentMode {
            k: best + 1,
            unique,
        }
    }

    fn next(&self) -> StirlingRow {
        let n = self.n;
        let mult = BigUint::from(n);
        let mut values = Vec::with_capacity(n + 1);
        // c(n+1, m) = c(n, m−1) + n·c(n, m), with c(n, 0) = 0 and c(n, n+1) = 0.
        for m in 1..=n + 1 {
            let mut v = if m <= n {
                &self.values[m - 1] * &mult
            } else {
                BigUint::zero()
            };
            if m >= 2 {
                v += &self.values[m - 2];
            }
            values.push(v);
        }
        StirlingRow { n: n + 1, values }
    }
}

/// Successive rows `c(1, ·), c(2, ·), …` up to and including `last`.
pub struct StirlingRows {
    current: Option<StirlingRow>,
    last: usize,
}

impl Iterator for StirlingRows {
    type Item = StirlingRow;

    fn next(&mut self) -> Option<StirlingRow> {
        let row = self.current.take()?;
        if row.n < self.last {
            self.current = Some(row.next());
        }
        Some(row)
    }
}

pub fn stirling_rows(last: usize, cap: usize) -> Result<StirlingRows> {
    if last == 0 {
        return Err(Error::InvalidSize("stirling rows start at n = 1".into()));
    }
    check_cap("exact n", last, cap)?;
    Ok(StirlingRows {
        current: Some(StirlingRow {
            n: 1,
            values: vec![BigUint::one()],
        }),
        last,
    })
}

pub fn stirling_row(n: usize) -> Result<StirlingRow> {
    stirling_row_capped(n, DEFAULT_EXACT_N)
}

pub fn stirling_row_capped(n: usize, cap: usize) -> Result<StirlingRow> {
    Ok(stirling_rows(n, cap)?.last().expect("at least one row"))
}

/// `c(n, m) / n!` for `m = 1..=n`.
pub fn component_distribution(n: usize) -> Result<Vec<Rational>> {
    component_distribution_capped(n, DEFAULT_EXACT_N)
}

pub fn component_distribution_capped(n: usize, cap: usize) -> Result<Vec<Rational>> {
    let row = stirling_row_capped(n, cap)?;
    distribution_of(&row)
}

pub fn distribution_of(row: &StirlingRow) -> Result<Vec<Rational>> {
    let total = factorial(row.n);
    row.values
        .iter()
        .map(|v| Rational::from_biguints(v, &total))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMode {
    #[serde(rename = "K")]
    pub k: usize,
    pub unique: bool,
}

/// The most likely number of closure components, `K_n`.
pub fn most_expected_components(n: usize) -> Result<ComponentMode> {
    most_expected_components_capped(n, DEFAULT_EXACT_N)
}

pub fn most_expected_components_capped(n: usize, cap: usize) -> Result<ComponentMode> {
    Ok(stirling_row_capped(n, cap)?.mode())
}

/// Index `m` of the largest coefficient of `x^m` in `(x+1)(x+2)⋯(x+n)`.
///
/// That polynomial is `Σ_m c(n+1, m+1) x^m`, so this is the mode of row
/// `n+1` shifted down by one. The Hammersley formula and the Erdős bounds
/// are stated for this index; the component mode of `n` strands is the
/// same quantity taken at `n−1`, plus one.
pub fn coefficient_mode(n: usize) -> Result<ComponentMode> {
    coefficient_mode_capped(n, DEFAULT_EXACT_N)
}

pub fn coefficient_mode_capped(n: usize, cap: usize) -> Result<ComponentMode> {
    if n == 0 {
        return Err(Error::InvalidSize("needs n >= 1".into()));
    }
    check_cap("exact n", n, cap)?;
    Ok(coefficient_mode_of(&stirling_row_capped(n + 1, cap + 1)?))
}

/// [`coefficient_mode`] for `n = next_row.n() − 1`.
pub fn coefficient_mode_of(next_row: &StirlingRow) -> ComponentMode {
    let mode = next_row.mode();
    ComponentMode {
        k: mode.k - 1,
        unique: mode.unique,
    }
}

/// Values of `n` in `range` where the component mode drops below its
/// value at `n − 1`.
pub fn mode_decreases(range: std::ops::RangeInclusive<usize>, cap: usize) -> Result<Vec<usize>> {
    let (lo, hi) = (*range.start(), *range.end());
    let mut out = Vec::new();
    let mut prev: Option<usize> = None;
    for row in stirling_rows(hi, cap)?.skip(lo.saturating_sub(2)) {
        let k = row.mode().k;
        if let Some(p) = prev {
            if k < p && row.n() >= lo {
                out.push(row.n());
            }
        }
        prev = Some(k);
    }
    Ok(out)
}

/// The Hammersley approximation of `K_n` with its residual solved for.
///
/// With `d = log(n+1) + γ − 1.5`, `K_n = ⌊base + correction + h/d²⌋` holds for
/// exactly the `h` in `[h_low, h_high)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HammersleyEstimate {
    pub n: usize,
    /// `log(n+1) + γ − 1`.
    pub base: f64,
    /// `(ζ(2) − ζ(3)) / d`.
    pub correction: f64,
    /// `d = log(n+1) + γ − 1.5`.
    pub denominator: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub unique: bool,
    pub h_low: f64,
    pub h_high: f64,
    pub h_mid: f64,
    /// Whether `[h_low, h_high)` meets `(−1.1, 1.5)`.
    pub meets_claimed_range: bool,
}

impl HammersleyEstimate {
    pub fn from_mode(n: usize, mode: ComponentMode) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSize(format!("needs n >= 3, got {n}")));
        }
        let log = ((n + 1) as f64).ln();
        let base = log + EULER_GAMMA - 1.0;
        let denominator = log + EULER_GAMMA - 1.5;
        let correction = (ZETA_2 - ZETA_3) / denominator;
        let d2 = denominator * denominator;
        let k = mode.k as f64;
        let h_low = (k - base - correction) * d2;
        let h_high = (k + 1.0 - base - correction) * d2;
        let (lo, hi) = HAMMERSLEY_H_RANGE;
        Ok(HammersleyEstimate {
            n,
            base,
            correction,
            denominator,
            k: mode.k,
            unique: mode.unique,
            h_low,
            h_high,
            h_mid: 0.5 * (h_low + h_high),
            meets_claimed_range: h_low < hi && h_high > lo,
        })
    }

    /// `⌊base + correction + h/d²⌋`.
    pub fn evaluate(&self, h: f64) -> i64 {
        (self.base + self.correction + h / (self.denominator * self.denominator)).floor() as i64
    }
}

pub fn hammersley_h(n: usize) -> Result<HammersleyEstimate> {
    hammersley_h_capped(n, DEFAULT_EXACT_N)
}

pub fn hammersley_h_capped(n: usize, cap: usize) -> Result<HammersleyEstimate> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("needs n >= 3, got {n}")));
    }
    HammersleyEstimate::from_mode(n, most_expected_components_capped(n, cap)?)
}

/// `⌊log n − 1/2⌋ ≤ K_n ≤ ⌊log n⌋`, checked against the exact mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErdosCheck {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub lower: i64,
    pub upper: i64,
    /// `lower ≤ K ≤ upper`.
    pub pass: bool,
    /// `lower < K < upper`, the strict form.
    pub strict_pass: bool,
}

impl ErdosCheck {
    pub fn from_mode(n: usize, mode: ComponentMode) -> Result<Self> {
        if n < ERDOS_MIN_N {
            return Err(Error::InvalidSize(format!(
                "the bounds apply for n >= {ERDOS_MIN_N}, got {n}"
            )));
        }
        let log = (n as f64).ln();
        let lower = (log - 0.5).floor() as i64;
        let upper = log.floor() as i64;
        let k = mode.k as i64;
        Ok(ErdosCheck {
            n,
            k: mode.k,
            lower,
            upper,
            pass: lower <= k && k <= upper,
            strict_pass: lower < k && k < upper,
        })
    }
}

pub fn erdos_check(n: usize) -> Result<ErdosCheck> {
    erdos_check_capped(n, DEFAULT_EXACT_N)
}

pub fn erdos_check_capped(n: usize, cap: usize) -> Result<ErdosCheck> {
    if n < ERDOS_MIN_N {
        return Err(Error::InvalidSize(format!(
            "the bounds apply for n >= {ERDOS_MIN_N}, got {n}"
        )));
    }
    ErdosCheck::from_mode(n, most_expected_components_capped(n, cap)?)
}

/// `H_n = 1 + 1/2 + … + 1/n`.
pub fn harmonic(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidSize("needs n >= 1".into()));
    }
    Ok((1..=n as u64).map(Rational::recip_of).sum())
}

/// `Σ m·c(n,m) / n!`, the mean number of closure components.
pub fn expected_components_exact(n: usize) -> Result<Rational> {
    expected_components_exact_capped(n, DEFAULT_EXACT_N)
}

pub fn expected_components_exact_capped(n: usize, cap: usize) -> Result<Rational> {
    expected_components_of(&stirling_row_capped(n, cap)?)
}

pub fn expected_components_of(row: &StirlingRow) -> Result<Rational> {
    let weighted: BigUint = row
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| v * BigUint::from(i + 1))
        .sum();
    Rational::new(BigInt::from(weighted), BigInt::from(factorial(row.n)))
}
