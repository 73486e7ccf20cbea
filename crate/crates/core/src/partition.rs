//! Integer partitions as cycle types, and the conjugacy classes of `S_n`.
//!
//! A class of cycle type `λ` with `m_j` parts equal to `j` has centralizer
//! order `z(λ) = ∏ j^{m_j} m_j!` and size `n!/z(λ)`. Finding the largest
//! class means finding the smallest `z(λ)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::DEFAULT_PARTITION_N;
use crate::error::{check_cap, Error, Result};
use crate::exact::factorial;
use crate::perm::{all_permutations, CycleDecomposition, Permutation};
use crate::rational::{biguint_string, Rational};

/// A non-increasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    /// `(n−1, 1)`, the type of an `(n−1)`-cycle.
    pub fn hook(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(format!("(n-1, 1) needs n >= 2, got {n}")));
        }
        Ok(Partition { parts: vec![n - 1, 1] })
    }

    pub fn single(n: usize) -> Result<Self> {
        Partition::new(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(j, m_j)` for every distinct part `j`, largest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((j, m)) if *j == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Comma-joined parts, used as a JSON object key.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// A permutation of this type whose cycles are runs of consecutive letters.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::with_capacity(self.len());
        let mut next = 0;
        for &p in &self.parts {
            cycles.push((next..next + p).collect());
            next += p;
        }
        CycleDecomposition::from_cycles(next, cycles)
            .expect("consecutive runs cover 0..n")
            .to_permutation()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Lazily yields every partition of `n` in reverse-lexicographic order,
/// starting from `(n)` and ending at `(1, …, 1)`.
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        Partitions {
            current: (n > 0).then(|| vec![n]),
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        let mut succ = current.clone();
        let ones = succ.iter().rev().take_while(|&&p| p == 1).count();
        if ones < succ.len() {
            succ.truncate(succ.len() - ones);
            let last = succ.last_mut().unwrap();
            *last -= 1;
            let cap = *last;
            let mut rest = ones + 1;
            while rest > 0 {
                let take = rest.min(cap);
                succ.push(take);
                rest -= take;
            }
            self.current = Some(succ);
        }
        Some(Partition { parts: current })
    }
}

/// All partitions of `n`, reverse-lexicographic, with the default cap.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_capped(n, DEFAULT_PARTITION_N)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidSize("partitions of 0 are not supported".into()));
    }
    check_cap("partition n", n, cap)?;
    Ok(Partitions::new(n).collect())
}

/// `|Z(a)|` for any `a` of cycle type `p`.
pub fn centralizer_order(p: &Partition) -> BigUint {
    p.multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (j, m)| {
            acc * BigUint::from(j).pow(m as u32) * factorial(m)
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub partition: Partition,
    #[serde(with = "biguint_string")]
    pub class_size: BigUint,
    #[serde(with = "biguint_string")]
    pub centralizer_order: BigUint,
    /// `class_size / n!`.
    pub probability: Rational,
}

pub fn conjugacy_class_size(p: &Partition) -> Result<ClassRecord> {
    let order = factorial(p.n());
    let centralizer = centralizer_order(p);
    let (class_size, rem) = order.div_rem(&centralizer);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "|Z| = {centralizer} does not divide {}! for type {p}",
            p.n()
        )));
    }
    let probability = Rational::from_biguints(&class_size, &order)?;
    Ok(ClassRecord {
        partition: p.clone(),
        class_size,
        centralizer_order: centralizer,
        probability,
    })
}

/// Result of an exhaustive search for the largest conjugacy class of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxClassScan {
    pub n: usize,
    /// Every cycle type attaining the minimum centralizer, reverse-lex order.
    pub maximizers: Vec<Partition>,
    pub min_centralizer: BigUint,
    /// Partial partitions expanded by the search.
    pub nodes: u64,
}

impl MaxClassScan {
    pub fn winner(&self) -> &Partition {
        &self.maximizers[0]
    }

    pub fn unique(&self) -> bool {
        self.maximizers.len() == 1
    }
}

/// Finds every cycle type of `S_n` with minimal centralizer order.
///
/// Depth-first over partitions in reverse-lex order. Parts are appended in
/// non-increasing order, so each appended part `j` raises `m_j` by one and
/// multiplies the running centralizer by `j · m_j ≥ 1`. The running product
/// therefore never exceeds the final one, and a branch whose product already
/// exceeds the best complete value cannot contain a maximizer. Ties are kept.
pub fn scan_max_class(n: usize, cap: usize) -> Result<MaxClassScan> {
    if n == 0 {
        return Err(Error::InvalidSize("partitions of 0 are not supported".into()));
    }
    check_cap("partition n", n, cap)?;

    struct Search {
        parts: Vec<usize>,
        best: u128,
        maximizers: Vec<Partition>,
        nodes: u64,
    }

    fn dfs(s: &mut Search, remaining: usize, max_part: usize, run: usize, z: u128) {
        s.nodes += 1;
        if z > s.best {
            return;
        }
        if remaining == 0 {
            if z < s.best {
                s.best = z;
                s.maximizers.clear();
            }
            s.maximizers.push(Partition {
                parts: s.parts.clone(),
            });
            return;
        }
        for j in (1..=max_part.min(remaining)).rev() {
            let last = s.parts.last().copied();
            let m = if last == Some(j) { run + 1 } else { 1 };
            // j ≤ n and m ≤ n, and z ≤ best ≤ n here, so this cannot overflow.
            let next = z * (j as u128) * (m as u128);
            s.parts.push(j);
            dfs(s, remaining - j, j, m, next);
            s.parts.pop();
        }
    }

    let mut search = Search {
        parts: Vec::with_capacity(n),
        best: u128::MAX,
        maximizers: Vec::new(),
        nodes: 0,
    };
    dfs(&mut search, n, n, 0, 1);
    Ok(MaxClassScan {
        n,
        min_centralizer: BigUint::from(search.best),
        maximizers: search.maximizers,
        nodes: search.nodes,
    })
}

/// The most probable cycle type of a uniform element of `S_n`.
///
/// Scans every cycle type and fails with [`Error::Falsified`] unless the
/// unique winner is `(n−1, 1)` with size `n·(n−2)!` and probability `1/(n−1)`.
pub fn most_expected_partition(n: usize) -> Result<ClassRecord> {
    most_expected_partition_capped(n, DEFAULT_PARTITION_N)
}

pub fn most_expected_partition_capped(n: usize, cap: usize) -> Result<ClassRecord> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("needs n >= 3, got {n}")));
    }
    let scan = scan_max_class(n, cap)?;
    let hook = Partition::hook(n)?;
    if scan.winner() != &hook {
        return Err(Error::Falsified(format!(
            "largest class of S_{n} has type {}, not {hook}",
            scan.winner()
        )));
    }
    if !scan.unique() {
        return Err(Error::Falsified(format!(
            "largest class of S_{n} is not unique: {:?}",
            scan.maximizers
        )));
    }
    let record = conjugacy_class_size(&hook)?;
    let expected_size = BigUint::from(n) * factorial(n - 2);
    if record.class_size != expected_size {
        return Err(Error::Falsified(format!(
            "class {hook} has size {}, not n(n-2)! = {expected_size}",
            record.class_size
        )));
    }
    if record.probability != Rational::recip_of(n as u64 - 1) {
        return Err(Error::Falsified(format!(
            "class {hook} has probability {}, not 1/{}",
            record.probability,
            n - 1
        )));
    }
    if record.centralizer_order != scan.min_centralizer {
        return Err(Error::Internal("scan and formula disagree on |Z|".into()));
    }
    Ok(record)
}

/// Probability that a uniform element of `S_n` is an `n`-cycle, i.e. that
/// the closure is a knot.
pub fn knot_probability(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidSize("needs n >= 1".into()));
    }
    Ok(conjugacy_class_size(&Partition::single(n)?)?.probability)
}

/// One cycle type in a [`LemmaReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaClass {
    #[serde(rename = "type")]
    pub partition: Partition,
    /// `∏ j^{m_j} m_j!`.
    pub centralizer_formula: u64,
    /// `|{g : ga = ag}|` counted over all of `S_n` for one representative `a`.
    #[serde(rename = "centralizer")]
    pub centralizer_definitional: u64,
    /// Elements of `S_n` with this cycle type, counted by enumeration.
    pub class_size: u64,
}

/// The inequality `k₁⋯k_r ≥ k₁+⋯+k_r` for the parts `≥ 2` of one partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductClaim {
    pub parts: Vec<usize>,
    pub product: u64,
    pub sum: u64,
    pub holds: bool,
    pub equality: bool,
    /// Equality is expected exactly when `r = 1` or the parts are `(2, 2)`.
    pub equality_expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub n: usize,
    pub classes: Vec<LemmaClass>,
    pub min_centralizer: u64,
    pub minimizers: Vec<Partition>,
    pub formula_matches: bool,
    pub class_sizes_match: bool,
    pub lower_bound_holds: bool,
    pub equality_only_for_hook: bool,
    pub product_claims: Vec<ProductClaim>,
    pub product_claims_hold: bool,
    /// Human-readable counterexamples, empty when everything passes.
    pub witnesses: Vec<String>,
    pub pass: bool,
}

/// Checks the minimal-centralizer lemma for `S_n` by brute force.
pub fn verify_lemma(n: usize) -> Result<LemmaReport> {
    verify_lemma_capped(n, crate::caps::DEFAULT_EXHAUSTIVE_N)
}

pub fn verify_lemma_capped(n: usize, cap: usize) -> Result<LemmaReport> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("needs n >= 3, got {n}")));
    }
    check_cap("exhaustive n", n, cap)?;

    let group: Vec<Permutation> = all_permutations(n).collect();
    let types: Vec<Partition> = Partitions::new(n).collect();

    let mut counted = std::collections::HashMap::<Partition, u64>::new();
    for a in &group {
        *counted.entry(a.cycle_type()).or_default() += 1;
    }

    let mut witnesses = Vec::new();
    let mut classes = Vec::with_capacity(types.len());
    for t in &types {
        let a = t.representative();
        let ai = a.images();
        let definitional = group
            .iter()
            .filter(|g| {
                let gi = g.images();
                (0..n).all(|i| gi[ai[i]] == ai[gi[i]])
            })
            .count() as u64;
        let formula: u64 = centralizer_order(t).try_into().expect("n <= cap fits u64");
        classes.push(LemmaClass {
            partition: t.clone(),
            centralizer_formula: formula,
            centralizer_definitional: definitional,
            class_size: counted.get(t).copied().unwrap_or(0),
        });
    }

    let order = group.len() as u64;
    let mut formula_matches = true;
    let mut class_sizes_match = true;
    let mut lower_bound_holds = true;
    let mut equality_only_for_hook = true;
    let hook = Partition::hook(n)?;
    for c in &classes {
        let rep = c.partition.representative().cycle_decomposition();
        if c.centralizer_definitional != c.centralizer_formula {
            formula_matches = false;
            witnesses.push(format!(
                "type {}: counted |Z| = {}, formula gives {} (a = {rep})",
                c.partition, c.centralizer_definitional, c.centralizer_formula
            ));
        }
        if c.class_size * c.centralizer_definitional != order {
            class_sizes_match = false;
            witnesses.push(format!(
                "type {}: {} elements times |Z| = {} is not {n}!",
                c.partition, c.class_size, c.centralizer_definitional
            ));
        }
        if c.centralizer_definitional < (n - 1) as u64 {
            lower_bound_holds = false;
            witnesses.push(format!(
                "type {}: |Z(a)| = {} < n-1 (a = {rep})",
                c.partition, c.centralizer_definitional
            ));
        }
        let at_bound = c.centralizer_definitional == (n - 1) as u64;
        if at_bound != (c.partition == hook) {
            equality_only_for_hook = false;
            witnesses.push(format!(
                "type {}: |Z(a)| = {}, equality with n-1 {} (a = {rep})",
                c.partition,
                c.centralizer_definitional,
                if at_bound { "holds off the (n-1)-cycles" } else { "fails for the (n-1)-cycles" }
            ));
        }
    }

    let min_centralizer = classes
        .iter()
        .map(|c| c.centralizer_definitional)
        .min()
        .unwrap_or(0);
    let minimizers = classes
        .iter()
        .filter(|c| c.centralizer_definitional == min_centralizer)
        .map(|c| c.partition.clone())
        .collect();

    let mut product_claims = Vec::new();
    let mut seen_tuples = std::collections::HashSet::new();
    for t in &types {
        let big: Vec<usize> = t.parts().iter().copied().filter(|&k| k >= 2).collect();
        if big.is_empty() || !seen_tuples.insert(big.clone()) {
            continue;
        }
        let product: u64 = big.iter().map(|&k| k as u64).product();
        let sum: u64 = big.iter().map(|&k| k as u64).sum();
        let equality_expected = big.len() == 1 || big == [2, 2];
        product_claims.push(ProductClaim {
            holds: product >= sum,
            equality: product == sum,
            equality_expected,
            parts: big,
            product,
            sum,
        });
    }
    let mut product_claims_hold = true;
    for c in &product_claims {
        if !c.holds || c.equality != c.equality_expected {
            product_claims_hold = false;
            witnesses.push(format!(
                "parts {:?}: product {} vs sum {}",
                c.parts, c.product, c.sum
            ));
        }
    }

    let pass = formula_matches
        && class_sizes_match
        && lower_bound_holds
        && equality_only_for_hook
        && product_claims_hold
        && min_centralizer == (n - 1) as u64;
    Ok(LemmaReport {
        n,
        classes,
        min_centralizer,
        minimizers,
        formula_matches,
        class_sizes_match,
        lower_bound_holds,
        equality_only_for_hook,
        product_claims,
        product_claims_hold,
        witnesses,
        pass,
    })
}
