//! Seeded random walks on the braid group and Monte Carlo estimates of
//! closure statistics.
//!
//! Walk `i` of a run draws from its own generator, seeded from
//! `(master_seed, i)` alone, so a run is a pure function of its
//! [`WalkConfig`] no matter how walks are spread over threads.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use rand::distributions::{Distribution, Uniform};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::partition::Partition;
use crate::perm::{count_cycles, cycle_type_into, lex_rank, Permutation};
use crate::rational::Rational;

/// Recorded in every output so runs can be replayed elsewhere.
pub const GENERATOR_ID: &str = "xoshiro256++ (rand_xoshiro 0.6, seed_from_u64); \
     walk seed = splitmix64-mix(master_seed ^ (walk_index + 1) * 0x9e3779b97f4a7c15); \
     steps drawn with rand 0.8 Uniform<u32> over 0..2n-1";

/// Walks per unit of parallel work.
const CHUNK: usize = 4096;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
const ROW_SALT: u64 = 0xd1b5_4a32_d192_ed03;

/// The SplitMix64 output function: a bijective 64-bit avalanche mix.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn walk_seed(master_seed: u64, walk_index: u64) -> u64 {
    mix64(master_seed ^ walk_index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}

/// Master seed used for the row at `k` of a convergence curve.
pub fn row_seed(master_seed: u64, k: usize) -> u64 {
    mix64(master_seed ^ mix64((k as u64) ^ ROW_SALT))
}

pub fn walk_rng(master_seed: u64, walk_index: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(walk_seed(master_seed, walk_index))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    /// Uniform over `e` and every `σ_i^{±1}`, mass `1/(2n−1)` each.
    MuC,
    /// One uniform element of `S_n` per walk; the `k → ∞` limit.
    UniformPermutation,
}

impl DistributionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistributionKind::MuC => "mu_c",
            DistributionKind::UniformPermutation => "uniform_permutation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepDistribution {
    pub kind: DistributionKind,
    pub n: usize,
}

impl StepDistribution {
    pub fn mu_c(n: usize) -> Self {
        StepDistribution {
            kind: DistributionKind::MuC,
            n,
        }
    }

    pub fn uniform_permutation(n: usize) -> Self {
        StepDistribution {
            kind: DistributionKind::UniformPermutation,
            n,
        }
    }

    /// The letters `0, +1, …, +(n−1), −1, …, −(n−1)`.
    pub fn atoms(&self) -> Vec<i32> {
        let k = self.n as i32 - 1;
        std::iter::once(0).chain(1..=k).chain((1..=k).map(|i| -i)).collect()
    }

    pub fn atom_probability(&self) -> Rational {
        Rational::recip_of(2 * self.n as u64 - 1)
    }

    fn sampler(&self) -> Uniform<u32> {
        Uniform::new(0, (2 * self.n - 1) as u32)
    }
}

#[inline]
fn letter_of(draw: u32, n: usize) -> i32 {
    let r = draw as i32;
    let n = n as i32;
    if r < n {
        r
    } else {
        -(r - n + 1)
    }
}

/// Draws one letter from `μ_c`.
pub fn sample_step<R: Rng + ?Sized>(dist: &StepDistribution, rng: &mut R) -> Result<i32> {
    match dist.kind {
        DistributionKind::MuC => {
            if dist.n < 2 {
                return Err(Error::InvalidSize("mu_c needs n >= 2".into()));
            }
            Ok(letter_of(dist.sampler().sample(rng), dist.n))
        }
        DistributionKind::UniformPermutation => Err(Error::InvalidArgument(
            "uniform_permutation has no per-letter steps".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub n: usize,
    pub k: usize,
    pub walks: usize,
    pub master_seed: u64,
    pub distribution: DistributionKind,
}

impl WalkConfig {
    pub fn mu_c(n: usize, k: usize, walks: usize, master_seed: u64) -> Self {
        WalkConfig {
            n,
            k,
            walks,
            master_seed,
            distribution: DistributionKind::MuC,
        }
    }

    pub fn uniform(n: usize, walks: usize, master_seed: u64) -> Self {
        WalkConfig {
            n,
            k: 0,
            walks,
            master_seed,
            distribution: DistributionKind::UniformPermutation,
        }
    }

    pub fn step_distribution(&self) -> StepDistribution {
        StepDistribution {
            kind: self.distribution,
            n: self.n,
        }
    }

    /// Checks sizes and caps; returns warnings for legal but unusual settings.
    pub fn validate(&self, caps: &Caps) -> Result<Vec<String>> {
        if self.n < 2 {
            return Err(Error::InvalidSize(format!("walks need n >= 2 strands, got {}", self.n)));
        }
        if self.walks == 0 {
            return Err(Error::InvalidArgument("walks must be at least 1".into()));
        }
        check_cap("walks", self.walks, caps.walks)?;
        check_cap("steps", self.k, caps.steps)?;
        let mut warnings = Vec::new();
        if self.n < 3 {
            warnings.push(format!("n = {} is below the n >= 3 regime of the theorems", self.n));
        }
        Ok(warnings)
    }
}

/// The trajectory of walk `walk_index`, one letter per step.
pub fn run_walk(config: &WalkConfig, walk_index: usize) -> Result<BraidWord> {
    if walk_index >= config.walks {
        return Err(Error::InvalidArgument(format!(
            "walk index {walk_index} out of range for {} walks",
            config.walks
        )));
    }
    let dist = config.step_distribution();
    if dist.kind != DistributionKind::MuC {
        return Err(Error::InvalidArgument(
            "uniform_permutation walks have no trajectory".into(),
        ));
    }
    let mut rng = walk_rng(config.master_seed, walk_index as u64);
    let letters = (0..config.k)
        .map(|_| sample_step(&dist, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(config.n, letters)
}

/// Projection of walk `walk_index` to `S_n`, without materializing the word.
pub fn sample_endpoint(config: &WalkConfig, walk_index: usize) -> Permutation {
    let mut images: Vec<usize> = (0..config.n).collect();
    endpoint_into(config, walk_index as u64, &mut images);
    Permutation::from_images(images).expect("walk endpoints are permutations")
}

#[inline]
fn endpoint_into(config: &WalkConfig, walk_index: u64, images: &mut [usize]) {
    let n = config.n;
    for (i, x) in images.iter_mut().enumerate() {
        *x = i;
    }
    let mut rng = walk_rng(config.master_seed, walk_index);
    match config.distribution {
        DistributionKind::MuC => {
            let sampler = StepDistribution::mu_c(n).sampler();
            for _ in 0..config.k {
                let i = letter_of(sampler.sample(&mut rng), n).unsigned_abs() as usize;
                if i != 0 {
                    images.swap(i - 1, i);
                }
            }
        }
        DistributionKind::UniformPermutation => images.shuffle(&mut rng),
    }
}

/// Monte Carlo estimate of closure statistics over `walks` trajectories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    pub n: usize,
    pub k: usize,
    pub walks: usize,
    pub master_seed: u64,
    pub distribution: DistributionKind,
    pub generator: String,
    /// Components `m` ↦ walks whose closure has `m` components.
    pub component_counts: BTreeMap<usize, u64>,
    /// Strand partition ↦ walks, largest partition first when serialized.
    #[serde(with = "type_counts_serde")]
    pub type_counts: BTreeMap<Partition, u64>,
    pub mean_components: f64,
}

impl EmpiricalDistribution {
    /// `p̂(m)` for `m = 1..=n`.
    pub fn component_frequencies(&self) -> Vec<f64> {
        (1..=self.n)
            .map(|m| self.component_counts.get(&m).copied().unwrap_or(0) as f64 / self.walks as f64)
            .collect()
    }

    pub fn partition_frequency(&self, p: &Partition) -> f64 {
        self.type_counts.get(p).copied().unwrap_or(0) as f64 / self.walks as f64
    }

    /// Most frequent component count; ties go to the smaller count.
    pub fn modal_components(&self) -> usize {
        let mut best = (0, 0);
        for (&m, &c) in &self.component_counts {
            if c > best.1 {
                best = (m, c);
            }
        }
        best.0
    }

    /// Most frequent strand partition; ties go to the reverse-lex first.
    pub fn modal_partition(&self) -> Option<&Partition> {
        let mut best: Option<(&Partition, u64)> = None;
        for (p, &c) in self.type_counts.iter().rev() {
            if best.map_or(true, |(_, b)| c > b) {
                best = Some((p, c));
            }
        }
        best.map(|(p, _)| p)
    }

    /// Both histograms total `walks` and agree on component counts.
    pub fn check_consistency(&self) -> Result<()> {
        let total: u64 = self.component_counts.values().sum();
        let total_types: u64 = self.type_counts.values().sum();
        if total != self.walks as u64 || total_types != self.walks as u64 {
            return Err(Error::Internal(format!(
                "histograms sum to {total} and {total_types}, expected {}",
                self.walks
            )));
        }
        let mut by_len = BTreeMap::<usize, u64>::new();
        for (p, &c) in &self.type_counts {
            *by_len.entry(p.len()).or_default() += c;
        }
        if by_len != self.component_counts {
            return Err(Error::Internal(
                "component counts disagree with partition counts".into(),
            ));
        }
        Ok(())
    }
}

mod type_counts_serde {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::partition::Partition;

    pub fn serialize<S: Serializer>(
        counts: &BTreeMap<Partition, u64>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(counts.len()))?;
        for (p, c) in counts.iter().rev() {
            map.serialize_entry(&p.key(), c)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<BTreeMap<Partition, u64>, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|(k, v)| Ok((k.parse().map_err(serde::de::Error::custom)?, v)))
            .collect()
    }
}

/// Per-worker accumulator. Merging is a plain histogram sum.
#[derive(Default)]
struct Tally {
    components: Vec<u64>,
    types: HashMap<Vec<usize>, u64>,
    group: Vec<u64>,
}

impl Tally {
    fn new(n: usize, group_cells: usize) -> Self {
        Tally {
            components: vec![0; n + 1],
            types: HashMap::new(),
            group: vec![0; group_cells],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        if self.components.is_empty() {
            return other;
        }
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a += b;
        }
        for (t, c) in other.types {
            *self.types.entry(t).or_default() += c;
        }
        for (a, b) in self.group.iter_mut().zip(&other.group) {
            *a += b;
        }
        self
    }
}

/// Runs walks on a rayon pool, optionally with a fixed number of threads.
#[derive(Debug, Clone, Copy, Default)]
pub struct Executor {
    pub threads: Option<usize>,
    pub caps: Caps,
}

impl Executor {
    pub fn with_threads(threads: usize) -> Self {
        Executor {
            threads: Some(threads),
            caps: Caps::default(),
        }
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(f()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t.max(1))
                    .build()
                    .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }

    fn tally(&self, config: &WalkConfig, with_group: bool) -> Result<Tally> {
        config.validate(&self.caps)?;
        let n = config.n;
        let group_cells = if with_group {
            check_cap("exhaustive n", n, self.caps.exhaustive_n)?;
            (1..=n).product()
        } else {
            0
        };
        let chunks = config.walks.div_ceil(CHUNK);
        self.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|chunk| {
                    let mut tally = Tally::new(n, group_cells);
                    let mut images = vec![0; n];
                    let mut seen = vec![false; n];
                    let mut lengths = Vec::with_capacity(n);
                    let start = chunk * CHUNK;
                    let end = (start + CHUNK).min(config.walks);
                    for w in start..end {
                        endpoint_into(config, w as u64, &mut images);
                        cycle_type_into(&images, &mut seen, &mut lengths);
                        tally.components[lengths.len()] += 1;
                        match tally.types.get_mut(lengths.as_slice()) {
                            Some(c) => *c += 1,
                            None => {
                                tally.types.insert(lengths.clone(), 1);
                            }
                        }
                        if with_group {
                            tally.group[lex_rank(&images)] += 1;
                        }
                    }
                    tally
                })
                .reduce(Tally::default, Tally::merge)
        })
    }

    pub fn monte_carlo(&self, config: &WalkConfig) -> Result<EmpiricalDistribution> {
        let tally = self.tally(config, false)?;
        Ok(distribution_from(config, &tally))
    }

    pub fn tv_distance_uniform(&self, config: &WalkConfig) -> Result<f64> {
        let tally = self.tally(config, true)?;
        Ok(tv_to_uniform(&tally.group, config.walks))
    }

    /// One row per `k`, each with its own master seed from [`row_seed`].
    pub fn convergence_curve(
        &self,
        config: &WalkConfig,
        steps: &[usize],
        exact: &[Rational],
    ) -> Result<Vec<ConvergenceRow>> {
        if exact.len() != config.n {
            return Err(Error::SizeMismatch {
                left: config.n,
                right: exact.len(),
            });
        }
        let with_group = config.n <= self.caps.exhaustive_n;
        steps
            .iter()
            .map(|&k| {
                let row_config = WalkConfig {
                    k,
                    master_seed: row_seed(config.master_seed, k),
                    ..*config
                };
                let tally = self.tally(&row_config, with_group)?;
                let emp = distribution_from(&row_config, &tally);
                Ok(ConvergenceRow {
                    k,
                    tv_components: tv_distance_components(&emp, exact)?,
                    tv_uniform: with_group.then(|| tv_to_uniform(&tally.group, config.walks)),
                    mean_components: emp.mean_components,
                })
            })
            .collect()
    }

    /// Writes each walk's trajectory as one JSON braid word per line.
    pub fn dump_trajectories<W: Write>(&self, config: &WalkConfig, mut out: W) -> Result<()> {
        config.validate(&self.caps)?;
        for w in 0..config.walks {
            let word = run_walk(config, w)?;
            serde_json::to_writer(&mut out, &word).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn distribution_from(config: &WalkConfig, tally: &Tally) -> EmpiricalDistribution {
    let component_counts: BTreeMap<usize, u64> = tally
        .components
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(m, &c)| (m, c))
        .collect();
    let type_counts = tally
        .types
        .iter()
        .map(|(t, &c)| (Partition::from_sorted_unchecked(t.clone()), c))
        .collect();
    let weighted: u64 = component_counts.iter().map(|(&m, &c)| m as u64 * c).sum();
    EmpiricalDistribution {
        n: config.n,
        k: config.k,
        walks: config.walks,
        master_seed: config.master_seed,
        distribution: config.distribution,
        generator: GENERATOR_ID.to_string(),
        component_counts,
        type_counts,
        mean_components: weighted as f64 / config.walks as f64,
    }
}

fn tv_to_uniform(hist: &[u64], walks: usize) -> f64 {
    let u = 1.0 / hist.len() as f64;
    0.5 * hist
        .iter()
        .map(|&c| (c as f64 / walks as f64 - u).abs())
        .sum::<f64>()
}

pub fn monte_carlo(config: &WalkConfig) -> Result<EmpiricalDistribution> {
    Executor::default().monte_carlo(config)
}

/// Total variation between the walk's law on `S_n` and the uniform law.
pub fn tv_distance_uniform(config: &WalkConfig) -> Result<f64> {
    Executor::default().tv_distance_uniform(config)
}

pub fn convergence_curve(
    config: &WalkConfig,
    steps: &[usize],
    exact: &[Rational],
) -> Result<Vec<ConvergenceRow>> {
    Executor::default().convergence_curve(config, steps, exact)
}

/// `½ Σ_m |p̂(m) − p(m)|`.
pub fn tv_distance_components(emp: &EmpiricalDistribution, exact: &[Rational]) -> Result<f64> {
    tv_distance_frequencies(&emp.component_frequencies(), exact)
}

pub fn tv_distance_frequencies(freqs: &[f64], exact: &[Rational]) -> Result<f64> {
    if freqs.len() != exact.len() {
        return Err(Error::SizeMismatch {
            left: freqs.len(),
            right: exact.len(),
        });
    }
    Ok(0.5
        * freqs
            .iter()
            .zip(exact)
            .map(|(f, e)| (f - e.to_f64()).abs())
            .sum::<f64>())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub k: usize,
    pub tv_components: f64,
    pub tv_uniform: Option<f64>,
    pub mean_components: f64,
}

pub const CSV_HEADER: [&str; 4] = ["k", "tv_components", "tv_uniform", "mean_components"];

pub fn write_convergence_csv<W: Write>(rows: &[ConvergenceRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Internal(format!("csv: {other:?}")),
    }
}

/// Cycle count of walk `walk_index`'s closure.
pub fn walk_components(config: &WalkConfig, walk_index: usize) -> usize {
    let mut images: Vec<usize> = vec![0; config.n];
    endpoint_into(config, walk_index as u64, &mut images);
    count_cycles(&images, &mut vec![false; config.n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::component_distribution;
    use crate::tolerances;

    #[test]
    fn mix64_reference_values() {
        // SplitMix64 seeded with 0 yields mix64(0x9e3779b97f4a7c15) first.
        assert_eq!(mix64(GOLDEN_GAMMA), 0xe220_a839_7b1d_cdaf);
        assert_eq!(mix64(0), 0);
    }

    #[test]
    fn step_support() {
        assert_eq!(StepDistribution::mu_c(3).atoms(), vec![0, 1, 2, -1, -2]);
        assert_eq!(StepDistribution::mu_c(2).atoms(), vec![0, 1, -1]);
        assert_eq!(StepDistribution::mu_c(3).atom_probability().to_string(), "1/5");
        let d = StepDistribution::mu_c(3);
        let atoms = d.atoms();
        let mut rng = walk_rng(5, 0);
        for _ in 0..1000 {
            assert!(atoms.contains(&sample_step(&d, &mut rng).unwrap()));
        }
        let u = StepDistribution::uniform_permutation(3);
        assert!(sample_step(&u, &mut rng).is_err());
    }

    #[test]
    fn step_chi_square_n4() {
        let d = StepDistribution::mu_c(4);
        let atoms = d.atoms();
        let mut rng = walk_rng(2024, 7);
        let draws = 1_000_000;
        let mut counts = HashMap::<i32, u64>::new();
        for _ in 0..draws {
            *counts.entry(sample_step(&d, &mut rng).unwrap()).or_default() += 1;
        }
        assert_eq!(counts.len(), 7);
        let expected = draws as f64 / 7.0;
        let chi2: f64 = atoms
            .iter()
            .map(|a| {
                let o = counts[a] as f64;
                (o - expected).powi(2) / expected
            })
            .sum();
        assert!(
            chi2 < tolerances::CHI_SQUARE_6DF_CRITICAL,
            "chi2 = {chi2} rejects uniformity at alpha = {}",
            tolerances::CHI_SQUARE_ALPHA
        );
    }

    #[test]
    fn run_walk_contract() {
        let cfg = WalkConfig::mu_c(4, 0, 3, 9);
        let w = run_walk(&cfg, 0).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.closure_components(), 4);

        let cfg = WalkConfig::mu_c(5, 100, 10, 42);
        let a = run_walk(&cfg, 3).unwrap();
        assert_eq!(a.len(), 100);
        assert_eq!(a, run_walk(&cfg, 3).unwrap());
        assert!(run_walk(&cfg, 10).is_err());
        assert!(run_walk(&WalkConfig::uniform(4, 2, 1), 0).is_err());
    }

    #[test]
    fn distinct_walks_differ_early() {
        let cfg = WalkConfig::mu_c(6, 64, 2000, 11);
        let identical = (0..1000)
            .filter(|&i| run_walk(&cfg, 2 * i).unwrap() == run_walk(&cfg, 2 * i + 1).unwrap())
            .count();
        assert_eq!(identical, 0);
    }

    #[test]
    fn fused_endpoint_matches_projection() {
        let cfg = WalkConfig::mu_c(7, 57, 50, 3);
        for w in 0..50 {
            let word = run_walk(&cfg, w).unwrap();
            assert_eq!(sample_endpoint(&cfg, w), word.project());
            assert_eq!(walk_components(&cfg, w), word.closure_components());
        }
    }

    #[test]
    fn trivial_walks() {
        let emp = monte_carlo(&WalkConfig::mu_c(3, 0, 100, 123)).unwrap();
        assert_eq!(emp.component_counts, BTreeMap::from([(3, 100)]));
        assert_eq!(emp.mean_components, 3.0);
        emp.check_consistency().unwrap();
    }

    #[test]
    fn config_validation() {
        let caps = Caps::default();
        assert!(WalkConfig::mu_c(1, 5, 5, 0).validate(&caps).is_err());
        assert!(WalkConfig::mu_c(4, 5, 0, 0).validate(&caps).is_err());
        assert_eq!(WalkConfig::mu_c(2, 5, 5, 0).validate(&caps).unwrap().len(), 1);
        assert!(matches!(
            WalkConfig::mu_c(4, 5, caps.walks + 1, 0).validate(&caps),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            tv_distance_uniform(&WalkConfig::mu_c(9, 1, 1, 0)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn tv_components_examples() {
        let exact = component_distribution(3).unwrap();
        let mut emp = monte_carlo(&WalkConfig::mu_c(3, 0, 2, 0)).unwrap();
        assert!((tv_distance_frequencies(&[1.0 / 3.0, 0.5, 1.0 / 6.0], &exact).unwrap()).abs() < 1e-15);

        emp.component_counts = BTreeMap::from([(1, 1), (2, 1)]);
        let tv = tv_distance_components(&emp, &exact).unwrap();
        assert!((tv - 1.0 / 6.0).abs() < 1e-15);

        // All mass on m = 1 against all mass on m = n.
        let point_n = vec![Rational::zero(), Rational::zero(), Rational::one()];
        emp.component_counts = BTreeMap::from([(1, 2)]);
        assert_eq!(tv_distance_components(&emp, &point_n).unwrap(), 1.0);

        assert!(tv_distance_frequencies(&[1.0], &exact).is_err());
    }

    #[test]
    fn tv_uniform_at_k0() {
        let tv = tv_distance_uniform(&WalkConfig::mu_c(4, 0, 1000, 1)).unwrap();
        assert!((tv - (1.0 - 1.0 / 24.0)).abs() < 1e-12);
    }

    #[test]
    fn uniform_mode_is_exact_in_law() {
        let emp = monte_carlo(&WalkConfig::uniform(4, 100_000, 77)).unwrap();
        emp.check_consistency().unwrap();
        let exact = component_distribution(4).unwrap();
        for (f, e) in emp.component_frequencies().iter().zip(&exact) {
            assert!((f - e.to_f64()).abs() < tolerances::POINTWISE_100K);
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let cfg = WalkConfig::mu_c(5, 40, 20_000, 99);
        let one = Executor::with_threads(1).monte_carlo(&cfg).unwrap();
        let three = Executor::with_threads(3).monte_carlo(&cfg).unwrap();
        assert_eq!(one, three);
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&three).unwrap()
        );
    }

    #[test]
    fn json_keys() {
        let emp = monte_carlo(&WalkConfig::mu_c(3, 0, 10, 7)).unwrap();
        let v = serde_json::to_value(&emp).unwrap();
        assert_eq!(v["component_counts"]["3"], 10);
        assert_eq!(v["type_counts"]["1,1,1"], 10);
        assert_eq!(v["distribution"], "mu_c");
        let back: EmpiricalDistribution = serde_json::from_value(v).unwrap();
        assert_eq!(back, emp);
    }

    #[test]
    fn csv_schema() {
        let rows = [
            ConvergenceRow {
                k: 0,
                tv_components: 0.5,
                tv_uniform: None,
                mean_components: 4.0,
            },
            ConvergenceRow {
                k: 5,
                tv_components: 0.25,
                tv_uniform: Some(0.125),
                mean_components: 2.5,
            },
        ];
        let mut buf = Vec::new();
        write_convergence_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "k,tv_components,tv_uniform,mean_components\n0,0.5,,4.0\n5,0.25,0.125,2.5\n"
        );
    }
}
