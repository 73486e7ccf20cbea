//! Statistical tolerances used by the Monte Carlo checks.
//!
//! Each bound is at least four standard errors at the walk counts it is
//! paired with, so a correct implementation fails with negligible probability.

/// |mean components − H_n| at W = 10⁶ (σ < 1, so 4σ/√W < 0.004).
pub const MEAN_COMPONENTS_1M: f64 = 0.01;
/// |mean components − H_n| at W = 10⁵.
pub const MEAN_COMPONENTS_100K: f64 = 0.02;
/// |mean components − H_5| at W = 10⁵, n = 5.
pub const MEAN_COMPONENTS_100K_N5: f64 = 0.03;
/// Total variation of component counts vs. the Stirling distribution at W = 10⁶.
pub const TV_COMPONENTS_1M: f64 = 0.01;
/// Total variation of component counts vs. the Stirling distribution at W = 10⁵.
pub const TV_COMPONENTS_100K: f64 = 0.02;
/// |p̂(m) − c(n,m)/n!| per cell at W = 10⁵.
pub const POINTWISE_100K: f64 = 0.01;
/// |frequency − exact probability| for a single partition at W = 10⁶.
pub const PARTITION_FREQUENCY_1M: f64 = 0.01;
/// Total variation to uniform on S_4 at W = 10⁶ after mixing.
pub const TV_UNIFORM_1M: f64 = 0.02;
/// Significance level for the χ² uniformity test on step draws.
pub const CHI_SQUARE_ALPHA: f64 = 1e-3;
/// χ² critical value, 6 degrees of freedom, upper tail 10⁻³.
pub const CHI_SQUARE_6DF_CRITICAL: f64 = 22.4577;
