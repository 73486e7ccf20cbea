//! Monte Carlo behaviour of the walks against exact values.
//!
//! Seeds are fixed, so these are deterministic; the tolerances are still
//! four-standard-error bounds so any seed would pass with high probability.

use randlink::exact::{self, most_expected_components};
use randlink::tolerances as tol;
use randlink::walk::{self, WalkConfig};
use randlink::Partition;

#[test]
fn mean_components_after_200_steps() {
    let emp = walk::monte_carlo(&WalkConfig::mu_c(4, 200, 100_000, 1)).unwrap();
    emp.check_consistency().unwrap();
    let h4 = exact::harmonic(4).unwrap().to_f64();
    assert!((emp.mean_components - h4).abs() < tol::MEAN_COMPONENTS_100K);
}

#[test]
fn uniform_oracle_matches_stirling_pointwise() {
    let emp = walk::monte_carlo(&WalkConfig::uniform(4, 100_000, 2)).unwrap();
    let exact = exact::component_distribution(4).unwrap();
    for (m, (f, e)) in emp.component_frequencies().iter().zip(&exact).enumerate() {
        assert!((f - e.to_f64()).abs() < tol::POINTWISE_100K, "m = {}", m + 1);
    }
}

#[test]
fn component_counts_converge_for_small_n() {
    for n in 3..=5 {
        let emp = walk::monte_carlo(&WalkConfig::mu_c(n, 500, 100_000, 10 + n as u64)).unwrap();
        let exact = exact::component_distribution(n).unwrap();
        let tv = walk::tv_distance_components(&emp, &exact).unwrap();
        assert!(tv < tol::TV_COMPONENTS_100K, "n = {n}: tv = {tv}");
    }
}

#[test]
fn empirical_modes_match_exact_values() {
    for n in 4..=8 {
        let emp = walk::monte_carlo(&WalkConfig::mu_c(n, 500, 1_000_000, 100 + n as u64)).unwrap();
        emp.check_consistency().unwrap();
        assert_eq!(
            emp.modal_components(),
            most_expected_components(n).unwrap().k,
            "n = {n}"
        );
        let hook = Partition::hook(n).unwrap();
        assert_eq!(emp.modal_partition(), Some(&hook), "n = {n}");
        let f = emp.partition_frequency(&hook);
        assert!((f - 1.0 / (n - 1) as f64).abs() < tol::PARTITION_FREQUENCY_1M, "n = {n}: {f}");
        let knot = emp.partition_frequency(&Partition::single(n).unwrap());
        assert!((knot - 1.0 / n as f64).abs() < tol::PARTITION_FREQUENCY_1M, "n = {n}: {knot}");
    }
}

#[test]
fn walk_mixes_towards_uniform() {
    let tv = |k| walk::tv_distance_uniform(&WalkConfig::mu_c(4, k, 1_000_000, 5)).unwrap();
    let early = tv(2);
    let later = tv(50);
    assert!(later < early, "tv(50) = {later}, tv(2) = {early}");
    assert!(tv(200) < tol::TV_UNIFORM_1M);
}

#[test]
fn convergence_curve_examples() {
    let exact4 = exact::component_distribution(4).unwrap();
    let rows =
        walk::convergence_curve(&WalkConfig::mu_c(4, 0, 100_000, 3), &[0, 1, 100], &exact4).unwrap();
    assert_eq!(rows[0].mean_components, 4.0);
    assert!(rows[1].tv_components > rows[2].tv_components);
    assert!(rows.iter().all(|r| r.tv_uniform.is_some()));

    let exact5 = exact::component_distribution(5).unwrap();
    let rows = walk::convergence_curve(&WalkConfig::mu_c(5, 0, 100_000, 4), &[500], &exact5).unwrap();
    let h5 = exact::harmonic(5).unwrap();
    assert_eq!(h5.to_string(), "137/60");
    assert!((rows[0].mean_components - h5.to_f64()).abs() < tol::MEAN_COMPONENTS_100K_N5);

    let exact9 = exact::component_distribution(9).unwrap();
    let rows = walk::convergence_curve(&WalkConfig::mu_c(9, 0, 1000, 4), &[10], &exact9).unwrap();
    assert_eq!(rows[0].tv_uniform, None);
}
