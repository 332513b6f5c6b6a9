//! Orbit structure: detection algorithms against the rotation oracle, the
//! census against the counting formula, and the symmetry semantics of the
//! half/third detectors.

use catalan_loop::*;
use num_bigint::BigUint;

#[test]
fn algorithm_matches_oracle_to_n9() {
    for n in 1..=9 {
        for p in enumerate_312(n) {
            assert_eq!(orbit_size(&p), orbit_size_oracle(&p), "σ={p}");
        }
    }
}

#[test]
fn census_matches_formula_to_n9() {
    for n in 1..=9 {
        let report = orbit_census(n).unwrap();
        assert_eq!(BigUint::from(report.orbit_total()), orbit_count(n), "n={n}");
        assert_eq!(BigUint::from(report.total_fillings()), catalan(n), "n={n}");
    }
}

#[test]
fn half_detector_means_pi_symmetry() {
    for n in 2..=8 {
        for p in enumerate_312(n) {
            let t = Triangulation::triangulation_of(&p);
            let symmetric = (n + 2) % 2 == 0 && t.rotated(((n + 2) / 2) as i64) == t;
            assert_eq!(orbit_size_half(&p), symmetric, "σ={p}");
        }
    }
}

#[test]
fn third_detector_means_two_pi_third_symmetry() {
    for n in 2..=8 {
        for p in enumerate_312(n) {
            let t = Triangulation::triangulation_of(&p);
            let symmetric = (n + 2) % 3 == 0 && t.rotated(((n + 2) / 3) as i64) == t;
            assert_eq!(orbit_size_third(&p), symmetric, "σ={p}");
        }
    }
}

#[test]
fn orbit_sizes_divide_n_plus_2() {
    for n in 1..=8 {
        for p in enumerate_312(n) {
            let k = orbit_size(&p);
            assert_eq!((n + 2) % k, 0, "σ={p}");
            assert!(
                k == n + 2 || 2 * k == n + 2 || 3 * k == n + 2,
                "σ={p} has unexpected orbit size {k}"
            );
        }
    }
}

#[test]
fn members_traverse_the_loop() {
    let report = orbit_census(5).unwrap();
    for orbit in &report.orbits {
        let mut cur = orbit.representative.clone();
        for member in &orbit.members {
            assert_eq!(member, &cur);
            cur = kalman_step(&cur);
        }
        assert_eq!(cur, orbit.representative);
    }
}
