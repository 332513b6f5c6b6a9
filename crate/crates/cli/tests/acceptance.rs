//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p catalan-loop-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use catalan_loop::*;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, detail: &str) {
    println!("criterion {criterion}: PASS — {detail}");
}

/// 1. The n=4 orbit table from the CLI matches the fourteen known rows
///    exactly, with summary {size 6: 1, size 3: 2, size 2: 1}, in under 1 s.
#[test]
fn criterion_01_orbit_table_n4() {
    let expected_rows = [
        ("1234", 6),
        ("1243", 3),
        ("1324", 2),
        ("1342", 6),
        ("1432", 3),
        ("2134", 3),
        ("2143", 6),
        ("2314", 3),
        ("2341", 6),
        ("2431", 2),
        ("3214", 6),
        ("3241", 3),
        ("3421", 3),
        ("4321", 6),
    ];
    let t0 = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_catalan-loop"))
        .args(["orbits", "--n", "4", "--format", "csv"])
        .output()
        .expect("binary runs");
    let elapsed = t0.elapsed();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("permutation,orbit_size"));
    let rows: Vec<(String, usize)> = lines
        .map(|l| {
            let (p, s) = l.split_once(',').expect("two columns");
            (p.to_string(), s.parse().expect("size"))
        })
        .collect();
    assert_eq!(rows.len(), 14);
    for ((got_p, got_s), (want_p, want_s)) in rows.iter().zip(expected_rows) {
        assert_eq!((got_p.as_str(), *got_s), (want_p, want_s));
    }
    let report4 = orbit_census(4).unwrap();
    let counts: Vec<(usize, usize)> = report4
        .counts_by_size
        .iter()
        .map(|(a, b)| (*a, *b))
        .collect();
    assert_eq!(counts, [(2, 1), (3, 2), (6, 1)]);
    assert_eq!(report4.orbit_total(), 4);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    report("1", &format!("14 rows + summary {{6:1, 3:2, 2:1}} in {elapsed:?}"));
}

/// 2. The orbit-count formula equals the exhaustive census for n = 1…12.
#[test]
fn criterion_02_orbit_count_formula_vs_census() {
    let t0 = Instant::now();
    for n in 1..=12 {
        let report = orbit_census(n).unwrap();
        assert_eq!(
            BigUint::from(report.orbit_total()),
            orbit_count(n),
            "n={n}"
        );
        assert_eq!(BigUint::from(report.total_fillings()), catalan(n), "n={n}");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    report("2", &format!("formula = census for n=1..12 (C12 = 208012 fillings) in {elapsed:?}"));
}

/// 3. The clip bijection round-trips in both directions for every object,
///    n ≤ 10.
#[test]
fn criterion_03_clip_bijection_roundtrip() {
    let t0 = Instant::now();
    let mut pairs = 0usize;
    for n in 1..=10 {
        let mut triangulations = BTreeSet::new();
        for p in enumerate_312(n) {
            let t = Triangulation::triangulation_of(&p);
            assert_eq!(t.clip_sequence(), p, "clip ∘ build at {p}");
            assert!(
                triangulations.insert(t.to_string()),
                "two permutations share a triangulation at n={n}"
            );
            pairs += 1;
        }
        // Distinct count = Cₙ, so every triangulation appears and
        // build ∘ clip is the identity on all of them as well.
        assert_eq!(BigUint::from(triangulations.len()), catalan(n), "n={n}");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    report("3", &format!("{pairs} pairs round-trip (16796 at n=10) in {elapsed:?}"));
}

/// 4. The loop/continuant identity holds symbolically for all 2 < k < n+2,
///    2 ≤ n ≤ 8.
#[test]
fn criterion_04_theta_identity() {
    let t0 = Instant::now();
    let mut cells = 0;
    for n in 2..=8 {
        for k in 3..n + 2 {
            let check = verify_theta_identity(n, k).unwrap();
            assert!(check.holds, "n={n} k={k}: difference {}", check.difference);
            cells += 1;
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    report("4", &format!("{cells} (n,k) cells verified exactly in {elapsed:?}"));
}

/// 5. Euler's continuant identity holds for all admissible (μ,κ,ν), n ≤ 7,
///    in the proof-consistent form; the displayed index variant fails at
///    n = 3 with an explicit witness.
#[test]
fn criterion_05_euler_identity_and_display_witness() {
    let mut cells = 0;
    for n in 1..=7 {
        for mu in 1..=n {
            for kappa in 0..n {
                for nu in kappa + 1..=n {
                    if mu + nu > n {
                        continue;
                    }
                    let check = verify_euler_identity(mu, kappa, nu, n).unwrap();
                    assert!(check.holds, "μ={mu} κ={kappa} ν={nu} n={n}");
                    cells += 1;
                }
            }
        }
    }
    // The specialization μ=1, κ=k−3, ν=n−1 in its corrected form also holds…
    for n in 2..=7 {
        for k in 3..n + 2 {
            assert!(verify_euler_special(k, n).unwrap().holds);
        }
    }
    // …while the displayed variant fails at n = 3.
    let display = verify_euler_display_form(3, 3).unwrap();
    assert!(!display.holds);
    assert!(!display.difference.is_zero());
    report(
        "5",
        &format!(
            "{cells} admissible triples verified; displayed variant fails at n=3, k=3 with witness `{}`",
            display.difference
        ),
    );
}

/// 6. For every σ with n ≤ 8: ε_σ(Xₙ) = 0, every diagonal of 𝒯_σ restricts
///    to the expected monomial, and the triangle map is a bijection onto the
///    toric coordinates.
#[test]
fn criterion_06_augmentations() {
    let t0 = Instant::now();
    let mut fillings = 0;
    for n in 1..=8 {
        for p in enumerate_312(n) {
            let aug = augmentation(&p);
            assert!(aug.eval_aug_polynomial().is_zero(), "ε(Xₙ) ≠ 0 at {p}");
            let fib = verify_fibonacci(&p);
            assert!(fib.holds, "diagonal monomials fail at {p}: {:?}", fib.witnesses);
            let basis = verify_basis(&p);
            assert!(basis.holds, "triangle basis fails at {p}: {:?}", basis.failures);
            fillings += 1;
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    report("6", &format!("{fillings} fillings checked (1430 at n=8) in {elapsed:?}"));
}

/// 7. Rotation geodesics have length n−1+t_σ and land on the rotated
///    triangulation for every σ, n ≤ 8; BFS confirms minimality for n ≤ 6.
#[test]
fn criterion_07_rotation_geodesics() {
    let t0 = Instant::now();
    for n in 1..=8 {
        for p in enumerate_312(n) {
            let t = Triangulation::triangulation_of(&p);
            let seq = rotation_geodesic(&t);
            let expect = n - 1 + t.internal_triangle_count();
            assert_eq!(seq.len(), expect, "length at {p}");
            assert_eq!(seq.end, t.rotated(1), "endpoint at {p}");
            seq.validate().expect("every intermediate is a valid triangulation");
            if n <= 6 {
                let d = flip_distance_bounded(&t, &t.rotated(1), 6).unwrap();
                assert_eq!(d, expect, "BFS minimality at {p}");
            }
        }
    }
    let elapsed = t0.elapsed();
    report("7", &format!("all geodesics exact for n ≤ 8, BFS-minimal for n ≤ 6, in {elapsed:?}"));
}

/// 8. The word-level flip agrees with the triangulation-level oracle for
///    every flippable diagonal of every σ, n ≤ 8.
#[test]
fn criterion_08_flip_on_permutation() {
    let t0 = Instant::now();
    let mut flips = 0;
    for n in 2..=8 {
        for p in enumerate_312(n) {
            let t = Triangulation::triangulation_of(&p);
            for d in t.diagonals() {
                let oracle = flip(&t, d).unwrap().clip_sequence();
                let word = flip_word_at(&p, d).unwrap();
                assert_eq!(word, oracle, "σ={p}, d={d}");
                flips += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    report("8", &format!("{flips} flips agree with the oracle in {elapsed:?}"));
}

/// 9. The orbit-size algorithm agrees with the rotation oracle for all σ,
///    n ≤ 12, and grows at most quadratically on fan permutations at
///    n ∈ {500, 1000, 2000} (doubling ratio ≤ 5).
#[test]
fn criterion_09_orbit_algorithm() {
    let t0 = Instant::now();
    for n in 1..=12 {
        for p in enumerate_312(n) {
            assert_eq!(orbit_size(&p), orbit_size_oracle(&p), "σ={p}");
        }
    }
    let agreement_time = t0.elapsed();
    let mut timings = Vec::new();
    for n in [500usize, 1000, 2000] {
        let p = Permutation312::new((1..=n).collect()).unwrap();
        assert_eq!(orbit_size(&p), n + 2);
        let best = (0..10)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box(orbit_size(&p));
                t.elapsed()
            })
            .min()
            .unwrap();
        timings.push((n, best));
    }
    for pair in timings.windows(2) {
        let ratio = pair[1].1.as_secs_f64() / pair[0].1.as_secs_f64().max(1e-9);
        assert!(
            ratio <= 5.0,
            "doubling {} → {} slowed by {ratio:.2}×",
            pair[0].0,
            pair[1].0
        );
    }
    report(
        "9",
        &format!(
            "oracle agreement for n ≤ 12 in {agreement_time:?}; fan timings {:?}",
            timings
        ),
    );
}

/// 10. For ≥ 20 exact-rational samples per σ, n ≤ 6: the point-level loop
///     step preserves Xₙ and its (n+2)-th iterate is the identity.
#[test]
fn criterion_10_point_level_loop_order() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut samples = 0;
    let mut non_generic = 0;
    for n in 1..=6 {
        let x = aug_polynomial(n);
        for p in enumerate_312(n) {
            for _ in 0..20 {
                let s: Vec<BigRational> = (0..n - 1)
                    .map(|_| {
                        let mut num = 0i64;
                        while num == 0 {
                            num = rng.gen_range(-9..=9);
                        }
                        BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=9i64)))
                    })
                    .collect();
                let start = sample_variety_point(&p, &s).unwrap();
                assert!(x.eval_rational(&start).is_zero());
                let mut z = start.clone();
                let mut first_return = 0;
                for step in 1..=n + 2 {
                    z = kalman_point_step(&z);
                    assert!(
                        x.eval_rational(&z).is_zero(),
                        "Xₙ broken after step {step} from σ={p}"
                    );
                    if first_return == 0 && z == start {
                        first_return = step;
                    }
                }
                assert_eq!(z, start, "(n+2)-th iterate differs from the sample at σ={p}");
                assert_eq!((n + 2) % first_return, 0);
                if first_return != orbit_size(&p) {
                    non_generic += 1;
                }
                samples += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    report(
        "10",
        &format!("{samples} samples, Xₙ preserved, order divides n+2 and the (n+2)-th iterate is the identity ({non_generic} non-generic) in {elapsed:?}"),
    );
}
