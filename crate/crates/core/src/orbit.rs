//! Orbit sizes and orbit counts of pinching-sequence fillings under the
//! Kálmán loop, which acts on 312-avoiding permutations as counterclockwise
//! rotation of the associated triangulation.
//!
//! The orbit of σ has size n+2, (n+2)/2 or (n+2)/3; the smaller sizes occur
//! exactly when 𝒯_σ has π- or 2π/3-rotational symmetry. The detection
//! algorithms work on the word alone in O(n²): locate the subword τ carved
//! out by a diameter (or central triangle), rebuild the unique symmetric
//! candidate triangulation from it, and compare clip words.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::{catalan, enumerate_312, Permutation312};
use crate::triangulation::{replay_clip_word, Diagonal, Triangulation};

/// One application of the Kálmán loop: rotate 𝒯_σ counterclockwise by one
/// vertex and read the clip sequence back off.
pub fn kalman_step(p: &Permutation312) -> Permutation312 {
    Triangulation::triangulation_of(p).rotated(1).clip_sequence()
}

/// Least k ≥ 1 with kalman_stepᵏ(σ) = σ, by direct iteration.
pub fn orbit_size_oracle(p: &Permutation312) -> usize {
    let mut cur = kalman_step(p);
    let mut k = 1;
    while &cur != p {
        cur = kalman_step(&cur);
        k += 1;
        assert!(k <= p.n() + 2, "orbit size exceeds n+2");
    }
    k
}

/// Shifts a vertex label by `delta` modulo n+2, mapping representative 0 to
/// n+2.
fn shift_label(v: usize, delta: i64, n: usize) -> usize {
    let m = (n + 2) as i64;
    let r = ((v as i64 + delta) % m + m) % m;
    if r == 0 {
        n + 2
    } else {
        r as usize
    }
}

/// First contiguous window of `word` of length `len` whose values form an
/// integer interval [lo, lo+len−1] with lo ≤ lo_max. Returns (start, lo).
fn first_interval_window(word: &[usize], len: usize, lo_max: usize) -> Option<(usize, usize)> {
    if len == 0 || word.len() < len {
        return None;
    }
    'outer: for start in 0..=word.len() - len {
        let w = &word[start..start + len];
        let mut lo = usize::MAX;
        let mut hi = 0;
        for &v in w {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if hi - lo != len - 1 || lo > lo_max {
            continue;
        }
        // Distinct letters with matching span form an interval.
        let mut seen = vec![false; len];
        for &v in w {
            if seen[v - lo] {
                continue 'outer;
            }
            seen[v - lo] = true;
        }
        return Some((start, lo));
    }
    None
}

/// Reconstructs the sub-triangulation clipped as `tau` inside the polygon on
/// the label set `vertices` (circularly sorted), then returns its diagonals.
fn subtriangulation(tau: &[usize], vertices: &[usize]) -> Result<BTreeSet<Diagonal>> {
    replay_clip_word(tau, vertices)
}

/// Detects whether 𝒯_σ has π-rotational symmetry (orbit size (n+2)/2).
///
/// Finds the first length-(n/2) subword of σ forming an integer interval
/// (the permutation τ of the half-polygon cut off by a diameter), rebuilds
/// the glued candidate 𝒯_τ ∪ D ∪ rot(𝒯_τ) and compares clip words.
pub fn orbit_size_half(p: &Permutation312) -> bool {
    let n = p.n();
    if (n + 2) % 2 != 0 || n < 2 {
        return false;
    }
    let m = (n + 2) / 2;
    let Some((start, lo)) = first_interval_window(p.word(), m - 1, m) else {
        return false;
    };
    let tau = &p.word()[start..start + m - 1];
    let i = lo - 1; // diameter D_{i, i+m}; i = 0 means vertex n+2
    let mut vertices: Vec<usize> = (0..=m).map(|d| shift_label(i, d as i64, n)).collect();
    vertices.sort_unstable();
    let Ok(half) = subtriangulation(tau, &vertices) else {
        return false;
    };
    let c1 = shift_label(i, 0, n);
    let c2 = shift_label(i, m as i64, n);
    let mut all: BTreeSet<Diagonal> = BTreeSet::new();
    for d in &half {
        all.insert(*d);
        let (x, y) = (
            shift_label(d.a(), m as i64, n),
            shift_label(d.b(), m as i64, n),
        );
        match Diagonal::new(x, y, n) {
            Ok(e) => {
                all.insert(e);
            }
            Err(_) => return false,
        }
    }
    match Diagonal::new(c1, c2, n) {
        Ok(diam) => {
            all.insert(diam);
        }
        Err(_) => return false,
    }
    let Ok(candidate) = Triangulation::new(n, all) else {
        return false;
    };
    candidate.clip_word() == p.word()
}

/// Detects whether 𝒯_σ has 2π/3-rotational symmetry (orbit size (n+2)/3).
///
/// Finds the first length-((n+2)/3 − 1) interval subword τ₁ with small enough
/// values to sit between two corners of a central triangle, rebuilds the
/// candidate from three shifted copies of 𝒯_{τ₁} glued to the central
/// triangle, and compares clip words.
pub fn orbit_size_third(p: &Permutation312) -> bool {
    let n = p.n();
    if (n + 2) % 3 != 0 {
        return false;
    }
    let q = (n + 2) / 3;
    if q < 2 {
        // n + 2 = 3: the single filling is fixed by rotation.
        return orbit_size_oracle(p) == 1;
    }
    let Some((start, lo)) = first_interval_window(p.word(), q - 1, q) else {
        return false;
    };
    let tau1 = &p.word()[start..start + q - 1];
    let c = lo - 1; // central triangle (c, c+q, c+2q); c = 0 means vertex n+2
    let mut vertices: Vec<usize> = (0..=q).map(|d| shift_label(c, d as i64, n)).collect();
    vertices.sort_unstable();
    let Ok(first) = subtriangulation(tau1, &vertices) else {
        return false;
    };
    let mut all: BTreeSet<Diagonal> = BTreeSet::new();
    for d in &first {
        for shift in [0i64, q as i64, 2 * q as i64] {
            let (x, y) = (
                shift_label(d.a(), shift, n),
                shift_label(d.b(), shift, n),
            );
            match Diagonal::new(x, y, n) {
                Ok(e) => {
                    all.insert(e);
                }
                Err(_) => return false,
            }
        }
    }
    let corners = [
        shift_label(c, 0, n),
        shift_label(c, q as i64, n),
        shift_label(c, 2 * q as i64, n),
    ];
    for (x, y) in [
        (corners[0], corners[1]),
        (corners[1], corners[2]),
        (corners[0], corners[2]),
    ] {
        match Diagonal::new(x, y, n) {
            Ok(e) => {
                all.insert(e);
            }
            Err(_) => return false,
        }
    }
    let Ok(candidate) = Triangulation::new(n, all) else {
        return false;
    };
    candidate.clip_word() == p.word()
}

/// Orbit size of σ under the Kálmán loop in O(n²): (n+2)/2 on π-symmetry,
/// (n+2)/3 on 2π/3-symmetry, n+2 otherwise.
pub fn orbit_size(p: &Permutation312) -> usize {
    let n = p.n();
    if n + 2 <= 3 {
        return orbit_size_oracle(p);
    }
    if orbit_size_half(p) {
        (n + 2) / 2
    } else if orbit_size_third(p) {
        (n + 2) / 3
    } else {
        n + 2
    }
}

/// The number of Kálmán loop orbits of fillings of λ(A_{n−1}):
/// Cₙ/(n+2) + C_{n/2}/2 + 2·C_{(n−1)/3}/3, each term present only when its
/// index is an integer. Always a whole number.
pub fn orbit_count(n: usize) -> BigUint {
    assert!(n >= 1);
    let big = |b: BigUint| Ratio::from_integer(b);
    let mut total = big(catalan(n)) / big(BigUint::from(n + 2));
    if n % 2 == 0 {
        total += big(catalan(n / 2)) / big(BigUint::from(2u32));
    }
    if (n - 1) % 3 == 0 {
        total += big(catalan((n - 1) / 3) * BigUint::from(2u32)) / big(BigUint::from(3u32));
    }
    assert!(total.denom().is_one(), "orbit count must be integral");
    total.numer().clone()
}

/// One Kálmán loop orbit: the lexicographically least member, the orbit size
/// and the members in loop order starting from the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Permutation312,
    pub size: usize,
    pub members: Vec<Permutation312>,
}

/// Full orbit decomposition of the fillings at a given n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub n: usize,
    pub orbits: Vec<Orbit>,
    pub counts_by_size: BTreeMap<usize, usize>,
}

impl OrbitReport {
    pub fn total_fillings(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }

    pub fn orbit_total(&self) -> usize {
        self.orbits.len()
    }
}

pub const DEFAULT_CENSUS_BOUND: usize = 12;

/// Exhaustive orbit decomposition at n, guarded by `bound`.
pub fn orbit_census_bounded(n: usize, bound: usize) -> Result<OrbitReport> {
    if n == 0 {
        return Err(Error::InvalidPermutation("census requires n ≥ 1".into()));
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let all = enumerate_312(n);
    let mut index: HashMap<&Permutation312, usize> =
        all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut seen = vec![false; all.len()];
    let mut orbits = Vec::new();
    for (i, p) in all.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut members = vec![p.clone()];
        seen[i] = true;
        let mut cur = kalman_step(p);
        while &cur != p {
            let j = *index
                .get_mut(&cur)
                .expect("kalman step stays within the enumeration");
            assert!(!seen[j], "orbits must partition the fillings");
            seen[j] = true;
            members.push(cur.clone());
            cur = kalman_step(&cur);
        }
        let size = members.len();
        orbits.push(Orbit {
            representative: p.clone(),
            size,
            members,
        });
    }
    let mut counts_by_size = BTreeMap::new();
    for o in &orbits {
        *counts_by_size.entry(o.size).or_insert(0) += 1;
    }
    let report = OrbitReport {
        n,
        orbits,
        counts_by_size,
    };
    // Invariants: sizes divide n+2 and lie in {n+2, (n+2)/2, (n+2)/3}; the
    // sizes sum to the Catalan number.
    for o in &report.orbits {
        let allowed = o.size == n + 2
            || ((n + 2) % 2 == 0 && o.size == (n + 2) / 2)
            || ((n + 2) % 3 == 0 && o.size == (n + 2) / 3);
        assert!(allowed, "orbit size {} unexpected at n={}", o.size, n);
    }
    assert_eq!(BigUint::from(report.total_fillings()), catalan(n));
    Ok(report)
}

/// `orbit_census_bounded` with the default bound of 12.
pub fn orbit_census(n: usize) -> Result<OrbitReport> {
    orbit_census_bounded(n, DEFAULT_CENSUS_BOUND)
}
