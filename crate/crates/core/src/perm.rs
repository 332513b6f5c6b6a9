//! 312-avoiding permutations in one-line notation.
//!
//! A permutation σ ∈ Sₙ contains the pattern 312 if there are positions
//! a < b < c with σ(a) > σ(c) > σ(b). The 312-avoiding permutations are
//! counted by the Catalan numbers and index the pinching-sequence fillings of
//! λ(A_{n−1}); they are the permutation side of the clip-sequence bijection
//! with triangulations of the (n+2)-gon.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A 312-avoiding permutation of {1, …, n} in one-line notation.
///
/// The empty permutation (n = 0) is allowed so that Catalan counting holds
/// uniformly (C₀ = 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation312 {
    word: Vec<usize>,
}

impl Permutation312 {
    /// Validates that `word` is a permutation of {1, …, n} avoiding 312.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        check_permutation(&word)?;
        if !avoids_312(&word) {
            return Err(Error::InvalidPermutation(format!(
                "{word:?} contains a 312 pattern"
            )));
        }
        Ok(Permutation312 { word })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Position (1-based) at which `value` occurs.
    pub fn position(&self, value: usize) -> Option<usize> {
        self.word.iter().position(|&v| v == value).map(|p| p + 1)
    }
}

impl fmt::Display for Permutation312 {
    /// Contiguous digits for n ≤ 9 (`154362`), comma-separated beyond
    /// (`1,5,11,…`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation312 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry {p:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation312::new(word)
    }
}

fn check_permutation(word: &[usize]) -> Result<()> {
    let n = word.len();
    let mut seen = vec![false; n + 1];
    for &v in word {
        if v == 0 || v > n || seen[v] {
            return Err(Error::InvalidPermutation(format!(
                "{word:?} is not a permutation of 1..={n}"
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

fn avoids_312(word: &[usize]) -> bool {
    // Pattern at (a, b, c), a < b < c, means max(word[..b]) > word[c] > word[b].
    let n = word.len();
    let mut max_before = 0usize;
    for b in 0..n {
        if word[b] < max_before {
            for c in b + 1..n {
                if word[b] < word[c] && word[c] < max_before {
                    return false;
                }
            }
        }
        max_before = max_before.max(word[b]);
    }
    true
}

/// Whether `word` (a permutation of 1…n) avoids the pattern 312.
pub fn is_312_avoiding(word: &[usize]) -> Result<bool> {
    check_permutation(word)?;
    Ok(avoids_312(word))
}

/// All 312-avoiding permutations of Sₙ in lexicographic order.
///
/// For n = 0 this is the single empty permutation. The generator appends one
/// letter at a time; appending v to a prefix with maximum M is legal iff no
/// unused value lies strictly between v and M (such a value would be forced
/// into a 312 pattern later), so the candidates at each step are every unused
/// value above M plus the largest unused value below M.
pub fn enumerate_312(n: usize) -> Vec<Permutation312> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(
        n: usize,
        max_so_far: usize,
        word: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Permutation312>,
    ) {
        if word.len() == n {
            out.push(Permutation312 { word: word.clone() });
            return;
        }
        let below = (1..max_so_far).rev().find(|&v| !used[v]);
        let candidates = below
            .into_iter()
            .chain((max_so_far + 1..=n).filter(|&v| !used[v]));
        let candidates: Vec<usize> = candidates.collect();
        // `below` comes first in the vec but must be tried in ascending order.
        let mut candidates = candidates;
        candidates.sort_unstable();
        for v in candidates {
            used[v] = true;
            word.push(v);
            rec(n, max_so_far.max(v), word, used, out);
            word.pop();
            used[v] = false;
        }
    }
    rec(n, 0, &mut word, &mut used, &mut out);
    out
}

/// The Catalan number Cₙ = (2n choose n)/(n+1), exactly.
pub fn catalan(n: usize) -> BigUint {
    // C_n = prod_{k=1}^{n} (n+k)/k, with each division exact.
    let mut c = BigUint::one();
    for k in 1..=n {
        c = c * BigUint::from(n + k) / BigUint::from(k);
    }
    c / BigUint::from(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn avoidance_examples() {
        assert!(is_312_avoiding(&[1, 5, 4, 3, 6, 2]).unwrap());
        assert!(is_312_avoiding(&[1, 2, 3, 4]).unwrap());
        assert!(!is_312_avoiding(&[3, 1, 2]).unwrap());
        assert!(!is_312_avoiding(&[2, 4, 1, 3]).unwrap());
    }

    #[test]
    fn malformed_input_rejected() {
        assert!(is_312_avoiding(&[1, 1, 2]).is_err());
        assert!(is_312_avoiding(&[0, 1]).is_err());
        assert!(is_312_avoiding(&[2, 3]).is_err());
        assert!(Permutation312::new(vec![3, 1, 2]).is_err());
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_312(0).len(), 1);
        assert_eq!(enumerate_312(1), vec![Permutation312::new(vec![1]).unwrap()]);
        let words: Vec<String> = enumerate_312(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(words, ["123", "132", "213", "231", "321"]);
    }

    #[test]
    fn enumerate_n3_matches_brute_force() {
        // Independent oracle: filter all of S3 by a naive pattern scan.
        let mut brute = Vec::new();
        let perms = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ];
        for w in perms {
            let mut ok = true;
            for a in 0..3 {
                for b in a + 1..3 {
                    for c in b + 1..3 {
                        if w[a] > w[c] && w[c] > w[b] {
                            ok = false;
                        }
                    }
                }
            }
            if ok {
                brute.push(w.to_vec());
            }
        }
        let ours: Vec<Vec<usize>> = enumerate_312(3).iter().map(|p| p.word().to_vec()).collect();
        assert_eq!(ours, brute);
    }

    #[test]
    fn enumerate_counts_are_catalan() {
        for n in 0..=10 {
            let c = catalan(n);
            assert_eq!(BigUint::from(enumerate_312(n).len()), c, "n={n}");
        }
    }

    #[test]
    fn enumerate_n4_table_order() {
        let words: Vec<String> = enumerate_312(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            words,
            [
                "1234", "1243", "1324", "1342", "1432", "2134", "2143", "2314", "2341", "2431",
                "3214", "3241", "3421", "4321"
            ]
        );
    }

    #[test]
    fn catalan_values() {
        let vals: Vec<u64> = (0..=10).map(|n| catalan(n).try_into().unwrap()).collect();
        assert_eq!(vals, [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]);
        assert_eq!(catalan(12), BigUint::from(208_012u32));
    }

    #[test]
    fn parse_display_roundtrip() {
        let p: Permutation312 = "154362".parse().unwrap();
        assert_eq!(p.word(), &[1, 5, 4, 3, 6, 2]);
        assert_eq!(p.to_string(), "154362");
        let q: Permutation312 = "1,5,4,3,6,2".parse().unwrap();
        assert_eq!(p, q);
        let long = Permutation312::new((1..=11).collect()).unwrap();
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(long.to_string().parse::<Permutation312>().unwrap(), long);
    }
}
