//! Triangulations of a labeled convex polygon and the clip-sequence bijection.
//!
//! The (n+2)-gon has vertices labeled 1…n+2 clockwise. A triangulation is a
//! maximal set of n−1 pairwise non-crossing diagonals. The clip sequence reads
//! off a 312-avoiding permutation by repeatedly deleting the smallest-labeled
//! vertex with no incident diagonal (the middle vertex of an ear); the inverse
//! replays that process backwards, re-inserting one ear per letter.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation312;

/// A polygon diagonal, stored normalized with `a < b` and 2 ≤ b − a ≤ n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    a: usize,
    b: usize,
}

impl Diagonal {
    /// Normalizes the endpoint pair; rejects sides and out-of-range labels.
    pub fn new(x: usize, y: usize, n: usize) -> Result<Self> {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if a == 0 || b > n + 2 {
            return Err(Error::InvalidDiagonal(format!(
                "({x},{y}) out of range for the {}-gon",
                n + 2
            )));
        }
        if a == b || b - a == 1 || b - a == n + 1 {
            return Err(Error::InvalidDiagonal(format!(
                "({x},{y}) is not a diagonal of the {}-gon",
                n + 2
            )));
        }
        Ok(Diagonal { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// Strict interior crossing; shared endpoints do not count.
    pub fn crosses(&self, other: &Diagonal) -> bool {
        let (a, b) = (self.a, self.b);
        let (c, d) = (other.a, other.b);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl FromStr for Diagonal {
    type Err = Error;

    /// Parses `a-b` or `a,b`; the polygon size is validated separately when
    /// the diagonal is used against a triangulation.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(['-', ',']).collect();
        if parts.len() != 2 {
            return Err(Error::InvalidDiagonal(format!("cannot parse {s:?}")));
        }
        let x: usize = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDiagonal(format!("cannot parse {s:?}")))?;
        let y: usize = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDiagonal(format!("cannot parse {s:?}")))?;
        if x == y || x == 0 || y == 0 {
            return Err(Error::InvalidDiagonal(format!("cannot parse {s:?}")));
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        Ok(Diagonal { a, b })
    }
}

/// A triangle of a triangulation, vertices in clockwise (ascending) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    vertices: [usize; 3],
    n: usize,
}

impl Triangle {
    pub fn vertices(&self) -> [usize; 3] {
        self.vertices
    }

    pub fn sides(&self) -> [(usize, usize); 3] {
        let [u, v, w] = self.vertices;
        [(u, v), (v, w), (u, w)]
    }

    /// True when a side lies on the polygon boundary.
    pub fn side_is_polygon_edge(&self, side: (usize, usize)) -> bool {
        let (x, y) = if side.0 < side.1 {
            side
        } else {
            (side.1, side.0)
        };
        y - x == 1 || y - x == self.n + 1
    }

    /// All three sides are diagonals.
    pub fn is_internal(&self) -> bool {
        self.sides().iter().all(|&s| !self.side_is_polygon_edge(s))
    }
}

/// A triangulation of the (n+2)-gon: n−1 pairwise non-crossing diagonals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    diagonals: BTreeSet<Diagonal>,
}

impl Triangulation {
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let diagonals: BTreeSet<Diagonal> = diagonals.into_iter().collect();
        let t = Triangulation { n, diagonals };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(n: usize, diagonals: BTreeSet<Diagonal>) -> Self {
        let t = Triangulation { n, diagonals };
        debug_assert!(t.validate().is_ok(), "internal triangulation invalid");
        t
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidTriangulation("n must be positive".into()));
        }
        if self.diagonals.len() != self.n - 1 {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} diagonals, got {}",
                self.n - 1,
                self.diagonals.len()
            )));
        }
        let list: Vec<Diagonal> = self.diagonals.iter().copied().collect();
        for d in &list {
            if d.b > self.n + 2 || d.b - d.a == self.n + 1 {
                return Err(Error::InvalidDiagonal(format!(
                    "{d} out of range for the {}-gon",
                    self.n + 2
                )));
            }
        }
        // Non-crossing ⟺ the intervals [a,b] form a laminar family. Sweep
        // them sorted by (a asc, b desc) against a stack of open intervals.
        let mut stack: Vec<Diagonal> = Vec::new();
        let mut i = 0;
        while i < list.len() {
            let mut j = i;
            while j < list.len() && list[j].a == list[i].a {
                j += 1;
            }
            for idx in (i..j).rev() {
                let d = list[idx];
                while stack.last().is_some_and(|top| top.b <= d.a) {
                    stack.pop();
                }
                if let Some(top) = stack.last() {
                    if top.b < d.b {
                        return Err(Error::InvalidTriangulation(format!("{top} crosses {d}")));
                    }
                }
                stack.push(d);
            }
            i = j;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 2
    }

    pub fn diagonals(&self) -> &BTreeSet<Diagonal> {
        &self.diagonals
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.contains(d)
    }

    /// Whether `x` and `y` are joined by a polygon side or a diagonal.
    pub fn connected(&self, x: usize, y: usize) -> bool {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if a == b {
            return false;
        }
        if b - a == 1 || b - a == self.n + 1 {
            return true;
        }
        self.diagonals.contains(&Diagonal { a, b })
    }

    /// The clip sequence: delete the smallest-labeled ear middle repeatedly,
    /// recording n labels (the final two vertices are never recorded).
    pub fn clip_sequence(&self) -> Permutation312 {
        let vertices: Vec<usize> = (1..=self.n + 2).collect();
        let (word, _) = clip_on_polygon(&vertices, &self.diagonals);
        Permutation312::new(word).expect("clip word of a valid triangulation avoids 312")
    }

    pub(crate) fn clip_word(&self) -> Vec<usize> {
        let vertices: Vec<usize> = (1..=self.n + 2).collect();
        clip_on_polygon(&vertices, &self.diagonals).0
    }

    /// Inverse of the clip sequence, by replaying the clip process in reverse:
    /// each letter re-inserts an ear between its current circular neighbors.
    pub fn triangulation_of(p: &Permutation312) -> Triangulation {
        let n = p.n();
        let vertices: Vec<usize> = (1..=n + 2).collect();
        let diagonals = replay_clip_word(p.word(), &vertices)
            .expect("reverse clip replay of a 312-avoiding word is a triangulation");
        Triangulation::new_unchecked(n, diagonals)
    }

    /// Counterclockwise rotation: every D_{a,b} ↦ D_{a−steps, b−steps} with
    /// labels taken mod n+2 into 1…n+2.
    pub fn rotated(&self, steps: i64) -> Triangulation {
        let m = (self.n + 2) as i64;
        let shift = |v: usize| -> usize {
            let r = ((v as i64 - steps) % m + m) % m;
            if r == 0 {
                self.n + 2
            } else {
                r as usize
            }
        };
        let diagonals = self
            .diagonals
            .iter()
            .map(|d| {
                let (x, y) = (shift(d.a), shift(d.b));
                let (a, b) = if x < y { (x, y) } else { (y, x) };
                Diagonal { a, b }
            })
            .collect();
        Triangulation::new_unchecked(self.n, diagonals)
    }

    /// The n triangles of the triangulation, read off the clip process.
    pub fn faces(&self) -> Vec<Triangle> {
        let vertices: Vec<usize> = (1..=self.n + 2).collect();
        let (_, mut faces) = clip_on_polygon(&vertices, &self.diagonals);
        faces.sort_unstable();
        faces
            .into_iter()
            .map(|mut vs| {
                vs.sort_unstable();
                Triangle {
                    vertices: vs,
                    n: self.n,
                }
            })
            .collect()
    }

    /// Number of triangles all of whose sides are diagonals (t_σ).
    pub fn internal_triangle_count(&self) -> usize {
        self.faces().iter().filter(|t| t.is_internal()).count()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// Runs the clip process on the polygon spanned by `vertices` (circularly
/// sorted labels) with interior `diagonals`. Returns the removal word and the
/// faces (u, v, w) consumed at each step. Used both for the full polygon and
/// for sub-polygons when reconstructing rotationally symmetric candidates.
pub(crate) fn clip_on_polygon(
    vertices: &[usize],
    diagonals: &BTreeSet<Diagonal>,
) -> (Vec<usize>, Vec<[usize; 3]>) {
    let m = vertices.len();
    assert!(m >= 2);
    let idx_of: BTreeMap<usize, usize> = vertices.iter().copied().zip(0..).collect();
    let mut next: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let mut prev: Vec<usize> = (0..m).map(|i| (i + m - 1) % m).collect();
    let mut degree = vec![0usize; m];
    for d in diagonals {
        degree[idx_of[&d.a]] += 1;
        degree[idx_of[&d.b]] += 1;
    }
    let mut available: BTreeSet<usize> = (0..m).filter(|&i| degree[i] == 0).collect();
    let mut word = Vec::with_capacity(m - 2);
    let mut faces = Vec::with_capacity(m - 2);
    let mut remaining = m;
    while remaining > 2 {
        // Every triangulated polygon has at least two ears.
        assert!(
            available.len() >= 2,
            "ear deficit while clipping: {} remaining, {} available",
            remaining,
            available.len()
        );
        let i = *available.iter().next().expect("nonempty");
        available.remove(&i);
        let (p, q) = (prev[i], next[i]);
        word.push(vertices[i]);
        faces.push([vertices[p], vertices[i], vertices[q]]);
        next[p] = q;
        prev[q] = p;
        remaining -= 1;
        let (x, y) = (vertices[p].min(vertices[q]), vertices[p].max(vertices[q]));
        if diagonals.contains(&Diagonal { a: x, b: y }) {
            for j in [p, q] {
                degree[j] -= 1;
                if degree[j] == 0 {
                    available.insert(j);
                }
            }
        }
    }
    (word, faces)
}

/// Reverse clip replay on the polygon spanned by `vertices`: inserts the
/// letters of `word` back in reverse order; each insertion between current
/// circular neighbors (u, w) contributes the diagonal D_{u,w} unless u and w
/// are adjacent in the polygon. Fails if the letters do not leave exactly two
/// vertices or if a segment repeats.
pub(crate) fn replay_clip_word(
    word: &[usize],
    vertices: &[usize],
) -> Result<BTreeSet<Diagonal>> {
    let vert_set: BTreeSet<usize> = vertices.iter().copied().collect();
    let letter_set: BTreeSet<usize> = word.iter().copied().collect();
    if letter_set.len() != word.len() || !letter_set.is_subset(&vert_set) {
        return Err(Error::InvalidPermutation(format!(
            "clip word {word:?} does not match polygon {vertices:?}"
        )));
    }
    if vert_set.len() != word.len() + 2 {
        return Err(Error::InvalidPermutation(format!(
            "clip word {word:?} must leave exactly two of {vertices:?}"
        )));
    }
    let adjacent: BTreeSet<(usize, usize)> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let w = vertices[(i + 1) % vertices.len()];
            (v.min(w), v.max(w))
        })
        .collect();
    let mut polygon: BTreeSet<usize> = vert_set.difference(&letter_set).copied().collect();
    let mut diagonals = BTreeSet::new();
    for &v in word.iter().rev() {
        let succ = polygon
            .range(v + 1..)
            .next()
            .or_else(|| polygon.iter().next())
            .copied()
            .expect("polygon nonempty");
        let pred = polygon
            .range(..v)
            .next_back()
            .or_else(|| polygon.iter().next_back())
            .copied()
            .expect("polygon nonempty");
        let (a, b) = (pred.min(succ), pred.max(succ));
        if !adjacent.contains(&(a, b)) {
            if !diagonals.insert(Diagonal { a, b }) {
                return Err(Error::InvalidTriangulation(format!(
                    "replay of {word:?} repeats segment {a}-{b}"
                )));
            }
        }
        polygon.insert(v);
    }
    Ok(diagonals)
}
