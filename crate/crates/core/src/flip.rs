//! Edge flips, the flip-graph distance oracle, the geodesic realizing a
//! counterclockwise rotation, and the flip action on 312-avoiding words.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation312;
use crate::triangulation::{Diagonal, Triangulation};

/// A replayable sequence of edge flips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSequence {
    pub start: Triangulation,
    pub steps: Vec<Diagonal>,
    pub end: Triangulation,
}

impl FlipSequence {
    /// Replays the steps from `start`; every intermediate state must be a
    /// valid triangulation and the result must equal `end`.
    pub fn validate(&self) -> Result<()> {
        let mut cur = self.start.clone();
        for d in &self.steps {
            cur = flip(&cur, d)?;
        }
        if cur == self.end {
            Ok(())
        } else {
            Err(Error::InvalidFlip(format!(
                "replay ends at {cur}, expected {}",
                self.end
            )))
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The apexes of the two triangles adjacent to diagonal `d` in `t`:
/// the first lies on the arc a→b (a < c < b), the second on the arc b→a.
fn apexes(t: &Triangulation, d: &Diagonal) -> (usize, usize) {
    let (a, b) = d.endpoints();
    let inner = (a + 1..b)
        .find(|&c| t.connected(a, c) && t.connected(c, b))
        .expect("diagonal has an adjacent triangle on each side");
    let outer = (b + 1..=t.n() + 2)
        .chain(1..a)
        .find(|&c| t.connected(a, c) && t.connected(c, b))
        .expect("diagonal has an adjacent triangle on each side");
    (inner, outer)
}

/// The diagonal a flip at `d` would produce, without performing it.
fn flip_result(t: &Triangulation, d: &Diagonal) -> Diagonal {
    let (c1, c2) = apexes(t, d);
    Diagonal::new(c1, c2, t.n()).expect("apexes of a flip quadrilateral are non-adjacent")
}

/// Replaces `d` by the opposite diagonal of the quadrilateral formed by its
/// two adjacent triangles.
pub fn flip(t: &Triangulation, d: &Diagonal) -> Result<Triangulation> {
    if !t.contains(d) {
        return Err(Error::InvalidFlip(format!("{d} is not a diagonal of {t}")));
    }
    let e = flip_result(t, d);
    let mut diagonals = t.diagonals().clone();
    diagonals.remove(d);
    diagonals.insert(e);
    Ok(Triangulation::new_unchecked(t.n(), diagonals))
}

/// Letters strictly inside the clockwise arc from `from` to `to` on the
/// (n+2)-gon.
fn arc_interior(from: usize, to: usize, n: usize) -> Vec<usize> {
    let m = n + 2;
    let mut out = Vec::new();
    let mut v = from % m + 1;
    while v != to {
        out.push(v);
        v = v % m + 1;
    }
    out
}

/// Quadrilateral presentation (i, j, k, l) used by the word-level flip: the
/// vertices in clockwise order with the flip at D_{i,k}. The letters j and k
/// and the three arcs (i,j), (j,k), (k,l) must avoid the never-clipped
/// vertices n+1 and n+2, which therefore sit in the closed arc from l to i.
fn presentation_is_letters(quad: (usize, usize, usize, usize), n: usize) -> bool {
    let (i, j, k, l) = quad;
    if j > n || k > n {
        return false;
    }
    let mut inside = Vec::new();
    inside.extend(arc_interior(i, j, n));
    inside.extend(arc_interior(j, k, n));
    inside.extend(arc_interior(k, l, n));
    inside.iter().all(|&v| v <= n)
}

fn check_quad(t: &Triangulation, quad: (usize, usize, usize, usize)) -> Result<()> {
    let (i, j, k, l) = quad;
    let n = t.n();
    let m = n + 2;
    for &v in &[i, j, k, l] {
        if v == 0 || v > m {
            return Err(Error::InvalidFlip(format!(
                "vertex {v} out of range for the {m}-gon"
            )));
        }
    }
    // Clockwise order: j inside arc i→k, l inside arc k→i.
    if !arc_interior(i, k, n).contains(&j) || !arc_interior(k, i, n).contains(&l) {
        return Err(Error::InvalidFlip(format!(
            "({i},{j},{k},{l}) is not in clockwise order"
        )));
    }
    for (x, y) in [(i, j), (j, k), (k, l), (l, i)] {
        if !t.connected(x, y) {
            return Err(Error::InvalidFlip(format!(
                "side {x}-{y} of the quadrilateral is missing"
            )));
        }
    }
    let diag = Diagonal::new(i, k, n)
        .map_err(|_| Error::InvalidFlip(format!("{i}-{k} is not a diagonal")))?;
    if !t.contains(&diag) {
        return Err(Error::InvalidFlip(format!("diagonal {diag} is missing")));
    }
    Ok(())
}

/// Positions (0-based) of the letters of `set` within `word`.
fn positions_of(word: &[usize], set: &BTreeSet<usize>) -> Vec<usize> {
    word.iter()
        .enumerate()
        .filter(|(_, v)| set.contains(v))
        .map(|(p, _)| p)
        .collect()
}

/// The flip action on the permutation itself: for a quadrilateral with sides
/// D_{i,j}, D_{j,k}, D_{k,l}, D_{i,l} and diagonal D_{i,k}, the word
/// decomposes as …τ₁τ₂ j τ₃ k… and the flip at D_{i,k} rewrites it to
/// …τ₁τ₂τ₃ k j… (τ_m being the letters strictly inside the m-th arc). When
/// the given presentation places n+1 or n+2 inside one of the three arcs, the
/// flip is performed through the inverse rewrite of the opposite
/// presentation, which then satisfies the arc condition.
pub fn flip_on_permutation(
    p: &Permutation312,
    quad: (usize, usize, usize, usize),
) -> Result<Permutation312> {
    let t = Triangulation::triangulation_of(p);
    check_quad(&t, quad)?;
    let n = p.n();
    let (i, j, k, l) = quad;
    // A presentation and its 2-rotation describe the same flip.
    for q in [(i, j, k, l), (k, l, i, j)] {
        if presentation_is_letters(q, n) {
            return forward_rewrite(p, q);
        }
    }
    // Neither rotation is letters-only; the opposite diagonal's presentation
    // is, and this flip is its inverse.
    for q in [(j, k, l, i), (l, i, j, k)] {
        if presentation_is_letters(q, n) {
            return inverse_rewrite(p, q);
        }
    }
    Err(Error::InvalidFlip(format!(
        "quadrilateral ({i},{j},{k},{l}) admits no letters-only presentation"
    )))
}

/// σ = …τ₁τ₂ j τ₃ k… ↦ …τ₁τ₂τ₃ k j…
fn forward_rewrite(p: &Permutation312, quad: (usize, usize, usize, usize)) -> Result<Permutation312> {
    let n = p.n();
    let (i, j, k, l) = quad;
    let a12: BTreeSet<usize> = arc_interior(i, j, n)
        .into_iter()
        .chain(arc_interior(j, k, n))
        .collect();
    let a3: BTreeSet<usize> = arc_interior(k, l, n).into_iter().collect();
    let block: BTreeSet<usize> = a12.iter().chain(a3.iter()).copied().chain([j, k]).collect();
    let word = p.word();
    let pos = positions_of(word, &block);
    let start = pos[0];
    let contiguous = pos.windows(2).all(|w| w[1] == w[0] + 1);
    // Structure: τ₁τ₂ letters, then j, then τ₃ letters, then k.
    let expect_ok = contiguous && {
        let seg = &word[start..start + pos.len()];
        let jpos = seg.iter().position(|&v| v == j);
        let kpos = seg.iter().position(|&v| v == k);
        match (jpos, kpos) {
            (Some(jp), Some(kp)) => {
                kp == seg.len() - 1
                    && seg[..jp].iter().all(|v| a12.contains(v))
                    && seg[jp + 1..kp].iter().all(|v| a3.contains(v))
            }
            _ => false,
        }
    };
    if !expect_ok {
        return Err(Error::InvalidFlip(format!(
            "{p} does not decompose as τ₁τ₂ {j} τ₃ {k} for quad ({i},{j},{k},{l})"
        )));
    }
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&word[..start]);
    let seg = &word[start..start + pos.len()];
    out.extend(seg.iter().copied().filter(|&v| v != j && v != k));
    out.push(k);
    out.push(j);
    out.extend_from_slice(&word[start + pos.len()..]);
    Permutation312::new(out)
}

/// σ = …τ₁τ₂τ₃ k j… ↦ …τ₁τ₂ j τ₃ k…  (inverse of `forward_rewrite`, with the
/// presentation naming the opposite diagonal D_{i,k} of the quadrilateral).
fn inverse_rewrite(p: &Permutation312, quad: (usize, usize, usize, usize)) -> Result<Permutation312> {
    let n = p.n();
    let (i, j, k, l) = quad;
    let a12: BTreeSet<usize> = arc_interior(i, j, n)
        .into_iter()
        .chain(arc_interior(j, k, n))
        .collect();
    let a3: BTreeSet<usize> = arc_interior(k, l, n).into_iter().collect();
    let block: BTreeSet<usize> = a12.iter().chain(a3.iter()).copied().chain([j, k]).collect();
    let word = p.word();
    let pos = positions_of(word, &block);
    let start = pos[0];
    let contiguous = pos.windows(2).all(|w| w[1] == w[0] + 1);
    let expect_ok = contiguous && {
        let seg = &word[start..start + pos.len()];
        let len = seg.len();
        len >= 2
            && seg[len - 2] == k
            && seg[len - 1] == j
            && seg[..len - 2]
                .iter()
                .all(|v| a12.contains(v) || a3.contains(v))
    };
    if !expect_ok {
        return Err(Error::InvalidFlip(format!(
            "{p} does not decompose as τ₁τ₂τ₃ {k} {j} for quad ({i},{j},{k},{l})"
        )));
    }
    let seg = &word[start..start + pos.len()];
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&word[..start]);
    out.extend(seg.iter().copied().filter(|v| a12.contains(v)));
    out.push(j);
    out.extend(seg.iter().copied().filter(|v| a3.contains(v)));
    out.push(k);
    out.extend_from_slice(&word[start + pos.len()..]);
    Permutation312::new(out)
}

/// Word-level flip at a given diagonal of 𝒯_p: resolves the quadrilateral of
/// `d` and applies `flip_on_permutation`.
pub fn flip_word_at(p: &Permutation312, d: &Diagonal) -> Result<Permutation312> {
    let t = Triangulation::triangulation_of(p);
    if !t.contains(d) {
        return Err(Error::InvalidFlip(format!("{d} is not a diagonal of 𝒯_{p}")));
    }
    let (inner, outer) = apexes(&t, d);
    let (a, b) = d.endpoints();
    // Clockwise quadrilateral a → inner → b → outer with flip at D_{a,b}.
    flip_on_permutation(p, (a, inner, b, outer))
}

/// Internal triangles of the starting triangulation, as clockwise vertex
/// triples.
fn internal_triangles(t: &Triangulation) -> Vec<[usize; 3]> {
    t.faces()
        .iter()
        .filter(|f| f.is_internal())
        .map(|f| f.vertices())
        .collect()
}

/// A geodesic in the flip graph realizing the counterclockwise rotation of
/// `t` by one vertex, of length exactly n−1+t_σ.
///
/// Every flip on such a geodesic either lands on a diagonal of the rotated
/// triangulation, or is the opening flip of an internal triangle: the flip at
/// a side D_{u,v} (arc u→v not containing the third vertex w) whose outer
/// triangle is (u, v−1, v), producing the intermediate D_{v−1,w}. The
/// sequence is found by depth-first search over exactly these moves, trying
/// rotation-producing flips first in lexicographic diagonal order; the search
/// backtracks over the choice of opening sides, which matters when internal
/// triangles share sides.
pub fn rotation_geodesic(t: &Triangulation) -> FlipSequence {
    let n = t.n();
    let target = t.rotated(1);
    let t_count = t.internal_triangle_count();
    let budget = n - 1 + t_count;
    if n == 1 {
        return FlipSequence {
            start: t.clone(),
            steps: Vec::new(),
            end: target,
        };
    }
    let internals = internal_triangles(t);
    let mut steps = Vec::new();
    let mut failed: HashSet<(Vec<Diagonal>, usize)> = HashSet::new();
    let mut cur = t.clone();
    let found = dfs(
        &mut cur,
        &target,
        budget,
        &internals,
        &mut steps,
        &mut failed,
    );
    assert!(found, "no rotation geodesic of length {budget} found for {t}");
    let seq = FlipSequence {
        start: t.clone(),
        steps,
        end: target,
    };
    debug_assert!(seq.validate().is_ok());
    seq
}

fn dfs(
    cur: &mut Triangulation,
    target: &Triangulation,
    budget: usize,
    internals: &[[usize; 3]],
    steps: &mut Vec<Diagonal>,
    failed: &mut HashSet<(Vec<Diagonal>, usize)>,
) -> bool {
    if cur == target {
        return budget == 0;
    }
    let missing = target
        .diagonals()
        .iter()
        .filter(|d| !cur.contains(d))
        .count();
    if missing > budget {
        return false;
    }
    let key = (cur.diagonals().iter().copied().collect::<Vec<_>>(), budget);
    if failed.contains(&key) {
        return false;
    }
    let mut moves: Vec<Diagonal> = Vec::new();
    // Rotation-producing flips first, in lexicographic order.
    for d in cur.diagonals() {
        if target.contains(d) {
            continue; // already in final position
        }
        let e = flip_result(cur, d);
        if target.contains(&e) {
            moves.push(*d);
        }
    }
    // Opening flips of internal triangles whose face is still intact.
    for tri in internals {
        for r in 0..3 {
            let (u, v, w) = (tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]);
            let side = match Diagonal::new(u, v, cur.n()) {
                Ok(d) => d,
                Err(_) => continue,
            };
            if !cur.contains(&side) || target.contains(&side) {
                continue;
            }
            let (c1, c2) = apexes(cur, &side);
            // Apex on the w-free side must be v−1; the other face must be the
            // intact triangle itself.
            let pred_v = if v == 1 { cur.n() + 2 } else { v - 1 };
            let (x, y) = side.endpoints();
            // apexes() orders by arc x→y, x < y; map to (u, v) orientation.
            let (apex_uv, apex_vu) = if (u, v) == (x, y) { (c1, c2) } else { (c2, c1) };
            if apex_uv == pred_v && apex_vu == w {
                moves.push(side);
            }
        }
    }
    for d in moves {
        let e = flip_result(cur, &d);
        let mut next = cur.clone();
        {
            let mut diagonals = next.diagonals().clone();
            diagonals.remove(&d);
            diagonals.insert(e);
            next = Triangulation::new_unchecked(next.n(), diagonals);
        }
        steps.push(d);
        std::mem::swap(cur, &mut next);
        if dfs(cur, target, budget - 1, internals, steps, failed) {
            return true;
        }
        std::mem::swap(cur, &mut next);
        steps.pop();
    }
    failed.insert(key);
    false
}

pub const DEFAULT_BFS_BOUND: usize = 10;

/// Exact flip-graph distance by breadth-first search. Intended as an oracle
/// for small n; errors beyond `bound`.
pub fn flip_distance_bounded(
    t1: &Triangulation,
    t2: &Triangulation,
    bound: usize,
) -> Result<usize> {
    if t1.n() != t2.n() {
        return Err(Error::InvalidTriangulation(format!(
            "mismatched polygon sizes {} and {}",
            t1.n(),
            t2.n()
        )));
    }
    if t1.n() > bound {
        return Err(Error::BoundExceeded {
            n: t1.n(),
            bound,
        });
    }
    let encode = |t: &Triangulation| -> Vec<Diagonal> { t.diagonals().iter().copied().collect() };
    let goal = encode(t2);
    let mut dist: HashMap<Vec<Diagonal>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(encode(t1), 0);
    queue.push_back(t1.clone());
    while let Some(cur) = queue.pop_front() {
        let key = encode(&cur);
        let d0 = dist[&key];
        if key == goal {
            return Ok(d0);
        }
        for d in cur.diagonals().clone() {
            let next = flip(&cur, &d).expect("diagonal of current triangulation");
            let nk = encode(&next);
            if !dist.contains_key(&nk) {
                dist.insert(nk, d0 + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("flip graph is connected")
}

/// `flip_distance_bounded` with the default bound.
pub fn flip_distance(t1: &Triangulation, t2: &Triangulation) -> Result<usize> {
    flip_distance_bounded(t1, t2, DEFAULT_BFS_BOUND)
}
