//! Pinching-sequence augmentations ε_σ and their toric-chart coordinates.
//!
//! Pinching the crossings of λ(A_{n−1}) in the order given by a 312-avoiding
//! permutation σ, followed by the minimum cobordism, sends each generator z_j
//! to a Laurent polynomial in s₁…s_{n−1}. The composite kills Xₙ, the
//! diagonal functions Δ_{i,j} of 𝒯_σ restrict to monomials
//! ε_σ(Δ_{i,j}) = s_i…s_{j−2}, and the triangles of 𝒯_σ biject with the
//! toric coordinates via φ(T) = Δ_{i,j}⁻¹ Δ_{j,k}⁻¹ Δ_{i,k} = s_{j−1}.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::perm::Permutation312;
use crate::triangulation::{Diagonal, Triangulation};

/// The crossings affected by the pinch at position `step` (1-based) of σ:
/// those j not yet pinched such that every k strictly between j and σ(step)
/// was pinched earlier.
pub fn t_set(sigma: &Permutation312, step: usize) -> BTreeSet<usize> {
    let n = sigma.n();
    assert!(step >= 1 && step <= n, "step out of range");
    let i = sigma.word()[step - 1];
    let pos = |v: usize| sigma.position(v).expect("value in word");
    (1..=n)
        .filter(|&j| j != i && pos(j) > step)
        .filter(|&j| {
            let (lo, hi) = (i.min(j), i.max(j));
            (lo + 1..hi).all(|k| pos(k) < step)
        })
        .collect()
}

/// Image of one generator while the pinching maps are being composed: an
/// unpinched z_j is always z_j plus an accumulated Laurent constant, a
/// pinched one is a full Laurent polynomial in s₁…sₙ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PinchImage {
    Unpinched(LaurentPoly),
    Pinched(LaurentPoly),
}

/// State of the composition Φ_step ∘ … ∘ Φ₁ applied to the generators.
#[derive(Debug, Clone)]
pub struct PinchState {
    sigma: Permutation312,
    applied: usize,
    images: Vec<PinchImage>,
}

impl PinchState {
    pub fn new(sigma: &Permutation312) -> Self {
        let n = sigma.n();
        PinchState {
            sigma: sigma.clone(),
            applied: 0,
            images: vec![PinchImage::Unpinched(LaurentPoly::zero(n)); n],
        }
    }

    pub fn applied(&self) -> usize {
        self.applied
    }

    pub fn image(&self, j: usize) -> &PinchImage {
        &self.images[j - 1]
    }

    /// Applies Φ_step. The pinch sends z_{σ(step)} to s_{σ(step)} (keeping its
    /// accumulated constant) and adds
    /// (−1)^{|j−σ(step)|} s_{σ(step)}^{−1} ∏_{k between} s_k^{−2}
    /// to every j in the t-set; the sign is the marked-point count of the
    /// disk joining the two crossings.
    pub fn pinch(&mut self, step: usize) -> Result<()> {
        let n = self.sigma.n();
        if step != self.applied + 1 || step > n {
            return Err(Error::PinchOrder(format!(
                "pinch {step} applied after {} pinches",
                self.applied
            )));
        }
        let i = self.sigma.word()[step - 1];
        let affected = t_set(&self.sigma, step);
        for &j in &affected {
            let (lo, hi) = (i.min(j), i.max(j));
            let mut exps = vec![0i64; n];
            exps[i - 1] = -1;
            for k in lo + 1..hi {
                exps[k - 1] = -2;
            }
            let coeff = if (hi - lo) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let term = LaurentPoly::monomial(exps, coeff);
            match &mut self.images[j - 1] {
                PinchImage::Unpinched(constant) => *constant = constant.add(&term),
                PinchImage::Pinched(_) => {
                    unreachable!("t-set members are unpinched")
                }
            }
        }
        let own = match &self.images[i - 1] {
            PinchImage::Unpinched(constant) => constant.add(&LaurentPoly::var(i, n)),
            PinchImage::Pinched(_) => {
                return Err(Error::PinchOrder(format!("crossing {i} already pinched")))
            }
        };
        self.images[i - 1] = PinchImage::Pinched(own);
        self.applied = step;
        Ok(())
    }

    /// The minimum cobordism: substitutes sₙ ↦ s₁⁻¹…s_{n−1}⁻¹ in every image.
    /// All n crossings must have been pinched.
    pub fn phi_min(&self) -> Result<Augmentation> {
        let n = self.sigma.n();
        if self.applied != n {
            return Err(Error::PinchOrder(format!(
                "phi_min applied after {} of {n} pinches",
                self.applied
            )));
        }
        let mut image_exps = vec![-1i64; n];
        image_exps[n - 1] = 0;
        let images: Vec<LaurentPoly> = self
            .images
            .iter()
            .map(|im| match im {
                PinchImage::Pinched(p) => p.eliminate_var(n, &image_exps),
                PinchImage::Unpinched(_) => unreachable!("all crossings pinched"),
            })
            .collect();
        let aug = Augmentation {
            sigma: self.sigma.clone(),
            images,
        };
        debug_assert!(aug.eval_aug_polynomial().is_zero(), "ε(Xₙ) must vanish");
        Ok(aug)
    }
}

/// The augmentation ε_σ: each z_j mapped to a Laurent polynomial in
/// s₁…s_{n−1}, a point of the toric chart of Aug(λ(A_{n−1})).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    sigma: Permutation312,
    images: Vec<LaurentPoly>,
}

impl Augmentation {
    pub fn sigma(&self) -> &Permutation312 {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    /// ε_σ(z_j), 1-based.
    pub fn image(&self, j: usize) -> &LaurentPoly {
        &self.images[j - 1]
    }

    pub fn images(&self) -> &[LaurentPoly] {
        &self.images
    }

    /// ε_σ(Δ_{i,j}) via the Laurent braid-matrix product.
    pub fn delta_image(&self, i: usize, j: usize) -> Result<LaurentPoly> {
        let n = self.n();
        let vars = n.saturating_sub(1);
        if i < 1 || j < i || j > n + 2 {
            return Err(Error::IndexOutOfRange(format!("Δ_({i},{j}) with n = {n}")));
        }
        if j == i {
            return Ok(LaurentPoly::zero(vars));
        }
        let args: Vec<&LaurentPoly> = (i..=j - 2).map(|k| &self.images[k - 1]).collect();
        Ok(laurent_braid_22(vars, &args))
    }

    /// ε_σ(Xₙ); zero for every valid augmentation.
    pub fn eval_aug_polynomial(&self) -> LaurentPoly {
        let vars = self.n().saturating_sub(1);
        let args: Vec<&LaurentPoly> = self.images.iter().collect();
        laurent_braid_22(vars, &args).sub(&LaurentPoly::one(vars))
    }
}

/// (2,2) entry of ∏ B(x) over Laurent polynomials.
fn laurent_braid_22(vars: usize, args: &[&LaurentPoly]) -> LaurentPoly {
    // Row (m10, m11) of the running product is all the (2,2) entry needs.
    let mut m10 = LaurentPoly::zero(vars);
    let mut m11 = LaurentPoly::one(vars);
    for x in args {
        let new10 = m11.clone();
        let new11 = m10.add(&m11.mul(x));
        m10 = new10;
        m11 = new11;
    }
    m11
}

/// The full pinching-sequence augmentation ε_σ = Φ_min ∘ Φₙ ∘ … ∘ Φ₁.
pub fn augmentation(sigma: &Permutation312) -> Augmentation {
    let mut state = PinchState::new(sigma);
    for step in 1..=sigma.n() {
        state.pinch(step).expect("pinches applied in order");
    }
    state.phi_min().expect("all crossings pinched")
}

/// The index pair (i, j) of the Δ function matching a diagonal of the
/// (n+2)-gon: D_{a,b} ↦ (a+1, b+1), wrapping to (1, a+1) when b = n+2.
pub fn delta_for_diagonal(d: &Diagonal, n: usize) -> (usize, usize) {
    let (a, b) = d.endpoints();
    if b == n + 2 {
        (1, a + 1)
    } else {
        (a + 1, b + 1)
    }
}

/// Expected monomial ε_σ(Δ_{i,j}) = s_i…s_{j−2}, with sₙ eliminated through
/// the minimum cobordism when j−2 = n.
fn expected_diagonal_monomial(i: usize, j: usize, n: usize) -> LaurentPoly {
    let vars = n - 1;
    let mut exps = vec![0i64; vars];
    if j == i + 1 {
        return LaurentPoly::one(vars);
    }
    if j - 2 == n {
        // s_i…s_{n−1} · (s₁…s_{n−1})⁻¹ = (s₁…s_{i−1})⁻¹
        for e in exps.iter_mut().take(i - 1) {
            *e = -1;
        }
    } else {
        for e in exps.iter_mut().take(j - 2).skip(i - 1) {
            *e = 1;
        }
    }
    LaurentPoly::monomial(exps, BigInt::one())
}

/// A diagonal whose Δ image failed to be the expected monomial.
#[derive(Debug, Clone)]
pub struct FibonacciWitness {
    pub diagonal: Diagonal,
    pub pair: (usize, usize),
    pub expected: LaurentPoly,
    pub actual: LaurentPoly,
}

/// Result of the diagonal-monomial check for one σ.
#[derive(Debug, Clone)]
pub struct FibonacciCheck {
    pub holds: bool,
    pub witnesses: Vec<FibonacciWitness>,
}

/// Checks ε_σ(Δ_{i,j}) = s_i…s_{j−2} for every diagonal D of 𝒯_σ with index
/// pair (i,j) = delta_for_diagonal(D).
pub fn verify_fibonacci(sigma: &Permutation312) -> FibonacciCheck {
    let n = sigma.n();
    let aug = augmentation(sigma);
    let t = Triangulation::triangulation_of(sigma);
    let mut witnesses = Vec::new();
    for d in t.diagonals() {
        let (i, j) = delta_for_diagonal(d, n);
        let actual = aug.delta_image(i, j).expect("indices in range");
        let expected = expected_diagonal_monomial(i, j, n);
        if actual != expected {
            witnesses.push(FibonacciWitness {
                diagonal: *d,
                pair: (i, j),
                expected,
                actual,
            });
        }
    }
    FibonacciCheck {
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// Result of the triangle-basis check for one σ.
#[derive(Debug, Clone)]
pub struct BasisCheck {
    pub holds: bool,
    /// Middle indices j−1 collected over the triangles; must be {1,…,n},
    /// with index n standing for the eliminated monomial (s₁…s_{n−1})⁻¹.
    pub middles: Vec<usize>,
    pub failures: Vec<String>,
}

/// Checks that φ(T) = ε(Δ_{i,j})⁻¹ ε(Δ_{j,k})⁻¹ ε(Δ_{i,k}) equals s_{j−1}
/// for every triangle of 𝒯_σ and that T ↦ j−1 is a bijection onto {1,…,n}
/// (hence onto the toric coordinates s₁,…,s_{n−1} plus the eliminated one).
pub fn verify_basis(sigma: &Permutation312) -> BasisCheck {
    let n = sigma.n();
    let aug = augmentation(sigma);
    let t = Triangulation::triangulation_of(sigma);
    let mut middles = Vec::new();
    let mut failures = Vec::new();
    for face in t.faces() {
        let mut shifted: Vec<usize> = face
            .vertices()
            .iter()
            .map(|&v| if v == n + 2 { 1 } else { v + 1 })
            .collect();
        shifted.sort_unstable();
        let (i, j, k) = (shifted[0], shifted[1], shifted[2]);
        let phi = (|| -> Result<LaurentPoly> {
            let dij = aug.delta_image(i, j)?.invert()?;
            let djk = aug.delta_image(j, k)?.invert()?;
            let dik = aug.delta_image(i, k)?;
            Ok(dij.mul(&djk).mul(&dik))
        })();
        let expected = if j - 1 == n {
            LaurentPoly::monomial(vec![-1i64; n - 1], BigInt::one())
        } else {
            LaurentPoly::var(j - 1, n - 1)
        };
        match phi {
            Ok(phi) if phi == expected => middles.push(j - 1),
            Ok(phi) => failures.push(format!(
                "triangle {:?}: φ = {phi}, expected {expected}",
                face.vertices()
            )),
            Err(e) => failures.push(format!("triangle {:?}: {e}", face.vertices())),
        }
    }
    middles.sort_unstable();
    let expected_middles: Vec<usize> = (1..=n).collect();
    let bijection = middles == expected_middles;
    if !bijection {
        failures.push(format!("middle indices {middles:?} ≠ {expected_middles:?}"));
    }
    BasisCheck {
        holds: failures.is_empty(),
        middles,
        failures,
    }
}

/// Evaluates ε_σ at nonzero rational toric coordinates, producing a point of
/// the augmentation variety (Xₙ = 0 exactly, asserted).
pub fn sample_variety_point(
    sigma: &Permutation312,
    s_values: &[BigRational],
) -> Result<Vec<BigRational>> {
    let n = sigma.n();
    if s_values.len() + 1 != n {
        return Err(Error::ZeroSample(format!(
            "need {} coordinates, got {}",
            n - 1,
            s_values.len()
        )));
    }
    for (idx, v) in s_values.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::ZeroSample(format!("s{} = 0", idx + 1)));
        }
    }
    let aug = augmentation(sigma);
    let point: Vec<BigRational> = aug
        .images()
        .iter()
        .map(|im| im.eval_rational(s_values))
        .collect::<Result<_>>()?;
    let x = crate::braid::aug_polynomial(n).eval_rational(&point);
    assert!(x.is_zero(), "Xₙ must vanish on the sampled point");
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn perm(s: &str) -> Permutation312 {
        s.parse().unwrap()
    }

    fn mono(exps: Vec<i64>) -> LaurentPoly {
        LaurentPoly::monomial(exps, BigInt::one())
    }

    #[test]
    fn t_set_examples() {
        let p = perm("213");
        assert_eq!(t_set(&p, 1), [1, 3].into_iter().collect());
        assert_eq!(t_set(&p, 3), BTreeSet::new());
        let id = perm("123");
        assert_eq!(t_set(&id, 1), [2].into_iter().collect());
    }

    #[test]
    fn trefoil_pinch_sequence() {
        // σ = 213: pinch z₂ first, then z₁, then z₃.
        let p = perm("213");
        let mut st = PinchState::new(&p);
        st.pinch(1).unwrap();
        assert_eq!(
            st.image(1),
            &PinchImage::Unpinched(mono(vec![0, -1, 0]).neg())
        );
        assert_eq!(st.image(2), &PinchImage::Pinched(mono(vec![0, 1, 0])));
        assert_eq!(
            st.image(3),
            &PinchImage::Unpinched(mono(vec![0, -1, 0]).neg())
        );
        st.pinch(2).unwrap();
        // z₁ ↦ s₁ − s₂⁻¹ including the accumulated constant.
        assert_eq!(
            st.image(1),
            &PinchImage::Pinched(mono(vec![1, 0, 0]).sub(&mono(vec![0, -1, 0])))
        );
        // z₃ gains +s₁⁻¹s₂⁻².
        assert_eq!(
            st.image(3),
            &PinchImage::Unpinched(mono(vec![-1, -2, 0]).sub(&mono(vec![0, -1, 0])))
        );
        st.pinch(3).unwrap();
        assert!(st.phi_min().is_ok());
    }

    #[test]
    fn pinch_order_enforced() {
        let p = perm("213");
        let mut st = PinchState::new(&p);
        assert!(st.pinch(2).is_err());
        st.pinch(1).unwrap();
        assert!(st.phi_min().is_err());
    }

    #[test]
    fn trefoil_augmentation() {
        let aug = augmentation(&perm("213"));
        assert_eq!(aug.image(1).to_string(), "-s2^-1 + s1");
        assert_eq!(aug.image(2).to_string(), "s2");
        assert_eq!(
            aug.image(3).to_string(),
            "s1^-1*s2^-2 + s1^-1*s2^-1 - s2^-1"
        );
        assert!(aug.eval_aug_polynomial().is_zero());
    }

    #[test]
    fn first_pinched_crossing_stays_monomial() {
        for p in crate::perm::enumerate_312(5) {
            let aug = augmentation(&p);
            let first = p.word()[0];
            // sₙ may have been eliminated, so compare through evaluation of
            // the expected monomial instead of the raw variable.
            let n = p.n();
            let expected = if first == n {
                LaurentPoly::monomial(vec![-1i64; n - 1], BigInt::one())
            } else {
                LaurentPoly::var(first, n - 1)
            };
            assert_eq!(aug.image(first), &expected, "σ={p}");
        }
    }

    #[test]
    fn aug_kills_x_small_sweep() {
        for n in 1..=6 {
            for p in crate::perm::enumerate_312(n) {
                let aug = augmentation(&p);
                assert!(aug.eval_aug_polynomial().is_zero(), "σ={p}");
            }
        }
    }

    #[test]
    fn delta_for_diagonal_examples() {
        assert_eq!(
            delta_for_diagonal(&Diagonal::new(2, 8, 6).unwrap(), 6),
            (1, 3)
        );
        assert_eq!(
            delta_for_diagonal(&Diagonal::new(1, 3, 3).unwrap(), 3),
            (2, 4)
        );
        assert_eq!(
            delta_for_diagonal(&Diagonal::new(3, 5, 3).unwrap(), 3),
            (1, 4)
        );
    }

    #[test]
    fn fibonacci_trefoil() {
        let check = verify_fibonacci(&perm("213"));
        assert!(check.holds, "{:?}", check.witnesses);
        // D_{1,3} carries Δ_{2,4} = z₂ with image s₂.
        let aug = augmentation(&perm("213"));
        assert_eq!(aug.delta_image(2, 4).unwrap().to_string(), "s2");
        assert_eq!(aug.delta_image(1, 4).unwrap().to_string(), "s1*s2");
    }

    #[test]
    fn fibonacci_and_basis_sweep() {
        for n in 1..=6 {
            for p in crate::perm::enumerate_312(n) {
                assert!(verify_fibonacci(&p).holds, "fibonacci σ={p}");
                assert!(verify_basis(&p).holds, "basis σ={p}");
            }
        }
    }

    #[test]
    fn basis_n1_vacuous() {
        let check = verify_basis(&perm("1"));
        assert!(check.holds);
        assert_eq!(check.middles, vec![1]);
    }

    #[test]
    fn sample_point_trefoil() {
        let one = BigRational::from_integer(BigInt::from(1));
        let pt = sample_variety_point(&perm("213"), &[one.clone(), one.clone()]).unwrap();
        let expect: Vec<BigRational> = [0, 1, 1]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        assert_eq!(pt, expect);
        assert!(sample_variety_point(&perm("213"), &[one, BigRational::zero()]).is_err());
    }

    #[test]
    fn distinct_sigmas_give_distinct_augmentations() {
        for n in 1..=5 {
            let perms = crate::perm::enumerate_312(n);
            let images: Vec<Vec<String>> = perms
                .iter()
                .map(|p| augmentation(p).images().iter().map(|q| q.to_string()).collect())
                .collect();
            for a in 0..images.len() {
                for b in a + 1..images.len() {
                    assert_ne!(images[a], images[b], "{} vs {}", perms[a], perms[b]);
                }
            }
        }
    }
}
