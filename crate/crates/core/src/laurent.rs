//! Sparse Laurent polynomials over ℤ in s₁…s_m, with integer (possibly
//! negative) exponents. These realize the coefficient ring ℤ[H₁(L)] of a
//! filling; the t-variables are fixed to −1 throughout and never appear.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::format_terms;

/// Integer exponent vector under graded-lex order (grading by exponent sum).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct GrlexI(Vec<i64>);

impl Ord for GrlexI {
    fn cmp(&self, other: &Self) -> Ordering {
        // Same convention as PolyZ: exponent sum ascending, then descending
        // lex so that s1 sorts before s3 within a degree.
        let da: i64 = self.0.iter().sum();
        let db: i64 = other.0.iter().sum();
        da.cmp(&db).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for GrlexI {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Laurent polynomial in ℤ[s₁^{±1},…,s_m^{±1}].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<GrlexI, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: usize) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(BigInt::one(), vars)
    }

    pub fn constant(c: impl Into<BigInt>, vars: usize) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(GrlexI(vec![0; vars]), c);
        }
        LaurentPoly { vars, terms }
    }

    /// The variable s_idx (1-based).
    pub fn var(idx: usize, vars: usize) -> Self {
        Self::monomial_in(idx, 1, vars)
    }

    /// s_idx^e for a single variable.
    pub fn monomial_in(idx: usize, e: i64, vars: usize) -> Self {
        assert!(idx >= 1 && idx <= vars, "variable s{idx} out of range");
        let mut exps = vec![0; vars];
        exps[idx - 1] = e;
        Self::monomial(exps, BigInt::one())
    }

    /// coeff · s₁^{e₁}…s_m^{e_m}.
    pub fn monomial(exps: Vec<i64>, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let vars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(GrlexI(exps), coeff);
        }
        LaurentPoly { vars, terms }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.0.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// When the value is a single term, its (exponents, coefficient).
    pub fn as_monomial(&self) -> Option<(Vec<i64>, BigInt)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.0.clone(), c.clone()))
        } else {
            None
        }
    }

    /// Multiplicative inverse, defined for ±monomials only.
    pub fn invert(&self) -> Result<LaurentPoly> {
        let (exps, coeff) = self.as_monomial().ok_or_else(|| {
            Error::IndexOutOfRange(format!("cannot invert non-monomial {self}"))
        })?;
        if !(coeff.clone().magnitude()).is_one() {
            return Err(Error::IndexOutOfRange(format!(
                "cannot invert monomial with coefficient {coeff}"
            )));
        }
        Ok(LaurentPoly::monomial(
            exps.iter().map(|&e| -e).collect(),
            coeff,
        ))
    }

    fn insert_term(&mut self, exps: GrlexI, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, other.vars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, other.vars, "variable counts differ");
        let mut out = LaurentPoly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> = ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                out.insert_term(GrlexI(exps), ca * cb);
            }
        }
        out
    }

    /// Substitutes s_idx ↦ coeff-1 monomial with exponent vector `image_exps`
    /// (over the same variables, entry idx−1 ignored), then drops variable
    /// idx by re-indexing the remaining variables. Used by the minimum
    /// cobordism map sₙ ↦ s₁⁻¹…s_{n−1}⁻¹.
    pub fn eliminate_var(&self, idx: usize, image_exps: &[i64]) -> LaurentPoly {
        assert!(idx >= 1 && idx <= self.vars);
        assert_eq!(image_exps.len(), self.vars);
        assert_eq!(image_exps[idx - 1], 0, "image may not involve s{idx}");
        let mut out = LaurentPoly::zero(self.vars - 1);
        for (e, c) in &self.terms {
            let k = e.0[idx - 1];
            let mut exps: Vec<i64> = Vec::with_capacity(self.vars - 1);
            for (i, &x) in e.0.iter().enumerate() {
                if i == idx - 1 {
                    continue;
                }
                exps.push(x + k * image_exps[i]);
            }
            out.insert_term(GrlexI(exps), c.clone());
        }
        out
    }

    /// Exact evaluation; every point coordinate must be nonzero because
    /// exponents may be negative.
    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational> {
        assert_eq!(point.len(), self.vars, "need one value per variable");
        for (i, v) in point.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::ZeroSample(format!("s{} = 0", i + 1)));
            }
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (idx, &exp) in e.0.iter().enumerate() {
                if exp >= 0 {
                    for _ in 0..exp {
                        term *= &point[idx];
                    }
                } else {
                    let inv = point[idx].recip();
                    for _ in 0..(-exp) {
                        term *= &inv;
                    }
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text: terms ascending by (exponent sum, lex), e.g.
    /// `s1^-1*s2^-2 + s1^-1*s2^-1 - s2^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            self.terms.iter().map(|(e, c)| {
                let mono = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &exp)| exp != 0)
                    .map(|(i, &exp)| {
                        if exp == 1 {
                            format!("s{}", i + 1)
                        } else {
                            format!("s{}^{}", i + 1, exp)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                (mono, c)
            }),
        )
    }
}
