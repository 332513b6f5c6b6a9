//! Sparse multivariate polynomials over ℤ in z₁…zₙ.
//!
//! Terms are kept in a BTreeMap keyed by exponent vector under graded
//! lexicographic order, with no zero coefficients stored, so equality and the
//! canonical text rendering are structural.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Grlex(pub Vec<u32>);

impl Ord for Grlex {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ascending total degree; within a degree, z1 sorts before z3, which
        // is descending lex on the exponent vectors.
        let da: u64 = self.0.iter().map(|&e| e as u64).sum();
        let db: u64 = other.0.iter().map(|&e| e as u64).sum();
        da.cmp(&db).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Grlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in ℤ[z₁,…,z_vars].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyZ {
    vars: usize,
    terms: BTreeMap<Grlex, BigInt>,
}

impl PolyZ {
    pub fn zero(vars: usize) -> Self {
        PolyZ {
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
            terms.insert(Grlex(vec![0; vars]), c);
        }
        PolyZ { vars, terms }
    }

    /// The variable z_idx (1-based).
    pub fn var(idx: usize, vars: usize) -> Self {
        assert!(idx >= 1 && idx <= vars, "variable z{idx} out of range");
        let mut exps = vec![0; vars];
        exps[idx - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Grlex(exps), BigInt::one());
        PolyZ { vars, terms }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, exps: Grlex, coeff: BigInt) {
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

    pub fn add(&self, other: &PolyZ) -> PolyZ {
        assert_eq!(self.vars, other.vars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyZ {
        PolyZ {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &PolyZ) -> PolyZ {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyZ) -> PolyZ {
        assert_eq!(self.vars, other.vars, "variable counts differ");
        let mut out = PolyZ::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                out.insert_term(Grlex(exps), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> PolyZ {
        let c = c.into();
        if c.is_zero() {
            return PolyZ::zero(self.vars);
        }
        PolyZ {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * &c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> PolyZ {
        let mut base = self.clone();
        let mut out = PolyZ::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Simultaneous substitution: variable z_i is replaced by `images[i-1]`.
    /// All images must share a variable count, which becomes the result's.
    pub fn substitute(&self, images: &[PolyZ]) -> PolyZ {
        assert_eq!(images.len(), self.vars, "need one image per variable");
        let out_vars = images.first().map_or(0, |p| p.vars);
        assert!(images.iter().all(|p| p.vars == out_vars));
        let mut out = PolyZ::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = PolyZ::constant(c.clone(), out_vars);
            for (idx, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&images[idx].pow(exp));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitution of a single variable (1-based), other variables fixed.
    pub fn substitute_var(&self, idx: usize, image: &PolyZ) -> PolyZ {
        let images: Vec<PolyZ> = (1..=self.vars)
            .map(|i| {
                if i == idx {
                    image.clone()
                } else {
                    PolyZ::var(i, self.vars)
                }
            })
            .collect();
        self.substitute(&images)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars, "need one value per variable");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (idx, &exp) in e.0.iter().enumerate() {
                for _ in 0..exp {
                    term *= &point[idx];
                }
            }
            acc += term;
        }
        acc
    }

    /// Terms in graded-lex order as (exponents, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }
}

pub(crate) fn format_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (mono, coeff) in terms {
        any = true;
        let neg = coeff.sign() == num_bigint::Sign::Minus;
        let abs = coeff.magnitude();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for PolyZ {
    /// Canonical text: terms ascending in graded-lex order, e.g.
    /// `-1 + z1 + z3 + z1*z2*z3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            self.terms.iter().map(|(e, c)| {
                let mono = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &exp)| exp > 0)
                    .map(|(i, &exp)| {
                        if exp == 1 {
                            format!("z{}", i + 1)
                        } else {
                            format!("z{}^{}", i + 1, exp)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                (mono, c)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize, vars: usize) -> PolyZ {
        PolyZ::var(i, vars)
    }

    #[test]
    fn add_cancellation() {
        let p = z(1, 2).mul(&z(2, 2)).add(&PolyZ::one(2));
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn mul_identity() {
        let p = PolyZ::one(2).add(&z(1, 2).mul(&z(2, 2)));
        assert_eq!(p.mul(&PolyZ::one(2)), p);
        assert_eq!(p.to_string(), "1 + z1*z2");
    }

    #[test]
    fn substitution_collapses() {
        // z1 + z2 with z1 ↦ z2 gives 2 z2.
        let p = z(1, 2).add(&z(2, 2));
        let q = p.substitute_var(1, &z(2, 2));
        assert_eq!(q.to_string(), "2*z2");
    }

    #[test]
    fn display_ordering_and_signs() {
        let p = PolyZ::constant(-1, 3)
            .add(&z(1, 3))
            .add(&z(3, 3))
            .add(&z(1, 3).mul(&z(2, 3)).mul(&z(3, 3)));
        assert_eq!(p.to_string(), "-1 + z1 + z3 + z1*z2*z3");
        assert_eq!(PolyZ::zero(2).to_string(), "0");
        let q = z(1, 1).pow(3).scale(-2).add(&PolyZ::constant(5, 1));
        assert_eq!(q.to_string(), "5 - 2*z1^3");
    }

    #[test]
    fn eval_rational_matches() {
        use num_bigint::BigInt;
        let p = z(1, 2).mul(&z(2, 2)).add(&PolyZ::constant(-1, 2));
        let point = vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(4), BigInt::from(1)),
        ];
        assert_eq!(p.eval_rational(&point), BigRational::from_integer(BigInt::from(1)));
    }
}
