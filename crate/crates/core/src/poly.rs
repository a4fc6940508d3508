//! Sparse multivariate polynomials over an exact ring.
//!
//! A monomial is a sorted list of coordinate indices with multiplicity, so
//! `[0, 0, 2]` is x_0^2 x_2. Zero coefficients are never stored.

use crate::scalar::Ring;
use crate::Rat;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

/// Monomial key: coordinate indices with multiplicity, kept sorted.
pub type Monomial = Vec<u32>;

/// Sparse polynomial with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<T = Rat> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Ring> Poly<T> {
    pub fn constant(c: T) -> Self {
        let mut p = Poly::zero();
        p.insert(Vec::new(), c);
        p
    }

    /// The coordinate x_i as a polynomial.
    pub fn var(i: usize) -> Self {
        let mut p = Poly::zero();
        p.insert(vec![i as u32], T::one());
        p
    }

    pub fn monomial(mut indices: Monomial, c: T) -> Self {
        indices.sort_unstable();
        let mut p = Poly::zero();
        p.insert(indices, c);
        p
    }

    fn insert(&mut self, key: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// The constant term, if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<T> {
        if self.terms.is_empty() {
            return Some(T::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Vec::new()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Coordinate indices appearing in any monomial.
    pub fn support(&self) -> BTreeSet<u32> {
        self.terms.keys().flatten().copied().collect()
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            out.insert(m.clone(), a.clone() * c.clone());
        }
        out
    }

    /// Partial derivative with respect to coordinate `i`.
    pub fn partial(&self, i: usize) -> Self {
        let i = i as u32;
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            let mult = m.iter().filter(|&&j| j == i).count();
            if mult == 0 {
                continue;
            }
            let mut reduced = m.clone();
            let pos = reduced.iter().position(|&j| j == i).unwrap();
            reduced.remove(pos);
            out.insert(reduced, ring_times(a, mult));
        }
        out
    }

    /// Evaluate at the given coordinate values.
    pub fn eval(&self, values: &[T]) -> T {
        let mut acc = T::zero();
        for (m, a) in &self.terms {
            let mut term = a.clone();
            for &j in m {
                term = term * values[j as usize].clone();
            }
            acc = acc + term;
        }
        acc
    }
}

/// c * k by repeated addition, for rings without integer conversion.
fn ring_times<T: Ring>(c: &T, k: usize) -> T {
    let mut acc = T::zero();
    for _ in 0..k {
        acc = acc + c.clone();
    }
    acc
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(mut self, rhs: Poly<T>) -> Poly<T> {
        for (m, c) in rhs.terms {
            self.insert(m, c);
        }
        self
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                out.insert(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = x(0) * x(1) + Poly::constant(rat(3));
        let q = p.clone() - p;
        assert!(q.is_zero());
    }

    #[test]
    fn product_rule_inputs() {
        // d/dx0 (x0^2 x1) = 2 x0 x1
        let p = x(0) * x(0) * x(1);
        let d = p.partial(0);
        assert_eq!(d, Poly::monomial(vec![0, 1], rat(2)));
        assert!(p.partial(2).is_zero());
    }

    #[test]
    fn eval_substitutes() {
        let p = x(0) * x(0) + x(1).scale(&rat(5));
        let v = p.eval(&[rat(3), rat(-2)]);
        assert_eq!(v, rat(-1));
    }

    #[test]
    fn constant_detection() {
        assert_eq!(Poly::<Rat>::zero().as_constant(), Some(rat(0)));
        assert_eq!(Poly::constant(rat(7)).as_constant(), Some(rat(7)));
        assert_eq!(x(0).as_constant(), None);
    }
}
