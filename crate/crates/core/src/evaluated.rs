//! Forms evaluated at a point: sparse antisymmetric tensors on the tangent
//! space, with the interior product used to build polar systems.

use crate::chart::TangentVector;
use crate::error::EdsError;
use crate::form::{merge_with_sign, sort_with_sign};
use crate::scalar::Ring;
use crate::Rat;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

/// A degree-k form with constant coefficients, keyed like [`crate::Form`].
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedForm<T = Rat> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Ring> EvaluatedForm<T> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        EvaluatedForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, T)>,
    ) -> Self {
        let mut f = EvaluatedForm::zero(dim, degree);
        for (idx, c) in terms {
            f.add_term(&idx, c);
        }
        f
    }

    /// The basis k-form dx^{indices} (indices must be strictly increasing).
    pub fn basis(dim: usize, indices: &[u32]) -> Self {
        let mut f = EvaluatedForm::zero(dim, indices.len());
        f.add_term(indices, T::one());
        f
    }

    pub fn add_term(&mut self, indices: &[u32], c: T) {
        assert_eq!(indices.len(), self.degree, "tuple length must match degree");
        assert!(
            indices.iter().all(|&i| (i as usize) < self.dim),
            "index out of range"
        );
        if c.is_zero() {
            return;
        }
        let Some((key, odd)) = sort_with_sign(indices) else {
            return;
        };
        let signed = if odd { -c } else { c };
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, signed);
            }
            Some(old) => {
                let sum = old + signed;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, indices: &[u32]) -> T {
        match sort_with_sign(indices) {
            None => T::zero(),
            Some((key, odd)) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(T::zero);
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = EvaluatedForm::zero(self.dim, self.degree);
        for (k, a) in &self.terms {
            let prod = a.clone() * c.clone();
            if !prod.is_zero() {
                out.terms.insert(k.clone(), prod);
            }
        }
        out
    }

    /// Contraction with a tangent vector in the first slot.
    ///
    /// (iota_v a)(w_2, ..., w_k) = a(v, w_2, ..., w_k).
    pub fn interior_product(&self, v: &TangentVector<T>) -> Result<Self, EdsError> {
        if self.degree == 0 {
            return Err(EdsError::InteriorOfScalar);
        }
        assert_eq!(v.len(), self.dim, "vector length must match dimension");
        let mut out = EvaluatedForm::zero(self.dim, self.degree - 1);
        for (k, c) in &self.terms {
            for (pos, &idx) in k.iter().enumerate() {
                let comp = &v.components[idx as usize];
                if comp.is_zero() {
                    continue;
                }
                let mut reduced = k.clone();
                reduced.remove(pos);
                let mut contrib = comp.clone() * c.clone();
                if pos % 2 == 1 {
                    contrib = -contrib;
                }
                match out.terms.remove(&reduced) {
                    None => {
                        if !contrib.is_zero() {
                            out.terms.insert(reduced, contrib);
                        }
                    }
                    Some(old) => {
                        let sum = old + contrib;
                        if !sum.is_zero() {
                            out.terms.insert(reduced, sum);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Full contraction with an ordered list of vectors, innermost first.
    pub fn contract_all(&self, vectors: &[&TangentVector<T>]) -> Result<Self, EdsError> {
        let mut acc = self.clone();
        for v in vectors {
            acc = acc.interior_product(v)?;
        }
        Ok(acc)
    }

    /// Exterior product of evaluated forms on the same space.
    pub fn wedge(&self, rhs: &Self) -> Result<Self, EdsError> {
        if self.dim != rhs.dim {
            return Err(EdsError::ChartMismatch {
                left: format!("{} coordinates", self.dim),
                right: format!("{} coordinates", rhs.dim),
            });
        }
        let degree = self.degree + rhs.degree;
        let mut out = EvaluatedForm::zero(self.dim, degree);
        if degree > self.dim {
            return Ok(out);
        }
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let Some((key, odd)) = merge_with_sign(ka, kb) else {
                    continue;
                };
                let prod = ca.clone() * cb.clone();
                if prod.is_zero() {
                    continue;
                }
                let signed = if odd { -prod } else { prod };
                match out.terms.remove(&key) {
                    None => {
                        out.terms.insert(key, signed);
                    }
                    Some(old) => {
                        let sum = old + signed;
                        if !sum.is_zero() {
                            out.terms.insert(key, sum);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Wedge with a single basis form given by its strictly increasing tuple.
    pub fn wedge_basis(&self, indices: &[u32]) -> Self {
        let mut out = EvaluatedForm::zero(self.dim, self.degree + indices.len());
        for (k, c) in &self.terms {
            if let Some((key, odd)) = merge_with_sign(k, indices) {
                let signed = if odd { -c.clone() } else { c.clone() };
                out.terms.insert(key, signed);
            }
        }
        out
    }
}

impl<T: Ring> Add for EvaluatedForm<T> {
    type Output = EvaluatedForm<T>;
    fn add(mut self, rhs: EvaluatedForm<T>) -> EvaluatedForm<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in +");
        assert_eq!(self.degree, rhs.degree, "degree mismatch in +");
        for (k, c) in rhs.terms {
            match self.terms.remove(&k) {
                None => {
                    self.terms.insert(k, c);
                }
                Some(old) => {
                    let sum = old + c;
                    if !sum.is_zero() {
                        self.terms.insert(k, sum);
                    }
                }
            }
        }
        self
    }
}

impl<T: Ring> Sub for EvaluatedForm<T> {
    type Output = EvaluatedForm<T>;
    fn sub(self, rhs: EvaluatedForm<T>) -> EvaluatedForm<T> {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for EvaluatedForm<T> {
    type Output = EvaluatedForm<T>;
    fn neg(mut self) -> EvaluatedForm<T> {
        for c in self.terms.values_mut() {
            let taken = std::mem::replace(c, T::zero());
            *c = -taken;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use num_traits::Zero;

    fn vec_of(vals: &[i64]) -> TangentVector {
        TangentVector::new(vals.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn contraction_in_first_slot() {
        // iota_{e1}(dx1 ∧ dx2) = dx2
        let f = EvaluatedForm::basis(3, &[0, 1]);
        let v = vec_of(&[1, 0, 0]);
        let g = f.interior_product(&v).unwrap();
        assert_eq!(g, EvaluatedForm::basis(3, &[1]));
    }

    #[test]
    fn contraction_sign_from_slot_position() {
        // iota_{e2}(5 dx1 ∧ dx2) = -5 dx1
        let f = EvaluatedForm::basis(3, &[0, 1]).scale(&rat(5));
        let v = vec_of(&[0, 1, 0]);
        let g = f.interior_product(&v).unwrap();
        assert_eq!(g.coefficient(&[0]), rat(-5));
        assert!(g.coefficient(&[1]).is_zero());
    }

    #[test]
    fn double_contraction_vanishes() {
        let mut f = EvaluatedForm::zero(4, 3);
        f.add_term(&[0, 1, 2], rat(2));
        f.add_term(&[0, 1, 3], rat(-7));
        f.add_term(&[1, 2, 3], rat(3));
        let v = vec_of(&[3, -1, 4, 9]);
        let once = f.interior_product(&v).unwrap();
        let twice = once.interior_product(&v).unwrap();
        assert!(twice.is_zero());
    }

    #[test]
    fn degree_zero_contraction_is_an_error() {
        let f = EvaluatedForm::from_terms(2, 0, [(vec![], rat(1))]);
        assert!(f.interior_product(&vec_of(&[1, 1])).is_err());
    }

    #[test]
    fn wedge_basis_matches_wedge() {
        let mut f = EvaluatedForm::zero(4, 2);
        f.add_term(&[0, 2], rat(3));
        f.add_term(&[1, 2], rat(-1));
        let b = EvaluatedForm::basis(4, &[3]);
        assert_eq!(f.wedge(&b).unwrap(), f.wedge_basis(&[3]));
    }
}
