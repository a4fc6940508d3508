//! Sparse exterior forms with polynomial coefficients: wedge products,
//! exterior derivative, point evaluation, and the Hodge dual of 2-forms.
//!
//! A degree-k form stores a map from strictly increasing k-tuples of
//! coordinate indices (the basis form dx^{i1} ∧ ... ∧ dx^{ik}) to polynomial
//! coefficients. Insertion canonicalizes arbitrary index tuples with the
//! permutation sign, so equality of forms is structural equality of maps.

use crate::chart::{Chart, Metric, Point};
use crate::error::EdsError;
use crate::evaluated::EvaluatedForm;
use crate::poly::Poly;
use crate::scalar::Ring;
use crate::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

/// Sort an index tuple, tracking the permutation parity.
///
/// Returns `None` when an index repeats (the basis form vanishes).
pub(crate) fn sort_with_sign(indices: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    // insertion sort; counts swaps exactly
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, odd))
}

/// Merge two strictly increasing tuples, tracking the shuffle parity.
pub(crate) fn merge_with_sign(a: &[u32], b: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut odd = false;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-entries
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, odd))
}

/// Exterior form of fixed degree with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<T = Rat> {
    chart: Arc<Chart>,
    degree: usize,
    terms: BTreeMap<Vec<u32>, Poly<T>>,
}

impl<T: Ring> Form<T> {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        Form {
            chart: Arc::clone(chart),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form wrapping a polynomial.
    pub fn scalar(chart: &Arc<Chart>, poly: Poly<T>) -> Self {
        let mut f = Form::zero(chart, 0);
        if !poly.is_zero() {
            f.terms.insert(Vec::new(), poly);
        }
        f
    }

    pub fn constant(chart: &Arc<Chart>, c: T) -> Self {
        Form::scalar(chart, Poly::constant(c))
    }

    /// The coordinate x_i as a 0-form.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Self {
        assert!(i < chart.dim(), "coordinate index out of range");
        Form::scalar(chart, Poly::var(i))
    }

    /// The basis 1-form dx^i.
    pub fn basis_one_form(chart: &Arc<Chart>, i: usize) -> Self {
        assert!(i < chart.dim(), "coordinate index out of range");
        let mut f = Form::zero(chart, 1);
        f.terms.insert(vec![i as u32], Poly::constant(T::one()));
        f
    }

    pub fn from_terms(
        chart: &Arc<Chart>,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Poly<T>)>,
    ) -> Self {
        let mut f = Form::zero(chart, degree);
        for (idx, p) in terms {
            f.add_term(&idx, p);
        }
        f
    }

    /// Add `coeff * dx^{indices}` after canonicalization.
    ///
    /// Repeated indices contribute nothing; out-of-range indices panic.
    pub fn add_term(&mut self, indices: &[u32], coeff: Poly<T>) {
        assert_eq!(indices.len(), self.degree, "tuple length must match degree");
        assert!(
            indices.iter().all(|&i| (i as usize) < self.chart.dim()),
            "index out of range"
        );
        if coeff.is_zero() {
            return;
        }
        let Some((key, odd)) = sort_with_sign(indices) else {
            return;
        };
        let signed = if odd { -coeff } else { coeff };
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

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Poly<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, indices: &[u32]) -> Poly<T> {
        match sort_with_sign(indices) {
            None => Poly::zero(),
            Some((key, odd)) => {
                let p = self.terms.get(&key).cloned().unwrap_or_else(Poly::zero);
                if odd {
                    -p
                } else {
                    p
                }
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Form::zero(&self.chart, self.degree);
        for (k, p) in &self.terms {
            let sp = p.scale(c);
            if !sp.is_zero() {
                out.terms.insert(k.clone(), sp);
            }
        }
        out
    }

    fn check_chart(&self, rhs: &Self) -> Result<(), EdsError> {
        if self.chart != rhs.chart {
            return Err(EdsError::ChartMismatch {
                left: self.chart.describe(),
                right: rhs.chart.describe(),
            });
        }
        Ok(())
    }

    /// Exterior product. Degrees add; the result is canonicalized.
    pub fn wedge(&self, rhs: &Self) -> Result<Self, EdsError> {
        self.check_chart(rhs)?;
        let degree = self.degree + rhs.degree;
        let mut out = Form::zero(&self.chart, degree);
        if degree > self.chart.dim() {
            return Ok(out);
        }
        for (ka, pa) in &self.terms {
            for (kb, pb) in &rhs.terms {
                let Some((key, odd)) = merge_with_sign(ka, kb) else {
                    continue;
                };
                let prod = pa.clone() * pb.clone();
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

    /// Exterior derivative. Applies the Leibniz rule through the polynomial
    /// coefficients; d of a degree-N form is the zero (N+1)-form.
    pub fn exterior_derivative(&self) -> Self {
        let mut out = Form::zero(&self.chart, self.degree + 1);
        if self.degree >= self.chart.dim() {
            return out;
        }
        let mut key = Vec::with_capacity(self.degree + 1);
        for (k, p) in &self.terms {
            for v in p.support() {
                let dp = p.partial(v as usize);
                if dp.is_zero() {
                    continue;
                }
                key.clear();
                key.push(v);
                key.extend_from_slice(k);
                out.add_term(&key, dp);
            }
        }
        out
    }

    /// Shorthand for [`Form::exterior_derivative`].
    pub fn d(&self) -> Self {
        self.exterior_derivative()
    }

    /// Evaluate every coefficient at the point, dropping structural zeros.
    pub fn evaluate(&self, p: &Point<T>) -> Result<EvaluatedForm<T>, EdsError> {
        if p.len() != self.chart.dim() {
            return Err(EdsError::ChartMismatch {
                left: self.chart.describe(),
                right: format!("point of length {}", p.len()),
            });
        }
        let mut out = EvaluatedForm::zero(self.chart.dim(), self.degree);
        for (k, poly) in &self.terms {
            out.add_term(k, poly.eval(&p.values));
        }
        Ok(out)
    }
}

impl<T: Ring> Add for Form<T> {
    type Output = Form<T>;
    fn add(mut self, rhs: Form<T>) -> Form<T> {
        assert_eq!(self.chart, rhs.chart, "chart mismatch in +");
        assert_eq!(self.degree, rhs.degree, "degree mismatch in +");
        for (k, p) in rhs.terms {
            match self.terms.remove(&k) {
                None => {
                    self.terms.insert(k, p);
                }
                Some(old) => {
                    let sum = old + p;
                    if !sum.is_zero() {
                        self.terms.insert(k, sum);
                    }
                }
            }
        }
        self
    }
}

impl<T: Ring> Sub for Form<T> {
    type Output = Form<T>;
    fn sub(self, rhs: Form<T>) -> Form<T> {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for Form<T> {
    type Output = Form<T>;
    fn neg(mut self) -> Form<T> {
        for p in self.terms.values_mut() {
            let taken = std::mem::replace(p, Poly::zero());
            *p = -taken;
        }
        self
    }
}

/// Parity of an index sequence as a permutation of 0..len, `None` on repeats.
pub fn permutation_sign(seq: &[usize]) -> Option<i8> {
    let as_u32: Vec<u32> = seq.iter().map(|&i| i as u32).collect();
    sort_with_sign(&as_u32).map(|(_, odd)| if odd { -1 } else { 1 })
}

/// Hodge dual of a 2-form given by its antisymmetric components.
///
/// `components` maps base-coordinate positions (i, j) with i < j to the
/// coefficient F_{ij}; the dual (n-2)-form is
/// sum_{i<j} s_i s_j F_{ij} eps_{ij k1..k_{n-2}} dx^{k1} ∧ ... ∧ dx^{k_{n-2}}
/// with eps_{1..n} = +1, which carries the 1/(2(n-2)!) normalization of the
/// full index sum. For n = 4 this is the familiar
/// *F = 1/4 F_{ij} dx^k ∧ dx^l eps^{ij}_{..kl}.
pub fn hodge_dual_2form<T: Ring>(
    chart: &Arc<Chart>,
    components: &BTreeMap<(usize, usize), Poly<T>>,
    metric: &Metric,
) -> Result<Form<T>, EdsError> {
    let n = chart.n();
    if n < 3 {
        return Err(EdsError::DualDimension(n));
    }
    if metric.n() != n {
        return Err(EdsError::InvalidMetric(format!(
            "metric has {} entries for n = {n}",
            metric.n()
        )));
    }
    let base = chart.base();
    let mut out = Form::zero(chart, n - 2);
    for (&(i, j), coeff) in components {
        if i >= j || j >= n {
            return Err(EdsError::InvalidModel(format!(
                "component index ({i},{j}) is not an increasing base pair"
            )));
        }
        if coeff.is_zero() {
            continue;
        }
        // complement of {i, j} in base positions, increasing
        let complement: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        let mut perm = Vec::with_capacity(n);
        perm.push(i);
        perm.push(j);
        perm.extend_from_slice(&complement);
        let eps = permutation_sign(&perm).expect("distinct positions");
        let raise = metric.sign(i) * metric.sign(j);
        let total = eps * raise;
        let tuple: Vec<u32> = complement.iter().map(|&k| base[k] as u32).collect();
        let signed = if total < 0 {
            -coeff.clone()
        } else {
            coeff.clone()
        };
        out.add_term(&tuple, signed);
    }
    Ok(out)
}
