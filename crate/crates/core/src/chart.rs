//! Coordinate charts, evaluation points, tangent vectors, and constant
//! diagonal metrics.

use crate::error::EdsError;
use crate::Rat;
use std::collections::HashSet;
use std::sync::Arc;

/// An ordered coordinate chart with a designated spacetime block.
///
/// The ordering of `names` is canonical: it fixes the basis-form ordering of
/// every polynomial, form and matrix built over the chart. `base` lists the
/// indices of the coordinates x^1..x^n that carry the independence condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
    base: Vec<usize>,
}

impl Chart {
    pub fn new(names: Vec<String>, base: Vec<usize>) -> Result<Arc<Self>, EdsError> {
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(EdsError::InvalidChart(format!(
                    "duplicate coordinate `{name}`"
                )));
            }
        }
        let mut base_seen = HashSet::new();
        for &i in &base {
            if i >= names.len() {
                return Err(EdsError::InvalidChart(format!(
                    "base index {i} out of range for {} coordinates",
                    names.len()
                )));
            }
            if !base_seen.insert(i) {
                return Err(EdsError::InvalidChart(format!("duplicate base index {i}")));
            }
        }
        Ok(Arc::new(Chart { names, base }))
    }

    /// Total coordinate count N.
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Number of independence coordinates n.
    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// Chart indices of the spacetime coordinates, in independence order.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// One-line rendering used in error messages.
    pub fn describe(&self) -> String {
        format!("chart({} coords, n={})", self.dim(), self.n())
    }
}

/// A rational evaluation point, one value per chart coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T = Rat> {
    pub values: Vec<T>,
}

impl<T> Point<T> {
    pub fn new(values: Vec<T>) -> Self {
        Point { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A tangent vector in chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector<T = Rat> {
    pub components: Vec<T>,
}

impl<T> TangentVector<T> {
    pub fn new(components: Vec<T>) -> Self {
        TangentVector { components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl<T: num_traits::Zero> TangentVector<T> {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// Constant diagonal metric with entries ±1 on the spacetime block.
///
/// The Levi-Civita symbol is taken with all indices down and
/// epsilon_{1..n} = +1; indices are raised with the diagonal signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    signs: Vec<i8>,
}

impl Metric {
    pub fn new(signs: Vec<i8>) -> Result<Self, EdsError> {
        if signs.is_empty() {
            return Err(EdsError::InvalidMetric("empty signature".into()));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(EdsError::InvalidMetric(
                "diagonal entries must be +1 or -1".into(),
            ));
        }
        Ok(Metric { signs })
    }

    /// All plus signs.
    pub fn euclidean(n: usize) -> Self {
        Metric { signs: vec![1; n] }
    }

    /// diag(+1, ..., +1, -1): the last base coordinate is timelike.
    pub fn lorentz_time_last(n: usize) -> Self {
        let mut signs = vec![1; n];
        signs[n - 1] = -1;
        Metric { signs }
    }

    /// diag(-1, +1, ..., +1): the first base coordinate is timelike.
    pub fn lorentz_time_first(n: usize) -> Self {
        let mut signs = vec![1; n];
        signs[0] = -1;
        Metric { signs }
    }

    /// The metric with every sign flipped.
    pub fn negated(&self) -> Self {
        Metric {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn det(&self) -> i8 {
        self.signs.iter().product()
    }
}
