//! Exterior differential systems: generators plus an independence condition,
//! with pointwise algebraic-ideal construction, closure verification by
//! certificate or at generic points, and Cauchy characteristic dimension.

use crate::chart::{Chart, Point, TangentVector};
use crate::error::EdsError;
use crate::evaluated::EvaluatedForm;
use crate::form::Form;
use crate::linalg::{SparseEchelon, SparseVec};
use crate::Rat;
use itertools::Itertools;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

/// Guard against combinatorial blowup of the exterior-power basis.
///
/// Operations that enumerate a Lambda^k basis refuse to run when C(N, k)
/// exceeds the limit; callers force them by raising the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: 500_000 }
    }
}

impl Budget {
    pub fn new(limit: u128) -> Self {
        Budget { limit }
    }

    pub fn check(&self, n: usize, k: usize) -> Result<(), EdsError> {
        let needed = binomial(n, k);
        if needed > self.limit {
            return Err(EdsError::BudgetExceeded {
                n,
                k,
                needed,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// C(n, k) saturating at u128::MAX.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// A symbolic witness that d(target) lies in the ideal:
/// d(target) = sum of coefficient ∧ generator over the combination.
#[derive(Debug, Clone)]
pub struct ClosureCertificate {
    pub target: String,
    pub combination: Vec<(Form, String)>,
}

/// An exterior differential system over a chart.
///
/// Equality compares chart, named generators and independence condition;
/// certificates are auxiliary witnesses and do not participate.
#[derive(Debug, Clone)]
pub struct EDSystem {
    chart: Arc<Chart>,
    generators: Vec<(String, Form)>,
    independence: Vec<usize>,
    certificates: Vec<ClosureCertificate>,
}

impl PartialEq for EDSystem {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart
            && self.generators == other.generators
            && self.independence == other.independence
    }
}

impl EDSystem {
    pub fn new(
        chart: Arc<Chart>,
        generators: Vec<(String, Form)>,
        independence: Vec<usize>,
    ) -> Result<Self, EdsError> {
        if independence.is_empty() {
            return Err(EdsError::InvalidSystem(
                "independence condition is empty".into(),
            ));
        }
        if independence != chart.base() {
            return Err(EdsError::InvalidSystem(
                "independence list must match the chart's base coordinates".into(),
            ));
        }
        let mut names = HashSet::new();
        for (name, g) in &generators {
            if !names.insert(name.clone()) {
                return Err(EdsError::InvalidSystem(format!(
                    "duplicate generator `{name}`"
                )));
            }
            if g.degree() == 0 {
                return Err(EdsError::InvalidSystem(format!(
                    "generator `{name}` is a 0-form; degree >= 1 required"
                )));
            }
            if g.chart() != &chart {
                return Err(EdsError::ChartMismatch {
                    left: chart.describe(),
                    right: g.chart().describe(),
                });
            }
        }
        Ok(EDSystem {
            chart,
            generators,
            independence,
            certificates: Vec::new(),
        })
    }

    /// Attach closure certificates, validating names and degree bookkeeping.
    pub fn with_certificates(
        mut self,
        certificates: Vec<ClosureCertificate>,
    ) -> Result<Self, EdsError> {
        for cert in &certificates {
            let Some(target) = self.generator(&cert.target) else {
                return Err(EdsError::InvalidSystem(format!(
                    "certificate targets unknown generator `{}`",
                    cert.target
                )));
            };
            let want = target.degree() + 1;
            for (coeff, gen_name) in &cert.combination {
                let Some(g) = self.generator(gen_name) else {
                    return Err(EdsError::InvalidSystem(format!(
                        "certificate for `{}` references unknown generator `{gen_name}`",
                        cert.target
                    )));
                };
                if coeff.chart() != &self.chart {
                    return Err(EdsError::ChartMismatch {
                        left: self.chart.describe(),
                        right: coeff.chart().describe(),
                    });
                }
                if coeff.degree() + g.degree() != want {
                    return Err(EdsError::DegreeMismatch(format!(
                        "certificate for `{}`: coefficient degree {} + generator degree {} != {}",
                        cert.target,
                        coeff.degree(),
                        g.degree(),
                        want
                    )));
                }
            }
        }
        self.certificates = certificates;
        Ok(self)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    /// Manifold dimension N.
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// Independence count n.
    pub fn n(&self) -> usize {
        self.independence.len()
    }

    pub fn generators(&self) -> &[(String, Form)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Form> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    /// Chart indices of the independence coordinates, in order.
    pub fn independence(&self) -> &[usize] {
        &self.independence
    }

    /// The independence coframe dx^1..dx^n as 1-forms.
    pub fn independence_forms(&self) -> Vec<Form> {
        self.independence
            .iter()
            .map(|&i| Form::basis_one_form(&self.chart, i))
            .collect()
    }

    pub fn certificates(&self) -> &[ClosureCertificate] {
        &self.certificates
    }

    pub fn evaluate_generators(&self, p: &Point) -> Result<Vec<EvaluatedForm>, EdsError> {
        self.generators.iter().map(|(_, g)| g.evaluate(p)).collect()
    }

    /// Spanning echelon of the degree-k component of the algebraic ideal at
    /// a point: all evaluate(g, p) ∧ xi over basis (k - deg g)-forms xi.
    pub fn ideal_at_point(
        &self,
        p: &Point,
        k: usize,
        budget: &Budget,
    ) -> Result<IdealBasis, EdsError> {
        let nn = self.dim();
        if k > nn {
            return Err(EdsError::DegreeMismatch(format!(
                "ideal degree {k} exceeds manifold dimension {nn}"
            )));
        }
        budget.check(nn, k)?;
        let mut echelon = SparseEchelon::new();
        for (_, g) in &self.generators {
            let d = g.degree();
            if d > k {
                continue;
            }
            budget.check(nn, k - d)?;
            let eval = g.evaluate(p)?;
            if eval.is_zero() {
                continue;
            }
            if d == k {
                echelon.insert(to_sparse(&eval));
                continue;
            }
            for combo in (0..nn as u32).combinations(k - d) {
                let wedged = eval.wedge_basis(&combo);
                if !wedged.is_zero() {
                    echelon.insert(to_sparse(&wedged));
                }
            }
        }
        Ok(IdealBasis {
            degree: k,
            dim: nn,
            echelon,
        })
    }

    /// Verify closure symbolically, generator by generator.
    ///
    /// An attached certificate is a claim and is always checked by exact
    /// expansion. Without one, a generator is trivially closed when d(g) is
    /// exactly zero or is itself a generator; anything else reports as
    /// unverified rather than failed.
    pub fn closure_check_certificate(&self) -> Vec<CertificateCheck> {
        let mut out = Vec::with_capacity(self.generators.len());
        for (name, g) in &self.generators {
            let dg = g.exterior_derivative();
            let status = match self.certificates.iter().find(|c| &c.target == name) {
                Some(cert) => {
                    let mut residual = dg;
                    for (coeff, gen_name) in &cert.combination {
                        let gen = self.generator(gen_name).expect("validated on attach");
                        let term = coeff.wedge(gen).expect("same chart by construction");
                        residual = residual - term;
                    }
                    if residual.is_zero() {
                        CertificateStatus::Verified
                    } else {
                        CertificateStatus::Failed(residual)
                    }
                }
                None if dg.is_zero() => CertificateStatus::Verified,
                None if self.generators.iter().any(|(_, h)| *h == dg) => {
                    CertificateStatus::Verified
                }
                None => CertificateStatus::Unverified,
            };
            out.push(CertificateCheck {
                generator: name.clone(),
                status,
            });
        }
        out
    }

    /// Probabilistic closure check: membership of each evaluate(dg, p) in the
    /// pointwise ideal at degree deg g + 1.
    pub fn closure_check_pointwise(
        &self,
        p: &Point,
        budget: &Budget,
    ) -> Result<Vec<PointwiseCheck>, EdsError> {
        let mut out = Vec::with_capacity(self.generators.len());
        let mut cache: BTreeMap<usize, IdealBasis> = BTreeMap::new();
        for (name, g) in &self.generators {
            let dg = g.exterior_derivative().evaluate(p)?;
            if dg.is_zero() {
                out.push(PointwiseCheck {
                    generator: name.clone(),
                    verdict: PointwiseVerdict::Member,
                });
                continue;
            }
            let k = g.degree() + 1;
            if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(k) {
                match self.ideal_at_point(p, k, budget) {
                    Ok(basis) => {
                        slot.insert(basis);
                    }
                    Err(EdsError::BudgetExceeded { needed, limit, .. }) => {
                        out.push(PointwiseCheck {
                            generator: name.clone(),
                            verdict: PointwiseVerdict::Skipped { needed, limit },
                        });
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            }
            let member = cache[&k].contains(&dg);
            out.push(PointwiseCheck {
                generator: name.clone(),
                verdict: if member {
                    PointwiseVerdict::Member
                } else {
                    PointwiseVerdict::NotMember
                },
            });
        }
        Ok(out)
    }

    /// Dimension of the Cauchy characteristic space at a point: vectors v
    /// with iota_v evaluate(g, p) inside the pointwise ideal at degree
    /// deg g - 1 for every generator g.
    pub fn cauchy_space_dim(&self, p: &Point, budget: &Budget) -> Result<usize, EdsError> {
        let nn = self.dim();
        let mut cache: BTreeMap<usize, IdealBasis> = BTreeMap::new();
        // condition rows over the v-components, one per (generator, residual tuple)
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (_, g) in &self.generators {
            let d = g.degree();
            if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(d - 1) {
                slot.insert(self.ideal_at_point(p, d - 1, budget)?);
            }
            let ideal = &cache[&(d - 1)];
            let eval = g.evaluate(p)?;
            if eval.is_zero() {
                continue;
            }
            // residual of iota_{e_c} g modulo the ideal, per direction c
            let mut residuals: Vec<SparseVec> = Vec::with_capacity(nn);
            for c in 0..nn {
                let mut unit = vec![Rat::zero(); nn];
                unit[c] = Rat::one();
                let contracted = eval.interior_product(&TangentVector::new(unit))?;
                residuals.push(ideal.reduce_sparse(&to_sparse(&contracted)));
            }
            let mut tuples: std::collections::BTreeSet<Vec<u32>> = Default::default();
            for r in &residuals {
                tuples.extend(r.keys().cloned());
            }
            for t in tuples {
                rows.push(
                    residuals
                        .iter()
                        .map(|r| r.get(&t).cloned().unwrap_or_else(Rat::zero))
                        .collect(),
                );
            }
        }
        // rank with early termination once it saturates
        let mut ech: Vec<Vec<Rat>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut row in rows {
            for (er, &pc) in ech.iter().zip(&pivots) {
                if !row[pc].is_zero() {
                    let f = row[pc].clone();
                    for (a, b) in row.iter_mut().zip(er) {
                        if !b.is_zero() {
                            *a = &*a - &(b * &f);
                        }
                    }
                }
            }
            if let Some(pc) = row.iter().position(|x| !x.is_zero()) {
                let lead = row[pc].clone();
                for x in row.iter_mut() {
                    *x = &*x / &lead;
                }
                ech.push(row);
                pivots.push(pc);
                if ech.len() == nn {
                    return Ok(0);
                }
            }
        }
        Ok(nn - ech.len())
    }
}

/// Result of a symbolic closure check for one generator.
#[derive(Debug, Clone)]
pub struct CertificateCheck {
    pub generator: String,
    pub status: CertificateStatus,
}

#[derive(Debug, Clone)]
pub enum CertificateStatus {
    Verified,
    /// The expansion left a nonzero residual form.
    Failed(Form),
    /// No certificate and d(g) is neither zero nor a generator.
    Unverified,
}

impl CertificateStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, CertificateStatus::Verified)
    }
    pub fn is_failed(&self) -> bool {
        matches!(self, CertificateStatus::Failed(_))
    }
}

/// Result of a pointwise closure check for one generator.
#[derive(Debug, Clone)]
pub struct PointwiseCheck {
    pub generator: String,
    pub verdict: PointwiseVerdict,
}

#[derive(Debug, Clone)]
pub enum PointwiseVerdict {
    Member,
    NotMember,
    /// Basis enumeration would exceed the budget; use certificates instead.
    Skipped {
        needed: u128,
        limit: u128,
    },
}

impl PointwiseVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, PointwiseVerdict::Member)
    }
}

/// The degree-k component of a pointwise ideal, held as a sparse echelon.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    degree: usize,
    dim: usize,
    echelon: SparseEchelon,
}

impl IdealBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the spanned subspace of Lambda^k.
    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, w: &EvaluatedForm) -> bool {
        assert_eq!(w.degree(), self.degree, "degree mismatch");
        assert_eq!(w.dim(), self.dim, "dimension mismatch");
        self.echelon.contains(&to_sparse(w))
    }

    /// Canonical residual of `w` modulo the span.
    pub fn reduce(&self, w: &EvaluatedForm) -> EvaluatedForm {
        let nf = self.echelon.normal_form(&to_sparse(w));
        EvaluatedForm::from_terms(self.dim, w.degree(), nf)
    }

    /// A nonzero multiple of the residual; scale-invariant uses only.
    fn reduce_sparse(&self, v: &SparseVec) -> SparseVec {
        self.echelon.residual_scaled(v)
    }
}

fn to_sparse(w: &EvaluatedForm) -> SparseVec {
    w.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// Deterministic helper used by tests and the CLI: a random integer point
/// with components uniform in [-range, range].
pub fn random_point<R: rand::Rng>(chart: &Chart, rng: &mut R, range: i64) -> Point {
    Point::new(
        (0..chart.dim())
            .map(|_| Rat::from_integer(crate::Int::from(rng.random_range(-range..=range))))
            .collect(),
    )
}
