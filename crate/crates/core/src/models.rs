//! Built-in model families: Maxwell and SU(2)-Yang-Mills gauge systems in
//! n >= 3 spacetime dimensions, and a contact system used as an independent
//! oracle for the character algorithm.
//!
//! Charts order coordinates as the x-block, then the potential block, then
//! the field block (lexicographic in indices). The coupling coefficients
//! (1/8 on the gamma A ∧ A term, 1/4 on the gamma A ∧ *F terms) are pinned
//! by the closure certificates and the Cartan-Poincare identity, which hold
//! with exactly these factors and no others.

#![allow(clippy::needless_range_loop)] // a, b, c are group indices

use crate::chart::{Chart, Metric};
use crate::eds::{ClosureCertificate, EDSystem};
use crate::error::EdsError;
use crate::form::{hodge_dual_2form, Form};
use crate::poly::Poly;
use crate::{ratio, Rat};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Totally antisymmetric structure constants gamma^a_{bc} for a
/// 3-dimensional group, normalized by gamma^1_{23} = 1 for SU(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    gamma: [[[i8; 3]; 3]; 3],
}

impl StructureConstants {
    /// SU(2): gamma^a_{bc} is the Levi-Civita symbol.
    pub fn su2() -> Self {
        let mut gamma = [[[0i8; 3]; 3]; 3];
        for (a, b, c, v) in [
            (0, 1, 2, 1),
            (1, 2, 0, 1),
            (2, 0, 1, 1),
            (0, 2, 1, -1),
            (2, 1, 0, -1),
            (1, 0, 2, -1),
        ] {
            gamma[a][b][c] = v;
        }
        StructureConstants { gamma }
    }

    /// Arbitrary raw constants; used by mutation tests.
    pub fn raw(gamma: [[[i8; 3]; 3]; 3]) -> Self {
        StructureConstants { gamma }
    }

    /// gamma^a_{bc} with 0-based indices.
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> i8 {
        self.gamma[a][b][c]
    }

    pub fn is_totally_antisymmetric(&self) -> bool {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let g = self.gamma[a][b][c];
                    if self.gamma[a][c][b] != -g
                        || self.gamma[b][c][a] != g
                        || self.gamma[c][a][b] != g
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Model families available to the CLI and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Maxwell,
    Su2YangMills,
    Contact,
}

impl Family {
    pub fn key(&self) -> &'static str {
        match self {
            Family::Maxwell => "maxwell",
            Family::Su2YangMills => "su2ym",
            Family::Contact => "contact",
        }
    }

    pub fn from_key(key: &str) -> Option<Family> {
        match key {
            "maxwell" => Some(Family::Maxwell),
            "su2ym" => Some(Family::Su2YangMills),
            "contact" => Some(Family::Contact),
            _ => None,
        }
    }
}

/// A concrete model selection.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub family: Family,
    pub n: usize,
    pub metric: Metric,
}

impl ModelSpec {
    pub fn new(family: Family, n: usize, metric: Metric) -> Self {
        ModelSpec { family, n, metric }
    }
}

/// Registry entry describing a family for front ends.
#[derive(Debug, Clone)]
pub struct ModelInfo {
    pub key: &'static str,
    pub description: &'static str,
    pub min_n: usize,
    /// Largest n with a recorded reference table.
    pub reference_max_n: Option<usize>,
}

pub fn registry() -> Vec<ModelInfo> {
    vec![
        ModelInfo {
            key: "maxwell",
            description: "vacuum Maxwell electrodynamics on x, A_i, F_ij",
            min_n: 3,
            reference_max_n: Some(6),
        },
        ModelInfo {
            key: "su2ym",
            description: "SU(2)-Yang-Mills on x, A^a_i, F^a_ij",
            min_n: 3,
            reference_max_n: Some(6),
        },
        ModelInfo {
            key: "contact",
            description: "contact system dz - p dx - q dy on 5 coordinates",
            min_n: 2,
            reference_max_n: Some(2),
        },
    ]
}

/// The symbolic building blocks of a gauge family: potentials A^a, field
/// 2-forms F^a, duals *F_a, and the generators they assemble into.
#[derive(Debug, Clone)]
pub struct GaugeForms {
    pub chart: Arc<Chart>,
    /// Group dimension m (1 for Maxwell, 3 for SU(2)).
    pub m: usize,
    pub potentials: Vec<Form>,
    pub fields: Vec<Form>,
    pub duals: Vec<Form>,
    pub theta: Vec<Form>,
    pub dtheta: Vec<Form>,
    pub psi: Vec<Form>,
}

fn base_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

fn check_n(n: usize) -> Result<(), EdsError> {
    if n < 3 {
        return Err(EdsError::InvalidModel(format!(
            "gauge families need n >= 3, got {n}"
        )));
    }
    Ok(())
}

fn check_metric(n: usize, metric: &Metric) -> Result<(), EdsError> {
    if metric.n() != n {
        return Err(EdsError::InvalidMetric(format!(
            "metric has {} entries for n = {n}",
            metric.n()
        )));
    }
    Ok(())
}

/// Maxwell building blocks on the chart (x^i, A_i, F_ij), N = 2n + n(n-1)/2.
pub fn maxwell_forms(n: usize, metric: &Metric) -> Result<GaugeForms, EdsError> {
    check_n(n)?;
    check_metric(n, metric)?;
    let pairs = base_pairs(n);
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("A{i}")));
    names.extend(pairs.iter().map(|&(i, j)| format!("F{}_{}", i + 1, j + 1)));
    let chart = Chart::new(names, (0..n).collect())?;

    let a_idx = |i: usize| n + i; // 0-based base position i
    let f_idx = |pair_pos: usize| 2 * n + pair_pos;

    // A = sum_i A_i dx^i
    let mut potential = Form::zero(&chart, 1);
    for i in 0..n {
        potential.add_term(&[i as u32], Poly::var(a_idx(i)));
    }
    // F = sum_{i<j} F_ij dx^i ∧ dx^j
    let mut field = Form::zero(&chart, 2);
    let mut components = BTreeMap::new();
    for (pos, &(i, j)) in pairs.iter().enumerate() {
        field.add_term(&[i as u32, j as u32], Poly::var(f_idx(pos)));
        components.insert((i, j), Poly::var(f_idx(pos)));
    }
    let dual = hodge_dual_2form(&chart, &components, metric)?;

    let theta = potential.d() - field.clone();
    let dtheta = theta.d();
    let psi = -dual.d();

    Ok(GaugeForms {
        chart,
        m: 1,
        potentials: vec![potential],
        fields: vec![field],
        duals: vec![dual],
        theta: vec![theta],
        dtheta: vec![dtheta],
        psi: vec![psi],
    })
}

/// SU(2) building blocks on the chart (x^i, A^a_i, F^a_ij),
/// N = 4n + 3n(n-1)/2.
pub fn su2_forms(n: usize, metric: &Metric) -> Result<GaugeForms, EdsError> {
    check_n(n)?;
    check_metric(n, metric)?;
    let gamma = StructureConstants::su2();
    let pairs = base_pairs(n);
    let np = pairs.len();
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    for a in 1..=3 {
        names.extend((1..=n).map(|i| format!("A{a}_{i}")));
    }
    for a in 1..=3 {
        names.extend(
            pairs
                .iter()
                .map(|&(i, j)| format!("F{a}_{}_{}", i + 1, j + 1)),
        );
    }
    let chart = Chart::new(names, (0..n).collect())?;

    let a_idx = |a: usize, i: usize| n + a * n + i;
    let f_idx = |a: usize, pair_pos: usize| 4 * n + a * np + pair_pos;

    let mut potentials = Vec::with_capacity(3);
    let mut fields = Vec::with_capacity(3);
    let mut duals = Vec::with_capacity(3);
    for a in 0..3 {
        let mut pot = Form::zero(&chart, 1);
        for i in 0..n {
            pot.add_term(&[i as u32], Poly::var(a_idx(a, i)));
        }
        potentials.push(pot);
        let mut field = Form::zero(&chart, 2);
        let mut components = BTreeMap::new();
        for (pos, &(i, j)) in pairs.iter().enumerate() {
            field.add_term(&[i as u32, j as u32], Poly::var(f_idx(a, pos)));
            components.insert((i, j), Poly::var(f_idx(a, pos)));
        }
        fields.push(field);
        duals.push(hodge_dual_2form(&chart, &components, metric)?);
    }

    // theta^a = dA^a - F^a + 1/8 gamma^a_{bc} A^b ∧ A^c
    let eighth = ratio(1, 8);
    let quarter = ratio(1, 4);
    let mut theta = Vec::with_capacity(3);
    for a in 0..3 {
        let mut t = potentials[a].d() - fields[a].clone();
        for b in 0..3 {
            for c in 0..3 {
                let g = gamma.gamma(a, b, c);
                if g == 0 {
                    continue;
                }
                let term = potentials[b].wedge(&potentials[c])?;
                t = t + term.scale(&(&eighth * Rat::from_integer(g.into())));
            }
        }
        theta.push(t);
    }
    let dtheta: Vec<Form> = theta.iter().map(Form::d).collect();

    // psi_a = -d*F_a - 1/4 gamma^c_{ab} A^b ∧ *F_c
    let mut psi = Vec::with_capacity(3);
    for a in 0..3 {
        let mut p = -duals[a].d();
        for b in 0..3 {
            for c in 0..3 {
                let g = gamma.gamma(c, a, b);
                if g == 0 {
                    continue;
                }
                let term = potentials[b].wedge(&duals[c])?;
                p = p - term.scale(&(&quarter * Rat::from_integer(g.into())));
            }
        }
        psi.push(p);
    }

    Ok(GaugeForms {
        chart,
        m: 3,
        potentials,
        fields,
        duals,
        theta,
        dtheta,
        psi,
    })
}

/// Generator lists and closure certificates for a gauge family.
fn assemble(forms: &GaugeForms, gamma: Option<&StructureConstants>) -> Result<EDSystem, EdsError> {
    let m = forms.m;
    let single = m == 1;
    let name = |stem: &str, a: usize| {
        if single {
            stem.to_string()
        } else {
            format!("{stem}{}", a + 1)
        }
    };
    let mut generators = Vec::with_capacity(3 * m);
    for a in 0..m {
        generators.push((name("theta", a), forms.theta[a].clone()));
    }
    for a in 0..m {
        generators.push((name("dtheta", a), forms.dtheta[a].clone()));
    }
    for a in 0..m {
        generators.push((name("psi", a), forms.psi[a].clone()));
    }
    let independence: Vec<usize> = forms.chart.base().to_vec();
    let eds = EDSystem::new(Arc::clone(&forms.chart), generators, independence)?;

    let mut certificates = Vec::new();
    for a in 0..m {
        // d(theta) = dtheta, and d(dtheta) = 0, both held as explicit
        // certificates so parsed copies of the system verify the same way
        certificates.push(ClosureCertificate {
            target: name("theta", a),
            combination: vec![(
                Form::constant(&forms.chart, Rat::from_integer(1.into())),
                name("dtheta", a),
            )],
        });
        certificates.push(ClosureCertificate {
            target: name("dtheta", a),
            combination: Vec::new(),
        });
    }
    match gamma {
        None => {
            // Maxwell: psi = -d*F is exact, so d(psi) = 0 identically
            certificates.push(ClosureCertificate {
                target: "psi".into(),
                combination: Vec::new(),
            });
        }
        Some(gamma) => {
            // d(psi_a) = -1/4 gamma^c_{ab} A^b ∧ psi_c
            //            -1/4 gamma^c_{ab} *F_c ∧ theta^b
            let quarter = ratio(1, 4);
            for a in 0..m {
                let mut combination = Vec::new();
                for c in 0..m {
                    let mut coeff = Form::zero(&forms.chart, 1);
                    for b in 0..m {
                        let g = gamma.gamma(c, a, b);
                        if g != 0 {
                            coeff = coeff
                                + forms.potentials[b]
                                    .scale(&(-&quarter * Rat::from_integer(g.into())));
                        }
                    }
                    if !coeff.is_zero() {
                        combination.push((coeff, name("psi", c)));
                    }
                }
                for b in 0..m {
                    let mut coeff = Form::zero(&forms.chart, forms.duals[0].degree());
                    for c in 0..m {
                        let g = gamma.gamma(c, a, b);
                        if g != 0 {
                            coeff = coeff
                                + forms.duals[c].scale(&(-&quarter * Rat::from_integer(g.into())));
                        }
                    }
                    if !coeff.is_zero() {
                        combination.push((coeff, name("theta", b)));
                    }
                }
                certificates.push(ClosureCertificate {
                    target: name("psi", a),
                    combination,
                });
            }
        }
    }
    eds.with_certificates(certificates)
}

/// The Maxwell system: generators theta = dA - F, dtheta, psi = -d*F.
pub fn build_maxwell(n: usize, metric: &Metric) -> Result<EDSystem, EdsError> {
    let forms = maxwell_forms(n, metric)?;
    assemble(&forms, None)
}

/// The SU(2)-Yang-Mills system: three each of theta^a, dtheta^a, psi_a.
pub fn build_su2_yang_mills(n: usize, metric: &Metric) -> Result<EDSystem, EdsError> {
    let forms = su2_forms(n, metric)?;
    assemble(&forms, Some(&StructureConstants::su2()))
}

/// The contact system dz - p dx - q dy on (x, y, z, p, q) with n = 2,
/// an independent hand-checkable oracle for the character algorithm.
pub fn build_contact_example() -> EDSystem {
    let chart = Chart::new(
        ["x", "y", "z", "p", "q"].map(String::from).to_vec(),
        vec![0, 1],
    )
    .expect("static chart");
    let mut omega = Form::basis_one_form(&chart, 2);
    omega.add_term(&[0], -Poly::var(3));
    omega.add_term(&[1], -Poly::var(4));
    let domega = omega.d();
    let eds = EDSystem::new(
        Arc::clone(&chart),
        vec![("omega".into(), omega), ("domega".into(), domega)],
        vec![0, 1],
    )
    .expect("static system");
    eds.with_certificates(vec![
        ClosureCertificate {
            target: "omega".into(),
            combination: vec![(
                Form::constant(&chart, Rat::from_integer(1.into())),
                "domega".into(),
            )],
        },
        ClosureCertificate {
            target: "domega".into(),
            combination: Vec::new(),
        },
    ])
    .expect("static certificates")
}

/// Build any registered model.
pub fn build(spec: &ModelSpec) -> Result<EDSystem, EdsError> {
    match spec.family {
        Family::Maxwell => build_maxwell(spec.n, &spec.metric),
        Family::Su2YangMills => build_su2_yang_mills(spec.n, &spec.metric),
        Family::Contact => Ok(build_contact_example()),
    }
}

/// The Cartan form Lambda and the residual of d(Lambda) = theta^a ∧ psi_a.
#[derive(Debug, Clone)]
pub struct CartanPoincare {
    pub lambda: Form,
    pub residual: Form,
}

impl CartanPoincare {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// d(Lambda) - sum_a theta^a ∧ psi_a for explicit forms, used directly by
/// mutation tests.
pub fn cartan_poincare_residual(
    theta: &[Form],
    psi: &[Form],
    lambda: &Form,
) -> Result<Form, EdsError> {
    assert_eq!(theta.len(), psi.len());
    let mut residual = lambda.d();
    for (t, p) in theta.iter().zip(psi) {
        residual = residual - t.wedge(p)?;
    }
    Ok(residual)
}

/// The gauge-family Cartan form:
/// Lambda = -*F_a ∧ dA^a + 1/2 F^a ∧ *F_a - 1/8 gamma^c_{ab} A^a ∧ A^b ∧ *F_c
/// (the gamma term only for SU(2)), verified against theta^a ∧ psi_a.
pub fn cartan_poincare(spec: &ModelSpec) -> Result<CartanPoincare, EdsError> {
    let forms = gauge_forms(spec)?;
    let lambda = cartan_form(&forms)?;
    let residual = cartan_poincare_residual(&forms.theta, &forms.psi, &lambda)?;
    Ok(CartanPoincare { lambda, residual })
}

/// The integrated Cartan form for a gauge family's building blocks.
pub fn cartan_form(forms: &GaugeForms) -> Result<Form, EdsError> {
    let half = ratio(1, 2);
    let eighth = ratio(1, 8);
    let mut lambda = Form::zero(&forms.chart, forms.duals[0].degree() + 2);
    for a in 0..forms.m {
        lambda = lambda - forms.duals[a].wedge(&forms.potentials[a].d())?;
        lambda = lambda + forms.fields[a].wedge(&forms.duals[a])?.scale(&half);
    }
    if forms.m == 3 {
        let gamma = StructureConstants::su2();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let g = gamma.gamma(c, a, b);
                    if g == 0 {
                        continue;
                    }
                    let term = forms.potentials[a]
                        .wedge(&forms.potentials[b])?
                        .wedge(&forms.duals[c])?;
                    lambda = lambda - term.scale(&(&eighth * Rat::from_integer(g.into())));
                }
            }
        }
    }
    Ok(lambda)
}

fn gauge_forms(spec: &ModelSpec) -> Result<GaugeForms, EdsError> {
    match spec.family {
        Family::Maxwell => maxwell_forms(spec.n, &spec.metric),
        Family::Su2YangMills => su2_forms(spec.n, &spec.metric),
        Family::Contact => Err(EdsError::InvalidModel(
            "the contact example has no gauge structure".into(),
        )),
    }
}

/// One named symbolic identity check.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub ok: bool,
}

/// The residuals sum_{b,c} gamma^c_{ab} *F_c ∧ F^b, one per group index a.
/// All three vanish for totally antisymmetric constants.
pub fn gamma_dual_field_identity(
    gamma: &StructureConstants,
    fields: &[Form],
    duals: &[Form],
) -> Result<Vec<Form>, EdsError> {
    let mut out = Vec::with_capacity(3);
    for a in 0..3 {
        let mut acc = Form::zero(fields[0].chart(), duals[0].degree() + 2);
        for b in 0..3 {
            for c in 0..3 {
                let g = gamma.gamma(c, a, b);
                if g == 0 {
                    continue;
                }
                acc = acc
                    + duals[c]
                        .wedge(&fields[b])?
                        .scale(&Rat::from_integer(g.into()));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// The model's defining symbolic identities, each expanded exactly:
/// dF ∧ d*F = 0 for Maxwell, gamma^c_{ab} *F_c ∧ F^b = 0 for SU(2), and
/// d(theta^a ∧ psi_a) = 0 for both.
pub fn essential_identities(spec: &ModelSpec) -> Result<Vec<IdentityCheck>, EdsError> {
    let forms = gauge_forms(spec)?;
    let mut checks = Vec::new();
    match spec.family {
        Family::Maxwell => {
            let df = forms.fields[0].d();
            let ddual = forms.duals[0].d();
            checks.push(IdentityCheck {
                name: "dF ∧ d*F = 0".into(),
                ok: df.wedge(&ddual)?.is_zero(),
            });
        }
        Family::Su2YangMills => {
            let residuals =
                gamma_dual_field_identity(&StructureConstants::su2(), &forms.fields, &forms.duals)?;
            checks.push(IdentityCheck {
                name: "gamma^c_ab *F_c ∧ F^b = 0".into(),
                ok: residuals.iter().all(Form::is_zero),
            });
        }
        Family::Contact => unreachable!("gauge_forms rejected contact"),
    }
    let mut product = Form::zero(&forms.chart, forms.duals[0].degree() + 3);
    for a in 0..forms.m {
        product = product + forms.theta[a].wedge(&forms.psi[a])?;
    }
    checks.push(IdentityCheck {
        name: "d(theta^a ∧ psi_a) = 0".into(),
        ok: product.d().is_zero(),
    });
    Ok(checks)
}
