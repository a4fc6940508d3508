//! Property suites for the exterior algebra: graded commutativity,
//! associativity, the Leibniz rule, d ∘ d = 0, evaluation homomorphisms,
//! and the interior-product antiderivation.

use eds_core::chart::{Chart, Point, TangentVector};
use eds_core::form::Form;
use eds_core::poly::Poly;
use eds_core::{rat, Int, Rat};
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::Arc;

const DIM: usize = 5;

fn chart() -> Arc<Chart> {
    Chart::new((0..DIM).map(|i| format!("c{i}")).collect(), vec![0, 1, 2]).unwrap()
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(Int::from(n), Int::from(d)))
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0u32..DIM as u32, 0..=2),
            arb_rat(),
        ),
        0..=2,
    )
    .prop_map(|terms| {
        let mut p = Poly::zero();
        for (mono, c) in terms {
            p = p + Poly::monomial(mono, c);
        }
        p
    })
}

use num_traits::Zero;

fn arb_form(degree: usize) -> impl Strategy<Value = Form> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0u32..DIM as u32, degree),
            arb_poly(),
        ),
        0..=3,
    )
    .prop_map(move |terms| Form::from_terms(&chart(), degree, terms))
}

fn arb_point() -> impl Strategy<Value = Point> {
    proptest::collection::vec(-9i64..=9, DIM)
        .prop_map(|vals| Point::new(vals.into_iter().map(rat).collect()))
}

fn arb_vector() -> impl Strategy<Value = TangentVector> {
    proptest::collection::vec(-9i64..=9, DIM)
        .prop_map(|vals| TangentVector::new(vals.into_iter().map(rat).collect()))
}

proptest! {
    #[test]
    fn wedge_graded_anticommutativity(
        p in 0usize..=2, q in 0usize..=2,
        seed_a in 0u64..1000, seed_b in 0u64..1000,
    ) {
        // a ∧ b = (-1)^{pq} b ∧ a
        let a = sample_form(p, seed_a);
        let b = sample_form(q, seed_b);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let expect = if p * q % 2 == 1 { -ba } else { ba };
        prop_assert_eq!(ab, expect);
    }

    #[test]
    fn wedge_associativity(a in arb_form(1), b in arb_form(1), c in arb_form(2)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn leibniz_rule(p in 0usize..=2, seed_a in 0u64..1000, seed_b in 0u64..1000) {
        // d(a ∧ b) = da ∧ b + (-1)^p a ∧ db
        let a = sample_form(p, seed_a);
        let b = sample_form(1, seed_b);
        let lhs = a.wedge(&b).unwrap().d();
        let mut rhs = a.d().wedge(&b).unwrap();
        let adb = a.wedge(&b.d()).unwrap();
        rhs = if p % 2 == 1 { rhs - adb } else { rhs + adb };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(k in 0usize..=2, seed in 0u64..2000) {
        let a = sample_form(k, seed);
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn evaluate_commutes_with_wedge(
        a in arb_form(1), b in arb_form(2), p in arb_point()
    ) {
        let lhs = a.wedge(&b).unwrap().evaluate(&p).unwrap();
        let rhs = a.evaluate(&p).unwrap().wedge(&b.evaluate(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_product_is_an_antiderivation(
        a in arb_form(1), b in arb_form(2), p in arb_point(), v in arb_vector()
    ) {
        // iota_v(alpha ∧ beta) = iota_v alpha ∧ beta + (-1)^deg alpha ∧ iota_v beta
        let ea = a.evaluate(&p).unwrap();
        let eb = b.evaluate(&p).unwrap();
        let lhs = ea.wedge(&eb).unwrap().interior_product(&v).unwrap();
        let iv_a = ea.interior_product(&v).unwrap();
        let iv_b = eb.interior_product(&v).unwrap();
        // deg a = 1, so the second term enters with a minus sign
        let rhs = iv_a.wedge(&eb).unwrap() - ea.wedge(&iv_b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_interior_product_vanishes(
        b in arb_form(2), p in arb_point(), v in arb_vector()
    ) {
        let eb = b.evaluate(&p).unwrap();
        let once = eb.interior_product(&v).unwrap();
        prop_assert!(once.interior_product(&v).unwrap().is_zero());
    }
}

/// Deterministic random form used where proptest's tuple limit would bite.
fn sample_form(degree: usize, seed: u64) -> Form {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (degree as u64) << 32);
    let chart = chart();
    let mut f = Form::zero(&chart, degree);
    for _ in 0..rng.random_range(0..=3) {
        let tuple: Vec<u32> = (0..degree)
            .map(|_| rng.random_range(0..DIM as u32))
            .collect();
        let mut poly = Poly::zero();
        for _ in 0..rng.random_range(1..=2) {
            let mono: Vec<u32> = (0..rng.random_range(0..=2))
                .map(|_| rng.random_range(0..DIM as u32))
                .collect();
            poly = poly
                + Poly::monomial(
                    mono,
                    BigRational::new(
                        Int::from(rng.random_range(-6i64..=6)),
                        Int::from(rng.random_range(1i64..=4)),
                    ),
                );
        }
        f.add_term(&tuple, poly);
    }
    f
}

#[test]
fn exterior_derivative_of_maxwell_potential() {
    // A = sum A_i dx^i on the n = 4 Maxwell chart: d(A) has one term per i,
    // the basis 2-form (x^i, A_i) with coefficient -1 after canonical
    // ordering (dA_i ∧ dx^i = -dx^i ∧ dA_i)
    use eds_core::chart::Metric;
    let forms = eds_core::models::maxwell_forms(4, &Metric::lorentz_time_last(4)).unwrap();
    let da = forms.potentials[0].d();
    let terms: Vec<(Vec<u32>, Poly)> = da.terms().map(|(k, p)| (k.clone(), p.clone())).collect();
    assert_eq!(terms.len(), 4);
    for i in 0..4u32 {
        let key = vec![i, i + 4];
        let poly = da.coefficient(&key);
        assert_eq!(poly, Poly::constant(rat(-1)), "term {i}");
    }
}

#[test]
fn evaluate_maxwell_theta_by_hand_substitution() {
    // theta = dA - F evaluated at an integer point: the (x^i, A_i) slots
    // stay -1 and the (x^i, x^j) slots carry -F_ij(p)
    use eds_core::chart::Metric;
    use rand::{Rng, SeedableRng};
    let forms = eds_core::models::maxwell_forms(4, &Metric::lorentz_time_last(4)).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    let values: Vec<Rat> = (0..14).map(|_| rat(rng.random_range(-9..=9))).collect();
    let p = Point::new(values.clone());
    let theta = forms.theta[0].evaluate(&p).unwrap();
    for i in 0..4u32 {
        assert_eq!(theta.coefficient(&[i, i + 4]), rat(-1));
    }
    let mut pair = 0usize;
    for i in 0..4u32 {
        for j in i + 1..4u32 {
            assert_eq!(
                theta.coefficient(&[i, j]),
                -values[8 + pair].clone(),
                "F slot ({i},{j})"
            );
            pair += 1;
        }
    }
}

#[test]
fn double_hodge_dual_is_metric_determinant() {
    // **F = det(eta) F per component at n = 4, against a brute-force
    // epsilon contraction oracle
    use eds_core::chart::Metric;
    use eds_core::form::{hodge_dual_2form, permutation_sign};
    use std::collections::BTreeMap;

    let chart = Chart::new((1..=4).map(|i| format!("x{i}")).collect(), vec![0, 1, 2, 3]).unwrap();
    for metric in [Metric::euclidean(4), Metric::lorentz_time_last(4)] {
        let mut comps: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        let mut value = 1i64;
        for i in 0..4 {
            for j in i + 1..4 {
                comps.insert((i, j), Poly::constant(rat(value)));
                value += 1;
            }
        }
        let dual = hodge_dual_2form(&chart, &comps, &metric).unwrap();
        // extract components of *F and dualize again
        let mut dual_comps: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        for (k, poly) in dual.terms() {
            dual_comps.insert((k[0] as usize, k[1] as usize), poly.clone());
        }
        let double = hodge_dual_2form(&chart, &dual_comps, &metric).unwrap();
        let det = rat(metric.det() as i64);
        for (&(i, j), poly) in &comps {
            assert_eq!(
                double.coefficient(&[i as u32, j as u32]),
                poly.scale(&det),
                "component ({i},{j}) signs {:?}",
                metric.signs()
            );
        }

        // brute-force oracle: (**F)_{kl} = 1/4 sum_{ij} (*F)^{ij} eps_{ijkl}
        // over all ordered index pairs
        for k in 0..4usize {
            for l in 0..4usize {
                if k >= l {
                    continue;
                }
                let mut acc = Rat::zero();
                for i in 0..4usize {
                    for j in 0..4usize {
                        if i == j {
                            continue;
                        }
                        let Some(eps) = permutation_sign(&[i, j, k, l]) else {
                            continue;
                        };
                        let raise = (metric.sign(i) * metric.sign(j)) as i64;
                        // (*F)_{ij} with sign from the increasing-key storage
                        let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
                        let c = dual_comps
                            .get(&(lo, hi))
                            .and_then(Poly::as_constant)
                            .unwrap_or_else(Rat::zero);
                        acc += c * rat(s * raise * eps as i64);
                    }
                }
                // each unordered pair enters the ordered sum twice: halve
                acc /= rat(2);
                let got = double
                    .coefficient(&[k as u32, l as u32])
                    .as_constant()
                    .unwrap();
                assert_eq!(acc, got, "oracle ({k},{l}) signs {:?}", metric.signs());
            }
        }
    }
}
