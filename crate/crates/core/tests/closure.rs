//! Closure-check coherence across the built-in models: symbolic
//! certificates passing implies pointwise membership at sampled points,
//! wherever the basis budget allows the pointwise check at all.

use eds_core::chart::Metric;
use eds_core::eds::{Budget, CertificateStatus, PointwiseVerdict};
use eds_core::models::{self, Family, ModelSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn certificates_imply_pointwise_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(7070);
    let budget = Budget::default();
    let mut cases: Vec<(String, eds_core::eds::EDSystem, usize)> = Vec::new();
    for n in 3..=6usize {
        let metric = Metric::lorentz_time_last(n);
        cases.push((
            format!("maxwell n={n}"),
            models::build(&ModelSpec::new(Family::Maxwell, n, metric.clone())).unwrap(),
            3,
        ));
        // the SU(2) degree-4 ideal at n = 4 is the expensive case; one
        // sampled point keeps the suite fast while still exercising it
        let points = if n == 4 { 1 } else { 3 };
        cases.push((
            format!("su2ym n={n}"),
            models::build(&ModelSpec::new(Family::Su2YangMills, n, metric)).unwrap(),
            points,
        ));
    }
    cases.push(("contact".into(), models::build_contact_example(), 3));

    for (label, eds, points) in cases {
        let symbolic_ok = eds
            .closure_check_certificate()
            .iter()
            .all(|c| matches!(c.status, CertificateStatus::Verified));
        assert!(symbolic_ok, "{label}: certificates must verify");
        for _ in 0..points {
            let p = eds_core::eds::random_point(eds.chart(), &mut rng, 10);
            for check in eds.closure_check_pointwise(&p, &budget).unwrap() {
                match check.verdict {
                    PointwiseVerdict::Member | PointwiseVerdict::Skipped { .. } => {}
                    PointwiseVerdict::NotMember => panic!(
                        "{label}: generator {} fails pointwise despite certificates",
                        check.generator
                    ),
                }
            }
        }
    }
}
