//! Character-table integration tests: the contact oracle, the small gauge
//! tables, determinism, and flag/polar internals.

use eds_core::cartan::{self, CharacterOptions};
use eds_core::chart::Metric;
use eds_core::eds::Budget;
use eds_core::linalg;
use eds_core::models;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn contact_system_characters() {
    // hand polar computation: c_0 = 1 (omega itself), c_1 = 2 (omega plus
    // the contraction of domega), so s = [1, 1] and s_2 = 5 - 2 - 2 = 1
    let eds = models::build_contact_example();
    let t =
        cartan::compute_characters_multi(&eds, &[1, 2, 3], &CharacterOptions::default()).unwrap();
    assert_eq!(t.notation(), "5[1,1]2+1");
    assert!(t.cartan_ok);
    assert!(t.agreement);
}

#[test]
fn contact_polar_ranks_match_hand_computation() {
    let eds = models::build_contact_example();
    let trial = cartan::run_trial(&eds, 9, &CharacterOptions::default()).unwrap();
    assert_eq!(trial.polar_ranks, vec![1, 2]);
    // flag invariants hold by substitution
    let gens = eds.evaluate_generators(&trial.flag.point).unwrap();
    assert!(trial.flag.is_integral(&gens));
    assert!(trial.flag.is_transversal(eds.independence()));
}

#[test]
fn contact_cauchy_dimension_is_zero() {
    let eds = models::build_contact_example();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..3 {
        let p = eds_core::eds::random_point(eds.chart(), &mut rng, 10);
        assert_eq!(eds.cauchy_space_dim(&p, &Budget::default()).unwrap(), 0);
    }
}

#[test]
fn maxwell_n3_characters() {
    let eds = models::build_maxwell(3, &Metric::lorentz_time_last(3)).unwrap();
    let t =
        cartan::compute_characters_multi(&eds, &[1, 2, 3], &CharacterOptions::default()).unwrap();
    assert_eq!(t.notation(), "9[0,2,3]3+1");
    assert!(t.agreement);
}

#[test]
fn maxwell_n4_characters_and_final_polar_rank() {
    let eds = models::build_maxwell(4, &Metric::lorentz_time_last(4)).unwrap();
    let trial = cartan::run_trial(&eds, 7, &CharacterOptions::default()).unwrap();
    assert_eq!(trial.table.notation(), "14[0,1,3,5]4+1");
    // c_3 = 0 + 1 + 3 + 5 = 9, cross-checked mod three random large primes
    assert_eq!(*trial.polar_ranks.last().unwrap(), 9);
    let last = trial.polar_matrices.last().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let p = linalg::random_prime(&mut rng, 1 << 20, 1 << 24);
        assert_eq!(linalg::rank_mod_p(last, p).unwrap(), 9);
    }
    // the two elimination routes agree on every polar system of the trial
    for (m, &c) in trial.polar_matrices.iter().zip(&trial.polar_ranks) {
        assert_eq!(linalg::rank(m), c);
        assert_eq!(linalg::rank_field(m), c);
    }
}

#[test]
fn su2_n3_characters() {
    let eds = models::build_su2_yang_mills(3, &Metric::lorentz_time_last(3)).unwrap();
    let t =
        cartan::compute_characters_multi(&eds, &[1, 2, 3], &CharacterOptions::default()).unwrap();
    assert_eq!(t.notation(), "21[0,6,9]3+3");
    assert!(t.agreement);
}

#[test]
fn su2_n4_characters() {
    let eds = models::build_su2_yang_mills(4, &Metric::lorentz_time_last(4)).unwrap();
    let t =
        cartan::compute_characters_multi(&eds, &[1, 2, 3], &CharacterOptions::default()).unwrap();
    assert_eq!(t.notation(), "34[0,3,9,15]4+3");
    assert!(t.agreement);
}

#[test]
fn tables_are_signature_independent_small() {
    for n in [3usize, 4] {
        for metric in [Metric::lorentz_time_last(n), Metric::lorentz_time_first(n)] {
            let eds = models::build_maxwell(n, &metric).unwrap();
            let t = cartan::compute_characters(&eds, 11, &CharacterOptions::default()).unwrap();
            let want = if n == 3 {
                "9[0,2,3]3+1"
            } else {
                "14[0,1,3,5]4+1"
            };
            assert_eq!(t.notation(), want, "n={n} metric {:?}", metric.signs());
        }
    }
}

#[test]
fn maxwell_ideal_dimension_is_point_independent() {
    let eds = models::build_maxwell(4, &Metric::lorentz_time_last(4)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let dims: Vec<usize> = (0..2)
        .map(|_| {
            let p = eds_core::eds::random_point(eds.chart(), &mut rng, 10);
            eds.ideal_at_point(&p, 3, &Budget::default())
                .unwrap()
                .dimension()
        })
        .collect();
    assert_eq!(dims[0], dims[1]);
}

#[test]
fn maxwell_cauchy_dimension_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in [3usize, 4] {
        let eds = models::build_maxwell(n, &Metric::lorentz_time_last(n)).unwrap();
        for _ in 0..3 {
            let p = eds_core::eds::random_point(eds.chart(), &mut rng, 10);
            assert_eq!(
                eds.cauchy_space_dim(&p, &Budget::default()).unwrap(),
                0,
                "n={n}"
            );
        }
    }
}

#[test]
fn cauchy_dim_invariant_under_generator_recombination() {
    // Maxwell n=3 has theta and psi both of degree 2; mix them with the
    // unimodular matrix [[1, 2], [0, 1]], negate dtheta, and reorder. The
    // Cauchy space of the span is unchanged.
    let eds = models::build_maxwell(3, &Metric::lorentz_time_last(3)).unwrap();
    let theta = eds.generator("theta").unwrap().clone();
    let dtheta = eds.generator("dtheta").unwrap().clone();
    let psi = eds.generator("psi").unwrap().clone();
    let mixed = eds_core::eds::EDSystem::new(
        eds.chart().clone(),
        vec![
            ("a".into(), psi.clone()),
            ("b".into(), -dtheta),
            ("c".into(), theta + psi.scale(&eds_core::rat(2))),
        ],
        eds.independence().to_vec(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let p = eds_core::eds::random_point(eds.chart(), &mut rng, 10);
    assert_eq!(
        eds.cauchy_space_dim(&p, &Budget::default()).unwrap(),
        mixed.cauchy_space_dim(&p, &Budget::default()).unwrap()
    );
}

#[test]
fn su2_tables_invariant_under_group_relabeling() {
    // permuting the three group indices permutes generators and flips signs
    // of the structure constants; the character table must not move
    let eds = models::build_su2_yang_mills(3, &Metric::lorentz_time_last(3)).unwrap();
    let base = cartan::compute_characters(&eds, 3, &CharacterOptions::default()).unwrap();
    let perm = [2usize, 0, 1]; // cyclic relabeling a -> a+1
    let mut relabeled = Vec::new();
    for stem in ["theta", "dtheta", "psi"] {
        let block = match stem {
            "theta" => 0,
            "dtheta" => 3,
            _ => 6,
        };
        for (a, &pa) in perm.iter().enumerate() {
            let (_, form) = &eds.generators()[block + pa];
            relabeled.push((format!("{stem}{}", a + 1), form.clone()));
        }
    }
    let mixed =
        eds_core::eds::EDSystem::new(eds.chart().clone(), relabeled, vec![0, 1, 2]).unwrap();
    let t = cartan::compute_characters(&mixed, 3, &CharacterOptions::default()).unwrap();
    assert_eq!(t.notation(), base.notation());
}

#[test]
fn modular_check_mode_agrees() {
    let eds = models::build_maxwell(3, &Metric::lorentz_time_last(3)).unwrap();
    let opts = CharacterOptions {
        modular_check: true,
        ..CharacterOptions::default()
    };
    let t = cartan::compute_characters(&eds, 2, &opts).unwrap();
    assert_eq!(t.notation(), "9[0,2,3]3+1");
}

#[test]
fn prime_point_mode_reproduces_tables() {
    let eds = models::build_maxwell(3, &Metric::lorentz_time_last(3)).unwrap();
    let opts = CharacterOptions {
        point_mode: cartan::PointMode::Primes,
        ..CharacterOptions::default()
    };
    let t = cartan::compute_characters_multi(&eds, &[1, 2], &opts).unwrap();
    assert_eq!(t.notation(), "9[0,2,3]3+1");
    assert!(t.agreement);
}
