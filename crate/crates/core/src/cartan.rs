//! Monte Carlo integral flags and Cartan character tables.
//!
//! A trial assigns random integer values to a point, evaluates the
//! generators there, and extends an integral element one tangent vector at a
//! time. Each new vector solves the nested polar system of the current flag
//! with its spacetime components pinned to the transversality pattern
//! dx^j(V_{k+1}) = delta^j_{k+1}. The characters are differences of
//! successive polar ranks, the top character is the residual gauge count,
//! and the bookkeeping identity N = s_0 + ... + s_n + n is re-asserted on
//! every completed table.

use crate::chart::{Point, TangentVector};
use crate::eds::EDSystem;
use crate::error::EdsError;
use crate::evaluated::EvaluatedForm;
use crate::linalg::{self, Matrix, PinConstraint, SampleOptions, SolveOutcome};
use crate::{Int, Rat};
use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// An integral element chain anchored at a point.
#[derive(Debug, Clone)]
pub struct Flag {
    pub point: Point,
    pub vectors: Vec<TangentVector>,
}

impl Flag {
    /// Every generator of degree d <= k contracts to zero on every d-subset
    /// of flag vectors. Checked by substitution rather than assumed from the
    /// construction.
    pub fn is_integral(&self, gens: &[EvaluatedForm]) -> bool {
        let k = self.vectors.len();
        for g in gens {
            let d = g.degree();
            if d == 0 || d > k {
                continue;
            }
            for subset in (0..k).combinations(d) {
                let refs: Vec<&TangentVector> = subset.iter().map(|&i| &self.vectors[i]).collect();
                match g.contract_all(&refs) {
                    Ok(scalar) => {
                        if !scalar.is_zero() {
                            return false;
                        }
                    }
                    Err(_) => return false,
                }
            }
        }
        true
    }

    /// dx^j(V_i) follows the pinned identity pattern.
    pub fn is_transversal(&self, base: &[usize]) -> bool {
        for (i, v) in self.vectors.iter().enumerate() {
            for (j, &bj) in base.iter().enumerate() {
                let c = &v.components[bj];
                let ok = if i == j { c.is_one() } else { c.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// How trial points are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointMode {
    /// Uniform integers in [-range, range].
    RandomInt,
    /// Distinct small primes assigned in coordinate order, offset by seed.
    Primes,
}

/// Controls for a character trial.
#[derive(Debug, Clone)]
pub struct CharacterOptions {
    /// Random integer range for points and nullspace combinations.
    pub range: i64,
    /// Cross-check every polar rank against 3 random 20+ bit primes.
    pub modular_check: bool,
    pub point_mode: PointMode,
    /// Full restarts with a fresh point after persistent degeneracy.
    pub max_point_restarts: usize,
    /// Resample attempts per flag vector.
    pub max_vector_retries: usize,
}

impl Default for CharacterOptions {
    fn default() -> Self {
        CharacterOptions {
            range: 10,
            modular_check: false,
            point_mode: PointMode::RandomInt,
            max_point_restarts: 8,
            max_vector_retries: 16,
        }
    }
}

/// The character record N[s_0,...,s_{n-1}]n+s_n with trial metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    /// Manifold dimension N.
    pub dim: usize,
    /// Independence count n (the genus position).
    pub n: usize,
    /// Characters s_0..s_{n-1}.
    pub s: Vec<usize>,
    /// Gauge freedom s_n.
    pub gauge: usize,
    /// The bookkeeping identity N = s_0 + ... + s_n + n.
    pub cartan_ok: bool,
    pub trials: usize,
    pub seeds: Vec<u64>,
    pub agreement: bool,
}

impl CharacterTable {
    /// Exact table notation, no whitespace: `N[s_0,...,s_{n-1}]n+s_n`.
    pub fn notation(&self) -> String {
        format!(
            "{}[{}]{}+{}",
            self.dim,
            self.s.iter().map(usize::to_string).join(","),
            self.n,
            self.gauge
        )
    }

    fn same_characters(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.n == other.n
            && self.s == other.s
            && self.gauge == other.gauge
            && self.cartan_ok == other.cartan_ok
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

/// One completed trial: the table plus the flag and polar data behind it.
#[derive(Debug, Clone)]
pub struct Trial {
    pub table: CharacterTable,
    pub flag: Flag,
    /// Cumulative polar ranks c_0..c_{n-1}.
    pub polar_ranks: Vec<usize>,
    pub polar_matrices: Vec<Matrix<Rat>>,
}

/// Polar matrix of a flag: rows are all iterated contractions of the
/// evaluated generators with (d-1)-subsets of the flag vectors, for
/// generators of degree d <= k+1, including degree-1 generators uncontracted.
pub fn polar_matrix(gens: &[EvaluatedForm], vectors: &[TangentVector], dim: usize) -> Matrix<Rat> {
    let k = vectors.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for g in gens {
        let d = g.degree();
        if d == 0 || d > k + 1 {
            continue;
        }
        for subset in (0..k).combinations(d - 1) {
            let refs: Vec<&TangentVector> = subset.iter().map(|&i| &vectors[i]).collect();
            let one_form = g
                .contract_all(&refs)
                .expect("degree bookkeeping leaves a 1-form");
            debug_assert_eq!(one_form.degree(), 1);
            let mut row = vec![Rat::zero(); dim];
            for (key, c) in one_form.terms() {
                row[key[0] as usize] = c.clone();
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        Matrix::empty(dim)
    } else {
        Matrix::from_rows(rows)
    }
}

fn sample_point<R: Rng>(
    eds: &EDSystem,
    rng: &mut R,
    opts: &CharacterOptions,
    seed: u64,
    restart: usize,
) -> Point {
    let nn = eds.dim();
    match opts.point_mode {
        PointMode::RandomInt => Point::new(
            (0..nn)
                .map(|_| Rat::from_integer(Int::from(rng.random_range(-opts.range..=opts.range))))
                .collect(),
        ),
        PointMode::Primes => {
            // restarts shift to a fresh window of the prime sequence
            let offset = (seed % 97) as usize + restart * nn;
            let primes = linalg::small_primes(offset + nn);
            Point::new(
                primes[offset..]
                    .iter()
                    .map(|&p| Rat::from_integer(Int::from(p)))
                    .collect(),
            )
        }
    }
}

/// Run a single seeded trial, returning the table with its flag and polar
/// systems.
pub fn run_trial(eds: &EDSystem, seed: u64, opts: &CharacterOptions) -> Result<Trial, EdsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nn = eds.dim();
    let n = eds.n();

    let mut last_error = None;
    for restart in 0..=opts.max_point_restarts {
        let point = sample_point(eds, &mut rng, opts, seed, restart);
        let gens = eds.evaluate_generators(&point)?;
        match extend_flag(eds, &gens, point, &mut rng, opts) {
            Ok(((point, vectors), ranks, matrices)) => {
                let flag = Flag { point, vectors };
                // characters from rank differences; polar row sets are
                // nested so the ranks must be monotone
                let mut s = Vec::with_capacity(n);
                let mut prev = 0usize;
                for &c in &ranks {
                    let Some(diff) = c.checked_sub(prev) else {
                        return Err(EdsError::Degenerate(format!(
                            "polar ranks not monotone: {ranks:?}"
                        )));
                    };
                    s.push(diff);
                    prev = c;
                }
                let c_last = *ranks.last().expect("n >= 1");
                let Some(gauge) = (nn - n).checked_sub(c_last) else {
                    return Err(EdsError::Degenerate(format!(
                        "final polar rank {c_last} exceeds N - n = {}",
                        nn - n
                    )));
                };
                // re-assert the bookkeeping identity independently
                let total: usize = s.iter().sum::<usize>() + gauge + n;
                let table = CharacterTable {
                    dim: nn,
                    n,
                    s,
                    gauge,
                    cartan_ok: total == nn,
                    trials: 1,
                    seeds: vec![seed],
                    agreement: true,
                };
                return Ok(Trial {
                    table,
                    flag,
                    polar_ranks: ranks,
                    polar_matrices: matrices,
                });
            }
            Err(e @ EdsError::GenusDeficit { .. }) => return Err(e),
            Err(e) => {
                last_error = Some(e);
                continue; // fresh point
            }
        }
    }
    Err(last_error.unwrap_or_else(|| {
        EdsError::Degenerate("no generic point found within the restart limit".into())
    }))
}

type FlagData = ((Point, Vec<TangentVector>), Vec<usize>, Vec<Matrix<Rat>>);

fn extend_flag<R: Rng>(
    eds: &EDSystem,
    gens: &[EvaluatedForm],
    point: Point,
    rng: &mut R,
    opts: &CharacterOptions,
) -> Result<FlagData, EdsError> {
    let nn = eds.dim();
    let n = eds.n();
    let base = eds.independence();
    let mut vectors: Vec<TangentVector> = Vec::with_capacity(n);
    let mut ranks = Vec::with_capacity(n);
    let mut matrices = Vec::with_capacity(n);
    for k in 0..n {
        let m = polar_matrix(gens, &vectors, nn);
        let c_k = if opts.modular_check {
            linalg::rank_with_modular_check(&m, rng)?
        } else {
            linalg::rank(&m)
        };
        ranks.push(c_k);
        let pins: Vec<PinConstraint> = base
            .iter()
            .enumerate()
            .map(|(j, &bj)| PinConstraint {
                index: bj,
                value: if j == k { Rat::one() } else { Rat::zero() },
            })
            .collect();
        let sample_opts = SampleOptions {
            range: opts.range,
            max_retries: opts.max_vector_retries,
            accept: None,
        };
        match linalg::solve_sample(&m, &pins, rng, &sample_opts)? {
            SolveOutcome::Infeasible => return Err(EdsError::GenusDeficit { step: k }),
            SolveOutcome::Sample(v) => vectors.push(v),
        }
        // integral-element property, asserted by substitution
        let flag = Flag {
            point: point.clone(),
            vectors: vectors.clone(),
        };
        if !flag.is_integral(gens) {
            return Err(EdsError::Degenerate(format!(
                "flag lost integrality at step {k}"
            )));
        }
        if !flag.is_transversal(base) {
            return Err(EdsError::Degenerate(format!(
                "flag lost transversality at step {k}"
            )));
        }
        matrices.push(m);
    }
    Ok(((point, vectors), ranks, matrices))
}

/// Compute the character table from one seeded trial.
pub fn compute_characters(
    eds: &EDSystem,
    seed: u64,
    opts: &CharacterOptions,
) -> Result<CharacterTable, EdsError> {
    Ok(run_trial(eds, seed, opts)?.table)
}

/// Run one trial per seed and merge: agreement is unanimity, and the
/// returned table is the majority one flagged accordingly.
pub fn compute_characters_multi(
    eds: &EDSystem,
    seeds: &[u64],
    opts: &CharacterOptions,
) -> Result<CharacterTable, EdsError> {
    assert!(!seeds.is_empty(), "at least one seed");
    let mut tables = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let t = compute_characters(eds, seed, opts).map_err(|e| EdsError::TrialFailed {
            seed,
            source: Box::new(e),
        })?;
        tables.push(t);
    }
    let agreement = tables.windows(2).all(|w| w[0].same_characters(&w[1]));
    // majority table (first among ties)
    let mut best = 0usize;
    let mut best_count = 0usize;
    for i in 0..tables.len() {
        let count = tables
            .iter()
            .filter(|t| t.same_characters(&tables[i]))
            .count();
        if count > best_count {
            best = i;
            best_count = count;
        }
    }
    let mut out = tables[best].clone();
    out.trials = seeds.len();
    out.seeds = seeds.to_vec();
    out.agreement = agreement;
    Ok(out)
}
