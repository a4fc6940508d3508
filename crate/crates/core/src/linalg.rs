//! Exact linear algebra over the rationals and prime fields.
//!
//! Rank goes through fraction-free Bareiss elimination on the
//! denominator-cleared integer matrix; solution sampling and nullspaces use
//! reduced row echelon form over a generic [`Field`] scalar, which also
//! serves the mod-p rank cross-checks via [`crate::scalar::Fp`]. A sparse
//! echelon over tuple-indexed spaces supports the pointwise ideal
//! computations, where dense storage would not fit.

use crate::chart::TangentVector;
use crate::error::EdsError;
use crate::scalar::{Field, Fp, Ring};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Dense row-major matrix over an exact scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T = Rat> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// A matrix with no rows but a definite column count.
    pub fn empty(cols: usize) -> Self {
        Matrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (e, x) in self.row(r).iter().zip(v) {
                    if !e.is_zero() && !x.is_zero() {
                        acc = acc + e.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }
}

/// Exact rank by fraction-free Bareiss elimination.
///
/// Rows are first scaled to integers (denominator LCM), which leaves the
/// rank unchanged; elimination then stays in integers with exact divisions,
/// avoiding the coefficient explosion of plain rational elimination.
pub fn rank(m: &Matrix<Rat>) -> usize {
    let rows: Vec<Vec<Int>> = (0..m.rows()).map(|r| clear_row(m.row(r))).collect();
    bareiss_rank(rows, m.cols())
}

fn clear_row(row: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for e in row {
        lcm = lcm.lcm(e.denom());
    }
    row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect()
}

fn bareiss_rank(mut m: Vec<Vec<Int>>, cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = Int::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &m[r][c] * &m[rank][col] - &m[r][col] * &m[rank][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = Int::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over a generic field scalar.
pub struct Echelon<T> {
    pub rows: Vec<Vec<T>>,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

pub fn rref<T: Field>(mut rows: Vec<Vec<T>>) -> Echelon<T> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == nrows {
            break;
        }
        let Some(p) = (next..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv_pivot = {
            let piv = rows[next][col].clone();
            T::one() / piv
        };
        for e in rows[next][col..].iter_mut() {
            let v = e.clone() * inv_pivot.clone();
            *e = v;
        }
        for r in 0..nrows {
            if r == next || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            let pivot_row: Vec<T> = rows[next][col..].to_vec();
            for (e, pe) in rows[r][col..].iter_mut().zip(&pivot_row) {
                let delta = factor.clone() * pe.clone();
                *e = e.clone() - delta;
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    Echelon { rows, pivots }
}

/// Rank over a generic field; the plain-elimination counterpart to [`rank`].
pub fn rank_field<T: Field>(m: &Matrix<T>) -> usize {
    rref(m.row_vecs()).pivots.len()
}

fn rat_mod_p(x: &Rat, p: u64) -> Result<Fp, EdsError> {
    let pm = Int::from(p);
    let den = x.denom().mod_floor(&pm);
    if den.is_zero() {
        return Err(EdsError::BadPrime { p });
    }
    let num = x.numer().mod_floor(&pm);
    let to_u64 = |v: Int| -> u64 {
        let (_, digits) = v.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    };
    let den = Fp::new(to_u64(den), p);
    let num = Fp::new(to_u64(num), p);
    Ok(num / den)
}

/// Rank of the matrix reduced modulo a prime. Always at most [`rank`];
/// equality holds except for finitely many bad primes.
pub fn rank_mod_p(m: &Matrix<Rat>, p: u64) -> Result<usize, EdsError> {
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let row: Result<Vec<Fp>, EdsError> = m.row(r).iter().map(|x| rat_mod_p(x, p)).collect();
        rows.push(row?);
    }
    if m.rows() == 0 {
        return Ok(0);
    }
    Ok(rref(rows).pivots.len())
}

/// Rational rank cross-checked against three random 20+ bit primes.
///
/// Accepts when at least 2 of 3 modular ranks agree with the rational rank;
/// otherwise retries with fresh primes, and fails loudly rather than
/// returning a silently unverified value.
pub fn rank_with_modular_check<R: Rng>(m: &Matrix<Rat>, rng: &mut R) -> Result<usize, EdsError> {
    let exact = rank(m);
    const ROUNDS: usize = 4;
    let mut last_agree = 0;
    for _ in 0..ROUNDS {
        let mut agree = 0;
        let mut total = 0;
        while total < 3 {
            let p = random_prime(rng, 1 << 20, 1 << 26);
            match rank_mod_p(m, p) {
                Err(EdsError::BadPrime { .. }) => continue, // denominator hit; pick another
                Err(e) => return Err(e),
                Ok(r) => {
                    total += 1;
                    if r == exact {
                        agree += 1;
                    }
                }
            }
        }
        if agree >= 2 {
            return Ok(exact);
        }
        last_agree = agree;
    }
    Err(EdsError::ModularDisagreement {
        agree: last_agree,
        total: 3,
    })
}

/// Nullspace basis of the matrix over the rationals.
///
/// Each basis vector is scaled to a primitive integer vector (no common
/// factor, denominators cleared) with its first nonzero entry positive.
pub fn nullspace(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    let ech = rref(m.row_vecs());
    nullspace_from_echelon(&ech, m.cols())
}

fn nullspace_from_echelon(ech: &Echelon<Rat>, cols: usize) -> Vec<Vec<Rat>> {
    let pivot_set: std::collections::HashSet<usize> = ech.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut w = vec![Rat::zero(); cols];
        w[free] = Rat::one();
        for (r, &pc) in ech.pivots.iter().enumerate() {
            let e = &ech.rows[r][free];
            if !e.is_zero() {
                w[pc] = -e.clone();
            }
        }
        primitive_scale(&mut w);
        basis.push(w);
    }
    basis
}

/// Scale a rational vector to primitive integer form in place.
fn primitive_scale(v: &mut [Rat]) {
    let mut lcm = Int::one();
    for e in v.iter() {
        lcm = lcm.lcm(e.denom());
    }
    let mut gcd = Int::zero();
    let ints: Vec<Int> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    if gcd.is_zero() {
        return;
    }
    let first_neg = ints.iter().find(|i| !i.is_zero()).map(|i| i.is_negative());
    let scale = if first_neg == Some(true) { -gcd } else { gcd };
    for (e, i) in v.iter_mut().zip(ints) {
        *e = Rat::from_integer(i / &scale);
    }
}

/// A pinned component of a sampled solution vector.
#[derive(Debug, Clone)]
pub struct PinConstraint {
    pub index: usize,
    pub value: Rat,
}

/// Outcome of [`solve_sample`].
#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Sample(TangentVector),
    /// The pinned system has no solution.
    Infeasible,
}

/// Sampling controls for [`solve_sample`].
pub struct SampleOptions<'a> {
    /// Random integer components are drawn uniformly from [-range, range].
    pub range: i64,
    /// Resample attempts before failing loudly.
    pub max_retries: usize,
    /// Optional genericity predicate; a rejected vector is resampled.
    pub accept: Option<&'a dyn Fn(&TangentVector) -> bool>,
}

impl Default for SampleOptions<'_> {
    fn default() -> Self {
        SampleOptions {
            range: 10,
            max_retries: 16,
            accept: None,
        }
    }
}

/// Sample a random solution of `M v = 0` with the pinned components held
/// exactly.
///
/// The vector is a particular solution of the pinned system plus a random
/// integer combination of a primitive nullspace basis; the zero vector and
/// vectors rejected by the genericity predicate are resampled.
pub fn solve_sample<R: Rng>(
    m: &Matrix<Rat>,
    pins: &[PinConstraint],
    rng: &mut R,
    opts: &SampleOptions,
) -> Result<SolveOutcome, EdsError> {
    let cols = m.cols();
    for pin in pins {
        assert!(pin.index < cols, "pin index out of range");
    }
    // augmented system: M rows with rhs 0, then pin rows e_i . v = value
    let mut aug: Vec<Vec<Rat>> = Vec::with_capacity(m.rows() + pins.len());
    for r in 0..m.rows() {
        let mut row = m.row(r).to_vec();
        row.push(Rat::zero());
        aug.push(row);
    }
    for pin in pins {
        let mut row = vec![Rat::zero(); cols + 1];
        row[pin.index] = Rat::one();
        row[cols] = pin.value.clone();
        aug.push(row);
    }
    let ech = rref(aug);
    if ech.pivots.last() == Some(&cols) {
        return Ok(SolveOutcome::Infeasible);
    }
    // particular solution: free variables zero
    let mut particular = vec![Rat::zero(); cols];
    for (r, &pc) in ech.pivots.iter().enumerate() {
        particular[pc] = ech.rows[r][cols].clone();
    }
    // nullspace of the homogeneous part (drop the rhs column)
    let homogeneous = Echelon {
        rows: ech.rows.iter().map(|row| row[..cols].to_vec()).collect(),
        pivots: ech.pivots.clone(),
    };
    let basis = nullspace_from_echelon(&homogeneous, cols);

    for _ in 0..opts.max_retries.max(1) {
        let mut v = particular.clone();
        for w in &basis {
            let c = rng.random_range(-opts.range..=opts.range);
            if c == 0 {
                continue;
            }
            let c = Rat::from_integer(Int::from(c));
            for (vi, wi) in v.iter_mut().zip(w) {
                if !wi.is_zero() {
                    *vi = &*vi + &(wi * &c);
                }
            }
        }
        let candidate = TangentVector::new(v);
        debug_assert!(m.apply(&candidate.components).iter().all(Rat::is_zero));
        debug_assert!(pins
            .iter()
            .all(|p| candidate.components[p.index] == p.value));
        if candidate.is_zero() {
            continue;
        }
        if let Some(accept) = opts.accept {
            if !accept(&candidate) {
                continue;
            }
        }
        return Ok(SolveOutcome::Sample(candidate));
    }
    Err(EdsError::Degenerate(format!(
        "no acceptable sample in {} attempts",
        opts.max_retries
    )))
}

// ---------------------------------------------------------------------------
// primes

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    // witness set proving primality for all n < 2^64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly chosen prime in [lo, hi).
pub fn random_prime<R: Rng>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    loop {
        let c = rng.random_range(lo..hi) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// The first `count` primes, by trial division.
pub fn small_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2u64;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// sparse echelon over tuple-indexed spaces

/// Sparse rational vector over a basis indexed by strictly increasing tuples.
pub type SparseVec = BTreeMap<Vec<u32>, Rat>;

type IntVec = BTreeMap<Vec<u32>, Int>;

/// Incremental row echelon over the tuple-indexed free module, used for
/// pointwise ideal spans where the ambient dimension is combinatorial.
///
/// Rows are stored as primitive integer vectors (content stripped, leading
/// coefficient positive) keyed by their leading tuple. Reduction uses
/// cross-multiplication, which keeps everything in integer arithmetic; the
/// scale factor is tracked only where a caller needs the exact rational
/// normal form. Membership and rank are scale-invariant, so a vector lies
/// in the span exactly when its scaled reduction is empty.
#[derive(Debug, Default, Clone)]
pub struct SparseEchelon {
    rows: BTreeMap<Vec<u32>, IntVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector, reducing it against the echelon first.
    ///
    /// Returns true when the vector enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (mut u, _) = clear_denominators(&v);
        let mut steps = 0usize;
        loop {
            let Some(lead) = u.keys().next().cloned() else {
                return false;
            };
            match self.rows.get(&lead) {
                None => {
                    strip_content(&mut u);
                    self.rows.insert(lead, u);
                    return true;
                }
                Some(row) => {
                    cross_reduce(&mut u, &lead, row);
                    steps += 1;
                    if steps.is_multiple_of(8) {
                        strip_content(&mut u);
                    }
                }
            }
        }
    }

    /// Reduce `v` against every pivot; the result is a nonzero rational
    /// multiple of the canonical normal form.
    fn reduce_scaled(&self, v: &SparseVec) -> (IntVec, Rat) {
        let (mut u, denom) = clear_denominators(v);
        let mut mult = Rat::from_integer(denom);
        for (lead, row) in &self.rows {
            if u.is_empty() {
                break;
            }
            if u.contains_key(lead) {
                let l = row.values().next().expect("nonempty row").clone();
                mult *= Rat::from_integer(l);
                cross_reduce(&mut u, lead, row);
                let g = strip_content(&mut u);
                if !g.is_one() {
                    mult /= Rat::from_integer(g);
                }
            }
        }
        (u, mult)
    }

    /// The canonical normal form of `v` modulo the span.
    pub fn normal_form(&self, v: &SparseVec) -> SparseVec {
        let (u, mult) = self.reduce_scaled(v);
        u.into_iter()
            .map(|(k, c)| (k, Rat::from_integer(c) / &mult))
            .collect()
    }

    /// A scale of the normal form, cheap and sufficient for membership and
    /// joint-rank computations.
    pub fn residual_scaled(&self, v: &SparseVec) -> SparseVec {
        let (u, _) = self.reduce_scaled(v);
        u.into_iter()
            .map(|(k, c)| (k, Rat::from_integer(c)))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_scaled(v).0.is_empty()
    }
}

/// Multiply by the denominator LCM, returning the integer vector and the LCM.
fn clear_denominators(v: &SparseVec) -> (IntVec, Int) {
    let mut lcm = Int::one();
    for c in v.values() {
        lcm = lcm.lcm(c.denom());
    }
    (
        v.iter()
            .map(|(k, c)| (k.clone(), c.numer() * (&lcm / c.denom())))
            .collect(),
        lcm,
    )
}

/// u := l*u - c*row where l is the row's leading coefficient and c = u[lead].
/// Cancels the lead exactly and keeps u integral.
fn cross_reduce(u: &mut IntVec, lead: &[u32], row: &IntVec) {
    let l = row.values().next().expect("nonempty row").clone();
    let c = u.remove(lead).expect("lead present");
    if !l.is_one() {
        for val in u.values_mut() {
            *val = &*val * &l;
        }
    }
    let mut first = true;
    for (k, rv) in row {
        if first {
            first = false; // the lead entry: l*c - c*l = 0, already removed
            continue;
        }
        let delta = rv * &c;
        match u.remove(k) {
            None => {
                u.insert(k.clone(), -delta);
            }
            Some(old) => {
                let diff = old - delta;
                if !diff.is_zero() {
                    u.insert(k.clone(), diff);
                }
            }
        }
    }
}

/// Divide out the gcd and make the leading coefficient positive.
/// Returns the signed factor removed.
fn strip_content(u: &mut IntVec) -> Int {
    let mut gcd = Int::zero();
    for v in u.values() {
        gcd = gcd.gcd(v);
        if gcd.is_one() {
            break;
        }
    }
    if gcd.is_zero() {
        return Int::one();
    }
    if u.values().next().map(Signed::is_negative) == Some(true) {
        gcd = -gcd;
    }
    if !gcd.is_one() {
        for v in u.values_mut() {
            *v = &*v / &gcd;
        }
    }
    gcd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(rank(&Matrix::<Rat>::identity(3)), 3);
    }

    #[test]
    fn rank_of_proportional_rows() {
        assert_eq!(rank(&mat(vec![vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn rank_of_empty_matrix() {
        assert_eq!(rank(&Matrix::<Rat>::empty(5)), 0);
    }

    #[test]
    fn modular_rank_of_identity() {
        assert_eq!(rank_mod_p(&Matrix::<Rat>::identity(4), 7).unwrap(), 4);
    }

    #[test]
    fn bad_prime_drops_rank() {
        // [[p, 0], [0, 1]] mod p has rank 1, rationally 2
        let p = 1_048_583u64; // prime > 2^20
        let m = mat(vec![vec![p as i64, 0], vec![0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_mod_p(&m, p).unwrap(), 1);
    }

    #[test]
    fn denominator_divisible_by_p_is_an_error() {
        let m = Matrix::from_rows(vec![vec![Rat::new(Int::one(), Int::from(7))]]);
        assert!(matches!(
            rank_mod_p(&m, 7),
            Err(EdsError::BadPrime { p: 7 })
        ));
    }

    #[test]
    fn random_matrices_agree_with_modular_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|_| (0..9).map(|_| rng.random_range(-30..=30)).collect())
                .collect();
            let m = mat(rows);
            let exact = rank(&m);
            for _ in 0..3 {
                let p = random_prime(&mut rng, 1 << 20, 1 << 24);
                assert_eq!(rank_mod_p(&m, p).unwrap(), exact);
            }
            assert_eq!(rank_field(&m), exact);
        }
    }

    #[test]
    fn rank_invariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let rows: Vec<Vec<i64>> = (0..5)
                .map(|_| (0..7).map(|_| rng.random_range(-9..=9)).collect())
                .collect();
            let m = mat(rows.clone());
            let r = rank(&m);
            assert_eq!(rank(&m.transpose()), r);
            // shuffle rows and scale one row by 3/5
            let mut shuffled = rows;
            shuffled.reverse();
            let mut m2 = mat(shuffled);
            for c in 0..m2.cols() {
                let v = m2.at(2, c) * Rat::new(Int::from(3), Int::from(5));
                m2.set(2, c, v);
            }
            assert_eq!(rank(&m2), r);
        }
    }

    #[test]
    fn solve_sample_respects_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = mat(vec![vec![1, 1]]);
        match solve_sample(&m, &[], &mut rng, &SampleOptions::default()).unwrap() {
            SolveOutcome::Sample(v) => {
                assert_eq!(v.components[0], -v.components[1].clone());
                assert!(!v.is_zero());
            }
            SolveOutcome::Infeasible => panic!("feasible system"),
        }
    }

    #[test]
    fn solve_sample_pins_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = Matrix::<Rat>::empty(5);
        let pins = [PinConstraint {
            index: 2,
            value: rat(1),
        }];
        for _ in 0..5 {
            match solve_sample(&m, &pins, &mut rng, &SampleOptions::default()).unwrap() {
                SolveOutcome::Sample(v) => assert_eq!(v.components[2], rat(1)),
                SolveOutcome::Infeasible => panic!("feasible system"),
            }
        }
    }

    #[test]
    fn solve_sample_reports_infeasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Matrix::<Rat>::identity(2);
        let pins = [PinConstraint {
            index: 0,
            value: rat(1),
        }];
        assert!(matches!(
            solve_sample(&m, &pins, &mut rng, &SampleOptions::default()).unwrap(),
            SolveOutcome::Infeasible
        ));
    }

    #[test]
    fn sampled_solutions_satisfy_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let rows: Vec<Vec<i64>> = (0..3)
                .map(|_| (0..6).map(|_| rng.random_range(-5..=5)).collect())
                .collect();
            let m = mat(rows);
            let pins = [PinConstraint {
                index: 5,
                value: rat(1),
            }];
            match solve_sample(&m, &pins, &mut rng, &SampleOptions::default()) {
                Ok(SolveOutcome::Sample(v)) => {
                    assert!(m.apply(&v.components).iter().all(Rat::is_zero));
                    assert_eq!(v.components[5], rat(1));
                }
                Ok(SolveOutcome::Infeasible) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime(2));
        assert!(is_prime(1_048_583));
        assert!(!is_prime(1_048_581));
        assert_eq!(small_primes(5), vec![2, 3, 5, 7, 11]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let p = random_prime(&mut rng, 1 << 20, 1 << 21);
            assert!(is_prime(p));
            assert!(p >= 1 << 20);
        }
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut ech = SparseEchelon::new();
        let row = |pairs: &[(&[u32], i64)]| -> SparseVec {
            pairs.iter().map(|(k, v)| (k.to_vec(), rat(*v))).collect()
        };
        assert!(ech.insert(row(&[(&[0, 1], 2), (&[1, 2], 4)])));
        assert!(ech.insert(row(&[(&[1, 2], 1)])));
        // dependent combination
        assert!(!ech.insert(row(&[(&[0, 1], 1), (&[1, 2], 2)])));
        assert_eq!(ech.rank(), 2);
        assert!(ech.contains(&row(&[(&[0, 1], 3)])));
        assert!(!ech.contains(&row(&[(&[0, 2], 1)])));
    }
}
