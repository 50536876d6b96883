//! Randomised black-box linear algebra: Berlekamp–Massey and Wiedemann
//! kernel sampling / solving, plus a dense elimination oracle.
//!
//! A system `A x = b` is solved by sampling the kernel of `[A | -b]` and
//! rescaling a kernel vector whose last coordinate is nonzero. Kernel sampling
//! works on the square operator `B = R [A] D` (`R` a random dense mixing
//! matrix, `D` a random nonsingular diagonal): from the minimal polynomial
//! `x^k g(x)` of a Krylov sequence, `g(B) v` lies in the generalised null
//! space, and iterating `B` on it ends in a kernel vector.
//!
//! Over fields with fewer than 16 elements the sampling runs over an
//! extension `F_{q^l}` and the result is projected back. Every returned vector
//! is checked with a fresh application of the operator.

use std::cell::Cell;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{Fe, Field};
use crate::linalg::Matrix;

/// Default number of attempts before a solve is reported as failed.
pub const DEFAULT_MAX_ATTEMPTS: usize = 40;

/// Fields smaller than this are handled through an extension.
pub const SMALL_FIELD: u64 = 16;

/// A linear map `K^cols -> K^rows` available only through its action.
pub trait BlackBox {
    fn field(&self) -> &Arc<Field>;
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn apply(&self, x: &[Fe]) -> Vec<Fe>;
}

impl BlackBox for Matrix {
    fn field(&self) -> &Arc<Field> {
        Matrix::field(self)
    }

    fn rows(&self) -> usize {
        Matrix::rows(self)
    }

    fn cols(&self) -> usize {
        Matrix::cols(self)
    }

    fn apply(&self, x: &[Fe]) -> Vec<Fe> {
        self.mul_vec(x).expect("operand length matches the column count")
    }
}

/// A black box defined by a closure.
pub struct FnOperator<F> {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    f: F,
}

impl<F: Fn(&[Fe]) -> Vec<Fe>> FnOperator<F> {
    pub fn new(field: Arc<Field>, rows: usize, cols: usize, f: F) -> Self {
        FnOperator { field, rows, cols, f }
    }
}

impl<F: Fn(&[Fe]) -> Vec<Fe>> BlackBox for FnOperator<F> {
    fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn apply(&self, x: &[Fe]) -> Vec<Fe> {
        (self.f)(x)
    }
}

/// Wraps an operator and counts its applications.
pub struct Counted<'a> {
    inner: &'a dyn BlackBox,
    calls: Cell<u64>,
}

impl<'a> Counted<'a> {
    pub fn new(inner: &'a dyn BlackBox) -> Self {
        Counted { inner, calls: Cell::new(0) }
    }

    pub fn calls(&self) -> u64 {
        self.calls.get()
    }
}

impl BlackBox for Counted<'_> {
    fn field(&self) -> &Arc<Field> {
        self.inner.field()
    }

    fn rows(&self) -> usize {
        self.inner.rows()
    }

    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn apply(&self, x: &[Fe]) -> Vec<Fe> {
        self.calls.set(self.calls.get() + 1);
        self.inner.apply(x)
    }
}

/// A sequence together with its minimal recurrence, once computed.
#[derive(Clone, Debug)]
pub struct BMSequence {
    pub field: Arc<Field>,
    pub terms: Vec<Fe>,
    min_poly: Option<Vec<Fe>>,
}

impl BMSequence {
    pub fn new(field: Arc<Field>, terms: Vec<Fe>) -> Self {
        BMSequence { field, terms, min_poly: None }
    }

    pub fn minimal_polynomial(&mut self) -> &[Fe] {
        if self.min_poly.is_none() {
            self.min_poly = Some(berlekamp_massey(&self.field, &self.terms));
        }
        self.min_poly.as_deref().unwrap()
    }

    /// True when `sum_i c_i s_{j+i} = 0` for every window of the sequence.
    pub fn annihilated_by(&self, poly: &[Fe]) -> bool {
        let f = &*self.field;
        let deg = poly.len().saturating_sub(1);
        (0..self.terms.len().saturating_sub(deg)).all(|j| {
            poly.iter().enumerate().fold(Fe::ZERO, |acc, (i, &c)| f.add(acc, f.mul(c, self.terms[j + i]))).is_zero()
        })
    }
}

/// Monic minimal recurrence polynomial, coefficients from low to high degree:
/// `sum_i f_i s_{j+i} = 0`. The all-zero sequence gives `1`.
pub fn berlekamp_massey(field: &Field, seq: &[Fe]) -> Vec<Fe> {
    let f = field;
    // connection polynomial c(x) = 1 + c_1 x + ... + c_L x^L
    let mut c = vec![Fe::ONE];
    let mut b = vec![Fe::ONE];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_disc = Fe::ONE;
    for n in 0..seq.len() {
        let mut disc = seq[n];
        for i in 1..=l.min(c.len() - 1) {
            disc = f.add(disc, f.mul(c[i], seq[n - i]));
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let coef = f.div(disc, last_disc).expect("previous discrepancy is nonzero");
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Fe::ZERO);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = f.sub(c[i + shift], f.mul(coef, bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_disc = disc;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(l + 1, Fe::ZERO);
    c.reverse();
    c
}

/// Outcome of a successful black-box computation.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Vec<Fe>,
    /// Attempts used, including the successful one.
    pub attempts: usize,
    /// Operator applications over all attempts.
    pub calls: u64,
    /// Applications in each attempt.
    pub calls_per_attempt: Vec<u64>,
    /// Degree of the Krylov minimal polynomial in each attempt.
    pub degrees: Vec<usize>,
    /// Degree of the extension the sampling ran in (1 for the base field).
    pub extension_degree: usize,
}

impl SolveReport {
    /// Whether every attempt respected `calls <= l (3n + 2 deg)` for square side `n`.
    pub fn within_call_bound(&self, n: usize) -> bool {
        self.calls_per_attempt
            .iter()
            .zip(&self.degrees)
            .all(|(&c, &deg)| c <= (self.extension_degree * (3 * n + 2 * deg)) as u64)
    }
}

/// The extension an operator is sampled over, with the embedding of the base field.
struct Lift {
    ext: Arc<Field>,
    degree: usize,
    /// Image of each base element, by index.
    embed: Vec<Fe>,
    /// Coordinates over the base field of each extension element, in the basis `theta^j`.
    coords: Vec<Vec<Fe>>,
    /// `theta^j` for `j < degree`.
    basis: Vec<Fe>,
}

impl Lift {
    fn new(base: &Arc<Field>) -> Result<Lift> {
        let q = base.q();
        let mut degree = 1;
        while q.pow(degree as u32) < SMALL_FIELD {
            degree += 1;
        }
        let (p, d) = (base.p(), base.d());
        let ext = Field::new(p, d * degree, None)?;
        // a root of the base modulus fixes the embedding
        let root = if d == 1 {
            Fe::ONE
        } else {
            let m = base.modulus();
            ext.elements()
                .find(|&r| {
                    m.iter().rev().fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, r), ext.from_u64(c))).is_zero()
                })
                .ok_or_else(|| Error::NoSuchRoot { order: d as u64, q: ext.q() })?
        };
        let embed: Vec<Fe> = base
            .elements()
            .map(|a| {
                base.coeffs(a)
                    .iter()
                    .rev()
                    .fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, root), ext.from_u64(c)))
            })
            .collect();
        let theta = ext.primitive_element();
        let basis: Vec<Fe> = (0..degree).map(|j| ext.pow(theta, j as u128)).collect();
        let mut coords = vec![Vec::new(); ext.q() as usize];
        let total = q.pow(degree as u32);
        for code in 0..total {
            let mut digits = Vec::with_capacity(degree);
            let mut rest = code;
            let mut value = Fe::ZERO;
            for &b in &basis {
                let c = Fe(rest % q);
                rest /= q;
                digits.push(c);
                value = ext.add(value, ext.mul(embed[c.index() as usize], b));
            }
            coords[value.index() as usize] = digits;
        }
        debug_assert!(coords.iter().all(|c| c.len() == degree));
        Ok(Lift { ext, degree, embed, coords, basis })
    }

    fn up(&self, x: &[Fe]) -> Vec<Fe> {
        x.iter().map(|a| self.embed[a.index() as usize]).collect()
    }

    /// Coordinate `j` (over the base field) of an extension vector.
    fn component(&self, x: &[Fe], j: usize) -> Vec<Fe> {
        x.iter().map(|a| self.coords[a.index() as usize][j]).collect()
    }

    /// `A x` for an extension vector, using `degree` base applications.
    fn apply(&self, op: &dyn BlackBox, x: &[Fe]) -> Vec<Fe> {
        let e = &*self.ext;
        let mut out = vec![Fe::ZERO; op.rows()];
        for (j, &b) in self.basis.iter().enumerate() {
            let part = self.component(x, j);
            if part.iter().all(|c| c.is_zero()) {
                continue;
            }
            for (o, y) in out.iter_mut().zip(self.up(&op.apply(&part))) {
                *o = e.add(*o, e.mul(b, y));
            }
        }
        out
    }
}

/// `[A | -b]` as a black box.
struct Homogenized<'a> {
    inner: &'a dyn BlackBox,
    neg_b: Vec<Fe>,
}

impl BlackBox for Homogenized<'_> {
    fn field(&self) -> &Arc<Field> {
        self.inner.field()
    }

    fn rows(&self) -> usize {
        self.inner.rows()
    }

    fn cols(&self) -> usize {
        self.inner.cols() + 1
    }

    fn apply(&self, x: &[Fe]) -> Vec<Fe> {
        let n = self.inner.cols();
        let f = self.field().clone();
        let mut y = self.inner.apply(&x[..n]);
        if !x[n].is_zero() {
            for (yi, &bi) in y.iter_mut().zip(&self.neg_b) {
                *yi = f.add(*yi, f.mul(bi, x[n]));
            }
        }
        y
    }
}

struct Attempt {
    vector: Option<Vec<Fe>>,
    degree: usize,
}

/// One kernel-sampling attempt over `field` for an operator given by `apply`.
fn sample_kernel(
    field: &Field,
    rows: usize,
    cols: usize,
    apply: &dyn Fn(&[Fe]) -> Vec<Fe>,
    rng: &mut ChaCha8Rng,
) -> Attempt {
    let f = field;
    let n = cols;
    let diag: Vec<Fe> = (0..n).map(|_| f.random_nonzero(rng)).collect();
    let mix: Vec<Fe> = (0..n * rows).map(|_| f.random(rng)).collect();
    let b_apply = |x: &[Fe]| -> Vec<Fe> {
        let dx: Vec<Fe> = x.iter().zip(&diag).map(|(&a, &d)| f.mul(a, d)).collect();
        let ax = apply(&dx);
        (0..n)
            .map(|i| {
                mix[i * rows..(i + 1) * rows]
                    .iter()
                    .zip(&ax)
                    .fold(Fe::ZERO, |acc, (&r, &a)| if a.is_zero() { acc } else { f.add(acc, f.mul(r, a)) })
            })
            .collect()
    };
    let u: Vec<Fe> = (0..n).map(|_| f.random(rng)).collect();
    let v: Vec<Fe> = (0..n).map(|_| f.random(rng)).collect();
    let dot = |a: &[Fe], b: &[Fe]| a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));

    let mut seq = Vec::with_capacity(2 * n);
    let mut w = v.clone();
    seq.push(dot(&u, &w));
    for _ in 1..2 * n {
        w = b_apply(&w);
        seq.push(dot(&u, &w));
    }
    let poly = berlekamp_massey(f, &seq);
    let degree = poly.len() - 1;
    let k = poly.iter().take_while(|c| c.is_zero()).count();
    let g = &poly[k..];
    // Horner: w = g(B) v
    let mut w = vec![Fe::ZERO; n];
    for (i, &c) in g.iter().enumerate().rev() {
        if i + 1 < g.len() {
            w = b_apply(&w);
        }
        for (wi, &vi) in w.iter_mut().zip(&v) {
            *wi = f.add(*wi, f.mul(c, vi));
        }
    }
    if w.iter().all(|x| x.is_zero()) {
        return Attempt { vector: None, degree };
    }
    for _ in 0..=k {
        let next = b_apply(&w);
        if next.iter().all(|x| x.is_zero()) {
            let y = w.iter().zip(&diag).map(|(&a, &d)| f.mul(a, d)).collect();
            return Attempt { vector: Some(y), degree };
        }
        w = next;
    }
    Attempt { vector: None, degree }
}

fn is_zero(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Samples a nonzero kernel vector of `op`, verified by one more application.
pub fn wiedemann_kernel_sample(op: &dyn BlackBox, seed: u64, max_attempts: usize) -> Result<SolveReport> {
    kernel_with(op, seed, max_attempts, |_| true)
}

/// Kernel sampling with an acceptance predicate on the (base-field) vector.
fn kernel_with(
    op: &dyn BlackBox,
    seed: u64,
    max_attempts: usize,
    accept: impl Fn(&[Fe]) -> bool,
) -> Result<SolveReport> {
    let counted = Counted::new(op);
    let base = op.field().clone();
    let lift = if base.q() < SMALL_FIELD { Some(Lift::new(&base)?) } else { None };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut calls_per_attempt = Vec::new();
    let mut degrees = Vec::new();
    for attempt in 1..=max_attempts {
        let before = counted.calls();
        let (candidate, degree) = match &lift {
            None => {
                let apply = |x: &[Fe]| counted.apply(x);
                let a = sample_kernel(&base, op.rows(), op.cols(), &apply, &mut rng);
                (a.vector, a.degree)
            }
            Some(lift) => {
                let apply = |x: &[Fe]| lift.apply(&counted, x);
                let a = sample_kernel(&lift.ext, op.rows(), op.cols(), &apply, &mut rng);
                // every base coordinate of an extension kernel vector is a kernel vector
                let v = a.vector.and_then(|v| {
                    (0..lift.degree).map(|j| lift.component(&v, j)).find(|c| !is_zero(c) && accept(c))
                });
                (v, a.degree)
            }
        };
        let verified = candidate.filter(|v| !is_zero(v) && accept(v) && is_zero(&counted.apply(v)));
        calls_per_attempt.push(counted.calls() - before);
        degrees.push(degree);
        if let Some(solution) = verified {
            return Ok(SolveReport {
                solution,
                attempts: attempt,
                calls: counted.calls(),
                calls_per_attempt,
                degrees,
                extension_degree: lift.as_ref().map_or(1, |l| l.degree),
            });
        }
    }
    Err(Error::SolverFailed(max_attempts))
}

/// Solves `A x = b`; the returned `x` satisfies it exactly (checked by one application).
pub fn wiedemann_solve(op: &dyn BlackBox, b: &[Fe], seed: u64, max_attempts: usize) -> Result<SolveReport> {
    if b.len() != op.rows() {
        return Err(Error::DimMismatch(format!("right-hand side of length {} for {} rows", b.len(), op.rows())));
    }
    let f = op.field().clone();
    let n = op.cols();
    let counted = Counted::new(op);
    let hom = Homogenized { inner: &counted, neg_b: b.iter().map(|&x| f.neg(x)).collect() };
    let mut report = kernel_with(&hom, seed, max_attempts, |v| !v[n].is_zero())?;
    let scale = f.inv(report.solution[n])?;
    let x: Vec<Fe> = report.solution[..n].iter().map(|&a| f.mul(a, scale)).collect();
    if counted.apply(&x) != b {
        return Err(Error::SolverFailed(report.attempts));
    }
    report.solution = x;
    report.calls = counted.calls();
    Ok(report)
}

/// Dense oracle: some solution of `A x = b`.
pub fn dense_solve(a: &Matrix, b: &[Fe]) -> Result<Vec<Fe>> {
    a.solve(b)
}

/// Dense oracle: a basis of `{x : A x = 0}`.
pub fn dense_kernel(a: &Matrix) -> Vec<Vec<Fe>> {
    a.kernel()
}

/// Random matrix with entries drawn from `rng`; a convenience for tests and benchmarks.
pub fn random_matrix<R: Rng + ?Sized>(field: &Arc<Field>, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows * cols).map(|_| field.random(rng)).collect();
    Matrix::from_vec(field.clone(), rows, cols, data).expect("sizes match")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &Field, xs: &[i64]) -> Vec<Fe> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn berlekamp_massey_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(berlekamp_massey(&f5, &ints(&f5, &[1, 1, 1, 1])), ints(&f5, &[-1, 1]));
        assert_eq!(berlekamp_massey(&f5, &[Fe::ZERO; 6]), vec![Fe::ONE]);

        let f13 = Field::prime(13).unwrap();
        let mut fib = vec![Fe::ZERO, Fe::ONE];
        while fib.len() < 8 {
            let n = fib.len();
            fib.push(f13.add(fib[n - 1], fib[n - 2]));
        }
        let mut s = BMSequence::new(f13.clone(), fib);
        let poly = s.minimal_polynomial().to_vec();
        assert_eq!(poly, ints(&f13, &[-1, -1, 1]));
        assert!(s.annihilated_by(&poly));
    }

    #[test]
    fn berlekamp_massey_finds_shortest_recurrence() {
        let f = Field::prime(257).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for deg in 1..8 {
            // a random recurrence of degree `deg`, 2*deg + 4 terms
            let rec: Vec<Fe> = (0..deg).map(|_| f.random(&mut rng)).collect();
            let mut s: Vec<Fe> = (0..deg).map(|_| f.random(&mut rng)).collect();
            while s.len() < 2 * deg + 4 {
                let n = s.len();
                let next = (0..deg).fold(Fe::ZERO, |acc, i| f.add(acc, f.mul(rec[i], s[n - deg + i])));
                s.push(next);
            }
            let seq = BMSequence::new(f.clone(), s.clone());
            let poly = berlekamp_massey(&f, &s);
            assert!(poly.len() - 1 <= deg);
            assert!(seq.annihilated_by(&poly));
            assert_eq!(*poly.last().unwrap(), Fe::ONE);
        }
    }

    #[test]
    fn solve_identity_and_zero() {
        let f = Field::prime(13).unwrap();
        let id = Matrix::identity(f.clone(), 6);
        let b = ints(&f, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(wiedemann_solve(&id, &b, 0, DEFAULT_MAX_ATTEMPTS).unwrap().solution, b);
        let zero = Matrix::zeros(f.clone(), 6, 6);
        assert_eq!(wiedemann_solve(&zero, &b, 0, 10).unwrap_err(), Error::SolverFailed(10));
    }

    #[test]
    fn solve_random_systems_against_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for field in [Field::prime(13).unwrap(), Field::prime(257).unwrap(), Field::new(3, 2, None).unwrap()] {
            let a = random_matrix(&field, 30, 30, &mut rng);
            let x0: Vec<Fe> = (0..30).map(|_| field.random(&mut rng)).collect();
            let b = a.mul_vec(&x0).unwrap();
            let report = wiedemann_solve(&a, &b, 7, DEFAULT_MAX_ATTEMPTS).unwrap();
            assert_eq!(a.mul_vec(&report.solution).unwrap(), b);
            let dense = dense_solve(&a, &b).unwrap();
            assert_eq!(a.mul_vec(&dense).unwrap(), b);
            assert!(report.within_call_bound(31), "{report:?}");
        }
    }

    #[test]
    fn singular_systems_over_small_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::new(2, 2, None).unwrap()] {
            // rank 8 of 12
            let l = random_matrix(&field, 12, 8, &mut rng);
            let r = random_matrix(&field, 8, 12, &mut rng);
            let a = l.mul(&r).unwrap();
            let x0: Vec<Fe> = (0..12).map(|_| field.random(&mut rng)).collect();
            let b = a.mul_vec(&x0).unwrap();
            let report = wiedemann_solve(&a, &b, 11, DEFAULT_MAX_ATTEMPTS).unwrap();
            assert_eq!(a.mul_vec(&report.solution).unwrap(), b);
            assert!(report.extension_degree > 1);
            let k = wiedemann_kernel_sample(&a, 5, DEFAULT_MAX_ATTEMPTS).unwrap();
            assert!(!is_zero(&k.solution));
            assert!(is_zero(&a.mul_vec(&k.solution).unwrap()));
        }
    }

    #[test]
    fn kernel_of_rank_deficiency_one() {
        let f = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l = random_matrix(&f, 10, 9, &mut rng);
        let r = random_matrix(&f, 9, 10, &mut rng);
        let a = l.mul(&r).unwrap();
        let basis = dense_kernel(&a);
        assert_eq!(basis.len(), 1);
        let k = wiedemann_kernel_sample(&a, 1, DEFAULT_MAX_ATTEMPTS).unwrap().solution;
        // proportional to the oracle generator
        let (i, &c) = basis[0].iter().enumerate().find(|(_, c)| !c.is_zero()).unwrap();
        let ratio = f.div(k[i], c).unwrap();
        assert!(!ratio.is_zero());
        assert_eq!(k, basis[0].iter().map(|&x| f.mul(x, ratio)).collect::<Vec<_>>());
    }

    #[test]
    fn kernel_of_invertible_and_zero() {
        let f = Field::prime(97).unwrap();
        let id = Matrix::identity(f.clone(), 5);
        assert_eq!(wiedemann_kernel_sample(&id, 0, 5).unwrap_err(), Error::SolverFailed(5));
        let zero = Matrix::zeros(f.clone(), 3, 5);
        let k = wiedemann_kernel_sample(&zero, 0, 5).unwrap();
        assert!(!is_zero(&k.solution));
    }

    #[test]
    fn non_square_operators() {
        let f = Field::prime(31).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let wide = random_matrix(&f, 4, 9, &mut rng);
        let k = wiedemann_kernel_sample(&wide, 2, DEFAULT_MAX_ATTEMPTS).unwrap().solution;
        assert!(is_zero(&wide.mul_vec(&k).unwrap()));
        let tall = random_matrix(&f, 12, 5, &mut rng);
        let x0: Vec<Fe> = (0..5).map(|_| f.random(&mut rng)).collect();
        let b = tall.mul_vec(&x0).unwrap();
        assert_eq!(wiedemann_solve(&tall, &b, 3, DEFAULT_MAX_ATTEMPTS).unwrap().solution, x0);
    }

    #[test]
    fn inconsistent_system_fails_on_both_paths() {
        let f = Field::prime(17).unwrap();
        let a = Matrix::from_rows(f.clone(), &[ints(&f, &[1, 1]), ints(&f, &[2, 2])]).unwrap();
        let b = ints(&f, &[1, 3]);
        assert_eq!(dense_solve(&a, &b), Err(Error::Inconsistent));
        assert!(wiedemann_solve(&a, &b, 0, 8).is_err());
    }

    #[test]
    fn closure_operator_and_linearity() {
        let f = Field::prime(13).unwrap();
        let f2 = f.clone();
        // cyclic shift plus doubling
        let op = FnOperator::new(f.clone(), 4, 4, move |x: &[Fe]| {
            (0..4).map(|i| f2.add(x[(i + 1) % 4], f2.add(x[i], x[i]))).collect()
        });
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x: Vec<Fe> = (0..4).map(|_| f.random(&mut rng)).collect();
        let y: Vec<Fe> = (0..4).map(|_| f.random(&mut rng)).collect();
        let c = f.random(&mut rng);
        let sum: Vec<Fe> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
        let lhs = op.apply(&sum);
        let rhs: Vec<Fe> = op.apply(&x).iter().zip(op.apply(&y)).map(|(&a, b)| f.add(a, b)).collect();
        assert_eq!(lhs, rhs);
        let cx: Vec<Fe> = x.iter().map(|&a| f.mul(c, a)).collect();
        assert_eq!(op.apply(&cx), op.apply(&x).iter().map(|&a| f.mul(c, a)).collect::<Vec<_>>());
        let b = op.apply(&x);
        assert_eq!(op.apply(&wiedemann_solve(&op, &b, 0, DEFAULT_MAX_ATTEMPTS).unwrap().solution), b);
    }
}
