//! The group algebra `K[G]` of a finite abelian group over a finite field.
//!
//! Group elements are addressed by their mixed-radix index
//! `c_1 + o_1 (c_2 + o_2 (...))` over the invariant factors `o_1 | o_2 | ...`.
//! Multiplication is available in two forms: [`GroupAlgebraElement::mul_naive`],
//! the quadratic convolution used as a reference, and
//! [`GroupAlgebraElement::mul`], which dispatches to a quasi-linear method:
//!
//! * pointwise products of Fourier images when the field contains a primitive
//!   `e`-th root of unity (`e` the exponent of `G`);
//! * over a prime field without such roots, coefficients are lifted to
//!   integers, multiplied in `Z/p'Z[G]` for an auxiliary prime `p'` that has
//!   all the roots, and reduced back;
//! * over `F_{p^d}`, the `d^2` coordinate products go through the lifted path
//!   with one shared `p'` and are recombined modulo the field modulus.
//!
//! Fourier transforms along each cyclic factor use the chirp (Bluestein)
//! identity, so factor lengths need not be powers of two.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::conv::{prime_congruent_one, unit_coeffs, Convolver};
use crate::error::{Error, Result};
use crate::ff::{Fe, Field};
use crate::linalg::Matrix;

/// Finite abelian group `Z/o_1 x ... x Z/o_I` with `2 <= o_1 | o_2 | ... | o_I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<AbelianGroup> {
        if factors.iter().any(|&o| o < 2) {
            return Err(Error::InvalidGroup(format!("invariant factors must be >= 2, got {factors:?}")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!("{factors:?} is not a divisibility chain")));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o))
            .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        Ok(AbelianGroup { factors, order })
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: Vec::new(), order: 1 }
    }

    pub fn cyclic(n: usize) -> Result<AbelianGroup> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    pub fn invariant_factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> usize {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&o| {
                let c = idx % o;
                idx /= o;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidGroup(format!("{} coordinates for {} factors", coords.len(), self.factors.len())));
        }
        let mut idx = 0;
        for (&c, &o) in coords.iter().zip(&self.factors).rev() {
            if c >= o {
                return Err(Error::OutOfRange(format!("coordinate {c} not below {o}")));
            }
            idx = idx * o + c;
        }
        Ok(idx)
    }

    /// Index of the product `a * b`.
    pub fn op(&self, mut a: usize, mut b: usize) -> usize {
        let (mut idx, mut stride) = (0, 1);
        for &o in &self.factors {
            idx += ((a % o + b % o) % o) * stride;
            a /= o;
            b /= o;
            stride *= o;
        }
        idx
    }

    /// Index of the inverse `a^{-1}`.
    pub fn inverse(&self, mut a: usize) -> usize {
        let (mut idx, mut stride) = (0, 1);
        for &o in &self.factors {
            idx += ((o - a % o) % o) * stride;
            a /= o;
            stride *= o;
        }
        idx
    }

    /// Index of `a * b^{-1}`.
    pub fn op_inv(&self, mut a: usize, mut b: usize) -> usize {
        let (mut idx, mut stride) = (0, 1);
        for &o in &self.factors {
            idx += ((a % o + o - b % o) % o) * stride;
            a /= o;
            b /= o;
            stride *= o;
        }
        idx
    }
}

/// Which multiplication method [`GroupAlgebraElement::mul`] uses for an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulPath {
    Trivial,
    Split,
    Lifted,
    Extension,
}

enum FastPath {
    Trivial,
    Split(FourierPlan),
    /// Algebra over `Z/p'Z` with the same group; used for both lifted paths.
    Lifted { aux: Arc<GroupAlgebra>, bound: u128 },
    Extension { aux: Arc<GroupAlgebra>, bound: u128, x_powers: Vec<Fe> },
}

/// The ring `K[G]`.
pub struct GroupAlgebra {
    field: Arc<Field>,
    group: AbelianGroup,
    fast: OnceLock<std::result::Result<FastPath, Error>>,
}

impl fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{:?}]", self.field, self.group.factors)
    }
}

impl PartialEq for GroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.field == other.field
    }
}

impl Eq for GroupAlgebra {}

impl GroupAlgebra {
    pub fn new(field: Arc<Field>, group: AbelianGroup) -> Arc<GroupAlgebra> {
        Arc::new(GroupAlgebra { field, group, fast: OnceLock::new() })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order
    }

    /// True when `e | q - 1`, i.e. `K[G]` is a product of copies of `K`.
    pub fn is_split(&self) -> bool {
        (self.field.q() - 1).is_multiple_of(self.group.exponent() as u64)
    }

    pub fn zero(self: &Arc<Self>) -> GroupAlgebraElement {
        GroupAlgebraElement { alg: self.clone(), coeffs: vec![Fe::ZERO; self.order()] }
    }

    pub fn one(self: &Arc<Self>) -> GroupAlgebraElement {
        self.basis(0)
    }

    /// The group element with mixed-radix index `idx`, as an algebra element.
    pub fn basis(self: &Arc<Self>, idx: usize) -> GroupAlgebraElement {
        let mut e = self.zero();
        e.coeffs[idx] = Fe::ONE;
        e
    }

    pub fn constant(self: &Arc<Self>, c: Fe) -> GroupAlgebraElement {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Fe>) -> Result<GroupAlgebraElement> {
        if coeffs.len() != self.order() {
            return Err(Error::DimMismatch(format!("{} coefficients for a group of order {}", coeffs.len(), self.order())));
        }
        if let Some(c) = coeffs.iter().find(|c| c.index() >= self.field.q()) {
            return Err(Error::OutOfRange(format!("coefficient index {} not in the field", c.index())));
        }
        Ok(GroupAlgebraElement { alg: self.clone(), coeffs })
    }

    /// Element with prime-subfield coefficients given as integers.
    pub fn from_ints(self: &Arc<Self>, ints: &[i64]) -> Result<GroupAlgebraElement> {
        self.element(ints.iter().map(|&x| self.field.from_i64(x)).collect())
    }

    pub fn random<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> GroupAlgebraElement {
        let coeffs = (0..self.order()).map(|_| self.field.random(rng)).collect();
        GroupAlgebraElement { alg: self.clone(), coeffs }
    }

    fn fast_path(&self) -> Result<&FastPath> {
        self.fast
            .get_or_init(|| self.build_fast_path())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn build_fast_path(&self) -> Result<FastPath> {
        if self.group.is_trivial() {
            return Ok(FastPath::Trivial);
        }
        if self.is_split() {
            let omega = self.field.root_of_unity(self.group.exponent() as u64)?;
            return Ok(FastPath::Split(FourierPlan::new(self.field.clone(), self.group.clone(), omega)?));
        }
        let lift = find_lifting_prime(self.order(), self.group.exponent(), self.field.p())?;
        let aux = GroupAlgebra::new(Field::prime(lift.prime)?, self.group.clone());
        let p = self.field.p() as u128;
        let bound = self.order() as u128 * (p - 1) * (p - 1);
        if self.field.is_prime_field() {
            return Ok(FastPath::Lifted { aux, bound });
        }
        let d = self.field.d();
        let x = self.field.from_coeffs(&unit_coeffs(d, 1))?;
        let x_powers = (0..2 * d - 1).map(|s| self.field.pow(x, s as u128)).collect();
        Ok(FastPath::Extension { aux, bound, x_powers })
    }

    /// The method [`GroupAlgebraElement::mul`] dispatches to.
    pub fn mul_path(&self) -> Result<MulPath> {
        Ok(match self.fast_path()? {
            FastPath::Trivial => MulPath::Trivial,
            FastPath::Split(_) => MulPath::Split,
            FastPath::Lifted { .. } => MulPath::Lifted,
            FastPath::Extension { .. } => MulPath::Extension,
        })
    }

    /// The Fourier plan for split algebras, keyed on the smallest-index generator's root.
    pub fn fourier_plan(&self) -> Result<&FourierPlan> {
        match self.fast_path()? {
            FastPath::Split(plan) => Ok(plan),
            _ => Err(Error::NotSplit),
        }
    }

    /// Serialised element: the list of coefficient serialisations in index order.
    pub fn to_json(&self, a: &GroupAlgebraElement) -> serde_json::Value {
        serde_json::Value::Array(a.coeffs.iter().map(|&c| self.field.to_json(c)).collect())
    }

    pub fn from_json(self: &Arc<Self>, v: &serde_json::Value) -> Result<GroupAlgebraElement> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("group-algebra element must be a list, got {v}")))?;
        if items.len() != self.order() {
            return Err(Error::Parse(format!("element has {} coefficients, group order is {}", items.len(), self.order())));
        }
        let coeffs = items.iter().map(|c| self.field.from_json(c)).collect::<Result<Vec<_>>>()?;
        self.element(coeffs)
    }
}

/// An element `sum_g a_g g` of `K[G]`.
#[derive(Clone)]
pub struct GroupAlgebraElement {
    alg: Arc<GroupAlgebra>,
    coeffs: Vec<Fe>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg)
    }
}

impl Eq for GroupAlgebraElement {}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl GroupAlgebraElement {
    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.alg.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> Fe {
        self.coeffs[idx]
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Fe>) -> GroupAlgebraElement {
        GroupAlgebraElement { alg: self.alg.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &*self.alg.field;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &*self.alg.field;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect()))
    }

    pub fn neg(&self) -> Self {
        let f = &*self.alg.field;
        self.with_coeffs(self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &*self.alg.field;
        self.with_coeffs(self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    /// Multiplication by the group element with index `g` (a coefficient permutation).
    pub fn shift(&self, g: usize) -> Self {
        let grp = &self.alg.group;
        let mut out = vec![Fe::ZERO; self.coeffs.len()];
        for (h, &c) in self.coeffs.iter().enumerate() {
            out[grp.op(g, h)] = c;
        }
        self.with_coeffs(out)
    }

    /// The involution `g -> g^{-1}`.
    pub fn involution(&self) -> Self {
        let grp = &self.alg.group;
        let mut out = vec![Fe::ZERO; self.coeffs.len()];
        for (h, &c) in self.coeffs.iter().enumerate() {
            out[grp.inverse(h)] = c;
        }
        self.with_coeffs(out)
    }

    /// Convolution `c_t = sum_s a_s b_{s^{-1} t}` with `o^2` multiplications.
    pub fn mul_naive(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &*self.alg.field;
        let grp = &self.alg.group;
        let mut out = vec![Fe::ZERO; self.coeffs.len()];
        for (s, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r, &b) in other.coeffs.iter().enumerate() {
                let t = grp.op(s, r);
                out[t] = f.add(out[t], f.mul(a, b));
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// Quasi-linear multiplication; always equal to [`Self::mul_naive`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        match self.alg.fast_path()? {
            FastPath::Trivial => Ok(self.with_coeffs(vec![self.alg.field.mul(self.coeffs[0], other.coeffs[0])])),
            FastPath::Split(plan) => {
                let mut a = self.coeffs.clone();
                let mut b = other.coeffs.clone();
                plan.forward(&mut a);
                plan.forward(&mut b);
                let f = &*self.alg.field;
                for (x, &y) in a.iter_mut().zip(&b) {
                    *x = f.mul(*x, y);
                }
                plan.inverse(&mut a)?;
                Ok(self.with_coeffs(a))
            }
            FastPath::Lifted { aux, bound } => {
                let prod = lifted_product(aux, *bound, &self.coeffs, &other.coeffs)?;
                let f = &*self.alg.field;
                Ok(self.with_coeffs(prod.into_iter().map(|v| f.from_u64(v)).collect()))
            }
            FastPath::Extension { aux, bound, x_powers } => self.mul_extension(aux, *bound, x_powers, other),
        }
    }

    fn mul_extension(&self, aux: &Arc<GroupAlgebra>, bound: u128, x_powers: &[Fe], other: &Self) -> Result<Self> {
        let f = &*self.alg.field;
        let d = f.d();
        let split = |e: &Self| -> Vec<Vec<u64>> {
            let mut comps = vec![vec![0u64; e.coeffs.len()]; d];
            for (g, &c) in e.coeffs.iter().enumerate() {
                for (j, x) in f.coeffs(c).into_iter().enumerate() {
                    comps[j][g] = x;
                }
            }
            comps
        };
        let plan = aux.fourier_plan()?;
        let af = &*aux.field;
        let to_hat = |comps: Vec<Vec<u64>>| -> Vec<Vec<Fe>> {
            comps
                .into_iter()
                .map(|c| {
                    let mut v: Vec<Fe> = c.into_iter().map(|x| af.from_u64(x)).collect();
                    plan.forward(&mut v);
                    v
                })
                .collect()
        };
        let (a_hat, b_hat) = (to_hat(split(self)), to_hat(split(other)));
        // slot s holds sum_{j+l=s} a_j b_l reduced mod p
        let mut slots = vec![vec![Fe::ZERO; self.coeffs.len()]; 2 * d - 1];
        for j in 0..d {
            for l in 0..d {
                let mut prod: Vec<Fe> = a_hat[j].iter().zip(&b_hat[l]).map(|(&x, &y)| af.mul(x, y)).collect();
                plan.inverse(&mut prod)?;
                for (slot, v) in slots[j + l].iter_mut().zip(prod) {
                    *slot = f.add(*slot, f.from_u64(reduce_lift(v, bound)?));
                }
            }
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len()];
        for (s, slot) in slots.iter().enumerate() {
            for (o, &v) in out.iter_mut().zip(slot) {
                *o = f.add(*o, f.mul(v, x_powers[s]));
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// Inverse in `K[G]`, or `DivisionByZero` when the element is not a unit.
    pub fn inverse(&self) -> Result<Self> {
        let reg = self.regular_matrix();
        let mut e = vec![Fe::ZERO; self.coeffs.len()];
        e[0] = Fe::ONE;
        match reg.solve(&e) {
            Ok(x) => Ok(self.with_coeffs(x)),
            Err(Error::Inconsistent) => Err(Error::DivisionByZero),
            Err(err) => Err(err),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.regular_matrix().rank() == self.coeffs.len()
    }

    /// Matrix of `b -> a b` in the group basis: entry `[g, h] = a_{g h^{-1}}`.
    pub fn regular_matrix(&self) -> Matrix {
        let n = self.coeffs.len();
        let grp = &self.alg.group;
        let mut m = Matrix::zeros(self.alg.field.clone(), n, n);
        for g in 0..n {
            for h in 0..n {
                m.set(g, h, self.coeffs[grp.op_inv(g, h)]);
            }
        }
        m
    }
}

/// Lifts two `Z/pZ[G]` coefficient vectors into `aux = Z/p'Z[G]`, multiplies
/// there and returns the exact integer coefficients of the product.
fn lifted_product(aux: &Arc<GroupAlgebra>, bound: u128, a: &[Fe], b: &[Fe]) -> Result<Vec<u64>> {
    let af = &*aux.field;
    let plan = aux.fourier_plan()?;
    let mut x: Vec<Fe> = a.iter().map(|c| af.from_u64(c.index())).collect();
    let mut y: Vec<Fe> = b.iter().map(|c| af.from_u64(c.index())).collect();
    plan.forward(&mut x);
    plan.forward(&mut y);
    for (u, &v) in x.iter_mut().zip(&y) {
        *u = af.mul(*u, v);
    }
    plan.inverse(&mut x)?;
    x.into_iter().map(|v| reduce_lift(v, bound)).collect()
}

fn reduce_lift(v: Fe, bound: u128) -> Result<u64> {
    if v.index() as u128 > bound {
        return Err(Error::LiftOutOfRange { value: v.index(), bound });
    }
    Ok(v.index())
}

/// Auxiliary prime for the lifted multiplication path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftingPrime {
    pub prime: u64,
    /// Smallest power of two strictly greater than `3e - 3`.
    pub t: u64,
    /// `o (p - 1)^2 t`; the prime is the smallest one congruent to 1 modulo this.
    pub modulus: u128,
}

/// Smallest prime `p' ≡ 1 (mod o (p-1)^2 t)`, `t` the smallest power of two above `3e - 3`.
pub fn find_lifting_prime(order: usize, exponent: usize, p: u64) -> Result<LiftingPrime> {
    let threshold = (3 * exponent).saturating_sub(3) as u64;
    let mut t = 1u64;
    while t <= threshold {
        t <<= 1;
    }
    let modulus = order as u128 * (p as u128 - 1).pow(2) * t as u128;
    if modulus >= crate::ff::MAX_FIELD_SIZE as u128 {
        return Err(Error::FieldTooLarge(format!("lifting modulus {modulus}")));
    }
    let prime = prime_congruent_one(modulus as u64, 0, 1_000_000_000)?;
    Ok(LiftingPrime { prime, t, modulus })
}

/// Multiplication through the auxiliary prime field; requires a prime field.
pub fn ga_mul_lifted(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    a.check(b)?;
    let alg = &a.alg;
    if !alg.field.is_prime_field() {
        return Err(Error::NotPrimeField);
    }
    if alg.group.is_trivial() {
        return a.mul(b);
    }
    let lift = find_lifting_prime(alg.order(), alg.group.exponent(), alg.field.p())?;
    let aux = GroupAlgebra::new(Field::prime(lift.prime)?, alg.group.clone());
    let p = alg.field.p() as u128;
    let prod = lifted_product(&aux, alg.order() as u128 * (p - 1) * (p - 1), &a.coeffs, &b.coeffs)?;
    Ok(a.with_coeffs(prod.into_iter().map(|v| alg.field.from_u64(v)).collect()))
}

/// Transform of one cyclic factor of order `n` by the chirp identity:
/// `out_j = sum_i w^{ij} m_i`, with `beta_i = w^{i(i-1)/2}`.
#[derive(Debug, Clone)]
pub struct CyclicPlan {
    field: Arc<Field>,
    n: usize,
    omega: Fe,
    beta_inv: Vec<Fe>,
    conv: Convolver,
}

impl CyclicPlan {
    pub fn new(field: Arc<Field>, n: usize, omega: Fe) -> Result<CyclicPlan> {
        let actual = field.element_order(omega)?;
        if actual != n as u64 {
            return Err(Error::BadRootOrder { expected: n as u64, actual });
        }
        let f = &*field;
        let mut beta = Vec::with_capacity(2 * n - 1);
        let (mut b, mut w_i) = (Fe::ONE, Fe::ONE);
        for _ in 0..2 * n - 1 {
            beta.push(b);
            // beta_{i+1} = beta_i * w^i
            b = f.mul(b, w_i);
            w_i = f.mul(w_i, omega);
        }
        let beta_inv = beta[..n].iter().map(|&x| f.inv(x)).collect::<Result<Vec<_>>>()?;
        let conv = Convolver::new(field.clone(), beta, n)?;
        Ok(CyclicPlan { field, n, omega, beta_inv, conv })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn omega(&self) -> Fe {
        self.omega
    }

    pub fn apply(&self, m: &[Fe]) -> Vec<Fe> {
        let f = &*self.field;
        let n = self.n;
        let reversed: Vec<Fe> = (0..n).map(|j| f.mul(self.beta_inv[n - 1 - j], m[n - 1 - j])).collect();
        let r = self.conv.mul(&reversed);
        (0..n).map(|i| f.mul(self.beta_inv[i], r[n - 1 + i])).collect()
    }
}

/// Cyclic DFT `out_j = sum_i w^{ij} m_i`, `w` of exact order `m.len()`.
pub fn ft_cyclic(field: &Arc<Field>, m: &[Fe], omega: Fe) -> Result<Vec<Fe>> {
    if m.len() <= 1 {
        let actual = field.element_order(omega)?;
        if actual != 1 {
            return Err(Error::BadRootOrder { expected: 1, actual });
        }
        return Ok(m.to_vec());
    }
    Ok(CyclicPlan::new(field.clone(), m.len(), omega)?.apply(m))
}

/// Precomputed Fourier transform of `K[G]` for one chosen primitive `e`-th root `w`.
/// The character with index `(k_1, ..., k_I)` sends the `i`-th generator to
/// `w_i^{k_i}` with `w_i = w^{e / o_i}`.
#[derive(Debug, Clone)]
pub struct FourierPlan {
    field: Arc<Field>,
    group: AbelianGroup,
    omega: Fe,
    axes: Vec<CyclicPlan>,
}

impl FourierPlan {
    pub fn new(field: Arc<Field>, group: AbelianGroup, omega: Fe) -> Result<FourierPlan> {
        let e = group.exponent();
        let actual = field.element_order(omega)?;
        if actual != e as u64 {
            return Err(Error::BadRootOrder { expected: e as u64, actual });
        }
        let axes = group
            .factors
            .iter()
            .map(|&o| CyclicPlan::new(field.clone(), o, field.pow(omega, (e / o) as u128)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FourierPlan { field, group, omega, axes })
    }

    pub fn omega(&self) -> Fe {
        self.omega
    }

    /// In place: coefficients in group order become values in character order.
    pub fn forward(&self, data: &mut [Fe]) {
        let total = self.group.order;
        let mut stride = 1;
        let mut fiber = Vec::new();
        for plan in &self.axes {
            let o = plan.len();
            let block = stride * o;
            for outer in (0..total).step_by(block) {
                for inner in 0..stride {
                    fiber.clear();
                    fiber.extend((0..o).map(|c| data[outer + inner + c * stride]));
                    for (c, v) in plan.apply(&fiber).into_iter().enumerate() {
                        data[outer + inner + c * stride] = v;
                    }
                }
            }
            stride = block;
        }
    }

    /// In place inverse of [`Self::forward`]: dual transform, scale by `1/o`, involution.
    pub fn inverse(&self, data: &mut [Fe]) -> Result<()> {
        let f = &*self.field;
        self.forward(data);
        let scale = f.inv(f.from_u64(self.group.order as u64)).map_err(|_| Error::OrderDividesCharacteristic {
            order: self.group.order,
            p: f.p(),
        })?;
        let mut out = vec![Fe::ZERO; data.len()];
        for (g, &v) in data.iter().enumerate() {
            out[self.group.inverse(g)] = f.mul(v, scale);
        }
        data.copy_from_slice(&out);
        Ok(())
    }
}

/// Values of an element at every character, with the root that fixes the indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierImage {
    pub algebra: Arc<GroupAlgebra>,
    pub omega: Fe,
    pub values: Vec<Fe>,
}

/// `values[chi] = sum_g a_g chi(g)` for the characters indexed by `omega`.
pub fn ft_group(a: &GroupAlgebraElement, omega: Fe) -> Result<FourierImage> {
    let alg = &a.alg;
    let plan = FourierPlan::new(alg.field.clone(), alg.group.clone(), omega)?;
    let mut values = a.coeffs.clone();
    plan.forward(&mut values);
    Ok(FourierImage { algebra: alg.clone(), omega, values })
}

pub fn ft_inverse(image: &FourierImage) -> Result<GroupAlgebraElement> {
    let alg = &image.algebra;
    let p = alg.field.p();
    if (alg.order() as u64).is_multiple_of(p) {
        return Err(Error::OrderDividesCharacteristic { order: alg.order(), p });
    }
    if image.values.len() != alg.order() {
        return Err(Error::DimMismatch(format!("{} values for a group of order {}", image.values.len(), alg.order())));
    }
    let plan = FourierPlan::new(alg.field.clone(), alg.group.clone(), image.omega)?;
    let mut data = image.values.clone();
    plan.inverse(&mut data)?;
    alg.element(data)
}
