//! Exact arithmetic in prime fields `Z/pZ` and extension fields `F_{p^d}`.
//!
//! Elements are small `Copy` handles ([`Fe`]) whose meaning is given by a
//! [`Field`] context. An element of `F_{p^d}` is the polynomial
//! `c_0 + c_1 x + ... + c_{d-1} x^{d-1}` modulo the field modulus, and its
//! handle is the base-`p` integer `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`.
//! In particular `Fe(0)` is zero and `Fe(1)` is one in every field.
//!
//! Every arithmetic call increments a thread-local operation counter
//! (see [`opcount`]) so algorithms can be audited for their operation counts.

use std::cell::Cell;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported field cardinality.
pub const MAX_FIELD_SIZE: u64 = 1 << 62;

const MAX_DEGREE: usize = 64;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

/// Thread-local count of field operations (add, sub, neg, mul, inv).
pub mod opcount {
    use super::OPS;

    pub fn reset() {
        OPS.with(|c| c.set(0));
    }

    pub fn get() -> u64 {
        OPS.with(|c| c.get())
    }

    /// Runs `f` and returns its result together with the number of field
    /// operations it performed on this thread.
    pub fn measure<T>(f: impl FnOnce() -> T) -> (T, u64) {
        let before = get();
        let out = f();
        (out, get() - before)
    }
}

#[inline(always)]
fn tick() {
    OPS.with(|c| c.set(c.get() + 1));
}

/// A field element handle. Only meaningful together with its [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// The canonical integer index of the element in `[0, q)`.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field `F_{p^d}` in polynomial basis.
pub struct Field {
    p: u64,
    d: usize,
    modulus: Vec<u64>,
    q: u64,
    /// Distinct prime factors of `q - 1`.
    unit_primes: Vec<u64>,
    generator: OnceLock<Fe>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.p, self.d, self.modulus)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_{p^d}`. When `modulus` is `None` a monic irreducible
    /// polynomial is found by a random search seeded with `0`.
    pub fn new(p: u64, d: usize, modulus: Option<Vec<u64>>) -> Result<Arc<Field>> {
        Self::with_seed(p, d, modulus, 0)
    }

    /// The prime field `Z/pZ`.
    pub fn prime(p: u64) -> Result<Arc<Field>> {
        Self::new(p, 1, None)
    }

    /// Like [`Field::new`] with an explicit seed for the modulus search.
    pub fn with_seed(p: u64, d: usize, modulus: Option<Vec<u64>>, seed: u64) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::CompositeP(p));
        }
        if d == 0 {
            return Err(Error::DegreeMismatch("extension degree must be at least 1".into()));
        }
        let q = checked_pow(p, d)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{d}")))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d + 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "modulus has {} coefficients, expected {}",
                        m.len(),
                        d + 1
                    )));
                }
                if m[d] != 1 {
                    return Err(Error::DegreeMismatch("modulus must be monic".into()));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::OutOfRange(format!("modulus coefficient not reduced mod {p}")));
                }
                if d > 1 && !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None if d == 1 => vec![0, 1],
            None => random_irreducible(p, d, seed),
        };
        let unit_primes = factorize(q - 1).into_iter().map(|(f, _)| f).collect();
        Ok(Arc::new(Field {
            p,
            d,
            modulus,
            q,
            unit_primes,
            generator: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.d == 1
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_u64(&self, v: u64) -> Fe {
        Fe(v % self.p)
    }

    /// Reduces a signed integer into the prime subfield.
    pub fn from_i64(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u64)
    }

    /// Element from its canonical index; fails unless `index < q`.
    pub fn from_index(&self, index: u64) -> Result<Fe> {
        if index < self.q {
            Ok(Fe(index))
        } else {
            Err(Error::OutOfRange(format!("index {index} not below q = {}", self.q)))
        }
    }

    /// Element from polynomial-basis coordinates (low to high, exactly `d` of them).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() != self.d {
            return Err(Error::DegreeMismatch(format!(
                "expected {} coordinates, got {}",
                self.d,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::OutOfRange(format!("coordinate {c} not below p = {}", self.p)));
        }
        Ok(self.encode(coeffs))
    }

    /// Polynomial-basis coordinates, low to high.
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let mut buf = [0u64; MAX_DEGREE];
        self.decode(a, &mut buf);
        buf[..self.d].to_vec()
    }

    /// The constant coefficient (the whole value for prime fields).
    pub fn constant_term(&self, a: Fe) -> u64 {
        a.0 % self.p
    }

    fn encode(&self, c: &[u64]) -> Fe {
        let mut v = 0u64;
        for &x in c[..self.d].iter().rev() {
            v = v * self.p + x;
        }
        Fe(v)
    }

    fn decode(&self, a: Fe, out: &mut [u64; MAX_DEGREE]) {
        let mut v = a.0;
        for slot in out.iter_mut().take(self.d) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    #[inline]
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        tick();
        if self.d == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        for i in 0..self.d {
            let s = x[i] + y[i];
            x[i] = if s >= self.p { s - self.p } else { s };
        }
        self.encode(&x)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        tick();
        if self.d == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = [0u64; MAX_DEGREE];
        self.decode(a, &mut x);
        for c in x.iter_mut().take(self.d) {
            if *c != 0 {
                *c = self.p - *c;
            }
        }
        self.encode(&x)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        tick();
        if self.d == 1 {
            return Fe(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 });
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        for i in 0..self.d {
            x[i] = if x[i] >= y[i] { x[i] - y[i] } else { x[i] + self.p - y[i] };
        }
        self.encode(&x)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        tick();
        if self.d == 1 {
            return Fe(self.mulmod(a.0, b.0));
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        let d = self.d;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + self.mulmod(x[i], y[j])) % self.p;
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let t = self.mulmod(c, self.modulus[j]);
                let slot = &mut prod[i - d + j];
                *slot = if *slot >= t { *slot - t } else { *slot + self.p - t };
            }
            prod[i] = 0;
        }
        let mut out = [0u64; MAX_DEGREE];
        out[..d].copy_from_slice(&prod[..d]);
        self.encode(&out)
    }

    /// Multiplication by an element of the prime subfield.
    pub fn scale(&self, c: u64, a: Fe) -> Fe {
        self.mul(self.from_u64(c), a)
    }

    pub fn pow(&self, a: Fe, mut e: u128) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        tick();
        if self.d == 1 {
            return Ok(Fe(inv_mod(a.0, self.p)));
        }
        Ok(self.pow(a, self.q as u128 - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.q))
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    /// Exact multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.q - 1;
        for &l in &self.unit_primes {
            while order.is_multiple_of(l) && self.pow(a, (order / l) as u128) == Fe::ONE {
                order /= l;
            }
        }
        Ok(order)
    }

    /// A generator of the multiplicative group, the smallest by index.
    pub fn primitive_element(&self) -> Fe {
        *self.generator.get_or_init(|| {
            if self.q == 2 {
                return Fe::ONE;
            }
            (1..self.q)
                .map(Fe)
                .find(|&g| {
                    self.unit_primes
                        .iter()
                        .all(|&l| self.pow(g, ((self.q - 1) / l) as u128) != Fe::ONE)
                })
                .expect("multiplicative group of a finite field is cyclic")
        })
    }

    /// An element of multiplicative order exactly `order`: the generator
    /// raised to `(q - 1) / order`.
    pub fn root_of_unity(&self, order: u64) -> Result<Fe> {
        if order == 0 || !(self.q - 1).is_multiple_of(order) {
            return Err(Error::NoSuchRoot { order, q: self.q });
        }
        Ok(self.pow(self.primitive_element(), ((self.q - 1) / order) as u128))
    }

    /// Largest `2^k` dividing `q - 1`.
    pub fn two_adicity(&self) -> u32 {
        (self.q - 1).trailing_zeros()
    }

    /// Serialised form: the integer for prime fields, else the coordinate list.
    pub fn to_json(&self, a: Fe) -> serde_json::Value {
        if self.d == 1 {
            serde_json::Value::from(a.0)
        } else {
            serde_json::Value::from(self.coeffs(a))
        }
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<Fe> {
        match v {
            serde_json::Value::Number(n) if self.d == 1 => {
                let x = n
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("field element {n} is not a non-negative integer")))?;
                self.from_index(x)
            }
            serde_json::Value::Array(items) if self.d > 1 => {
                let coeffs = items
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(|| Error::Parse(format!("bad coordinate {c}"))))
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&coeffs)
            }
            other => Err(Error::Parse(format!("cannot read {other} as an element of {self:?}"))),
        }
    }
}

fn checked_pow(p: u64, d: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..d {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(m as i128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorisation with multiplicities: trial division up to `10^6`,
/// then Pollard rho on the cofactor.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |f: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(g, _)| *g == f) {
        Some(e) => e.1 += 1,
        None => out.push((f, 1)),
    };
    let mut f = 2u64;
    while f <= 1_000_000 && f * f <= n {
        while n.is_multiple_of(f) {
            push(f, &mut out);
            n /= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let g = pollard_rho(m);
        stack.push(g);
        stack.push(m / g);
    }
    out.sort_unstable();
    out
}

// Dense polynomials over Z/pZ, low to high, used for irreducibility testing.

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            let t = mul_mod(c, mj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod m` by repeated `p`-th powering.
fn frobenius_x(m: &[u64], p: u64, k: usize) -> Vec<u64> {
    let mut x = vec![0, 1];
    for _ in 0..k {
        x = poly_powmod(&x, p, m, p);
    }
    x
}

/// Rabin's irreducibility test for a monic polynomial over `Z/pZ`.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let mut xq = frobenius_x(m, p, d);
    let mut x = vec![0u64, 1];
    x = poly_rem(&x, m, p);
    poly_trim(&mut xq);
    if xq != x {
        return false;
    }
    for (r, _) in factorize(d as u64) {
        let mut h = frobenius_x(m, p, d / r as usize);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = poly_gcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn random_irreducible(p: u64, d: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut m: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
}
