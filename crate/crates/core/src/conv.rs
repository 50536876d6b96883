//! Polynomial products over a [`Field`]: schoolbook, radix-2 NTT when the
//! field has the 2-power roots, and a lift through an auxiliary NTT-friendly
//! prime otherwise.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{is_prime, Fe, Field};

/// Inputs shorter than this are multiplied by the schoolbook method.
pub const SCHOOLBOOK_THRESHOLD: usize = 32;

/// Precomputed radix-2 transform of length `size` in `field`.
#[derive(Debug, Clone)]
pub struct Ntt {
    field: Arc<Field>,
    size: usize,
    log: u32,
    /// `w^i` for `i < size / 2`, `w` a primitive `size`-th root.
    twiddles: Vec<Fe>,
    inv_twiddles: Vec<Fe>,
    size_inv: Fe,
}

impl Ntt {
    pub fn new(field: Arc<Field>, size: usize) -> Result<Ntt> {
        assert!(size.is_power_of_two());
        let log = size.trailing_zeros();
        if field.two_adicity() < log {
            return Err(Error::NoSuchRoot { order: size as u64, q: field.q() });
        }
        let w = field.root_of_unity(size as u64)?;
        let w_inv = field.inv(w)?;
        let half = (size / 2).max(1);
        let mut twiddles = Vec::with_capacity(half);
        let mut inv_twiddles = Vec::with_capacity(half);
        let (mut a, mut b) = (Fe::ONE, Fe::ONE);
        for _ in 0..half {
            twiddles.push(a);
            inv_twiddles.push(b);
            a = field.mul(a, w);
            b = field.mul(b, w_inv);
        }
        let size_inv = field.inv(field.from_u64(size as u64))?;
        Ok(Ntt { field, size, log, twiddles, inv_twiddles, size_inv })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn transform(&self, a: &mut [Fe], tw: &[Fe]) {
        let n = self.size;
        debug_assert_eq!(a.len(), n);
        let f = &*self.field;
        for i in 0..n {
            let j = if self.log == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - self.log) };
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let step = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..len / 2 {
                    let u = a[start + k];
                    let v = f.mul(a[start + k + len / 2], tw[k * step]);
                    a[start + k] = f.add(u, v);
                    a[start + k + len / 2] = f.sub(u, v);
                }
            }
            len <<= 1;
        }
    }

    /// Evaluation at the powers of the root, in natural order.
    pub fn forward(&self, a: &mut [Fe]) {
        self.transform(a, &self.twiddles);
    }

    pub fn inverse(&self, a: &mut [Fe]) {
        self.transform(a, &self.inv_twiddles);
        for x in a.iter_mut() {
            *x = self.field.mul(*x, self.size_inv);
        }
    }
}

/// Smallest prime `p' > bound` with `p' ≡ 1 (mod modulus)`.
pub fn prime_congruent_one(modulus: u64, bound: u128, cap: u64) -> Result<u64> {
    let modulus = modulus.max(1) as u128;
    let mut k = bound / modulus;
    for _ in 0..cap {
        let cand = k * modulus + 1;
        if cand > bound {
            if cand >= crate::ff::MAX_FIELD_SIZE as u128 {
                return Err(Error::FieldTooLarge(format!("auxiliary prime above {bound}")));
            }
            if is_prime(cand as u64) {
                return Ok(cand as u64);
            }
        }
        k += 1;
    }
    Err(Error::SearchExhausted(cap))
}

pub fn schoolbook(field: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

#[derive(Debug, Clone)]
enum Strategy {
    Schoolbook,
    Native { ntt: Ntt, fixed_hat: Vec<Fe> },
    Lifted(Lifted),
}

/// Integer-coefficient lift of `F_{p^d}` polynomials into `Z/p''Z`, split
/// into the `d` coordinate polynomials.
#[derive(Debug, Clone)]
struct Lifted {
    aux: Arc<Field>,
    ntt: Ntt,
    /// Transformed coordinate polynomials of the fixed operand.
    fixed_hat: Vec<Vec<Fe>>,
    /// `x^s` in the base field for `s < 2d - 1`.
    x_powers: Vec<Fe>,
}

/// Multiplies a fixed polynomial by varying polynomials of a known length.
#[derive(Debug, Clone)]
pub struct Convolver {
    field: Arc<Field>,
    fixed: Vec<Fe>,
    other_len: usize,
    strategy: Strategy,
}

impl Convolver {
    pub fn new(field: Arc<Field>, fixed: Vec<Fe>, other_len: usize) -> Result<Convolver> {
        let out_len = fixed.len() + other_len - 1;
        let size = out_len.next_power_of_two();
        let strategy = if fixed.len().min(other_len) < SCHOOLBOOK_THRESHOLD {
            Strategy::Schoolbook
        } else if field.two_adicity() >= size.trailing_zeros() {
            let ntt = Ntt::new(field.clone(), size)?;
            let mut fixed_hat = fixed.clone();
            fixed_hat.resize(size, Fe::ZERO);
            ntt.forward(&mut fixed_hat);
            Strategy::Native { ntt, fixed_hat }
        } else {
            Strategy::Lifted(Lifted::new(&field, &fixed, other_len, size)?)
        };
        Ok(Convolver { field, fixed, other_len, strategy })
    }

    pub fn mul(&self, other: &[Fe]) -> Vec<Fe> {
        assert_eq!(other.len(), self.other_len);
        match &self.strategy {
            Strategy::Schoolbook => schoolbook(&self.field, &self.fixed, other),
            Strategy::Native { ntt, fixed_hat } => {
                let mut v = other.to_vec();
                v.resize(ntt.size(), Fe::ZERO);
                ntt.forward(&mut v);
                for (x, &y) in v.iter_mut().zip(fixed_hat) {
                    *x = self.field.mul(*x, y);
                }
                ntt.inverse(&mut v);
                v.truncate(self.fixed.len() + self.other_len - 1);
                v
            }
            Strategy::Lifted(l) => l.mul(&self.field, other, self.fixed.len() + self.other_len - 1),
        }
    }
}

impl Lifted {
    fn new(field: &Arc<Field>, fixed: &[Fe], other_len: usize, size: usize) -> Result<Lifted> {
        let d = field.d();
        let p = field.p() as u128;
        let shortest = fixed.len().min(other_len) as u128;
        let bound = d as u128 * shortest * (p - 1) * (p - 1);
        let aux_p = prime_congruent_one(size as u64, bound, 1 << 32)?;
        let aux = Field::prime(aux_p)?;
        let ntt = Ntt::new(aux.clone(), size)?;
        let fixed_hat = Self::split(field, &aux, fixed, size)
            .into_iter()
            .map(|mut c| {
                ntt.forward(&mut c);
                c
            })
            .collect();
        let x = if d == 1 { Fe::ONE } else { field.from_coeffs(&unit_coeffs(d, 1))? };
        let x_powers = (0..2 * d - 1).map(|s| field.pow(x, s as u128)).collect();
        Ok(Lifted { aux, ntt, fixed_hat, x_powers })
    }

    fn split(field: &Field, aux: &Field, poly: &[Fe], size: usize) -> Vec<Vec<Fe>> {
        let d = field.d();
        let mut comps = vec![vec![Fe::ZERO; size]; d];
        for (i, &a) in poly.iter().enumerate() {
            if d == 1 {
                comps[0][i] = aux.from_u64(a.index());
            } else {
                for (j, c) in field.coeffs(a).into_iter().enumerate() {
                    comps[j][i] = aux.from_u64(c);
                }
            }
        }
        comps
    }

    fn mul(&self, field: &Field, other: &[Fe], out_len: usize) -> Vec<Fe> {
        let d = field.d();
        let aux = &*self.aux;
        let other_hat: Vec<Vec<Fe>> = Self::split(field, aux, other, self.ntt.size())
            .into_iter()
            .map(|mut c| {
                self.ntt.forward(&mut c);
                c
            })
            .collect();
        let mut out = vec![Fe::ZERO; out_len];
        for s in 0..2 * d - 1 {
            let mut acc = vec![Fe::ZERO; self.ntt.size()];
            for j in s.saturating_sub(d - 1)..=s.min(d - 1) {
                let (a, b) = (&self.fixed_hat[j], &other_hat[s - j]);
                for k in 0..acc.len() {
                    acc[k] = aux.add(acc[k], aux.mul(a[k], b[k]));
                }
            }
            self.ntt.inverse(&mut acc);
            for (o, &v) in out.iter_mut().zip(&acc) {
                let c = field.from_u64(v.index());
                *o = if d == 1 { c } else { field.add(*o, field.mul(c, self.x_powers[s])) };
            }
        }
        out
    }
}

pub(crate) fn unit_coeffs(d: usize, at: usize) -> Vec<u64> {
    let mut v = vec![0u64; d];
    v[at] = 1;
    v
}

/// One-shot product of two polynomials.
pub fn poly_mul(field: &Arc<Field>, a: &[Fe], b: &[Fe]) -> Result<Vec<Fe>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    Ok(Convolver::new(field.clone(), a.to_vec(), b.len())?.mul(b))
}
