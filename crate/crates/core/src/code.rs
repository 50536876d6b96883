//! `G`-equivariant codes given by their evaluation (`E`), checking (`C`) and
//! interpolation (`I`) matrices over `K[G]`, with `C^T E = 0` and `I E = 1`.
//!
//! Codewords live in `K[G]^n`: coordinate `i` collects the values at the `o`
//! points of fibre `i`, the coefficient of `s` being the value at point `(i, s)`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::{Fe, Field};
use crate::galg::{AbelianGroup, FourierImage, GroupAlgebra, GroupAlgebraElement};
use crate::io;
use crate::kgmat::{split_kernel_and_inverse, KGMatrix};
use crate::linalg::Matrix;

/// Vector of `n` group-algebra elements: one per fibre.
pub type ResidueVector = Vec<GroupAlgebraElement>;
/// Vector of `k` group-algebra elements: coordinates in the basis of `E`.
pub type Message = Vec<GroupAlgebraElement>;

/// Geometric bookkeeping. Synthetic codes carry `g_x = 0` and no degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeMeta {
    pub g_x: i64,
    pub deg_d: Option<i64>,
    pub deg_p: Option<i64>,
}

impl CodeMeta {
    pub fn synthetic() -> CodeMeta {
        CodeMeta { g_x: 0, deg_d: None, deg_p: None }
    }

    /// Genus of the unramified cover of degree `order`: `o (g_x - 1) + 1`.
    pub fn g_y(&self, order: usize) -> i64 {
        order as i64 * (self.g_x - 1) + 1
    }
}

/// Outcome of [`EquivariantCode::validate`]: the code is valid, possibly with warnings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub expanded_rank: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantCode {
    alg: Arc<GroupAlgebra>,
    n: usize,
    k: usize,
    e: KGMatrix,
    c: KGMatrix,
    i: KGMatrix,
    pub meta: CodeMeta,
}

impl EquivariantCode {
    /// Checks shapes only; see [`Self::validate`] for the algebraic identities.
    pub fn new(e: KGMatrix, c: KGMatrix, i: KGMatrix, meta: CodeMeta) -> Result<EquivariantCode> {
        let alg = e.algebra().clone();
        let (n, k) = (e.rows(), e.cols());
        if k > n {
            return Err(Error::DimMismatch(format!("E is {n}x{k}: more columns than rows")));
        }
        if (c.rows(), c.cols()) != (n, n - k) {
            return Err(Error::DimMismatch(format!("C is {}x{}, expected {n}x{}", c.rows(), c.cols(), n - k)));
        }
        if (i.rows(), i.cols()) != (k, n) {
            return Err(Error::DimMismatch(format!("I is {}x{}, expected {k}x{n}", i.rows(), i.cols())));
        }
        if **c.algebra() != *alg || **i.algebra() != *alg {
            return Err(Error::Mismatch);
        }
        Ok(EquivariantCode { alg, n, k, e, c, i, meta })
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> &Arc<Field> {
        self.alg.field()
    }

    pub fn group(&self) -> &AbelianGroup {
        self.alg.group()
    }

    /// Number of fibres.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank over `K[G]`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of evaluation points, `o n`.
    pub fn length(&self) -> usize {
        self.n * self.alg.order()
    }

    /// Dimension over `K`, `o k`.
    pub fn dimension(&self) -> usize {
        self.k * self.alg.order()
    }

    pub fn g_y(&self) -> i64 {
        self.meta.g_y(self.alg.order())
    }

    pub fn e(&self) -> &KGMatrix {
        &self.e
    }

    pub fn c(&self) -> &KGMatrix {
        &self.c
    }

    pub fn i(&self) -> &KGMatrix {
        &self.i
    }

    fn check_len(&self, v: &[GroupAlgebraElement], want: usize, what: &str) -> Result<()> {
        if v.len() != want {
            return Err(Error::DimMismatch(format!("{what} has length {}, expected {want}", v.len())));
        }
        Ok(())
    }

    /// `E m`.
    pub fn encode(&self, m: &[GroupAlgebraElement]) -> Result<ResidueVector> {
        self.check_len(m, self.k, "message")?;
        self.e.apply(m)
    }

    /// Syndrome `C^T r`; zero exactly on codewords.
    pub fn parity_check(&self, r: &[GroupAlgebraElement]) -> Result<Vec<GroupAlgebraElement>> {
        self.check_len(r, self.n, "received word")?;
        if self.k == self.n {
            return Ok(Vec::new());
        }
        self.c.transpose().apply(r)
    }

    /// `I c`, checked by re-encoding.
    pub fn interpolate(&self, c: &[GroupAlgebraElement]) -> Result<Message> {
        self.check_len(c, self.n, "codeword")?;
        let m = self.i.apply(c)?;
        if self.encode(&m)? != c {
            return Err(Error::NotInImage);
        }
        Ok(m)
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        let mut warnings = Vec::new();
        if self.k < self.n && !self.c.transpose().mul(&self.e)?.is_zero() {
            return Err(Error::InvariantViolation("C^T E != 0".into()));
        }
        if self.i.mul(&self.e)? != KGMatrix::identity(&self.alg, self.k) {
            return Err(Error::InvariantViolation("I E != identity".into()));
        }
        let expanded_rank = self.e.expanded_rank();
        if expanded_rank != self.dimension() {
            return Err(Error::InvariantViolation(format!(
                "expanded rank of E is {expanded_rank}, expected {}",
                self.dimension()
            )));
        }
        if self.k < self.n {
            let c_rank = self.c.expanded_rank();
            if c_rank != (self.n - self.k) * self.alg.order() {
                return Err(Error::InvariantViolation(format!("expanded rank of C is {c_rank}, too small")));
            }
        }
        if let (Some(deg_d), Some(deg_p)) = (self.meta.deg_d, self.meta.deg_p) {
            let g = self.meta.g_x;
            if !(2 * g - 1 <= deg_d && deg_d < deg_p) {
                warnings.push(format!("degree window 2g_X-1 <= deg_D <= deg_P-1 fails: g_X={g}, deg_D={deg_d}, deg_P={deg_p}"));
            }
        }
        if self.k == self.n {
            warnings.push("k = n: every word is a codeword".into());
        }
        Ok(ValidationReport { expanded_rank, warnings })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": io::FORMAT_VERSION,
            "field": io::field_to_json(self.field()),
            "group": io::group_to_json(self.group()),
            "n": self.n,
            "k": self.k,
            "E": self.e.to_json(),
            "C": self.c.to_json(),
            "I": self.i.to_json(),
            "meta": {
                "g_X": self.meta.g_x,
                "deg_D": self.meta.deg_d,
                "deg_P": self.meta.deg_p,
            },
        })
    }

    /// Parses a code file; shapes are checked, identities are not (use [`Self::validate`]).
    pub fn from_json(v: &Value) -> Result<EquivariantCode> {
        io::check_version(v)?;
        let field = io::field_from_json(io::get(v, "field")?)?;
        let group = io::group_from_json(io::get(v, "group")?)?;
        let alg = GroupAlgebra::new(field, group);
        let e = KGMatrix::from_json(&alg, io::get(v, "E")?)?;
        let c = KGMatrix::from_json(&alg, io::get(v, "C")?)?;
        let i = KGMatrix::from_json(&alg, io::get(v, "I")?)?;
        let meta = io::get(v, "meta")?;
        let g_x = io::get(meta, "g_X")?
            .as_i64()
            .ok_or_else(|| Error::Parse("\"g_X\" must be an integer".into()))?;
        let meta = CodeMeta { g_x, deg_d: io::get_opt_i64(meta, "deg_D")?, deg_p: io::get_opt_i64(meta, "deg_P")? };
        let code = EquivariantCode::new(e, c, i, meta)?;
        if io::get_u64(v, "n")? as usize != code.n || io::get_u64(v, "k")? as usize != code.k {
            return Err(Error::Parse("\"n\"/\"k\" disagree with the matrix shapes".into()));
        }
        Ok(code)
    }

    pub fn to_text(&self) -> String {
        io::to_text(&self.to_json())
    }

    pub fn from_text(text: &str) -> Result<EquivariantCode> {
        Self::from_json(&io::parse(text)?)
    }

    /// Serialised vector of group-algebra elements.
    pub fn vector_to_json(&self, v: &[GroupAlgebraElement]) -> Value {
        Value::Array(v.iter().map(|e| self.alg.to_json(e)).collect())
    }

    pub fn vector_from_json(&self, v: &Value) -> Result<Vec<GroupAlgebraElement>> {
        v.as_array()
            .ok_or_else(|| Error::Parse("vector must be a list of group-algebra elements".into()))?
            .iter()
            .map(|x| self.alg.from_json(x))
            .collect()
    }
}

/// The cyclic-cover example over `F_3[Z/4]`: `n = 3`, `k = 1`, genus 2,
/// `deg D = 2`, `deg P = 3`. Its degree window fails, which validation reports as a warning.
pub fn paper_fixture() -> EquivariantCode {
    let alg = GroupAlgebra::new(Field::prime(3).expect("3 is prime"), AbelianGroup::cyclic(4).expect("valid group"));
    let el = |c: &[i64]| alg.from_ints(c).expect("four coefficients");
    let (one, zero, minus) = (el(&[1, 0, 0, 0]), alg.zero(), el(&[2, 0, 0, 0]));
    let e12 = el(&[1, 2, 2, 2]);
    let e13 = el(&[2, 2, 2, 1]);
    let e = KGMatrix::from_rows(&alg, vec![vec![one.clone()], vec![e12.clone()], vec![e13.clone()]]).expect("shape");
    let c = KGMatrix::from_rows(
        &alg,
        vec![vec![e12, e13], vec![minus.clone(), zero.clone()], vec![zero.clone(), minus]],
    )
    .expect("shape");
    let i = KGMatrix::from_rows(&alg, vec![vec![one, zero.clone(), zero]]).expect("shape");
    EquivariantCode::new(e, c, i, CodeMeta { g_x: 2, deg_d: Some(2), deg_p: Some(3) }).expect("consistent shapes")
}

/// The `n` evaluation points of the degenerate Reed–Solomon codes: field elements with indices `1..=n`.
pub fn rs_points(field: &Field, n: usize) -> Result<Vec<Fe>> {
    let available = (field.q() - 1) as usize;
    if n > available {
        return Err(Error::TooManyPoints { requested: n, available });
    }
    (1..=n as u64).map(|i| field.from_index(i)).collect()
}

/// `n x (deg + 1)` Vandermonde matrix over the trivial group: entry `[i, j] = x_i^j`.
pub fn vandermonde(alg: &Arc<GroupAlgebra>, points: &[Fe], deg: usize) -> KGMatrix {
    let f = alg.field();
    let mut m = KGMatrix::zeros(alg, points.len(), deg + 1);
    for (i, &x) in points.iter().enumerate() {
        let mut pw = Fe::ONE;
        for j in 0..=deg {
            m.set(i, j, alg.constant(pw));
            pw = f.mul(pw, x);
        }
    }
    m
}

/// Checking and interpolation matrices for a full-rank evaluation matrix of a split algebra.
fn complete(e: KGMatrix, meta: CodeMeta) -> Result<EquivariantCode> {
    let alg = e.algebra().clone();
    let omega = alg.field().root_of_unity(alg.group().exponent() as u64)?;
    let (c, i) = split_kernel_and_inverse(&e, omega)?;
    EquivariantCode::new(e, c, i, meta)
}

/// Genus-0 code over the trivial group: polynomials of degree `<= deg_e`
/// evaluated at the first `n` nonzero elements of `F_p`.
pub fn rs_degenerate_code(p: u64, n: usize, deg_e: usize) -> Result<EquivariantCode> {
    rs_degenerate_code_over(Field::prime(p)?, n, deg_e)
}

pub fn rs_degenerate_code_over(field: Arc<Field>, n: usize, deg_e: usize) -> Result<EquivariantCode> {
    let points = rs_points(&field, n)?;
    if deg_e >= n {
        return Err(Error::DegreeWindow(format!("degree {deg_e} needs more than {n} points")));
    }
    let alg = GroupAlgebra::new(field, AbelianGroup::trivial());
    let e = vandermonde(&alg, &points, deg_e);
    complete(e, CodeMeta { g_x: 0, deg_d: Some(deg_e as i64), deg_p: Some(n as i64) })
}

/// Random code of a split algebra: per-character full-rank `n x k` matrices,
/// assembled by the inverse Fourier transform.
pub fn synth_split_code(p: u64, d: usize, group: AbelianGroup, n: usize, k: usize, seed: u64) -> Result<EquivariantCode> {
    let alg = GroupAlgebra::new(Field::new(p, d, None)?, group);
    let field = alg.field().clone();
    if !alg.is_split() || (alg.order() as u64).is_multiple_of(p) {
        return Err(Error::NotSplit);
    }
    if k == 0 || k >= n {
        return Err(Error::RankDeficient(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    let omega = field.root_of_unity(alg.group().exponent() as u64)?;
    let o = alg.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![vec![Fe::ZERO; o]; n * k];
    for chi in 0..o {
        let mut drawn = None;
        for _ in 0..10 {
            let data: Vec<Fe> = (0..n * k).map(|_| field.random(&mut rng)).collect();
            let m = Matrix::from_vec(field.clone(), n, k, data)?;
            if m.rank() == k {
                drawn = Some(m);
                break;
            }
        }
        let m = drawn.ok_or_else(|| Error::RankDeficient(format!("character {chi}: no full-rank draw in 10 tries")))?;
        for r in 0..n {
            for c in 0..k {
                values[r * k + c][chi] = m.get(r, c);
            }
        }
    }
    let entries = values
        .into_iter()
        .map(|v| crate::galg::ft_inverse(&FourierImage { algebra: alg.clone(), omega, values: v }))
        .collect::<Result<Vec<_>>>()?;
    complete(KGMatrix::new(alg, n, k, entries)?, CodeMeta::synthetic())
}

/// Evaluation data of the cyclic "orbit" codes: `G = Z/o` acts on `F_q^*` by
/// multiplication with a primitive `o`-th root `zeta`, fibre `i` being the coset
/// `x_i <zeta>`; the point `(i, s)` is `zeta^s x_i`.
#[derive(Clone, Debug)]
pub struct OrbitLayout {
    pub alg: Arc<GroupAlgebra>,
    pub zeta: Fe,
    pub reps: Vec<Fe>,
}

impl OrbitLayout {
    pub fn new(field: Arc<Field>, order: usize, n: usize) -> Result<OrbitLayout> {
        let alg = GroupAlgebra::new(field.clone(), AbelianGroup::cyclic(order)?);
        if !alg.is_split() || (order as u64).is_multiple_of(field.p()) {
            return Err(Error::NotSplit);
        }
        let available = ((field.q() - 1) / order as u64) as usize;
        if n > available {
            return Err(Error::TooManyPoints { requested: n, available });
        }
        let g = field.primitive_element();
        let zeta = field.pow(g, ((field.q() - 1) / order as u64) as u128);
        let reps = (0..n).map(|i| field.pow(g, i as u128)).collect();
        Ok(OrbitLayout { alg, zeta, reps })
    }

    pub fn point(&self, i: usize, s: usize) -> Fe {
        let f = self.alg.field();
        f.mul(f.pow(self.zeta, s as u128), self.reps[i])
    }

    /// Values of the polynomial `coeffs` (low to high) at every point, as a residue vector.
    pub fn evaluate(&self, coeffs: &[Fe]) -> ResidueVector {
        let f = self.alg.field();
        (0..self.reps.len())
            .map(|i| {
                let vals = (0..self.alg.order())
                    .map(|s| {
                        let x = self.point(i, s);
                        coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
                    })
                    .collect();
                self.alg.element(vals).expect("one value per group element")
            })
            .collect()
    }

    /// Free basis `x^{l o} (1 + x + ... + x^{o-1})`, `l < k`, of the polynomials of degree `< k o`.
    pub fn evaluation_matrix(&self, k: usize) -> KGMatrix {
        let o = self.alg.order();
        let n = self.reps.len();
        let mut m = KGMatrix::zeros(&self.alg, n, k);
        for l in 0..k {
            let mut coeffs = vec![Fe::ZERO; (l + 1) * o];
            for c in &mut coeffs[l * o..] {
                *c = Fe::ONE;
            }
            for (i, v) in self.evaluate(&coeffs).into_iter().enumerate() {
                m.set(i, l, v);
            }
        }
        m
    }
}

/// Orbit code of the polynomials of degree `< k o` on `n` fibres of size `o`.
pub fn orbit_code(layout: &OrbitLayout, k: usize) -> Result<EquivariantCode> {
    if k == 0 || k > layout.reps.len() {
        return Err(Error::RankDeficient(format!("need 0 < k <= n, got k={k}, n={}", layout.reps.len())));
    }
    complete(layout.evaluation_matrix(k), CodeMeta::synthetic())
}
