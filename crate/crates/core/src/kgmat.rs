//! Matrices over `K[G]` and their expansion to block-circulant matrices over `K`.
//!
//! Expansion convention: the block of an entry `a` has `block[g, h] = a_{g h^{-1}}`,
//! so that `expand(a) * vec(b) = vec(a b)`. With this convention
//! `expand(a.involution()) = expand(a)^T`.
//!
//! Transposes of `K[G]`-matrices are plain (no involution on the entries).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{Fe, Field};
use crate::galg::{GroupAlgebra, GroupAlgebraElement, MulPath};
use crate::linalg::Matrix;

/// A `K`-matrix obtained from [`KGMatrix::expand`]; `rows * o` by `cols * o`.
pub type ExpandedMatrix = Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct KGMatrix {
    alg: Arc<GroupAlgebra>,
    rows: usize,
    cols: usize,
    entries: Vec<GroupAlgebraElement>,
}

impl std::fmt::Debug for KGMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "KGMatrix {}x{} over {:?}", self.rows, self.cols, self.alg)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl KGMatrix {
    pub fn new(alg: Arc<GroupAlgebra>, rows: usize, cols: usize, entries: Vec<GroupAlgebraElement>) -> Result<KGMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| **e.algebra() != *alg) {
            return Err(Error::Mismatch);
        }
        Ok(KGMatrix { alg, rows, cols, entries })
    }

    pub fn zeros(alg: &Arc<GroupAlgebra>, rows: usize, cols: usize) -> KGMatrix {
        KGMatrix { alg: alg.clone(), rows, cols, entries: vec![alg.zero(); rows * cols] }
    }

    pub fn identity(alg: &Arc<GroupAlgebra>, n: usize) -> KGMatrix {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, alg.one());
        }
        m
    }

    pub fn from_rows(alg: &Arc<GroupAlgebra>, rows: Vec<Vec<GroupAlgebraElement>>) -> Result<KGMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(alg.clone(), n, cols, rows.into_iter().flatten().collect())
    }

    /// Column vector `n x 1`.
    pub fn column_vector(alg: &Arc<GroupAlgebra>, v: Vec<GroupAlgebraElement>) -> Result<KGMatrix> {
        let n = v.len();
        Self::new(alg.clone(), n, 1, v)
    }

    /// Matrix whose entries have prime-subfield integer coefficients.
    pub fn from_ints(alg: &Arc<GroupAlgebra>, rows: &[&[&[i64]]]) -> Result<KGMatrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| alg.from_ints(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(alg, rows)
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> &Arc<Field> {
        self.alg.field()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GroupAlgebraElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GroupAlgebraElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GroupAlgebraElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GroupAlgebraElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[GroupAlgebraElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupAlgebraElement::is_zero)
    }

    pub fn transpose(&self) -> KGMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        KGMatrix { alg: self.alg.clone(), rows: self.cols, cols: self.rows, entries }
    }

    /// Entrywise involution.
    pub fn involution(&self) -> KGMatrix {
        self.map(GroupAlgebraElement::involution)
    }

    pub fn neg(&self) -> KGMatrix {
        self.map(GroupAlgebraElement::neg)
    }

    fn map(&self, f: impl Fn(&GroupAlgebraElement) -> GroupAlgebraElement) -> KGMatrix {
        KGMatrix { alg: self.alg.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    fn same_shape(&self, other: &KGMatrix) -> Result<()> {
        if *self.alg != *other.alg {
            return Err(Error::Mismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &KGMatrix) -> Result<KGMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(KGMatrix { alg: self.alg.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &KGMatrix) -> Result<KGMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(KGMatrix { alg: self.alg.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn select_rows(&self, rows: &[usize]) -> KGMatrix {
        let entries = rows.iter().flat_map(|&r| self.row(r).iter().cloned()).collect();
        KGMatrix { alg: self.alg.clone(), rows: rows.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, cols: &[usize]) -> KGMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            entries.extend(cols.iter().map(|&c| self.get(r, c).clone()));
        }
        KGMatrix { alg: self.alg.clone(), rows: self.rows, cols: cols.len(), entries }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &KGMatrix) -> Result<KGMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            entries.extend(self.row(r).iter().cloned());
            entries.extend(other.row(r).iter().cloned());
        }
        Self::new(self.alg.clone(), self.rows, self.cols + other.cols, entries)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &KGMatrix) -> Result<KGMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let entries = self.entries.iter().chain(&other.entries).cloned().collect();
        Self::new(self.alg.clone(), self.rows + other.rows, self.cols, entries)
    }

    /// Product with every entry multiplied by the quasi-linear method.
    /// Split algebras transform each entry once and multiply character by character.
    pub fn mul(&self, other: &KGMatrix) -> Result<KGMatrix> {
        self.check_inner(other)?;
        if self.alg.order() > 1 && self.alg.mul_path()? == MulPath::Split {
            return self.mul_split(other);
        }
        self.mul_with(other, |a, b| a.mul(b))
    }

    /// Reference product using the quadratic convolution.
    pub fn mul_naive(&self, other: &KGMatrix) -> Result<KGMatrix> {
        self.check_inner(other)?;
        self.mul_with(other, |a, b| a.mul_naive(b))
    }

    fn check_inner(&self, other: &KGMatrix) -> Result<()> {
        if *self.alg != *other.alg {
            return Err(Error::Mismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn mul_with(
        &self,
        other: &KGMatrix,
        mul: impl Fn(&GroupAlgebraElement, &GroupAlgebraElement) -> Result<GroupAlgebraElement>,
    ) -> Result<KGMatrix> {
        let mut out = Self::zeros(&self.alg, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.alg.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&mul(a, b)?)?;
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    fn mul_split(&self, other: &KGMatrix) -> Result<KGMatrix> {
        let plan = self.alg.fourier_plan()?;
        let f = &**self.field();
        let hat = |m: &KGMatrix| -> Vec<Vec<Fe>> {
            m.entries
                .iter()
                .map(|e| {
                    let mut v = e.coeffs().to_vec();
                    plan.forward(&mut v);
                    v
                })
                .collect()
        };
        let (a, b) = (hat(self), hat(other));
        let o = self.alg.order();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = vec![Fe::ZERO; o];
                for k in 0..self.cols {
                    let (x, y) = (&a[r * self.cols + k], &b[k * other.cols + c]);
                    for (s, (&u, &v)) in acc.iter_mut().zip(x.iter().zip(y)) {
                        *s = f.add(*s, f.mul(u, v));
                    }
                }
                plan.inverse(&mut acc)?;
                entries.push(self.alg.element(acc)?);
            }
        }
        Ok(KGMatrix { alg: self.alg.clone(), rows: self.rows, cols: other.cols, entries })
    }

    /// `A v` for a vector over `K[G]`.
    pub fn apply(&self, v: &[GroupAlgebraElement]) -> Result<Vec<GroupAlgebraElement>> {
        let col = Self::column_vector(&self.alg, v.to_vec())?;
        Ok(self.mul(&col)?.entries)
    }

    /// Block-circulant expansion over `K`.
    pub fn expand(&self) -> ExpandedMatrix {
        let o = self.alg.order();
        let mut m = Matrix::zeros(self.field().clone(), self.rows * o, self.cols * o);
        let grp = self.alg.group();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a.is_zero() {
                    continue;
                }
                for g in 0..o {
                    for h in 0..o {
                        m.set(r * o + g, c * o + h, a.coeff(grp.op_inv(g, h)));
                    }
                }
            }
        }
        m
    }

    /// `K`-rank of the expansion.
    pub fn expanded_rank(&self) -> usize {
        self.expand().rank()
    }

    /// Coefficient-level inverse of [`Self::expand`] for a block-circulant matrix;
    /// reads each block's first column.
    pub fn from_expanded(alg: &Arc<GroupAlgebra>, m: &Matrix) -> Result<KGMatrix> {
        let o = alg.order();
        if !m.rows().is_multiple_of(o) || !m.cols().is_multiple_of(o) {
            return Err(Error::DimMismatch(format!("{}x{} is not a multiple of {o}", m.rows(), m.cols())));
        }
        let (rows, cols) = (m.rows() / o, m.cols() / o);
        let mut out = Self::zeros(alg, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let coeffs = (0..o).map(|g| m.get(r * o + g, c * o)).collect();
                out.set(r, c, alg.element(coeffs)?);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|e| self.alg.to_json(e)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(alg: &Arc<GroupAlgebra>, v: &serde_json::Value) -> Result<KGMatrix> {
        let dim = |key: &str| {
            v.get(key)
                .and_then(serde_json::Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("matrix is missing an integer \"{key}\"")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let entries = v
            .get("entries")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("matrix is missing \"entries\"".into()))?;
        if entries.len() != rows * cols {
            return Err(Error::Parse(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        let entries = entries.iter().map(|e| alg.from_json(e)).collect::<Result<Vec<_>>>()?;
        Self::new(alg.clone(), rows, cols, entries)
    }
}

/// Concatenated coefficient vectors: block `i`, position `g` at `i * o + g`.
pub fn flatten(v: &[GroupAlgebraElement]) -> Vec<Fe> {
    v.iter().flat_map(|e| e.coeffs().iter().copied()).collect()
}

/// Inverse of [`flatten`].
pub fn unflatten(alg: &Arc<GroupAlgebra>, v: &[Fe]) -> Result<Vec<GroupAlgebraElement>> {
    let o = alg.order();
    if !v.len().is_multiple_of(o) {
        return Err(Error::DimMismatch(format!("length {} is not a multiple of {o}", v.len())));
    }
    v.chunks(o).map(|c| alg.element(c.to_vec())).collect()
}

/// The `K`-bilinear pairing underneath a `K[G]`-valued duality form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DualityContext {
    /// Residue sum: `<w, f> = sum_{i, s} f_{i,s} w_{i,s}`.
    #[default]
    ResidueSum,
}

impl DualityContext {
    pub fn pair(&self, w: &[GroupAlgebraElement], f: &[GroupAlgebraElement]) -> Result<Fe> {
        if w.len() != f.len() {
            return Err(Error::DimMismatch(format!("pairing of lengths {} and {}", w.len(), f.len())));
        }
        let Some(first) = w.first() else { return Ok(Fe::ZERO) };
        let field = first.field().clone();
        let mut acc = Fe::ZERO;
        for (a, b) in w.iter().zip(f) {
            for (&x, &y) in a.coeffs().iter().zip(b.coeffs()) {
                acc = field.add(acc, field.mul(x, y));
            }
        }
        Ok(acc)
    }
}

/// Right action on residue vectors: `(w . s)_t = w_{s t}` in every block.
pub fn right_action(w: &[GroupAlgebraElement], s: usize) -> Vec<GroupAlgebraElement> {
    w.iter()
        .map(|e| {
            let grp = e.algebra().group();
            let coeffs = (0..grp.order()).map(|t| e.coeff(grp.op(s, t))).collect();
            e.algebra().element(coeffs).expect("permuted coefficients")
        })
        .collect()
}

/// `(n, m) = sum_i n_i * involution(m_i)`, which equals `sum_s <m . s^{-1}, n> s`.
pub fn duality_form(
    n: &[GroupAlgebraElement],
    m: &[GroupAlgebraElement],
    ctx: DualityContext,
) -> Result<GroupAlgebraElement> {
    if n.len() != m.len() {
        return Err(Error::DimMismatch(format!("duality form of lengths {} and {}", n.len(), m.len())));
    }
    let DualityContext::ResidueSum = ctx;
    let Some(first) = n.first() else {
        return Err(Error::DimMismatch("duality form of empty vectors".into()));
    };
    let mut acc = first.algebra().zero();
    for (a, b) in n.iter().zip(m) {
        acc = acc.add(&a.mul(&b.involution())?)?;
    }
    Ok(acc)
}

/// The `K[G]`-linear form `n -> sum_s phi(s^{-1} n) s` of a `K`-linear form on
/// `K[G]^L`, given by its `L * o` values on the coordinate basis. Returned as a `1 x L` row.
pub fn phi_g(alg: &Arc<GroupAlgebra>, phi: &[Fe]) -> Result<KGMatrix> {
    let row = unflatten(alg, phi)?.iter().map(GroupAlgebraElement::involution).collect();
    KGMatrix::from_rows(alg, vec![row])
}

/// A `K[G]`-linear `P` (`r x L`) with `P V = I_r`, for `V` (`L x r`) whose columns
/// are a free basis. The identity-coordinate dual forms are extended by zero
/// outside the pivot rows of `expand(V)` and made equivariant with [`phi_g`].
pub fn equivariant_projection(v: &KGMatrix) -> Result<KGMatrix> {
    let alg = v.algebra();
    let o = alg.order();
    let (l, r) = (v.rows(), v.cols());
    let ex = v.expand();
    let support = ex.independent_rows();
    if support.len() != r * o {
        return Err(Error::NotFree { rank: support.len(), expected: r * o });
    }
    let inv = ex.select_rows(&support).inverse()?;
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let mut psi = vec![Fe::ZERO; l * o];
        for (pos, &s) in support.iter().enumerate() {
            psi[s] = inv.get(i * o, pos);
        }
        rows.push(phi_g(alg, &psi)?.row(0).to_vec());
    }
    KGMatrix::from_rows(alg, rows)
}

/// Result of [`systematize`].
#[derive(Clone, Debug)]
pub struct Systematic {
    /// `E T` for an invertible `k x k` column transform `T`; in permuted row order its top block is `I_k`.
    pub e_sys: KGMatrix,
    /// `perm[i]` is the original row placed at position `i`.
    pub perm: Vec<usize>,
    /// Checking matrix `n x (n-k)`, original row order: `C^T E = 0`.
    pub c: KGMatrix,
    /// Interpolation matrix `k x n`, original column order: `I e_sys = I_k`.
    pub i: KGMatrix,
}

/// Row permutation plus unit-pivot column operations bringing `E` to `[I_k; B]`,
/// from which `C = [B^T; -I]` and `I = [I_k | 0]` follow.
pub fn systematize(e: &KGMatrix) -> Result<Systematic> {
    let alg = e.algebra().clone();
    let (n, k) = (e.rows(), e.cols());
    if k > n {
        return Err(Error::DimMismatch(format!("{n}x{k} matrix has more columns than rows")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut m = e.clone();
    for j in 0..k {
        let found = (j..n).find_map(|r| m.get(perm[r], j).inverse().ok().map(|inv| (r, inv)));
        let Some((r, inv)) = found else {
            return Err(Error::NotSystematizable(j));
        };
        perm.swap(j, r);
        let pivot_row = perm[j];
        for row in 0..n {
            let v = m.get(row, j).mul(&inv)?;
            m.set(row, j, v);
        }
        for c in 0..k {
            if c == j {
                continue;
            }
            let factor = m.get(pivot_row, c).clone();
            if factor.is_zero() {
                continue;
            }
            for row in 0..n {
                let v = m.get(row, c).sub(&m.get(row, j).mul(&factor)?)?;
                m.set(row, c, v);
            }
        }
    }
    let mut c = KGMatrix::zeros(&alg, n, n - k);
    let mut i = KGMatrix::zeros(&alg, k, n);
    for a in 0..k {
        i.set(a, perm[a], alg.one());
        for b in 0..n - k {
            // C^T row b is [B_b | -e_b]; its top part is row k+b of the systematic E
            c.set(perm[a], b, m.get(perm[k + b], a).clone());
        }
    }
    for b in 0..n - k {
        c.set(perm[k + b], b, alg.one().neg());
    }
    Ok(Systematic { e_sys: m, perm, c, i })
}

/// Checking and interpolation matrices of a split algebra, computed character by character.
pub fn split_kernel_and_inverse(e: &KGMatrix, omega: Fe) -> Result<(KGMatrix, KGMatrix)> {
    use crate::galg::FourierPlan;
    let alg = e.algebra().clone();
    let field = alg.field().clone();
    let grp = alg.group().clone();
    if !alg.is_split() || (alg.order() as u64).is_multiple_of(field.p()) {
        return Err(Error::NotSplit);
    }
    let plan = FourierPlan::new(field.clone(), grp, omega)?;
    let (n, k) = (e.rows(), e.cols());
    let o = alg.order();
    let hat: Vec<Vec<Fe>> = e
        .entries()
        .iter()
        .map(|x| {
            let mut v = x.coeffs().to_vec();
            plan.forward(&mut v);
            v
        })
        .collect();
    // per-character values of C (n x (n-k)) and I (k x n)
    let mut c_vals = vec![vec![Fe::ZERO; o]; n * (n - k)];
    let mut i_vals = vec![vec![Fe::ZERO; o]; k * n];
    for chi in 0..o {
        let data = hat.iter().map(|v| v[chi]).collect();
        let e_chi = Matrix::from_vec(field.clone(), n, k, data)?;
        let support = e_chi.independent_rows();
        if support.len() != k {
            return Err(Error::RankDeficient(format!("character {chi} has rank {} < {k}", support.len())));
        }
        let kernel = e_chi.transpose().kernel();
        debug_assert_eq!(kernel.len(), n - k);
        for (b, y) in kernel.iter().enumerate() {
            for (a, &v) in y.iter().enumerate() {
                c_vals[a * (n - k) + b][chi] = v;
            }
        }
        let inv = e_chi.select_rows(&support).inverse()?;
        for a in 0..k {
            for (pos, &s) in support.iter().enumerate() {
                i_vals[a * n + s][chi] = inv.get(a, pos);
            }
        }
    }
    let back = |vals: Vec<Vec<Fe>>| -> Result<Vec<GroupAlgebraElement>> {
        vals.into_iter()
            .map(|mut v| {
                plan.inverse(&mut v)?;
                alg.element(v)
            })
            .collect()
    };
    let c = KGMatrix::new(alg.clone(), n, n - k, back(c_vals)?)?;
    let i = KGMatrix::new(alg.clone(), k, n, back(i_vals)?)?;
    Ok((c, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::AbelianGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(p: u64, factors: &[usize]) -> Arc<GroupAlgebra> {
        GroupAlgebra::new(Field::prime(p).unwrap(), AbelianGroup::new(factors.to_vec()).unwrap())
    }

    fn random(alg: &Arc<GroupAlgebra>, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> KGMatrix {
        let entries = (0..rows * cols).map(|_| alg.random(rng)).collect();
        KGMatrix::new(alg.clone(), rows, cols, entries).unwrap()
    }

    fn fixture_e() -> KGMatrix {
        let a = alg(3, &[4]);
        KGMatrix::from_ints(&a, &[&[&[1, 0, 0, 0]], &[&[1, 2, 2, 2]], &[&[2, 2, 2, 1]]]).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let a = alg(5, &[4]);
        let f = a.field().clone();
        assert_eq!(KGMatrix::identity(&a, 1).expand(), Matrix::identity(f.clone(), 4));
        let s = KGMatrix::from_rows(&a, vec![vec![a.basis(1)]]).unwrap().expand();
        for g in 0..4 {
            for h in 0..4 {
                let want = if g == (h + 1) % 4 { Fe::ONE } else { Fe::ZERO };
                assert_eq!(s.get(g, h), want);
            }
        }
    }

    #[test]
    fn expansion_is_multiplicative_and_matches_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for a in [alg(5, &[4]), alg(3, &[4]), alg(13, &[2, 6])] {
            let x = random(&a, 2, 3, &mut rng);
            let y = random(&a, 3, 2, &mut rng);
            let xy = x.mul(&y).unwrap();
            assert_eq!(xy, x.mul_naive(&y).unwrap());
            assert_eq!(xy.expand(), x.expand().mul(&y.expand()).unwrap());
            assert_eq!(KGMatrix::from_expanded(&a, &xy.expand()).unwrap(), xy);
            let b = a.random(&mut rng);
            let e = x.get(0, 0);
            let lhs = KGMatrix::from_rows(&a, vec![vec![e.clone()]]).unwrap().expand().mul_vec(b.coeffs()).unwrap();
            assert_eq!(lhs, e.mul_naive(&b).unwrap().coeffs());
        }
    }

    #[test]
    fn transpose_involution_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = alg(5, &[2, 2]);
        for _ in 0..100 {
            let m = random(&a, 1, 1, &mut rng);
            assert_eq!(m.involution().expand(), m.expand().transpose());
        }
    }

    #[test]
    fn products_with_identity_and_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = alg(5, &[4]);
        let m = random(&a, 2, 2, &mut rng);
        assert_eq!(m.mul(&KGMatrix::identity(&a, 2)).unwrap(), m);
        assert!(m.mul(&KGMatrix::zeros(&a, 2, 3)).unwrap().is_zero());
        assert!(matches!(m.mul(&KGMatrix::zeros(&a, 3, 1)), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn duality_form_examples() {
        let a = alg(5, &[2]);
        let f = vec![a.from_ints(&[1, 0]).unwrap()];
        assert_eq!(duality_form(&f, &[a.from_ints(&[1, 0]).unwrap()], DualityContext::ResidueSum).unwrap(), a.one());
        assert_eq!(duality_form(&f, &[a.from_ints(&[0, 1]).unwrap()], DualityContext::ResidueSum).unwrap(), a.basis(1));
        assert!(duality_form(&[a.zero()], &[a.basis(1)], DualityContext::ResidueSum).unwrap().is_zero());
    }

    /// `sum_s <m . s^{-1}, n> s`, straight from the definition.
    fn duality_by_definition(n: &[GroupAlgebraElement], m: &[GroupAlgebraElement]) -> GroupAlgebraElement {
        let a = n[0].algebra();
        let grp = a.group();
        let coeffs = (0..a.order())
            .map(|s| DualityContext::ResidueSum.pair(&right_action(m, grp.inverse(s)), n).unwrap())
            .collect();
        a.element(coeffs).unwrap()
    }

    #[test]
    fn duality_form_invariance_and_bilinearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = alg(7, &[2, 6]);
        let ctx = DualityContext::ResidueSum;
        for _ in 0..30 {
            let n: Vec<_> = (0..3).map(|_| a.random(&mut rng)).collect();
            let m: Vec<_> = (0..3).map(|_| a.random(&mut rng)).collect();
            let s = rng.gen_range(0..a.order());
            let sn: Vec<_> = n.iter().map(|x| x.shift(s)).collect();
            assert_eq!(ctx.pair(&right_action(&m, s), &n).unwrap(), ctx.pair(&m, &sn).unwrap());
            let form = duality_form(&n, &m, ctx).unwrap();
            assert_eq!(form, duality_by_definition(&n, &m));
            let t = a.random(&mut rng);
            let tn: Vec<_> = n.iter().map(|x| t.mul(x).unwrap()).collect();
            assert_eq!(duality_form(&tn, &m, ctx).unwrap(), t.mul(&form).unwrap());
            let mt = right_action(&m, s);
            assert_eq!(duality_form(&n, &mt, ctx).unwrap(), form.shift(s));
        }
    }

    use rand::Rng;

    #[test]
    fn phi_g_examples() {
        let a = alg(5, &[4]);
        let mut e1 = vec![Fe::ZERO; 8];
        e1[0] = Fe::ONE;
        let row = phi_g(&a, &e1).unwrap();
        assert_eq!(row.row(0), &[a.one(), a.zero()]);
        assert!(phi_g(&a, &[Fe::ZERO; 8]).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = a.field().clone();
        for _ in 0..20 {
            let phi: Vec<Fe> = (0..8).map(|_| f.random(&mut rng)).collect();
            let n = vec![a.random(&mut rng), a.random(&mut rng)];
            let val = phi_g(&a, &phi).unwrap().apply(&n).unwrap();
            let direct = flatten(&n).iter().zip(&phi).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            assert_eq!(val[0].coeff(0), direct);
            // sum of forms maps to sum of rows
            let psi: Vec<Fe> = (0..8).map(|_| f.random(&mut rng)).collect();
            let sum: Vec<Fe> = phi.iter().zip(&psi).map(|(&x, &y)| f.add(x, y)).collect();
            assert_eq!(phi_g(&a, &sum).unwrap(), phi_g(&a, &phi).unwrap().add(&phi_g(&a, &psi).unwrap()).unwrap());
        }
    }

    #[test]
    fn projection_examples() {
        let a = alg(5, &[4]);
        let v = KGMatrix::identity(&a, 2).vstack(&KGMatrix::zeros(&a, 1, 2)).unwrap();
        let p = equivariant_projection(&v).unwrap();
        assert_eq!(p, KGMatrix::identity(&a, 2).hstack(&KGMatrix::zeros(&a, 2, 1)).unwrap());

        let e = fixture_e();
        let p = equivariant_projection(&e).unwrap();
        assert_eq!(p.mul(&e).unwrap(), KGMatrix::identity(e.algebra(), 1));
        let b = e.algebra().clone();
        assert_eq!(p, KGMatrix::from_rows(&b, vec![vec![b.one(), b.zero(), b.zero()]]).unwrap());

        let bad = KGMatrix::from_ints(&b, &[&[&[0, 1, 0, 1]], &[&[0, 2, 0, 2]]]).unwrap();
        assert!(matches!(equivariant_projection(&bad), Err(Error::NotFree { .. })));
    }

    #[test]
    fn projection_of_random_free_submodules() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for a in [alg(5, &[4]), alg(3, &[4]), alg(2, &[2, 2])] {
            let v = random(&a, 4, 2, &mut rng);
            if v.expanded_rank() < 2 * a.order() {
                continue;
            }
            let p = equivariant_projection(&v).unwrap();
            assert_eq!(p.mul(&v).unwrap(), KGMatrix::identity(&a, 2));
            let vp = v.mul(&p).unwrap();
            assert_eq!(vp.mul(&vp).unwrap(), vp);
        }
    }

    #[test]
    fn systematize_fixture_example() {
        let e = fixture_e();
        let a = e.algebra().clone();
        let s = systematize(&e).unwrap();
        assert_eq!(s.perm, vec![0, 1, 2]);
        assert_eq!(s.e_sys, e);
        let want_c = KGMatrix::from_rows(
            &a,
            vec![
                vec![e.get(1, 0).clone(), e.get(2, 0).clone()],
                vec![a.one().neg(), a.zero()],
                vec![a.zero(), a.one().neg()],
            ],
        )
        .unwrap();
        assert_eq!(s.c, want_c);
        assert_eq!(s.i, KGMatrix::from_rows(&a, vec![vec![a.one(), a.zero(), a.zero()]]).unwrap());
        assert!(s.c.transpose().mul(&e).unwrap().is_zero());
    }

    #[test]
    fn systematize_trivial_and_failure() {
        let a = alg(3, &[4]);
        let e = KGMatrix::identity(&a, 2).vstack(&KGMatrix::zeros(&a, 1, 2)).unwrap();
        let s = systematize(&e).unwrap();
        let want_c = KGMatrix::zeros(&a, 2, 1).vstack(&KGMatrix::identity(&a, 1).neg()).unwrap();
        assert_eq!(s.c, want_c);
        assert_eq!(s.i, KGMatrix::identity(&a, 2).hstack(&KGMatrix::zeros(&a, 2, 1)).unwrap());

        let bad = KGMatrix::from_ints(&a, &[&[&[0, 1, 0, 1]]]).unwrap();
        assert!(bad.expand().rank() < 4);
        assert!(matches!(systematize(&bad), Err(Error::NotSystematizable(0))));
    }

    #[test]
    fn systematize_random_with_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = alg(5, &[4]);
        for _ in 0..10 {
            let mut e = random(&a, 5, 2, &mut rng);
            e.set(0, 0, a.from_ints(&[0, 1, 0, 1]).unwrap());
            let Ok(s) = systematize(&e) else { continue };
            assert!(s.c.transpose().mul(&e).unwrap().is_zero());
            assert_eq!(s.i.mul(&s.e_sys).unwrap(), KGMatrix::identity(&a, 2));
            assert_eq!(s.e_sys.expanded_rank(), e.expanded_rank());
        }
    }

    #[test]
    fn split_kernel_examples() {
        let a = alg(5, &[4]);
        let w = a.field().root_of_unity(4).unwrap();
        let unit = KGMatrix::column_vector(&a, vec![a.one(), a.zero(), a.zero()]).unwrap();
        let (c, i) = split_kernel_and_inverse(&unit, w).unwrap();
        assert!(c.transpose().mul(&unit).unwrap().is_zero());
        assert!(c.select_rows(&[0]).is_zero());
        assert_eq!(c.select_rows(&[1, 2]).expanded_rank(), 8);
        assert_eq!(i, unit.transpose());

        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let e = random(&a, 4, 2, &mut rng);
        let (c, i) = split_kernel_and_inverse(&e, w).unwrap();
        assert!(c.transpose().mul(&e).unwrap().is_zero());
        assert_eq!(i.mul(&e).unwrap(), KGMatrix::identity(&a, 2));
        assert_eq!(c.expanded_rank(), 2 * 4);

        let b = alg(2, &[2]);
        let e = KGMatrix::identity(&b, 1);
        assert_eq!(split_kernel_and_inverse(&e, Fe::ONE).unwrap_err(), Error::NotSplit);
        let zero = KGMatrix::zeros(&a, 2, 1);
        assert!(matches!(split_kernel_and_inverse(&zero, w), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn expanded_rank_examples() {
        let a = alg(5, &[4]);
        assert_eq!(KGMatrix::identity(&a, 3).expanded_rank(), 12);
        assert_eq!(KGMatrix::zeros(&a, 2, 2).expanded_rank(), 0);
        assert_eq!(fixture_e().expanded_rank(), 4);
    }

    #[test]
    fn json_round_trip() {
        let e = fixture_e();
        let v = e.to_json();
        assert_eq!(KGMatrix::from_json(e.algebra(), &v).unwrap(), e);
        assert_eq!(v["entries"][1], serde_json::json!([1, 2, 2, 2]));
    }
}
