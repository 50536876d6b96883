//! Padé approximants over the residue algebra and basic decoding.
//!
//! For a received word `r`, a denominator is a nonzero `a0` in the span of
//! `E0` such that `a0 r` (pointwise) lies in the span of `E1`, which `C1`
//! checks. When the error is small, every denominator vanishes on its
//! support, so the error values can be found by a small dense solve on the
//! zeros of `a0`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::blackbox::{wiedemann_kernel_sample, FnOperator, SolveReport};
use crate::code::{rs_points, vandermonde, EquivariantCode, Message, OrbitLayout, ResidueVector};
use crate::error::{Error, Result};
use crate::ff::Fe;
use crate::galg::{GroupAlgebra, GroupAlgebraElement};
use crate::io;
use crate::kgmat::{flatten, split_kernel_and_inverse, unflatten, KGMatrix};
use crate::linalg::Matrix;

/// A code together with the auxiliary matrices of the basic decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoderData {
    code: EquivariantCode,
    /// When set, the decoder file refers to the code by this path instead of embedding it.
    pub code_ref: Option<String>,
    e0: KGMatrix,
    c1: KGMatrix,
    i1: KGMatrix,
    deg_d0: i64,
    d_basic: i64,
    radius: usize,
    c1t: KGMatrix,
    ct_expanded: Matrix,
}

/// A denominator `a0` (coordinates in the basis of `E0`) and numerator `a1`
/// (coordinates in the basis of `E1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadeApproximant {
    pub a0: Vec<GroupAlgebraElement>,
    pub a1: Vec<GroupAlgebraElement>,
}

/// `floor((N - o deg_D - 1 - g_Y) / 2)`, when the code records `deg_D`.
pub fn d_basic_formula(code: &EquivariantCode) -> Option<i64> {
    let deg_d = code.meta.deg_d?;
    let o = code.algebra().order() as i64;
    Some((code.length() as i64 - o * deg_d - 1 - code.g_y()).div_euclid(2))
}

impl DecoderData {
    pub fn new(code: EquivariantCode, e0: KGMatrix, c1: KGMatrix, i1: KGMatrix, deg_d0: i64) -> Result<DecoderData> {
        let alg = code.algebra().clone();
        let (n, o) = (code.n(), alg.order());
        let (k0, k1) = (e0.cols(), i1.rows());
        if e0.rows() != n || i1.cols() != n {
            return Err(Error::DimMismatch(format!("E0 and I1 must have {n} rows/columns")));
        }
        if k1 > n || (c1.rows(), c1.cols()) != (n, n - k1) {
            return Err(Error::DegreeWindow(format!(
                "C1 is {}x{} and I1 has {k1} rows for n = {n}",
                c1.rows(),
                c1.cols()
            )));
        }
        if **e0.algebra() != *alg || **c1.algebra() != *alg || **i1.algebra() != *alg {
            return Err(Error::Mismatch);
        }
        let generic = (k0 * o).saturating_sub(1).min(code.length().saturating_sub(k1 * o)) as i64;
        let d_basic = d_basic_formula(&code).unwrap_or(generic);
        if d_basic < 0 {
            return Err(Error::DegreeWindow(format!("decoding radius {d_basic} is negative")));
        }
        let rank = e0.expanded_rank();
        if rank != k0 * o {
            return Err(Error::InvariantViolation(format!("expanded rank of E0 is {rank}, expected {}", k0 * o)));
        }
        let c1t = c1.transpose();
        if k1 < n && !c1t.mul(code.e())?.is_zero() {
            return Err(Error::InvariantViolation("C1^T E != 0".into()));
        }
        let radius = d_basic.min(generic).max(0) as usize;
        let ct_expanded = code.c().transpose().expand();
        Ok(DecoderData { code, code_ref: None, e0, c1, i1, deg_d0, d_basic, radius, c1t, ct_expanded })
    }

    pub fn code(&self) -> &EquivariantCode {
        &self.code
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        self.code.algebra()
    }

    pub fn e0(&self) -> &KGMatrix {
        &self.e0
    }

    pub fn c1(&self) -> &KGMatrix {
        &self.c1
    }

    pub fn i1(&self) -> &KGMatrix {
        &self.i1
    }

    pub fn k0(&self) -> usize {
        self.e0.cols()
    }

    pub fn k1(&self) -> usize {
        self.i1.rows()
    }

    pub fn deg_d0(&self) -> i64 {
        self.deg_d0
    }

    /// Radius from the divisor degrees (or the generic bound for synthetic codes).
    pub fn d_basic(&self) -> i64 {
        self.d_basic
    }

    /// Number of errors the decoder is guaranteed to correct: `d_basic`, capped by
    /// what `E0` and `C1` can support (`k0 o - 1` and `N - k1 o`).
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Degree conditions on the auxiliary divisors; violations are warnings only.
    pub fn warnings(&self) -> Vec<String> {
        let meta = &self.code.meta;
        let mut out = Vec::new();
        if let (Some(deg_d), Some(deg_p)) = (meta.deg_d, meta.deg_p) {
            let g = meta.g_x;
            let deg_d1 = deg_d + self.deg_d0;
            if !(2 * g - 1 <= deg_d1 && deg_d1 < deg_p) {
                out.push(format!("degree window 2g_X-1 <= deg_D1 <= deg_P-1 fails: deg_D1={deg_d1}"));
            }
            if !(g <= self.deg_d0 && self.deg_d0 < deg_p) {
                out.push(format!("degree window g_X <= deg_D0 <= deg_P-1 fails: deg_D0={}", self.deg_d0));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "version": io::FORMAT_VERSION,
            "E0": self.e0.to_json(),
            "C1": self.c1.to_json(),
            "I1": self.i1.to_json(),
            "deg_D0": self.deg_d0,
        });
        match &self.code_ref {
            Some(path) => v["code_ref"] = json!(path),
            None => v["code"] = self.code.to_json(),
        }
        v
    }

    /// Parses a decoder file. A file with `"code_ref"` needs the referenced code in `external`;
    /// an inline code must agree with `external` when both are present.
    pub fn from_json(v: &Value, external: Option<&EquivariantCode>) -> Result<DecoderData> {
        io::check_version(v)?;
        let (code, code_ref) = match (v.get("code"), v.get("code_ref")) {
            (Some(inline), _) => {
                let code = EquivariantCode::from_json(inline)?;
                if external.is_some_and(|e| *e != code) {
                    return Err(Error::Mismatch);
                }
                (code, None)
            }
            (None, Some(path)) => {
                let path = path.as_str().ok_or_else(|| Error::Parse("\"code_ref\" must be a string".into()))?;
                let code = external
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("decoder refers to the code file {path}; supply it")))?;
                (code, Some(path.to_string()))
            }
            (None, None) => return Err(Error::Parse("decoder needs \"code\" or \"code_ref\"".into())),
        };
        let alg = code.algebra().clone();
        let e0 = KGMatrix::from_json(&alg, io::get(v, "E0")?)?;
        let c1 = KGMatrix::from_json(&alg, io::get(v, "C1")?)?;
        let i1 = KGMatrix::from_json(&alg, io::get(v, "I1")?)?;
        let deg_d0 = io::get(v, "deg_D0")?
            .as_i64()
            .ok_or_else(|| Error::Parse("\"deg_D0\" must be an integer".into()))?;
        let mut dd = DecoderData::new(code, e0, c1, i1, deg_d0)?;
        dd.code_ref = code_ref;
        Ok(dd)
    }

    pub fn to_text(&self) -> String {
        io::to_text(&self.to_json())
    }

    pub fn from_text(text: &str, external: Option<&EquivariantCode>) -> Result<DecoderData> {
        Self::from_json(&io::parse(text)?, external)
    }
}

/// Decoder for a degenerate Reed–Solomon code: `E0` evaluates polynomials of degree
/// `<= deg_d0`, `E1` those of degree `<= deg_D + deg_d0`.
pub fn make_rs_decoder_data(code: &EquivariantCode, deg_d0: usize) -> Result<DecoderData> {
    let alg = code.algebra().clone();
    if !alg.group().is_trivial() || code.meta.g_x != 0 {
        return Err(Error::InvariantViolation("not a genus-0 code over the trivial group".into()));
    }
    let deg_d = code
        .meta
        .deg_d
        .ok_or_else(|| Error::InvariantViolation("code records no deg_D".into()))? as usize;
    let n = code.n();
    let points = rs_points(alg.field(), n)?;
    if *code.e() != vandermonde(&alg, &points, deg_d) {
        return Err(Error::InvariantViolation("E is not the Vandermonde matrix of the standard points".into()));
    }
    if deg_d + deg_d0 >= n {
        return Err(Error::DegreeWindow(format!("deg_D + deg_D0 = {} needs more than {n} points", deg_d + deg_d0)));
    }
    let e0 = vandermonde(&alg, &points, deg_d0);
    let e1 = vandermonde(&alg, &points, deg_d + deg_d0);
    let (c1, i1) = split_kernel_and_inverse(&e1, Fe::ONE)?;
    DecoderData::new(code.clone(), e0, c1, i1, deg_d0 as i64)
}

/// Decoder for an orbit code with `k` generators: `E0` spans degrees `< k0 o`,
/// `E1` degrees `< (k + k0) o`.
pub fn make_orbit_decoder_data(layout: &OrbitLayout, code: &EquivariantCode, k0: usize) -> Result<DecoderData> {
    let k1 = code.k() + k0;
    if k0 == 0 || k1 > code.n() {
        return Err(Error::DegreeWindow(format!("need 0 < k0 and k + k0 <= n, got k0={k0}, k={}", code.k())));
    }
    if *code.e() != layout.evaluation_matrix(code.k()) {
        return Err(Error::InvariantViolation("E does not match the orbit layout".into()));
    }
    let omega = layout.alg.field().root_of_unity(layout.alg.group().exponent() as u64)?;
    let (c1, i1) = split_kernel_and_inverse(&layout.evaluation_matrix(k1), omega)?;
    DecoderData::new(code.clone(), layout.evaluation_matrix(k0), c1, i1, k0 as i64 - 1)
}

fn check_lengths(dd: &DecoderData, r: &[GroupAlgebraElement], x: &[GroupAlgebraElement]) -> Result<()> {
    if r.len() != dd.code.n() || x.len() != dd.k0() {
        return Err(Error::DimMismatch(format!(
            "received word of length {} and denominator of length {}; expected {} and {}",
            r.len(),
            x.len(),
            dd.code.n(),
            dd.k0()
        )));
    }
    Ok(())
}

/// Coefficientwise (pointwise on the `N` points) product.
pub fn pointwise(a: &[GroupAlgebraElement], b: &[GroupAlgebraElement]) -> Vec<GroupAlgebraElement> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let f = x.field();
            let coeffs = x.coeffs().iter().zip(y.coeffs()).map(|(&u, &v)| f.mul(u, v)).collect();
            x.algebra().element(coeffs).expect("same algebra")
        })
        .collect()
}

/// Values of the denominator with coordinates `x`, i.e. `E0 x`.
pub fn denominator_values(dd: &DecoderData, x: &[GroupAlgebraElement]) -> Result<ResidueVector> {
    dd.e0.apply(x)
}

fn product_syndrome(dd: &DecoderData, r: &[GroupAlgebraElement], x: &[GroupAlgebraElement]) -> Result<Vec<GroupAlgebraElement>> {
    let prod = pointwise(&denominator_values(dd, x)?, r);
    if dd.k1() == dd.code.n() {
        return Ok(Vec::new());
    }
    dd.c1t.apply(&prod)
}

/// Whether `(E0 x) r` lies in the span of `E1`, checked by `C1`.
pub fn denominator_check(dd: &DecoderData, r: &[GroupAlgebraElement], x: &[GroupAlgebraElement]) -> Result<bool> {
    check_lengths(dd, r, x)?;
    if x.iter().all(GroupAlgebraElement::is_zero) {
        return Err(Error::NotADenominatorCandidate);
    }
    Ok(product_syndrome(dd, r, x)?.iter().all(GroupAlgebraElement::is_zero))
}

/// A verified denominator and the black-box report of its search.
#[derive(Clone, Debug)]
pub struct Denominator {
    pub x: Vec<GroupAlgebraElement>,
    pub report: SolveReport,
}

/// Samples the kernel of `x -> C1^T ((E0 x) r)` over `K` with the Wiedemann solver.
pub fn find_denominator(dd: &DecoderData, r: &[GroupAlgebraElement], seed: u64, max_attempts: usize) -> Result<Denominator> {
    let alg = dd.algebra().clone();
    let o = alg.order();
    if r.len() != dd.code.n() {
        return Err(Error::DimMismatch(format!("received word of length {}", r.len())));
    }
    let rows = (dd.code.n() - dd.k1()) * o;
    let op = FnOperator::new(alg.field().clone(), rows, dd.k0() * o, |flat: &[Fe]| {
        let x = unflatten(&alg, flat).expect("length is a multiple of the order");
        flatten(&product_syndrome(dd, r, &x).expect("shapes fixed by construction"))
    });
    let report = wiedemann_kernel_sample(&op, seed, max_attempts)?;
    let x = unflatten(&alg, &report.solution)?;
    if !denominator_check(dd, r, &x)? {
        return Err(Error::CheckFailed("sampled denominator does not pass the check".into()));
    }
    Ok(Denominator { x, report })
}

/// `a1 = I1 ((E0 x) r)`, after confirming with `C1` that the product is in the span of `E1`.
pub fn pade_numerator(dd: &DecoderData, r: &[GroupAlgebraElement], x: &[GroupAlgebraElement]) -> Result<PadeApproximant> {
    check_lengths(dd, r, x)?;
    if !denominator_check(dd, r, x)? {
        return Err(Error::CheckFailed("(E0 x) r is not in the span of E1".into()));
    }
    let prod = pointwise(&denominator_values(dd, x)?, r);
    let a1 = dd.i1.apply(&prod)?;
    Ok(PadeApproximant { a0: x.to_vec(), a1 })
}

/// Result of a successful [`basic_decode`].
#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    pub codeword: ResidueVector,
    pub message: Message,
    pub error: ResidueVector,
    /// Denominator coordinates; `None` when the syndrome was already zero.
    pub denominator: Option<Vec<GroupAlgebraElement>>,
    /// Flat indices `i o + s` of the points where the denominator vanishes.
    pub zeros: Vec<usize>,
    pub blackbox_calls: u64,
    pub blackbox_attempts: usize,
    /// One line per pipeline stage.
    pub trace: Vec<String>,
}

/// Deterministic per-round seed derivation (splitmix64).
pub fn derive_seed(seed: u64, round: u64) -> u64 {
    let mut z = seed.wrapping_add(round.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn decode_fail(msg: impl Into<String>) -> Error {
    Error::DecodeFail(msg.into())
}

/// Syndrome fast path, denominator search, error location on the zeros of the
/// denominator, dense solve for the error values, interpolation.
/// Every returned triple is checked: `r = c + e`, `C^T c = 0`, `E m = c`, `supp e ⊆ zeros`.
pub fn basic_decode(dd: &DecoderData, r: &[GroupAlgebraElement], seed: u64, max_attempts: usize) -> Result<DecodeOutcome> {
    let code = &dd.code;
    let alg = dd.algebra().clone();
    let syndrome = code.parity_check(r)?;
    let mut trace = vec![format!("syndrome weight={}", syndrome.iter().filter(|s| !s.is_zero()).count())];
    if syndrome.iter().all(GroupAlgebraElement::is_zero) {
        let message = code.interpolate(r).map_err(|e| decode_fail(format!("clean word failed to interpolate: {e}")))?;
        trace.push("fast path: zero syndrome".into());
        return Ok(DecodeOutcome {
            codeword: r.to_vec(),
            message,
            error: vec![alg.zero(); r.len()],
            denominator: None,
            zeros: Vec::new(),
            blackbox_calls: 0,
            blackbox_attempts: 0,
            trace,
        });
    }

    let den = find_denominator(dd, r, seed, max_attempts).map_err(|e| decode_fail(format!("denominator search: {e}")))?;
    trace.push(format!(
        "denominator attempts={} calls={} extension_degree={}",
        den.report.attempts, den.report.calls, den.report.extension_degree
    ));
    let values = flatten(&denominator_values(dd, &den.x)?);
    let zeros: Vec<usize> = values.iter().enumerate().filter(|(_, v)| v.is_zero()).map(|(j, _)| j).collect();
    trace.push(format!("support candidates={}", zeros.len()));
    if zeros.len() == values.len() {
        return Err(decode_fail("denominator vanishes at every point"));
    }

    let rhs = flatten(&syndrome);
    let sub = dd.ct_expanded.select_cols(&zeros);
    let eps_z = sub.solve(&rhs).map_err(|_| decode_fail("no error pattern on the zeros of the denominator"))?;
    let mut eps_flat = vec![Fe::ZERO; values.len()];
    for (&j, &v) in zeros.iter().zip(&eps_z) {
        eps_flat[j] = v;
    }
    trace.push(format!("error weight={}", eps_flat.iter().filter(|v| !v.is_zero()).count()));
    let error = unflatten(&alg, &eps_flat)?;
    let codeword: Vec<_> = r.iter().zip(&error).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
    let message = code
        .interpolate(&codeword)
        .map_err(|e| decode_fail(format!("corrected word failed to interpolate: {e}")))?;
    trace.push("interpolated".into());

    // soundness
    let sum: Vec<_> = codeword.iter().zip(&error).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
    let sound = sum == r
        && code.parity_check(&codeword)?.iter().all(GroupAlgebraElement::is_zero)
        && code.encode(&message)? == codeword
        && eps_flat.iter().zip(&values).all(|(e, v)| e.is_zero() || v.is_zero());
    if !sound {
        return Err(decode_fail("output failed its consistency checks"));
    }
    Ok(DecodeOutcome {
        codeword,
        message,
        error,
        denominator: Some(den.x),
        zeros,
        blackbox_calls: den.report.calls,
        blackbox_attempts: den.report.attempts,
        trace,
    })
}

/// [`basic_decode`] over `rounds` derived seeds, stopping at the first success.
pub fn decode_with_retries(dd: &DecoderData, r: &[GroupAlgebraElement], seed: u64, max_attempts: usize, rounds: usize) -> Result<DecodeOutcome> {
    let mut last = decode_fail("no rounds");
    for round in 0..rounds.max(1) {
        match basic_decode(dd, r, derive_seed(seed, round as u64), max_attempts) {
            Ok(mut out) => {
                out.trace.insert(0, format!("round={round}"));
                return Ok(out);
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{orbit_code, paper_fixture, rs_degenerate_code};
    use crate::ff::Field;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rs() -> DecoderData {
        make_rs_decoder_data(&rs_degenerate_code(13, 12, 5).unwrap(), 3).unwrap()
    }

    fn corrupt(dd: &DecoderData, c: &[GroupAlgebraElement], t: usize, rng: &mut ChaCha8Rng) -> (Vec<GroupAlgebraElement>, Vec<usize>) {
        let alg = dd.algebra();
        let o = alg.order();
        let n_pts = c.len() * o;
        let f = alg.field();
        let mut flat = flatten(c);
        let pos = sample(rng, n_pts, t).into_vec();
        for &j in &pos {
            flat[j] = f.add(flat[j], f.random_nonzero(rng));
        }
        (unflatten(alg, &flat).unwrap(), pos)
    }

    #[test]
    fn rs_decoder_shapes() {
        let dd = rs();
        assert_eq!((dd.e0().rows(), dd.e0().cols()), (12, 4));
        assert_eq!((dd.c1().rows(), dd.c1().cols()), (12, 3));
        assert_eq!((dd.i1().rows(), dd.i1().cols()), (9, 12));
        assert_eq!((dd.d_basic(), dd.radius()), (3, 3));
        assert!(dd.warnings().is_empty());
        let code = rs_degenerate_code(13, 12, 5).unwrap();
        assert_eq!(make_rs_decoder_data(&code, 0).unwrap().radius(), 0);
        assert!(matches!(make_rs_decoder_data(&code, 7), Err(Error::DegreeWindow(_))));
    }

    #[test]
    fn fixture_decoder_is_refused() {
        let code = paper_fixture();
        assert_eq!(d_basic_formula(&code), Some(-1));
        let alg = code.algebra().clone();
        let e0 = code.e().clone();
        let c1 = KGMatrix::zeros(&alg, 3, 1);
        let i1 = KGMatrix::zeros(&alg, 2, 3);
        assert!(matches!(DecoderData::new(code, e0, c1, i1, 2), Err(Error::DegreeWindow(_))));
    }

    #[test]
    fn denominator_check_examples() {
        let dd = rs();
        let alg = dd.algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m: Vec<_> = (0..6).map(|_| alg.random(&mut rng)).collect();
        let c = dd.code().encode(&m).unwrap();
        let one: Vec<_> = (0..4).map(|j| if j == 0 { alg.one() } else { alg.zero() }).collect();
        assert!(denominator_check(&dd, &c, &one).unwrap());
        assert_eq!(denominator_check(&dd, &c, &vec![alg.zero(); 4]), Err(Error::NotADenominatorCandidate));
        let (r, _) = corrupt(&dd, &c, 5, &mut rng);
        let passes = (0..50)
            .filter(|_| {
                let x: Vec<_> = (0..4).map(|_| alg.random(&mut rng)).collect();
                !x.iter().all(|e| e.is_zero()) && denominator_check(&dd, &r, &x).unwrap()
            })
            .count();
        assert!(passes <= 2, "{passes} random candidates passed");
    }

    #[test]
    fn denominators_match_error_locators() {
        let dd = rs();
        let alg = dd.algebra().clone();
        let f = alg.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let m: Vec<_> = (0..6).map(|_| alg.random(&mut rng)).collect();
            let c = dd.code().encode(&m).unwrap();
            let (r, pos) = corrupt(&dd, &c, 3, &mut rng);
            // the locator prod (X - x_j) over the error points passes the check
            let mut loc = vec![Fe::ONE];
            for &j in &pos {
                let x = f.from_u64(j as u64 + 1);
                let mut next = vec![Fe::ZERO; loc.len() + 1];
                for (i, &a) in loc.iter().enumerate() {
                    next[i + 1] = f.add(next[i + 1], a);
                    next[i] = f.sub(next[i], f.mul(a, x));
                }
                loc = next;
            }
            let loc_x: Vec<_> = loc.iter().map(|&a| alg.constant(a)).collect();
            assert!(denominator_check(&dd, &r, &loc_x).unwrap());
            let found = find_denominator(&dd, &r, 9, 40).unwrap().x;
            let ratio = f.div(found[3].coeff(0), Fe::ONE).unwrap();
            let scaled: Vec<_> = loc_x.iter().map(|a| a.scale(ratio)).collect();
            assert_eq!(found, scaled);
            let pade = pade_numerator(&dd, &r, &found).unwrap();
            assert_eq!(pade.a1.len(), 9);
        }
    }

    #[test]
    fn pade_numerator_examples() {
        let dd = rs();
        let alg = dd.algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m: Vec<_> = (0..6).map(|_| alg.random(&mut rng)).collect();
        let c = dd.code().encode(&m).unwrap();
        let one: Vec<_> = (0..4).map(|j| if j == 0 { alg.one() } else { alg.zero() }).collect();
        let pade = pade_numerator(&dd, &c, &one).unwrap();
        let mut embedded = m.clone();
        embedded.resize(9, alg.zero());
        assert_eq!(pade.a1, embedded);
        assert!(pade_numerator(&dd, &vec![alg.zero(); 12], &one).unwrap().a1.iter().all(|a| a.is_zero()));
        let (r, _) = corrupt(&dd, &c, 5, &mut rng);
        assert!(matches!(pade_numerator(&dd, &r, &one), Err(Error::CheckFailed(_))));
    }

    #[test]
    fn rs_decoding_within_radius() {
        let dd = rs();
        let alg = dd.algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for trial in 0..100 {
            let m: Vec<_> = (0..6).map(|_| alg.random(&mut rng)).collect();
            let c = dd.code().encode(&m).unwrap();
            let t = rng.gen_range(0..=3);
            let (r, pos) = corrupt(&dd, &c, t, &mut rng);
            let out = decode_with_retries(&dd, &r, trial, 40, 3).unwrap();
            assert_eq!(out.message, m);
            assert_eq!(out.codeword, c);
            for j in pos {
                assert!(out.zeros.contains(&j) || t == 0);
            }
            if t == 0 {
                assert!(out.denominator.is_none());
            }
        }
    }

    #[test]
    fn orbit_decoding_within_radius() {
        let layout = OrbitLayout::new(Field::prime(97).unwrap(), 4, 8).unwrap();
        let code = orbit_code(&layout, 2).unwrap();
        let dd = make_orbit_decoder_data(&layout, &code, 2).unwrap();
        assert_eq!(dd.radius(), 7);
        let alg = dd.algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..20 {
            let m: Vec<_> = (0..2).map(|_| alg.random(&mut rng)).collect();
            let c = code.encode(&m).unwrap();
            let (r, _) = corrupt(&dd, &c, 7, &mut rng);
            let out = decode_with_retries(&dd, &r, trial, 40, 3).unwrap();
            assert_eq!(out.message, m);
        }
    }

    #[test]
    fn decoder_files_round_trip() {
        let dd = rs();
        let text = dd.to_text();
        let back = DecoderData::from_text(&text, None).unwrap();
        assert_eq!(back, dd);
        assert_eq!(back.to_text(), text);
        let mut by_ref = dd.clone();
        by_ref.code_ref = Some("rs.json".into());
        let text = by_ref.to_text();
        assert!(DecoderData::from_text(&text, None).is_err());
        let back = DecoderData::from_text(&text, Some(dd.code())).unwrap();
        assert_eq!(back.to_text(), text);
    }
}
