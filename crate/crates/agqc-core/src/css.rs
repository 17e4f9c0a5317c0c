//! Binary expansion of GF(2^t) codes, the CSS construction, and the
//! one-point algebraic-geometry pipeline that joins them.
//!
//! Expanding a length-n code over GF(2^t) coordinate-wise in a basis gives a
//! binary [t*n, t*k] code. When the basis is self-dual (Tr(b_i b_j) is the
//! identity), expansion commutes with duality: B(C) dual = B(C dual). That
//! makes the functional/residue pair of a one-point divisor into a nested
//! pair of binary codes, and any nested pair dual(C1) <= C2 yields a CSS
//! quantum code [[n, k1 + k2 - n, min{d1, d2}]]. On a curve with N rational
//! points and genus g, evaluating at all points except the common pole and
//! one auxiliary point Q produces [[t(N-2), t*m', min{N-2-m, m-m'-2g+2}]]
//! for any 2g-2 < m < N and 0 <= m' < m - 2g + 2.
//!
//! Stabilizer matrices follow the convention h_z = gen(dual(C1)) (Z-type)
//! and h_x = gen(dual(C2)) (X-type), so the logical count reads directly as
//! n - rank(h_x) - rank(h_z). Exact quantum distances refine the designed
//! bound by enumerating the nontrivial cosets of each dual inside its
//! partner, subject to the enumeration budget.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binmat::{min_weight_masked, BinMat, BinaryCode};
use crate::curves::{CurveModel, DivisorSpec};
use crate::error::{Error, Result};
use crate::gf::FieldBasis;
use crate::linalg::LinearCodeQ;

/// Componentwise binary expansion of a GF(2^t) code in the given basis.
///
/// Each generator row scaled by each basis element spans the image, so the
/// result is a [t*n, t*k] binary code; symbol i of a codeword occupies bit
/// columns i*t .. (i+1)*t, ordered by basis index.
pub fn binary_expand(c: &LinearCodeQ, basis: &FieldBasis) -> Result<BinaryCode> {
    if basis.spec() != c.spec() {
        return Err(Error::Usage(format!(
            "basis over {} cannot expand a code over {}",
            basis.spec(),
            c.spec()
        )));
    }
    let t = c.spec().t();
    let n_bits = t * c.n();
    if c.k() == 0 {
        return Ok(BinaryCode::from_gen(&BinMat::zeros(0, n_bits)));
    }
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(c.k() * t);
    for r in 0..c.k() {
        let row = c.generator().row(r);
        for &b in basis.elements() {
            let mut bits = vec![0u8; n_bits];
            for (i, &sym) in row.iter().enumerate() {
                let coords = basis.expand(sym * b);
                for l in 0..t {
                    bits[i * t + l] = ((coords >> l) & 1) as u8;
                }
            }
            rows.push(bits);
        }
    }
    let code = BinaryCode::from_gen(&BinMat::from_bit_rows(&rows)?);
    if code.k() != t * c.k() {
        return Err(Error::Defect(format!(
            "binary expansion dropped rank: expected dimension {}, got {}",
            t * c.k(),
            code.k()
        )));
    }
    Ok(code)
}

/// Whether duality commutes with binary expansion for this code and basis:
/// dual(B(C)) == B(dual(C)) as codeword sets. Guaranteed true whenever the
/// basis is self-dual; a non-self-dual basis may (and does) fail.
pub fn verify_dual_expansion(c: &LinearCodeQ, basis: &FieldBasis) -> Result<bool> {
    let lhs = binary_expand(c, basis)?.dual();
    let rhs = binary_expand(&c.dual(), basis)?;
    Ok(lhs == rhs)
}

/// Provenance of a quantum code or parameter set: which statement produced
/// it and with what inputs. The tags are wire values ("3.1", "c32", "c33",
/// "c34", "2.1") used verbatim in JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceInfo {
    pub theorem: String,
    pub curve: Option<String>,
    pub t: u64,
    pub m: u64,
    pub mprime: u64,
}

/// Quantum code parameters [[n_q, k_q, d_designed]] with provenance, before
/// (or without) constructing stabilizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumParams {
    pub n_q: u64,
    pub k_q: u64,
    pub d_designed: u64,
    /// Rational point count N of the underlying (possibly virtual) curve.
    pub n_points: u64,
    pub genus: u64,
    pub source: SourceInfo,
}

/// A CSS quantum code [[n_q, k_q, d]] with stabilizer matrices and the two
/// classical binary codes it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    n_q: usize,
    k_q: usize,
    d_designed: u64,
    d_exact: Option<u64>,
    h_x: BinMat,
    h_z: BinMat,
    c1: BinaryCode,
    c2: BinaryCode,
    source: Option<SourceInfo>,
}

impl CssCode {
    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn k_q(&self) -> usize {
        self.k_q
    }

    pub fn d_designed(&self) -> u64 {
        self.d_designed
    }

    pub fn d_exact(&self) -> Option<u64> {
        self.d_exact
    }

    /// Z-type stabilizer generators: the dual of C1, row-canonical.
    pub fn h_z(&self) -> &BinMat {
        &self.h_z
    }

    /// X-type stabilizer generators: the dual of C2, row-canonical.
    pub fn h_x(&self) -> &BinMat {
        &self.h_x
    }

    pub fn c1(&self) -> &BinaryCode {
        &self.c1
    }

    pub fn c2(&self) -> &BinaryCode {
        &self.c2
    }

    pub fn source(&self) -> Option<&SourceInfo> {
        self.source.as_ref()
    }

    /// Compute and attach the exact distance; requires both classical
    /// enumerations to fit the budget.
    pub fn attach_exact_distance(&mut self, budget: u64) -> Result<u64> {
        let d = css_exact_distance(&self.c1, &self.c2, budget)? as u64;
        if d < self.d_designed {
            return Err(Error::Defect(format!(
                "exact distance {d} fell below the designed bound {}",
                self.d_designed
            )));
        }
        self.d_exact = Some(d);
        Ok(d)
    }

    /// Serializable record of this code; requires provenance, which the
    /// pipeline attaches.
    pub fn record(&self) -> Result<CssRecord> {
        let source = self.source.clone().ok_or_else(|| {
            Error::Usage("record requires provenance; build the code via the pipeline".into())
        })?;
        Ok(CssRecord {
            n: self.n_q as u64,
            k: self.k_q as u64,
            d_designed: self.d_designed,
            d_exact: self.d_exact,
            source,
            h_x: bit_rows(&self.h_x),
            h_z: bit_rows(&self.h_z),
        })
    }
}

/// JSON record of a constructed code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssRecord {
    pub n: u64,
    pub k: u64,
    pub d_designed: u64,
    pub d_exact: Option<u64>,
    pub source: SourceInfo,
    pub h_x: Vec<Vec<u8>>,
    pub h_z: Vec<Vec<u8>>,
}

fn bit_rows(m: &BinMat) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|r| m.row_bits(r)).collect()
}

fn row_string(m: &BinMat, r: usize) -> String {
    m.row_bits(r)
        .iter()
        .map(|&b| char::from(b'0' + b))
        .collect()
}

/// Build a CSS code from nested binary codes: requires dual(c1) <= c2, and
/// yields [[n, k1 + k2 - n, min{d1, d2}]] where d1, d2 are the (designed)
/// distances of c1 and c2.
pub fn css_construct(c1: &BinaryCode, c2: &BinaryCode, d1: i64, d2: i64) -> Result<CssCode> {
    if c1.n() != c2.n() {
        return Err(Error::Usage(format!(
            "length mismatch: c1 has n = {}, c2 has n = {}",
            c1.n(),
            c2.n()
        )));
    }
    let d = d1.min(d2);
    if d < 1 {
        return Err(Error::parameter(format!(
            "designed distance must be at least 1, got min{{{d1}, {d2}}} = {d}"
        )));
    }
    let dual1 = c1.dual();
    for r in 0..dual1.k() {
        if !c2.contains_row(dual1.generator(), r) {
            return Err(Error::Construction(format!(
                "CSS containment failed: dual(c1) generator row {r} = {} is not in c2",
                row_string(dual1.generator(), r)
            )));
        }
    }
    let dual2 = c2.dual();
    let h_z = dual1.generator().clone();
    let h_x = dual2.generator().clone();
    if !h_x.mul_transpose_is_zero(&h_z) {
        return Err(Error::Defect(
            "stabilizer orthogonality h_x * h_z^T = 0 failed despite containment".into(),
        ));
    }
    let n = c1.n();
    let k_q = c1.k() + c2.k() - n;
    assert_eq!(
        k_q,
        n - h_x.rows() - h_z.rows(),
        "logical count must equal n - rank(h_x) - rank(h_z)"
    );
    Ok(CssCode {
        n_q: n,
        k_q,
        d_designed: d as u64,
        d_exact: None,
        h_x,
        h_z,
        c1: c1.clone(),
        c2: c2.clone(),
        source: None,
    })
}

/// Minimum weight over `outer` minus `inner`, for inner a subcode of outer:
/// extend inner's generator to a basis of outer and walk the span, counting
/// only words that use at least one extension row.
fn coset_min_weight(outer: &BinaryCode, inner: &BinaryCode, budget: u64) -> Result<u32> {
    let mut stacked = inner.generator().clone();
    let mut rank = inner.k();
    for r in 0..outer.k() {
        let cand = stacked.stack(&BinMat::from_bit_rows(&[outer.generator().row_bits(r)])?)?;
        if cand.rank() > rank {
            rank += 1;
            stacked = cand;
        }
    }
    if rank != outer.k() {
        return Err(Error::Defect(
            "coset enumeration requires inner to be a subcode of outer".into(),
        ));
    }
    if stacked.rows() >= 63 {
        return Err(Error::capacity(format!(
            "coset enumeration walks 2^{} words; use min_weight_upper sampling instead",
            stacked.rows()
        )));
    }
    let mask = ((1u64 << (outer.k() - inner.k())) - 1) << inner.k();
    min_weight_masked(&stacked, mask, budget)
}

/// Exact distance of the CSS code built from c1, c2: the least weight among
/// codewords of c1 outside dual(c2) or of c2 outside dual(c1). For k_q = 0
/// there are no logical words; by convention the result is then the least
/// nonzero weight in c1 or c2.
pub fn css_exact_distance(c1: &BinaryCode, c2: &BinaryCode, budget: u64) -> Result<u32> {
    if !c1.dual().is_subcode_of(c2)? {
        return Err(Error::Usage(
            "CSS containment dual(c1) <= c2 does not hold".into(),
        ));
    }
    let k_q = c1.k() + c2.k() - c1.n();
    if k_q == 0 {
        let mut best = u32::MAX;
        for c in [c1, c2] {
            if c.k() > 0 {
                best = best.min(c.min_distance_exact(budget)?);
            }
        }
        if best == u32::MAX {
            return Err(Error::Domain(
                "zero-dimensional codes carry no nonzero codewords".into(),
            ));
        }
        return Ok(best);
    }
    let a = coset_min_weight(c1, &c2.dual(), budget)?;
    let b = coset_min_weight(c2, &c1.dual(), budget)?;
    Ok(a.min(b))
}

fn check_divisor_range(n_points: u64, g: u64, m: u64, mprime: u64) -> Result<()> {
    let g2 = 2 * g as i64 - 2;
    if m as i64 <= g2 {
        return Err(Error::parameter(format!(
            "2g - 2 < m violated: m = {m}, 2g - 2 = {g2}"
        )));
    }
    if m >= n_points {
        return Err(Error::parameter(format!(
            "m < N violated: m = {m}, N = {n_points}"
        )));
    }
    if mprime as i64 >= m as i64 - g2 {
        return Err(Error::parameter(format!(
            "m' < m - 2g + 2 violated: m' = {mprime}, m - 2g + 2 = {}",
            m as i64 - g2
        )));
    }
    Ok(())
}

fn designed_distance(n_points: u64, g: u64, m: u64, mprime: u64) -> Result<u64> {
    let d1 = n_points as i64 - 2 - m as i64;
    let d2 = m as i64 - mprime as i64 - 2 * g as i64 + 2;
    let d = d1.min(d2);
    if d < 1 {
        return Err(Error::parameter(format!(
            "designed distance must be at least 1, got min{{{d1}, {d2}}} = {d}"
        )));
    }
    Ok(d as u64)
}

/// Quantum parameters [[t(N-2), t*m', min{N-2-m, m-m'-2g+2}]] from a curve
/// with N rational points and genus g, without constructing the code.
pub fn theorem31_params(
    n_points: u64,
    g: u64,
    t: u64,
    m: u64,
    mprime: u64,
) -> Result<QuantumParams> {
    if t == 0 {
        return Err(Error::parameter("expansion degree t must be at least 1"));
    }
    if n_points < 2 {
        return Err(Error::parameter(format!(
            "need at least two rational points to delete, got N = {n_points}"
        )));
    }
    check_divisor_range(n_points, g, m, mprime)?;
    let d = designed_distance(n_points, g, m, mprime)?;
    let n_q = t
        .checked_mul(n_points - 2)
        .ok_or_else(|| Error::capacity("t(N - 2) overflows u64"))?;
    let k_q = t * mprime;
    assert!(n_q >= 1 && k_q <= n_q, "parameter sanity");
    Ok(QuantumParams {
        n_q,
        k_q,
        d_designed: d,
        n_points,
        genus: g,
        source: SourceInfo {
            theorem: "3.1".into(),
            curve: None,
            t,
            m,
            mprime,
        },
    })
}

/// Every admissible parameter row for a curve shape (N, g, t), deduplicated
/// to the best designed distance per (n_q, k_q) and sorted by k_q.
///
/// The sweep runs m ascending then m' ascending; among rows tying on
/// distance the earliest (m, m') is kept, so output is deterministic.
pub fn parameter_table(n_points: u64, g: u64, t: u64) -> Vec<QuantumParams> {
    parameter_table_ranged(n_points, g, t, (0, n_points), (0, n_points))
}

/// parameter_table restricted to inclusive ranges of m and m'.
pub fn parameter_table_ranged(
    n_points: u64,
    g: u64,
    t: u64,
    m_range: (u64, u64),
    mprime_range: (u64, u64),
) -> Vec<QuantumParams> {
    let mut best: std::collections::BTreeMap<(u64, u64), QuantumParams> =
        std::collections::BTreeMap::new();
    for m in m_range.0..=m_range.1.min(n_points) {
        for mprime in mprime_range.0..=mprime_range.1.min(n_points) {
            let Ok(p) = theorem31_params(n_points, g, t, m, mprime) else {
                continue;
            };
            match best.get(&(p.n_q, p.k_q)) {
                Some(prev) if prev.d_designed >= p.d_designed => {}
                _ => {
                    best.insert((p.n_q, p.k_q), p);
                }
            }
        }
    }
    best.into_values().collect()
}

/// The three specialized parameter families. Tags are wire values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryFamily {
    /// Projective line over GF(2^t): (N, g) = (2^t + 1, 0), factor t.
    C32,
    /// Maximal elliptic curve over GF(2^(2t)): (N, g) = (4^t + 2^(t+1) + 1, 1),
    /// factor 2t.
    C33,
    /// Hermitian-type curve over GF(2^(2t)): (N, g) = (8^t + 1, 2^(t-1)(2^t - 1)),
    /// factor 2t.
    C34,
}

impl CorollaryFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            CorollaryFamily::C32 => "c32",
            CorollaryFamily::C33 => "c33",
            CorollaryFamily::C34 => "c34",
        }
    }
}

impl FromStr for CorollaryFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<CorollaryFamily> {
        match s {
            "c32" => Ok(CorollaryFamily::C32),
            "c33" => Ok(CorollaryFamily::C33),
            "c34" => Ok(CorollaryFamily::C34),
            other => Err(Error::Usage(format!(
                "unknown family tag {other:?} (expected c32, c33, or c34)"
            ))),
        }
    }
}

impl std::fmt::Display for CorollaryFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Specialized parameter calculators for the three stock families; each is
/// the general formula at its (N, g), with the family's own range checks.
pub fn corollary_params(
    family: CorollaryFamily,
    t: u64,
    m: u64,
    mprime: u64,
) -> Result<QuantumParams> {
    if t == 0 {
        return Err(Error::parameter("family parameter t must be at least 1"));
    }
    let pow = |base: u64, exp: u64| -> Result<u64> {
        let exp32 = u32::try_from(exp).map_err(|_| Error::capacity("exponent overflow"))?;
        base.checked_pow(exp32)
            .ok_or_else(|| Error::capacity(format!("{base}^{exp} overflows u64")))
    };
    let (n_points, g, factor) = match family {
        CorollaryFamily::C32 => (pow(2, t)? + 1, 0, t),
        CorollaryFamily::C33 => {
            let n = pow(4, t)? + pow(2, t + 1)? + 1;
            // Stated range: m' < m < N - 2.
            if m + 2 >= n {
                return Err(Error::parameter(format!(
                    "m < 4^t + 2^(t+1) - 1 violated: m = {m}, bound = {}",
                    n - 2
                )));
            }
            (n, 1, 2 * t)
        }
        CorollaryFamily::C34 => {
            let n = pow(8, t)? + 1;
            let g = pow(2, t)? * (pow(2, t)? - 1) / 2;
            // Stated range: 2^t(2^t - 1) - 2 < m < 8^t - 1.
            if m + 1 >= n {
                return Err(Error::parameter(format!(
                    "m < 8^t - 1 violated: m = {m}, bound = {}",
                    n - 1
                )));
            }
            (n, g, 2 * t)
        }
    };
    let mut params = theorem31_params(n_points, g, factor, m, mprime)?;
    params.source = SourceInfo {
        theorem: family.tag().into(),
        curve: None,
        t,
        m,
        mprime,
    };
    Ok(params)
}

/// Wire name and family parameter of a curve model.
fn curve_descriptor(curve: &CurveModel) -> (&'static str, u64) {
    match curve {
        CurveModel::ProjectiveLine { t } => ("p1", *t as u64),
        CurveModel::Hermitian { t } => ("hermitian", *t as u64),
    }
}

/// Construct the CSS code of a one-point divisor pair on an explicit curve:
/// T1 = C_L(m*Pinf, D), T2 = C_Omega(m*Pinf - m'*Q, D), both expanded in a
/// self-dual basis (the canonical one unless overridden), then joined by the
/// CSS construction. D is every rational point except Pinf and Q.
pub fn theorem31_pipeline(
    curve: &CurveModel,
    m: u32,
    mprime: u32,
    basis_choice: Option<&FieldBasis>,
) -> Result<CssCode> {
    let n_points = curve.num_points() as u64;
    let g = curve.genus() as u64;
    let factor = curve.expansion_degree() as u64;
    check_divisor_range(n_points, g, m as u64, mprime as u64)?;
    designed_distance(n_points, g, m as u64, mprime as u64)?;
    let d1 = n_points as i64 - 2 - m as i64;
    let d2 = m as i64 - mprime as i64 - 2 * g as i64 + 2;

    let q_point = curve.default_q_point();
    let t1 = curve.functional_code(&DivisorSpec::new(m, 0, q_point))?;
    let t2 = curve.residue_code(&DivisorSpec::new(m, mprime, q_point))?;

    let canonical;
    let basis = match basis_choice {
        Some(b) => {
            if b.spec() != curve.field_spec() {
                return Err(Error::Usage(format!(
                    "basis over {} does not match the curve field {}",
                    b.spec(),
                    curve.field_spec()
                )));
            }
            b
        }
        None => {
            canonical = FieldBasis::canonical_self_dual(curve.field_spec());
            &canonical
        }
    };
    let b1 = binary_expand(&t1, basis)?;
    let b2 = binary_expand(&t2, basis)?;
    if !b1.dual().is_subcode_of(&b2)? {
        return Err(Error::Defect(
            "guaranteed containment dual(B(T1)) <= B(T2) failed".into(),
        ));
    }
    let mut css = css_construct(&b1, &b2, d1, d2)?;
    let expected_k = (factor * mprime as u64) as usize;
    if css.k_q != expected_k {
        return Err(Error::Defect(format!(
            "logical dimension law failed: k_q = {}, expected t*m' = {expected_k}",
            css.k_q
        )));
    }
    let (name, family_t) = curve_descriptor(curve);
    css.source = Some(SourceInfo {
        theorem: "3.1".into(),
        curve: Some(name.into()),
        t: family_t,
        m: m as u64,
        mprime: mprime as u64,
    });
    Ok(css)
}

/// Output encoding for stabilizer matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerFormat {
    /// One row per line: n X-bits, a space, n Z-bits.
    Plain,
    /// {"h_x": [[bits]], "h_z": [[bits]]}.
    Json,
}

impl FromStr for StabilizerFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<StabilizerFormat> {
        match s {
            "text" | "plain" => Ok(StabilizerFormat::Plain),
            "json" => Ok(StabilizerFormat::Json),
            other => Err(Error::Usage(format!(
                "unknown stabilizer format {other:?} (expected text or json)"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StabilizerJson {
    h_x: Vec<Vec<u8>>,
    h_z: Vec<Vec<u8>>,
}

/// Render the stabilizers as an (r_x + r_z) x 2n block matrix (X-part |
/// Z-part): X-type rows first, then Z-type, each side row-canonical.
pub fn emit_stabilizers(code: &CssCode, format: StabilizerFormat) -> String {
    match format {
        StabilizerFormat::Plain => {
            let n = code.n_q;
            let zeros: String = "0".repeat(n);
            let mut out = String::new();
            for r in 0..code.h_x.rows() {
                out.push_str(&row_string(&code.h_x, r));
                out.push(' ');
                out.push_str(&zeros);
                out.push('\n');
            }
            for r in 0..code.h_z.rows() {
                out.push_str(&zeros);
                out.push(' ');
                out.push_str(&row_string(&code.h_z, r));
                out.push('\n');
            }
            out
        }
        StabilizerFormat::Json => {
            let doc = StabilizerJson {
                h_x: bit_rows(&code.h_x),
                h_z: bit_rows(&code.h_z),
            };
            serde_json::to_string(&doc).expect("stabilizer serialization")
        }
    }
}

/// Parse emit_stabilizers output (either format) back into (h_x, h_z).
pub fn parse_stabilizers(text: &str) -> Result<(BinMat, BinMat)> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let doc: StabilizerJson = serde_json::from_str(trimmed)
            .map_err(|e| Error::Usage(format!("invalid stabilizer JSON: {e}")))?;
        let n = doc
            .h_x
            .first()
            .or(doc.h_z.first())
            .map(Vec::len)
            .ok_or_else(|| Error::Usage("no stabilizer rows; length is undetermined".into()))?;
        let build = |rows: &[Vec<u8>]| -> Result<BinMat> {
            if rows.is_empty() {
                return Ok(BinMat::zeros(0, n));
            }
            BinMat::from_bit_rows(rows)
        };
        return Ok((build(&doc.h_x)?, build(&doc.h_z)?));
    }
    let mut x_rows: Vec<Vec<u8>> = Vec::new();
    let mut z_rows: Vec<Vec<u8>> = Vec::new();
    let mut n = None;
    for line in trimmed.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 || parts[0].len() != parts[1].len() {
            return Err(Error::Usage(format!(
                "expected 'X-part Z-part' with equal lengths, got {line:?}"
            )));
        }
        if *n.get_or_insert(parts[0].len()) != parts[0].len() {
            return Err(Error::Usage("inconsistent row lengths".into()));
        }
        let to_bits = |s: &str| -> Result<Vec<u8>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::Usage(format!("invalid bit character {other:?}"))),
                })
                .collect()
        };
        let x_part = to_bits(parts[0])?;
        let z_part = to_bits(parts[1])?;
        match (
            x_part.iter().any(|&b| b != 0),
            z_part.iter().any(|&b| b != 0),
        ) {
            (true, false) => x_rows.push(x_part),
            (false, true) => z_rows.push(z_part),
            (true, true) => {
                return Err(Error::Usage(format!(
                    "mixed X/Z stabilizer row is not CSS block form: {line:?}"
                )))
            }
            (false, false) => {
                return Err(Error::Usage(format!("all-zero stabilizer row: {line:?}")))
            }
        }
    }
    let n = n.ok_or_else(|| Error::Usage("no stabilizer rows; length is undetermined".into()))?;
    let build = |rows: &[Vec<u8>]| -> Result<BinMat> {
        if rows.is_empty() {
            return Ok(BinMat::zeros(0, n));
        }
        BinMat::from_bit_rows(rows)
    };
    Ok((build(&x_rows)?, build(&z_rows)?))
}
