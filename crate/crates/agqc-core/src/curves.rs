//! Curve models over GF(2^t): rational points, one-point Riemann-Roch
//! spaces, and the functional/residue evaluation codes they define.
//!
//! Two families are modeled explicitly. The projective line over GF(2^t) has
//! 2^t + 1 points and genus 0. The Hermitian-type curve y^q0 + y = x^(q0+1)
//! over GF(q0^2) (q0 = 2^t) has q0^3 + 1 points and genus q0(q0-1)/2; its
//! coordinate functions have pole orders q0 and q0+1 at the point at
//! infinity, so monomials x^i y^j with j < q0 enumerate the pole-order
//! semigroup there and L(m*Pinf) has an explicit monomial basis.
//!
//! Vanishing orders at an affine point Q = (a, b) come from truncated power
//! series in the local parameter s = x - a: the y-coordinate lifts to a
//! series by the characteristic-2 Newton step y <- y + (y^q0 + y + rhs),
//! which squares the valuation of the defect each round. A basis of
//! L(m*Pinf - m'*Q) is then the kernel of the map onto the first m' series
//! coefficients, reduced to canonical form over the monomial coordinates.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::linalg::{LinearCodeQ, MatQ};

/// A curve with one distinguished point at infinity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveModel {
    /// The projective line over GF(2^t).
    ProjectiveLine { t: usize },
    /// y^q0 + y = x^(q0+1) over GF(q0^2) with q0 = 2^t.
    Hermitian { t: usize },
}

/// A rational point: the common point at infinity or an affine point.
/// Affine points on the projective line carry no y-coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RationalPoint {
    Infinity,
    Affine {
        x: FieldElement,
        y: Option<FieldElement>,
    },
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RationalPoint::Infinity => write!(f, "Pinf"),
            RationalPoint::Affine { x, y: None } => write!(f, "({x})"),
            RationalPoint::Affine { x, y: Some(y) } => write!(f, "({x}, {y})"),
        }
    }
}

impl CurveModel {
    pub fn projective_line(t: usize) -> Result<CurveModel> {
        FieldSpec::new(t)?;
        Ok(CurveModel::ProjectiveLine { t })
    }

    pub fn hermitian(t: usize) -> Result<CurveModel> {
        FieldSpec::new(2 * t)?;
        Ok(CurveModel::Hermitian { t })
    }

    /// The field the points live over: GF(2^t) for the line, GF(q0^2) for
    /// the Hermitian-type curve.
    pub fn field_spec(&self) -> FieldSpec {
        let t = match self {
            CurveModel::ProjectiveLine { t } => *t,
            CurveModel::Hermitian { t } => 2 * t,
        };
        FieldSpec::new(t).expect("degree validated at construction")
    }

    /// Extension degree of the point field over GF(2); the binary expansion
    /// of an evaluation code multiplies its length by this factor.
    pub fn expansion_degree(&self) -> usize {
        self.field_spec().t()
    }

    /// q0 = 2^t for the Hermitian-type curve; the line has no y-coordinate.
    fn q0(&self) -> Option<usize> {
        match self {
            CurveModel::ProjectiveLine { .. } => None,
            CurveModel::Hermitian { t } => Some(1 << t),
        }
    }

    pub fn num_points(&self) -> usize {
        match self {
            CurveModel::ProjectiveLine { t } => (1 << t) + 1,
            CurveModel::Hermitian { t } => (1usize << (3 * t)) + 1,
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            CurveModel::ProjectiveLine { .. } => 0,
            CurveModel::Hermitian { t } => {
                let q0 = 1usize << t;
                q0 * (q0 - 1) / 2
            }
        }
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        let spec = self.field_spec();
        match (self, p) {
            (_, RationalPoint::Infinity) => true,
            (CurveModel::ProjectiveLine { .. }, RationalPoint::Affine { x, y: None }) => {
                x.spec() == spec
            }
            (CurveModel::Hermitian { .. }, RationalPoint::Affine { x, y: Some(y) }) => {
                if x.spec() != spec || y.spec() != spec {
                    return false;
                }
                let q0 = self.q0().expect("hermitian") as u64;
                y.pow(q0) + *y == x.pow(q0 + 1)
            }
            _ => false,
        }
    }

    /// All rational points: infinity first, then affine points in (x, y)
    /// element order.
    pub fn rational_points(&self) -> Vec<RationalPoint> {
        let spec = self.field_spec();
        let mut points = vec![RationalPoint::Infinity];
        match self {
            CurveModel::ProjectiveLine { .. } => {
                for x in spec.elements() {
                    points.push(RationalPoint::Affine { x, y: None });
                }
            }
            CurveModel::Hermitian { .. } => {
                let q0 = self.q0().expect("hermitian") as u64;
                for x in spec.elements() {
                    let rhs = x.pow(q0 + 1);
                    for y in spec.elements() {
                        if y.pow(q0) + y == rhs {
                            points.push(RationalPoint::Affine { x, y: Some(y) });
                        }
                    }
                }
            }
        }
        assert_eq!(
            points.len(),
            self.num_points(),
            "point count law failed for {self:?}"
        );
        points
    }

    /// The first affine point in canonical order; the default choice for the
    /// auxiliary divisor point Q.
    pub fn default_q_point(&self) -> RationalPoint {
        self.rational_points()[1]
    }

    /// Pole order at infinity of the monomial x^i y^j.
    fn monomial_pole_order(&self, i: u32, j: u32) -> u64 {
        match self.q0() {
            None => i as u64,
            Some(q0) => i as u64 * q0 as u64 + j as u64 * (q0 as u64 + 1),
        }
    }

    /// Monomial basis of L(m * Pinf), sorted by pole order at infinity.
    /// Distinct admissible monomials have distinct pole orders, so the order
    /// is total and the count equals m - g + 1 whenever m > 2g - 2.
    pub fn one_point_basis(&self, m: u32) -> Vec<FunctionRep> {
        let mut monos: Vec<(u64, u32, u32)> = Vec::new();
        match self.q0() {
            None => {
                for i in 0..=m {
                    monos.push((i as u64, i, 0));
                }
            }
            Some(q0) => {
                for i in 0..=(m / q0 as u32) {
                    for j in 0..q0 as u32 {
                        let order = self.monomial_pole_order(i, j);
                        if order <= m as u64 {
                            monos.push((order, i, j));
                        }
                    }
                }
            }
        }
        monos.sort_unstable();
        let basis: Vec<FunctionRep> = monos
            .into_iter()
            .map(|(_, i, j)| {
                FunctionRep::monomial(*self, i, j, self.field_spec().one())
                    .expect("admissible monomial")
            })
            .collect();
        let g = self.genus() as i64;
        if m as i64 > 2 * g - 2 {
            assert_eq!(
                basis.len() as i64,
                m as i64 - g + 1,
                "one-point space dimension law failed at m={m} on {self:?}"
            );
        }
        basis
    }

    /// Basis of L(m*Pinf - m'*Q): members of the one-point space vanishing
    /// to order at least m' at Q. Rows are canonical (RREF over the monomial
    /// coordinates of the one-point basis).
    pub fn riemann_roch_basis(&self, div: &DivisorSpec) -> Result<Vec<FunctionRep>> {
        let spec = self.field_spec();
        let base = self.one_point_basis(div.m);
        if div.mprime == 0 {
            return Ok(base);
        }
        let (a, b) = div.affine_q(self)?;
        let prec = div.mprime as usize;
        // Constraint matrix: column r = first m' series coefficients of the
        // r-th monomial at Q.
        let mut cons = MatQ::zeros(spec, prec, base.len());
        for (r, f) in base.iter().enumerate() {
            let series = f.expand_at(a, b, prec)?;
            for l in 0..prec {
                cons.set(l, r, series.coeff(l));
            }
        }
        let kernel = cons.kernel();
        let mut out = Vec::with_capacity(kernel.rows());
        for r in 0..kernel.rows() {
            let mut f = FunctionRep::zero(*self);
            for (c, mono) in base.iter().enumerate() {
                let coeff = kernel.get(r, c);
                if !coeff.is_zero() {
                    f = f.add(&mono.scale(coeff));
                }
            }
            out.push(f);
        }
        let g = self.genus() as i64;
        let deg = div.m as i64 - div.mprime as i64;
        if deg > 2 * g - 2 {
            let expect = deg - g + 1;
            if out.len() as i64 != expect {
                return Err(Error::Defect(format!(
                    "Riemann-Roch dimension law failed: got {}, expected {expect} \
                     for m={}, m'={} on {self:?}",
                    out.len(),
                    div.m,
                    div.mprime
                )));
            }
        }
        Ok(out)
    }

    /// The evaluation code C_L(m*Pinf - m'*Q, D), where D is every rational
    /// point except infinity and Q. Requires 2g - 2 < deg G < n = N - 2.
    pub fn functional_code(&self, div: &DivisorSpec) -> Result<LinearCodeQ> {
        let g = self.genus() as i64;
        let deg = div.m as i64 - div.mprime as i64;
        let n = self.num_points() as i64 - 2;
        if deg <= 2 * g - 2 {
            return Err(Error::parameter(format!(
                "2g - 2 < deg G violated: deg G = {deg}, 2g - 2 = {}",
                2 * g - 2
            )));
        }
        if deg >= n {
            return Err(Error::parameter(format!(
                "deg G < n violated: deg G = {deg}, n = {n}"
            )));
        }
        div.affine_q(self)?;
        let q_point = div.q_point;
        let basis = self.riemann_roch_basis(div)?;
        let points: Vec<RationalPoint> = self
            .rational_points()
            .into_iter()
            .filter(|p| *p != RationalPoint::Infinity && *p != q_point)
            .collect();
        if points.len() as i64 != n {
            return Err(Error::Defect(format!(
                "evaluation support has {} points, expected {n}",
                points.len()
            )));
        }
        let mut rows = Vec::with_capacity(basis.len());
        for f in &basis {
            let row: Result<Vec<FieldElement>> = points.iter().map(|p| f.evaluate(p)).collect();
            rows.push(row?);
        }
        let code = LinearCodeQ::from_rows(self.field_spec(), n as usize, &rows)?;
        if code.k() != basis.len() {
            return Err(Error::Defect(format!(
                "evaluation map dropped rank: dim L = {}, code dimension {}",
                basis.len(),
                code.k()
            )));
        }
        Ok(code)
    }

    /// The residue code C_Omega(m*Pinf - m'*Q, D): the dual of the
    /// functional code on the same divisor and support.
    pub fn residue_code(&self, div: &DivisorSpec) -> Result<LinearCodeQ> {
        Ok(self.functional_code(div)?.dual())
    }
}

/// One-point divisor data: G = m * Pinf - m' * Q.
///
/// Q participates even when m' = 0: it is always deleted from the
/// evaluation support alongside the point at infinity.
#[derive(Clone, Copy, Debug)]
pub struct DivisorSpec {
    pub m: u32,
    pub mprime: u32,
    pub q_point: RationalPoint,
}

impl DivisorSpec {
    pub fn new(m: u32, mprime: u32, q_point: RationalPoint) -> DivisorSpec {
        DivisorSpec { m, mprime, q_point }
    }

    /// Divisor with Q at the curve's canonical default point.
    pub fn with_default_q(curve: &CurveModel, m: u32, mprime: u32) -> DivisorSpec {
        DivisorSpec {
            m,
            mprime,
            q_point: curve.default_q_point(),
        }
    }

    /// The affine coordinates of Q, validated against the curve.
    fn affine_q(&self, curve: &CurveModel) -> Result<(FieldElement, Option<FieldElement>)> {
        match self.q_point {
            RationalPoint::Infinity => Err(Error::parameter(
                "Q must be an affine point distinct from Pinf",
            )),
            RationalPoint::Affine { x, y } => {
                if !curve.contains(&self.q_point) {
                    return Err(Error::parameter(format!(
                        "Q = {} does not lie on {curve:?}",
                        self.q_point
                    )));
                }
                Ok((x, y))
            }
        }
    }
}

/// A function on the curve, written as a reduced bivariate polynomial:
/// sum of c_ij x^i y^j with j < q0 (j = 0 on the line). Its only pole is at
/// infinity, so it evaluates at every affine point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionRep {
    curve: CurveModel,
    coeffs: BTreeMap<(u32, u32), FieldElement>,
}

impl FunctionRep {
    pub fn zero(curve: CurveModel) -> FunctionRep {
        FunctionRep {
            curve,
            coeffs: BTreeMap::new(),
        }
    }

    /// c * x^i y^j; j must stay below q0 (0 on the line) to keep the
    /// representation reduced.
    pub fn monomial(curve: CurveModel, i: u32, j: u32, c: FieldElement) -> Result<FunctionRep> {
        if c.spec() != curve.field_spec() {
            return Err(Error::Usage(format!(
                "coefficient {c:?} not in {}",
                curve.field_spec()
            )));
        }
        let j_bound = curve.q0().unwrap_or(1) as u32;
        if j >= j_bound {
            return Err(Error::Usage(format!(
                "y-degree {j} is not reduced (requires j < {j_bound})"
            )));
        }
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((i, j), c);
        }
        Ok(FunctionRep { curve, coeffs })
    }

    pub fn curve(&self) -> CurveModel {
        self.curve
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &FunctionRep) -> FunctionRep {
        assert_eq!(self.curve, other.curve, "curve mismatch in add");
        let mut coeffs = self.coeffs.clone();
        for (&key, &c) in &other.coeffs {
            let v = match coeffs.get(&key) {
                Some(&prev) => prev + c,
                None => c,
            };
            if v.is_zero() {
                coeffs.remove(&key);
            } else {
                coeffs.insert(key, v);
            }
        }
        FunctionRep {
            curve: self.curve,
            coeffs,
        }
    }

    pub fn scale(&self, c: FieldElement) -> FunctionRep {
        if c.is_zero() {
            return FunctionRep::zero(self.curve);
        }
        FunctionRep {
            curve: self.curve,
            coeffs: self.coeffs.iter().map(|(&key, &v)| (key, v * c)).collect(),
        }
    }

    /// Pole order at infinity; None for the zero function. Monomials have
    /// pairwise distinct pole orders, so the maximum over terms is exact.
    pub fn pole_order(&self) -> Option<u64> {
        self.coeffs
            .keys()
            .map(|&(i, j)| self.curve.monomial_pole_order(i, j))
            .max()
    }

    /// Evaluate at an affine point of the curve.
    pub fn evaluate(&self, p: &RationalPoint) -> Result<FieldElement> {
        if !self.curve.contains(p) {
            return Err(Error::Usage(format!("{p} is not on {:?}", self.curve)));
        }
        let (x, y) = match p {
            RationalPoint::Infinity => {
                return Err(Error::Domain(
                    "cannot evaluate at the common pole Pinf".into(),
                ))
            }
            RationalPoint::Affine { x, y } => (*x, *y),
        };
        let spec = self.curve.field_spec();
        let mut acc = spec.zero();
        for (&(i, j), &c) in &self.coeffs {
            let mut term = c * x.pow(i as u64);
            if j > 0 {
                let y = y.expect("reduced representation has j > 0 only on hermitian");
                term = term * y.pow(j as u64);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Truncated power-series expansion at the affine point (a, b) in the
    /// local parameter s = x - a, with `prec` coefficients.
    fn expand_at(
        &self,
        a: FieldElement,
        b: Option<FieldElement>,
        prec: usize,
    ) -> Result<TruncatedSeries> {
        if prec == 0 {
            return Err(Error::Usage("series precision must be positive".into()));
        }
        let spec = self.curve.field_spec();
        let x_series = TruncatedSeries::linear(a, spec.one(), prec);
        let max_i = self.coeffs.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut x_pows = Vec::with_capacity(max_i as usize + 1);
        x_pows.push(TruncatedSeries::constant(spec.one(), prec));
        for i in 1..=max_i as usize {
            let next = x_pows[i - 1].mul(&x_series);
            x_pows.push(next);
        }
        let y_pows = match self.curve.q0() {
            None => Vec::new(),
            Some(q0) => {
                let b = b.ok_or_else(|| {
                    Error::Usage("hermitian expansion needs the y-coordinate of Q".into())
                })?;
                let y_series = hermitian_y_series(&x_series, b, q0);
                let max_j = self.coeffs.keys().map(|&(_, j)| j).max().unwrap_or(0);
                let mut pows = Vec::with_capacity(max_j as usize + 1);
                pows.push(TruncatedSeries::constant(spec.one(), prec));
                for j in 1..=max_j as usize {
                    let next = pows[j - 1].mul(&y_series);
                    pows.push(next);
                }
                pows
            }
        };
        let mut acc = TruncatedSeries::zero(spec, prec);
        for (&(i, j), &c) in &self.coeffs {
            let mut term = x_pows[i as usize].scale(c);
            if j > 0 {
                term = term.mul(&y_pows[j as usize]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Expansion at a rational point of the curve; Q must be affine.
    pub fn local_expand(&self, p: &RationalPoint, prec: usize) -> Result<TruncatedSeries> {
        if !self.curve.contains(p) {
            return Err(Error::Usage(format!("{p} is not on {:?}", self.curve)));
        }
        match p {
            RationalPoint::Infinity => Err(Error::Domain(
                "series expansion at Pinf is not supported; it is the common pole".into(),
            )),
            RationalPoint::Affine { x, y } => self.expand_at(*x, *y, prec),
        }
    }

    /// Vanishing order at an affine point, capped: returns min(order, cap).
    pub fn vanishing_order(&self, p: &RationalPoint, cap: usize) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Domain(
                "the zero function vanishes to every order".into(),
            ));
        }
        let series = self.local_expand(p, cap + 1)?;
        Ok(series.first_nonzero().unwrap_or(cap))
    }
}

/// Solve y^q0 + y = x^(q0+1) for y as a series with constant term b.
///
/// Newton in characteristic 2: the derivative of F(y) = y^q0 + y + rhs is 1,
/// so the step is y <- y + F(y), and F(y + F(y)) = F(y)^q0 raises the defect
/// valuation by a factor q0 every round.
fn hermitian_y_series(x_series: &TruncatedSeries, b: FieldElement, q0: usize) -> TruncatedSeries {
    let prec = x_series.prec();
    let rhs = x_series.pow(q0 as u64 + 1);
    let mut y = TruncatedSeries::constant(b, prec);
    for _ in 0..64 {
        let f = y.pow(q0 as u64).add(&y).add(&rhs);
        if f.is_zero() {
            return y;
        }
        y = y.add(&f);
    }
    unreachable!("newton iteration failed to converge at precision {prec}");
}

/// A truncated power series over GF(2^t) with a fixed number of retained
/// coefficients (index i = coefficient of s^i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl TruncatedSeries {
    pub fn zero(spec: FieldSpec, prec: usize) -> TruncatedSeries {
        assert!(prec > 0, "precision must be positive");
        TruncatedSeries {
            spec,
            coeffs: vec![spec.zero(); prec],
        }
    }

    pub fn constant(a: FieldElement, prec: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(a.spec(), prec);
        s.coeffs[0] = a;
        s
    }

    /// a + b*s.
    pub fn linear(a: FieldElement, b: FieldElement, prec: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::constant(a, prec);
        if prec > 1 {
            s.coeffs[1] = b;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.spec, other.spec, "field mismatch in series add");
        assert_eq!(
            self.prec(),
            other.prec(),
            "precision mismatch in series add"
        );
        TruncatedSeries {
            spec: self.spec,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> TruncatedSeries {
        TruncatedSeries {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.spec, other.spec, "field mismatch in series mul");
        assert_eq!(
            self.prec(),
            other.prec(),
            "precision mismatch in series mul"
        );
        let prec = self.prec();
        let mut out = TruncatedSeries::zero(self.spec, prec);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(prec - i).enumerate() {
                out.coeffs[i + j] = out.coeffs[i + j] + a * b;
            }
        }
        out
    }

    /// Squaring is coefficient-wise Frobenius with doubled exponents in
    /// characteristic 2.
    pub fn square(&self) -> TruncatedSeries {
        let prec = self.prec();
        let mut out = TruncatedSeries::zero(self.spec, prec);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if 2 * i >= prec {
                break;
            }
            out.coeffs[2 * i] = a.square();
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> TruncatedSeries {
        let mut base = self.clone();
        let mut acc = TruncatedSeries::constant(self.spec.one(), self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}
