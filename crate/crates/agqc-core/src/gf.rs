//! Arithmetic in the characteristic-2 fields GF(2^t), 1 <= t <= 8.
//!
//! Elements are coefficient bit vectors of polynomials modulo a fixed
//! irreducible modulus, so the integer value of the bits gives every field a
//! canonical element order. On top of the ring operations this module
//! provides the absolute trace to GF(2), relative traces to subfields, and
//! GF(2)-bases of the field, in particular the canonical self-dual basis
//! (trace-orthonormal: Tr(b_i * b_j) = delta_ij), which is what makes binary
//! expansion of a code commute with duality.

use crate::error::{Error, Result};

/// Canonical modulus per degree, index = t. Degree-t bit is always set.
const CANONICAL_MODULI: [u16; 9] = [
    0,             // unused
    0b11,          // x + 1 (sentinel; GF(2) needs no reduction)
    0b111,         // x^2 + x + 1
    0b1011,        // x^3 + x + 1
    0b1_0011,      // x^4 + x + 1
    0b10_0101,     // x^5 + x^2 + 1
    0b100_0011,    // x^6 + x + 1
    0b1000_0011,   // x^7 + x + 1
    0b1_0001_1011, // x^8 + x^4 + x^3 + x + 1
];

pub const MAX_DEGREE: usize = 8;

/// Remainder of binary-polynomial division (bit i = coefficient of x^i).
fn poly_rem(mut a: u32, b: u32) -> u32 {
    debug_assert!(b != 0);
    let db = 31 - b.leading_zeros();
    while a != 0 {
        let da = 31 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division; feasible through degree 8.
fn is_irreducible(modulus: u32, t: usize) -> bool {
    for d in 1..=t / 2 {
        for f in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_rem(modulus, f) == 0 {
                return false;
            }
        }
    }
    true
}

/// A concrete GF(2^t): extension degree plus the fixed irreducible modulus.
///
/// Two specs describe the same field exactly when they compare equal; all
/// element operations require matching specs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    t: u8,
    modulus: u16,
}

impl FieldSpec {
    /// The field GF(2^t) with the canonical modulus for its degree.
    pub fn new(t: usize) -> Result<FieldSpec> {
        if !(1..=MAX_DEGREE).contains(&t) {
            return Err(Error::parameter(format!(
                "1 <= t <= {MAX_DEGREE} violated: t={t}"
            )));
        }
        Ok(FieldSpec {
            t: t as u8,
            modulus: CANONICAL_MODULI[t],
        })
    }

    /// GF(2^t) with a caller-chosen modulus, verified irreducible of degree t.
    pub fn with_modulus(t: usize, modulus: u16) -> Result<FieldSpec> {
        if !(1..=MAX_DEGREE).contains(&t) {
            return Err(Error::parameter(format!(
                "1 <= t <= {MAX_DEGREE} violated: t={t}"
            )));
        }
        if (modulus >> t) != 1 {
            return Err(Error::parameter(format!(
                "modulus {modulus:#b} does not have degree {t}"
            )));
        }
        if !is_irreducible(modulus as u32, t) {
            return Err(Error::parameter(format!(
                "modulus {modulus:#b} is reducible over GF(2)"
            )));
        }
        Ok(FieldSpec {
            t: t as u8,
            modulus,
        })
    }

    pub fn t(&self) -> usize {
        self.t as usize
    }

    pub fn order(&self) -> usize {
        1usize << self.t
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    /// The element with the given coefficient bits (bit i = coeff of x^i).
    pub fn element(&self, bits: u16) -> Result<FieldElement> {
        if (bits as usize) >= self.order() {
            return Err(Error::Usage(format!(
                "bits {bits} outside field of order {}",
                self.order()
            )));
        }
        Ok(FieldElement { spec: *self, bits })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: *self,
            bits: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            spec: *self,
            bits: 1,
        }
    }

    /// All field elements in canonical (integer) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order() as u16).map(move |bits| FieldElement { spec: *self, bits })
    }

    /// Carry-less product of two coefficient vectors reduced by the modulus.
    fn mul_bits(&self, a: u16, b: u16) -> u16 {
        let t = self.t as u32;
        let (a, b) = (a as u32, b as u32);
        let mut acc: u32 = 0;
        for i in 0..t {
            if (b >> i) & 1 == 1 {
                acc ^= a << i;
            }
        }
        let m = self.modulus as u32;
        let mut i = 2 * t.saturating_sub(1);
        while i >= t {
            if (acc >> i) & 1 == 1 {
                acc ^= m << (i - t);
            }
            i -= 1;
        }
        debug_assert!(acc < (1 << t));
        acc as u16
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF(2^{})", self.t)
    }
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF(2^{}; {:#b})", self.t, self.modulus)
    }
}

/// An element of a concrete GF(2^t), ordered by integer coefficient value.
///
/// Arithmetic operators panic when the operands' specs differ; that is a
/// programming error, not a runtime condition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    spec: FieldSpec,
    bits: u16,
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn square(self) -> FieldElement {
        self * self
    }

    /// a^e with a^0 = 1.
    pub fn pow(self, mut e: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, a^(2^t - 2); zero has none.
    pub fn inv(self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.pow((1u64 << self.spec.t) - 2))
    }

    /// Absolute trace to GF(2): sum of a^(2^k) for k < t, returned as 0 or 1.
    pub fn trace(self) -> u8 {
        let mut acc = self.spec.zero();
        let mut x = self;
        for _ in 0..self.spec.t {
            acc = acc + x;
            x = x.square();
        }
        debug_assert!(acc.bits <= 1, "trace landed outside GF(2)");
        acc.bits as u8
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.spec, rhs.spec, "field mismatch in add");
        FieldElement {
            spec: self.spec,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    // Characteristic 2: subtraction is addition.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + rhs
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.spec, rhs.spec, "field mismatch in mul");
        FieldElement {
            spec: self.spec,
            bits: self.spec.mul_bits(self.bits, rhs.bits),
        }
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.bits)
    }
}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{:?}", self.bits, self.spec)
    }
}

/// A GF(2)-basis of GF(2^t) with cached coordinate maps in both directions.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldBasis {
    spec: FieldSpec,
    elems: Vec<FieldElement>,
    /// Row i = coefficient bits of the i-th power-basis vector expressed in
    /// this basis; together these solve `expand` by GF(2) linear algebra.
    inverse_rows: Vec<u16>,
}

impl FieldBasis {
    /// Wrap `elems` as an ordered basis; fails unless they are t linearly
    /// independent elements of `spec`.
    pub fn new(spec: FieldSpec, elems: Vec<FieldElement>) -> Result<FieldBasis> {
        let t = spec.t();
        if elems.len() != t {
            return Err(Error::Usage(format!(
                "basis needs {t} elements, got {}",
                elems.len()
            )));
        }
        if let Some(e) = elems.iter().find(|e| e.spec != spec) {
            return Err(Error::Usage(format!("basis element {e:?} not in {spec}")));
        }
        let inverse_rows = invert_basis_matrix(t, &elems)
            .ok_or_else(|| Error::Usage("basis elements are linearly dependent".into()))?;
        Ok(FieldBasis {
            spec,
            elems,
            inverse_rows,
        })
    }

    /// The canonical self-dual basis: the lexicographically least ordered
    /// tuple (b_1, .., b_t) with Tr(b_i * b_j) = delta_ij, found by DFS over
    /// elements in integer order. Self-dual bases exist for every GF(2^t).
    pub fn canonical_self_dual(spec: FieldSpec) -> FieldBasis {
        let t = spec.t();
        let elems: Vec<FieldElement> = spec.elements().collect();
        let mut chosen: Vec<FieldElement> = Vec::with_capacity(t);

        fn dfs(t: usize, elems: &[FieldElement], chosen: &mut Vec<FieldElement>) -> bool {
            if chosen.len() == t {
                return true;
            }
            for &v in &elems[1..] {
                if (v * v).trace() == 1 && chosen.iter().all(|&b| (v * b).trace() == 0) {
                    chosen.push(v);
                    if dfs(t, elems, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }

        let found = dfs(t, &elems, &mut chosen);
        assert!(found, "self-dual basis search exhausted for {spec}");
        FieldBasis::new(spec, chosen).expect("orthonormal tuple is a basis")
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elems
    }

    /// Whether the trace Gram matrix is the identity.
    pub fn is_self_dual(&self) -> bool {
        (0..self.elems.len()).all(|i| {
            (0..self.elems.len()).all(|j| {
                let expected = u8::from(i == j);
                (self.elems[i] * self.elems[j]).trace() == expected
            })
        })
    }

    /// Coordinates of `a` in this basis, as a bit mask: bit i set means the
    /// coefficient of `elements()[i]` is 1. Panics on field mismatch.
    pub fn expand(&self, a: FieldElement) -> u16 {
        assert_eq!(a.spec, self.spec, "field mismatch in expand");
        let mut coords = 0u16;
        for (i, &row) in self.inverse_rows.iter().enumerate() {
            if (a.bits >> i) & 1 == 1 {
                coords ^= row;
            }
        }
        coords
    }

    /// Inverse of `expand`: the element with the given basis coordinates.
    pub fn contract(&self, coords: u16) -> Result<FieldElement> {
        if (coords as usize) >= self.spec.order() {
            return Err(Error::Usage(format!(
                "coordinate mask {coords} has more than t={} bits",
                self.spec.t()
            )));
        }
        let mut acc = self.spec.zero();
        for (i, &b) in self.elems.iter().enumerate() {
            if (coords >> i) & 1 == 1 {
                acc = acc + b;
            }
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for FieldBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bits: Vec<u16> = self.elems.iter().map(|e| e.bits).collect();
        write!(f, "FieldBasis{bits:?} of {}", self.spec)
    }
}

/// Invert the t x t GF(2) matrix whose columns are the basis elements'
/// coefficient bits; returns rows mapping power-basis coords to basis coords,
/// or None when the elements are dependent.
fn invert_basis_matrix(t: usize, elems: &[FieldElement]) -> Option<Vec<u16>> {
    // Augmented rows: low t bits = basis-matrix row, high bits = identity.
    let mut rows: Vec<u32> = (0..t)
        .map(|r| {
            let mut row = 0u32;
            for (c, e) in elems.iter().enumerate() {
                row |= u32::from((e.bits >> r) & 1) << c;
            }
            row | (1u32 << (t + r))
        })
        .collect();
    for col in 0..t {
        let pivot = (col..t).find(|&r| (rows[r] >> col) & 1 == 1)?;
        rows.swap(col, pivot);
        for r in 0..t {
            if r != col && (rows[r] >> col) & 1 == 1 {
                rows[r] ^= rows[col];
            }
        }
    }
    // After elimination, row r of the inverse lives in the high half of the
    // row whose low half is e_r; expand() needs the transpose's action, i.e.
    // for power-basis bit i the contribution to each coordinate.
    let mut out = vec![0u16; t];
    for (r, row) in rows.iter().enumerate() {
        let inv_row = (row >> t) as u16;
        // inv_row holds coefficients c with coords_r = sum_i c_i * a_i.
        for (i, slot) in out.iter_mut().enumerate() {
            if (inv_row >> i) & 1 == 1 {
                *slot |= 1 << r;
            }
        }
    }
    Some(out)
}

/// The subfield GF(2^s) inside GF(2^T) (s divides T), with the embedding
/// fixed by sending the subfield generator to the least root of its modulus
/// in the big field. Both directions are cached as lookup tables.
pub struct Subfield {
    sub: FieldSpec,
    sup: FieldSpec,
    embed_tbl: Vec<u16>,
    /// Indexed by big-field bits; u16::MAX marks "not in the subfield".
    retract_tbl: Vec<u16>,
}

impl Subfield {
    pub fn new(sub: FieldSpec, sup: FieldSpec) -> Result<Subfield> {
        if !sup.t().is_multiple_of(sub.t()) || sup.t() == sub.t() {
            return Err(Error::parameter(format!(
                "GF(2^{}) is not a proper subfield of GF(2^{})",
                sub.t(),
                sup.t()
            )));
        }
        // Least root of the subfield modulus in the big field.
        let root = sup
            .elements()
            .find(|&beta| eval_gf2_poly(sub.modulus, beta).is_zero())
            .ok_or_else(|| {
                Error::Defect(format!(
                    "modulus of {sub} has no root in {sup}; it must split there"
                ))
            })?;
        let mut embed_tbl = vec![0u16; sub.order()];
        let mut retract_tbl = vec![u16::MAX; sup.order()];
        for a in sub.elements() {
            // Evaluate the coefficient polynomial of `a` at the root.
            let mut acc = sup.zero();
            let mut p = sup.one();
            for i in 0..sub.t() {
                if (a.bits >> i) & 1 == 1 {
                    acc = acc + p;
                }
                p = p * root;
            }
            embed_tbl[a.bits as usize] = acc.bits;
            retract_tbl[acc.bits as usize] = a.bits;
        }
        Ok(Subfield {
            sub,
            sup,
            embed_tbl,
            retract_tbl,
        })
    }

    pub fn sub(&self) -> FieldSpec {
        self.sub
    }

    pub fn sup(&self) -> FieldSpec {
        self.sup
    }

    pub fn embed(&self, a: FieldElement) -> FieldElement {
        assert_eq!(a.spec, self.sub, "field mismatch in embed");
        FieldElement {
            spec: self.sup,
            bits: self.embed_tbl[a.bits as usize],
        }
    }

    /// The subfield preimage of `a`, or None when `a` lies outside it.
    pub fn retract(&self, a: FieldElement) -> Option<FieldElement> {
        assert_eq!(a.spec, self.sup, "field mismatch in retract");
        match self.retract_tbl[a.bits as usize] {
            u16::MAX => None,
            bits => Some(FieldElement {
                spec: self.sub,
                bits,
            }),
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        assert_eq!(a.spec, self.sup, "field mismatch in contains");
        self.retract_tbl[a.bits as usize] != u16::MAX
    }

    /// Relative trace onto the subfield: sum of a^(q^i) for q the subfield
    /// order and i < T/s. The image always lands in the subfield.
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        assert_eq!(a.spec, self.sup, "field mismatch in relative trace");
        let q = 1u64 << self.sub.t();
        let mut acc = self.sup.zero();
        let mut x = a;
        for _ in 0..self.sup.t() / self.sub.t() {
            acc = acc + x;
            x = x.pow(q);
        }
        self.retract(acc)
            .expect("relative trace must land in the subfield")
    }
}

/// Evaluate a GF(2)-coefficient polynomial (bit i = coeff of x^i) at `x`.
fn eval_gf2_poly(poly: u16, x: FieldElement) -> FieldElement {
    let mut acc = x.spec.zero();
    let mut p = x.spec.one();
    for i in 0..16 {
        if (poly >> i) & 1 == 1 {
            acc = acc + p;
        }
        p = p * x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(t: usize) -> FieldSpec {
        FieldSpec::new(t).unwrap()
    }

    #[test]
    fn gf4_multiplication_table() {
        let f = gf(2);
        let (zero, one) = (f.zero(), f.one());
        let w = f.element(2).unwrap();
        let w2 = f.element(3).unwrap();
        assert_eq!(w + one, w2);
        assert_eq!(w * w, w2);
        assert_eq!(w * w2, one);
        assert_eq!(w2 * w2, w);
        assert_eq!(w.inv().unwrap(), w2);
        assert_eq!(w * zero, zero);
    }

    #[test]
    fn gf8_inverse_matches_exhaustive_search() {
        // Oracle: the inverse is the unique b with g * b = 1.
        let f = gf(3);
        let g = f.element(2).unwrap();
        let by_search: Vec<FieldElement> = f.elements().filter(|&b| (g * b) == f.one()).collect();
        assert_eq!(by_search.len(), 1);
        assert_eq!(g.inv().unwrap(), by_search[0]);
        assert_eq!(g.inv().unwrap(), g.pow(6));
    }

    #[test]
    fn inverse_of_zero_is_a_domain_error() {
        for t in 1..=MAX_DEGREE {
            assert!(matches!(gf(t).zero().inv(), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(113);
        for t in 1..=MAX_DEGREE {
            let f = gf(t);
            for _ in 0..200 {
                let a = f.element(rng.gen_range(0..f.order()) as u16).unwrap();
                let b = f.element(rng.gen_range(0..f.order()) as u16).unwrap();
                let c = f.element(rng.gen_range(0..f.order()) as u16).unwrap();
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * (b + c), a * b + a * c);
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_power_fixes_the_field() {
        for t in 1..=4 {
            let f = gf(t);
            for a in f.elements() {
                assert_eq!(a.pow(f.order() as u64), a);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in 5..=MAX_DEGREE {
            let f = gf(t);
            for _ in 0..1000 {
                let a = f.element(rng.gen_range(0..f.order()) as u16).unwrap();
                assert_eq!(a.pow(f.order() as u64), a);
            }
        }
    }

    #[test]
    fn gf4_traces() {
        let f = gf(2);
        let traces: Vec<u8> = f.elements().map(|a| a.trace()).collect();
        assert_eq!(traces, vec![0, 0, 1, 1]);
    }

    #[test]
    fn trace_is_balanced_in_every_field() {
        // The absolute trace is a nonzero GF(2)-linear form, so its kernel
        // has exactly half the field.
        for t in 1..=MAX_DEGREE {
            let f = gf(t);
            let zeros = f.elements().filter(|a| a.trace() == 0).count();
            assert_eq!(zeros, f.order() / 2, "t={t}");
        }
    }

    #[test]
    fn reducible_moduli_are_rejected() {
        assert!(FieldSpec::with_modulus(2, 0b101).is_err()); // (x+1)^2
        assert!(FieldSpec::with_modulus(4, 0b10101).is_err()); // (x^2+x+1)^2
        assert!(FieldSpec::with_modulus(3, 0b1011).is_ok());
        assert!(FieldSpec::with_modulus(8, 0b1_0001_1011).is_ok());
    }

    #[test]
    fn element_bits_out_of_range_are_rejected() {
        assert!(gf(2).element(4).is_err());
        assert!(gf(2).element(3).is_ok());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = gf(2).one() + gf(3).one();
    }

    #[test]
    fn canonical_self_dual_basis_of_gf4_is_w_w2() {
        let basis = FieldBasis::canonical_self_dual(gf(2));
        let bits: Vec<u16> = basis.elements().iter().map(|e| e.bits()).collect();
        assert_eq!(bits, vec![2, 3]);
        assert!(basis.is_self_dual());
    }

    #[test]
    fn self_dual_search_succeeds_for_every_degree() {
        for t in 1..=MAX_DEGREE {
            let basis = FieldBasis::canonical_self_dual(gf(t));
            assert!(basis.is_self_dual(), "Gram identity failed for t={t}");
        }
    }

    #[test]
    fn expand_one_in_gf4_self_dual_basis() {
        // 1 = w + w^2, so both coordinates are set.
        let basis = FieldBasis::canonical_self_dual(gf(2));
        assert_eq!(basis.expand(gf(2).one()), 0b11);
        assert_eq!(basis.contract(0b11).unwrap(), gf(2).one());
    }

    #[test]
    fn expand_contract_round_trip() {
        for t in 1..=6 {
            let f = gf(t);
            let basis = FieldBasis::canonical_self_dual(f);
            for a in f.elements() {
                assert_eq!(basis.contract(basis.expand(a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn self_dual_expansion_matches_trace_projection() {
        // For a self-dual basis the coordinates are c_i = Tr(a * b_i).
        for t in 1..=4 {
            let f = gf(t);
            let basis = FieldBasis::canonical_self_dual(f);
            for a in f.elements() {
                let coords = basis.expand(a);
                for (i, &b) in basis.elements().iter().enumerate() {
                    assert_eq!(((coords >> i) & 1) as u8, (a * b).trace());
                }
            }
        }
    }

    #[test]
    fn polynomial_basis_of_gf4_is_not_self_dual() {
        let f = gf(2);
        let basis = FieldBasis::new(f, vec![f.one(), f.element(2).unwrap()]).unwrap();
        assert!(!basis.is_self_dual());
        // Still a valid basis: round trips hold.
        for a in f.elements() {
            assert_eq!(basis.contract(basis.expand(a)).unwrap(), a);
        }
    }

    #[test]
    fn dependent_or_missized_bases_are_rejected() {
        let f = gf(2);
        let w = f.element(2).unwrap();
        assert!(FieldBasis::new(f, vec![w, w]).is_err());
        assert!(FieldBasis::new(f, vec![w]).is_err());
        assert!(FieldBasis::new(f, vec![f.zero(), w]).is_err());
    }

    #[test]
    fn contract_rejects_oversized_masks() {
        let basis = FieldBasis::canonical_self_dual(gf(2));
        assert!(matches!(basis.contract(0b100), Err(Error::Usage(_))));
    }

    #[test]
    fn relative_trace_gf16_over_gf4_lands_in_subfield() {
        let sub = gf(2);
        let sup = gf(4);
        let ext = Subfield::new(sub, sup).unwrap();
        for a in sup.elements() {
            let tr = ext.trace(a);
            assert_eq!(tr.spec(), sub);
            // Cross-check: retract(embed) is the identity on the image.
            assert_eq!(ext.retract(ext.embed(tr)).unwrap(), tr);
        }
        // The relative trace is onto the subfield.
        let images: std::collections::BTreeSet<u16> =
            sup.elements().map(|a| ext.trace(a).bits()).collect();
        assert_eq!(images.len(), sub.order());
    }

    #[test]
    fn subfield_membership_matches_frobenius_fixed_points() {
        let sub = gf(3);
        let sup = gf(6);
        let ext = Subfield::new(sub, sup).unwrap();
        let q = sub.order() as u64;
        for a in sup.elements() {
            assert_eq!(ext.contains(a), a.pow(q) == a);
        }
        assert_eq!(
            sup.elements().filter(|&a| ext.contains(a)).count(),
            sub.order()
        );
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        let sub = gf(2);
        let sup = gf(6);
        let ext = Subfield::new(sub, sup).unwrap();
        for a in sub.elements() {
            for b in sub.elements() {
                assert_eq!(ext.embed(a + b), ext.embed(a) + ext.embed(b));
                assert_eq!(ext.embed(a * b), ext.embed(a) * ext.embed(b));
            }
        }
    }

    #[test]
    fn non_divisible_degrees_are_rejected() {
        assert!(Subfield::new(gf(2), gf(5)).is_err());
        assert!(Subfield::new(gf(3), gf(3)).is_err());
    }
}
