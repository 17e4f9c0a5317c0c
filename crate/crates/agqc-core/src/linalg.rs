//! Dense matrices and linear codes over GF(2^t).
//!
//! Row reduction uses deterministic pivoting (leftmost column, topmost row),
//! and every code stores its generator in reduced row echelon form, so two
//! codes are equal as row spaces exactly when their generators are equal.
//! Exact minimum distance walks the message space in Gray-code order over the
//! message coefficient bits: each step changes one codeword by one scaled
//! generator row, with codeword symbols packed one byte per coordinate.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default cap on exhaustively enumerated codewords (q^k).
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 28;

/// Row-major dense matrix over a fixed GF(2^t).
#[derive(Clone, PartialEq, Eq)]
pub struct MatQ {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl MatQ {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> MatQ {
        MatQ {
            spec,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Build from element rows; all rows must share `spec` and one length.
    pub fn from_rows(spec: FieldSpec, rows: &[Vec<FieldElement>]) -> Result<MatQ> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Usage(format!(
                    "ragged rows: expected {cols} columns, got {}",
                    row.len()
                )));
            }
            for e in row {
                if e.spec() != spec {
                    return Err(Error::Usage(format!("entry {e:?} not in {spec}")));
                }
                data.push(e.bits());
            }
        }
        Ok(MatQ {
            spec,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.spec
            .element(self.data[r * self.cols + c])
            .expect("stored bits are in range")
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.spec(), self.spec, "field mismatch in set");
        self.data[r * self.cols + c] = v.bits();
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    /// Reduced row echelon form with its rank. Pivots are chosen leftmost
    /// column first, topmost row first; zero rows are moved to the bottom.
    pub fn rref(&self) -> (MatQ, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            let Some(src) = (pivot_row..m.rows).find(|&r| m.data[r * m.cols + col] != 0) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.get(pivot_row, col).inv().expect("pivot entry is nonzero");
            m.scale_row(pivot_row, inv);
            for r in 0..m.rows {
                if r != pivot_row && m.data[r * m.cols + col] != 0 {
                    let factor = m.get(r, col);
                    m.add_scaled_row(r, pivot_row, factor);
                }
            }
            pivot_row += 1;
            if pivot_row == m.rows {
                break;
            }
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// A canonical basis of the right kernel {v : self * v^T = 0}, one basis
    /// vector per row, in reduced row echelon form. For a full-rank square
    /// matrix this is the 0 x cols matrix.
    pub fn kernel(&self) -> MatQ {
        let (r, rank) = self.rref();
        let mut pivot_of_col = vec![usize::MAX; self.cols];
        let mut pivots = Vec::with_capacity(rank);
        for row in 0..rank {
            let col = (0..self.cols)
                .find(|&c| r.data[row * r.cols + c] != 0)
                .expect("rank rows are nonzero");
            pivot_of_col[col] = row;
            pivots.push(col);
        }
        let mut basis = MatQ::zeros(self.spec, self.cols - rank, self.cols);
        let mut out_row = 0;
        for (free, &pivot) in pivot_of_col.iter().enumerate() {
            if pivot != usize::MAX {
                continue;
            }
            basis.set(out_row, free, self.spec.one());
            for (&pcol, prow) in pivots.iter().zip(0..rank) {
                // Char 2: x_pivot = coefficient of the free column.
                basis.set(out_row, pcol, r.get(prow, free));
            }
            out_row += 1;
        }
        let (canonical, krank) = basis.rref();
        debug_assert_eq!(krank, self.cols - rank);
        canonical
    }

    /// Rows of `other` appended below rows of `self`.
    pub fn stack(&self, other: &MatQ) -> Result<MatQ> {
        if other.spec != self.spec || other.cols != self.cols {
            return Err(Error::Usage(format!(
                "cannot stack {}x{} over {} with {}x{} over {}",
                self.rows, self.cols, self.spec, other.rows, other.cols, other.spec
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatQ {
            spec: self.spec,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// self * other^T; panics unless column counts and fields agree.
    pub fn mul_transpose(&self, other: &MatQ) -> MatQ {
        assert_eq!(self.spec, other.spec, "field mismatch in mul_transpose");
        assert_eq!(self.cols, other.cols, "shape mismatch in mul_transpose");
        let mut out = MatQ::zeros(self.spec, self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let mut acc = self.spec.zero();
                for c in 0..self.cols {
                    acc = acc + self.get(i, c) * other.get(j, c);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&b| b == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: FieldElement) {
        for c in 0..self.cols {
            let v = self.get(r, c) * factor;
            self.data[r * self.cols + c] = v.bits();
        }
    }

    /// row[dst] += factor * row[src]; in characteristic 2 this also
    /// implements subtraction.
    fn add_scaled_row(&mut self, dst: usize, src: usize, factor: FieldElement) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + self.get(src, c) * factor;
            self.data[dst * self.cols + c] = v.bits();
        }
    }
}

impl std::fmt::Debug for MatQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatQ {}x{} over {}", self.rows, self.cols, self.spec)?;
        for r in 0..self.rows {
            let row: Vec<u16> = (0..self.cols).map(|c| self.get(r, c).bits()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// A linear [n, k] code over GF(2^t), identified with its row space.
///
/// The stored generator is the unique reduced-row-echelon basis, so `==`
/// compares codes, not presentations.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCodeQ {
    n: usize,
    k: usize,
    gen: MatQ,
}

impl LinearCodeQ {
    /// The code spanned by `rows` (which need not be independent).
    pub fn from_rows(spec: FieldSpec, n: usize, rows: &[Vec<FieldElement>]) -> Result<LinearCodeQ> {
        if n == 0 {
            return Err(Error::Usage("code length must be positive".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Usage(format!("generator rows must have length {n}")));
        }
        let m = MatQ::from_rows(spec, rows)?;
        if m.rows() == 0 {
            return Ok(LinearCodeQ {
                n,
                k: 0,
                gen: MatQ::zeros(spec, 0, n),
            });
        }
        Ok(Self::from_gen(m))
    }

    /// The row space of `gen` as a code.
    pub fn from_gen(gen: MatQ) -> LinearCodeQ {
        let n = gen.cols();
        let (r, rank) = gen.rref();
        let mut canonical = MatQ::zeros(gen.spec(), rank, n);
        for row in 0..rank {
            for c in 0..n {
                canonical.set(row, c, r.get(row, c));
            }
        }
        LinearCodeQ {
            n,
            k: rank,
            gen: canonical,
        }
    }

    /// A random [n, k] code, deterministic in `rng`. Rank-deficient samples
    /// are redrawn; after 64 failures the achieved rank is accepted.
    pub fn random(spec: FieldSpec, n: usize, k: usize, rng: &mut impl Rng) -> LinearCodeQ {
        assert!(k <= n, "k <= n violated: k={k}, n={n}");
        let mut last = None;
        for _ in 0..64 {
            let mut m = MatQ::zeros(spec, k, n);
            for r in 0..k {
                for c in 0..n {
                    let bits = rng.gen_range(0..spec.order()) as u16;
                    m.set(r, c, spec.element(bits).expect("bits in range"));
                }
            }
            let code = Self::from_gen(m);
            if code.k == k {
                return code;
            }
            last = Some(code);
        }
        last.expect("at least one draw")
    }

    pub fn spec(&self) -> FieldSpec {
        self.gen.spec()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &MatQ {
        &self.gen
    }

    /// The dual code under the standard inner product.
    pub fn dual(&self) -> LinearCodeQ {
        if self.k == 0 {
            // Dual of the zero code is the full space.
            let mut gen = MatQ::zeros(self.spec(), self.n, self.n);
            for i in 0..self.n {
                gen.set(i, i, self.spec().one());
            }
            return Self::from_gen(gen);
        }
        let kernel = self.gen.kernel();
        LinearCodeQ {
            n: self.n,
            k: kernel.rows(),
            gen: kernel,
        }
    }

    /// Whether every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCodeQ) -> Result<bool> {
        if self.n != other.n || self.spec() != other.spec() {
            return Err(Error::Usage(format!(
                "subcode check between [{}]-code over {} and [{}]-code over {}",
                self.n,
                self.spec(),
                other.n,
                other.spec()
            )));
        }
        let stacked = other.gen.stack(&self.gen)?;
        Ok(stacked.rank() == other.k)
    }

    pub fn encode(&self, msg: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(msg.len(), self.k, "message length must equal k");
        let mut word = vec![self.spec().zero(); self.n];
        for (r, &m) in msg.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (c, w) in word.iter_mut().enumerate() {
                *w = *w + self.gen.get(r, c) * m;
            }
        }
        word
    }

    /// Exact minimum Hamming distance by full codeword enumeration.
    ///
    /// Walks all q^k - 1 nonzero messages in Gray-code order over the k*t
    /// message bits, so each step XORs a single precomputed scaled generator
    /// row into the byte-packed codeword. Fails with a capacity error when
    /// q^k exceeds `budget`; sampling via [`LinearCodeQ::min_weight_upper`]
    /// is the fallback at that scale.
    pub fn min_distance_exact(&self, budget: u64) -> Result<u32> {
        if self.k == 0 {
            return Err(Error::Domain("zero code has no nonzero codewords".into()));
        }
        let t = self.spec().t();
        let msg_bits = self.k * t;
        if msg_bits >= 63 || (1u64 << msg_bits) > budget {
            return Err(Error::capacity(format!(
                "q^k = 2^{msg_bits} codewords exceed the enumeration budget {budget}; \
                 use min_weight_upper instead"
            )));
        }
        let words = self.n.div_ceil(8);
        // scaled[j * t + b] = generator row j scaled by the basis power x^b.
        let mut scaled = Vec::with_capacity(msg_bits);
        for j in 0..self.k {
            for b in 0..t {
                let factor = self.spec().element(1 << b).expect("power of x in field");
                let mut packed = vec![0u64; words];
                for c in 0..self.n {
                    let v = self.gen.get(j, c) * factor;
                    packed[c / 8] |= (v.bits() as u64) << (8 * (c % 8));
                }
                scaled.push(packed);
            }
        }
        let total = 1u64 << msg_bits;
        let mut word = vec![0u64; words];
        let mut best = u32::MAX;
        for i in 1..total {
            let p = i.trailing_zeros() as usize;
            let row = &scaled[p];
            let mut weight = 0;
            for (w, r) in word.iter_mut().zip(row) {
                *w ^= r;
                weight += nonzero_bytes(*w);
            }
            best = best.min(weight);
        }
        Ok(best)
    }

    /// Minimum weight over `trials` random nonzero codewords; an upper bound
    /// on the true distance, deterministic for a fixed seed.
    pub fn min_weight_upper(&self, trials: u64, seed: u64) -> Result<u32> {
        if self.k == 0 {
            return Err(Error::Domain("zero code has no nonzero codewords".into()));
        }
        if trials == 0 {
            return Err(Error::Usage("trials must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.spec().order();
        let mut best = u32::MAX;
        let mut msg = vec![self.spec().zero(); self.k];
        for _ in 0..trials {
            loop {
                for m in msg.iter_mut() {
                    let bits = rng.gen_range(0..q) as u16;
                    *m = self.spec().element(bits).expect("bits in range");
                }
                if msg.iter().any(|m| !m.is_zero()) {
                    break;
                }
            }
            let weight = self.encode(&msg).iter().filter(|e| !e.is_zero()).count() as u32;
            best = best.min(weight);
        }
        Ok(best)
    }
}

impl std::fmt::Debug for LinearCodeQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}] code over {}\n{:?}",
            self.n,
            self.k,
            self.spec(),
            self.gen
        )
    }
}

/// Count nonzero bytes of a word: fold each byte's bits into its low bit,
/// then popcount. Shifts never smear across byte boundaries because the
/// total fold travel (4+2+1) is below 8.
#[inline]
fn nonzero_bytes(mut w: u64) -> u32 {
    w |= w >> 4;
    w |= w >> 2;
    w |= w >> 1;
    (w & 0x0101_0101_0101_0101).count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(t: usize) -> FieldSpec {
        FieldSpec::new(t).unwrap()
    }

    fn code(spec: FieldSpec, rows: &[&[u16]]) -> LinearCodeQ {
        let rows: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&b| spec.element(b).unwrap()).collect())
            .collect();
        let n = rows[0].len();
        LinearCodeQ::from_rows(spec, n, &rows).unwrap()
    }

    /// Independent distance oracle: encode every nonzero message naively.
    fn distance_by_full_encode(c: &LinearCodeQ) -> u32 {
        let q = c.spec().order() as u64;
        let total = q.pow(c.k() as u32);
        let mut best = u32::MAX;
        for mut i in 1..total {
            let mut msg = Vec::with_capacity(c.k());
            for _ in 0..c.k() {
                msg.push(c.spec().element((i % q) as u16).unwrap());
                i /= q;
            }
            let w = c.encode(&msg).iter().filter(|e| !e.is_zero()).count() as u32;
            best = best.min(w);
        }
        best
    }

    #[test]
    fn rref_of_binary_parity_matrix() {
        let f = gf(1);
        let m = MatQ::from_rows(
            f,
            &[
                vec![f.one(), f.one(), f.zero()],
                vec![f.zero(), f.one(), f.one()],
                vec![f.one(), f.zero(), f.one()],
            ],
        )
        .unwrap();
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        // Third row is the sum of the first two, so it reduces away.
        assert_eq!(r.row(2).iter().filter(|e| !e.is_zero()).count(), 0);
    }

    #[test]
    fn kernel_rows_satisfy_defining_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for t in [1, 2, 3] {
            let f = gf(t);
            for _ in 0..50 {
                let rows = rng.gen_range(1..5);
                let cols = rng.gen_range(1..7);
                let mut m = MatQ::zeros(f, rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        m.set(r, c, f.element(rng.gen_range(0..f.order()) as u16).unwrap());
                    }
                }
                let k = m.kernel();
                assert_eq!(k.rows(), cols - m.rank());
                assert!(m.mul_transpose(&k).is_zero());
            }
        }
    }

    #[test]
    fn dual_of_repetition_is_parity() {
        let f = gf(1);
        let rep = code(f, &[&[1, 1, 1]]);
        let parity = code(f, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(rep.dual(), parity);
        assert_eq!(parity.dual(), rep);
    }

    #[test]
    fn dual_dimension_and_double_dual_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for t in [1, 2, 4] {
            let f = gf(t);
            for _ in 0..40 {
                let n = rng.gen_range(1..8);
                let k = rng.gen_range(0..=n);
                let c = LinearCodeQ::random(f, n, k, &mut rng);
                let d = c.dual();
                assert_eq!(d.k(), n - c.k());
                assert_eq!(d.dual(), c);
                // Every generator row of the dual is orthogonal to the code.
                if c.k() > 0 && d.k() > 0 {
                    assert!(c.generator().mul_transpose(d.generator()).is_zero());
                }
            }
        }
    }

    #[test]
    fn dual_of_zero_and_full_codes() {
        let f = gf(2);
        let full = code(f, &[&[1, 0], &[0, 1]]);
        let zero = full.dual();
        assert_eq!(zero.k(), 0);
        assert_eq!(zero.dual(), full);
    }

    #[test]
    fn subcode_checks() {
        let f = gf(1);
        let rep = code(f, &[&[1, 1, 1, 1]]);
        let even = code(f, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]);
        assert!(rep.is_subcode_of(&even).unwrap());
        assert!(!even.is_subcode_of(&rep).unwrap());
        let other = code(gf(2), &[&[1, 1, 1, 1]]);
        assert!(rep.is_subcode_of(&other).is_err());
    }

    #[test]
    fn repetition_code_distance() {
        let c = code(gf(1), &[&[1, 1, 1]]);
        assert_eq!(c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap(), 3);
    }

    #[test]
    fn sparse_row_distance_counts_only_nonzero_codewords() {
        let c = code(gf(1), &[&[1, 0, 1]]);
        assert_eq!(c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap(), 2);
    }

    #[test]
    fn reed_solomon_4_2_over_gf4_is_mds() {
        // Evaluation of {1, x} at the four field points: [4, 2, 3].
        let f = gf(2);
        let points: Vec<FieldElement> = f.elements().collect();
        let rows = vec![vec![f.one(); 4], points.clone()];
        let c = LinearCodeQ::from_rows(f, 4, &rows).unwrap();
        assert_eq!(c.k(), 2);
        let d = c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(d, 3);
        assert_eq!(d as usize, c.n() - c.k() + 1);
    }

    #[test]
    fn gray_walk_agrees_with_naive_encode_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for t in [1, 2, 3] {
            let f = gf(t);
            for _ in 0..30 {
                let n = rng.gen_range(1..7);
                let k = rng.gen_range(1..=n.min(4));
                let c = LinearCodeQ::random(f, n, k, &mut rng);
                if c.k() == 0 {
                    continue;
                }
                assert_eq!(
                    c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap(),
                    distance_by_full_encode(&c),
                );
            }
        }
    }

    #[test]
    fn singleton_bound_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..60 {
            let f = gf(2);
            let n = rng.gen_range(2..8);
            let k = rng.gen_range(1..=n);
            let c = LinearCodeQ::random(f, n, k, &mut rng);
            if c.k() == 0 {
                continue;
            }
            let d = c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap();
            assert!(d as usize <= c.n() - c.k() + 1);
        }
    }

    #[test]
    fn budget_overflow_is_a_capacity_error_pointing_at_sampling() {
        let c = code(gf(2), &[&[1, 0, 1], &[0, 1, 1]]);
        let err = c.min_distance_exact(8).unwrap_err();
        match err {
            Error::Capacity(msg) => assert!(msg.contains("min_weight_upper")),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn sampled_weight_bounds_exact_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let f = gf(2);
            let n = rng.gen_range(2..8);
            let k = rng.gen_range(1..=n);
            let c = LinearCodeQ::random(f, n, k, &mut rng);
            if c.k() == 0 {
                continue;
            }
            let exact = c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap();
            let sampled = c.min_weight_upper(500, 7).unwrap();
            assert!(sampled >= exact);
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let c = code(gf(2), &[&[1, 0, 1, 2], &[0, 1, 3, 1]]);
        let a = c.min_weight_upper(100, 99).unwrap();
        let b = c.min_weight_upper(100, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_code_distance_queries_fail() {
        let f = gf(2);
        let zero = LinearCodeQ::from_rows(f, 3, &[]).unwrap();
        assert!(zero.min_distance_exact(DEFAULT_ENUM_BUDGET).is_err());
        assert!(zero.min_weight_upper(10, 0).is_err());
    }
}
