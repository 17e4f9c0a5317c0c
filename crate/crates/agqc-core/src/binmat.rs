//! Bit-packed GF(2) matrices and binary linear codes.
//!
//! Rows are packed 64 columns per machine word, which keeps row reduction,
//! orthogonality checks, and codeword enumeration on length-500 codes cheap.
//! The same determinism rules as [`crate::linalg`] apply: leftmost-column
//! pivoting and canonical RREF generators, so code equality is matrix
//! equality.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense GF(2) matrix, one bit per entry.
#[derive(Clone, PartialEq, Eq)]
pub struct BinMat {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BinMat {
    pub fn zeros(rows: usize, cols: usize) -> BinMat {
        let words = cols.div_ceil(64).max(1);
        BinMat {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> BinMat {
        let mut m = BinMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from rows of 0/1 bytes; rows must be rectangular.
    pub fn from_bit_rows(rows: &[Vec<u8>]) -> Result<BinMat> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = BinMat::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Usage(format!(
                    "ragged rows: expected {cols} columns, got {}",
                    row.len()
                )));
            }
            for (c, &bit) in row.iter().enumerate() {
                if bit > 1 {
                    return Err(Error::Usage(format!("entry {bit} is not a bit")));
                }
                m.set(r, c, bit == 1);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = r * self.words + c / 64;
        let mask = 1u64 << (c % 64);
        if bit {
            self.data[w] |= mask;
        } else {
            self.data[w] &= !mask;
        }
    }

    pub fn row_bits(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| u8::from(self.get(r, c))).collect()
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn row_weight(&self, r: usize) -> u32 {
        self.row_words(r).iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Reduced row echelon form and rank, deterministic pivoting.
    pub fn rref(&self) -> (BinMat, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            let Some(src) = (pivot_row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            for r in 0..m.rows {
                if r != pivot_row && m.get(r, col) {
                    m.xor_rows(r, pivot_row);
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

    /// Canonical RREF basis of the right kernel, one vector per row.
    pub fn kernel(&self) -> BinMat {
        let (r, rank) = self.rref();
        let mut pivot_of_col = vec![usize::MAX; self.cols];
        let mut pivots = Vec::with_capacity(rank);
        for row in 0..rank {
            let col = (0..self.cols)
                .find(|&c| r.get(row, c))
                .expect("rank rows are nonzero");
            pivot_of_col[col] = row;
            pivots.push(col);
        }
        let mut basis = BinMat::zeros(self.cols - rank, self.cols);
        let mut out_row = 0;
        for (free, &pivot) in pivot_of_col.iter().enumerate() {
            if pivot != usize::MAX {
                continue;
            }
            basis.set(out_row, free, true);
            for (prow, &pcol) in pivots.iter().enumerate() {
                if r.get(prow, free) {
                    basis.set(out_row, pcol, true);
                }
            }
            out_row += 1;
        }
        let (canonical, krank) = basis.rref();
        debug_assert_eq!(krank, self.cols - rank);
        canonical
    }

    pub fn stack(&self, other: &BinMat) -> Result<BinMat> {
        if other.cols != self.cols {
            return Err(Error::Usage(format!(
                "cannot stack width {} under width {}",
                other.cols, self.cols
            )));
        }
        let mut out = BinMat::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        Ok(out)
    }

    /// Whether self * other^T is the zero matrix (all row pairs orthogonal).
    pub fn mul_transpose_is_zero(&self, other: &BinMat) -> bool {
        assert_eq!(self.cols, other.cols, "shape mismatch in mul_transpose");
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                let parity: u32 = a
                    .iter()
                    .zip(other.row_words(j))
                    .map(|(x, y)| (x & y).count_ones())
                    .sum();
                if parity & 1 == 1 {
                    return false;
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for w in 0..self.words {
            let v = self.data[s + w];
            self.data[d + w] ^= v;
        }
    }
}

impl std::fmt::Debug for BinMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinMat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// A binary [n, k] code with a canonical full-rank RREF generator.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    k: usize,
    gen: BinMat,
}

impl BinaryCode {
    /// The row space of `gen`, canonicalized.
    pub fn from_gen(gen: &BinMat) -> BinaryCode {
        let n = gen.cols();
        let (r, rank) = gen.rref();
        let mut canonical = BinMat::zeros(rank, n);
        for row in 0..rank {
            canonical.data[row * canonical.words..(row + 1) * canonical.words]
                .copy_from_slice(r.row_words(row));
        }
        BinaryCode {
            n,
            k: rank,
            gen: canonical,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &BinMat {
        &self.gen
    }

    pub fn dual(&self) -> BinaryCode {
        if self.k == 0 {
            return BinaryCode::from_gen(&BinMat::identity(self.n));
        }
        let kernel = self.gen.kernel();
        BinaryCode {
            n: self.n,
            k: kernel.rows(),
            gen: kernel,
        }
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::Usage(format!(
                "subcode check between lengths {} and {}",
                self.n, other.n
            )));
        }
        Ok(other.gen.stack(&self.gen)?.rank() == other.k)
    }

    /// Whether a single word (row r of `m`) is a codeword.
    pub fn contains_row(&self, m: &BinMat, r: usize) -> bool {
        if m.cols() != self.n {
            return false;
        }
        let mut candidate = BinMat::zeros(1, self.n);
        candidate.data.copy_from_slice(m.row_words(r));
        self.gen
            .stack(&candidate)
            .map(|s| s.rank() == self.k)
            .unwrap_or(false)
    }

    /// Exact minimum distance; enumeration capped by `budget` codewords.
    pub fn min_distance_exact(&self, budget: u64) -> Result<u32> {
        if self.k == 0 {
            return Err(Error::Domain("zero code has no nonzero codewords".into()));
        }
        let mask = if self.k >= 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        };
        min_weight_masked(&self.gen, mask, budget)
    }

    /// Minimum weight over `trials` random nonzero codewords (upper bound),
    /// deterministic per seed.
    pub fn min_weight_upper(&self, trials: u64, seed: u64) -> Result<u32> {
        if self.k == 0 {
            return Err(Error::Domain("zero code has no nonzero codewords".into()));
        }
        if trials == 0 {
            return Err(Error::Usage("trials must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = u32::MAX;
        let words = self.gen.words;
        let mut word = vec![0u64; words];
        for _ in 0..trials {
            word.fill(0);
            let mut any = false;
            while !any {
                for j in 0..self.k {
                    if rng.gen::<bool>() {
                        any = true;
                        for (w, g) in word.iter_mut().zip(self.gen.row_words(j)) {
                            *w ^= g;
                        }
                    }
                }
            }
            let weight: u32 = word.iter().map(|w| w.count_ones()).sum();
            best = best.min(weight);
        }
        Ok(best)
    }
}

impl std::fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}] binary code\n{:?}", self.n, self.k, self.gen)
    }
}

/// Minimum weight over the row space of `gen`, restricted to combinations
/// whose message overlaps `qualify_mask` (bit j = generator row j).
///
/// Messages walk in Gray-code order, one row XOR per step. With the all-ones
/// mask this is the plain minimum distance; the CSS distance uses a mask
/// selecting coset-representative rows to skip a subcode.
pub(crate) fn min_weight_masked(gen: &BinMat, qualify_mask: u64, budget: u64) -> Result<u32> {
    let k = gen.rows();
    assert!(k >= 1, "empty generator");
    if k >= 63 || (1u64 << k) > budget {
        return Err(Error::capacity(format!(
            "2^{k} codewords exceed the enumeration budget {budget}; \
             use min_weight_upper instead"
        )));
    }
    let words = gen.words;
    let mut word = vec![0u64; words];
    let mut best = u32::MAX;
    let mut gray = 0u64;
    for i in 1..(1u64 << k) {
        let p = i.trailing_zeros() as usize;
        gray ^= 1 << p;
        let mut weight = 0;
        for (w, g) in word.iter_mut().zip(gen.row_words(p)) {
            *w ^= g;
            weight += w.count_ones();
        }
        if gray & qualify_mask != 0 {
            best = best.min(weight);
        }
    }
    if best == u32::MAX {
        return Err(Error::Domain(
            "no codeword qualifies under the message mask".into(),
        ));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_ENUM_BUDGET;

    fn mat(rows: &[&str]) -> BinMat {
        let rows: Vec<Vec<u8>> = rows
            .iter()
            .map(|s| s.bytes().map(|b| b - b'0').collect())
            .collect();
        BinMat::from_bit_rows(&rows).unwrap()
    }

    fn hamming_7_4() -> BinaryCode {
        BinaryCode::from_gen(&mat(&["1000110", "0100101", "0010011", "0001111"]))
    }

    #[test]
    fn bit_round_trip_across_word_boundaries() {
        let mut m = BinMat::zeros(2, 130);
        m.set(0, 0, true);
        m.set(0, 63, true);
        m.set(0, 64, true);
        m.set(1, 129, true);
        assert!(m.get(0, 63) && m.get(0, 64) && m.get(1, 129));
        assert_eq!(m.row_weight(0), 3);
        assert_eq!(m.row_bits(1)[129], 1);
    }

    #[test]
    fn rref_rank_and_kernel_shapes() {
        let m = mat(&["110", "011", "101"]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.rows(), 1);
        assert!(m.mul_transpose_is_zero(&k));
    }

    #[test]
    fn kernel_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..80 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..90);
            let mut m = BinMat::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, rng.gen());
                }
            }
            let k = m.kernel();
            assert_eq!(k.rows(), cols - m.rank());
            assert!(m.mul_transpose_is_zero(&k));
        }
    }

    #[test]
    fn hamming_code_and_dual_distances() {
        let c = hamming_7_4();
        assert_eq!(c.k(), 4);
        assert_eq!(c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap(), 3);
        let dual = c.dual();
        assert_eq!(dual.k(), 3);
        // The dual of Hamming [7,4] is the simplex code: all weights 4.
        assert_eq!(dual.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap(), 4);
        assert!(dual.is_subcode_of(&c).unwrap());
    }

    #[test]
    fn masked_weight_matches_naive_filter() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..40 {
            let k = rng.gen_range(1..6);
            let n = rng.gen_range(k..10);
            let mut g = BinMat::zeros(k, n);
            for r in 0..k {
                for c in 0..n {
                    g.set(r, c, rng.gen());
                }
            }
            let mask = rng.gen_range(1..(1u64 << k));
            // Oracle: direct message sweep with naive encoding.
            let mut expect = u32::MAX;
            for msg in 1u64..(1 << k) {
                if msg & mask == 0 {
                    continue;
                }
                let mut word = vec![0u64; g.words];
                for j in 0..k {
                    if (msg >> j) & 1 == 1 {
                        for (w, gw) in word.iter_mut().zip(g.row_words(j)) {
                            *w ^= gw;
                        }
                    }
                }
                expect = expect.min(word.iter().map(|w| w.count_ones()).sum());
            }
            let got = min_weight_masked(&g, mask, DEFAULT_ENUM_BUDGET).unwrap();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn contains_row_distinguishes_members() {
        let c = hamming_7_4();
        let member = mat(&["1000110"]);
        let outsider = mat(&["1000000"]);
        assert!(c.contains_row(&member, 0));
        assert!(!c.contains_row(&outsider, 0));
    }

    #[test]
    fn sampled_bound_and_determinism() {
        let c = hamming_7_4();
        let exact = c.min_distance_exact(DEFAULT_ENUM_BUDGET).unwrap();
        let s1 = c.min_weight_upper(2000, 11).unwrap();
        let s2 = c.min_weight_upper(2000, 11).unwrap();
        assert_eq!(s1, s2);
        assert!(s1 >= exact);
        // 2000 draws from 15 nonzero words will surely hit weight 3.
        assert_eq!(s1, 3);
    }

    #[test]
    fn budget_cap_is_reported() {
        let c = hamming_7_4();
        assert!(matches!(c.min_distance_exact(4), Err(Error::Capacity(_))));
    }

    #[test]
    fn dual_of_zero_code_is_everything() {
        let zero = BinaryCode::from_gen(&BinMat::zeros(0, 5));
        assert_eq!(zero.k(), 0);
        let full = zero.dual();
        assert_eq!(full.k(), 5);
    }

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
}
