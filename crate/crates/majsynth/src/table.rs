//! Bit-packed truth tables for boolean functions of up to 10 variables.
//!
//! Row indexing puts variable `A` (index 0) in the most significant
//! position: for `n` variables, row `i` assigns variable `k` the bit
//! `(i >> (n - 1 - k)) & 1`. With `n = 3`, row index = 4A + 2B + C, so
//! variable `A` alone has the table `{4, 5, 6, 7}`.

use smallvec::SmallVec;
use std::fmt;

/// Variables are named `A`..`J`.
pub const MAX_VARS: u8 = 10;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TableError {
    #[error("variable count must be between 1 and {MAX_VARS}, got {0}")]
    BadVarCount(u8),
    #[error("minterm {minterm} out of range for {vars} variables (max {max})")]
    MintermOutOfRange { minterm: u64, vars: u8, max: u64 },
}

/// Truth table of an `n`-variable function, one bit per row, packed
/// into 64-bit words (`words[i / 64] >> (i % 64)`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u8,
    words: SmallVec<[u64; 1]>,
}

fn word_count(n: u8) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Bits past 2^n in the last word stay zero so that `Eq`/`Hash` work on
/// the packed words directly.
fn last_word_mask(n: u8) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl TruthTable {
    pub fn zeros(n: u8) -> Self {
        assert!((1..=MAX_VARS).contains(&n), "unsupported variable count {n}");
        TruthTable { n, words: SmallVec::from_elem(0, word_count(n)) }
    }

    pub fn ones(n: u8) -> Self {
        let mut t = Self::zeros(n);
        let mask = last_word_mask(n);
        for w in &mut t.words {
            *w = mask;
        }
        t
    }

    /// Table of variable `k` alone (`A` is `k = 0` and the row-index MSB).
    pub fn var(n: u8, k: u8) -> Self {
        let mut t = Self::zeros(n);
        assert!(k < n, "variable {k} out of range for {n} variables");
        let s = n - 1 - k; // bit position of variable k within the row index
        if s >= 6 {
            for (j, w) in t.words.iter_mut().enumerate() {
                if (j >> (s - 6)) & 1 == 1 {
                    *w = !0;
                }
            }
        } else {
            // Periodic pattern within a word: 2^s zeros then 2^s ones.
            const PATTERNS: [u64; 6] = [
                0xaaaa_aaaa_aaaa_aaaa,
                0xcccc_cccc_cccc_cccc,
                0xf0f0_f0f0_f0f0_f0f0,
                0xff00_ff00_ff00_ff00,
                0xffff_0000_ffff_0000,
                0xffff_ffff_0000_0000,
            ];
            let pat = PATTERNS[s as usize] & last_word_mask(n);
            for w in &mut t.words {
                *w = pat;
            }
        }
        t
    }

    pub fn from_minterms(n: u8, minterms: &[u64]) -> Result<Self, TableError> {
        if !(1..=MAX_VARS).contains(&n) {
            return Err(TableError::BadVarCount(n));
        }
        let rows = 1u64 << n;
        let mut t = Self::zeros(n);
        for &m in minterms {
            if m >= rows {
                return Err(TableError::MintermOutOfRange { minterm: m, vars: n, max: rows - 1 });
            }
            t.words[(m / 64) as usize] |= 1u64 << (m % 64);
        }
        Ok(t)
    }

    pub fn vars(&self) -> u8 {
        self.n
    }

    pub fn rows(&self) -> u64 {
        1u64 << self.n
    }

    pub fn bit(&self, i: u64) -> bool {
        debug_assert!(i < self.rows());
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    /// Number of rows on which the two tables agree. Both tables must
    /// have the same variable count.
    pub fn match_count(&self, other: &Self) -> u64 {
        assert_eq!(self.n, other.n, "match_count requires equal variable counts");
        let differing: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        self.rows() - differing as u64
    }

    pub fn complement(&self) -> Self {
        let mut t = self.clone();
        let mask = last_word_mask(self.n);
        for w in &mut t.words {
            *w = !*w & mask;
        }
        t
    }

    /// Bitwise three-input majority.
    pub fn maj3(a: &Self, b: &Self, c: &Self) -> Self {
        debug_assert!(a.n == b.n && b.n == c.n);
        let mut t = Self::zeros(a.n);
        for i in 0..t.words.len() {
            let (x, y, z) = (a.words[i], b.words[i], c.words[i]);
            t.words[i] = (x & y) | (y & z) | (z & x);
        }
        t
    }

    pub fn is_zeros(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_ones(&self) -> bool {
        *self == Self::ones(self.n)
    }

    pub fn minterms(&self) -> Vec<u64> {
        (0..self.rows()).filter(|&i| self.bit(i)).collect()
    }

    /// Hex encoding of the packed rows, row 2^n - 1 first, at least one
    /// digit per four rows. `{3, 5, 6, 7}` at n = 3 encodes as `"e8"`.
    pub fn to_hex(&self) -> String {
        let digits = self.rows().div_ceil(4) as usize;
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (self.words[d / 16] >> (4 * (d % 16))) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(n: u8, s: &str) -> Result<Self, TableError> {
        let mut t = Self::zeros(n);
        let digits = t.rows().div_ceil(4) as usize;
        if s.len() != digits || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(TableError::BadVarCount(n));
        }
        for (i, ch) in s.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).unwrap() as u64;
            t.words[i / 16] |= nibble << (4 * (i % 16));
        }
        let mask = last_word_mask(n);
        let last = t.words.len() - 1;
        t.words[last] &= mask;
        Ok(t)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, 0x{})", self.n, self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_tables_follow_msb_convention() {
        assert_eq!(TruthTable::var(3, 0).minterms(), vec![4, 5, 6, 7]); // A
        assert_eq!(TruthTable::var(3, 1).minterms(), vec![2, 3, 6, 7]); // B
        assert_eq!(TruthTable::var(3, 2).minterms(), vec![1, 3, 5, 7]); // C
        assert_eq!(TruthTable::var(2, 0).minterms(), vec![2, 3]);
    }

    #[test]
    fn var_tables_for_wide_functions() {
        for n in 7..=MAX_VARS {
            for k in 0..n {
                let t = TruthTable::var(n, k);
                for i in 0..t.rows() {
                    assert_eq!(t.bit(i), (i >> (n - 1 - k)) & 1 == 1, "n={n} k={k} row={i}");
                }
            }
        }
    }

    #[test]
    fn from_minterms_roundtrips() {
        let t = TruthTable::from_minterms(3, &[0, 2, 4, 7]).unwrap();
        assert_eq!(t.minterms(), vec![0, 2, 4, 7]);
        assert_eq!(TruthTable::from_minterms(2, &[]).unwrap().minterms(), Vec::<u64>::new());
        let all = TruthTable::from_minterms(3, &(0..8).collect::<Vec<_>>()).unwrap();
        assert!(all.is_ones());
    }

    #[test]
    fn from_minterms_rejects_out_of_range() {
        assert_eq!(
            TruthTable::from_minterms(3, &[8]),
            Err(TableError::MintermOutOfRange { minterm: 8, vars: 3, max: 7 })
        );
        assert_eq!(TruthTable::from_minterms(0, &[]), Err(TableError::BadVarCount(0)));
        assert_eq!(TruthTable::from_minterms(11, &[]), Err(TableError::BadVarCount(11)));
    }

    #[test]
    fn match_count_counts_agreeing_rows() {
        let t = TruthTable::from_minterms(3, &[0, 2, 4, 7]).unwrap();
        assert_eq!(t.match_count(&t), 8);
        assert_eq!(t.match_count(&t.complement()), 0);
        // Majority(A,B,C) vs AND(A,B,C) agree except on rows 3, 5, 6.
        let maj = TruthTable::from_minterms(3, &[3, 5, 6, 7]).unwrap();
        let and = TruthTable::from_minterms(3, &[7]).unwrap();
        assert_eq!(maj.match_count(&and), 5);
    }

    #[test]
    #[should_panic(expected = "equal variable counts")]
    fn match_count_rejects_mixed_widths() {
        let a = TruthTable::zeros(3);
        let b = TruthTable::zeros(4);
        a.match_count(&b);
    }

    #[test]
    fn maj3_matches_per_row_majority() {
        let a = TruthTable::var(3, 0);
        let b = TruthTable::var(3, 1);
        let c = TruthTable::var(3, 2);
        let m = TruthTable::maj3(&a, &b, &c);
        assert_eq!(m.minterms(), vec![3, 5, 6, 7]);
    }

    #[test]
    fn complement_is_involutive() {
        for n in [1, 3, 6, 7, 10] {
            let t = TruthTable::var(n, n - 1);
            assert_eq!(t.complement().complement(), t);
            assert_eq!(t.match_count(&t.complement()), 0);
        }
    }

    #[test]
    fn hex_roundtrips() {
        let t = TruthTable::from_minterms(3, &[3, 5, 6, 7]).unwrap();
        assert_eq!(t.to_hex(), "e8");
        assert_eq!(TruthTable::from_hex(3, "e8").unwrap(), t);
        let wide = TruthTable::var(8, 3);
        assert_eq!(TruthTable::from_hex(8, &wide.to_hex()).unwrap(), wide);
        let tiny = TruthTable::from_minterms(1, &[1]).unwrap();
        assert_eq!(tiny.to_hex(), "2");
    }
}
