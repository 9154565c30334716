//! Bit-packed GF(2) row reduction.
//!
//! Rows are packed 64 columns per word; elimination XORs whole words.

/// A GF(2) matrix with rows stored as packed `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    /// Packs entries given row-major; any odd entry counts as 1.
    pub fn from_entries(rows: usize, cols: usize, entries: &[u32]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if entries[r * cols + c] & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.bits[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_rows(&mut self, target: usize, source: usize, from_word: usize) {
        let w = self.words_per_row;
        let (t, s) = (target * w, source * w);
        for k in from_word..w {
            let v = self.bits[s + k];
            self.bits[t + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.bits.swap(a * w + k, b * w + k);
        }
    }

    /// Rank by forward elimination; consumes a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate()
    }

    /// In-place forward elimination returning the rank. Pivot choice is the
    /// first row (from the current one down) with a set bit in the column.
    fn eliminate(&mut self) -> usize {
        let mut pivot_row = 0;
        for c in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let word = c / 64;
            let mask = 1u64 << (c % 64);
            let w = self.words_per_row;
            let Some(found) = (pivot_row..self.rows).find(|&r| self.bits[r * w + word] & mask != 0)
            else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            for r in pivot_row + 1..self.rows {
                if self.bits[r * w + word] & mask != 0 {
                    self.xor_rows(r, pivot_row, word);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_three_by_three() {
        let m = BitMatrix::from_entries(3, 3, &[1; 9]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn identity_crossing_word_boundary() {
        let n = 130;
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        assert_eq!(m.rank(), n);
        m.set(129, 0, true);
        assert_eq!(m.rank(), n);
        assert!(m.get(129, 0));
        m.set(129, 129, false);
        assert_eq!(m.rank(), n - 1);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(BitMatrix::zeros(5, 0).rank(), 0);
    }
}
