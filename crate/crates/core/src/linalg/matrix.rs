use std::fmt::Write as _;

use rand::Rng;

use super::field;
use super::gf2::BitMatrix;
use crate::error::{domain, parse_err, Result};

/// Dense row-major matrix over GF(p). Entries are always reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of Gauss-Jordan reduction: `transform * original == reduced`,
/// `reduced` is in reduced row echelon form and `transform` is invertible.
#[derive(Debug, Clone)]
pub struct EchelonDecomposition {
    pub pivots: Vec<usize>,
    pub reduced: FpMatrix,
    pub transform: FpMatrix,
}

impl EchelonDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        field::check_prime(p)?;
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        Ok(m)
    }

    /// Builds a matrix from signed row-major entries, reducing mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        field::check_prime(p)?;
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(domain("ragged rows"));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&v| field::reduce_i64(p, v))
            .collect();
        Ok(FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    pub(crate) fn from_raw(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < p));
        FpMatrix {
            p,
            rows,
            cols,
            data,
        }
    }

    pub fn random<R: Rng + ?Sized>(p: u32, rows: usize, cols: usize, rng: &mut R) -> Result<Self> {
        field::check_prime(p)?;
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data,
        })
    }

    /// Random matrix of rank at most `rank`, as a product of `rows x rank`
    /// and `rank x cols` factors.
    pub fn random_low_rank<R: Rng + ?Sized>(
        p: u32,
        rows: usize,
        cols: usize,
        rank: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let left = Self::random(p, rows, rank, rng)?;
        let right = Self::random(p, rank, cols, rng)?;
        left.mul(&right)
    }

    /// Random invertible `n x n` matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(p: u32, n: usize, rng: &mut R) -> Result<Self> {
        loop {
            let m = Self::random(p, n, n, rng)?;
            if m.rank() == n {
                return Ok(m);
            }
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = field::reduce_i64(self.p, value);
    }

    /// Adds `value` (already reduced) to entry `(r, c)`.
    pub(crate) fn add_at(&mut self, r: usize, c: usize, value: u32) {
        let e = &mut self.data[r * self.cols + c];
        *e = field::add(self.p, *e, value);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(domain(format!(
                "matrices over GF({}) and GF({})",
                self.p, other.p
            )));
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        self.check_same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(domain(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field::add(p, a, b))
            .collect();
        Ok(Self::from_raw(p, self.rows, self.cols, data))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field::sub(p, a, b))
            .collect();
        Ok(Self::from_raw(p, self.rows, self.cols, data))
    }

    pub fn scale(&self, k: i64) -> Self {
        let p = self.p;
        let k = field::reduce_i64(p, k);
        let data = self.data.iter().map(|&a| field::mul(p, a, k)).collect();
        Self::from_raw(p, self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let (n, m) = (self.rows, other.cols);
        let mut acc = vec![0u64; m];
        let mut data = vec![0u32; n * m];
        // Accumulate unreduced products and reduce only when another one
        // could overflow: after a reduction each slot is < p, and each step
        // adds at most (p-1)^2.
        let step = (p - 1) * (p - 1);
        let budget = (u64::MAX - (p - 1)) / step.max(1);
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0u64;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                if pending == budget {
                    acc.iter_mut().for_each(|s| *s %= p);
                    pending = 0;
                }
                let row = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot += a * b as u64;
                }
                pending += 1;
            }
            for (j, &a) in acc.iter().enumerate() {
                data[i * m + j] = (a % p) as u32;
            }
        }
        Ok(Self::from_raw(self.p, n, m, data))
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Self::from_raw(self.p, self.cols, self.rows, data)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.rows != other.rows {
            return Err(domain(format!(
                "row count mismatch: {} vs {}",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Self::from_raw(self.p, self.rows, cols, data))
    }

    /// Sub-matrix of the given column range.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let cols = range.len();
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.row(r)[range.clone()]);
        }
        Self::from_raw(self.p, self.rows, cols, data)
    }

    pub fn to_bits(&self) -> BitMatrix {
        BitMatrix::from_entries(self.rows, self.cols, &self.data)
    }

    /// Dimension of the column space. GF(2) goes through the bit-packed kernel.
    pub fn rank(&self) -> usize {
        if self.p == 2 {
            self.to_bits().rank()
        } else {
            self.rank_generic()
        }
    }

    /// Rank by generic forward elimination, for any prime.
    pub fn rank_generic(&self) -> usize {
        let p = self.p;
        let mut m = self.data.clone();
        let cols = self.cols;
        let mut pivot_row = 0;
        for c in 0..cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            if found != pivot_row {
                for k in c..cols {
                    m.swap(found * cols + k, pivot_row * cols + k);
                }
            }
            let inv = field::inv(p, m[pivot_row * cols + c]);
            for r in pivot_row + 1..self.rows {
                let lead = m[r * cols + c];
                if lead == 0 {
                    continue;
                }
                let factor = field::mul(p, lead, inv);
                for k in c..cols {
                    let pv = m[pivot_row * cols + k];
                    if pv != 0 {
                        let t = field::mul(p, factor, pv);
                        m[r * cols + k] = field::sub(p, m[r * cols + k], t);
                    }
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Dimension of the right kernel `{x : Mx = 0}`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Gauss-Jordan reduction tracking the row operations. Pivoting is the
    /// first nonzero entry of each column scanning rows top-down.
    pub fn echelon(&self) -> EchelonDecomposition {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut red = self.data.clone();
        let mut tr = Self::identity(p, rows).expect("prime checked").data;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for c in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| red[r * cols + c] != 0) else {
                continue;
            };
            if found != pivot_row {
                for k in 0..cols {
                    red.swap(found * cols + k, pivot_row * cols + k);
                }
                for k in 0..rows {
                    tr.swap(found * rows + k, pivot_row * rows + k);
                }
            }
            let inv = field::inv(p, red[pivot_row * cols + c]);
            for k in 0..cols {
                red[pivot_row * cols + k] = field::mul(p, red[pivot_row * cols + k], inv);
            }
            for k in 0..rows {
                tr[pivot_row * rows + k] = field::mul(p, tr[pivot_row * rows + k], inv);
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let lead = red[r * cols + c];
                if lead == 0 {
                    continue;
                }
                for k in 0..cols {
                    let t = field::mul(p, lead, red[pivot_row * cols + k]);
                    red[r * cols + k] = field::sub(p, red[r * cols + k], t);
                }
                for k in 0..rows {
                    let t = field::mul(p, lead, tr[pivot_row * rows + k]);
                    tr[r * rows + k] = field::sub(p, tr[r * rows + k], t);
                }
            }
            pivots.push(c);
            pivot_row += 1;
        }
        EchelonDecomposition {
            pivots,
            reduced: Self::from_raw(p, rows, cols, red),
            transform: Self::from_raw(p, rows, rows, tr),
        }
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let ech = self.echelon();
        (ech.rank() == self.rows).then_some(ech.transform)
    }

    /// Basis of the right kernel, one column per basis vector.
    pub fn kernel_basis(&self) -> Self {
        let ech = self.echelon();
        let p = self.p;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            ech.pivots.iter().for_each(|&c| v[c] = true);
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Self::from_raw(p, self.cols, free.len(), vec![0; self.cols * free.len()]);
        for (j, &f) in free.iter().enumerate() {
            basis.data[f * free.len() + j] = 1;
            for (i, &pc) in ech.pivots.iter().enumerate() {
                let v = ech.reduced.get(i, f);
                basis.data[pc * free.len() + j] = field::neg(p, v);
            }
        }
        basis
    }

    /// Some solution of `self * x = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Result<Option<Vec<u32>>> {
        if rhs.len() != self.rows {
            return Err(domain(format!(
                "right-hand side has length {}, expected {}",
                rhs.len(),
                self.rows
            )));
        }
        let ech = self.echelon();
        let p = self.p;
        let transformed: Vec<u32> = (0..self.rows)
            .map(|r| {
                ech.transform
                    .row(r)
                    .iter()
                    .zip(rhs)
                    .fold(0, |acc, (&a, &b)| {
                        field::add(p, acc, field::mul(p, a, b % p))
                    })
            })
            .collect();
        if transformed[ech.rank()..].iter().any(|&v| v != 0) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in ech.pivots.iter().enumerate() {
            x[c] = transformed[i];
        }
        Ok(Some(x))
    }

    /// Writes the fixture text format: a `p rows cols` header line, then one
    /// line of space-separated entries per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.p, self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the fixture text format. Entries may be spread across lines
    /// freely after the header; blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i, t)));
        let mut header = [0usize; 3];
        for (k, slot) in header.iter_mut().enumerate() {
            let (line, tok) = tokens
                .next()
                .ok_or_else(|| parse_err(1, "missing `p rows cols` header"))?;
            *slot = tok
                .parse()
                .map_err(|_| parse_err(line, format!("bad header field {k}: {tok:?}")))?;
        }
        let [p, rows, cols] = header;
        let p = u32::try_from(p).map_err(|_| parse_err(1, "prime too large"))?;
        field::check_prime(p).map_err(|e| parse_err(1, e.to_string()))?;
        let mut data = Vec::with_capacity(rows * cols);
        let mut last_line = 1;
        for (line, tok) in tokens {
            last_line = line;
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(line, format!("bad entry {tok:?}")))?;
            data.push(field::reduce_i64(p, v));
        }
        if data.len() != rows * cols {
            return Err(parse_err(
                last_line,
                format!("expected {} entries, found {}", rows * cols, data.len()),
            ));
        }
        Ok(Self::from_raw(p, rows, cols, data))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn mul_with_large_prime_matches_naive() {
        let p = 2_147_483_647;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = FpMatrix::random(p, 3, 40, &mut rng).unwrap();
        let b = FpMatrix::random(p, 40, 4, &mut rng).unwrap();
        let c = a.mul(&b).unwrap();
        for i in 0..3 {
            for j in 0..4 {
                let want = (0..40).fold(0u32, |acc, k| {
                    field::add(p, acc, field::mul(p, a.get(i, k), b.get(k, j)))
                });
                assert_eq!(c.get(i, j), want);
            }
        }
    }

    #[test]
    fn rank_examples() {
        for n in [1, 5, 17] {
            assert_eq!(FpMatrix::identity(5, n).unwrap().rank(), n);
            assert_eq!(FpMatrix::identity(5, n).unwrap().nullity(), 0);
            assert_eq!(FpMatrix::zeros(3, n, n).unwrap().rank(), 0);
            assert_eq!(FpMatrix::zeros(3, 2, n).unwrap().nullity(), n);
        }
        let ones = m(2, &[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(ones.rank(), 1);
        assert_eq!(ones.rank_generic(), 1);
        assert_eq!(ones.nullity(), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let a = m(2, &[&[1, 1], &[-1, 1]]);
        assert_eq!(a.rank(), 1);
        let a = m(3, &[&[1, 1], &[-1, 1]]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn echelon_transform_reproduces_reduced() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2, 3, 7] {
            for _ in 0..20 {
                let a = FpMatrix::random_low_rank(p, 6, 9, 3, &mut rng).unwrap();
                let e = a.echelon();
                assert_eq!(e.transform.mul(&a).unwrap(), e.reduced);
                assert_eq!(e.rank(), a.rank());
                assert!(e.rank() <= 3);
                assert!(e.transform.inverse().is_some());
            }
        }
    }

    #[test]
    fn kernel_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = FpMatrix::random_low_rank(5, 5, 7, 3, &mut rng).unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.cols(), a.nullity());
        assert!(a.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), k.cols());

        let x0: Vec<u32> = (0..7).map(|i| (i * 3 % 5) as u32).collect();
        let col = FpMatrix::from_raw(5, 7, 1, x0.clone());
        let rhs = a.mul(&col).unwrap().entries().to_vec();
        let x = a.solve(&rhs).unwrap().expect("consistent");
        let xm = FpMatrix::from_raw(5, 7, 1, x);
        assert_eq!(a.mul(&xm).unwrap().entries(), &rhs[..]);

        let z = FpMatrix::zeros(5, 2, 2).unwrap();
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        assert!(z.solve(&[1]).is_err());
    }

    #[test]
    fn arithmetic_plumbing() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = FpMatrix::random(7, 3, 3, &mut rng).unwrap();
        let b = FpMatrix::random(7, 3, 3, &mut rng).unwrap();
        let c = FpMatrix::random(7, 3, 3, &mut rng).unwrap();
        let i = FpMatrix::identity(7, 3).unwrap();
        assert_eq!(a.mul(&i).unwrap(), a);
        assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
        assert_eq!(a.scale(3).add(&a.scale(4)).unwrap(), a.scale(0));
        assert!(a.mul(&FpMatrix::zeros(7, 2, 2).unwrap()).is_err());
        assert!(a.add(&FpMatrix::zeros(5, 3, 3).unwrap()).is_err());

        // GF(2) addition is XOR of the packed rows.
        let x = FpMatrix::random(2, 4, 70, &mut rng).unwrap();
        let y = FpMatrix::random(2, 4, 70, &mut rng).unwrap();
        let (bx, by, bs) = (x.to_bits(), y.to_bits(), x.add(&y).unwrap().to_bits());
        for r in 0..4 {
            let xor: Vec<u64> = bx
                .row_words(r)
                .iter()
                .zip(by.row_words(r))
                .map(|(a, b)| a ^ b)
                .collect();
            assert_eq!(bs.row_words(r), &xor[..]);
        }
    }

    #[test]
    fn text_format() {
        let a = m(3, &[&[1, 2, 0], &[0, -1, 4]]);
        let text = a.to_text();
        assert_eq!(text, "3 2 3\n1 2 0\n0 2 1\n");
        assert_eq!(FpMatrix::from_text(&text).unwrap(), a);
        assert_eq!(
            FpMatrix::from_text("# comment\n3 2 3\n1 2 0 0 2 1\n").unwrap(),
            a
        );
        assert!(FpMatrix::from_text("4 1 1\n1\n").is_err());
        assert!(FpMatrix::from_text("3 2 2\n1 2 3\n").is_err());
        assert!(FpMatrix::from_text("3 1 1\nx\n").is_err());
        assert!(FpMatrix::from_text("").is_err());
    }
}
