//! Dense linear algebra over GF(2).
//!
//! Every matrix row is packed into a single `u64`, so matrices are capped at
//! [`MAX_COLS`] columns. Bit `c` of a row word is the entry in column `c`.
//! Row operations are word-wise XOR.

use crate::error::{Error, Result};

/// Largest supported column count (one machine word per row).
pub const MAX_COLS: usize = 64;

/// Immutable bit-packed 0/1 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub matrix: GF2Matrix,
    pub pivots: Vec<usize>,
}

#[inline]
pub(crate) fn col_mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

/// Iterate over the indices of set bits in ascending order.
#[inline]
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

/// In-place Gauss-Jordan elimination restricted to the columns in `live`.
///
/// Rows end up in reduced echelon form with the nonzero rows first; the
/// returned pivots are strictly increasing. Zero rows are left at the tail.
pub(crate) fn reduce_in_place(rows: &mut [u64], live: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in bits(live) {
        if next == rows.len() {
            break;
        }
        let bit = 1u64 << c;
        let Some(p) = (next..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(next, p);
        let pivot_row = rows[next];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

/// Rank of the span of `vectors` (each a word of bits).
pub(crate) fn span_rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    // xor basis keyed by highest bit
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let h = 63 - v.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = v;
                rank += 1;
                break;
            }
            v ^= basis[h];
        }
    }
    rank
}

/// Basis of the GF(2) null space of `rows`, restricted to the columns in
/// `live`: one vector per non-pivot column, each a word over the columns.
/// `rows` is overwritten with its reduced form.
pub(crate) fn kernel_basis(rows: &mut [u64], live: u64) -> Vec<u64> {
    let pivots = reduce_in_place(rows, live);
    let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
    bits(live & !pivot_mask)
        .map(|f| {
            pivots
                .iter()
                .enumerate()
                .filter(|&(i, _)| rows[i] >> f & 1 == 1)
                .fold(1u64 << f, |acc, (_, &p)| acc | 1 << p)
        })
        .collect()
}

/// Minimal nonzero supports of the span of `basis`, sorted by
/// (weight, value). For a kernel basis these are exactly the circuits of the
/// binary matroid.
pub(crate) fn minimal_supports(basis: &[u64]) -> Vec<u64> {
    let k = basis.len();
    assert!(k < 32, "cycle space of dimension {k} is too large to enumerate");
    let mut vectors = Vec::with_capacity((1usize << k) - 1);
    let mut v = 0u64;
    // Gray code walk over all nonzero combinations
    for i in 1u64..(1u64 << k) {
        v ^= basis[i.trailing_zeros() as usize];
        vectors.push(v);
    }
    vectors.sort_unstable_by_key(|&w| (w.count_ones(), w));
    let mut minimal: Vec<u64> = Vec::new();
    for w in vectors {
        if !minimal.iter().any(|&c| c & !w == 0) {
            minimal.push(w);
        }
    }
    minimal
}

impl GF2Matrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if cols > MAX_COLS {
            return Err(Error::TooManyColumns(cols));
        }
        Ok(Self {
            rows,
            cols,
            data: vec![0; rows],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for (i, row) in m.data.iter_mut().enumerate() {
            *row = 1 << i;
        }
        Ok(m)
    }

    /// Build from packed row words. Bits at or beyond `cols` must be clear.
    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols > MAX_COLS {
            return Err(Error::TooManyColumns(cols));
        }
        let mask = col_mask(cols);
        if let Some(r) = rows.iter().position(|&w| w & !mask != 0) {
            return Err(Error::IndexOutOfRange(format!("row {r} has bits beyond column {cols}")));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Build from explicit 0/1 entries; every row must have `cols` entries.
    pub fn from_entries(cols: usize, entries: &[Vec<u8>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(entries.len());
        for (r, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::IndexOutOfRange(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            let mut word = 0u64;
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => word |= 1 << c,
                    other => {
                        return Err(Error::IndexOutOfRange(format!(
                            "entry ({r},{c}) is {other}, not 0 or 1"
                        )))
                    }
                }
            }
            rows.push(word);
        }
        Self::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Packed row words.
    pub fn row_words(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        self.data[row] >> col & 1 == 1
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        span_rank(self.data.iter().copied())
    }

    pub fn row_reduce(&self) -> RowEchelon {
        let mut data = self.data.clone();
        let pivots = reduce_in_place(&mut data, col_mask(self.cols));
        RowEchelon {
            matrix: Self {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    /// A nonempty sub-collection of `subset` whose columns sum to zero, or
    /// `None` when the selected columns are linearly independent.
    ///
    /// The returned indices are sorted ascending.
    pub fn column_dependency(&self, subset: &[usize]) -> Result<Option<Vec<usize>>> {
        if subset.len() > 64 {
            return Err(Error::TooManyColumns(subset.len()));
        }
        if let Some(&c) = subset.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange(format!("column {c}")));
        }
        // Columns as multiword bit vectors over the rows, each tagged with the
        // combination of subset positions it currently represents.
        let words = self.rows.div_ceil(64).max(1);
        // kept sorted by leading bit, descending
        let mut basis: Vec<(usize, Vec<u64>, u64)> = Vec::new();
        for (pos, &c) in subset.iter().enumerate() {
            let mut v = vec![0u64; words];
            for (r, &row) in self.data.iter().enumerate() {
                if row >> c & 1 == 1 {
                    v[r / 64] |= 1 << (r % 64);
                }
            }
            let mut combo = 1u64 << pos;
            for (lead, b, bc) in &basis {
                if v[lead / 64] >> (lead % 64) & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                    combo ^= bc;
                }
            }
            match leading_bit(&v) {
                None => {
                    let mut out: Vec<usize> = bits(combo).map(|p| subset[p]).collect();
                    out.sort_unstable();
                    return Ok(Some(out));
                }
                Some(lead) => {
                    let at = basis.partition_point(|(l, _, _)| *l > lead);
                    basis.insert(at, (lead, v, combo));
                }
            }
        }
        Ok(None)
    }

    /// Column `c` as a word over the rows (requires at most 64 rows).
    pub(crate) fn column_word(&self, c: usize) -> u64 {
        debug_assert!(self.rows <= 64);
        self.data
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &row)| acc | ((row >> c & 1) << r))
    }

    /// Keep only the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange(format!("column {c}")));
        }
        let data = self
            .data
            .iter()
            .map(|&row| {
                cols.iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &c)| acc | ((row >> c & 1) << i))
            })
            .collect();
        Self::from_rows(cols.len(), data)
    }

    /// A copy with one extra row appended.
    pub fn with_row(&self, row: u64) -> Result<Self> {
        let mut data = self.data.clone();
        data.push(row);
        Self::from_rows(self.cols, data)
    }

    /// A copy with one extra column appended, given as a word over the rows.
    pub fn with_column(&self, column: u64) -> Result<Self> {
        if self.cols + 1 > MAX_COLS {
            return Err(Error::TooManyColumns(self.cols + 1));
        }
        let c = self.cols;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(r, &row)| {
                let bit = if r < 64 { column >> r & 1 } else { 0 };
                row | bit << c
            })
            .collect();
        Self::from_rows(c + 1, data)
    }

    /// Nonzero rows of the reduced echelon form: a full-row-rank matrix with
    /// the same row space.
    pub fn row_basis(&self) -> Self {
        let mut data = self.data.clone();
        let pivots = reduce_in_place(&mut data, col_mask(self.cols));
        data.truncate(pivots.len());
        Self {
            rows: data.len(),
            cols: self.cols,
            data,
        }
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

impl std::fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GF2Matrix {}x{}", self.rows, self.cols)?;
        for &row in &self.data {
            let line: String = (0..self.cols)
                .map(|c| if row >> c & 1 == 1 { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
