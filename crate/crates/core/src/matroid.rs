//! Binary matroids represented by a labelled GF(2) matrix.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, bits, col_mask, GF2Matrix};

/// Largest ground set accepted by exhaustive circuit enumeration.
pub const CIRCUIT_SCAN_LIMIT: usize = 20;

/// A binary matroid: element labels plus a representing matrix whose
/// columns correspond positionally to the labels.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatroid {
    labels: Vec<String>,
    rep: GF2Matrix,
}

/// The set of circuits of a matroid, each stored as a bitmask over a label
/// universe.
#[derive(Clone)]
pub struct CircuitFamily {
    universe: Vec<String>,
    circuits: Vec<u64>,
}

impl BinaryMatroid {
    pub fn new(labels: Vec<String>, rep: GF2Matrix) -> Result<Self> {
        if labels.len() != rep.cols() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                cols: rep.cols(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("invalid element label {l:?}"),
                });
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels, rep })
    }

    /// Matroid whose element `labels[i]` is represented by the column word
    /// `columns[i]` over `rows` rows.
    pub fn from_columns(labels: Vec<String>, rows: usize, columns: &[u64]) -> Result<Self> {
        if rows > 64 {
            return Err(Error::IndexOutOfRange(format!("{rows} rows given as column words")));
        }
        let mut data = vec![0u64; rows];
        for (c, &col) in columns.iter().enumerate() {
            for r in bits(col) {
                if r >= rows {
                    return Err(Error::IndexOutOfRange(format!("column {c} row {r}")));
                }
                data[r] |= 1 << c;
            }
        }
        Self::new(labels, GF2Matrix::from_rows(columns.len(), data)?)
    }

    pub fn empty() -> Self {
        Self {
            labels: Vec::new(),
            rep: GF2Matrix::zeros(0, 0).expect("empty matrix"),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rep(&self) -> &GF2Matrix {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rep.rank()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    /// Bitmask of the given labels.
    pub fn mask_of<I, S>(&self, labels: I) -> Result<u64>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels
            .into_iter()
            .try_fold(0u64, |m, l| Ok(m | 1 << self.index_of(l.as_ref())?))
    }

    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }

    pub(crate) fn full_mask(&self) -> u64 {
        col_mask(self.len())
    }

    /// Full-row-rank representation: the nonzero rows of the reduced form.
    pub(crate) fn reduced_rows(&self) -> Vec<u64> {
        self.rep.row_basis().row_words().to_vec()
    }

    /// Columns of the reduced representation as words over its rows.
    pub(crate) fn column_words(&self) -> Vec<u64> {
        let basis = self.rep.row_basis();
        (0..self.len()).map(|c| basis.column_word(c)).collect()
    }

    /// Circuits as bitmasks, read off the cycle space (the null space of the
    /// representation). Sorted by (size, mask).
    pub(crate) fn circuit_masks(&self) -> Vec<u64> {
        let mut rows = self.reduced_rows();
        let basis = gf2::kernel_basis(&mut rows, self.full_mask());
        gf2::minimal_supports(&basis)
    }

    /// Circuits by ascending-cardinality subset scan: a subset is a circuit
    /// when its columns are dependent and it contains no smaller circuit.
    pub fn circuits(&self) -> Result<CircuitFamily> {
        if self.len() > CIRCUIT_SCAN_LIMIT {
            return Err(Error::GroundSetTooLarge {
                size: self.len(),
                limit: CIRCUIT_SCAN_LIMIT,
            });
        }
        let reduced = self.rep.row_basis();
        let n = self.len();
        let max_size = (reduced.rows() + 1).min(n);
        let mut found: Vec<u64> = Vec::new();
        for k in 1..=max_size {
            let mut fresh = Vec::new();
            for subset in KSubsets::new(n, k) {
                if found.iter().any(|&c| c & !subset == 0) {
                    continue;
                }
                let cols: Vec<usize> = bits(subset).collect();
                if reduced.column_dependency(&cols)?.is_some() {
                    fresh.push(subset);
                }
            }
            found.extend(fresh);
        }
        Ok(CircuitFamily::new(self.labels.clone(), found))
    }

    pub fn cocircuits(&self) -> Result<CircuitFamily> {
        self.dual().circuits()
    }

    /// Remove the given elements.
    pub fn delete<I, S>(&self, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let drop = self.mask_of(labels)?;
        let keep: Vec<usize> = bits(self.full_mask() & !drop).collect();
        self.restrict_to(&keep)
    }

    fn restrict_to(&self, keep: &[usize]) -> Result<Self> {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        Self::new(labels, self.rep.select_columns(keep)?)
    }

    /// Contract the given elements: each non-loop is pivoted to a unit column
    /// and its column and pivot row are removed; loops are deleted.
    pub fn contract<I, S>(&self, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let drop = self.mask_of(labels)?;
        let mut rows = self.rep.row_words().to_vec();
        for e in bits(drop) {
            contract_rows(&mut rows, e);
        }
        let keep: Vec<usize> = bits(self.full_mask() & !drop).collect();
        let m = GF2Matrix::from_rows(self.len(), rows)?;
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        Self::new(labels, m.select_columns(&keep)?)
    }

    /// The binary dual, labels preserved. Its representation is a basis of
    /// the cycle space of this matroid, i.e. `[D^T | I]` up to column order
    /// when this matroid is in standard form `[I | D]`.
    pub fn dual(&self) -> Self {
        let mut rows = self.reduced_rows();
        let basis = gf2::kernel_basis(&mut rows, self.full_mask());
        Self::new(
            self.labels.clone(),
            GF2Matrix::from_rows(self.len(), basis).expect("kernel fits the column cap"),
        )
        .expect("labels already validated")
    }

    pub fn is_loop(&self, label: &str) -> Result<bool> {
        let i = self.index_of(label)?;
        Ok(self.rep.row_words().iter().all(|&r| r >> i & 1 == 0))
    }

    pub fn is_coloop(&self, label: &str) -> Result<bool> {
        let i = self.index_of(label)?;
        Ok(self.coloop_mask() >> i & 1 == 1)
    }

    pub(crate) fn loop_mask(&self) -> u64 {
        let support = self.rep.row_words().iter().fold(0, |a, &r| a | r);
        self.full_mask() & !support
    }

    /// Elements lying in no circuit: the complement of the support of the
    /// cycle space.
    pub(crate) fn coloop_mask(&self) -> u64 {
        let mut rows = self.reduced_rows();
        let kernel = gf2::kernel_basis(&mut rows, self.full_mask());
        self.full_mask() & !kernel.iter().fold(0, |a, &v| a | v)
    }

    pub fn loops(&self) -> Vec<String> {
        self.labels_of(self.loop_mask())
    }

    pub fn coloops(&self) -> Vec<String> {
        self.labels_of(self.coloop_mask())
    }

    /// Pairs of distinct elements with equal nonzero columns, in index order.
    pub fn parallel_pairs(&self) -> Vec<(String, String)> {
        let cols = self.column_words();
        let mut out = Vec::new();
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                if cols[i] != 0 && cols[i] == cols[j] {
                    out.push((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        out
    }

    /// Pairs forming a two-element cocircuit (parallel in the dual).
    pub fn series_pairs(&self) -> Vec<(String, String)> {
        self.dual().parallel_pairs()
    }

    /// Labelled equality: same ground set and the same circuits.
    pub fn same_matroid(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let a: BTreeSet<&String> = self.labels.iter().collect();
        let b: BTreeSet<&String> = other.labels.iter().collect();
        a == b && self.circuit_family_fast() == other.circuit_family_fast()
    }

    pub(crate) fn circuit_family_fast(&self) -> CircuitFamily {
        CircuitFamily::new(self.labels.clone(), self.circuit_masks())
    }

    /// Serialize in the `.bm` text format.
    pub fn to_bm_string(&self) -> String {
        let mut s = format!("{} {}\n{}\n", self.rep.rows(), self.len(), self.labels.join(" "));
        for &row in self.rep.row_words() {
            s.extend((0..self.len()).map(|c| if row >> c & 1 == 1 { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    /// Parse the `.bm` text format: a `rows cols` header line, a line of
    /// whitespace-separated labels, then `rows` lines of `cols` 0/1 characters.
    pub fn parse_bm(text: &str) -> Result<Self> {
        let err = |line: usize, column: usize, message: String| Error::Parse { line, column, message };
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| err(1, 1, "missing `rows cols` header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(1, 1, format!("expected `rows cols`, found {header:?}")));
        }
        let parse_count = |s: &str, col: usize| {
            s.parse::<usize>()
                .map_err(|_| err(1, col, format!("{s:?} is not a count")))
        };
        let rows = parse_count(fields[0], 1)?;
        let col_field = header.find(fields[1]).unwrap_or(0) + 1;
        let cols = parse_count(fields[1], col_field)?;
        if cols > gf2::MAX_COLS {
            return Err(Error::TooManyColumns(cols));
        }
        let label_line = lines.next();
        let labels: Vec<String> = match label_line {
            Some(l) => l.split_whitespace().map(str::to_string).collect(),
            None if cols == 0 => Vec::new(),
            None => return Err(err(2, 1, "missing label line".into())),
        };
        if labels.len() != cols {
            return Err(err(2, 1, format!("expected {cols} labels, found {}", labels.len())));
        }
        let mut words = Vec::with_capacity(rows);
        for r in 0..rows {
            let line_no = r + 3;
            let line = lines
                .next()
                .ok_or_else(|| err(line_no, 1, format!("missing matrix row {}", r + 1)))?;
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.chars().count() != cols {
                return Err(err(
                    line_no,
                    line.chars().count().min(cols) + 1,
                    format!("expected {cols} entries, found {}", line.chars().count()),
                ));
            }
            let mut w = 0u64;
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => w |= 1 << c,
                    other => return Err(err(line_no, c + 1, format!("unexpected character {other:?}"))),
                }
            }
            words.push(w);
        }
        if let Some((extra, line)) = lines.enumerate().find(|(_, l)| !l.trim().is_empty()) {
            return Err(err(
                rows + 3 + extra,
                1,
                format!("unexpected trailing content {line:?}"),
            ));
        }
        let rep = GF2Matrix::from_rows(cols, words)?;
        Self::new(labels, rep).map_err(|e| match e {
            Error::DuplicateLabel(l) => err(2, 1, format!("duplicate label {l:?}")),
            other => other,
        })
    }
}

/// Pivot out element `e` from `rows`: xor a row containing `e` into every
/// other such row, then clear that row. Zero rows are left in place.
pub(crate) fn contract_rows(rows: &mut [u64], e: usize) {
    let bit = 1u64 << e;
    if let Some(p) = rows.iter().position(|&r| r & bit != 0) {
        let pivot = rows[p];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != p && *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rows[p] = 0;
    }
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatroid[{}] {:?}", self.labels.join(" "), self.rep)
    }
}

impl CircuitFamily {
    pub fn new(universe: Vec<String>, mut circuits: Vec<u64>) -> Self {
        circuits.sort_unstable_by_key(|&c| (c.count_ones(), c));
        circuits.dedup();
        Self { universe, circuits }
    }

    /// Build from explicit label sets over `universe`.
    pub fn from_label_sets<I, S>(universe: Vec<String>, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let mut masks = Vec::new();
        for set in sets {
            let mut m = 0u64;
            for l in set {
                let i = universe
                    .iter()
                    .position(|u| u == l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        Ok(Self::new(universe, masks))
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn masks(&self) -> &[u64] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn label_set(&self, mask: u64) -> BTreeSet<String> {
        bits(mask).map(|i| self.universe[i].clone()).collect()
    }

    pub fn label_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.circuits.iter().map(|&c| self.label_set(c)).collect()
    }

    /// Number of circuits of each size.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.circuits {
            *out.entry(c.count_ones() as usize).or_insert(0) += 1;
        }
        out
    }

    /// Circuits containing no element outside `allowed`.
    pub fn avoiding(&self, forbidden: u64) -> impl Iterator<Item = u64> + '_ {
        self.circuits.iter().copied().filter(move |c| c & forbidden == 0)
    }

    pub fn is_antichain(&self) -> bool {
        self.circuits
            .iter()
            .enumerate()
            .all(|(i, &a)| self.circuits.iter().enumerate().all(|(j, &b)| i == j || a & b != a))
    }

    pub fn has_empty(&self) -> bool {
        self.circuits.contains(&0)
    }

    /// Binary circuit axiom: the symmetric difference of two distinct
    /// circuits contains a circuit.
    pub fn satisfies_symmetric_difference(&self) -> bool {
        self.circuits.iter().enumerate().all(|(i, &a)| {
            self.circuits[i + 1..].iter().all(|&b| {
                let d = a ^ b;
                self.circuits.iter().any(|&c| c & !d == 0)
            })
        })
    }
}

impl PartialEq for CircuitFamily {
    fn eq(&self, other: &Self) -> bool {
        if self.universe == other.universe {
            return self.circuits == other.circuits;
        }
        self.label_sets() == other.label_sets()
    }
}

impl Eq for CircuitFamily {}

impl fmt::Debug for CircuitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(
                self.circuits
                    .iter()
                    .map(|&c| bits(c).map(|i| self.universe[i].as_str()).collect::<Vec<_>>().join(",")),
            )
            .finish()
    }
}

/// All `k`-element subsets of `0..n` as bitmasks, in increasing numeric
/// order (Gosper's hack).
pub(crate) struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        assert!(n < 64, "subset enumeration needs n < 64");
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some((1u64 << k) - 1)
        };
        Self { next, limit: 1u64 << n }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < self.limit).then_some(n)
        };
        Some(cur)
    }
}

/// Subsets of `pool` with exactly `k` members, in increasing order of the
/// positions they select within `pool`.
pub(crate) fn subsets_of(pool: u64, k: usize) -> impl Iterator<Item = u64> {
    let members: Vec<usize> = bits(pool).collect();
    KSubsets::new(members.len(), k).map(move |sel| bits(sel).fold(0u64, |m, p| m | 1 << members[p]))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Cycle matroid from an edge list, independent of the graph module.
    pub(crate) fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> BinaryMatroid {
        let cols: Vec<u64> = edges
            .iter()
            .map(|&(u, v)| if u == v { 0 } else { 1 << u | 1 << v })
            .collect();
        let names = (0..edges.len()).map(|i| format!("e{i}")).collect();
        BinaryMatroid::from_columns(names, vertices, &cols).unwrap()
    }

    pub(crate) fn k4() -> BinaryMatroid {
        from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    pub(crate) fn fano() -> BinaryMatroid {
        // columns are the seven nonzero vectors of GF(2)^3
        BinaryMatroid::from_columns(labels(&["1", "2", "3", "4", "5", "6", "7"]), 3, &[1, 2, 3, 4, 5, 6, 7]).unwrap()
    }

    /// Brute force over every subset: dependent sets whose proper subsets are
    /// all independent.
    fn brute_circuits(m: &BinaryMatroid) -> BTreeSet<u64> {
        let cols = m.column_words();
        let independent = |s: u64| gf2::span_rank(bits(s).map(|i| cols[i])) == s.count_ones() as usize;
        (1u64..1 << m.len())
            .filter(|&s| !independent(s) && bits(s).all(|i| independent(s & !(1 << i))))
            .collect()
    }

    #[test]
    fn triangle_has_one_circuit() {
        let t = from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let c = t.circuits().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.masks(), &[0b111]);
        let co = t.cocircuits().unwrap();
        assert_eq!(co.census(), BTreeMap::from([(2, 3)]));
    }

    #[test]
    fn k4_and_fano_censuses() {
        let k4 = k4();
        assert_eq!(k4.circuits().unwrap().census(), BTreeMap::from([(3, 4), (4, 3)]));
        assert_eq!(k4.cocircuits().unwrap().census(), BTreeMap::from([(3, 4), (4, 3)]));
        assert_eq!(fano().circuits().unwrap().census(), BTreeMap::from([(3, 7), (4, 7)]));
        // brute-force oracle agrees
        assert_eq!(brute_circuits(&k4).into_iter().collect::<Vec<_>>().len(), 7);
        assert_eq!(brute_circuits(&fano()).len(), 14);
    }

    #[test]
    fn k4_cocircuits_are_stars_and_bonds() {
        let k4 = k4();
        let co = k4.cocircuits().unwrap();
        // vertex 0 star: e0 e1 e2
        assert!(co.masks().contains(&0b000111));
        // bond separating {0,1} from {2,3}: e1 e2 e3 e4
        assert!(co.masks().contains(&0b011110));
        assert_eq!(co, k4.dual().circuits().unwrap());
    }

    #[test]
    fn single_coloop() {
        let m = BinaryMatroid::from_columns(labels(&["e"]), 1, &[1]).unwrap();
        assert!(m.circuits().unwrap().is_empty());
        assert_eq!(m.cocircuits().unwrap().masks(), &[1]);
        assert!(m.is_coloop("e").unwrap());
        assert!(!m.is_loop("e").unwrap());
    }

    #[test]
    fn delete_cases() {
        let k4 = k4();
        assert!(k4.delete(Vec::<&str>::new()).unwrap().same_matroid(&k4));
        let d = k4.delete(["e0"]).unwrap();
        assert_eq!((d.len(), d.rank()), (5, 3));
        let f = fano().delete(["7"]).unwrap();
        assert_eq!((f.len(), f.rank()), (6, 3));
        assert_eq!(f.circuits().unwrap().census().get(&3), Some(&4));
        assert!(matches!(k4.delete(["zz"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn contract_edge_of_k4_matches_graph_contraction() {
        let k4 = k4();
        assert!(k4.contract(Vec::<&str>::new()).unwrap().same_matroid(&k4));
        // contract e0 = 01: merge vertices 0 and 1 into 0
        let c = k4.contract(["e0"]).unwrap();
        let merged = from_edges(4, &[(0, 2), (0, 3), (0, 2), (0, 3), (2, 3)]);
        let renamed = BinaryMatroid::new(labels(&["e1", "e2", "e3", "e4", "e5"]), merged.rep().clone()).unwrap();
        assert!(c.same_matroid(&renamed));
        assert_eq!(c.parallel_pairs().len(), 2);
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn contracting_a_loop_deletes_it() {
        let m = from_edges(2, &[(0, 1), (1, 1)]);
        assert!(m.is_loop("e1").unwrap());
        let c = m.contract(["e1"]).unwrap();
        assert!(c.same_matroid(&m.delete(["e1"]).unwrap()));
    }

    #[test]
    fn dual_basics() {
        let f = fano();
        let fd = f.dual();
        assert_eq!(fd.rank(), 4);
        assert_eq!(fd.circuits().unwrap().census(), BTreeMap::from([(4, 7)]));
        assert!(fd.dual().same_matroid(&f));
        assert_eq!(k4().dual().circuits().unwrap(), k4().cocircuits().unwrap());
    }

    #[test]
    fn element_queries() {
        let path = from_edges(3, &[(0, 1), (1, 2)]);
        assert!(path.series_pairs().is_empty());
        assert_eq!(path.coloops().len(), 2);
        let square = from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(square.series_pairs().len(), 6);
        assert!(square.coloops().is_empty());
        let k4 = k4();
        assert!(k4.loops().is_empty() && k4.coloops().is_empty());
        assert!(k4.parallel_pairs().is_empty() && k4.series_pairs().is_empty());
        let zero = BinaryMatroid::from_columns(labels(&["z", "w"]), 1, &[0, 1]).unwrap();
        assert!(zero.is_loop("z").unwrap());
        assert!(zero.is_coloop("w").unwrap());
    }

    #[test]
    fn bm_round_trip_and_errors() {
        let f = fano();
        let text = f.to_bm_string();
        assert_eq!(text.lines().next(), Some("3 7"));
        let back = BinaryMatroid::parse_bm(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(BinaryMatroid::parse_bm(text.trim_end()).unwrap(), f);

        let empty = BinaryMatroid::parse_bm("0 0\n").unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.rank(), 0);

        let bad = BinaryMatroid::parse_bm("2 2\na b\n01\n0x\n").unwrap_err();
        assert_eq!(
            bad,
            Error::Parse {
                line: 4,
                column: 2,
                message: "unexpected character 'x'".into()
            }
        );
        assert!(matches!(
            BinaryMatroid::parse_bm("1 2\na a\n01\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            BinaryMatroid::parse_bm("1 2\na b\n011\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            BinaryMatroid::parse_bm("x 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn redundant_rows_do_not_change_the_matroid() {
        let k4 = k4();
        let mut rows = k4.rep().row_words().to_vec();
        rows.push(rows[0] ^ rows[1]);
        let padded = BinaryMatroid::new(k4.labels().to_vec(), GF2Matrix::from_rows(6, rows).unwrap()).unwrap();
        assert_eq!(padded.circuits().unwrap(), k4.circuits().unwrap());
    }

    #[test]
    fn ksubsets_counts() {
        assert_eq!(KSubsets::new(5, 2).count(), 10);
        assert_eq!(KSubsets::new(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(KSubsets::new(3, 4).count(), 0);
        assert_eq!(KSubsets::new(4, 4).collect::<Vec<_>>(), vec![0b1111]);
        assert_eq!(
            subsets_of(0b1010_0100, 2).collect::<Vec<_>>(),
            vec![0b0010_0100, 0b1000_0100, 0b1010_0000]
        );
    }

    pub(crate) fn arb_matroid(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatroid> {
        (1usize..=max_rows, 1usize..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<u64>(), r).prop_map(move |rows| {
                let mask = col_mask(c);
                let names = (0..c).map(|i| format!("m{i}")).collect();
                BinaryMatroid::new(
                    names,
                    GF2Matrix::from_rows(c, rows.into_iter().map(|w| w & mask).collect()).unwrap(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn scan_and_cycle_space_agree(m in arb_matroid(6, 10)) {
            let scan = m.circuits().unwrap();
            prop_assert_eq!(scan.masks(), &m.circuit_masks()[..]);
            prop_assert_eq!(scan.masks().iter().copied().collect::<BTreeSet<_>>(), brute_circuits(&m));
            prop_assert!(scan.is_antichain());
            prop_assert!(!scan.has_empty());
            prop_assert!(scan.satisfies_symmetric_difference());
        }

        #[test]
        fn rank_plus_corank(m in arb_matroid(7, 12)) {
            prop_assert_eq!(m.rank() + m.dual().rank(), m.len());
            prop_assert!(m.dual().dual().same_matroid(&m));
        }

        #[test]
        fn deletion_keeps_avoiding_circuits(m in arb_matroid(6, 10), pick in any::<u16>()) {
            let drop = pick as u64 & m.full_mask();
            let d = m.delete(m.labels_of(drop)).unwrap();
            let expected: BTreeSet<BTreeSet<String>> = m
                .circuits()
                .unwrap()
                .avoiding(drop)
                .map(|c| m.circuits().unwrap().label_set(c))
                .collect();
            prop_assert_eq!(d.circuits().unwrap().label_sets(), expected);
        }

        #[test]
        fn delete_contract_commute(m in arb_matroid(6, 9), i in 0usize..9, j in 0usize..9) {
            let n = m.len();
            prop_assume!(n >= 2);
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let (x, y) = (m.labels()[i].clone(), m.labels()[j].clone());
            let a = m.contract([&y]).unwrap().delete([&x]).unwrap();
            let b = m.delete([&x]).unwrap().contract([&y]).unwrap();
            prop_assert!(a.same_matroid(&b));
            // contraction drops rank by the rank of the contracted set
            let r_y = if m.is_loop(&y).unwrap() { 0 } else { 1 };
            prop_assert_eq!(m.contract([&y]).unwrap().rank(), m.rank() - r_y);
        }

        #[test]
        fn cocircuits_are_dual_circuits(m in arb_matroid(5, 9)) {
            let co = m.cocircuits().unwrap();
            prop_assert!(co.satisfies_symmetric_difference());
            let coloops = m.coloop_mask();
            for c in gf2::bits(coloops) {
                prop_assert!(co.masks().contains(&(1 << c)));
            }
        }
    }
}
