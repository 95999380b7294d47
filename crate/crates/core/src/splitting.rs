//! Splitting and element splitting of binary matroids.
//!
//! For a set `X` of elements, the element-splitting matroid `M'_X` is
//! represented by the matrix of `M` with one extra row carrying 1s exactly on
//! the columns of `X`, plus one extra column `a` that is the unit vector of
//! that row. Dropping `a` again gives the splitting matroid `M_X`; the common
//! case is `X = {x, y}`.

use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, CircuitFamily};

/// The splitting set and the label of the element added by element
/// splitting. With no label the first free name of `a`, `a1`, `a2`, ... is
/// used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub set: Vec<String>,
    pub new_label: Option<String>,
}

impl SplitSpec {
    pub fn pair(x: &str, y: &str) -> Self {
        Self {
            set: vec![x.to_string(), y.to_string()],
            new_label: None,
        }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.new_label = Some(label.to_string());
        self
    }

    pub fn apply(&self, m: &BinaryMatroid) -> Result<BinaryMatroid> {
        let label = match &self.new_label {
            Some(l) => l.clone(),
            None => fresh_label(m),
        };
        element_split(m, &self.set, &label)
    }
}

/// First of `a`, `a1`, `a2`, ... not already used in `m`.
pub fn fresh_label(m: &BinaryMatroid) -> String {
    std::iter::once("a".to_string())
        .chain((1..).map(|i| format!("a{i}")))
        .find(|l| !m.contains(l))
        .expect("unbounded label supply")
}

/// Mask of `set` in `m`, rejecting unknown or repeated labels.
fn set_mask<S: AsRef<str>>(m: &BinaryMatroid, set: &[S]) -> Result<u64> {
    let mut mask = 0u64;
    for l in set {
        let bit = 1u64 << m.index_of(l.as_ref())?;
        if mask & bit != 0 {
            return Err(Error::DuplicateElements(l.as_ref().to_string()));
        }
        mask |= bit;
    }
    Ok(mask)
}

/// The splitting matroid `M_{x,y}`: same ground set, one extra row with 1s
/// at `x` and `y`.
pub fn split(m: &BinaryMatroid, x: &str, y: &str) -> Result<BinaryMatroid> {
    split_set(m, &[x, y])
}

/// The splitting matroid `M_X` for an arbitrary nonempty set.
pub fn split_set<S: AsRef<str>>(m: &BinaryMatroid, set: &[S]) -> Result<BinaryMatroid> {
    let mask = set_mask(m, set)?;
    if mask == 0 {
        return Err(Error::InvalidGraph("splitting set is empty".into()));
    }
    BinaryMatroid::new(m.labels().to_vec(), m.rep().with_row(mask)?)
}

/// The element-splitting matroid `M'_X` with new element `a`.
pub fn element_split<S: AsRef<str>>(m: &BinaryMatroid, set: &[S], a: &str) -> Result<BinaryMatroid> {
    if m.contains(a) {
        return Err(Error::LabelCollision(a.to_string()));
    }
    let split = split_set(m, set)?;
    let new_row = split.rep().rows() - 1;
    if new_row >= 64 {
        return Err(Error::IndexOutOfRange(format!("{} rows", new_row + 1)));
    }
    let rep = split.rep().with_column(1u64 << new_row)?;
    let mut labels = m.labels().to_vec();
    labels.push(a.to_string());
    BinaryMatroid::new(labels, rep)
}

/// Which pairs of odd circuits contribute unions to the oracle's middle
/// family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnionRule {
    /// Unions of two disjoint odd circuits. Matches the matrix construction.
    #[default]
    Disjoint,
    /// Unions of two odd circuits that share at least one element.
    Intersecting,
}

/// Knobs for [`element_split_circuits_oracle_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub union_rule: UnionRule,
    /// Drop unions that contain a circuit meeting the splitting set evenly.
    pub exclude_even_members: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            union_rule: UnionRule::Disjoint,
            exclude_even_members: true,
        }
    }
}

/// Circuits of `M'_X` computed from the circuits of `M` alone:
///
/// * circuits meeting `X` in an even number of elements,
/// * minimal unions of two odd-meeting circuits that contain no even-meeting
///   circuit,
/// * `C ∪ {a}` for every odd-meeting circuit `C`.
///
/// The result lives on the universe of `circuits` extended by `a`.
pub fn element_split_circuits_oracle<S: AsRef<str>>(
    circuits: &CircuitFamily,
    set: &[S],
    a: &str,
) -> Result<CircuitFamily> {
    element_split_circuits_oracle_with(circuits, set, a, OracleOptions::default())
}

pub fn element_split_circuits_oracle_with<S: AsRef<str>>(
    circuits: &CircuitFamily,
    set: &[S],
    a: &str,
    options: OracleOptions,
) -> Result<CircuitFamily> {
    let universe = circuits.universe();
    if universe.iter().any(|u| u == a) {
        return Err(Error::LabelCollision(a.to_string()));
    }
    if universe.len() >= 64 {
        return Err(Error::TooManyColumns(universe.len() + 1));
    }
    let mut x_mask = 0u64;
    for l in set {
        let i = universe
            .iter()
            .position(|u| u == l.as_ref())
            .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
        x_mask |= 1 << i;
    }
    let a_bit = 1u64 << universe.len();

    let (even, odd): (Vec<u64>, Vec<u64>) = circuits
        .masks()
        .iter()
        .partition(|&&c| (c & x_mask).count_ones() & 1 == 0);

    let mut unions = Vec::new();
    for (i, &c) in odd.iter().enumerate() {
        for &d in &odd[i + 1..] {
            let keep = match options.union_rule {
                UnionRule::Disjoint => c & d == 0,
                UnionRule::Intersecting => c & d != 0,
            };
            if !keep {
                continue;
            }
            let u = c | d;
            if options.exclude_even_members && even.iter().any(|&e| e & !u == 0) {
                continue;
            }
            unions.push(u);
        }
    }
    unions.sort_unstable_by_key(|&u| (u.count_ones(), u));
    unions.dedup();
    let mut minimal: Vec<u64> = Vec::new();
    for u in unions {
        if !minimal.iter().any(|&v| v & !u == 0) {
            minimal.push(u);
        }
    }

    let mut out = even;
    out.extend(minimal);
    out.extend(odd.iter().map(|&c| c | a_bit));
    let mut new_universe = universe.to_vec();
    new_universe.push(a.to_string());
    Ok(CircuitFamily::new(new_universe, out))
}

/// Cocircuit behaviour of a pair under element splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocircuitFacts {
    /// `{x, y}` is a cocircuit of `M`.
    pub pair_is_cocircuit: bool,
    /// Some cocircuit of `M` lies inside `{x, y}`.
    pub pair_contains_cocircuit: bool,
    /// `{a}` is a cocircuit of `M'_{x,y}`.
    pub new_is_coloop: bool,
    /// `{x, y}` is a cocircuit of `M'_{x,y}`.
    pub pair_is_cocircuit_after: bool,
    /// `{x, y, a}` is a cocircuit of `M'_{x,y}`.
    pub triple_is_cocircuit_after: bool,
}

impl CocircuitFacts {
    /// Whether the expected implication holds: a cocircuit pair makes `{a}`
    /// and `{x, y}` cocircuits afterwards; a pair containing no cocircuit
    /// makes `{x, y, a}` a cocircuit afterwards.
    pub fn consistent(&self) -> bool {
        if self.pair_is_cocircuit {
            self.new_is_coloop && self.pair_is_cocircuit_after
        } else if !self.pair_contains_cocircuit {
            self.triple_is_cocircuit_after
        } else {
            true
        }
    }
}

pub fn splitting_cocircuit_facts(m: &BinaryMatroid, x: &str, y: &str) -> Result<CocircuitFacts> {
    let pair = set_mask(m, &[x, y])?;
    let a = fresh_label(m);
    let split = element_split(m, &[x, y], &a)?;
    let before = m.cocircuits()?;
    let after = split.cocircuits()?;
    let a_bit = 1u64 << m.len();
    Ok(CocircuitFacts {
        pair_is_cocircuit: before.masks().contains(&pair),
        pair_contains_cocircuit: before.masks().iter().any(|&c| c & !pair == 0),
        new_is_coloop: after.masks().contains(&a_bit),
        pair_is_cocircuit_after: after.masks().contains(&pair),
        triple_is_cocircuit_after: after.masks().contains(&(pair | a_bit)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::{fano, from_edges, k4};
    use proptest::prelude::*;

    #[test]
    fn element_split_matrix_shape() {
        let k4 = k4();
        let s = element_split(&k4, &["e0", "e5"], "a").unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(s.rep().rows(), 5);
        assert_eq!(*s.rep().row_words().last().unwrap(), 1 | 1 << 5 | 1 << 6);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.labels().last().map(String::as_str), Some("a"));
    }

    #[test]
    fn split_is_element_split_without_new_element() {
        let k4 = k4();
        let s = split(&k4, "e0", "e5").unwrap();
        let es = element_split(&k4, &["e0", "e5"], "a").unwrap();
        assert!(es.delete(["a"]).unwrap().same_matroid(&s));
        assert!(es.contract(["a"]).unwrap().same_matroid(&k4));
    }

    #[test]
    fn split_errors() {
        let k4 = k4();
        assert_eq!(split(&k4, "e0", "e0"), Err(Error::DuplicateElements("e0".into())));
        assert_eq!(split(&k4, "e0", "q"), Err(Error::UnknownLabel("q".into())));
        assert_eq!(
            element_split(&k4, &["e0", "e1"], "e2"),
            Err(Error::LabelCollision("e2".into()))
        );
    }

    #[test]
    fn split_rank_depends_on_cocycles() {
        // both path edges are coloops, so {e0, e1} is a union of cocircuits
        // and the new row is already in the row space
        let path = from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(split(&path, "e0", "e1").unwrap().rank(), path.rank());
        // a bond of the triangle
        let tri = from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(split(&tri, "e0", "e1").unwrap().rank(), tri.rank());
        // nonadjacent edges of K4 contain no cocircuit
        assert_eq!(split(&k4(), "e0", "e5").unwrap().rank(), 4);
    }

    #[test]
    fn fresh_labels_skip_collisions() {
        let k4 = k4();
        assert_eq!(fresh_label(&k4), "a");
        let once = SplitSpec::pair("e0", "e1").apply(&k4).unwrap();
        let twice = SplitSpec::pair("e0", "e1").apply(&once).unwrap();
        assert_eq!(twice.labels().last().map(String::as_str), Some("a1"));
        let named = SplitSpec::pair("e0", "e1").with_label("z").apply(&k4).unwrap();
        assert!(named.contains("z"));
    }

    #[test]
    fn oracle_keeps_even_family_unchanged() {
        // a 4-cycle meets {e0, e1} in two elements
        let sq = from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = sq.circuits().unwrap();
        let o = element_split_circuits_oracle(&c, &["e0", "e1"], "a").unwrap();
        assert_eq!(o.label_sets(), c.label_sets());
    }

    #[test]
    fn oracle_keeps_triangle_meeting_pair_twice() {
        let k4 = k4();
        // triangle 0-1-2 is e0, e1, e3
        let c = k4.circuits().unwrap();
        let o = element_split_circuits_oracle(&c, &["e0", "e1"], "a").unwrap();
        let tri = c.label_set(0b1011);
        assert!(o.label_sets().contains(&tri));
    }

    #[test]
    fn oracle_matches_matrix_on_named_matroids() {
        for m in [k4(), fano(), fano().dual()] {
            let c = m.circuits().unwrap();
            for (i, x) in m.labels().iter().enumerate() {
                for y in &m.labels()[i + 1..] {
                    let o = element_split_circuits_oracle(&c, &[x, y], "a").unwrap();
                    let direct = element_split(&m, &[x, y], "a").unwrap().circuits().unwrap();
                    assert_eq!(o, direct, "pair {x},{y}");
                }
            }
        }
    }

    fn disagrees(m: &BinaryMatroid, x: &str, y: &str, options: OracleOptions) -> bool {
        let c = m.circuits().unwrap();
        let direct = element_split(m, &[x, y], "a").unwrap().circuits().unwrap();
        element_split_circuits_oracle_with(&c, &[x, y], "a", options).unwrap() != direct
    }

    #[test]
    fn intersecting_unions_disagree_with_the_matrix() {
        // triangle 0-1-2 with the 0-2 side tripled and the 0-1 side doubled
        let m = from_edges(3, &[(2, 0), (2, 0), (2, 1), (1, 0), (0, 1), (2, 0)]);
        let literal = OracleOptions {
            union_rule: UnionRule::Intersecting,
            exclude_even_members: true,
        };
        assert!(!disagrees(&m, "e0", "e3", OracleOptions::default()));
        assert!(disagrees(&m, "e0", "e3", literal));
    }

    #[test]
    fn even_member_filter_is_needed() {
        // four parallel edges; {e0, e1} meets the pair evenly and sits inside
        // the union of the disjoint odd circuits {e0, e2} and {e1, e3}
        let m = from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 1)]);
        let unfiltered = OracleOptions {
            union_rule: UnionRule::Disjoint,
            exclude_even_members: false,
        };
        assert!(!disagrees(&m, "e0", "e1", OracleOptions::default()));
        assert!(disagrees(&m, "e0", "e1", unfiltered));
    }

    #[test]
    fn cocircuit_facts_cases() {
        // a bond {e0, e1}: vertex 1 has degree two in a 3-cycle
        let tri = from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let f = splitting_cocircuit_facts(&tri, "e0", "e1").unwrap();
        assert!(f.pair_is_cocircuit && f.new_is_coloop && f.pair_is_cocircuit_after);
        assert!(f.consistent());

        let f = splitting_cocircuit_facts(&k4(), "e0", "e5").unwrap();
        assert!(!f.pair_contains_cocircuit);
        assert!(f.triple_is_cocircuit_after);
        assert!(f.consistent());
    }

    fn arb_graph() -> impl Strategy<Value = BinaryMatroid> {
        (2usize..=5)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 2..=8)))
            .prop_map(|(n, edges)| from_edges(n, &edges))
    }

    proptest! {
        #[test]
        fn oracle_matches_matrix(m in arb_graph(), i in 0usize..8, j in 0usize..8) {
            let n = m.len();
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let (x, y) = (&m.labels()[i], &m.labels()[j]);
            let c = m.circuits().unwrap();
            let o = element_split_circuits_oracle(&c, &[x, y], "a").unwrap();
            let s = element_split(&m, &[x, y], "a").unwrap();
            prop_assert_eq!(o, s.circuits().unwrap());
            prop_assert_eq!(s.rank(), m.rank() + 1);
            prop_assert!(s.contract(["a"]).unwrap().same_matroid(&m));
            prop_assert!(splitting_cocircuit_facts(&m, x, y).unwrap().consistent());
        }
    }
}
