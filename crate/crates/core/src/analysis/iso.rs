//! Matroid isomorphism by matching circuit families.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::gf2::bits;
use crate::matroid::BinaryMatroid;

/// Largest ground set accepted by [`is_isomorphic`].
pub const ISO_LIMIT: usize = 14;

/// Circuit family on the positions `0..n` with the invariants used to prune
/// the bijection search.
#[derive(Clone, Debug)]
pub(crate) struct CircuitData {
    pub n: usize,
    pub rank: usize,
    pub circuits: Vec<u64>,
    set: HashSet<u64>,
    /// `sig[e][s]`: circuits of size `s` containing `e`.
    sig: Vec<Vec<u16>>,
    /// `co[e][f]`: circuits containing both `e` and `f`.
    co: Vec<Vec<u16>>,
}

impl CircuitData {
    pub fn new(n: usize, rank: usize, circuits: Vec<u64>) -> Self {
        let mut sig = vec![vec![0u16; n + 1]; n];
        let mut co = vec![vec![0u16; n]; n];
        for &c in &circuits {
            let size = c.count_ones() as usize;
            for e in bits(c) {
                sig[e][size] += 1;
                for f in bits(c) {
                    co[e][f] += 1;
                }
            }
        }
        let set = circuits.iter().copied().collect();
        Self {
            n,
            rank,
            circuits,
            set,
            sig,
            co,
        }
    }

    pub fn of(m: &BinaryMatroid) -> Self {
        Self::new(m.len(), m.rank(), m.circuit_masks())
    }

    pub fn census(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for c in &self.circuits {
            *out.entry(c.count_ones()).or_insert(0) += 1;
        }
        out
    }

    /// Cheap necessary conditions for isomorphism.
    pub fn compatible(&self, other: &Self) -> bool {
        if self.n != other.n || self.rank != other.rank || self.circuits.len() != other.circuits.len() {
            return false;
        }
        let mut a = self.sig.clone();
        let mut b = other.sig.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

/// A bijection `perm` with `perm[i]` the image of position `i`, mapping the
/// circuits of `a` exactly onto those of `b`.
pub(crate) fn find_isomorphism(a: &CircuitData, b: &CircuitData) -> Option<Vec<usize>> {
    if !a.compatible(b) {
        return None;
    }
    let n = a.n;
    if n == 0 {
        return Some(Vec::new());
    }
    let order = search_order(a);
    let mut position = vec![0usize; n];
    for (k, &e) in order.iter().enumerate() {
        position[e] = k;
    }
    // circuits checked once their last element (in search order) is placed
    let mut closing: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &c in &a.circuits {
        let last = bits(c).map(|e| position[e]).max().expect("circuits are nonempty");
        closing[last].push(c);
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = 0u64;
    if extend(a, b, &order, &closing, 0, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

/// Greedy order: start from the element with the rarest signature, then
/// repeatedly take the element sharing the most circuits with those chosen.
fn search_order(a: &CircuitData) -> Vec<usize> {
    let n = a.n;
    let mut freq: BTreeMap<&Vec<u16>, usize> = BTreeMap::new();
    for s in &a.sig {
        *freq.entry(s).or_insert(0) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut chosen = vec![false; n];
    let first = (0..n).min_by_key(|&e| (freq[&a.sig[e]], e)).unwrap();
    order.push(first);
    chosen[first] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&e| !chosen[e])
            .max_by_key(|&e| {
                let shared: u32 = order.iter().map(|&f| a.co[e][f] as u32).sum();
                (shared, std::cmp::Reverse(freq[&a.sig[e]]), std::cmp::Reverse(e))
            })
            .unwrap();
        order.push(next);
        chosen[next] = true;
    }
    order
}

fn extend(
    a: &CircuitData,
    b: &CircuitData,
    order: &[usize],
    closing: &[Vec<u64>],
    k: usize,
    perm: &mut [usize],
    used: &mut u64,
) -> bool {
    if k == order.len() {
        return true;
    }
    let e = order[k];
    for g in 0..b.n {
        if *used >> g & 1 == 1 || a.sig[e] != b.sig[g] || a.co[e][e] != b.co[g][g] {
            continue;
        }
        if order[..k].iter().any(|&f| a.co[e][f] != b.co[g][perm[f]]) {
            continue;
        }
        perm[e] = g;
        let ok = closing[k].iter().all(|&c| {
            let image = bits(c).fold(0u64, |m, i| m | 1 << perm[i]);
            b.set.contains(&image)
        });
        if ok {
            *used |= 1 << g;
            if extend(a, b, order, closing, k + 1, perm, used) {
                return true;
            }
            *used &= !(1 << g);
        }
        perm[e] = usize::MAX;
    }
    false
}

/// A label bijection from `m` to `n` carrying circuits exactly onto circuits,
/// or `None` when the matroids are not isomorphic.
pub fn is_isomorphic(m: &BinaryMatroid, n: &BinaryMatroid) -> Result<Option<BTreeMap<String, String>>> {
    for side in [m, n] {
        if side.len() > ISO_LIMIT {
            return Err(Error::GroundSetTooLarge {
                size: side.len(),
                limit: ISO_LIMIT,
            });
        }
    }
    let (a, b) = (CircuitData::of(m), CircuitData::of(n));
    Ok(find_isomorphism(&a, &b).map(|perm| {
        perm.iter()
            .enumerate()
            .map(|(i, &j)| (m.labels()[i].clone(), n.labels()[j].clone()))
            .collect()
    }))
}

/// Whether `bijection` maps the circuits of `m` exactly onto those of `n`.
pub fn check_bijection(m: &BinaryMatroid, n: &BinaryMatroid, bijection: &BTreeMap<String, String>) -> bool {
    if m.len() != n.len() || bijection.len() != m.len() {
        return false;
    }
    let mut perm = Vec::with_capacity(m.len());
    for l in m.labels() {
        match bijection.get(l).map(|t| n.index_of(t)) {
            Some(Ok(j)) => perm.push(j),
            _ => return false,
        }
    }
    let mut seen = 0u64;
    for &j in &perm {
        if seen >> j & 1 == 1 {
            return false;
        }
        seen |= 1 << j;
    }
    let mut image: Vec<u64> = m
        .circuit_masks()
        .iter()
        .map(|&c| bits(c).fold(0u64, |acc, i| acc | 1 << perm[i]))
        .collect();
    let mut target = n.circuit_masks();
    image.sort_unstable();
    target.sort_unstable();
    image == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::{fano, from_edges, k4};

    fn relabelled(m: &BinaryMatroid, perm: &[usize]) -> BinaryMatroid {
        let cols = m.column_words();
        let moved: Vec<u64> = perm.iter().map(|&i| cols[i]).collect();
        let names = (0..m.len()).map(|i| format!("p{i}")).collect();
        BinaryMatroid::from_columns(names, m.rep().row_basis().rows(), &moved).unwrap()
    }

    #[test]
    fn identity_and_rank_mismatch() {
        let f = fano();
        let id = is_isomorphic(&f, &f).unwrap().unwrap();
        assert!(check_bijection(&f, &f, &id));
        assert!(is_isomorphic(&f, &f.dual()).unwrap().is_none());
    }

    #[test]
    fn permuted_columns_are_found() {
        let f = fano();
        let g = relabelled(&f, &[4, 2, 6, 0, 1, 5, 3]);
        let bij = is_isomorphic(&f, &g).unwrap().unwrap();
        assert!(check_bijection(&f, &g, &bij));
        let k = k4();
        let h = relabelled(&k, &[5, 3, 1, 0, 2, 4]);
        assert!(check_bijection(&k, &h, &is_isomorphic(&k, &h).unwrap().unwrap()));
    }

    #[test]
    fn same_census_different_matroids() {
        // a 4-cycle with a chord vs. a triangle with a pendant pair of
        // parallel edges: both have 5 elements but different structure
        let a = from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let b = from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (2, 3)]);
        assert!(is_isomorphic(&a, &b).unwrap().is_none());
        // M(K4) is self-dual; M(K4 minus an edge) is not (ranks 3 and 2)
        assert!(is_isomorphic(&k4(), &k4().dual()).unwrap().is_some());
        assert!(is_isomorphic(&a, &a.dual()).unwrap().is_none());
    }

    #[test]
    fn too_large() {
        let big = from_edges(2, &[(0, 1); 15]);
        assert!(matches!(
            is_isomorphic(&big, &big),
            Err(Error::GroundSetTooLarge { .. })
        ));
    }

    #[test]
    fn bad_bijection_rejected() {
        let k = k4();
        let mut id: BTreeMap<String, String> = k.labels().iter().map(|l| (l.clone(), l.clone())).collect();
        assert!(check_bijection(&k, &k, &id));
        id.insert("e0".into(), "e1".into());
        assert!(!check_bijection(&k, &k, &id));
        id.insert("e1".into(), "e0".into());
        // swapping two adjacent edges of K4 is not an automorphism of circuits
        assert!(!check_bijection(&k, &k, &id));
    }
}
