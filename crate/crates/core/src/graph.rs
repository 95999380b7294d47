//! Labelled multigraphs, their cycle matroids, and exhaustive enumeration
//! of small connected multigraphs.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::matroid::BinaryMatroid;

/// Largest vertex count accepted by [`enumerate_connected_graphs`].
pub const MAX_ENUM_VERTICES: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: String,
}

/// A multigraph on vertices `0..vertex_count`; loops and parallel edges are
/// allowed, edge labels are distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &edges {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {} joins {} and {} but there are {vertex_count} vertices",
                    e.label, e.u, e.v
                )));
            }
            if !seen.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    /// Edges labelled `e1`, `e2`, ... in the given order.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| Edge {
                u,
                v,
                label: format!("e{}", i + 1),
            })
            .collect();
        Self::new(vertex_count, edges)
    }

    /// `K_n` with edges labelled by their endpoints, `12`, `13`, ... (1-based).
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push(Edge {
                    u,
                    v,
                    label: format!("{}{}", u + 1, v + 1),
                });
            }
        }
        Self::new(n, edges).expect("complete graph is valid")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push(Edge {
                    u,
                    v: a + v,
                    label: format!("{}{}", (b'a' + u as u8) as char, v + 1),
                });
            }
        }
        Self::new(a + b, edges).expect("complete bipartite graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn edge(&self, label: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertex_count;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// The vertex-edge incidence matrix over GF(2); loops give zero columns.
    pub fn cycle_matroid(&self) -> Result<BinaryMatroid> {
        if self.edges.len() > crate::gf2::MAX_COLS {
            return Err(Error::TooManyEdges(self.edges.len()));
        }
        let mut rows = vec![0u64; self.vertex_count];
        for (c, e) in self.edges.iter().enumerate() {
            if e.u != e.v {
                rows[e.u] |= 1 << c;
                rows[e.v] |= 1 << c;
            }
        }
        BinaryMatroid::new(self.labels(), GF2Matrix::from_rows(self.edges.len(), rows)?)
    }
}

/// Multiplicity matrix of a loopless multigraph on at most
/// [`MAX_ENUM_VERTICES`] vertices, packed two bits per vertex pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Code(u64);

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

struct Shape {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Shape {
    fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Self { n, pairs }
    }

    fn mult(&self, code: Code, p: usize) -> u64 {
        code.0 >> (2 * p) & 3
    }

    fn degrees(&self, code: Code) -> Vec<u64> {
        let mut d = vec![0; self.n];
        for (p, &(u, v)) in self.pairs.iter().enumerate() {
            let m = self.mult(code, p);
            d[u] += m;
            d[v] += m;
        }
        d
    }

    fn relabel(&self, code: Code, perm: &[usize]) -> Code {
        let mut out = 0u64;
        for (p, &(u, v)) in self.pairs.iter().enumerate() {
            let m = self.mult(code, p);
            if m != 0 {
                out |= m << (2 * pair_index(self.n, perm[u], perm[v]));
            }
        }
        Code(out)
    }

    /// Smallest relabelling among those ordering vertices by a refined
    /// degree invariant. The invariant is isomorphism-invariant, so equal
    /// canonical codes mean isomorphic graphs and vice versa.
    fn canonical(&self, code: Code) -> Code {
        let deg = self.degrees(code);
        let mut invariant: Vec<(u64, Vec<(u64, u64)>)> = (0..self.n)
            .map(|u| {
                let mut nb: Vec<(u64, u64)> = (0..self.n)
                    .filter(|&v| v != u)
                    .map(|v| (self.mult(code, pair_index(self.n, u, v)), deg[v]))
                    .filter(|&(m, _)| m != 0)
                    .collect();
                nb.sort_unstable();
                (deg[u], nb)
            })
            .collect();
        // cells of vertices sharing the invariant, in invariant order
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| invariant[a].cmp(&invariant[b]));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match cells.last_mut() {
                Some(cell) if invariant[cell[0]] == invariant[v] => cell.push(v),
                _ => cells.push(vec![v]),
            }
        }
        invariant.clear();
        let mut best = Code(u64::MAX);
        let mut perm = vec![0usize; self.n];
        let mut slots = Vec::with_capacity(self.n);
        let mut start = 0;
        for cell in &cells {
            slots.push((start, cell.clone()));
            start += cell.len();
        }
        self.search(code, &slots, 0, &mut perm, &mut best);
        best
    }

    fn search(&self, code: Code, slots: &[(usize, Vec<usize>)], k: usize, perm: &mut [usize], best: &mut Code) {
        if k == slots.len() {
            let c = self.relabel(code, perm);
            if c < *best {
                *best = c;
            }
            return;
        }
        let (start, cell) = &slots[k];
        let mut cell = cell.clone();
        permute(&mut cell, 0, &mut |arrangement| {
            for (i, &v) in arrangement.iter().enumerate() {
                perm[v] = start + i;
            }
            self.search(code, slots, k + 1, perm, best);
        });
    }

    fn is_connected(&self, code: Code) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = 1u64;
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if v != u && seen >> v & 1 == 0 && self.mult(code, pair_index(self.n, u, v)) != 0 {
                    seen |= 1 << v;
                    stack.push(v);
                }
            }
        }
        seen.count_ones() as usize == self.n
    }

    fn to_graph(&self, code: Code) -> Graph {
        let mut pairs = Vec::new();
        for (p, &(u, v)) in self.pairs.iter().enumerate() {
            for _ in 0..self.mult(code, p) {
                pairs.push((u, v));
            }
        }
        Graph::from_pairs(self.n, &pairs).expect("enumerated graph is valid")
    }
}

/// Heap's algorithm, calling `f` on every arrangement of `items`.
fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Every connected loopless multigraph with `1..=max_vertices` vertices, at
/// most `max_edges` edges and edge multiplicity at most `max_multiplicity`,
/// one per isomorphism class. Ordered by vertex count, then edge count, then
/// canonical code; edges are labelled `e1`, `e2`, ... in vertex-pair order.
pub fn enumerate_connected_graphs(
    max_vertices: usize,
    max_edges: usize,
    max_multiplicity: usize,
) -> Result<Vec<Graph>> {
    if max_vertices > MAX_ENUM_VERTICES {
        return Err(Error::CapExceeded(format!(
            "enumeration supports at most {MAX_ENUM_VERTICES} vertices, {max_vertices} requested"
        )));
    }
    if max_multiplicity > 3 {
        return Err(Error::CapExceeded(format!(
            "enumeration supports multiplicity at most 3, {max_multiplicity} requested"
        )));
    }
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let shape = Shape::new(n);
        let mut level: BTreeSet<Code> = BTreeSet::from([Code(0)]);
        for e in 0..=max_edges {
            out.extend(
                level
                    .iter()
                    .filter(|&&c| shape.is_connected(c))
                    .map(|&c| shape.to_graph(c)),
            );
            if e == max_edges || max_multiplicity == 0 {
                break;
            }
            let mut next = BTreeSet::new();
            for &c in &level {
                for p in 0..shape.pairs.len() {
                    if shape.mult(c, p) < max_multiplicity as u64 {
                        next.insert(shape.canonical(Code(c.0 + (1 << (2 * p)))));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Connected labelled simple graphs on `n` vertices up to isomorphism,
    /// counted by brute force over all edge subsets and all permutations.
    fn brute_classes(n: usize) -> usize {
        let shape = Shape::new(n);
        let m = shape.pairs.len();
        let mut perms = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        permute(&mut items, 0, &mut |p| perms.push(p.to_vec()));
        let mut classes = HashSet::new();
        for subset in 0u64..1 << m {
            let code = Code(
                (0..m)
                    .filter(|&p| subset >> p & 1 == 1)
                    .fold(0, |a, p| a | 1 << (2 * p)),
            );
            if !shape.is_connected(code) {
                continue;
            }
            let min = perms.iter().map(|p| shape.relabel(code, p)).min().unwrap();
            classes.insert(min);
        }
        classes.len()
    }

    #[test]
    fn cycle_matroid_basics() {
        let tri = Graph::from_pairs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = tri.cycle_matroid().unwrap();
        assert_eq!(m.circuits().unwrap().len(), 1);
        let k4 = Graph::complete(4).cycle_matroid().unwrap();
        assert_eq!((k4.rank(), k4.circuits().unwrap().len()), (3, 7));
        let bridge = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert!(bridge.cycle_matroid().unwrap().is_coloop("e4").unwrap());
        let looped = Graph::from_pairs(1, &[(0, 0)]).unwrap();
        assert!(looped.cycle_matroid().unwrap().is_loop("e1").unwrap());
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(Graph::from_pairs(2, &[(0, 2)]), Err(Error::InvalidGraph(_))));
        let dup = vec![
            Edge {
                u: 0,
                v: 1,
                label: "x".into(),
            },
            Edge {
                u: 0,
                v: 1,
                label: "x".into(),
            },
        ];
        assert!(matches!(Graph::new(2, dup), Err(Error::DuplicateLabel(_))));
        let many: Vec<(usize, usize)> = vec![(0, 1); 65];
        assert!(matches!(
            Graph::from_pairs(2, &many).unwrap().cycle_matroid(),
            Err(Error::TooManyEdges(65))
        ));
    }

    #[test]
    fn named_graphs() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.edges()[0].label, "12");
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(k33.edge_count(), 9);
        assert_eq!(k33.min_degree(), 3);
        assert_eq!(k33.cycle_matroid().unwrap().rank(), 5);
    }

    #[test]
    fn small_simple_counts() {
        let on = |n: usize, g: &Vec<Graph>| g.iter().filter(|g| g.vertex_count() == n).count();
        let g3 = enumerate_connected_graphs(3, 3, 1).unwrap();
        assert_eq!(on(3, &g3), 2);
        let g4 = enumerate_connected_graphs(4, 6, 1).unwrap();
        assert_eq!(on(4, &g4), 6);
        assert_eq!(on(4, &g4), brute_classes(4));
        let g5 = enumerate_connected_graphs(5, 10, 1).unwrap();
        assert_eq!(on(5, &g5), 21);
        assert_eq!(on(5, &g5), brute_classes(5));
    }

    #[test]
    fn multigraph_counts_match_brute_force() {
        // connected multigraphs on 3 vertices with multiplicity at most 2
        let shape = Shape::new(3);
        let mut perms = Vec::new();
        let mut items = vec![0, 1, 2];
        permute(&mut items, 0, &mut |p| perms.push(p.to_vec()));
        let mut classes = HashSet::new();
        for a in 0..3u64 {
            for b in 0..3u64 {
                for c in 0..3u64 {
                    let code = Code(a | b << 2 | c << 4);
                    if shape.is_connected(code) {
                        classes.insert(perms.iter().map(|p| shape.relabel(code, p)).min().unwrap());
                    }
                }
            }
        }
        let got = enumerate_connected_graphs(3, 6, 2).unwrap();
        assert_eq!(got.iter().filter(|g| g.vertex_count() == 3).count(), classes.len());
    }

    #[test]
    fn enumeration_invariants() {
        let all = enumerate_connected_graphs(5, 8, 2).unwrap();
        assert!(all.iter().all(Graph::is_connected));
        for g in &all {
            let m = g.cycle_matroid().unwrap();
            assert_eq!(m.rank(), g.vertex_count() - g.component_count());
        }
        let again = enumerate_connected_graphs(5, 8, 2).unwrap();
        assert_eq!(all, again);
        assert!(matches!(
            enumerate_connected_graphs(8, 3, 1),
            Err(Error::CapExceeded(_))
        ));
    }
}
