//! Minor containment with explicit witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::iso::{check_bijection, find_isomorphism, CircuitData};
use crate::error::{Error, Result};
use crate::gf2::{self, bits};
use crate::matroid::{contract_rows, subsets_of, BinaryMatroid};

/// Largest host ground set accepted by [`has_minor`].
pub const MINOR_LIMIT: usize = 24;

/// Certificate that `target` is a minor of a host matroid: delete `deleted`,
/// contract `contracted`, then rename by `bijection` (host label to target
/// label).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub deleted: Vec<String>,
    pub contracted: Vec<String>,
    pub bijection: BTreeMap<String, String>,
}

impl MinorWitness {
    /// The minor `host \ deleted / contracted`.
    pub fn apply(&self, host: &BinaryMatroid) -> Result<BinaryMatroid> {
        host.delete(&self.deleted)?.contract(&self.contracted)
    }

    /// Check every invariant of the witness against `host` and `target`.
    pub fn verify(&self, host: &BinaryMatroid, target: &BinaryMatroid) -> Result<bool> {
        let deleted = host.mask_of(&self.deleted)?;
        let contracted = host.mask_of(&self.contracted)?;
        if deleted & contracted != 0
            || deleted.count_ones() as usize != self.deleted.len()
            || contracted.count_ones() as usize != self.contracted.len()
        {
            return Ok(false);
        }
        Ok(check_bijection(&self.apply(host)?, target, &self.bijection))
    }
}

/// Working state: a representation over the host's column positions with
/// only the `alive` columns still present.
#[derive(Clone)]
struct Work {
    rows: Vec<u64>,
    alive: u64,
    deleted: u64,
    contracted: u64,
}

impl Work {
    fn rank(&self) -> usize {
        let mut r = self.rows.clone();
        gf2::reduce_in_place(&mut r, self.alive).len()
    }

    fn delete(&mut self, e: usize) {
        self.alive &= !(1 << e);
        self.deleted |= 1 << e;
    }

    fn contract(&mut self, e: usize) {
        contract_rows(&mut self.rows, e);
        self.alive &= !(1 << e);
        self.contracted |= 1 << e;
    }

    /// Column words of the alive elements over the reduced rows, indexed
    /// by host position.
    fn columns(&self) -> Vec<(usize, u64)> {
        let mut r = self.rows.clone();
        let pivots = gf2::reduce_in_place(&mut r, self.alive);
        let r = &r[..pivots.len()];
        bits(self.alive)
            .map(|e| {
                let w = r
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &row)| acc | (row >> e & 1) << i);
                (e, w)
            })
            .collect()
    }

    fn kernel(&self) -> Vec<u64> {
        let mut r = self.rows.clone();
        gf2::kernel_basis(&mut r, self.alive)
    }

    /// Remove loops and extra parallel copies by deletion, and coloops and
    /// extra series copies by contraction, until none remain. Valid when the
    /// target has none of these, since it is then a minor of the result
    /// whenever it is a minor of the input.
    fn reduce(&mut self) {
        loop {
            let mut changed = false;
            let cols = self.columns();
            let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
            for &(e, w) in &cols {
                if w == 0 || seen.contains_key(&w) {
                    self.delete(e);
                    changed = true;
                } else {
                    seen.insert(w, e);
                }
            }
            if changed {
                continue;
            }
            // series classes are parallel classes of the kernel columns
            let kernel = self.kernel();
            let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
            let mut to_contract = Vec::new();
            for e in bits(self.alive) {
                let w = kernel
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &v)| acc | (v >> e & 1) << i);
                if w == 0 || seen.contains_key(&w) {
                    to_contract.push(e);
                } else {
                    seen.insert(w, e);
                }
            }
            if let Some(&e) = to_contract.first() {
                self.contract(e);
                continue;
            }
            break;
        }
    }
}

/// Compact `mask` (a subset of `within`) onto positions `0..|within|`.
fn compact(mask: u64, within: u64) -> u64 {
    bits(within)
        .enumerate()
        .filter(|&(_, e)| mask >> e & 1 == 1)
        .fold(0u64, |acc, (i, _)| acc | 1 << i)
}

/// Precomputed description of the target minor.
pub(crate) struct Pattern {
    pub data: CircuitData,
    pub simple: bool,
    pub cosimple: bool,
    labels: Vec<String>,
}

impl Pattern {
    pub fn new(n: &BinaryMatroid) -> Self {
        let simple = n.loop_mask() == 0 && n.parallel_pairs().is_empty();
        let cosimple = n.coloop_mask() == 0 && n.series_pairs().is_empty();
        Self {
            data: CircuitData::of(n),
            simple,
            cosimple,
            labels: n.labels().to_vec(),
        }
    }
}

/// Search for a minor of `m` isomorphic to `n`. Contraction sets are fixed
/// first (their size is forced by the rank difference), then deletion
/// sets. Iteration is in increasing position order, so the returned witness
/// is deterministic.
pub fn has_minor(m: &BinaryMatroid, n: &BinaryMatroid) -> Result<Option<MinorWitness>> {
    has_minor_with(m, &Pattern::new(n))
}

pub(crate) fn has_minor_with(m: &BinaryMatroid, pattern: &Pattern) -> Result<Option<MinorWitness>> {
    if m.len() > MINOR_LIMIT {
        return Err(Error::GroundSetTooLarge {
            size: m.len(),
            limit: MINOR_LIMIT,
        });
    }
    let target = &pattern.data;
    let mut work = Work {
        rows: m.reduced_rows(),
        alive: m.full_mask(),
        deleted: 0,
        contracted: 0,
    };
    if pattern.simple && pattern.cosimple {
        work.reduce();
    }
    let size = work.alive.count_ones() as usize;
    let rank = work.rank();
    if target.n > size || target.rank > rank || target.n - target.rank > size - rank {
        return Ok(None);
    }
    let k = rank - target.rank;

    for t2 in subsets_of(work.alive, k) {
        let mut w = work.clone();
        for e in bits(t2) {
            w.contract(e);
        }
        if w.rank() != target.rank {
            continue;
        }
        let found = if pattern.simple {
            search_simple_deletions(&w, pattern)
        } else {
            search_deletions(&w, pattern, w.alive)
        };
        if let Some((keep, perm)) = found {
            let mut done = w;
            for e in bits(done.alive & !keep) {
                done.delete(e);
            }
            return Ok(Some(witness(m, &done, keep, &perm, &pattern.labels)));
        }
    }
    Ok(None)
}

/// With a simple target, loops must go and each parallel class keeps at
/// most one element; the lowest-positioned member stands for its class.
fn search_simple_deletions(w: &Work, pattern: &Pattern) -> Option<(u64, Vec<usize>)> {
    let mut reps = 0u64;
    let mut seen = std::collections::HashSet::new();
    for (e, col) in w.columns() {
        if col != 0 && seen.insert(col) {
            reps |= 1 << e;
        }
    }
    search_deletions(w, pattern, reps)
}

fn search_deletions(w: &Work, pattern: &Pattern, pool: u64) -> Option<(u64, Vec<usize>)> {
    let target = &pattern.data;
    if (pool.count_ones() as usize) < target.n {
        return None;
    }
    let census = target.census();
    for keep in subsets_of(pool, target.n) {
        let mut rows = w.rows.clone();
        let kernel = gf2::kernel_basis(&mut rows, keep);
        if target.n - kernel.len() != target.rank {
            continue;
        }
        let circuits: Vec<u64> = gf2::minimal_supports(&kernel)
            .into_iter()
            .map(|c| compact(c, keep))
            .collect();
        if circuits.len() != target.circuits.len() {
            continue;
        }
        let data = CircuitData::new(target.n, target.rank, circuits);
        if data.census() != census {
            continue;
        }
        if let Some(perm) = find_isomorphism(&data, target) {
            return Some((keep, perm));
        }
    }
    None
}

fn witness(m: &BinaryMatroid, done: &Work, keep: u64, perm: &[usize], target_labels: &[String]) -> MinorWitness {
    let bijection = bits(keep)
        .enumerate()
        .map(|(i, e)| (m.labels()[e].clone(), target_labels[perm[i]].clone()))
        .collect();
    MinorWitness {
        deleted: m.labels_of(done.deleted),
        contracted: m.labels_of(done.contracted),
        bijection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::{fano, from_edges, k4};

    fn wheel4() -> BinaryMatroid {
        // rim 0-1-2-3, hub 4
        from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])
    }

    #[test]
    fn reflexive_with_identity_like_witness() {
        let k = k4();
        let w = has_minor(&k, &k).unwrap().unwrap();
        assert!(w.deleted.is_empty() && w.contracted.is_empty());
        assert!(w.verify(&k, &k).unwrap());
    }

    #[test]
    fn size_bound_rejects() {
        let k5 = from_edges(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
            ],
        );
        assert!(has_minor(&fano(), &k5).unwrap().is_none());
    }

    #[test]
    fn wheel_has_k4_minor() {
        let w4 = wheel4();
        let w = has_minor(&w4, &k4()).unwrap().unwrap();
        assert!(w.verify(&w4, &k4()).unwrap());
        assert_eq!(w.deleted.len() + w.contracted.len(), 2);
    }

    #[test]
    fn series_parallel_graphs_have_no_k4_minor() {
        // two triangles sharing an edge, plus a parallel copy and a pendant path
        let sp = from_edges(5, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2), (0, 1), (2, 4)]);
        assert!(has_minor(&sp, &k4()).unwrap().is_none());
        let cycle = from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert!(has_minor(&cycle, &k4()).unwrap().is_none());
    }

    #[test]
    fn fano_minors() {
        let f = fano();
        // F7 minus a point is M(K4)
        assert!(has_minor(&f, &k4()).unwrap().is_some());
        assert!(has_minor(&f.dual(), &k4()).unwrap().is_some());
        assert!(has_minor(&k4(), &f).unwrap().is_none());
    }

    #[test]
    fn non_simple_target() {
        // a pair of parallel elements is a minor of any matroid with a circuit
        let pair = from_edges(2, &[(0, 1), (0, 1)]);
        let w = has_minor(&k4(), &pair).unwrap().unwrap();
        assert!(w.verify(&k4(), &pair).unwrap());
        let tree = from_edges(3, &[(0, 1), (1, 2)]);
        assert!(has_minor(&tree, &pair).unwrap().is_none());
    }

    #[test]
    fn tampered_witness_fails() {
        let w4 = wheel4();
        let good = has_minor(&w4, &k4()).unwrap().unwrap();
        let mut overlap = good.clone();
        overlap.deleted.push(good.contracted[0].clone());
        assert!(!overlap.verify(&w4, &k4()).unwrap());
        let mut wrong = good.clone();
        let first = wrong.bijection.keys().next().unwrap().clone();
        wrong.bijection.remove(&first);
        assert!(!wrong.verify(&w4, &k4()).unwrap());
    }
}
