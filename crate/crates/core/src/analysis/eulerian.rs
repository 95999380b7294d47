//! Eulerian matroids under two readings of "union of circuits".

use serde::Serialize;

use super::minor::MINOR_LIMIT;
use crate::error::{Error, Result};
use crate::gf2::bits;
use crate::matroid::BinaryMatroid;

/// Both readings side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianReport {
    /// Every element lies on some circuit (no coloops): the ground set is a
    /// possibly overlapping union of circuits.
    pub union_of_circuits: bool,
    /// The ground set is partitioned by circuits.
    pub disjoint_union: bool,
    /// A partition into circuits, when one exists.
    pub partition: Option<Vec<Vec<String>>>,
}

pub fn eulerian_report(m: &BinaryMatroid) -> Result<EulerianReport> {
    if m.len() > MINOR_LIMIT {
        return Err(Error::GroundSetTooLarge {
            size: m.len(),
            limit: MINOR_LIMIT,
        });
    }
    let circuits = m.circuit_masks();
    let covered = circuits.iter().fold(0u64, |a, &c| a | c);
    let partition = exact_cover(&circuits, m.full_mask())
        .map(|parts| parts.into_iter().map(|c| m.labels_of(c)).collect::<Vec<_>>());
    Ok(EulerianReport {
        union_of_circuits: covered == m.full_mask(),
        disjoint_union: partition.is_some(),
        partition,
    })
}

/// Eulerian in the partition sense: the ground set is a disjoint union of
/// circuits.
pub fn is_eulerian(m: &BinaryMatroid) -> Result<bool> {
    Ok(eulerian_report(m)?.disjoint_union)
}

/// Partition of `universe` into members of `sets`, chosen by always
/// covering the lowest uncovered element first.
fn exact_cover(sets: &[u64], universe: u64) -> Option<Vec<u64>> {
    fn go(sets: &[u64], left: u64, chosen: &mut Vec<u64>) -> bool {
        let Some(e) = bits(left).next() else {
            return true;
        };
        for &s in sets {
            if s >> e & 1 == 1 && s & !left == 0 {
                chosen.push(s);
                if go(sets, left & !s, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(sets, universe, &mut chosen).then_some(chosen)
}
