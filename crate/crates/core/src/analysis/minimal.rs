//! The minimality predicate: some pair and some splitting-derived form of
//! a series-pair-free matroid is isomorphic to a given target.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::iso::{find_isomorphism, CircuitData};
use crate::error::{Error, Result};
use crate::matroid::BinaryMatroid;
use crate::splitting::{element_split, fresh_label};

/// The five matroids derived from `M'_{x,y}` that the predicate compares
/// with the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitForm {
    /// `M'_{x,y} \ {a} / {x}`
    DeleteNewContractX,
    /// `M'_{x,y} \ {a} / {x,y}`
    DeleteNewContractXY,
    /// `M'_{x,y}`
    Whole,
    /// `M'_{x,y} / {x}`
    ContractX,
    /// `M'_{x,y} / {x,y}`
    ContractXY,
}

impl SplitForm {
    pub const ALL: [SplitForm; 5] = [
        SplitForm::DeleteNewContractX,
        SplitForm::DeleteNewContractXY,
        SplitForm::Whole,
        SplitForm::ContractX,
        SplitForm::ContractXY,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SplitForm::DeleteNewContractX => "M'\\{a}/{x}",
            SplitForm::DeleteNewContractXY => "M'\\{a}/{x,y}",
            SplitForm::Whole => "M'",
            SplitForm::ContractX => "M'/{x}",
            SplitForm::ContractXY => "M'/{x,y}",
        }
    }

    /// Element count of the form applied to a matroid with `n` elements.
    pub fn size(self, n: usize) -> usize {
        match self {
            SplitForm::DeleteNewContractX => n - 1,
            SplitForm::DeleteNewContractXY => n - 2,
            SplitForm::Whole => n + 1,
            SplitForm::ContractX => n,
            SplitForm::ContractXY => n - 1,
        }
    }

    pub fn apply(self, m: &BinaryMatroid, x: &str, y: &str) -> Result<BinaryMatroid> {
        let a = fresh_label(m);
        let s = element_split(m, &[x, y], &a)?;
        match self {
            SplitForm::DeleteNewContractX => s.delete([&a])?.contract([x]),
            SplitForm::DeleteNewContractXY => s.delete([&a])?.contract([x, y]),
            SplitForm::Whole => Ok(s),
            SplitForm::ContractX => s.contract([x]),
            SplitForm::ContractXY => s.contract([x, y]),
        }
    }
}

impl fmt::Display for SplitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitForm {
    type Err = Error;

    /// Accepts the full form (`M'\{a}/{x}`) or the part after `M'`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s.strip_prefix("M'").unwrap_or(s);
        SplitForm::ALL
            .into_iter()
            .find(|f| &f.as_str()[2..] == body)
            .ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("unknown split form {s:?}"),
            })
    }
}

impl Serialize for SplitForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for SplitForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A pair and form realising the target, with the label bijection from
/// the derived matroid onto the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalEvidence {
    pub x: String,
    pub y: String,
    pub form: SplitForm,
    pub bijection: BTreeMap<String, String>,
}

/// Whether `form` applied to the pair `(x, y)` of `m` is isomorphic to
/// `target`, returning the bijection.
pub fn check_form(
    m: &BinaryMatroid,
    x: &str,
    y: &str,
    form: SplitForm,
    target: &BinaryMatroid,
) -> Result<Option<BTreeMap<String, String>>> {
    if form.size(m.len()) != target.len() {
        return Ok(None);
    }
    let derived = form.apply(m, x, y)?;
    super::is_isomorphic(&derived, target)
}

/// Search every ordered pair of distinct elements (in position order) and
/// every form for one isomorphic to `target`.
pub fn verify_minimal(m: &BinaryMatroid, target: &BinaryMatroid) -> Result<Option<MinimalEvidence>> {
    if let Some((a, b)) = m.series_pairs().into_iter().next() {
        return Err(Error::SeriesPairPresent(a, b));
    }
    let pattern = CircuitData::of(target);
    let forms: Vec<SplitForm> = SplitForm::ALL
        .into_iter()
        .filter(|f| m.len() >= 2 && f.size(m.len()) == target.len())
        .collect();
    for x in m.labels() {
        for y in m.labels() {
            if x == y {
                continue;
            }
            for &form in &forms {
                let derived = form.apply(m, x, y)?;
                let data = CircuitData::of(&derived);
                if let Some(perm) = find_isomorphism(&data, &pattern) {
                    let bijection = perm
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| (derived.labels()[i].clone(), target.labels()[j].clone()))
                        .collect();
                    return Ok(Some(MinimalEvidence {
                        x: x.clone(),
                        y: y.clone(),
                        form,
                        bijection,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ForbiddenCatalog;
    use crate::matroid::tests::{from_edges, k4};

    #[test]
    fn form_strings_round_trip() {
        for f in SplitForm::ALL {
            assert_eq!(f.as_str().parse::<SplitForm>().unwrap(), f);
            assert_eq!(f.as_str()[2..].parse::<SplitForm>().unwrap(), f);
        }
        assert_eq!("\\{a}/{x}".parse::<SplitForm>().unwrap(), SplitForm::DeleteNewContractX);
        assert!("/{y}".parse::<SplitForm>().is_err());
        let json = serde_json::to_string(&SplitForm::ContractXY).unwrap();
        assert_eq!(json, "\"M'/{x,y}\"");
    }

    #[test]
    fn k4_nonadjacent_pair_gives_f7_dual() {
        let cat = ForbiddenCatalog::standard();
        let f7s = cat.matroid("F7*").unwrap();
        let ev = verify_minimal(&k4(), f7s).unwrap().unwrap();
        assert_eq!(ev.form, SplitForm::Whole);
        assert!(check_form(&k4(), &ev.x, &ev.y, ev.form, f7s).unwrap().is_some());
        // e0 = 01 and e5 = 23 are opposite edges
        assert!(check_form(&k4(), "e0", "e5", SplitForm::Whole, f7s).unwrap().is_some());
        assert!(check_form(&k4(), "e0", "e1", SplitForm::Whole, f7s).unwrap().is_none());
    }

    #[test]
    fn k4_is_not_minimal_for_fano() {
        let f7 = ForbiddenCatalog::standard().matroid("F7").unwrap();
        assert!(verify_minimal(&k4(), f7).unwrap().is_none());
    }

    #[test]
    fn series_pair_rejected() {
        let sq = from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let f7 = ForbiddenCatalog::standard().matroid("F7").unwrap();
        assert!(matches!(verify_minimal(&sq, f7), Err(Error::SeriesPairPresent(_, _))));
    }
}
