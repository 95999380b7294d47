//! Excluded-minor classification: graphic and cographic matroids.

use std::sync::OnceLock;

use serde::Serialize;

use super::minor::{has_minor_with, MinorWitness, Pattern};
use crate::error::{Error, Result};
use crate::matroid::BinaryMatroid;

/// One named matroid of the forbidden catalog with its minor-search
/// pattern precomputed.
pub struct Forbidden {
    pub name: &'static str,
    pub matroid: BinaryMatroid,
    pub(crate) pattern: Pattern,
}

/// The four excluded minors for graphic and for cographic binary
/// matroids, embedded as literal representations and checked on load.
pub struct ForbiddenCatalog {
    entries: Vec<Forbidden>,
}

/// Name, `.bm` text, element count, rank, circuit count.
const ENTRIES: &[(&str, &str, usize, usize, usize)] = &[
    ("F7", include_str!("../../catalog/F7.bm"), 7, 3, 14),
    ("F7*", include_str!("../../catalog/F7star.bm"), 7, 4, 7),
    ("M(K3,3)", include_str!("../../catalog/MK33.bm"), 9, 5, 15),
    ("M*(K3,3)", include_str!("../../catalog/MK33star.bm"), 9, 4, 24),
    ("M(K5)", include_str!("../../catalog/MK5.bm"), 10, 4, 37),
    ("M*(K5)", include_str!("../../catalog/MK5star.bm"), 10, 6, 15),
    ("M(K4)", include_str!("../../catalog/MK4.bm"), 6, 3, 7),
];

const GRAPHIC_EXCLUDED: [&str; 4] = ["F7", "F7*", "M*(K3,3)", "M*(K5)"];
const COGRAPHIC_EXCLUDED: [&str; 4] = ["F7", "F7*", "M(K3,3)", "M(K5)"];
/// The targets of the minimality predicate.
pub const SPLIT_TARGETS: [&str; 4] = ["F7", "F7*", "M(K5)", "M(K3,3)"];

impl ForbiddenCatalog {
    /// Parse and validate every embedded matrix.
    pub fn load() -> Result<Self> {
        let mut entries = Vec::new();
        for &(name, text, len, rank, circuits) in ENTRIES {
            let invalid = |reason: String| Error::TranscriptionInvalid {
                name: name.to_string(),
                reason,
            };
            let matroid = BinaryMatroid::parse_bm(text).map_err(|e| invalid(e.to_string()))?;
            let found = (matroid.len(), matroid.rank(), matroid.circuits()?.len());
            if found != (len, rank, circuits) {
                return Err(invalid(format!(
                    "expected (elements, rank, circuits) = {:?}, found {found:?}",
                    (len, rank, circuits)
                )));
            }
            let pattern = Pattern::new(&matroid);
            entries.push(Forbidden { name, matroid, pattern });
        }
        Ok(Self { entries })
    }

    /// The shared, validated catalog.
    pub fn standard() -> &'static Self {
        static CATALOG: OnceLock<ForbiddenCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| Self::load().expect("embedded forbidden catalog is valid"))
    }

    pub fn get(&self, name: &str) -> Option<&Forbidden> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn matroid(&self, name: &str) -> Result<&BinaryMatroid> {
        self.get(name)
            .map(|e| &e.matroid)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn entries(&self) -> &[Forbidden] {
        &self.entries
    }

    pub fn graphic_excluded(&self) -> impl Iterator<Item = &Forbidden> {
        GRAPHIC_EXCLUDED.iter().filter_map(|n| self.get(n))
    }

    pub fn cographic_excluded(&self) -> impl Iterator<Item = &Forbidden> {
        COGRAPHIC_EXCLUDED.iter().filter_map(|n| self.get(n))
    }

    pub fn split_targets(&self) -> impl Iterator<Item = &Forbidden> {
        SPLIT_TARGETS.iter().filter_map(|n| self.get(n))
    }
}

/// An excluded minor found in a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub name: String,
    pub witness: MinorWitness,
}

/// Outcome of an excluded-minor test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub holds: bool,
    pub obstruction: Option<Obstruction>,
}

fn first_obstruction<'a>(m: &BinaryMatroid, excluded: impl Iterator<Item = &'a Forbidden>) -> Result<Classification> {
    for f in excluded {
        if let Some(witness) = has_minor_with(m, &f.pattern)? {
            return Ok(Classification {
                holds: false,
                obstruction: Some(Obstruction {
                    name: f.name.to_string(),
                    witness,
                }),
            });
        }
    }
    Ok(Classification {
        holds: true,
        obstruction: None,
    })
}

/// A binary matroid is graphic iff it has none of F7, F7*, M*(K3,3),
/// M*(K5) as a minor.
pub fn is_graphic(m: &BinaryMatroid) -> Result<Classification> {
    first_obstruction(m, ForbiddenCatalog::standard().graphic_excluded())
}

/// A binary matroid is cographic iff it has none of F7, F7*, M(K3,3),
/// M(K5) as a minor.
pub fn is_cographic(m: &BinaryMatroid) -> Result<Classification> {
    first_obstruction(m, ForbiddenCatalog::standard().cographic_excluded())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::k4;

    #[test]
    fn catalog_validates() {
        let cat = ForbiddenCatalog::load().unwrap();
        assert_eq!(cat.entries().len(), 7);
        assert_eq!(cat.graphic_excluded().count(), 4);
        assert_eq!(cat.cographic_excluded().count(), 4);
        let f7 = cat.matroid("F7").unwrap();
        assert!(f7.dual().same_matroid(cat.matroid("F7*").unwrap()));
        let k5 = cat.matroid("M(K5)").unwrap();
        assert!(k5.dual().same_matroid(cat.matroid("M*(K5)").unwrap()));
    }

    #[test]
    fn duals_are_listed_consistently() {
        let cat = ForbiddenCatalog::standard();
        for (a, b) in [("M(K3,3)", "M*(K3,3)"), ("M(K5)", "M*(K5)"), ("F7", "F7*")] {
            let dual = cat.matroid(a).unwrap().dual();
            assert!(super::super::is_isomorphic(&dual, cat.matroid(b).unwrap())
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn spot_checks() {
        let cat = ForbiddenCatalog::standard();
        let f7 = cat.matroid("F7").unwrap();
        let c = is_graphic(f7).unwrap();
        assert!(!c.holds);
        assert_eq!(c.obstruction.as_ref().unwrap().name, "F7");
        assert!(!is_graphic(cat.matroid("M*(K5)").unwrap()).unwrap().holds);
        assert!(!is_cographic(cat.matroid("M(K5)").unwrap()).unwrap().holds);
        assert!(!is_cographic(cat.matroid("F7*").unwrap()).unwrap().holds);
        assert!(is_cographic(&k4()).unwrap().holds);
        assert!(is_graphic(&k4()).unwrap().holds);
        assert!(is_graphic(cat.matroid("M(K5)").unwrap()).unwrap().holds);
        assert!(!is_graphic(cat.matroid("M*(K3,3)").unwrap()).unwrap().holds);
        assert!(is_cographic(cat.matroid("M*(K3,3)").unwrap()).unwrap().holds);
    }

    #[test]
    fn obstruction_witness_verifies() {
        let cat = ForbiddenCatalog::standard();
        let k5 = cat.matroid("M(K5)").unwrap();
        let o = is_cographic(k5).unwrap().obstruction.unwrap();
        let target = cat.matroid(&o.name).unwrap();
        assert!(o.witness.verify(k5, target).unwrap());
    }
}
