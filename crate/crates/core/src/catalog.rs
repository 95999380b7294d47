//! Named graphs and matroids, with their marked pairs and claimed
//! splitting isomorphisms.
//!
//! Entries ship embedded in the library. Setting `MATROIDFORGE_CATALOG` to a
//! directory loads `<dir>/*.json` (graphs) and `<dir>/*.bm` (matroids)
//! instead.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{check_form, verify_minimal, ForbiddenCatalog, MinimalEvidence, SplitForm};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matroid::BinaryMatroid;

pub const CATALOG_ENV: &str = "MATROIDFORGE_CATALOG";

const EMBEDDED: &[(&str, &str)] = &[
    ("K4.json", include_str!("../catalog/K4.json")),
    ("K5.json", include_str!("../catalog/K5.json")),
    ("K33.json", include_str!("../catalog/K33.json")),
    ("G1.json", include_str!("../catalog/G1.json")),
    ("G2.json", include_str!("../catalog/G2.json")),
    ("G3.json", include_str!("../catalog/G3.json")),
    ("G4.json", include_str!("../catalog/G4.json")),
    ("G5.json", include_str!("../catalog/G5.json")),
    ("G6.json", include_str!("../catalog/G6.json")),
    ("G7.json", include_str!("../catalog/G7.json")),
    ("G8.json", include_str!("../catalog/G8.json")),
    ("G9.json", include_str!("../catalog/G9.json")),
    ("G10.json", include_str!("../catalog/G10.json")),
    ("G11.json", include_str!("../catalog/G11.json")),
    ("G12.json", include_str!("../catalog/G12.json")),
    ("G13.json", include_str!("../catalog/G13.json")),
    ("G14.json", include_str!("../catalog/G14.json")),
    ("G15.json", include_str!("../catalog/G15.json")),
    ("G16.json", include_str!("../catalog/G16.json")),
    ("G17.json", include_str!("../catalog/G17.json")),
    ("F7.bm", include_str!("../catalog/F7.bm")),
    ("F7star.bm", include_str!("../catalog/F7star.bm")),
    ("MK4.bm", include_str!("../catalog/MK4.bm")),
    ("MK5.bm", include_str!("../catalog/MK5.bm")),
    ("MK5star.bm", include_str!("../catalog/MK5star.bm")),
    ("MK33.bm", include_str!("../catalog/MK33.bm")),
    ("MK33star.bm", include_str!("../catalog/MK33star.bm")),
];

/// A claimed isomorphism: `form` applied to the marked pair gives `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub form: SplitForm,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryData {
    Graph(Graph),
    Matroid(BinaryMatroid),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub data: EntryData,
    pub vertex_names: Option<Vec<String>>,
    pub marked_pair: Option<(String, String)>,
    pub claimed: Option<Claim>,
    pub note: Option<String>,
}

/// On-disk graph format.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_names: Option<Vec<String>>,
    pub edges: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed: Option<Claim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn graph(&self) -> Result<Graph> {
        let edges = self
            .edges
            .iter()
            .map(|(u, v, label)| Edge {
                u: *u,
                v: *v,
                label: label.clone(),
            })
            .collect();
        Graph::new(self.vertices, edges)
    }
}

/// Parse a graph JSON document on its own.
pub fn parse_graph(text: &str) -> Result<Graph> {
    GraphFile::parse(text)?.graph()
}

impl CatalogEntry {
    fn from_file(file_name: &str, text: &str) -> Result<Self> {
        let (stem, ext) = file_name.rsplit_once('.').unwrap_or((file_name, ""));
        let invalid = |reason: String| Error::TranscriptionInvalid {
            name: stem.to_string(),
            reason,
        };
        match ext {
            "bm" => Ok(Self {
                name: stem.to_string(),
                data: EntryData::Matroid(BinaryMatroid::parse_bm(text).map_err(|e| invalid(e.to_string()))?),
                vertex_names: None,
                marked_pair: None,
                claimed: None,
                note: None,
            }),
            "json" => {
                let file = GraphFile::parse(text).map_err(|e| invalid(e.to_string()))?;
                let graph = file.graph().map_err(|e| invalid(e.to_string()))?;
                if let Some(names) = &file.vertex_names {
                    if names.len() != graph.vertex_count() {
                        return Err(invalid(format!(
                            "{} vertex names for {} vertices",
                            names.len(),
                            graph.vertex_count()
                        )));
                    }
                }
                let marked_pair = match (file.x, file.y) {
                    (Some(x), Some(y)) => Some((x, y)),
                    (None, None) => None,
                    _ => return Err(invalid("x and y must be given together".into())),
                };
                Ok(Self {
                    name: file.name.unwrap_or_else(|| stem.to_string()),
                    data: EntryData::Graph(graph),
                    vertex_names: file.vertex_names,
                    marked_pair,
                    claimed: file.claimed,
                    note: file.note,
                })
            }
            _ => Err(invalid(format!("unsupported catalog file {file_name:?}"))),
        }
    }

    pub fn graph(&self) -> Option<&Graph> {
        match &self.data {
            EntryData::Graph(g) => Some(g),
            EntryData::Matroid(_) => None,
        }
    }

    pub fn matroid(&self) -> Result<BinaryMatroid> {
        match &self.data {
            EntryData::Graph(g) => g.cycle_matroid(),
            EntryData::Matroid(m) => Ok(m.clone()),
        }
    }

    /// Check the marked pair and, when a claim is present, that the claimed
    /// form of the marked pair is isomorphic to the target and that the
    /// minimality search succeeds for that target.
    pub fn validate(&self) -> Result<Option<MinimalEvidence>> {
        let invalid = |reason: String| Error::TranscriptionInvalid {
            name: self.name.clone(),
            reason,
        };
        let m = self.matroid()?;
        if let Some((x, y)) = &self.marked_pair {
            if x == y {
                return Err(invalid(format!("marked pair repeats {x:?}")));
            }
            for l in [x, y] {
                if !m.contains(l) {
                    return Err(invalid(format!("marked element {l:?} is not an edge")));
                }
            }
        }
        let Some(claim) = &self.claimed else {
            return Ok(None);
        };
        let Some((x, y)) = &self.marked_pair else {
            return Err(invalid("a claim needs a marked pair".into()));
        };
        let target = ForbiddenCatalog::standard()
            .matroid(&claim.target)
            .map_err(|_| invalid(format!("unknown target {:?}", claim.target)))?;
        if check_form(&m, x, y, claim.form, target)?.is_none() {
            return Err(invalid(format!(
                "{} on ({x}, {y}) is not isomorphic to {}",
                claim.form, claim.target
            )));
        }
        match verify_minimal(&m, target) {
            Ok(Some(evidence)) => Ok(Some(evidence)),
            Ok(None) => Err(invalid(format!("not minimal with respect to {}", claim.target))),
            Err(Error::SeriesPairPresent(a, b)) => Err(invalid(format!("{a} and {b} are in series"))),
            Err(e) => Err(e),
        }
    }
}

/// Sort key putting `G2` before `G10`.
fn natural_key(name: &str) -> (String, u64, String) {
    let digits_at = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (head, tail) = name.split_at(digits_at);
    let end = tail.find(|c: char| !c.is_ascii_digit()).unwrap_or(tail.len());
    let number = tail[..end].parse().unwrap_or(0);
    (head.to_string(), number, tail[end..].to_string())
}

fn build(files: Vec<(String, String)>) -> Result<Vec<CatalogEntry>> {
    let mut entries = files
        .iter()
        .map(|(name, text)| CatalogEntry::from_file(name, text))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| {
        let kind = matches!(e.data, EntryData::Matroid(_));
        (kind, natural_key(&e.name))
    });
    Ok(entries)
}

/// Catalog entries without validating claims.
pub fn load_catalog_unchecked() -> Result<Vec<CatalogEntry>> {
    match std::env::var_os(CATALOG_ENV) {
        Some(dir) => read_dir_entries(Path::new(&dir)),
        None => build(EMBEDDED.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect()),
    }
}

/// Catalog entries with every claim validated.
pub fn load_catalog() -> Result<Vec<CatalogEntry>> {
    let entries = load_catalog_unchecked()?;
    for e in &entries {
        e.validate()?;
    }
    Ok(entries)
}

/// Load and validate the catalog stored in `dir`.
pub fn load_catalog_from(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let entries = read_dir_entries(dir)?;
    for e in &entries {
        e.validate()?;
    }
    Ok(entries)
}

fn read_dir_entries(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let mut files = Vec::new();
    for item in std::fs::read_dir(dir)? {
        let path = item?.path();
        let ext = path.extension().and_then(|e| e.to_str());
        if matches!(ext, Some("json") | Some("bm")) {
            let name = path
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or_default()
                .to_string();
            files.push((name, std::fs::read_to_string(&path)?));
        }
    }
    build(files)
}

pub fn find<'a>(entries: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.name == name)
}
