//! Exhaustive verification campaigns and their machine-readable reports.
//!
//! A campaign runs a fixed list of properties over a corpus of inputs
//! (enumerated graphs or catalog entries). Inputs are independent, so they
//! are spread over threads and merged back in corpus order; the report is
//! identical whatever the thread count.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    find_isomorphism, is_cographic, is_eulerian, is_graphic, verify_minimal, CircuitData, Forbidden, ForbiddenCatalog,
    SplitForm,
};
use crate::catalog::{load_catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::graph::{enumerate_connected_graphs, Graph};
use crate::matroid::BinaryMatroid;
use crate::par::{map_ordered, Execution};
use crate::splitting::{element_split, element_split_circuits_oracle, fresh_label, split};

pub const REPORT_SCHEMA: u32 = 1;

/// Largest graphs accepted by the theorem campaign.
pub const THEOREM_MAX_VERTICES: usize = 7;
pub const THEOREM_MAX_EDGES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// Nothing was checked.
    #[serde(rename = "PASS-vacuous")]
    PassVacuous,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::PassVacuous => "PASS-vacuous",
        }
    }

    pub fn is_pass(self) -> bool {
        self != Verdict::Fail
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub passed: usize,
}

/// One failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub property: String,
    pub witness: Value,
}

/// Outcome of a campaign. `passed + failures.len() == checked`, and the
/// verdict is `FAIL` exactly when `failures` is nonempty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub campaign: String,
    pub corpus_spec: BTreeMap<String, Value>,
    pub inputs: usize,
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
    pub properties: BTreeMap<String, Tally>,
    pub verdict: Verdict,
    /// Seconds; only present when timing was requested, since it breaks
    /// byte-for-byte reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl VerificationReport {
    fn assemble(campaign: &str, corpus_spec: Value, inputs: usize, outcome: Outcome) -> Self {
        let mut failures = outcome.failures;
        failures.sort_by(|a, b| (&a.input, &a.property).cmp(&(&b.input, &b.property)));
        let checked: usize = outcome.tallies.values().map(|t| t.checked).sum();
        let passed: usize = outcome.tallies.values().map(|t| t.passed).sum();
        let verdict = if !failures.is_empty() {
            Verdict::Fail
        } else if checked == 0 {
            Verdict::PassVacuous
        } else {
            Verdict::Pass
        };
        let corpus_spec = match corpus_spec {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Self {
            schema: REPORT_SCHEMA,
            campaign: campaign.to_string(),
            corpus_spec,
            inputs,
            checked,
            passed,
            failures,
            properties: outcome.tallies.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            verdict,
            wall_time: None,
        }
    }

    /// Pretty JSON with object keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// One line per property, then failures, then the verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "campaign {}", self.campaign);
        let spec: Vec<String> = self.corpus_spec.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "corpus {} inputs ({})", self.inputs, spec.join(", "));
        let width = self.properties.keys().map(String::len).max().unwrap_or(0);
        for (name, t) in &self.properties {
            let status = if t.passed < t.checked {
                "FAIL"
            } else if t.checked == 0 {
                "PASS-vacuous"
            } else {
                "PASS"
            };
            let _ = writeln!(out, "{status:<12} {name:<width$} {}/{}", t.passed, t.checked);
        }
        for f in &self.failures {
            let _ = writeln!(out, "failure {} {} {}", f.property, f.input, f.witness);
        }
        let _ = writeln!(
            out,
            "checked {} passed {} failed {}",
            self.checked,
            self.passed,
            self.failures.len()
        );
        if let Some(t) = self.wall_time {
            let _ = writeln!(out, "wall_time {t:.3}s");
        }
        let _ = writeln!(out, "verdict {}", self.verdict.as_str());
        out
    }
}

/// How a campaign runs: thread layout, progress callback, timing.
#[derive(Clone, Copy, Default)]
pub struct RunOptions<'a> {
    pub execution: Execution,
    pub jobs: Option<usize>,
    /// Called with `(done, total)` after each input.
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
    pub timing: bool,
}

/// Per-input results, merged in corpus order.
#[derive(Default)]
struct Outcome {
    tallies: BTreeMap<&'static str, Tally>,
    failures: Vec<Failure>,
}

impl Outcome {
    fn with_properties(names: &[&'static str]) -> Self {
        Self {
            tallies: names.iter().map(|&n| (n, Tally::default())).collect(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, input: &str, property: &'static str, ok: bool, witness: impl FnOnce() -> Value) {
        let t = self.tallies.entry(property).or_default();
        t.checked += 1;
        if ok {
            t.passed += 1;
        } else {
            self.failures.push(Failure {
                input: input.to_string(),
                property: property.to_string(),
                witness: witness(),
            });
        }
    }

    /// A check that could not be evaluated counts as failed.
    fn record_result(&mut self, input: &str, property: &'static str, result: Result<(bool, Value)>) {
        match result {
            Ok((ok, witness)) => self.record(input, property, ok, || witness),
            Err(e) => self.record(input, property, false, || json!({ "error": e.to_string() })),
        }
    }

    fn merge(&mut self, other: Outcome) {
        for (k, t) in other.tallies {
            let mine = self.tallies.entry(k).or_default();
            mine.checked += t.checked;
            mine.passed += t.passed;
        }
        self.failures.extend(other.failures);
    }
}

fn run<T: Sync>(
    campaign: &str,
    spec: Value,
    properties: &[&'static str],
    items: &[T],
    options: &RunOptions<'_>,
    check: impl Fn(&T) -> Outcome + Sync + Send,
) -> VerificationReport {
    let start = Instant::now();
    let done = AtomicUsize::new(0);
    let total = items.len();
    let outcomes = map_ordered(items, options.execution, options.jobs, |item| {
        let out = check(item);
        let n = done.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(p) = options.progress {
            p(n, total);
        }
        out
    });
    let mut merged = Outcome::with_properties(properties);
    for o in outcomes {
        merged.merge(o);
    }
    let mut report = VerificationReport::assemble(campaign, spec, total, merged);
    if options.timing {
        report.wall_time = Some(start.elapsed().as_secs_f64());
    }
    report
}

/// Stable identifier of an enumerated graph: vertex count and edge list.
pub fn graph_id(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|e| format!("{}-{}", e.u, e.v)).collect();
    format!("{}v[{}]", g.vertex_count(), edges.join(","))
}

fn pair_mask(m: &BinaryMatroid, x: &str, y: &str) -> Result<u64> {
    m.mask_of([x, y])
}

fn iso_to(derived: &BinaryMatroid, f: &Forbidden) -> bool {
    let target = &f.pattern.data;
    if derived.len() != target.n || derived.rank() != target.rank {
        return false;
    }
    find_isomorphism(&CircuitData::of(derived), target).is_some()
}

// Splitting properties over an enumerated corpus

const SPLIT_EQUALS_DELETION: &str = "split-equals-element-split-minus-new";
const CONTRACTION_RECOVERS: &str = "contracting-new-element-recovers-matroid";
const RANK_PLUS_ONE: &str = "element-split-raises-rank-by-one";
const COCIRCUITS_PERSIST: &str = "cocircuits-persist";
const COCIRCUIT_PAIR: &str = "cocircuit-pair-gives-coloop-and-pair-cocircuit";
const COCIRCUIT_FREE_PAIR: &str = "cocircuit-free-pair-gives-triple-cocircuit";
const DELETE_X_CONTRACT_Y: &str = "delete-x-contract-y-matches-delete-x";
const ADJACENT_GRAPHIC: &str = "adjacent-pair-stays-graphic";
const NOT_EULERIAN: &str = "element-split-not-eulerian";
const ORACLE_MATCHES: &str = "circuit-oracle-matches-matrix";

const SC_NO_LOOPS: &str = "split-contraction-target-has-no-loops-or-coloops";
const SC_PAIR_NOT_PARALLEL: &str = "split-contraction-target-pair-not-parallel";
const SC_PARALLELS_MEET_PAIR: &str = "split-contraction-target-parallels-meet-pair";
const SC_AT_MOST_ONE_PARALLEL: &str = "split-double-contraction-target-has-at-most-one-parallel-pair";
const SC_ODD_CIRCUITS: &str = "k33-split-contraction-odd-circuits-meet-pair";
const SC_ODD_COCIRCUITS: &str = "k5-split-contraction-odd-cocircuits-meet-pair";

const LEMMA_PROPERTIES: &[&str] = &[
    SPLIT_EQUALS_DELETION,
    CONTRACTION_RECOVERS,
    RANK_PLUS_ONE,
    COCIRCUITS_PERSIST,
    COCIRCUIT_PAIR,
    COCIRCUIT_FREE_PAIR,
    DELETE_X_CONTRACT_Y,
    ADJACENT_GRAPHIC,
    NOT_EULERIAN,
    ORACLE_MATCHES,
    SC_NO_LOOPS,
    SC_PAIR_NOT_PARALLEL,
    SC_PARALLELS_MEET_PAIR,
    SC_AT_MOST_ONE_PARALLEL,
    SC_ODD_CIRCUITS,
    SC_ODD_COCIRCUITS,
];

/// Corpus and knobs for [`verify_lemmas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCampaign {
    pub max_vertices: usize,
    /// Edge cap for simple graphs.
    pub max_simple_edges: usize,
    /// Edge cap for multigraphs.
    pub max_multi_edges: usize,
    pub max_multiplicity: usize,
    /// Flip one bit of the new row in every element split, to confirm the
    /// suite can fail.
    pub inject_mutant: bool,
}

impl Default for LemmaCampaign {
    fn default() -> Self {
        Self {
            max_vertices: 5,
            max_simple_edges: 10,
            max_multi_edges: 8,
            max_multiplicity: 2,
            inject_mutant: false,
        }
    }
}

impl LemmaCampaign {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        Self {
            max_vertices,
            ..Self::default()
        }
    }

    /// Simple graphs up to the simple edge cap, plus multigraphs up to the
    /// multigraph caps, without repeats.
    pub fn corpus(&self) -> Result<Vec<Graph>> {
        let mut graphs = enumerate_connected_graphs(self.max_vertices, self.max_simple_edges, 1)?;
        let mut seen: HashSet<Graph> = graphs.iter().cloned().collect();
        for g in enumerate_connected_graphs(self.max_vertices, self.max_multi_edges, self.max_multiplicity)? {
            if seen.insert(g.clone()) {
                graphs.push(g);
            }
        }
        graphs.sort_by_key(|g| (g.vertex_count(), g.edge_count()));
        Ok(graphs)
    }

    fn spec(&self) -> Value {
        json!({
            "max_vertices": self.max_vertices,
            "max_simple_edges": self.max_simple_edges,
            "max_multi_edges": self.max_multi_edges,
            "max_multiplicity": self.max_multiplicity,
            "inject_mutant": self.inject_mutant,
        })
    }
}

/// Element split by `{x, y}`, optionally corrupted by one flipped bit in
/// the new row (at the first element outside the pair, else at `x`).
fn build_element_split(m: &BinaryMatroid, x: &str, y: &str, a: &str, mutant: bool) -> Result<BinaryMatroid> {
    let es = element_split(m, &[x, y], a)?;
    if !mutant {
        return Ok(es);
    }
    let pair = pair_mask(m, x, y)?;
    let outside = m.full_mask() & !pair;
    let bit = if outside != 0 {
        outside.trailing_zeros()
    } else {
        m.index_of(x)? as u32
    };
    let mut rows = es.rep().row_words().to_vec();
    let last = rows.len() - 1;
    rows[last] ^= 1 << bit;
    BinaryMatroid::new(es.labels().to_vec(), crate::gf2::GF2Matrix::from_rows(es.len(), rows)?)
}

/// Run the splitting properties over every connected graph of the corpus
/// and every ordered pair of distinct edges.
pub fn verify_lemmas(campaign: &LemmaCampaign, options: &RunOptions<'_>) -> Result<VerificationReport> {
    let corpus = campaign.corpus()?;
    let mutant = campaign.inject_mutant;
    Ok(run(
        "verify-lemmas",
        campaign.spec(),
        LEMMA_PROPERTIES,
        &corpus,
        options,
        |g| lemma_checks(g, mutant),
    ))
}

fn lemma_checks(g: &Graph, mutant: bool) -> Outcome {
    let mut out = Outcome::default();
    let id = graph_id(g);
    let m = match g.cycle_matroid() {
        Ok(m) => m,
        Err(e) => {
            out.record(&id, SPLIT_EQUALS_DELETION, false, || json!({ "error": e.to_string() }));
            return out;
        }
    };
    let circuits = m.circuits();
    let cocircuits = m.cocircuits();
    let (circuits, cocircuits) = match (circuits, cocircuits) {
        (Ok(c), Ok(d)) => (c, d),
        (Err(e), _) | (_, Err(e)) => {
            out.record(&id, ORACLE_MATCHES, false, || json!({ "error": e.to_string() }));
            return out;
        }
    };
    let a = fresh_label(&m);
    for (i, x) in m.labels().iter().enumerate() {
        for (j, y) in m.labels().iter().enumerate() {
            if i == j {
                continue;
            }
            let input = format!("{id} x={x} y={y}");
            let es = match build_element_split(&m, x, y, &a, mutant) {
                Ok(es) => es,
                Err(e) => {
                    out.record(
                        &input,
                        SPLIT_EQUALS_DELETION,
                        false,
                        || json!({ "error": e.to_string() }),
                    );
                    continue;
                }
            };
            pair_checks(g, &m, &circuits, &cocircuits, x, y, &a, &es, &input, &mut out);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn pair_checks(
    g: &Graph,
    m: &BinaryMatroid,
    circuits: &crate::CircuitFamily,
    cocircuits: &crate::CircuitFamily,
    x: &str,
    y: &str,
    a: &str,
    es: &BinaryMatroid,
    input: &str,
    out: &mut Outcome,
) {
    out.record_result(
        input,
        SPLIT_EQUALS_DELETION,
        (|| {
            let ok = es.delete([a])?.same_matroid(&split(m, x, y)?);
            Ok((ok, json!({ "element_split": es.to_bm_string() })))
        })(),
    );
    out.record_result(
        input,
        CONTRACTION_RECOVERS,
        es.contract([a])
            .map(|c| (c.same_matroid(m), json!({ "contracted": c.to_bm_string() }))),
    );
    out.record(
        input,
        RANK_PLUS_ONE,
        es.rank() == m.rank() + 1,
        || json!({ "rank": m.rank(), "element_split_rank": es.rank() }),
    );

    match es.cocircuits() {
        Ok(after) => {
            let after_set: HashSet<u64> = after.masks().iter().copied().collect();
            let lost: Vec<u64> = cocircuits
                .masks()
                .iter()
                .copied()
                .filter(|c| !after_set.contains(c))
                .collect();
            out.record(
                input,
                COCIRCUITS_PERSIST,
                lost.is_empty(),
                || json!({ "lost": lost.iter().map(|&c| m.labels_of(c)).collect::<Vec<_>>() }),
            );
            let pair = pair_mask(m, x, y).unwrap_or(0);
            let a_bit = 1u64 << m.len();
            if cocircuits.masks().contains(&pair) {
                let coloop = after_set.contains(&a_bit);
                let pair_after = after_set.contains(&pair);
                out.record(
                    input,
                    COCIRCUIT_PAIR,
                    coloop && pair_after,
                    || json!({ "new_is_coloop": coloop, "pair_is_cocircuit_after": pair_after }),
                );
            }
            if !cocircuits.masks().iter().any(|&c| c & !pair == 0) {
                out.record(
                    input,
                    COCIRCUIT_FREE_PAIR,
                    after_set.contains(&(pair | a_bit)),
                    || json!({ "cocircuits_after": after.label_sets() }),
                );
            }
        }
        Err(e) => out.record(input, COCIRCUITS_PERSIST, false, || json!({ "error": e.to_string() })),
    }

    out.record_result(
        input,
        DELETE_X_CONTRACT_Y,
        (|| {
            let left = es.delete([x])?.contract([y])?;
            let right = m.delete([x])?;
            let data = (CircuitData::of(&left), CircuitData::of(&right));
            Ok((
                find_isomorphism(&data.0, &data.1).is_some(),
                json!({ "minor": left.to_bm_string() }),
            ))
        })(),
    );

    if let (Some(ex), Some(ey)) = (g.edge(x), g.edge(y)) {
        let adjacent = [ex.u, ex.v].iter().any(|v| *v == ey.u || *v == ey.v);
        if adjacent {
            out.record_result(
                input,
                ADJACENT_GRAPHIC,
                is_graphic(es).map(|c| (c.holds, json!({ "obstruction": c.obstruction }))),
            );
        }
    }

    out.record_result(input, NOT_EULERIAN, is_eulerian(es).map(|e| (!e, Value::Null)));

    out.record_result(
        input,
        ORACLE_MATCHES,
        (|| {
            let oracle = element_split_circuits_oracle(circuits, &[x, y], a)?;
            let actual = es.circuits()?;
            let ok = oracle == actual;
            let witness = if ok {
                Value::Null
            } else {
                let o = oracle.label_sets();
                let t = actual.label_sets();
                json!({
                    "oracle_only": o.difference(&t).collect::<Vec<_>>(),
                    "matrix_only": t.difference(&o).collect::<Vec<_>>(),
                })
            };
            Ok((ok, witness))
        })(),
    );

    if let Err(e) = split_contraction_checks(m, es, x, y, a, input, out) {
        out.record(input, SC_NO_LOOPS, false, || json!({ "error": e.to_string() }));
    }
}

/// Structural consequences of `M_{x,y}/x` or `M_{x,y}/{x,y}` being one of
/// the four split targets. Only pairs meeting that hypothesis are counted.
fn split_contraction_checks(
    m: &BinaryMatroid,
    es: &BinaryMatroid,
    x: &str,
    y: &str,
    a: &str,
    input: &str,
    out: &mut Outcome,
) -> Result<()> {
    let catalog = ForbiddenCatalog::standard();
    let sizes: Vec<usize> = catalog.split_targets().map(|f| f.matroid.len()).collect();
    let forms = [
        (SplitForm::DeleteNewContractX, vec![x]),
        (SplitForm::DeleteNewContractXY, vec![x, y]),
    ];
    for (form, contracted) in forms {
        if !sizes.contains(&form.size(m.len())) {
            continue;
        }
        let derived = es.delete([a])?.contract(&contracted)?;
        for f in catalog.split_targets() {
            if iso_to(&derived, f) {
                structure_under_split_contraction(m, x, y, form, f.name, input, out)?;
            }
        }
    }
    Ok(())
}

fn parallel_pairs_missing(m: &BinaryMatroid, x: &str, y: &str) -> Vec<(String, String)> {
    m.parallel_pairs()
        .into_iter()
        .filter(|(p, q)| ![p, q].iter().any(|e| e.as_str() == x || e.as_str() == y))
        .collect()
}

fn are_parallel(m: &BinaryMatroid, x: &str, y: &str) -> bool {
    m.parallel_pairs()
        .iter()
        .any(|(p, q)| (p == x && q == y) || (p == y && q == x))
}

fn odd_sets_missing_pair(family: &crate::CircuitFamily, pair: u64) -> Vec<u64> {
    family
        .masks()
        .iter()
        .copied()
        .filter(|c| c.count_ones() % 2 == 1 && c & pair == 0)
        .collect()
}

fn structure_under_split_contraction(
    m: &BinaryMatroid,
    x: &str,
    y: &str,
    form: SplitForm,
    target: &str,
    input: &str,
    out: &mut Outcome,
) -> Result<()> {
    let hyp = json!({ "form": form, "target": target });
    let (loops, coloops) = (m.loops(), m.coloops());
    out.record(
        input,
        SC_NO_LOOPS,
        loops.is_empty() && coloops.is_empty(),
        || json!({ "hypothesis": hyp, "loops": loops, "coloops": coloops }),
    );
    out.record(
        input,
        SC_PAIR_NOT_PARALLEL,
        !are_parallel(m, x, y),
        || json!({ "hypothesis": hyp }),
    );
    let missing = parallel_pairs_missing(m, x, y);
    out.record(
        input,
        SC_PARALLELS_MEET_PAIR,
        missing.is_empty(),
        || json!({ "hypothesis": hyp, "pairs": missing }),
    );
    if form == SplitForm::DeleteNewContractXY {
        let pairs = m.parallel_pairs();
        out.record(
            input,
            SC_AT_MOST_ONE_PARALLEL,
            pairs.len() <= 1,
            || json!({ "hypothesis": hyp, "pairs": pairs }),
        );
    }
    let pair = pair_mask(m, x, y)?;
    if target == "M(K3,3)" {
        let bad = odd_sets_missing_pair(&m.circuits()?, pair);
        out.record(
            input,
            SC_ODD_CIRCUITS,
            bad.is_empty(),
            || json!({ "hypothesis": hyp, "circuits": bad.iter().map(|&c| m.labels_of(c)).collect::<Vec<_>>() }),
        );
    }
    if target == "M(K5)" {
        let bad = odd_sets_missing_pair(&m.cocircuits()?, pair);
        out.record(
            input,
            SC_ODD_COCIRCUITS,
            bad.is_empty(),
            || json!({ "hypothesis": hyp, "cocircuits": bad.iter().map(|&c| m.labels_of(c)).collect::<Vec<_>>() }),
        );
    }
    Ok(())
}

// Minimal graphs of the catalog

const CLAIM_HOLDS: &str = "claimed-isomorphism-holds";
const SEARCH_REPRODUCES: &str = "minimality-search-reproduces-target";
const NO_SERIES: &str = "no-series-pairs";
const K4_MINOR: &str = "has-k4-minor-with-verified-witness";
const MIN_NO_LOOPS: &str = "minimal-has-no-loops-or-coloops";
const MIN_PARALLELS_MEET_PAIR: &str = "minimal-parallels-meet-pair";
const MIN_PAIR_NOT_PARALLEL: &str = "minimal-pair-not-parallel";
const MIN_WHOLE: &str = "whole-split-target-gives-simple-graph-with-parity-conditions";
const MIN_CONTRACT_X_SIMPLE: &str = "contract-x-cographic-dual-target-gives-simple-graph";
const MIN_CONTRACT_X_ONE_PARALLEL: &str = "contract-x-f7-or-k5-target-gives-one-parallel-pair";
const MIN_CONTRACT_XY: &str = "contract-xy-target-gives-simple-graph-without-short-circuits";
const MIN_NOT_F7_K5: &str = "element-split-never-f7-or-k5";

const MINIMAL_PROPERTIES: &[&str] = &[
    CLAIM_HOLDS,
    SEARCH_REPRODUCES,
    NO_SERIES,
    K4_MINOR,
    MIN_NO_LOOPS,
    MIN_PARALLELS_MEET_PAIR,
    MIN_PAIR_NOT_PARALLEL,
    MIN_WHOLE,
    MIN_CONTRACT_X_SIMPLE,
    MIN_CONTRACT_X_ONE_PARALLEL,
    MIN_CONTRACT_XY,
    MIN_NOT_F7_K5,
    SC_NO_LOOPS,
    SC_PAIR_NOT_PARALLEL,
    SC_PARALLELS_MEET_PAIR,
    SC_AT_MOST_ONE_PARALLEL,
    SC_ODD_CIRCUITS,
    SC_ODD_COCIRCUITS,
];

/// Check every catalog graph carrying a claim: the claim itself, the
/// minimality search, absence of series pairs, an `M(K4)` minor, and the
/// structural facts every realising pair must satisfy.
pub fn verify_minimal_catalog(options: &RunOptions<'_>) -> Result<VerificationReport> {
    let entries: Vec<CatalogEntry> = load_catalog()?
        .into_iter()
        .filter(|e| e.graph().is_some() && e.claimed.is_some())
        .collect();
    let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    let spec = json!({ "catalog": names });
    Ok(run(
        "verify-minimal",
        spec,
        MINIMAL_PROPERTIES,
        &entries,
        options,
        minimal_checks,
    ))
}

fn minimal_checks(entry: &CatalogEntry) -> Outcome {
    let mut out = Outcome::default();
    if let Err(e) = minimal_checks_inner(entry, &mut out) {
        out.record(&entry.name, CLAIM_HOLDS, false, || json!({ "error": e.to_string() }));
    }
    out
}

fn minimal_checks_inner(entry: &CatalogEntry, out: &mut Outcome) -> Result<()> {
    let catalog = ForbiddenCatalog::standard();
    let id = entry.name.as_str();
    let m = entry.matroid()?;
    let claim = entry.claimed.as_ref().expect("filtered on claims");
    let target = catalog.matroid(&claim.target)?;

    out.record_result(
        id,
        CLAIM_HOLDS,
        entry.validate().map(|ev| (ev.is_some(), json!({ "evidence": ev }))),
    );
    let series = m.series_pairs();
    out.record(id, NO_SERIES, series.is_empty(), || json!({ "series_pairs": series }));
    if series.is_empty() {
        out.record_result(
            id,
            SEARCH_REPRODUCES,
            verify_minimal(&m, target).map(|ev| (ev.is_some(), json!({ "evidence": ev }))),
        );
    }
    let k4 = catalog.matroid("M(K4)")?;
    out.record_result(
        id,
        K4_MINOR,
        (|| {
            let w = crate::analysis::has_minor(&m, k4)?;
            let ok = match &w {
                Some(w) => w.verify(&m, k4)?,
                None => false,
            };
            Ok((ok, json!({ "witness": w })))
        })(),
    );

    // Every (pair, form, target) realisation, then the structure it forces.
    let (loops, coloops) = (m.loops(), m.coloops());
    out.record(
        id,
        MIN_NO_LOOPS,
        loops.is_empty() && coloops.is_empty(),
        || json!({ "loops": loops, "coloops": coloops }),
    );
    let a = fresh_label(&m);
    for (i, x) in m.labels().iter().enumerate() {
        for (j, y) in m.labels().iter().enumerate() {
            if i == j {
                continue;
            }
            let input = format!("{id} x={x} y={y}");
            let es = element_split(&m, &[x, y], &a)?;
            for form in SplitForm::ALL {
                let size = form.size(m.len());
                let derived = match form {
                    SplitForm::DeleteNewContractX => es.delete([&a])?.contract([x])?,
                    SplitForm::DeleteNewContractXY => es.delete([&a])?.contract([x, y])?,
                    SplitForm::Whole => es.clone(),
                    SplitForm::ContractX => es.contract([x])?,
                    SplitForm::ContractXY => es.contract([x, y])?,
                };
                debug_assert_eq!(derived.len(), size);
                for f in catalog.split_targets() {
                    if form == SplitForm::Whole && (f.name == "F7" || f.name == "M(K5)") {
                        let hit = iso_to(&derived, f);
                        out.record(&input, MIN_NOT_F7_K5, !hit, || json!({ "target": f.name }));
                        if hit {
                            continue;
                        }
                    }
                    if !iso_to(&derived, f) {
                        continue;
                    }
                    realised_structure(&m, x, y, form, f.name, &input, out)?;
                }
            }
        }
    }
    Ok(())
}

fn realised_structure(
    m: &BinaryMatroid,
    x: &str,
    y: &str,
    form: SplitForm,
    target: &str,
    input: &str,
    out: &mut Outcome,
) -> Result<()> {
    let hyp = json!({ "form": form, "target": target });
    let missing = parallel_pairs_missing(m, x, y);
    out.record(
        input,
        MIN_PARALLELS_MEET_PAIR,
        missing.is_empty(),
        || json!({ "hypothesis": hyp, "pairs": missing }),
    );
    out.record(
        input,
        MIN_PAIR_NOT_PARALLEL,
        !are_parallel(m, x, y),
        || json!({ "hypothesis": hyp }),
    );

    let pair = pair_mask(m, x, y)?;
    let circuits = m.circuits()?;
    let simple = m.loops().is_empty() && m.parallel_pairs().is_empty();
    let both = |c: u64| c & pair == pair;
    let short_with_both = |sizes: &[u32]| -> Vec<Vec<String>> {
        circuits
            .masks()
            .iter()
            .filter(|&&c| both(c) && sizes.contains(&c.count_ones()))
            .map(|&c| m.labels_of(c))
            .collect()
    };
    let dual_target = target == "F7*" || target == "M(K3,3)";
    match form {
        SplitForm::Whole if dual_target => {
            let bad: Vec<Vec<String>> = circuits
                .masks()
                .iter()
                .filter(|&&c| {
                    let odd = c.count_ones() % 2 == 1;
                    let meets = (c & pair).count_ones();
                    (odd && meets == 2) || (!odd && meets == 1)
                })
                .map(|&c| m.labels_of(c))
                .collect();
            out.record(
                input,
                MIN_WHOLE,
                simple && bad.is_empty(),
                || json!({ "hypothesis": hyp, "simple": simple, "circuits": bad }),
            );
        }
        SplitForm::ContractX if dual_target => {
            let bad = short_with_both(&[3]);
            out.record(
                input,
                MIN_CONTRACT_X_SIMPLE,
                simple && bad.is_empty(),
                || json!({ "hypothesis": hyp, "simple": simple, "circuits": bad }),
            );
        }
        SplitForm::ContractX => {
            let pairs = m.parallel_pairs();
            let bad = short_with_both(&[3]);
            out.record(
                input,
                MIN_CONTRACT_X_ONE_PARALLEL,
                pairs.len() == 1 && bad.is_empty(),
                || json!({ "hypothesis": hyp, "parallel_pairs": pairs, "circuits": bad }),
            );
        }
        SplitForm::ContractXY => {
            let bad = short_with_both(&[3, 4]);
            out.record(
                input,
                MIN_CONTRACT_XY,
                simple && bad.is_empty(),
                || json!({ "hypothesis": hyp, "simple": simple, "circuits": bad }),
            );
        }
        SplitForm::DeleteNewContractX | SplitForm::DeleteNewContractXY => {
            structure_under_split_contraction(m, x, y, form, target, input, out)?;
        }
        SplitForm::Whole => {}
    }
    Ok(())
}

// The characterisation over enumerated graphs

const THEOREM: &str = "cographic-for-every-pair-iff-no-k4-minor";
const K4_WITNESS: &str = "k4-minor-witness-verifies";
const OBSTRUCTION_WITNESS: &str = "cographic-obstruction-witness-verifies";

const THEOREM_PROPERTIES: &[&str] = &[THEOREM, K4_WITNESS, OBSTRUCTION_WITNESS];

/// Corpus caps for [`verify_main_theorem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremCampaign {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_multiplicity: usize,
}

impl Default for TheoremCampaign {
    fn default() -> Self {
        Self {
            max_vertices: 6,
            max_edges: 10,
            max_multiplicity: 2,
        }
    }
}

impl TheoremCampaign {
    pub fn corpus(&self) -> Result<Vec<Graph>> {
        if self.max_vertices > THEOREM_MAX_VERTICES || self.max_edges > THEOREM_MAX_EDGES {
            return Err(Error::CapExceeded(format!(
                "theorem campaign supports at most {THEOREM_MAX_VERTICES} vertices and {THEOREM_MAX_EDGES} edges, \
                 {} and {} requested",
                self.max_vertices, self.max_edges
            )));
        }
        enumerate_connected_graphs(self.max_vertices, self.max_edges, self.max_multiplicity)
    }

    fn spec(&self) -> Value {
        json!({
            "max_vertices": self.max_vertices,
            "max_edges": self.max_edges,
            "max_multiplicity": self.max_multiplicity,
        })
    }
}

/// For every graph, compare "every element split by a pair is cographic"
/// with "no `M(K4)` minor".
pub fn verify_main_theorem(campaign: &TheoremCampaign, options: &RunOptions<'_>) -> Result<VerificationReport> {
    let corpus = campaign.corpus()?;
    Ok(run(
        "verify-theorem",
        campaign.spec(),
        THEOREM_PROPERTIES,
        &corpus,
        options,
        theorem_checks,
    ))
}

/// Whether every element split of `m` by a pair is cographic, with the
/// first pair (in position order) where it is not.
pub fn first_noncographic_pair(m: &BinaryMatroid) -> Result<Option<(String, String, crate::analysis::Obstruction)>> {
    let a = fresh_label(m);
    let labels = m.labels();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let es = element_split(m, &[&labels[i], &labels[j]], &a)?;
            let c = is_cographic(&es)?;
            if let Some(ob) = c.obstruction {
                return Ok(Some((labels[i].clone(), labels[j].clone(), ob)));
            }
        }
    }
    Ok(None)
}

fn theorem_checks(g: &Graph) -> Outcome {
    let mut out = Outcome::default();
    let id = graph_id(g);
    let result = (|| -> Result<()> {
        let catalog = ForbiddenCatalog::standard();
        let k4 = catalog.matroid("M(K4)")?;
        let m = g.cycle_matroid()?;
        let witness = crate::analysis::has_minor(&m, k4)?;
        let violation = first_noncographic_pair(&m)?;
        let p = violation.is_none();
        let q = witness.is_none();
        out.record(&id, THEOREM, p == q, || {
            json!({
                "all_pairs_cographic": p,
                "k4_minor_free": q,
                "violating_pair": violation.as_ref().map(|(x, y, ob)| json!({ "x": x, "y": y, "obstruction": ob })),
                "k4_witness": witness,
            })
        });
        if let Some(w) = &witness {
            let ok = w.verify(&m, k4)?;
            out.record(&id, K4_WITNESS, ok, || json!({ "witness": w }));
        }
        if let Some((x, y, ob)) = &violation {
            let es = element_split(&m, &[x, y], &fresh_label(&m))?;
            let ok = ob.witness.verify(&es, catalog.matroid(&ob.name)?)?;
            out.record(
                &id,
                OBSTRUCTION_WITNESS,
                ok,
                || json!({ "x": x, "y": y, "obstruction": ob }),
            );
        }
        Ok(())
    })();
    if let Err(e) = result {
        out.record(&id, THEOREM, false, || json!({ "error": e.to_string() }));
    }
    out
}
