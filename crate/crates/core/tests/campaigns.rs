use matroidforge_core::analysis::{has_minor, ForbiddenCatalog};
use matroidforge_core::campaign::{
    first_noncographic_pair, graph_id, verify_lemmas, verify_main_theorem, LemmaCampaign, RunOptions, TheoremCampaign,
};
use matroidforge_core::graph::Graph;
use matroidforge_core::{Execution, Verdict};

fn sequential() -> RunOptions<'static> {
    RunOptions {
        execution: Execution::Sequential,
        ..RunOptions::default()
    }
}

#[test]
fn every_pair_is_checked_for_unconditional_properties() {
    let campaign = LemmaCampaign::with_max_vertices(4);
    let corpus = campaign.corpus().unwrap();
    let pairs: usize = corpus
        .iter()
        .map(|g| g.edge_count() * g.edge_count().saturating_sub(1))
        .sum();
    let r = verify_lemmas(&campaign, &sequential()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_text());
    assert_eq!(r.inputs, corpus.len());
    for name in [
        "split-equals-element-split-minus-new",
        "contracting-new-element-recovers-matroid",
        "element-split-raises-rank-by-one",
        "cocircuits-persist",
        "delete-x-contract-y-matches-delete-x",
        "element-split-not-eulerian",
        "circuit-oracle-matches-matrix",
    ] {
        assert_eq!(r.properties[name].checked, pairs, "{name}");
    }
}

#[test]
fn corpus_has_no_repeats() {
    let corpus = LemmaCampaign::with_max_vertices(4).corpus().unwrap();
    let ids: std::collections::HashSet<String> = corpus.iter().map(graph_id).collect();
    assert_eq!(ids.len(), corpus.len());
    assert!(corpus.iter().all(Graph::is_connected));
}

#[test]
fn k4_and_trees() {
    let k4 = Graph::complete(4).cycle_matroid().unwrap();
    let pattern = ForbiddenCatalog::standard().matroid("M(K4)").unwrap();
    assert!(first_noncographic_pair(&k4).unwrap().is_some());
    assert!(has_minor(&k4, pattern).unwrap().is_some());

    let tree = Graph::from_pairs(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
    let m = tree.cycle_matroid().unwrap();
    assert!(first_noncographic_pair(&m).unwrap().is_none());
    assert!(has_minor(&m, pattern).unwrap().is_none());
}

#[test]
fn simple_graphs_on_five_vertices() {
    let c = TheoremCampaign {
        max_vertices: 5,
        max_edges: 10,
        max_multiplicity: 1,
    };
    let r = verify_main_theorem(&c, &RunOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_text());
    assert!(r.failures.is_empty());
}
