use std::collections::BTreeSet;

use dbe_core::bisplit::{find_max_partition, has_two_sided_partition, validate_partition};
use dbe_core::canon::canonical_form;
use dbe_core::enumerate::{
    gen_all_connected_graphs, gen_bisplit_graphs, gen_bisplit_with_partitions,
    gen_connected_bipartite_graphs,
};
use dbe_core::graph::named;
use dbe_core::Graph;

fn forms(graphs: &[Graph]) -> Vec<Vec<u8>> {
    graphs.iter().map(|g| canonical_form(g).unwrap()).collect()
}

/// Canonical forms of every connected labelled graph on `n` vertices.
fn brute_force_connected(n: usize) -> BTreeSet<Vec<u8>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            out.insert(canonical_form(&g).unwrap());
        }
    }
    out
}

#[test]
fn augmentation_matches_labelled_filtering() {
    for n in 2..=6 {
        let generated = forms(&gen_all_connected_graphs(n).unwrap());
        let set: BTreeSet<_> = generated.iter().cloned().collect();
        assert_eq!(set.len(), generated.len(), "duplicates at n = {n}");
        assert_eq!(set, brute_force_connected(n), "n = {n}");
    }
}

#[test]
fn bisplit_generator_matches_filtered_universe() {
    for n in 2..=6 {
        let generated = forms(&gen_bisplit_graphs(n).unwrap());
        let set: BTreeSet<_> = generated.iter().cloned().collect();
        assert_eq!(set.len(), generated.len(), "duplicates at n = {n}");
        let filtered: BTreeSet<_> = gen_all_connected_graphs(n)
            .unwrap()
            .iter()
            .filter(|g| has_two_sided_partition(g).unwrap())
            .map(|g| canonical_form(g).unwrap())
            .collect();
        assert_eq!(set, filtered, "n = {n}");
    }
}

#[test]
fn bisplit_streams_have_no_duplicates() {
    for n in 7..=8 {
        let generated = forms(&gen_bisplit_graphs(n).unwrap());
        let set: BTreeSet<_> = generated.iter().collect();
        assert_eq!(set.len(), generated.len(), "n = {n}");
    }
}

#[test]
fn every_generated_graph_is_bisplit() {
    for n in 2..=7 {
        for (g, p) in gen_bisplit_with_partitions(n).unwrap() {
            assert!(validate_partition(&g, &p).unwrap());
            assert!(find_max_partition(&g).unwrap().is_some());
        }
    }
}

#[test]
fn seven_vertices_include_both_exceptional_graphs() {
    let forms: BTreeSet<_> = forms(&gen_bisplit_graphs(7).unwrap()).into_iter().collect();
    for g in [named::suspect_left(), named::suspect_right()] {
        assert!(forms.contains(&canonical_form(&g).unwrap()));
    }
}

#[test]
fn bipartite_stream_is_bipartite_and_connected() {
    for n in 2..=8 {
        let graphs = gen_connected_bipartite_graphs(n).unwrap();
        assert!(graphs.iter().all(|g| g.is_bipartite() && g.is_connected()));
        let f = forms(&graphs);
        assert_eq!(f.iter().collect::<BTreeSet<_>>().len(), f.len());
    }
    // OEIS A005142
    assert_eq!(gen_connected_bipartite_graphs(8).unwrap().len(), 182);
}

#[test]
fn connected_count_at_seven() {
    // OEIS A001349
    assert_eq!(gen_all_connected_graphs(7).unwrap().len(), 853);
}
