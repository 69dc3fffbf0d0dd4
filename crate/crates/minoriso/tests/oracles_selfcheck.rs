//! Sanity checks of the test oracles against known counts.

mod common;

use common::*;
use minoriso::Graph;

#[test]
fn graph_counts_match_known_sequence() {
    // Non-isomorphic graphs and connected graphs on 1..=6 vertices.
    let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
    let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
    assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
}

#[test]
fn clique_minor_oracle() {
    assert!(has_clique_minor(&Graph::complete(5), 5));
    assert!(!has_clique_minor(&Graph::cycle(7), 4));
    assert!(has_clique_minor(&Graph::cycle(7), 3));
    assert!(has_clique_minor(&Graph::petersen(), 5));
    assert!(!has_clique_minor(&Graph::grid(2, 4), 4));
}

#[test]
fn brute_iso_oracle() {
    let c6 = Graph::cycle(6);
    let two = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
    assert!(brute_iso(&c6, &[0; 6], &two, &[0; 6]).is_none());
    let p = [3, 5, 0, 1, 4, 2];
    let map = brute_iso(&c6, &[0; 6], &relabel(&c6, &p), &[0; 6]).unwrap();
    assert!(verify_iso(&c6, &[0; 6], &relabel(&c6, &p), &[0; 6], &map));
}

#[test]
fn group_closure_oracle() {
    assert_eq!(group_closure(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).len(), 8);
    assert_eq!(group_closure(5, &[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]]).len(), 120);
}
