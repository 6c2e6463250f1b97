use std::collections::BTreeSet;

use proptest::prelude::*;
use rubyeval_core::exas::{
    extract_features, similarity, vector_distance, ExasError, Feature, FeatureIndex, FeatureVector,
};
use rubyeval_core::minilang::parse_source;
use rubyeval_core::pdg::{build_pdg, DependenceGraph, Edge, EdgeKind, NodeKind, PdgNode};

fn node(id: u32, label: &str) -> PdgNode {
    PdgNode {
        id,
        label: label.into(),
        kind: if id == 0 { NodeKind::Entry } else { NodeKind::Statement },
        defs: BTreeSet::new(),
        uses: BTreeSet::new(),
    }
}

/// Entry plus the given labels; entry controls every node.
fn handmade(labels: &[&str], edges: &[(u32, u32, EdgeKind)]) -> DependenceGraph {
    let mut nodes = vec![node(0, "entry")];
    let mut all = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        nodes.push(node(i as u32 + 1, l));
        all.push(Edge { from: 0, to: i as u32 + 1, kind: EdgeKind::Control });
    }
    all.extend(edges.iter().map(|&(from, to, kind)| Edge { from, to, kind }));
    DependenceGraph::from_parts(nodes, all)
}

fn pdg(src: &str) -> DependenceGraph {
    build_pdg(&parse_source(src).tree.unwrap()).unwrap()
}

#[test]
fn single_node_has_two_features() {
    let v = extract_features(&handmade(&["L"], &[]), 3);
    let expected: FeatureVector = [(Feature::path(["L"]), 1), (Feature::pq("L", 0, 0), 1)].into_iter().collect();
    assert_eq!(v, expected);
}

#[test]
fn chain_of_two() {
    let g = handmade(&["A", "B"], &[(1, 2, EdgeKind::Data)]);
    let expected: FeatureVector = [
        (Feature::path(["A"]), 1),
        (Feature::path(["B"]), 1),
        (Feature::path(["A", "B"]), 1),
        (Feature::pq("A", 0, 1), 1),
        (Feature::pq("B", 1, 0), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(extract_features(&g, 3), expected);
    assert_eq!(extract_features(&g, 1).get(&Feature::path(["A", "B"])), 0);
}

#[test]
fn parallel_edges_count_in_degrees_but_not_paths() {
    let g = handmade(&["A", "B"], &[(1, 2, EdgeKind::Data), (1, 2, EdgeKind::Control)]);
    let v = extract_features(&g, 2);
    assert_eq!(v.get(&Feature::path(["A", "B"])), 1);
    assert_eq!(v.get(&Feature::pq("A", 0, 2)), 1);
}

#[test]
fn repeated_labels_accumulate() {
    let g = handmade(&["A", "A", "B"], &[(1, 3, EdgeKind::Data), (2, 3, EdgeKind::Data)]);
    let v = extract_features(&g, 2);
    assert_eq!(v.get(&Feature::path(["A"])), 2);
    assert_eq!(v.get(&Feature::path(["A", "B"])), 2);
    assert_eq!(v.get(&Feature::pq("A", 0, 1)), 2);
    assert_eq!(v.get(&Feature::pq("B", 2, 0)), 1);
    assert_eq!(v.mass(), 2 + 1 + 2 + 2 + 1);
}

#[test]
fn branch_fragment_features() {
    let v = extract_features(&pdg("void foo(int i) { int j; if (i < 2) j = 1; else j = 2; }"), 1);
    for label in ["inputInt", "intSmall2", "intEqual1", "intEqual2", "declareInt"] {
        assert_eq!(v.get(&Feature::path([label])), 1, "{label}");
    }
    assert_eq!(v.get(&Feature::pq("inputInt", 0, 1)), 1);
    assert_eq!(v.get(&Feature::pq("intSmall2", 1, 2)), 1);
    assert_eq!(v.get(&Feature::pq("intEqual1", 2, 0)), 1);
    assert_eq!(v.len(), 10);
}

#[test]
fn longer_paths_follow_edges() {
    let v = extract_features(&pdg("void foo(int i) { int j; if (i < 2) j = 1; else j = 2; }"), 3);
    assert_eq!(v.get(&Feature::path(["inputInt", "intSmall2", "intEqual1"])), 1);
    assert_eq!(v.get(&Feature::path(["declareInt", "intEqual2"])), 1);
    assert_eq!(v.get(&Feature::path(["intEqual1", "intSmall2"])), 0);
}

#[test]
fn example_pair_distance() {
    let v1 = extract_features(&pdg("void foo(int i) { int j; if (i < 2) j = 1; else j = 2; }"), 1);
    let v2 = extract_features(&pdg("void foo(int i) { int j; if (i < 2) j = i; j = 2; }"), 1);
    assert_eq!(vector_distance(&v1, &v2), Ok((8, 20)));
    assert!((similarity(&v1, &v2).unwrap() - 0.6).abs() < 1e-12);
}

#[test]
fn distance_examples() {
    let f = Feature::pq("x", 0, 0);
    let v3: FeatureVector = [(f.clone(), 3)].into_iter().collect();
    let v1: FeatureVector = [(f, 1)].into_iter().collect();
    assert_eq!(vector_distance(&v3, &v1), Ok((2, 4)));
    assert_eq!(similarity(&v3, &v1), Ok(0.5));
    assert_eq!(vector_distance(&v3, &v3), Ok((0, 6)));
    assert_eq!(similarity(&v3, &v3), Ok(1.0));
    let other: FeatureVector = [(Feature::path(["y"]), 2)].into_iter().collect();
    assert_eq!(similarity(&v3, &other), Ok(0.0));
    assert_eq!(vector_distance(&FeatureVector::new(), &FeatureVector::new()), Err(ExasError::EmptyVectors));
}

#[test]
fn index_is_a_shared_dense_layout() {
    let a: FeatureVector = [(Feature::path(["a"]), 2), (Feature::path(["b"]), 1)].into_iter().collect();
    let b: FeatureVector = [(Feature::path(["b"]), 4), (Feature::path(["c"]), 1)].into_iter().collect();
    let index = FeatureIndex::union([&a, &b]);
    assert_eq!(index.len(), 3);
    assert_eq!(index.dense(&a), vec![2, 1, 0]);
    assert_eq!(index.dense(&b), vec![0, 4, 1]);
    assert_eq!(Feature::pq("L", 1, 2).to_string(), "L-1-2");
    assert_eq!(Feature::path(["A", "B"]).to_string(), "A > B");
}

fn sparse_vector() -> impl Strategy<Value = FeatureVector> {
    prop::collection::vec((0u8..6, 0u64..5), 0..8)
        .prop_map(|entries| entries.into_iter().map(|(f, c)| (Feature::path([format!("f{f}")]), c)).collect())
}

fn random_graph() -> impl Strategy<Value = (Vec<String>, Vec<(u32, u32)>)> {
    (1usize..7).prop_flat_map(|n| {
        let labels = prop::collection::vec(prop::sample::select(vec!["A", "B", "C"]), n)
            .prop_map(|ls| ls.into_iter().map(String::from).collect::<Vec<_>>());
        let edges = prop::collection::vec((1..=n as u32, 1..=n as u32), 0..10);
        (labels, edges)
    })
}

fn assemble(labels: &[String], edges: &[(u32, u32)], order: &[usize]) -> DependenceGraph {
    // order[k] = new position of original node k+1
    let refs: Vec<&str> = {
        let mut placed = vec![""; labels.len()];
        for (k, l) in labels.iter().enumerate() {
            placed[order[k]] = l.as_str();
        }
        placed
    };
    let mapped: Vec<(u32, u32, EdgeKind)> = edges
        .iter()
        .map(|&(a, b)| (order[a as usize - 1] as u32 + 1, order[b as usize - 1] as u32 + 1, EdgeKind::Data))
        .collect();
    handmade(&refs, &mapped)
}

proptest! {
    #[test]
    fn distance_is_a_metric(a in sparse_vector(), b in sparse_vector(), c in sparse_vector()) {
        let d = |x: &FeatureVector, y: &FeatureVector| vector_distance(x, y).map(|r| r.0).unwrap_or(0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        if let Ok(s) = similarity(&a, &b) {
            prop_assert!((0.0..=1.0).contains(&s));
            prop_assert_eq!(s == 1.0, a == b);
        }
    }

    #[test]
    fn relabeling_node_ids_keeps_features((labels, edges) in random_graph(), seed in any::<u64>()) {
        let n = labels.len();
        let identity: Vec<usize> = (0..n).collect();
        let mut shuffled = identity.clone();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        let g1 = assemble(&labels, &edges, &identity);
        let g2 = assemble(&labels, &edges, &shuffled);
        prop_assert_eq!(extract_features(&g1, 3), extract_features(&g2, 3));
    }

    #[test]
    fn adding_an_edge_keeps_one_paths((labels, edges) in random_graph(), extra in (1u32..7, 1u32..7)) {
        let n = labels.len() as u32;
        prop_assume!(extra.0 <= n && extra.1 <= n);
        let order: Vec<usize> = (0..labels.len()).collect();
        let before = extract_features(&assemble(&labels, &edges, &order), 3);
        let mut more = edges.clone();
        more.push(extra);
        let after = extract_features(&assemble(&labels, &more, &order), 3);
        for (f, c) in before.iter() {
            if let Feature::Path(p) = f {
                prop_assert!(after.get(f) >= c, "{:?}", p);
            }
        }
    }
}
