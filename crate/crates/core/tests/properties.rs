use proptest::prelude::*;

use ohs::arena::opt_hitting_set;
use ohs::hypercore::{Coloring, Hypergraph, Range};
use ohs::umcolor::{is_vertex_ranking, rank_by_separator, Graph, SeparatorStrategy};

fn ranges(n: usize) -> impl Strategy<Value = Vec<Range>> {
    prop::collection::vec(
        prop::collection::btree_set(0..n, 1..=n).prop_map(|s| Range::new(s.into_iter().collect()).unwrap()),
        0..8,
    )
}

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..=6).prop_flat_map(|n| ranges(n).prop_map(move |rs| Hypergraph::new(n, rs).unwrap()))
}

proptest! {
    #[test]
    fn unique_max_iff_reversed_unique_min(
        (h, colors) in hypergraph().prop_flat_map(|h| {
            let n = h.n();
            (Just(h), prop::collection::vec(1u32..=4, n))
        })
    ) {
        let c = Coloring::new(colors);
        prop_assert_eq!(h.is_unique_max(&c), h.is_unique_min(&c.reversed()));
    }

    #[test]
    fn um_chromatic_monotone_under_deletion(h in hypergraph(), drop in any::<prop::sample::Index>()) {
        let (full, witness) = h.um_chromatic_exact(h.n()).unwrap();
        prop_assert!(h.is_unique_max(&witness));
        if !h.ranges().is_empty() {
            let mut rs = h.ranges().to_vec();
            rs.remove(drop.index(rs.len()));
            let smaller = Hypergraph::new(h.n(), rs).unwrap();
            prop_assert!(smaller.um_chromatic_exact(h.n()).unwrap().0 <= full);
        }
    }

    #[test]
    fn opt_hits_everything_and_is_no_larger_than_greedy(h in hypergraph()) {
        let opt = opt_hitting_set(h.ranges(), h.n()).unwrap();
        prop_assert!(h.ranges().iter().all(|r| opt.stabs(r)));
        // one point per range is always feasible
        prop_assert!(opt.len() <= h.ranges().len());
    }

    #[test]
    fn separator_rankings_are_valid(n in 1usize..12, edges in prop::collection::vec((0usize..12, 0usize..12), 0..20)) {
        let edges: Vec<_> = edges.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
        let g = Graph::from_edges(n, edges).unwrap();
        for s in [SeparatorStrategy::Centroid, SeparatorStrategy::GreedyDegree, SeparatorStrategy::ExactMinimum] {
            let r = rank_by_separator(&g, s).unwrap();
            prop_assert!(is_vertex_ranking(&g, &r.coloring));
        }
    }
}
