//! Exhaustive enumeration of small instances up to isomorphism.

use std::collections::BTreeSet;

use crate::hypercore::{Hypergraph, Range};
use crate::umcolor::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .filter(|&(x, _)| mask >> x & 1 == 1)
        .fold(0, |m, (_, &y)| m | 1 << y)
}

fn family_is_itype(family: &[u32]) -> bool {
    let set: BTreeSet<u32> = family.iter().copied().collect();
    family.iter().enumerate().all(|(i, &a)| {
        family[i + 1..]
            .iter()
            .all(|&b| a & b == 0 || set.contains(&(a | b)))
    })
}

/// Canonical form of a family of point masks: the lexicographically least
/// sorted image under all point permutations.
fn canonical_family(family: &[u32], perms: &[Vec<usize>]) -> Vec<u32> {
    perms
        .iter()
        .map(|p| {
            let mut img: Vec<u32> = family.iter().map(|&m| permute_mask(m, p)).collect();
            img.sort_unstable();
            img
        })
        .min()
        .unwrap_or_default()
}

fn mask_to_range(mask: u32) -> Range {
    Range::new((0..32).filter(|x| mask >> x & 1 == 1).collect()).expect("nonempty mask")
}

/// One representative per isomorphism class of I-type hypergraphs on
/// exactly `n <= 4` points, including the empty family.
pub fn itype_hypergraphs(n: usize) -> Vec<Hypergraph> {
    assert!(n <= 4, "family enumeration is exhaustive over 2^(2^n - 1) families");
    let subsets: Vec<u32> = (1..1u32 << n).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pick in 0..1u64 << subsets.len() {
        let family: Vec<u32> = (0..subsets.len())
            .filter(|&i| pick >> i & 1 == 1)
            .map(|i| subsets[i])
            .collect();
        if !family_is_itype(&family) {
            continue;
        }
        let canon = canonical_family(&family, &perms);
        if seen.insert(canon.clone()) {
            let ranges = canon.into_iter().map(mask_to_range).collect();
            out.push(Hypergraph::new(n, ranges).expect("masks within n"));
        }
    }
    out
}

/// One representative per isomorphism class of connected graphs on
/// exactly `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "edge-subset enumeration is exhaustive");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pick in 0..1u64 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&i| pick >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::from_edges(n, edges.iter().copied()).expect("valid edges");
        if !g.is_connected() {
            continue;
        }
        let as_masks: Vec<u32> = edges.iter().map(|&(u, v)| 1 << u | 1 << v).collect();
        if seen.insert(canonical_family(&as_masks, &perms)) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        // connected graphs on 1..=5 vertices up to isomorphism: 1, 1, 2, 6, 21
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn small_itype_families() {
        // n = 1: {} and {{0}}
        assert_eq!(itype_hypergraphs(1).len(), 2);
        // n = 2 by hand: {}, {0}, {01}, {0,1}, {0,01}, {0,1,01}
        assert_eq!(itype_hypergraphs(2).len(), 6);
        assert!(itype_hypergraphs(3).iter().all(Hypergraph::is_itype));
        assert!(itype_hypergraphs(4).iter().all(Hypergraph::is_itype));
    }
}
