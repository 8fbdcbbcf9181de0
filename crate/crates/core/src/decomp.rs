//! Decomposition forests: turning any deterministic online hitting-set
//! algorithm into a unique-min (and hence unique-max) coloring.
//!
//! Each node carries a range `r_v` and the point `x_v` the black box uses to
//! stab `r_v` when fed the ranges on the root-to-`v` path. The children of
//! `v` are the maximal ranges inside `r_v` minus the path's points. Coloring
//! each labelled point by its node depth, and every other point by `rho`,
//! yields a unique-min coloring.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::{Coloring, Hypergraph, PointId, Range};
use crate::online::OnlineAlgorithm;
use crate::umcolor::Graph;

/// A range family able to list its `S`-maximal ranges.
pub trait RangeFamily {
    fn n(&self) -> usize;

    /// Ranges `r ⊆ s` not strictly contained in another range `r' ⊆ s`, in
    /// lexicographic order.
    fn s_maximal(&self, s: &BTreeSet<PointId>) -> Vec<Range>;
}

impl RangeFamily for Hypergraph {
    fn n(&self) -> usize {
        Hypergraph::n(self)
    }

    fn s_maximal(&self, s: &BTreeSet<PointId>) -> Vec<Range> {
        s_maximal_ranges(self, s)
    }
}

/// The connected-subgraph family of a graph, never materialized: the
/// `S`-maximal ranges are the components of `G[S]`.
#[derive(Debug, Clone, Copy)]
pub struct ConnectedSubgraphs<'a>(pub &'a Graph);

impl RangeFamily for ConnectedSubgraphs<'_> {
    fn n(&self) -> usize {
        self.0.n()
    }

    fn s_maximal(&self, s: &BTreeSet<PointId>) -> Vec<Range> {
        let mut alive = vec![false; self.0.n()];
        for &x in s {
            alive[x] = true;
        }
        let mut out: Vec<Range> = self
            .0
            .components_within(&alive)
            .into_iter()
            .map(|c| Range::new(c).expect("components are nonempty"))
            .collect();
        out.sort();
        out
    }
}

pub fn s_maximal_ranges(h: &Hypergraph, s: &BTreeSet<PointId>) -> Vec<Range> {
    let inside: Vec<&Range> = h.ranges().iter().filter(|r| r.is_subset_of_set(s)).collect();
    let mut out: Vec<Range> = inside
        .iter()
        .filter(|r| {
            !inside
                .iter()
                .any(|q| q.len() > r.len() && r.is_subset(q))
        })
        .map(|r| (*r).clone())
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestNode {
    pub range: Range,
    pub point: PointId,
    pub depth: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Nodes are stored flat; `roots` and `children` index into `nodes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionForest {
    nodes: Vec<ForestNode>,
    roots: Vec<usize>,
}

#[derive(Serialize)]
struct NestedNode {
    range: Vec<PointId>,
    point: PointId,
    depth: usize,
    children: Vec<NestedNode>,
}

impl Serialize for DecompositionForest {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            roots: Vec<NestedNode>,
        }
        Doc {
            roots: self.roots.iter().map(|&r| self.nested(r)).collect(),
        }
        .serialize(ser)
    }
}

fn replay<A: OnlineAlgorithm<Query = Range>>(alg: &mut A, chain: &[Range]) -> Result<PointId> {
    alg.reset();
    let mut last = None;
    for r in chain {
        let added = alg.feed(r)?;
        match added.as_slice() {
            [] => {
                return Err(Error::Invariant(format!(
                    "range {:?} of a decreasing chain was already stabbed on arrival",
                    r.members()
                )))
            }
            [x] if r.contains(*x) => last = Some(*x),
            [x] => {
                return Err(Error::Algorithm(format!(
                    "{} stabbed {:?} with outside point {x}",
                    alg.name(),
                    r.members()
                )))
            }
            many => {
                return Err(Error::Algorithm(format!(
                    "{} added {} points for one range; forests need one point per range",
                    alg.name(),
                    many.len()
                )))
            }
        }
    }
    last.ok_or_else(|| Error::InvalidInput("empty chain".into()))
}

/// Builds the decomposition forest of `family` by replaying `alg`.
///
/// The family should be I-type; overlapping siblings (which cannot occur in
/// an I-type family) are reported as [`Error::NotIType`].
pub fn build_forest<F, A>(family: &F, alg: &mut A) -> Result<DecompositionForest>
where
    F: RangeFamily + ?Sized,
    A: OnlineAlgorithm<Query = Range>,
{
    let ground: BTreeSet<PointId> = (0..family.n()).collect();
    let mut forest = DecompositionForest {
        nodes: Vec::new(),
        roots: Vec::new(),
    };
    // (parent index, chain of ranges down to the new node)
    let mut pending: Vec<(Option<usize>, Vec<Range>)> = Vec::new();
    let roots = family.s_maximal(&ground);
    check_disjoint(&roots)?;
    for r in roots.into_iter().rev() {
        pending.push((None, vec![r]));
    }
    while let Some((parent, chain)) = pending.pop() {
        let point = replay(alg, &chain)?;
        let idx = forest.nodes.len();
        let range = chain.last().expect("chain is nonempty").clone();
        forest.nodes.push(ForestNode {
            range: range.clone(),
            point,
            depth: chain.len() - 1,
            parent,
            children: Vec::new(),
        });
        match parent {
            Some(p) => forest.nodes[p].children.push(idx),
            None => forest.roots.push(idx),
        }
        let mut rest: BTreeSet<PointId> = range.members().iter().copied().collect();
        for x in forest.path_points(idx) {
            rest.remove(&x);
        }
        let children = family.s_maximal(&rest);
        check_disjoint(&children)?;
        for child in children.into_iter().rev() {
            let mut next = chain.clone();
            next.push(child);
            pending.push((Some(idx), next));
        }
        if forest.nodes.len() > family.n() {
            return Err(Error::Invariant(
                "forest has more nodes than points; labels cannot be distinct".into(),
            ));
        }
    }
    Ok(forest)
}

fn check_disjoint(ranges: &[Range]) -> Result<()> {
    for (i, a) in ranges.iter().enumerate() {
        for b in &ranges[i + 1..] {
            if a.intersects(b) {
                return Err(Error::NotIType(format!(
                    "maximal ranges {:?} and {:?} overlap",
                    a.members(),
                    b.members()
                )));
            }
        }
    }
    Ok(())
}

impl DecompositionForest {
    pub fn nodes(&self) -> &[ForestNode] {
        &self.nodes
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn max_depth(&self) -> Option<usize> {
        self.nodes.iter().map(|n| n.depth).max()
    }

    /// `max depth + 1`, a lower bound on the black box's competitive ratio.
    pub fn measured_rho(&self) -> usize {
        self.max_depth().map_or(0, |d| d + 1)
    }

    /// Node indices from the root down to `v`.
    pub fn path(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    pub fn path_points(&self, v: usize) -> Vec<PointId> {
        self.path(v).into_iter().map(|u| self.nodes[u].point).collect()
    }

    pub fn path_ranges(&self, v: usize) -> Vec<Range> {
        self.path(v)
            .into_iter()
            .map(|u| self.nodes[u].range.clone())
            .collect()
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        loop {
            if a == v {
                return true;
            }
            match self.nodes[v].parent {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    fn nested(&self, v: usize) -> NestedNode {
        let node = &self.nodes[v];
        NestedNode {
            range: node.range.members().to_vec(),
            point: node.point,
            depth: node.depth,
            children: node.children.iter().map(|&c| self.nested(c)).collect(),
        }
    }

    /// Child ranges strictly shrink, each child avoids the labels above it,
    /// and replaying every root-to-node chain stabs each range on arrival
    /// with the recorded label last.
    pub fn check_chain<A: OnlineAlgorithm<Query = Range>>(&self, alg: &mut A) -> Result<()> {
        for (v, node) in self.nodes.iter().enumerate() {
            if !node.range.contains(node.point) {
                return Err(Error::Invariant(format!("label {} outside its range", node.point)));
            }
            if let Some(p) = node.parent {
                let parent = &self.nodes[p];
                if !(node.range.is_subset(&parent.range) && node.range.len() < parent.range.len()) {
                    return Err(Error::Invariant(format!(
                        "child range {:?} is not strictly inside {:?}",
                        node.range.members(),
                        parent.range.members()
                    )));
                }
                if self.path_points(p).iter().any(|&x| node.range.contains(x)) {
                    return Err(Error::Invariant("child range contains an ancestor label".into()));
                }
            }
            let x = replay(alg, &self.path_ranges(v))?;
            if x != node.point {
                return Err(Error::Invariant(format!(
                    "replay stabbed with {x}, recorded label is {}",
                    node.point
                )));
            }
        }
        Ok(())
    }

    pub fn check_siblings_disjoint(&self) -> Result<()> {
        let groups = std::iter::once(&self.roots).chain(self.nodes.iter().map(|n| &n.children));
        for group in groups {
            let ranges: Vec<Range> = group.iter().map(|&c| self.nodes[c].range.clone()).collect();
            check_disjoint(&ranges).map_err(|e| Error::Invariant(e.to_string()))?;
        }
        Ok(())
    }

    /// Ranges of nodes that are neither ancestor nor descendant of each other
    /// are disjoint.
    pub fn check_incomparable_disjoint(&self) -> Result<()> {
        for u in 0..self.nodes.len() {
            for v in u + 1..self.nodes.len() {
                if self.is_ancestor(u, v) || self.is_ancestor(v, u) {
                    continue;
                }
                if self.nodes[u].range.intersects(&self.nodes[v].range) {
                    return Err(Error::Invariant(format!(
                        "incomparable nodes {u} and {v} have overlapping ranges"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_distinct_labels(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for node in &self.nodes {
            if !seen.insert(node.point) {
                return Err(Error::Invariant(format!("label {} repeats", node.point)));
            }
        }
        Ok(())
    }

    /// All four structural properties at once.
    pub fn check_all<A: OnlineAlgorithm<Query = Range>>(&self, alg: &mut A) -> Result<()> {
        self.check_chain(alg)?;
        self.check_siblings_disjoint()?;
        self.check_incomparable_disjoint()?;
        self.check_distinct_labels()
    }
}

/// `c(x_v) = depth(v)` for labelled points, `rho` for the rest.
pub fn derive_unique_min(n: usize, forest: &DecompositionForest, rho: u32) -> Coloring {
    let mut colors = vec![rho; n];
    for node in forest.nodes() {
        colors[node.point] = node.depth as u32;
    }
    Coloring::new(colors)
}

/// `x -> k - c(x)`.
pub fn to_unique_max(c: &Coloring, k: u32) -> Result<Coloring> {
    c.colors()
        .iter()
        .map(|&color| {
            k.checked_sub(color)
                .ok_or(Error::ColorExceedsBound { color, bound: k })
        })
        .collect::<Result<Vec<_>>>()
        .map(Coloring::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::ColoringAlgorithm;
    use crate::umcolor::rank_path;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn s_maximal_examples() {
        let h = Hypergraph::intervals(4);
        let got = s_maximal_ranges(&h, &set(&[0, 1, 3]));
        assert_eq!(got, vec![Range::interval(0, 1), Range::interval(3, 3)]);
        assert!(s_maximal_ranges(&h, &set(&[])).is_empty());
        assert_eq!(s_maximal_ranges(&h, &set(&[0, 1, 2, 3])), vec![Range::interval(0, 3)]);
    }

    #[test]
    fn two_point_forest() {
        let h = Hypergraph::intervals(2);
        let mut alg = ColoringAlgorithm::new(Coloring::new(vec![1, 2]));
        let f = build_forest(&h, &mut alg).unwrap();
        assert_eq!(f.roots().len(), 1);
        let root = &f.nodes()[f.roots()[0]];
        assert_eq!(root.range, Range::interval(0, 1));
        assert_eq!(root.point, 1);
        assert_eq!(root.children.len(), 1);
        let child = &f.nodes()[root.children[0]];
        assert_eq!((child.range.clone(), child.point), (Range::singleton(0), 0));
        assert_eq!(f.max_depth(), Some(1));
        let c = derive_unique_min(2, &f, 2);
        assert_eq!(c.colors(), &[1, 0]);
        assert_eq!(to_unique_max(&c, 2).unwrap().colors(), &[1, 2]);
        f.check_all(&mut alg).unwrap();
    }

    #[test]
    fn single_range_forest() {
        let h = Hypergraph::new(1, vec![Range::singleton(0)]).unwrap();
        let mut alg = ColoringAlgorithm::new(Coloring::new(vec![1]));
        let f = build_forest(&h, &mut alg).unwrap();
        assert_eq!(f.nodes().len(), 1);
        assert!(f.nodes()[0].children.is_empty());
        assert_eq!(derive_unique_min(1, &f, 1).colors(), &[0]);
    }

    #[test]
    fn interval_forest_with_ruler_black_box() {
        let h = Hypergraph::intervals(4);
        let ruler = rank_path(4).unwrap().coloring;
        let mut alg = ColoringAlgorithm::new(ruler);
        let f = build_forest(&h, &mut alg).unwrap();
        f.check_all(&mut alg).unwrap();
        // Alg_c with a 3-color ranking is 3-competitive, so depth < 3.
        assert!(f.max_depth().unwrap() < 3);
        let rho = f.measured_rho() as u32;
        let umin = derive_unique_min(4, &f, rho);
        assert!(h.is_unique_min(&umin));
        // separable: every point is a label, color rho unused
        assert!(umin.colors().iter().all(|&c| c < rho));
        let umax = to_unique_max(&umin, rho).unwrap();
        assert!(h.is_unique_max(&umax));
    }

    #[test]
    fn to_unique_max_examples() {
        assert_eq!(to_unique_max(&Coloring::new(vec![0, 0]), 0).unwrap().colors(), &[0, 0]);
        assert_eq!(
            to_unique_max(&Coloring::new(vec![3]), 2),
            Err(Error::ColorExceedsBound { color: 3, bound: 2 })
        );
    }

    #[test]
    fn graph_family_matches_materialized() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (2, 5)]).unwrap();
        let h = g.connected_subgraph_hypergraph().unwrap();
        let family = ConnectedSubgraphs(&g);
        for mask in 0u32..64 {
            let s: BTreeSet<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            assert_eq!(family.s_maximal(&s), s_maximal_ranges(&h, &s), "S = {s:?}");
        }
        let coloring = crate::umcolor::rank_exact(&g).unwrap().coloring;
        let mut a = ColoringAlgorithm::new(coloring.clone());
        let mut b = ColoringAlgorithm::new(coloring);
        assert_eq!(build_forest(&family, &mut a).unwrap(), build_forest(&h, &mut b).unwrap());
    }

    #[test]
    fn non_itype_is_rejected() {
        let h = Hypergraph::new(
            3,
            vec![Range::new(vec![0, 1]).unwrap(), Range::new(vec![1, 2]).unwrap()],
        )
        .unwrap();
        let mut alg = ColoringAlgorithm::new(Coloring::new(vec![1, 2, 3]));
        assert!(matches!(build_forest(&h, &mut alg), Err(Error::NotIType(_))));
    }

    #[test]
    fn forest_json_is_nested() {
        let h = Hypergraph::intervals(2);
        let mut alg = ColoringAlgorithm::new(Coloring::new(vec![1, 2]));
        let f = build_forest(&h, &mut alg).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"roots":[{"range":[0,1],"point":1,"depth":0,"children":[{"range":[0],"point":0,"depth":1,"children":[]}]}]}"#
        );
    }
}
