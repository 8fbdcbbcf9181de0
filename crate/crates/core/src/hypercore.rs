//! Explicit hypergraphs, colorings and the structural predicates the rest of
//! the crate is built on.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a point in a ground set `0..n`.
pub type PointId = usize;

/// A nonempty, sorted, duplicate-free set of points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<PointId>", into = "Vec<PointId>")]
pub struct Range(Vec<PointId>);

impl Range {
    /// Builds a range from arbitrary members, sorting and deduplicating them.
    pub fn new(mut members: Vec<PointId>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyRange);
        }
        members.sort_unstable();
        members.dedup();
        Ok(Range(members))
    }

    /// The discrete interval `[lo, hi]`.
    pub fn interval(lo: PointId, hi: PointId) -> Self {
        assert!(lo <= hi, "interval [{lo}, {hi}] is empty");
        Range((lo..=hi).collect())
    }

    pub fn singleton(x: PointId) -> Self {
        Range(vec![x])
    }

    pub fn members(&self) -> &[PointId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> PointId {
        self.0[0]
    }

    pub fn max(&self) -> PointId {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, x: PointId) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn intersects(&self, other: &Range) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset(&self, other: &Range) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn is_subset_of_set(&self, set: &BTreeSet<PointId>) -> bool {
        self.0.iter().all(|x| set.contains(x))
    }

    pub fn is_stabbed_by(&self, set: &BTreeSet<PointId>) -> bool {
        self.0.iter().any(|x| set.contains(x))
    }

    pub fn union(&self, other: &Range) -> Range {
        let mut members = self.0.clone();
        members.extend_from_slice(&other.0);
        members.sort_unstable();
        members.dedup();
        Range(members)
    }

    /// Contiguous in the integer order.
    pub fn is_contiguous(&self) -> bool {
        self.max() - self.min() + 1 == self.len()
    }
}

impl TryFrom<Vec<PointId>> for Range {
    type Error = Error;
    fn try_from(v: Vec<PointId>) -> Result<Self> {
        Range::new(v)
    }
}

impl From<Range> for Vec<PointId> {
    fn from(r: Range) -> Self {
        r.0
    }
}

#[derive(Deserialize)]
struct HypergraphDoc {
    n: usize,
    ranges: Vec<Vec<PointId>>,
}

/// A ground set `0..n` with a duplicate-free list of ranges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphDoc")]
pub struct Hypergraph {
    n: usize,
    ranges: Vec<Range>,
}

impl TryFrom<HypergraphDoc> for Hypergraph {
    type Error = Error;
    fn try_from(doc: HypergraphDoc) -> Result<Self> {
        let ranges = doc
            .ranges
            .into_iter()
            .map(Range::new)
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(doc.n, ranges)
    }
}

impl Hypergraph {
    /// Validates members against `n`. Repeated ranges are collapsed to their
    /// first occurrence; the original order is otherwise kept.
    pub fn new(n: usize, ranges: Vec<Range>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(ranges.len());
        for r in ranges {
            if let Some(&bad) = r.members().iter().find(|&&x| x >= n) {
                return Err(Error::PointOutOfRange { point: bad, n });
            }
            if seen.insert(r.clone()) {
                kept.push(r);
            }
        }
        Ok(Hypergraph { n, ranges: kept })
    }

    /// All `n(n+1)/2` discrete intervals over `n` collinear points.
    pub fn intervals(n: usize) -> Self {
        let mut ranges = Vec::with_capacity(n * (n + 1) / 2);
        for lo in 0..n {
            for hi in lo..n {
                ranges.push(Range::interval(lo, hi));
            }
        }
        Hypergraph { n, ranges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranges(&self) -> &[Range] {
        &self.ranges
    }

    pub fn contains_range(&self, r: &Range) -> bool {
        self.ranges.iter().any(|q| q == r)
    }

    /// Closed under union of intersecting ranges.
    pub fn is_itype(&self) -> bool {
        let index: HashSet<&Range> = self.ranges.iter().collect();
        for (i, a) in self.ranges.iter().enumerate() {
            for b in &self.ranges[i + 1..] {
                if a.intersects(b) && !index.contains(&a.union(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Every singleton `{x}` is a range.
    pub fn is_separable(&self) -> bool {
        let mut present = vec![false; self.n];
        for r in &self.ranges {
            if r.len() == 1 {
                present[r.min()] = true;
            }
        }
        present.into_iter().all(|p| p)
    }

    pub fn is_unique_max(&self, c: &Coloring) -> bool {
        self.ranges.iter().all(|r| c.unique_max(r).is_some())
    }

    pub fn is_unique_min(&self, c: &Coloring) -> bool {
        self.ranges.iter().all(|r| c.unique_min(r).is_some())
    }

    /// Closes a family under intersecting unions, producing an I-type
    /// hypergraph containing all the given ranges.
    pub fn itype_closure(n: usize, ranges: Vec<Range>) -> Result<Self> {
        let mut set: BTreeSet<Range> = BTreeSet::new();
        for r in ranges {
            set.insert(r);
        }
        loop {
            let list: Vec<Range> = set.iter().cloned().collect();
            let mut added = false;
            for (i, a) in list.iter().enumerate() {
                for b in &list[i + 1..] {
                    if a.intersects(b) {
                        let u = a.union(b);
                        if !set.contains(&u) {
                            set.insert(u);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        Hypergraph::new(n, set.into_iter().collect())
    }

    /// Smallest `k <= max_colors` for which a unique-max coloring with `k`
    /// colors exists, together with a witness using colors `1..=k`.
    ///
    /// Exhaustive: points are colored in index order and each range is
    /// checked as soon as its largest member is colored. Any unique-max
    /// coloring relabels order-preservingly onto `1..=k`, so no other palettes
    /// are searched.
    pub fn um_chromatic_exact(&self, max_colors: usize) -> Result<(usize, Coloring)> {
        if self.n > 16 {
            return Err(Error::SizeGuard(format!(
                "um_chromatic_exact supports n <= 16, got {}",
                self.n
            )));
        }
        if self.n == 0 {
            return Ok((0, Coloring::new(Vec::new())));
        }
        let mut closing: Vec<Vec<&Range>> = vec![Vec::new(); self.n];
        for r in &self.ranges {
            closing[r.max()].push(r);
        }
        for k in 1..=max_colors {
            let mut colors = vec![0u32; self.n];
            if um_search(0, k as u32, &mut colors, &closing) {
                return Ok((k, Coloring::new(colors)));
            }
        }
        Err(Error::ExceedsBound(max_colors))
    }
}

fn um_search(p: usize, k: u32, colors: &mut Vec<u32>, closing: &[Vec<&Range>]) -> bool {
    if p == colors.len() {
        return true;
    }
    for color in 1..=k {
        colors[p] = color;
        let ok = closing[p]
            .iter()
            .all(|r| unique_extreme(colors, r.members(), true).is_some());
        if ok && um_search(p + 1, k, colors, closing) {
            return true;
        }
    }
    colors[p] = 0;
    false
}

fn unique_extreme(colors: &[u32], members: &[PointId], max: bool) -> Option<PointId> {
    let mut best = members[0];
    let mut unique = true;
    for &x in &members[1..] {
        let (cx, cb) = (colors[x], colors[best]);
        let better = if max { cx > cb } else { cx < cb };
        if better {
            best = x;
            unique = true;
        } else if cx == cb {
            unique = false;
        }
    }
    unique.then_some(best)
}

/// A color per point. Color values are unconstrained naturals; operations
/// document which convention (starting at 0 or 1) they produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, x: PointId) -> u32 {
        self.colors[x]
    }

    /// Number of distinct colors used.
    pub fn palette_size(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn max_color(&self) -> Option<u32> {
        self.colors.iter().copied().max()
    }

    /// The single point of `r` carrying the maximum color, if unique.
    pub fn unique_max(&self, r: &Range) -> Option<PointId> {
        unique_extreme(&self.colors, r.members(), true)
    }

    pub fn unique_min(&self, r: &Range) -> Option<PointId> {
        unique_extreme(&self.colors, r.members(), false)
    }

    /// `x -> top - c(x)`, where `top` is the largest color in use.
    pub fn reversed(&self) -> Coloring {
        let top = self.max_color().unwrap_or(0);
        Coloring::new(self.colors.iter().map(|&c| top - c).collect())
    }
}

/// A sorted, duplicate-free set of points.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HittingSet {
    points: Vec<PointId>,
}

impl HittingSet {
    pub fn new(points: impl IntoIterator<Item = PointId>) -> Self {
        let set: BTreeSet<PointId> = points.into_iter().collect();
        HittingSet {
            points: set.into_iter().collect(),
        }
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: PointId) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn stabs(&self, r: &Range) -> bool {
        r.members().iter().any(|&x| self.contains(x))
    }
}

/// Every range meets `s`.
pub fn verify_hitting(ranges: &[Range], s: &HittingSet) -> bool {
    ranges.iter().all(|r| s.stabs(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, ranges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(
            n,
            ranges.iter().map(|r| Range::new(r.to_vec()).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn itype_examples() {
        assert!(Hypergraph::intervals(3).is_itype());
        assert!(hg(2, &[&[0], &[1]]).is_itype());
        // Fig. 1 configuration: points a,b,d,e = 0,1,2,3 plus a fifth point 4.
        // {a,d} and {b,d} intersect but {a,b,d} is not a range.
        let fig = hg(5, &[&[0, 2], &[1, 2], &[0], &[1], &[2], &[3], &[4]]);
        assert!(!fig.is_itype());
        for n in 0..=32 {
            assert!(Hypergraph::intervals(n).is_itype(), "n = {n}");
        }
    }

    #[test]
    fn empty_hypergraph_conventions() {
        let empty = Hypergraph::new(0, vec![]).unwrap();
        assert!(empty.is_itype());
        assert!(empty.is_separable());
        let no_ranges = Hypergraph::new(3, vec![]).unwrap();
        assert!(no_ranges.is_itype());
        assert!(!no_ranges.is_separable());
    }

    #[test]
    fn separable_examples() {
        assert!(Hypergraph::intervals(3).is_separable());
        assert!(!hg(2, &[&[0, 1]]).is_separable());
        assert!(hg(2, &[&[0], &[1], &[0, 1]]).is_separable());
    }

    #[test]
    fn unique_max_and_min_examples() {
        let h = Hypergraph::intervals(4);
        assert!(h.is_unique_max(&Coloring::new(vec![1, 2, 1, 3])));
        assert!(h.is_unique_min(&Coloring::new(vec![3, 2, 3, 1])));
        let pair = hg(2, &[&[0, 1]]);
        assert!(!pair.is_unique_max(&Coloring::new(vec![5, 5])));
        assert!(!pair.is_unique_min(&Coloring::new(vec![5, 5])));
        let singles = hg(3, &[&[0], &[1], &[2]]);
        assert!(singles.is_unique_max(&Coloring::new(vec![7, 7, 7])));
        assert!(singles.is_unique_min(&Coloring::new(vec![7, 7, 7])));
    }

    #[test]
    fn hitting_examples() {
        let r01 = Range::new(vec![0, 1]).unwrap();
        assert!(verify_hitting(&[r01], &HittingSet::new([1])));
        let rs = [Range::singleton(0), Range::singleton(2)];
        assert!(!verify_hitting(&rs, &HittingSet::new([0])));
        assert!(verify_hitting(&[], &HittingSet::default()));
    }

    #[test]
    fn um_chromatic_examples() {
        let (k, w) = Hypergraph::intervals(4).um_chromatic_exact(6).unwrap();
        assert_eq!(k, 3);
        assert!(Hypergraph::intervals(4).is_unique_max(&w));
        assert_eq!(w.palette_size(), 3);
        assert_eq!(hg(1, &[&[0]]).um_chromatic_exact(3).unwrap().0, 1);
        assert_eq!(
            Hypergraph::intervals(4).um_chromatic_exact(2),
            Err(Error::ExceedsBound(2))
        );
    }

    #[test]
    fn um_chromatic_does_not_force_first_point_low() {
        // Star-like family where point 0 must carry the top color.
        let h = hg(3, &[&[0, 1], &[0, 2], &[0, 1, 2]]);
        let (k, w) = h.um_chromatic_exact(3).unwrap();
        assert_eq!(k, 2);
        assert_eq!(w.colors(), &[2, 1, 1]);
    }

    #[test]
    fn constructor_rejects_bad_members() {
        assert_eq!(Range::new(vec![]), Err(Error::EmptyRange));
        assert_eq!(
            Hypergraph::new(2, vec![Range::singleton(2)]),
            Err(Error::PointOutOfRange { point: 2, n: 2 })
        );
        let h = Hypergraph::new(2, vec![Range::singleton(1), Range::singleton(1)]).unwrap();
        assert_eq!(h.ranges().len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let h: Hypergraph = serde_json::from_str(r#"{"n":3,"ranges":[[2,0],[1]]}"#).unwrap();
        assert_eq!(h.ranges()[0].members(), &[0, 2]);
        let back: Hypergraph = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":1,"ranges":[[]]}"#).is_err());
        let c: Coloring = serde_json::from_str(r#"{"colors":[1,2]}"#).unwrap();
        assert_eq!(c.palette_size(), 2);
    }
}
