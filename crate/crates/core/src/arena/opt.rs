//! Exact minimum hitting sets by branch and bound.

use crate::error::{Error, Result};
use crate::hypercore::{HittingSet, PointId, Range};

pub const OPT_MAX_RANGES: usize = 96;
pub const OPT_MAX_POINTS: usize = 4096;

/// Drops duplicates and every range that contains another range; any set
/// hitting the survivors hits them all.
pub fn minimal_ranges(ranges: &[Range]) -> Vec<Range> {
    let mut sorted: Vec<&Range> = ranges.iter().collect();
    sorted.sort_by_key(|r| (r.len(), r.members().to_vec()));
    sorted.dedup();
    let mut kept: Vec<Range> = Vec::new();
    for r in sorted {
        if !kept.iter().any(|k| k.is_subset(r)) {
            kept.push(r.clone());
        }
    }
    kept
}

struct Search<'a> {
    ranges: &'a [Range],
    /// Ranges containing each point.
    by_point: Vec<Vec<usize>>,
    hits: Vec<usize>,
    chosen: Vec<PointId>,
}

impl Search<'_> {
    /// Greedy count of pairwise disjoint unhit ranges restricted to points
    /// `>= from`; a lower bound on the points still needed.
    fn packing_bound(&self, from: PointId) -> usize {
        let mut used = vec![false; self.by_point.len()];
        let mut open: Vec<&Range> = (0..self.ranges.len())
            .filter(|&i| self.hits[i] == 0)
            .map(|i| &self.ranges[i])
            .collect();
        open.sort_by_key(|r| r.members().iter().filter(|&&x| x >= from).count());
        let mut count = 0;
        for r in open {
            let tail = r.members().iter().filter(|&&x| x >= from);
            if tail.clone().all(|&x| !used[x]) {
                for &x in tail {
                    used[x] = true;
                }
                count += 1;
            }
        }
        count
    }

    /// Include-first search over points in increasing order, so the first
    /// solution found is the lexicographically least of size `<= budget`.
    fn dfs(&mut self, x: PointId, budget: usize) -> bool {
        let open: Vec<usize> = (0..self.ranges.len()).filter(|&i| self.hits[i] == 0).collect();
        if open.is_empty() {
            return true;
        }
        if x >= self.by_point.len() || open.iter().any(|&i| Range::max(&self.ranges[i]) < x) {
            return false;
        }
        if self.packing_bound(x) > budget {
            return false;
        }
        let useful = self.by_point[x].iter().any(|&i| self.hits[i] == 0);
        if useful && budget > 0 {
            for &i in &self.by_point[x] {
                self.hits[i] += 1;
            }
            self.chosen.push(x);
            if self.dfs(x + 1, budget - 1) {
                return true;
            }
            self.chosen.pop();
            for &i in &self.by_point[x] {
                self.hits[i] -= 1;
            }
        }
        self.dfs(x + 1, budget)
    }
}

/// A minimum hitting set for `ranges` over points `0..n`, lexicographically
/// least among minimum ones.
pub fn opt_hitting_set(ranges: &[Range], n: usize) -> Result<HittingSet> {
    if let Some(r) = ranges.iter().find(|r| Range::max(r) >= n) {
        return Err(Error::PointOutOfRange { point: Range::max(r), n });
    }
    let minimal = minimal_ranges(ranges);
    if minimal.len() > OPT_MAX_RANGES || n > OPT_MAX_POINTS {
        return Err(Error::SizeGuard(format!(
            "opt_hitting_set supports {OPT_MAX_RANGES} minimal ranges over {OPT_MAX_POINTS} points, got {} over {n}",
            minimal.len()
        )));
    }
    let mut by_point = vec![Vec::new(); n];
    for (i, r) in minimal.iter().enumerate() {
        for &x in r.members() {
            by_point[x].push(i);
        }
    }
    let mut search = Search {
        ranges: &minimal,
        by_point,
        hits: vec![0; minimal.len()],
        chosen: Vec::new(),
    };
    let mut k = search.packing_bound(0);
    loop {
        if search.dfs(0, k) {
            return Ok(HittingSet::new(search.chosen));
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Lex-first combination of the smallest size that hits everything.
    fn exhaustive(ranges: &[Range], n: usize) -> Vec<PointId> {
        fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for x in start..n {
                cur.push(x);
                combos(n, k, x + 1, cur, out);
                cur.pop();
            }
        }
        for k in 0..=n {
            let mut all = Vec::new();
            combos(n, k, 0, &mut Vec::new(), &mut all);
            for c in all {
                if ranges.iter().all(|r| c.iter().any(|&x| r.contains(x))) {
                    return c;
                }
            }
        }
        unreachable!("all points hit every range")
    }

    #[test]
    fn examples() {
        let disjoint = [Range::singleton(0), Range::singleton(2), Range::singleton(4)];
        assert_eq!(opt_hitting_set(&disjoint, 5).unwrap().points(), &[0, 2, 4]);
        let chain: Vec<Range> = (0..6).map(|k| Range::interval(k, 11 - k)).collect();
        assert_eq!(opt_hitting_set(&chain, 12).unwrap().len(), 1);
        assert!(opt_hitting_set(&[], 3).unwrap().is_empty());
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let m = rng.gen_range(1..=10);
            let ranges: Vec<Range> = (0..m)
                .map(|_| {
                    let size = rng.gen_range(1..=n.min(4));
                    Range::new((0..size).map(|_| rng.gen_range(0..n)).collect()).unwrap()
                })
                .collect();
            let got = opt_hitting_set(&ranges, n).unwrap();
            assert_eq!(got.points(), exhaustive(&ranges, n).as_slice(), "{ranges:?}");
        }
    }

    #[test]
    fn superset_removal() {
        let r = [Range::interval(0, 5), Range::interval(2, 3), Range::interval(2, 3)];
        assert_eq!(minimal_ranges(&r), vec![Range::interval(2, 3)]);
    }
}
