//! Adaptive adversaries realizing the nested-interval lower bound.

use std::collections::BTreeSet;

use super::game::Adversary;
use crate::error::Result;
use crate::geom::disc::{collinear_points, disc_for_run, DiscInstance, DiscQuery};
use crate::geom::halfplane::{parabola_chord, parabola_points, HalfPlaneInstance, HalfPlaneQuery};
use crate::hypercore::{PointId, Range};

/// Presents `[0, n-1]`, then repeatedly the longest maximal run of the
/// previous interval that avoids the hitting set (leftmost on ties), until
/// no such run exists. Every presented interval contains the next, so one
/// point stabs them all.
pub struct NestedIntervals<Q> {
    n: usize,
    current: Option<(usize, usize)>,
    started: bool,
    map: Box<dyn Fn(usize, usize) -> Q>,
}

impl<Q> NestedIntervals<Q> {
    pub fn with_map(n: usize, map: impl Fn(usize, usize) -> Q + 'static) -> Self {
        NestedIntervals {
            n,
            current: None,
            started: false,
            map: Box::new(map),
        }
    }

    /// The interval most recently presented.
    pub fn current(&self) -> Option<(usize, usize)> {
        self.current
    }
}

impl NestedIntervals<Range> {
    pub fn new(n: usize) -> Self {
        NestedIntervals::with_map(n, Range::interval)
    }
}

/// Longest maximal run of `[lo, hi]` avoiding `hit`, leftmost on ties.
pub fn longest_free_run(lo: usize, hi: usize, hit: &BTreeSet<PointId>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for x in lo..=hi + 1 {
        let free = x <= hi && !hit.contains(&x);
        match (free, start) {
            (true, None) => start = Some(x),
            (false, Some(s)) => {
                let len = x - s;
                if best.is_none_or(|(a, b)| len > b - a + 1) {
                    best = Some((s, x - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    best
}

impl<Q> Adversary for NestedIntervals<Q> {
    type Query = Q;

    fn next_query(&mut self, hitting: &BTreeSet<PointId>) -> Option<Q> {
        let next = if !self.started {
            self.started = true;
            (self.n > 0).then(|| (0, self.n - 1))
        } else {
            self.current.and_then(|(lo, hi)| longest_free_run(lo, hi, hitting))
        };
        self.current = next;
        next.map(|(lo, hi)| (self.map)(lo, hi))
    }
}

/// Points `(i, i^2)` and the nested adversary mapped through chords.
pub fn adversary_parabola(n: usize) -> Result<(HalfPlaneInstance, NestedIntervals<HalfPlaneQuery>)> {
    let inst = HalfPlaneInstance::new(parabola_points(n))?;
    Ok((inst, NestedIntervals::with_map(n, parabola_chord)))
}

/// Collinear points spanning less than one unit and, per interval, a unit
/// disc meeting exactly that interval.
pub fn adversary_collinear_discs(n: usize) -> Result<(DiscInstance, NestedIntervals<DiscQuery>)> {
    let pts = collinear_points(n);
    let inst = DiscInstance::new(pts.clone())?;
    Ok((inst, NestedIntervals::with_map(n, move |lo, hi| disc_for_run(&pts, lo, hi))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::game::run_game;
    use crate::online::{ColoringAlgorithm, LowestPoint};
    use crate::umcolor::rank_path;

    fn log_bound(n: usize) -> usize {
        (usize::BITS - 1 - n.leading_zeros()) as usize + 1
    }

    #[test]
    fn free_runs() {
        let hit: BTreeSet<usize> = [3, 5].into();
        assert_eq!(longest_free_run(0, 7, &hit), Some((0, 2)));
        assert_eq!(longest_free_run(4, 4, &hit), Some((4, 4)));
        assert_eq!(longest_free_run(5, 5, &hit), None);
        // equal runs of length 2: leftmost
        let hit: BTreeSet<usize> = [2].into();
        assert_eq!(longest_free_run(0, 4, &hit), Some((0, 1)));
    }

    #[test]
    fn nested_against_algc() {
        for (n, expect) in [(1, 1), (2, 2), (7, 3), (8, 4)] {
            let mut alg = ColoringAlgorithm::new(rank_path(n).unwrap().coloring);
            let t = run_game(&mut alg, &mut NestedIntervals::new(n)).unwrap();
            assert_eq!(t.alg_size(), expect, "n = {n}");
            assert_eq!(t.events.len(), expect);
        }
    }

    #[test]
    fn nested_against_lowest_point() {
        for n in 1..40 {
            let t = run_game(&mut LowestPoint::new(), &mut NestedIntervals::new(n)).unwrap();
            assert!(t.alg_size() >= log_bound(n));
        }
    }
}
