//! Seeded random instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::geom::disc::DiscQuery;
use crate::geom::exact::{orient, rat, ExactPoint};
use crate::geom::halfplane::{HalfPlaneQuery, Side};
use crate::hypercore::{Hypergraph, Range};

/// Closure of `m` random nonempty subsets of `0..n`.
pub fn random_itype<R: Rng>(rng: &mut R, n: usize, m: usize) -> Hypergraph {
    let ranges = (0..m)
        .map(|_| {
            let mut members: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            if members.is_empty() {
                members.push(rng.gen_range(0..n));
            }
            Range::new(members).expect("nonempty")
        })
        .collect();
    Hypergraph::itype_closure(n, ranges).expect("members below n")
}

/// Integer points with distinct x-coordinates and no three collinear.
pub fn random_general_position<R: Rng>(rng: &mut R, n: usize) -> Vec<ExactPoint> {
    let span = 10 * n as i64 + 10;
    let mut xs: Vec<i64> = (0..span).collect();
    'retry: loop {
        xs.shuffle(rng);
        let pts: Vec<ExactPoint> = xs[..n]
            .iter()
            .map(|&x| ExactPoint::from_ints(x, rng.gen_range(-span..=span)))
            .collect();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if orient(&pts[a], &pts[b], &pts[c]).is_eq() {
                        continue 'retry;
                    }
                }
            }
        }
        return pts;
    }
}

/// Half-planes bounded by lines through two random lattice points of the
/// instance's bounding box, with a random side.
pub fn random_halfplane_queries<R: Rng>(rng: &mut R, points: &[ExactPoint], m: usize) -> Vec<HalfPlaneQuery> {
    let span = 10 * points.len() as i64 + 10;
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let p = ExactPoint::from_ints(rng.gen_range(0..span), rng.gen_range(-span..=span));
        let q = ExactPoint::from_ints(rng.gen_range(0..span), rng.gen_range(-span..=span));
        let side = if rng.gen_bool(0.5) { Side::Below } else { Side::Above };
        if let Ok(h) = HalfPlaneQuery::through(&p, &q, side) {
            out.push(h);
        }
    }
    out
}

const DISC_GRID: i64 = 1000;

/// Distinct points with coordinates in `[0, extent]` on a `1/1000` grid.
pub fn random_disc_points<R: Rng>(rng: &mut R, n: usize, extent: i64) -> Vec<ExactPoint> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (x, y) = (rng.gen_range(0..=extent * DISC_GRID), rng.gen_range(0..=extent * DISC_GRID));
        if seen.insert((x, y)) {
            out.push(ExactPoint::new(rat(x, DISC_GRID), rat(y, DISC_GRID)));
        }
    }
    out
}

/// Disc centers in `[-1/2, extent + 1/2]^2`.
pub fn random_disc_queries<R: Rng>(rng: &mut R, m: usize, extent: i64) -> Vec<DiscQuery> {
    let lo = -DISC_GRID / 2;
    let hi = extent * DISC_GRID + DISC_GRID / 2;
    (0..m)
        .map(|_| {
            DiscQuery::new(ExactPoint::new(
                rat(rng.gen_range(lo..=hi), DISC_GRID),
                rat(rng.gen_range(lo..=hi), DISC_GRID),
            ))
        })
        .collect()
}
