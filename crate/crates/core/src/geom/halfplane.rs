//! Online hitting set for planar points against half-planes.
//!
//! Only extreme points are ever chosen. A below-query meets the lower hull
//! in a contiguous run of vertices (and symmetrically for above-queries and
//! the upper hull), so each envelope is a path ranked by the ruler coloring,
//! and the coloring-driven algorithm runs on the induced intervals.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::exact::{format_rational, orient, ExactPoint, Rational, RationalText};
use crate::error::{Error, Result};
use crate::hypercore::{Coloring, PointId, Range};
use crate::online::OnlineAlgorithm;
use crate::umcolor::{rank_path, AlgC};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

#[derive(Deserialize)]
struct QueryDoc {
    a: RationalText,
    b: RationalText,
    c: RationalText,
    side: Side,
}

#[derive(Serialize)]
struct QueryOut {
    a: String,
    b: String,
    c: String,
    side: Side,
}

/// Closed half-plane on one side of the line `a x + b y = c`.
///
/// Stored with `b >= 0`, so `Below` is `a x + b y <= c` and `Above` is
/// `a x + b y >= c`. For vertical lines (`b = 0`) `Below` means `a x <= c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QueryDoc", into = "QueryOut")]
pub struct HalfPlaneQuery {
    a: Rational,
    b: Rational,
    c: Rational,
    side: Side,
}

impl TryFrom<QueryDoc> for HalfPlaneQuery {
    type Error = Error;
    fn try_from(d: QueryDoc) -> Result<Self> {
        HalfPlaneQuery::new(d.a.parse()?, d.b.parse()?, d.c.parse()?, d.side)
    }
}

impl From<HalfPlaneQuery> for QueryOut {
    fn from(q: HalfPlaneQuery) -> Self {
        QueryOut {
            a: format_rational(&q.a),
            b: format_rational(&q.b),
            c: format_rational(&q.c),
            side: q.side,
        }
    }
}

impl HalfPlaneQuery {
    pub fn new(a: Rational, b: Rational, c: Rational, side: Side) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("half-plane needs (a, b) != (0, 0)".into()));
        }
        let (a, b, c) = if b < Rational::zero() { (-a, -b, -c) } else { (a, b, c) };
        Ok(HalfPlaneQuery { a, b, c, side })
    }

    /// The half-plane on `side` of the line through `p` and `q`.
    pub fn through(p: &ExactPoint, q: &ExactPoint, side: Side) -> Result<Self> {
        // (q - p) rotated: normal (dy, -dx) up to sign
        let a = &p.y - &q.y;
        let b = &q.x - &p.x;
        let c = &a * &p.x + &b * &p.y;
        HalfPlaneQuery::new(a, b, c, side)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coefficients(&self) -> (&Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c)
    }

    pub fn contains(&self, p: &ExactPoint) -> bool {
        let v = &self.a * &p.x + &self.b * &p.y;
        match self.side {
            Side::Below => v <= self.c,
            Side::Above => v >= self.c,
        }
    }
}

/// Strictly convex lower hull, left to right. Needs distinct x-coordinates.
pub fn lower_extreme_points(points: &[ExactPoint]) -> Result<Vec<PointId>> {
    hull_chain(points, Ordering::Greater)
}

/// Strictly convex upper hull, left to right.
pub fn upper_extreme_points(points: &[ExactPoint]) -> Result<Vec<PointId>> {
    hull_chain(points, Ordering::Less)
}

fn hull_chain(points: &[ExactPoint], keep_turn: Ordering) -> Result<Vec<PointId>> {
    let mut order: Vec<PointId> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].x.cmp(&points[j].x).then(points[i].y.cmp(&points[j].y)));
    for w in order.windows(2) {
        let (p, q) = (&points[w[0]], &points[w[1]]);
        if p == q {
            return Err(Error::InvalidInput(format!("duplicate point {p:?}")));
        }
        if p.x == q.x {
            return Err(Error::InvalidInput(format!(
                "points {} and {} share x-coordinate {}",
                w[0],
                w[1],
                format_rational(&p.x)
            )));
        }
    }
    let mut chain: Vec<PointId> = Vec::new();
    for &i in &order {
        while chain.len() >= 2 {
            let (a, b) = (chain[chain.len() - 2], chain[chain.len() - 1]);
            if orient(&points[a], &points[b], &points[i]) == keep_turn {
                break;
            }
            chain.pop();
        }
        chain.push(i);
    }
    Ok(chain)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    /// Hull vertices in ascending x.
    pub vertices: Vec<PointId>,
    /// Ruler ranking of the path over `vertices`, indexed by position.
    pub ranking: Coloring,
}

impl Envelope {
    fn new(vertices: Vec<PointId>) -> Result<Self> {
        let ranking = if vertices.is_empty() {
            Coloring::new(Vec::new())
        } else {
            rank_path(vertices.len())?.coloring
        };
        Ok(Envelope { vertices, ranking })
    }
}

#[derive(Debug, Clone)]
pub struct HalfPlaneInstance {
    points: Vec<ExactPoint>,
    lower: Envelope,
    upper: Envelope,
}

impl HalfPlaneInstance {
    pub fn new(points: Vec<ExactPoint>) -> Result<Self> {
        let lower = Envelope::new(lower_extreme_points(&points)?)?;
        let upper = Envelope::new(upper_extreme_points(&points)?)?;
        Ok(HalfPlaneInstance { points, lower, upper })
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn envelope(&self, side: Side) -> &Envelope {
        match side {
            Side::Below => &self.lower,
            Side::Above => &self.upper,
        }
    }

    pub fn range_of(&self, q: &HalfPlaneQuery) -> Vec<PointId> {
        (0..self.points.len()).filter(|&i| q.contains(&self.points[i])).collect()
    }

    /// Positions `[lo, hi]` along the matching envelope of the hull
    /// vertices inside `q`, or `None` if there are none.
    pub fn halfplane_to_interval(&self, q: &HalfPlaneQuery) -> Result<Option<(usize, usize)>> {
        let env = self.envelope(q.side);
        let inside: Vec<usize> = env
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, &v)| q.contains(&self.points[v]))
            .map(|(pos, _)| pos)
            .collect();
        match (inside.first(), inside.last()) {
            (Some(&lo), Some(&hi)) if hi - lo + 1 == inside.len() => Ok(Some((lo, hi))),
            (Some(_), Some(_)) => Err(Error::GeometryInvariant(format!(
                "half-plane meets the {:?} envelope in non-contiguous positions {inside:?}",
                q.side
            ))),
            _ => Ok(None),
        }
    }
}

/// One stab made by the half-plane algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfPlaneStab {
    pub side: Side,
    pub color: u32,
    pub point: PointId,
    pub range: Vec<PointId>,
}

/// The half-plane algorithm: one Alg_c per envelope, one shared hitting set.
#[derive(Debug, Clone)]
pub struct AlgP {
    instance: HalfPlaneInstance,
    lower: AlgC,
    upper: AlgC,
    hitting: BTreeSet<PointId>,
    stabs: Vec<HalfPlaneStab>,
}

impl AlgP {
    pub fn new(instance: HalfPlaneInstance) -> Self {
        let lower = AlgC::new(instance.lower.ranking.clone());
        let upper = AlgC::new(instance.upper.ranking.clone());
        AlgP {
            instance,
            lower,
            upper,
            hitting: BTreeSet::new(),
            stabs: Vec::new(),
        }
    }

    pub fn instance(&self) -> &HalfPlaneInstance {
        &self.instance
    }

    pub fn stabs(&self) -> &[HalfPlaneStab] {
        &self.stabs
    }

    /// Returns the stabbing point if the range was unstabbed. Empty ranges
    /// are vacuously stabbed.
    pub fn step(&mut self, q: &HalfPlaneQuery) -> Result<Option<PointId>> {
        let range = self.instance.range_of(q);
        if range.is_empty() || range.iter().any(|x| self.hitting.contains(x)) {
            return Ok(None);
        }
        let (lo, hi) = self.instance.halfplane_to_interval(q)?.ok_or_else(|| {
            Error::GeometryInvariant("nonempty half-plane range misses every hull vertex".into())
        })?;
        let alg = match q.side {
            Side::Below => &mut self.lower,
            Side::Above => &mut self.upper,
        };
        let pos = alg.step(&Range::interval(lo, hi))?.ok_or_else(|| {
            Error::GeometryInvariant("envelope interval already stabbed but range is not".into())
        })?;
        let env = self.instance.envelope(q.side);
        let point = env.vertices[pos];
        let color = env.ranking.color(pos);
        self.hitting.insert(point);
        self.stabs.push(HalfPlaneStab {
            side: q.side,
            color,
            point,
            range,
        });
        Ok(Some(point))
    }

    /// Within one envelope, ranges first stabbed by equally colored points
    /// are pairwise disjoint.
    pub fn check_color_classes_disjoint(&self) -> Result<()> {
        let mut classes: BTreeMap<(Side, u32), Vec<&Vec<PointId>>> = BTreeMap::new();
        for s in &self.stabs {
            classes.entry((s.side, s.color)).or_default().push(&s.range);
        }
        for ((side, color), ranges) in classes {
            for (i, a) in ranges.iter().enumerate() {
                for b in &ranges[i + 1..] {
                    if a.iter().any(|x| b.contains(x)) {
                        return Err(Error::Invariant(format!(
                            "{side:?} ranges {a:?} and {b:?} share color {color} but intersect"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl OnlineAlgorithm for AlgP {
    type Query = HalfPlaneQuery;

    fn name(&self) -> &str {
        "algp"
    }

    fn reset(&mut self) {
        self.lower.reset();
        self.upper.reset();
        self.hitting.clear();
        self.stabs.clear();
    }

    fn range_of(&self, q: &HalfPlaneQuery) -> Vec<PointId> {
        self.instance.range_of(q)
    }

    fn feed(&mut self, q: &HalfPlaneQuery) -> Result<Vec<PointId>> {
        Ok(self.step(q)?.into_iter().collect())
    }

    fn hitting_set(&self) -> &BTreeSet<PointId> {
        &self.hitting
    }
}

/// `n` points `(i, i^2)`.
pub fn parabola_points(n: usize) -> Vec<ExactPoint> {
    (0..n as i64).map(|i| ExactPoint::from_ints(i, i * i)).collect()
}

/// The below-half-plane of the chord through parabola points `i` and `j`
/// (the tangent at `i` when `i == j`); on the parabola it selects exactly
/// `[i, j]`.
pub fn parabola_chord(i: usize, j: usize) -> HalfPlaneQuery {
    let (i, j) = (i as i64, j as i64);
    // y <= (i + j) x - i j
    HalfPlaneQuery::new(
        super::exact::int(-(i + j)),
        super::exact::int(1),
        super::exact::int(-(i * j)),
        Side::Below,
    )
    .expect("b = 1")
}
