//! Online hitting set for planar points against unit discs.
//!
//! The plane is tiled by half-open squares of side 1/2. Around each tile sits
//! a concentric square of side 5/2 whose four quadrant centers `o¹..o⁴` are
//! such that every unit disc meeting the tile contains one of them; the least
//! such index is the disc's type for that tile. Per tile and type, the points
//! isolable by a disc of that type form an angularly ordered path, ranked by
//! the ruler coloring, and an unstabbed disc is stabbed by the top-colored
//! isolable point it contains in every tile it meets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::exact::{
    format_rational, from_f64, int, rat, unit_circle_intersections, ExactPoint, Rational,
    RationalText,
};
use crate::error::{Error, Result};
use crate::hypercore::{Coloring, PointId, Range};
use crate::online::OnlineAlgorithm;
use crate::umcolor::{rank_path, AlgC};

#[derive(Deserialize)]
struct DiscDoc {
    cx: RationalText,
    cy: RationalText,
}

#[derive(Serialize)]
struct DiscOut {
    cx: String,
    cy: String,
}

/// Closed unit disc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DiscDoc", into = "DiscOut")]
pub struct DiscQuery {
    pub center: ExactPoint,
}

impl TryFrom<DiscDoc> for DiscQuery {
    type Error = Error;
    fn try_from(d: DiscDoc) -> Result<Self> {
        Ok(DiscQuery::new(ExactPoint::new(d.cx.parse()?, d.cy.parse()?)))
    }
}

impl From<DiscQuery> for DiscOut {
    fn from(d: DiscQuery) -> Self {
        DiscOut {
            cx: format_rational(&d.center.x),
            cy: format_rational(&d.center.y),
        }
    }
}

impl DiscQuery {
    pub fn new(center: ExactPoint) -> Self {
        DiscQuery { center }
    }

    pub fn contains(&self, p: &ExactPoint) -> bool {
        p.in_unit_disc(&self.center)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tile {
    pub i: i64,
    pub j: i64,
}

/// Tile grid of side 1/2 shifted by `offset`; tile `(i, j)` is
/// `[ox + i/2, ox + (i+1)/2) x [oy + j/2, oy + (j+1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub offset: (Rational, Rational),
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("tile index fits in i64")
}

impl Tiling {
    pub fn new(offset: (Rational, Rational)) -> Self {
        Tiling { offset }
    }

    /// The first offset `k / (2(n+1))` per axis that puts every point in a
    /// tile interior. At most `n` residues are bad, so one of the `n + 1`
    /// candidates works.
    pub fn for_points(points: &[ExactPoint]) -> Self {
        let pick = |coord: &dyn Fn(&ExactPoint) -> &Rational| -> Rational {
            let steps = points.len() as i64 + 1;
            for k in 0..steps {
                let off = rat(k, 2 * steps);
                let clean = points
                    .iter()
                    .all(|p| !((coord(p) - &off) * int(2)).is_integer());
                if clean {
                    return off;
                }
            }
            unreachable!("one of n + 1 residues avoids all n points")
        };
        Tiling::new((pick(&|p| &p.x), pick(&|p| &p.y)))
    }

    pub fn tile_of(&self, p: &ExactPoint) -> Tile {
        Tile {
            i: floor_i64(&((&p.x - &self.offset.0) * int(2))),
            j: floor_i64(&((&p.y - &self.offset.1) * int(2))),
        }
    }

    pub fn in_interior(&self, p: &ExactPoint) -> bool {
        !((&p.x - &self.offset.0) * int(2)).is_integer()
            && !((&p.y - &self.offset.1) * int(2)).is_integer()
    }

    pub fn lower_left(&self, t: Tile) -> ExactPoint {
        ExactPoint::new(
            &self.offset.0 + rat(t.i, 2),
            &self.offset.1 + rat(t.j, 2),
        )
    }

    pub fn center(&self, t: Tile) -> ExactPoint {
        let ll = self.lower_left(t);
        ExactPoint::new(ll.x + rat(1, 4), ll.y + rat(1, 4))
    }

    /// `o¹..o⁴`: lower-left, lower-right, upper-left, upper-right quadrant
    /// centers of the side-5/2 square concentric with the tile.
    pub fn quadrant_centers(&self, t: Tile) -> [ExactPoint; 4] {
        let c = self.center(t);
        let d = rat(5, 8);
        let at = |sx: i64, sy: i64| {
            ExactPoint::new(&c.x + &d * int(sx), &c.y + &d * int(sy))
        };
        [at(-1, -1), at(1, -1), at(-1, 1), at(1, 1)]
    }

    /// Closed tile square meets the closed disc.
    pub fn disc_meets_tile(&self, t: Tile, d: &DiscQuery) -> bool {
        let ll = self.lower_left(t);
        let half = rat(1, 2);
        let clamp = |v: &Rational, lo: &Rational| -> Rational {
            let hi = lo + &half;
            if v < lo {
                lo.clone()
            } else if *v > hi {
                hi
            } else {
                v.clone()
            }
        };
        let nearest = ExactPoint::new(clamp(&d.center.x, &ll.x), clamp(&d.center.y, &ll.y));
        d.contains(&nearest)
    }

    /// The 5 x 5 block of tiles that can meet a unit disc around `center`.
    pub fn candidate_block(&self, center: &ExactPoint) -> Vec<Tile> {
        let i0 = floor_i64(&((&center.x - int(1) - &self.offset.0) * int(2)));
        let j0 = floor_i64(&((&center.y - int(1) - &self.offset.1) * int(2)));
        let mut out = Vec::with_capacity(25);
        for i in i0..i0 + 5 {
            for j in j0..j0 + 5 {
                out.push(Tile { i, j });
            }
        }
        out
    }

    /// Least `τ` with `o^τ` inside the disc. The disc must meet the tile.
    pub fn type_of(&self, t: Tile, d: &DiscQuery) -> Result<usize> {
        if !self.disc_meets_tile(t, d) {
            return Err(Error::InvalidInput(format!(
                "disc at {:?} does not meet tile {t:?}",
                d.center
            )));
        }
        self.quadrant_centers(t)
            .iter()
            .position(|o| d.contains(o))
            .map(|i| i + 1)
            .ok_or_else(|| {
                Error::GeometryInvariant(format!(
                    "disc at {:?} meets tile {t:?} but contains no quadrant center",
                    d.center
                ))
            })
    }

    /// Apex `o^τ` and the two boundary directions of the cone it spans over
    /// the tile, ordered counter-clockwise.
    fn cone(&self, t: Tile, tau: usize) -> (ExactPoint, (Rational, Rational), (Rational, Rational)) {
        let apex = self.quadrant_centers(t)[tau - 1].clone();
        let ll = self.lower_left(t);
        let half = rat(1, 2);
        let corners = [
            (ll.x.clone(), ll.y.clone()),
            (&ll.x + &half, ll.y.clone()),
            (ll.x.clone(), &ll.y + &half),
            (&ll.x + &half, &ll.y + &half),
        ];
        let dirs: Vec<(Rational, Rational)> = corners
            .iter()
            .map(|(x, y)| (x - &apex.x, y - &apex.y))
            .collect();
        let cross = |a: &(Rational, Rational), b: &(Rational, Rational)| &a.0 * &b.1 - &a.1 * &b.0;
        let zero = Rational::zero();
        let first = dirs
            .iter()
            .find(|a| dirs.iter().all(|b| cross(a, b) >= zero))
            .expect("tile spans less than a half-turn from the apex")
            .clone();
        let last = dirs
            .iter()
            .find(|a| dirs.iter().all(|b| cross(b, a) >= zero))
            .expect("tile spans less than a half-turn from the apex")
            .clone();
        (apex, first, last)
    }

    /// The two bounding circles meet at most once inside the cone with apex
    /// `o^τ` spanned by the tile.
    pub fn pseudoline_check(&self, t: Tile, tau: usize, d1: &DiscQuery, d2: &DiscQuery) -> bool {
        let Some(points) = unit_circle_intersections(&d1.center, &d2.center) else {
            return true;
        };
        let (apex, first, last) = self.cone(t, tau);
        let in_cone = points
            .iter()
            .filter(|p| {
                p.side_of_ray(&apex, (&first.0, &first.1)) != Ordering::Less
                    && p.side_of_ray(&apex, (&last.0, &last.1)) != Ordering::Greater
            })
            .count();
        in_cone <= 1
    }
}

/// A constraint on a witness disc center `o`: `|o - center| <= 1` when
/// `inside`, `|o - center| > 1` otherwise.
#[derive(Debug, Clone)]
struct Constraint {
    center: ExactPoint,
    inside: bool,
}

impl Constraint {
    fn holds(&self, o: &ExactPoint) -> bool {
        let d2 = o.dist2(&self.center);
        if self.inside {
            d2 <= Rational::one()
        } else {
            d2 > Rational::one()
        }
    }
}

/// Constraints for "a unit disc of type `tau` meets `X ∩ s` exactly in `x`".
fn witness_constraints(
    quadrants: &[ExactPoint; 4],
    tau: usize,
    x: &ExactPoint,
    others: &[&ExactPoint],
) -> Vec<Constraint> {
    let mut cs = vec![
        Constraint { center: x.clone(), inside: true },
        Constraint { center: quadrants[tau - 1].clone(), inside: true },
    ];
    for o in &quadrants[..tau - 1] {
        cs.push(Constraint { center: o.clone(), inside: false });
    }
    for y in others {
        cs.push(Constraint { center: (*y).clone(), inside: false });
    }
    cs
}

/// Outcome of the floating-point arc sweep.
enum Sweep {
    Witness(ExactPoint),
    Empty,
    Unclear,
}

const ANGLE_TOL: f64 = 1e-9;

/// Open angular intervals in `[0, 2π)`.
fn arc_pieces(mid: f64, half: f64) -> Vec<(f64, f64)> {
    if half >= std::f64::consts::PI {
        return vec![(0.0, TAU)];
    }
    let lo = (mid - half).rem_euclid(TAU);
    let hi = lo + 2.0 * half;
    if hi <= TAU {
        vec![(lo, hi)]
    } else {
        vec![(lo, TAU), (0.0, hi - TAU)]
    }
}

fn intersect(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if lo < hi {
                out.push((lo, hi));
            }
        }
    }
    out
}

fn subtract(allowed: &[(f64, f64)], mut cut: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    cut.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for c in cut {
        match merged.last_mut() {
            Some(last) if c.0 <= last.1 => last.1 = last.1.max(c.1),
            _ => merged.push(c),
        }
    }
    let mut out = Vec::new();
    for &(a0, a1) in allowed {
        let mut start = a0;
        for &(c0, c1) in &merged {
            if c1 <= start || c0 >= a1 {
                continue;
            }
            if c0 > start {
                out.push((start, c0));
            }
            start = start.max(c1);
        }
        if start < a1 {
            out.push((start, a1));
        }
    }
    out
}

/// Points of circle `j` satisfying every other constraint, with each
/// constraint tightened (`slack < 0`) or loosened (`slack > 0`) by an
/// angular tolerance.
fn allowed_on_circle(cs: &[(f64, f64, bool)], j: usize, slack: f64) -> Vec<(f64, f64)> {
    let (qx, qy, _) = cs[j];
    let mut allowed = vec![(0.0, TAU)];
    let mut cut = Vec::new();
    for (l, &(px, py, inside)) in cs.iter().enumerate() {
        if l == j {
            continue;
        }
        let (dx, dy) = (px - qx, py - qy);
        let d = (dx * dx + dy * dy).sqrt();
        if d < 1e-12 {
            // coincident circles: every point sits on the other boundary
            if (inside && slack < 0.0) || (!inside && slack < 0.0) {
                return Vec::new();
            }
            continue;
        }
        let phi = dy.atan2(dx);
        let half = if d / 2.0 >= 1.0 { f64::NEG_INFINITY } else { (d / 2.0).acos() };
        if inside {
            let w = half + slack;
            if w <= 0.0 {
                return Vec::new();
            }
            allowed = intersect(&allowed, &arc_pieces(phi, w));
        } else {
            let w = half - slack;
            if w > 0.0 {
                cut.extend(arc_pieces(phi, w));
            }
        }
        if allowed.is_empty() {
            return allowed;
        }
    }
    subtract(&allowed, cut)
}

fn sweep(cs: &[Constraint]) -> Sweep {
    let fl: Vec<(f64, f64, bool)> = cs
        .iter()
        .map(|c| {
            let (x, y) = c.center.to_f64();
            (x, y, c.inside)
        })
        .collect();
    let mut unclear = false;
    for j in 0..fl.len() {
        let strict = allowed_on_circle(&fl, j, -ANGLE_TOL);
        if let Some(&(lo, hi)) = strict.iter().max_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0))) {
            let theta = (lo + hi) / 2.0;
            let (qx, qy, inside) = fl[j];
            let (ux, uy) = (theta.cos(), theta.sin());
            let (px, py) = (qx + ux, qy + uy);
            let margin = fl
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .map(|(_, &(cx, cy, _))| (((px - cx).powi(2) + (py - cy).powi(2)).sqrt() - 1.0).abs())
                .fold(1e-3_f64, f64::min);
            let step = if inside { -margin / 2.0 } else { margin / 2.0 };
            let candidate = ExactPoint::new(from_f64(px + step * ux), from_f64(py + step * uy));
            if cs.iter().all(|c| c.holds(&candidate)) {
                return Sweep::Witness(candidate);
            }
            unclear = true;
        } else if !allowed_on_circle(&fl, j, ANGLE_TOL).is_empty() {
            unclear = true;
        }
    }
    if unclear {
        Sweep::Unclear
    } else {
        Sweep::Empty
    }
}

/// Exact search over arrangement vertices of the constraint circles plus one
/// rational probe per circle. A vertex (or probe) strictly satisfying every
/// constraint whose circle does not pass through it certifies a witness
/// region next to it.
fn exact_search(cs: &[Constraint]) -> Result<bool> {
    let strict = |side: Ordering, inside: bool| {
        if inside {
            side == Ordering::Less
        } else {
            side == Ordering::Greater
        }
    };
    let mut degenerate = false;
    for j in 0..cs.len() {
        let probe = ExactPoint::new(&cs[j].center.x + int(1), cs[j].center.y.clone());
        let mut ok = true;
        for (l, c) in cs.iter().enumerate() {
            if l == j {
                continue;
            }
            let d2 = probe.dist2(&c.center);
            let side = d2.cmp(&Rational::one());
            if side == Ordering::Equal {
                degenerate = true;
            }
            if !strict(side, c.inside) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    for a in 0..cs.len() {
        for b in a + 1..cs.len() {
            let Some(vertices) = unit_circle_intersections(&cs[a].center, &cs[b].center) else {
                continue;
            };
            'vertex: for v in &vertices {
                let (vx, vy) = v.to_f64();
                for (l, c) in cs.iter().enumerate() {
                    if l == a || l == b {
                        continue;
                    }
                    let (cx, cy) = c.center.to_f64();
                    let approx = (vx - cx).powi(2) + (vy - cy).powi(2) - 1.0;
                    let clearly_bad = if c.inside { approx > 1e-9 } else { approx < -1e-9 };
                    if clearly_bad {
                        continue 'vertex;
                    }
                }
                let mut ok = true;
                for (l, c) in cs.iter().enumerate() {
                    if l == a || l == b {
                        continue;
                    }
                    let side = v.unit_disc_side(&c.center);
                    if side == Ordering::Equal {
                        degenerate = true;
                    }
                    if !strict(side, c.inside) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(true);
                }
            }
        }
    }
    if degenerate {
        return Err(Error::Degenerate(
            "three constraint circles meet in a point; cannot decide extremeness".into(),
        ));
    }
    Ok(false)
}

/// How a point was classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extremeness {
    /// A rational disc center isolating the point.
    Witness(ExactPoint),
    /// Certified by the exact arrangement search.
    Certified,
    NotExtreme,
}

impl Extremeness {
    pub fn is_extreme(&self) -> bool {
        !matches!(self, Extremeness::NotExtreme)
    }
}

/// Whether some unit disc of type `tau` for tile `t` meets the tile's points
/// exactly in `x`.
pub fn classify_point(
    tiling: &Tiling,
    t: Tile,
    tau: usize,
    x: &ExactPoint,
    others: &[&ExactPoint],
) -> Result<Extremeness> {
    let cs = witness_constraints(&tiling.quadrant_centers(t), tau, x, others);
    match sweep(&cs) {
        Sweep::Witness(w) => Ok(Extremeness::Witness(w)),
        Sweep::Empty => Ok(Extremeness::NotExtreme),
        Sweep::Unclear => Ok(if exact_search(&cs)? {
            Extremeness::Certified
        } else {
            Extremeness::NotExtreme
        }),
    }
}

/// Same question answered only by the exact arrangement search.
pub fn classify_point_exact(
    tiling: &Tiling,
    t: Tile,
    tau: usize,
    x: &ExactPoint,
    others: &[&ExactPoint],
) -> Result<bool> {
    exact_search(&witness_constraints(&tiling.quadrant_centers(t), tau, x, others))
}

/// Extreme points of `members` (the points of tile `t`) for type `tau`,
/// sorted counter-clockwise around `o^τ`.
pub fn extreme_points(
    tiling: &Tiling,
    t: Tile,
    tau: usize,
    points: &[ExactPoint],
    members: &[PointId],
) -> Result<Vec<PointId>> {
    let mut out = Vec::new();
    for &x in members {
        let others: Vec<&ExactPoint> = members.iter().filter(|&&y| y != x).map(|&y| &points[y]).collect();
        if classify_point(tiling, t, tau, &points[x], &others)?.is_extreme() {
            out.push(x);
        }
    }
    let apex = tiling.quadrant_centers(t)[tau - 1].clone();
    let cross = |a: PointId, b: PointId| {
        let (pa, pb) = (&points[a], &points[b]);
        let lhs = (&pa.x - &apex.x) * (&pb.y - &apex.y);
        let rhs = (&pa.y - &apex.y) * (&pb.x - &apex.x);
        // a before b when b is counter-clockwise of a
        rhs.cmp(&lhs)
    };
    out.sort_by(|&a, &b| cross(a, b));
    for w in out.windows(2) {
        if cross(w[0], w[1]) == Ordering::Equal {
            return Err(Error::Degenerate(format!(
                "points {} and {} are collinear with quadrant center {tau} of tile {t:?}",
                w[0], w[1]
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct TypeData {
    /// Extreme points in angular order.
    pub vertices: Vec<PointId>,
    pub ranking: Coloring,
}

#[derive(Debug, Clone)]
pub struct TileData {
    pub tile: Tile,
    pub quadrant_centers: [ExactPoint; 4],
    pub members: Vec<PointId>,
    pub types: [TypeData; 4],
}

#[derive(Debug, Clone)]
pub struct DiscInstance {
    points: Vec<ExactPoint>,
    tiling: Tiling,
    tiles: BTreeMap<Tile, TileData>,
}

impl DiscInstance {
    pub fn new(points: Vec<ExactPoint>) -> Result<Self> {
        let distinct: BTreeSet<(&Rational, &Rational)> = points.iter().map(|p| (&p.x, &p.y)).collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidInput("duplicate points".into()));
        }
        let tiling = Tiling::for_points(&points);
        let mut by_tile: BTreeMap<Tile, Vec<PointId>> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            debug_assert!(tiling.in_interior(p));
            by_tile.entry(tiling.tile_of(p)).or_default().push(i);
        }
        let mut tiles = BTreeMap::new();
        for (tile, members) in by_tile {
            let mut types = Vec::with_capacity(4);
            for tau in 1..=4 {
                let vertices = extreme_points(&tiling, tile, tau, &points, &members)?;
                let ranking = if vertices.is_empty() {
                    Coloring::new(Vec::new())
                } else {
                    rank_path(vertices.len())?.coloring
                };
                types.push(TypeData { vertices, ranking });
            }
            let types: [TypeData; 4] = types.try_into().expect("four types");
            tiles.insert(
                tile,
                TileData {
                    tile,
                    quadrant_centers: tiling.quadrant_centers(tile),
                    members,
                    types,
                },
            );
        }
        Ok(DiscInstance { points, tiling, tiles })
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn tiles(&self) -> &BTreeMap<Tile, TileData> {
        &self.tiles
    }

    /// Tiles holding at least one point inside `d`, with those points.
    pub fn tiles_with_points(&self, d: &DiscQuery) -> Vec<(Tile, Vec<PointId>)> {
        let mut out = Vec::new();
        for t in self.tiling.candidate_block(&d.center) {
            if let Some(data) = self.tiles.get(&t) {
                let hit: Vec<PointId> = data
                    .members
                    .iter()
                    .copied()
                    .filter(|&x| d.contains(&self.points[x]))
                    .collect();
                if !hit.is_empty() {
                    out.push((t, hit));
                }
            }
        }
        out
    }

    pub fn range_of(&self, d: &DiscQuery) -> Vec<PointId> {
        let mut r: Vec<PointId> = self
            .tiles_with_points(d)
            .into_iter()
            .flat_map(|(_, pts)| pts)
            .collect();
        r.sort_unstable();
        r
    }

    /// Positions along `V_{s,τ}` of the extreme points inside `d`, checked to
    /// be contiguous.
    pub fn hit_interval(&self, t: Tile, tau: usize, d: &DiscQuery) -> Result<Option<(usize, usize)>> {
        let data = &self.tiles[&t].types[tau - 1];
        let hits: Vec<usize> = data
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, &v)| d.contains(&self.points[v]))
            .map(|(k, _)| k)
            .collect();
        match (hits.first(), hits.last()) {
            (Some(&lo), Some(&hi)) if hi - lo + 1 == hits.len() => Ok(Some((lo, hi))),
            (Some(_), Some(_)) => Err(Error::GeometryInvariant(format!(
                "disc at {:?} meets extreme points of tile {t:?} type {tau} at non-contiguous positions {hits:?}",
                d.center
            ))),
            _ => Ok(None),
        }
    }
}

/// One point added by the disc algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscStab {
    pub tile: Tile,
    pub tau: usize,
    pub color: u32,
    pub point: PointId,
}

/// An arrival that was unstabbed and the points chosen for it.
#[derive(Debug, Clone, Serialize)]
pub struct DiscArrival {
    pub query: DiscQuery,
    pub range: Vec<PointId>,
    pub stabs: Vec<DiscStab>,
}

/// The unit-disc algorithm: an Alg_c state per (tile, type) and one global
/// hitting set.
#[derive(Debug, Clone)]
pub struct AlgD {
    instance: DiscInstance,
    states: BTreeMap<(Tile, usize), AlgC>,
    hitting: BTreeSet<PointId>,
    arrivals: Vec<DiscArrival>,
}

impl AlgD {
    pub fn new(instance: DiscInstance) -> Self {
        let mut states = BTreeMap::new();
        for (&t, data) in &instance.tiles {
            for tau in 1..=4 {
                states.insert((t, tau), AlgC::new(data.types[tau - 1].ranking.clone()));
            }
        }
        AlgD {
            instance,
            states,
            hitting: BTreeSet::new(),
            arrivals: Vec::new(),
        }
    }

    pub fn instance(&self) -> &DiscInstance {
        &self.instance
    }

    /// Unstabbed arrivals so far.
    pub fn arrivals(&self) -> &[DiscArrival] {
        &self.arrivals
    }

    pub fn max_tiles_per_arrival(&self) -> usize {
        self.arrivals.iter().map(|a| a.stabs.len()).max().unwrap_or(0)
    }

    /// Adds one point per tile the disc meets in a point, unless the disc's
    /// range is already stabbed (or empty).
    pub fn step(&mut self, d: &DiscQuery) -> Result<Vec<PointId>> {
        let tiles = self.instance.tiles_with_points(d);
        let stabbed = tiles
            .iter()
            .any(|(_, pts)| pts.iter().any(|x| self.hitting.contains(x)));
        if tiles.is_empty() || stabbed {
            return Ok(Vec::new());
        }
        let mut range: Vec<PointId> = tiles.iter().flat_map(|(_, p)| p.iter().copied()).collect();
        range.sort_unstable();
        let mut stabs = Vec::with_capacity(tiles.len());
        for (t, _) in &tiles {
            let tau = self.instance.tiling.type_of(*t, d)?;
            let (lo, hi) = self.instance.hit_interval(*t, tau, d)?.ok_or_else(|| {
                Error::GeometryInvariant(format!(
                    "disc at {:?} holds points of tile {t:?} but no extreme point of type {tau}",
                    d.center
                ))
            })?;
            let alg = self.states.get_mut(&(*t, tau)).expect("state per tile and type");
            let pos = alg.step(&Range::interval(lo, hi))?.ok_or_else(|| {
                Error::GeometryInvariant("per-tile interval stabbed while the disc is not".into())
            })?;
            let data = &self.instance.tiles[t].types[tau - 1];
            stabs.push(DiscStab {
                tile: *t,
                tau,
                color: data.ranking.color(pos),
                point: data.vertices[pos],
            });
        }
        let added: Vec<PointId> = stabs.iter().map(|s| s.point).collect();
        self.hitting.extend(added.iter().copied());
        self.arrivals.push(DiscArrival {
            query: d.clone(),
            range,
            stabs,
        });
        Ok(added)
    }

    /// Two unstabbed arrivals of the same type for a tile that share a point
    /// of that tile were stabbed there by different colors.
    pub fn check_distinct_colors(&self) -> Result<()> {
        for (i, a) in self.arrivals.iter().enumerate() {
            for b in &self.arrivals[i + 1..] {
                for sa in &a.stabs {
                    let Some(sb) = b.stabs.iter().find(|s| s.tile == sa.tile && s.tau == sa.tau) else {
                        continue;
                    };
                    let shared = self.instance.tiles[&sa.tile]
                        .members
                        .iter()
                        .any(|&x| a.range.binary_search(&x).is_ok() && b.range.binary_search(&x).is_ok());
                    if shared && sa.color == sb.color {
                        return Err(Error::Invariant(format!(
                            "discs at {:?} and {:?} share a point of tile {:?} and type {} but were stabbed with the same color {}",
                            a.query.center, b.query.center, sa.tile, sa.tau, sa.color
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl OnlineAlgorithm for AlgD {
    type Query = DiscQuery;

    fn name(&self) -> &str {
        "algd"
    }

    fn reset(&mut self) {
        for s in self.states.values_mut() {
            s.reset();
        }
        self.hitting.clear();
        self.arrivals.clear();
    }

    fn range_of(&self, d: &DiscQuery) -> Vec<PointId> {
        self.instance.range_of(d)
    }

    fn feed(&mut self, d: &DiscQuery) -> Result<Vec<PointId>> {
        self.step(d)
    }

    fn hitting_set(&self) -> &BTreeSet<PointId> {
        &self.hitting
    }
}

/// `n` points on a horizontal segment of length `(n-1)/n < 1`.
pub fn collinear_points(n: usize) -> Vec<ExactPoint> {
    let n = n as i64;
    (0..n)
        .map(|i| ExactPoint::new(rat(1, 7) + rat(i, n.max(1)), rat(1, 5)))
        .collect()
}

/// A unit disc whose intersection with the collinear points `pts` (sharing
/// one y-coordinate, sorted by x) is exactly `pts[lo..=hi]`. The center sits
/// above the segment midpoint at a height found by dyadic bisection so that
/// the half-chord covers the run but stops short of its neighbours.
pub fn disc_for_run(pts: &[ExactPoint], lo: usize, hi: usize) -> DiscQuery {
    let y0 = pts[lo].y.clone();
    let mid_x = (&pts[lo].x + &pts[hi].x) / int(2);
    let half = (&pts[hi].x - &pts[lo].x) / int(2);
    // chord half-width w^2 = 1 - t^2 must satisfy half^2 <= w^2 < reach^2,
    // where reach is the distance from the midpoint to the nearest outside point.
    let mut reach: Option<Rational> = None;
    if lo > 0 {
        reach = Some(&mid_x - &pts[lo - 1].x);
    }
    if hi + 1 < pts.len() {
        let r = &pts[hi + 1].x - &mid_x;
        reach = Some(match reach {
            Some(q) if q < r => q,
            _ => r,
        });
    }
    let need_hi = Rational::one() - &half * &half; // t^2 <= this
    let need_lo = reach.map(|r| Rational::one() - &r * &r); // t^2 > this
    let (mut a, mut b) = (Rational::zero(), Rational::one());
    let ok = |t: &Rational| {
        let t2 = t * t;
        t2 <= need_hi && need_lo.as_ref().is_none_or(|l| t2 > *l)
    };
    let mut t = b.clone();
    if let Some(l) = &need_lo {
        // smallest admissible t^2 is just above l; bisect for t with t^2 in (l, need_hi]
        for _ in 0..200 {
            t = (&a + &b) / int(2);
            if ok(&t) {
                break;
            }
            if &(&t * &t) <= l {
                a = t.clone();
            } else {
                b = t.clone();
            }
        }
    } else {
        t = Rational::zero();
    }
    debug_assert!(ok(&t));
    DiscQuery::new(ExactPoint::new(mid_x, y0 + t))
}
