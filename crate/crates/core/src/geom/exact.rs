//! Exact rational points and the predicates built on them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidInput(format!("bad number {text:?}")));
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(&digits)
            .map_err(|_| Error::InvalidInput(format!("bad number {text:?}")))?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let value = Rational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    let value = Rational::from_str(t).map_err(|_| Error::InvalidInput(format!("bad rational {text:?}")))?;
    Ok(value)
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact binary value of a finite float.
pub fn from_f64(v: f64) -> Rational {
    Rational::from_float(v).expect("finite float")
}

/// A JSON number or string holding a rational.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub(crate) fn parse(&self) -> Result<Rational> {
        match self {
            RationalText::Int(v) => Ok(int(*v)),
            RationalText::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[RationalText; 2]", into = "[String; 2]")]
pub struct ExactPoint {
    pub x: Rational,
    pub y: Rational,
}

impl TryFrom<[RationalText; 2]> for ExactPoint {
    type Error = Error;
    fn try_from(v: [RationalText; 2]) -> Result<Self> {
        Ok(ExactPoint::new(v[0].parse()?, v[1].parse()?))
    }
}

impl From<ExactPoint> for [String; 2] {
    fn from(p: ExactPoint) -> Self {
        [format_rational(&p.x), format_rational(&p.y)]
    }
}

impl fmt::Debug for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl ExactPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        ExactPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        ExactPoint::new(int(x), int(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    pub fn dist2(&self, other: &ExactPoint) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    /// Closed unit disc around `center` contains `self`.
    pub fn in_unit_disc(&self, center: &ExactPoint) -> bool {
        self.dist2(center) <= Rational::one()
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: positive for a left turn.
pub fn orient(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint) -> Ordering {
    let lhs = (&b.x - &a.x) * (&c.y - &a.y);
    let rhs = (&b.y - &a.y) * (&c.x - &a.x);
    lhs.cmp(&rhs)
}

/// Sign of `a + b * sqrt(k)` for `k >= 0`.
pub fn sign_with_sqrt(a: &Rational, b: &Rational, k: &Rational) -> Ordering {
    debug_assert!(!k.is_negative());
    let sa = a.cmp(&Rational::zero());
    let sb = if k.is_zero() { Ordering::Equal } else { b.cmp(&Rational::zero()) };
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            // opposite signs: compare a^2 with b^2 k
            let a2 = a * a;
            let b2k = b * b * k;
            match a2.cmp(&b2k) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => sa,
                Ordering::Less => sb,
            }
        }
    }
}

/// A point `(ax + bx sqrt(k), ay + by sqrt(k))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtPoint {
    pub ax: Rational,
    pub bx: Rational,
    pub ay: Rational,
    pub by: Rational,
    pub k: Rational,
}

impl SqrtPoint {
    /// Sign of `|self - c|^2 - 1`: `Less` strictly inside the unit disc
    /// around `c`, `Equal` on its circle.
    pub fn unit_disc_side(&self, c: &ExactPoint) -> Ordering {
        let dx = &self.ax - &c.x;
        let dy = &self.ay - &c.y;
        let a = &dx * &dx + &dy * &dy + &self.k * (&self.bx * &self.bx + &self.by * &self.by)
            - Rational::one();
        let b = (&dx * &self.bx + &dy * &self.by) * int(2);
        sign_with_sqrt(&a, &b, &self.k)
    }

    /// Sign of the cross product `d x (self - apex)`.
    pub fn side_of_ray(&self, apex: &ExactPoint, d: (&Rational, &Rational)) -> Ordering {
        let a = d.0 * (&self.ay - &apex.y) - d.1 * (&self.ax - &apex.x);
        let b = d.0 * &self.by - d.1 * &self.bx;
        sign_with_sqrt(&a, &b, &self.k)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let s = to_f64(&self.k).sqrt();
        (
            to_f64(&self.ax) + to_f64(&self.bx) * s,
            to_f64(&self.ay) + to_f64(&self.by) * s,
        )
    }
}

/// The two intersection points of the unit circles around `p` and `q`, or
/// `None` when they do not meet in two points.
pub fn unit_circle_intersections(p: &ExactPoint, q: &ExactPoint) -> Option<[SqrtPoint; 2]> {
    let d2 = p.dist2(q);
    if d2.is_zero() || d2 >= int(4) {
        return None;
    }
    let mx = (&p.x + &q.x) / int(2);
    let my = (&p.y + &q.y) / int(2);
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    // offset along the normal: h / |d| with h^2 = 1 - |d|^2 / 4
    let k = (int(4) - &d2) / (int(4) * &d2);
    let plus = SqrtPoint {
        ax: mx.clone(),
        bx: -dy.clone(),
        ay: my.clone(),
        by: dx.clone(),
        k: k.clone(),
    };
    let minus = SqrtPoint {
        ax: mx,
        bx: dy,
        ay: my,
        by: -dx,
        k,
    };
    Some([plus, minus])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert!(parse_rational("x").is_err());
        let p: ExactPoint = serde_json::from_str(r#"["1/2", 3]"#).unwrap();
        assert_eq!(p, ExactPoint::new(rat(1, 2), int(3)));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1/2","3"]"#);
    }

    #[test]
    fn sqrt_sign() {
        // 1 - sqrt(2) < 0, 2 - sqrt(2) > 0, 2 - sqrt(4) == 0
        assert_eq!(sign_with_sqrt(&int(1), &int(-1), &int(2)), Ordering::Less);
        assert_eq!(sign_with_sqrt(&int(2), &int(-1), &int(2)), Ordering::Greater);
        assert_eq!(sign_with_sqrt(&int(2), &int(-1), &int(4)), Ordering::Equal);
        assert_eq!(sign_with_sqrt(&int(-3), &int(2), &int(2)), Ordering::Less);
    }

    #[test]
    fn circle_intersections_lie_on_both_circles() {
        let p = ExactPoint::new(rat(1, 3), rat(1, 7));
        let q = ExactPoint::new(rat(5, 4), rat(-2, 5));
        let pts = unit_circle_intersections(&p, &q).unwrap();
        for v in &pts {
            assert_eq!(v.unit_disc_side(&p), Ordering::Equal);
            assert_eq!(v.unit_disc_side(&q), Ordering::Equal);
            let (x, y) = v.to_f64();
            let (px, py) = p.to_f64();
            assert!(((x - px).powi(2) + (y - py).powi(2) - 1.0).abs() < 1e-12);
        }
        assert!(unit_circle_intersections(&p, &p).is_none());
        assert!(unit_circle_intersections(&ExactPoint::from_ints(0, 0), &ExactPoint::from_ints(2, 0)).is_none());
    }

    #[test]
    fn orientation() {
        let a = ExactPoint::from_ints(0, 0);
        let b = ExactPoint::from_ints(1, 0);
        assert_eq!(orient(&a, &b, &ExactPoint::from_ints(0, 1)), Ordering::Greater);
        assert_eq!(orient(&a, &b, &ExactPoint::from_ints(2, 0)), Ordering::Equal);
    }
}
