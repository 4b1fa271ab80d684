//! Planar geometric primitives over exact coordinates.

pub mod intersect;
pub mod parity;
pub mod shape;

use crate::num::{rat_to_f64, rat_to_string, Quad, Rat};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.x), rat_to_f64(&self.y))
    }
}

pub fn pt(x: i64, y: i64) -> Point {
    Point::new(crate::num::rat(x), crate::num::rat(y))
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", rat_to_string(&self.x), rat_to_string(&self.y))
    }
}

/// A point whose coordinates live in Q(sqrt(d)) for a single shared radicand.
/// Arises from line/circle and circle/circle intersections.
#[derive(Clone, Debug)]
pub struct AlgPoint {
    pub x: Quad,
    pub y: Quad,
}

impl AlgPoint {
    pub fn from_point(p: &Point) -> Self {
        AlgPoint { x: Quad::from_rat(p.x.clone()), y: Quad::from_rat(p.y.clone()) }
    }

    pub fn rational(&self) -> Option<Point> {
        match (self.x.as_rat(), self.y.as_rat()) {
            (Some(x), Some(y)) => Some(Point::new(x.clone(), y.clone())),
            _ => None,
        }
    }

    pub fn same_point(&self, o: &AlgPoint) -> bool {
        self.x.cmp_general(&o.x) == Ordering::Equal && self.y.cmp_general(&o.y) == Ordering::Equal
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl From<Point> for AlgPoint {
    fn from(p: Point) -> Self {
        AlgPoint::from_point(&p)
    }
}

/// Cross product (b - a) x (c - a) for rational points.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    v.cmp(&Rat::zero())
}

/// Cross product (b - a) x (c - a) where c may be algebraic.
pub fn orient_alg(a: &Point, b: &Point, c: &AlgPoint) -> Ordering {
    let bx = Quad::from_rat(&b.x - &a.x);
    let by = Quad::from_rat(&b.y - &a.y);
    let cx = c.x.sub(&Quad::from_rat(a.x.clone()));
    let cy = c.y.sub(&Quad::from_rat(a.y.clone()));
    bx.mul(&cy).sub(&by.mul(&cx)).sign()
}

/// Cross product of two vectors with Quad components (shared radicand).
pub fn cross_quad(ux: &Quad, uy: &Quad, vx: &Quad, vy: &Quad) -> Quad {
    ux.mul(vy).sub(&uy.mul(vx))
}

pub fn dot_quad(ux: &Quad, uy: &Quad, vx: &Quad, vy: &Quad) -> Quad {
    ux.mul(vx).add(&uy.mul(vy))
}

/// True if p lies on the closed segment [a, b].
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if orient(a, b, p) != Ordering::Equal {
        return false;
    }
    let min_x = a.x.clone().min(b.x.clone());
    let max_x = a.x.clone().max(b.x.clone());
    let min_y = a.y.clone().min(b.y.clone());
    let max_y = a.y.clone().max(b.y.clone());
    p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y
}

/// True if algebraic point p lies on the closed segment [a, b].
pub fn on_segment_alg(a: &Point, b: &Point, p: &AlgPoint) -> bool {
    if orient_alg(a, b, p) != Ordering::Equal {
        return false;
    }
    // Project on the dominant axis of the segment.
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    if dx.is_zero() && dy.is_zero() {
        return p.x.cmp_rat(&a.x) == Ordering::Equal && p.y.cmp_rat(&a.y) == Ordering::Equal;
    }
    let (lo, hi, v) = if dx.abs() >= dy.abs() {
        (a.x.clone().min(b.x.clone()), a.x.clone().max(b.x.clone()), &p.x)
    } else {
        (a.y.clone().min(b.y.clone()), a.y.clone().max(b.y.clone()), &p.y)
    };
    v.cmp_rat(&lo) != Ordering::Less && v.cmp_rat(&hi) != Ordering::Greater
}

/// Exact intersection of two closed rational segments.
#[derive(Clone, Debug, PartialEq)]
pub enum SegSeg {
    Empty,
    /// A single shared point; `proper` means interior to both segments.
    Point { p: Point, proper: bool },
    /// A positive-length collinear overlap given by its two extreme points.
    Overlap(Point, Point),
}

pub fn seg_seg_intersection(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> SegSeg {
    let d1x = &a2.x - &a1.x;
    let d1y = &a2.y - &a1.y;
    let d2x = &b2.x - &b1.x;
    let d2y = &b2.y - &b1.y;
    let denom = &d1x * &d2y - &d1y * &d2x;
    let ex = &b1.x - &a1.x;
    let ey = &b1.y - &a1.y;
    if denom.is_zero() {
        // Parallel. Collinear?
        if (&ex * &d1y - &ey * &d1x) != Rat::zero() {
            return SegSeg::Empty;
        }
        // Order along the dominant axis.
        let key = |p: &Point| -> Rat {
            if d1x.abs() >= d1y.abs() {
                p.x.clone()
            } else {
                p.y.clone()
            }
        };
        if d1x.is_zero() && d1y.is_zero() {
            // a degenerate: single point segment
            return if on_segment(b1, b2, a1) {
                SegSeg::Point { p: a1.clone(), proper: false }
            } else {
                SegSeg::Empty
            };
        }
        let mut pts = [a1, a2, b1, b2];
        pts.sort_by(|p, q| key(p).cmp(&key(q)));
        let (alo, ahi) = if key(a1) <= key(a2) { (a1, a2) } else { (a2, a1) };
        let (blo, bhi) = if key(b1) <= key(b2) { (b1, b2) } else { (b2, b1) };
        let lo = if key(alo) >= key(blo) { alo } else { blo };
        let hi = if key(ahi) <= key(bhi) { ahi } else { bhi };
        match key(lo).cmp(&key(hi)) {
            Ordering::Greater => SegSeg::Empty,
            Ordering::Equal => SegSeg::Point { p: lo.clone(), proper: false },
            Ordering::Less => SegSeg::Overlap(lo.clone(), hi.clone()),
        }
    } else {
        let t_num = &ex * &d2y - &ey * &d2x;
        let u_num = &ex * &d1y - &ey * &d1x;
        let t = &t_num / &denom;
        let u = &u_num / &denom;
        let zero = Rat::zero();
        let one = Rat::from_integer(1.into());
        if t < zero || t > one || u < zero || u > one {
            return SegSeg::Empty;
        }
        let p = Point::new(&a1.x + &t * &d1x, &a1.y + &t * &d1y);
        let proper = t > zero && t < one && u > zero && u < one;
        SegSeg::Point { p, proper }
    }
}

/// Intersection points of the segment [a, b] (closed) with the circle of
/// center c and radius-squared r2. Tangency yields one point.
pub fn seg_circle_intersections(a: &Point, b: &Point, c: &Point, r2: &Rat) -> Vec<AlgPoint> {
    line_circle_intersections(a, b, c, r2)
        .into_iter()
        .filter(|(_, t)| {
            t.cmp_rat(&Rat::zero()) != Ordering::Less
                && t.cmp_rat(&Rat::from_integer(1.into())) != Ordering::Greater
        })
        .map(|(p, _)| p)
        .collect()
}

/// Intersections of the full line through a, b with a circle, with the line
/// parameter of each point. Points are returned in increasing parameter order.
pub fn line_circle_intersections(
    a: &Point,
    b: &Point,
    c: &Point,
    r2: &Rat,
) -> Vec<(AlgPoint, Quad)> {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let fx = &a.x - &c.x;
    let fy = &a.y - &c.y;
    // |f + t d|^2 = r^2
    let qa = &dx * &dx + &dy * &dy;
    let qb = (&fx * &dx + &fy * &dy) * Rat::from_integer(2.into());
    let qc = &fx * &fx + &fy * &fy - r2;
    crate::num::solve_quadratic(&qa, &qb, &qc)
        .into_iter()
        .map(|t| {
            let px = Quad::from_rat(a.x.clone()).add(&t.scale(&dx));
            let py = Quad::from_rat(a.y.clone()).add(&t.scale(&dy));
            (AlgPoint { x: px, y: py }, t)
        })
        .collect()
}

/// Axis-aligned bounding box with exact bounds.
#[derive(Clone, Debug)]
pub struct BBox {
    pub min_x: Rat,
    pub max_x: Rat,
    pub min_y: Rat,
    pub max_y: Rat,
}

impl BBox {
    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Option<BBox> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        let mut b = BBox {
            min_x: first.x.clone(),
            max_x: first.x.clone(),
            min_y: first.y.clone(),
            max_y: first.y.clone(),
        };
        for p in it {
            if p.x < b.min_x {
                b.min_x = p.x.clone();
            }
            if p.x > b.max_x {
                b.max_x = p.x.clone();
            }
            if p.y < b.min_y {
                b.min_y = p.y.clone();
            }
            if p.y > b.max_y {
                b.max_y = p.y.clone();
            }
        }
        Some(b)
    }

    pub fn intersects(&self, o: &BBox) -> bool {
        self.min_x <= o.max_x && o.min_x <= self.max_x && self.min_y <= o.max_y && o.min_y <= self.max_y
    }

    pub fn expand(&mut self, r: &Rat) {
        self.min_x -= r;
        self.max_x += r;
        self.min_y -= r;
        self.max_y += r;
    }
}
