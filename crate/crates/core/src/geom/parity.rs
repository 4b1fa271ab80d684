//! Crossing parity of curve pieces against the reference path.
//!
//! The reference path is an oriented simple polyline from s to t. Crossings
//! are counted with a symbolic perturbation: a chain touching the path
//! without switching sides counts 0, switching sides counts 1, and a chain
//! endpoint lying exactly on the path is perturbed to the side of the chain's
//! adjacent interior.

use super::{seg_seg_intersection, AlgPoint, Point, SegSeg};
use crate::error::Error;
use crate::num::{Quad, Rat};
use num_traits::Zero;
use std::cmp::Ordering;

/// Which side of the oriented reference path a point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Oriented simple polyline from s to t.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferencePath {
    points: Vec<Point>,
}

impl ReferencePath {
    pub fn segment(s: Point, t: Point) -> Result<Self, Error> {
        ReferencePath::new(vec![s, t])
    }

    pub fn new(points: Vec<Point>) -> Result<Self, Error> {
        if points.len() < 2 {
            return Err(Error::InvalidReferencePath("needs at least two vertices".into()));
        }
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidReferencePath("zero-length edge".into()));
            }
        }
        let n = points.len() - 1;
        for i in 0..n {
            for j in (i + 1)..n {
                let r = seg_seg_intersection(&points[i], &points[i + 1], &points[j], &points[j + 1]);
                match (&r, j == i + 1) {
                    (SegSeg::Empty, _) => {}
                    (SegSeg::Point { p, .. }, true) if *p == points[j] => {}
                    _ => return Err(Error::InvalidReferencePath("path is not simple".into())),
                }
            }
        }
        Ok(ReferencePath { points })
    }

    pub fn s(&self) -> &Point {
        self.points.first().unwrap()
    }

    pub fn t(&self) -> &Point {
        self.points.last().unwrap()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.points
    }

    pub fn num_edges(&self) -> usize {
        self.points.len() - 1
    }

    pub fn edge(&self, j: usize) -> (&Point, &Point) {
        (&self.points[j], &self.points[j + 1])
    }

    pub fn reversed(&self) -> ReferencePath {
        let mut points = self.points.clone();
        points.reverse();
        ReferencePath { points }
    }

    /// Locates an exact point on the path, preferring vertex classification.
    pub fn locate(&self, p: &AlgPoint) -> Option<PathLoc> {
        for (v, q) in self.points.iter().enumerate() {
            if p.x.cmp_rat(&q.x) == Ordering::Equal && p.y.cmp_rat(&q.y) == Ordering::Equal {
                return Some(PathLoc::Vertex(v));
            }
        }
        for j in 0..self.num_edges() {
            let (a, b) = self.edge(j);
            if super::on_segment_alg(a, b, p) {
                return Some(PathLoc::Interior(j));
            }
        }
        None
    }

    /// Local rays of the path at a location: (forward, backward).
    fn rays(&self, loc: &PathLoc) -> Result<((Rat, Rat), (Rat, Rat)), Error> {
        match loc {
            PathLoc::Interior(j) => {
                let (a, b) = self.edge(*j);
                let d = (&b.x - &a.x, &b.y - &a.y);
                Ok((d.clone(), (-d.0, -d.1)))
            }
            PathLoc::Vertex(v) => {
                if *v == 0 || *v == self.points.len() - 1 {
                    return Err(Error::TouchesTerminal);
                }
                let (a1, b1) = self.edge(*v - 1);
                let (a2, b2) = self.edge(*v);
                let fwd = (&b2.x - &a2.x, &b2.y - &a2.y);
                let back = (&a1.x - &b1.x, &a1.y - &b1.y);
                Ok((fwd, back))
            }
        }
    }
}

/// Location of a point on the reference path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathLoc {
    Interior(usize),
    Vertex(usize),
}

/// Result of walking a chain against the path.
#[derive(Clone, Debug)]
pub struct ChainCrossing {
    pub parity: u8,
    /// Perturbed side of the chain start, when it lies on the path.
    pub start_side: Option<Side>,
    /// Perturbed side of the chain end, when it lies on the path.
    pub end_side: Option<Side>,
}

/// Classifies direction `w` (components in Q(sqrt(d))) against the local
/// wedge of the path given by forward/backward rays.
pub(crate) fn wedge_side(
    r_fwd: &(Rat, Rat),
    r_back: &(Rat, Rat),
    w: (&Quad, &Quad),
) -> Result<Side, Error> {
    let cross_r = |r: &(Rat, Rat)| -> Quad { w.1.scale(&r.0).sub(&w.0.scale(&r.1)) };
    let dot_r = |r: &(Rat, Rat)| -> Quad { w.0.scale(&r.0).add(&w.1.scale(&r.1)) };
    let cf = cross_r(r_fwd);
    if cf.is_zero_val() && dot_r(r_fwd).sign() == Ordering::Greater {
        return Err(Error::DegenerateOverlap);
    }
    let cb = cross_r(r_back);
    if cb.is_zero_val() && dot_r(r_back).sign() == Ordering::Greater {
        return Err(Error::DegenerateOverlap);
    }
    let c_fb = &r_fwd.0 * &r_back.1 - &r_fwd.1 * &r_back.0;
    let sf = cf.sign();
    let sb = cb.sign();
    let left = match c_fb.cmp(&Rat::zero()) {
        Ordering::Greater => sf == Ordering::Greater && sb == Ordering::Less,
        Ordering::Less => sf == Ordering::Greater || sb == Ordering::Less,
        Ordering::Equal => sf == Ordering::Greater,
    };
    Ok(if left { Side::Left } else { Side::Right })
}

#[derive(Clone, Debug)]
struct RawEvent {
    piece: usize,
    t0: Quad,
    t1: Quad,
    loc0: PathLoc,
    loc1: PathLoc,
}

fn classify_u(u: &Quad, j: usize) -> PathLoc {
    if u.cmp_rat(&Rat::zero()) == Ordering::Equal {
        PathLoc::Vertex(j)
    } else if u.cmp_rat(&Rat::from_integer(1.into())) == Ordering::Equal {
        PathLoc::Vertex(j + 1)
    } else {
        PathLoc::Interior(j)
    }
}

/// Intersection events of one chain piece with one path edge.
fn piece_edge_event(
    p: &AlgPoint,
    q: &AlgPoint,
    a: &Point,
    b: &Point,
    j: usize,
    piece: usize,
) -> Option<RawEvent> {
    let zero = Rat::zero();
    let one = Rat::from_integer(1.into());
    let dpx = q.x.sub(&p.x);
    let dpy = q.y.sub(&p.y);
    let dex = Quad::from_rat(&b.x - &a.x);
    let dey = Quad::from_rat(&b.y - &a.y);
    let ex = Quad::from_rat(a.x.clone()).sub(&p.x);
    let ey = Quad::from_rat(a.y.clone()).sub(&p.y);
    let denom = dpx.mul(&dey).sub(&dpy.mul(&dex));
    if !denom.is_zero_val() {
        let t = ex.mul(&dey).sub(&ey.mul(&dex)).div(&denom);
        if t.cmp_rat(&zero) == Ordering::Less || t.cmp_rat(&one) == Ordering::Greater {
            return None;
        }
        let u = ex.mul(&dpy).sub(&ey.mul(&dpx)).div(&denom);
        if u.cmp_rat(&zero) == Ordering::Less || u.cmp_rat(&one) == Ordering::Greater {
            return None;
        }
        let loc = classify_u(&u, j);
        return Some(RawEvent { piece, t0: t.clone(), t1: t, loc0: loc, loc1: loc });
    }
    // Parallel: collinear iff a lies on the piece's supporting line.
    if !ex.mul(&dpy).sub(&ey.mul(&dpx)).is_zero_val() {
        return None;
    }
    let len2 = dpx.mul(&dpx).add(&dpy.mul(&dpy));
    let ta = ex.mul(&dpx).add(&ey.mul(&dpy)).div(&len2);
    let bx = Quad::from_rat(b.x.clone()).sub(&p.x);
    let by = Quad::from_rat(b.y.clone()).sub(&p.y);
    let tb = bx.mul(&dpx).add(&by.mul(&dpy)).div(&len2);
    let (mut lo, mut hi) = if ta.sub(&tb).sign() == Ordering::Greater {
        (tb, ta)
    } else {
        (ta, tb)
    };
    let zero_q = Quad::zero();
    let one_q = Quad::from_rat(one.clone());
    if lo.cmp_rat(&zero) == Ordering::Less {
        lo = zero_q.clone();
    }
    if hi.cmp_rat(&one) == Ordering::Greater {
        hi = one_q;
    }
    if lo.sub(&hi).sign() == Ordering::Greater {
        return None;
    }
    // Map both ends back to edge parameters for location classification.
    let elen2 = dex.mul(&dex).add(&dey.mul(&dey));
    let u_of = |t: &Quad| -> Quad {
        let xx = p.x.add(&t.mul(&dpx)).sub(&Quad::from_rat(a.x.clone()));
        let yy = p.y.add(&t.mul(&dpy)).sub(&Quad::from_rat(a.y.clone()));
        xx.mul(&dex).add(&yy.mul(&dey)).div(&elen2)
    };
    let loc0 = classify_u(&u_of(&lo), j);
    let loc1 = classify_u(&u_of(&hi), j);
    Some(RawEvent { piece, t0: lo, t1: hi, loc0, loc1 })
}

#[derive(Clone, Debug)]
struct Component {
    k0: usize,
    t0: Quad,
    loc0: PathLoc,
    k1: usize,
    t1: Quad,
    loc1: PathLoc,
}

/// Walks a straight-piece chain (at most one algebraic endpoint per piece)
/// against the reference path, counting transversal crossings mod 2.
///
/// `start_override` fixes the perturbed side of the chain start when it lies
/// on the path (used to anchor canonical points consistently).
pub fn chain_crossing_parity(
    chain: &[AlgPoint],
    pi: &ReferencePath,
    start_override: Option<Side>,
) -> Result<ChainCrossing, Error> {
    assert!(chain.len() >= 2, "chain needs at least two points");
    let pieces: Vec<(&AlgPoint, &AlgPoint)> =
        chain.windows(2).map(|w| (&w[0], &w[1])).collect();
    for (p, q) in &pieces {
        if p.same_point(q) {
            return Err(Error::InvalidShape("zero-length chain piece".into()));
        }
    }
    let mut raws: Vec<RawEvent> = Vec::new();
    for (k, (p, q)) in pieces.iter().enumerate() {
        for j in 0..pi.num_edges() {
            let (a, b) = pi.edge(j);
            if let Some(ev) = piece_edge_event(p, q, a, b, j, k) {
                raws.push(ev);
            }
        }
    }
    if raws.is_empty() {
        return Ok(ChainCrossing { parity: 0, start_side: None, end_side: None });
    }
    raws.sort_by(|x, y| {
        x.piece
            .cmp(&y.piece)
            .then_with(|| x.t0.cmp_general(&y.t0))
            .then_with(|| x.t1.cmp_general(&y.t1))
    });
    let one = Rat::from_integer(1.into());
    let adjacent = |k1: usize, t1: &Quad, k2: usize, t2: &Quad| -> bool {
        (k1 == k2 && t1.cmp_general(t2) == Ordering::Equal)
            || (k2 == k1 + 1
                && t1.cmp_rat(&one) == Ordering::Equal
                && t2.cmp_rat(&Rat::zero()) == Ordering::Equal)
    };
    let mut comps: Vec<Component> = Vec::new();
    for ev in raws {
        if let Some(cur) = comps.last_mut() {
            if adjacent(cur.k1, &cur.t1, ev.piece, &ev.t0) {
                // Extend unless the event is a duplicate point at the same spot.
                if !(ev.piece == cur.k1 && ev.t1.cmp_general(&cur.t1) == Ordering::Equal) {
                    cur.k1 = ev.piece;
                    cur.t1 = ev.t1;
                    cur.loc1 = ev.loc1;
                }
                continue;
            }
        }
        comps.push(Component {
            k0: ev.piece,
            t0: ev.t0,
            loc0: ev.loc0,
            k1: ev.piece,
            t1: ev.t1,
            loc1: ev.loc1,
        });
    }

    let dir_of = |k: usize| -> (Quad, Quad) {
        let (p, q) = &pieces[k];
        (q.x.sub(&p.x), q.y.sub(&p.y))
    };
    let np = pieces.len();
    let mut count = 0u32;
    let mut start_side: Option<Side> = None;
    let mut end_side: Option<Side> = None;
    for comp in &comps {
        let is_start = comp.k0 == 0 && comp.t0.cmp_rat(&Rat::zero()) == Ordering::Equal;
        let is_end = comp.k1 == np - 1 && comp.t1.cmp_rat(&one) == Ordering::Equal;
        let side_in: Option<Side> = if is_start {
            start_override
        } else {
            let d = if comp.t0.cmp_rat(&Rat::zero()) == Ordering::Greater {
                dir_of(comp.k0)
            } else {
                debug_assert!(comp.k0 > 0);
                dir_of(comp.k0 - 1)
            };
            let (rf, rb) = pi.rays(&comp.loc0)?;
            let w = (d.0.neg(), d.1.neg());
            Some(wedge_side(&rf, &rb, (&w.0, &w.1))?)
        };
        let side_out: Option<Side> = if is_end {
            None
        } else {
            let d = if comp.t1.cmp_rat(&one) == Ordering::Less {
                dir_of(comp.k1)
            } else {
                debug_assert!(comp.k1 + 1 < np);
                dir_of(comp.k1 + 1)
            };
            let (rf, rb) = pi.rays(&comp.loc1)?;
            Some(wedge_side(&rf, &rb, (&d.0, &d.1))?)
        };
        match (side_in, side_out) {
            (Some(a), Some(b)) => {
                if a != b {
                    count += 1;
                }
                if is_start {
                    start_side = Some(a);
                }
            }
            (Some(a), None) => {
                end_side = Some(a);
                if is_start {
                    start_side = Some(a);
                }
            }
            (None, Some(b)) => {
                start_side = Some(b);
            }
            (None, None) => {
                // The whole chain lies along the path.
                return Err(Error::DegenerateOverlap);
            }
        }
    }
    Ok(ChainCrossing { parity: (count % 2) as u8, start_side, end_side })
}

/// Crossing parity of a rational polyline chain with the reference path.
pub fn polyline_crossing_parity(points: &[Point], pi: &ReferencePath) -> Result<u8, Error> {
    let chain: Vec<AlgPoint> = points.iter().map(AlgPoint::from_point).collect();
    Ok(chain_crossing_parity(&chain, pi, None)?.parity)
}
