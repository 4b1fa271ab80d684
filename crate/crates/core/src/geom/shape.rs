//! Obstacle shapes and their basic queries.

use super::{on_segment, on_segment_alg, seg_seg_intersection, AlgPoint, BBox, Point, SegSeg};
use crate::error::Error;
use crate::num::Rat;
use num_traits::Signed;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Segment { a: Point, b: Point },
    Polyline { points: Vec<Point> },
    /// The boundary circle only.
    Circle { center: Point, radius: Rat },
    /// A filled disk: boundary circle plus interior.
    Disk { center: Point, radius: Rat },
}

/// A weighted obstacle curve (possibly with filled interior).
#[derive(Clone, Debug)]
pub struct Obstacle {
    pub id: u32,
    pub weight: Rat,
    pub shape: Shape,
}

impl Shape {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            Shape::Segment { a, b } => {
                if a == b {
                    return Err(Error::InvalidShape("segment endpoints coincide".into()));
                }
            }
            Shape::Polyline { points } => {
                if points.len() < 2 {
                    return Err(Error::InvalidShape("polyline needs at least 2 points".into()));
                }
                for w in points.windows(2) {
                    if w[0] == w[1] {
                        return Err(Error::InvalidShape("polyline has a zero-length piece".into()));
                    }
                }
                // Simplicity: non-adjacent pieces disjoint, adjacent pieces meet
                // only at the shared vertex.
                let n = points.len() - 1;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let r = seg_seg_intersection(
                            &points[i],
                            &points[i + 1],
                            &points[j],
                            &points[j + 1],
                        );
                        match (&r, j == i + 1) {
                            (SegSeg::Empty, _) => {}
                            (SegSeg::Point { p, .. }, true) if *p == points[j] => {}
                            _ => {
                                return Err(Error::InvalidShape(
                                    "polyline is not simple".into(),
                                ))
                            }
                        }
                    }
                }
            }
            Shape::Circle { radius, .. } | Shape::Disk { radius, .. } => {
                if !radius.is_positive() {
                    return Err(Error::InvalidShape("radius must be positive".into()));
                }
            }
        }
        Ok(())
    }

    pub fn radius_squared(&self) -> Option<Rat> {
        match self {
            Shape::Circle { radius, .. } | Shape::Disk { radius, .. } => Some(radius * radius),
            _ => None,
        }
    }

    /// True if p lies on the shape's boundary curve.
    pub fn boundary_contains(&self, p: &Point) -> bool {
        match self {
            Shape::Segment { a, b } => on_segment(a, b, p),
            Shape::Polyline { points } => {
                points.windows(2).any(|w| on_segment(&w[0], &w[1], p))
            }
            Shape::Circle { center, .. } | Shape::Disk { center, .. } => {
                let dx = &p.x - &center.x;
                let dy = &p.y - &center.y;
                &dx * &dx + &dy * &dy == self.radius_squared().unwrap()
            }
        }
    }

    /// True if p belongs to the obstacle as a point set (interiors count for
    /// disks only).
    pub fn contains_point(&self, p: &Point) -> bool {
        match self {
            Shape::Disk { center, .. } => {
                let dx = &p.x - &center.x;
                let dy = &p.y - &center.y;
                &dx * &dx + &dy * &dy <= self.radius_squared().unwrap()
            }
            _ => self.boundary_contains(p),
        }
    }

    pub fn contains_alg_point(&self, p: &AlgPoint) -> bool {
        if let Some(rp) = p.rational() {
            return self.contains_point(&rp);
        }
        match self {
            Shape::Segment { a, b } => on_segment_alg(a, b, p),
            Shape::Polyline { points } => points.windows(2).any(|w| on_segment_alg(&w[0], &w[1], p)),
            Shape::Circle { center, .. } | Shape::Disk { center, .. } => {
                let cx = p.x.sub(&crate::num::Quad::from_rat(center.x.clone()));
                let cy = p.y.sub(&crate::num::Quad::from_rat(center.y.clone()));
                let d2 = cx.mul(&cx).add(&cy.mul(&cy));
                let r2 = self.radius_squared().unwrap();
                let cmp = d2.cmp_rat(&r2);
                if matches!(self, Shape::Disk { .. }) {
                    cmp != Ordering::Greater
                } else {
                    cmp == Ordering::Equal
                }
            }
        }
    }

    pub fn bbox(&self) -> BBox {
        match self {
            Shape::Segment { a, b } => BBox::of_points([a, b]).unwrap(),
            Shape::Polyline { points } => BBox::of_points(points.iter()).unwrap(),
            Shape::Circle { center, radius } | Shape::Disk { center, radius } => {
                let mut b = BBox::of_points([center]).unwrap();
                b.expand(radius);
                b
            }
        }
    }

    /// Straight pieces of the shape (segments and polylines only).
    pub fn pieces(&self) -> Vec<(Point, Point)> {
        match self {
            Shape::Segment { a, b } => vec![(a.clone(), b.clone())],
            Shape::Polyline { points } => {
                points.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
            }
            _ => vec![],
        }
    }

    pub fn is_round(&self) -> bool {
        matches!(self, Shape::Circle { .. } | Shape::Disk { .. })
    }
}

/// The point of maximum y on the obstacle, ties broken by maximum x.
/// For circles and disks this is the top of the boundary circle.
pub fn canonical_point(obstacle: &Obstacle) -> Point {
    match &obstacle.shape {
        Shape::Segment { a, b } => max_yx(&[a.clone(), b.clone()]),
        Shape::Polyline { points } => max_yx(points),
        Shape::Circle { center, radius } | Shape::Disk { center, radius } => {
            Point::new(center.x.clone(), &center.y + radius)
        }
    }
}

fn max_yx(points: &[Point]) -> Point {
    points
        .iter()
        .max_by(|p, q| p.y.cmp(&q.y).then_with(|| p.x.cmp(&q.x)))
        .unwrap()
        .clone()
}

/// Whether the obstacle alone separates s from t.
///
/// Arcs (segments, polylines) never disconnect the plane. A circle separates
/// iff exactly one endpoint lies strictly inside it; a filled disk iff exactly
/// one endpoint lies in the closed disk.
pub fn self_separates(obstacle: &Obstacle, s: &Point, t: &Point) -> Result<bool, Error> {
    match &obstacle.shape {
        Shape::Segment { .. } | Shape::Polyline { .. } => {
            if obstacle.shape.contains_point(s) || obstacle.shape.contains_point(t) {
                return Err(Error::PointOnObstacle(obstacle.id));
            }
            Ok(false)
        }
        Shape::Circle { center, .. } => {
            if obstacle.shape.boundary_contains(s) || obstacle.shape.boundary_contains(t) {
                return Err(Error::PointOnObstacle(obstacle.id));
            }
            let r2 = obstacle.shape.radius_squared().unwrap();
            let ins = strictly_inside(center, &r2, s);
            let int = strictly_inside(center, &r2, t);
            Ok(ins != int)
        }
        Shape::Disk { center, .. } => {
            if obstacle.shape.boundary_contains(s) || obstacle.shape.boundary_contains(t) {
                return Err(Error::PointOnObstacle(obstacle.id));
            }
            let r2 = obstacle.shape.radius_squared().unwrap();
            let ins = inside_closed(center, &r2, s);
            let int = inside_closed(center, &r2, t);
            Ok(ins != int)
        }
    }
}

pub(crate) fn strictly_inside(center: &Point, r2: &Rat, p: &Point) -> bool {
    let dx = &p.x - &center.x;
    let dy = &p.y - &center.y;
    &(&dx * &dx + &dy * &dy) < r2
}

pub(crate) fn inside_closed(center: &Point, r2: &Rat, p: &Point) -> bool {
    let dx = &p.x - &center.x;
    let dy = &p.y - &center.y;
    &(&dx * &dx + &dy * &dy) <= r2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use crate::num::{rat, ratio};

    fn seg(id: u32, a: Point, b: Point) -> Obstacle {
        Obstacle { id, weight: rat(1), shape: Shape::Segment { a, b } }
    }

    #[test]
    fn canonical_examples() {
        let o = seg(0, pt(0, 0), pt(2, 3));
        assert_eq!(canonical_point(&o), pt(2, 3));
        let o = Obstacle {
            id: 1,
            weight: rat(1),
            shape: Shape::Circle { center: pt(1, 1), radius: rat(2) },
        };
        assert_eq!(canonical_point(&o), pt(1, 3));
        let o = seg(2, pt(0, 5), pt(4, 5));
        assert_eq!(canonical_point(&o), pt(4, 5));
    }

    #[test]
    fn self_separation_examples() {
        let circle = Obstacle {
            id: 0,
            weight: rat(1),
            shape: Shape::Circle { center: pt(0, 0), radius: rat(1) },
        };
        assert!(self_separates(&circle, &pt(0, 0), &pt(3, 0)).unwrap());
        let far = Obstacle {
            id: 1,
            weight: rat(1),
            shape: Shape::Circle { center: pt(5, 5), radius: rat(1) },
        };
        assert!(!self_separates(&far, &pt(0, 0), &pt(3, 0)).unwrap());
        let s = seg(2, pt(-1, -1), pt(1, 1));
        assert!(!self_separates(&s, &pt(2, 0), &pt(3, 0)).unwrap());
    }

    #[test]
    fn disk_self_separation_uses_closed_region() {
        let disk = Obstacle {
            id: 0,
            weight: rat(1),
            shape: Shape::Disk { center: pt(0, 0), radius: rat(2) },
        };
        // s strictly inside the disk interior, t outside.
        assert!(self_separates(&disk, &pt(0, 1), &pt(5, 0)).unwrap());
        // Both outside.
        assert!(!self_separates(&disk, &pt(4, 0), &pt(5, 0)).unwrap());
        // On the boundary is rejected.
        assert!(self_separates(&disk, &pt(0, 2), &pt(5, 0)).is_err());
    }

    #[test]
    fn polyline_simplicity() {
        let ok = Shape::Polyline { points: vec![pt(0, 0), pt(1, 0), pt(1, 1)] };
        assert!(ok.validate().is_ok());
        let self_crossing = Shape::Polyline {
            points: vec![pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)],
        };
        assert!(self_crossing.validate().is_err());
        let backtrack = Shape::Polyline { points: vec![pt(0, 0), pt(2, 0), pt(1, 0)] };
        assert!(backtrack.validate().is_err());
    }

    #[test]
    fn contains_checks() {
        let d = Shape::Disk { center: pt(0, 0), radius: rat(2) };
        assert!(d.contains_point(&pt(1, 1)));
        assert!(d.contains_point(&pt(2, 0)));
        assert!(!d.contains_point(&pt(3, 0)));
        let c = Shape::Circle { center: pt(0, 0), radius: rat(2) };
        assert!(!c.contains_point(&pt(1, 1)));
        assert!(c.contains_point(&pt(2, 0)));
        let s = Shape::Segment { a: pt(0, 0), b: pt(4, 4) };
        assert!(s.contains_point(&Point::new(ratio(1, 2), ratio(1, 2))));
    }
}
