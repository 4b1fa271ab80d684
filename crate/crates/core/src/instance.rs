//! Problem instances: obstacles plus the point pair and reference path.

use crate::error::Error;
use crate::geom::parity::ReferencePath;
use crate::geom::shape::{Obstacle, Shape};
use crate::geom::Point;
use crate::num::Rat;
use num_traits::{One, Signed};
use std::collections::BTreeSet;

/// A point-separation instance. The reference path defaults to the segment
/// from s to t and is the cut locus for all cover constructions.
#[derive(Clone, Debug)]
pub struct Instance {
    pub obstacles: Vec<Obstacle>,
    pub s: Point,
    pub t: Point,
    pub pi: ReferencePath,
}

impl Instance {
    pub fn new(
        obstacles: Vec<Obstacle>,
        s: Point,
        t: Point,
        pi: Option<ReferencePath>,
    ) -> Result<Self, Error> {
        if s == t {
            return Err(Error::InvalidInstance("s and t coincide".into()));
        }
        let pi = match pi {
            Some(p) => {
                if p.s() != &s || p.t() != &t {
                    return Err(Error::InvalidInstance(
                        "reference path endpoints must be s and t".into(),
                    ));
                }
                p
            }
            None => ReferencePath::segment(s.clone(), t.clone())?,
        };
        let mut ids = BTreeSet::new();
        for ob in &obstacles {
            if !ids.insert(ob.id) {
                return Err(Error::InvalidInstance(format!("duplicate obstacle id {}", ob.id)));
            }
            if ob.weight.is_negative() {
                return Err(Error::InvalidInstance(format!(
                    "obstacle {} has negative weight",
                    ob.id
                )));
            }
            ob.shape.validate()?;
            // The boundary curve must avoid the punctures. A filled disk may
            // still contain s or t strictly inside; it then individually
            // separates and is stripped before any cover construction.
            if ob.shape.boundary_contains(&s) || ob.shape.boundary_contains(&t) {
                return Err(Error::PointOnObstacle(ob.id));
            }
        }
        Ok(Instance { obstacles, s, t, pi })
    }

    pub fn obstacle(&self, id: u32) -> Option<&Obstacle> {
        self.obstacles.iter().find(|o| o.id == id)
    }

    pub fn has_unit_weights(&self) -> bool {
        self.obstacles.iter().all(|o| o.weight.is_one())
    }

    pub fn total_weight(&self, ids: &[u32]) -> Rat {
        ids.iter()
            .filter_map(|id| self.obstacle(*id))
            .map(|o| o.weight.clone())
            .sum()
    }

    /// Instance with s and t exchanged (reference path reversed).
    pub fn swapped(&self) -> Instance {
        Instance {
            obstacles: self.obstacles.clone(),
            s: self.t.clone(),
            t: self.s.clone(),
            pi: self.pi.reversed(),
        }
    }

    /// Instance with every weight scaled by a positive factor.
    pub fn scaled_weights(&self, c: &Rat) -> Instance {
        let mut out = self.clone();
        for ob in &mut out.obstacles {
            ob.weight = &ob.weight * c;
        }
        out
    }

    /// Applies a rational rigid motion: rotation by (cos, sin) then
    /// translation. (cos, sin) must satisfy cos^2 + sin^2 = 1.
    pub fn transformed(&self, cos: &Rat, sin: &Rat, dx: &Rat, dy: &Rat) -> Instance {
        assert!(cos * cos + sin * sin == Rat::one(), "not a rational rotation");
        let map = |p: &Point| -> Point {
            Point::new(cos * &p.x - sin * &p.y + dx, sin * &p.x + cos * &p.y + dy)
        };
        let obstacles = self
            .obstacles
            .iter()
            .map(|ob| {
                let shape = match &ob.shape {
                    Shape::Segment { a, b } => Shape::Segment { a: map(a), b: map(b) },
                    Shape::Polyline { points } => {
                        Shape::Polyline { points: points.iter().map(&map).collect() }
                    }
                    Shape::Circle { center, radius } => {
                        Shape::Circle { center: map(center), radius: radius.clone() }
                    }
                    Shape::Disk { center, radius } => {
                        Shape::Disk { center: map(center), radius: radius.clone() }
                    }
                };
                Obstacle { id: ob.id, weight: ob.weight.clone(), shape }
            })
            .collect();
        let pi = ReferencePath::new(self.pi.vertices().iter().map(&map).collect())
            .expect("rigid motion preserves path validity");
        Instance { obstacles, s: map(&self.s), t: map(&self.t), pi }
    }
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
    fn rejects_obstacle_through_terminal() {
        let bad = seg(0, pt(-1, 0), pt(1, 0));
        let r = Instance::new(vec![bad], pt(0, 0), pt(5, 0), None);
        assert!(matches!(r, Err(Error::PointOnObstacle(0))));
    }

    #[test]
    fn allows_disk_containing_terminal_interior() {
        let disk = Obstacle {
            id: 0,
            weight: rat(1),
            shape: Shape::Disk { center: pt(0, 0), radius: rat(2) },
        };
        let inst = Instance::new(vec![disk], pt(0, 1), pt(9, 0), None);
        assert!(inst.is_ok());
    }

    #[test]
    fn rejects_duplicate_ids() {
        let a = seg(3, pt(0, 1), pt(1, 1));
        let b = seg(3, pt(0, 2), pt(1, 2));
        let r = Instance::new(vec![a, b], pt(0, 0), pt(5, 0), None);
        assert!(r.is_err());
    }

    #[test]
    fn rigid_motion_345() {
        let inst = Instance::new(
            vec![seg(0, pt(0, 1), pt(1, 1))],
            pt(0, 0),
            pt(5, 0),
            None,
        )
        .unwrap();
        let rot = inst.transformed(&ratio(3, 5), &ratio(4, 5), &rat(7), &rat(-2));
        assert_eq!(rot.s, pt(7, -2));
        assert_eq!(rot.t, Point::new(rat(10), rat(2)));
    }
}
