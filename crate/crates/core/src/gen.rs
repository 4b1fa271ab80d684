//! Deterministic random-instance and fixture generators.
//!
//! Obstacle coordinates are dyadic rationals while s and t sit on thirds, so
//! no obstacle vertex or pairwise intersection can land exactly on the
//! reference segment by accident.

use crate::error::Error;
use crate::geom::parity::ReferencePath;
use crate::geom::shape::{Obstacle, Shape};
use crate::geom::Point;
use crate::instance::Instance;
use crate::num::{rat, ratio, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Segments,
    AxisAligned,
    Polylines,
    Disks,
}

impl GenKind {
    pub fn parse(s: &str) -> Option<GenKind> {
        match s {
            "segments" => Some(GenKind::Segments),
            "axis" | "axis-aligned" => Some(GenKind::AxisAligned),
            "polylines" => Some(GenKind::Polylines),
            "disks" => Some(GenKind::Disks),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub n: usize,
    pub kind: GenKind,
    /// Weights drawn as num/den with value in [lo, hi]; unit weights if None.
    pub weight_range: Option<(i64, i64)>,
    /// Box side length scales the coordinate universe.
    pub box_side: i64,
}

impl GenConfig {
    pub fn new(n: usize, kind: GenKind) -> GenConfig {
        GenConfig { n, kind, weight_range: None, box_side: 8 }
    }

    pub fn weighted(mut self, lo: i64, hi: i64) -> GenConfig {
        self.weight_range = Some((lo, hi));
        self
    }

    pub fn box_side(mut self, side: i64) -> GenConfig {
        self.box_side = side;
        self
    }
}

fn dyadic(rng: &mut ChaCha8Rng, side: i64) -> Rat {
    // Denominator 1, 2, 4, or 8.
    let den = 1i64 << rng.gen_range(0..4);
    ratio(rng.gen_range(0..=side * den), den)
}

fn weight(rng: &mut ChaCha8Rng, range: Option<(i64, i64)>) -> Rat {
    match range {
        None => rat(1),
        Some((lo, hi)) => {
            let den = rng.gen_range(1..=4i64);
            ratio(rng.gen_range(lo * den..=hi * den), den)
        }
    }
}

/// s sits inside the cloud, t to its right, both on thirds.
fn terminals(side: i64) -> (Point, Point) {
    let s = Point::new(ratio(side, 3) + ratio(1, 3), ratio(side, 2) + ratio(1, 3));
    let t = Point::new(rat(side + 2) + ratio(1, 3), ratio(side, 2) + ratio(1, 3));
    (s, t)
}

/// Deterministic random instance. Degenerate draws (obstacles through s or
/// t, zero-length pieces, intersections exactly on the reference segment)
/// are rejected and redrawn.
pub fn random_instance(cfg: &GenConfig, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = cfg.box_side;
    let (s, t) = terminals(side);
    'outer: for _ in 0..1000 {
        let mut obstacles = Vec::with_capacity(cfg.n);
        for id in 0..cfg.n {
            let w = weight(&mut rng, cfg.weight_range);
            let shape = loop {
                let candidate = match cfg.kind {
                    GenKind::Segments => {
                        let a = Point::new(dyadic(&mut rng, side), dyadic(&mut rng, side));
                        let b = Point::new(dyadic(&mut rng, side), dyadic(&mut rng, side));
                        if a == b {
                            continue;
                        }
                        Shape::Segment { a, b }
                    }
                    GenKind::AxisAligned => {
                        let a = Point::new(dyadic(&mut rng, side), dyadic(&mut rng, side));
                        let len = ratio(rng.gen_range(1..=2 * side), 2);
                        let b = if rng.gen_bool(0.5) {
                            Point::new(&a.x + &len, a.y.clone())
                        } else {
                            Point::new(a.x.clone(), &a.y + &len)
                        };
                        Shape::Segment { a, b }
                    }
                    GenKind::Polylines => {
                        let k = rng.gen_range(3..=4);
                        let points: Vec<Point> = (0..k)
                            .map(|_| Point::new(dyadic(&mut rng, side), dyadic(&mut rng, side)))
                            .collect();
                        Shape::Polyline { points }
                    }
                    GenKind::Disks => {
                        let c = Point::new(dyadic(&mut rng, side), dyadic(&mut rng, side));
                        let r = ratio(rng.gen_range(2..=2 * side.min(4)), 4);
                        Shape::Disk { center: c, radius: r }
                    }
                };
                if candidate.validate().is_ok()
                    && !candidate.boundary_contains(&s)
                    && !candidate.boundary_contains(&t)
                {
                    break candidate;
                }
            };
            obstacles.push(Obstacle { id: id as u32, weight: w, shape });
        }
        // Reject instances with an obstacle-pair intersection exactly on the
        // reference segment (keeps every construction degeneracy-free).
        for i in 0..obstacles.len() {
            for j in (i + 1)..obstacles.len() {
                for rep in crate::geom::intersect::obstacles_intersect(&obstacles[i], &obstacles[j])
                {
                    if crate::geom::on_segment_alg(&s, &t, &rep.point) {
                        continue 'outer;
                    }
                }
            }
        }
        match Instance::new(obstacles, s.clone(), t.clone(), None) {
            Ok(inst) => return inst,
            Err(_) => continue,
        }
    }
    panic!("failed to draw a nondegenerate instance after 1000 attempts");
}

/// A detour reference path with three bends, routed above the instance; the
/// k-th candidate uses a different clearance so degenerate alignments can be
/// skipped by retrying.
pub fn detour_path(instance: &Instance, k: u64) -> Result<ReferencePath, Error> {
    let mut max_y = instance.s.y.clone().max(instance.t.y.clone());
    for ob in &instance.obstacles {
        let b = ob.shape.bbox();
        if b.max_y > max_y {
            max_y = b.max_y;
        }
    }
    let lift = &max_y + rat(2) + ratio(1, 5) + ratio(k as i64, 7);
    let dx = ratio(1, 5) + ratio(k as i64, 11);
    let a = Point::new(&instance.s.x - &dx, lift.clone());
    let b = Point::new(&instance.t.x + &dx, lift);
    let mid = Point::new(
        (&instance.s.x + &instance.t.x) / rat(2),
        &a.y + ratio(1, 9),
    );
    ReferencePath::new(vec![instance.s.clone(), a, mid, b, instance.t.clone()])
}

/// Three unit-weight segments enclosing s, with t far right.
pub fn unit_triangle() -> Instance {
    let seg = |id: u32, a: Point, b: Point| Obstacle {
        id,
        weight: rat(1),
        shape: Shape::Segment { a, b },
    };
    Instance::new(
        vec![
            seg(0, Point::new(rat(-2), rat(-1)), Point::new(rat(2), rat(-1))),
            seg(1, Point::new(rat(2), rat(-1)), Point::new(rat(0), rat(2))),
            seg(2, Point::new(rat(0), rat(2)), Point::new(rat(-2), rat(-1))),
        ],
        Point::new(ratio(1, 3), ratio(1, 3)),
        Point::new(rat(6), ratio(1, 3)),
        None,
    )
    .unwrap()
}

/// Directed graph input for the reduction generator.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedGraph {
    pub n: usize,
    pub edges: Vec<(u32, u32, Rat)>,
}

impl DirectedGraph {
    pub fn max_weight(&self) -> Rat {
        self.edges
            .iter()
            .map(|(_, _, w)| w.clone())
            .max()
            .unwrap_or_else(|| rat(0))
    }
}

/// Random simple digraph without self-loops; integer weights in [1, w_max].
pub fn random_digraph(n: usize, m_max: usize, w_max: i64, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v {
                pairs.push((u, v));
            }
        }
    }
    let m = rng.gen_range(1..=m_max.min(pairs.len()));
    // Deterministic partial shuffle.
    for i in 0..m {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
    }
    let edges = pairs[..m]
        .iter()
        .map(|&(u, v)| (u, v, rat(rng.gen_range(1..=w_max))))
        .collect();
    DirectedGraph { n, edges }
}

/// Checks that no generated obstacle endpoint or pairwise intersection lies
/// on the reference segment; generators maintain this by construction.
pub fn reference_degeneracy_free(instance: &Instance) -> bool {
    for i in 0..instance.obstacles.len() {
        for j in (i + 1)..instance.obstacles.len() {
            for rep in crate::geom::intersect::obstacles_intersect(
                &instance.obstacles[i],
                &instance.obstacles[j],
            ) {
                if crate::geom::on_segment_alg(&instance.s, &instance.t, &rep.point) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_generation() {
        let cfg = GenConfig::new(6, GenKind::Segments).weighted(1, 100);
        let a = random_instance(&cfg, 7);
        let b = random_instance(&cfg, 7);
        assert_eq!(a.obstacles.len(), b.obstacles.len());
        for (x, y) in a.obstacles.iter().zip(&b.obstacles) {
            assert_eq!(x.weight, y.weight);
            assert_eq!(x.shape, y.shape);
        }
        let c = random_instance(&cfg, 8);
        assert!(a.obstacles.iter().zip(&c.obstacles).any(|(x, y)| x.shape != y.shape));
    }

    #[test]
    fn generated_instances_are_clean() {
        for kind in [GenKind::Segments, GenKind::AxisAligned, GenKind::Polylines, GenKind::Disks] {
            for seed in 0..10 {
                let inst = random_instance(&GenConfig::new(6, kind), seed);
                assert!(reference_degeneracy_free(&inst), "{kind:?} seed {seed}");
            }
        }
    }

    #[test]
    fn digraph_respects_caps() {
        for seed in 0..20 {
            let g = random_digraph(6, 15, 10, seed);
            assert!(g.edges.len() <= 15);
            assert!(!g.edges.is_empty());
            for &(u, v, ref w) in &g.edges {
                assert_ne!(u, v);
                assert!(w >= &rat(1) && w <= &rat(10));
            }
            let mut seen = std::collections::BTreeSet::new();
            for &(u, v, _) in &g.edges {
                assert!(seen.insert((u, v)), "duplicate edge");
            }
        }
    }

    #[test]
    fn detour_paths_are_valid() {
        let inst = unit_triangle();
        let d = detour_path(&inst, 0).unwrap();
        assert_eq!(d.s(), &inst.s);
        assert_eq!(d.t(), &inst.t);
        assert_eq!(d.num_edges(), 4);
    }
}
