//! The intersection graph in the two-sheeted cover: two vertices per
//! obstacle, edges from the pairwise parity oracle.

use crate::arrangement::AuxiliaryGraph;
use crate::error::Error;
use crate::geom::intersect::pair_parity_set;
use crate::geom::shape::self_separates;
use crate::geom::BBox;
use crate::instance::Instance;
use crate::num::Rat;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverVertex {
    pub obstacle_id: u32,
    pub bit: u8,
}

/// Vertex-weighted graph on (obstacle, bit) pairs. Vertex index is
/// 2 * obstacle_position + bit; adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverGraph {
    pub obstacle_ids: Vec<u32>,
    pub weights: Vec<Rat>,
    pub adj: Vec<Vec<u32>>,
}

impl CoverGraph {
    pub fn num_obstacles(&self) -> usize {
        self.obstacle_ids.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn vertex_of(&self, obstacle_pos: usize, bit: u8) -> u32 {
        (2 * obstacle_pos + bit as usize) as u32
    }

    pub fn info(&self, v: u32) -> CoverVertex {
        CoverVertex {
            obstacle_id: self.obstacle_ids[(v / 2) as usize],
            bit: (v % 2) as u8,
        }
    }

    pub fn vertex_weight(&self, v: u32) -> &Rat {
        &self.weights[(v / 2) as usize]
    }

    /// Undirected edge list with u < v, sorted.
    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        let mut edges = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if (u as u32) < v {
                    edges.push((u as u32, v));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }
}

/// Result of removing individually separating obstacles.
#[derive(Clone, Debug)]
pub struct PreprocessResult {
    pub stripped: Vec<(u32, Rat)>,
    pub remainder: Instance,
}

impl PreprocessResult {
    pub fn best_stripped(&self) -> Option<(u32, Rat)> {
        self.stripped
            .iter()
            .min_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)))
            .cloned()
    }
}

/// Partitions the obstacles by whether each alone separates s from t.
pub fn strip_individual_separators(instance: &Instance) -> Result<PreprocessResult, Error> {
    let mut stripped = Vec::new();
    let mut rest = Vec::new();
    for ob in &instance.obstacles {
        if self_separates(ob, &instance.s, &instance.t)? {
            stripped.push((ob.id, ob.weight.clone()));
        } else {
            rest.push(ob.clone());
        }
    }
    Ok(PreprocessResult {
        stripped,
        remainder: Instance {
            obstacles: rest,
            s: instance.s.clone(),
            t: instance.t.clone(),
            pi: instance.pi.clone(),
        },
    })
}

/// Builds the cover graph from the pairwise parity oracle. Assumes no
/// obstacle in the instance individually separates s and t.
pub fn build_cover_graph(instance: &Instance) -> Result<CoverGraph, Error> {
    let n = instance.obstacles.len();
    let boxes: Vec<BBox> = instance.obstacles.iter().map(|o| o.shape.bbox()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if boxes[i].intersects(&boxes[j]) {
                pairs.push((i, j));
            }
        }
    }
    let results: Result<Vec<_>, Error> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let set = pair_parity_set(&instance.obstacles[i], &instance.obstacles[j], &instance.pi)?;
            Ok((i, j, set))
        })
        .collect();
    let mut adj = vec![Vec::new(); 2 * n];
    for (i, j, set) in results? {
        for p in set {
            for b in 0..2u8 {
                let u = (2 * i + b as usize) as u32;
                let v = (2 * j + (b ^ p) as usize) as u32;
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
        nbrs.dedup();
    }
    Ok(CoverGraph {
        obstacle_ids: instance.obstacles.iter().map(|o| o.id).collect(),
        weights: instance.obstacles.iter().map(|o| o.weight.clone()).collect(),
        adj,
    })
}

/// Replaces every arrangement-vertex copy of the auxiliary graph by a clique
/// over its obstacle-copy neighbors, yielding the cover graph.
pub fn expand_auxiliary(h: &AuxiliaryGraph) -> CoverGraph {
    let n = h.obstacle_ids.len();
    let mut adj = vec![Vec::new(); 2 * n];
    for nbrs in &h.vertex_copy_neighbors {
        for (a, &u) in nbrs.iter().enumerate() {
            for &v in nbrs.iter().skip(a + 1) {
                if u != v {
                    adj[u as usize].push(v);
                    adj[v as usize].push(u);
                }
            }
        }
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
        nbrs.dedup();
    }
    CoverGraph { obstacle_ids: h.obstacle_ids.clone(), weights: h.obstacle_weights.clone(), adj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use crate::geom::shape::{Obstacle, Shape};
    use crate::geom::Point;
    use crate::num::{rat, ratio};

    fn seg(id: u32, a: Point, b: Point) -> Obstacle {
        Obstacle { id, weight: rat(1), shape: Shape::Segment { a, b } }
    }

    fn circle(id: u32, c: Point, r: i64, w: i64) -> Obstacle {
        Obstacle { id, weight: rat(w), shape: Shape::Circle { center: c, radius: rat(r) } }
    }

    /// Unit triangle strictly enclosing s = (1/3, 1/3); t far right.
    pub(crate) fn triangle_instance() -> Instance {
        let tri = vec![
            seg(0, pt(-2, -1), pt(2, -1)),
            seg(1, pt(2, -1), pt(0, 2)),
            seg(2, pt(0, 2), pt(-2, -1)),
        ];
        Instance::new(
            tri,
            Point::new(ratio(1, 3), ratio(1, 3)),
            Point::new(rat(6), ratio(1, 3)),
            None,
        )
        .unwrap()
    }

    #[test]
    fn strip_examples() {
        let mut inst = triangle_instance();
        inst.obstacles.push(circle(9, pt(0, 0), 1, 5));
        let pre = strip_individual_separators(&inst).unwrap();
        assert_eq!(pre.stripped, vec![(9, rat(5))]);
        assert_eq!(pre.remainder.obstacles.len(), 3);

        let pre = strip_individual_separators(&triangle_instance()).unwrap();
        assert!(pre.stripped.is_empty());
        assert_eq!(pre.remainder.obstacles.len(), 3);

        let only_circles = Instance::new(
            vec![circle(0, pt(0, 0), 1, 5), circle(1, pt(0, 0), 2, 3)],
            Point::new(ratio(1, 3), rat(0)),
            pt(9, 0),
            None,
        )
        .unwrap();
        let pre = strip_individual_separators(&only_circles).unwrap();
        assert!(pre.remainder.obstacles.is_empty());
        assert_eq!(pre.best_stripped(), Some((1, rat(3))));
    }

    #[test]
    fn single_obstacle_graph() {
        let inst = Instance::new(
            vec![seg(0, pt(0, 1), pt(1, 1))],
            pt(0, 0),
            pt(5, 0),
            None,
        )
        .unwrap();
        let g = build_cover_graph(&inst).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn crossing_pair_edges() {
        // A spans the path, B touches A below it: pair parity {1}.
        let inst = Instance::new(
            vec![seg(0, pt(1, 2), pt(1, -2)), seg(1, pt(0, -1), pt(2, -3))],
            pt(0, 0),
            pt(5, 0),
            None,
        )
        .unwrap();
        let g = build_cover_graph(&inst).unwrap();
        assert_eq!(g.edge_list(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn triangle_cover_distances() {
        let g = build_cover_graph(&triangle_instance()).unwrap();
        assert_eq!(g.num_vertices(), 6);
        // Each intersecting pair of triangle sides shares a corner; a walk
        // (T0, 0) -> (T0, 1) exists using all three obstacles.
        let dist = crate::solvers::bfs_hops(&g.adj, 0);
        assert_eq!(dist[1], Some(3));
    }

    #[test]
    fn bit_flip_automorphism() {
        let g = build_cover_graph(&triangle_instance()).unwrap();
        let flip = |v: u32| v ^ 1;
        let mut flipped: Vec<(u32, u32)> = g
            .edge_list()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (flip(u), flip(v));
                (a.min(b), a.max(b))
            })
            .collect();
        flipped.sort_unstable();
        assert_eq!(flipped, g.edge_list());
    }

    #[test]
    fn edges_per_pair_matches_parity_sets() {
        let inst = triangle_instance();
        let g = build_cover_graph(&inst).unwrap();
        let mut expected = 0;
        for i in 0..inst.obstacles.len() {
            for j in (i + 1)..inst.obstacles.len() {
                let set = pair_parity_set(&inst.obstacles[i], &inst.obstacles[j], &inst.pi)
                    .unwrap();
                expected += 2 * set.len();
            }
        }
        assert_eq!(g.num_edges(), expected);
    }
}
