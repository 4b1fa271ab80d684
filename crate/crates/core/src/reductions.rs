//! Constructive reductions from minimum-weight closed k-walks in directed
//! graphs to point-separation instances, with a layered dynamic program as
//! independent ground truth.
//!
//! Layout: vertex v_i owns column x = i+1; walk layers live on rows
//! y = 1..=k+1. Every edge contributes one gadget per layer spanning
//! consecutive rows between its columns. Every column that can lie on a
//! closed walk gets a chain of k+6 weight-W segments routed around the left
//! of s, closing the loop from the column top back to its bottom.

use crate::error::Error;
use crate::gen::DirectedGraph;
use crate::geom::shape::{Obstacle, Shape};
use crate::geom::Point;
use crate::instance::Instance;
use crate::num::{rat, ratio, Rat};
use crate::solvers::SeparatorResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Segments,
    Polyline2,
    Rect3,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "segments" => Some(Variant::Segments),
            "polyline2" => Some(Variant::Polyline2),
            "rect3" => Some(Variant::Rect3),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Segments => "segments",
            Variant::Polyline2 => "polyline2",
            Variant::Rect3 => "rect3",
        }
    }
}

/// Minimum weight of a closed walk with exactly k edges, by a layered DP
/// per start vertex.
pub fn min_weight_k_walk(g: &DirectedGraph, k: usize) -> Option<Rat> {
    assert!(k >= 1);
    let mut best: Option<Rat> = None;
    for start in 0..g.n {
        let mut dp: Vec<Option<Rat>> = vec![None; g.n];
        dp[start] = Some(rat(0));
        for _ in 0..k {
            let mut next: Vec<Option<Rat>> = vec![None; g.n];
            for &(u, v, ref w) in &g.edges {
                if let Some(du) = &dp[u as usize] {
                    let cand = du + w;
                    if next[v as usize].as_ref().map_or(true, |c| &cand < c) {
                        next[v as usize] = Some(cand);
                    }
                }
            }
            dp = next;
        }
        if let Some(d) = dp[start].take() {
            if best.as_ref().map_or(true, |b| &d < b) {
                best = Some(d);
            }
        }
    }
    best
}

/// A generated point-separation instance encoding closed k-walks.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub variant: Variant,
    pub k: usize,
    pub num_edges: usize,
    pub max_weight: Rat,
    /// Weight of one full vertex chain: (k + 6) * W.
    pub offset: Rat,
    pub column_x: Vec<Rat>,
    /// Columns that received a chain (positive in- and out-degree).
    pub chained_columns: Vec<usize>,
}

pub fn generate_reduction(
    g: &DirectedGraph,
    k: usize,
    variant: Variant,
) -> Result<ReductionOutput, Error> {
    assert!(k >= 1);
    for &(u, v, _) in &g.edges {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
    }
    let w_max = g.max_weight();
    let n = g.n;
    let col = |i: usize| rat(i as i64 + 1);
    let mut obstacles: Vec<Obstacle> = Vec::new();
    let mut next_id = 0u32;
    let mut push = |obstacles: &mut Vec<Obstacle>, shape: Shape, weight: Rat| {
        obstacles.push(Obstacle { id: next_id, weight, shape });
        next_id += 1;
    };
    // Edge gadgets: per edge, one obstacle per layer r = 1..=k spanning
    // (col(u), r) to (col(v), r+1).
    for (e_idx, &(u, v, ref w)) in g.edges.iter().enumerate() {
        for r in 1..=k as i64 {
            let a = Point::new(col(u as usize), rat(r));
            let b = Point::new(col(v as usize), rat(r + 1));
            let shape = match variant {
                Variant::Segments => Shape::Segment { a, b },
                Variant::Polyline2 => {
                    // All gadgets of one layer bend at a shared point, which
                    // collapses their pairwise crossings onto one point. The
                    // bend sits off every column, off the reference line,
                    // and off all gadget chords.
                    let bend = Point::new(ratio(3, 4), rat(r) + ratio(1, 3));
                    Shape::Polyline { points: vec![a, bend, b] }
                }
                Variant::Rect3 => {
                    // Staircase with a per-edge horizontal height; the odd
                    // denominator keeps every horizontal off the reference
                    // line and distinct across edges.
                    let h = rat(r)
                        + ratio(2 * e_idx as i64 + 1, 2 * g.edges.len() as i64 + 1);
                    Shape::Polyline {
                        points: vec![
                            a.clone(),
                            Point::new(a.x.clone(), h.clone()),
                            Point::new(b.x.clone(), h),
                            b,
                        ],
                    }
                }
            };
            push(&mut obstacles, shape, w.clone());
        }
    }
    // Vertex chains for columns that can lie on a closed walk.
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    for &(u, v, _) in &g.edges {
        out_deg[u as usize] += 1;
        in_deg[v as usize] += 1;
    }
    let chained: Vec<usize> = (0..n).filter(|&i| out_deg[i] > 0 && in_deg[i] > 0).collect();
    let top_row = rat(k as i64 + 1);
    for (rank, &i) in chained.iter().enumerate() {
        let c = col(i);
        let lift = &top_row + rat(rank as i64 + 1);
        let left = rat(-(rank as i64 + 2));
        let drop = rat(-(rank as i64 + 1));
        // Five legs; the long left descent is subdivided into k+2 pieces so
        // the chain has exactly k+6 members.
        let mut legs: Vec<(Point, Point)> = vec![
            (Point::new(c.clone(), top_row.clone()), Point::new(c.clone(), lift.clone())),
            (Point::new(c.clone(), lift.clone()), Point::new(left.clone(), lift.clone())),
        ];
        let descent_parts = k + 2;
        let y0 = lift.clone();
        let y1 = drop.clone();
        for piece in 0..descent_parts {
            let f0 = ratio(piece as i64, descent_parts as i64);
            let f1 = ratio(piece as i64 + 1, descent_parts as i64);
            let a = Point::new(left.clone(), &y0 + (&y1 - &y0) * f0);
            let b = Point::new(left.clone(), &y0 + (&y1 - &y0) * f1);
            legs.push((a, b));
        }
        legs.push((Point::new(left.clone(), drop.clone()), Point::new(c.clone(), drop.clone())));
        legs.push((Point::new(c.clone(), drop.clone()), Point::new(c.clone(), rat(1))));
        debug_assert_eq!(legs.len(), k + 6);
        for (a, b) in legs {
            push(&mut obstacles, Shape::Segment { a, b }, w_max.clone());
        }
    }
    debug_assert_eq!(
        obstacles.len(),
        k * g.edges.len() + (k + 6) * chained.len(),
        "obstacle count formula"
    );
    let s = Point::new(ratio(1, 2), ratio(3, 2));
    let t = Point::new(rat(n as i64 + 1), ratio(3, 2));
    let instance = Instance::new(obstacles, s, t, None)?;
    let offset = rat(k as i64 + 6) * &w_max;
    Ok(ReductionOutput {
        instance,
        variant,
        k,
        num_edges: g.edges.len(),
        max_weight: w_max,
        offset,
        column_x: (0..n).map(col).collect(),
        chained_columns: chained,
    })
}

/// Upper bound asserted on unique intersection points of the two-piece
/// polyline variant: k shared bends plus grid and chain contributions.
pub fn polyline2_intersection_budget(k: usize, m: usize) -> usize {
    k + 2 * (k + 1) * m + 4 * m
}

/// Counts unique pairwise intersection points of an instance exhaustively.
pub fn count_unique_intersections(instance: &Instance) -> usize {
    let mut points: Vec<crate::geom::AlgPoint> = Vec::new();
    for i in 0..instance.obstacles.len() {
        for j in (i + 1)..instance.obstacles.len() {
            for rep in crate::geom::intersect::obstacles_intersect(
                &instance.obstacles[i],
                &instance.obstacles[j],
            ) {
                if !points.iter().any(|p| p.same_point(&rep.point)) {
                    points.push(rep.point);
                }
            }
        }
    }
    points.len()
}

/// Outcome of checking one reduction instance against the DP oracle.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub dp_value: Option<Rat>,
    pub solver_weight: Option<Rat>,
    pub offset: Rat,
    pub threshold: Rat,
    pub pass: bool,
}

/// Verifies the encoding: when the DP optimum w satisfies w <= k*W the
/// solver must return exactly w + (k+6)W; when no closed k-walk of weight
/// <= k*W exists the solver weight must exceed k*W + (k+6)W.
pub fn verify_reduction(
    out: &ReductionOutput,
    g: &DirectedGraph,
    solve: impl Fn(&Instance) -> Result<SeparatorResult, Error>,
) -> Result<ReductionReport, Error> {
    let dp = min_weight_k_walk(g, out.k);
    let result = solve(&out.instance)?;
    let threshold = rat(out.k as i64) * &out.max_weight + &out.offset;
    let pass = match (&dp, &result.weight) {
        (Some(w), Some(sw)) if w <= &(rat(out.k as i64) * &out.max_weight) => {
            sw == &(w + &out.offset)
        }
        // No walk within budget: every separator must blow the threshold.
        (_, Some(sw)) => sw > &threshold,
        (_, None) => true,
    };
    Ok(ReductionReport {
        dp_value: dp,
        solver_weight: result.weight,
        offset: out.offset.clone(),
        threshold,
        pass,
    })
}
