//! Biclique covers of piece intersection graphs and the hub-graph reduction
//! from covers to sparse vertex-weighted shortest paths.

use super::{pieces_intersect, slice_at_reference, CutLine, PieceGeom, SlicedPiece};
use crate::cover::strip_individual_separators;
use crate::error::Error;
use crate::instance::Instance;
use crate::num::Rat;
use crate::solvers::{sssp_to_target, SeparatorResult, VwGraph};
use num_traits::Zero;
use rayon::prelude::*;

/// A complete bipartite set of intersecting pairs: every a in `a` meets
/// every b in `b`. Indices refer to an external vertex or piece list.
#[derive(Clone, Debug)]
pub struct Biclique {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Trivial one-biclique-per-edge cover of an arbitrary graph.
pub fn biclique_cover_generic(edges: &[(usize, usize)]) -> Vec<Biclique> {
    edges
        .iter()
        .map(|&(u, v)| Biclique { a: vec![u], b: vec![v] })
        .collect()
}

/// Axis-aligned piece cover: vertical-horizontal crossings via nested
/// segment-tree decomposition, plus per-line interval bicliques for
/// collinear overlaps among parallels.
pub fn biclique_cover_axis_aligned(pieces: &[SlicedPiece]) -> Result<Vec<Biclique>, Error> {
    struct Axis {
        fixed: Rat,
        lo: Rat,
        hi: Rat,
        idx: usize,
    }
    let mut verticals: Vec<Axis> = Vec::new();
    let mut horizontals: Vec<Axis> = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        match &p.geom {
            PieceGeom::Segment { a, b } if a.x == b.x => {
                let (lo, hi) = if a.y <= b.y {
                    (a.y.clone(), b.y.clone())
                } else {
                    (b.y.clone(), a.y.clone())
                };
                verticals.push(Axis { fixed: a.x.clone(), lo, hi, idx: i });
            }
            PieceGeom::Segment { a, b } if a.y == b.y => {
                let (lo, hi) = if a.x <= b.x {
                    (a.x.clone(), b.x.clone())
                } else {
                    (b.x.clone(), a.x.clone())
                };
                horizontals.push(Axis { fixed: a.y.clone(), lo, hi, idx: i });
            }
            _ => return Err(Error::UnsupportedShape("axis-aligned biclique cover")),
        }
    }
    let mut cover = Vec::new();
    // Crossing pairs. Sort verticals by x; an x-range segment tree assigns
    // each horizontal to O(log) canonical nodes; within a node, a y-range
    // tree over the assigned horizontals pairs them with the node's
    // verticals.
    verticals.sort_by(|p, q| p.fixed.cmp(&q.fixed));
    let nv = verticals.len();
    if nv > 0 && !horizontals.is_empty() {
        let size = nv.next_power_of_two();
        let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); 2 * size];
        let xs: Vec<&Rat> = verticals.iter().map(|v| &v.fixed).collect();
        for (hi_idx, h) in horizontals.iter().enumerate() {
            let mut l = xs.partition_point(|x| **x < h.lo) + size;
            let mut r = xs.partition_point(|x| **x <= h.hi) + size;
            while l < r {
                if l % 2 == 1 {
                    assigned[l].push(hi_idx);
                    l += 1;
                }
                if r % 2 == 1 {
                    r -= 1;
                    assigned[r].push(hi_idx);
                }
                l /= 2;
                r /= 2;
            }
        }
        for (node, hs) in assigned.iter().enumerate() {
            if hs.is_empty() {
                continue;
            }
            // Verticals in this node's subtree.
            let (mut lo, mut hi) = (node, node);
            while lo < size {
                lo *= 2;
                hi = hi * 2 + 1;
            }
            let vlo = (lo - size).min(nv);
            let vhi = ((hi - size) + 1).min(nv);
            if vlo >= vhi {
                continue;
            }
            let vs = &verticals[vlo..vhi];
            // 1D: vertical y-interval contains horizontal's y.
            let mut ys: Vec<(Rat, usize)> =
                hs.iter().map(|&h| (horizontals[h].fixed.clone(), h)).collect();
            ys.sort_by(|a, b| a.0.cmp(&b.0));
            let m = ys.len();
            let ysize = m.next_power_of_two();
            let mut node_v: Vec<Vec<usize>> = vec![Vec::new(); 2 * ysize];
            for v in vs {
                let mut l = ys.partition_point(|(y, _)| y < &v.lo) + ysize;
                let mut r = ys.partition_point(|(y, _)| y <= &v.hi) + ysize;
                while l < r {
                    if l % 2 == 1 {
                        node_v[l].push(v.idx);
                        l += 1;
                    }
                    if r % 2 == 1 {
                        r -= 1;
                        node_v[r].push(v.idx);
                    }
                    l /= 2;
                    r /= 2;
                }
            }
            for (ynode, vlist) in node_v.iter().enumerate() {
                if vlist.is_empty() {
                    continue;
                }
                let (mut ylo, mut yhi) = (ynode, ynode);
                while ylo < ysize {
                    ylo *= 2;
                    yhi = yhi * 2 + 1;
                }
                let blo = (ylo - ysize).min(m);
                let bhi = ((yhi - ysize) + 1).min(m);
                if blo >= bhi {
                    continue;
                }
                let hlist: Vec<usize> =
                    ys[blo..bhi].iter().map(|&(_, h)| horizontals[h].idx).collect();
                cover.push(Biclique { a: vlist.clone(), b: hlist });
            }
        }
    }
    // Collinear overlaps among parallels, grouped per line.
    for group in [&verticals, &horizontals] {
        let mut i = 0;
        while i < group.len() {
            let mut j = i;
            while j < group.len() && group[j].fixed == group[i].fixed {
                j += 1;
            }
            let line = &group[i..j];
            if line.len() > 1 {
                cover.extend(interval_overlap_cover(line.iter().map(|a| (a.lo.clone(), a.hi.clone(), a.idx)).collect()));
            }
            i = j;
        }
    }
    Ok(cover)
}

/// Cover of the closed-overlap relation among 1D intervals: a segment tree
/// over low endpoints; each interval pairs with the intervals whose low end
/// it spans. Self pairs may appear inside a biclique and are ignored by
/// consumers.
fn interval_overlap_cover(items: Vec<(Rat, Rat, usize)>) -> Vec<Biclique> {
    let mut items = items;
    items.sort_by(|a, b| a.0.cmp(&b.0));
    let n = items.len();
    let size = n.next_power_of_two();
    let lows: Vec<&Rat> = items.iter().map(|i| &i.0).collect();
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); 2 * size];
    for (k, (lo, hi, _)) in items.iter().enumerate() {
        let mut l = lows.partition_point(|x| *x < lo) + size;
        let mut r = lows.partition_point(|x| *x <= hi) + size;
        while l < r {
            if l % 2 == 1 {
                assigned[l].push(k);
                l += 1;
            }
            if r % 2 == 1 {
                r -= 1;
                assigned[r].push(k);
            }
            l /= 2;
            r /= 2;
        }
    }
    let mut cover = Vec::new();
    for (node, ks) in assigned.iter().enumerate() {
        if ks.is_empty() {
            continue;
        }
        let (mut lo, mut hi) = (node, node);
        while lo < size {
            lo *= 2;
            hi = hi * 2 + 1;
        }
        let blo = (lo - size).min(n);
        let bhi = ((hi - size) + 1).min(n);
        if blo >= bhi {
            continue;
        }
        cover.push(Biclique {
            a: ks.iter().map(|&k| items[k].2).collect(),
            b: items[blo..bhi].iter().map(|i| i.2).collect(),
        });
    }
    cover
}

/// Fallback piece cover: exact pairwise tests, one biclique per edge.
/// Pieces of the same obstacle are never paired.
pub fn biclique_cover_generic_pieces(pieces: &[SlicedPiece], line: &CutLine) -> Vec<Biclique> {
    let mut edges = Vec::new();
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            if pieces[i].origin_pos != pieces[j].origin_pos
                && pieces_intersect(&pieces[i].geom, &pieces[j].geom, line)
            {
                edges.push((i, j));
            }
        }
    }
    biclique_cover_generic(&edges)
}

/// Rewrites a cover so that no biclique pairs two pieces of one obstacle.
/// The union of cross-origin pairs is preserved exactly.
pub fn sanitize_same_origin(cover: Vec<Biclique>, origin_of: &[usize]) -> Vec<Biclique> {
    let mut out = Vec::new();
    for c in cover {
        let a_origins: std::collections::BTreeSet<usize> =
            c.a.iter().map(|&i| origin_of[i]).collect();
        let b_origins: std::collections::BTreeSet<usize> =
            c.b.iter().map(|&i| origin_of[i]).collect();
        let shared: Vec<usize> = a_origins.intersection(&b_origins).copied().collect();
        if shared.is_empty() {
            out.push(c);
            continue;
        }
        let in_shared = |i: usize| shared.binary_search(&origin_of[i]).is_ok();
        let a_clear: Vec<usize> = c.a.iter().copied().filter(|&i| !in_shared(i)).collect();
        let b_clear: Vec<usize> = c.b.iter().copied().filter(|&i| !in_shared(i)).collect();
        let a_shared: Vec<usize> = c.a.iter().copied().filter(|&i| in_shared(i)).collect();
        if !a_clear.is_empty() && !c.b.is_empty() {
            out.push(Biclique { a: a_clear, b: c.b.clone() });
        }
        if !a_shared.is_empty() && !b_clear.is_empty() {
            out.push(Biclique { a: a_shared.clone(), b: b_clear });
        }
        // Cross pairs between distinct shared origins.
        for &o in &shared {
            let ao: Vec<usize> =
                c.a.iter().copied().filter(|&i| origin_of[i] == o).collect();
            let bo: Vec<usize> =
                c.b.iter()
                    .copied()
                    .filter(|&i| in_shared(i) && origin_of[i] != o)
                    .collect();
            if !ao.is_empty() && !bo.is_empty() {
                out.push(Biclique { a: ao, b: bo });
            }
        }
    }
    out
}

/// Validity helper for tests: the union of a cover's pairs (self pairs
/// removed) against a reference relation.
pub fn cover_pairs(cover: &[Biclique]) -> std::collections::BTreeSet<(usize, usize)> {
    let mut pairs = std::collections::BTreeSet::new();
    for c in cover {
        for &x in &c.a {
            for &y in &c.b {
                if x != y {
                    pairs.insert((x.min(y), x.max(y)));
                }
            }
        }
    }
    pairs
}

/// Hub expansion of a biclique cover over an n-vertex vertex-weighted graph:
/// two zero-weight hubs per biclique, directed edges through them. Shortest
/// distances between original vertices equal those of the covered graph.
pub fn biclique_to_graph(n: usize, weights: &[Rat], cover: &[Biclique]) -> VwGraph {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n + 2 * cover.len()];
    let mut weight: Vec<Rat> = weights.to_vec();
    weight.resize(n + 2 * cover.len(), Rat::zero());
    for (i, c) in cover.iter().enumerate() {
        let u = (n + 2 * i) as u32;
        let u2 = u + 1;
        for &a in &c.a {
            adj[a].push(u);
            adj[u2 as usize].push(a as u32);
        }
        for &b in &c.b {
            adj[u as usize].push(b as u32);
            adj[b].push(u2);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    VwGraph { adj, weight }
}

/// Weighted solver for segment and polyline obstacles: slice, build a piece
/// cover (axis-aligned when possible), lift it to the two sheets as bicliques
/// over obstacle states, and run hub-graph shortest paths per source.
pub fn solve_weighted_biclique(instance: &Instance) -> Result<SeparatorResult, Error> {
    const ALGO: &str = "biclique";
    for ob in &instance.obstacles {
        if ob.shape.is_round() {
            return Err(Error::UnsupportedShape("biclique solver"));
        }
    }
    let pre = strip_individual_separators(instance)?;
    let best_path = if pre.remainder.obstacles.is_empty() {
        None
    } else {
        let inst = &pre.remainder;
        let pieces = slice_at_reference(inst)?;
        let line = CutLine { s: inst.s.clone(), t: inst.t.clone() };
        let axis = pieces.iter().all(|p| match &p.geom {
            PieceGeom::Segment { a, b } => a.x == b.x || a.y == b.y,
            _ => false,
        });
        let origin_of: Vec<usize> = pieces.iter().map(|p| p.origin_pos).collect();
        let piece_cover = if axis {
            sanitize_same_origin(biclique_cover_axis_aligned(&pieces)?, &origin_of)
        } else {
            biclique_cover_generic_pieces(&pieces, &line)
        };
        let n = inst.obstacles.len();
        // State graph: vertices 0..2n are obstacle states with the obstacle
        // weight; hubs follow, one pair per (piece biclique, sheet).
        let mut weights: Vec<Rat> = Vec::with_capacity(2 * n);
        for ob in &inst.obstacles {
            weights.push(ob.weight.clone());
            weights.push(ob.weight.clone());
        }
        let state_cover: Vec<Biclique> = (0..2u8)
            .flat_map(|sheet| {
                piece_cover.iter().map(move |c| (sheet, c))
            })
            .map(|(sheet, c)| {
                let map_side = |side: &[usize]| -> Vec<usize> {
                    let mut states: Vec<usize> = side
                        .iter()
                        .map(|&pi| {
                            let p = &pieces[pi];
                            2 * p.origin_pos + (sheet ^ p.rel_parity) as usize
                        })
                        .collect();
                    states.sort_unstable();
                    states.dedup();
                    states
                };
                Biclique { a: map_side(&c.a), b: map_side(&c.b) }
            })
            .collect();
        let g = biclique_to_graph(2 * n, &weights, &state_cover);
        let best = (0..n)
            .into_par_iter()
            .filter_map(|i| {
                let s = (2 * i) as u32;
                let t = s + 1;
                sssp_to_target(&g, s, t, None).map(|(d, p)| (d, i, p))
            })
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        best.map(|(d, _, path)| {
            let mut ids: Vec<u32> = path
                .iter()
                .filter(|&&v| (v as usize) < 2 * n)
                .map(|&v| inst.obstacles[(v / 2) as usize].id)
                .collect();
            ids.sort_unstable();
            ids.dedup();
            SeparatorResult {
                feasible: true,
                weight: Some(d),
                obstacle_ids: ids,
                algorithm: ALGO,
                witness: None,
            }
        })
    };
    let combined = match (best_path, pre.best_stripped()) {
        (None, None) => SeparatorResult::infeasible(ALGO),
        (None, Some((id, w))) => SeparatorResult {
            feasible: true,
            weight: Some(w),
            obstacle_ids: vec![id],
            algorithm: ALGO,
            witness: None,
        },
        (Some(r), None) => r,
        (Some(r), Some((id, w))) => {
            if &w <= r.weight.as_ref().unwrap() {
                SeparatorResult {
                    feasible: true,
                    weight: Some(w),
                    obstacle_ids: vec![id],
                    algorithm: ALGO,
                    witness: None,
                }
            } else {
                r
            }
        }
    };
    Ok(combined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use crate::geom::shape::{Obstacle, Shape};
    use crate::geom::Point;
    use crate::num::{rat, ratio};
    use crate::solvers::{brute_force_solve, solve_weighted, sssp_vertex_weighted};
    use rand::{Rng, SeedableRng};

    fn seg(id: u32, a: Point, b: Point, w: i64) -> Obstacle {
        Obstacle { id, weight: rat(w), shape: Shape::Segment { a, b } }
    }

    #[test]
    fn single_crossing_biclique() {
        let obs = vec![seg(0, pt(2, -1), pt(2, 1), 1), seg(1, pt(1, 0), pt(3, 0), 1)];
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 3), rat(5)),
            Point::new(rat(9), rat(5)),
            None,
        )
        .unwrap();
        let pieces = slice_at_reference(&inst).unwrap();
        let cover = biclique_cover_axis_aligned(&pieces).unwrap();
        let pairs = cover_pairs(&cover);
        assert_eq!(pairs.len(), 1);
        // Empty cover for non-intersecting input.
        let obs = vec![seg(0, pt(2, -1), pt(2, 1), 1), seg(1, pt(5, 0), pt(7, 0), 1)];
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 3), rat(5)),
            Point::new(rat(9), rat(5)),
            None,
        )
        .unwrap();
        let pieces = slice_at_reference(&inst).unwrap();
        let cover = biclique_cover_axis_aligned(&pieces).unwrap();
        assert!(cover_pairs(&cover).is_empty());
    }

    #[test]
    fn grid_cover_valid_and_small() {
        // k x k grid of crossing segments: k^2 crossing pairs covered by a
        // cover of near-linear total size.
        let k = 8i64;
        let mut obs = Vec::new();
        for i in 0..k {
            obs.push(seg(i as u32, pt(2 * i, -1), pt(2 * i, 2 * k), 1));
            obs.push(seg((k + i) as u32, pt(-1, 2 * i), pt(2 * k, 2 * i), 1));
        }
        let inst = Instance::new(
            obs,
            Point::new(ratio(-10, 3), rat(-9)),
            Point::new(rat(90), rat(-9)),
            None,
        )
        .unwrap();
        let pieces = slice_at_reference(&inst).unwrap();
        let cover = biclique_cover_axis_aligned(&pieces).unwrap();
        let pairs = cover_pairs(&cover);
        // Brute-force reference relation.
        let line = CutLine { s: inst.s.clone(), t: inst.t.clone() };
        let mut expected = std::collections::BTreeSet::new();
        for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                if pieces_intersect(&pieces[i].geom, &pieces[j].geom, &line) {
                    expected.insert((i, j));
                }
            }
        }
        assert_eq!(pairs, expected);
        assert_eq!(expected.len(), (k * k) as usize);
        let size: usize = cover.iter().map(|c| c.a.len() + c.b.len()).sum();
        // O(k log k)-ish versus k^2 pairs.
        let log_k = usize::BITS as usize - (k as usize).leading_zeros() as usize + 1;
        let bound = (4 * 2 * k as usize) * log_k;
        assert!(size <= bound, "cover size {size} exceeds bound {bound}");
    }

    #[test]
    fn parallel_overlap_covered() {
        let obs = vec![
            seg(0, pt(0, 1), pt(4, 1), 1),
            seg(1, pt(2, 1), pt(6, 1), 1),
            seg(2, pt(8, 1), pt(9, 1), 1),
        ];
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 3), rat(-5)),
            Point::new(rat(9), rat(-5)),
            None,
        )
        .unwrap();
        let pieces = slice_at_reference(&inst).unwrap();
        let cover = biclique_cover_axis_aligned(&pieces).unwrap();
        let pairs = cover_pairs(&cover);
        assert_eq!(pairs, [(0usize, 1usize)].into_iter().collect());
    }

    #[test]
    fn hub_graph_distance_fidelity() {
        // Single biclique ({a: w=1}, {b: w=2}).
        let cover = vec![Biclique { a: vec![0], b: vec![1] }];
        let g = biclique_to_graph(2, &[rat(1), rat(2)], &cover);
        let (d, _) = sssp_vertex_weighted(&g, 0);
        assert_eq!(d[1], Some(rat(2)));
        let (d, _) = sssp_vertex_weighted(&g, 1);
        assert_eq!(d[0], Some(rat(1)));
        // K22: 6 vertices (2 hubs), 8 directed edges.
        let cover = vec![Biclique { a: vec![0, 1], b: vec![2, 3] }];
        let g = biclique_to_graph(4, &[rat(1), rat(4), rat(2), rat(3)], &cover);
        assert_eq!(g.adj.len(), 6);
        let edges: usize = g.adj.iter().map(|l| l.len()).sum();
        assert_eq!(edges, 8);
        let (d, _) = sssp_vertex_weighted(&g, 0);
        assert_eq!(d[2], Some(rat(2)));
        assert_eq!(d[3], Some(rat(3)));
        assert_eq!(d[1], Some(rat(2 + 4)));
    }

    #[test]
    fn hub_graph_matches_dense_dijkstra_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(2..9);
            let mut edges = Vec::new();
            let mut dense_adj = vec![Vec::new(); n];
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                        dense_adj[u].push(v as u32);
                        dense_adj[v].push(u as u32);
                    }
                }
            }
            let weights: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(1..9))).collect();
            let cover = biclique_cover_generic(&edges);
            let hub = biclique_to_graph(n, &weights, &cover);
            let dense = VwGraph { adj: dense_adj, weight: weights.clone() };
            for s in 0..n as u32 {
                let (dh, _) = sssp_vertex_weighted(&hub, s);
                let (dd, _) = sssp_vertex_weighted(&dense, s);
                for v in 0..n {
                    assert_eq!(dh[v], dd[v], "{s}->{v}");
                }
            }
        }
    }

    #[test]
    fn axis_box_weighted() {
        let obs = vec![
            seg(0, pt(0, 0), pt(4, 0), 1),
            seg(1, pt(4, 0), pt(4, 4), 2),
            seg(2, pt(4, 4), pt(0, 4), 3),
            seg(3, pt(0, 4), pt(0, 0), 4),
        ];
        let inst = Instance::new(
            obs,
            Point::new(ratio(4, 3), ratio(4, 3)),
            Point::new(rat(9), ratio(4, 3)),
            None,
        )
        .unwrap();
        let r = solve_weighted_biclique(&inst).unwrap();
        assert_eq!(r.weight, Some(rat(10)));
        let b = brute_force_solve(&inst, 12).unwrap();
        assert_eq!(b.weight, r.weight);
    }

    #[test]
    fn triangle_generic_weighted() {
        let obs = vec![
            seg(0, pt(-2, -1), pt(2, -1), 1),
            seg(1, pt(2, -1), pt(0, 2), 1),
            seg(2, pt(0, 2), pt(-2, -1), 1),
        ];
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 3), ratio(1, 3)),
            Point::new(rat(6), ratio(1, 3)),
            None,
        )
        .unwrap();
        let r = solve_weighted_biclique(&inst).unwrap();
        assert_eq!(r.weight, Some(rat(3)));
        assert_eq!(r.obstacle_ids, vec![0, 1, 2]);
        let w = solve_weighted(&inst).unwrap();
        assert_eq!(w.weight, r.weight);
    }

    #[test]
    fn infeasible_biclique() {
        let inst = Instance::new(
            vec![seg(0, pt(0, 1), pt(1, 1), 1)],
            pt(0, 0),
            pt(9, 0),
            None,
        )
        .unwrap();
        let r = solve_weighted_biclique(&inst).unwrap();
        assert!(!r.feasible);
    }
}
