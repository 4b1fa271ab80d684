//! Unweighted separation via breadth-first search whose neighbor expansion
//! runs through static-intersection queries instead of explicit edges.

use super::si::{detect_kind, si_build, SiKind, SiMember};
use super::{sheet_of, slice_at_reference, CutLine, SlicedPiece};
use crate::cover::strip_individual_separators;
use crate::error::Error;
use crate::instance::Instance;
use crate::num::rat;
use crate::solvers::SeparatorResult;
use rayon::prelude::*;

/// Per-obstacle piece index.
struct PieceIndex<'a> {
    pieces: &'a [SlicedPiece],
    by_origin: Vec<Vec<usize>>,
}

impl<'a> PieceIndex<'a> {
    fn new(pieces: &'a [SlicedPiece], n: usize) -> Self {
        let mut by_origin = vec![Vec::new(); n];
        for (i, p) in pieces.iter().enumerate() {
            by_origin[p.origin_pos].push(i);
        }
        PieceIndex { pieces, by_origin }
    }
}

/// Hop distances from one cover state (obstacle position, bit) to all
/// states; states are 2*pos + bit. Parents support witness extraction.
fn bfs_from(
    idx: &PieceIndex<'_>,
    kind: SiKind,
    line: &CutLine,
    n: usize,
    source: u32,
    target: Option<u32>,
) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
    let mut dist: Vec<Option<u32>> = vec![None; 2 * n];
    let mut parent: Vec<Option<u32>> = vec![None; 2 * n];
    dist[source as usize] = Some(0);
    let mut frontier = vec![source];
    let mut layer = 0u32;
    while !frontier.is_empty() {
        if let Some(t) = target {
            if dist[t as usize].is_some() {
                break;
            }
        }
        layer += 1;
        // Per sheet, build the structure on the frontier's pieces and query
        // every unvisited state's pieces against it.
        let mut next = Vec::new();
        let mut in_next = vec![false; 2 * n];
        for sheet in 0..2u8 {
            let members: Vec<SiMember<'_>> = frontier
                .iter()
                .flat_map(|&st| {
                    let pos = (st / 2) as usize;
                    let bit = (st % 2) as u8;
                    idx.by_origin[pos].iter().filter_map(move |&pi| {
                        let piece = &idx.pieces[pi];
                        if sheet_of(piece, bit) == sheet {
                            Some(SiMember { id: pi, origin: pos, geom: &piece.geom })
                        } else {
                            None
                        }
                    })
                })
                .collect();
            if members.is_empty() {
                continue;
            }
            let structure = si_build(kind, &members, line).expect("uniform piece kind");
            for state in 0..2 * n as u32 {
                if dist[state as usize].is_some() || in_next[state as usize] {
                    continue;
                }
                let pos = (state / 2) as usize;
                let bit = (state % 2) as u8;
                let hit = idx.by_origin[pos].iter().find_map(|&pi| {
                    let piece = &idx.pieces[pi];
                    if sheet_of(piece, bit) != sheet {
                        return None;
                    }
                    structure
                        .query(&piece.geom, Some(pos))
                        .expect("kind checked at build")
                });
                if let Some(witness_piece) = hit {
                    let wp = &idx.pieces[witness_piece];
                    // The witness belongs to a frontier state in this sheet.
                    let parent_state = 2 * wp.origin_pos as u32 + (sheet ^ wp.rel_parity) as u32;
                    dist[state as usize] = Some(layer);
                    parent[state as usize] = Some(parent_state);
                    in_next[state as usize] = true;
                    next.push(state);
                }
            }
        }
        frontier = next;
    }
    (dist, parent)
}

/// All-sources hop distances between cover states, expanded by
/// static-intersection queries; distances match explicit cover-graph BFS.
pub fn apsp_unweighted_si(
    pieces: &[SlicedPiece],
    n: usize,
    kind: SiKind,
    line: &CutLine,
) -> Vec<Vec<Option<u32>>> {
    let idx = PieceIndex::new(pieces, n);
    (0..2 * n as u32)
        .map(|s| bfs_from(&idx, kind, line, n, s, None).0)
        .collect()
}

/// Unweighted solver driven by static intersection; `kind` must match the
/// instance's obstacle pieces.
pub fn solve_unweighted_fast(instance: &Instance, kind: SiKind) -> Result<SeparatorResult, Error> {
    const ALGO: &str = "si";
    if !instance.has_unit_weights() {
        return Err(Error::NonUnitWeights);
    }
    let pre = strip_individual_separators(instance)?;
    let best_path = if pre.remainder.obstacles.is_empty() {
        None
    } else {
        let inst = &pre.remainder;
        let pieces = slice_at_reference(inst)?;
        let geoms: Vec<_> = pieces.iter().map(|p| p.geom.clone()).collect();
        match (detect_kind(&geoms), kind) {
            (Some(SiKind::AxisAligned), SiKind::AxisAligned | SiKind::Segments) => {}
            (Some(k), want) if k == want => {}
            _ => return Err(Error::UnsupportedShape("static-intersection solver")),
        }
        let line = CutLine { s: inst.s.clone(), t: inst.t.clone() };
        let n = inst.obstacles.len();
        let idx = PieceIndex::new(&pieces, n);
        let best = (0..n)
            .into_par_iter()
            .filter_map(|i| {
                let s = 2 * i as u32;
                let t = s + 1;
                let (dist, parent) = bfs_from(&idx, kind, &line, n, s, Some(t));
                dist[t as usize].map(|d| (d, i, parent))
            })
            .min_by_key(|(d, i, _)| (*d, *i));
        best.map(|(d, i, parent)| {
            let t = 2 * i as u32 + 1;
            let mut ids = vec![inst.obstacles[i].id];
            let mut cur = t;
            while let Some(p) = parent[cur as usize] {
                ids.push(inst.obstacles[(p / 2) as usize].id);
                cur = p;
            }
            ids.sort_unstable();
            ids.dedup();
            SeparatorResult {
                feasible: true,
                weight: Some(rat(d as i64)),
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
    use crate::cover::build_cover_graph;
    use crate::geom::pt;
    use crate::geom::shape::{Obstacle, Shape};
    use crate::geom::Point;
    use crate::num::{rat, ratio, Rat};
    use crate::solvers::{bfs_hops, solve_unweighted_bfs};

    fn seg(id: u32, a: Point, b: Point) -> Obstacle {
        Obstacle { id, weight: rat(1), shape: Shape::Segment { a, b } }
    }

    fn disk(id: u32, c: Point, r: Rat) -> Obstacle {
        Obstacle { id, weight: rat(1), shape: Shape::Disk { center: c, radius: r } }
    }

    #[test]
    fn chain_of_overlapping_horizontals() {
        // Five horizontal segments, consecutive ones overlapping; the whole
        // chain stays above the reference path.
        let obs: Vec<Obstacle> = (0..5)
            .map(|i| seg(i as u32, pt(2 * i, 1), pt(2 * i + 3, 1)))
            .collect();
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 3), rat(0)),
            Point::new(rat(20), rat(0)),
            None,
        )
        .unwrap();
        let pieces = slice_at_reference(&inst).unwrap();
        let line = CutLine { s: inst.s.clone(), t: inst.t.clone() };
        let d = apsp_unweighted_si(&pieces, 5, SiKind::AxisAligned, &line);
        // Hop distances from (obstacle 0, bit 0) along the chain.
        for j in 0..5 {
            assert_eq!(d[0][2 * j], Some(j as u32));
        }
        // The other sheet is unreachable: nothing crosses the path.
        assert_eq!(d[0][1], None);
        // Explicit cover-graph BFS agrees everywhere.
        let cover = build_cover_graph(&inst).unwrap();
        for s in 0..10u32 {
            let hops = bfs_hops(&cover.adj, s);
            for t in 0..10 {
                assert_eq!(d[s as usize][t], hops[t], "{s}->{t}");
            }
        }
    }

    #[test]
    fn disjoint_clusters_unreachable() {
        let obs = vec![seg(0, pt(0, 1), pt(1, 1)), seg(1, pt(50, 1), pt(51, 1))];
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 3), rat(0)),
            Point::new(rat(60), rat(0)),
            None,
        )
        .unwrap();
        let pieces = slice_at_reference(&inst).unwrap();
        let line = CutLine { s: inst.s.clone(), t: inst.t.clone() };
        let d = apsp_unweighted_si(&pieces, 2, SiKind::AxisAligned, &line);
        assert_eq!(d[0][2], None);
    }

    #[test]
    fn axis_box_around_s() {
        let obs = vec![
            seg(0, pt(0, 0), pt(4, 0)),
            seg(1, pt(4, 0), pt(4, 4)),
            seg(2, pt(4, 4), pt(0, 4)),
            seg(3, pt(0, 4), pt(0, 0)),
        ];
        let inst = Instance::new(
            obs,
            Point::new(ratio(4, 3), ratio(4, 3)),
            Point::new(rat(9), ratio(4, 3)),
            None,
        )
        .unwrap();
        let r = solve_unweighted_fast(&inst, SiKind::AxisAligned).unwrap();
        assert!(r.feasible);
        assert_eq!(r.weight, Some(rat(4)));
        assert_eq!(r.obstacle_ids, vec![0, 1, 2, 3]);
        let b = crate::solvers::brute_force_solve(&inst, 12).unwrap();
        assert_eq!(b.weight, r.weight);
    }

    #[test]
    fn triangle_via_generic_segments() {
        let obs = vec![
            seg(0, pt(-2, -1), pt(2, -1)),
            seg(1, pt(2, -1), pt(0, 2)),
            seg(2, pt(0, 2), pt(-2, -1)),
        ];
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 3), ratio(1, 3)),
            Point::new(rat(6), ratio(1, 3)),
            None,
        )
        .unwrap();
        let r = solve_unweighted_fast(&inst, SiKind::Segments).unwrap();
        assert_eq!(r.weight, Some(rat(3)));
    }

    #[test]
    fn ring_of_disks_matches_bfs() {
        // Six pairwise-overlapping unit disks around s.
        let centers = [
            (2, 0),
            (1, 2),
            (-1, 2),
            (-2, 0),
            (-1, -2),
            (1, -2),
        ];
        let obs: Vec<Obstacle> = centers
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| {
                disk(i as u32, pt(x, y), ratio(3, 2))
            })
            .collect();
        let inst = Instance::new(
            obs,
            Point::new(ratio(1, 5), ratio(1, 5)),
            Point::new(rat(8), ratio(1, 5)),
            None,
        )
        .unwrap();
        let fast = solve_unweighted_fast(&inst, SiKind::Disks).unwrap();
        let slow = solve_unweighted_bfs(&inst).unwrap();
        assert_eq!(fast.weight, slow.weight);
        assert!(fast.feasible);
        assert_eq!(fast.weight, Some(rat(6)));
    }
}
