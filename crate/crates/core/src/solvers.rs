//! Shortest-path engines and the top-level separation solvers.
//!
//! Distances follow the enter-cost convention: a directed step into vertex v
//! costs the weight of v, and the source costs nothing. A cheapest walk from
//! one copy of an obstacle to the other therefore pays each obstacle on the
//! walk exactly once, the endpoint obstacle included via the final step.

use crate::cover::{build_cover_graph, strip_individual_separators, CoverGraph, CoverVertex};
use crate::error::Error;
use crate::geom::shape::Shape;
use crate::instance::Instance;
use crate::num::{rat, Rat};
use num_traits::Zero;
use rayon::prelude::*;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Outcome of a separation solve.
#[derive(Clone, Debug)]
pub struct SeparatorResult {
    pub feasible: bool,
    pub weight: Option<Rat>,
    pub obstacle_ids: Vec<u32>,
    pub algorithm: &'static str,
    pub witness: Option<Vec<CoverVertex>>,
}

impl SeparatorResult {
    pub fn infeasible(algorithm: &'static str) -> Self {
        SeparatorResult { feasible: false, weight: None, obstacle_ids: Vec::new(), algorithm, witness: None }
    }
}

/// Vertex-weighted undirected graph for shortest-path queries.
#[derive(Clone, Debug)]
pub struct VwGraph {
    pub adj: Vec<Vec<u32>>,
    pub weight: Vec<Rat>,
}

/// Dijkstra from `source` under the enter-cost convention. Returns distance
/// and parent maps. Ties in distance keep the smallest parent vertex id.
pub fn sssp_vertex_weighted(g: &VwGraph, source: u32) -> (Vec<Option<Rat>>, Vec<Option<u32>>) {
    sssp_impl(g, source, None, None)
}

/// Dijkstra that may stop once `target` is settled and may prune paths that
/// cannot beat `bound`.
pub fn sssp_to_target(
    g: &VwGraph,
    source: u32,
    target: u32,
    bound: Option<&Rat>,
) -> Option<(Rat, Vec<u32>)> {
    let (dist, parent) = sssp_impl(g, source, Some(target), bound);
    let d = dist[target as usize].clone()?;
    let mut path = vec![target];
    let mut cur = target;
    while let Some(p) = parent[cur as usize] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    Some((d, path))
}

fn sssp_impl(
    g: &VwGraph,
    source: u32,
    target: Option<u32>,
    bound: Option<&Rat>,
) -> (Vec<Option<Rat>>, Vec<Option<u32>>) {
    let n = g.adj.len();
    let mut dist: Vec<Option<Rat>> = vec![None; n];
    let mut parent: Vec<Option<u32>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(Rat, u32)>> = BinaryHeap::new();
    dist[source as usize] = Some(Rat::zero());
    heap.push(Reverse((Rat::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u as usize] {
            continue;
        }
        done[u as usize] = true;
        if target == Some(u) {
            break;
        }
        if let Some(b) = bound {
            if &d > b {
                break;
            }
        }
        for &v in &g.adj[u as usize] {
            if done[v as usize] {
                continue;
            }
            let nd = &d + &g.weight[v as usize];
            match &dist[v as usize] {
                Some(cur) if *cur < nd => {}
                Some(cur) if *cur == nd => {
                    if let Some(p) = parent[v as usize] {
                        if u < p {
                            parent[v as usize] = Some(u);
                        }
                    }
                }
                _ => {
                    dist[v as usize] = Some(nd.clone());
                    parent[v as usize] = Some(u);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
    }
    (dist, parent)
}

/// Unweighted hop distances (helper shared by tests and solvers).
pub fn bfs_hops(adj: &[Vec<u32>], source: u32) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[source as usize] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize].unwrap();
        for &v in &adj[u as usize] {
            if dist[v as usize].is_none() {
                dist[v as usize] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn bfs_parents(adj: &[Vec<u32>], source: u32) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
    let mut dist = vec![None; adj.len()];
    let mut parent = vec![None; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[source as usize] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize].unwrap();
        for &v in &adj[u as usize] {
            if dist[v as usize].is_none() {
                dist[v as usize] = Some(du + 1);
                parent[v as usize] = Some(u);
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

fn vw_graph_of_cover(g: &CoverGraph) -> VwGraph {
    let mut weight = Vec::with_capacity(g.num_vertices());
    for w in &g.weights {
        weight.push(w.clone());
        weight.push(w.clone());
    }
    VwGraph { adj: g.adj.clone(), weight }
}

fn witness_result(
    g: &CoverGraph,
    weight: Rat,
    path: &[u32],
    algorithm: &'static str,
) -> SeparatorResult {
    let mut ids: Vec<u32> = path.iter().map(|&v| g.info(v).obstacle_id).collect();
    ids.sort_unstable();
    ids.dedup();
    let witness = path.iter().map(|&v| g.info(v)).collect();
    SeparatorResult { feasible: true, weight: Some(weight), obstacle_ids: ids, algorithm, witness: Some(witness) }
}

fn stripped_result(id: u32, w: Rat, algorithm: &'static str) -> SeparatorResult {
    SeparatorResult {
        feasible: true,
        weight: Some(w),
        obstacle_ids: vec![id],
        algorithm,
        witness: None,
    }
}

fn combine_with_stripped(
    best_path: Option<SeparatorResult>,
    stripped: Option<(u32, Rat)>,
    algorithm: &'static str,
) -> SeparatorResult {
    match (best_path, stripped) {
        (None, None) => SeparatorResult::infeasible(algorithm),
        (None, Some((id, w))) => stripped_result(id, w, algorithm),
        (Some(r), None) => r,
        (Some(r), Some((id, w))) => {
            if &w <= r.weight.as_ref().unwrap() {
                stripped_result(id, w, algorithm)
            } else {
                r
            }
        }
    }
}

/// Weighted solver in the oracle model: strip individual separators, build
/// the cover graph, and take the cheapest copy-to-copy path over all sources.
pub fn solve_weighted(instance: &Instance) -> Result<SeparatorResult, Error> {
    const ALGO: &str = "dijkstra";
    let pre = strip_individual_separators(instance)?;
    let best_path = if pre.remainder.obstacles.is_empty() {
        None
    } else {
        let cover = build_cover_graph(&pre.remainder)?;
        let vw = vw_graph_of_cover(&cover);
        let best = (0..cover.num_obstacles())
            .into_par_iter()
            .filter_map(|i| {
                let s = cover.vertex_of(i, 0);
                let t = cover.vertex_of(i, 1);
                sssp_to_target(&vw, s, t, None).map(|(d, p)| (d, i, p))
            })
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        best.map(|(d, _, p)| witness_result(&cover, d, &p, ALGO))
    };
    Ok(combine_with_stripped(best_path, pre.best_stripped(), ALGO))
}

/// Unweighted solver: breadth-first copy-to-copy distances.
pub fn solve_unweighted_bfs(instance: &Instance) -> Result<SeparatorResult, Error> {
    const ALGO: &str = "bfs";
    if !instance.has_unit_weights() {
        return Err(Error::NonUnitWeights);
    }
    let pre = strip_individual_separators(instance)?;
    let best_path = if pre.remainder.obstacles.is_empty() {
        None
    } else {
        let cover = build_cover_graph(&pre.remainder)?;
        let best = (0..cover.num_obstacles())
            .into_par_iter()
            .filter_map(|i| {
                let s = cover.vertex_of(i, 0);
                let t = cover.vertex_of(i, 1);
                let (dist, parent) = bfs_parents(&cover.adj, s);
                dist[t as usize].map(|d| {
                    let mut path = vec![t];
                    let mut cur = t;
                    while let Some(p) = parent[cur as usize] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    (d, i, path)
                })
            })
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        best.map(|(d, _, p)| witness_result(&cover, rat(d as i64), &p, ALGO))
    };
    Ok(combine_with_stripped(best_path, pre.best_stripped(), ALGO))
}

/// Exact hop distances for an undirected unweighted graph, by repeated
/// boolean matrix squaring. Components are handled separately; unreachable
/// pairs are None.
pub fn seidel_apsp(adj: &[Vec<bool>]) -> Vec<Vec<Option<u32>>> {
    let n = adj.len();
    let mut out = vec![vec![None; n]; n];
    // Split into connected components first.
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for v0 in 0..n {
        if comp[v0] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![v0];
        comp[v0] = id;
        let mut members = vec![v0];
        while let Some(v) = stack.pop() {
            for (w, &a) in adj[v].iter().enumerate() {
                if a && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    for members in &comps {
        let m = members.len();
        if m == 1 {
            out[members[0]][members[0]] = Some(0);
            continue;
        }
        let sub = Bitmat::from_dense(members, adj);
        let d = seidel_rec(&sub);
        for (i, &vi) in members.iter().enumerate() {
            for (j, &vj) in members.iter().enumerate() {
                out[vi][vj] = Some(d[i][j]);
            }
        }
    }
    out
}

/// Row-major bitset adjacency for the boolean product steps.
struct Bitmat {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Bitmat {
    fn from_dense(members: &[usize], adj: &[Vec<bool>]) -> Bitmat {
        let n = members.len();
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for (i, &vi) in members.iter().enumerate() {
            for (j, &vj) in members.iter().enumerate() {
                if adj[vi][vj] {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Bitmat { n, words, rows }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// self | self^2, diagonal cleared.
    fn square_or(&self) -> Bitmat {
        let mut out = Bitmat { n: self.n, words: self.words, rows: self.rows.clone() };
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let (dst, src) = (i * self.words, k * self.words);
                    for w in 0..self.words {
                        out.rows[dst + w] |= self.rows[src + w];
                    }
                }
            }
        }
        for i in 0..self.n {
            out.rows[i * self.words + i / 64] &= !(1 << (i % 64));
        }
        out
    }

    fn complete(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.get(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

fn seidel_rec(a: &Bitmat) -> Vec<Vec<u32>> {
    let n = a.n;
    if a.complete() {
        let mut d = vec![vec![1u32; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        return d;
    }
    let b = a.square_or();
    let d2 = seidel_rec(&b);
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..n).filter(|&k| a.get(k, j)).collect())
        .collect();
    let deg: Vec<u64> = neighbors.iter().map(|l| l.len() as u64).collect();
    let mut d = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x: u64 = neighbors[j].iter().map(|&k| d2[i][k] as u64).sum();
            let two = 2 * d2[i][j];
            d[i][j] = if x < (d2[i][j] as u64) * deg[j] { two - 1 } else { two };
        }
    }
    d
}

/// Unweighted solver backed by the hop-distance matrix of the cover graph.
pub fn solve_unweighted_seidel(instance: &Instance) -> Result<SeparatorResult, Error> {
    const ALGO: &str = "seidel";
    if !instance.has_unit_weights() {
        return Err(Error::NonUnitWeights);
    }
    let pre = strip_individual_separators(instance)?;
    let best_path = if pre.remainder.obstacles.is_empty() {
        None
    } else {
        let cover = build_cover_graph(&pre.remainder)?;
        let nv = cover.num_vertices();
        let mut dense = vec![vec![false; nv]; nv];
        for (u, nbrs) in cover.adj.iter().enumerate() {
            for &v in nbrs {
                dense[u][v as usize] = true;
            }
        }
        let dmat = seidel_apsp(&dense);
        let mut best: Option<(u32, usize)> = None;
        for i in 0..cover.num_obstacles() {
            let s = cover.vertex_of(i, 0) as usize;
            let t = cover.vertex_of(i, 1) as usize;
            if let Some(d) = dmat[s][t] {
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, i));
                }
            }
        }
        best.map(|(d, i)| {
            // Reconstruct a path by walking distance-decreasing neighbors.
            let s = cover.vertex_of(i, 0);
            let t = cover.vertex_of(i, 1) as usize;
            let mut path = vec![s];
            let mut cur = s as usize;
            while cur != t {
                let dc = dmat[cur][t].unwrap();
                let next = cover.adj[cur]
                    .iter()
                    .find(|&&w| dmat[w as usize][t] == Some(dc - 1))
                    .copied()
                    .expect("distance field admits a descent");
                path.push(next);
                cur = next as usize;
            }
            witness_result(&cover, rat(d as i64), &path, ALGO)
        })
    };
    Ok(combine_with_stripped(best_path, pre.best_stripped(), ALGO))
}

/// Ground-truth solver: enumerate subsets in increasing weight order and
/// certify each with the face-connectivity oracle.
pub fn brute_force_solve(instance: &Instance, cap: usize) -> Result<SeparatorResult, Error> {
    const ALGO: &str = "brute-force";
    let n = instance.obstacles.len();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    for ob in &instance.obstacles {
        match ob.shape {
            Shape::Segment { .. } | Shape::Polyline { .. } => {}
            _ => return Err(Error::UnsupportedShape("brute force")),
        }
    }
    let unit = instance.has_unit_weights();
    let mut order: Vec<(Rat, u32)> = (1u32..1 << n)
        .map(|mask| {
            let w: Rat = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| instance.obstacles[i].weight.clone())
                .sum();
            (w, mask)
        })
        .collect();
    if unit {
        order.sort_by(|a, b| a.1.count_ones().cmp(&b.1.count_ones()).then_with(|| a.1.cmp(&b.1)));
    } else {
        order.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    }
    let found = order
        .par_iter()
        .find_first(|(_, mask)| {
            let subset: Vec<_> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| instance.obstacles[i].clone())
                .collect();
            crate::arrangement::face_connectivity_oracle(&subset, &instance.s, &instance.t)
                .unwrap_or(false)
        })
        .cloned();
    match found {
        None => Ok(SeparatorResult::infeasible(ALGO)),
        Some((w, mask)) => {
            let ids: Vec<u32> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| instance.obstacles[i].id)
                .collect();
            Ok(SeparatorResult {
                feasible: true,
                weight: Some(w),
                obstacle_ids: ids,
                algorithm: ALGO,
                witness: None,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsspOrder {
    FromObstacles,
    FromArrangementVertices,
}

impl SeparatorResult {
    /// Exact total weight of the chosen ids in the given instance; checks
    /// internal consistency of the result.
    pub fn check_weight(&self, instance: &Instance) -> bool {
        match (&self.weight, self.feasible) {
            (None, false) => self.obstacle_ids.is_empty(),
            (Some(w), true) => {
                !self.obstacle_ids.is_empty() && &instance.total_weight(&self.obstacle_ids) == w
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use crate::geom::shape::Obstacle;
    use crate::geom::Point;
    use crate::num::ratio;

    fn seg(id: u32, a: Point, b: Point, w: i64) -> Obstacle {
        Obstacle { id, weight: rat(w), shape: Shape::Segment { a, b } }
    }

    fn triangle(weights: [i64; 3]) -> Instance {
        Instance::new(
            vec![
                seg(0, pt(-2, -1), pt(2, -1), weights[0]),
                seg(1, pt(2, -1), pt(0, 2), weights[1]),
                seg(2, pt(0, 2), pt(-2, -1), weights[2]),
            ],
            Point::new(ratio(1, 3), ratio(1, 3)),
            Point::new(rat(6), ratio(1, 3)),
            None,
        )
        .unwrap()
    }

    #[test]
    fn sssp_enter_cost_examples() {
        // Path a(1) - b(2) - c(3).
        let g = VwGraph {
            adj: vec![vec![1], vec![0, 2], vec![1]],
            weight: vec![rat(1), rat(2), rat(3)],
        };
        let (dist, _) = sssp_vertex_weighted(&g, 0);
        assert_eq!(dist[0], Some(rat(0)));
        assert_eq!(dist[1], Some(rat(2)));
        assert_eq!(dist[2], Some(rat(5)));
    }

    #[test]
    fn sssp_matches_exhaustive_paths() {
        // Random small graphs versus exhaustive simple-path enumeration.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = 8usize;
            let mut adj = vec![Vec::new(); n];
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.4) {
                        adj[u].push(v as u32);
                        adj[v].push(u as u32);
                    }
                }
            }
            let weight: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(0..10))).collect();
            let g = VwGraph { adj, weight };
            let (dist, _) = sssp_vertex_weighted(&g, 0);
            // Exhaustive DFS over simple paths.
            let mut best: Vec<Option<Rat>> = vec![None; n];
            fn dfs(
                g: &VwGraph,
                u: usize,
                cost: Rat,
                seen: &mut Vec<bool>,
                best: &mut Vec<Option<Rat>>,
            ) {
                if best[u].as_ref().map_or(true, |b| &cost < b) {
                    best[u] = Some(cost.clone());
                }
                for &v in &g.adj[u] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        dfs(g, v as usize, &cost + &g.weight[v as usize], seen, best);
                        seen[v as usize] = false;
                    }
                }
            }
            let mut seen = vec![false; n];
            seen[0] = true;
            dfs(&g, 0, Rat::zero(), &mut seen, &mut best);
            assert_eq!(dist, best);
        }
    }

    #[test]
    fn triangle_weighted() {
        let r = solve_weighted(&triangle([1, 1, 1])).unwrap();
        assert!(r.feasible);
        assert_eq!(r.weight, Some(rat(3)));
        assert_eq!(r.obstacle_ids, vec![0, 1, 2]);
        assert!(r.check_weight(&triangle([1, 1, 1])));
    }

    #[test]
    fn triangle_with_circle_prefers_cheaper() {
        let mut inst = triangle([1, 1, 1]);
        inst.obstacles.push(Obstacle {
            id: 9,
            weight: rat(5),
            shape: Shape::Circle { center: pt(0, 0), radius: rat(1) },
        });
        let r = solve_weighted(&inst).unwrap();
        assert_eq!(r.weight, Some(rat(3)));
        // Cheap circle wins instead.
        inst.obstacles.last_mut().unwrap().weight = rat(2);
        let r = solve_weighted(&inst).unwrap();
        assert_eq!(r.weight, Some(rat(2)));
        assert_eq!(r.obstacle_ids, vec![9]);
    }

    #[test]
    fn replaced_heavy_side() {
        // Heavy side of the triangle bypassed by a roughly parallel cheap
        // segment crossing the two unit sides.
        let mut inst = triangle([1, 1, 10]);
        inst.obstacles.push(seg(
            3,
            Point::new(ratio(1, 2), ratio(5, 2)),
            Point::new(rat(-2), ratio(-3, 2)),
            1,
        ));
        let r = solve_weighted(&inst).unwrap();
        assert_eq!(r.weight, Some(rat(3)));
        let brute = brute_force_solve(&inst, 12).unwrap();
        assert_eq!(brute.weight, r.weight);
    }

    #[test]
    fn no_obstacles_infeasible() {
        let inst = Instance::new(vec![], pt(0, 0), pt(5, 0), None).unwrap();
        let r = solve_weighted(&inst).unwrap();
        assert!(!r.feasible);
        let b = brute_force_solve(&inst, 12).unwrap();
        assert!(!b.feasible);
    }

    #[test]
    fn unweighted_agree() {
        let inst = triangle([1, 1, 1]);
        let a = solve_unweighted_bfs(&inst).unwrap();
        let b = solve_weighted(&inst).unwrap();
        let c = solve_unweighted_seidel(&inst).unwrap();
        assert_eq!(a.weight, b.weight);
        assert_eq!(a.weight, c.weight);
        assert!(solve_unweighted_bfs(&triangle([2, 1, 1])).is_err());
    }

    #[test]
    fn seidel_examples() {
        // Path P4.
        let adj = vec![
            vec![false, true, false, false],
            vec![true, false, true, false],
            vec![false, true, false, true],
            vec![false, false, true, false],
        ];
        let d = seidel_apsp(&adj);
        assert_eq!(d[0][3], Some(3));
        assert_eq!(d[0][0], Some(0));
        // Complete K5.
        let adj = vec![vec![true; 5]; 5].iter().enumerate().map(|(i, row)| {
            let mut r = row.clone();
            r[i] = false;
            r
        }).collect::<Vec<_>>();
        let d = seidel_apsp(&adj);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(d[i][j], Some(u32::from(i != j)));
            }
        }
    }

    #[test]
    fn seidel_matches_bfs_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(2..40);
            let mut dense = vec![vec![false; n]; n];
            let mut lists = vec![Vec::new(); n];
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.15) {
                        dense[u][v] = true;
                        dense[v][u] = true;
                        lists[u].push(v as u32);
                        lists[v].push(u as u32);
                    }
                }
            }
            let d = seidel_apsp(&dense);
            for u in 0..n {
                let hops = bfs_hops(&lists, u as u32);
                for v in 0..n {
                    assert_eq!(d[u][v], hops[v], "{u}->{v}");
                }
            }
        }
    }

    #[test]
    fn brute_force_square() {
        let inst = Instance::new(
            vec![
                seg(0, pt(0, 0), pt(4, 0), 1),
                seg(1, pt(4, 0), pt(4, 4), 1),
                seg(2, pt(4, 4), pt(0, 4), 1),
                seg(3, pt(0, 4), pt(0, 0), 1),
            ],
            Point::new(ratio(4, 3), ratio(4, 3)),
            pt(9, 9),
            None,
        )
        .unwrap();
        let r = brute_force_solve(&inst, 12).unwrap();
        assert_eq!(r.weight, Some(rat(4)));
        assert_eq!(r.obstacle_ids, vec![0, 1, 2, 3]);
        assert!(brute_force_solve(&inst, 3).is_err());
    }
}
