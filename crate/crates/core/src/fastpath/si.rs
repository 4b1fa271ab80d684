//! Static intersection structures: given a build set of pieces, answer
//! whether a query piece intersects any member, with a witness index and an
//! optional excluded origin (pieces of one obstacle never count as hitting
//! their own obstacle).

use super::{pieces_intersect, CutLine, PieceGeom};
use crate::error::Error;
use crate::num::{rat_to_f64, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiKind {
    AxisAligned,
    Segments,
    Disks,
}

/// A build-set member: piece id, owning obstacle, geometry.
#[derive(Clone, Copy)]
pub struct SiMember<'a> {
    pub id: usize,
    pub origin: usize,
    pub geom: &'a PieceGeom,
}

/// Detects the structure kind a set of pieces supports.
pub fn detect_kind(pieces: &[PieceGeom]) -> Option<SiKind> {
    let mut all_axis = true;
    let mut all_seg = true;
    let mut all_disk = true;
    for p in pieces {
        match p {
            PieceGeom::Segment { a, b } => {
                all_disk = false;
                if a.x != b.x && a.y != b.y {
                    all_axis = false;
                }
            }
            PieceGeom::Disk { .. } => {
                all_seg = false;
                all_axis = false;
            }
        }
    }
    if all_axis {
        Some(SiKind::AxisAligned)
    } else if all_seg {
        Some(SiKind::Segments)
    } else if all_disk {
        Some(SiKind::Disks)
    } else {
        None
    }
}

pub enum SiStructure {
    AxisAligned(AxisStructure),
    Grid(GridStructure),
}

impl SiStructure {
    /// Index of some build member intersecting the query piece whose origin
    /// differs from `exclude` (when given).
    pub fn query(&self, piece: &PieceGeom, exclude: Option<usize>) -> Result<Option<usize>, Error> {
        match self {
            SiStructure::AxisAligned(s) => s.query(piece, exclude),
            SiStructure::Grid(s) => Ok(s.query(piece, exclude)),
        }
    }
}

/// Builds the structure of the requested kind over the members.
pub fn si_build(kind: SiKind, members: &[SiMember<'_>], line: &CutLine) -> Result<SiStructure, Error> {
    match kind {
        SiKind::AxisAligned => Ok(SiStructure::AxisAligned(AxisStructure::build(members)?)),
        SiKind::Segments | SiKind::Disks => {
            for m in members {
                match (kind, m.geom) {
                    (SiKind::Segments, PieceGeom::Segment { .. }) => {}
                    (SiKind::Disks, PieceGeom::Disk { .. }) => {}
                    _ => return Err(Error::KindMismatch),
                }
            }
            Ok(SiStructure::Grid(GridStructure::build(members, line)))
        }
    }
}

/// One axis-aligned segment normalized to (fixed coordinate, span).
struct AxisSeg {
    fixed: Rat,
    lo: Rat,
    hi: Rat,
    id: usize,
    origin: usize,
}

fn normalize_axis(g: &PieceGeom) -> Result<(bool, Rat, Rat, Rat), Error> {
    match g {
        PieceGeom::Segment { a, b } => {
            if a.x == b.x {
                let (lo, hi) = if a.y <= b.y {
                    (a.y.clone(), b.y.clone())
                } else {
                    (b.y.clone(), a.y.clone())
                };
                Ok((true, a.x.clone(), lo, hi))
            } else if a.y == b.y {
                let (lo, hi) = if a.x <= b.x {
                    (a.x.clone(), b.x.clone())
                } else {
                    (b.x.clone(), a.x.clone())
                };
                Ok((false, a.y.clone(), lo, hi))
            } else {
                Err(Error::KindMismatch)
            }
        }
        PieceGeom::Disk { .. } => Err(Error::KindMismatch),
    }
}

/// Interval-stabbing set answering "any interval containing x, not owned by
/// an excluded origin" in O(log) time: intervals sorted by low end, prefix
/// maxima of high ends tracked for the best two distinct origins.
struct StabSet {
    lows: Vec<Rat>,
    entries: Vec<(Rat, usize, usize)>,
    best1: Vec<usize>,
    best2: Vec<Option<usize>>,
}

impl StabSet {
    fn build(mut items: Vec<(Rat, Rat, usize, usize)>) -> StabSet {
        items.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let lows: Vec<Rat> = items.iter().map(|i| i.0.clone()).collect();
        let entries: Vec<(Rat, usize, usize)> =
            items.into_iter().map(|i| (i.1, i.2, i.3)).collect();
        let mut best1 = Vec::with_capacity(entries.len());
        let mut best2 = Vec::with_capacity(entries.len());
        let mut b1 = 0usize;
        let mut b2: Option<usize> = None;
        for (i, e) in entries.iter().enumerate() {
            if i == 0 {
                b1 = 0;
            } else if e.0 > entries[b1].0 {
                if entries[b1].2 != e.2 {
                    // Previous leader becomes the runner-up; >= keeps the
                    // runner-up's origin distinct from the new leader even
                    // on ties.
                    if b2.map_or(true, |k| entries[b1].0 >= entries[k].0) {
                        b2 = Some(b1);
                    }
                }
                b1 = i;
            } else if e.2 != entries[b1].2 && b2.map_or(true, |k| e.0 > entries[k].0) {
                b2 = Some(i);
            }
            best1.push(b1);
            best2.push(b2);
        }
        StabSet { lows, entries, best1, best2 }
    }

    /// Any interval with low <= x <= high whose origin is not excluded.
    fn stab(&self, x: &Rat, exclude: Option<usize>) -> Option<usize> {
        let k = self.lows.partition_point(|l| l <= x);
        if k == 0 {
            return None;
        }
        let b1 = self.best1[k - 1];
        let e1 = &self.entries[b1];
        if Some(e1.2) != exclude && &e1.0 >= x {
            return Some(e1.1);
        }
        if Some(e1.2) == exclude {
            if let Some(b2) = self.best2[k - 1] {
                let e2 = &self.entries[b2];
                if &e2.0 >= x {
                    return Some(e2.1);
                }
            }
        }
        None
    }
}

/// Static segment tree over items sorted by a key; each node owns a stab set
/// for the intervals of its key range.
struct RangeStab {
    keys: Vec<Rat>,
    nodes: Vec<StabSet>,
    size: usize,
}

impl RangeStab {
    /// items: (key, interval lo, interval hi, id, origin).
    fn build(mut items: Vec<(Rat, Rat, Rat, usize, usize)>) -> RangeStab {
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let n = items.len();
        let keys: Vec<Rat> = items.iter().map(|i| i.0.clone()).collect();
        let size = n.next_power_of_two().max(1);
        let mut buckets: Vec<Vec<(Rat, Rat, usize, usize)>> = vec![Vec::new(); 2 * size];
        for (i, (_, lo, hi, id, origin)) in items.into_iter().enumerate() {
            let mut node = size + i;
            while node >= 1 {
                buckets[node].push((lo.clone(), hi.clone(), id, origin));
                if node == 1 {
                    break;
                }
                node /= 2;
            }
        }
        let nodes = buckets.into_iter().map(StabSet::build).collect();
        RangeStab { keys, nodes, size }
    }

    /// Any member with key in [klo, khi] whose interval contains x.
    fn query(&self, klo: &Rat, khi: &Rat, x: &Rat, exclude: Option<usize>) -> Option<usize> {
        if self.keys.is_empty() {
            return None;
        }
        let mut l = self.keys.partition_point(|k| k < klo) + self.size;
        let mut r = self.keys.partition_point(|k| k <= khi) + self.size;
        while l < r {
            if l % 2 == 1 {
                if let Some(m) = self.nodes[l].stab(x, exclude) {
                    return Some(m);
                }
                l += 1;
            }
            if r % 2 == 1 {
                r -= 1;
                if let Some(m) = self.nodes[r].stab(x, exclude) {
                    return Some(m);
                }
            }
            l /= 2;
            r /= 2;
        }
        None
    }
}

/// Per-line stab sets for collinear overlaps among parallel segments.
struct ParallelOverlaps {
    lines: Vec<Rat>,
    sets: Vec<StabSet>,
}

impl ParallelOverlaps {
    fn build(segs: &[AxisSeg]) -> ParallelOverlaps {
        let mut by_line: std::collections::BTreeMap<Rat, Vec<(Rat, Rat, usize, usize)>> =
            Default::default();
        for s in segs {
            by_line
                .entry(s.fixed.clone())
                .or_default()
                .push((s.lo.clone(), s.hi.clone(), s.id, s.origin));
        }
        let mut lines = Vec::new();
        let mut sets = Vec::new();
        for (k, v) in by_line {
            lines.push(k);
            sets.push(StabSet::build(v));
        }
        ParallelOverlaps { lines, sets }
    }

    /// Any member on the same line with [l, h] meeting [lo, hi].
    fn query(&self, fixed: &Rat, lo: &Rat, hi: &Rat, exclude: Option<usize>) -> Option<usize> {
        let i = self.lines.partition_point(|l| l < fixed);
        if i >= self.lines.len() || &self.lines[i] != fixed {
            return None;
        }
        // Overlap iff member.lo <= hi and member.hi >= lo: a stab query at
        // `lo` over members with low end <= hi.
        let set = &self.sets[i];
        let k = set.lows.partition_point(|l| l <= hi);
        if k == 0 {
            return None;
        }
        let b1 = set.best1[k - 1];
        let e1 = &set.entries[b1];
        if Some(e1.2) != exclude && &e1.0 >= lo {
            return Some(e1.1);
        }
        if Some(e1.2) == exclude {
            if let Some(b2) = set.best2[k - 1] {
                let e2 = &set.entries[b2];
                if &e2.0 >= lo {
                    return Some(e2.1);
                }
            }
        }
        None
    }
}

pub struct AxisStructure {
    vertical_tree: RangeStab,
    horizontal_tree: RangeStab,
    vertical_overlaps: ParallelOverlaps,
    horizontal_overlaps: ParallelOverlaps,
}

impl AxisStructure {
    fn build(members: &[SiMember<'_>]) -> Result<AxisStructure, Error> {
        let mut verticals = Vec::new();
        let mut horizontals = Vec::new();
        for m in members {
            let (is_vertical, fixed, lo, hi) = normalize_axis(m.geom)?;
            let seg = AxisSeg { fixed, lo, hi, id: m.id, origin: m.origin };
            if is_vertical {
                verticals.push(seg);
            } else {
                horizontals.push(seg);
            }
        }
        let horizontal_tree = RangeStab::build(
            horizontals
                .iter()
                .map(|s| (s.fixed.clone(), s.lo.clone(), s.hi.clone(), s.id, s.origin))
                .collect(),
        );
        let vertical_tree = RangeStab::build(
            verticals
                .iter()
                .map(|s| (s.fixed.clone(), s.lo.clone(), s.hi.clone(), s.id, s.origin))
                .collect(),
        );
        Ok(AxisStructure {
            vertical_overlaps: ParallelOverlaps::build(&verticals),
            horizontal_overlaps: ParallelOverlaps::build(&horizontals),
            vertical_tree,
            horizontal_tree,
        })
    }

    fn query(&self, piece: &PieceGeom, exclude: Option<usize>) -> Result<Option<usize>, Error> {
        let (is_vertical, fixed, lo, hi) = normalize_axis(piece)?;
        if is_vertical {
            if let Some(m) = self.horizontal_tree.query(&lo, &hi, &fixed, exclude) {
                return Ok(Some(m));
            }
            Ok(self.vertical_overlaps.query(&fixed, &lo, &hi, exclude))
        } else {
            if let Some(m) = self.vertical_tree.query(&lo, &hi, &fixed, exclude) {
                return Ok(Some(m));
            }
            Ok(self.horizontal_overlaps.query(&fixed, &lo, &hi, exclude))
        }
    }
}

/// Uniform-grid candidate filter with exact predicates, for arbitrary
/// segments and clipped disks.
pub struct GridStructure {
    line: CutLine,
    members: Vec<(usize, usize, PieceGeom)>,
    cell: f64,
    min_x: f64,
    min_y: f64,
    cols: usize,
    rows: usize,
    cells: Vec<Vec<u32>>,
}

fn fbox(g: &PieceGeom) -> (f64, f64, f64, f64) {
    match g {
        PieceGeom::Segment { a, b } => {
            let (ax, ay) = a.to_f64();
            let (bx, by) = b.to_f64();
            (ax.min(bx), ay.min(by), ax.max(bx), ay.max(by))
        }
        PieceGeom::Disk { center, radius, .. } => {
            let (cx, cy) = center.to_f64();
            let r = rat_to_f64(radius);
            (cx - r, cy - r, cx + r, cy + r)
        }
    }
}

impl GridStructure {
    fn build(members: &[SiMember<'_>], line: &CutLine) -> GridStructure {
        let owned: Vec<(usize, usize, PieceGeom)> =
            members.iter().map(|m| (m.id, m.origin, m.geom.clone())).collect();
        let boxes: Vec<(f64, f64, f64, f64)> = owned.iter().map(|(_, _, g)| fbox(g)).collect();
        let n = owned.len().max(1);
        let (mut min_x, mut min_y, mut max_x, mut max_y) =
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut avg = 0.0;
        for b in &boxes {
            min_x = min_x.min(b.0);
            min_y = min_y.min(b.1);
            max_x = max_x.max(b.2);
            max_y = max_y.max(b.3);
            avg += (b.2 - b.0).max(b.3 - b.1);
        }
        if boxes.is_empty() {
            min_x = 0.0;
            min_y = 0.0;
            max_x = 1.0;
            max_y = 1.0;
        }
        let span = ((max_x - min_x).max(max_y - min_y)).max(1e-9);
        let cell = ((avg / n as f64).max(span / (n as f64).sqrt().max(1.0))).max(1e-9);
        let pad = cell * 1e-9 + 1e-12;
        let cols = (((max_x - min_x) / cell).ceil() as usize + 2).max(1);
        let rows = (((max_y - min_y) / cell).ceil() as usize + 2).max(1);
        let mut cells = vec![Vec::new(); cols * rows];
        for (i, b) in boxes.iter().enumerate() {
            let c0 = (((b.0 - pad - min_x) / cell).floor().max(0.0)) as usize;
            let c1 = ((((b.2 + pad - min_x) / cell).floor()).max(0.0) as usize).min(cols - 1);
            let r0 = (((b.1 - pad - min_y) / cell).floor().max(0.0)) as usize;
            let r1 = ((((b.3 + pad - min_y) / cell).floor()).max(0.0) as usize).min(rows - 1);
            for r in r0..=r1 {
                for c in c0..=c1 {
                    cells[r * cols + c].push(i as u32);
                }
            }
        }
        GridStructure { line: line.clone(), members: owned, cell, min_x, min_y, cols, rows, cells }
    }

    fn query(&self, piece: &PieceGeom, exclude: Option<usize>) -> Option<usize> {
        if self.members.is_empty() {
            return None;
        }
        let b = fbox(piece);
        let pad = self.cell * 1e-9 + 1e-12;
        let c0 = (((b.0 - pad - self.min_x) / self.cell).floor().max(0.0)) as usize;
        let c1 = ((((b.2 + pad - self.min_x) / self.cell).floor()).max(0.0) as usize)
            .min(self.cols - 1);
        let r0 = (((b.1 - pad - self.min_y) / self.cell).floor().max(0.0)) as usize;
        let r1 = ((((b.3 + pad - self.min_y) / self.cell).floor()).max(0.0) as usize)
            .min(self.rows - 1);
        let mut seen = std::collections::HashSet::new();
        for r in r0..=r1 {
            for c in c0..=c1 {
                for &i in &self.cells[r * self.cols + c] {
                    if !seen.insert(i) {
                        continue;
                    }
                    let (id, origin, g) = &self.members[i as usize];
                    if Some(*origin) == exclude {
                        continue;
                    }
                    if pieces_intersect(piece, g, &self.line) {
                        return Some(*id);
                    }
                }
            }
        }
        None
    }
}

/// Reference quadratic implementation for property tests.
pub fn si_reference(
    members: &[SiMember<'_>],
    query: &PieceGeom,
    exclude: Option<usize>,
    line: &CutLine,
) -> Option<usize> {
    members
        .iter()
        .find(|m| Some(m.origin) != exclude && pieces_intersect(query, m.geom, line))
        .map(|m| m.id)
}
