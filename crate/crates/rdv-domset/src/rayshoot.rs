//! Dynamic first-hit ray shooting over disjoint axis-parallel segments:
//! downward vertical rays against horizontal segments, and rightward
//! horizontal rays against vertical segments.
//!
//! Built over the fixed coordinate universe known at solve start.
//! Intervals are closed on both axes: a ray whose origin lies on a
//! segment hits that segment. Delete and query are O(log^2 n).
//!
//! Segments passed to the bulk constructor live in an interval tree over
//! the universe: each segment sits in exactly one node (the highest whose
//! center it covers), stored in a flat line-sorted slice with a
//! tournament tree over span endpoints, so the memory is linear, queries
//! touch contiguous arrays, and deletions knock out tournament leaves.
//! Segments inserted after construction go to ordered maps on the
//! canonical nodes of a segment tree instead; that path serves small or
//! incremental workloads and the solver never takes it.

use std::cell::RefCell;
use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::VertexId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RayShootError {
    #[error("segment for vertex {0} already stored")]
    DuplicateOwner(VertexId),
    #[error("no segment for vertex {0}")]
    AbsentOwner(VertexId),
    #[error("coordinate {0} not in the declared universe")]
    OutsideUniverse(i64),
}

/// A horizontal segment at row `y`, spanning `[x_lo, x_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HSegment {
    pub owner: VertexId,
    pub y: i64,
    pub x_lo: i64,
    pub x_hi: i64,
}

/// A vertical segment at column `x`, spanning `[y_lo, y_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VSegment {
    pub owner: VertexId,
    pub x: i64,
    pub y_lo: i64,
    pub y_hi: i64,
}

#[derive(Clone, Copy)]
struct Stored {
    line: i64,
    lo: i64,
    hi: i64,
}

fn pack(node: usize, at: usize) -> u64 {
    (node as u64) << 32 | at as u64
}

/// Interval-tree node header: its arena slice is `start..start + len`
/// (line-sorted), its tournament tree sits at `t_off` in the span pool
/// with `t_pad` leaves (slice length rounded up to a power of two; index
/// 0 unused, root at 1, leaves from `t_pad`). `span` mirrors the live
/// tournament root.
#[derive(Clone, Copy)]
struct NodeHdr {
    start: u32,
    len: u32,
    t_off: u32,
    t_pad: u32,
    span: Span,
}

/// Tournament aggregate: covered `across` range as coordinate ranks plus
/// the maximum line in the subtree, so one 16-byte read serves both the
/// line search and the span check.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Span {
    lo_idx: u32,
    hi_idx: u32,
    max_line: i64,
}

const DEAD: Span = Span {
    lo_idx: u32::MAX,
    hi_idx: 0,
    max_line: i64::MIN,
};

impl Span {
    fn leaf(lo_idx: usize, hi_idx: usize, line: i64) -> Span {
        Span {
            lo_idx: lo_idx as u32,
            hi_idx: hi_idx as u32,
            max_line: line,
        }
    }

    fn merge(a: Span, b: Span) -> Span {
        Span {
            lo_idx: a.lo_idx.min(b.lo_idx),
            hi_idx: a.hi_idx.max(b.hi_idx),
            max_line: a.max_line.max(b.max_line),
        }
    }

    fn covers(&self, leaf: usize, low_side: bool) -> bool {
        if low_side {
            self.lo_idx as usize <= leaf
        } else {
            self.hi_idx as usize >= leaf
        }
    }
}

/// Shared core: segments span a closed range of `across` coordinates and
/// sit at one `line` coordinate; a query stabs one `across` coordinate
/// and asks for the minimum `line >= start`.
///
/// Interval-tree nodes are identified by the midpoint index of their
/// coordinate range: the root covers `[0, size)` with center `size / 2`,
/// children recurse on the two halves, so every index names exactly one
/// node.
struct StabbingTree {
    coords: Vec<i64>,
    /// O(1) coordinate ranks when the universe is dense enough:
    /// `rank[c - coords[0]]`, `u32::MAX` marking gaps. Empty otherwise.
    rank: Vec<u32>,
    /// Per-node slice bounds, tournament layout and live root span,
    /// packed to one cache line so a node visit costs one read.
    hdr: Vec<NodeHdr>,
    /// One bit per node with a non-empty slice; descents consult this
    /// cache-resident mask before touching a header.
    occupied: Vec<u64>,
    owner: Vec<VertexId>,
    /// Tournament entries of every per-node tournament tree, in one flat
    /// pool; dead and padding entries hold [`DEAD`].
    span: Vec<Span>,
    /// Segments inserted after construction: canonical segment-tree
    /// nodes, `line -> owner` each. Disjointness makes lines unique
    /// within one node.
    overflow: FxHashMap<u32, BTreeMap<i64, VertexId>>,
    /// Arena position per live bulk-built owner, packed
    /// `node << 32 | at` with `at` indexing the flat arrays: direct
    /// slots for ids below the bulk count (`u64::MAX` = absent), a spill
    /// map above it.
    live: Vec<u64>,
    live_len: usize,
    live_spill: FxHashMap<VertexId, u64>,
    /// Coordinates of live post-build segments, which have no arena slot.
    overflow_live: FxHashMap<VertexId, Stored>,
    /// Last static-side query with its per-node candidates. Successive
    /// shots along one ray (delete the hit, shoot again) then cost one
    /// node repair instead of a full descent.
    memo: RefCell<Memo>,
}

#[derive(Default)]
struct Memo {
    valid: bool,
    across: i64,
    start: i64,
    leaf: usize,
    /// Interval-tree nodes on the midpoint path for `leaf`.
    nodes: Vec<u32>,
    /// Arena index of each node's current minimum, `u32::MAX` = none.
    cand: Vec<u32>,
    /// Line of each node's current minimum, so repeats of the memoized
    /// query compare lines without touching the arena.
    cand_line: Vec<i64>,
    /// Bitmask over `nodes` of candidates a delete has invalidated,
    /// recomputed only when the same ray is shot again; deletes on other
    /// rays then never pay for a recomputation.
    dirty: u64,
}

impl StabbingTree {
    fn new(
        universe: impl IntoIterator<Item = i64>,
        segments: impl IntoIterator<Item = (VertexId, i64, i64, i64)>,
    ) -> Result<Self, RayShootError> {
        let raw: Vec<i64> = universe.into_iter().collect();
        // Dense universes (the solver's coordinates are near-contiguous
        // integers) sort in one presence-bitmap pass and gain an O(1)
        // rank table; anything else falls back to a comparison sort.
        let mut coords = Vec::new();
        let mut rank = Vec::new();
        let bounds = raw.iter().fold(None, |acc: Option<(i64, i64)>, &c| {
            Some(acc.map_or((c, c), |(lo, hi)| (lo.min(c), hi.max(c))))
        });
        if let Some((min, max)) = bounds {
            match max.checked_sub(min).and_then(|r| r.checked_add(1)) {
                Some(range) if (range as u128) <= 4 * raw.len() as u128 => {
                    rank = vec![u32::MAX; range as usize];
                    for &c in &raw {
                        rank[(c - min) as usize] = 0;
                    }
                    for (at, r) in rank.iter_mut().enumerate() {
                        if *r == 0 {
                            *r = coords.len() as u32;
                            coords.push(min + at as i64);
                        } else {
                            *r = u32::MAX;
                        }
                    }
                }
                _ => {
                    coords = raw;
                    coords.sort_unstable();
                    coords.dedup();
                }
            }
        }
        let size = coords.len();
        let mut tree = StabbingTree {
            coords,
            rank,
            hdr: vec![
                NodeHdr {
                    start: 0,
                    len: 0,
                    t_off: 0,
                    t_pad: 0,
                    span: DEAD,
                };
                size
            ],
            owner: Vec::new(),
            occupied: vec![0; size.div_ceil(64)],
            span: Vec::new(),
            overflow: FxHashMap::default(),
            memo: RefCell::new(Memo::default()),
            live: Vec::new(),
            live_len: 0,
            live_spill: FxHashMap::default(),
            overflow_live: FxHashMap::default(),
        };

        // Place every segment on its node, recording endpoint ranks, and
        // bucket them into one interleaved staging array (a single
        // scattered write per segment), line-sorting each short slice in
        // place. The sorted pass writes the owner table and the
        // tournament leaves together; the leaves carry the endpoint
        // ranks and the line, so no separate coordinate arrays exist.
        let segments: Vec<(VertexId, i64, i64, i64)> = segments.into_iter().collect();
        let mut homes = Vec::with_capacity(segments.len());
        for &(_, _, lo, hi) in &segments {
            let (ilo, ihi) = (tree.index(lo)?, tree.index(hi)?);
            let home = tree.home(ilo, ihi);
            tree.hdr[home].len += 1;
            homes.push((home as u32, ilo as u32, ihi as u32));
        }
        let mut at = 0u32;
        let mut pool = 0u32;
        for (node, h) in tree.hdr.iter_mut().enumerate() {
            h.start = at;
            at += h.len;
            if h.len > 0 {
                tree.occupied[node / 64] |= 1 << (node % 64);
                // Single-segment nodes live entirely in their header
                // span; only longer slices get a tournament pool.
                if h.len >= 2 {
                    let p = h.len.next_power_of_two();
                    h.t_off = pool;
                    h.t_pad = p;
                    pool += 2 * p;
                }
            }
        }
        let total = segments.len();
        let mut fill: Vec<u32> = tree.hdr.iter().map(|h| h.start).collect();
        let mut staged: Vec<(i64, u32, u32, u32)> = vec![(0, 0, 0, 0); total];
        for (k, &(owner, line, _, _)) in segments.iter().enumerate() {
            let (home, ilo, ihi) = homes[k];
            let slot = fill[home as usize] as usize;
            fill[home as usize] += 1;
            staged[slot] = (line, ilo, ihi, owner);
        }
        tree.owner = vec![0; total];
        tree.live = vec![u64::MAX; total];
        tree.span = vec![DEAD; pool as usize];
        for node in 0..size {
            let h = tree.hdr[node];
            if h.len == 0 {
                continue;
            }
            let (b, e) = (h.start as usize, (h.start + h.len) as usize);
            staged[b..e].sort_unstable_by_key(|&(line, ..)| line);
            let (off, p) = (h.t_off as usize, h.t_pad as usize);
            for (j, &(line, ilo, ihi, owner)) in staged[b..e].iter().enumerate() {
                tree.owner[b + j] = owner;
                if p > 0 {
                    tree.span[off + p + j] = Span::leaf(ilo as usize, ihi as usize, line);
                }
                if tree.set_pos(owner, pack(node, b + j)).is_some() {
                    return Err(RayShootError::DuplicateOwner(owner));
                }
                tree.live_len += 1;
            }
            if p > 0 {
                for k in (1..p).rev() {
                    tree.span[off + k] =
                        Span::merge(tree.span[off + 2 * k], tree.span[off + 2 * k + 1]);
                }
                tree.hdr[node].span = tree.span[off + 1];
            } else {
                let (line, ilo, ihi, _) = staged[b];
                tree.hdr[node].span = Span::leaf(ilo as usize, ihi as usize, line);
            }
        }
        Ok(tree)
    }

    fn index(&self, coord: i64) -> Result<usize, RayShootError> {
        if self.rank.is_empty() {
            return self
                .coords
                .binary_search(&coord)
                .map_err(|_| RayShootError::OutsideUniverse(coord));
        }
        match usize::try_from(coord - self.coords[0])
            .ok()
            .and_then(|at| self.rank.get(at))
        {
            Some(&r) if r != u32::MAX => Ok(r as usize),
            _ => Err(RayShootError::OutsideUniverse(coord)),
        }
    }

    /// Interval-tree node owning the span with endpoint indices
    /// `[ilo, ihi]`: the first center the midpoint descent finds inside
    /// the span.
    fn home(&self, ilo: usize, ihi: usize) -> usize {
        let (mut l, mut r) = (0usize, self.coords.len());
        loop {
            let mid = (l + r) / 2;
            if ihi < mid {
                r = mid;
            } else if ilo > mid {
                l = mid + 1;
            } else {
                return mid;
            }
        }
    }

    /// Canonical segment-tree nodes of `[lo, hi]`, for the overflow maps.
    fn canonical(&self, lo: i64, hi: i64) -> Result<CanonicalNodes, RayShootError> {
        let size = self.coords.len();
        Ok(CanonicalNodes {
            l: self.index(lo)? + size,
            r: self.index(hi)? + size + 1,
        })
    }

    fn insert(
        &mut self,
        owner: VertexId,
        line: i64,
        lo: i64,
        hi: i64,
    ) -> Result<(), RayShootError> {
        if self.pos(owner).is_some() || self.overflow_live.contains_key(&owner) {
            return Err(RayShootError::DuplicateOwner(owner));
        }
        for node in self.canonical(lo, hi)? {
            self.overflow.entry(node).or_default().insert(line, owner);
        }
        self.overflow_live.insert(owner, Stored { line, lo, hi });
        self.memo.get_mut().valid = false;
        Ok(())
    }

    /// Packed arena position of a live bulk-built owner.
    fn pos(&self, owner: VertexId) -> Option<u64> {
        match self.live.get(owner as usize) {
            Some(&p) if p != u64::MAX => Some(p),
            Some(_) => None,
            None => self.live_spill.get(&owner).copied(),
        }
    }

    /// Records an owner's position; returns the previous one if present.
    fn set_pos(&mut self, owner: VertexId, packed: u64) -> Option<u64> {
        match self.live.get_mut(owner as usize) {
            Some(p) => {
                let old = (*p != u64::MAX).then_some(*p);
                *p = packed;
                old
            }
            None => self.live_spill.insert(owner, packed),
        }
    }

    fn clear_pos(&mut self, owner: VertexId) -> Option<u64> {
        match self.live.get_mut(owner as usize) {
            Some(p) => {
                let old = (*p != u64::MAX).then_some(*p);
                *p = u64::MAX;
                old
            }
            None => self.live_spill.remove(&owner),
        }
    }

    fn delete(&mut self, owner: VertexId) -> Result<(i64, i64, i64), RayShootError> {
        if let Some(packed) = self.clear_pos(owner) {
            self.live_len -= 1;
            let (node, at) = ((packed >> 32) as usize, (packed & u32::MAX as u64) as usize);
            let h = self.hdr[node];
            let (off, p) = (h.t_off as usize, h.t_pad as usize);
            let s;
            if p == 0 {
                s = h.span;
                self.hdr[node].span = DEAD;
            } else {
                let mut k = p + (at - h.start as usize);
                s = self.span[off + k];
                self.span[off + k] = DEAD;
                // Stop climbing once the parent span is unchanged.
                while k > 1 {
                    k /= 2;
                    let merged = Span::merge(self.span[off + 2 * k], self.span[off + 2 * k + 1]);
                    if merged == self.span[off + k] {
                        break;
                    }
                    self.span[off + k] = merged;
                }
                self.hdr[node].span = self.span[off + 1];
            }
            // Mark the memoized candidate of the touched node stale.
            let m = self.memo.get_mut();
            if m.valid {
                match m.nodes.iter().position(|&x| x as usize == node) {
                    Some(i) if i < 64 => m.dirty |= 1 << i,
                    Some(_) => m.valid = false,
                    None => {}
                }
            }
            return Ok((
                s.max_line,
                self.coords[s.lo_idx as usize],
                self.coords[s.hi_idx as usize],
            ));
        }
        let s = self
            .overflow_live
            .remove(&owner)
            .ok_or(RayShootError::AbsentOwner(owner))?;
        for node in self.canonical(s.lo, s.hi).expect("was inserted") {
            self.overflow
                .get_mut(&node)
                .expect("was inserted")
                .remove(&s.line);
        }
        Ok((s.line, s.lo, s.hi))
    }

    fn get(&self, owner: VertexId) -> Option<(i64, i64, i64)> {
        if let Some(packed) = self.pos(owner) {
            let (node, at) = ((packed >> 32) as usize, (packed & u32::MAX as u64) as usize);
            let h = self.hdr[node];
            let s = if h.t_pad == 0 {
                h.span
            } else {
                self.span[h.t_off as usize + h.t_pad as usize + (at - h.start as usize)]
            };
            return Some((
                s.max_line,
                self.coords[s.lo_idx as usize],
                self.coords[s.hi_idx as usize],
            ));
        }
        self.overflow_live.get(&owner).map(|s| (s.line, s.lo, s.hi))
    }

    fn len(&self) -> usize {
        self.live_len + self.overflow_live.len()
    }

    fn admits(&self, off: usize, k: usize, leaf: usize, low_side: bool) -> bool {
        self.span[off + k].covers(leaf, low_side)
    }

    /// Minimum line >= `start` among live arena segments of `node` that
    /// contain the stab coordinate (given as its rank `leaf`, with which
    /// side of the node's center it is on). The slice is line-sorted, so
    /// the live entries with line >= `start` form a leaf suffix: one
    /// max-line descent finds its first leaf, a canonical left-to-right
    /// walk then finds the first admissible subtree and descends into it.
    fn node_min(
        &self,
        node: usize,
        leaf: usize,
        start: i64,
        low_side: bool,
    ) -> Option<(usize, i64)> {
        if self.occupied[node / 64] >> (node % 64) & 1 == 0 {
            return None;
        }
        let h = self.hdr[node];
        if !h.span.covers(leaf, low_side) || h.span.max_line < start {
            return None;
        }
        let b = h.start as usize;
        let (off, p) = (h.t_off as usize, h.t_pad as usize);
        if p == 0 {
            // Single live segment, already checked against the query.
            return Some((b, h.span.max_line));
        }
        let mut first = 1;
        while first < p {
            first = if self.span[off + 2 * first].max_line >= start {
                2 * first
            } else {
                2 * first + 1
            };
        }
        let mut lhs: Option<usize> = None;
        let (mut l, mut r) = (first, p + p);
        let mut rhs_stack = [0usize; 36];
        let mut rhs_len = 0;
        while l < r && lhs.is_none() {
            if l & 1 == 1 {
                if self.admits(off, l, leaf, low_side) {
                    lhs = Some(l);
                }
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                rhs_stack[rhs_len] = r;
                rhs_len += 1;
            }
            l >>= 1;
            r >>= 1;
        }
        let mut k = match lhs {
            Some(k) => k,
            None => *rhs_stack[..rhs_len]
                .iter()
                .rev()
                .find(|&&k| self.admits(off, k, leaf, low_side))?,
        };
        while k < p {
            k = if self.admits(off, 2 * k, leaf, low_side) {
                2 * k
            } else {
                2 * k + 1
            };
        }
        Some((b + (k - p), self.span[off + k].max_line))
    }

    /// First segment hit by the ray stabbing `across` and moving toward
    /// larger `line` coordinates from `start` (inclusive), as
    /// `(owner, line, lo, hi)`.
    fn first_hit(&self, across: i64, start: i64) -> Option<(VertexId, i64, i64, i64)> {
        if self.coords.is_empty()
            || across < self.coords[0]
            || across > *self.coords.last().unwrap()
        {
            return None;
        }
        let leaf = self
            .index(across)
            .expect("query coordinate must be in the declared universe");
        // Static side: midpoint descent toward the stab coordinate,
        // memoized so repeats of the same ray reuse the candidates.
        let mut memo = self.memo.borrow_mut();
        if memo.valid && memo.across == across && memo.start == start {
            // Recompute only the candidates stale since the last shot.
            while memo.dirty != 0 {
                let i = memo.dirty.trailing_zeros() as usize;
                memo.dirty &= memo.dirty - 1;
                let node = memo.nodes[i] as usize;
                let c = self.node_min(node, leaf, start, leaf <= node);
                memo.cand[i] = c.map_or(u32::MAX, |(j, _)| j as u32);
                memo.cand_line[i] = c.map_or(i64::MAX, |(_, line)| line);
            }
        } else {
            memo.valid = true;
            memo.across = across;
            memo.start = start;
            memo.leaf = leaf;
            memo.dirty = 0;
            memo.nodes.clear();
            memo.cand.clear();
            memo.cand_line.clear();
            let (mut l, mut r) = (0usize, self.coords.len());
            while l < r {
                let mid = (l + r) / 2;
                memo.nodes.push(mid as u32);
                let c = self.node_min(mid, leaf, start, leaf <= mid);
                memo.cand.push(c.map_or(u32::MAX, |(j, _)| j as u32));
                memo.cand_line.push(c.map_or(i64::MAX, |(_, line)| line));
                if leaf < mid {
                    r = mid;
                } else if leaf > mid {
                    l = mid + 1;
                } else {
                    break;
                }
            }
        }
        let mut best: Option<usize> = None;
        for (i, &c) in memo.cand.iter().enumerate() {
            if c != u32::MAX && best.is_none_or(|b: usize| memo.cand_line[i] < memo.cand_line[b]) {
                best = Some(i);
            }
        }
        let mut best = best.map(|i| {
            let (node, j) = (memo.nodes[i] as usize, memo.cand[i] as usize);
            let h = self.hdr[node];
            let s = if h.t_pad == 0 {
                h.span
            } else {
                self.span[h.t_off as usize + h.t_pad as usize + (j - h.start as usize)]
            };
            (
                self.owner[j],
                s.max_line,
                self.coords[s.lo_idx as usize],
                self.coords[s.hi_idx as usize],
            )
        });
        drop(memo);

        // Dynamic side: leaf-to-root walk over the canonical maps.
        if !self.overflow.is_empty() {
            let mut pos = leaf + self.coords.len();
            while pos >= 1 {
                if let Some(map) = self.overflow.get(&(pos as u32)) {
                    if let Some((&line, &owner)) = map.range(start..).next() {
                        if best.is_none_or(|(_, b, _, _)| line < b) {
                            let (_, lo, hi) = self.get(owner).expect("overflow owner is live");
                            best = Some((owner, line, lo, hi));
                        }
                    }
                }
                pos >>= 1;
            }
        }
        best
    }
}

/// Iterator over the canonical segment-tree nodes covering a leaf range.
struct CanonicalNodes {
    l: usize,
    r: usize,
}

impl Iterator for CanonicalNodes {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.l < self.r {
            if self.l & 1 == 1 {
                self.l += 1;
                return Some((self.l - 1) as u32);
            }
            if self.r & 1 == 1 {
                self.r -= 1;
                return Some(self.r as u32);
            }
            self.l >>= 1;
            self.r >>= 1;
        }
        None
    }
}

/// The set S_H of horizontal segments of undominated vertices, queried by
/// downward vertical rays.
pub struct HorizontalSegments {
    tree: StabbingTree,
}

impl HorizontalSegments {
    /// `x_universe` must contain every segment endpoint and every query
    /// x-coordinate ever used.
    pub fn new(x_universe: impl IntoIterator<Item = i64>) -> Self {
        HorizontalSegments {
            tree: StabbingTree::new(x_universe, std::iter::empty()).expect("no duplicates"),
        }
    }

    /// Bulk construction; much cheaper than repeated [`insert`] calls
    /// when the segment set is known up front.
    ///
    /// [`insert`]: HorizontalSegments::insert
    pub fn with_segments(
        x_universe: impl IntoIterator<Item = i64>,
        segments: impl IntoIterator<Item = HSegment>,
    ) -> Result<Self, RayShootError> {
        Ok(HorizontalSegments {
            tree: StabbingTree::new(
                x_universe,
                segments.into_iter().map(|s| (s.owner, s.y, s.x_lo, s.x_hi)),
            )?,
        })
    }

    pub fn insert(&mut self, seg: HSegment) -> Result<(), RayShootError> {
        debug_assert!(seg.x_lo <= seg.x_hi);
        self.tree.insert(seg.owner, seg.y, seg.x_lo, seg.x_hi)
    }

    pub fn delete(&mut self, owner: VertexId) -> Result<HSegment, RayShootError> {
        let (y, x_lo, x_hi) = self.tree.delete(owner)?;
        Ok(HSegment {
            owner,
            y,
            x_lo,
            x_hi,
        })
    }

    pub fn contains(&self, owner: VertexId) -> bool {
        self.tree.get(owner).is_some()
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.len() == 0
    }

    /// First live segment hit by a downward ray from `(x, y_start)`.
    pub fn shoot_down(&self, x: i64, y_start: i64) -> Option<HSegment> {
        let (owner, y, x_lo, x_hi) = self.tree.first_hit(x, y_start)?;
        Some(HSegment {
            owner,
            y,
            x_lo,
            x_hi,
        })
    }
}

/// The set S_V of vertical segments of undominated vertices, queried by
/// rightward horizontal rays.
pub struct VerticalSegments {
    tree: StabbingTree,
}

impl VerticalSegments {
    /// `y_universe` must contain every segment endpoint and every query
    /// y-coordinate ever used.
    pub fn new(y_universe: impl IntoIterator<Item = i64>) -> Self {
        VerticalSegments {
            tree: StabbingTree::new(y_universe, std::iter::empty()).expect("no duplicates"),
        }
    }

    /// Bulk construction; much cheaper than repeated [`insert`] calls
    /// when the segment set is known up front.
    ///
    /// [`insert`]: VerticalSegments::insert
    pub fn with_segments(
        y_universe: impl IntoIterator<Item = i64>,
        segments: impl IntoIterator<Item = VSegment>,
    ) -> Result<Self, RayShootError> {
        Ok(VerticalSegments {
            tree: StabbingTree::new(
                y_universe,
                segments.into_iter().map(|s| (s.owner, s.x, s.y_lo, s.y_hi)),
            )?,
        })
    }

    pub fn insert(&mut self, seg: VSegment) -> Result<(), RayShootError> {
        debug_assert!(seg.y_lo <= seg.y_hi);
        self.tree.insert(seg.owner, seg.x, seg.y_lo, seg.y_hi)
    }

    pub fn delete(&mut self, owner: VertexId) -> Result<VSegment, RayShootError> {
        let (x, y_lo, y_hi) = self.tree.delete(owner)?;
        Ok(VSegment {
            owner,
            x,
            y_lo,
            y_hi,
        })
    }

    pub fn contains(&self, owner: VertexId) -> bool {
        self.tree.get(owner).is_some()
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.len() == 0
    }

    /// First live segment hit by a rightward ray from `(x_start, y)`.
    pub fn shoot_right(&self, y: i64, x_start: i64) -> Option<VSegment> {
        let (owner, x, y_lo, y_hi) = self.tree.first_hit(y, x_start)?;
        Some(VSegment {
            owner,
            x,
            y_lo,
            y_hi,
        })
    }
}
