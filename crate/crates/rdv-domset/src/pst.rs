//! Priority search tree: (value, weight) tuples under insert, delete and
//! range-maximum queries in O(log n).
//!
//! Implemented as a balanced structure keyed by value with a max-weight
//! augmentation per subtree; only the query interface matters to the
//! solver. At most one live entry per payload id.
//!
//! Two backings share the interface. The default is a treap whose nodes
//! live in a flat arena with index links (reused through a free list),
//! supporting arbitrary values. When the value universe is known up
//! front — the solver knows every vertical-segment column at solve
//! start — [`PrioritySearchTree::with_universe`] pre-sizes a flat
//! array tree over it instead, trading generality (live values must be
//! distinct and in the universe) for contiguous memory.

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::VertexId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PstError {
    #[error("entry for vertex {0} already stored")]
    DuplicateId(VertexId),
    #[error("no entry for vertex {0}")]
    AbsentId(VertexId),
    #[error("value {0} not in the declared universe")]
    OutsideUniverse(i64),
    #[error("value {0} already occupied")]
    DuplicateValue(i64),
}

/// A stored tuple: `value` is the x-coordinate of the vertex's vertical
/// segment, `weight` its rank in bottom-up order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PstEntry {
    pub value: i64,
    pub weight: u32,
    pub payload: VertexId,
}

impl PstEntry {
    /// Ordering used for "maximum": weight first, ties toward larger
    /// value, then larger payload. Total, hence deterministic.
    fn rank_key(&self) -> (u32, i64, VertexId) {
        (self.weight, self.value, self.payload)
    }
}

fn better(a: Option<PstEntry>, b: Option<PstEntry>) -> Option<PstEntry> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.rank_key() >= y.rank_key() { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

const NIL: u32 = u32::MAX;

struct Node {
    entry: PstEntry,
    prio: u64,
    /// Best entry in this subtree.
    best: PstEntry,
    left: u32,
    right: u32,
}

impl Node {
    fn key(&self) -> (i64, VertexId) {
        (self.entry.value, self.entry.payload)
    }
}

/// Arena treap keyed by (value, payload), heap-ordered on random
/// priorities, augmented with the best entry per subtree.
struct Treap {
    nodes: Vec<Node>,
    free: Vec<u32>,
    root: u32,
    rng: u64,
}

/// Iterative max segment tree over the sorted value universe; leaves at
/// `[size, 2 * size)`. Entries hold `weight + 1` with zero marking
/// empty; equal weights resolve to the larger value (the right child on
/// a tie), which matches `rank_key` because live values are distinct, so
/// ties cannot reach the payload. Values and payloads sit in side arrays
/// per slot.
struct Flat {
    values: Vec<i64>,
    /// Cumulative rank table for dense universes: `rank[d]` counts the
    /// values below `values[0] + d`, giving O(1) slots and range
    /// boundaries. Empty when the universe is sparse (then slots
    /// binary-search).
    rank: Vec<u32>,
    tree: Vec<u32>,
    payload: Vec<VertexId>,
}

const SLOT_MASK: u64 = u32::MAX as u64;

enum Backing {
    Treap { t: Treap, live: LiveIds<i64> },
    Flat { f: Flat, live: LiveIds<u32> },
}

/// Live key per payload id, for deletion by id: direct slots (with a
/// presence bitmap) for ids below the pre-sized universe length, a hash
/// map for everything else. The treap stores the entry value, the flat
/// backing its slot, so a delete goes straight to the leaf.
struct LiveIds<K> {
    vals: Vec<K>,
    present: Vec<u64>,
    dense_len: usize,
    spill: FxHashMap<VertexId, K>,
}

impl<K: Copy + Default> LiveIds<K> {
    fn new(dense: usize) -> Self {
        LiveIds {
            vals: vec![K::default(); dense],
            present: vec![0; dense.div_ceil(64)],
            dense_len: 0,
            spill: FxHashMap::default(),
        }
    }

    fn get(&self, id: VertexId) -> Option<K> {
        let at = id as usize;
        if at < self.vals.len() {
            return (self.present[at / 64] >> (at % 64) & 1 == 1).then(|| self.vals[at]);
        }
        self.spill.get(&id).copied()
    }

    fn insert(&mut self, id: VertexId, key: K) {
        let at = id as usize;
        if at < self.vals.len() {
            debug_assert!(self.present[at / 64] >> (at % 64) & 1 == 0);
            self.vals[at] = key;
            self.present[at / 64] |= 1 << (at % 64);
            self.dense_len += 1;
        } else {
            self.spill.insert(id, key);
        }
    }

    fn remove(&mut self, id: VertexId) {
        let at = id as usize;
        if at < self.vals.len() {
            debug_assert!(self.present[at / 64] >> (at % 64) & 1 == 1);
            self.present[at / 64] &= !(1 << (at % 64));
            self.dense_len -= 1;
        } else {
            self.spill.remove(&id);
        }
    }

    fn len(&self) -> usize {
        self.dense_len + self.spill.len()
    }
}

pub struct PrioritySearchTree {
    backing: Backing,
}

impl Default for PrioritySearchTree {
    fn default() -> Self {
        Self::new()
    }
}

impl PrioritySearchTree {
    pub fn new() -> Self {
        PrioritySearchTree {
            backing: Backing::Treap {
                t: Treap {
                    nodes: Vec::new(),
                    free: Vec::new(),
                    root: NIL,
                    rng: 0x9E37_79B9_7F4A_7C15,
                },
                live: LiveIds::new(0),
            },
        }
    }

    /// Pre-sized over a fixed value universe. Every inserted value must
    /// come from the universe and be distinct among live entries (the
    /// solver's normalized instances guarantee both).
    pub fn with_universe(universe: impl IntoIterator<Item = i64>) -> Self {
        let mut values: Vec<i64> = universe.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        assert!(
            (values.len() as u64) <= SLOT_MASK,
            "universe exceeds the packed slot width"
        );
        let mut rank = Vec::new();
        if let (Some(&min), Some(&max)) = (values.first(), values.last()) {
            if let Some(range) = max.checked_sub(min).and_then(|r| r.checked_add(1)) {
                if (range as u128) <= 4 * values.len() as u128 {
                    rank = vec![0u32; range as usize + 1];
                    for &v in &values {
                        rank[(v - min) as usize + 1] = 1;
                    }
                    for d in 1..rank.len() {
                        rank[d] += rank[d - 1];
                    }
                }
            }
        }
        let tree = vec![0; 2 * values.len()];
        let payload = vec![0; values.len()];
        let live = LiveIds::new(values.len());
        PrioritySearchTree {
            backing: Backing::Flat {
                f: Flat {
                    values,
                    rank,
                    tree,
                    payload,
                },
                live,
            },
        }
    }

    pub fn len(&self) -> usize {
        match &self.backing {
            Backing::Treap { live, .. } => live.len(),
            Backing::Flat { live, .. } => live.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, id: VertexId) -> bool {
        match &self.backing {
            Backing::Treap { live, .. } => live.get(id).is_some(),
            Backing::Flat { live, .. } => live.get(id).is_some(),
        }
    }

    pub fn insert(&mut self, entry: PstEntry) -> Result<(), PstError> {
        match &mut self.backing {
            Backing::Treap { t, live } => {
                if live.get(entry.payload).is_some() {
                    return Err(PstError::DuplicateId(entry.payload));
                }
                t.insert(entry);
                live.insert(entry.payload, entry.value);
            }
            Backing::Flat { f, live } => {
                if live.get(entry.payload).is_some() {
                    return Err(PstError::DuplicateId(entry.payload));
                }
                let slot = f.slot(entry.value)?;
                f.insert_at(slot, entry)?;
                live.insert(entry.payload, slot as u32);
            }
        }
        Ok(())
    }

    pub fn delete(&mut self, id: VertexId) -> Result<PstEntry, PstError> {
        let removed = match &mut self.backing {
            Backing::Treap { t, live } => {
                let value = live.get(id).ok_or(PstError::AbsentId(id))?;
                let removed = t.remove_root(value, id);
                live.remove(id);
                removed
            }
            Backing::Flat { f, live } => {
                let slot = live.get(id).ok_or(PstError::AbsentId(id))?;
                let removed = f.remove_at(slot as usize);
                live.remove(id);
                removed
            }
        };
        Ok(removed.expect("live map and backing agree"))
    }

    /// Among entries with value in `[lo, hi]`, the one maximizing weight
    /// (ties toward larger value); `None` if the range is empty.
    pub fn range_max(&self, lo: i64, hi: i64) -> Option<PstEntry> {
        assert!(lo <= hi, "inverted range [{lo}, {hi}]");
        match &self.backing {
            Backing::Treap { t, .. } => t.query(t.root, lo, hi),
            Backing::Flat { f, .. } => f.query(lo, hi),
        }
    }

    #[cfg(test)]
    fn check_heap_and_order(&self) {
        let t = match &self.backing {
            Backing::Treap { t, .. } => t,
            Backing::Flat { f, .. } => {
                for k in 1..f.values.len() {
                    assert_eq!(
                        f.tree[2 * k].max(f.tree[2 * k + 1]),
                        f.tree[k],
                        "max augmentation stale"
                    );
                }
                return;
            }
        };
        fn walk(t: &Treap, i: u32, lo: (i64, VertexId), hi: (i64, VertexId), prio_cap: u64) {
            if i == NIL {
                return;
            }
            let n = &t.nodes[i as usize];
            assert!(n.key() > lo && n.key() < hi, "search order violated");
            assert!(n.prio <= prio_cap, "treap heap order violated");
            let mut best = n.entry;
            for side in [n.left, n.right] {
                if side != NIL {
                    let b = t.nodes[side as usize].best;
                    if b.rank_key() > best.rank_key() {
                        best = b;
                    }
                }
            }
            assert_eq!(best, n.best, "max augmentation stale");
            walk(t, n.left, lo, n.key(), n.prio);
            walk(t, n.right, n.key(), hi, n.prio);
        }
        walk(
            t,
            t.root,
            (i64::MIN, 0),
            (i64::MAX, VertexId::MAX),
            u64::MAX,
        );
    }
}

impl Flat {
    fn slot(&self, value: i64) -> Result<usize, PstError> {
        if self.rank.is_empty() {
            return self
                .values
                .binary_search(&value)
                .map_err(|_| PstError::OutsideUniverse(value));
        }
        match usize::try_from(value - self.values[0]).ok() {
            // The value is in the universe exactly when the count below
            // it steps up at its offset.
            Some(d) if d + 1 < self.rank.len() && self.rank[d + 1] > self.rank[d] => {
                Ok(self.rank[d] as usize)
            }
            _ => Err(PstError::OutsideUniverse(value)),
        }
    }

    /// Slot range `[l, r)` of the values in `[lo, hi]`.
    fn bounds(&self, lo: i64, hi: i64) -> (usize, usize) {
        if self.rank.is_empty() {
            return (
                self.values.partition_point(|&v| v < lo),
                self.values.partition_point(|&v| v <= hi),
            );
        }
        let (min, max) = (self.values[0], *self.values.last().unwrap());
        let l = if lo <= min {
            0
        } else if lo > max {
            self.values.len()
        } else {
            self.rank[(lo - min) as usize] as usize
        };
        let r = if hi < min {
            0
        } else if hi >= max {
            self.values.len()
        } else {
            self.rank[(hi - min) as usize + 1] as usize
        };
        (l, r)
    }

    fn insert_at(&mut self, slot: usize, entry: PstEntry) -> Result<(), PstError> {
        let size = self.values.len();
        let mut k = size + slot;
        if self.tree[k] != 0 {
            return Err(PstError::DuplicateValue(entry.value));
        }
        let w = entry
            .weight
            .checked_add(1)
            .expect("weight overflows the pre-sized tree");
        self.tree[k] = w;
        self.payload[slot] = entry.payload;
        // Ancestors only change while the new entry keeps winning.
        while k > 1 {
            k /= 2;
            if self.tree[k] >= w {
                break;
            }
            self.tree[k] = w;
        }
        Ok(())
    }

    fn remove_at(&mut self, slot: usize) -> Option<PstEntry> {
        let size = self.values.len();
        let mut k = size + slot;
        let w = self.tree[k];
        if w == 0 {
            return None;
        }
        let removed = PstEntry {
            value: self.values[slot],
            weight: w - 1,
            payload: self.payload[slot],
        };
        self.tree[k] = 0;
        // Ancestors whose best was not the removed entry are unchanged.
        while k > 1 {
            k /= 2;
            let refreshed = self.tree[2 * k].max(self.tree[2 * k + 1]);
            if refreshed == self.tree[k] {
                break;
            }
            self.tree[k] = refreshed;
        }
        Some(removed)
    }

    fn query(&self, lo: i64, hi: i64) -> Option<PstEntry> {
        let size = self.values.len();
        let (l0, r0) = self.bounds(lo, hi);
        let (mut l, mut r) = (l0 + size, r0 + size);
        // The low-side canonical nodes cover ascending value ranges and
        // every high-side node sits above all of them, so ties prefer
        // later low-side nodes and earlier high-side nodes.
        let (mut lw, mut lk) = (0u32, 0usize);
        let (mut rw, mut rk) = (0u32, 0usize);
        while l < r {
            if l & 1 == 1 {
                if self.tree[l] >= lw {
                    lw = self.tree[l];
                    lk = l;
                }
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                if self.tree[r] > rw {
                    rw = self.tree[r];
                    rk = r;
                }
            }
            l >>= 1;
            r >>= 1;
        }
        let (w, mut k) = if rw >= lw { (rw, rk) } else { (lw, lk) };
        if w == 0 {
            return None;
        }
        // Descend to the winning leaf, right child first so an equal
        // weight resolves to the larger value.
        while k < size {
            k = if self.tree[2 * k + 1] == w {
                2 * k + 1
            } else {
                2 * k
            };
        }
        let slot = k - size;
        Some(PstEntry {
            value: self.values[slot],
            weight: w - 1,
            payload: self.payload[slot],
        })
    }
}

impl Treap {
    fn next_prio(&mut self) -> u64 {
        // splitmix64
        self.rng = self.rng.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.rng;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn key(&self, i: u32) -> (i64, VertexId) {
        self.nodes[i as usize].key()
    }

    fn refresh(&mut self, i: u32) {
        let n = &self.nodes[i as usize];
        let (mut best, left, right) = (n.entry, n.left, n.right);
        for side in [left, right] {
            if side != NIL {
                let b = self.nodes[side as usize].best;
                if b.rank_key() > best.rank_key() {
                    best = b;
                }
            }
        }
        self.nodes[i as usize].best = best;
    }

    fn alloc(&mut self, entry: PstEntry) -> u32 {
        let prio = self.next_prio();
        let node = Node {
            entry,
            prio,
            best: entry,
            left: NIL,
            right: NIL,
        };
        match self.free.pop() {
            Some(i) => {
                self.nodes[i as usize] = node;
                i
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn insert(&mut self, entry: PstEntry) {
        let node = self.alloc(entry);
        let key = self.key(node);
        let (l, r) = self.split(self.root, key);
        let lm = self.merge(l, node);
        self.root = self.merge(lm, r);
    }

    fn remove_root(&mut self, value: i64, id: VertexId) -> Option<PstEntry> {
        let (removed, root) = self.remove(self.root, (value, id));
        self.root = root;
        removed
    }

    fn split(&mut self, t: u32, key: (i64, VertexId)) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        if self.key(t) < key {
            let (l, r) = self.split(self.nodes[t as usize].right, key);
            self.nodes[t as usize].right = l;
            self.refresh(t);
            (t, r)
        } else {
            let (l, r) = self.split(self.nodes[t as usize].left, key);
            self.nodes[t as usize].left = r;
            self.refresh(t);
            (l, t)
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].prio >= self.nodes[b as usize].prio {
            let m = self.merge(self.nodes[a as usize].right, b);
            self.nodes[a as usize].right = m;
            self.refresh(a);
            a
        } else {
            let m = self.merge(a, self.nodes[b as usize].left);
            self.nodes[b as usize].left = m;
            self.refresh(b);
            b
        }
    }

    fn remove(&mut self, t: u32, key: (i64, VertexId)) -> (Option<PstEntry>, u32) {
        if t == NIL {
            return (None, NIL);
        }
        if key == self.key(t) {
            let n = &self.nodes[t as usize];
            let (entry, left, right) = (n.entry, n.left, n.right);
            self.free.push(t);
            (Some(entry), self.merge(left, right))
        } else if key < self.key(t) {
            let (removed, l) = self.remove(self.nodes[t as usize].left, key);
            self.nodes[t as usize].left = l;
            self.refresh(t);
            (removed, t)
        } else {
            let (removed, r) = self.remove(self.nodes[t as usize].right, key);
            self.nodes[t as usize].right = r;
            self.refresh(t);
            (removed, t)
        }
    }

    fn query(&self, t: u32, lo: i64, hi: i64) -> Option<PstEntry> {
        if t == NIL {
            return None;
        }
        let n = &self.nodes[t as usize];
        if n.entry.value < lo {
            self.query(n.right, lo, hi)
        } else if n.entry.value > hi {
            self.query(n.left, lo, hi)
        } else {
            let left = self.query_ge(n.left, lo);
            let right = self.query_le(n.right, hi);
            better(Some(n.entry), better(left, right))
        }
    }

    /// Best entry with value >= lo, in a subtree already known to be <= hi.
    fn query_ge(&self, t: u32, lo: i64) -> Option<PstEntry> {
        if t == NIL {
            return None;
        }
        let n = &self.nodes[t as usize];
        if n.entry.value < lo {
            self.query_ge(n.right, lo)
        } else {
            let right = (n.right != NIL).then(|| self.nodes[n.right as usize].best);
            better(Some(n.entry), better(right, self.query_ge(n.left, lo)))
        }
    }

    /// Best entry with value <= hi, in a subtree already known to be >= lo.
    fn query_le(&self, t: u32, hi: i64) -> Option<PstEntry> {
        if t == NIL {
            return None;
        }
        let n = &self.nodes[t as usize];
        if n.entry.value > hi {
            self.query_le(n.left, hi)
        } else {
            let left = (n.left != NIL).then(|| self.nodes[n.left as usize].best);
            better(Some(n.entry), better(left, self.query_le(n.right, hi)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::SplitMix64;

    #[test]
    fn empty_range_max_is_null() {
        let pst = PrioritySearchTree::new();
        assert_eq!(pst.range_max(i64::MIN, i64::MAX), None);
    }

    #[test]
    fn single_entry_found_over_full_range() {
        let mut pst = PrioritySearchTree::new();
        let e = PstEntry {
            value: 7,
            weight: 3,
            payload: 0,
        };
        pst.insert(e).unwrap();
        assert_eq!(pst.range_max(i64::MIN, i64::MAX), Some(e));
        assert_eq!(pst.range_max(8, 9), None);
    }

    #[test]
    fn duplicate_and_absent_ids_error() {
        let mut pst = PrioritySearchTree::new();
        let e = PstEntry {
            value: 1,
            weight: 1,
            payload: 4,
        };
        pst.insert(e).unwrap();
        assert_eq!(pst.insert(e), Err(PstError::DuplicateId(4)));
        assert_eq!(pst.delete(9), Err(PstError::AbsentId(9)));
        assert_eq!(pst.delete(4), Ok(e));
        assert!(pst.is_empty());
    }

    #[test]
    fn figure_walkthrough_range() {
        // Entries mimicking the first solver iteration on the worked
        // example: values are bottom-leaf columns, weights are ranks.
        let mut pst = PrioritySearchTree::new();
        for (value, weight) in [(1, 1), (3, 2), (4, 3), (2, 4), (5, 5), (6, 6)] {
            pst.insert(PstEntry {
                value,
                weight,
                payload: weight,
            })
            .unwrap();
        }
        assert_eq!(pst.len(), 6);
        // The x-range [2,4] captures the verticals at 2, 3, 4; the rank-4
        // vertex wins.
        let hit = pst.range_max(2, 4).unwrap();
        assert_eq!(hit.weight, 4);
        assert_eq!(hit.value, 2);
    }

    #[test]
    fn ties_break_toward_larger_value() {
        let mut pst = PrioritySearchTree::new();
        for (value, payload) in [(2, 0), (5, 1), (9, 2)] {
            pst.insert(PstEntry {
                value,
                weight: 7,
                payload,
            })
            .unwrap();
        }
        assert_eq!(pst.range_max(0, 6).unwrap().value, 5);
        assert_eq!(pst.range_max(0, 100).unwrap().value, 9);
    }

    /// 10,000 random scripts against a linear-scan oracle.
    #[test]
    fn random_scripts_match_linear_scan() {
        let mut rng = SplitMix64::new(0xD0B9);
        for script in 0..10_000u64 {
            let mut pst = PrioritySearchTree::new();
            let mut live: Vec<PstEntry> = Vec::new();
            let mut next_id = 0 as VertexId;
            let ops = 10 + (rng.next_u64() % 55) as usize;
            for _ in 0..ops {
                match rng.next_u64() % 4 {
                    0 | 1 => {
                        if live.len() < 64 {
                            // Values distinct among live entries.
                            let mut value;
                            loop {
                                value = (rng.next_u64() % 128) as i64;
                                if !live.iter().any(|e| e.value == value) {
                                    break;
                                }
                            }
                            let e = PstEntry {
                                value,
                                weight: (rng.next_u64() % 1000) as u32,
                                payload: next_id,
                            };
                            next_id += 1;
                            pst.insert(e).unwrap();
                            live.push(e);
                        }
                    }
                    2 => {
                        if !live.is_empty() {
                            let k = (rng.next_u64() as usize) % live.len();
                            let e = live.swap_remove(k);
                            assert_eq!(pst.delete(e.payload), Ok(e));
                        }
                    }
                    _ => {
                        let a = (rng.next_u64() % 130) as i64 - 1;
                        let b = (rng.next_u64() % 130) as i64 - 1;
                        let (lo, hi) = (a.min(b), a.max(b));
                        let expect = live
                            .iter()
                            .filter(|e| lo <= e.value && e.value <= hi)
                            .copied()
                            .max_by_key(|e| e.rank_key());
                        assert_eq!(
                            pst.range_max(lo, hi),
                            expect,
                            "script {script} diverged from linear scan"
                        );
                    }
                }
            }
            if script % 1000 == 0 {
                pst.check_heap_and_order();
            }
        }
    }

    #[test]
    fn flat_universe_rejects_foreign_and_duplicate_values() {
        let mut pst = PrioritySearchTree::with_universe([3, 1, 7, 1]);
        let entry = |value, payload| PstEntry {
            value,
            weight: 1,
            payload,
        };
        assert_eq!(pst.insert(entry(5, 0)), Err(PstError::OutsideUniverse(5)));
        pst.insert(entry(7, 0)).unwrap();
        assert_eq!(pst.insert(entry(7, 1)), Err(PstError::DuplicateValue(7)));
        assert_eq!(pst.delete(0), Ok(entry(7, 0)));
        pst.insert(entry(7, 1)).unwrap();
        assert_eq!(pst.range_max(2, 9), Some(entry(7, 1)));
    }

    /// The pre-sized backing and the treap answer random scripts alike.
    #[test]
    fn flat_backing_matches_treap() {
        let mut rng = SplitMix64::new(0xF1A7);
        for script in 0..2_000u64 {
            let mut flat = PrioritySearchTree::with_universe(0..128);
            let mut treap = PrioritySearchTree::new();
            let mut live: Vec<PstEntry> = Vec::new();
            let mut next_id = 0 as VertexId;
            for _ in 0..48 {
                match rng.next_u64() % 4 {
                    0 | 1 => {
                        if live.len() < 64 {
                            let mut value;
                            loop {
                                value = (rng.next_u64() % 128) as i64;
                                if !live.iter().any(|e| e.value == value) {
                                    break;
                                }
                            }
                            let e = PstEntry {
                                value,
                                weight: (rng.next_u64() % 1000) as u32,
                                payload: next_id,
                            };
                            next_id += 1;
                            flat.insert(e).unwrap();
                            treap.insert(e).unwrap();
                            live.push(e);
                        }
                    }
                    2 => {
                        if !live.is_empty() {
                            let k = (rng.next_u64() as usize) % live.len();
                            let e = live.swap_remove(k);
                            assert_eq!(flat.delete(e.payload), Ok(e));
                            assert_eq!(treap.delete(e.payload), Ok(e));
                        }
                    }
                    _ => {
                        let a = (rng.next_u64() % 130) as i64 - 1;
                        let b = (rng.next_u64() % 130) as i64 - 1;
                        let (lo, hi) = (a.min(b), a.max(b));
                        assert_eq!(
                            flat.range_max(lo, hi),
                            treap.range_max(lo, hi),
                            "script {script}: backings diverged on [{lo}, {hi}]"
                        );
                    }
                }
            }
            if script % 500 == 0 {
                flat.check_heap_and_order();
            }
        }
    }
}
