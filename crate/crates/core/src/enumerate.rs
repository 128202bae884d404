//! Exhaustive enumeration of codewords up to scalar.
//!
//! Messages are coefficient vectors over a K-element basis whose first
//! nonzero coefficient is 1, i.e. canonical representatives of the
//! (q^K-1)/(q-1) one-dimensional subspaces of the message space. They are
//! walked in pivot-block order (pivot 0 block first, suffix digits as a
//! base-q odometer with the last digit fastest), which makes the global
//! index of every message invertible.
//!
//! The walk is incremental: one odometer step changes digit v to v+1 at one
//! position, which adds a precomputed (elem(v+1)-elem(v))-scaled row to the
//! running codeword. The innermost digit is not walked at all: a block of q
//! messages sharing a prefix is resolved in a single pass over the codeword
//! positions, because the zero set of prefix + elem(v)*row is read off a
//! solve table per position. Amortized cost is about n/q operations per
//! message.
//!
//! Workers fold disjoint chunks (aligned to q-blocks) and merge with
//! commutative operations, so tallies and witnesses never depend on the
//! partition or the thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Default enumeration budget: 2^33 messages (the largest desk-scale census
/// is about 7.7e9 forms).
pub const DEFAULT_BUDGET: u64 = 1 << 33;

/// Knobs shared by every enumeration entry point.
#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Maximum number of messages an exhaustive walk may visit.
    pub budget: u64,
    /// Worker threads; 0 means the global rayon default.
    pub workers: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { budget: DEFAULT_BUDGET, workers: 0 }
    }
}

/// Receives zero counts during a walk. Implementations must merge
/// commutatively so chunk order cannot leak into results.
pub(crate) trait Visitor: Send {
    /// A full block of q consecutive messages; `zeros[v]` belongs to global
    /// index `first_idx + v`.
    fn on_block(&mut self, first_idx: u64, zeros: &[u32]);
    /// A lone message (the last pivot block has size 1).
    fn on_single(&mut self, idx: u64, zeros: u32);
    fn merge(&mut self, other: Self);
}

/// Histogram of zero counts plus the smallest message index attaining each.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    /// counts[z] = number of canonical messages with exactly z zeros.
    pub counts: Vec<u64>,
    /// first_idx[z] = least global index attaining z zeros (MAX if none).
    pub first_idx: Vec<u64>,
}

impl Tally {
    pub fn new(n: usize) -> Tally {
        Tally { counts: vec![0; n + 1], first_idx: vec![u64::MAX; n + 1] }
    }
}

impl Visitor for Tally {
    fn on_block(&mut self, first_idx: u64, zeros: &[u32]) {
        for (v, &z) in zeros.iter().enumerate() {
            let z = z as usize;
            self.counts[z] += 1;
            let idx = first_idx + v as u64;
            if idx < self.first_idx[z] {
                self.first_idx[z] = idx;
            }
        }
    }

    fn on_single(&mut self, idx: u64, zeros: u32) {
        let z = zeros as usize;
        self.counts[z] += 1;
        if idx < self.first_idx[z] {
            self.first_idx[z] = idx;
        }
    }

    fn merge(&mut self, other: Self) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        for (a, b) in self.first_idx.iter_mut().zip(other.first_idx) {
            *a = (*a).min(b);
        }
    }
}

/// Collects the indices of every message with exactly `target` zeros.
#[derive(Debug, Clone)]
pub(crate) struct CollectExact {
    pub target: u32,
    pub indices: Vec<u64>,
}

impl CollectExact {
    pub fn new(target: u32) -> CollectExact {
        CollectExact { target, indices: Vec::new() }
    }
}

impl Visitor for CollectExact {
    fn on_block(&mut self, first_idx: u64, zeros: &[u32]) {
        for (v, &z) in zeros.iter().enumerate() {
            if z == self.target {
                self.indices.push(first_idx + v as u64);
            }
        }
    }

    fn on_single(&mut self, idx: u64, zeros: u32) {
        if zeros == self.target {
            self.indices.push(idx);
        }
    }

    fn merge(&mut self, other: Self) {
        self.indices.extend(other.indices);
    }
}

/// Evaluation rows plus the precomputed tables driving the walk.
pub(crate) struct Enumerator {
    field: Field,
    /// rows[j][i]: basis element j evaluated at point i, as encodings.
    rows: Vec<Vec<u16>>,
    n: usize,
    k: usize,
    q: usize,
    /// Global start index of each pivot block; k+1 entries, last = total.
    block_starts: Vec<u128>,
    /// delta[j][v]: rows[j] scaled by elem(v+1)-elem(v), the wrap delta at
    /// v = q-1. Adding it advances digit j from v without a rescan.
    delta: Vec<Vec<Vec<u16>>>,
    /// solve[r*q + a] = the digit v with a + elem(v)*r = 0, for r != 0.
    /// Dense only for q <= 1024; larger fields fall back to field ops.
    solve: Vec<u16>,
}

impl Enumerator {
    pub fn new(field: Field, rows: Vec<Vec<u16>>) -> Result<Enumerator> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Malformed("enumeration needs at least one basis row".into()));
        }
        let n = rows[0].len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: r.len() });
            }
        }
        let q = field.q() as usize;

        let mut block_starts = Vec::with_capacity(k + 1);
        let mut acc: u128 = 0;
        for p in 0..k {
            block_starts.push(acc);
            acc += (q as u128).pow((k - 1 - p) as u32);
        }
        block_starts.push(acc);

        // per-digit step deltas; encodings double as element values, so the
        // digit step v -> v+1 adds (elem(v+1) - elem(v)) * row
        let mut delta = Vec::with_capacity(k);
        for row in &rows {
            let mut per_v = Vec::with_capacity(q);
            for v in 0..q {
                let cur = FieldElement::raw(v as u16);
                let next = FieldElement::raw(((v + 1) % q) as u16);
                let d = field.sub(next, cur);
                per_v.push(row.iter().map(|&r| field.mul(d, FieldElement::raw(r)).value()).collect());
            }
            delta.push(per_v);
        }

        let solve = if q <= 1024 {
            let mut t = vec![0u16; q * q];
            for r in 1..q {
                let inv = field.inv(FieldElement::raw(r as u16)).expect("r != 0");
                for a in 0..q {
                    let v = field.mul(field.neg(FieldElement::raw(a as u16)), inv);
                    t[r * q + a] = v.value();
                }
            }
            t
        } else {
            Vec::new()
        };

        Ok(Enumerator { field, rows, n, k, q, block_starts, delta, solve })
    }

    /// Number of canonical messages, (q^K - 1)/(q - 1).
    pub fn total(&self) -> u128 {
        self.block_starts[self.k]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical message at a global index. Inverse of the walk order.
    pub fn message_at(&self, idx: u128) -> Vec<u16> {
        assert!(idx < self.total(), "message index out of range");
        let pivot = match self.block_starts.binary_search(&idx) {
            Ok(p) if p < self.k => p,
            Ok(p) => p - 1,
            Err(p) => p - 1,
        };
        let mut off = idx - self.block_starts[pivot];
        let mut msg = vec![0u16; self.k];
        msg[pivot] = 1;
        for t in (pivot + 1..self.k).rev() {
            msg[t] = (off % self.q as u128) as u16;
            off /= self.q as u128;
        }
        msg
    }

    /// Codeword of an arbitrary message (not necessarily canonical).
    pub fn combine(&self, msg: &[u16]) -> Vec<u16> {
        assert_eq!(msg.len(), self.k);
        let mut acc = vec![0u16; self.n];
        for (j, &c) in msg.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = FieldElement::raw(c);
            for (a, &r) in acc.iter_mut().zip(&self.rows[j]) {
                *a = self
                    .field
                    .add(FieldElement::raw(*a), self.field.mul(c, FieldElement::raw(r)))
                    .value();
            }
        }
        acc
    }

    pub fn zeros_of_message(&self, msg: &[u16]) -> u32 {
        self.combine(msg).iter().filter(|&&x| x == 0).count() as u32
    }

    /// Walk every canonical message, feeding a per-worker visitor built by
    /// `make`, and return the merged result.
    pub fn run<V: Visitor>(&self, opts: &EnumOptions, make: impl Fn() -> V + Sync) -> Result<V> {
        if self.total() > opts.budget as u128 {
            return Err(Error::BudgetExceeded { required: self.total(), budget: opts.budget });
        }
        self.run_chunked(opts, 1 << 16, make)
    }

    /// Same as `run` but with an explicit chunk size hint (tests use tiny
    /// chunks to exercise partition independence). No budget check.
    pub fn run_chunked<V: Visitor>(
        &self,
        opts: &EnumOptions,
        chunk_hint: u64,
        make: impl Fn() -> V + Sync,
    ) -> Result<V> {
        let chunks = self.chunks(chunk_hint);
        let work = || {
            chunks
                .par_iter()
                .fold(&make, |mut v, &(pivot, s, e)| {
                    self.walk_chunk(pivot, s, e, &mut v);
                    v
                })
                .reduce(&make, |mut a, b| {
                    a.merge(b);
                    a
                })
        };
        if opts.workers > 0 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.workers)
                .build()
                .map_err(|e| Error::Malformed(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        } else {
            Ok(work())
        }
    }

    /// Chunk descriptors (pivot, start offset, end offset), q-block aligned.
    fn chunks(&self, chunk_hint: u64) -> Vec<(usize, u64, u64)> {
        let q = self.q as u64;
        let chunk = (chunk_hint.max(q) / q) * q;
        let mut out = Vec::new();
        for p in 0..self.k {
            let size = (self.block_starts[p + 1] - self.block_starts[p]) as u64;
            if size == 1 {
                out.push((p, 0, 1));
                continue;
            }
            let mut s = 0;
            while s < size {
                let e = (s + chunk).min(size);
                out.push((p, s, e));
                s = e;
            }
        }
        out
    }

    fn walk_chunk<V: Visitor>(&self, pivot: usize, start: u64, end: u64, visitor: &mut V) {
        let q = self.q;
        let n = self.n;
        let suffix_len = self.k - 1 - pivot;
        let block_base = self.block_starts[pivot] as u64;

        if suffix_len == 0 {
            let zeros = self.rows[pivot].iter().filter(|&&x| x == 0).count() as u32;
            visitor.on_single(block_base, zeros);
            return;
        }
        debug_assert_eq!(start % q as u64, 0);
        debug_assert_eq!(end % q as u64, 0);

        // suffix digits, most significant first; the final digit stays 0 in
        // the accumulator and is resolved blockwise
        let mut digits = vec![0u16; suffix_len];
        let mut off = start;
        for t in (0..suffix_len).rev() {
            digits[t] = (off % q as u64) as u16;
            off /= q as u64;
        }
        let mut acc: Vec<u16> = self.rows[pivot].clone();
        for t in 0..suffix_len - 1 {
            let d = digits[t];
            if d != 0 {
                let c = FieldElement::raw(d);
                let row = &self.rows[pivot + 1 + t];
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a = self
                        .field
                        .add(FieldElement::raw(*a), self.field.mul(c, FieldElement::raw(r)))
                        .value();
                }
            }
        }

        let last_row = &self.rows[self.k - 1];
        let add_t = self.field.add_table();
        let dense = self.field.has_dense_tables();
        let mut cnt = vec![0u32; q];
        let mut off = start;
        loop {
            // resolve the q messages sharing this prefix in one scan
            cnt.fill(0);
            let mut blanket = 0u32;
            if !self.solve.is_empty() {
                for i in 0..n {
                    let r = last_row[i] as usize;
                    let a = acc[i] as usize;
                    if r == 0 {
                        blanket += (a == 0) as u32;
                    } else {
                        cnt[self.solve[r * q + a] as usize] += 1;
                    }
                }
            } else {
                for i in 0..n {
                    let r = last_row[i];
                    let a = acc[i];
                    if r == 0 {
                        blanket += (a == 0) as u32;
                    } else {
                        let inv = self.field.inv(FieldElement::raw(r)).expect("r != 0");
                        let v = self.field.mul(self.field.neg(FieldElement::raw(a)), inv);
                        cnt[v.value() as usize] += 1;
                    }
                }
            }
            if blanket > 0 {
                for c in cnt.iter_mut() {
                    *c += blanket;
                }
            }
            visitor.on_block(block_base + off, &cnt);

            off += q as u64;
            if off >= end {
                break;
            }
            // odometer over the non-final digits, last fastest
            let mut t = suffix_len - 1;
            loop {
                t -= 1;
                let d = digits[t] as usize;
                let drow = &self.delta[pivot + 1 + t][d];
                if dense {
                    for (a, &dd) in acc.iter_mut().zip(drow) {
                        *a = add_t[*a as usize * q + dd as usize];
                    }
                } else {
                    for (a, &dd) in acc.iter_mut().zip(drow) {
                        *a = self.field.add(FieldElement::raw(*a), FieldElement::raw(dd)).value();
                    }
                }
                if d + 1 < q {
                    digits[t] = d as u16 + 1;
                    break;
                }
                digits[t] = 0;
                debug_assert!(t > 0, "odometer overflow inside a chunk");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::projective_points;
    use crate::gf::make_field;
    use crate::poly::{monomial_basis, zero_count, Form, Space};

    /// Evaluation rows of the degree-d homogeneous basis over P^m.
    fn prm_rows(field: &Field, d: u32, m: u32) -> Vec<Vec<u16>> {
        let pts = projective_points(field, m);
        monomial_basis(m as usize + 1, d, true)
            .iter()
            .map(|mono| pts.iter().map(|p| mono.eval(field, p.coords()).value()).collect())
            .collect()
    }

    #[test]
    fn total_counts_canonical_messages() {
        let field = make_field(3, 1).unwrap();
        let e = Enumerator::new(field, prm_rows(&make_field(3, 1).unwrap(), 2, 2)).unwrap();
        // K = 6, (3^6 - 1)/2 = 364
        assert_eq!(e.total(), 364);
    }

    #[test]
    fn message_at_inverts_the_walk() {
        let field = make_field(3, 1).unwrap();
        let e = Enumerator::new(field.clone(), prm_rows(&field, 2, 2)).unwrap();

        struct Record(Vec<(u64, u32)>);
        impl Visitor for Record {
            fn on_block(&mut self, first: u64, zeros: &[u32]) {
                for (v, &z) in zeros.iter().enumerate() {
                    self.0.push((first + v as u64, z));
                }
            }
            fn on_single(&mut self, idx: u64, zeros: u32) {
                self.0.push((idx, zeros));
            }
            fn merge(&mut self, other: Self) {
                self.0.extend(other.0);
            }
        }

        let mut rec = e
            .run(&EnumOptions::default(), || Record(Vec::new()))
            .unwrap();
        rec.0.sort();
        assert_eq!(rec.0.len(), 364);
        // indices are exactly 0..total and zeros match direct evaluation
        for (want, &(idx, zeros)) in rec.0.iter().enumerate() {
            assert_eq!(want as u64, idx);
            let msg = e.message_at(idx as u128);
            // canonical: first nonzero coefficient is 1
            let first = msg.iter().find(|&&c| c != 0).copied();
            assert_eq!(first, Some(1));
            assert_eq!(e.zeros_of_message(&msg), zeros);
        }
    }

    #[test]
    fn zeros_agree_with_symbolic_zero_count() {
        // ties the incremental engine to the polynomial oracle
        let field = make_field(3, 1).unwrap();
        let e = Enumerator::new(field.clone(), prm_rows(&field, 2, 2)).unwrap();
        for idx in 0..e.total() {
            let msg = e.message_at(idx);
            let coeffs = msg.iter().map(|&v| FieldElement::raw(v)).collect();
            let f = Form::new(field.clone(), 3, 2, true, coeffs).unwrap();
            assert_eq!(
                e.zeros_of_message(&msg) as u64,
                zero_count(&f, Space::Projective).unwrap(),
                "message {idx}"
            );
        }
    }

    #[test]
    fn tally_is_partition_independent() {
        let field = make_field(2, 2).unwrap();
        let e = Enumerator::new(field.clone(), prm_rows(&field, 2, 2)).unwrap();
        let n = e.n();
        let base = e
            .run_chunked(&EnumOptions { workers: 1, ..Default::default() }, u64::MAX, || Tally::new(n))
            .unwrap();
        for (workers, chunk) in [(1, 4), (2, 4), (2, 64), (3, 8)] {
            let t = e
                .run_chunked(
                    &EnumOptions { workers, ..Default::default() },
                    chunk,
                    || Tally::new(n),
                )
                .unwrap();
            assert_eq!(t.counts, base.counts);
            assert_eq!(t.first_idx, base.first_idx);
        }
    }

    #[test]
    fn collect_exact_matches_tally() {
        let field = make_field(3, 1).unwrap();
        let e = Enumerator::new(field.clone(), prm_rows(&field, 3, 2)).unwrap();
        let n = e.n();
        let tally = e.run(&EnumOptions::default(), || Tally::new(n)).unwrap();
        let max_zeros = (0..=n).rev().find(|&z| tally.counts[z] > 0).unwrap();
        let mut got = e
            .run(&EnumOptions::default(), || CollectExact::new(max_zeros as u32))
            .unwrap();
        got.indices.sort();
        assert_eq!(got.indices.len() as u64, tally.counts[max_zeros]);
        assert_eq!(got.indices.first().copied(), Some(tally.first_idx[max_zeros]));
        for &idx in &got.indices {
            assert_eq!(e.zeros_of_message(&e.message_at(idx as u128)), max_zeros as u32);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let field = make_field(3, 1).unwrap();
        let e = Enumerator::new(field.clone(), prm_rows(&field, 2, 2)).unwrap();
        let opts = EnumOptions { budget: 100, workers: 0 };
        let err = e.run(&opts, || Tally::new(13)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { required: 364, budget: 100 }));
    }

    #[test]
    fn single_basis_row() {
        let field = make_field(5, 1).unwrap();
        let e = Enumerator::new(field.clone(), vec![vec![0, 1, 2, 0, 3]]).unwrap();
        assert_eq!(e.total(), 1);
        let t = e.run(&EnumOptions::default(), || Tally::new(5)).unwrap();
        assert_eq!(t.counts[2], 1);
        assert_eq!(t.first_idx[2], 0);
    }
}
