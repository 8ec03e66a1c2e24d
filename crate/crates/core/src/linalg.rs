//! Matrices over GF(p) and over table-backed extension fields.
//!
//! Two dense representations cover the prime-field algebra: bit-packed words
//! for p = 2 (rank, nesting products and row-space comparisons over lengths
//! up to a few thousand) and byte-per-entry for odd p. A CSR sparse form
//! carries parity checks for decoding. `FieldMat` handles the desk-scale
//! computations over GF(q^l) needed by subfield subcodes and trace codes.

use crate::error::{Error, Result};
use crate::fields::Field;

// ---------------------------------------------------------------------------
// GF(2), bit packed
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> BitMatrix {
        let wpr = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words_per_row(&self) -> usize {
        self.wpr
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.wpr + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.wpr + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.wpr);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn rank(&self) -> usize {
        let mut elim = BitEliminator::new(self.cols);
        for r in 0..self.rows {
            elim.absorb(self.row(r).to_vec());
        }
        elim.rank()
    }

    /// Canonical reduced row echelon form: fully reduced, zero rows dropped,
    /// rows ordered by pivot column. Equal row spaces give equal output.
    pub fn rref(&self) -> BitMatrix {
        let mut elim = BitEliminator::new(self.cols);
        for r in 0..self.rows {
            elim.absorb(self.row(r).to_vec());
        }
        elim.into_rref()
    }

    /// Basis of the right null space {x : self · x = 0}.
    pub fn kernel(&self) -> BitMatrix {
        let rref = self.rref();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        let mut pivots = Vec::new();
        for r in 0..rref.rows {
            let c = rref.row(r).iter().enumerate().find_map(|(wi, &w)| {
                if w != 0 {
                    Some(wi * 64 + w.trailing_zeros() as usize)
                } else {
                    None
                }
            });
            if let Some(c) = c {
                pivot_of_col[c] = Some(r);
                pivots.push(c);
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| pivot_of_col[*c].is_none()).collect();
        let mut ker = BitMatrix::zero(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            ker.set(i, f, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if rref.get(r, f) {
                    ker.set(i, pc, true);
                }
            }
        }
        ker
    }

    /// True iff self · other^T = 0, i.e. every row pair is orthogonal.
    pub fn orthogonal_to(&self, other: &BitMatrix) -> bool {
        assert_eq!(self.cols, other.cols);
        for r in 0..self.rows {
            let a = self.row(r);
            for s in 0..other.rows {
                let dot: u32 = a
                    .iter()
                    .zip(other.row(s))
                    .map(|(x, y)| (x & y).count_ones())
                    .sum();
                if dot % 2 == 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Incremental Gauss elimination over GF(2); rows are absorbed one at a time
/// so large row streams never need to be materialized.
pub struct BitEliminator {
    cols: usize,
    wpr: usize,
    /// (pivot column, reduced row)
    pivots: Vec<(usize, Vec<u64>)>,
}

impl BitEliminator {
    pub fn new(cols: usize) -> BitEliminator {
        BitEliminator {
            cols,
            wpr: cols.div_ceil(64).max(1),
            pivots: Vec::new(),
        }
    }

    fn leading(row: &[u64]) -> Option<usize> {
        row.iter().enumerate().find_map(|(wi, &w)| {
            if w != 0 {
                Some(wi * 64 + w.trailing_zeros() as usize)
            } else {
                None
            }
        })
    }

    fn reduce(&self, row: &mut Vec<u64>) {
        for (pc, prow) in &self.pivots {
            if row[pc / 64] >> (pc % 64) & 1 == 1 {
                for (w, pw) in row.iter_mut().zip(prow) {
                    *w ^= pw;
                }
            }
        }
    }

    /// Absorb a row; returns true if it extended the span.
    pub fn absorb(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.wpr);
        self.reduce(&mut row);
        match Self::leading(&row) {
            None => false,
            Some(lead) => {
                let pos = self.pivots.partition_point(|(pc, _)| *pc < lead);
                self.pivots.insert(pos, (lead, row));
                true
            }
        }
    }

    pub fn contains(&self, mut row: Vec<u64>) -> bool {
        self.reduce(&mut row);
        Self::leading(&row).is_none()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Finish into a canonical RREF matrix (back-substitution pass).
    pub fn into_rref(self) -> BitMatrix {
        let cols = self.cols;
        let mut rows: Vec<(usize, Vec<u64>)> = self.pivots;
        // Rows are sorted by pivot; clear entries above each pivot.
        for i in (0..rows.len()).rev() {
            let (pc, prow) = rows[i].clone();
            for (_, row) in rows.iter_mut().take(i) {
                if row[pc / 64] >> (pc % 64) & 1 == 1 {
                    for (w, pw) in row.iter_mut().zip(&prow) {
                        *w ^= pw;
                    }
                }
            }
        }
        let mut out = BitMatrix::zero(0, cols);
        for (_, row) in rows {
            out.push_row(&row);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// GF(p), odd p, byte entries
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ByteMat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl ByteMat {
    pub fn zero(p: u32, rows: usize, cols: usize) -> ByteMat {
        ByteMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p as u8;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u8]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn rank(&self) -> usize {
        let mut elim = ByteEliminator::new(self.p, self.cols);
        for r in 0..self.rows {
            elim.absorb(self.row(r).to_vec());
        }
        elim.rank()
    }

    pub fn rref(&self) -> ByteMat {
        let mut elim = ByteEliminator::new(self.p, self.cols);
        for r in 0..self.rows {
            elim.absorb(self.row(r).to_vec());
        }
        elim.into_rref()
    }

    pub fn kernel(&self) -> ByteMat {
        let p = self.p;
        let rref = self.rref();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        let mut pivots = Vec::new();
        for r in 0..rref.rows {
            if let Some(c) = (0..self.cols).find(|&c| rref.get(r, c) != 0) {
                pivot_of_col[c] = Some(r);
                pivots.push(c);
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| pivot_of_col[*c].is_none()).collect();
        let mut ker = ByteMat::zero(p, free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            ker.set(i, f, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = rref.get(r, f);
                if v != 0 {
                    ker.set(i, pc, (p as u8 - v) % p as u8);
                }
            }
        }
        ker
    }

    pub fn orthogonal_to(&self, other: &ByteMat) -> bool {
        assert_eq!(self.cols, other.cols);
        let p = self.p;
        for r in 0..self.rows {
            for s in 0..other.rows {
                let mut acc = 0u32;
                for c in 0..self.cols {
                    acc = (acc + self.get(r, c) as u32 * other.get(s, c) as u32) % p;
                }
                if acc != 0 {
                    return false;
                }
            }
        }
        true
    }
}

pub struct ByteEliminator {
    p: u32,
    cols: usize,
    pivots: Vec<(usize, Vec<u8>)>,
}

impl ByteEliminator {
    pub fn new(p: u32, cols: usize) -> ByteEliminator {
        ByteEliminator {
            p,
            cols,
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, row: &mut [u8]) {
        let p = self.p;
        for (pc, prow) in &self.pivots {
            let f = row[*pc] as u32;
            if f != 0 {
                for (w, pw) in row.iter_mut().zip(prow) {
                    *w = ((*w as u32 + (p - f) * *pw as u32) % p) as u8;
                }
            }
        }
    }

    pub fn absorb(&mut self, mut row: Vec<u8>) -> bool {
        assert_eq!(row.len(), self.cols);
        self.reduce(&mut row);
        match row.iter().position(|&x| x != 0) {
            None => false,
            Some(lead) => {
                // normalize pivot to 1
                let inv = mod_pow(row[lead] as u32, self.p - 2, self.p);
                for w in row.iter_mut() {
                    *w = (*w as u32 * inv % self.p) as u8;
                }
                let pos = self.pivots.partition_point(|(pc, _)| *pc < lead);
                self.pivots.insert(pos, (lead, row));
                true
            }
        }
    }

    pub fn contains(&self, mut row: Vec<u8>) -> bool {
        self.reduce(&mut row);
        row.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn into_rref(self) -> ByteMat {
        let p = self.p;
        let cols = self.cols;
        let mut rows = self.pivots;
        for i in (0..rows.len()).rev() {
            let (pc, prow) = rows[i].clone();
            for (_, row) in rows.iter_mut().take(i) {
                let f = row[pc] as u32;
                if f != 0 {
                    for (w, pw) in row.iter_mut().zip(&prow) {
                        *w = ((*w as u32 + (p - f) * *pw as u32) % p) as u8;
                    }
                }
            }
        }
        let mut out = ByteMat::zero(p, 0, cols);
        for (_, row) in rows {
            out.push_row(&row);
        }
        out
    }
}

fn mod_pow(b: u32, mut e: u32, m: u32) -> u32 {
    let mut acc = 1u64;
    let mut bb = b as u64 % m as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % m as u64;
        }
        bb = bb * bb % m as u64;
        e >>= 1;
    }
    acc as u32
}

// ---------------------------------------------------------------------------
// Unified prime-field matrix
// ---------------------------------------------------------------------------

/// Dense matrix over GF(p), bit packed when p = 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfMat {
    Bits(BitMatrix),
    Bytes(ByteMat),
}

impl GfMat {
    pub fn zero(p: u32, rows: usize, cols: usize) -> GfMat {
        if p == 2 {
            GfMat::Bits(BitMatrix::zero(rows, cols))
        } else {
            GfMat::Bytes(ByteMat::zero(p, rows, cols))
        }
    }

    pub fn p(&self) -> u32 {
        match self {
            GfMat::Bits(_) => 2,
            GfMat::Bytes(m) => m.p(),
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            GfMat::Bits(m) => m.rows(),
            GfMat::Bytes(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            GfMat::Bits(m) => m.cols(),
            GfMat::Bytes(m) => m.cols(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        match self {
            GfMat::Bits(m) => m.get(r, c) as u8,
            GfMat::Bytes(m) => m.get(r, c),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        match self {
            GfMat::Bits(m) => m.set(r, c, v % 2 == 1),
            GfMat::Bytes(m) => m.set(r, c, v),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            GfMat::Bits(m) => m.rank(),
            GfMat::Bytes(m) => m.rank(),
        }
    }

    pub fn rref(&self) -> GfMat {
        match self {
            GfMat::Bits(m) => GfMat::Bits(m.rref()),
            GfMat::Bytes(m) => GfMat::Bytes(m.rref()),
        }
    }

    pub fn kernel(&self) -> GfMat {
        match self {
            GfMat::Bits(m) => GfMat::Bits(m.kernel()),
            GfMat::Bytes(m) => GfMat::Bytes(m.kernel()),
        }
    }

    pub fn orthogonal_to(&self, other: &GfMat) -> Result<bool> {
        match (self, other) {
            (GfMat::Bits(a), GfMat::Bits(b)) => Ok(a.orthogonal_to(b)),
            (GfMat::Bytes(a), GfMat::Bytes(b)) if a.p() == b.p() => Ok(a.orthogonal_to(b)),
            _ => Err(Error::invalid("characteristic mismatch")),
        }
    }

    pub fn row_dense(&self, r: usize) -> Vec<u8> {
        (0..self.cols()).map(|c| self.get(r, c)).collect()
    }
}

// ---------------------------------------------------------------------------
// CSR sparse 0/1-or-valued rows (parity checks for decoding)
// ---------------------------------------------------------------------------

/// Row-compressed sparse matrix over GF(p). `val = None` means all entries 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csr {
    cols: usize,
    indptr: Vec<usize>,
    idx: Vec<u32>,
    val: Option<Vec<u8>>,
}

impl Csr {
    pub fn new(cols: usize) -> Csr {
        Csr {
            cols,
            indptr: vec![0],
            idx: Vec::new(),
            val: None,
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Csr {
        let mut csr = Csr::new(cols);
        for r in rows {
            csr.push_row_binary(r);
        }
        csr
    }

    pub fn push_row_binary(&mut self, cols_of_row: &[u32]) {
        debug_assert!(cols_of_row.iter().all(|&c| (c as usize) < self.cols));
        debug_assert!(self.val.is_none());
        self.idx.extend_from_slice(cols_of_row);
        self.indptr.push(self.idx.len());
    }

    pub fn push_row_valued(&mut self, entries: &[(u32, u8)]) {
        let val = self.val.get_or_insert_with(|| vec![1; self.idx.len()]);
        for &(c, v) in entries {
            debug_assert!((c as usize) < self.cols);
            self.idx.push(c);
            val.push(v);
        }
        self.indptr.push(self.idx.len());
    }

    pub fn rows(&self) -> usize {
        self.indptr.len() - 1
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.idx.len()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.idx[self.indptr[r]..self.indptr[r + 1]]
    }

    pub fn row_entries(&self, r: usize) -> Vec<(u32, u8)> {
        let range = self.indptr[r]..self.indptr[r + 1];
        match &self.val {
            None => self.idx[range].iter().map(|&c| (c, 1)).collect(),
            Some(v) => self.idx[range.clone()]
                .iter()
                .zip(&v[range])
                .map(|(&c, &x)| (c, x))
                .collect(),
        }
    }

    pub fn row_bits(&self, r: usize) -> Vec<u64> {
        let mut w = vec![0u64; self.cols.div_ceil(64).max(1)];
        for &c in self.row(r) {
            w[c as usize / 64] ^= 1 << (c % 64);
        }
        w
    }

    pub fn transpose(&self) -> Csr {
        let rows = self.rows();
        let mut buckets: Vec<Vec<(u32, u8)>> = vec![Vec::new(); self.cols];
        for r in 0..rows {
            for (c, v) in self.row_entries(r) {
                buckets[c as usize].push((r as u32, v));
            }
        }
        let mut out = Csr::new(rows);
        let valued = self.val.is_some();
        for b in buckets {
            if valued {
                out.push_row_valued(&b);
            } else {
                let cols: Vec<u32> = b.into_iter().map(|(c, _)| c).collect();
                out.push_row_binary(&cols);
            }
        }
        out
    }

    pub fn to_dense(&self, p: u32) -> GfMat {
        let mut m = GfMat::zero(p, self.rows(), self.cols);
        for r in 0..self.rows() {
            for (c, v) in self.row_entries(r) {
                m.set(r, c as usize, v);
            }
        }
        m
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for &c in &self.idx {
            w[c as usize] += 1;
        }
        w
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows()).map(|r| self.row(r).len()).collect()
    }
}

// ---------------------------------------------------------------------------
// Dense matrices over an extension field (desk scale)
// ---------------------------------------------------------------------------

/// Dense matrix with entries in a table-backed `Field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMat {
    pub fn zero(rows: usize, cols: usize) -> FieldMat {
        FieldMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> FieldMat {
        let mut m = FieldMat::zero(0, cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            m.data.extend_from_slice(&r);
            m.rows += 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rref(&self, f: &Field) -> FieldMat {
        let mut rows: Vec<Vec<u32>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut next = 0;
        for c in 0..self.cols {
            if let Some(pr) = (next..rows.len()).find(|&r| rows[r][c] != 0) {
                rows.swap(next, pr);
                let inv = f.inv(rows[next][c]);
                for x in rows[next].iter_mut() {
                    *x = f.mul(*x, inv);
                }
                for r in 0..rows.len() {
                    if r != next && rows[r][c] != 0 {
                        let factor = rows[r][c];
                        for j in 0..self.cols {
                            let t = f.mul(factor, rows[next][j]);
                            rows[r][j] = f.sub(rows[r][j], t);
                        }
                    }
                }
                next += 1;
            }
        }
        rows.truncate(next);
        FieldMat::from_rows(rows, self.cols)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rows
    }

    pub fn kernel(&self, f: &Field) -> FieldMat {
        let rref = self.rref(f);
        let mut pivot_cols = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for r in 0..rref.rows {
            if let Some(c) = (0..self.cols).find(|&c| rref.get(r, c) != 0) {
                pivot_cols.push(c);
                is_pivot[c] = true;
            }
        }
        let mut ker = FieldMat::zero(0, self.cols);
        for fcol in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[fcol] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(rref.get(r, fcol));
            }
            ker.data.extend_from_slice(&v);
            ker.rows += 1;
        }
        ker
    }

    /// Row-space membership.
    pub fn contains_row(&self, f: &Field, row: &[u32]) -> bool {
        let rref = self.rref(f);
        let mut v = row.to_vec();
        for r in 0..rref.rows {
            let c = (0..self.cols).find(|&c| rref.get(r, c) != 0).unwrap();
            if v[c] != 0 {
                let factor = v[c];
                for j in 0..self.cols {
                    let t = f.mul(factor, rref.get(r, j));
                    v[j] = f.sub(v[j], t);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Row-space equality via canonical RREF.
    pub fn same_row_space(&self, f: &Field, other: &FieldMat) -> bool {
        self.cols == other.cols && self.rref(f) == other.rref(f)
    }
}
