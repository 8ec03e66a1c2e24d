//! The Euclidean geometry EG(m, p^s): points, μ-flats, counting formulas and
//! incidence matrices.
//!
//! The point set is GF(p^s)^m, identified with GF(p^{ms}) through the basis
//! {1, α, ..., α^{m−1}} over the embedded subfield GF(p^s). Nonzero points
//! are indexed by their discrete log (point i ↔ α^i); the origin, when it
//! participates, takes the last index. This makes the cyclic structure of the
//! origin-free codes an index rotation.
//!
//! Flats are cosets of linear subspaces. Subspaces are enumerated through
//! their row-reduced echelon bases (pivot-column combinations in
//! lexicographic order, then free entries in odometer order); the cosets of
//! each subspace are ordered by the smallest point index they contain.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fields::{is_prime, FieldTower};
use crate::linalg::Csr;

/// Default cap on the number of flats any enumeration may touch.
pub const DEFAULT_FLAT_BUDGET: u128 = 1 << 22;

/// Number of μ1-flats contained in a μ2-flat of EG(m, p^s):
/// q^{μ2−μ1} · Π_{i=1}^{μ1} (q^{μ2−i+1}−1)/(q^{μ1−i+1}−1), q = p^s.
/// With μ2 = m this counts all μ1-flats of the geometry.
pub fn n_eg(m: usize, mu2: usize, mu1: usize, s: usize, p: u32) -> Result<u128> {
    check_counting_args(m, mu2, mu1, s, p)?;
    let q = BigUint::from(p).pow(s as u32);
    let mut num = pow_big(&q, (mu2 - mu1) as u32);
    let mut den = BigUint::from(1u32);
    for i in 1..=mu1 {
        num *= pow_big(&q, (mu2 - i + 1) as u32) - 1u32;
        den *= pow_big(&q, (mu1 - i + 1) as u32) - 1u32;
    }
    exact_div_u128(num, den)
}

/// Number of μ2-flats of EG(m, p^s) that contain a given μ1-flat:
/// Π_{i=μ1+1}^{μ2} (q^{m−i+1}−1)/(q^{μ2−i+1}−1).
pub fn a_eg(m: usize, mu2: usize, mu1: usize, s: usize, p: u32) -> Result<u128> {
    check_counting_args(m, mu2, mu1, s, p)?;
    let q = BigUint::from(p).pow(s as u32);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in (mu1 + 1)..=mu2 {
        num *= pow_big(&q, (m - i + 1) as u32) - 1u32;
        den *= pow_big(&q, (mu2 - i + 1) as u32) - 1u32;
    }
    exact_div_u128(num, den)
}

fn check_counting_args(m: usize, mu2: usize, mu1: usize, s: usize, p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if s == 0 {
        return Err(Error::invalid("s must be at least 1"));
    }
    if !(mu1 < mu2 && mu2 <= m) {
        return Err(Error::invalid(format!(
            "flat dimensions must satisfy 0 <= mu1 < mu2 <= m, got mu1={mu1}, mu2={mu2}, m={m}"
        )));
    }
    Ok(())
}

fn pow_big(b: &BigUint, e: u32) -> BigUint {
    b.pow(e)
}

fn exact_div_u128(num: BigUint, den: BigUint) -> Result<u128> {
    let (q, r) = num_integer_divrem(&num, &den);
    if r != BigUint::from(0u32) {
        return Err(Error::internal("flat count division is not exact"));
    }
    u128::try_from(&q)
        .map_err(|_| Error::invalid("flat count exceeds the 128-bit range"))
}

fn num_integer_divrem(a: &BigUint, b: &BigUint) -> (BigUint, BigUint) {
    (a / b, a % b)
}

/// A μ-dimensional flat: a coset `offset + span(basis)` of EG(m, p^s).
/// Basis rows are in reduced echelon form and the offset has zeros at the
/// pivot coordinates, so the pair is canonical per flat. Coordinates are
/// subfield elements in big-field representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    dim: usize,
    basis: Vec<Vec<u32>>,
    offset: Vec<u32>,
    key: u128,
}

impl Flat {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn offset(&self) -> &[u32] {
        &self.offset
    }

    /// Deterministic integer key: two `Flat`s describe the same point set
    /// iff their keys agree (the key encodes the canonical basis/offset).
    pub fn canonical_key(&self) -> u128 {
        self.key
    }
}

pub struct Geometry {
    tower: Arc<FieldTower>,
    budget: u128,
    /// All q subfield scalars in enumeration order: zero first.
    scalars: Vec<u32>,
    step: u32,
}

impl Geometry {
    pub fn new(tower: Arc<FieldTower>) -> Geometry {
        let mid = tower.mid();
        let scalars = mid.elements().to_vec();
        let step = tower.big().order() / (tower.q() - 1);
        Geometry {
            tower,
            budget: DEFAULT_FLAT_BUDGET,
            scalars,
            step,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Geometry {
        self.budget = budget;
        self
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn m(&self) -> usize {
        self.tower.m()
    }

    pub fn q(&self) -> u32 {
        self.tower.q()
    }

    pub fn point_count(&self) -> u64 {
        self.tower.big().size() as u64
    }

    /// Index of a point given as a big-field element: discrete log for
    /// nonzero points, last index for the origin.
    pub fn point_index_of_element(&self, elem: u32) -> usize {
        match self.tower.big().log(elem) {
            Some(e) => e as usize,
            None => self.tower.big().order() as usize,
        }
    }

    pub fn element_of_point_index(&self, idx: usize) -> u32 {
        let n = self.tower.big().order() as usize;
        if idx == n {
            0
        } else {
            self.tower.big().alpha_pow(idx as u64)
        }
    }

    /// Big-field element of a coordinate vector: Σ c_i α^i.
    pub fn element_of_coords(&self, coords: &[u32]) -> u32 {
        let f = self.tower.big();
        let mut acc = 0;
        for (i, &c) in coords.iter().enumerate() {
            acc = f.add(acc, f.mul(c, f.alpha_pow(i as u64)));
        }
        acc
    }

    pub fn coords_of_element(&self, elem: u32) -> Vec<u32> {
        self.tower.big().subfield(self.tower.s()).unwrap().decompose(elem)
    }

    fn scalar_index(&self, x: u32) -> u32 {
        match self.tower.big().log(x) {
            None => 0,
            Some(e) => 1 + e / self.step,
        }
    }

    /// Total number of μ-flats, optionally excluding those through the origin.
    pub fn flat_count(&self, mu: usize, exclude_origin: bool) -> Result<u128> {
        let m = self.m();
        if mu > m {
            return Err(Error::invalid(format!("mu={mu} exceeds m={m}")));
        }
        let (s, p) = (self.tower.s(), self.tower.p());
        if mu == m {
            return Ok(if exclude_origin { 0 } else { 1 });
        }
        let total = n_eg(m, m, mu, s, p)?;
        if !exclude_origin {
            return Ok(total);
        }
        let through = if mu == 0 {
            1
        } else {
            a_eg(m, mu, 0, s, p)?
        };
        Ok(total - through)
    }

    /// Walk all μ-flats in canonical order, handing each visitor call the
    /// canonical key and the sorted point indices of the flat. Streams, so
    /// large families never sit in memory.
    pub fn visit_flats<F>(&self, mu: usize, exclude_origin: bool, mut visit: F) -> Result<()>
    where
        F: FnMut(u128, &[usize]),
    {
        self.check_budget(mu, exclude_origin)?;
        self.walk(mu, exclude_origin, |key, _basis, _offset, points| {
            visit(key, points)
        })
    }

    /// Materialized flat list in canonical order.
    pub fn enumerate_flats(&self, mu: usize, exclude_origin: bool) -> Result<Vec<Flat>> {
        self.check_budget(mu, exclude_origin)?;
        let mut out = Vec::new();
        self.walk(mu, exclude_origin, |key, basis, offset, _points| {
            out.push(Flat {
                dim: mu,
                basis: basis.to_vec(),
                offset: offset.to_vec(),
                key,
            })
        })?;
        // Cross-check against the closed-form count.
        let expect = self.flat_count(mu, exclude_origin)?;
        if out.len() as u128 != expect {
            return Err(Error::internal(format!(
                "enumerated {} flats, counting formula says {}",
                out.len(),
                expect
            )));
        }
        Ok(out)
    }

    fn check_budget(&self, mu: usize, exclude_origin: bool) -> Result<()> {
        let count = self.flat_count(mu, exclude_origin)?;
        if count > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "{count} flats of dimension {mu} exceed the budget of {}",
                self.budget
            )));
        }
        Ok(())
    }

    /// Core enumeration. The callback receives (key, basis, offset, sorted
    /// point indices) per flat.
    fn walk<F>(&self, mu: usize, exclude_origin: bool, mut emit: F) -> Result<()>
    where
        F: FnMut(u128, &[Vec<u32>], &[u32], &[usize]),
    {
        let m = self.m();
        if mu > m {
            return Err(Error::invalid(format!("mu={mu} exceeds m={m}")));
        }
        let f = self.tower.big();
        let q = self.q() as usize;
        let origin_idx = f.order() as usize;

        let mut pivots: Vec<usize> = (0..mu).collect();
        loop {
            // free positions for this pivot choice, row-major order
            let in_pivots = |c: usize| pivots.contains(&c);
            let mut free: Vec<(usize, usize)> = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in (pc + 1)..m {
                    if !in_pivots(c) {
                        free.push((i, c));
                    }
                }
            }
            let nonpivot: Vec<usize> = (0..m).filter(|c| !in_pivots(*c)).collect();

            let mut assign = vec![0usize; free.len()];
            loop {
                // build basis rows
                let mut basis = vec![vec![0u32; m]; mu];
                for (i, &pc) in pivots.iter().enumerate() {
                    basis[i][pc] = 1;
                }
                for (k, &(i, c)) in free.iter().enumerate() {
                    basis[i][c] = self.scalars[assign[k]];
                }
                // subspace points as big-field elements
                let mut pts: Vec<u32> = vec![0];
                for row in &basis {
                    let be = self.element_of_coords(row);
                    let mut next = Vec::with_capacity(pts.len() * q);
                    for &t in &self.scalars {
                        let tb = f.mul(t, be);
                        for &pt in &pts {
                            next.push(f.add(pt, tb));
                        }
                    }
                    pts = next;
                }
                // cosets: reps supported on non-pivot coordinates
                let n_reps = q.pow(nonpivot.len() as u32);
                let mut cosets: Vec<(usize, Vec<u32>, usize)> = Vec::with_capacity(n_reps);
                let mut rep_digits = vec![0usize; nonpivot.len()];
                for rep_no in 0..n_reps {
                    // decode rep_no in base q, last coordinate fastest
                    if rep_no > 0 {
                        let mut d = rep_digits.len();
                        loop {
                            d -= 1;
                            rep_digits[d] += 1;
                            if rep_digits[d] < q {
                                break;
                            }
                            rep_digits[d] = 0;
                        }
                    }
                    if exclude_origin && rep_digits.iter().all(|&d| d == 0) {
                        continue;
                    }
                    let mut rep_coords = vec![0u32; m];
                    for (k, &c) in nonpivot.iter().enumerate() {
                        rep_coords[c] = self.scalars[rep_digits[k]];
                    }
                    let rep_elem = self.element_of_coords(&rep_coords);
                    let min_idx = pts
                        .iter()
                        .map(|&v| self.point_index_of_element(f.add(rep_elem, v)))
                        .min()
                        .unwrap_or(origin_idx);
                    cosets.push((min_idx, rep_coords, rep_no));
                }
                cosets.sort_unstable_by_key(|&(mi, _, rep_no)| (mi, rep_no));

                for (_, rep_coords, _) in &cosets {
                    let rep_elem = self.element_of_coords(rep_coords);
                    let mut idxs: Vec<usize> = pts
                        .iter()
                        .map(|&v| self.point_index_of_element(f.add(rep_elem, v)))
                        .collect();
                    idxs.sort_unstable();
                    let key = self.encode_key(&pivots, &basis, rep_coords);
                    emit(key, &basis, rep_coords, &idxs);
                }

                // next free assignment
                if free.is_empty() {
                    break;
                }
                let mut d = free.len();
                loop {
                    d -= 1;
                    assign[d] += 1;
                    if assign[d] < q {
                        break;
                    }
                    assign[d] = 0;
                    if d == 0 {
                        break;
                    }
                }
                if assign.iter().all(|&x| x == 0) {
                    break;
                }
            }

            // next pivot combination (lexicographic)
            if mu == 0 {
                break;
            }
            let mut i = mu;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if pivots[i] < m - (mu - i) {
                    pivots[i] += 1;
                    for j in (i + 1)..mu {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        Ok(())
    }

    fn encode_key(&self, pivots: &[usize], basis: &[Vec<u32>], offset: &[u32]) -> u128 {
        let m = self.m();
        let q = self.q() as u128;
        let mut mask = 0u128;
        for &pc in pivots {
            mask |= 1 << pc;
        }
        let mut value = 0u128;
        let in_pivots = |c: usize| pivots.contains(&c);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in (pc + 1)..m {
                if !in_pivots(c) {
                    value = value
                        .checked_mul(q)
                        .and_then(|v| v.checked_add(self.scalar_index(basis[i][c]) as u128))
                        .expect("flat key exceeds 128 bits");
                }
            }
        }
        for c in 0..m {
            if !in_pivots(c) {
                value = value
                    .checked_mul(q)
                    .and_then(|v| v.checked_add(self.scalar_index(offset[c]) as u128))
                    .expect("flat key exceeds 128 bits");
            }
        }
        value
            .checked_shl(m as u32)
            .map(|v| v | mask)
            .expect("flat key exceeds 128 bits")
    }

    /// Canonical key of an arbitrary (basis, offset) description of a flat.
    /// Row reduces the basis over GF(q) and reduces the offset to the
    /// canonical coset representative, so any description of the same flat
    /// keys identically.
    pub fn canonicalize(&self, basis: &[Vec<u32>], offset: &[u32]) -> Result<Flat> {
        let m = self.m();
        let f = self.tower.big();
        if offset.len() != m || basis.iter().any(|b| b.len() != m) {
            return Err(Error::invalid("coordinate length mismatch"));
        }
        // RREF over the subfield
        let mut rows: Vec<Vec<u32>> = basis.to_vec();
        let mut next = 0;
        let mut pivots = Vec::new();
        for c in 0..m {
            if let Some(r) = (next..rows.len()).find(|&r| rows[r][c] != 0) {
                rows.swap(next, r);
                let inv = f.inv(rows[next][c]);
                for x in rows[next].iter_mut() {
                    *x = f.mul(*x, inv);
                }
                for r in 0..rows.len() {
                    if r != next && rows[r][c] != 0 {
                        let factor = rows[r][c];
                        for j in 0..m {
                            let t = f.mul(factor, rows[next][j]);
                            rows[r][j] = f.sub(rows[r][j], t);
                        }
                    }
                }
                pivots.push(c);
                next += 1;
            }
        }
        if next != basis.len() {
            return Err(Error::invalid("basis vectors are linearly dependent"));
        }
        rows.truncate(next);
        // reduce offset at pivot coordinates
        let mut off = offset.to_vec();
        for (r, &pc) in pivots.iter().enumerate() {
            if off[pc] != 0 {
                let factor = off[pc];
                for j in 0..m {
                    let t = f.mul(factor, rows[r][j]);
                    off[j] = f.sub(off[j], t);
                }
            }
        }
        let key = self.encode_key(&pivots, &rows, &off);
        Ok(Flat {
            dim: rows.len(),
            basis: rows,
            offset: off,
            key,
        })
    }

    /// Point indices of a flat, sorted.
    pub fn flat_points(&self, flat: &Flat) -> Vec<usize> {
        let f = self.tower.big();
        let q = self.q() as usize;
        let mut pts: Vec<u32> = vec![self.element_of_coords(&flat.offset)];
        for row in &flat.basis {
            let be = self.element_of_coords(row);
            let mut next = Vec::with_capacity(pts.len() * q);
            for &t in &self.scalars {
                let tb = f.mul(t, be);
                for &pt in &pts {
                    next.push(f.add(pt, tb));
                }
            }
            pts = next;
        }
        let mut idxs: Vec<usize> = pts
            .iter()
            .map(|&v| self.point_index_of_element(v))
            .collect();
        idxs.sort_unstable();
        idxs
    }

    /// Image of a flat under the cyclic point map x ↦ α·x.
    pub fn rotate_flat(&self, flat: &Flat) -> Result<Flat> {
        let f = self.tower.big();
        let a = f.alpha();
        let mul_coords = |coords: &[u32]| -> Vec<u32> {
            let elem = self.element_of_coords(coords);
            self.coords_of_element(f.mul(a, elem))
        };
        let basis: Vec<Vec<u32>> = flat.basis.iter().map(|b| mul_coords(b)).collect();
        let offset = mul_coords(&flat.offset);
        self.canonicalize(&basis, &offset)
    }

    /// Incidence matrix of μ2-flats (rows) against μ1-flats (columns);
    /// entry (i, j) = 1 iff flat j ⊆ flat i. With `exclude_origin`, both
    /// families are restricted to flats avoiding the origin.
    pub fn incidence_matrix(
        &self,
        mu2: usize,
        mu1: usize,
        exclude_origin: bool,
    ) -> Result<IncidenceMatrix> {
        let m = self.m();
        if !(mu1 < mu2 && mu2 <= m) {
            return Err(Error::invalid(format!(
                "need 0 <= mu1 < mu2 <= m, got mu1={mu1}, mu2={mu2}, m={m}"
            )));
        }
        if mu1 == 0 {
            // Columns are points in index order.
            let n_pts = self.point_count() as usize;
            let origin_idx = n_pts - 1;
            let cols = if exclude_origin { n_pts - 1 } else { n_pts };
            let mut csr = Csr::new(cols);
            let mut row_keys = Vec::new();
            self.visit_flats(mu2, exclude_origin, |key, points| {
                debug_assert!(!exclude_origin || !points.contains(&origin_idx));
                let cols_of_row: Vec<u32> = points.iter().map(|&ix| ix as u32).collect();
                csr.push_row_binary(&cols_of_row);
                row_keys.push(key);
            })?;
            let col_keys = (0..cols)
                .map(|ix| {
                    let coords = self.coords_of_element(self.element_of_point_index(ix));
                    self.encode_key(&[], &[], &coords)
                })
                .collect();
            return Ok(IncidenceMatrix {
                mu2,
                mu1,
                exclude_origin,
                csr,
                row_keys,
                col_keys,
            });
        }

        // General case: materialize both families and test containment.
        let small = self.enumerate_flats(mu1, exclude_origin)?;
        let big_flats = self.enumerate_flats(mu2, exclude_origin)?;
        let mut csr = Csr::new(small.len());
        let mut row_keys = Vec::with_capacity(big_flats.len());
        for bf in &big_flats {
            let mut cols_of_row = Vec::new();
            for (j, sf) in small.iter().enumerate() {
                if self.flat_contains(bf, sf) {
                    cols_of_row.push(j as u32);
                }
            }
            csr.push_row_binary(&cols_of_row);
            row_keys.push(bf.key);
        }
        Ok(IncidenceMatrix {
            mu2,
            mu1,
            exclude_origin,
            csr,
            row_keys,
            col_keys: small.iter().map(|f| f.key).collect(),
        })
    }

    /// Containment test: every basis vector of `inner` lies in `outer`'s
    /// direction space and the offsets differ by a direction vector.
    pub fn flat_contains(&self, outer: &Flat, inner: &Flat) -> bool {
        let f = self.tower.big();
        let m = self.m();
        let reduce = |v: &[u32]| -> Vec<u32> {
            let mut v = v.to_vec();
            for row in &outer.basis {
                let pc = (0..m).find(|&c| row[c] != 0).unwrap();
                if v[pc] != 0 {
                    let factor = v[pc];
                    for j in 0..m {
                        let t = f.mul(factor, row[j]);
                        v[j] = f.sub(v[j], t);
                    }
                }
            }
            v
        };
        for b in &inner.basis {
            if reduce(b).iter().any(|&x| x != 0) {
                return false;
            }
        }
        let diff: Vec<u32> = inner
            .offset
            .iter()
            .zip(&outer.offset)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        reduce(&diff).iter().all(|&x| x == 0)
    }
}

/// 0/1 incidence matrix between two flat families, rows = μ2-flats,
/// columns = μ1-flats.
pub struct IncidenceMatrix {
    pub mu2: usize,
    pub mu1: usize,
    pub exclude_origin: bool,
    csr: Csr,
    row_keys: Vec<u128>,
    col_keys: Vec<u128>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.csr.rows()
    }

    pub fn cols(&self) -> usize {
        self.csr.cols()
    }

    pub fn matrix(&self) -> &Csr {
        &self.csr
    }

    /// The type-II matrix: the transpose.
    pub fn transpose(&self) -> Csr {
        self.csr.transpose()
    }

    pub fn row_key(&self, r: usize) -> u128 {
        self.row_keys[r]
    }

    pub fn col_key(&self, c: usize) -> u128 {
        self.col_keys[c]
    }

    pub fn row_keys(&self) -> &[u128] {
        &self.row_keys
    }
}
