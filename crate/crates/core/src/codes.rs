//! Classical p-ary code constructions: narrow-sense BCH defining sets, cyclic
//! Euclidean-geometry root sets, type-I EG-LDPC codes from incidence
//! matrices, and exact minimum-distance computations at desk scale.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::fields::{cyclotomic_coset, gcd, is_prime, q_ary_weight, Field, FieldTower};
use crate::geometry::{a_eg, Geometry};
use crate::linalg::{BitEliminator, ByteEliminator, Csr, GfMat};
use crate::poly::{FieldPoly, GfpPoly};

/// Default codeword-enumeration budget for exact distances: p^k must stay
/// at or below this.
pub const DISTANCE_ENUM_BUDGET: u128 = 1 << 24;

/// How a recorded distance value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceInfo {
    pub exact: Option<usize>,
    pub lower_bound: Option<usize>,
    pub provenance: Provenance,
}

impl DistanceInfo {
    pub fn unknown() -> DistanceInfo {
        DistanceInfo {
            exact: None,
            lower_bound: None,
            provenance: Provenance::Formula,
        }
    }

    pub fn bound(b: usize) -> DistanceInfo {
        DistanceInfo {
            exact: None,
            lower_bound: Some(b),
            provenance: Provenance::Formula,
        }
    }

    pub fn exact(d: usize) -> DistanceInfo {
        DistanceInfo {
            exact: Some(d),
            lower_bound: Some(d),
            provenance: Provenance::Enumeration,
        }
    }

    /// Best available value (exact if known, else the bound).
    pub fn value(&self) -> Option<usize> {
        self.exact.or(self.lower_bound)
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

/// A linear code over GF(p) carried by a parity-check matrix. The sparse
/// form keeps the construction's checks verbatim (LDPC decoding wants the
/// redundant rows); the dense mirror serves rank and nesting algebra.
#[derive(Debug, Clone)]
pub struct LinearCode {
    p: u32,
    n: usize,
    parity_sparse: Csr,
    parity: GfMat,
    k: usize,
    generator: OnceLock<GfMat>,
    distance: DistanceInfo,
}

impl LinearCode {
    pub fn from_parity_sparse(p: u32, csr: Csr) -> LinearCode {
        let dense = csr.to_dense(p);
        let k = csr.cols() - dense.rank();
        LinearCode {
            p,
            n: csr.cols(),
            parity_sparse: csr,
            parity: dense,
            k,
            generator: OnceLock::new(),
            distance: DistanceInfo::unknown(),
        }
    }

    pub fn from_parity_dense(dense: GfMat) -> LinearCode {
        let p = dense.p();
        let n = dense.cols();
        let mut csr = Csr::new(n);
        for r in 0..dense.rows() {
            let entries: Vec<(u32, u8)> = (0..n)
                .filter_map(|c| {
                    let v = dense.get(r, c);
                    (v != 0).then_some((c as u32, v))
                })
                .collect();
            if p == 2 {
                let cols: Vec<u32> = entries.iter().map(|&(c, _)| c).collect();
                csr.push_row_binary(&cols);
            } else {
                csr.push_row_valued(&entries);
            }
        }
        let k = n - dense.rank();
        LinearCode {
            p,
            n,
            parity_sparse: csr,
            parity: dense,
            k,
            generator: OnceLock::new(),
            distance: DistanceInfo::unknown(),
        }
    }

    /// Build from a generator matrix; the parity check is its kernel.
    pub fn from_generator(generator: GfMat) -> LinearCode {
        let parity = generator.kernel();
        let code = LinearCode::from_parity_dense(parity);
        code.generator.set(generator.rref()).ok();
        code
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parity(&self) -> &GfMat {
        &self.parity
    }

    pub fn parity_sparse(&self) -> &Csr {
        &self.parity_sparse
    }

    pub fn distance(&self) -> &DistanceInfo {
        &self.distance
    }

    pub fn set_distance(&mut self, d: DistanceInfo) {
        self.distance = d;
    }

    /// A full-rank generator matrix (RREF of the parity kernel).
    pub fn generator(&self) -> &GfMat {
        self.generator.get_or_init(|| self.parity.kernel().rref())
    }

    /// The dual code: parity check = generator of self.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_parity_dense(self.generator().clone())
    }

    /// Syndrome test against the dense parity check.
    pub fn contains_word(&self, word: &[u8]) -> bool {
        assert_eq!(word.len(), self.n);
        let p = self.p;
        for r in 0..self.parity.rows() {
            let mut acc = 0u32;
            for c in 0..self.n {
                let h = self.parity.get(r, c);
                if h != 0 {
                    acc = (acc + h as u32 * word[c] as u32) % p;
                }
            }
            if acc != 0 {
                return false;
            }
        }
        true
    }

    /// True iff the codebook of `other` is contained in this code's
    /// codebook (checked at the matrix level: H_self · G_other^T = 0).
    pub fn contains_code(&self, other: &LinearCode) -> Result<bool> {
        if self.n != other.n || self.p != other.p {
            return Err(Error::invalid("length or characteristic mismatch"));
        }
        self.parity.orthogonal_to(other.generator())
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.p == other.p && self.n == other.n && self.parity.rref() == other.parity.rref()
    }
}

// ---------------------------------------------------------------------------
// Cyclic codes
// ---------------------------------------------------------------------------

/// A p-ary cyclic code of primitive length n = p^d − 1, carried by the
/// exponent set of its generator polynomial's roots.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    p: u32,
    n: usize,
    field: Arc<Field>,
    defining_set: Vec<u64>,
    generator_poly: GfpPoly,
}

impl CyclicCode {
    /// `defining_set` must be Frobenius closed (a union of p-cyclotomic
    /// cosets mod n); exponents are reduced mod n = p^d − 1.
    pub fn new(p: u32, n: usize, defining_set: &[u64]) -> Result<CyclicCode> {
        let field = Arc::new(field_of_length(p, n)?);
        CyclicCode::with_field(field, defining_set)
    }

    pub fn with_field(field: Arc<Field>, defining_set: &[u64]) -> Result<CyclicCode> {
        let p = field.p();
        let n = field.order() as usize;
        let mut set: Vec<u64> = defining_set.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.iter().any(|&h| h >= n as u64) {
            return Err(Error::invalid("root exponent out of range"));
        }
        // Frobenius closure
        for &h in &set {
            let img = h * p as u64 % n as u64;
            if set.binary_search(&img).is_err() {
                return Err(Error::invalid(format!(
                    "defining set is not closed under multiplication by {p} mod {n} (exponent {h})"
                )));
            }
        }
        let generator_poly = generator_from_exponents(&field, &set)?;
        Ok(CyclicCode {
            p,
            n,
            field,
            defining_set: set,
            generator_poly,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn defining_set(&self) -> &[u64] {
        &self.defining_set
    }

    pub fn generator_poly(&self) -> &GfpPoly {
        &self.generator_poly
    }

    pub fn dimension(&self) -> usize {
        self.n - self.defining_set.len()
    }

    /// Defining set of the dual code: {−h mod n : h not in the defining set}.
    pub fn dual_defining_set(&self) -> Vec<u64> {
        let n = self.n as u64;
        let mut out: Vec<u64> = (0..n)
            .filter(|h| self.defining_set.binary_search(h).is_err())
            .map(|h| (n - h) % n)
            .collect();
        out.sort_unstable();
        out
    }

    /// Length of the run of consecutive exponents 1, 2, ..., r all present;
    /// the BCH bound then gives minimum distance at least r + 1.
    pub fn consecutive_root_run(&self) -> u64 {
        let mut r = 0;
        while self.defining_set.binary_search(&(r + 1)).is_ok() {
            r += 1;
        }
        r
    }
}

fn field_of_length(p: u32, n: usize) -> Result<Field> {
    if gcd(p as u64, n as u64) != 1 {
        return Err(Error::invalid(format!("gcd({p}, {n}) must be 1")));
    }
    let mut size = p as u64;
    let mut degree = 1;
    while size - 1 < n as u64 {
        size *= p as u64;
        degree += 1;
    }
    if size - 1 != n as u64 {
        return Err(Error::invalid(format!(
            "length {n} is not p^d - 1 for characteristic {p}; only primitive lengths are supported"
        )));
    }
    Field::new(p, degree)
}

/// Generator polynomial Π_{h in set} (x − α^h) assembled coset by coset so
/// each factor's coefficients land in GF(p).
fn generator_from_exponents(field: &Field, set: &[u64]) -> Result<GfpPoly> {
    let p = field.p();
    let n = field.order() as u64;
    let mut g = GfpPoly::one(p);
    let mut seen = vec![false; n as usize];
    for &h in set {
        if seen[h as usize] {
            continue;
        }
        let coset = cyclotomic_coset(h, p as u64, n)?;
        for &c in &coset {
            if set.binary_search(&c).is_err() {
                return Err(Error::invalid("defining set is not Frobenius closed"));
            }
            seen[c as usize] = true;
        }
        let min_poly = FieldPoly::from_root_exponents(field, &coset);
        let coeffs: Result<Vec<u8>> = min_poly
            .coeffs()
            .iter()
            .map(|&c| {
                if c < p {
                    Ok(c as u8)
                } else {
                    Err(Error::internal(
                        "minimal polynomial coefficient left the prime field",
                    ))
                }
            })
            .collect();
        g = g.mul(&GfpPoly::new(p, coeffs?));
    }
    Ok(g)
}

/// Materialize generator and parity-check matrices from the defining set.
pub fn code_from_defining_set(c: &CyclicCode) -> Result<LinearCode> {
    let p = c.p;
    let n = c.n;
    let k = c.dimension();
    if k == 0 {
        // zero code: parity = identity
        let mut h = GfMat::zero(p, n, n);
        for i in 0..n {
            h.set(i, i, 1);
        }
        return Ok(LinearCode::from_parity_dense(h));
    }
    let g = &c.generator_poly;
    debug_assert_eq!(g.degree(), n - k);
    // h(x) = (x^n - 1) / g(x); parity rows are shifts of the monic
    // reciprocal of h.
    let (h_poly, rem) = GfpPoly::x_n_minus_one(p, n).divrem(g);
    if !rem.is_zero() {
        return Err(Error::internal("generator polynomial does not divide x^n - 1"));
    }
    let h_rev = h_poly.reciprocal_monic();
    let mut parity = GfMat::zero(p, n - k, n);
    for r in 0..(n - k) {
        for (j, &coef) in h_rev.coeffs().iter().enumerate() {
            if coef != 0 {
                parity.set(r, r + j, coef);
            }
        }
    }
    let mut gen = GfMat::zero(p, k, n);
    for r in 0..k {
        for (j, &coef) in g.coeffs().iter().enumerate() {
            if coef != 0 {
                gen.set(r, r + j, coef);
            }
        }
    }
    debug_assert!(parity.orthogonal_to(&gen).unwrap());
    let code = LinearCode::from_parity_dense(parity);
    if code.k() != k {
        return Err(Error::internal(format!(
            "cyclic code dimension mismatch: rank gives {}, defining set gives {k}",
            code.k()
        )));
    }
    code.generator.set(gen.rref()).ok();
    Ok(code)
}

// ---------------------------------------------------------------------------
// BCH
// ---------------------------------------------------------------------------

/// Narrow-sense primitive BCH code of length p^{total_degree} − 1 with design
/// distance δ: the defining set is the closure of {1, ..., δ−1}.
pub fn bch_narrow_sense(p: u32, total_degree: usize, delta: u64) -> Result<CyclicCode> {
    bch_narrow_sense_with_poly(p, total_degree, delta, None)
}

pub fn bch_narrow_sense_with_poly(
    p: u32,
    total_degree: usize,
    delta: u64,
    poly: Option<&[u8]>,
) -> Result<CyclicCode> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let n = (p as u64)
        .checked_pow(total_degree as u32)
        .map(|s| s - 1)
        .ok_or_else(|| Error::invalid("length overflow"))?;
    if !(2..=n).contains(&delta) {
        return Err(Error::invalid(format!(
            "design distance {delta} out of range 2..={n}"
        )));
    }
    let mut set = Vec::new();
    for b in 1..delta {
        set.extend(cyclotomic_coset(b, p as u64, n)?);
    }
    let field = match poly {
        Some(poly) => Field::with_polynomial(p, total_degree, poly)?,
        None => Field::new(p, total_degree)?,
    };
    CyclicCode::with_field(Arc::new(field), &set)
}

// ---------------------------------------------------------------------------
// Cyclic EG-LDPC root sets
// ---------------------------------------------------------------------------

fn check_eg_params(m: usize, mu: usize, s: usize, p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if s == 0 || m < 2 || mu == 0 || mu >= m {
        return Err(Error::invalid(format!(
            "need s >= 1 and 0 < mu < m with m >= 2, got m={m}, mu={mu}, s={s}"
        )));
    }
    Ok(())
}

/// Root exponents of the generator polynomial of the origin-free type-I
/// EG-LDPC code: {h : 0 < max_{0≤l<s} W_{p^s}(h·p^l mod n) ≤ (p^s−1)(m−μ)}.
pub fn cyclic_eg_root_set(m: usize, mu: usize, s: usize, p: u32) -> Result<Vec<u64>> {
    check_eg_params(m, mu, s, p)?;
    let q = (p as u64).pow(s as u32);
    let n = q.pow(m as u32) - 1;
    let cap = (q - 1) * (m - mu) as u64;
    let mut out = Vec::new();
    for h in 1..n {
        let w = rotated_weight(h, p as u64, s, n, q, Rotation::Max);
        if w > 0 && w <= cap {
            out.push(h);
        }
    }
    debug_assert!(frobenius_closed(&out, p as u64, n));
    Ok(out)
}

/// Root exponents of the dual code's generator polynomial together with the
/// largest guaranteed BCH design distance δ0.
///
/// The dual set is {h : min_{0≤l<s} W_{p^s}(h·p^l mod n) < μ(p^s−1)}, which
/// must equal Z_p ∪ {0} with Z_p taken from the strictly-positive variant of
/// the same condition; both are computed and compared. δ0 is measured as the
/// length of the consecutive run α, α², ..., α^{δ0−1} inside the set and
/// checked against the closed form p^{μs} − 1 via the Q, R decomposition
/// μ(p^s−1) = Q(p^s−1) + R.
pub fn cyclic_eg_dual_root_set(m: usize, mu: usize, s: usize, p: u32) -> Result<(Vec<u64>, u64)> {
    check_eg_params(m, mu, s, p)?;
    let q = (p as u64).pow(s as u32);
    let n = q.pow(m as u32) - 1;
    let cap = mu as u64 * (q - 1);
    let mut dual = vec![0u64];
    let mut strict = Vec::new();
    for h in 1..n {
        let w = rotated_weight(h, p as u64, s, n, q, Rotation::Min);
        if w < cap {
            dual.push(h);
            if w > 0 {
                strict.push(h);
            }
        }
    }
    // dual = strict ∪ {0}
    if dual.len() != strict.len() + 1 {
        return Err(Error::internal(
            "dual root set does not equal its strict variant plus the zero exponent",
        ));
    }
    // Consecutive run starting at exponent 1.
    let mut run = 0u64;
    {
        let set: std::collections::BTreeSet<u64> = dual.iter().copied().collect();
        while set.contains(&(run + 1)) {
            run += 1;
        }
    }
    let delta0 = run + 1;
    // Closed form via Q, R:  μ(q−1) = Q(q−1) + R with 0 <= R < q−1.
    let total = mu as u64 * (q - 1);
    let qq = total / (q - 1);
    let rr = total % (q - 1);
    if rr != 0 || qq != mu as u64 {
        return Err(Error::internal("Q, R decomposition is inconsistent"));
    }
    let closed = (rr + 1) * (p as u64).pow((qq * s as u64) as u32) - 1;
    if delta0 != closed {
        return Err(Error::internal(format!(
            "consecutive-root run gives delta0 = {delta0}, closed form gives {closed}"
        )));
    }
    Ok((dual, delta0))
}

enum Rotation {
    Max,
    Min,
}

fn rotated_weight(h: u64, p: u64, s: usize, n: u64, q: u64, rot: Rotation) -> u64 {
    let mut best: Option<u64> = None;
    let mut x = h;
    for _ in 0..s {
        let w = q_ary_weight(x, q);
        best = Some(match (best, &rot) {
            (None, _) => w,
            (Some(b), Rotation::Max) => b.max(w),
            (Some(b), Rotation::Min) => b.min(w),
        });
        x = x * p % n;
    }
    best.unwrap()
}

fn frobenius_closed(set: &[u64], p: u64, n: u64) -> bool {
    set.iter().all(|&h| set.binary_search(&(h * p % n)).is_ok())
}

// ---------------------------------------------------------------------------
// Type-I EG-LDPC codes
// ---------------------------------------------------------------------------

/// Type-I Euclidean-geometry LDPC code: the null space over GF(p) of the
/// incidence matrix of μ-flats against points. With `cyclic` the families
/// exclude the origin, giving a cyclic code of length p^{ms} − 1; otherwise
/// the length is p^{ms}.
///
/// For cyclic instances with n ≤ 1023 the construction cross-checks that the
/// incidence matrix's row space equals the parity space of the cyclic code
/// defined by `cyclic_eg_root_set`, and fails loudly otherwise.
pub fn eg_ldpc_type1(m: usize, mu: usize, s: usize, p: u32, cyclic: bool) -> Result<LinearCode> {
    eg_ldpc_type1_with_poly(m, mu, s, p, cyclic, None)
}

/// [`eg_ldpc_type1`] over a caller-chosen primitive polynomial for
/// GF(p^{ms}) (coefficients lowest degree first).
pub fn eg_ldpc_type1_with_poly(
    m: usize,
    mu: usize,
    s: usize,
    p: u32,
    cyclic: bool,
    poly: Option<&[u8]>,
) -> Result<LinearCode> {
    check_eg_params(m, mu, s, p)?;
    let tower = Arc::new(match poly {
        Some(poly) => FieldTower::with_polynomial(p, s, m, poly)?,
        None => FieldTower::new(p, s, m)?,
    });
    let geometry = Geometry::new(tower);
    let inc = geometry.incidence_matrix(mu, 0, cyclic)?;
    let mut code = LinearCode::from_parity_sparse(p, inc.matrix().clone());

    let bound_aeg = a_eg(m, mu, mu - 1, s, p)? as usize;
    if cyclic {
        let z = cyclic_eg_root_set(m, mu, s, p)?;
        let n = code.n();
        if n <= 1023 {
            let field = match poly {
                Some(poly) => Field::with_polynomial(p, m * s, poly)?,
                None => Field::new(p, m * s)?,
            };
            let reference = CyclicCode::with_field(Arc::new(field), &z)?;
            let ref_code = code_from_defining_set(&reference)?;
            if !same_row_space_sparse(p, inc.matrix(), ref_code.parity()) {
                return Err(Error::internal(format!(
                    "origin-free incidence null space differs from the cyclic code of its root set (m={m}, mu={mu}, s={s}, p={p})"
                )));
            }
            if code.k() != reference.dimension() {
                return Err(Error::internal("cyclic EG code dimension mismatch"));
            }
        }
        // BCH bound from the consecutive run in Z, alongside the flat-count
        // bound; both hold, record the larger.
        let run = {
            let set: std::collections::BTreeSet<u64> = z.iter().copied().collect();
            let mut r = 0;
            while set.contains(&(r + 1)) {
                r += 1;
            }
            r
        } as usize;
        code.set_distance(DistanceInfo::bound(bound_aeg.max(run + 1)));
    } else {
        code.set_distance(DistanceInfo::bound(bound_aeg + 1));
    }
    Ok(code)
}

fn same_row_space_sparse(p: u32, a: &Csr, b: &GfMat) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    if p == 2 {
        let mut ea = BitEliminator::new(a.cols());
        for r in 0..a.rows() {
            ea.absorb(a.row_bits(r));
        }
        let mut eb = BitEliminator::new(b.cols());
        for r in 0..b.rows() {
            let mut w = vec![0u64; b.cols().div_ceil(64).max(1)];
            for c in 0..b.cols() {
                if b.get(r, c) != 0 {
                    w[c / 64] |= 1 << (c % 64);
                }
            }
            eb.absorb(w);
        }
        ea.into_rref() == eb.into_rref()
    } else {
        let mut ea = ByteEliminator::new(p, a.cols());
        for r in 0..a.rows() {
            let mut row = vec![0u8; a.cols()];
            for (c, v) in a.row_entries(r) {
                row[c as usize] = v;
            }
            ea.absorb(row);
        }
        let mut eb = ByteEliminator::new(p, b.cols());
        for r in 0..b.rows() {
            eb.absorb(b.row_dense(r));
        }
        ea.into_rref() == eb.into_rref()
    }
}

// ---------------------------------------------------------------------------
// Exact distances by enumeration
// ---------------------------------------------------------------------------

fn enum_budget_check(p: u32, k: usize, budget: u128) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..k {
        total = total
            .checked_mul(p as u128)
            .ok_or_else(|| Error::BudgetExceeded("codeword enumeration overflows".into()))?;
        if total > budget {
            return Err(Error::BudgetExceeded(format!(
                "p^k = {p}^{k} exceeds the enumeration budget {budget}"
            )));
        }
    }
    Ok(())
}

/// True minimum nonzero codeword weight, by enumerating all p^k codewords.
pub fn min_distance_exact(code: &LinearCode, budget: u128) -> Result<usize> {
    let report = scan_codewords(code, None, budget)?;
    Ok(report.min_all)
}

/// Outcome of a codeword weight scan.
pub struct WeightOutside {
    /// min weight over codewords of C outside D
    pub weight: usize,
    /// true iff some minimum-weight codeword of C already lies outside D
    pub attains_code_distance: bool,
    /// wt(C)
    pub code_distance: usize,
}

/// Minimum weight over codewords of C that are not in D, with D ⊆ C
/// verified first. Errors if C = D (empty set difference).
pub fn min_weight_outside(c: &LinearCode, d: &LinearCode, budget: u128) -> Result<WeightOutside> {
    if !c.contains_code(d)? {
        return Err(Error::invalid("D is not a subcode of C"));
    }
    if d.k() == c.k() {
        return Err(Error::invalid(
            "C and D have the same dimension: the set difference is empty",
        ));
    }
    let report = scan_codewords(code_ref(c), Some(d), budget)?;
    let weight = report
        .min_outside
        .ok_or_else(|| Error::internal("no codeword found outside D despite dim(C) > dim(D)"))?;
    Ok(WeightOutside {
        weight,
        attains_code_distance: weight == report.min_all,
        code_distance: report.min_all,
    })
}

fn code_ref(c: &LinearCode) -> &LinearCode {
    c
}

struct ScanReport {
    min_all: usize,
    min_outside: Option<usize>,
}

fn scan_codewords(c: &LinearCode, d: Option<&LinearCode>, budget: u128) -> Result<ScanReport> {
    if c.k() == 0 {
        return Err(Error::invalid("zero code has no nonzero codewords"));
    }
    enum_budget_check(c.p(), c.k(), budget)?;
    let n = c.n();
    let k = c.k();
    let p = c.p();
    let mut min_all = usize::MAX;
    let mut min_outside: Option<usize> = None;

    if p == 2 {
        let wpr = n.div_ceil(64).max(1);
        let gen = c.generator();
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|r| {
                let mut w = vec![0u64; wpr];
                for col in 0..n {
                    if gen.get(r, col) != 0 {
                        w[col / 64] |= 1 << (col % 64);
                    }
                }
                w
            })
            .collect();
        let mut cw = vec![0u64; wpr];
        for i in 1u64..(1u64 << k) {
            let bit = i.trailing_zeros() as usize;
            for (w, g) in cw.iter_mut().zip(&rows[bit]) {
                *w ^= g;
            }
            let weight: usize = cw.iter().map(|w| w.count_ones() as usize).sum();
            if weight < min_all {
                min_all = weight;
            }
            if let Some(dcode) = d {
                if weight < min_outside.unwrap_or(usize::MAX) {
                    let word: Vec<u8> = (0..n).map(|c| (cw[c / 64] >> (c % 64) & 1) as u8).collect();
                    if !dcode.contains_word(&word) {
                        min_outside = Some(weight);
                    }
                }
            }
        }
    } else {
        let gen = c.generator();
        let rows: Vec<Vec<u8>> = (0..k).map(|r| gen.row_dense(r)).collect();
        let mut digits = vec![0u8; k];
        let mut cw = vec![0u8; n];
        let total: u128 = (p as u128).pow(k as u32);
        for _ in 1..total {
            // odometer step; each wrap adds the row once more which closes
            // the cycle p·row = 0
            let mut pos = 0;
            loop {
                add_row(&mut cw, &rows[pos], p);
                digits[pos] += 1;
                if (digits[pos] as u32) < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            let weight = cw.iter().filter(|&&x| x != 0).count();
            if weight < min_all {
                min_all = weight;
            }
            if let Some(dcode) = d {
                if weight < min_outside.unwrap_or(usize::MAX) && !dcode.contains_word(&cw) {
                    min_outside = Some(weight);
                }
            }
        }
    }
    Ok(ScanReport {
        min_all,
        min_outside,
    })
}

fn add_row(cw: &mut [u8], row: &[u8], p: u32) {
    for (a, &b) in cw.iter_mut().zip(row) {
        *a = ((*a as u32 + b as u32) % p) as u8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bch_15_3() {
        let c = bch_narrow_sense(2, 4, 3).unwrap();
        assert_eq!(c.defining_set(), &[1, 2, 4, 8]);
        assert_eq!(c.dimension(), 11);
        assert_eq!(c.generator_poly().coeffs(), &[1, 1, 0, 0, 1]); // x^4+x+1
        let lc = code_from_defining_set(&c).unwrap();
        assert_eq!((lc.n(), lc.k()), (15, 11));
    }

    #[test]
    fn bch_delta2_same_as_delta3() {
        let a = bch_narrow_sense(2, 4, 2).unwrap();
        let b = bch_narrow_sense(2, 4, 3).unwrap();
        assert_eq!(a.defining_set(), b.defining_set());
    }

    #[test]
    fn bch_255_5_dimension() {
        let c = bch_narrow_sense(2, 8, 5).unwrap();
        assert_eq!(c.dimension(), 239);
    }

    #[test]
    fn bch_rejects_bad_delta() {
        assert!(bch_narrow_sense(2, 4, 1).is_err());
        assert!(bch_narrow_sense(2, 4, 16).is_err());
    }

    #[test]
    fn eg_root_set_q4() {
        let z = cyclic_eg_root_set(2, 1, 2, 2).unwrap();
        assert_eq!(z, vec![1, 2, 3, 4, 6, 8, 9, 12]);
        let (zperp, delta0) = cyclic_eg_dual_root_set(2, 1, 2, 2).unwrap();
        assert_eq!(zperp, vec![0, 1, 2, 4, 5, 8, 10]);
        assert_eq!(delta0, 3);
    }

    #[test]
    fn eg_root_set_small_binary() {
        let z = cyclic_eg_root_set(2, 1, 1, 2).unwrap();
        assert_eq!(z, vec![1, 2]);
        let c = CyclicCode::new(2, 3, &z).unwrap();
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn delta0_closed_form() {
        assert_eq!(cyclic_eg_dual_root_set(2, 1, 4, 2).unwrap().1, 15);
        assert_eq!(cyclic_eg_dual_root_set(3, 2, 1, 2).unwrap().1, 3);
        assert_eq!(cyclic_eg_dual_root_set(2, 1, 2, 3).unwrap().1, 8); // 3^2 - 1
    }

    #[test]
    fn defining_set_edge_cases() {
        // empty defining set: the whole space, generator 1
        let c = CyclicCode::new(2, 15, &[]).unwrap();
        assert_eq!(c.dimension(), 15);
        assert_eq!(c.generator_poly().coeffs(), &[1]);
        let lc = code_from_defining_set(&c).unwrap();
        assert_eq!(lc.k(), 15);
        // full defining set: the zero code
        let all: Vec<u64> = (0..15).collect();
        let c = CyclicCode::new(2, 15, &all).unwrap();
        assert_eq!(c.dimension(), 0);
        let lc = code_from_defining_set(&c).unwrap();
        assert_eq!(lc.k(), 0);
    }

    #[test]
    fn non_closed_set_rejected() {
        assert!(CyclicCode::new(2, 15, &[1]).is_err());
    }

    #[test]
    fn eg_ldpc_15_7() {
        let code = eg_ldpc_type1(2, 1, 2, 2, true).unwrap();
        assert_eq!((code.n(), code.k()), (15, 7));
        assert_eq!(code.distance().lower_bound, Some(5));
        let d = min_distance_exact(&code, DISTANCE_ENUM_BUDGET).unwrap();
        assert_eq!(d, 5);
    }

    #[test]
    fn eg_ldpc_repetition() {
        let code = eg_ldpc_type1(2, 1, 1, 2, false).unwrap();
        assert_eq!((code.n(), code.k()), (4, 1));
        assert_eq!(min_distance_exact(&code, DISTANCE_ENUM_BUDGET).unwrap(), 4);
    }

    #[test]
    fn min_distance_bch() {
        let lc = code_from_defining_set(&bch_narrow_sense(2, 4, 3).unwrap()).unwrap();
        assert_eq!(min_distance_exact(&lc, DISTANCE_ENUM_BUDGET).unwrap(), 3);
    }

    #[test]
    fn weight_outside_trivial_d() {
        let c = code_from_defining_set(&bch_narrow_sense(2, 4, 3).unwrap()).unwrap();
        // D = zero code
        let zero = {
            let mut h = GfMat::zero(2, 15, 15);
            for i in 0..15 {
                h.set(i, i, 1);
            }
            LinearCode::from_parity_dense(h)
        };
        let w = min_weight_outside(&c, &zero, DISTANCE_ENUM_BUDGET).unwrap();
        assert_eq!(w.weight, 3);
        assert!(w.attains_code_distance);
    }

    #[test]
    fn weight_outside_degenerate() {
        let c = code_from_defining_set(&bch_narrow_sense(2, 4, 3).unwrap()).unwrap();
        assert!(min_weight_outside(&c, &c, DISTANCE_ENUM_BUDGET).is_err());
    }

    #[test]
    fn dual_consistency_matrix_level() {
        // defining set of the dual equals {-h : h not in defining set}
        for set in [vec![1u64, 2, 4, 8], vec![0, 3, 6, 9, 12, 5, 10]] {
            let c = CyclicCode::new(2, 15, &set).unwrap();
            let lc = code_from_defining_set(&c).unwrap();
            let dual_set = c.dual_defining_set();
            let dual_cyclic = CyclicCode::new(2, 15, &dual_set).unwrap();
            let dual_lc = code_from_defining_set(&dual_cyclic).unwrap();
            assert!(lc.dual().same_code(&dual_lc));
        }
    }

    #[test]
    fn budget_refusal() {
        let code = eg_ldpc_type1(2, 1, 4, 2, true).unwrap(); // [255,175]
        assert!(matches!(
            min_distance_exact(&code, DISTANCE_ENUM_BUDGET),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn eg_ldpc_255_175() {
        let code = eg_ldpc_type1(2, 1, 4, 2, true).unwrap();
        assert_eq!((code.n(), code.k()), (255, 175));
        assert_eq!(code.distance().lower_bound, Some(17));
    }

    #[test]
    fn bch_bound_holds_on_enumerable_instances() {
        for delta in 2..=15u64 {
            let c = bch_narrow_sense(2, 4, delta).unwrap();
            if c.dimension() == 0 {
                continue;
            }
            let lc = code_from_defining_set(&c).unwrap();
            let d = min_distance_exact(&lc, DISTANCE_ENUM_BUDGET).unwrap();
            assert!(d >= delta as usize, "BCH({delta}) has distance {d}");
        }
        for delta in [15u64, 21, 23] {
            let c = bch_narrow_sense(2, 6, delta).unwrap();
            if c.dimension() == 0 || c.dimension() > 24 {
                continue;
            }
            let lc = code_from_defining_set(&c).unwrap();
            let d = min_distance_exact(&lc, DISTANCE_ENUM_BUDGET).unwrap();
            assert!(d >= delta as usize, "BCH({delta}) n=63 has distance {d}");
        }
        // one odd characteristic instance
        let c = bch_narrow_sense(3, 2, 3).unwrap();
        let lc = code_from_defining_set(&c).unwrap();
        let d = min_distance_exact(&lc, DISTANCE_ENUM_BUDGET).unwrap();
        assert!(d >= 3);
    }
}
