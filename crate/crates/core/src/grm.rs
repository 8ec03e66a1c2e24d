//! Generalized Reed-Muller codes in cyclic form, subfield subcodes, and
//! trace codes. Everything here runs at desk scale: codes are carried by
//! dense generator matrices whose entries live in a table-backed ambient
//! field, with the code's own alphabet being an embedded subfield.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{q_ary_weight, Field};
use crate::linalg::{FieldMat, GfMat};
use crate::poly::FieldPoly;

/// A linear code over GF(p^sub_degree), entries embedded in an ambient
/// field GF(p^D) with sub_degree | D.
#[derive(Debug, Clone)]
pub struct FieldCode {
    field: Arc<Field>,
    sub_degree: usize,
    gen: FieldMat,
}

impl FieldCode {
    pub fn new(field: Arc<Field>, sub_degree: usize, gen: FieldMat) -> Result<FieldCode> {
        if sub_degree == 0 || !field.degree().is_multiple_of(sub_degree) {
            return Err(Error::invalid("alphabet degree must divide the ambient degree"));
        }
        let view = field.subfield(sub_degree)?;
        for r in 0..gen.rows() {
            if gen.row(r).iter().any(|&x| !view.contains(x)) {
                return Err(Error::invalid("generator entry outside the code's alphabet"));
            }
        }
        Ok(FieldCode {
            field,
            sub_degree,
            gen,
        })
    }

    pub fn full_space(field: Arc<Field>, sub_degree: usize, n: usize) -> Result<FieldCode> {
        let mut gen = FieldMat::zero(n, n);
        for i in 0..n {
            gen.set(i, i, 1);
        }
        FieldCode::new(field, sub_degree, gen)
    }

    pub fn zero_code(field: Arc<Field>, sub_degree: usize, n: usize) -> Result<FieldCode> {
        FieldCode::new(field, sub_degree, FieldMat::zero(0, n))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Degree of the code's alphabet GF(p^sub_degree).
    pub fn alphabet_degree(&self) -> usize {
        self.sub_degree
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn generator(&self) -> &FieldMat {
        &self.gen
    }

    pub fn dimension(&self) -> usize {
        self.gen.rank(&self.field)
    }

    /// The Euclidean dual over the code's alphabet.
    pub fn dual(&self) -> FieldCode {
        FieldCode {
            field: self.field.clone(),
            sub_degree: self.sub_degree,
            gen: self.gen.kernel(&self.field),
        }
    }

    pub fn contains_code(&self, other: &FieldCode) -> bool {
        (0..other.gen.rows()).all(|r| self.gen.contains_row(&self.field, other.gen.row(r)))
    }

    pub fn same_code(&self, other: &FieldCode) -> bool {
        self.gen.same_row_space(&self.field, &other.gen)
    }

    /// The subfield subcode over GF(p^d): codewords of this code all of
    /// whose coordinates lie in GF(p^d). Computed by expanding the parity
    /// constraints over a GF(p^d)-basis of the ambient field.
    pub fn subfield_subcode(&self, d: usize) -> Result<FieldCode> {
        if d == 0 || !self.sub_degree.is_multiple_of(d) {
            return Err(Error::invalid(format!(
                "GF(p^{d}) is not a subfield of the code's alphabet GF(p^{})",
                self.sub_degree
            )));
        }
        let view = self.field.subfield(d)?;
        let parity = self.gen.kernel(&self.field);
        let n = self.n();
        let mut expanded = FieldMat::zero(0, n);
        for r in 0..parity.rows() {
            let decomposed: Vec<Vec<u32>> =
                parity.row(r).iter().map(|&h| view.decompose(h)).collect();
            for j in 0..view.l {
                let row: Vec<u32> = decomposed.iter().map(|comps| comps[j]).collect();
                if row.iter().any(|&x| x != 0) {
                    expanded = push(expanded, row);
                }
            }
        }
        let gen = expanded.kernel(&self.field);
        FieldCode::new(self.field.clone(), d, gen)
    }

    /// The trace code over GF(p^d): coordinatewise relative traces of all
    /// codewords, spanned by the traces of β·g for generator rows g and β
    /// running over a GF(p^d)-basis of the alphabet.
    pub fn trace_code(&self, d: usize) -> Result<FieldCode> {
        if d == 0 || !self.sub_degree.is_multiple_of(d) {
            return Err(Error::invalid(format!(
                "GF(p^{d}) is not a subfield of the code's alphabet GF(p^{})",
                self.sub_degree
            )));
        }
        let f = &self.field;
        let e = self.sub_degree;
        let reps = e / d;
        // basis of GF(p^e) over GF(p^d): powers of the GF(p^e) generator
        let gamma = f.alpha_pow((f.order() / (f.p().pow(e as u32) - 1)) as u64);
        let n = self.n();
        let mut rows = FieldMat::zero(0, n);
        for r in 0..self.gen.rows() {
            for j in 0..reps {
                let beta = f.pow(gamma, j as u64);
                let row: Vec<u32> = self
                    .gen
                    .row(r)
                    .iter()
                    .map(|&x| relative_trace(f, f.mul(beta, x), e, d))
                    .collect();
                if row.iter().any(|&x| x != 0) {
                    rows = push(rows, row);
                }
            }
        }
        let gen = rows.rref(f);
        FieldCode::new(self.field.clone(), d, gen)
    }

    /// Convert a prime-alphabet code to a `GfMat`-backed generator.
    pub fn prime_generator(&self) -> Result<GfMat> {
        if self.sub_degree != 1 {
            return Err(Error::invalid("code alphabet is not the prime field"));
        }
        let p = self.field.p();
        let mut g = GfMat::zero(p, self.gen.rows(), self.n());
        for r in 0..self.gen.rows() {
            for c in 0..self.n() {
                let v = self.gen.get(r, c);
                debug_assert!(v < p, "prime subfield elements are the constants");
                g.set(r, c, v as u8);
            }
        }
        Ok(g)
    }
}

/// Relative trace from GF(p^from) down to GF(p^to), both embedded in `f`:
/// Σ_{i<from/to} x^{p^{to·i}}.
pub fn relative_trace(f: &Field, x: u32, from: usize, to: usize) -> u32 {
    debug_assert!(from.is_multiple_of(to) && f.degree().is_multiple_of(from));
    let mut acc = 0;
    let mut e = 1u64;
    let q = (f.p() as u64).pow(to as u32);
    for _ in 0..from / to {
        acc = f.add(acc, f.pow(x, e));
        e = e.wrapping_mul(q);
    }
    acc
}

fn push(mut m: FieldMat, row: Vec<u32>) -> FieldMat {
    let cols = m.cols();
    let mut rows: Vec<Vec<u32>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    rows.push(row);
    m = FieldMat::from_rows(rows, cols);
    m
}

/// Dual order of a generalized Reed-Muller code: ν^⊥ = m(q−1) − 1 − ν.
pub fn grm_dual_order(nu: u64, m: usize, q: u64) -> Result<u64> {
    let top = m as u64 * (q - 1);
    if nu + 1 > top {
        return Err(Error::invalid(format!(
            "order {nu} out of range 0..={}",
            top - 1
        )));
    }
    Ok(top - 1 - nu)
}

/// Root-exponent set of the cyclic (punctured) GRM code of order ν over
/// GF(q), length q^m − 1: the α^j with 0 < W_q(j) ≤ m(q−1) − ν − 1.
pub fn grm_cyclic_root_set(nu: u64, m: usize, q: u64) -> Result<Vec<u64>> {
    let top = m as u64 * (q - 1);
    if nu + 1 > top {
        return Err(Error::invalid(format!(
            "order {nu} out of range 0..={}",
            top - 1
        )));
    }
    let n = q.pow(m as u32) - 1;
    let cap = top - nu - 1;
    Ok((1..n)
        .filter(|&j| {
            let w = q_ary_weight(j, q);
            w > 0 && w <= cap
        })
        .collect())
}

/// Cyclic code over the embedded subfield GF(p^sub_degree) of `field`,
/// length field.order(), built from a defining set that must be closed
/// under multiplication by q = p^sub_degree mod n.
pub fn cyclic_code_over_subfield(
    field: &Arc<Field>,
    sub_degree: usize,
    defining_set: &[u64],
) -> Result<FieldCode> {
    if sub_degree == 0 || !field.degree().is_multiple_of(sub_degree) {
        return Err(Error::invalid("alphabet degree must divide the ambient degree"));
    }
    let n = field.order() as u64;
    let q = (field.p() as u64).pow(sub_degree as u32);
    let mut set = defining_set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.iter().any(|&h| h >= n) {
        return Err(Error::invalid("root exponent out of range"));
    }
    for &h in &set {
        if set.binary_search(&(h * q % n)).is_err() {
            return Err(Error::invalid(
                "defining set is not closed under multiplication by q",
            ));
        }
    }
    let view = field.subfield(sub_degree)?;
    // generator polynomial as a product over q-cyclotomic cosets
    let mut g = FieldPoly::one();
    let mut seen = vec![false; n as usize];
    for &h in &set {
        if seen[h as usize] {
            continue;
        }
        let mut coset = vec![h];
        seen[h as usize] = true;
        let mut cur = h * q % n;
        while cur != h {
            coset.push(cur);
            seen[cur as usize] = true;
            cur = cur * q % n;
        }
        let mp = FieldPoly::from_root_exponents(field, &coset);
        if mp.coeffs().iter().any(|&c| !view.contains(c)) {
            return Err(Error::internal(
                "minimal polynomial coefficient left the code alphabet",
            ));
        }
        g = g.mul(field, &mp);
    }
    let k = n as usize - set.len();
    let mut gen = FieldMat::zero(k, n as usize);
    for r in 0..k {
        for (j, &c) in g.coeffs().iter().enumerate() {
            gen.set(r, r + j, c);
        }
    }
    FieldCode::new(field.clone(), sub_degree, gen)
}

/// Cyclic GRM code of order ν over GF(q = p^sub_degree), length q^m − 1,
/// inside the ambient field GF(q^m).
pub fn grm_cyclic(field: &Arc<Field>, sub_degree: usize, nu: u64) -> Result<FieldCode> {
    if !field.degree().is_multiple_of(sub_degree) {
        return Err(Error::invalid("alphabet degree must divide the ambient degree"));
    }
    let m = field.degree() / sub_degree;
    let q = (field.p() as u64).pow(sub_degree as u32);
    let set = grm_cyclic_root_set(nu, m, q)?;
    cyclic_code_over_subfield(field, sub_degree, &set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_order_formula() {
        assert_eq!(grm_dual_order(0, 3, 4).unwrap(), 8);
        assert_eq!(grm_dual_order(2, 2, 4).unwrap(), 3);
        // involution
        for nu in 0..6 {
            let d = grm_dual_order(nu, 2, 4).unwrap();
            assert_eq!(grm_dual_order(d, 2, 4).unwrap(), nu);
        }
        assert!(grm_dual_order(6, 2, 4).is_err());
    }

    #[test]
    fn grm_q4_dimensions() {
        let f = Arc::new(Field::new(2, 4).unwrap());
        // order 2 over GF(4), length 15: 9 roots -> [15, 6]
        let c = grm_cyclic(&f, 2, 2).unwrap();
        assert_eq!((c.n(), c.dimension()), (15, 6));
        // order 3: roots of weight <= 2 -> [15, 10]
        let c3 = grm_cyclic(&f, 2, 3).unwrap();
        assert_eq!((c3.n(), c3.dimension()), (15, 10));
    }

    #[test]
    fn subfield_subcode_trivial_cases() {
        let f = Arc::new(Field::new(2, 2).unwrap());
        let full = FieldCode::full_space(f.clone(), 2, 5).unwrap();
        let sub = full.subfield_subcode(1).unwrap();
        assert_eq!(sub.dimension(), 5); // GF(2)^5
        let zero = FieldCode::zero_code(f, 2, 5).unwrap();
        let sub0 = zero.subfield_subcode(1).unwrap();
        assert_eq!(sub0.dimension(), 0);
        let tr0 = {
            let f = Arc::new(Field::new(2, 2).unwrap());
            FieldCode::zero_code(f, 2, 5).unwrap().trace_code(1).unwrap()
        };
        assert_eq!(tr0.dimension(), 0);
    }

    #[test]
    fn dual_of_cyclic_matches_negated_complement() {
        let f = Arc::new(Field::new(2, 4).unwrap());
        let c = grm_cyclic(&f, 2, 2).unwrap();
        let set = grm_cyclic_root_set(2, 2, 4).unwrap();
        let n = 15u64;
        let dual_set: Vec<u64> = (0..n)
            .filter(|h| set.binary_search(h).is_err())
            .map(|h| (n - h) % n)
            .collect();
        let dual = cyclic_code_over_subfield(&f, 2, &dual_set).unwrap();
        assert!(c.dual().same_code(&dual));
    }

    #[test]
    fn relative_trace_collapses_correctly() {
        // tr from GF(4) to GF(2) computed inside GF(16) must use the
        // relative trace, not the absolute one.
        let f = Field::new(2, 4).unwrap();
        let v4 = f.subfield(2).unwrap();
        let mut image = std::collections::HashSet::new();
        for &x in v4.elements() {
            let t = relative_trace(&f, x, 2, 1);
            assert!(t < 2, "trace must land in GF(2)");
            image.insert(t);
        }
        assert_eq!(image.len(), 2); // surjective
    }
}
