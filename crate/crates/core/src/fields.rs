//! Finite field arithmetic for the tower GF(p) ⊂ GF(p^s) ⊂ GF(p^{ms}).
//!
//! Elements are stored as `u32` in "vector representation": the base-p digit
//! string of the residue polynomial's coefficients, lowest degree first. For
//! p = 2 this is the usual bit representation. Multiplicative structure comes
//! from exp/log tables built against a fixed primitive element α (the residue
//! of x modulo the primitive polynomial), so multiplication and inversion are
//! O(1) lookups while addition is digit-wise mod p.

use crate::error::{Error, Result};

/// Largest supported field, p^degree ≤ 2^20.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Sentinel stored in the log table at index 0.
const LOG_ZERO: u32 = u32::MAX;

/// Built-in primitive polynomials, one per (p, degree), coefficients lowest
/// degree first with a monic leading 1. Keeping a fixed table makes the
/// labeling of α reproducible across runs; callers may still pass their own
/// polynomial to [`Field::with_polynomial`].
pub const PRIMITIVE_POLYS: &[(u32, usize, &[u8])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 0, 0, 1, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]),
    (2, 17, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 18, &[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (
        2,
        19,
        &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    ),
    (
        2,
        20,
        &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    ),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 1, &[2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The built-in primitive polynomial for GF(p^degree).
pub fn builtin_primitive_poly(p: u32, degree: usize) -> Result<Vec<u8>> {
    PRIMITIVE_POLYS
        .iter()
        .find(|&&(tp, td, _)| tp == p && td == degree)
        .map(|&(_, _, c)| c.to_vec())
        .ok_or_else(|| {
            Error::invalid(format!(
                "no built-in primitive polynomial for GF({p}^{degree}); supply one explicitly"
            ))
        })
}

/// GF(p^degree) with exp/log tables over a fixed primitive element.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    degree: usize,
    size: u32,
    primitive_poly: Vec<u8>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    /// Build GF(p^degree) with the built-in primitive polynomial.
    pub fn new(p: u32, degree: usize) -> Result<Field> {
        let poly = builtin_primitive_poly(p, degree)?;
        Field::with_polynomial(p, degree, &poly)
    }

    /// Build GF(p^degree) from an explicit primitive polynomial (coefficients
    /// lowest degree first, monic). Rejects reducible and non-primitive
    /// polynomials: the residue of x must have multiplicative order
    /// p^degree − 1, which forces the quotient ring to be a field.
    pub fn with_polynomial(p: u32, degree: usize, poly: &[u8]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let size = (p as u64).checked_pow(degree as u32).filter(|&s| s <= MAX_FIELD_SIZE);
        let size = match size {
            Some(s) => s as u32,
            None => {
                return Err(Error::invalid(format!(
                    "field GF({p}^{degree}) exceeds the supported size 2^20"
                )))
            }
        };
        if poly.len() != degree + 1 {
            return Err(Error::invalid(format!(
                "primitive polynomial must have degree {degree}"
            )));
        }
        if poly[degree] % p as u8 != 1 {
            return Err(Error::invalid("primitive polynomial must be monic"));
        }
        if poly.iter().any(|&c| c as u32 >= p) {
            return Err(Error::invalid("polynomial coefficient out of range"));
        }
        if poly[0] == 0 {
            return Err(Error::invalid(
                "polynomial has zero constant term, hence reducible",
            ));
        }

        let n = size - 1;
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![LOG_ZERO; size as usize];
        // alpha = residue of x; for degree 1 that is -poly[0].
        let mut cur: u32 = 1;
        for i in 0..n {
            exp[i as usize] = cur;
            if log[cur as usize] != LOG_ZERO {
                // Powers of x repeated before covering all nonzero elements.
                return Err(Error::invalid(format!(
                    "polynomial is not primitive: x has order {} < {}",
                    i, n
                )));
            }
            log[cur as usize] = i;
            cur = mul_by_x(cur, p, degree, poly);
        }
        if cur != 1 {
            return Err(Error::invalid(format!(
                "polynomial is not primitive: x^{n} != 1"
            )));
        }
        Ok(Field {
            p,
            degree,
            size,
            primitive_poly: poly.to_vec(),
            exp,
            log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements, p^degree.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group, p^degree − 1.
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn primitive_poly(&self) -> &[u8] {
        &self.primitive_poly
    }

    /// The fixed primitive element α.
    pub fn alpha(&self) -> u32 {
        self.alpha_pow(1)
    }

    /// α^e with e reduced mod p^degree − 1.
    pub fn alpha_pow(&self, e: u64) -> u32 {
        self.exp[(e % self.order() as u64) as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, x: u32) -> Option<u32> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize])
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.size
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u32;
        let (mut a, mut b) = (a, b);
        let mut place = 1u32;
        while a != 0 || b != 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u32;
        let mut a = a;
        let mut place = 1u32;
        while a != 0 {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order() as u64;
        let idx = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[idx as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.order();
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = self.order() as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Frobenius-power trace down to the subfield GF(p^sub_degree):
    /// Σ_{i=0}^{l−1} x^{q^i} with q = p^sub_degree and l·sub_degree = degree.
    /// The result lands in the embedded subfield.
    pub fn trace_to_subfield(&self, sub_degree: usize, x: u32) -> Result<u32> {
        if sub_degree == 0 || !self.degree.is_multiple_of(sub_degree) {
            return Err(Error::invalid(format!(
                "GF({}^{}) is not an extension of GF({}^{})",
                self.p, self.degree, self.p, sub_degree
            )));
        }
        if !self.contains(x) {
            return Err(Error::invalid("element outside the field"));
        }
        let l = self.degree / sub_degree;
        let q = (self.p as u64).pow(sub_degree as u32);
        let mut acc = 0u32;
        let mut e = 1u64;
        for _ in 0..l {
            acc = self.add(acc, self.pow(x, e));
            e *= q;
        }
        Ok(acc)
    }

    /// View of the subfield GF(p^sub_degree) inside this field.
    pub fn subfield(&self, sub_degree: usize) -> Result<SubfieldView<'_>> {
        SubfieldView::new(self, sub_degree)
    }
}

fn mul_by_x(a: u32, p: u32, degree: usize, poly: &[u8]) -> u32 {
    // Shift digits up one place, then reduce the overflow digit against the
    // monic primitive polynomial.
    let mut digits = vec![0u32; degree + 1];
    let mut a = a;
    for d in digits.iter_mut().skip(1) {
        *d = a % p;
        a /= p;
    }
    let top = digits[degree];
    if top != 0 {
        for i in 0..degree {
            let sub = (top * poly[i] as u32) % p;
            digits[i] = (digits[i] + p - sub) % p;
        }
    }
    let mut out = 0u32;
    let mut place = 1u32;
    for &d in digits.iter().take(degree) {
        out += d * place;
        place *= p;
    }
    out
}

/// The subfield GF(p^d) of GF(p^degree), elements represented inside the big
/// field. Provides membership tests, enumeration, and decomposition of big
/// field elements over the basis {1, α, ..., α^{l−1}} with subfield scalars.
pub struct SubfieldView<'a> {
    field: &'a Field,
    sub_degree: usize,
    /// Extension degree of the big field over the subfield.
    pub l: usize,
    step: u32,
    /// All q = p^d subfield elements (big-field representation), zero first,
    /// then powers of the subfield generator α^step.
    elements: Vec<u32>,
    /// Inverse of the GF(p)-matrix taking subfield coordinates to vector
    /// representation digits; used by `decompose`.
    decomp: Vec<Vec<u8>>,
}

impl<'a> SubfieldView<'a> {
    fn new(field: &'a Field, sub_degree: usize) -> Result<SubfieldView<'a>> {
        if sub_degree == 0 || !field.degree.is_multiple_of(sub_degree) {
            return Err(Error::invalid(format!(
                "degree {} does not divide {}",
                sub_degree, field.degree
            )));
        }
        let l = field.degree / sub_degree;
        let q = (field.p as u64).pow(sub_degree as u32) as u32;
        let step = field.order() / (q - 1);
        let mut elements = Vec::with_capacity(q as usize);
        elements.push(0);
        for k in 0..(q - 1) as u64 {
            elements.push(field.alpha_pow(k * step as u64));
        }
        // GF(p)-basis of the subfield: powers of the generator w = α^step.
        let w = field.alpha_pow(step as u64);
        let deg = field.degree;
        let p = field.p;
        let mut mat = vec![vec![0u8; deg]; deg];
        let mut col = 0;
        for j in 0..l {
            let aj = field.alpha_pow(j as u64);
            for b in 0..sub_degree {
                let wb = field.pow(w, b as u64);
                let v = field.mul(wb, aj);
                let mut v = v;
                for row in mat.iter_mut().take(deg) {
                    row[col] = (v % p) as u8;
                    v /= p;
                }
                col += 1;
            }
        }
        let decomp = invert_gfp(&mat, p).ok_or_else(|| {
            Error::internal("subfield basis matrix is singular".to_string())
        })?;
        Ok(SubfieldView {
            field,
            sub_degree,
            l,
            step,
            elements,
            decomp,
        })
    }

    pub fn size(&self) -> u32 {
        self.elements.len() as u32
    }

    /// All subfield elements in big-field representation (zero first).
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Generator of the subfield's multiplicative group, α^step.
    pub fn generator(&self) -> u32 {
        self.field.alpha_pow(self.step as u64)
    }

    pub fn contains(&self, x: u32) -> bool {
        match self.field.log(x) {
            None => true,
            Some(e) => e % self.step == 0,
        }
    }

    /// Trace from the big field onto this subfield.
    pub fn trace(&self, x: u32) -> u32 {
        let t = self
            .field
            .trace_to_subfield(self.sub_degree, x)
            .expect("valid subfield");
        debug_assert!(self.contains(t));
        t
    }

    /// Coordinates c_0..c_{l−1} (subfield elements, big-field representation)
    /// with x = Σ c_j α^j.
    pub fn decompose(&self, x: u32) -> Vec<u32> {
        let p = self.field.p;
        let deg = self.field.degree;
        let mut digits = vec![0u8; deg];
        let mut v = x;
        for d in digits.iter_mut() {
            *d = (v % p) as u8;
            v /= p;
        }
        // coords over GF(p) in the (w^b α^j) basis
        let mut coords = vec![0u32; deg];
        for (r, row) in self.decomp.iter().enumerate() {
            let mut acc = 0u32;
            for (c, &m) in row.iter().enumerate() {
                acc = (acc + m as u32 * digits[c] as u32) % p;
            }
            coords[r] = acc;
        }
        let w = self.generator();
        let mut out = Vec::with_capacity(self.l);
        for j in 0..self.l {
            let mut cj = 0u32;
            for b in 0..self.sub_degree {
                let t = coords[j * self.sub_degree + b];
                if t != 0 {
                    let scal = prime_scalar_times(self.field, t, self.field.pow(w, b as u64));
                    cj = self.field.add(cj, scal);
                }
            }
            out.push(cj);
        }
        out
    }
}

/// t·x for a prime-subfield scalar t (0 ≤ t < p).
fn prime_scalar_times(f: &Field, t: u32, x: u32) -> u32 {
    let mut acc = 0;
    for _ in 0..t {
        acc = f.add(acc, x);
    }
    acc
}

fn invert_gfp(mat: &[Vec<u8>], p: u32) -> Option<Vec<Vec<u8>>> {
    let n = mat.len();
    let mut a: Vec<Vec<u32>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| x as u32).collect())
        .collect();
    let mut inv: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = mod_inv(a[col][col], p);
        for j in 0..n {
            a[col][j] = a[col][j] * d % p;
            inv[col][j] = inv[col][j] * d % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] = (a[r][j] + (p - f) * a[col][j]) % p;
                    inv[r][j] = (inv[r][j] + (p - f) * inv[col][j]) % p;
                }
            }
        }
    }
    Some(
        inv.into_iter()
            .map(|r| r.into_iter().map(|x| x as u8).collect())
            .collect(),
    )
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is a small prime
    let mut x = 1u32;
    for _ in 0..p - 2 {
        x = x * a % p;
    }
    x
}

/// The tower GF(p) ⊂ GF(p^s) ⊂ GF(p^{ms}) used by the geometry and code
/// constructions. The middle field is the embedded subfield of the big one,
/// with its generator pinned to α^{(p^{ms}−1)/(p^s−1)}.
pub struct FieldTower {
    p: u32,
    s: usize,
    m: usize,
    big: Field,
}

impl FieldTower {
    pub fn new(p: u32, s: usize, m: usize) -> Result<FieldTower> {
        let big = Field::new(p, m * s)?;
        Ok(FieldTower { p, s, m, big })
    }

    pub fn with_polynomial(p: u32, s: usize, m: usize, poly: &[u8]) -> Result<FieldTower> {
        let big = Field::with_polynomial(p, m * s, poly)?;
        Ok(FieldTower { p, s, m, big })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// q = p^s, the geometry's coordinate field size.
    pub fn q(&self) -> u32 {
        (self.p as u64).pow(self.s as u32) as u32
    }

    /// GF(p^{ms})
    pub fn big(&self) -> &Field {
        &self.big
    }

    /// The embedded GF(p^s).
    pub fn mid(&self) -> SubfieldView<'_> {
        self.big.subfield(self.s).expect("s divides ms")
    }
}

/// Sum of the base-q digits of h.
pub fn q_ary_weight(h: u64, q: u64) -> u64 {
    assert!(q >= 2, "base must be at least 2");
    let mut h = h;
    let mut w = 0;
    while h != 0 {
        w += h % q;
        h /= q;
    }
    w
}

/// The p-cyclotomic coset of h modulo n: {h·p^j mod n}.
pub fn cyclotomic_coset(h: u64, p: u64, n: u64) -> Result<Vec<u64>> {
    if gcd(p, n) != 1 {
        return Err(Error::invalid(format!("gcd({p}, {n}) != 1")));
    }
    if h >= n {
        return Err(Error::invalid(format!("exponent {h} not below modulus {n}")));
    }
    let mut coset = vec![h];
    let mut cur = h * p % n;
    while cur != h {
        coset.push(cur);
        cur = cur * p % n;
    }
    coset.sort_unstable();
    Ok(coset)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
