//! Polynomials over GF(p) and over table-backed extension fields.
//!
//! Schoolbook arithmetic throughout; degrees stay in the hundreds.

use crate::fields::Field;

/// Polynomial over the prime field GF(p), coefficients lowest degree first.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfpPoly {
    p: u32,
    coeffs: Vec<u8>,
}

impl GfpPoly {
    pub fn new(p: u32, mut coeffs: Vec<u8>) -> GfpPoly {
        for c in coeffs.iter_mut() {
            *c %= p as u8;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        GfpPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> GfpPoly {
        GfpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> GfpPoly {
        GfpPoly { p, coeffs: vec![1] }
    }

    /// x^n - 1
    pub fn x_n_minus_one(p: u32, n: usize) -> GfpPoly {
        let mut c = vec![0u8; n + 1];
        c[0] = (p - 1) as u8;
        c[n] = 1;
        GfpPoly::new(p, c)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &GfpPoly) -> GfpPoly {
        if self.is_zero() || other.is_zero() {
            return GfpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u32 * b as u32) % p;
            }
        }
        GfpPoly::new(self.p, out.into_iter().map(|x| x as u8).collect())
    }

    /// (quotient, remainder) with divisor nonzero.
    pub fn divrem(&self, divisor: &GfpPoly) -> (GfpPoly, GfpPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return (GfpPoly::zero(p), self.clone());
        }
        let dlead = *divisor.coeffs.last().unwrap() as u32;
        let dlead_inv = mod_inv(dlead, p);
        let mut rem: Vec<u32> = self.coeffs.iter().map(|&c| c as u32).collect();
        let dd = divisor.degree();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let factor = rem[i] * dlead_inv % p;
            if factor != 0 {
                quot[i - dd] = factor;
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[i - dd + j] = (rem[i - dd + j] + (p - factor * dc as u32 % p)) % p;
                }
            }
        }
        (
            GfpPoly::new(p, quot.into_iter().map(|x| x as u8).collect()),
            GfpPoly::new(p, rem.into_iter().map(|x| x as u8).collect()),
        )
    }

    pub fn divides(&self, other: &GfpPoly) -> bool {
        other.divrem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &GfpPoly) -> GfpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // normalize monic
        let p = self.p;
        let lead_inv = mod_inv(*a.coeffs.last().unwrap() as u32, p);
        GfpPoly::new(
            p,
            a.coeffs
                .iter()
                .map(|&c| (c as u32 * lead_inv % p) as u8)
                .collect(),
        )
    }

    /// Reverse coefficients and normalize monic: x^deg · f(1/x) / f(0).
    /// Requires nonzero constant term.
    pub fn reciprocal_monic(&self) -> GfpPoly {
        assert!(!self.is_zero() && self.coeffs[0] != 0);
        let p = self.p;
        let c0_inv = mod_inv(self.coeffs[0] as u32, p);
        let coeffs = self
            .coeffs
            .iter()
            .rev()
            .map(|&c| (c as u32 * c0_inv % p) as u8)
            .collect();
        GfpPoly::new(p, coeffs)
    }
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Polynomial with coefficients in a table-backed extension field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPoly {
    coeffs: Vec<u32>,
}

impl FieldPoly {
    pub fn new(mut coeffs: Vec<u32>) -> FieldPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { coeffs }
    }

    pub fn one() -> FieldPoly {
        FieldPoly { coeffs: vec![1] }
    }

    /// x - root
    pub fn linear(f: &Field, root: u32) -> FieldPoly {
        FieldPoly::new(vec![f.neg(root), 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        assert!(!self.coeffs.is_empty());
        self.coeffs.len() - 1
    }

    pub fn mul(&self, f: &Field, other: &FieldPoly) -> FieldPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return FieldPoly::new(vec![]);
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FieldPoly::new(out)
    }

    pub fn eval(&self, f: &Field, x: u32) -> u32 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Minimal polynomial over the subfield of index-divisible logs:
    /// Π_{e in exponent orbit} (x − α^e). The orbit must already be closed
    /// under the intended Frobenius, so the product's coefficients land in
    /// the subfield; callers convert and check.
    pub fn from_root_exponents(f: &Field, exponents: &[u64]) -> FieldPoly {
        let mut acc = FieldPoly::one();
        for &e in exponents {
            acc = acc.mul(f, &FieldPoly::linear(f, f.alpha_pow(e)));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::cyclotomic_coset;

    #[test]
    fn mul_divrem_roundtrip() {
        let a = GfpPoly::new(2, vec![1, 1, 0, 1]);
        let b = GfpPoly::new(2, vec![1, 1]);
        let prod = a.mul(&b);
        let (q, r) = prod.divrem(&a);
        assert!(r.is_zero());
        assert_eq!(q, b);
    }

    #[test]
    fn gf3_divrem() {
        // (x^2 + 2x + 1) / (x + 1) = (x + 1) over GF(3)
        let a = GfpPoly::new(3, vec![1, 2, 1]);
        let b = GfpPoly::new(3, vec![1, 1]);
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, b);
    }

    #[test]
    fn minimal_poly_gf16_coset1() {
        // Coset {1,2,4,8} mod 15 gives x^4 + x + 1 (the defining polynomial).
        let f = Field::new(2, 4).unwrap();
        let coset = cyclotomic_coset(1, 2, 15).unwrap();
        let m = FieldPoly::from_root_exponents(&f, &coset);
        assert_eq!(m.coeffs(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn reciprocal() {
        // x^2 + x + 1 is self-reciprocal over GF(2)
        let a = GfpPoly::new(2, vec![1, 1, 1]);
        assert_eq!(a.reciprocal_monic(), a);
        let b = GfpPoly::new(3, vec![2, 0, 1]); // x^2 + 2
        let r = b.reciprocal_monic(); // (2x^2 + 1)/2 = x^2 + 2 (inv(2)=2 mod 3)
        assert_eq!(r.coeffs(), &[2, 0, 1]);
    }

    #[test]
    fn gcd_of_cyclotomic_factors() {
        // gcd((x^4+x+1)(x^2+x+1), (x^4+x+1)(x+1)) = x^4+x+1 over GF(2)
        let m1 = GfpPoly::new(2, vec![1, 1, 0, 0, 1]);
        let m2 = GfpPoly::new(2, vec![1, 1, 1]);
        let m3 = GfpPoly::new(2, vec![1, 1]);
        let g = m1.mul(&m2).gcd(&m1.mul(&m3));
        assert_eq!(g, m1);
        // gcd with zero
        assert_eq!(m1.gcd(&GfpPoly::zero(2)), m1);
    }

    #[test]
    fn x_n_minus_one_divisibility() {
        let f = Field::new(2, 4).unwrap();
        let coset = cyclotomic_coset(3, 2, 15).unwrap();
        let m = FieldPoly::from_root_exponents(&f, &coset);
        let m2 = GfpPoly::new(2, m.coeffs().iter().map(|&c| c as u8).collect());
        assert!(m2.divides(&GfpPoly::x_n_minus_one(2, 15)));
    }
}
