//! Asymmetric CSS code assembly: the nesting check, parameter computation,
//! and the two systematic constructions (EG-LDPC pairs and BCH paired with a
//! cyclic EG-LDPC code).

use crate::codes::{
    bch_narrow_sense_with_poly, code_from_defining_set, cyclic_eg_dual_root_set,
    eg_ldpc_type1_with_poly, min_weight_outside, DistanceInfo, LinearCode,
};
use crate::error::{Error, Result};
use crate::fields::builtin_primitive_poly;
use crate::geometry::a_eg;

/// Exact CSS distances are computed only when the enumerated side stays
/// within this budget and the length is at most `CSS_EXACT_MAX_N`.
pub const CSS_EXACT_BUDGET: u128 = 1 << 26;
pub const CSS_EXACT_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum ConstructionTag {
    EgEg {
        m: usize,
        mu_x: usize,
        mu_z: usize,
        s: usize,
        p: u32,
    },
    BchLdpc {
        m: usize,
        mu: usize,
        s: usize,
        p: u32,
        delta: u64,
    },
    Manual,
}

impl ConstructionTag {
    pub fn name(&self) -> &'static str {
        match self {
            ConstructionTag::EgEg { .. } => "eg-eg",
            ConstructionTag::BchLdpc { .. } => "bch-ldpc",
            ConstructionTag::Manual => "manual",
        }
    }
}

/// A verified asymmetric CSS code pair with parameters [[n, k, d_x/d_z]]_p.
#[derive(Debug, Clone)]
pub struct AsymmetricCssCode {
    c_x: LinearCode,
    c_z: LinearCode,
    n: usize,
    k: usize,
    d_x: DistanceInfo,
    d_z: DistanceInfo,
    pure: Option<bool>,
    construction: ConstructionTag,
    /// Primitive polynomial of GF(p^{ms}) behind the construction; empty for
    /// manually assembled pairs.
    primitive_poly: Vec<u8>,
}

impl AsymmetricCssCode {
    pub fn c_x(&self) -> &LinearCode {
        &self.c_x
    }

    pub fn c_z(&self) -> &LinearCode {
        &self.c_z
    }

    pub fn p(&self) -> u32 {
        self.c_x.p()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_x(&self) -> &DistanceInfo {
        &self.d_x
    }

    pub fn d_z(&self) -> &DistanceInfo {
        &self.d_z
    }

    pub fn pure(&self) -> Option<bool> {
        self.pure
    }

    pub fn construction(&self) -> &ConstructionTag {
        &self.construction
    }

    pub fn primitive_poly(&self) -> &[u8] {
        &self.primitive_poly
    }

    /// Design distance of the bounded-distance X decoder, when the X side is
    /// a BCH code.
    pub fn bch_delta(&self) -> Option<u64> {
        match self.construction {
            ConstructionTag::BchLdpc { delta, .. } => Some(delta),
            _ => None,
        }
    }

    /// `[[n,k,dx/dz]]_p` with `?` for unknown distances.
    pub fn summary(&self) -> String {
        let fmt = |d: &DistanceInfo| match d.value() {
            Some(v) => v.to_string(),
            None => "?".to_string(),
        };
        format!(
            "[[{},{},{}/{}]]_{}",
            self.n,
            self.k,
            fmt(&self.d_x),
            fmt(&self.d_z),
            self.p()
        )
    }
}

/// The CSS nesting condition C_x^⊥ ⊆ C_z, decided as H_z · H_x^T = 0 after a
/// dimension shortcut (n − k_x > k_z forces failure).
pub fn check_nesting(c_x: &LinearCode, c_z: &LinearCode) -> Result<bool> {
    if c_x.n() != c_z.n() {
        return Err(Error::invalid(format!(
            "length mismatch: {} vs {}",
            c_x.n(),
            c_z.n()
        )));
    }
    if c_x.p() != c_z.p() {
        return Err(Error::invalid(format!(
            "characteristic mismatch: {} vs {}",
            c_x.p(),
            c_z.p()
        )));
    }
    if c_x.n() - c_x.k() > c_z.k() {
        return Ok(false);
    }
    c_z.parity().orthogonal_to(c_x.parity())
}

fn side_exact_feasible(p: u32, k: usize, n: usize) -> bool {
    if n > CSS_EXACT_MAX_N {
        return false;
    }
    let mut total: u128 = 1;
    for _ in 0..k {
        match total.checked_mul(p as u128) {
            Some(t) if t <= CSS_EXACT_BUDGET => total = t,
            _ => return false,
        }
    }
    true
}

/// Assemble an asymmetric CSS code from a verified nested pair. Distances
/// are computed exactly (d_x = wt(C_x \ C_z^⊥), d_z = wt(C_z \ C_x^⊥)) when
/// requested and within budget; otherwise the codes' recorded bounds stand.
pub fn css_construct(
    c_x: LinearCode,
    c_z: LinearCode,
    compute_exact_distances: bool,
    construction: ConstructionTag,
) -> Result<AsymmetricCssCode> {
    if !check_nesting(&c_x, &c_z)? {
        return Err(Error::NestingViolation(format!(
            "the dual of C_x ([{},{}]) is not contained in C_z ([{},{}])",
            c_x.n(),
            c_x.k(),
            c_z.n(),
            c_z.k()
        )));
    }
    let n = c_x.n();
    let k = c_x.k() + c_z.k() - n;
    let p = c_x.p();

    let mut d_x = c_x.distance().lower_bound.map(DistanceInfo::bound).unwrap_or(
        DistanceInfo::unknown(),
    );
    let mut d_z = c_z.distance().lower_bound.map(DistanceInfo::bound).unwrap_or(
        DistanceInfo::unknown(),
    );
    let mut pure = None;

    if compute_exact_distances {
        let x_feasible = side_exact_feasible(p, c_x.k(), n) && c_z.k() > 0 && c_x.k() > 0;
        let z_feasible = side_exact_feasible(p, c_z.k(), n) && c_x.k() > 0 && c_z.k() > 0;
        if x_feasible && z_feasible && k > 0 {
            let wx = min_weight_outside(&c_x, &c_z.dual(), CSS_EXACT_BUDGET)?;
            let wz = min_weight_outside(&c_z, &c_x.dual(), CSS_EXACT_BUDGET)?;
            if let Some(b) = d_x.lower_bound {
                if wx.weight < b {
                    return Err(Error::internal(format!(
                        "exact d_x = {} violates the recorded bound {b}",
                        wx.weight
                    )));
                }
            }
            if let Some(b) = d_z.lower_bound {
                if wz.weight < b {
                    return Err(Error::internal(format!(
                        "exact d_z = {} violates the recorded bound {b}",
                        wz.weight
                    )));
                }
            }
            d_x = DistanceInfo::exact(wx.weight);
            d_z = DistanceInfo::exact(wz.weight);
            pure = Some(wx.attains_code_distance && wz.attains_code_distance);
        }
    }

    Ok(AsymmetricCssCode {
        c_x,
        c_z,
        n,
        k,
        d_x,
        d_z,
        pure,
        construction,
        primitive_poly: Vec::new(),
    })
}

/// Asymmetric code from two type-I EG-LDPC codes over the full point set:
/// C_z from μ_z-flats, C_x from μ_x-flats, with 1 < μ_z < m and
/// m − μ_z + 1 ≤ μ_x < m. Distance bounds are
/// d ≥ A_EG(m, μ, μ−1, s, p) + 1 per side. k = 0 is a legitimate boundary
/// outcome and is allowed.
pub fn asymmetric_eg_ldpc(
    m: usize,
    mu_x: usize,
    mu_z: usize,
    s: usize,
    p: u32,
) -> Result<AsymmetricCssCode> {
    asymmetric_eg_ldpc_with_poly(m, mu_x, mu_z, s, p, None)
}

pub fn asymmetric_eg_ldpc_with_poly(
    m: usize,
    mu_x: usize,
    mu_z: usize,
    s: usize,
    p: u32,
    poly: Option<&[u8]>,
) -> Result<AsymmetricCssCode> {
    if !(1 < mu_z && mu_z < m) {
        return Err(Error::invalid(format!(
            "need 1 < mu_z < m, got mu_z={mu_z}, m={m}"
        )));
    }
    if !(m - mu_z < mu_x && mu_x < m) {
        return Err(Error::invalid(format!(
            "need m - mu_z + 1 <= mu_x < m, got mu_x={mu_x}, mu_z={mu_z}, m={m}"
        )));
    }
    let mut c_x = eg_ldpc_type1_with_poly(m, mu_x, s, p, false, poly)?;
    let mut c_z = eg_ldpc_type1_with_poly(m, mu_z, s, p, false, poly)?;
    c_x.set_distance(DistanceInfo::bound(a_eg(m, mu_x, mu_x - 1, s, p)? as usize + 1));
    c_z.set_distance(DistanceInfo::bound(a_eg(m, mu_z, mu_z - 1, s, p)? as usize + 1));
    if !check_nesting(&c_x, &c_z)? {
        return Err(Error::internal(format!(
            "EG-LDPC pair (m={m}, mu_x={mu_x}, mu_z={mu_z}, s={s}, p={p}) failed the nesting \
             check the construction guarantees"
        )));
    }
    let mut code = css_construct(
        c_x,
        c_z,
        true,
        ConstructionTag::EgEg {
            m,
            mu_x,
            mu_z,
            s,
            p,
        },
    )?;
    code.primitive_poly = resolved_poly(p, m * s, poly)?;
    Ok(code)
}

fn resolved_poly(p: u32, degree: usize, poly: Option<&[u8]>) -> Result<Vec<u8>> {
    match poly {
        Some(poly) => Ok(poly.to_vec()),
        None => builtin_primitive_poly(p, degree),
    }
}

/// Asymmetric code pairing a narrow-sense BCH code (X side, design distance
/// δ ≤ δ0 = p^{μs} − 1) with the origin-free cyclic EG-LDPC code (Z side).
/// Bounds: d_x ≥ δ and d_z ≥ A_EG(m, μ, μ−1, s, p).
pub fn asymmetric_bch_ldpc(
    m: usize,
    mu: usize,
    s: usize,
    p: u32,
    delta: u64,
) -> Result<AsymmetricCssCode> {
    asymmetric_bch_ldpc_with_poly(m, mu, s, p, delta, None)
}

pub fn asymmetric_bch_ldpc_with_poly(
    m: usize,
    mu: usize,
    s: usize,
    p: u32,
    delta: u64,
    poly: Option<&[u8]>,
) -> Result<AsymmetricCssCode> {
    let (_, delta0) = cyclic_eg_dual_root_set(m, mu, s, p)?;
    if delta < 2 {
        return Err(Error::invalid("design distance must be at least 2"));
    }
    if delta > delta0 {
        return Err(Error::invalid(format!(
            "design distance {delta} exceeds delta0 = {delta0} for this cyclic EG code"
        )));
    }
    let bch = bch_narrow_sense_with_poly(p, m * s, delta, poly)?;
    let mut c_x = code_from_defining_set(&bch)?;
    c_x.set_distance(DistanceInfo::bound(delta as usize));
    let mut c_z = eg_ldpc_type1_with_poly(m, mu, s, p, true, poly)?;
    c_z.set_distance(DistanceInfo::bound(a_eg(m, mu, mu - 1, s, p)? as usize));
    if !check_nesting(&c_x, &c_z)? {
        return Err(Error::internal(format!(
            "BCH({delta}) and the cyclic EG code (m={m}, mu={mu}, s={s}, p={p}) failed the \
             nesting check the construction guarantees"
        )));
    }
    let mut code = css_construct(
        c_x,
        c_z,
        true,
        ConstructionTag::BchLdpc {
            m,
            mu,
            s,
            p,
            delta,
        },
    )?;
    code.primitive_poly = resolved_poly(p, m * s, poly)?;
    Ok(code)
}

/// Closed-form parameters [[2^{2s}−1, 2^{2s}−3^s−s(δ−1), δ / 2^s+1]] of the
/// m = p = 2 construction; an oracle for `asymmetric_bch_ldpc(2, 1, s, 2, δ)`.
pub fn closed_form_2d_params(s: usize, delta: u64) -> Result<(usize, usize, usize, usize)> {
    if delta.is_multiple_of(2) {
        return Err(Error::invalid("design distance must be odd"));
    }
    if delta < 3 || delta > (1u64 << s) - 1 {
        return Err(Error::invalid(format!(
            "design distance {delta} out of range 3..={}",
            (1u64 << s) - 1
        )));
    }
    let n = (1usize << (2 * s)) - 1;
    let k = (1usize << (2 * s)) - 3usize.pow(s as u32) - s * (delta as usize - 1);
    Ok((n, k, delta as usize, (1 << s) + 1))
}
