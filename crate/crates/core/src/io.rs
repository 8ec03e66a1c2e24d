//! Persistence: the alist sparse parity-check interchange format and the
//! JSON code descriptor, plus descriptor re-verification.
//!
//! alist layout: first line `n m` (columns then rows), second line the
//! maximum column and row degrees, then the n column degrees, the m row
//! degrees, one line of 1-based row indices per column, and one line of
//! 1-based column indices per row. Zero padding on the index lines is
//! accepted on read and not produced on write.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::css::{asymmetric_bch_ldpc_with_poly, asymmetric_eg_ldpc_with_poly, AsymmetricCssCode, ConstructionTag};
use crate::error::{Error, Result};
use crate::geometry::a_eg;
use crate::linalg::Csr;

pub fn write_alist(path: &Path, h: &Csr) -> Result<()> {
    fs::write(path, alist_string(h))?;
    Ok(())
}

pub fn alist_string(h: &Csr) -> String {
    let n = h.cols();
    let m = h.rows();
    let col_deg = h.col_weights();
    let row_deg = h.row_weights();
    let max_col = col_deg.iter().copied().max().unwrap_or(0);
    let max_row = row_deg.iter().copied().max().unwrap_or(0);
    let t = h.transpose();
    let mut out = String::new();
    out.push_str(&format!("{n} {m}\n"));
    out.push_str(&format!("{max_col} {max_row}\n"));
    out.push_str(&join(&col_deg));
    out.push('\n');
    out.push_str(&join(&row_deg));
    out.push('\n');
    for c in 0..n {
        out.push_str(&join_one_based(t.row(c)));
        out.push('\n');
    }
    for r in 0..m {
        out.push_str(&join_one_based(h.row(r)));
        out.push('\n');
    }
    out
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_one_based(v: &[u32]) -> String {
    v.iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn read_alist(path: &Path) -> Result<Csr> {
    let text = fs::read_to_string(path)?;
    parse_alist(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn parse_alist(text: &str) -> std::result::Result<Csr, String> {
    let mut nums = text.split_ascii_whitespace().map(|tok| {
        tok.parse::<usize>()
            .map_err(|_| format!("not an integer: {tok:?}"))
    });
    let mut next = |what: &str| -> std::result::Result<usize, String> {
        nums.next().ok_or_else(|| format!("unexpected end before {what}"))?
    };
    let n = next("column count")?;
    let m = next("row count")?;
    let _max_col = next("max column degree")?;
    let _max_row = next("max row degree")?;
    let col_deg: Vec<usize> = (0..n)
        .map(|_| next("column degree"))
        .collect::<std::result::Result<_, _>>()?;
    let row_deg: Vec<usize> = (0..m)
        .map(|_| next("row degree"))
        .collect::<std::result::Result<_, _>>()?;
    // column lists (skipped, but consumed; tolerate zero padding)
    for (c, &deg) in col_deg.iter().enumerate() {
        let mut seen = 0;
        while seen < deg {
            let v = next("column index")?;
            if v == 0 {
                continue;
            }
            if v > m {
                return Err(format!("column {c}: row index {v} out of range"));
            }
            seen += 1;
        }
    }
    let mut csr = Csr::new(n);
    for (r, &deg) in row_deg.iter().enumerate() {
        let mut cols = Vec::with_capacity(deg);
        while cols.len() < deg {
            let v = next("row index")?;
            if v == 0 {
                continue;
            }
            if v > n {
                return Err(format!("row {r}: column index {v} out of range"));
            }
            cols.push((v - 1) as u32);
        }
        cols.sort_unstable();
        csr.push_row_binary(&cols);
    }
    Ok(csr)
}

/// Construction parameters, mirroring the two systematic families.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DescriptorParams {
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_z: Option<usize>,
    pub s: usize,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DistanceField {
    pub value: usize,
    /// "exact" or "bound"
    pub kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AlistFiles {
    pub hx: String,
    pub hz: String,
}

/// The serialized description of a constructed code: enough to reproduce the
/// matrices bit for bit and to re-verify the stored pair.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CodeDescriptor {
    pub construction: String,
    pub params: DescriptorParams,
    pub n: usize,
    pub k: usize,
    pub d_x: DistanceField,
    pub d_z: DistanceField,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure: Option<bool>,
    pub primitive_poly: Vec<u8>,
    pub alist_files: AlistFiles,
}

impl CodeDescriptor {
    pub fn from_code(code: &AsymmetricCssCode, hx: String, hz: String) -> Result<CodeDescriptor> {
        let params = match *code.construction() {
            ConstructionTag::BchLdpc { m, mu, s, p, delta } => DescriptorParams {
                m,
                mu: Some(mu),
                mu_x: None,
                mu_z: None,
                s,
                p,
                delta: Some(delta),
            },
            ConstructionTag::EgEg { m, mu_x, mu_z, s, p } => DescriptorParams {
                m,
                mu: None,
                mu_x: Some(mu_x),
                mu_z: Some(mu_z),
                s,
                p,
                delta: None,
            },
            ConstructionTag::Manual => {
                return Err(Error::invalid(
                    "only systematic constructions can be serialized",
                ))
            }
        };
        let dist = |d: &crate::codes::DistanceInfo| -> Result<DistanceField> {
            match (d.exact, d.lower_bound) {
                (Some(v), _) => Ok(DistanceField {
                    value: v,
                    kind: "exact".into(),
                }),
                (None, Some(v)) => Ok(DistanceField {
                    value: v,
                    kind: "bound".into(),
                }),
                _ => Err(Error::internal("constructed code lacks distance info")),
            }
        };
        Ok(CodeDescriptor {
            construction: code.construction().name().to_string(),
            params,
            n: code.n(),
            k: code.k(),
            d_x: dist(code.d_x())?,
            d_z: dist(code.d_z())?,
            pure: code.pure(),
            primitive_poly: code.primitive_poly().to_vec(),
            alist_files: AlistFiles { hx, hz },
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Format(e.to_string()))?;
        fs::write(path, json + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<CodeDescriptor> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
    }

    /// Re-run the construction recorded in `params`.
    pub fn reconstruct(&self) -> Result<AsymmetricCssCode> {
        let poly = if self.primitive_poly.is_empty() {
            None
        } else {
            Some(self.primitive_poly.as_slice())
        };
        match self.construction.as_str() {
            "bch-ldpc" => {
                let mu = self
                    .params
                    .mu
                    .ok_or_else(|| Error::Format("bch-ldpc descriptor without mu".into()))?;
                let delta = self
                    .params
                    .delta
                    .ok_or_else(|| Error::Format("bch-ldpc descriptor without delta".into()))?;
                asymmetric_bch_ldpc_with_poly(self.params.m, mu, self.params.s, self.params.p, delta, poly)
            }
            "eg-eg" => {
                let mu_x = self
                    .params
                    .mu_x
                    .ok_or_else(|| Error::Format("eg-eg descriptor without mu_x".into()))?;
                let mu_z = self
                    .params
                    .mu_z
                    .ok_or_else(|| Error::Format("eg-eg descriptor without mu_z".into()))?;
                asymmetric_eg_ldpc_with_poly(self.params.m, mu_x, mu_z, self.params.s, self.params.p, poly)
            }
            other => Err(Error::Format(format!("unknown construction tag {other:?}"))),
        }
    }
}

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Reload a descriptor and its matrices and recompute nesting, dimension and
/// the distance bounds from scratch.
pub fn verify_descriptor(descriptor_path: &Path) -> Result<VerifyReport> {
    let desc = CodeDescriptor::load(descriptor_path)?;
    let dir = descriptor_path.parent().unwrap_or_else(|| Path::new("."));
    let hx = read_alist(&resolve(dir, &desc.alist_files.hx))?;
    let hz = read_alist(&resolve(dir, &desc.alist_files.hz))?;
    let p = desc.params.p;
    let mut checks = Vec::new();

    let shape_ok = hx.cols() == desc.n && hz.cols() == desc.n;
    checks.push(VerifyCheck {
        name: "shape",
        pass: shape_ok,
        detail: format!(
            "H_x {}x{}, H_z {}x{}, n = {}",
            hx.rows(),
            hx.cols(),
            hz.rows(),
            hz.cols(),
            desc.n
        ),
    });
    if !shape_ok {
        return Ok(VerifyReport { checks });
    }

    let hx_dense = hx.to_dense(p);
    let hz_dense = hz.to_dense(p);
    let nesting = hz_dense.orthogonal_to(&hx_dense)?;
    checks.push(VerifyCheck {
        name: "nesting",
        pass: nesting,
        detail: "H_z * H_x^T = 0".into(),
    });

    let kx = desc.n - hx_dense.rank();
    let kz = desc.n - hz_dense.rank();
    let k = (kx + kz).checked_sub(desc.n);
    checks.push(VerifyCheck {
        name: "dimension",
        pass: k == Some(desc.k),
        detail: format!("k_x = {kx}, k_z = {kz}, k_x + k_z - n = {k:?}, stored k = {}", desc.k),
    });

    // distance bounds recomputed from the construction parameters
    let bounds: Result<(usize, usize)> = match desc.construction.as_str() {
        "bch-ldpc" => {
            let mu = desc.params.mu.unwrap_or(0);
            let delta = desc.params.delta.unwrap_or(0) as usize;
            let dz = a_eg(desc.params.m, mu, mu.saturating_sub(1), desc.params.s, p)? as usize;
            Ok((delta, dz))
        }
        "eg-eg" => {
            let mu_x = desc.params.mu_x.unwrap_or(0);
            let mu_z = desc.params.mu_z.unwrap_or(0);
            let dx = a_eg(desc.params.m, mu_x, mu_x - 1, desc.params.s, p)? as usize + 1;
            let dz = a_eg(desc.params.m, mu_z, mu_z - 1, desc.params.s, p)? as usize + 1;
            Ok((dx, dz))
        }
        other => Err(Error::Format(format!("unknown construction {other:?}"))),
    };
    match bounds {
        Ok((bx, bz)) => {
            let check = |name: &'static str, field: &DistanceField, bound: usize| VerifyCheck {
                name,
                pass: if field.kind == "exact" {
                    field.value >= bound
                } else {
                    field.value == bound
                },
                detail: format!(
                    "stored {} = {} ({}), construction bound = {bound}",
                    name, field.value, field.kind
                ),
            };
            checks.push(check("d_x", &desc.d_x, bx));
            checks.push(check("d_z", &desc.d_z, bz));
        }
        Err(e) => checks.push(VerifyCheck {
            name: "d_x",
            pass: false,
            detail: e.to_string(),
        }),
    }
    Ok(VerifyReport { checks })
}

fn resolve(dir: &Path, name: &str) -> PathBuf {
    let p = Path::new(name);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        dir.join(p)
    }
}

/// Persist a constructed code: alist pair plus descriptor JSON. Returns the
/// descriptor. Only binary (0/1) parity checks can be written to alist.
pub fn persist_code(
    code: &AsymmetricCssCode,
    descriptor_path: &Path,
    alist_dir: &Path,
) -> Result<CodeDescriptor> {
    for (name, h) in [("H_x", code.c_x().parity_sparse()), ("H_z", code.c_z().parity_sparse())] {
        for r in 0..h.rows() {
            if h.row_entries(r).iter().any(|&(_, v)| v > 1) {
                return Err(Error::invalid(format!(
                    "{name} has entries above 1; the alist format only carries binary matrices"
                )));
            }
        }
    }
    let stem = descriptor_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("code");
    let hx_name = format!("{stem}_hx.alist");
    let hz_name = format!("{stem}_hz.alist");
    fs::create_dir_all(alist_dir)?;
    if let Some(parent) = descriptor_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    write_alist(&alist_dir.join(&hx_name), code.c_x().parity_sparse())?;
    write_alist(&alist_dir.join(&hz_name), code.c_z().parity_sparse())?;
    let desc_dir = descriptor_path.parent().unwrap_or_else(|| Path::new("."));
    let rel = |name: &str| -> String {
        if alist_dir == desc_dir {
            name.to_string()
        } else {
            alist_dir.join(name).to_string_lossy().into_owned()
        }
    };
    let desc = CodeDescriptor::from_code(code, rel(&hx_name), rel(&hz_name))?;
    desc.save(descriptor_path)?;
    Ok(desc)
}
