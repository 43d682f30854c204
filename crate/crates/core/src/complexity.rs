//! Product counts and exponent bounds for block size `m = 2n`.
//!
//! Removing the cross terms with a 2 × 2 block scheme costs a factor of 8
//! in products, giving
//!
//! ```text
//! M_disjoint(m) = m³ + 12m² + 36m            ω ≤ log_m(M_disjoint(m) / 3)
//! M_single(m)   = m³/3 + 4m² + (32/3)m       ω ≤ log_m(M_single(m))
//! ```
//!
//! Counts are exact; only the logarithm is taken in `f64`.

use serde::Serialize;

use crate::bilinear::product_count;
use crate::error::{Error, Result};
use crate::scalar::{rational, rational_to_f64, Rational};

pub const DEFAULT_M_LO: u64 = 4;
pub const DEFAULT_M_HI: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Disjoint,
    Single,
}

fn check_m(m: u64) -> Result<()> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "block size m must be even and at least 4, got {m}"
        )));
    }
    Ok(())
}

/// `m³ + 12m² + 36m`.
pub fn m_disjoint(m: u64) -> Result<u128> {
    check_m(m)?;
    let m = u128::from(m);
    Ok(m * m * m + 12 * m * m + 36 * m)
}

/// `m³/3 + 4m² + (32/3)m`, exactly.
pub fn m_single(m: u64) -> Result<Rational> {
    check_m(m)?;
    let m = i64::try_from(m).map_err(|_| Error::InvalidParams("block size too large".into()))?;
    let mr = rational(m, 1);
    Ok(&mr * &mr * &mr / rational(3, 1) + rational(4, 1) * &mr * &mr + rational(32, 3) * &mr)
}

/// Single-multiplication count per block before the 2 × 2 blow-up:
/// `(n³ - n)/3 + 2n² + 3n`.
pub fn single_product_count(n: u64) -> Rational {
    let n = rational(n as i64, 1);
    (&n * &n * &n - &n) / rational(3, 1) + rational(2, 1) * &n * &n + rational(3, 1) * &n
}

pub fn omega(m: u64, kind: Kind) -> Result<f64> {
    let count = match kind {
        Kind::Disjoint => m_disjoint(m)? as f64 / 3.0,
        Kind::Single => rational_to_f64(&m_single(m)?),
    };
    Ok(count.ln() / (m as f64).ln())
}

/// Minimizing even block size in `[m_lo, m_hi]`; ties go to the smaller `m`.
pub fn find_min_omega(kind: Kind, m_lo: u64, m_hi: u64) -> Result<(u64, f64)> {
    let first = if m_lo.is_multiple_of(2) {
        m_lo
    } else {
        m_lo + 1
    };
    if m_lo < 4 || first > m_hi {
        return Err(Error::InvalidParams(format!(
            "empty search range [{m_lo}, {m_hi}]"
        )));
    }
    let mut best: Option<(u64, f64)> = None;
    for m in (first..=m_hi).step_by(2) {
        let w = omega(m, kind)?;
        if best.is_none_or(|(_, bw)| w < bw) {
            best = Some((m, w));
        }
    }
    Ok(best.expect("range is non-empty"))
}

/// One row of the complexity table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub m: u64,
    pub m_disjoint: u128,
    #[serde(serialize_with = "crate::scalar::serde_str::one")]
    pub m_single: Rational,
    pub omega_disjoint: f64,
    pub omega_single: f64,
}

pub fn complexity_report(m: u64) -> Result<ComplexityReport> {
    Ok(ComplexityReport {
        m,
        m_disjoint: m_disjoint(m)?,
        m_single: m_single(m)?,
        omega_disjoint: omega(m, Kind::Disjoint)?,
        omega_single: omega(m, Kind::Single)?,
    })
}

/// Rows for every even `m` in `[m_lo, m_hi]`.
pub fn complexity_table(m_lo: u64, m_hi: u64) -> Result<Vec<ComplexityReport>> {
    let first = if m_lo.is_multiple_of(2) {
        m_lo
    } else {
        m_lo + 1
    };
    (first..=m_hi).step_by(2).map(complexity_report).collect()
}

/// `true` if the sequence strictly decreases to a single minimum and then
/// strictly increases.
pub fn is_single_dip(values: &[f64]) -> bool {
    let Some(min_at) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
    else {
        return true;
    };
    values[..=min_at].windows(2).all(|w| w[1] < w[0])
        && values[min_at..].windows(2).all(|w| w[1] > w[0])
}

/// Consistency between the block count and the per-block product count.
pub fn disjoint_matches_product_count(m: u64) -> Result<bool> {
    Ok(m_disjoint(m)? == 8 * u128::from(product_count(m / 2)))
}
