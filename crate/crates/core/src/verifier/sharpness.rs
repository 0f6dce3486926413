//! Extension-ratio sweeps for the isotropic-line lift, the family that
//! saturates the critical exponent (q = 3 in ambient dimension 4, q = 4
//! in ambient dimension 3 when the base plane has isotropic directions).

use super::checks::extension_ratio;
use super::VerifierError;
use crate::field::{isotropic_directions, PointSet, PrimeContext};
use crate::spectral::ParaboloidFunction;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct SharpnessRow {
    pub p: u64,
    pub q: f64,
    pub ratio: f64,
}

/// The base of an isotropic line through the origin in F_p^{d-1}.
pub(crate) fn isotropic_line_base(
    ctx: &PrimeContext,
    d: usize,
) -> Result<PointSet, VerifierError> {
    let p = ctx.p();
    let dirs = isotropic_directions(ctx, d - 1)?;
    let dir = dirs
        .first()
        .ok_or(VerifierError::NoIsotropicLine(p))?
        .clone();
    let enc = (0..p).map(|t| dir.scale(t, p).encode(p)).collect();
    Ok(PointSet::from_encoded(enc, p, d - 1))
}

/// Ratio table over (p, q) for the isotropic-line lift indicator.
pub fn sharpness_sweep(
    d: usize,
    q_list: &[f64],
    p_list: &[u64],
) -> Result<Vec<SharpnessRow>, VerifierError> {
    let mut out = Vec::with_capacity(q_list.len() * p_list.len());
    for &p in p_list {
        let ctx = PrimeContext::new(p)?;
        let base = isotropic_line_base(&ctx, d)?;
        let f = ParaboloidFunction::indicator_of_base(&base)?;
        for &q in q_list {
            out.push(SharpnessRow {
                p,
                q,
                ratio: extension_ratio(&ctx, &f, q)?,
            });
        }
    }
    Ok(out)
}
