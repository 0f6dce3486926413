//! The slice construction in F_p^3 whose restricted norm beats the
//! Stein-Tomas exponent: each horizontal slice is a translate of the
//! Cartesian square of an interval of length about p^{1/3}.

use super::VerifierError;
use crate::energy::additive_energy;
use crate::field::{FPoint, PointSet, PrimeContext};
use crate::paraboloid::lift;
use crate::spectral::{restricted_l2_norm, SpatialFunction};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundReport {
    pub p: u64,
    /// Interval length N = round(p^{1/3}).
    pub n: u64,
    pub support: u64,
    /// Rectangle count (lifted additive energy) of each slice.
    pub slice_rectangles: Vec<u64>,
    pub min_slice_rectangles: u64,
    /// The trivial floor N^4 every slice must reach.
    pub n_fourth: u64,
    /// Fitted c in (slice rectangles) >= c * N^4 * log N, minimized over slices.
    pub log_weighted_c: f64,
    pub restricted_l2: f64,
    pub estimate_stein_tomas_sum: f64,
    pub estimate_stein_tomas_flat: f64,
    pub estimate_transfer: f64,
    pub min_estimate: f64,
    /// restricted_l2 / p^{7/6}.
    pub ratio_to_p76: f64,
}

/// Per-slice translate offset; distinct slices get distinct translates
/// of the same box so no two slices coincide.
fn slice_offset(h: u64, p: u64) -> u64 {
    (4 * h) % p
}

/// Builds the slice set, computes per-slice rectangle counts and the
/// restricted L^2 norm, and compares against the three upper estimates.
pub fn lower_bound_construction(ctx: &PrimeContext) -> Result<LowerBoundReport, VerifierError> {
    let p = ctx.p();
    let n = (p as f64).powf(1.0 / 3.0).round() as u64;
    if n < 2 {
        return Err(VerifierError::IntervalTooSmall(p));
    }
    let mut enc = Vec::new();
    let mut slice_rectangles = Vec::with_capacity(p as usize);
    for h in 0..p {
        let t = slice_offset(h, p);
        let mut slice_enc = Vec::with_capacity((n * n) as usize);
        for a in 1..=n {
            for b in 1..=n {
                let pt = FPoint::new(&[(a + t) % p, (b + t) % p], p);
                slice_enc.push(pt.encode(p));
                enc.push(pt.extend(h, p).encode(p));
            }
        }
        let base = PointSet::from_encoded(slice_enc, p, 2);
        slice_rectangles.push(additive_energy(&lift(&base))?);
    }
    let g_set = PointSet::from_encoded(enc, p, 3);
    let size = g_set.len() as f64;
    let g = SpatialFunction::indicator(&g_set)?;
    let restricted_l2 = restricted_l2_norm(ctx, &g);

    let pf = p as f64;
    let estimate_stein_tomas_sum = size.sqrt() + size * pf.powf(-0.5);
    let estimate_stein_tomas_flat = pf.sqrt() * size.sqrt();
    // every slice has the same energy, so sum E(G_h)^{1/4} = p * E^{1/4}
    let energy_quarter_sum: f64 = slice_rectangles
        .iter()
        .map(|&e| (e as f64).powf(0.25))
        .sum();
    let estimate_transfer =
        size.sqrt() + size.powf(3.0 / 8.0) * pf.powf(-1.0 / 8.0) * energy_quarter_sum.sqrt();
    let min_estimate = estimate_stein_tomas_sum
        .min(estimate_stein_tomas_flat)
        .min(estimate_transfer);

    let min_slice = *slice_rectangles.iter().min().unwrap();
    let n_fourth = n * n * n * n;
    let log_n = (n as f64).ln().max(1.0);
    Ok(LowerBoundReport {
        p,
        n,
        support: g_set.len() as u64,
        min_slice_rectangles: min_slice,
        slice_rectangles,
        n_fourth,
        log_weighted_c: min_slice as f64 / (n_fourth as f64 * log_n),
        restricted_l2,
        estimate_stein_tomas_sum,
        estimate_stein_tomas_flat,
        estimate_transfer,
        min_estimate,
        ratio_to_p76: restricted_l2 / pf.powf(7.0 / 6.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_primes() {
        let ctx = PrimeContext::new(3).unwrap();
        assert!(matches!(
            lower_bound_construction(&ctx),
            Err(VerifierError::IntervalTooSmall(3))
        ));
    }

    #[test]
    fn p31_slices_match_quadruple_oracle() {
        let p = 31u64;
        let ctx = PrimeContext::new(p).unwrap();
        let report = lower_bound_construction(&ctx).unwrap();
        assert_eq!(report.n, 3);
        assert_eq!(report.support, 31 * 9);
        // quadruple-enumeration oracle on the un-translated box [1..3]^2
        let pts: Vec<FPoint> = (1..=3)
            .flat_map(|a| (1..=3).map(move |b| FPoint::new(&[a, b], p)))
            .collect();
        let lifted: Vec<FPoint> = pts
            .iter()
            .map(|x| x.extend(crate::field::self_dot(x, p), p))
            .collect();
        let mut oracle = 0u64;
        for x in &lifted {
            for y in &lifted {
                for z in &lifted {
                    for u in &lifted {
                        if x.add(y, p) == z.add(u, p) {
                            oracle += 1;
                        }
                    }
                }
            }
        }
        for &e in &report.slice_rectangles {
            assert_eq!(e, oracle);
        }
        assert!(report.min_slice_rectangles >= report.n_fourth);
    }

    #[test]
    fn slices_are_distinct_translates() {
        let p = 31u64;
        for h1 in 0..p {
            for h2 in (h1 + 1)..p {
                assert_ne!(slice_offset(h1, p), slice_offset(h2, p));
            }
        }
    }
}
