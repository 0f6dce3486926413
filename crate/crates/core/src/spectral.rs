//! Discrete Fourier transform on V = F_p^d, the extension operator
//! (f dsigma)^v, and Lebesgue norms in the counting / normalized
//! conventions.
//!
//! Two evaluation paths exist for the transforms: a direct character sum
//! (used when the total work is small, and as the cross-check oracle) and
//! a separable per-axis prime-length FFT. Both agree to 1e-9 relative on
//! every tested instance.

use crate::field::{FPoint, PointSet, PrimeContext};
use crate::paraboloid::lift_point;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("workspace of size p^d = {0} exceeds the cap {1}")]
    SizeCap(u128, u64),
    #[error("Lebesgue exponent q = {0} must be >= 1")]
    BadExponent(f64),
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("sup norm {0} exceeds 1")]
    SupNormExceedsOne(f64),
}

/// Hard cap on the dense workspace size p^d.
pub const SIZE_CAP: u64 = 1 << 27;

/// Direct character sums are used when (number of source points) * p^d
/// stays below this many work units; otherwise the per-axis FFT runs.
pub const DIRECT_WORK_CAP: u128 = 1_000_000_000;

fn check_size(p: u64, d: usize) -> Result<usize, SpectralError> {
    let n = (p as u128).pow(d as u32);
    if n > SIZE_CAP as u128 {
        return Err(SpectralError::SizeCap(n, SIZE_CAP));
    }
    Ok(n as usize)
}

/// Compensated (Kahan) summation; deterministic for a fixed iteration order.
pub fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// A complex-valued function on V = F_p^d, stored densely and indexed by
/// the mixed-radix point encoding.
#[derive(Debug, Clone)]
pub struct SpatialFunction {
    p: u64,
    d: usize,
    values: Vec<Complex64>,
}

impl SpatialFunction {
    pub fn from_values(p: u64, d: usize, values: Vec<Complex64>) -> Result<Self, SpectralError> {
        let n = check_size(p, d)?;
        assert_eq!(values.len(), n);
        Ok(SpatialFunction { p, d, values })
    }

    pub fn zeros(p: u64, d: usize) -> Result<Self, SpectralError> {
        let n = check_size(p, d)?;
        Ok(SpatialFunction {
            p,
            d,
            values: vec![Complex64::new(0.0, 0.0); n],
        })
    }

    pub fn delta(p: u64, d: usize, at: u64) -> Result<Self, SpectralError> {
        let mut g = Self::zeros(p, d)?;
        g.values[at as usize] = Complex64::new(1.0, 0.0);
        Ok(g)
    }

    pub fn constant(p: u64, d: usize, value: Complex64) -> Result<Self, SpectralError> {
        let n = check_size(p, d)?;
        Ok(SpatialFunction {
            p,
            d,
            values: vec![value; n],
        })
    }

    pub fn indicator(set: &PointSet) -> Result<Self, SpectralError> {
        let mut g = Self::zeros(set.p(), set.dim())?;
        for &n in set.encodings() {
            g.values[n as usize] = Complex64::new(1.0, 0.0);
        }
        Ok(g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    #[inline]
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[n as usize]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Exact nonzero index set.
    pub fn support(&self) -> PointSet {
        let enc = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm_sqr() != 0.0)
            .map(|(n, _)| n as u64)
            .collect();
        PointSet::from_encoded(enc, self.p, self.d)
    }

    pub fn support_size(&self) -> u64 {
        self.values.iter().filter(|v| v.norm_sqr() != 0.0).count() as u64
    }
}

/// A complex-valued function on the paraboloid in F_p^d, indexed by the
/// encoded base point in F_p^{d-1}.
#[derive(Debug, Clone)]
pub struct ParaboloidFunction {
    p: u64,
    d: usize,
    values: Vec<Complex64>,
}

impl ParaboloidFunction {
    pub fn from_values(p: u64, d: usize, values: Vec<Complex64>) -> Result<Self, SpectralError> {
        let n = check_size(p, d - 1)?;
        assert_eq!(values.len(), n);
        Ok(ParaboloidFunction { p, d, values })
    }

    pub fn zeros(p: u64, d: usize) -> Result<Self, SpectralError> {
        let n = check_size(p, d - 1)?;
        Ok(ParaboloidFunction {
            p,
            d,
            values: vec![Complex64::new(0.0, 0.0); n],
        })
    }

    pub fn constant(p: u64, d: usize, value: Complex64) -> Result<Self, SpectralError> {
        let n = check_size(p, d - 1)?;
        Ok(ParaboloidFunction {
            p,
            d,
            values: vec![value; n],
        })
    }

    pub fn delta(p: u64, d: usize, base_enc: u64) -> Result<Self, SpectralError> {
        let mut f = Self::zeros(p, d)?;
        f.values[base_enc as usize] = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    /// Indicator of the lift of a base set in F_p^{d-1}.
    pub fn indicator_of_base(base: &PointSet) -> Result<Self, SpectralError> {
        let mut f = Self::zeros(base.p(), base.dim() + 1)?;
        for &n in base.encodings() {
            f.values[n as usize] = Complex64::new(1.0, 0.0);
        }
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm_sqr() == 0.0)
    }
}

fn coords_table(p: u64, d: usize) -> Vec<[u64; 4]> {
    let n = (p as usize).pow(d as u32);
    let mut out = vec![[0u64; 4]; n];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut m = idx as u64;
        for c in slot.iter_mut().take(d) {
            *c = m % p;
            m /= p;
        }
    }
    out
}

#[inline]
fn dot_mod(a: &[u64; 4], b: &[u64; 4], d: usize, p: u64) -> u64 {
    let mut s = 0u64;
    for i in 0..d {
        s = (s + a[i] * b[i]) % p;
    }
    s
}

/// In-place separable transform along every axis; `sign` +1 gives the
/// unnormalized inverse kernel e(+x.xi), -1 the forward kernel e(-x.xi).
fn fft_all_axes(values: &mut [Complex64], p: u64, d: usize, sign: i32) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if sign < 0 {
        planner.plan_fft_forward(p as usize)
    } else {
        planner.plan_fft_inverse(p as usize)
    };
    let pn = p as usize;
    let mut buf = vec![Complex64::new(0.0, 0.0); pn];
    for axis in 0..d {
        let stride = pn.pow(axis as u32);
        let outer = values.len() / (stride * pn);
        for block in 0..outer {
            for inner in 0..stride {
                let base = block * stride * pn + inner;
                for j in 0..pn {
                    buf[j] = values[base + j * stride];
                }
                fft.process(&mut buf);
                for j in 0..pn {
                    values[base + j * stride] = buf[j];
                }
            }
        }
    }
}

/// Forward transform, direct character sum: ghat(xi) = sum_x g(x) e(-x.xi).
pub fn fourier_transform_direct(ctx: &PrimeContext, g: &SpatialFunction) -> SpatialFunction {
    let p = ctx.p();
    let d = g.d;
    let coords = coords_table(p, d);
    let support: Vec<usize> = g
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm_sqr() != 0.0)
        .map(|(n, _)| n)
        .collect();
    let values: Vec<Complex64> = (0..g.values.len())
        .into_par_iter()
        .map(|xi| {
            let cxi = &coords[xi];
            let mut acc = Complex64::new(0.0, 0.0);
            for &x in &support {
                let t = dot_mod(&coords[x], cxi, d, p);
                acc += g.values[x] * ctx.character_neg(t);
            }
            acc
        })
        .collect();
    SpatialFunction { p, d, values }
}

/// Forward transform via per-axis prime-length FFTs.
pub fn fourier_transform_fast(ctx: &PrimeContext, g: &SpatialFunction) -> SpatialFunction {
    let mut values = g.values.clone();
    fft_all_axes(&mut values, ctx.p(), g.d, -1);
    SpatialFunction {
        p: ctx.p(),
        d: g.d,
        values,
    }
}

/// Forward transform; picks the direct path when the work is small.
pub fn fourier_transform(ctx: &PrimeContext, g: &SpatialFunction) -> SpatialFunction {
    let work = g.support_size() as u128 * g.values.len() as u128;
    if work <= DIRECT_WORK_CAP {
        fourier_transform_direct(ctx, g)
    } else {
        fourier_transform_fast(ctx, g)
    }
}

/// Embeds the measure f dsigma as a dense function on V.
fn embed_measure(ctx: &PrimeContext, f: &ParaboloidFunction) -> SpatialFunction {
    let p = ctx.p();
    let d = f.d;
    let mut out = SpatialFunction::zeros(p, d).expect("measure embedding within size cap");
    for (n, &v) in f.values.iter().enumerate() {
        if v.norm_sqr() != 0.0 {
            let base = FPoint::decode(n as u64, p, d - 1);
            out.values[lift_point(&base, p).encode(p) as usize] = v;
        }
    }
    out
}

/// Extension operator, direct sum:
/// (f dsigma)^v(x) = p^{-(d-1)} sum_{xi in P} f(xi) e(x.xi).
pub fn extension_direct(ctx: &PrimeContext, f: &ParaboloidFunction) -> SpatialFunction {
    let p = ctx.p();
    let d = f.d;
    let n = (p as usize).pow(d as u32);
    let coords = coords_table(p, d);
    let scale = (p as f64).powi(-(d as i32 - 1));
    // lifted support with values
    let support: Vec<([u64; 4], Complex64)> = f
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm_sqr() != 0.0)
        .map(|(idx, &v)| {
            let base = FPoint::decode(idx as u64, p, d - 1);
            let lifted = lift_point(&base, p);
            let mut c = [0u64; 4];
            c[..d].copy_from_slice(&lifted.coords()[..d]);
            (c, v)
        })
        .collect();
    let values: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|x| {
            let cx = &coords[x];
            let mut acc = Complex64::new(0.0, 0.0);
            for (cxi, v) in &support {
                acc += v * ctx.character(dot_mod(cx, cxi, d, p));
            }
            acc * scale
        })
        .collect();
    SpatialFunction { p, d, values }
}

/// Extension operator via the per-axis FFT of the embedded measure.
pub fn extension_fast(ctx: &PrimeContext, f: &ParaboloidFunction) -> SpatialFunction {
    let p = ctx.p();
    let d = f.d;
    let mut out = embed_measure(ctx, f);
    fft_all_axes(&mut out.values, p, d, 1);
    let scale = (p as f64).powi(-(d as i32 - 1));
    for v in &mut out.values {
        *v *= scale;
    }
    out
}

/// Extension operator; picks the direct path when |P| * p^d is small.
pub fn extension(ctx: &PrimeContext, f: &ParaboloidFunction) -> SpatialFunction {
    let p = ctx.p() as u128;
    let d = f.d as u32;
    let work = p.pow(d - 1) * p.pow(d);
    if work <= DIRECT_WORK_CAP {
        extension_direct(ctx, f)
    } else {
        extension_fast(ctx, f)
    }
}

/// Restriction of a function on the dual copy of V to the paraboloid:
/// f(xi) = ghat((xi, xi.xi)).
pub fn restrict(ctx: &PrimeContext, ghat: &SpatialFunction) -> ParaboloidFunction {
    let p = ctx.p();
    let d = ghat.d;
    let base_n = (p as usize).pow((d - 1) as u32);
    let values = (0..base_n)
        .map(|n| {
            let base = FPoint::decode(n as u64, p, d - 1);
            ghat.values[lift_point(&base, p).encode(p) as usize]
        })
        .collect();
    ParaboloidFunction { p, d, values }
}

/// Counting-measure L^q norm on V.
pub fn lq_norm_v(g: &SpatialFunction, q: f64) -> Result<f64, SpectralError> {
    if q < 1.0 {
        return Err(SpectralError::BadExponent(q));
    }
    let s = kahan_sum(g.values.iter().map(|v| v.norm().powf(q)));
    Ok(s.powf(1.0 / q))
}

/// Normalized L^q norm on the paraboloid:
/// (p^{-(d-1)} sum_{xi in P} |f(xi)|^q)^{1/q}.
pub fn lq_norm_p(f: &ParaboloidFunction, q: f64) -> Result<f64, SpectralError> {
    if q < 1.0 {
        return Err(SpectralError::BadExponent(q));
    }
    let s = kahan_sum(f.values.iter().map(|v| v.norm().powf(q)));
    let scale = (f.p as f64).powi(-(f.d as i32 - 1));
    Ok((scale * s).powf(1.0 / q))
}

/// `||ghat||_{L^2(P, dsigma)}` for a function g on V.
pub fn restricted_l2_norm(ctx: &PrimeContext, g: &SpatialFunction) -> f64 {
    let ghat = fourier_transform(ctx, g);
    let f = restrict(ctx, &ghat);
    lq_norm_p(&f, 2.0).expect("q = 2 is valid")
}
