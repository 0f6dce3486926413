//! Prime-field arithmetic, vectors, isotropy and the null sphere.
//!
//! All points are vectors over F_p with coordinates reduced to `[0, p)`.
//! Every point has a canonical integer encoding (mixed radix base `p`,
//! first coordinate least significant) so that sets can be stored as
//! sorted encoded arrays with an optional flat membership bitmap.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("the zero vector has no direction")]
    ZeroVector,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("empty point set")]
    EmptySet,
}

/// Maximum ambient dimension we ever work in.
pub const MAX_DIM: usize = 4;

/// Point sets switch to a flat membership bitmap below this universe size.
const BITMAP_CAP: u64 = 1 << 27;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of `a` mod p; `a` must be nonzero.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a, p - 2, p)
}

/// The odd prime modulus together with the additive character table
/// `e(t) = exp(2*pi*i*t/p)` and the quadratic-residue table.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    character: Vec<Complex64>,
    qr: Vec<i8>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        let character = (0..p)
            .map(|t| Complex64::from_polar(1.0, TAU * t as f64 / p as f64))
            .collect();
        let mut qr = vec![-1i8; p as usize];
        qr[0] = 0;
        for a in 1..p {
            qr[(a * a % p) as usize] = 1;
        }
        Ok(PrimeContext { p, character, qr })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `e(t)` for `t` already reduced mod p.
    #[inline]
    pub fn character(&self, t: u64) -> Complex64 {
        self.character[t as usize]
    }

    /// `e(-t)` for `t` already reduced mod p.
    #[inline]
    pub fn character_neg(&self, t: u64) -> Complex64 {
        self.character[((self.p - t) % self.p) as usize]
    }

    /// Legendre symbol of `a` (any residue representative): +1 for a
    /// nonzero square, 0 for zero, -1 otherwise. Table lookup.
    #[inline]
    pub fn legendre(&self, a: i64) -> i8 {
        let r = a.rem_euclid(self.p as i64) as usize;
        self.qr[r]
    }

    /// Whether the base plane F_p^2 carries isotropic directions,
    /// i.e. -1 is a square, i.e. p = 1 (mod 4).
    pub fn has_planar_isotropic_directions(&self) -> bool {
        self.legendre(-1) == 1
    }
}

/// A vector in F_p^k, k <= 4, with coordinates in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FPoint {
    coords: [u64; MAX_DIM],
    dim: usize,
}

impl std::fmt::Debug for FPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})", &self.coords[..self.dim])
    }
}

impl FPoint {
    /// Builds a point, reducing every coordinate mod p.
    pub fn new(coords: &[u64], p: u64) -> FPoint {
        assert!(!coords.is_empty() && coords.len() <= MAX_DIM);
        let mut c = [0u64; MAX_DIM];
        for (i, &x) in coords.iter().enumerate() {
            c[i] = x % p;
        }
        FPoint {
            coords: c,
            dim: coords.len(),
        }
    }

    /// Builds a point from possibly negative representatives.
    pub fn from_signed(coords: &[i64], p: u64) -> FPoint {
        assert!(!coords.is_empty() && coords.len() <= MAX_DIM);
        let mut c = [0u64; MAX_DIM];
        for (i, &x) in coords.iter().enumerate() {
            c[i] = x.rem_euclid(p as i64) as u64;
        }
        FPoint {
            coords: c,
            dim: coords.len(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coord(&self, i: usize) -> u64 {
        debug_assert!(i < self.dim);
        self.coords[i]
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords[..self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.coords[..self.dim].iter().all(|&c| c == 0)
    }

    /// Mixed-radix encoding, first coordinate least significant.
    pub fn encode(&self, p: u64) -> u64 {
        let mut n = 0u64;
        for i in (0..self.dim).rev() {
            n = n * p + self.coords[i];
        }
        n
    }

    pub fn decode(n: u64, p: u64, dim: usize) -> FPoint {
        assert!(dim >= 1 && dim <= MAX_DIM);
        let mut c = [0u64; MAX_DIM];
        let mut n = n;
        for slot in c.iter_mut().take(dim) {
            *slot = n % p;
            n /= p;
        }
        FPoint { coords: c, dim }
    }

    pub fn add(&self, other: &FPoint, p: u64) -> FPoint {
        debug_assert_eq!(self.dim, other.dim);
        let mut c = [0u64; MAX_DIM];
        for i in 0..self.dim {
            c[i] = (self.coords[i] + other.coords[i]) % p;
        }
        FPoint {
            coords: c,
            dim: self.dim,
        }
    }

    pub fn sub(&self, other: &FPoint, p: u64) -> FPoint {
        debug_assert_eq!(self.dim, other.dim);
        let mut c = [0u64; MAX_DIM];
        for i in 0..self.dim {
            c[i] = (self.coords[i] + p - other.coords[i]) % p;
        }
        FPoint {
            coords: c,
            dim: self.dim,
        }
    }

    pub fn scale(&self, t: u64, p: u64) -> FPoint {
        let t = t % p;
        let mut c = [0u64; MAX_DIM];
        for i in 0..self.dim {
            c[i] = self.coords[i] * t % p;
        }
        FPoint {
            coords: c,
            dim: self.dim,
        }
    }

    /// Drops the last coordinate.
    pub fn truncate(&self) -> FPoint {
        assert!(self.dim >= 2);
        let mut c = self.coords;
        c[self.dim - 1] = 0;
        FPoint {
            coords: c,
            dim: self.dim - 1,
        }
    }

    /// Appends a coordinate.
    pub fn extend(&self, h: u64, p: u64) -> FPoint {
        assert!(self.dim < MAX_DIM);
        let mut c = self.coords;
        c[self.dim] = h % p;
        FPoint {
            coords: c,
            dim: self.dim + 1,
        }
    }
}

/// Standard scalar product mod p.
pub fn dot(u: &FPoint, v: &FPoint, p: u64) -> Result<u64, FieldError> {
    if u.dim != v.dim {
        return Err(FieldError::DimensionMismatch(u.dim, v.dim));
    }
    let mut s = 0u64;
    for i in 0..u.dim {
        s = (s + u.coords[i] * v.coords[i]) % p;
    }
    Ok(s)
}

/// `v . v` mod p; dimensions always agree.
#[inline]
pub fn self_dot(v: &FPoint, p: u64) -> u64 {
    let mut s = 0u64;
    for i in 0..v.dim {
        s = (s + v.coords[i] * v.coords[i]) % p;
    }
    s
}

/// Whether a nonzero vector is isotropic (`v . v = 0`).
pub fn is_isotropic(v: &FPoint, p: u64) -> Result<bool, FieldError> {
    if v.is_zero() {
        return Err(FieldError::ZeroVector);
    }
    Ok(self_dot(v, p) == 0)
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn canonical_direction(v: &FPoint, p: u64) -> Result<FPoint, FieldError> {
    let lead = v.coords()[..v.dim]
        .iter()
        .position(|&c| c != 0)
        .ok_or(FieldError::ZeroVector)?;
    Ok(v.scale(mod_inv(v.coords[lead], p), p))
}

/// All projective directions in F_p^k (first nonzero coordinate 1).
pub fn projective_directions(p: u64, k: usize) -> Vec<FPoint> {
    match k {
        2 => {
            let mut out: Vec<FPoint> = (0..p).map(|s| FPoint::new(&[1, s], p)).collect();
            out.push(FPoint::new(&[0, 1], p));
            out
        }
        3 => {
            let mut out = Vec::with_capacity((p * p + p + 1) as usize);
            for s in 0..p {
                for t in 0..p {
                    out.push(FPoint::new(&[1, s, t], p));
                }
            }
            for s in 0..p {
                out.push(FPoint::new(&[0, 1, s], p));
            }
            out.push(FPoint::new(&[0, 0, 1], p));
            out
        }
        _ => panic!("projective_directions: unsupported dimension {k}"),
    }
}

/// Isotropic projective directions in F_p^k, k in {2, 3}.
///
/// For k = 2 there are 2 directions when p = 1 (mod 4) and none when
/// p = 3 (mod 4); for k = 3 there are always p + 1.
pub fn isotropic_directions(ctx: &PrimeContext, k: usize) -> Result<Vec<FPoint>, FieldError> {
    if k != 2 && k != 3 {
        return Err(FieldError::UnsupportedDimension(k));
    }
    let p = ctx.p();
    Ok(projective_directions(p, k)
        .into_iter()
        .filter(|v| self_dot(v, p) == 0)
        .collect())
}

/// The null sphere S_0 = {x in F_p^3 : x . x = 0}, origin included.
pub fn null_sphere(ctx: &PrimeContext) -> PointSet {
    let p = ctx.p();
    let mut enc = Vec::new();
    for n in 0..p * p * p {
        let x = FPoint::decode(n, p, 3);
        if self_dot(&x, p) == 0 {
            enc.push(n);
        }
    }
    PointSet::from_encoded(enc, p, 3)
}

/// An immutable set of points in F_p^dim, stored as a sorted array of
/// encodings plus a flat membership bitmap when the universe is small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    p: u64,
    dim: usize,
    enc: Vec<u64>,
    bitmap: Option<Vec<u64>>,
}

impl PointSet {
    pub fn from_encoded(mut enc: Vec<u64>, p: u64, dim: usize) -> PointSet {
        enc.sort_unstable();
        enc.dedup();
        let universe = (p as u128).pow(dim as u32);
        let bitmap = if universe <= BITMAP_CAP as u128 {
            let mut bits = vec![0u64; (universe as usize + 63) / 64];
            for &n in &enc {
                bits[(n / 64) as usize] |= 1 << (n % 64);
            }
            Some(bits)
        } else {
            None
        };
        PointSet {
            p,
            dim,
            enc,
            bitmap,
        }
    }

    pub fn from_points(points: &[FPoint], p: u64) -> PointSet {
        assert!(!points.is_empty());
        let dim = points[0].dim();
        let enc = points
            .iter()
            .map(|pt| {
                assert_eq!(pt.dim(), dim);
                pt.encode(p)
            })
            .collect();
        PointSet::from_encoded(enc, p, dim)
    }

    pub fn empty(p: u64, dim: usize) -> PointSet {
        PointSet::from_encoded(Vec::new(), p, dim)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.enc.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.enc.is_empty()
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        match &self.bitmap {
            Some(bits) => bits[(n / 64) as usize] & (1 << (n % 64)) != 0,
            None => self.enc.binary_search(&n).is_ok(),
        }
    }

    pub fn contains_point(&self, pt: &FPoint) -> bool {
        self.contains(pt.encode(self.p))
    }

    pub fn encodings(&self) -> &[u64] {
        &self.enc
    }

    pub fn iter_points(&self) -> impl Iterator<Item = FPoint> + '_ {
        self.enc.iter().map(move |&n| FPoint::decode(n, self.p, self.dim))
    }

    pub fn to_points(&self) -> Vec<FPoint> {
        self.iter_points().collect()
    }
}
