//! The paraboloid P = {(x, x.x)} in F_p^d, lifts, projections and
//! horizontal slices.

use crate::field::{self, FPoint, FieldError, PointSet, PrimeContext};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParaboloidError {
    #[error("unsupported ambient dimension {0} (expected 3 or 4)")]
    UnsupportedDimension(usize),
    #[error("point {0:?} does not lie on the paraboloid")]
    OffParaboloid(Vec<u64>),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A subset of the paraboloid, stored through its base projection.
///
/// The lift A = {(x, x.x) : x in base} is a graph over the base, so
/// |A| = |base| always.
#[derive(Debug, Clone)]
pub struct ParaboloidSet {
    p: u64,
    d: usize,
    base: PointSet,
}

impl ParaboloidSet {
    pub fn new(ctx: &PrimeContext, d: usize, base: PointSet) -> Result<Self, ParaboloidError> {
        if d != 3 && d != 4 {
            return Err(ParaboloidError::UnsupportedDimension(d));
        }
        assert_eq!(base.dim(), d - 1);
        assert_eq!(base.p(), ctx.p());
        Ok(ParaboloidSet {
            p: ctx.p(),
            d,
            base,
        })
    }

    /// The full paraboloid: base = all of F_p^{d-1}.
    pub fn full(ctx: &PrimeContext, d: usize) -> Result<Self, ParaboloidError> {
        if d != 3 && d != 4 {
            return Err(ParaboloidError::UnsupportedDimension(d));
        }
        let p = ctx.p();
        let universe = p.pow((d - 1) as u32);
        let base = PointSet::from_encoded((0..universe).collect(), p, d - 1);
        ParaboloidSet::new(ctx, d, base)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// The lifted set A as points of F_p^d.
    pub fn lifted(&self) -> PointSet {
        lift(&self.base)
    }
}

/// Lifts a base set B in F_p^{d-1} to {(x, x.x)} in F_p^d.
pub fn lift(base: &PointSet) -> PointSet {
    let p = base.p();
    let enc = base
        .iter_points()
        .map(|x| x.extend(field::self_dot(&x, p), p).encode(p))
        .collect();
    PointSet::from_encoded(enc, p, base.dim() + 1)
}

/// Lifts a single base point.
pub fn lift_point(x: &FPoint, p: u64) -> FPoint {
    x.extend(field::self_dot(x, p), p)
}

/// Projects a lifted set back to its base; rejects points off the paraboloid.
pub fn project(lifted: &PointSet) -> Result<PointSet, ParaboloidError> {
    let p = lifted.p();
    let mut enc = Vec::with_capacity(lifted.len());
    for pt in lifted.iter_points() {
        let base = pt.truncate();
        if field::self_dot(&base, p) != pt.coord(pt.dim() - 1) {
            return Err(ParaboloidError::OffParaboloid(pt.coords().to_vec()));
        }
        enc.push(base.encode(p));
    }
    Ok(PointSet::from_encoded(enc, p, lifted.dim() - 1))
}

/// The horizontal h-slice of G, lifted to the paraboloid:
/// G_h = {(x, x.x) : (x, h) in G}.
pub fn slice(g: &PointSet, h: u64) -> PointSet {
    let p = g.p();
    let h = h % p;
    let enc = g
        .iter_points()
        .filter(|pt| pt.coord(pt.dim() - 1) == h)
        .map(|pt| lift_point(&pt.truncate(), p).encode(p))
        .collect();
    PointSet::from_encoded(enc, p, g.dim())
}
