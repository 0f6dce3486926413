//! Additive energy, the rectangle criterion on the paraboloid, rectangle
//! classification and the rich-line energy decomposition.
//!
//! All counts are exact 64-bit integers. The energy of a set X is the
//! number of quadruples (x, y, z, u) in X^4 with x + y = z + u; on the
//! paraboloid these quadruples correspond to rectangles in the base, i.e.
//! triples (x, y, z) with (x - z).(z - y) = 0 and x + y - z in the base.

use crate::field::{self, PointSet};
use crate::incidence::Line;
use crate::paraboloid;
use serde::Serialize;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnergyError {
    #[error("energy count may overflow 64 bits for a set of size {0}")]
    Overflow(usize),
    #[error("operation requires base dimension {expected}, got {got}")]
    BadDimension { expected: usize, got: usize },
}

fn guard_cube(n: usize) -> Result<(), EnergyError> {
    if (n as u128).pow(3) >= 1 << 63 {
        return Err(EnergyError::Overflow(n));
    }
    Ok(())
}

/// Exact additive energy E(X) = #{x + y = z + u}, computed from the
/// multiplicity table of pairwise sums: E = sum_s r_{X+X}(s)^2.
pub fn additive_energy(x: &PointSet) -> Result<u64, EnergyError> {
    guard_cube(x.len())?;
    let p = x.p();
    let points = x.to_points();
    let mut sums: HashMap<u64, u64> = HashMap::with_capacity(points.len() * points.len());
    for a in &points {
        for b in &points {
            *sums.entry(a.add(b, p).encode(p)).or_insert(0) += 1;
        }
    }
    Ok(sums.values().map(|&r| r * r).sum())
}

/// Exact mixed energy: #{(x, y, z, u) in X x Y x X x Y : x + y = z + u}.
pub fn mixed_energy(x: &PointSet, y: &PointSet) -> Result<u64, EnergyError> {
    guard_cube(x.len().max(y.len()))?;
    assert_eq!(x.dim(), y.dim());
    assert_eq!(x.p(), y.p());
    let p = x.p();
    let mut sums: HashMap<u64, u64> = HashMap::new();
    for a in x.iter_points() {
        for b in y.iter_points() {
            *sums.entry(a.add(&b, p).encode(p)).or_insert(0) += 1;
        }
    }
    Ok(sums.values().map(|&r| r * r).sum())
}

/// Number of trivial rectangle triples (x = z or y = z) on an n-point base.
pub fn trivial_triple_count(n: u64) -> u64 {
    2 * n * n - n
}

/// Exact count of ordered triples (x, y, z) in the base with
/// (x - z).(z - y) = 0 and x + y - z in the base.
///
/// Equals `additive_energy` of the lifted set.
pub fn rectangle_triples(base: &PointSet) -> Result<u64, EnergyError> {
    guard_cube(base.len())?;
    let p = base.p();
    let points = base.to_points();
    let mut count = 0u64;
    for z in &points {
        for x in &points {
            let dx = x.sub(z, p);
            for y in &points {
                let dy = z.sub(y, p);
                if field::dot(&dx, &dy, p).expect("same dim") == 0
                    && base.contains_point(&x.add(y, p).sub(z, p))
                {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Counts of nontrivial rectangles by side-line isotropy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RectangleClasses {
    /// All side lines non-isotropic.
    pub ordinary: u64,
    /// One opposite pair of side lines isotropic.
    pub semi_degenerate: u64,
    /// All four vertices on one isotropic line.
    pub degenerate: u64,
}

impl RectangleClasses {
    pub fn total(&self) -> u64 {
        self.ordinary + self.semi_degenerate + self.degenerate
    }
}

/// Classifies the nontrivial rectangles (x != z, y != z) of a base set in
/// F_p^3. Classes are decided by the isotropy of the two side directions
/// x - z and y - z; four collinear vertices on a non-isotropic line count
/// as ordinary.
pub fn classify_rectangles(base: &PointSet) -> Result<RectangleClasses, EnergyError> {
    if base.dim() != 3 {
        return Err(EnergyError::BadDimension {
            expected: 3,
            got: base.dim(),
        });
    }
    guard_cube(base.len())?;
    let p = base.p();
    let points = base.to_points();
    let mut out = RectangleClasses::default();
    for z in &points {
        for x in &points {
            if x == z {
                continue;
            }
            let dx = x.sub(z, p);
            let dx_iso = field::self_dot(&dx, p) == 0;
            for y in &points {
                if y == z {
                    continue;
                }
                let dy = z.sub(y, p);
                if field::dot(&dx, &dy, p).expect("same dim") != 0
                    || !base.contains_point(&x.add(y, p).sub(z, p))
                {
                    continue;
                }
                let dy_iso = field::self_dot(&dy, p) == 0;
                match (dx_iso, dy_iso) {
                    (false, false) => out.ordinary += 1,
                    (true, true) => out.degenerate += 1,
                    _ => out.semi_degenerate += 1,
                }
            }
        }
    }
    Ok(out)
}

/// The rich-line energy decomposition of the nontrivial rectangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnergyDecomposition {
    /// Rectangles with at least one side line outside the rich set.
    pub e1: u64,
    /// Non-degenerate rectangles with a side on a rich non-isotropic line.
    pub e2: u64,
    /// Degenerate rectangles on rich isotropic lines.
    pub e3: u64,
    /// The rich-line support threshold used.
    pub threshold: u64,
}

/// Default rich-line threshold: ceil(10 sqrt(|A|)).
pub fn rich_threshold(n: usize) -> u64 {
    (10.0 * (n as f64).sqrt()).ceil() as u64
}

pub fn energy_decomposition(base: &PointSet) -> Result<EnergyDecomposition, EnergyError> {
    energy_decomposition_with_threshold(base, rich_threshold(base.len()))
}

pub fn energy_decomposition_with_threshold(
    base: &PointSet,
    threshold: u64,
) -> Result<EnergyDecomposition, EnergyError> {
    if base.dim() != 3 {
        return Err(EnergyError::BadDimension {
            expected: 3,
            got: base.dim(),
        });
    }
    guard_cube(base.len())?;
    let p = base.p();
    let points = base.to_points();
    let supports = crate::incidence::line_supports(base);
    let rich: HashSet<Line> = supports
        .iter()
        .filter(|(_, &s)| s >= threshold.max(2))
        .map(|(l, _)| *l)
        .collect();
    let mut out = EnergyDecomposition {
        e1: 0,
        e2: 0,
        e3: 0,
        threshold,
    };
    for z in &points {
        for x in &points {
            if x == z {
                continue;
            }
            let dx = x.sub(z, p);
            let dx_iso = field::self_dot(&dx, p) == 0;
            for y in &points {
                if y == z {
                    continue;
                }
                let dy = z.sub(y, p);
                if field::dot(&dx, &dy, p).expect("same dim") != 0 {
                    continue;
                }
                let u = x.add(y, p).sub(z, p);
                if !base.contains_point(&u) {
                    continue;
                }
                let dy_iso = field::self_dot(&dy, p) == 0;
                let degenerate = dx_iso && dy_iso;
                let sides = [
                    Line::through(x, z, p),
                    Line::through(y, z, p),
                    Line::through(&u, y, p),
                    Line::through(&u, x, p),
                ];
                if sides.iter().any(|l| !rich.contains(l)) {
                    out.e1 += 1;
                }
                if !degenerate
                    && sides
                        .iter()
                        .any(|l| rich.contains(l) && !l.is_isotropic(p))
                {
                    out.e2 += 1;
                }
                if degenerate && rich.contains(&sides[0]) {
                    out.e3 += 1;
                }
            }
        }
    }
    Ok(out)
}

/// Full per-set report: total energy of the lift, trivial count and (for a
/// 3D base) the classification and rich-line decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub total: u64,
    pub trivial: u64,
    pub nontrivial: u64,
    pub by_class: Option<RectangleClasses>,
    pub decomposition: Option<EnergyDecomposition>,
}

pub fn energy_report(base: &PointSet) -> Result<EnergyReport, EnergyError> {
    let lifted = paraboloid::lift(base);
    let total = additive_energy(&lifted)?;
    let trivial = trivial_triple_count(base.len() as u64);
    let (by_class, decomposition) = if base.dim() == 3 {
        (
            Some(classify_rectangles(base)?),
            Some(energy_decomposition(base)?),
        )
    } else {
        (None, None)
    };
    Ok(EnergyReport {
        total,
        trivial,
        nontrivial: total - trivial,
        by_class,
        decomposition,
    })
}
