//! Exact incidence counting: point-plane in F_p^3, point-line in F_p^2,
//! rich lines, collinear triples, right triangles and the isotropic-pair
//! graph.

use crate::field::{
    self, canonical_direction, projective_directions, FPoint, PointSet, PrimeContext,
};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("operation needs a nonempty point set")]
    EmptySet,
    #[error("ambient dimension {0} not supported here")]
    BadAmbient(usize),
    #[error("p = {0} = 1 (mod 4): perpendicular pairing degenerates on isotropic lines")]
    NeedThreeModFour(u64),
    #[error("count would overflow 64 bits")]
    Overflow,
}

/// A canonicalized affine line in F_p^2 or F_p^3.
///
/// The direction has its first nonzero coordinate normalized to 1 and the
/// base is the point on the line with minimal encoding, so two `Line`
/// values are equal iff they describe the same point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Line {
    dir: FPoint,
    base: FPoint,
}

impl Line {
    pub fn from_point_dir(point: &FPoint, dir: &FPoint, p: u64) -> Line {
        let dir = canonical_direction(dir, p).expect("line direction must be nonzero");
        // pick the representative with minimal encoding
        let mut best = *point;
        let mut best_enc = point.encode(p);
        for t in 1..p {
            let cand = point.add(&dir.scale(t, p), p);
            let e = cand.encode(p);
            if e < best_enc {
                best = cand;
                best_enc = e;
            }
        }
        Line { dir, base: best }
    }

    pub fn through(a: &FPoint, b: &FPoint, p: u64) -> Line {
        Line::from_point_dir(a, &b.sub(a, p), p)
    }

    pub fn dir(&self) -> &FPoint {
        &self.dir
    }

    pub fn base(&self) -> &FPoint {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dir.dim()
    }

    pub fn contains(&self, pt: &FPoint, p: u64) -> bool {
        let diff = pt.sub(&self.base, p);
        let lead = self
            .dir
            .coords()
            .iter()
            .position(|&c| c != 0)
            .expect("direction nonzero");
        let t = diff.coord(lead);
        self.dir.scale(t, p) == diff
    }

    pub fn is_isotropic(&self, p: u64) -> bool {
        field::self_dot(&self.dir, p) == 0
    }

    /// Support count on a point set.
    pub fn support(&self, pts: &PointSet) -> u64 {
        let p = pts.p();
        (0..p)
            .filter(|&t| pts.contains_point(&self.base.add(&self.dir.scale(t, p), p)))
            .count() as u64
    }

    /// The perpendicular line through `point` (2D only).
    pub fn perp_through(&self, point: &FPoint, p: u64) -> Line {
        assert_eq!(self.dim(), 2);
        let d = FPoint::from_signed(
            &[-(self.dir.coord(1) as i64), self.dir.coord(0) as i64],
            p,
        );
        Line::from_point_dir(point, &d, p)
    }
}

/// Perpendicular canonical direction in F_p^2: (a, b) -> (-b, a), rescaled.
pub fn perp_direction(dir: &FPoint, p: u64) -> FPoint {
    let d = FPoint::from_signed(&[-(dir.coord(1) as i64), dir.coord(0) as i64], p);
    canonical_direction(&d, p).expect("perp of nonzero is nonzero")
}

/// A canonicalized affine plane in F_p^3: normal with leading coefficient 1,
/// together with the offset `normal . x = offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Plane {
    normal: FPoint,
    offset: u64,
}

impl Plane {
    /// Plane through `point` with the given (nonzero) normal.
    pub fn through(point: &FPoint, normal: &FPoint, p: u64) -> Plane {
        let n = canonical_direction(normal, p).expect("plane normal must be nonzero");
        let offset = field::dot(&n, point, p).expect("same dimension");
        Plane { normal: n, offset }
    }

    pub fn normal(&self) -> &FPoint {
        &self.normal
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn contains(&self, pt: &FPoint, p: u64) -> bool {
        field::dot(&self.normal, pt, p).expect("same dimension") == self.offset
    }

    pub fn contains_line(&self, l: &Line, p: u64) -> bool {
        field::dot(&self.normal, l.dir(), p).expect("same dimension") == 0
            && self.contains(l.base(), p)
    }
}

/// A multiset of planes: canonical plane -> multiplicity >= 1.
#[derive(Debug, Clone, Default)]
pub struct PlaneMultiset {
    map: HashMap<Plane, u64>,
}

impl PlaneMultiset {
    pub fn new() -> PlaneMultiset {
        PlaneMultiset::default()
    }

    pub fn insert(&mut self, plane: Plane, multiplicity: u64) {
        if multiplicity > 0 {
            *self.map.entry(plane).or_insert(0) += multiplicity;
        }
    }

    /// All affine planes of F_p^3, multiplicity 1 each.
    pub fn all_planes(ctx: &PrimeContext) -> PlaneMultiset {
        let p = ctx.p();
        let mut out = PlaneMultiset::new();
        for normal in projective_directions(p, 3) {
            for offset in 0..p {
                out.insert(Plane { normal, offset }, 1);
            }
        }
        out
    }

    /// Total count with multiplicities.
    pub fn total(&self) -> u64 {
        self.map.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Plane, u64)> {
        self.map.iter().map(|(pl, &m)| (pl, m))
    }
}

/// Exact point-plane incidence count and its deviation from |Q||Pi|/p,
/// kept as the exact rational (numerator, denominator p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneIncidences {
    pub count: u64,
    pub deviation_num: i128,
    pub deviation_den: u64,
}

impl PlaneIncidences {
    pub fn deviation(&self) -> f64 {
        self.deviation_num as f64 / self.deviation_den as f64
    }
}

pub fn point_plane_incidences(
    q: &PointSet,
    planes: &PlaneMultiset,
) -> Result<PlaneIncidences, IncidenceError> {
    if q.dim() != 3 {
        return Err(IncidenceError::BadAmbient(q.dim()));
    }
    let p = q.p();
    let total = planes.total() as u128 * q.len() as u128;
    if total >= 1 << 62 {
        return Err(IncidenceError::Overflow);
    }
    let pts = q.to_points();
    let mut count = 0u64;
    for (plane, mult) in planes.iter() {
        let on = pts.iter().filter(|pt| plane.contains(pt, p)).count() as u64;
        count += on * mult;
    }
    let expected_num = q.len() as i128 * planes.total() as i128;
    Ok(PlaneIncidences {
        count,
        deviation_num: count as i128 * p as i128 - expected_num,
        deviation_den: p,
    })
}

/// Same count, omitting incidences (q, pi) with q on some l in `lines`
/// contained in pi.
pub fn point_plane_incidences_excluding(
    q: &PointSet,
    planes: &PlaneMultiset,
    lines: &[Line],
) -> Result<u64, IncidenceError> {
    if q.dim() != 3 {
        return Err(IncidenceError::BadAmbient(q.dim()));
    }
    let p = q.p();
    let pts = q.to_points();
    // per point: which excluded lines pass through it
    let on_lines: Vec<Vec<usize>> = pts
        .iter()
        .map(|pt| {
            lines
                .iter()
                .enumerate()
                .filter(|(_, l)| l.contains(pt, p))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut count = 0u64;
    for (plane, mult) in planes.iter() {
        let contained: HashSet<usize> = lines
            .iter()
            .enumerate()
            .filter(|(_, l)| plane.contains_line(l, p))
            .map(|(i, _)| i)
            .collect();
        for (pt, ls) in pts.iter().zip(&on_lines) {
            if plane.contains(pt, p) && !ls.iter().any(|i| contained.contains(i)) {
                count += mult;
            }
        }
    }
    Ok(count)
}

/// Exact point-line incidences in F_p^2.
pub fn point_line_incidences(pts: &PointSet, lines: &[Line]) -> Result<u64, IncidenceError> {
    if pts.dim() != 2 {
        return Err(IncidenceError::BadAmbient(pts.dim()));
    }
    let p = pts.p();
    let points = pts.to_points();
    let mut count = 0u64;
    for l in lines {
        count += points.iter().filter(|pt| l.contains(pt, p)).count() as u64;
    }
    Ok(count)
}

/// All distinct lines spanned by point pairs, with their support counts.
pub fn line_supports(pts: &PointSet) -> HashMap<Line, u64> {
    let p = pts.p();
    let points = pts.to_points();
    let mut lines: HashSet<Line> = HashSet::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            lines.insert(Line::through(&points[i], &points[j], p));
        }
    }
    lines.into_iter().map(|l| {
        let s = l.support(pts);
        (l, s)
    }).collect()
}

/// All lines supporting at least `k` points, with exact support counts,
/// sorted canonically.
pub fn rich_lines(pts: &PointSet, k: u64) -> Vec<(Line, u64)> {
    assert!(k >= 2, "rich-line threshold must be >= 2");
    let p = pts.p();
    let mut out: Vec<(Line, u64)> = line_supports(pts)
        .into_iter()
        .filter(|(_, s)| *s >= k)
        .collect();
    out.sort_by_key(|(l, _)| (l.dir().encode(p), l.base().encode(p)));
    out
}

/// Maximum number of collinear points; 1 for a singleton.
pub fn max_collinear(pts: &PointSet) -> Result<u64, IncidenceError> {
    if pts.is_empty() {
        return Err(IncidenceError::EmptySet);
    }
    if pts.len() == 1 {
        return Ok(1);
    }
    Ok(line_supports(pts).values().copied().max().unwrap_or(1))
}

fn direction_buckets(z: &FPoint, points: &[FPoint], p: u64) -> HashMap<u64, u64> {
    let mut buckets: HashMap<u64, u64> = HashMap::new();
    for x in points {
        if x == z {
            continue;
        }
        let d = canonical_direction(&x.sub(z, p), p).expect("x != z");
        *buckets.entry(d.encode(p)).or_insert(0) += 1;
    }
    buckets
}

/// Exact count of nontrivial solutions (x != z, y != z) of
/// (x - z).(z - y) = 0 with x, y, z in the 2D point set.
pub fn right_triangle_count(pts: &PointSet) -> Result<u64, IncidenceError> {
    if pts.dim() != 2 {
        return Err(IncidenceError::BadAmbient(pts.dim()));
    }
    let p = pts.p();
    let points = pts.to_points();
    let mut total = 0u64;
    for z in &points {
        let buckets = direction_buckets(z, &points, p);
        for (&denc, &cnt) in &buckets {
            let d = FPoint::decode(denc, p, 2);
            let perp = perp_direction(&d, p).encode(p);
            if let Some(&cp) = buckets.get(&perp) {
                total += cnt * cp;
            }
        }
    }
    Ok(total)
}

/// The poor / just-rich / very-rich split of the right-triangle count,
/// following the line-pair sum N = sum_z sum_l n(l) n(l_perp) with
/// n(l) = support minus 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightTriangleDecomposition {
    pub total: u64,
    pub poor: u64,
    pub just_rich: u64,
    pub very_rich: u64,
    /// Cut-off n^{3/7} between poor and rich.
    pub k_star: f64,
    /// Threshold n^{6/11} above which a line is very rich.
    pub very_rich_threshold: f64,
}

pub fn right_triangle_decomposition(
    pts: &PointSet,
) -> Result<RightTriangleDecomposition, IncidenceError> {
    if pts.dim() != 2 {
        return Err(IncidenceError::BadAmbient(pts.dim()));
    }
    let p = pts.p();
    if p % 4 != 3 {
        return Err(IncidenceError::NeedThreeModFour(p));
    }
    let n = pts.len() as f64;
    let k_star = n.powf(3.0 / 7.0);
    let vr = n.powf(6.0 / 11.0);
    let points = pts.to_points();
    let mut out = RightTriangleDecomposition {
        total: 0,
        poor: 0,
        just_rich: 0,
        very_rich: 0,
        k_star,
        very_rich_threshold: vr,
    };
    for z in &points {
        let buckets = direction_buckets(z, &points, p);
        for (&denc, &cnt) in &buckets {
            let d = FPoint::decode(denc, p, 2);
            let perp = perp_direction(&d, p).encode(p);
            let cp = match buckets.get(&perp) {
                Some(&c) => c,
                None => continue,
            };
            let term = cnt * cp;
            out.total += term;
            let lo = cnt.min(cp) as f64;
            let hi = cnt.max(cp) as f64;
            if lo <= k_star {
                out.poor += term;
            } else if hi >= vr {
                out.very_rich += term;
            } else {
                out.just_rich += term;
            }
        }
    }
    Ok(out)
}

/// Collinear triples on lines whose support lies in [k_lo, k_hi]:
/// ordered s(s-1)(s-2) and unordered C(s, 3) counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollinearTriples {
    pub ordered: u64,
    pub unordered: u64,
}

pub fn collinear_triples(pts: &PointSet, k_lo: u64, k_hi: u64) -> CollinearTriples {
    assert!(2 <= k_lo && k_lo <= k_hi);
    let mut ordered = 0u64;
    let mut unordered = 0u64;
    for (_, s) in line_supports(pts) {
        if s >= k_lo && s <= k_hi && s >= 3 {
            ordered += s * (s - 1) * (s - 2);
            unordered += s * (s - 1) * (s - 2) / 6;
        }
    }
    CollinearTriples { ordered, unordered }
}

/// Edge, triangle and non-collinear-triangle counts of the graph on a 3D
/// point set joining pairs whose difference is isotropic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsotropicGraphStats {
    pub edges: u64,
    pub triangles: u64,
    pub non_collinear_triangles: u64,
}

pub fn isotropic_graph_stats(pts: &PointSet) -> Result<IsotropicGraphStats, IncidenceError> {
    if pts.dim() != 3 {
        return Err(IncidenceError::BadAmbient(pts.dim()));
    }
    let p = pts.p();
    let points = pts.to_points();
    let n = points.len();
    let iso = |a: &FPoint, b: &FPoint| {
        let d = a.sub(b, p);
        !d.is_zero() && field::self_dot(&d, p) == 0
    };
    let mut edges = 0u64;
    let mut triangles = 0u64;
    let mut non_collinear = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            if !iso(&points[i], &points[j]) {
                continue;
            }
            edges += 1;
            for k in (j + 1)..n {
                if iso(&points[i], &points[k]) && iso(&points[j], &points[k]) {
                    triangles += 1;
                    // collinear iff k - i is parallel to j - i
                    let u = points[j].sub(&points[i], p);
                    let v = points[k].sub(&points[i], p);
                    let collinear = (0..p).any(|t| u.scale(t, p) == v);
                    if !collinear {
                        non_collinear += 1;
                    }
                }
            }
        }
    }
    Ok(IsotropicGraphStats {
        edges,
        triangles,
        non_collinear_triangles: non_collinear,
    })
}

/// All p(p+1) affine lines of F_p^2.
pub fn all_lines_2d(ctx: &PrimeContext) -> Vec<Line> {
    let p = ctx.p();
    let mut set = HashSet::new();
    for dir in projective_directions(p, 2) {
        for n in 0..p * p {
            let pt = FPoint::decode(n, p, 2);
            set.insert(Line::from_point_dir(&pt, &dir, p));
        }
    }
    let mut out: Vec<Line> = set.into_iter().collect();
    out.sort_by_key(|l| (l.dir().encode(p), l.base().encode(p)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_canonical_form_is_stable() {
        let p = 7;
        let a = FPoint::new(&[1, 2, 3], p);
        let b = FPoint::new(&[3, 4, 5], p);
        let l1 = Line::through(&a, &b, p);
        let l2 = Line::through(&b, &a, p);
        assert_eq!(l1, l2);
        for t in 0..p {
            assert!(l1.contains(&a.add(&b.sub(&a, p).scale(t, p), p), p));
        }
    }

    #[test]
    fn all_planes_incidences_f3() {
        let ctx = PrimeContext::new(3).unwrap();
        let planes = PlaneMultiset::all_planes(&ctx);
        assert_eq!(planes.total(), 39);
        let q = PointSet::from_encoded((0..27).collect(), 3, 3);
        let inc = point_plane_incidences(&q, &planes).unwrap();
        assert_eq!(inc.count, 351);
        assert_eq!(inc.deviation_num, 0);
    }

    #[test]
    fn plane_multiplicity_is_linear() {
        let p = 5;
        let normal = FPoint::new(&[1, 1, 1], p);
        let plane = Plane::through(&FPoint::new(&[0, 0, 0], p), &normal, p);
        let mut planes = PlaneMultiset::new();
        planes.insert(plane, 5);
        let q = PointSet::from_points(
            &[FPoint::new(&[0, 0, 0], p), FPoint::new(&[1, 4, 0], p)],
            p,
        );
        let inc = point_plane_incidences(&q, &planes).unwrap();
        assert_eq!(inc.count, 10);

        let mut single = PlaneMultiset::new();
        single.insert(plane, 1);
        let q3 = PointSet::from_points(
            &[
                FPoint::new(&[0, 0, 0], p),
                FPoint::new(&[1, 4, 0], p),
                FPoint::new(&[2, 3, 0], p),
            ],
            p,
        );
        assert_eq!(point_plane_incidences(&q3, &single).unwrap().count, 3);
    }

    #[test]
    fn exclusion_with_empty_line_set_matches_plain_count() {
        let ctx = PrimeContext::new(3).unwrap();
        let planes = PlaneMultiset::all_planes(&ctx);
        let q = PointSet::from_encoded((0..10).collect(), 3, 3);
        let plain = point_plane_incidences(&q, &planes).unwrap().count;
        let excl = point_plane_incidences_excluding(&q, &planes, &[]).unwrap();
        assert_eq!(plain, excl);
    }

    #[test]
    fn exclusion_of_a_full_line_pencil_is_zero() {
        let p = 5;
        let dir = FPoint::new(&[1, 0, 0], p);
        let l = Line::from_point_dir(&FPoint::new(&[0, 0, 0], p), &dir, p);
        let q = PointSet::from_points(
            &[
                FPoint::new(&[0, 0, 0], p),
                FPoint::new(&[1, 0, 0], p),
                FPoint::new(&[2, 0, 0], p),
            ],
            p,
        );
        // all planes through l
        let mut planes = PlaneMultiset::new();
        for normal in projective_directions(p, 3) {
            if field::dot(&normal, &dir, p).unwrap() == 0 {
                planes.insert(Plane::through(&FPoint::new(&[0, 0, 0], p), &normal, p), 1);
            }
        }
        assert!(planes.total() > 0);
        let count = point_plane_incidences_excluding(&q, &planes, &[l]).unwrap();
        assert_eq!(count, 0);
    }

    #[test]
    fn point_line_incidences_full_f3() {
        let ctx = PrimeContext::new(3).unwrap();
        let lines = all_lines_2d(&ctx);
        assert_eq!(lines.len(), 12);
        let pts = PointSet::from_encoded((0..9).collect(), 3, 2);
        assert_eq!(point_line_incidences(&pts, &lines).unwrap(), 36);
    }

    #[test]
    fn rich_lines_on_grid() {
        let p = 7;
        let mut pts = Vec::new();
        for a in 0..3u64 {
            for b in 0..3u64 {
                pts.push(FPoint::new(&[a, b], p));
            }
        }
        let set = PointSet::from_points(&pts, p);
        let rich = rich_lines(&set, 3);
        assert_eq!(rich.len(), 8); // 3 rows, 3 columns, 2 diagonals
        assert!(rich_lines(&set, 10).is_empty());

        let collinear = PointSet::from_points(
            &[FPoint::new(&[0, 0], p), FPoint::new(&[1, 1], p), FPoint::new(&[2, 2], p)],
            p,
        );
        assert_eq!(rich_lines(&collinear, 2).len(), 1);
    }

    #[test]
    fn max_collinear_examples() {
        let p = 7;
        let q = PointSet::from_points(
            &[
                FPoint::new(&[0, 0, 0], p),
                FPoint::new(&[1, 0, 0], p),
                FPoint::new(&[2, 0, 0], p),
                FPoint::new(&[0, 1, 1], p),
            ],
            p,
        );
        assert_eq!(max_collinear(&q).unwrap(), 3);
        let full = PointSet::from_encoded((0..27).collect(), 3, 3);
        assert_eq!(max_collinear(&full).unwrap(), 3);
        let two = PointSet::from_points(&[FPoint::new(&[0, 0], p), FPoint::new(&[1, 2], p)], p);
        assert_eq!(max_collinear(&two).unwrap(), 2);
        let one = PointSet::from_points(&[FPoint::new(&[4, 4], p)], p);
        assert_eq!(max_collinear(&one).unwrap(), 1);
        assert!(max_collinear(&PointSet::empty(p, 2)).is_err());
    }

    fn right_triangle_oracle(pts: &PointSet) -> u64 {
        let p = pts.p();
        let points = pts.to_points();
        let mut n = 0u64;
        for x in &points {
            for y in &points {
                for z in &points {
                    if x == z || y == z {
                        continue;
                    }
                    if field::dot(&x.sub(z, p), &z.sub(y, p), p).unwrap() == 0 {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn right_triangles_match_oracle() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let p = 7;
        let single = PointSet::from_points(&[FPoint::new(&[3, 3], p)], p);
        assert_eq!(right_triangle_count(&single).unwrap(), 0);

        let tri = PointSet::from_points(
            &[FPoint::new(&[0, 0], p), FPoint::new(&[1, 0], p), FPoint::new(&[0, 1], p)],
            p,
        );
        assert_eq!(right_triangle_count(&tri).unwrap(), right_triangle_oracle(&tri));
        assert!(right_triangle_count(&tri).unwrap() >= 1);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [7u64, 11, 13] {
            for _ in 0..8 {
                let pts: Vec<FPoint> = (0..rng.gen_range(2..25))
                    .map(|_| FPoint::new(&[rng.gen_range(0..p), rng.gen_range(0..p)], p))
                    .collect();
                let set = PointSet::from_points(&pts, p);
                assert_eq!(
                    right_triangle_count(&set).unwrap(),
                    right_triangle_oracle(&set),
                    "p={p}"
                );
            }
        }

        // points on a single non-isotropic line, p = 3 (mod 4)
        let p = 11;
        let line_pts: Vec<FPoint> = (0..5).map(|t| FPoint::new(&[t, 2 * t], p)).collect();
        let set = PointSet::from_points(&line_pts, p);
        assert_eq!(right_triangle_count(&set).unwrap(), right_triangle_oracle(&set));
    }

    #[test]
    fn right_triangle_decomposition_sums() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let p = 19;
        let mut pts = Vec::new();
        for a in 0..4u64 {
            for b in 0..4u64 {
                pts.push(FPoint::new(&[a, b], p));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            pts.push(FPoint::new(&[rng.gen_range(0..p), rng.gen_range(0..p)], p));
        }
        let set = PointSet::from_points(&pts, p);
        let dec = right_triangle_decomposition(&set).unwrap();
        assert_eq!(dec.poor + dec.just_rich + dec.very_rich, dec.total);
        assert_eq!(dec.total, right_triangle_count(&set).unwrap());

        // tiny sets are entirely poor
        let tiny = PointSet::from_points(
            &[FPoint::new(&[0, 0], p), FPoint::new(&[1, 0], p), FPoint::new(&[0, 1], p)],
            p,
        );
        let d = right_triangle_decomposition(&tiny).unwrap();
        assert_eq!(d.poor, d.total);

        // rejected when isotropic directions exist
        let set5 = PointSet::from_points(&[FPoint::new(&[0, 0], 5), FPoint::new(&[1, 2], 5)], 5);
        assert!(matches!(
            right_triangle_decomposition(&set5),
            Err(IncidenceError::NeedThreeModFour(5))
        ));
    }

    #[test]
    fn k_star_example_values() {
        let n: f64 = 128.0;
        assert!((n.powf(3.0 / 7.0) - 8.0).abs() < 1e-9);
        assert!((n.powf(6.0 / 11.0) - 14.16).abs() < 0.1);
    }

    #[test]
    fn collinear_triples_examples() {
        let p = 7;
        let three = PointSet::from_points(
            &[FPoint::new(&[0, 0], p), FPoint::new(&[1, 1], p), FPoint::new(&[2, 2], p)],
            p,
        );
        let c = collinear_triples(&three, 2, 5);
        assert_eq!(c.ordered, 6);
        assert_eq!(c.unordered, 1);
        let none = collinear_triples(&three, 4, 5);
        assert_eq!(none.ordered, 0);
    }

    #[test]
    fn collinear_triples_match_brute_force_on_grid() {
        let p = 11;
        let mut pts = Vec::new();
        for a in 0..3u64 {
            for b in 0..4u64 {
                pts.push(FPoint::new(&[a, b], p));
            }
        }
        let set = PointSet::from_points(&pts, p);
        let c = collinear_triples(&set, 2, p);
        // brute force over ordered distinct triples
        let points = set.to_points();
        let mut ordered = 0u64;
        for a in &points {
            for b in &points {
                for cpt in &points {
                    if a == b || a == cpt || b == cpt {
                        continue;
                    }
                    let u = b.sub(a, p);
                    let v = cpt.sub(a, p);
                    if (0..p).any(|t| u.scale(t, p) == v) {
                        ordered += 1;
                    }
                }
            }
        }
        assert_eq!(c.ordered, ordered);
    }

    #[test]
    fn isotropic_graph_examples() {
        let p = 7;
        // no isotropic differences
        let a = PointSet::from_points(
            &[FPoint::new(&[0, 0, 0], p), FPoint::new(&[1, 0, 0], p)],
            p,
        );
        assert_eq!(
            isotropic_graph_stats(&a).unwrap(),
            IsotropicGraphStats {
                edges: 0,
                triangles: 0,
                non_collinear_triangles: 0
            }
        );
        // three points on an isotropic line
        let ctx = PrimeContext::new(p).unwrap();
        let v = field::isotropic_directions(&ctx, 3).unwrap()[0];
        let pts: Vec<FPoint> = (0..3).map(|t| v.scale(t, p)).collect();
        let set = PointSet::from_points(&pts, p);
        let stats = isotropic_graph_stats(&set).unwrap();
        assert_eq!(stats.edges, 3);
        assert_eq!(stats.triangles, 1);
        assert_eq!(stats.non_collinear_triangles, 0);
    }

    #[test]
    fn isotropic_graph_triangles_are_collinear_random() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in [5u64, 7, 11] {
            for _ in 0..6 {
                let pts: Vec<FPoint> = (0..25)
                    .map(|_| {
                        FPoint::new(
                            &[rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p)],
                            p,
                        )
                    })
                    .collect();
                let set = PointSet::from_points(&pts, p);
                let stats = isotropic_graph_stats(&set).unwrap();
                assert_eq!(stats.non_collinear_triangles, 0, "p={p}");
            }
        }
    }
}
