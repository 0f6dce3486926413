//! Independent brute-force oracles shared by the integration tests.
//! These deliberately re-derive everything from first principles and
//! avoid the library's counting code paths.

use ffext::incidence::{Line, Plane, PlaneMultiset};
use ffext::{FPoint, PointSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// E(X) by enumerating all quadruples x + y = z + u.
pub fn quadruple_energy_oracle(pts: &[FPoint], p: u64) -> u64 {
    let mut count = 0u64;
    for x in pts {
        for y in pts {
            let s = x.add(y, p);
            for z in pts {
                for u in pts {
                    if z.add(u, p) == s {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Nontrivial right triangles: (x - z) . (z - y) = 0 with x != z, y != z.
pub fn right_triangle_oracle(pts: &[FPoint], p: u64) -> u64 {
    let mut count = 0u64;
    for z in pts {
        for x in pts {
            if x == z {
                continue;
            }
            for y in pts {
                if y == z {
                    continue;
                }
                let dx = x.sub(z, p);
                let dy = z.sub(y, p);
                let dot: u64 = dx
                    .coords()
                    .iter()
                    .zip(dy.coords())
                    .map(|(a, b)| a * b % p)
                    .sum::<u64>()
                    % p;
                if dot == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

fn on_plane(pt: &FPoint, plane: &Plane, p: u64) -> bool {
    let dot: u64 = plane
        .normal()
        .coords()
        .iter()
        .zip(pt.coords())
        .map(|(a, b)| a * b % p)
        .sum::<u64>()
        % p;
    dot == plane.offset()
}

fn plane_contains_line(plane: &Plane, line: &Line, p: u64) -> bool {
    (0..p).all(|t| {
        let pt = line.base().add(&line.dir().scale(t, p), p);
        on_plane(&pt, plane, p)
    })
}

/// Point-plane incidences with multiplicity, by direct membership tests.
pub fn point_plane_oracle(q: &PointSet, planes: &PlaneMultiset) -> u64 {
    let p = q.p();
    let mut count = 0u64;
    for (plane, mult) in planes.iter() {
        for pt in q.iter_points() {
            if on_plane(&pt, plane, p) {
                count += mult;
            }
        }
    }
    count
}

/// Same, excluding incidences (q, pi) where q lies on some l in `lines`
/// with l contained in pi.
pub fn point_plane_excluding_oracle(q: &PointSet, planes: &PlaneMultiset, lines: &[Line]) -> u64 {
    let p = q.p();
    let mut count = 0u64;
    for (plane, mult) in planes.iter() {
        for pt in q.iter_points() {
            if !on_plane(&pt, plane, p) {
                continue;
            }
            let excluded = lines.iter().any(|l| {
                l.contains(&pt, p) && plane_contains_line(plane, l, p)
            });
            if !excluded {
                count += mult;
            }
        }
    }
    count
}

/// A reproducible random subset of F_p^dim with `size` distinct points.
pub fn random_set(p: u64, dim: usize, size: usize, rng: &mut ChaCha8Rng) -> PointSet {
    let universe = p.pow(dim as u32);
    let size = size.min(universe as usize);
    let enc = rand::seq::index::sample(rng, universe as usize, size)
        .into_iter()
        .map(|i| i as u64)
        .collect();
    PointSet::from_encoded(enc, p, dim)
}

/// Least-squares slope of y against x.
pub fn regression_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

#[allow(dead_code)]
pub fn random_points(p: u64, dim: usize, size: usize, rng: &mut ChaCha8Rng) -> Vec<FPoint> {
    (0..size)
        .map(|_| {
            let coords: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
            FPoint::new(&coords, p)
        })
        .collect()
}
