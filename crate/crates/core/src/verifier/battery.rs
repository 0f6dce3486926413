//! The standard test battery: named extremal families plus reproducible
//! random indicator sets at geometric cardinality steps.

use crate::field::{self, FPoint, PointSet, PrimeContext};
use crate::paraboloid;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct NamedSet {
    pub name: String,
    pub set: PointSet,
}

/// Counter-based generator keyed by (seed, instance index): identical
/// streams regardless of thread count or evaluation order.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_subset(universe: u64, size: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let size = size.min(universe as usize);
    rand::seq::index::sample(rng, universe as usize, size)
        .into_iter()
        .map(|i| i as u64)
        .collect()
}

fn line_base(p: u64, dir: &FPoint) -> PointSet {
    let enc = (0..p).map(|t| dir.scale(t, p).encode(p)).collect();
    PointSet::from_encoded(enc, p, dir.dim())
}

fn box_base(p: u64, k: usize, n: u64) -> PointSet {
    let mut enc = Vec::new();
    let mut idx = vec![1u64; k];
    loop {
        enc.push(FPoint::new(&idx, p).encode(p));
        let mut carry = 0;
        while carry < k {
            idx[carry] += 1;
            if idx[carry] <= n {
                break;
            }
            idx[carry] = 1;
            carry += 1;
        }
        if carry == k {
            break;
        }
    }
    PointSet::from_encoded(enc, p, k)
}

/// Base sets in F_p^{d-1} for paraboloid-side checks: point mass, full
/// base, isotropic / non-isotropic lines, product boxes, and
/// `random_count` random indicators at geometric cardinality steps.
pub fn paraboloid_battery(
    ctx: &PrimeContext,
    d: usize,
    seed: u64,
    random_count: usize,
) -> Vec<NamedSet> {
    let p = ctx.p();
    let k = d - 1;
    let universe = p.pow(k as u32);
    let mut out = Vec::new();
    let named = |name: &str, set: PointSet| NamedSet {
        name: name.to_string(),
        set,
    };
    out.push(named(
        "point-mass",
        PointSet::from_encoded(vec![0], p, k),
    ));
    out.push(named(
        "full-base",
        PointSet::from_encoded((0..universe).collect(), p, k),
    ));
    if let Ok(dirs) = field::isotropic_directions(ctx, k) {
        if let Some(dir) = dirs.first() {
            out.push(named("isotropic-line", line_base(p, dir)));
        }
    }
    let mut e1 = vec![0u64; k];
    e1[0] = 1;
    out.push(named(
        "non-isotropic-line",
        line_base(p, &FPoint::new(&e1, p)),
    ));
    let mut box_sizes = vec![2u64, (p as f64).sqrt().ceil() as u64, p - 1];
    box_sizes.dedup();
    for n in box_sizes {
        if n >= 2 && n <= p - 1 {
            out.push(named(&format!("box-{n}"), box_base(p, k, n)));
        }
    }
    append_random(&mut out, universe, p, k, seed, random_count);
    out
}

/// Supports G in the full space F_p^d: point, slab, lifted paraboloid,
/// boxes, and random indicators.
pub fn spatial_battery(
    ctx: &PrimeContext,
    d: usize,
    seed: u64,
    random_count: usize,
) -> Vec<NamedSet> {
    let p = ctx.p();
    let universe = p.pow(d as u32);
    let mut out = Vec::new();
    let named = |name: &str, set: PointSet| NamedSet {
        name: name.to_string(),
        set,
    };
    out.push(named("point-mass", PointSet::from_encoded(vec![0], p, d)));
    // first coordinate is least significant, so the zero-last-coordinate
    // slab is exactly the first p^{d-1} encodings
    out.push(named(
        "slab",
        PointSet::from_encoded((0..p.pow(d as u32 - 1)).collect(), p, d),
    ));
    let full_base = PointSet::from_encoded((0..p.pow(d as u32 - 1)).collect(), p, d - 1);
    out.push(named("paraboloid", paraboloid::lift(&full_base)));
    out.push(named("box-2", box_base(p, d, 2)));
    let half = (p / 2).max(2);
    if half > 2 {
        out.push(named(&format!("box-{half}"), box_base(p, d, half)));
    }
    append_random(&mut out, universe, p, d, seed, random_count);
    out
}

fn append_random(
    out: &mut Vec<NamedSet>,
    universe: u64,
    p: u64,
    dim: usize,
    seed: u64,
    random_count: usize,
) {
    // geometric cardinality steps 2, 4, 8, ... bounded by the universe
    let mut sizes = Vec::new();
    let mut s = 2u64;
    while s <= universe {
        sizes.push(s as usize);
        s *= 2;
    }
    for i in 0..random_count {
        let size = sizes[i % sizes.len()];
        let mut rng = instance_rng(seed, i as u64);
        let enc = random_subset(universe, size, &mut rng);
        out.push(NamedSet {
            name: format!("random-{size}-{i}"),
            set: PointSet::from_encoded(enc, p, dim),
        });
    }
}
