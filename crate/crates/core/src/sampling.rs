//! Deterministic rational sample points for pointwise indicator oracles.
//!
//! Indicator identities are affinely supported on the hyperplane
//! `Σ x_i = total`, so samples are drawn there (off-hyperplane points make
//! every indicator vanish). Denominators are kept small so membership tests
//! stay cheap and boundary points are actually hit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gp::Point;
use crate::label::LabelSet;
use crate::rational::Rat;

/// `count` pseudo-random rational points on the hyperplane `Σ x = total`,
/// with coordinates of denominator 1..=3 in a window around the origin.
pub fn hyperplane_samples(ground: &LabelSet, total: &Rat, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<_> = ground.iter().cloned().collect();
    let mut out = Vec::with_capacity(count);
    if labels.is_empty() {
        return out;
    }
    for _ in 0..count {
        let denom = rng.gen_range(1..=3i64);
        let mut point = Point::new();
        let mut sum = Rat::zero();
        for l in &labels[..labels.len() - 1] {
            let numer = rng.gen_range(-3 * denom..=4 * denom);
            let v = Rat::new(numer, denom);
            sum += v.clone();
            point.insert(l.clone(), v);
        }
        point.insert(labels[labels.len() - 1].clone(), total.clone() - sum);
        out.push(point);
    }
    out
}

/// A sample suite enriched with boundary points: every vertex, all pairwise
/// midpoints, the barycenter, and random small-denominator points on the
/// hyperplane through the vertices.
pub fn boundary_enriched_samples(
    vertices: &[Point],
    total: &Rat,
    random_count: usize,
    seed: u64,
) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for v in vertices {
        out.push(v.clone());
    }
    let half = Rat::new(1, 2);
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            let mid: Point = a
                .iter()
                .map(|(k, va)| (k.clone(), (va.clone() + b[k].clone()) * half.clone()))
                .collect();
            if !out.contains(&mid) {
                out.push(mid);
            }
        }
    }
    if !vertices.is_empty() {
        let n = Rat::from(vertices.len() as i64);
        let mut bary: Point = vertices[0].keys().map(|k| (k.clone(), Rat::zero())).collect();
        for v in vertices {
            for (k, x) in v {
                *bary.get_mut(k).unwrap() += x.clone();
            }
        }
        for x in bary.values_mut() {
            *x = x.clone() / n.clone();
        }
        if !out.contains(&bary) {
            out.push(bary);
        }
        let ground: LabelSet = vertices[0].keys().cloned().collect();
        out.extend(hyperplane_samples(&ground, total, random_count, seed));
    }
    out
}
