//! Seeded random instances for the checkers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ddf::DiscreteDDF;
use crate::delta::DeltaOp;
use crate::measures::FiniteSetFunction;
use crate::ppm::{DistanceMatrix, FinitePpMSpace};
use crate::subset::Subset;

/// A deterministic generator derived from a seed and a stream name, so that
/// independent suites do not share random streams.
pub fn rng_for(seed: u64, stream: &str) -> ChaCha8Rng {
    // FNV-1a over the stream name
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// A DDF with 1 to `max_atoms` atoms at locations in `[0, max_loc]`.
///
/// With probability `inf_prob` part of the mass is moved to `+inf`.
pub fn random_ddf<R: Rng>(rng: &mut R, max_atoms: usize, max_loc: f64, inf_prob: f64) -> DiscreteDDF {
    let k = rng.gen_range(1..=max_atoms.max(1));
    let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..1.0)).collect();
    let inf = if rng.gen_bool(inf_prob) {
        rng.gen_range(0.1..0.5)
    } else {
        0.0
    };
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w *= (1.0 - inf) / total;
    }
    let atoms: Vec<(f64, f64)> = weights
        .into_iter()
        .map(|w| (rng.gen_range(0.0..max_loc), w))
        .collect();
    let finite: f64 = atoms.iter().map(|a| a.1).sum();
    DiscreteDDF::new(atoms, (1.0 - finite).max(0.0)).expect("normalized by construction")
}

/// A DDF whose locations and masses are multiples of `1 / 2^bits`, so that
/// sums of locations are exact in floating point.
pub fn random_dyadic_ddf<R: Rng>(rng: &mut R, max_atoms: usize, max_loc: f64, bits: u32) -> DiscreteDDF {
    let scale = (1u64 << bits) as f64;
    let k = rng.gen_range(1..=max_atoms.max(1));
    let mut cuts: Vec<u32> = (0..k - 1).map(|_| rng.gen_range(1..8)).collect();
    cuts.sort_unstable();
    let mut atoms = Vec::with_capacity(k);
    let mut prev = 0u32;
    for c in cuts.into_iter().chain(std::iter::once(8)) {
        if c > prev {
            let loc = (rng.gen_range(0.0..max_loc) * scale).floor() / scale;
            atoms.push((loc, (c - prev) as f64 / 8.0));
            prev = c;
        }
    }
    DiscreteDDF::new(atoms, 0.0).expect("masses are eighths")
}

pub fn random_ddfs<R: Rng>(rng: &mut R, count: usize, max_atoms: usize, max_loc: f64) -> Vec<DiscreteDDF> {
    (0..count)
        .map(|_| random_ddf(rng, max_atoms, max_loc, 0.2))
        .collect()
}

pub fn random_quadruples<R: Rng>(rng: &mut R, count: usize, max_atoms: usize, max_loc: f64) -> Vec<[DiscreteDDF; 4]> {
    (0..count)
        .map(|_| std::array::from_fn(|_| random_ddf(rng, max_atoms, max_loc, 0.2)))
        .collect()
}

/// Positive weights whose subset sums are pairwise distinct.
pub fn distinct_sum_weights<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
        let mut sums: Vec<f64> = (0u32..1 << n)
            .map(|m| Subset(m).elements().map(|i| w[i]).sum())
            .collect();
        sums.sort_by(f64::total_cmp);
        if sums.windows(2).all(|p| p[1] - p[0] > 1e-6) {
            return w;
        }
    }
}

/// A random numeric metric: shortest-path completion of random edge weights.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let mut d = random_symmetric(rng, n, lo, hi);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// A random ultrametric: minimax-path completion of random edge weights.
pub fn random_ultrametric<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let mut d = random_symmetric(rng, n, lo, hi);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].max(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

#[allow(clippy::needless_range_loop)]
fn random_symmetric<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(lo..hi);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    d
}

/// The Dirac space `F_{p,q} = eps_{d(p,q)}` of a numeric distance matrix.
pub fn dirac_space(d: &[Vec<f64>], tau: DeltaOp) -> FinitePpMSpace {
    let n = d.len();
    let points = (0..n).map(|i| format!("p{i}")).collect();
    let dist = DistanceMatrix::from_fn(n, |i, j| {
        DiscreteDDF::epsilon(d[i][j]).expect("distances are non-negative")
    });
    FinitePpMSpace::new(points, dist, tau).expect("square matrix")
}

/// A Dirac space whose distance violates the numeric triangle inequality
/// between the first three points by a margin of 5.
pub fn non_metric_space<R: Rng>(rng: &mut R, n: usize, tau: DeltaOp) -> FinitePpMSpace {
    assert!(n >= 3, "need three points to break the triangle inequality");
    let mut d = random_metric(rng, n, 1.0, 10.0);
    let long = d[0][1] + d[1][2] + 5.0;
    d[0][2] = long;
    d[2][0] = long;
    dirac_space(&d, tau)
}

/// Replaces one non-empty subset's value by its translate one unit to the
/// right. Returns the corrupted function and the subset that was changed.
pub fn corrupt<R: Rng>(gamma: &FiniteSetFunction, rng: &mut R) -> (FiniteSetFunction, Subset) {
    let subsets: Vec<Subset> = gamma.universe().subsets().filter(|s| !s.is_empty()).collect();
    let target = *subsets.choose(rng).expect("universe is not empty");
    (corrupt_at(gamma, target), target)
}

/// Translates the value at `target` one unit to the right.
pub fn corrupt_at(gamma: &FiniteSetFunction, target: Subset) -> FiniteSetFunction {
    let mut values = gamma.values().to_vec();
    values[target.index()] = values[target.index()].translate(1.0);
    FiniteSetFunction::new(gamma.universe().clone(), values).expect("the empty set is untouched")
}
