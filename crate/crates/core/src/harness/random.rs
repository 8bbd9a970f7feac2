//! Seeded random profile families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::profile::ClusterProfile;

/// Seed from `EDLAB_SEED` when set and parseable, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("EDLAB_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

/// Independent, reproducible stream for item `index` of a sweep.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws from `P(s) ~ s^-alpha` on `1..=smax` by inverting the cumulative table.
struct PowerLaw {
    cumulative: Vec<f64>,
}

impl PowerLaw {
    fn new(alpha: f64, smax: usize) -> Self {
        let mut total = 0.0;
        let cumulative = (1..=smax)
            .map(|s| {
                total += (s as f64).powf(-alpha);
                total
            })
            .collect();
        PowerLaw { cumulative }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        let u = rng.gen::<f64>() * self.cumulative.last().unwrap();
        self.cumulative.partition_point(|&c| c < u) + 1
    }
}

/// A profile on exactly `n` vertices: truncated power-law sizes, the last
/// one trimmed to fit. The exponent and cap vary per draw so that both
/// singleton-heavy and many-mid-cluster regimes appear.
pub fn random_profile(n: usize, rng: &mut impl Rng) -> ClusterProfile {
    assert!(n >= 1);
    let log_n = (n as f64).log2();
    let smax = (2f64.powf(rng.gen_range(0.0..=log_n)) as usize).clamp(1, n);
    let mut sizes = Vec::new();
    let mut left = n;
    match rng.gen_range(0..4) {
        // near-uniform sizes in [smax/2, smax]: many clusters of similar size
        0 => {
            let lo = (smax / 2).max(1);
            while left > 0 {
                let s = rng.gen_range(lo..=smax).min(left);
                sizes.push(s);
                left -= s;
            }
        }
        // a few large clusters over a sea of singletons
        1 => {
            let big = rng.gen_range(1..=8usize);
            for _ in 0..big {
                let s = smax.min(left);
                if s == 0 {
                    break;
                }
                sizes.push(s);
                left -= s;
            }
            sizes.extend(std::iter::repeat_n(1, left));
        }
        _ => {
            let law = PowerLaw::new(rng.gen_range(1.1..3.5), smax);
            while left > 0 {
                let s = law.sample(rng).min(left);
                sizes.push(s);
                left -= s;
            }
        }
    }
    ClusterProfile::new(sizes).expect("positive sizes")
}

/// A profile with exactly `m` clusters on `n >= m` vertices; the `n - m`
/// surplus is split in proportion to Pareto weights.
pub fn random_profile_m(m: usize, n: usize, rng: &mut impl Rng) -> ClusterProfile {
    assert!(m >= 1 && n >= m);
    let alpha = rng.gen_range(1.1..3.0);
    let weights: Vec<f64> = (0..m).map(|_| (1.0 - rng.gen::<f64>()).powf(-1.0 / alpha)).collect();
    let total: f64 = weights.iter().sum();
    let extra = n - m;
    let shares: Vec<f64> = weights.iter().map(|w| w / total * extra as f64).collect();
    let mut sizes: Vec<usize> = shares.iter().map(|s| 1 + s.floor() as usize).collect();
    let mut missing = n - sizes.iter().sum::<usize>();
    let mut by_fraction: Vec<usize> = (0..m).collect();
    by_fraction.sort_by(|&a, &b| {
        let fa = shares[a] - shares[a].floor();
        let fb = shares[b] - shares[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &i in by_fraction.iter().cycle() {
        if missing == 0 {
            break;
        }
        sizes[i] += 1;
        missing -= 1;
    }
    ClusterProfile::new(sizes).expect("positive sizes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_sum_to_n() {
        let mut rng = rng_for(1, 0);
        for n in [1usize, 2, 17, 64, 1000, 4096] {
            for _ in 0..50 {
                assert_eq!(random_profile(n, &mut rng).n(), n);
            }
        }
    }

    #[test]
    fn fixed_m_profiles() {
        let mut rng = rng_for(1, 0);
        for (m, n) in [(8usize, 64usize), (1, 5), (64, 64), (100, 10_000)] {
            let p = random_profile_m(m, n, &mut rng);
            assert_eq!((p.m(), p.n()), (m, n));
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = random_profile(500, &mut rng_for(9, 3));
        let b = random_profile(500, &mut rng_for(9, 3));
        assert_eq!(a, b);
    }
}
