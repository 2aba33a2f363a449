//! Seeded Monte Carlo for the tangent-triangle models.
//!
//! Reproducibility contract: a [`CounterRng`] is a pure counter stream, so a
//! shard that owns items `[i0, i1)` seeds each item's generator directly at
//! raw-draw position `i * DRAWS_PER_SAMPLE`. Substreams of distinct items are
//! disjoint by construction, shard partitions change nothing about which
//! draws a sample sees, and recombination concatenates shard outputs in shard
//! order. Identical `(seed, n, shards)` therefore reproduce results
//! bit-for-bit.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::analytic::{self, DensityModel, QuadratureSpec};
use crate::geometry::{self, ContactAngles};
use crate::math;

/// Base seed for a simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingError {
    EmptySample,
}

impl fmt::Display for SamplingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingError::EmptySample => write!(f, "empty sample"),
        }
    }
}

impl core::error::Error for SamplingError {}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 viewed as a counter-based generator: draw `i` of seed `s` is
/// `mix(s + (i + 1) * GAMMA)`, so jumping to an arbitrary stream position is
/// a single multiply.
#[derive(Debug, Clone)]
pub struct CounterRng {
    state: u64,
}

impl CounterRng {
    pub fn new(seed: Seed) -> Self {
        CounterRng { state: seed.0 }
    }

    /// Generator positioned so that its next draw is raw draw `index` of the
    /// stream belonging to `seed`.
    pub fn at(seed: Seed, index: u64) -> Self {
        CounterRng {
            state: seed.0.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }
}

/// Raw draws budgeted per sampled configuration. `sample_contacts`,
/// `sample_side_incircle` and `sample_side_naive` each consume exactly this
/// many uniforms, which keeps item substreams aligned.
pub const DRAWS_PER_SAMPLE: u64 = 2;

/// Generator for item `item` of the run keyed by `seed`.
pub fn item_rng(seed: Seed, item: u64) -> CounterRng {
    CounterRng::at(seed, item.wrapping_mul(DRAWS_PER_SAMPLE))
}

fn cot_half(angle: f64) -> f64 {
    1.0 / math::tan(0.5 * angle)
}

/// Contact angle of a single random tangent: uniform on `[0, pi]`.
/// Consumes one uniform.
pub fn sample_theta_single(rng: &mut CounterRng) -> f64 {
    PI * rng.next_f64()
}

/// Contact angles uniform on the open triangle
/// `{alpha > 0, beta > 0, alpha + beta < pi}` by square folding; exact and
/// rejection-free, so the two-draw budget always holds. Draws that land on
/// the measure-zero boundary are remapped to fixed interior points.
pub fn sample_contacts(rng: &mut CounterRng) -> ContactAngles {
    let mut u = rng.next_f64();
    let mut v = rng.next_f64();
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    if u == 0.0 {
        u = 0.25;
    }
    if v == 0.0 {
        v = 0.25;
    }
    if u + v >= 1.0 - 1e-12 {
        let scale = 0.5 / (u + v);
        u *= scale;
        v *= scale;
    }
    ContactAngles::new(PI * u, PI * v).expect("folded draw lies inside the simplex")
}

/// Side of an incircle-conditioned triangle:
/// `l = cot(alpha/2) + cot(beta/2) > 2`. Consumes two uniforms.
pub fn sample_side_incircle(rng: &mut CounterRng) -> f64 {
    let c = sample_contacts(rng);
    cot_half(c.alpha()) + cot_half(c.beta())
}

/// Side under the incorrect unconditioned model: the sum of two independent
/// one-sided Cauchy heights. Consumes two uniforms.
pub fn sample_side_naive(rng: &mut CounterRng) -> f64 {
    let h = naive_height(rng.next_f64());
    let k = naive_height(rng.next_f64());
    h + k
}

fn naive_height(mut u: f64) -> f64 {
    if u == 0.0 {
        u = 0.5; // theta = 0 would put the crossing at infinity
    }
    cot_half(PI * u)
}

/// Seeded Monte Carlo outputs: the headline estimate, its standard error and
/// named extras (minima, maxima, quantiles, test statistics).
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary {
    pub n: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub extra: Vec<(&'static str, f64)>,
}

impl SimulationSummary {
    pub fn extra_value(&self, key: &str) -> Option<f64> {
        self.extra
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
    }
}

/// Fixed-width histogram with a trailing overflow bin.
///
/// `bin_edges` are strictly increasing and one longer than `counts`; the last
/// edge is `+inf`, so the final count collects everything at or above the
/// cap. Counts sum to `total`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    bin_edges: Vec<f64>,
    counts: Vec<u64>,
    total: u64,
}

impl Histogram {
    pub fn from_samples(samples: &[f64], lo: f64, cap: f64, bins: u32) -> Histogram {
        assert!(bins >= 1, "need at least one bin");
        assert!(cap > lo, "cap must exceed the lower edge");
        let bins = bins as usize;
        let width = (cap - lo) / bins as f64;

        let mut bin_edges = Vec::with_capacity(bins + 2);
        for i in 0..=bins {
            bin_edges.push(lo + width * i as f64);
        }
        bin_edges.push(f64::INFINITY);

        let mut counts = alloc::vec![0_u64; bins + 1];
        for &x in samples {
            let idx = if x >= cap {
                bins
            } else {
                (math::floor((x - lo) / width).max(0.0) as usize).min(bins - 1)
            };
            counts[idx] += 1;
        }

        Histogram {
            bin_edges,
            counts,
            total: samples.len() as u64,
        }
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Kolmogorov-Smirnov sup-norm distance between the empirical CDF of an
/// ascending sample and a reference CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> Result<f64, SamplingError> {
    if sorted.is_empty() {
        return Err(SamplingError::EmptySample);
    }
    let fvals: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    Ok(sup_deviation_sorted(&fvals))
}

pub(crate) fn sup_deviation_sorted(fvals: &[f64]) -> f64 {
    let n = fvals.len() as f64;
    let mut d = 0.0_f64;
    for (i, f) in fvals.iter().enumerate() {
        let above = ((i + 1) as f64 / n - f).abs();
        let below = (i as f64 / n - f).abs();
        d = d.max(above).max(below);
    }
    d
}

fn shard_range(n: u64, shards: u32, shard: u32) -> (u64, u64) {
    let s = shards as u128;
    let k = shard as u128;
    let n = n as u128;
    ((n * k / s) as u64, (n * (k + 1) / s) as u64)
}

fn collect_samples<F: Fn(&mut CounterRng) -> f64>(
    n: u64,
    seed: Seed,
    shards: u32,
    sampler: F,
) -> Vec<f64> {
    let shards = shards.max(1);
    let mut all = Vec::with_capacity(n as usize);
    for shard in 0..shards {
        let (lo, hi) = shard_range(n, shards, shard);
        for item in lo..hi {
            let mut rng = item_rng(seed, item);
            all.push(sampler(&mut rng));
        }
    }
    all
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let idx = math::floor(p * (n - 1) as f64 + 0.5) as usize;
    sorted[idx.min(n - 1)]
}

struct Moments {
    mean: f64,
    std_error: f64,
    min: f64,
    max: f64,
}

fn moments(samples: &[f64]) -> Moments {
    let n = samples.len() as f64;
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &x in samples {
        sum += x;
        min = min.min(x);
        max = max.max(x);
    }
    let mean = sum / n;
    let mut ss = 0.0;
    for &x in samples {
        let d = x - mean;
        ss += d * d;
    }
    let std_error = if samples.len() > 1 {
        math::sqrt(ss / (n * (n - 1.0)))
    } else {
        0.0
    };
    Moments {
        mean,
        std_error,
        min,
        max,
    }
}

/// Fraction of sampled incircle triangles that are acute, with the binomial
/// standard error `sqrt(p (1 - p) / n)`.
pub fn estimate_acute_probability(n: u64, seed: Seed, shards: u32) -> SimulationSummary {
    assert!(n >= 1, "need at least one sample");
    let shards = shards.max(1);
    let mut acute_total = 0_u64;
    for shard in 0..shards {
        let (lo, hi) = shard_range(n, shards, shard);
        let mut acute = 0_u64;
        for item in lo..hi {
            let mut rng = item_rng(seed, item);
            let gaps = geometry::gaps_from_contacts(sample_contacts(&mut rng));
            if geometry::is_acute(gaps) {
                acute += 1;
            }
        }
        acute_total += acute;
    }
    let p = acute_total as f64 / n as f64;
    SimulationSummary {
        n,
        estimate: p,
        std_error: math::sqrt(p * (1.0 - p) / n as f64),
        extra: alloc::vec![("acute_count", acute_total as f64)],
    }
}

/// Perimeters of sampled incircle triangles via the tangent-length route.
///
/// The estimate is the sample mean (which drifts upward with `n`: the law is
/// heavy-tailed). The histogram spans `[6 sqrt 3, cap]` where the cap is
/// three times the analytic 0.999 side quantile, overflow in the final bin.
pub fn simulate_perimeter(
    n: u64,
    seed: Seed,
    bins: u32,
    shards: u32,
) -> (SimulationSummary, Histogram) {
    assert!(n >= 1, "need at least one sample");
    let samples = collect_samples(n, seed, shards, |rng| {
        let gaps = geometry::gaps_from_contacts(sample_contacts(rng));
        let [g1, g2, g3] = gaps.as_array();
        2.0 * (math::tan(0.5 * g1) + math::tan(0.5 * g2) + math::tan(0.5 * g3))
    });

    let m = moments(&samples);
    let mut sorted = samples.clone();
    sorted.sort_unstable_by(f64::total_cmp);

    let floor = 6.0 * math::sqrt(3.0);
    let cap = 3.0 * side_quantile_cap(DensityModel::IncircleConditioned);
    let histogram = Histogram::from_samples(&sorted, floor, cap, bins);

    let summary = SimulationSummary {
        n,
        estimate: m.mean,
        std_error: m.std_error,
        extra: alloc::vec![
            ("min", m.min),
            ("max", m.max),
            ("q25", quantile_sorted(&sorted, 0.25)),
            ("median", quantile_sorted(&sorted, 0.5)),
            ("q75", quantile_sorted(&sorted, 0.75)),
            ("q90", quantile_sorted(&sorted, 0.9)),
        ],
    };
    (summary, histogram)
}

fn side_quantile_cap(model: DensityModel) -> f64 {
    let spec = QuadratureSpec::default();
    analytic::quantile(model, 0.999, &spec, 1e-9)
        .expect("0.999 quantile of a fixed analytic law")
}

/// Side samples under `model`, with the KS statistic against the matching
/// analytic CDF in `extra["ks"]`. The estimate is the sample mean. The
/// histogram spans the support up to the analytic 0.999 quantile.
pub fn simulate_side(
    model: DensityModel,
    n: u64,
    seed: Seed,
    bins: u32,
    shards: u32,
) -> (SimulationSummary, Histogram) {
    assert!(n >= 1, "need at least one sample");
    let samples = collect_samples(n, seed, shards, |rng| match model {
        DensityModel::SingleTangent => naive_height(rng.next_f64()),
        DensityModel::NaiveConvolution => sample_side_naive(rng),
        DensityModel::IncircleConditioned => sample_side_incircle(rng),
    });

    let m = moments(&samples);
    let mut sorted = samples.clone();
    sorted.sort_unstable_by(f64::total_cmp);

    let spec = QuadratureSpec::default();
    let fvals = analytic::cdf_grid(model, &sorted, &spec)
        .expect("analytic CDF over sorted samples");
    let ks = sup_deviation_sorted(&fvals);

    let lo = model.support_lower_bound();
    let histogram = Histogram::from_samples(&sorted, lo, side_quantile_cap(model), bins);

    let summary = SimulationSummary {
        n,
        estimate: m.mean,
        std_error: m.std_error,
        extra: alloc::vec![
            ("min", m.min),
            ("max", m.max),
            ("q25", quantile_sorted(&sorted, 0.25)),
            ("median", quantile_sorted(&sorted, 0.5)),
            ("q75", quantile_sorted(&sorted, 0.75)),
            ("q90", quantile_sorted(&sorted, 0.9)),
            ("ks", ks),
        ],
    };
    (summary, histogram)
}

/// Upper contact angles of sampled configurations; the estimate is the mean
/// (analytically `pi/3`). KS runs against the closed-form marginal CDF.
pub fn simulate_alpha(
    n: u64,
    seed: Seed,
    bins: u32,
    shards: u32,
) -> (SimulationSummary, Histogram) {
    assert!(n >= 1, "need at least one sample");
    let samples = collect_samples(n, seed, shards, |rng| sample_contacts(rng).alpha());

    let m = moments(&samples);
    let mut sorted = samples.clone();
    sorted.sort_unstable_by(f64::total_cmp);

    let fvals: Vec<f64> = sorted.iter().map(|&a| analytic::marginal_alpha_cdf(a)).collect();
    let ks = sup_deviation_sorted(&fvals);

    let histogram = Histogram::from_samples(&sorted, 0.0, PI, bins);

    let summary = SimulationSummary {
        n,
        estimate: m.mean,
        std_error: m.std_error,
        extra: alloc::vec![
            ("min", m.min),
            ("max", m.max),
            ("q25", quantile_sorted(&sorted, 0.25)),
            ("median", quantile_sorted(&sorted, 0.5)),
            ("q75", quantile_sorted(&sorted, 0.75)),
            ("ks", ks),
        ],
    };
    (summary, histogram)
}
