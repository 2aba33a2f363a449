//! Independent numerical oracles for the analytic module: normalization by
//! semi-infinite quadrature, the convolution identity behind the incircle
//! density, stability sweeps, tail behavior and the high-precision median.

use core::f64::consts::PI;

use proptest::prelude::*;
use tangenttri::analytic::{
    acute_probability_exact, cdf, density_bivariate_hk, density_incircle, f_term, g_term,
    integration_limits, marginal_alpha, quantile, DensityModel, QuadratureSpec,
};
use tangenttri::numerics::{integrate_adaptive, integrate_semi_infinite};
use tangenttri::sampling::{sample_side_naive, CounterRng, Seed};

const MODELS: [DensityModel; 3] = [
    DensityModel::SingleTangent,
    DensityModel::NaiveConvolution,
    DensityModel::IncircleConditioned,
];

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn densities_are_normalized() {
    for model in MODELS {
        let r = integrate_semi_infinite(|x| model.pdf(x), model.support_lower_bound(), &spec())
            .unwrap();
        let tol = if model == DensityModel::IncircleConditioned {
            1e-9
        } else {
            1e-10
        };
        assert!(
            (r.value - 1.0).abs() < tol,
            "{model:?} integrates to {}",
            r.value
        );
    }
}

#[test]
fn bivariate_density_is_normalized() {
    // iterated: inner over k in (1/h, inf), outer over h in (0, inf)
    let s = spec();
    let outer = integrate_semi_infinite(
        |h| {
            integrate_semi_infinite(|k| density_bivariate_hk(h, k).unwrap(), 1.0 / h, &s)
                .map(|r| r.value)
                .unwrap_or(f64::NAN)
        },
        0.0,
        &s,
    )
    .unwrap();
    assert!((outer.value - 1.0).abs() < 1e-8, "mass = {}", outer.value);
}

#[test]
fn convolution_identity_reproduces_the_closed_form() {
    // direct quadrature of (8/pi^2) Int_{a(l)}^{b(l)} dk / (((l-k)^2+1)(k^2+1))
    let s = spec();
    for i in 0..20 {
        let l = 2.0 + 48.0 * (i as f64 + 0.5) / 20.0;
        let (a, b) = integration_limits(l).unwrap();
        let direct = integrate_adaptive(
            |k| {
                let d = l - k;
                1.0 / ((d * d + 1.0) * (k * k + 1.0))
            },
            a,
            b,
            &s,
        )
        .unwrap()
        .value
            * (8.0 / (PI * PI));
        let closed = density_incircle(l);
        assert!(
            (direct - closed).abs() < 1e-10,
            "l = {l}: convolution {direct} vs closed form {closed}"
        );
    }
}

#[test]
fn convolution_identity_at_three() {
    let s = spec();
    let (a, b) = integration_limits(3.0).unwrap();
    let kernel = integrate_adaptive(
        |k| {
            let d = 3.0 - k;
            1.0 / ((d * d + 1.0) * (k * k + 1.0))
        },
        a,
        b,
        &s,
    )
    .unwrap()
    .value;
    // the kernel equals density * pi^2 (l^2+4) l / (16 ... ) recast through
    // the (8/pi^2) prefactor
    let expected = density_incircle(3.0) * PI * PI / 8.0;
    assert!((kernel - expected).abs() < 1e-12);
}

#[test]
fn vieta_relations_hold_across_the_support() {
    for i in 0..600 {
        let l = 2.0 * (1.0 + 1e-9) * 1.023_f64.powi(i);
        let (a, b) = integration_limits(l).unwrap();
        assert!((a * b - 1.0).abs() < 1e-12, "l = {l}");
        assert!(((a + b) - l).abs() <= 1e-12 * l.max(1.0), "l = {l}");
        assert!(0.0 < a && a <= 1.0 && 1.0 <= b && b < l);
    }
}

#[test]
fn g_term_naive_and_stable_forms_agree() {
    // ln b - ln a against 2 acosh(l/2), sweeping l from 2 + 1e-6 to 1e6
    let mut l = 2.0 + 1e-6;
    while l < 1e6 {
        let (a, b) = integration_limits(l).unwrap();
        let naive = b.ln() - a.ln();
        let stable = g_term(l).unwrap();
        assert!(
            (naive - stable).abs() <= 1e-12 * stable.max(1.0),
            "l = {l}: naive {naive} vs stable {stable}"
        );
        l *= 1.7;
    }
}

#[test]
fn f_term_asymptote_at_large_argument() {
    // f(l) -> l pi/2 - 2 + O(1/l^2)
    let l = 1e6;
    let f = f_term(l).unwrap();
    assert!((f - (l * PI / 2.0 - 2.0)).abs() < 1e-8);
}

#[test]
fn incircle_tail_is_inverse_square() {
    // l^2 * density(l) decreases monotonically to the finite limit 8/pi on a
    // log grid spanning [1e3, 1e6]
    let mut prev = f64::INFINITY;
    let mut l = 1e3;
    while l <= 1e6 {
        let scaled = l * l * density_incircle(l);
        assert!(scaled > 2.0 && scaled < 3.0, "l = {l}: {scaled}");
        assert!(scaled < prev, "not monotone at l = {l}");
        prev = scaled;
        l *= 10.0_f64.powf(0.25);
    }
    assert!((prev - 8.0 / PI).abs() < 1e-3);
}

#[test]
fn incircle_median_matches_the_reference_constant() {
    // reference: 5.5482039188784452776442997...
    let tight = QuadratureSpec::new(1e-13, 1e-13, 2000);
    let median = quantile(DensityModel::IncircleConditioned, 0.5, &tight, 1e-13).unwrap();
    assert!(
        (median - 5.548_203_918_878_445).abs() < 5e-12,
        "median = {median:.17}"
    );
}

#[test]
fn naive_median_agrees_with_monte_carlo() {
    let analytic = quantile(DensityModel::NaiveConvolution, 0.5, &spec(), 1e-12).unwrap();
    let mut rng = CounterRng::new(Seed(2024));
    let n = 1_000_000;
    let mut samples: Vec<f64> = (0..n).map(|_| sample_side_naive(&mut rng)).collect();
    samples.sort_unstable_by(f64::total_cmp);
    let empirical = samples[n / 2];
    assert!(
        (analytic - empirical).abs() < 0.01,
        "analytic {analytic} vs empirical {empirical}"
    );
}

#[test]
fn naive_cdf_tracks_the_empirical_cdf() {
    let s = spec();
    let mut rng = CounterRng::new(Seed(77));
    let n = 1_000_000_usize;
    let mut samples: Vec<f64> = (0..n).map(|_| sample_side_naive(&mut rng)).collect();
    samples.sort_unstable_by(f64::total_cmp);
    // sup-difference probed on a grid of the empirical order statistics
    let mut sup: f64 = 0.0;
    for i in (0..n).step_by(997) {
        let f = cdf(DensityModel::NaiveConvolution, samples[i], &s).unwrap();
        let lo = i as f64 / n as f64;
        let hi = (i + 1) as f64 / n as f64;
        sup = sup.max((f - lo).abs()).max((f - hi).abs());
    }
    assert!(sup < 0.005, "sup difference {sup}");
}

#[test]
fn marginal_alpha_integrates_to_one_with_mean_pi_thirds() {
    let s = spec();
    let total = integrate_adaptive(marginal_alpha, 0.0, PI, &s).unwrap().value;
    assert!((total - 1.0).abs() < 1e-12);
    let mean = integrate_adaptive(|a| a * marginal_alpha(a), 0.0, PI, &s)
        .unwrap()
        .value;
    assert!((mean - PI / 3.0).abs() < 1e-10);
}

#[test]
fn acute_region_area_is_an_eighth_of_pi_squared() {
    let s = spec();
    // same region as the probability integral, unit density
    let area = integrate_adaptive(
        |alpha| {
            integrate_adaptive(|_| 1.0, 0.5 * PI - alpha, 0.5 * PI, &s)
                .map(|r| r.value)
                .unwrap_or(f64::NAN)
        },
        0.0,
        0.5 * PI,
        &s,
    )
    .unwrap()
    .value;
    assert!((area - PI * PI / 8.0).abs() < 1e-10);

    let p = acute_probability_exact(&s).unwrap();
    assert!((p - 2.0 / (PI * PI) * area).abs() < 1e-12);
    assert!((p - 0.25).abs() < 1e-10);
}

#[test]
fn quantile_inverts_cdf_on_the_support_interior() {
    let s = spec();
    let cases = [
        (DensityModel::SingleTangent, [0.3, 1.0, 4.0]),
        (DensityModel::NaiveConvolution, [0.8, 2.5, 9.0]),
        (DensityModel::IncircleConditioned, [2.6, 5.5, 30.0]),
    ];
    for (model, xs) in cases {
        for x in xs {
            let p = cdf(model, x, &s).unwrap();
            let back = quantile(model, p, &s, 1e-12).unwrap();
            assert!(
                (back - x).abs() < 1e-8,
                "{model:?}: x = {x}, round trip {back}"
            );
        }
    }
}

#[test]
fn quantile_tail_bracket_expansion_fails_gracefully() {
    // p indistinguishable from 1 in f64 cannot be bracketed on a heavy tail
    let err = quantile(
        DensityModel::IncircleConditioned,
        1.0 - 1e-16,
        &spec(),
        1e-10,
    );
    assert!(err.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cdf_is_monotone(x1 in 0.01..60.0_f64, x2 in 0.01..60.0_f64) {
        let s = spec();
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        for model in MODELS {
            let c_lo = cdf(model, lo, &s).unwrap();
            let c_hi = cdf(model, hi, &s).unwrap();
            prop_assert!(c_lo <= c_hi + 1e-12);
            prop_assert!((0.0..=1.0).contains(&c_lo));
            prop_assert!((0.0..=1.0).contains(&c_hi));
        }
    }

    #[test]
    fn incircle_support_is_empty_below_two(l in -10.0..=2.0_f64) {
        prop_assert_eq!(density_incircle(l), 0.0);
    }

    #[test]
    fn bivariate_support_is_empty_below_the_hyperbola(
        h in 0.001..50.0_f64,
        frac in 0.001..1.0_f64,
    ) {
        let k = frac / h;
        prop_assert_eq!(density_bivariate_hk(h, k).unwrap(), 0.0);
    }

    #[test]
    fn f_and_g_terms_are_positive_on_the_support(l in 2.000001..1e4_f64) {
        prop_assert!(f_term(l).unwrap() > 0.0);
        prop_assert!(g_term(l).unwrap() > 0.0);
        prop_assert!(density_incircle(l) > 0.0);
    }
}
