//! Monte Carlo checks of the closed-form renewal bounds: the supremum
//! on-probability bound and the triple-pattern bounds.

use dyntopo::renewal::{
    sup_on_probability_bound, triple_probability_bounds, LifetimeDistribution, OnOffTimeline,
};
use dyntopo::rng::Stream;

#[test]
fn sup_probability_stays_below_bound() {
    let dist = LifetimeDistribution::exponential(1.0).unwrap();
    let p = 0.3;
    let t_max = 0.4;
    let bound = sup_on_probability_bound(&dist, p, t_max).unwrap();
    let reps = 100_000u32;
    let mut hits = 0u32;
    let mut rng = Stream::seed_from(616);
    for _ in 0..reps {
        let tl = OnOffTimeline::sample(&dist, p, t_max, &mut rng).unwrap();
        let on = tl.state_at(0.0).unwrap() || !tl.toggle_times().is_empty();
        if on {
            hits += 1;
        }
    }
    let freq = hits as f64 / reps as f64;
    let se = (freq * (1.0 - freq) / reps as f64).sqrt();
    assert!(
        freq <= bound + 4.0 * se,
        "empirical {freq} exceeds bound {bound}"
    );
    // The bound must also be useful: not absurdly far above the truth.
    assert!(bound < 1.0);
}

#[test]
fn triple_pattern_frequencies_stay_below_bounds() {
    let dist = LifetimeDistribution::exponential(1.0).unwrap();
    let p = 0.3;
    let (r, s, t) = (0.0, 0.1, 0.2);
    let (bound_010, bound_101) = triple_probability_bounds(&dist, p, r, s, t).unwrap();
    let reps = 1_000_000u32;
    let (mut c010, mut c101) = (0u32, 0u32);
    let mut rng = Stream::seed_from(617);
    for _ in 0..reps {
        let tl = OnOffTimeline::sample(&dist, p, 0.25, &mut rng).unwrap();
        let (a, b, c) = (
            tl.state_at(r).unwrap(),
            tl.state_at(s).unwrap(),
            tl.state_at(t).unwrap(),
        );
        if !a && b && !c {
            c010 += 1;
        }
        if a && !b && c {
            c101 += 1;
        }
    }
    let f010 = c010 as f64 / reps as f64;
    let f101 = c101 as f64 / reps as f64;
    let se = |f: f64| (f * (1.0 - f) / reps as f64).sqrt();
    assert!(
        f010 <= bound_010 + 4.0 * se(f010),
        "P(0,1,0) = {f010} vs bound {bound_010}"
    );
    assert!(
        f101 <= bound_101 + 4.0 * se(f101),
        "P(1,0,1) = {f101} vs bound {bound_101}"
    );
}

#[test]
fn conditional_law_matches_monte_carlo_for_uniform() {
    // The conditional on-probability formula holds for non-memoryless
    // lifetimes too.
    let dist = LifetimeDistribution::uniform(2.0).unwrap();
    let p = 0.4;
    let lag = 0.7;
    let reps = 100_000u32;
    let (mut on0, mut both) = (0u32, 0u32);
    let mut rng = Stream::seed_from(618);
    for _ in 0..reps {
        let tl = OnOffTimeline::sample(&dist, p, 1.0, &mut rng).unwrap();
        if tl.state_at(0.0).unwrap() {
            on0 += 1;
            if tl.state_at(lag).unwrap() {
                both += 1;
            }
        }
    }
    let freq = both as f64 / on0 as f64;
    let target = dyntopo::renewal::cond_on_probability(&dist, p, lag);
    let se = (target * (1.0 - target) / on0 as f64).sqrt();
    assert!(
        (freq - target).abs() < 4.0 * se,
        "conditional {freq} vs {target}"
    );
}
