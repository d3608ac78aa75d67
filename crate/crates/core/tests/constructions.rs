use monotile::constructions::{
    bound_report, build, BoundStatus, ConstructionParams, ConstructionSidecar, Variant,
};
use monotile::constructions::random::random_min_degree;
use monotile::graph::{read_graph, write_graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEGREE_VARIANTS: [Variant; 6] = [
    Variant::ExTriangle,
    Variant::ExTriangleAlt,
    Variant::ExBes1,
    Variant::ExBes2,
    Variant::ExBes3,
    Variant::PinnedApex,
];

fn params(variant: Variant, n: usize, delta: usize) -> ConstructionParams {
    ConstructionParams { variant, n, delta, extra: vec![] }
}

/// Floor of p/q by repeated subtraction, q > 0.
fn floor_frac(p: i64, q: i64) -> i64 {
    let mut k = 0;
    while q * k > p {
        k -= 1;
    }
    while q * (k + 1) <= p {
        k += 1;
    }
    k
}

#[test]
fn built_graphs_have_requested_order_and_min_degree() {
    let mut built = [0usize; DEGREE_VARIANTS.len()];
    for n in 10usize..=40 {
        for delta in (4 * n).div_ceil(5)..n {
            for (i, &v) in DEGREE_VARIANTS.iter().enumerate() {
                let Ok(c) = build(&params(v, n, delta)) else { continue };
                built[i] += 1;
                assert_eq!(c.graph.n(), n, "{v} {n} {delta}");
                assert_eq!(c.graph.min_degree(), delta, "{v} {n} {delta}");
                assert_eq!(c.graph.r(), 2);
                let covered: usize = c.classes.iter().map(|k| k.len()).sum();
                assert!(covered <= n);
            }
            assert!(build(&params(Variant::ExTriangle, n, delta)).is_ok(), "{n} {delta}");
        }
    }
    assert!(built.iter().all(|&b| b > 0), "{built:?}");
}

#[test]
fn inadmissible_parameters_are_rejected() {
    for v in DEGREE_VARIANTS {
        assert!(build(&params(v, 20, 20)).is_err(), "{v}");
        assert!(build(&params(v, 20, 4)).is_err(), "{v}");
    }
    assert!(bound_report(20, 15).is_err());
    assert!(bound_report(20, 20).is_err());
    assert!(build(&ConstructionParams { extra: vec![3, 3], ..params(Variant::SpecialBlowup, 10, 8) }).is_err());
}

#[test]
fn sidecar_and_graph_round_trip() {
    let c = build(&params(Variant::ExBes2, 25, 22)).unwrap();
    let side = c.sidecar();
    let text = serde_json::to_string(&side).unwrap();
    let back: ConstructionSidecar = serde_json::from_str(&text).unwrap();
    assert_eq!(back, side);
    assert_eq!(back.min_degree, 22);
    let again = build(&back.params).unwrap();
    assert_eq!(again.graph, c.graph);
    assert_eq!(read_graph(&write_graph(&c.graph)).unwrap(), c.graph);
}

proptest! {
    #[test]
    fn bound_report_matches_integer_oracle(n in 5usize..400, t in 0.0f64..1.0) {
        let lo = (4 * n).div_ceil(5);
        let delta = lo + ((n - 1 - lo) as f64 * t) as usize;
        let r = bound_report(n, delta).unwrap();
        let (n, d) = (n as i64, delta as i64);
        let want = (5 * d - 4 * n).min(floor_frac(4 * d - 3 * n, 2)).min(floor_frac(2 * d - n, 3));
        prop_assert_eq!(r.extremal_min, want);
        if r.moon_status == BoundStatus::Proven && 8 * d >= 7 * n {
            prop_assert_eq!(r.moon_bound, floor_frac(2 * d - n, 3));
        }
        if 6 * d <= 5 * n {
            prop_assert_eq!(r.moon_bound, 5 * d - 4 * n);
            prop_assert_eq!(r.bes_bound, Some(-floor_frac(4 * n - 5 * d, 2)));
            prop_assert_eq!(r.bes_status, BoundStatus::Proven);
        }
        if n < 25 {
            prop_assert_eq!((r.c1, r.c2, r.c3), (None, None, None));
        } else {
            prop_assert!(r.c1.is_some() || r.c2.is_some() || r.c3.is_some());
            if let Some(c1) = r.c1 {
                prop_assert_eq!(c1, floor_frac(d + 1, 5));
            }
        }
    }

    #[test]
    fn random_hosts_keep_min_degree(n in 3usize..40, t in 0.0f64..1.0, seed: u64) {
        let delta = ((n - 1) as f64 * t) as usize;
        let g = random_min_degree(n, delta, 2, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(g.n(), n);
        prop_assert!(g.min_degree() >= delta);
    }
}
