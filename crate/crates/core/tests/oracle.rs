mod common;

use common::{random_model, rng};
use rand::Rng;
use semcom::decoding::{decoding_region, map_decoder};
use semcom::encoding::{build_frontier, TieBreak};
use semcom::hull::{interpolate, lower_envelope, upper_envelope, Point};
use semcom::io::{generate_gridworld, GridWorldParams};
use semcom::oracle::{
    enumerate_decoders, enumerate_encoding_points, global_optimum, index_vectors, pointwise_min, simulate,
    EnumerationBudget, SimulationConfig,
};
use semcom::random::{model, InstanceShape};
use semcom::{DecodingScheme, EncodingScheme, Error, Prior, Rational};

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

#[test]
fn frontier_equals_exhaustive_hull_on_many_instances() {
    let mut checked = 0;
    for seed in 0..160u64 {
        let mut g = rng(seed);
        let mut shape = InstanceShape::new(g.gen_range(1..=4), g.gen_range(2..=6));
        shape.error_free = g.gen_bool(0.3);
        shape.hamming = g.gen_bool(0.3);
        shape.matching_priors = g.gen_bool(0.3);
        let m = model(&mut g, shape);
        let pts = enumerate_encoding_points(&m, &EnumerationBudget::default()).unwrap();
        for tie in [TieBreak::Lexicographic, TieBreak::SeededRandom(seed)] {
            let f = build_frontier(&m, tie);
            assert_eq!(f.lower_envelope(), lower_envelope(pts.iter().map(|p| &p.point)), "seed {seed}");
            assert_eq!(f.upper_envelope(), upper_envelope(pts.iter().map(|p| &p.point)), "seed {seed}");
        }
        checked += 1;
    }
    assert!(checked >= 100);
}

#[test]
fn decoder_enumeration_brackets_every_decoder() {
    for seed in 0..40u64 {
        let m = random_model(seed);
        let region = decoding_region(&m);
        let all = enumerate_decoders(&m, &EnumerationBudget::default()).unwrap();
        assert_eq!(all.len(), m.num_meanings().pow(m.num_messages() as u32));
        assert_eq!(all.iter().map(|d| &d.distortion).min(), Some(&region.min_distortion));
        assert_eq!(all.iter().map(|d| &d.distortion).max(), Some(&region.max_distortion));
    }
}

#[test]
fn global_optimum_matches_brute_force_on_small_instances() {
    for seed in 0..30u64 {
        let mut g = rng(seed);
        let shape = InstanceShape::new(g.gen_range(1..=3), g.gen_range(2..=4));
        let m = model(&mut g, shape);
        let opt = global_optimum(&m, &EnumerationBudget::default()).unwrap();
        let (n, k) = (m.num_meanings(), m.num_messages());
        let hulls: Vec<Vec<Point>> = index_vectors(n, k)
            .map(|dec| {
                let phi = m.phi_table_for(&DecodingScheme::deterministic(dec, n));
                let pts: Vec<Point> = index_vectors(k, n).map(|e| m.point_of(&e, &phi)).collect();
                lower_envelope(&pts)
            })
            .collect();
        let (lo, hi) = (m.cost().min(), m.cost().max());
        for step in 0..=24 {
            let x = &lo + (&hi - &lo) * r(step, 24);
            let brute = hulls.iter().map(|h| interpolate(h, &x).unwrap()).min().unwrap();
            assert_eq!(opt.value_at(&x), Some(brute), "seed {seed} at {x}");
        }
        let enc = build_frontier(&m, TieBreak::Lexicographic).lower_envelope();
        for v in &enc {
            assert!(opt.value_at(&v.cost).unwrap() <= v.distortion);
        }
    }
}

#[test]
fn pointwise_min_handles_crossings() {
    let a = vec![Point::new(r(0, 1), r(0, 1)), Point::new(r(2, 1), r(2, 1))];
    let b = vec![Point::new(r(0, 1), r(1, 1)), Point::new(r(2, 1), r(1, 2))];
    let got = pointwise_min(&[a.clone(), b]);
    assert_eq!(
        got,
        vec![Point::new(r(0, 1), r(0, 1)), Point::new(r(4, 5), r(4, 5)), Point::new(r(2, 1), r(1, 2))]
    );
    assert_eq!(pointwise_min(std::slice::from_ref(&a)), a);
    assert!(pointwise_min(&[]).is_empty());
}

#[test]
fn budget_is_enforced() {
    let grid = generate_gridworld(&GridWorldParams::default()).unwrap();
    let tight = EnumerationBudget::uniform(10);
    assert!(matches!(
        enumerate_encoding_points(&grid, &tight),
        Err(Error::Budget { required: 196, budget: 10 })
    ));
    assert!(matches!(global_optimum(&grid, &tight), Err(Error::Budget { .. })));
}

#[test]
fn gridworld_enumeration() {
    let grid = generate_gridworld(&GridWorldParams::default()).unwrap();
    let pts = enumerate_encoding_points(&grid, &EnumerationBudget::default()).unwrap();
    assert_eq!(pts.len(), 196);
    let decs = enumerate_decoders(&grid, &EnumerationBudget::default()).unwrap();
    assert_eq!(decs.iter().map(|d| &d.distortion).min(), Some(&r(6, 19)));
    let opt = global_optimum(&grid, &EnumerationBudget::default()).unwrap();
    assert_eq!(opt.value_at(&r(10, 3)), Some(r(0, 1)));
}

fn sim_fixture() -> (semcom::Model, SimulationConfig, Point) {
    let grid = generate_gridworld(&GridWorldParams::default()).unwrap();
    let indices = vec![grid.language().message_index("UURR").unwrap(), grid.language().message_index("RRU").unwrap()];
    let v = map_decoder(&grid, Prior::Rx);
    let exact = grid.point_of(&indices, &grid.phi_table_for(&v));
    let u = EncodingScheme::deterministic(indices, grid.num_messages());
    (grid, SimulationConfig::new(50_000, 7, u, v), exact)
}

#[test]
fn simulation_is_deterministic_across_thread_pools() {
    let (grid, cfg, _) = sim_fixture();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| simulate(&grid, &cfg).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(3));
    let mut other = cfg.clone();
    other.seed = 8;
    assert_ne!(simulate(&grid, &other).unwrap(), one);
}

#[test]
fn simulation_matches_the_exact_point() {
    let (grid, cfg, exact) = sim_fixture();
    let res = simulate(&grid, &cfg).unwrap();
    let dc = (res.mean_cost_f64() - semcom::rational::to_f64(&exact.cost)).abs();
    let dd = (res.mean_distortion_f64() - semcom::rational::to_f64(&exact.distortion)).abs();
    assert!(dc <= 4.0 * res.se_cost.max(1e-12), "cost off by {dc}");
    assert!(dd <= 4.0 * res.se_distortion.max(1e-12), "distortion off by {dd}");
    let total: Rational = res.received_frequency.iter().sum();
    assert_eq!(total, r(1, 1));
}

#[test]
fn simulation_rejects_bad_configs() {
    let (grid, mut cfg, _) = sim_fixture();
    cfg.trials = 0;
    assert!(matches!(simulate(&grid, &cfg), Err(Error::Domain(_))));
    cfg.trials = 10;
    cfg.encoder = EncodingScheme::deterministic(vec![0, 0, 0], grid.num_messages());
    assert!(matches!(simulate(&grid, &cfg), Err(Error::Dimension(_))));
}
