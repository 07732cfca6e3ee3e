#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semcom::encoding::{RegionFrontier, SixSubsets};
use semcom::hull::{is_concave, is_convex, Point};
use semcom::random::{model, InstanceShape};
use semcom::{Model, PhiTable, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random model whose shape is also derived from the seed.
pub fn random_model(seed: u64) -> Model {
    use rand::Rng;
    let mut r = rng(seed);
    let mut shape = InstanceShape::new(r.gen_range(1..=3), r.gen_range(2..=5));
    shape.error_free = r.gen_bool(0.4);
    shape.hamming = r.gen_bool(0.4);
    shape.matching_priors = r.gen_bool(0.3);
    model(&mut r, shape)
}

pub fn random_hamming_model(seed: u64) -> Model {
    use rand::Rng;
    let mut r = rng(seed);
    let mut shape = InstanceShape::new(r.gen_range(1..=3), r.gen_range(2..=5));
    shape.error_free = r.gen_bool(0.5);
    shape.hamming = true;
    shape.matching_priors = r.gen_bool(0.3);
    model(&mut r, shape)
}

/// Six subsets as left/right sweeps with a single running reference message.
/// Upper sweeps drop a message when the reference's phi is `>=` its own.
/// Returns `(lower_left, lower_right, upper_left, upper_right)`.
pub fn sweep_subsets(phi: &[Rational], costs: &[Rational]) -> [Vec<usize>; 4] {
    let m = phi.len();
    let forward: Vec<usize> = (1..m).collect();
    let backward: Vec<usize> = (0..m - 1).rev().collect();
    let run = |order: &[usize], start: usize, dominated: &dyn Fn(&Rational, &Rational) -> bool| {
        let mut keep = vec![true; m];
        let mut reference = start;
        for &k in order {
            if dominated(&phi[reference], &phi[k]) {
                keep[k] = false;
            } else if costs[reference] == costs[k] {
                keep[reference] = false;
                reference = k;
            } else {
                reference = k;
            }
        }
        (0..m).filter(|&i| keep[i]).collect::<Vec<usize>>()
    };
    [
        run(&forward, 0, &|r, s| r <= s),
        run(&backward, m - 1, &|r, s| r <= s),
        run(&forward, 0, &|r, s| r >= s),
        run(&backward, m - 1, &|r, s| r >= s),
    ]
}

/// `(cost, phi)` pairs of a message set, for comparisons that ignore which of
/// several identical messages was kept.
pub fn values(set: &[usize], phi: &[Rational], costs: &[Rational]) -> Vec<(Rational, Rational)> {
    let mut v: Vec<(Rational, Rational)> = set.iter().map(|&i| (costs[i].clone(), phi[i].clone())).collect();
    v.sort();
    v.dedup();
    v
}

/// Whether every message is dominated by a member of `set` in the given sense.
pub fn covers(
    set: &[usize],
    phi: &[Rational],
    costs: &[Rational],
    dominates: &dyn Fn(&Rational, &Rational, &Rational, &Rational) -> bool,
) -> bool {
    (0..phi.len()).all(|s| {
        set.iter()
            .any(|&t| dominates(&costs[t], &phi[t], &costs[s], &phi[s]))
    })
}

pub fn phi_row(model: &Model, phi: &PhiTable, w: usize) -> (Vec<Rational>, Vec<Rational>) {
    (phi.row(w).to_vec(), model.cost().costs().to_vec())
}

pub fn points(v: &[(i64, i64, i64, i64)]) -> Vec<Point> {
    v.iter()
        .map(|&(a, b, c, d)| Point::new(Rational::new(a.into(), b.into()), Rational::new(c.into(), d.into())))
        .collect()
}

/// Seeded instances meeting every CSED optimality condition.
pub fn condition_instances(seeds: std::ops::Range<u64>) -> Vec<(u64, Model)> {
    seeds
        .filter_map(|seed| {
            let mut g = rng(seed);
            let shape = (2 + (seed % 2) as usize, 2 + (seed % 3) as usize);
            semcom::random::csed_condition_instance(&mut g, shape.0, shape.1, 1000).map(|m| (seed, m))
        })
        .collect()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Strict cost increase along every subset, with phi falling on the lower-left
/// and upper-right sets and rising on the other two.
pub fn check_orderings(phi: &[Rational], costs: &[Rational], s: &SixSubsets) -> Result<(), String> {
    let inc_cost = |set: &[usize]| set.windows(2).all(|p| costs[p[0]] < costs[p[1]]);
    let phi_dec = |set: &[usize]| set.windows(2).all(|p| phi[p[0]] > phi[p[1]]);
    let phi_inc = |set: &[usize]| set.windows(2).all(|p| phi[p[0]] < phi[p[1]]);
    ensure(inc_cost(&s.lower_left) && phi_dec(&s.lower_left), || format!("lower-left {:?}", s.lower_left))?;
    ensure(inc_cost(&s.lower_right) && phi_inc(&s.lower_right), || format!("lower-right {:?}", s.lower_right))?;
    ensure(inc_cost(&s.upper_left) && phi_inc(&s.upper_left), || format!("upper-left {:?}", s.upper_left))?;
    ensure(inc_cost(&s.upper_right) && phi_dec(&s.upper_right), || format!("upper-right {:?}", s.upper_right))
}

/// First and last members of each sweep sit at the cost extremes and the
/// phi extremes, with the tie-breaks the sweeps imply.
pub fn check_endpoints(phi: &[Rational], costs: &[Rational], s: &SixSubsets) -> Result<(), String> {
    let all = 0..phi.len();
    let l_min = costs.iter().min().unwrap();
    let l_max = costs.iter().max().unwrap();
    let phi_min = phi.iter().min().unwrap();
    let phi_max = phi.iter().max().unwrap();
    let at_cost = |c: &Rational| -> Vec<&Rational> { all.clone().filter(|&i| &costs[i] == c).map(|i| &phi[i]).collect() };
    let with_phi = |p: &Rational| -> Vec<&Rational> { all.clone().filter(|&i| &phi[i] == p).map(|i| &costs[i]).collect() };
    let first = |v: &[usize]| v[0];
    let last = |v: &[usize]| *v.last().unwrap();
    let cases: [(&str, usize, &Rational, &Rational); 8] = [
        ("lower-left first", first(&s.lower_left), l_min, at_cost(l_min).into_iter().min().unwrap()),
        ("lower-left last", last(&s.lower_left), with_phi(phi_min).into_iter().min().unwrap(), phi_min),
        ("lower-right first", first(&s.lower_right), with_phi(phi_min).into_iter().max().unwrap(), phi_min),
        ("lower-right last", last(&s.lower_right), l_max, at_cost(l_max).into_iter().min().unwrap()),
        ("upper-left first", first(&s.upper_left), l_min, at_cost(l_min).into_iter().max().unwrap()),
        ("upper-left last", last(&s.upper_left), with_phi(phi_max).into_iter().min().unwrap(), phi_max),
        ("upper-right first", first(&s.upper_right), with_phi(phi_max).into_iter().max().unwrap(), phi_max),
        ("upper-right last", last(&s.upper_right), l_max, at_cost(l_max).into_iter().max().unwrap()),
    ];
    for (name, m, cost, value) in cases {
        ensure(&costs[m] == cost && &phi[m] == value, || format!("{name}: message {m}"))?;
    }
    Ok(())
}

/// Slopes are monotone along both chains, each step's slope is the secant
/// of its two vertices, and the envelopes are convex and concave.
pub fn check_frontier_shape(f: &RegionFrontier) -> Result<(), String> {
    let lower = f.lower_slopes();
    let upper = f.upper_slopes();
    ensure(lower.windows(2).all(|p| p[0] <= p[1]), || format!("lower slopes {lower:?}"))?;
    ensure(upper.windows(2).all(|p| p[0] >= p[1]), || format!("upper slopes {upper:?}"))?;
    for chain in [&f.lower, &f.upper] {
        for pair in chain.windows(2) {
            let (a, b) = (&pair[0].point, &pair[1].point);
            let step = pair[1].step.as_ref().ok_or("step missing")?;
            if a.cost != b.cost {
                let secant = (&b.distortion - &a.distortion) / (&b.cost - &a.cost);
                ensure(secant == step.slope, || format!("step slope {} vs secant {secant}", step.slope))?;
            }
        }
    }
    ensure(is_convex(&f.lower_envelope()), || "lower envelope not convex".into())?;
    ensure(is_concave(&f.upper_envelope()), || "upper envelope not concave".into())
}
