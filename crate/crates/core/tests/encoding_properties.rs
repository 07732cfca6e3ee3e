mod common;

use common::{
    check_endpoints, check_frontier_shape, check_orderings, covers, random_model, rng, sweep_subsets, values,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use semcom::encoding::{
    build_frontier, critical_encoders_from_subsets, critical_points, mixture_point, six_subsets_from,
    time_share_decompose, TieBreak,
};
use semcom::hull::{lower_envelope, simplify, upper_envelope, Point};
use semcom::oracle::{enumerate_encoding_points, EnumerationBudget};
use semcom::random::encoder_matrix;
use semcom::{EncodingScheme, Rational};

type Rule = fn(&Rational, &Rational, &Rational, &Rational) -> bool;

fn le_le(c: &Rational, f: &Rational, c2: &Rational, f2: &Rational) -> bool {
    c <= c2 && f <= f2
}
fn ge_le(c: &Rational, f: &Rational, c2: &Rational, f2: &Rational) -> bool {
    c >= c2 && f <= f2
}
fn le_ge(c: &Rational, f: &Rational, c2: &Rational, f2: &Rational) -> bool {
    c <= c2 && f >= f2
}
fn ge_ge(c: &Rational, f: &Rational, c2: &Rational, f2: &Rational) -> bool {
    c >= c2 && f >= f2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subsets_are_minimal_dominating_sets(seed in any::<u64>()) {
        let model = random_model(seed);
        let phi = model.phi_table();
        let costs = model.cost().costs();
        for w in 0..model.num_meanings() {
            let row = phi.row(w);
            let s = six_subsets_from(row, costs);
            let rules: [(&Vec<usize>, Rule); 4] = [
                (&s.lower_left, le_le),
                (&s.lower_right, ge_le),
                (&s.upper_left, le_ge),
                (&s.upper_right, ge_ge),
            ];
            for (set, rule) in rules {
                prop_assert!(covers(set, row, costs, &rule));
                for (k, _) in set.iter().enumerate() {
                    let mut smaller = set.clone();
                    smaller.remove(k);
                    prop_assert!(!covers(&smaller, row, costs, &rule));
                }
            }
            let mut union = s.lower_left.clone();
            union.extend(&s.lower_right);
            union.sort_unstable();
            union.dedup();
            prop_assert_eq!(&union, &s.lower);
        }
    }

    #[test]
    fn subsets_match_the_two_pointer_sweep(seed in any::<u64>()) {
        let model = random_model(seed);
        let phi = model.phi_table();
        let costs = model.cost().costs();
        for w in 0..model.num_meanings() {
            let row = phi.row(w);
            let s = six_subsets_from(row, costs);
            let sweep = sweep_subsets(row, costs);
            let ours = [&s.lower_left, &s.lower_right, &s.upper_left, &s.upper_right];
            for (a, b) in ours.iter().zip(&sweep) {
                prop_assert_eq!(values(a, row, costs), values(b, row, costs));
            }
        }
    }

    #[test]
    fn subset_orderings_and_endpoints(seed in any::<u64>()) {
        let model = random_model(seed);
        let phi = model.phi_table();
        let costs = model.cost().costs();
        for w in 0..model.num_meanings() {
            let s = six_subsets_from(phi.row(w), costs);
            prop_assert_eq!(check_orderings(phi.row(w), costs, &s), Ok(()));
            prop_assert_eq!(check_endpoints(phi.row(w), costs, &s), Ok(()));
        }
    }

    #[test]
    fn frontier_slopes_and_shape(seed in any::<u64>()) {
        let model = random_model(seed);
        let frontier = build_frontier(&model, TieBreak::Lexicographic);
        prop_assert_eq!(check_frontier_shape(&frontier), Ok(()));
        prop_assert_eq!(&frontier.cost_range().1, &model.cost().max());
    }

    #[test]
    fn frontier_matches_exhaustive_hull(seed in any::<u64>()) {
        let model = random_model(seed);
        let frontier = build_frontier(&model, TieBreak::Lexicographic);
        let pts = enumerate_encoding_points(&model, &EnumerationBudget::default()).unwrap();
        let lower = lower_envelope(pts.iter().map(|p| &p.point));
        let upper = upper_envelope(pts.iter().map(|p| &p.point));
        prop_assert_eq!(frontier.lower_envelope(), lower);
        prop_assert_eq!(frontier.upper_envelope(), upper);
    }

    #[test]
    fn seeded_tie_breaks_agree_on_geometry(seed in any::<u64>(), tie in any::<u64>()) {
        let model = random_model(seed);
        let a = build_frontier(&model, TieBreak::Lexicographic);
        let b = build_frontier(&model, TieBreak::SeededRandom(tie));
        prop_assert_eq!(a.lower_envelope(), b.lower_envelope());
        prop_assert_eq!(a.upper_envelope(), b.upper_envelope());
        prop_assert_eq!(&b, &build_frontier(&model, TieBreak::SeededRandom(tie)));
    }

    #[test]
    fn critical_points_match_subset_construction(seed in any::<u64>()) {
        let model = random_model(seed);
        let phi = model.phi_table();
        let frontier = build_frontier(&model, TieBreak::Lexicographic);
        let cp = critical_points(&frontier);
        let (lower, upper) = critical_encoders_from_subsets(&frontier.subsets);
        let shared = |k: usize| -> bool {
            // The cost-span endpoints always coincide; the interior points do
            // when every meaning has positive probability.
            k == 0 || k == 3 || model.language().tx_prior().iter().all(|p| !p.is_zero())
        };
        for k in 0..4 {
            if shared(k) {
                prop_assert_eq!(&cp.lower[k].point, &model.point_of(&lower[k], &phi));
                prop_assert_eq!(&cp.upper[k].point, &model.point_of(&upper[k], &phi));
            }
        }
    }

    #[test]
    fn region_is_closed_under_mixing(seed in any::<u64>(), a in 0usize..64, b in 0usize..64, t in 0i64..=8) {
        let model = random_model(seed);
        let frontier = build_frontier(&model, TieBreak::Lexicographic);
        let pts = enumerate_encoding_points(&model, &EnumerationBudget::default()).unwrap();
        let p = &pts[a % pts.len()].point;
        let q = &pts[b % pts.len()].point;
        prop_assert!(frontier.contains(p) && frontier.contains(q));
        let lambda = Rational::new(t.into(), 8.into());
        let mix = Point::new(
            &lambda * &p.cost + (Rational::one() - &lambda) * &q.cost,
            &lambda * &p.distortion + (Rational::one() - &lambda) * &q.distortion,
        );
        prop_assert!(frontier.contains(&mix));
    }

    #[test]
    fn time_sharing_reproduces_stochastic_encoders(seed in any::<u64>()) {
        let model = random_model(seed);
        let mut r = rng(seed ^ 0x5eed);
        let u = EncodingScheme::new(encoder_matrix(&mut r, model.num_meanings(), model.num_messages())).unwrap();
        let terms = time_share_decompose(&u);
        let total = terms.iter().fold(Rational::zero(), |acc, (w, _)| acc + w);
        prop_assert!(total.is_one());
        let p = mixture_point(&model, &terms).unwrap();
        prop_assert_eq!(p.cost, model.average_cost(&u).unwrap());
        prop_assert_eq!(p.distortion, model.average_distortion_enc(&u).unwrap());
    }

    #[test]
    fn two_distortion_forms_agree(seed in any::<u64>()) {
        let model = random_model(seed);
        let mut r = rng(seed ^ 0xd15);
        let u = EncodingScheme::new(encoder_matrix(&mut r, model.num_meanings(), model.num_messages())).unwrap();
        let phi = model.phi_table();
        prop_assert_eq!(
            model.average_distortion_enc(&u).unwrap(),
            model.average_distortion_enc_phi(&u, &phi).unwrap()
        );
        let l = model.average_cost(&u).unwrap();
        prop_assert!(model.cost().min() <= l && l <= model.cost().max());
    }

    #[test]
    fn error_free_hamming_phi_shortcut(seed in any::<u64>()) {
        let model = common::random_hamming_model(seed);
        if model.channel().is_error_free() {
            for w in 0..model.num_meanings() {
                for s in 0..model.num_messages() {
                    prop_assert_eq!(model.phi(w, s), Rational::one() - model.language().q_meaning(s, w));
                }
            }
        }
    }
}

#[test]
fn boost_segment_is_reproduced() {
    let model = semcom::io::generate_gridworld(&Default::default()).unwrap();
    let env = build_frontier(&model, TieBreak::Lexicographic).lower_envelope();
    let last = env.last().unwrap();
    let floor = env.iter().map(|p| &p.distortion).min().unwrap();
    assert!(last.distortion > *floor);
    assert_eq!(simplify(&env), env);
}
