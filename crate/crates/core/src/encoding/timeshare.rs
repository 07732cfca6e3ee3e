use num_traits::{One, Zero};

use crate::error::Result;
use crate::hull::Point;
use crate::model::Model;
use crate::rational::Rational;
use crate::scheme::EncodingScheme;

/// Writes `u` as a convex combination of deterministic encoders.
///
/// Every encoder in the product of the per-meaning supports appears with
/// weight `prod_n u(s_{i_n} | w_n)`.
pub fn time_share_decompose(u: &EncodingScheme) -> Vec<(Rational, Vec<usize>)> {
    let supports: Vec<Vec<usize>> = (0..u.num_meanings())
        .map(|n| {
            (0..u.num_messages())
                .filter(|&m| !u.prob(n, m).is_zero())
                .collect()
        })
        .collect();
    let mut terms = vec![(Rational::one(), Vec::with_capacity(supports.len()))];
    for (n, support) in supports.iter().enumerate() {
        terms = terms
            .into_iter()
            .flat_map(|(w, idx)| {
                support.iter().map(move |&m| {
                    let mut next = idx.clone();
                    next.push(m);
                    (&w * u.prob(n, m), next)
                })
            })
            .collect();
    }
    terms
}

/// `(L, D)` of a time-shared mixture of deterministic encoders.
pub fn mixture_point(model: &Model, terms: &[(Rational, Vec<usize>)]) -> Result<Point> {
    let phi = model.phi_table();
    let mut cost = Rational::zero();
    let mut distortion = Rational::zero();
    for (w, idx) in terms {
        let p = model.point_of(idx, &phi);
        cost += w * p.cost;
        distortion += w * p.distortion;
    }
    Ok(Point::new(cost, distortion))
}
