//! Exact lower/upper envelopes of finite point sets in the (cost, distortion)
//! plane, and piecewise-linear evaluation along them.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub cost: Rational,
    pub distortion: Rational,
}

impl Point {
    pub fn new(cost: Rational, distortion: Rational) -> Self {
        Self { cost, distortion }
    }
}

/// Twice the signed area of `(o, a, b)`; positive for a counter-clockwise turn.
pub fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.cost - &o.cost) * (&b.distortion - &o.distortion)
        - (&a.distortion - &o.distortion) * (&b.cost - &o.cost)
}

fn extreme_per_cost<'a>(
    points: impl IntoIterator<Item = &'a Point>,
    keep_lower: bool,
) -> Vec<Point> {
    let mut best: BTreeMap<Rational, Rational> = BTreeMap::new();
    for p in points {
        best.entry(p.cost.clone())
            .and_modify(|d| {
                if (keep_lower && p.distortion < *d) || (!keep_lower && p.distortion > *d) {
                    *d = p.distortion.clone();
                }
            })
            .or_insert_with(|| p.distortion.clone());
    }
    best.into_iter().map(|(c, d)| Point::new(c, d)).collect()
}

fn chain(sorted: Vec<Point>, lower: bool) -> Vec<Point> {
    let mut hull: Vec<Point> = Vec::with_capacity(sorted.len());
    for p in sorted {
        while hull.len() >= 2 {
            let turn = cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p);
            // drop right turns (lower) / left turns (upper) and collinear middles
            let pop = if lower {
                turn <= Rational::zero()
            } else {
                turn >= Rational::zero()
            };
            if pop {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Vertices of the lower boundary of the convex hull, by increasing cost,
/// with collinear vertices removed.
pub fn lower_envelope<'a>(points: impl IntoIterator<Item = &'a Point>) -> Vec<Point> {
    chain(extreme_per_cost(points, true), true)
}

/// Vertices of the upper boundary of the convex hull, by increasing cost.
pub fn upper_envelope<'a>(points: impl IntoIterator<Item = &'a Point>) -> Vec<Point> {
    chain(extreme_per_cost(points, false), false)
}

/// Lower envelope of `{a_1 + ... + a_k : a_i in sets[i]}` without enumerating
/// the sum: the edges of the per-set envelopes are merged by slope.
pub fn minkowski_lower_envelope(sets: &[Vec<Point>]) -> Vec<Point> {
    let hulls: Vec<Vec<Point>> = sets.iter().map(lower_envelope).collect();
    let mut start = Point::new(Rational::zero(), Rational::zero());
    let mut edges: Vec<(Rational, Rational)> = Vec::new();
    for h in &hulls {
        let Some(first) = h.first() else { continue };
        start.cost += &first.cost;
        start.distortion += &first.distortion;
        edges.extend(
            h.windows(2)
                .map(|e| (&e[1].cost - &e[0].cost, &e[1].distortion - &e[0].distortion)),
        );
    }
    edges.sort_by(|a, b| (&a.1 * &b.0).cmp(&(&b.1 * &a.0)));
    let mut out = vec![start];
    for (dc, dd) in edges {
        let last = out.last().expect("nonempty");
        let next = Point::new(&last.cost + dc, &last.distortion + dd);
        out.push(next);
    }
    simplify(&out)
}

/// Removes repeated and collinear vertices from a polyline ordered by cost.
pub fn simplify(polyline: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(polyline.len());
    for p in polyline {
        if out.last() == Some(p) {
            continue;
        }
        if out.len() >= 2 && cross(&out[out.len() - 2], &out[out.len() - 1], p).is_zero() {
            out.pop();
        }
        out.push(p.clone());
    }
    out
}

/// Linear interpolation along a polyline with nondecreasing costs.
///
/// Returns `None` outside `[first.cost, last.cost]`. On a vertical step the
/// first vertex at that cost is used.
pub fn interpolate(polyline: &[Point], cost: &Rational) -> Option<Rational> {
    let first = polyline.first()?;
    let last = polyline.last()?;
    if cost < &first.cost || cost > &last.cost {
        return None;
    }
    for w in polyline.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if cost == &a.cost {
            return Some(a.distortion.clone());
        }
        if cost < &b.cost {
            let t = (cost - &a.cost) / (&b.cost - &a.cost);
            return Some(&a.distortion + t * (&b.distortion - &a.distortion));
        }
    }
    Some(last.distortion.clone())
}

/// Slopes of consecutive segments; vertical or degenerate segments are skipped.
pub fn slopes(polyline: &[Point]) -> Vec<Rational> {
    polyline
        .windows(2)
        .filter(|w| w[1].cost != w[0].cost)
        .map(|w| (&w[1].distortion - &w[0].distortion) / (&w[1].cost - &w[0].cost))
        .collect()
}

pub fn is_convex(polyline: &[Point]) -> bool {
    slopes(polyline).windows(2).all(|w| w[0] <= w[1])
}

pub fn is_concave(polyline: &[Point]) -> bool {
    slopes(polyline).windows(2).all(|w| w[0] >= w[1])
}

/// Convex region bounded below by `lower` and above by `upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexRegion {
    pub lower: Vec<Point>,
    pub upper: Vec<Point>,
}

impl ConvexRegion {
    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a Point> + Clone) -> Self {
        Self {
            lower: lower_envelope(points.clone()),
            upper: upper_envelope(points),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (
            interpolate(&self.lower, &p.cost),
            interpolate(&self.upper, &p.cost),
        ) {
            (Some(lo), Some(hi)) => lo <= p.distortion && p.distortion <= hi,
            _ => false,
        }
    }
}
