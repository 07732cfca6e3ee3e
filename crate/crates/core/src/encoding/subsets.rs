use std::ops::Range;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Model, PhiTable};
use crate::rational::Rational;

/// Pareto-dominant message subsets for one meaning, as sorted message indices.
///
/// The `lower_*` sets trade cost against small `phi`, the `upper_*` sets
/// against large `phi`; `*_left` sets are dominant towards cheaper messages
/// and `*_right` sets towards more expensive ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixSubsets {
    pub lower_left: Vec<usize>,
    pub lower_right: Vec<usize>,
    pub lower: Vec<usize>,
    pub upper_left: Vec<usize>,
    pub upper_right: Vec<usize>,
    pub upper: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Sweep {
    Ascending,
    Descending,
}

#[derive(Clone, Copy)]
enum Extreme {
    Min,
    Max,
}

fn cost_groups(costs: &[Rational]) -> Vec<Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=costs.len() {
        if i == costs.len() || costs[i] != costs[start] {
            groups.push(start..i);
            start = i;
        }
    }
    groups
}

fn staircase(phi: &[Rational], groups: &[Range<usize>], sweep: Sweep, extreme: Extreme) -> Vec<usize> {
    let better = |a: &Rational, b: &Rational| match extreme {
        Extreme::Min => a < b,
        Extreme::Max => a > b,
    };
    let order: Box<dyn Iterator<Item = &Range<usize>>> = match sweep {
        Sweep::Ascending => Box::new(groups.iter()),
        Sweep::Descending => Box::new(groups.iter().rev()),
    };
    let mut kept = Vec::new();
    let mut best: Option<&Rational> = None;
    for group in order {
        let mut pick = group.start;
        for i in group.clone() {
            if better(&phi[i], &phi[pick]) {
                pick = i;
            }
        }
        if best.is_none_or(|b| better(&phi[pick], b)) {
            best = Some(&phi[pick]);
            kept.push(pick);
        }
    }
    kept.sort_unstable();
    kept
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Six subsets from one meaning's `phi` row and the (sorted) message costs.
///
/// Among equal-cost messages only the one with the extreme `phi` can be
/// dominant; exact ties keep the lowest index.
pub fn six_subsets_from(phi: &[Rational], costs: &[Rational]) -> SixSubsets {
    assert_eq!(phi.len(), costs.len(), "phi row and cost vector differ in length");
    let groups = cost_groups(costs);
    let lower_left = staircase(phi, &groups, Sweep::Ascending, Extreme::Min);
    let lower_right = staircase(phi, &groups, Sweep::Descending, Extreme::Min);
    let upper_left = staircase(phi, &groups, Sweep::Ascending, Extreme::Max);
    let upper_right = staircase(phi, &groups, Sweep::Descending, Extreme::Max);
    SixSubsets {
        lower: union(&lower_left, &lower_right),
        upper: union(&upper_left, &upper_right),
        lower_left,
        lower_right,
        upper_left,
        upper_right,
    }
}

pub fn six_subsets(model: &Model, w: usize) -> SixSubsets {
    six_subsets_from(model.phi_table().row(w), model.cost().costs())
}

pub fn all_six_subsets(model: &Model, phi: &PhiTable) -> Vec<SixSubsets> {
    (0..model.num_meanings())
        .map(|w| six_subsets_from(phi.row(w), model.cost().costs()))
        .collect()
}

/// Secant slope `(phi(w,s') - phi(w,s)) / (l(s') - l(s))`.
pub fn slope_g(model: &Model, phi: &PhiTable, w: usize, s: usize, s_prime: usize) -> Result<Rational> {
    let dl = model.cost().cost(s_prime) - model.cost().cost(s);
    if dl.is_zero() {
        return Err(Error::Domain(format!(
            "messages {s} and {s_prime} have equal cost"
        )));
    }
    Ok((phi.get(w, s_prime) - phi.get(w, s)) / dl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn staircase_with_ties() {
        let costs = [int(0), int(1), int(1), int(2), int(3)];
        let phi = [ratio(1, 2), ratio(1, 4), ratio(1, 4), ratio(1, 3), ratio(0, 1)];
        let s = six_subsets_from(&phi, &costs);
        assert_eq!(s.lower_left, vec![0, 1, 4]);
        assert_eq!(s.lower_right, vec![4]);
        assert_eq!(s.lower, vec![0, 1, 4]);
        assert_eq!(s.upper_left, vec![0]);
        assert_eq!(s.upper_right, vec![0, 3, 4]);
        assert_eq!(s.upper, vec![0, 3, 4]);
    }

    #[test]
    fn single_message() {
        let s = six_subsets_from(&[ratio(1, 3)], &[int(2)]);
        for set in [&s.lower_left, &s.lower_right, &s.lower, &s.upper_left, &s.upper_right, &s.upper] {
            assert_eq!(set, &vec![0]);
        }
    }

    #[test]
    fn equal_costs_pick_extreme() {
        let costs = [int(1), int(1), int(1)];
        let phi = [ratio(1, 2), ratio(1, 5), ratio(4, 5)];
        let s = six_subsets_from(&phi, &costs);
        assert_eq!(s.lower, vec![1]);
        assert_eq!(s.upper, vec![2]);
    }
}
