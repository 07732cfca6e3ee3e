use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::subsets::{all_six_subsets, SixSubsets};
use crate::error::{Error, Result};
use crate::hull::{interpolate, simplify, ConvexRegion, Point};
use crate::model::{Model, PhiTable};
use crate::rational::Rational;

/// How to choose among equally good `(meaning, message)` moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smallest meaning index, then smallest message index.
    #[default]
    Lexicographic,
    /// Uniformly among the tied moves, driven by a seeded generator.
    SeededRandom(u64),
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Lexicographic => f.write_str("lexicographic"),
            TieBreak::SeededRandom(seed) => write!(f, "seeded:{seed}"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "lexicographic" {
            return Ok(TieBreak::Lexicographic);
        }
        s.strip_prefix("seeded:")
            .and_then(|n| n.parse().ok())
            .map(TieBreak::SeededRandom)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown tie-break policy {s:?} (expected lexicographic or seeded:<n>)"
                ))
            })
    }
}

/// The move that produced a vertex from its predecessor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub meaning: usize,
    pub message: usize,
    pub slope: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierVertex {
    /// Deterministic encoder: message index chosen for each meaning.
    pub indices: Vec<usize>,
    pub point: Point,
    /// `None` for the starting vertex.
    pub step: Option<Step>,
}

/// Lower and upper vertex chains of the encoding region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionFrontier {
    pub lower: Vec<FrontierVertex>,
    pub upper: Vec<FrontierVertex>,
    pub subsets: Vec<SixSubsets>,
    pub tie_break: TieBreak,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Chain {
    Lower,
    Upper,
}

struct Picker {
    policy: TieBreak,
    rng: Option<ChaCha8Rng>,
}

impl Picker {
    fn new(policy: TieBreak) -> Self {
        let rng = match policy {
            TieBreak::Lexicographic => None,
            TieBreak::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Self { policy, rng }
    }

    fn pick(&mut self, tied: &[(usize, usize)]) -> (usize, usize) {
        match (&self.policy, self.rng.as_mut()) {
            (TieBreak::SeededRandom(_), Some(rng)) => tied[rng.gen_range(0..tied.len())],
            _ => tied[0],
        }
    }
}

fn chain(
    model: &Model,
    phi: &PhiTable,
    subsets: &[SixSubsets],
    which: Chain,
    picker: &mut Picker,
) -> Vec<FrontierVertex> {
    let costs = model.cost().costs();
    let l_max = model.cost().max();
    let set = |n: usize| match which {
        Chain::Lower => &subsets[n].lower,
        Chain::Upper => &subsets[n].upper,
    };
    let mut indices: Vec<usize> = (0..model.num_meanings()).map(|n| set(n)[0]).collect();
    let mut out = vec![FrontierVertex {
        point: model.point_of(&indices, phi),
        indices: indices.clone(),
        step: None,
    }];
    while out.last().expect("chain is never empty").point.cost < l_max {
        let mut best: Option<Rational> = None;
        let mut tied: Vec<(usize, usize)> = Vec::new();
        for (n, &i) in indices.iter().enumerate() {
            for &m in set(n).iter().filter(|&&m| m > i) {
                let g = (phi.get(n, m) - phi.get(n, i)) / (&costs[m] - &costs[i]);
                let improves = match (&best, which) {
                    (None, _) => true,
                    (Some(b), Chain::Lower) => g < *b,
                    (Some(b), Chain::Upper) => g > *b,
                };
                if improves {
                    best = Some(g);
                    tied.clear();
                    tied.push((n, m));
                } else if best.as_ref() == Some(&g) {
                    tied.push((n, m));
                }
            }
        }
        let Some(slope) = best else { break };
        let (n, m) = picker.pick(&tied);
        indices[n] = m;
        out.push(FrontierVertex {
            point: model.point_of(&indices, phi),
            indices: indices.clone(),
            step: Some(Step {
                meaning: n,
                message: m,
                slope,
            }),
        });
    }
    out
}

/// Greedy construction of both vertex chains of the encoding region.
pub fn build_frontier(model: &Model, tie_break: TieBreak) -> RegionFrontier {
    let phi = model.phi_table();
    build_frontier_with(model, &phi, tie_break)
}

/// Same as [`build_frontier`] with a precomputed `phi` table, which may come
/// from a decoder other than the language's interpretation.
pub fn build_frontier_with(model: &Model, phi: &PhiTable, tie_break: TieBreak) -> RegionFrontier {
    let subsets = all_six_subsets(model, phi);
    let mut picker = Picker::new(tie_break);
    let lower = chain(model, phi, &subsets, Chain::Lower, &mut picker);
    let upper = chain(model, phi, &subsets, Chain::Upper, &mut picker);
    RegionFrontier {
        lower,
        upper,
        subsets,
        tie_break,
    }
}

impl RegionFrontier {
    pub fn lower_points(&self) -> Vec<Point> {
        self.lower.iter().map(|v| v.point.clone()).collect()
    }

    pub fn upper_points(&self) -> Vec<Point> {
        self.upper.iter().map(|v| v.point.clone()).collect()
    }

    /// Lower boundary with duplicate and collinear vertices merged.
    pub fn lower_envelope(&self) -> Vec<Point> {
        simplify(&self.lower_points())
    }

    /// Upper boundary with duplicate and collinear vertices merged.
    pub fn upper_envelope(&self) -> Vec<Point> {
        simplify(&self.upper_points())
    }

    pub fn region(&self) -> ConvexRegion {
        ConvexRegion {
            lower: self.lower_envelope(),
            upper: self.upper_envelope(),
        }
    }

    pub fn contains(&self, point: &Point) -> bool {
        self.region().contains(point)
    }

    /// Cost span `[L of first vertex, L_max]`.
    pub fn cost_range(&self) -> (Rational, Rational) {
        (
            self.lower[0].point.cost.clone(),
            self.lower.last().expect("chain is never empty").point.cost.clone(),
        )
    }

    /// Slopes chosen at each step, in order.
    pub fn lower_slopes(&self) -> Vec<Rational> {
        self.lower.iter().filter_map(|v| v.step.as_ref().map(|s| s.slope.clone())).collect()
    }

    pub fn upper_slopes(&self) -> Vec<Rational> {
        self.upper.iter().filter_map(|v| v.step.as_ref().map(|s| s.slope.clone())).collect()
    }

    /// All distinct deterministic encoders on either chain, lower chain first.
    pub fn encoders(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in self.lower.iter().chain(&self.upper) {
            if !out.contains(&v.indices) {
                out.push(v.indices.clone());
            }
        }
        out
    }
}

/// Minimum achievable distortion at average cost `cost`.
pub fn distortion_cost_function(frontier: &RegionFrontier, cost: &Rational) -> Result<Rational> {
    interpolate(&frontier.lower_envelope(), cost).ok_or_else(|| {
        let (lo, hi) = frontier.cost_range();
        Error::Domain(format!(
            "cost {cost} lies outside the achievable range [{lo}, {hi}]"
        ))
    })
}

pub fn region_contains(frontier: &RegionFrontier, point: &Point) -> bool {
    frontier.contains(point)
}

/// One of the eight extreme points of the region with an encoder achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoint {
    pub point: Point,
    pub indices: Vec<usize>,
}

/// `lower[k]`/`upper[k]` hold P(k+1) of the respective boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoints {
    pub lower: [CriticalPoint; 4],
    pub upper: [CriticalPoint; 4],
}

fn extremes(chain: &[FrontierVertex], lower: bool) -> [CriticalPoint; 4] {
    let cp = |v: &FrontierVertex| CriticalPoint {
        point: v.point.clone(),
        indices: v.indices.clone(),
    };
    let target = chain
        .iter()
        .map(|v| &v.point.distortion)
        .reduce(|a, b| if (lower && b < a) || (!lower && b > a) { b } else { a })
        .expect("chain is never empty");
    let first = chain.iter().find(|v| &v.point.distortion == target).expect("extreme exists");
    let last = chain.iter().rev().find(|v| &v.point.distortion == target).expect("extreme exists");
    [
        cp(&chain[0]),
        cp(first),
        cp(last),
        cp(chain.last().expect("chain is never empty")),
    ]
}

pub fn critical_points(frontier: &RegionFrontier) -> CriticalPoints {
    CriticalPoints {
        lower: extremes(&frontier.lower, true),
        upper: extremes(&frontier.upper, false),
    }
}

/// The eight critical encoders assembled directly from the per-meaning
/// subset endpoints: for `k = 1..4`, every meaning uses the k-th endpoint
/// (least/greatest index of the left/right set).
pub fn critical_encoders_from_subsets(subsets: &[SixSubsets]) -> ([Vec<usize>; 4], [Vec<usize>; 4]) {
    let pick = |f: &dyn Fn(&SixSubsets) -> usize| subsets.iter().map(f).collect::<Vec<usize>>();
    let first = |v: &Vec<usize>| v[0];
    let last = |v: &Vec<usize>| *v.last().expect("subsets are never empty");
    (
        [
            pick(&|s| first(&s.lower_left)),
            pick(&|s| last(&s.lower_left)),
            pick(&|s| first(&s.lower_right)),
            pick(&|s| last(&s.lower_right)),
        ],
        [
            pick(&|s| first(&s.upper_left)),
            pick(&|s| last(&s.upper_left)),
            pick(&|s| first(&s.upper_right)),
            pick(&|s| last(&s.upper_right)),
        ],
    )
}
