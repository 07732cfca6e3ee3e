//! Combined semantic encoding and decoding: the transmitter time-shares the
//! encoding-frontier schemes while the receiver decodes with its MAP decoder.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::decoding::{
    decoder_distortion, decoding_region, interpretation_distortion, map_decoder, DecodingRegion,
    PsiTable,
};
use crate::encoding::{build_frontier, RegionFrontier, TieBreak};
use crate::error::{Error, Result};
use crate::hull::{interpolate, ConvexRegion, Point};
use crate::language::{is_self_consistent, Prior};
use crate::model::Model;
use crate::rational::Rational;
use crate::scheme::DecodingScheme;

/// A time-sharing distribution over deterministic encoders, decoded by a fixed decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsedMixture {
    terms: Vec<(Rational, Vec<usize>)>,
    decoder: DecodingScheme,
}

impl CsedMixture {
    pub fn new(terms: Vec<(Rational, Vec<usize>)>, decoder: DecodingScheme) -> Result<Self> {
        if terms.iter().any(|(w, _)| w.is_negative()) {
            return Err(Error::Domain("mixture weights must be nonnegative".into()));
        }
        let total = terms.iter().fold(Rational::zero(), |a, (w, _)| a + w);
        if !total.is_one() {
            return Err(Error::Domain(format!("mixture weights sum to {total}, not 1")));
        }
        Ok(Self { terms, decoder })
    }

    /// Mixture over the vertices of `frontier` (lower chain, then upper chain),
    /// decoded by the receiver's MAP decoder under its own prior.
    pub fn over_frontier(model: &Model, frontier: &RegionFrontier, weights: &[Rational]) -> Result<Self> {
        let vertices: Vec<&Vec<usize>> = frontier
            .lower
            .iter()
            .chain(&frontier.upper)
            .map(|v| &v.indices)
            .collect();
        if weights.len() != vertices.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} frontier schemes",
                weights.len(),
                vertices.len()
            )));
        }
        Self::new(
            weights.iter().cloned().zip(vertices.into_iter().cloned()).collect(),
            map_decoder(model, Prior::Rx),
        )
    }

    pub fn pure(indices: Vec<usize>, decoder: DecodingScheme) -> Self {
        Self {
            terms: vec![(Rational::one(), indices)],
            decoder,
        }
    }

    pub fn terms(&self) -> &[(Rational, Vec<usize>)] {
        &self.terms
    }

    pub fn decoder(&self) -> &DecodingScheme {
        &self.decoder
    }
}

pub fn csed_evaluate(model: &Model, mixture: &CsedMixture) -> Result<Point> {
    model.check_decoder(&mixture.decoder)?;
    let phi = model.phi_table_for(&mixture.decoder);
    let mut cost = Rational::zero();
    let mut distortion = Rational::zero();
    for (w, idx) in &mixture.terms {
        if idx.len() != model.num_meanings() || idx.iter().any(|&m| m >= model.num_messages()) {
            return Err(Error::Dimension("encoder index vector does not fit the model".into()));
        }
        let p = model.point_of(idx, &phi);
        cost += w * p.cost;
        distortion += w * p.distortion;
    }
    Ok(Point::new(cost, distortion))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSide {
    Lower,
    Upper,
}

/// A frontier scheme re-evaluated with the receiver's decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsedPoint {
    pub side: ChainSide,
    pub step: usize,
    pub indices: Vec<usize>,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsedRegion {
    pub points: Vec<CsedPoint>,
    pub hull: ConvexRegion,
    pub decoder: DecodingScheme,
    pub tie_break: TieBreak,
}

impl CsedRegion {
    pub fn contains(&self, p: &Point) -> bool {
        self.hull.contains(p)
    }

    /// Lowest CSED distortion at average cost `cost`, if that cost is reachable.
    pub fn distortion_at(&self, cost: &Rational) -> Option<Rational> {
        interpolate(&self.hull.lower, cost)
    }

    pub fn min_distortion(&self) -> Rational {
        self.hull
            .lower
            .iter()
            .map(|p| p.distortion.clone())
            .min()
            .expect("hull is never empty")
    }
}

pub fn csed_region(model: &Model, tie_break: TieBreak) -> CsedRegion {
    csed_region_for(model, &build_frontier(model, tie_break))
}

pub fn csed_region_for(model: &Model, frontier: &RegionFrontier) -> CsedRegion {
    let decoder = map_decoder(model, Prior::Rx);
    let phi = model.phi_table_for(&decoder);
    let tag = |side: ChainSide| {
        let phi = &phi;
        move |(step, v): (usize, &crate::encoding::FrontierVertex)| CsedPoint {
            side,
            step,
            indices: v.indices.clone(),
            point: model.point_of(&v.indices, phi),
        }
    };
    let points: Vec<CsedPoint> = frontier
        .lower
        .iter()
        .enumerate()
        .map(tag(ChainSide::Lower))
        .chain(frontier.upper.iter().enumerate().map(tag(ChainSide::Upper)))
        .collect();
    let hull = ConvexRegion::from_points(points.iter().map(|p| &p.point));
    CsedRegion {
        points,
        hull,
        decoder,
        tie_break: frontier.tie_break,
    }
}

/// The hypotheses and four conditions under which CSED is claimed optimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsedConditions {
    pub error_free: bool,
    pub symmetric_distortion: bool,
    pub priors_match: bool,
    pub self_consistent: bool,
    pub disjoint_encoding_argmins: bool,
    pub disjoint_decoding_argmins: bool,
    pub verdict: bool,
}

fn argmin_set(values: impl Iterator<Item = Rational>) -> Vec<usize> {
    let values: Vec<Rational> = values.collect();
    let min = values.iter().min().expect("nonempty");
    (0..values.len()).filter(|&i| &values[i] == min).collect()
}

fn pairwise_disjoint(sets: &[Vec<usize>]) -> bool {
    sets.iter().enumerate().all(|(i, a)| {
        sets[i + 1..]
            .iter()
            .all(|b| a.iter().all(|x| !b.contains(x)))
    })
}

pub fn check_theorem4(model: &Model, frontier: &RegionFrontier) -> CsedConditions {
    let phi = model.phi_table();
    let phi_sets: Vec<Vec<usize>> = (0..model.num_meanings())
        .map(|w| argmin_set(phi.row(w).iter().cloned()))
        .collect();
    let psi = PsiTable::new(model, Prior::Rx);
    let mut used: Vec<usize> = frontier.encoders().into_iter().flatten().collect();
    used.sort_unstable();
    used.dedup();
    let psi_sets: Vec<Vec<usize>> = used
        .iter()
        .map(|&s| argmin_set((0..model.num_meanings()).map(|w| psi.get(w, s).clone())))
        .collect();
    let mut report = CsedConditions {
        error_free: model.channel().is_error_free(),
        symmetric_distortion: model.distortion().is_symmetric(),
        priors_match: model.language().priors_match(),
        self_consistent: is_self_consistent(model.language()).consistent,
        disjoint_encoding_argmins: pairwise_disjoint(&phi_sets),
        disjoint_decoding_argmins: pairwise_disjoint(&psi_sets),
        verdict: false,
    };
    report.verdict = report.error_free
        && report.symmetric_distortion
        && report.priors_match
        && report.self_consistent
        && report.disjoint_encoding_argmins
        && report.disjoint_decoding_argmins;
    report
}

/// CSED against encoding alone at one vertex of the encoding lower envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub cost: Rational,
    pub encoding: Rational,
    /// `None` when the cost lies outside the CSED region's cost span.
    pub csed: Option<Rational>,
    /// Ordering of CSED relative to encoding (`Less` means CSED is better).
    pub verdict: Option<Ordering>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyReport {
    pub frontier: RegionFrontier,
    pub decoding: DecodingRegion,
    /// `D_{P,Q}`: transmitting with `P` and decoding with `Q`.
    pub baseline: Rational,
    /// `D_{P,V*_q}`: decoding with the receiver's MAP decoder.
    pub decoding_rx: Rational,
    pub csed: CsedRegion,
    /// Cheapest encoding-optimal scheme (first lower vertex at minimum distortion).
    pub encoding_optimal: Point,
    /// The same encoder decoded by the receiver's MAP decoder.
    pub csed_encoding_optimal: Point,
    pub at_encoding_vertices: Vec<Comparison>,
    /// CSED lower envelope at `L_P`, when `L_P` is inside its cost span.
    pub csed_at_expression_cost: Option<Rational>,
}

impl StrategyReport {
    pub fn encoding_min(&self) -> Rational {
        self.encoding_optimal.distortion.clone()
    }

    pub fn decoding_min(&self) -> Rational {
        self.decoding.min_distortion.clone()
    }

    pub fn csed_min(&self) -> Rational {
        self.csed.min_distortion()
    }
}

pub fn compare_strategies(model: &Model, tie_break: TieBreak) -> StrategyReport {
    let frontier = build_frontier(model, tie_break);
    let csed = csed_region_for(model, &frontier);
    let decoding = decoding_region(model);
    let decoding_rx = decoder_distortion(model, &csed.decoder).expect("decoder fits model");
    let best = crate::encoding::critical_points(&frontier).lower[1].clone();
    let csed_encoding_optimal = csed_evaluate(model, &CsedMixture::pure(best.indices, csed.decoder.clone()))
        .expect("frontier schemes fit the model");
    let at_encoding_vertices = frontier
        .lower_envelope()
        .into_iter()
        .map(|p| {
            let c = csed.distortion_at(&p.cost);
            Comparison {
                verdict: c.as_ref().map(|c| c.cmp(&p.distortion)),
                csed: c,
                encoding: p.distortion,
                cost: p.cost,
            }
        })
        .collect();
    StrategyReport {
        baseline: interpretation_distortion(model),
        csed_at_expression_cost: csed.distortion_at(&decoding.cost),
        encoding_optimal: best.point,
        csed_encoding_optimal,
        at_encoding_vertices,
        decoding_rx,
        decoding,
        csed,
        frontier,
    }
}
