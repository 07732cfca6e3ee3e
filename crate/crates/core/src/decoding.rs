//! Semantic decoding: the receiver replaces the interpretation map.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hull::{ConvexRegion, Point};
use crate::language::Prior;
use crate::matrix::Matrix;
use crate::model::Model;
use crate::rational::Rational;
use crate::scheme::DecodingScheme;

/// `psi(w_hat, s_hat) = sum_w prior(w) p(s_hat|w) d(w, w_hat)`, where
/// `p(s_hat|w)` already includes the channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTable {
    values: Matrix,
    prior: Prior,
}

impl PsiTable {
    pub fn new(model: &Model, prior: Prior) -> Self {
        let (n, m) = (model.num_meanings(), model.num_messages());
        let weights = model.language().prior(prior);
        let received = model.received_likelihood();
        let mut values = Matrix::zeros(n, m);
        for w_hat in 0..n {
            for s_hat in 0..m {
                values[(w_hat, s_hat)] = (0..n).fold(Rational::zero(), |acc, w| {
                    acc + &weights[w] * &received[(w, s_hat)] * model.distortion().get(w, w_hat)
                });
            }
        }
        Self { values, prior }
    }

    pub fn get(&self, w_hat: usize, s_hat: usize) -> &Rational {
        &self.values[(w_hat, s_hat)]
    }

    pub fn prior(&self) -> Prior {
        self.prior
    }

    pub fn matrix(&self) -> &Matrix {
        &self.values
    }

    fn column(&self, s_hat: usize) -> impl Iterator<Item = &Rational> + '_ {
        (0..self.values.rows()).map(move |w| &self.values[(w, s_hat)])
    }

    /// Lowest meaning index minimizing `psi(., s_hat)`.
    pub fn argmin(&self, s_hat: usize) -> usize {
        first_extreme(self.column(s_hat), |a, b| a < b)
    }

    /// Lowest meaning index maximizing `psi(., s_hat)`.
    pub fn argmax(&self, s_hat: usize) -> usize {
        first_extreme(self.column(s_hat), |a, b| a > b)
    }
}

fn first_extreme<'a>(
    values: impl Iterator<Item = &'a Rational>,
    better: impl Fn(&Rational, &Rational) -> bool,
) -> usize {
    let mut best: Option<(usize, &Rational)> = None;
    for (i, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| better(v, b)) {
            best = Some((i, v));
        }
    }
    best.expect("at least one meaning").0
}

fn all_extreme(values: &[Rational], max: bool) -> Vec<usize> {
    let target = values
        .iter()
        .reduce(|a, b| if (max && b > a) || (!max && b < a) { b } else { a })
        .expect("at least one meaning");
    (0..values.len()).filter(|&i| &values[i] == target).collect()
}

/// The vertical segment of achievable decoding points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodingRegion {
    pub cost: Rational,
    pub min_distortion: Rational,
    pub max_distortion: Rational,
    pub best: DecodingScheme,
    pub worst: DecodingScheme,
}

impl DecodingRegion {
    pub fn endpoints(&self) -> [Point; 2] {
        [
            Point::new(self.cost.clone(), self.min_distortion.clone()),
            Point::new(self.cost.clone(), self.max_distortion.clone()),
        ]
    }

    pub fn region(&self) -> ConvexRegion {
        let [lo, hi] = self.endpoints();
        ConvexRegion {
            lower: vec![lo],
            upper: vec![hi],
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.cost == self.cost && self.min_distortion <= p.distortion && p.distortion <= self.max_distortion
    }
}

/// Average message cost under the language's own expression map.
pub fn expression_cost(model: &Model) -> Rational {
    let lang = model.language();
    let prior = lang.tx_prior();
    let mut acc = Rational::zero();
    for (w, pw) in prior.iter().enumerate() {
        for s in 0..model.num_messages() {
            let p = lang.p_msg(w, s);
            if !p.is_zero() {
                acc += pw * p * model.cost().cost(s);
            }
        }
    }
    acc
}

pub fn decoding_region(model: &Model) -> DecodingRegion {
    let psi = PsiTable::new(model, Prior::Tx);
    let m = model.num_messages();
    let n = model.num_meanings();
    let best = DecodingScheme::deterministic((0..m).map(|s| psi.argmin(s)).collect(), n);
    let worst = DecodingScheme::deterministic((0..m).map(|s| psi.argmax(s)).collect(), n);
    DecodingRegion {
        cost: expression_cost(model),
        min_distortion: deterministic_distortion(&psi, best.indices().expect("deterministic")),
        max_distortion: deterministic_distortion(&psi, worst.indices().expect("deterministic")),
        best,
        worst,
    }
}

fn deterministic_distortion(psi_tx: &PsiTable, indices: &[usize]) -> Rational {
    indices
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (s, &w)| acc + psi_tx.get(w, s))
}

/// Decoder minimizing `psi` under the chosen prior; ties go to the lowest meaning.
pub fn map_decoder(model: &Model, prior: Prior) -> DecodingScheme {
    let psi = PsiTable::new(model, prior);
    DecodingScheme::deterministic(
        (0..model.num_messages()).map(|s| psi.argmin(s)).collect(),
        model.num_meanings(),
    )
}

/// `D_{P,V} = sum p(w) p(s|w) c(s_hat|s) v(w_hat|s_hat) d(w, w_hat)`.
pub fn decoder_distortion(model: &Model, v: &DecodingScheme) -> Result<Rational> {
    model.check_decoder(v)?;
    let psi = PsiTable::new(model, Prior::Tx);
    let mut acc = Rational::zero();
    for s in 0..model.num_messages() {
        for w_hat in 0..model.num_meanings() {
            let x = v.prob(s, w_hat);
            if !x.is_zero() {
                acc += x * psi.get(w_hat, s);
            }
        }
    }
    Ok(acc)
}

/// Distortion of decoding with the language's own interpretation.
pub fn interpretation_distortion(model: &Model) -> Rational {
    let q = DecodingScheme::new(model.language().interpretation().clone())
        .expect("validated interpretation is stochastic");
    decoder_distortion(model, &q).expect("dimensions match by construction")
}

fn require_hamming(model: &Model) -> Result<()> {
    if model.distortion().is_hamming() {
        Ok(())
    } else {
        Err(Error::Domain("this check requires the Hamming distortion".into()))
    }
}

/// A received message whose receiver-side MAP set is not contained in the
/// transmitter-side one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingViolation {
    pub message: usize,
    pub rx_argmax: Vec<usize>,
    pub tx_argmax: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingReport {
    pub optimal: bool,
    pub violations: Vec<HammingViolation>,
}

/// Whether decoding under the receiver prior loses nothing against the true
/// prior: `argmax_w q(w)p(s_hat|w)` must lie inside `argmax_w p(w)p(s_hat|w)`.
pub fn hamming_optimality_check(model: &Model) -> Result<HammingReport> {
    require_hamming(model)?;
    let received = model.received_likelihood();
    let lang = model.language();
    let scores = |prior: &[Rational], s: usize| -> Vec<Rational> {
        (0..model.num_meanings())
            .map(|w| &prior[w] * &received[(w, s)])
            .collect()
    };
    let violations: Vec<HammingViolation> = (0..model.num_messages())
        .filter_map(|s| {
            let rx_argmax = all_extreme(&scores(lang.rx_prior(), s), true);
            let tx_argmax = all_extreme(&scores(lang.tx_prior(), s), true);
            (!rx_argmax.iter().all(|w| tx_argmax.contains(w))).then_some(HammingViolation {
                message: s,
                rx_argmax,
                tx_argmax,
            })
        })
        .collect();
    Ok(HammingReport {
        optimal: violations.is_empty(),
        violations,
    })
}

/// Normalized posterior of a received message and the cell of the decoding
/// partition it falls into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPoint {
    pub alpha: Vec<Rational>,
    /// Meaning the point decodes to (lowest index on ties).
    pub region: usize,
    /// Every meaning whose cell contains the point.
    pub regions: Vec<usize>,
}

pub fn simplex_embed(model: &Model, s_hat: usize, prior: Prior) -> Result<SimplexPoint> {
    if s_hat >= model.num_messages() {
        return Err(Error::Dimension(format!("no message with index {s_hat}")));
    }
    let received = model.received_likelihood();
    let weights = model.language().prior(prior);
    let raw: Vec<Rational> = (0..model.num_meanings())
        .map(|w| &weights[w] * &received[(w, s_hat)])
        .collect();
    let total = raw.iter().fold(Rational::zero(), |a, b| a + b);
    if total.is_zero() {
        return Err(Error::Domain(format!(
            "message {:?} is never received under this prior",
            model.language().messages()[s_hat]
        )));
    }
    let alpha: Vec<Rational> = raw.iter().map(|x| x / &total).collect();
    let expected: Vec<Rational> = (0..model.num_meanings())
        .map(|w_hat| {
            (0..model.num_meanings()).fold(Rational::zero(), |acc, w| {
                acc + &alpha[w] * model.distortion().get(w, w_hat)
            })
        })
        .collect();
    let regions = all_extreme(&expected, false);
    Ok(SimplexPoint {
        region: regions[0],
        regions,
        alpha,
    })
}

/// Which refinement (if any) was applied to a message's interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    Unchanged,
    /// The given meaning was removed and the rest renormalized.
    Removed(usize),
    /// The message now decodes deterministically to the given meaning.
    Collapsed(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedInterpretation {
    pub decoder: DecodingScheme,
    pub actions: Vec<Refinement>,
}

/// Improves the interpretation message by message using only supports and
/// the distortion measure, never increasing `D_{P,V}`.
pub fn refine_interpretation(model: &Model) -> RefinedInterpretation {
    let (n, m) = (model.num_meanings(), model.num_messages());
    let q = model.language().interpretation();
    let received = model.received_likelihood();
    let d = |w: usize, w_hat: usize| model.distortion().get(w, w_hat);
    let mut v = q.clone();
    let mut actions = vec![Refinement::Unchanged; m];
    for s in 0..m {
        let decoded: Vec<usize> = (0..n).filter(|&w| !q[(s, w)].is_zero()).collect();
        let sources: Vec<usize> = (0..n).filter(|&w| !received[(w, s)].is_zero()).collect();
        if decoded.len() < 2 || sources.is_empty() {
            continue;
        }
        let others = |skip: usize| decoded.iter().copied().filter(move |&w| w != skip);
        let collapse = decoded.iter().copied().find(|&target| {
            let worst = sources.iter().map(|&w| d(w, target)).max().expect("nonempty");
            let rival = sources
                .iter()
                .flat_map(|&w| others(target).map(move |o| d(w, o)))
                .min()
                .expect("nonempty");
            worst <= rival
        });
        if let Some(target) = collapse {
            for w in 0..n {
                v[(s, w)] = if w == target { Rational::one() } else { Rational::zero() };
            }
            actions[s] = Refinement::Collapsed(target);
            continue;
        }
        let removal = decoded.iter().copied().find(|&target| {
            let best = sources.iter().map(|&w| d(w, target)).min().expect("nonempty");
            let rival = sources
                .iter()
                .flat_map(|&w| others(target).map(move |o| d(w, o)))
                .max()
                .expect("nonempty");
            best >= rival
        });
        if let Some(target) = removal {
            let keep = Rational::one() - &q[(s, target)];
            for w in 0..n {
                v[(s, w)] = if w == target {
                    Rational::zero()
                } else {
                    &q[(s, w)] / &keep
                };
            }
            actions[s] = Refinement::Removed(target);
        }
    }
    RefinedInterpretation {
        decoder: DecodingScheme::new(v).expect("refinement keeps rows stochastic"),
        actions,
    }
}

/// `D_{P,Q} - D_{P,V*_q}` under the Hamming distortion.
pub fn decoding_gap(model: &Model) -> Result<Rational> {
    require_hamming(model)?;
    let v = map_decoder(model, Prior::Rx);
    Ok(interpretation_distortion(model) - decoder_distortion(model, &v)?)
}
