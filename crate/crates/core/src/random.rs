//! Seeded random instances for property tests and benchmarks.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::csed::check_theorem4;
use crate::encoding::{build_frontier, TieBreak};
use crate::language::{
    bayes_interpretation, CostFunction, DistortionMeasure, SemanticChannel, SemanticLanguage,
};
use crate::matrix::Matrix;
use crate::model::Model;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    pub meanings: usize,
    pub messages: usize,
    pub error_free: bool,
    pub hamming: bool,
    pub matching_priors: bool,
    /// Probability (in percent) that an expression entry is forced to zero.
    pub sparsity: u32,
}

impl InstanceShape {
    pub fn new(meanings: usize, messages: usize) -> Self {
        Self {
            meanings,
            messages,
            error_free: false,
            hamming: false,
            matching_priors: false,
            sparsity: 30,
        }
    }
}

/// A distribution over `k` outcomes with small integer weights.
pub fn distribution<R: Rng>(rng: &mut R, k: usize, sparsity: u32) -> Vec<Rational> {
    let mut weights: Vec<i64> = (0..k)
        .map(|_| {
            if rng.gen_range(0..100) < sparsity {
                0
            } else {
                rng.gen_range(1..=6)
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0) {
        weights[rng.gen_range(0..k)] = 1;
    }
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| Rational::new(w.into(), total.into())).collect()
}

fn stochastic<R: Rng>(rng: &mut R, rows: usize, cols: usize, sparsity: u32) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| distribution(rng, cols, sparsity)).collect())
        .expect("rows have equal length")
}

/// Sorted nonnegative costs, with repeated values now and then.
pub fn costs<R: Rng>(rng: &mut R, m: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..m)
        .map(|_| Rational::new(rng.gen_range(0..=8i64).into(), rng.gen_range(1..=2i64).into()))
        .collect();
    out.sort();
    out
}

fn distortion<R: Rng>(rng: &mut R, n: usize, symmetric: bool) -> Matrix {
    let mut d = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j || (symmetric && j < i) {
                continue;
            }
            d[(i, j)] = Rational::new(rng.gen_range(1..=4i64).into(), rng.gen_range(1..=3i64).into());
            if symmetric {
                d[(j, i)] = d[(i, j)].clone();
            }
        }
    }
    d
}

fn labels(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

/// A valid model with random rational tables of the requested shape.
pub fn model<R: Rng>(rng: &mut R, shape: InstanceShape) -> Model {
    let (n, m) = (shape.meanings, shape.messages);
    let tx = distribution(rng, n, 0);
    let rx = if shape.matching_priors {
        tx.clone()
    } else {
        distribution(rng, n, 0)
    };
    let lang = SemanticLanguage::new(
        labels("w", n),
        labels("s", m),
        stochastic(rng, n, m, shape.sparsity),
        stochastic(rng, m, n, shape.sparsity),
        tx,
        rx,
    )
    .expect("shapes agree");
    let channel = if shape.error_free {
        SemanticChannel::error_free(m)
    } else {
        SemanticChannel::new(stochastic(rng, m, m, 50)).expect("square kernel")
    };
    let dist = if shape.hamming {
        DistortionMeasure::hamming(n)
    } else {
        DistortionMeasure::new(distortion(rng, n, false)).expect("square matrix")
    };
    Model::new(lang, channel, dist, CostFunction::new(costs(rng, m))).expect("random model is valid")
}

/// A random row-stochastic encoder for `model`.
pub fn encoder_matrix<R: Rng>(rng: &mut R, n: usize, m: usize) -> Matrix {
    stochastic(rng, n, m, 40)
}

/// Reserves one message per meaning that no other meaning expresses, which
/// keeps the per-meaning argmin sets apart.
fn give_private_messages<R: Rng>(rng: &mut R, expression: &mut Matrix) {
    let (n, m) = (expression.rows(), expression.cols());
    let mut columns: Vec<usize> = (0..m).collect();
    columns.shuffle(rng);
    let mut rows = expression.to_rows();
    for (w, row) in rows.iter_mut().enumerate() {
        let mut weights: Vec<i64> = (0..m)
            .map(|s| {
                let private_to = columns[..n].iter().position(|&c| c == s);
                match private_to {
                    Some(owner) if owner == w => rng.gen_range(1..=6),
                    Some(_) => 0,
                    None if row[s].is_zero() => 0,
                    None => rng.gen_range(1..=6),
                }
            })
            .collect();
        let total: i64 = weights.iter().sum();
        *row = weights
            .drain(..)
            .map(|k| Rational::new(k.into(), total.into()))
            .collect();
    }
    *expression = Matrix::from_rows(rows).expect("rows have equal length");
}

/// A random model satisfying every hypothesis and condition of the CSED
/// optimality criterion, found by rejection. Returns `None` after `attempts`
/// failed draws.
pub fn csed_condition_instance<R: Rng>(rng: &mut R, n: usize, m: usize, attempts: usize) -> Option<Model> {
    for _ in 0..attempts {
        let prior = distribution(rng, n, 0);
        let mut expression = stochastic(rng, n, m, 60);
        if m >= n {
            give_private_messages(rng, &mut expression);
        }
        let interpretation = bayes_interpretation(&expression, &prior);
        let dist = if rng.gen_bool(0.5) {
            DistortionMeasure::hamming(n)
        } else {
            DistortionMeasure::new(distortion(rng, n, true)).expect("square matrix")
        };
        let lang = SemanticLanguage::new(
            labels("w", n),
            labels("s", m),
            expression,
            interpretation,
            prior.clone(),
            prior,
        )
        .expect("shapes agree");
        let mut cost = costs(rng, m);
        if cost.iter().all(Zero::is_zero) {
            cost[m - 1] = int(1);
        }
        let model = Model::new(lang, SemanticChannel::error_free(m), dist, CostFunction::new(cost))
            .expect("constructed model is valid");
        let frontier = build_frontier(&model, TieBreak::Lexicographic);
        if check_theorem4(&model, &frontier).verdict {
            return Some(model);
        }
    }
    None
}
