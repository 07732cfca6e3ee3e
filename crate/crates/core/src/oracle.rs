//! Exhaustive and statistical cross-checks.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decoding::PsiTable;
use crate::error::{Error, Result};
use crate::hull::{minkowski_lower_envelope, simplify, Point};
use crate::language::Prior;
use crate::model::Model;
use crate::rational::{to_f64, Rational};
use crate::scheme::{DecodingScheme, EncodingScheme};

/// Upper bounds on how many schemes the oracle will enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_encoder_count: u128,
    pub max_decoder_count: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_encoder_count: 1_000_000,
            max_decoder_count: 1_000_000,
        }
    }
}

impl EnumerationBudget {
    /// The same bound for every kind of enumeration.
    pub fn uniform(limit: u128) -> Self {
        Self {
            max_encoder_count: limit,
            max_decoder_count: limit,
        }
    }
}

fn power(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

fn check(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::Budget { required, budget })
    } else {
        Ok(())
    }
}

/// Digits of `k` in base `radix`, most significant first.
fn digits(mut k: u128, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (k % radix as u128) as usize;
        k /= radix as u128;
    }
    out
}

/// Every index vector of length `len` over `0..radix`, in lexicographic order.
pub fn index_vectors(radix: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..power(radix, len)).map(move |k| digits(k, radix, len))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderPoint {
    pub indices: Vec<usize>,
    pub point: Point,
}

/// Additive per-meaning contributions `p(w) l(s)` and `p(w) phi(w, s)`.
struct Separable {
    cost: Vec<Vec<Rational>>,
    distortion: Vec<Vec<Rational>>,
}

impl Separable {
    fn new(model: &Model, decoder: Option<&DecodingScheme>) -> Self {
        let phi = match decoder {
            Some(v) => model.phi_table_for(v),
            None => model.phi_table(),
        };
        let prior = model.language().tx_prior();
        let (n, m) = (model.num_meanings(), model.num_messages());
        Self {
            cost: (0..n)
                .map(|w| (0..m).map(|s| &prior[w] * model.cost().cost(s)).collect())
                .collect(),
            distortion: (0..n)
                .map(|w| (0..m).map(|s| &prior[w] * phi.get(w, s)).collect())
                .collect(),
        }
    }

    fn point(&self, indices: &[usize]) -> Point {
        let mut c = Rational::zero();
        let mut d = Rational::zero();
        for (w, &s) in indices.iter().enumerate() {
            c += &self.cost[w][s];
            d += &self.distortion[w][s];
        }
        Point::new(c, d)
    }
}

fn encoder_points(model: &Model, decoder: Option<&DecodingScheme>) -> Vec<EncoderPoint> {
    let table = Separable::new(model, decoder);
    let (n, m) = (model.num_meanings(), model.num_messages());
    (0..power(m, n))
        .into_par_iter()
        .map(|k| {
            let indices = digits(k, m, n);
            EncoderPoint {
                point: table.point(&indices),
                indices,
            }
        })
        .collect()
}

/// All `M^N` deterministic encoders with their `(L, D)` against `Q`.
pub fn enumerate_encoding_points(model: &Model, budget: &EnumerationBudget) -> Result<Vec<EncoderPoint>> {
    check(
        power(model.num_messages(), model.num_meanings()),
        budget.max_encoder_count,
    )?;
    Ok(encoder_points(model, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoderPoint {
    pub indices: Vec<usize>,
    pub distortion: Rational,
}

/// All `N^M` deterministic decoders with their distortion against `P`.
pub fn enumerate_decoders(model: &Model, budget: &EnumerationBudget) -> Result<Vec<DecoderPoint>> {
    let (n, m) = (model.num_meanings(), model.num_messages());
    check(power(n, m), budget.max_decoder_count)?;
    let psi = PsiTable::new(model, Prior::Tx);
    Ok((0..power(n, m))
        .into_par_iter()
        .map(|k| {
            let indices = digits(k, n, m);
            let distortion = indices
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (s, &w)| acc + psi.get(w, s));
            DecoderPoint {
                indices,
                distortion,
            }
        })
        .collect())
}

/// Lowest distortion reachable at each cost when both sides may deviate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalOptimum {
    /// Piecewise-linear, not necessarily convex.
    pub envelope: Vec<Point>,
    pub decoders_evaluated: usize,
}

impl GlobalOptimum {
    pub fn value_at(&self, cost: &Rational) -> Option<Rational> {
        crate::hull::interpolate(&self.envelope, cost)
    }
}

/// For every deterministic decoder, the exact lower hull of all deterministic
/// encoders decoded by it; the optimum is their pointwise minimum. Encoder
/// points are separable sums over meanings, so each hull is a Minkowski sum.
///
/// A fixed randomized decoder never helps: for a fixed cost, the best
/// time-shared distortion is a minimum of functions linear in the decoder,
/// so a deterministic decoder attains it.
pub fn global_optimum(model: &Model, budget: &EnumerationBudget) -> Result<GlobalOptimum> {
    let (n, m) = (model.num_meanings(), model.num_messages());
    let decoders = power(n, m);
    check(decoders, budget.max_decoder_count)?;
    let mut hulls: Vec<Vec<Point>> = (0..decoders)
        .into_par_iter()
        .map(|k| {
            let v = DecodingScheme::deterministic(digits(k, n, m), n);
            let table = Separable::new(model, Some(&v));
            let per_meaning: Vec<Vec<Point>> = (0..n)
                .map(|w| {
                    (0..m)
                        .map(|s| Point::new(table.cost[w][s].clone(), table.distortion[w][s].clone()))
                        .collect()
                })
                .collect();
            minkowski_lower_envelope(&per_meaning)
        })
        .collect();
    hulls.sort();
    hulls.dedup();
    Ok(GlobalOptimum {
        envelope: pointwise_min(&hulls),
        decoders_evaluated: decoders as usize,
    })
}

/// Pointwise minimum of piecewise-linear functions sharing one cost span.
pub fn pointwise_min(polylines: &[Vec<Point>]) -> Vec<Point> {
    let mut level: Vec<Vec<Point>> = polylines.to_vec();
    while level.len() > 1 {
        level = level
            .par_chunks(2)
            .map(|pair| match pair {
                [a, b] => min_of_two(a, b),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    level.pop().map(|p| simplify(&p)).unwrap_or_default()
}

/// Values of a polyline at increasing costs inside its span.
fn sample_at(line: &[Point], xs: &[Rational]) -> Vec<Rational> {
    let mut i = 0;
    xs.iter()
        .map(|x| {
            while i + 1 < line.len() && &line[i + 1].cost <= x {
                i += 1;
            }
            if i + 1 == line.len() {
                return line[i].distortion.clone();
            }
            let (a, b) = (&line[i], &line[i + 1]);
            &a.distortion + (&b.distortion - &a.distortion) * (x - &a.cost) / (&b.cost - &a.cost)
        })
        .collect()
}

fn min_of_two(a: &[Point], b: &[Point]) -> Vec<Point> {
    let mut xs: Vec<Rational> = a.iter().chain(b).map(|p| p.cost.clone()).collect();
    xs.sort();
    xs.dedup();
    let va = sample_at(a, &xs);
    let vb = sample_at(b, &xs);
    let mut out = Vec::with_capacity(xs.len());
    for k in 0..xs.len() {
        out.push(Point::new(xs[k].clone(), va[k].clone().min(vb[k].clone())));
        if k + 1 == xs.len() {
            break;
        }
        let d0 = &va[k] - &vb[k];
        let d1 = &va[k + 1] - &vb[k + 1];
        if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
            let t = &d0 / (&d0 - &d1);
            out.push(Point::new(
                &xs[k] + (&xs[k + 1] - &xs[k]) * &t,
                &va[k] + (&va[k + 1] - &va[k]) * &t,
            ));
        }
    }
    simplify(&out)
}

/// Exact sampler for a rational distribution.
#[derive(Debug, Clone)]
enum Categorical {
    Small { cumulative: Vec<u64>, total: u64 },
    Big { cumulative: Vec<BigUint>, total: BigUint },
}

impl Categorical {
    fn new(probs: &[Rational]) -> Self {
        let lcm = probs
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let mut acc = BigInt::zero();
        let cumulative: Vec<BigUint> = probs
            .iter()
            .map(|p| {
                acc += p.numer() * (&lcm / p.denom());
                acc.to_biguint().expect("probabilities are nonnegative")
            })
            .collect();
        let total = cumulative.last().cloned().unwrap_or_default();
        match (
            total.to_u64(),
            cumulative.iter().map(ToPrimitive::to_u64).collect::<Option<Vec<u64>>>(),
        ) {
            (Some(t), Some(c)) => Categorical::Small {
                cumulative: c,
                total: t,
            },
            _ => Categorical::Big { cumulative, total },
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        match self {
            Categorical::Small { cumulative, total } => {
                let x = rng.gen_range(0..*total);
                cumulative.partition_point(|&c| c <= x)
            }
            Categorical::Big { cumulative, total } => {
                let x = rng.gen_biguint_below(total);
                cumulative.partition_point(|c| c <= &x)
            }
        }
    }
}

/// One-shot transmissions: `w ~ p(w)`, `s ~ u(.|w)`, `s_hat ~ c(.|s)`,
/// `w_hat ~ v(.|s_hat)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationConfig {
    pub trials: u64,
    pub seed: u64,
    pub encoder: EncodingScheme,
    pub decoder: DecodingScheme,
    pub block_size: u64,
}

impl SimulationConfig {
    pub fn new(trials: u64, seed: u64, encoder: EncodingScheme, decoder: DecodingScheme) -> Self {
        Self {
            trials,
            seed,
            encoder,
            decoder,
            block_size: 8192,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub trials: u64,
    pub mean_cost: Rational,
    pub mean_distortion: Rational,
    pub se_cost: f64,
    pub se_distortion: f64,
    /// Empirical frequency of each received message.
    pub received_frequency: Vec<Rational>,
}

impl SimulationResult {
    pub fn mean_cost_f64(&self) -> f64 {
        to_f64(&self.mean_cost)
    }

    pub fn mean_distortion_f64(&self) -> f64 {
        to_f64(&self.mean_distortion)
    }
}

#[derive(Clone)]
struct Tally {
    sent: Vec<u64>,
    received: Vec<u64>,
    decoded: Vec<u64>,
}

impl Tally {
    fn new(n: usize, m: usize) -> Self {
        Self {
            sent: vec![0; m],
            received: vec![0; m],
            decoded: vec![0; n * n],
        }
    }

    fn merge(mut self, other: &Tally) -> Self {
        for (a, b) in self.sent.iter_mut().zip(&other.sent) {
            *a += b;
        }
        for (a, b) in self.received.iter_mut().zip(&other.received) {
            *a += b;
        }
        for (a, b) in self.decoded.iter_mut().zip(&other.decoded) {
            *a += b;
        }
        self
    }
}

fn moments<'a>(counts: impl Iterator<Item = (u64, &'a Rational)>) -> (Rational, Rational) {
    counts.fold((Rational::zero(), Rational::zero()), |(s, sq), (k, x)| {
        let k = Rational::from_integer(k.into());
        (s + &k * x, sq + k * x * x)
    })
}

fn standard_error(sum: &Rational, sum_sq: &Rational, n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nn = Rational::from_integer(n.into());
    let mean = sum / &nn;
    let var = (sum_sq / &nn - &mean * &mean) * &nn / (&nn - Rational::one());
    (to_f64(&var).max(0.0) / n as f64).sqrt()
}

pub fn simulate(model: &Model, config: &SimulationConfig) -> Result<SimulationResult> {
    if config.trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    if config.encoder.num_meanings() != model.num_meanings()
        || config.encoder.num_messages() != model.num_messages()
    {
        return Err(Error::Dimension("encoder does not fit the model".into()));
    }
    model.check_decoder(&config.decoder)?;
    let (n, m) = (model.num_meanings(), model.num_messages());
    let prior = Categorical::new(model.language().tx_prior());
    let encode: Vec<Categorical> = config
        .encoder
        .matrix()
        .iter_rows()
        .map(Categorical::new)
        .collect();
    let channel: Vec<Categorical> = model.channel().kernel().iter_rows().map(Categorical::new).collect();
    let decode: Vec<Categorical> = config.decoder.matrix().iter_rows().map(Categorical::new).collect();
    let block = config.block_size.max(1);
    let blocks = config.trials.div_ceil(block);
    let tallies: Vec<Tally> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(b);
            let count = block.min(config.trials - b * block);
            let mut tally = Tally::new(n, m);
            for _ in 0..count {
                let w = prior.sample(&mut rng);
                let s = encode[w].sample(&mut rng);
                let s_hat = channel[s].sample(&mut rng);
                let w_hat = decode[s_hat].sample(&mut rng);
                tally.sent[s] += 1;
                tally.received[s_hat] += 1;
                tally.decoded[w * n + w_hat] += 1;
            }
            tally
        })
        .collect();
    let total = tallies.iter().fold(Tally::new(n, m), |acc, t| acc.merge(t));
    let (c_sum, c_sq) = moments(total.sent.iter().enumerate().map(|(s, &k)| (k, model.cost().cost(s))));
    let (d_sum, d_sq) = moments(
        total
            .decoded
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, model.distortion().get(i / n, i % n))),
    );
    let trials = Rational::from_integer(config.trials.into());
    Ok(SimulationResult {
        trials: config.trials,
        se_cost: standard_error(&c_sum, &c_sq, config.trials),
        se_distortion: standard_error(&d_sum, &d_sq, config.trials),
        mean_cost: c_sum / &trials,
        mean_distortion: d_sum / &trials,
        received_frequency: total
            .received
            .iter()
            .map(|&k| Rational::from_integer(k.into()) / &trials)
            .collect(),
    })
}
