//! Built-in example languages.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::language::{CostFunction, DistortionMeasure, SemanticChannel, SemanticLanguage};
use crate::matrix::Matrix;
use crate::model::Model;
use crate::rational::{int, ratio, Rational};

/// The bug walks from `(0, 0)` by `U` (up) and `R` (right) moves inside a
/// `side x side` grid; the receiver only cares about the destination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridWorldParams {
    pub side: usize,
    /// Labels and `(x, y)` cells, `x` counting right moves and `y` up moves.
    pub destinations: Vec<(String, (usize, usize))>,
    pub up_cost: Rational,
    pub right_cost: Rational,
    pub tx_prior: Vec<Rational>,
    pub rx_prior: Vec<Rational>,
}

impl Default for GridWorldParams {
    fn default() -> Self {
        Self {
            side: 3,
            destinations: vec![("A".into(), (1, 2)), ("B".into(), (2, 2))],
            up_cost: int(1),
            right_cost: int(2),
            tx_prior: vec![ratio(1, 3), ratio(2, 3)],
            rx_prior: vec![ratio(1, 2), ratio(1, 2)],
        }
    }
}

pub const EMPTY_MESSAGE: &str = "∅";

fn display(word: &str) -> String {
    if word.is_empty() {
        EMPTY_MESSAGE.to_string()
    } else {
        word.to_string()
    }
}

/// Words over `{U, R}` by length, then lexicographically with `U < R`.
fn words(max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| [format!("{w}U"), format!("{w}R")])
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

fn counts(word: &str) -> (usize, usize) {
    let ups = word.bytes().filter(|&b| b == b'U').count();
    (word.len() - ups, ups)
}

pub fn generate_gridworld(params: &GridWorldParams) -> Result<Model> {
    let n = params.destinations.len();
    if n == 0 || params.side == 0 {
        return Err(Error::Domain("the grid needs a side and at least one destination".into()));
    }
    if params.tx_prior.len() != n || params.rx_prior.len() != n {
        return Err(Error::Dimension(format!("priors must have {n} entries")));
    }
    let limit = params.side - 1;
    for (label, (x, y)) in &params.destinations {
        if *x > limit || *y > limit {
            return Err(Error::Domain(format!(
                "destination {label} at ({x}, {y}) lies outside the {0}x{0} grid",
                params.side
            )));
        }
    }
    let inside = |w: &str| {
        let (r, u) = counts(w);
        r <= limit && u <= limit
    };
    let all = words(2 * limit);
    let paths: Vec<Vec<&String>> = params
        .destinations
        .iter()
        .map(|(_, cell)| all.iter().filter(|w| counts(w) == *cell).collect())
        .collect();
    let prefix_counts = |s: &str| -> Vec<usize> {
        paths
            .iter()
            .map(|ps| ps.iter().filter(|p| p.starts_with(s)).count())
            .collect()
    };
    let cost_of = |w: &str| {
        let (r, u) = counts(w);
        &params.right_cost * int(r as i64) + &params.up_cost * int(u as i64)
    };

    let mut legit: Vec<(String, Vec<usize>, Rational)> = all
        .iter()
        .filter(|w| inside(w))
        .map(|w| (w.clone(), prefix_counts(w), cost_of(w)))
        .filter(|(_, c, _)| c.iter().any(|&k| k > 0))
        .collect();
    legit.sort_by(|a, b| a.2.cmp(&b.2));

    let interp = |c: &[usize]| -> Vec<Rational> {
        let total: usize = c.iter().sum();
        c.iter().map(|&k| ratio(k as i64, total as i64)).collect()
    };
    let expression_sizes: Vec<usize> = (0..n)
        .map(|w| legit.iter().filter(|(_, c, _)| c[w] > 0).count())
        .collect();

    // Complete trajectories of one destination that are decoded to it with
    // certainty are interchangeable; keep the first label in U<R order.
    let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut representatives: Vec<usize> = Vec::new();
    let mut groups: BTreeMap<(usize, Rational), usize> = BTreeMap::new();
    for (i, (word, c, cost)) in legit.iter().enumerate() {
        let complete = (0..n).find(|&w| counts(word) == params.destinations[w].1);
        let certain = complete.filter(|&w| c.iter().enumerate().all(|(v, &k)| (v == w) == (k > 0)));
        match certain {
            Some(w) => {
                let key = (w, cost.clone());
                let slot = *groups.entry(key).or_insert_with(|| {
                    representatives.push(i);
                    representatives.len() - 1
                });
                class_of.insert(i, slot);
            }
            None => {
                representatives.push(i);
                class_of.insert(i, representatives.len() - 1);
            }
        }
    }
    let mut labels: Vec<Option<String>> = vec![None; representatives.len()];
    for (i, (word, _, _)) in legit.iter().enumerate() {
        let slot = class_of[&i];
        let candidate = display(word);
        let replace = match &labels[slot] {
            None => true,
            Some(current) => word_key(&candidate) < word_key(current),
        };
        if replace {
            labels[slot] = Some(candidate);
        }
    }

    let m = representatives.len();
    let mut expression = Matrix::zeros(n, m);
    for (i, (_, c, _)) in legit.iter().enumerate() {
        for w in 0..n {
            if c[w] > 0 {
                expression[(w, class_of[&i])] += ratio(1, expression_sizes[w] as i64);
            }
        }
    }
    let mut interpretation = Matrix::zeros(m, n);
    for (slot, &i) in representatives.iter().enumerate() {
        for (w, q) in interp(&legit[i].1).into_iter().enumerate() {
            interpretation[(slot, w)] = q;
        }
    }
    let costs: Vec<Rational> = representatives.iter().map(|&i| legit[i].2.clone()).collect();
    let language = SemanticLanguage::new(
        params.destinations.iter().map(|(l, _)| l.clone()).collect(),
        labels.into_iter().map(|l| l.expect("every class has a member")).collect(),
        expression,
        interpretation,
        params.tx_prior.clone(),
        params.rx_prior.clone(),
    )?;
    Model::new(
        language,
        SemanticChannel::error_free(m),
        DistortionMeasure::hamming(n),
        CostFunction::new(costs),
    )
}

fn word_key(label: &str) -> Vec<u8> {
    label
        .bytes()
        .map(|b| if b == b'U' { 0 } else { 1 })
        .collect()
}

/// Two meanings, two equally expensive gestures, and a receiver that reads
/// each gesture the opposite way from the transmitter.
pub fn nodshake() -> Model {
    let half = ratio(1, 2);
    let language = SemanticLanguage::new(
        vec!["yes".into(), "no".into()],
        vec!["nod".into(), "shake".into()],
        Matrix::identity(2),
        Matrix::from_rows(vec![
            vec![Rational::zero(), Rational::one()],
            vec![Rational::one(), Rational::zero()],
        ])
        .expect("square"),
        vec![half.clone(), half.clone()],
        vec![half.clone(), half],
    )
    .expect("shapes agree");
    Model::new(
        language,
        SemanticChannel::error_free(2),
        DistortionMeasure::hamming(2),
        CostFunction::new(vec![int(1), int(1)]),
    )
    .expect("nod-shake model is valid")
}
