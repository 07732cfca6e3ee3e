//! Semantic languages, channels, costs and distortion measures.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{is_distribution, Matrix};
use crate::rational::{format_rational, Rational};

/// Meanings, cost-ordered messages, the expression map `p(s|w)` and the
/// interpretation map `q(w|s)`, together with the transmitter prior `p(w)` and
/// the receiver prior `q(w)`.
///
/// The interpretation is stored as one distribution over meanings per
/// message, i.e. an `M x N` matrix whose rows sum to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticLanguage {
    meanings: Vec<String>,
    messages: Vec<String>,
    expression: Matrix,
    interpretation: Matrix,
    tx_prior: Vec<Rational>,
    rx_prior: Vec<Rational>,
}

impl SemanticLanguage {
    /// Checks shapes only; stochasticity is reported by [`SemanticLanguage::validate`].
    pub fn new(
        meanings: Vec<String>,
        messages: Vec<String>,
        expression: Matrix,
        interpretation: Matrix,
        tx_prior: Vec<Rational>,
        rx_prior: Vec<Rational>,
    ) -> Result<Self> {
        let n = meanings.len();
        let m = messages.len();
        if n == 0 || m == 0 {
            return Err(Error::Dimension(
                "a language needs at least one meaning and one message".into(),
            ));
        }
        if expression.rows() != n || expression.cols() != m {
            return Err(Error::Dimension(format!(
                "expression is {}x{}, expected {n}x{m}",
                expression.rows(),
                expression.cols()
            )));
        }
        if interpretation.rows() != m || interpretation.cols() != n {
            return Err(Error::Dimension(format!(
                "interpretation is {}x{}, expected {m}x{n}",
                interpretation.rows(),
                interpretation.cols()
            )));
        }
        if tx_prior.len() != n || rx_prior.len() != n {
            return Err(Error::Dimension(format!(
                "priors must have {n} entries (got {} and {})",
                tx_prior.len(),
                rx_prior.len()
            )));
        }
        Ok(Self {
            meanings,
            messages,
            expression,
            interpretation,
            tx_prior,
            rx_prior,
        })
    }

    pub fn num_meanings(&self) -> usize {
        self.meanings.len()
    }

    pub fn num_messages(&self) -> usize {
        self.messages.len()
    }

    pub fn meanings(&self) -> &[String] {
        &self.meanings
    }

    pub fn messages(&self) -> &[String] {
        &self.messages
    }

    pub fn meaning_index(&self, label: &str) -> Option<usize> {
        self.meanings.iter().position(|l| l == label)
    }

    pub fn message_index(&self, label: &str) -> Option<usize> {
        self.messages.iter().position(|l| l == label)
    }

    pub fn expression(&self) -> &Matrix {
        &self.expression
    }

    pub fn interpretation(&self) -> &Matrix {
        &self.interpretation
    }

    /// `p(s_m | w_n)`
    pub fn p_msg(&self, n: usize, m: usize) -> &Rational {
        &self.expression[(n, m)]
    }

    /// `q(w_n | s_m)`
    pub fn q_meaning(&self, m: usize, n: usize) -> &Rational {
        &self.interpretation[(m, n)]
    }

    pub fn tx_prior(&self) -> &[Rational] {
        &self.tx_prior
    }

    pub fn rx_prior(&self) -> &[Rational] {
        &self.rx_prior
    }

    pub fn prior(&self, which: Prior) -> &[Rational] {
        match which {
            Prior::Tx => &self.tx_prior,
            Prior::Rx => &self.rx_prior,
        }
    }

    pub fn priors_match(&self) -> bool {
        self.tx_prior == self.rx_prior
    }

    /// Replaces the receiver prior, keeping everything else.
    pub fn with_rx_prior(mut self, rx_prior: Vec<Rational>) -> Result<Self> {
        if rx_prior.len() != self.meanings.len() {
            return Err(Error::Dimension("receiver prior length".into()));
        }
        self.rx_prior = rx_prior;
        Ok(self)
    }

    /// Message marginal `p(s) = sum_w p(w) p(s|w)` under the transmitter prior.
    pub fn message_marginal(&self) -> Vec<Rational> {
        (0..self.num_messages())
            .map(|m| {
                (0..self.num_meanings()).fold(Rational::zero(), |acc, n| {
                    acc + &self.tx_prior[n] * &self.expression[(n, m)]
                })
            })
            .collect()
    }

    /// Language-level checks: stochastic `P` rows, normalized `q(.|s)`, priors.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for n in self.expression.non_stochastic_rows() {
            issues.push(Issue::ExpressionRow {
                meaning: self.meanings[n].clone(),
                sum: crate::rational::sum(self.expression.row(n)),
            });
        }
        for m in self.interpretation.non_stochastic_rows() {
            issues.push(Issue::InterpretationRow {
                message: self.messages[m].clone(),
                sum: crate::rational::sum(self.interpretation.row(m)),
            });
        }
        for (name, prior) in [("tx", &self.tx_prior), ("rx", &self.rx_prior)] {
            if !is_distribution(prior) {
                issues.push(Issue::Prior {
                    which: name,
                    sum: crate::rational::sum(prior.iter()),
                });
            }
        }
        ValidationReport { issues }
    }
}

/// Which prior over meanings an operation should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prior {
    /// The true distribution `p(w)` known to the transmitter.
    Tx,
    /// The receiver's belief `q(w)`.
    Rx,
}

/// Message-to-message transition kernel `c(s_hat | s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticChannel {
    kernel: Matrix,
}

impl SemanticChannel {
    pub fn new(kernel: Matrix) -> Result<Self> {
        if kernel.rows() != kernel.cols() {
            return Err(Error::Dimension("channel kernel must be square".into()));
        }
        Ok(Self { kernel })
    }

    pub fn error_free(m: usize) -> Self {
        Self {
            kernel: Matrix::identity(m),
        }
    }

    pub fn kernel(&self) -> &Matrix {
        &self.kernel
    }

    pub fn size(&self) -> usize {
        self.kernel.rows()
    }

    pub fn is_error_free(&self) -> bool {
        self.kernel.is_identity()
    }

    /// `c(s_hat | s)`
    pub fn transition(&self, s: usize, s_hat: usize) -> &Rational {
        &self.kernel[(s, s_hat)]
    }
}

/// Per-message cost `l(s)`, aligned with the message list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFunction {
    costs: Vec<Rational>,
}

impl CostFunction {
    pub fn new(costs: Vec<Rational>) -> Self {
        Self { costs }
    }

    pub fn costs(&self) -> &[Rational] {
        &self.costs
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn cost(&self, m: usize) -> &Rational {
        &self.costs[m]
    }

    pub fn is_sorted(&self) -> bool {
        self.costs.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn min(&self) -> Rational {
        self.costs.iter().min().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max(&self) -> Rational {
        self.costs.iter().max().cloned().unwrap_or_else(Rational::zero)
    }
}

/// Distortion `d(w, w_hat)` between intended and reconstructed meanings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionMeasure {
    matrix: Matrix,
}

impl DistortionMeasure {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Dimension("distortion matrix must be square".into()));
        }
        Ok(Self { matrix })
    }

    /// Zero on the diagonal, one elsewhere.
    pub fn hamming(n: usize) -> Self {
        let mut matrix = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    matrix[(i, j)] = Rational::one();
                }
            }
        }
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn get(&self, w: usize, w_hat: usize) -> &Rational {
        &self.matrix[(w, w_hat)]
    }

    pub fn is_hamming(&self) -> bool {
        *self == Self::hamming(self.size())
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.matrix[(i, j)] == self.matrix[(j, i)]))
    }
}

/// Outcome of validating a language or a full model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.issues.iter().map(ToString::to_string).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    ExpressionRow { meaning: String, sum: Rational },
    InterpretationRow { message: String, sum: Rational },
    Prior { which: &'static str, sum: Rational },
    ChannelRow { message: String },
    UnsortedCosts { first: String, second: String },
    NegativeCost { message: String },
    NegativeDistortion,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::ExpressionRow { meaning, sum } => write!(
                f,
                "expression row for meaning {meaning:?} is not a distribution (sum {})",
                format_rational(sum)
            ),
            Issue::InterpretationRow { message, sum } => write!(
                f,
                "interpretation of message {message:?} is not a distribution (sum {})",
                format_rational(sum)
            ),
            Issue::Prior { which, sum } => write!(
                f,
                "{which} prior is not a distribution (sum {})",
                format_rational(sum)
            ),
            Issue::ChannelRow { message } => {
                write!(f, "channel row for message {message:?} is not a distribution")
            }
            Issue::UnsortedCosts { first, second } => write!(
                f,
                "messages are not sorted by cost: {first:?} costs more than {second:?}"
            ),
            Issue::NegativeCost { message } => write!(f, "message {message:?} has negative cost"),
            Issue::NegativeDistortion => write!(f, "distortion matrix has negative entries"),
        }
    }
}

/// Result of testing Bayes consistency between `P`, `p(w)` and `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfConsistency {
    pub consistent: bool,
    /// First `(meaning, message, bayes value, stored value)` that disagrees.
    pub counterexample: Option<(usize, usize, Rational, Rational)>,
    /// Messages with `p(s) = 0`, for which the condition is vacuous.
    pub vacuous: Vec<usize>,
}

/// Checks `q(w|s) = p(s|w) p(w) / p(s)` for every message with `p(s) > 0`.
pub fn is_self_consistent(lang: &SemanticLanguage) -> SelfConsistency {
    let marginal = lang.message_marginal();
    let vacuous: Vec<usize> = (0..marginal.len())
        .filter(|&m| marginal[m].is_zero())
        .collect();
    let counterexample = marginal
        .iter()
        .enumerate()
        .filter(|(_, ps)| !ps.is_zero())
        .find_map(|(m, ps)| {
            (0..lang.num_meanings()).find_map(|n| {
                let bayes = lang.p_msg(n, m) * &lang.tx_prior()[n] / ps;
                (&bayes != lang.q_meaning(m, n))
                    .then(|| (n, m, bayes, lang.q_meaning(m, n).clone()))
            })
        });
    SelfConsistency {
        consistent: counterexample.is_none(),
        counterexample,
        vacuous,
    }
}

/// The Bayes-posterior interpretation of `expression` under `prior`.
///
/// Messages that are never produced get the prior itself as their row.
pub fn bayes_interpretation(expression: &Matrix, prior: &[Rational]) -> Matrix {
    let (n, m) = (expression.rows(), expression.cols());
    let mut q = Matrix::zeros(m, n);
    for s in 0..m {
        let ps = (0..n).fold(Rational::zero(), |acc, w| acc + &prior[w] * &expression[(w, s)]);
        for w in 0..n {
            q[(s, w)] = if ps.is_zero() {
                prior[w].clone()
            } else {
                &prior[w] * &expression[(w, s)] / &ps
            };
        }
    }
    q
}

pub(crate) fn any_negative(v: &[Rational]) -> bool {
    v.iter().any(Signed::is_negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn identity_language(n: usize) -> SemanticLanguage {
        let labels: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let msgs: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        let prior = vec![ratio(1, n as i64); n];
        SemanticLanguage::new(
            labels,
            msgs,
            Matrix::identity(n),
            Matrix::identity(n),
            prior.clone(),
            prior,
        )
        .unwrap()
    }

    #[test]
    fn identity_language_validates() {
        assert!(identity_language(3).validate().is_valid());
    }

    #[test]
    fn short_expression_row_is_named() {
        let p = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(2, 5)],
            vec![ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        let lang = SemanticLanguage::new(
            vec!["a".into(), "b".into()],
            vec!["x".into(), "y".into()],
            p,
            Matrix::identity(2),
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(1, 2), ratio(1, 2)],
        )
        .unwrap();
        let report = lang.validate();
        assert_eq!(
            report.issues,
            vec![Issue::ExpressionRow {
                meaning: "a".into(),
                sum: ratio(9, 10)
            }]
        );
        assert!(report.messages()[0].contains("\"a\""));
    }

    #[test]
    fn bayes_round_trip_is_consistent() {
        let p = Matrix::from_rows(vec![
            vec![ratio(1, 3), ratio(2, 3), ratio(0, 1)],
            vec![ratio(1, 4), ratio(1, 4), ratio(1, 2)],
        ])
        .unwrap();
        let prior = vec![ratio(2, 5), ratio(3, 5)];
        let q = bayes_interpretation(&p, &prior);
        let lang = SemanticLanguage::new(
            vec!["a".into(), "b".into()],
            vec!["x".into(), "y".into(), "z".into()],
            p,
            q,
            prior.clone(),
            prior,
        )
        .unwrap();
        assert!(lang.validate().is_valid());
        assert!(is_self_consistent(&lang).consistent);
    }

    #[test]
    fn unused_messages_are_vacuous() {
        let p = Matrix::from_rows(vec![vec![ratio(1, 1), ratio(0, 1)]]).unwrap();
        let q = Matrix::from_rows(vec![vec![ratio(1, 1)], vec![ratio(1, 1)]]).unwrap();
        let lang = SemanticLanguage::new(
            vec!["a".into()],
            vec!["x".into(), "y".into()],
            p,
            q,
            vec![ratio(1, 1)],
            vec![ratio(1, 1)],
        )
        .unwrap();
        let sc = is_self_consistent(&lang);
        assert!(sc.consistent);
        assert_eq!(sc.vacuous, vec![1]);
    }

    #[test]
    fn hamming_shape() {
        let d = DistortionMeasure::hamming(3);
        assert!(d.is_hamming() && d.is_symmetric());
        assert!(d.get(1, 1).is_zero());
        assert!(d.get(0, 2).is_one());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let err = SemanticLanguage::new(
            vec!["a".into()],
            vec!["x".into()],
            Matrix::identity(2),
            Matrix::identity(1),
            vec![ratio(1, 1)],
            vec![ratio(1, 1)],
        );
        assert!(matches!(err, Err(Error::Dimension(_))));
    }
}
