//! A complete problem instance and the basic distortion/cost functionals.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::Point;
use crate::language::{
    any_negative, CostFunction, DistortionMeasure, Issue, SemanticChannel, SemanticLanguage,
    ValidationReport,
};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scheme::{DecodingScheme, EncodingScheme};

/// Language, channel, distortion and cost with consistent dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    language: SemanticLanguage,
    channel: SemanticChannel,
    distortion: DistortionMeasure,
    cost: CostFunction,
}

impl Model {
    /// Builds and fully validates a model.
    pub fn new(
        language: SemanticLanguage,
        channel: SemanticChannel,
        distortion: DistortionMeasure,
        cost: CostFunction,
    ) -> Result<Self> {
        let model = Self::unchecked(language, channel, distortion, cost)?;
        let report = model.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(report.messages()));
        }
        Ok(model)
    }

    /// Checks dimensions only. Use [`Model::validate`] to obtain diagnostics.
    pub fn unchecked(
        language: SemanticLanguage,
        channel: SemanticChannel,
        distortion: DistortionMeasure,
        cost: CostFunction,
    ) -> Result<Self> {
        let (n, m) = (language.num_meanings(), language.num_messages());
        if channel.size() != m {
            return Err(Error::Dimension(format!(
                "channel is {0}x{0}, expected {m}x{m}",
                channel.size()
            )));
        }
        if distortion.size() != n {
            return Err(Error::Dimension(format!(
                "distortion is {0}x{0}, expected {n}x{n}",
                distortion.size()
            )));
        }
        if cost.len() != m {
            return Err(Error::Dimension(format!(
                "{} costs for {m} messages",
                cost.len()
            )));
        }
        Ok(Self {
            language,
            channel,
            distortion,
            cost,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.language.validate();
        let msgs = self.language.messages();
        for r in self.channel.kernel().non_stochastic_rows() {
            report.issues.push(Issue::ChannelRow {
                message: msgs[r].clone(),
            });
        }
        for (m, c) in self.cost.costs().iter().enumerate() {
            if c.is_negative() {
                report.issues.push(Issue::NegativeCost {
                    message: msgs[m].clone(),
                });
            }
        }
        for (m, w) in self.cost.costs().windows(2).enumerate() {
            if w[0] > w[1] {
                report.issues.push(Issue::UnsortedCosts {
                    first: msgs[m].clone(),
                    second: msgs[m + 1].clone(),
                });
            }
        }
        if self.distortion.matrix().has_negative() {
            report.issues.push(Issue::NegativeDistortion);
        }
        report
    }

    pub fn language(&self) -> &SemanticLanguage {
        &self.language
    }

    pub fn channel(&self) -> &SemanticChannel {
        &self.channel
    }

    pub fn distortion(&self) -> &DistortionMeasure {
        &self.distortion
    }

    pub fn cost(&self) -> &CostFunction {
        &self.cost
    }

    pub fn num_meanings(&self) -> usize {
        self.language.num_meanings()
    }

    pub fn num_messages(&self) -> usize {
        self.language.num_messages()
    }

    /// Replaces the language (e.g. a different receiver prior) keeping the rest.
    pub fn with_language(&self, language: SemanticLanguage) -> Result<Self> {
        Self::new(
            language,
            self.channel.clone(),
            self.distortion.clone(),
            self.cost.clone(),
        )
    }

    /// Expected distortion of sending meaning `w` as message `s` through the
    /// channel and the language's interpretation:
    /// `sum_{s_hat, w_hat} c(s_hat|s) q(w_hat|s_hat) d(w, w_hat)`.
    pub fn phi(&self, w: usize, s: usize) -> Rational {
        self.phi_with(self.language.interpretation(), w, s)
    }

    fn phi_with(&self, decoder: &Matrix, w: usize, s: usize) -> Rational {
        let mut acc = Rational::zero();
        for s_hat in 0..self.num_messages() {
            let c = self.channel.transition(s, s_hat);
            if c.is_zero() {
                continue;
            }
            let inner = (0..self.num_meanings()).fold(Rational::zero(), |a, w_hat| {
                a + &decoder[(s_hat, w_hat)] * self.distortion.get(w, w_hat)
            });
            acc += c * inner;
        }
        acc
    }

    /// `phi(w, s)` for every pair.
    pub fn phi_table(&self) -> PhiTable {
        self.phi_table_with(self.language.interpretation())
    }

    /// `phi` evaluated against an arbitrary receiver decoder instead of `Q`.
    pub fn phi_table_for(&self, decoder: &DecodingScheme) -> PhiTable {
        self.phi_table_with(decoder.matrix())
    }

    fn phi_table_with(&self, decoder: &Matrix) -> PhiTable {
        let (n, m) = (self.num_meanings(), self.num_messages());
        let mut values = Matrix::zeros(n, m);
        for w in 0..n {
            for s in 0..m {
                values[(w, s)] = self.phi_with(decoder, w, s);
            }
        }
        PhiTable { values }
    }

    fn check_encoder(&self, u: &EncodingScheme) -> Result<()> {
        if u.num_meanings() != self.num_meanings() || u.num_messages() != self.num_messages() {
            return Err(Error::Dimension(format!(
                "encoder is {}x{}, model is {}x{}",
                u.num_meanings(),
                u.num_messages(),
                self.num_meanings(),
                self.num_messages()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_decoder(&self, v: &DecodingScheme) -> Result<()> {
        if v.num_meanings() != self.num_meanings() || v.num_messages() != self.num_messages() {
            return Err(Error::Dimension(format!(
                "decoder is {}x{}, model is {}x{}",
                v.num_messages(),
                v.num_meanings(),
                self.num_messages(),
                self.num_meanings()
            )));
        }
        Ok(())
    }

    /// Four-fold sum `sum p(w) u(s|w) c(s_hat|s) v(w_hat|s_hat) d(w, w_hat)`.
    pub fn end_to_end_distortion(
        &self,
        u: &EncodingScheme,
        v: &DecodingScheme,
    ) -> Result<Rational> {
        self.check_encoder(u)?;
        self.check_decoder(v)?;
        Ok(self.four_fold(u.matrix(), v.matrix()))
    }

    fn four_fold(&self, u: &Matrix, v: &Matrix) -> Rational {
        let (n, m) = (self.num_meanings(), self.num_messages());
        let prior = self.language.tx_prior();
        let mut acc = Rational::zero();
        for w in 0..n {
            for s in 0..m {
                let pu = &prior[w] * &u[(w, s)];
                if pu.is_zero() {
                    continue;
                }
                for s_hat in 0..m {
                    let c = self.channel.transition(s, s_hat);
                    if c.is_zero() {
                        continue;
                    }
                    let puc = &pu * c;
                    for w_hat in 0..n {
                        acc += &puc * &v[(s_hat, w_hat)] * self.distortion.get(w, w_hat);
                    }
                }
            }
        }
        acc
    }

    /// Average distortion of `u` against the language's interpretation.
    pub fn average_distortion_enc(&self, u: &EncodingScheme) -> Result<Rational> {
        self.check_encoder(u)?;
        Ok(self.four_fold(u.matrix(), self.language.interpretation()))
    }

    /// Same quantity through `sum p(w) u(s|w) phi(w, s)`.
    pub fn average_distortion_enc_phi(&self, u: &EncodingScheme, phi: &PhiTable) -> Result<Rational> {
        self.check_encoder(u)?;
        let prior = self.language.tx_prior();
        let mut acc = Rational::zero();
        for (w, pw) in prior.iter().enumerate() {
            for s in 0..self.num_messages() {
                let x = u.prob(w, s);
                if !x.is_zero() {
                    acc += pw * x * phi.get(w, s);
                }
            }
        }
        Ok(acc)
    }

    /// `L_U = sum p(w) u(s|w) l(s)`.
    pub fn average_cost(&self, u: &EncodingScheme) -> Result<Rational> {
        self.check_encoder(u)?;
        let prior = self.language.tx_prior();
        let mut acc = Rational::zero();
        for (w, pw) in prior.iter().enumerate() {
            for s in 0..self.num_messages() {
                let x = u.prob(w, s);
                if !x.is_zero() {
                    acc += pw * x * self.cost.cost(s);
                }
            }
        }
        Ok(acc)
    }

    /// Cost of a deterministic encoder given by its index vector.
    pub fn cost_of(&self, indices: &[usize]) -> Rational {
        let prior = self.language.tx_prior();
        indices
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (w, &s)| acc + &prior[w] * self.cost.cost(s))
    }

    /// Distortion through `phi` of a deterministic encoder given by its index vector.
    pub fn distortion_of(&self, indices: &[usize], phi: &PhiTable) -> Rational {
        let prior = self.language.tx_prior();
        indices
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (w, &s)| acc + &prior[w] * phi.get(w, s))
    }

    /// `(L, D)` of a deterministic encoder.
    pub fn point_of(&self, indices: &[usize], phi: &PhiTable) -> Point {
        Point::new(self.cost_of(indices), self.distortion_of(indices, phi))
    }

    /// `p(s_hat | w) = sum_s p(s|w) c(s_hat|s)` as an `N x M` matrix.
    pub fn received_likelihood(&self) -> Matrix {
        let (n, m) = (self.num_meanings(), self.num_messages());
        let mut out = Matrix::zeros(n, m);
        for w in 0..n {
            for s in 0..m {
                let p = self.language.p_msg(w, s);
                if p.is_zero() {
                    continue;
                }
                for s_hat in 0..m {
                    let c = self.channel.transition(s, s_hat);
                    if !c.is_zero() {
                        out[(w, s_hat)] += p * c;
                    }
                }
            }
        }
        out
    }

    pub fn costs_nonnegative(&self) -> bool {
        !any_negative(self.cost.costs())
    }
}

/// `phi(w, s)` for all meaning/message pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTable {
    values: Matrix,
}

impl PhiTable {
    pub fn get(&self, w: usize, s: usize) -> &Rational {
        &self.values[(w, s)]
    }

    pub fn row(&self, w: usize) -> &[Rational] {
        self.values.row(w)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.values
    }
}
