use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// `-log2` of the prior mass of the worlds in which a statement holds.
///
/// `satisfied[i]` tells whether world `i` satisfies the statement.
pub fn semantic_entropy(world_prior: &[Rational], satisfied: &[bool]) -> Result<f64> {
    if world_prior.len() != satisfied.len() {
        return Err(Error::Dimension(format!(
            "{} prior entries but {} satisfaction flags",
            world_prior.len(),
            satisfied.len()
        )));
    }
    let mass = world_prior
        .iter()
        .zip(satisfied)
        .filter(|(_, &s)| s)
        .fold(Rational::zero(), |acc, (p, _)| acc + p);
    if mass <= Rational::zero() {
        return Err(Error::Domain(
            "no satisfying world carries positive probability".into(),
        ));
    }
    let bits = -to_f64(&mass).log2();
    Ok(if bits == 0.0 { 0.0 } else { bits })
}
