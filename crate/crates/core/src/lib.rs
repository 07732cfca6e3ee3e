//! Exact distortion-cost analysis of semantic encoding, semantic decoding and
//! their combination over finite languages.

pub mod csed;
pub mod decoding;
pub mod encoding;
pub mod entropy;
pub mod error;
pub mod hull;
pub mod io;
pub mod language;
pub mod matrix;
pub mod model;
pub mod oracle;
pub mod random;
pub mod rational;
pub mod scheme;

pub use error::{Error, Result};
pub use hull::{ConvexRegion, Point};
pub use language::{
    bayes_interpretation, is_self_consistent, CostFunction, DistortionMeasure, Issue, Prior,
    SelfConsistency, SemanticChannel, SemanticLanguage, ValidationReport,
};
pub use matrix::Matrix;
pub use model::{Model, PhiTable};
pub use rational::Rational;
pub use scheme::{DecodingScheme, EncodingScheme};
