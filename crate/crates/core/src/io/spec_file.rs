//! Plain-text model files in TOML.
//!
//! ```toml
//! channel = "error-free"          # or a list of rows
//! distortion = "hamming"          # or a list of rows
//! expression = [["1/2", "1/2"]]   # one row per meaning, over messages
//! interpretation = [["1"], ["1"]] # one row per message, over meanings
//!
//! [[meanings]]
//! label = "yes"
//! p = "1"
//! q = "1"                         # optional, defaults to p
//!
//! [[messages]]
//! label = "nod"
//! cost = "1"
//! ```

use std::fmt::{self, Write as _};
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::language::{CostFunction, DistortionMeasure, SemanticChannel, SemanticLanguage};
use crate::matrix::Matrix;
use crate::model::Model;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone)]
struct Num(Rational);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct NumVisitor;

        impl Visitor<'_> for NumVisitor {
            type Value = Num;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a rational string such as \"3/4\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Num, E> {
                parse_rational(v)
                    .map(Num)
                    .map_err(|_| E::custom(format!("invalid rational {v:?}")))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Num, E> {
                Err(E::custom(format!(
                    "decimal {v} is not accepted, write it as a fraction"
                )))
            }
        }

        deserializer.deserialize_any(NumVisitor)
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Table {
    Keyword(String),
    Rows(Vec<Vec<Num>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeaning {
    label: String,
    p: Num,
    q: Option<Num>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMessage {
    label: String,
    cost: Num,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    channel: Option<Table>,
    distortion: Option<Table>,
    expression: Vec<Vec<Num>>,
    interpretation: Vec<Vec<Num>>,
    meanings: Vec<RawMeaning>,
    messages: Vec<RawMessage>,
}

fn location(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn matrix(rows: Vec<Vec<Num>>, what: &str) -> Result<Matrix> {
    Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|n| n.0).collect()).collect())
        .ok_or_else(|| Error::Dimension(format!("{what} rows have different lengths")))
}

/// Parses a model without checking stochasticity or cost order, so that
/// callers can report every problem at once.
pub fn parse_unchecked(text: &str) -> Result<Model> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| location(text, s.start));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let m = raw.messages.len();
    let n = raw.meanings.len();
    let channel = match raw.channel {
        None => SemanticChannel::error_free(m),
        Some(Table::Keyword(k)) if k == "error-free" => SemanticChannel::error_free(m),
        Some(Table::Keyword(k)) => {
            return Err(Error::Domain(format!("unknown channel keyword {k:?}")));
        }
        Some(Table::Rows(rows)) => SemanticChannel::new(matrix(rows, "channel")?)?,
    };
    let distortion = match raw.distortion {
        None => DistortionMeasure::hamming(n),
        Some(Table::Keyword(k)) if k == "hamming" => DistortionMeasure::hamming(n),
        Some(Table::Keyword(k)) => {
            return Err(Error::Domain(format!("unknown distortion keyword {k:?}")));
        }
        Some(Table::Rows(rows)) => DistortionMeasure::new(matrix(rows, "distortion")?)?,
    };
    let tx: Vec<Rational> = raw.meanings.iter().map(|w| w.p.0.clone()).collect();
    let rx: Vec<Rational> = raw
        .meanings
        .iter()
        .map(|w| w.q.as_ref().unwrap_or(&w.p).0.clone())
        .collect();
    let language = SemanticLanguage::new(
        raw.meanings.into_iter().map(|w| w.label).collect(),
        raw.messages.iter().map(|s| s.label.clone()).collect(),
        matrix(raw.expression, "expression")?,
        matrix(raw.interpretation, "interpretation")?,
        tx,
        rx,
    )?;
    let cost = CostFunction::new(raw.messages.into_iter().map(|s| s.cost.0).collect());
    Model::unchecked(language, channel, distortion, cost)
}

/// Parses and fully validates a model.
pub fn parse_model(text: &str) -> Result<Model> {
    let model = parse_unchecked(text)?;
    let report = model.validate();
    if report.is_valid() {
        Ok(model)
    } else {
        Err(Error::Invalid(report.messages()))
    }
}

pub fn read_model(path: impl AsRef<Path>) -> Result<Model> {
    parse_model(&std::fs::read_to_string(path)?)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn write_rows(out: &mut String, key: &str, m: &Matrix) {
    let _ = writeln!(out, "{key} = [");
    for row in m.iter_rows() {
        let cells: Vec<String> = row.iter().map(|v| quote(&format_rational(v))).collect();
        let _ = writeln!(out, "  [{}],", cells.join(", "));
    }
    out.push_str("]\n");
}

/// Canonical text form of a model; parsing it yields the same model.
pub fn to_spec_string(model: &Model) -> String {
    let lang = model.language();
    let mut out = String::new();
    if model.channel().is_error_free() {
        out.push_str("channel = \"error-free\"\n");
    } else {
        write_rows(&mut out, "channel", model.channel().kernel());
    }
    if model.distortion().is_hamming() {
        out.push_str("distortion = \"hamming\"\n");
    } else {
        write_rows(&mut out, "distortion", model.distortion().matrix());
    }
    write_rows(&mut out, "expression", lang.expression());
    write_rows(&mut out, "interpretation", lang.interpretation());
    for (w, label) in lang.meanings().iter().enumerate() {
        let _ = write!(
            out,
            "\n[[meanings]]\nlabel = {}\np = {}\n",
            quote(label),
            quote(&format_rational(&lang.tx_prior()[w]))
        );
        if lang.rx_prior()[w] != lang.tx_prior()[w] {
            let _ = writeln!(out, "q = {}", quote(&format_rational(&lang.rx_prior()[w])));
        }
    }
    for (s, label) in lang.messages().iter().enumerate() {
        let _ = write!(
            out,
            "\n[[messages]]\nlabel = {}\ncost = {}\n",
            quote(label),
            quote(&format_rational(model.cost().cost(s)))
        );
    }
    out
}

pub fn write_model(model: &Model, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_spec_string(model))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
distortion = "hamming"
expression = [["1/2", "1/2"], [0, 1]]
interpretation = [["1", "0"], ["1/3", "2/3"]]

[[meanings]]
label = "a"
p = "1/4"
q = "1/2"

[[meanings]]
label = "b"
p = "3/4"
q = "1/2"

[[messages]]
label = "x"
cost = 0

[[messages]]
label = "y"
cost = "5/2"
"#;

    #[test]
    fn parses_and_round_trips() {
        let model = parse_model(SMALL).unwrap();
        assert_eq!(model.language().rx_prior()[1], crate::rational::ratio(1, 2));
        assert!(model.channel().is_error_free());
        let text = to_spec_string(&model);
        let again = parse_model(&text).unwrap();
        assert_eq!(model, again);
        assert_eq!(text, to_spec_string(&again));
    }

    #[test]
    fn zero_denominator_is_located() {
        let bad = SMALL.replace("\"5/2\"", "\"1/0\"");
        match parse_model(&bad) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!(line, 22);
                assert!(column > 1);
                assert!(message.contains("1/0"), "{message}");
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn decimals_are_rejected() {
        let bad = SMALL.replace("cost = 0", "cost = 0.5");
        assert!(matches!(parse_model(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn validation_failures_are_forwarded() {
        let bad = SMALL.replace("[0, 1]]", "[0, \"9/10\"]]");
        assert!(matches!(parse_model(&bad), Err(Error::Invalid(_))));
    }
}
