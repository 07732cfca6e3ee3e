use semcom::csed::csed_region_for;
use semcom::decoding::map_decoder;
use semcom::encoding::{build_frontier, TieBreak};
use semcom::{DecodingScheme, EncodingScheme, Model, Prior};

/// Encoder-decoder pair picked by name on the command line.
pub struct NamedScheme {
    pub encoder: EncodingScheme,
    pub decoder: DecodingScheme,
}

pub fn resolve(model: &Model, name: &str, tie_break: TieBreak) -> Result<NamedScheme, String> {
    let language = || EncodingScheme::new(model.language().expression().clone()).expect("validated");
    let interpretation = || DecodingScheme::new(model.language().interpretation().clone()).expect("validated");
    let (n, m) = (model.num_meanings(), model.num_messages());
    match name {
        "language" => {
            return Ok(NamedScheme {
                encoder: language(),
                decoder: interpretation(),
            })
        }
        "decoding" => {
            return Ok(NamedScheme {
                encoder: language(),
                decoder: map_decoder(model, Prior::Tx),
            })
        }
        "decoding-rx" => {
            return Ok(NamedScheme {
                encoder: language(),
                decoder: map_decoder(model, Prior::Rx),
            })
        }
        _ => {}
    }
    let (chain, step) = name
        .split_once(':')
        .ok_or_else(|| format!("unknown scheme {name:?}"))?;
    let step: usize = step
        .parse()
        .map_err(|_| format!("bad step in scheme {name:?}"))?;
    let frontier = build_frontier(model, tie_break);
    let (vertices, decoder) = match chain {
        "lower" => (&frontier.lower, interpretation()),
        "upper" => (&frontier.upper, interpretation()),
        "csed-lower" => (&frontier.lower, csed_region_for(model, &frontier).decoder),
        "csed-upper" => (&frontier.upper, csed_region_for(model, &frontier).decoder),
        _ => return Err(format!("unknown scheme {name:?}")),
    };
    let vertex = vertices
        .get(step)
        .ok_or_else(|| format!("{chain} chain has {} schemes", vertices.len()))?;
    debug_assert_eq!(vertex.indices.len(), n);
    Ok(NamedScheme {
        encoder: EncodingScheme::deterministic(vertex.indices.clone(), m),
        decoder,
    })
}
