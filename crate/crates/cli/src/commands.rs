use std::fmt::Write;
use std::path::Path;

use semcom::csed::{check_theorem4, compare_strategies, csed_region, ChainSide};
use semcom::decoding::{
    decoder_distortion, decoding_gap, decoding_region, hamming_optimality_check, interpretation_distortion,
    map_decoder, refine_interpretation, Refinement,
};
use semcom::encoding::{build_frontier, critical_points, TieBreak};
use semcom::hull::{lower_envelope, upper_envelope, Point};
use semcom::io::{
    csed_rows, decoder_label, decoding_rows, encoder_label, export_region_csv, frontier_rows, generate_gridworld,
    nodshake, parse_unchecked, to_spec_string, GridWorldParams,
};
use semcom::oracle::{
    enumerate_decoders, enumerate_encoding_points, global_optimum, simulate, EnumerationBudget, SimulationConfig,
};
use semcom::{is_self_consistent, Error, Model, Prior};

use crate::render::{table, value, yes_no};
use crate::{schemes, Command, ExampleName, OracleTarget, PriorArg, Property, RegionKind};

pub struct Output {
    pub text: String,
    /// False when a check or validation did not pass.
    pub passed: bool,
}

pub enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

type Outcome = Result<Output, Failure>;

fn ok(text: String) -> Outcome {
    Ok(Output { text, passed: true })
}

fn load(path: &Path) -> Result<Model, Error> {
    let text = std::fs::read_to_string(path)?;
    let model = parse_unchecked(&text)?;
    let report = model.validate();
    if report.is_valid() {
        Ok(model)
    } else {
        Err(Error::Invalid(report.messages()))
    }
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { spec } => validate(&spec),
        Command::Region {
            kind,
            spec,
            tie_break,
            csv,
        } => region(kind, &load(&spec)?, tie_break, csv.as_deref()),
        Command::Decode { spec, prior, refine } => decode(&load(&spec)?, prior, refine),
        Command::Check { property, spec } => check(property, &load(&spec)?),
        Command::Compare { spec, tie_break } => compare(&load(&spec)?, tie_break),
        Command::Oracle { target, spec, budget } => oracle(target, &load(&spec)?, budget),
        Command::Simulate {
            spec,
            scheme,
            trials,
            seed,
            tie_break,
        } => simulate_cmd(&load(&spec)?, &scheme, trials, seed, tie_break),
        Command::Example { name, out } => example(name, out.as_deref()),
    }
}

fn validate(path: &Path) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    let model = parse_unchecked(&text)?;
    let report = model.validate();
    let mut out = String::new();
    if report.is_valid() {
        writeln!(
            out,
            "valid: {} meanings, {} messages",
            model.num_meanings(),
            model.num_messages()
        )
        .unwrap();
        return ok(out);
    }
    writeln!(out, "invalid:").unwrap();
    for msg in report.messages() {
        writeln!(out, "  {msg}").unwrap();
    }
    Ok(Output { text: out, passed: false })
}

fn point_cells(p: &Point) -> [String; 2] {
    [value(&p.cost), value(&p.distortion)]
}

fn region(kind: RegionKind, model: &Model, tie_break: TieBreak, csv: Option<&Path>) -> Outcome {
    let mut out = String::new();
    let rows = match kind {
        RegionKind::Enc => {
            let frontier = build_frontier(model, tie_break);
            for (name, chain) in [("lower", &frontier.lower), ("upper", &frontier.upper)] {
                writeln!(out, "{name} chain").unwrap();
                let rows: Vec<Vec<String>> = chain
                    .iter()
                    .enumerate()
                    .map(|(t, v)| {
                        let step = match &v.step {
                            Some(s) => format!(
                                "{} -> {}",
                                model.language().meanings()[s.meaning],
                                model.language().messages()[s.message]
                            ),
                            None => "start".into(),
                        };
                        let [l, d] = point_cells(&v.point);
                        vec![t.to_string(), encoder_label(model, &v.indices), l, d, step]
                    })
                    .collect();
                out.push_str(&table(&["t", "scheme", "L", "D", "step"], &rows));
            }
            let cp = critical_points(&frontier);
            writeln!(out, "critical points").unwrap();
            let rows: Vec<Vec<String>> = cp
                .lower
                .iter()
                .zip(["P1", "P2", "P3", "P4"])
                .chain(cp.upper.iter().zip(["P5", "P6", "P7", "P8"]))
                .map(|(c, name)| {
                    let [l, d] = point_cells(&c.point);
                    vec![name.to_string(), encoder_label(model, &c.indices), l, d]
                })
                .collect();
            out.push_str(&table(&["", "scheme", "L", "D"], &rows));
            frontier_rows(model, &frontier)
        }
        RegionKind::Dec => {
            let r = decoding_region(model);
            writeln!(out, "L_P   {}", value(&r.cost)).unwrap();
            let best = r.best.indices().expect("deterministic");
            let worst = r.worst.indices().expect("deterministic");
            writeln!(out, "D_lo  {}  {}", value(&r.min_distortion), decoder_label(model, best)).unwrap();
            writeln!(out, "D_hi  {}  {}", value(&r.max_distortion), decoder_label(model, worst)).unwrap();
            writeln!(out, "D_PQ  {}", value(&interpretation_distortion(model))).unwrap();
            decoding_rows(model, &r)
        }
        RegionKind::Csed => {
            let c = csed_region(model, tie_break);
            let decoder = c.decoder.indices().expect("deterministic");
            writeln!(out, "decoder {}", decoder_label(model, decoder)).unwrap();
            let rows: Vec<Vec<String>> = c
                .points
                .iter()
                .map(|p| {
                    let side = match p.side {
                        ChainSide::Lower => "lower",
                        ChainSide::Upper => "upper",
                    };
                    let [l, d] = point_cells(&p.point);
                    vec![format!("{side} {}", p.step), encoder_label(model, &p.indices), l, d]
                })
                .collect();
            out.push_str(&table(&["t", "scheme", "L", "D"], &rows));
            for (name, chain) in [("lower hull", &c.hull.lower), ("upper hull", &c.hull.upper)] {
                writeln!(out, "{name}").unwrap();
                let rows: Vec<Vec<String>> = chain.iter().map(|p| point_cells(p).to_vec()).collect();
                out.push_str(&table(&["L", "D"], &rows));
            }
            csed_rows(model, &c)
        }
    };
    if let Some(path) = csv {
        export_region_csv(&rows, path)?;
        writeln!(out, "wrote {} rows to {}", rows.len(), path.display()).unwrap();
    }
    ok(out)
}

fn decode(model: &Model, prior: PriorArg, refine: bool) -> Outcome {
    let prior = match prior {
        PriorArg::Tx => Prior::Tx,
        PriorArg::Rx => Prior::Rx,
    };
    let v = map_decoder(model, prior);
    let lang = model.language();
    let mut out = String::new();
    let rows: Vec<Vec<String>> = v
        .indices()
        .expect("deterministic")
        .iter()
        .enumerate()
        .map(|(s, &w)| vec![lang.messages()[s].clone(), lang.meanings()[w].clone()])
        .collect();
    out.push_str(&table(&["message", "meaning"], &rows));
    writeln!(out, "D_PV  {}", value(&decoder_distortion(model, &v)?)).unwrap();
    writeln!(out, "D_PQ  {}", value(&interpretation_distortion(model))).unwrap();
    if model.distortion().is_hamming() {
        writeln!(out, "gap   {}", value(&decoding_gap(model)?)).unwrap();
    }
    if refine {
        let r = refine_interpretation(model);
        writeln!(out, "refined interpretation").unwrap();
        let rows: Vec<Vec<String>> = r
            .actions
            .iter()
            .enumerate()
            .map(|(s, a)| {
                let action = match a {
                    Refinement::Unchanged => "unchanged".to_string(),
                    Refinement::Removed(w) => format!("removed {}", lang.meanings()[*w]),
                    Refinement::Collapsed(w) => format!("collapsed to {}", lang.meanings()[*w]),
                };
                let row: Vec<String> = r.decoder.matrix().row(s).iter().map(semcom::rational::format_rational).collect();
                vec![lang.messages()[s].clone(), row.join(" "), action]
            })
            .collect();
        out.push_str(&table(&["message", "v(.|s)", "action"], &rows));
        writeln!(out, "D_PV  {}", value(&decoder_distortion(model, &r.decoder)?)).unwrap();
    }
    ok(out)
}

fn check(property: Property, model: &Model) -> Outcome {
    let lang = model.language();
    let mut out = String::new();
    let passed = match property {
        Property::SelfConsistency => {
            let r = is_self_consistent(lang);
            writeln!(out, "self-consistent: {}", yes_no(r.consistent)).unwrap();
            if let Some((w, s, bayes, stored)) = &r.counterexample {
                writeln!(
                    out,
                    "  q({}|{}) = {} but the Bayes posterior is {}",
                    lang.meanings()[*w],
                    lang.messages()[*s],
                    value(stored),
                    value(bayes)
                )
                .unwrap();
            }
            if !r.vacuous.is_empty() {
                let names: Vec<&str> = r.vacuous.iter().map(|&s| lang.messages()[s].as_str()).collect();
                writeln!(out, "  never sent: {}", names.join(", ")).unwrap();
            }
            r.consistent
        }
        Property::HammingOpt => {
            let r = hamming_optimality_check(model)?;
            writeln!(out, "receiver MAP decoding is optimal: {}", yes_no(r.optimal)).unwrap();
            let label = |ws: &[usize]| {
                ws.iter().map(|&w| lang.meanings()[w].as_str()).collect::<Vec<_>>().join(",")
            };
            for v in &r.violations {
                writeln!(
                    out,
                    "  {}: receiver argmax {{{}}} not within {{{}}}",
                    lang.messages()[v.message],
                    label(&v.rx_argmax),
                    label(&v.tx_argmax)
                )
                .unwrap();
            }
            r.optimal
        }
        Property::Theorem4 => {
            let r = check_theorem4(model, &build_frontier(model, TieBreak::Lexicographic));
            for (name, b) in [
                ("error-free channel", r.error_free),
                ("symmetric distortion", r.symmetric_distortion),
                ("1. p(w) = q(w)", r.priors_match),
                ("2. self-consistent", r.self_consistent),
                ("3. disjoint argmin_s phi", r.disjoint_encoding_argmins),
                ("4. disjoint argmin_w psi_q", r.disjoint_decoding_argmins),
            ] {
                writeln!(out, "  {name:<28} {}", yes_no(b)).unwrap();
            }
            writeln!(out, "all conditions hold: {}", yes_no(r.verdict)).unwrap();
            r.verdict
        }
    };
    Ok(Output { text: out, passed })
}

fn compare(model: &Model, tie_break: TieBreak) -> Outcome {
    let r = compare_strategies(model, tie_break);
    let mut out = String::new();
    writeln!(out, "language (P, Q)          D = {}", value(&r.baseline)).unwrap();
    writeln!(out, "encoding only            D = {}  at L = {}", value(&r.encoding_min()), value(&r.encoding_optimal.cost)).unwrap();
    writeln!(out, "decoding only            D = {}  at L = {}", value(&r.decoding_min()), value(&r.decoding.cost)).unwrap();
    writeln!(out, "decoding, receiver prior D = {}", value(&r.decoding_rx)).unwrap();
    writeln!(
        out,
        "CSED                     D = {}  at L = {}",
        value(&r.csed_encoding_optimal.distortion),
        value(&r.csed_encoding_optimal.cost)
    )
    .unwrap();
    writeln!(out, "CSED hull minimum        D = {}", value(&r.csed_min())).unwrap();
    if let Some(d) = &r.csed_at_expression_cost {
        writeln!(out, "CSED at L_P              D = {}", value(d)).unwrap();
    }
    writeln!(out, "at encoding vertices").unwrap();
    let rows: Vec<Vec<String>> = r
        .at_encoding_vertices
        .iter()
        .map(|c| {
            let verdict = match c.verdict {
                Some(std::cmp::Ordering::Less) => "CSED better",
                Some(std::cmp::Ordering::Equal) => "tie",
                Some(std::cmp::Ordering::Greater) => "encoding better",
                None => "-",
            };
            vec![
                value(&c.cost),
                value(&c.encoding),
                c.csed.as_ref().map(value).unwrap_or_else(|| "-".into()),
                verdict.into(),
            ]
        })
        .collect();
    out.push_str(&table(&["L", "encoding", "CSED", ""], &rows));
    ok(out)
}

fn oracle(target: OracleTarget, model: &Model, budget: Option<u128>) -> Outcome {
    let budget = budget.map(EnumerationBudget::uniform).unwrap_or_default();
    let mut out = String::new();
    match target {
        OracleTarget::Frontier => {
            let pts = enumerate_encoding_points(model, &budget)?;
            let lower = lower_envelope(pts.iter().map(|p| &p.point));
            let upper = upper_envelope(pts.iter().map(|p| &p.point));
            let frontier = build_frontier(model, TieBreak::Lexicographic);
            writeln!(out, "{} deterministic encoders", pts.len()).unwrap();
            for (name, env) in [("lower envelope", &lower), ("upper envelope", &upper)] {
                writeln!(out, "{name}").unwrap();
                let rows: Vec<Vec<String>> = env.iter().map(|p| point_cells(p).to_vec()).collect();
                out.push_str(&table(&["L", "D"], &rows));
            }
            let agree = frontier.lower_envelope() == lower && frontier.upper_envelope() == upper;
            writeln!(out, "greedy frontier agrees: {}", yes_no(agree)).unwrap();
            return Ok(Output { text: out, passed: agree });
        }
        OracleTarget::Decoders => {
            let all = enumerate_decoders(model, &budget)?;
            let lo = all.iter().min_by(|a, b| a.distortion.cmp(&b.distortion)).expect("nonempty");
            let hi = all.iter().max_by(|a, b| a.distortion.cmp(&b.distortion)).expect("nonempty");
            writeln!(out, "{} deterministic decoders", all.len()).unwrap();
            writeln!(out, "min D  {}  {}", value(&lo.distortion), decoder_label(model, &lo.indices)).unwrap();
            writeln!(out, "max D  {}  {}", value(&hi.distortion), decoder_label(model, &hi.indices)).unwrap();
        }
        OracleTarget::Global => {
            let g = global_optimum(model, &budget)?;
            writeln!(out, "{} deterministic decoders", g.decoders_evaluated).unwrap();
            writeln!(out, "lowest distortion over all encoder-decoder pairs").unwrap();
            let rows: Vec<Vec<String>> = g.envelope.iter().map(|p| point_cells(p).to_vec()).collect();
            out.push_str(&table(&["L", "D"], &rows));
        }
    }
    ok(out)
}

fn simulate_cmd(model: &Model, name: &str, trials: u64, seed: u64, tie_break: TieBreak) -> Outcome {
    let scheme = schemes::resolve(model, name, tie_break).map_err(Failure::Usage)?;
    let exact_l = model.average_cost(&scheme.encoder)?;
    let exact_d = model.end_to_end_distortion(&scheme.encoder, &scheme.decoder)?;
    let res = simulate(model, &SimulationConfig::new(trials, seed, scheme.encoder, scheme.decoder))?;
    let mut out = String::new();
    writeln!(out, "{trials} trials, seed {seed}").unwrap();
    let rows = vec![
        vec![
            "L".to_string(),
            value(&res.mean_cost),
            format!("{:.4}", res.se_cost),
            value(&exact_l),
        ],
        vec![
            "D".to_string(),
            value(&res.mean_distortion),
            format!("{:.4}", res.se_distortion),
            value(&exact_d),
        ],
    ];
    out.push_str(&table(&["", "estimate", "std err", "exact"], &rows));
    ok(out)
}

fn example(name: ExampleName, out_path: Option<&Path>) -> Outcome {
    let model = match name {
        ExampleName::Gridworld => generate_gridworld(&GridWorldParams::default())?,
        ExampleName::Nodshake => nodshake(),
    };
    let text = to_spec_string(&model);
    match out_path {
        Some(path) => {
            std::fs::write(path, &text).map_err(Error::from)?;
            ok(format!("wrote {}\n", path.display()))
        }
        None => ok(text),
    }
}
