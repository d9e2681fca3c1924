use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};
use smi_core::arrow::{StTerm, Term};
use smi_core::bar::{bar_eval, lax_check, nm_violation, omega, Shape, TupleObject};
use smi_core::decide::{canonical_arrow, compare_arrows, Canonical, Equality};
use smi_core::parse::{
    parse_form, parse_formula, parse_partial, parse_product, parse_simplex, parse_strict,
    parse_term,
};
use smi_core::random;
use smi_core::sai::{canonical_sai_arrow, reachability_oracle};
use smi_core::simplicial::{render_partial, render_simplex};
use smi_core::syntax::{Notation, Purity, StrictObject};
use smi_core::unit::unit_reduce;
use smi_core::Result;

use crate::render::{cell_labels, tuple, tuple_json, violation_json};
use crate::{BarCommand, Command, Global, OracleCommand, ShapeArgs, SimpCommand};

/// What a command prints. `negative` marks NONE, UNDECIDED, UNKNOWN and
/// failed checks, which turn into exit status 1 under `--strict`.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub negative: bool,
}

impl Output {
    fn plain(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            negative: false,
        }
    }
}

pub fn run(cmd: &Command, g: &Global) -> Result<Output> {
    let nt = if g.unicode {
        Notation::Unicode
    } else {
        Notation::Ascii
    };
    match cmd {
        Command::Nu { formula } => {
            let f = parse_formula(formula)?;
            let nu = f.nu().render(nt);
            Ok(Output::plain(
                nu.clone(),
                json!({ "input": f.render(nt), "nu": nu }),
            ))
        }
        Command::Purity { formula } => {
            let f = parse_formula(formula)?;
            let p = f.purity();
            let text = format!(
                "bot_pure={} top_pure={} pure={} diversified={}",
                p.bot_pure,
                p.top_pure,
                p.pure(),
                f.is_diversified()
            );
            Ok(Output::plain(
                text,
                json!({
                    "bot_pure": p.bot_pure,
                    "top_pure": p.top_pure,
                    "pure": p.pure(),
                    "diversified": f.is_diversified(),
                }),
            ))
        }
        Command::CanonSai { source, target } => {
            let (x, y) = (parse_form(source)?, parse_form(target)?);
            Ok(match canonical_sai_arrow(&x, &y)? {
                Some(t) => Output::plain(
                    t.render(nt),
                    json!({ "result": "some", "term": t.render(nt), "ck_count": t.ck_count() }),
                ),
                None => Output {
                    text: "NONE".into(),
                    json: json!({ "result": "none", "term": null, "ck_count": null }),
                    negative: true,
                },
            })
        }
        Command::CanonArrow { source, target } => {
            let (a, b) = (parse_strict(source)?, parse_strict(target)?);
            Ok(match canonical_arrow(&a, &b)? {
                Canonical::Some(t) => Output::plain(
                    t.render(nt),
                    json!({ "result": "some", "term": t.render(nt), "ck_count": t.ck_count() }),
                ),
                Canonical::None => Output {
                    text: "NONE".into(),
                    json: json!({ "result": "none", "term": null, "ck_count": null }),
                    negative: true,
                },
                Canonical::Undecided => Output {
                    text: "UNDECIDED".into(),
                    json: json!({ "result": "undecided", "term": null, "ck_count": null }),
                    negative: true,
                },
            })
        }
        Command::Equal {
            left,
            right,
            explain,
        } => equal(left, right, *explain, nt),
        Command::Develop { term } => {
            let t = parse_term(term)?;
            let factors = t.develop()?;
            let rendered: Vec<String> = factors.iter().map(|f| f.render(nt)).collect();
            Ok(Output::plain(
                rendered.join("\n"),
                json!({ "factors": rendered }),
            ))
        }
        Command::CkCount { term } => {
            let t = parse_term(term)?;
            t.typecheck()?;
            let k = t.ck_count();
            Ok(Output::plain(k.to_string(), json!({ "ck_count": k })))
        }
        Command::UnitReduce { term } => {
            let t = parse_term(term)?.strictify();
            let r = unit_reduce(&t)?;
            let ty = r.typecheck()?;
            let text = format!(
                "{}\n{} -> {}",
                r.render(nt),
                ty.source.render(nt),
                ty.target.render(nt)
            );
            Ok(Output::plain(
                text,
                json!({
                    "term": r.render(nt),
                    "source": ty.source.render(nt),
                    "target": ty.target.render(nt),
                    "ck_count": r.ck_count(),
                }),
            ))
        }
        Command::Simp(s) => simp(s),
        Command::Bar(b) => bar(b, nt),
        Command::Oracle(OracleCommand::Reach {
            source,
            target,
            limit,
        }) => {
            let (x, y) = (parse_form(source)?, parse_form(target)?);
            let r = reachability_oracle(&x, &y, *limit)?;
            let lengths: Vec<usize> = r.path_lengths.iter().copied().collect();
            let text = if r.exists {
                let ls: Vec<String> = lengths.iter().map(|l| l.to_string()).collect();
                format!(
                    "REACHABLE path lengths {{{}}} explored {}",
                    ls.join(", "),
                    r.explored
                )
            } else {
                format!("UNREACHABLE explored {}", r.explored)
            };
            Ok(Output {
                text,
                json: json!({ "exists": r.exists, "path_lengths": lengths, "explored": r.explored }),
                negative: !r.exists,
            })
        }
        Command::Sweep { count } => sweep(*count, g.seed),
    }
}

fn purity_json(p: Purity) -> Value {
    json!({ "bot_pure": p.bot_pure, "top_pure": p.top_pure })
}

fn equal(left: &str, right: &str, explain: bool, nt: Notation) -> Result<Output> {
    let f: StTerm = parse_term(left)?.strictify();
    let g: StTerm = parse_term(right)?.strictify();
    let r = compare_arrows(&f, &g)?;
    let verdict = match r.verdict {
        Equality::EqualByCoherence => "EQUAL",
        Equality::NotParallel => "NOT-PARALLEL",
        Equality::Unknown => "UNKNOWN",
    };
    let mut text = verdict.to_string();
    if explain {
        let obj = |x: &StrictObject| x.render(nt);
        text.push_str(&format!(
            "\nleft:  {} -> {}\nright: {} -> {}\nletterless: {}\npurity: source bot_pure={} top_pure={}, target bot_pure={} top_pure={}\ndiversified: {}",
            obj(&r.sources.0),
            obj(&r.targets.0),
            obj(&r.sources.1),
            obj(&r.targets.1),
            r.letterless,
            r.purity.0.bot_pure,
            r.purity.0.top_pure,
            r.purity.1.bot_pure,
            r.purity.1.top_pure,
            r.diversified,
        ));
    }
    Ok(Output {
        text,
        json: json!({
            "result": verdict,
            "left": { "source": r.sources.0.render(nt), "target": r.targets.0.render(nt) },
            "right": { "source": r.sources.1.render(nt), "target": r.targets.1.render(nt) },
            "letterless": r.letterless,
            "purity": { "source": purity_json(r.purity.0), "target": purity_json(r.purity.1) },
            "diversified": r.diversified,
        }),
        negative: r.verdict == Equality::Unknown,
    })
}

fn simp(cmd: &SimpCommand) -> Result<Output> {
    match cmd {
        SimpCommand::Compose { f, g } => {
            let h = parse_simplex(f)?.compose(&parse_simplex(g)?)?;
            Ok(Output::plain(
                h.to_string(),
                json!({ "map": h.to_string() }),
            ))
        }
        SimpCommand::Hj { f } => {
            let h = parse_simplex(f)?.hj();
            Ok(Output::plain(
                h.to_string(),
                json!({ "map": h.to_string() }),
            ))
        }
        SimpCommand::Render { f } => {
            let (canonical, diagram) = match parse_simplex(f) {
                Ok(m) => (m.to_string(), render_simplex(&m)),
                Err(simplex_err) => match parse_partial(f) {
                    Ok(p) => (p.to_string(), render_partial(&p)),
                    Err(_) => return Err(simplex_err),
                },
            };
            Ok(Output::plain(
                diagram.clone(),
                json!({ "map": canonical, "diagram": diagram }),
            ))
        }
    }
}

fn letters(s: &ShapeArgs) -> Result<TupleObject> {
    Ok(TupleObject::fresh(Shape::new(s.n, s.m, s.shape.clone())?))
}

fn bar(cmd: &BarCommand, nt: Notation) -> Result<Output> {
    match cmd {
        BarCommand::Eval { shape, maps } => {
            let p = letters(shape)?;
            let f = parse_product(maps)?;
            let t = bar_eval(&f, &p)?;
            let v = nm_violation(&t);
            let mut text = format!("{} -> {}\n{}", tuple(&p, nt), tuple(&t, nt), t.shape);
            if let Some(v) = &v {
                text.push_str(&format!("\nnot coherent: {v}"));
            }
            Ok(Output::plain(
                text,
                json!({
                    "source": tuple_json(&p, nt),
                    "target": tuple_json(&t, nt),
                    "sizes": t.shape.sizes,
                    "coherent": v.is_none(),
                    "violation": violation_json(&v),
                }),
            ))
        }
        BarCommand::Omega { shape, f, g } => {
            let p = letters(shape)?;
            let (f, g) = (parse_product(f)?, parse_product(g)?);
            let w = omega(&f, &g, &p)?;
            let rendered: Vec<String> = w.cells.iter().map(|c| c.render(nt)).collect();
            let text = cell_labels(&w.source)
                .iter()
                .zip(&rendered)
                .map(|(l, c)| format!("{l} {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::plain(
                text,
                json!({
                    "source": tuple_json(&w.source, nt),
                    "target": tuple_json(&w.target, nt),
                    "witness": rendered,
                }),
            ))
        }
        BarCommand::Laxcheck { shape, f, g, h } => {
            let p = letters(shape)?;
            let (f, g, h) = (parse_product(f)?, parse_product(g)?, parse_product(h)?);
            let r = lax_check(&f, &g, &h, &p)?;
            let mut lines = Vec::new();
            for (name, t, v) in &r.intermediates {
                let status = match v {
                    None => "coherent".to_string(),
                    Some(v) => format!("not coherent: {v}"),
                };
                lines.push(format!("{name:<8} {} {status}", tuple(t, nt)));
            }
            let labels = r
                .intermediates
                .last()
                .map(|(_, t, _)| cell_labels(t))
                .unwrap_or_default();
            for (label, c) in labels.iter().zip(&r.cells) {
                lines.push(format!(
                    "{label} {:?}\n  left  {}\n  right {}",
                    c.verdict,
                    c.left.render(nt),
                    c.right.render(nt)
                ));
            }
            lines.push(if r.commutes { "COMMUTES" } else { "FAILS" }.to_string());
            let cells: Vec<Value> = r
                .cells
                .iter()
                .map(|c| {
                    json!({
                        "left": term_spine(&c.left, nt),
                        "right": term_spine(&c.right, nt),
                        "verdict": format!("{:?}", c.verdict),
                    })
                })
                .collect();
            let intermediates: Vec<Value> = r
                .intermediates
                .iter()
                .map(|(name, t, v)| {
                    json!({
                        "name": name,
                        "tuple": tuple_json(t, nt),
                        "violation": violation_json(v),
                    })
                })
                .collect();
            Ok(Output {
                text: lines.join("\n"),
                json: json!({
                    "commutes": r.commutes,
                    "intermediates": intermediates,
                    "cells": cells,
                }),
                negative: !r.commutes,
            })
        }
    }
}

/// A composite as the array of its factors, first applied first.
fn term_spine(t: &StTerm, nt: Notation) -> Value {
    let factors: Vec<String> = match t {
        Term::Id(_) => vec![t.render(nt)],
        _ => t.spine().iter().map(|f| f.render(nt)).collect(),
    };
    Value::from(factors)
}

fn sweep(count: usize, seed: u64) -> Result<Output> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cells = 0;
    let mut failures = Vec::new();
    for k in 0..count {
        let shape = random::shape(&mut rng, 4, 16);
        let pick = if k % 2 == 0 {
            random::product_map
        } else {
            random::single_coordinate_map
        };
        let f = pick(&mut rng, &shape.sizes, 3, 16);
        let g = pick(&mut rng, &f.targets(), 3, 16);
        let h = pick(&mut rng, &g.targets(), 3, 16);
        let r = lax_check(&f, &g, &h, &TupleObject::fresh(shape.clone()))?;
        cells += r.cells.len();
        if !r.commutes {
            failures.push(format!(
                "--n {} --m {} --shape {} '{f}' '{g}' '{h}'",
                shape.n,
                shape.m,
                shape
                    .sizes
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
    }
    let mut text = format!(
        "{count} triples, {cells} cells, {} failures (seed {seed})",
        failures.len()
    );
    for f in &failures {
        text.push_str(&format!("\nfailing: bar laxcheck {f}"));
    }
    Ok(Output {
        text,
        json: json!({
            "seed": seed,
            "triples": count,
            "cells": cells,
            "failures": failures,
        }),
        negative: !failures.is_empty(),
    })
}
