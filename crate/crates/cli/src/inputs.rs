use std::collections::BTreeMap;
use std::fmt::Write;
use std::fs;

use bicx_core::bicomplex::{dual, from_text, validate, BicomplexError, DoubleComplex, Morphism};
use bicx_core::exactlin::{ExactScalar, Matrix};
use bicx_core::models::{build_model, parse_model_file, preset, ModelError};

use crate::CliError;

/// A complex named on the command line, with the complex dimension used
/// for duals and blow-up sanity checks.
pub struct Resolved {
    pub complex: DoubleComplex,
    pub dimension: i32,
}

const COMPLEX_DIRECTIVES: [&str; 7] = ["window", "dim", "real_structure", "d1", "d2", "sigma", "label"];

fn looks_like_complex(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
        .is_some_and(|w| COMPLEX_DIRECTIVES.contains(&w))
}

fn model_error(source: &str, e: ModelError) -> CliError {
    match e {
        ModelError::NotADifferential(_) | ModelError::NonIntegrable(_) => CliError::Invariant(format!("{source}: {e}")),
        _ => CliError::Input(format!("{source}: {e}")),
    }
}

/// A preset name, a `dual:<ref>`, a model file or a serialized complex.
pub fn resolve(reference: &str) -> Result<Resolved, CliError> {
    if let Some(inner) = reference.strip_prefix("dual:") {
        let r = resolve(inner)?;
        return Ok(Resolved {
            complex: dual(&r.complex, r.dimension),
            dimension: r.dimension,
        });
    }
    if let Some(m) = preset(reference) {
        return Ok(Resolved {
            dimension: m.top().0,
            complex: m.into_complex(),
        });
    }
    let text = fs::read_to_string(reference)
        .map_err(|e| CliError::Input(format!("'{reference}' is neither a preset nor a readable file: {e}")))?;
    if looks_like_complex(&text) {
        let complex = from_text(&text).map_err(|e| CliError::Input(format!("{reference}: {e}")))?;
        let violations = validate(&complex);
        if let Some(v) = violations.first() {
            return Err(CliError::Invariant(format!("{reference}: {v}")));
        }
        let w = complex.window();
        return Ok(Resolved {
            dimension: if w.is_empty() { 0 } else { w.p_max.max(w.q_max) },
            complex,
        });
    }
    let spec = parse_model_file(&text).map_err(|e| model_error(reference, e))?;
    let model = build_model(&spec).map_err(|e| model_error(reference, e))?;
    Ok(Resolved {
        dimension: model.top().0,
        complex: model.into_complex(),
    })
}

/// Parses a morphism file:
///
/// ```text
/// source torus1
/// target dual:torus1
/// entry 0 0 0 0 1
/// ```
pub fn read_morphism(path: &str) -> Result<Morphism, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read '{path}': {e}")))?;
    parse_morphism(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{path}: {m}")),
        CliError::Invariant(m) => CliError::Invariant(format!("{path}: {m}")),
    })
}

pub fn parse_morphism(text: &str) -> Result<Morphism, CliError> {
    let mut source = None;
    let mut target = None;
    let mut entries: Vec<(usize, (i32, i32), usize, usize, ExactScalar)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let bad = |what: &str| CliError::Input(format!("line {line}: {what}"));
        let mut toks = content.split_whitespace();
        match toks.next() {
            Some("source") => source = Some(resolve(toks.next().ok_or_else(|| bad("missing source"))?)?),
            Some("target") => target = Some(resolve(toks.next().ok_or_else(|| bad("missing target"))?)?),
            Some("entry") => {
                let mut num = |what: &str| -> Result<i64, CliError> {
                    toks.next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| bad(&format!("expected integer {what}")))
                };
                let p = num("p")? as i32;
                let q = num("q")? as i32;
                let r = num("row")?;
                let c = num("column")?;
                if r < 0 || c < 0 {
                    return Err(bad("negative index"));
                }
                let rest = toks.collect::<Vec<_>>().join(" ");
                let v: ExactScalar = rest.parse().map_err(|e| bad(&format!("{e}")))?;
                entries.push((line, (p, q), r as usize, c as usize, v));
            }
            Some(other) => return Err(bad(&format!("unknown directive '{other}'"))),
            None => {}
        }
    }
    let source = source.ok_or_else(|| CliError::Input("missing 'source' line".into()))?.complex;
    let target = target.ok_or_else(|| CliError::Input("missing 'target' line".into()))?.complex;
    let mut blocks: BTreeMap<(i32, i32), Matrix> = BTreeMap::new();
    for (line, b, r, c, v) in entries {
        let (rows, cols) = (target.dim(b), source.dim(b));
        if r >= rows || c >= cols {
            return Err(CliError::Input(format!(
                "line {line}: entry ({r}, {c}) outside the {rows}x{cols} block at {b:?}"
            )));
        }
        blocks.entry(b).or_insert_with(|| Matrix::zeros(rows, cols)).set(r, c, v);
    }
    Morphism::new(source, target, blocks).map_err(|e| match e {
        BicomplexError::NotAMorphism { .. } => CliError::Invariant(e.to_string()),
        _ => CliError::Input(e.to_string()),
    })
}

/// Serializes `f` in the morphism-file format, naming its ends by reference.
pub fn morphism_to_text(source: &str, target: &str, f: &Morphism) -> String {
    let mut out = format!("source {source}\ntarget {target}\n");
    for ((p, q), m) in f.blocks() {
        for (r, c, v) in m.iter() {
            writeln!(out, "entry {p} {q} {r} {c} {v}").unwrap();
        }
    }
    out
}
