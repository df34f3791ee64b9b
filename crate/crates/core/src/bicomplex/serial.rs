//! Line-oriented text format for double complexes.
//!
//! ```text
//! window 0 1 0 1
//! real_structure yes
//! dim 0 0 1
//! d1 0 0 0 0 1
//! sigma 0 0 0 0 1
//! label 0 0 0 x
//! ```
//!
//! Matrix entries are `kind p q row col scalar`; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::exactlin::{ExactScalar, Matrix};

use super::{Bidegree, ComplexBuilder, DoubleComplex, Window};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct SerialError {
    pub line: usize,
    pub msg: String,
}

pub fn to_text(a: &DoubleComplex) -> String {
    let mut out = String::new();
    let w = a.window();
    if !w.is_empty() {
        writeln!(out, "window {} {} {} {}", w.p_min, w.p_max, w.q_min, w.q_max).unwrap();
    }
    if a.has_sigma() {
        out.push_str("real_structure yes\n");
    }
    for ((p, q), n) in a.support() {
        writeln!(out, "dim {p} {q} {n}").unwrap();
    }
    let mut entries = |name: &str, b: Bidegree, m: &Matrix| {
        for (r, c, v) in m.iter() {
            writeln!(out, "{name} {} {} {r} {c} {v}", b.0, b.1).unwrap();
        }
    };
    for (b, _) in a.support() {
        entries("d1", b, &a.d1(b));
        entries("d2", b, &a.d2(b));
        if let Some(s) = a.sigma(b) {
            entries("sigma", b, &s);
        }
    }
    for (b, _) in a.support() {
        if let Some(names) = a.labels(b) {
            for (i, name) in names.iter().enumerate() {
                writeln!(out, "label {} {} {i} {name}", b.0, b.1).unwrap();
            }
        }
    }
    out
}

fn int<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, SerialError> {
    let tok = tok.ok_or_else(|| SerialError {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| SerialError {
        line,
        msg: format!("bad {what} '{tok}'"),
    })
}

pub fn from_text(text: &str) -> Result<DoubleComplex, SerialError> {
    let mut window = None;
    let mut sigma = false;
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut blocks: BTreeMap<(&str, Bidegree), Vec<(usize, usize, ExactScalar)>> = BTreeMap::new();
    let mut labels: BTreeMap<Bidegree, BTreeMap<usize, String>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap_or("");
        match head {
            "window" => {
                let v: Vec<i32> = (0..4)
                    .map(|_| int(toks.next(), line, "window bound"))
                    .collect::<Result<_, _>>()?;
                window = Some(Window::new(v[0], v[1], v[2], v[3]));
            }
            "real_structure" => match toks.next() {
                Some("yes") => sigma = true,
                Some("no") => sigma = false,
                other => {
                    return Err(SerialError {
                        line,
                        msg: format!("expected yes or no, got {other:?}"),
                    })
                }
            },
            "dim" => {
                let p = int(toks.next(), line, "p")?;
                let q = int(toks.next(), line, "q")?;
                let n = int(toks.next(), line, "dimension")?;
                dims.insert((p, q), n);
            }
            "d1" | "d2" | "sigma" => {
                let p = int(toks.next(), line, "p")?;
                let q = int(toks.next(), line, "q")?;
                let r = int(toks.next(), line, "row")?;
                let c = int(toks.next(), line, "column")?;
                let rest: String = toks.collect::<Vec<_>>().join(" ");
                let v: ExactScalar = rest.parse().map_err(|e| SerialError {
                    line,
                    msg: format!("{e}"),
                })?;
                let key = match head {
                    "d1" => "d1",
                    "d2" => "d2",
                    _ => "sigma",
                };
                blocks.entry((key, (p, q))).or_default().push((r, c, v));
            }
            "label" => {
                let p = int(toks.next(), line, "p")?;
                let q = int(toks.next(), line, "q")?;
                let idx = int(toks.next(), line, "index")?;
                let name = toks.collect::<Vec<_>>().join(" ");
                labels.entry((p, q)).or_default().insert(idx, name);
            }
            other => {
                return Err(SerialError {
                    line,
                    msg: format!("unknown directive '{other}'"),
                })
            }
        }
    }
    let window = window.unwrap_or_else(|| {
        dims.keys()
            .fold(Window::EMPTY, |w, &(p, q)| w.union(&Window::point(p, q)))
    });
    let dim = |b: Bidegree| dims.get(&b).copied().unwrap_or(0);
    let mut builder = ComplexBuilder::new(window);
    if sigma {
        builder = builder.with_sigma();
    }
    for (&b, &n) in &dims {
        builder.set_dim(b, n);
    }
    for ((kind, (p, q)), entries) in blocks {
        let target = match kind {
            "d1" => (p + 1, q),
            "d2" => (p, q + 1),
            _ => (q, p),
        };
        let mut m = Matrix::zeros(dim(target), dim((p, q)));
        for (r, c, v) in entries {
            if r >= m.rows() || c >= m.cols() {
                return Err(SerialError {
                    line: 0,
                    msg: format!("{kind} entry ({r}, {c}) at ({p}, {q}) is outside a {}x{} block", m.rows(), m.cols()),
                });
            }
            m.set(r, c, v);
        }
        match kind {
            "d1" => builder.set_d1((p, q), m),
            "d2" => builder.set_d2((p, q), m),
            _ => builder.set_sigma((p, q), m),
        }
    }
    for (b, names) in labels {
        let names: Vec<String> = names.into_values().collect();
        builder.set_labels(b, names);
    }
    builder.build().map_err(|e| SerialError {
        line: 0,
        msg: e.to_string(),
    })
}
