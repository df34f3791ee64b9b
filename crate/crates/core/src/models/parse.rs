use std::collections::BTreeMap;
use std::fmt::Write;

use crate::exactlin::ExactScalar;

use super::{Factor, ModelError, ModelKind, ModelSpec, Term};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    names: &'a [String],
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> ModelError {
        ModelError::Syntax {
            line: self.line,
            col: self.pos + 1,
            expected: expected.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ModelError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("'{c}'")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.peek()?;
        let start = self.pos;
        if !self.chars[start].is_alphabetic() && self.chars[start] != '_' {
            return None;
        }
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// `a/b`, `a/b i` or a parenthesized scalar, followed by `*`.
    fn coefficient(&mut self) -> Result<Option<ExactScalar>, ModelError> {
        match self.peek() {
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos] != ')' {
                    self.pos += 1;
                }
                if self.pos == self.chars.len() {
                    self.pos = open;
                    return Err(self.err("')' closing the coefficient"));
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let value = text.parse::<ExactScalar>().map_err(|_| {
                    self.pos = start;
                    self.err("a Gaussian rational")
                })?;
                self.pos += 1;
                self.expect('*')?;
                Ok(Some(value))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/') {
                    self.pos += 1;
                }
                let mut text: String = self.chars[start..self.pos].iter().collect();
                if self.peek() == Some('i') {
                    self.pos += 1;
                    text.push('i');
                }
                let value = text.parse::<ExactScalar>().map_err(|_| {
                    self.pos = start;
                    self.err("a Gaussian rational")
                })?;
                if self.at_end() && value == ExactScalar::from_int(0) {
                    return Ok(Some(value));
                }
                self.expect('*')?;
                Ok(Some(value))
            }
            _ => Ok(None),
        }
    }

    fn factor(&mut self) -> Result<Factor, ModelError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident().ok_or_else(|| self.err("a generator or conj(...)"))?;
        let (name, conj) = if name == "conj" && self.peek() == Some('(') {
            self.pos += 1;
            let inner = self.ident().ok_or_else(|| self.err("a generator name"))?;
            self.expect(')')?;
            (inner, true)
        } else {
            (name, false)
        };
        let generator = self.names.iter().position(|n| *n == name).ok_or_else(|| {
            self.pos = start;
            ModelError::UnknownGenerator(name.clone())
        })?;
        Ok(Factor { generator, conj })
    }

    fn term(&mut self, negative: bool) -> Result<Option<Term>, ModelError> {
        let start = self.pos;
        let coef = self.coefficient()?;
        if let Some(c) = &coef {
            if self.at_end() && *c == ExactScalar::from_int(0) {
                return Ok(None);
            }
        }
        let mut factors = vec![self.factor()?];
        while self.eat('^') {
            factors.push(self.factor()?);
        }
        if factors.len() != 2 {
            self.pos = start;
            return Err(ModelError::NonQuadraticTerm { line: self.line });
        }
        let coef = coef.unwrap_or_else(|| ExactScalar::from_int(1)).signed(negative);
        Ok(Some(Term {
            coef,
            factors: [factors[0], factors[1]],
        }))
    }

    fn expression(&mut self) -> Result<Vec<Term>, ModelError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            if let Some(t) = self.term(negative)? {
                terms.push(t);
            }
            if self.at_end() {
                return Ok(terms);
            }
            negative = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => return Err(self.err("'+', '-' or end of line")),
            };
            self.pos += 1;
        }
    }
}

fn split_key(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once('=')?;
    Some((k.trim(), v.trim()))
}

/// Parses a model description. See [`to_text`] for the format.
pub fn parse_model_file(text: &str) -> Result<ModelSpec, ModelError> {
    let mut name = String::new();
    let mut dim: Option<i64> = None;
    let mut kind = None;
    let mut generators: Option<Vec<String>> = None;
    let mut equations: BTreeMap<usize, Vec<Term>> = BTreeMap::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let col_of = |needle: &str| content.find(needle).map(|b| content[..b].chars().count() + 1).unwrap_or(1);
        let syntax = |col: usize, expected: &str| ModelError::Syntax {
            line,
            col,
            expected: expected.to_string(),
        };
        let trimmed = content.trim_start();
        if let Some(rest) = trimmed.strip_prefix("d ").or_else(|| trimmed.strip_prefix("d\t")) {
            let names = generators.as_deref().unwrap_or(&[]);
            let (lhs, _) = rest.split_once('=').ok_or_else(|| syntax(content.chars().count() + 1, "'='"))?;
            let lhs = lhs.trim();
            let g = names
                .iter()
                .position(|n| n == lhs)
                .ok_or_else(|| ModelError::UnknownGenerator(lhs.to_string()))?;
            let eq = content.find('=').expect("checked above");
            let mut cursor = Cursor {
                chars: content.chars().collect(),
                pos: content[..=eq].chars().count(),
                line,
                names,
            };
            if cursor.at_end() {
                return Err(cursor.err("an expression"));
            }
            let terms = cursor.expression()?;
            if equations.insert(g, terms).is_some() {
                return Err(ModelError::Duplicate(format!("d {lhs}")));
            }
            continue;
        }
        let (key, value) = split_key(content).ok_or_else(|| syntax(1, "'key = value' or 'd <generator> = ...'"))?;
        let value_col = col_of("=") + 1;
        match key {
            "name" => {
                if !name.is_empty() {
                    return Err(ModelError::Duplicate("name".into()));
                }
                if value.is_empty() {
                    return Err(syntax(value_col, "a name"));
                }
                name = value.to_string();
            }
            "complex_dimension" => {
                if dim.is_some() {
                    return Err(ModelError::Duplicate("complex_dimension".into()));
                }
                dim = Some(value.parse().map_err(|_| syntax(value_col, "an integer"))?);
            }
            "kind" => {
                if kind.is_some() {
                    return Err(ModelError::Duplicate("kind".into()));
                }
                kind = Some(match value {
                    "lie_algebra" => ModelKind::LieAlgebra,
                    "truncated_polynomial" => ModelKind::TruncatedPolynomial,
                    _ => return Err(syntax(value_col, "lie_algebra or truncated_polynomial")),
                });
            }
            "generators" => {
                if generators.is_some() {
                    return Err(ModelError::Duplicate("generators".into()));
                }
                let mut names: Vec<String> = Vec::new();
                if !value.is_empty() {
                    for g in value.split(',') {
                        let g = g.trim();
                        let valid = g.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                            && g.chars().all(|c| c.is_alphanumeric() || c == '_')
                            && g != "conj";
                        if !valid {
                            return Err(syntax(value_col, "a comma-separated list of generator names"));
                        }
                        if names.iter().any(|n| n == g) {
                            return Err(ModelError::Duplicate(g.to_string()));
                        }
                        names.push(g.to_string());
                    }
                }
                generators = Some(names);
            }
            _ => return Err(syntax(1, "name, complex_dimension, kind, generators or d")),
        }
    }
    let missing = |what: &str| ModelError::Syntax {
        line: last_line + 1,
        col: 1,
        expected: what.to_string(),
    };
    let dim = dim.ok_or_else(|| missing("complex_dimension = <n>"))?;
    let kind = kind.ok_or_else(|| missing("kind = lie_algebra | truncated_polynomial"))?;
    let generators = match (kind, generators) {
        (_, Some(g)) => g,
        (ModelKind::TruncatedPolynomial, None) => Vec::new(),
        (ModelKind::LieAlgebra, None) => return Err(missing("generators = ...")),
    };
    let complex_dimension = usize::try_from(dim).map_err(|_| ModelError::InvalidDimension(dim))?;
    Ok(ModelSpec {
        name,
        complex_dimension,
        kind,
        generators,
        equations,
    })
}

fn factor_text(spec: &ModelSpec, f: &Factor) -> String {
    let n = &spec.generators[f.generator];
    if f.conj {
        format!("conj({n})")
    } else {
        n.clone()
    }
}

/// Canonical text form; `parse_model_file(&to_text(s)) == s`.
pub fn to_text(spec: &ModelSpec) -> String {
    let mut out = String::new();
    if !spec.name.is_empty() {
        writeln!(out, "name = {}", spec.name).unwrap();
    }
    writeln!(out, "complex_dimension = {}", spec.complex_dimension).unwrap();
    let kind = match spec.kind {
        ModelKind::LieAlgebra => "lie_algebra",
        ModelKind::TruncatedPolynomial => "truncated_polynomial",
    };
    writeln!(out, "kind = {kind}").unwrap();
    if spec.kind == ModelKind::LieAlgebra || !spec.generators.is_empty() {
        writeln!(out, "generators = {}", spec.generators.join(", ")).unwrap();
    }
    for (&g, terms) in &spec.equations {
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms
                .iter()
                .map(|t| {
                    format!(
                        "({}) * {} ^ {}",
                        t.coef,
                        factor_text(spec, &t.factors[0]),
                        factor_text(spec, &t.factors[1])
                    )
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        writeln!(out, "d {} = {rhs}", spec.generators[g]).unwrap();
    }
    out
}
