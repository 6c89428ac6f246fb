//! Text formats: EAF v1 for effect algebras and STATE v1 for states.
//!
//! ```text
//! ea v1
//! elements 3
//! names 0 a 1
//! zero 0
//! one 1
//! sum a a = 1
//! ```
//!
//! ```text
//! state v1
//! value 0 0/1
//! value a 1/2
//! value 1 1/1
//! ```
//!
//! Both formats are line oriented. `#` starts a comment that runs to the end
//! of the line and blank lines are ignored. Sums are written in one
//! orientation; the other orientation and the `0 ⊕ x = x` rows are implied.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::EffectAlgebra;
use crate::rational::{format_rational, parse_rational, Rational, RationalParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EafError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown element `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("line {line}: negative denominator")]
    NegativeDenominator { line: usize },
    #[error("no value given for element `{0}`")]
    MissingElement(String),
}

fn parse_error(line: usize, message: impl Into<String>) -> EafError {
    EafError::Parse {
        line,
        message: message.into(),
    }
}

/// Parsed EAF document. Names are validated and every referenced name is
/// declared; the algebra axioms are not checked here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EafDocument {
    pub version: u32,
    pub names: Vec<String>,
    pub zero: String,
    pub one: String,
    pub sums: Vec<(String, String, String)>,
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn valid_name(name: &str) -> bool {
    name != "="
        && name
            .bytes()
            .all(|b| b.is_ascii_graphic() && b != b'#' && b != b'=')
}

pub fn parse_eaf(text: &str) -> Result<EafDocument, EafError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t == ["ea", "v1"] => {}
        Some((line, t)) if t[0] == "ea" => {
            return Err(parse_error(
                line,
                format!("unsupported version `{}`", t[1..].join(" ")),
            ))
        }
        _ => return Err(EafError::MissingHeader("ea")),
    }

    let mut count: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut zero: Option<String> = None;
    let mut one: Option<String> = None;
    let mut sums = Vec::new();
    let mut last_line = 0;

    for (line, tokens) in lines {
        last_line = line;
        let resolve = |name: &str, names: &Option<Vec<String>>| -> Result<String, EafError> {
            let declared = names
                .as_ref()
                .ok_or_else(|| parse_error(line, "element referenced before `names`"))?;
            if declared.iter().any(|n| n == name) {
                Ok(name.to_string())
            } else {
                Err(EafError::UnknownName {
                    line,
                    name: name.to_string(),
                })
            }
        };
        match tokens.as_slice() {
            ["elements", n] => {
                if count.is_some() {
                    return Err(parse_error(line, "duplicate `elements` line"));
                }
                let n: usize = n
                    .parse()
                    .map_err(|_| parse_error(line, format!("invalid element count `{n}`")))?;
                count = Some(n);
            }
            ["names", rest @ ..] => {
                let n = count.ok_or_else(|| parse_error(line, "`names` before `elements`"))?;
                if names.is_some() {
                    return Err(parse_error(line, "duplicate `names` line"));
                }
                if rest.len() != n {
                    return Err(parse_error(
                        line,
                        format!("expected {n} names, found {}", rest.len()),
                    ));
                }
                for (i, name) in rest.iter().enumerate() {
                    if !valid_name(name) {
                        return Err(parse_error(line, format!("invalid element name `{name}`")));
                    }
                    if rest[..i].contains(name) {
                        return Err(parse_error(
                            line,
                            format!("duplicate element name `{name}`"),
                        ));
                    }
                }
                names = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            ["zero", name] => {
                if zero.is_some() {
                    return Err(parse_error(line, "duplicate `zero` line"));
                }
                zero = Some(resolve(name, &names)?);
            }
            ["one", name] => {
                if one.is_some() {
                    return Err(parse_error(line, "duplicate `one` line"));
                }
                one = Some(resolve(name, &names)?);
            }
            ["sum", x, y, "=", z] => {
                sums.push((
                    resolve(x, &names)?,
                    resolve(y, &names)?,
                    resolve(z, &names)?,
                ));
            }
            [keyword, ..] => {
                return Err(parse_error(line, format!("unexpected `{keyword}` line")));
            }
            [] => unreachable!("blank lines are skipped"),
        }
    }

    let end = last_line + 1;
    let names = names.ok_or_else(|| parse_error(end, "missing `names` line"))?;
    let zero = zero.ok_or_else(|| parse_error(end, "missing `zero` line"))?;
    let one = one.ok_or_else(|| parse_error(end, "missing `one` line"))?;
    Ok(EafDocument {
        version: 1,
        names,
        zero,
        one,
        sums,
    })
}

/// Canonical text: names in index order, one line per defined sum with
/// `x ≤ y` by index and neither operand zero, sorted by `(x, y)`.
pub fn serialize_eaf(e: &EffectAlgebra) -> String {
    let mut out = String::new();
    out.push_str("ea v1\n");
    let _ = writeln!(out, "elements {}", e.size());
    let _ = writeln!(out, "names {}", e.names().join(" "));
    let _ = writeln!(out, "zero {}", e.name(e.zero()));
    let _ = writeln!(out, "one {}", e.name(e.one()));
    for x in e.elements().filter(|&x| x != e.zero()) {
        for y in e.elements().filter(|&y| y >= x && y != e.zero()) {
            if let Some(z) = e.partial_sum(x, y) {
                let _ = writeln!(out, "sum {} {} = {}", e.name(x), e.name(y), e.name(z));
            }
        }
    }
    out
}

/// Read a state file over `domain`. Every element of `domain` must receive
/// exactly one value.
pub fn parse_state(text: &str, domain: &EffectAlgebra) -> Result<Vec<Rational>, EafError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t == ["state", "v1"] => {}
        Some((line, t)) if t[0] == "state" => {
            return Err(parse_error(
                line,
                format!("unsupported version `{}`", t[1..].join(" ")),
            ))
        }
        _ => return Err(EafError::MissingHeader("state")),
    }
    let mut values: Vec<Option<Rational>> = vec![None; domain.size()];
    for (line, tokens) in lines {
        let ["value", name, number] = tokens.as_slice() else {
            return Err(parse_error(
                line,
                format!("unexpected `{}` line", tokens[0]),
            ));
        };
        let x = domain.find(name).ok_or_else(|| EafError::UnknownName {
            line,
            name: name.to_string(),
        })?;
        let value = parse_rational(number).map_err(|e| match e {
            RationalParseError::NegativeDenominator => EafError::NegativeDenominator { line },
            RationalParseError::ZeroDenominator => parse_error(line, "zero denominator"),
            RationalParseError::Malformed => {
                parse_error(line, format!("invalid rational `{number}`"))
            }
        })?;
        if values[x.index()].replace(value).is_some() {
            return Err(parse_error(line, format!("duplicate value for `{name}`")));
        }
    }
    values
        .into_iter()
        .zip(domain.elements())
        .map(|(v, x)| v.ok_or_else(|| EafError::MissingElement(domain.name(x).to_string())))
        .collect()
}

/// Canonical state text in element-index order with reduced `p/q` values.
pub fn serialize_state(domain: &EffectAlgebra, values: &[Rational]) -> String {
    let mut out = String::from("state v1\n");
    for (x, v) in domain.elements().zip(values) {
        let _ = writeln!(out, "value {} {}", domain.name(x), format_rational(v));
    }
    out
}

/// Drop comment-only and blank lines and trailing comments; the shape a
/// shipped fixture has once its annotations are removed.
pub fn strip_comments(text: &str) -> String {
    let mut out = String::new();
    for (_, tokens) in content_lines(text) {
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}
