//! JSON element literals.
//!
//! Accepted forms:
//! - `{"lambda": [..], "u": [..]}` where `u` is a word of finite simple
//!   reflections (`"s1"`, `"s_1"`, `"s"` in rank one, `"e"` for nothing) or,
//!   in type A, a one-line permutation of `1..=n`;
//! - `{"word": [..], "omega": ω}` meaning `ω · s_{l_1} ⋯ s_{l_k}` with affine
//!   labels, `ω` an index into the sorted Ω representatives or a nested
//!   `(λ, u)` literal; an optional `"lambda"` multiplies by `t^λ` on the left.
//!
//! Bare identifiers such as `[s]` are quoted before parsing.

use serde_json::{json, Value};

use crate::affine_weyl::{AffineWeylGroup, ExtAffineElement};
use crate::error::{Error, Result};
use crate::root_datum::{Family, RootDatum, WeylElement};

fn err(msg: impl Into<String>) -> Error {
    Error::Literal(msg.into())
}

/// Wraps unquoted identifiers (other than `true`, `false`, `null`) in quotes.
pub fn quote_bare_identifiers(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 8);
    let mut chars = text.chars().peekable();
    let mut in_string = false;
    while let Some(c) = chars.next() {
        if in_string {
            out.push(c);
            if c == '\\' {
                if let Some(n) = chars.next() {
                    out.push(n);
                }
            } else if c == '"' {
                in_string = false;
            }
        } else if c == '"' {
            in_string = true;
            out.push(c);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::from(c);
            while let Some(&n) = chars.peek() {
                if n.is_ascii_alphanumeric() || n == '_' {
                    ident.push(n);
                    chars.next();
                } else {
                    break;
                }
            }
            if matches!(ident.as_str(), "true" | "false" | "null") {
                out.push_str(&ident);
            } else {
                out.push('"');
                out.push_str(&ident);
                out.push('"');
            }
        } else {
            out.push(c);
        }
    }
    out
}

pub fn parse_element(group: &AffineWeylGroup, text: &str) -> Result<ExtAffineElement> {
    let value: Value = serde_json::from_str(&quote_bare_identifiers(text)).map_err(|e| err(e.to_string()))?;
    element_from_value(group, &value)
}

pub fn element_from_value(group: &AffineWeylGroup, value: &Value) -> Result<ExtAffineElement> {
    let obj = value.as_object().ok_or_else(|| err("element literal must be a JSON object"))?;
    let datum = group.datum();
    let lambda = match obj.get("lambda") {
        Some(v) => Some(int_vector(v, "lambda")?),
        None => None,
    };
    if let Some(l) = &lambda {
        if l.len() != datum.lattice_rank() {
            return Err(Error::DimensionMismatch { expected: datum.lattice_rank(), got: l.len() });
        }
    }
    if obj.contains_key("word") || obj.contains_key("omega") {
        if obj.contains_key("u") {
            return Err(err("use either \"u\" or \"word\"/\"omega\", not both"));
        }
        let omega = match obj.get("omega") {
            None => group.identity(),
            Some(Value::Number(n)) => {
                let idx = n.as_u64().ok_or_else(|| err("omega index must be a nonnegative integer"))? as usize;
                let reps = group.omega_representatives(1);
                reps.get(idx)
                    .cloned()
                    .ok_or_else(|| err(format!("omega index {idx} out of range (have {})", reps.len())))?
            }
            Some(v @ Value::Object(_)) => {
                let w = element_from_value(group, v)?;
                if group.length(&w) != 0 {
                    return Err(err("omega must have length zero"));
                }
                w
            }
            Some(_) => return Err(err("omega must be an index or an element literal")),
        };
        let labels: Vec<usize> = match obj.get("word") {
            None => vec![],
            Some(v) => int_vector(v, "word")?
                .into_iter()
                .map(|l| usize::try_from(l).map_err(|_| err("word labels must be nonnegative")))
                .collect::<Result<_>>()?,
        };
        let x = group.from_omega_word(&omega, &labels)?;
        return Ok(match lambda {
            Some(l) => group.mul(&ExtAffineElement::translation(l), &x),
            None => x,
        });
    }
    let lambda = lambda.ok_or_else(|| err("missing \"lambda\""))?;
    let u = match obj.get("u") {
        None => WeylElement::IDENTITY,
        Some(v) => parse_finite(datum, v)?,
    };
    Ok(ExtAffineElement::new(lambda, u))
}

fn int_vector(v: &Value, field: &str) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| err(format!("\"{field}\" must be an array")))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| err(format!("\"{field}\" entries must be integers"))))
        .collect()
}

fn parse_finite(datum: &RootDatum, v: &Value) -> Result<WeylElement> {
    let items = v.as_array().ok_or_else(|| err("\"u\" must be an array"))?;
    if !items.is_empty() && items.iter().all(Value::is_i64) {
        let perm: Vec<i64> = items.iter().map(|x| x.as_i64().expect("checked")).collect();
        return from_permutation(datum, &perm);
    }
    let mut word = Vec::with_capacity(items.len());
    for item in items {
        let s = item.as_str().ok_or_else(|| err("\"u\" mixes letters and integers"))?;
        if let Some(i) = parse_letter(s, datum.rank())? {
            word.push(i);
        }
    }
    Ok(datum.from_word(&word))
}

/// `"s"`, `"sK"`, `"s_K"` (1-based) or `"e"`.
fn parse_letter(s: &str, rank: usize) -> Result<Option<usize>> {
    let bad = || err(format!("unknown reflection {s:?}"));
    if s == "e" || s == "1" {
        return Ok(None);
    }
    let rest = s.strip_prefix('s').ok_or_else(bad)?;
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    if rest.is_empty() {
        return if rank == 1 { Ok(Some(0)) } else { Err(err("bare \"s\" is only allowed in rank one")) };
    }
    let k: usize = rest.parse().map_err(|_| bad())?;
    if k == 0 || k > rank {
        return Err(bad());
    }
    Ok(Some(k - 1))
}

/// One-line permutation `i ↦ p(i)` of `1..=n`, for a datum of type `A_{n-1}`.
fn from_permutation(datum: &RootDatum, perm: &[i64]) -> Result<WeylElement> {
    let types = datum.cartan_type();
    if types.len() != 1 || types[0].family != Family::A {
        return Err(err("permutation notation requires a single factor of type A"));
    }
    let n = datum.rank() + 1;
    let mut p: Vec<usize> = perm.iter().map(|&x| x as usize).collect();
    let mut sorted = p.clone();
    sorted.sort_unstable();
    if p.len() != n || perm.iter().any(|&x| x < 1) || sorted != (1..=n).collect::<Vec<_>>() {
        return Err(err(format!("expected a permutation of 1..={n}")));
    }
    // p ∘ s_{i_1} ∘ ⋯ ∘ s_{i_k} = id
    let mut record = Vec::new();
    while let Some(i) = (0..n - 1).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        record.push(i);
    }
    record.reverse();
    Ok(datum.from_word(&record))
}

/// Canonical `{"lambda": [..], "u": ["s1", ..]}` with the greedy reduced word.
pub fn element_to_value(datum: &RootDatum, x: &ExtAffineElement) -> Value {
    let word: Vec<String> = datum.reduced_word(x.finite_part()).iter().map(|i| format!("s{}", i + 1)).collect();
    json!({ "lambda": x.lambda(), "u": word })
}

/// Compact text form such as `t^(1, 0)·s1s2`.
pub fn format_element(datum: &RootDatum, x: &ExtAffineElement) -> String {
    let lambda: Vec<String> = x.lambda().iter().map(|v| v.to_string()).collect();
    let word = datum.reduced_word(x.finite_part());
    if word.is_empty() {
        format!("t^({})", lambda.join(", "))
    } else {
        let letters: String = word.iter().map(|i| format!("s{}", i + 1)).collect();
        format!("t^({})·{}", lambda.join(", "), letters)
    }
}
