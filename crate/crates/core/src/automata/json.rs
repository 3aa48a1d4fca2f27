use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::matrix::{matrix_from_json, matrix_to_json};
use crate::semiring::ValueText;
use crate::series::Alphabet;

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    dim: usize,
    alphabet: Vec<String>,
    alpha: Vec<Value>,
    beta: Vec<Value>,
    trans: Map<String, Value>,
}

/// `{"dim", "alphabet", "alpha", "beta", "trans": {letter: rows}}` with
/// weights as strings.
pub fn automaton_to_json<S: ValueText>(s: &S, m: &WeightedAutomaton<S::Elem>) -> Value {
    let render = |v: &[S::Elem]| v.iter().map(|x| Value::String(s.render(x))).collect();
    let trans = m
        .alphabet()
        .letters()
        .iter()
        .enumerate()
        .map(|(a, c)| (c.to_string(), matrix_to_json(s, &m.trans_matrix(s, a))))
        .collect();
    let doc = AutomatonJson {
        dim: m.dim(),
        alphabet: m.alphabet().letters().iter().map(char::to_string).collect(),
        alpha: render(m.alpha()),
        beta: render(m.beta()),
        trans,
    };
    serde_json::to_value(doc).expect("plain data serialises")
}

fn weight<S: ValueText>(s: &S, v: &Value) -> Result<S::Elem> {
    match v {
        Value::String(t) => s.parse_value(t),
        Value::Number(n) => s.parse_value(&n.to_string()),
        other => Err(Error::Json(format!("bad weight {other}"))),
    }
}

pub fn automaton_from_json<S: ValueText>(s: &S, v: &Value) -> Result<WeightedAutomaton<S::Elem>> {
    let doc: AutomatonJson = serde_json::from_value(v.clone())?;
    let mut letters = Vec::with_capacity(doc.alphabet.len());
    for l in &doc.alphabet {
        let mut chars = l.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => letters.push(c),
            _ => return Err(Error::Json(format!("letter {l:?} is not a single character"))),
        }
    }
    let alphabet = Alphabet::new(letters.iter().copied())?;
    if alphabet.len() != letters.len() {
        return Err(Error::Json("repeated letter in alphabet".into()));
    }
    if let Some(extra) = doc.trans.keys().find(|k| !doc.alphabet.contains(k)) {
        return Err(Error::Json(format!("transitions for unknown letter {extra:?}")));
    }
    let alpha = doc.alpha.iter().map(|x| weight(s, x)).collect::<Result<Vec<_>>>()?;
    let beta = doc.beta.iter().map(|x| weight(s, x)).collect::<Result<Vec<_>>>()?;
    if alpha.len() != doc.dim {
        return Err(Error::InvalidAutomaton(format!("dim {} but {} initial weights", doc.dim, alpha.len())));
    }
    let trans = alphabet
        .letters()
        .iter()
        .map(|c| match doc.trans.get(&c.to_string()) {
            Some(rows) if doc.dim == 0 && rows.as_array().is_some_and(Vec::is_empty) => {
                Ok(crate::matrix::Matrix::new(0, 0, Vec::new())?)
            }
            Some(rows) => matrix_from_json(s, rows),
            None => Ok(crate::matrix::Matrix::filled(doc.dim, doc.dim, s.zero())),
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedAutomaton::new(s, alphabet, alpha, beta, trans)
}
