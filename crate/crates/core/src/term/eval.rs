use std::collections::HashMap;

use super::{Node, Term};
use crate::error::{Error, Result};
use crate::semiring::StarSemiring;
use crate::series::{SeriesSemiring, TruncatedSeries};

/// Evaluates `t` in any star semiring, sending letters through `letter`.
pub fn eval_term_with<S, F>(t: &Term, s: &S, letter: &F) -> Result<S::Elem>
where
    S: StarSemiring,
    F: Fn(char) -> Result<S::Elem>,
{
    let mut memo = HashMap::new();
    eval_rec(t, s, letter, &mut memo)
}

fn eval_rec<S, F>(
    t: &Term,
    s: &S,
    letter: &F,
    memo: &mut HashMap<*const Node, S::Elem>,
) -> Result<S::Elem>
where
    S: StarSemiring,
    F: Fn(char) -> Result<S::Elem>,
{
    if let Some(v) = memo.get(&t.id()) {
        return Ok(v.clone());
    }
    let star = |x: &S::Elem| {
        s.star(x).map_err(|_| {
            Error::NotInStarDomain(format!("{} in {}", t.display_truncated(80), s.name()))
        })
    };
    let v = match t.node() {
        Node::Zero => s.zero(),
        Node::One => s.one(),
        Node::Nat(n) => s.from_nat(n),
        Node::Inf => star(&s.one())?,
        Node::Letter(c) => letter(*c)?,
        Node::Sum(a, b) => {
            let x = eval_rec(a, s, letter, memo)?;
            s.add(&x, &eval_rec(b, s, letter, memo)?)
        }
        Node::Prod(a, b) => {
            let x = eval_rec(a, s, letter, memo)?;
            s.mul(&x, &eval_rec(b, s, letter, memo)?)
        }
        Node::Star(a) => star(&eval_rec(a, s, letter, memo)?)?,
        Node::Plus(a) => {
            let x = eval_rec(a, s, letter, memo)?;
            s.mul(&x, &star(&x)?)
        }
    };
    memo.insert(t.id(), v.clone());
    Ok(v)
}

/// The series denoted by `t`, truncated at the series semiring's bound.
pub fn eval_term<S: StarSemiring>(
    t: &Term,
    sr: &SeriesSemiring<S>,
) -> Result<TruncatedSeries<S::Elem>> {
    eval_term_with(t, sr, &|c| sr.letter(c))
}
