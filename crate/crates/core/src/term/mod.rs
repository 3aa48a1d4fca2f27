//! Rational expressions over an alphabet: `0 | 1 | n | inf | a | t+t | t.t | t*`.

mod eval;
mod normalize;
mod parse;

pub use eval::{eval_term, eval_term_with};
pub use normalize::{normalize, normalize_disjoint, NormalForm};
pub use parse::{parse_term, parse_term_unchecked};

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write};
use std::sync::Arc;

use crate::error::Result;
use crate::semiring::{Nat, Semiring, StarSemiring};

/// A shared, immutable expression tree. Subterms may be shared, so a term is
/// in general a DAG; every traversal in this module memoises on node identity.
#[derive(Clone)]
pub struct Term(Arc<Node>);

#[derive(Clone, Debug)]
pub enum Node {
    Zero,
    One,
    /// A natural constant `n ≥ 2`, sugar for `1 + ⋯ + 1`.
    Nat(Nat),
    /// Sugar for `1*`.
    Inf,
    Letter(char),
    Sum(Term, Term),
    Prod(Term, Term),
    Star(Term),
    /// `t⁺`, sugar for `t.t*`.
    Plus(Term),
}

impl Term {
    pub fn new(node: Node) -> Term {
        Term(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn zero() -> Term {
        Term::new(Node::Zero)
    }

    pub fn one() -> Term {
        Term::new(Node::One)
    }

    pub fn inf() -> Term {
        Term::new(Node::Inf)
    }

    pub fn letter(c: char) -> Term {
        Term::new(Node::Letter(c))
    }

    /// `0`, `1`, or the constant node for `n ≥ 2`.
    pub fn nat(n: Nat) -> Term {
        if n.is_zero() {
            Term::zero()
        } else if n.is_one() {
            Term::one()
        } else {
            Term::new(Node::Nat(n))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self.0, Node::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(*self.0, Node::One)
    }

    /// `a + b`, dropping zero summands.
    pub fn sum(a: &Term, b: &Term) -> Term {
        if a.is_zero() {
            b.clone()
        } else if b.is_zero() {
            a.clone()
        } else {
            Term::new(Node::Sum(a.clone(), b.clone()))
        }
    }

    /// `a.b`, applying `0.t = t.0 = 0` and `1.t = t.1 = t`.
    pub fn prod(a: &Term, b: &Term) -> Term {
        if a.is_zero() || b.is_zero() {
            Term::zero()
        } else if a.is_one() {
            b.clone()
        } else if b.is_one() {
            a.clone()
        } else {
            Term::new(Node::Prod(a.clone(), b.clone()))
        }
    }

    /// `a*`, with `0* = 1`.
    pub fn star(a: &Term) -> Term {
        if a.is_zero() {
            Term::one()
        } else {
            Term::new(Node::Star(a.clone()))
        }
    }

    /// `a⁺`, with `0⁺ = 0`.
    pub fn plus(a: &Term) -> Term {
        if a.is_zero() {
            Term::zero()
        } else {
            Term::new(Node::Plus(a.clone()))
        }
    }

    pub fn sum_all(terms: impl IntoIterator<Item = Term>) -> Term {
        terms.into_iter().fold(Term::zero(), |acc, t| Term::sum(&acc, &t))
    }

    fn id(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    /// The letters occurring in the term.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        let mut seen = HashMap::new();
        self.visit(&mut seen, &mut |n| {
            if let Node::Letter(c) = n {
                out.insert(*c);
            }
        });
        out
    }

    fn visit(&self, seen: &mut HashMap<*const Node, ()>, f: &mut impl FnMut(&Node)) {
        if seen.insert(self.id(), ()).is_some() {
            return;
        }
        f(&self.0);
        match &*self.0 {
            Node::Sum(a, b) | Node::Prod(a, b) => {
                a.visit(seen, f);
                b.visit(seen, f);
            }
            Node::Star(a) | Node::Plus(a) => a.visit(seen, f),
            _ => {}
        }
    }

    /// Number of distinct nodes.
    pub fn dag_size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut HashMap::new(), &mut |_| n += 1);
        n
    }

    /// True when the term contains a star, plus, or `inf` node.
    pub fn has_star(&self) -> bool {
        let mut found = false;
        self.visit(&mut HashMap::new(), &mut |n| {
            found |= matches!(n, Node::Star(_) | Node::Plus(_) | Node::Inf)
        });
        found
    }

    pub fn has_inf(&self) -> bool {
        let mut found = false;
        self.visit(&mut HashMap::new(), &mut |n| found |= matches!(n, Node::Inf));
        found
    }

    /// A closed, star-free term denoting a natural number.
    pub fn is_nat_constant(&self) -> bool {
        let mut ok = true;
        self.visit(&mut HashMap::new(), &mut |n| {
            ok &= matches!(n, Node::Zero | Node::One | Node::Nat(_) | Node::Sum(..) | Node::Prod(..))
        });
        ok
    }

    /// Membership in the least class containing `0` and the letters, closed
    /// under sums, products with ideal terms or natural constants, and `s⁺`.
    pub fn is_ideal(&self) -> bool {
        self.ideal_memo(&mut HashMap::new())
    }

    fn ideal_memo(&self, memo: &mut HashMap<*const Node, bool>) -> bool {
        if let Some(&v) = memo.get(&self.id()) {
            return v;
        }
        let v = match &*self.0 {
            Node::Zero | Node::Letter(_) => true,
            Node::One | Node::Nat(_) | Node::Inf | Node::Star(_) => false,
            Node::Sum(a, b) => a.ideal_memo(memo) && b.ideal_memo(memo),
            Node::Plus(a) => a.ideal_memo(memo),
            Node::Prod(a, b) => {
                let plus_pattern = match (&*a.0, &*b.0) {
                    (_, Node::Star(s)) if s == a => a.ideal_memo(memo),
                    (Node::Star(s), _) if s == b => b.ideal_memo(memo),
                    _ => false,
                };
                plus_pattern
                    || (a.ideal_memo(memo) && (b.is_nat_constant() || b.ideal_memo(memo)))
                    || (b.ideal_memo(memo) && a.is_nat_constant())
            }
        };
        memo.insert(self.id(), v);
        v
    }

    /// Renders at most `limit` characters, marking a cut with `...`.
    pub fn display_truncated(&self, limit: usize) -> String {
        struct Capped {
            out: String,
            limit: usize,
        }
        impl Write for Capped {
            fn write_str(&mut self, s: &str) -> fmt::Result {
                if self.out.len() + s.len() > self.limit {
                    return Err(fmt::Error);
                }
                self.out.push_str(s);
                Ok(())
            }
        }
        let mut w = Capped { out: String::new(), limit };
        if write!(w, "{self}").is_err() {
            w.out.push_str("...");
        }
        w.out
    }

    fn fmt_prec(&self, f: &mut impl Write, min: u8) -> fmt::Result {
        let prec = match &*self.0 {
            Node::Sum(..) => 0,
            Node::Prod(..) | Node::Plus(_) => 1,
            Node::Star(_) => 2,
            _ => 3,
        };
        if prec < min {
            f.write_char('(')?;
        }
        match &*self.0 {
            Node::Zero => f.write_char('0')?,
            Node::One => f.write_char('1')?,
            Node::Nat(n) => write!(f, "{n}")?,
            Node::Inf => f.write_str("inf")?,
            Node::Letter(c) => f.write_char(*c)?,
            Node::Sum(a, b) => {
                a.fmt_prec(f, 0)?;
                f.write_char('+')?;
                b.fmt_prec(f, 1)?;
            }
            Node::Prod(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_char('.')?;
                b.fmt_prec(f, 2)?;
            }
            Node::Star(a) => {
                a.fmt_prec(f, 2)?;
                f.write_char('*')?;
            }
            Node::Plus(a) => {
                a.fmt_prec(f, 1)?;
                f.write_char('.')?;
                a.fmt_prec(f, 2)?;
                f.write_char('*')?;
            }
        }
        if prec < min {
            f.write_char(')')?;
        }
        Ok(())
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Node::Zero, Node::Zero) | (Node::One, Node::One) | (Node::Inf, Node::Inf) => true,
            (Node::Nat(a), Node::Nat(b)) => a == b,
            (Node::Letter(a), Node::Letter(b)) => a == b,
            (Node::Sum(a, b), Node::Sum(c, d)) | (Node::Prod(a, b), Node::Prod(c, d)) => {
                a == c && b == d
            }
            (Node::Star(a), Node::Star(b)) | (Node::Plus(a), Node::Plus(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct Adapter<'a, 'b>(&'a mut fmt::Formatter<'b>);
        impl Write for Adapter<'_, '_> {
            fn write_str(&mut self, s: &str) -> fmt::Result {
                self.0.write_str(s)
            }
        }
        self.fmt_prec(&mut Adapter(f), 0)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", self.display_truncated(200))
    }
}

/// Terms as a semiring under the smart constructors; used to run the matrix
/// star symbolically.
#[derive(Clone, Copy, Debug, Default)]
pub struct TermAlgebra;

impl Semiring for TermAlgebra {
    type Elem = Term;

    fn zero(&self) -> Term {
        Term::zero()
    }

    fn one(&self) -> Term {
        Term::one()
    }

    fn add(&self, a: &Term, b: &Term) -> Term {
        Term::sum(a, b)
    }

    fn mul(&self, a: &Term, b: &Term) -> Term {
        Term::prod(a, b)
    }

    fn is_zero(&self, a: &Term) -> bool {
        a.is_zero()
    }

    fn from_nat(&self, n: &Nat) -> Term {
        Term::nat(n.clone())
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn name(&self) -> String {
        "terms".into()
    }
}

impl StarSemiring for TermAlgebra {
    fn star(&self, a: &Term) -> Result<Term> {
        Ok(Term::star(a))
    }
}
