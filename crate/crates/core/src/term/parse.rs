use super::{Node, Term};
use crate::error::{Error, Result};
use crate::semiring::Nat;
use crate::series::Alphabet;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Zero,
    One,
    Nat(Nat),
    Inf,
    Letter(char),
    Plus,
    Dot,
    Star,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {}
            '+' => out.push((pos, Tok::Plus)),
            '.' => out.push((pos, Tok::Dot)),
            '*' => out.push((pos, Tok::Star)),
            '(' => out.push((pos, Tok::LParen)),
            ')' => out.push((pos, Tok::RParen)),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().map(|(_, c)| c).collect();
                let n: Nat = digits.parse()?;
                let tok = if n.is_zero() {
                    Tok::Zero
                } else if n.is_one() {
                    Tok::One
                } else {
                    Tok::Nat(n)
                };
                out.push((pos, tok));
            }
            _ if text[pos..].starts_with("inf") => {
                out.push((pos, Tok::Inf));
                i += 2;
            }
            c if c.is_ascii_lowercase() => out.push((pos, Tok::Letter(c))),
            c => {
                return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.prod()?;
        while self.peek() == Some(&Tok::Plus) {
            self.at += 1;
            let r = self.prod()?;
            t = Term::new(Node::Sum(t, r));
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term> {
        let mut t = self.star()?;
        loop {
            match self.peek() {
                Some(Tok::Dot) => self.at += 1,
                Some(Tok::Zero | Tok::One | Tok::Nat(_) | Tok::Inf | Tok::Letter(_) | Tok::LParen) => {}
                _ => return Ok(t),
            }
            let r = self.star()?;
            t = Term::new(Node::Prod(t, r));
        }
    }

    fn star(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            t = Term::new(Node::Star(t));
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        let t = match tok {
            Tok::Zero => Term::zero(),
            Tok::One => Term::one(),
            Tok::Nat(n) => Term::new(Node::Nat(n)),
            Tok::Inf => Term::inf(),
            Tok::Letter(c) => Term::letter(c),
            Tok::LParen => {
                self.at += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                inner
            }
            other => return self.err(format!("unexpected {other:?}")),
        };
        self.at += 1;
        Ok(t)
    }
}

/// Parses without checking letters against an alphabet.
pub fn parse_term_unchecked(text: &str) -> Result<Term> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, end: text.len() };
    let t = p.sum()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Parses `text`, rejecting letters outside `alphabet`. The keyword `inf`
/// takes precedence over the letters `i`, `n`, `f`.
pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<Term> {
    let t = parse_term_unchecked(text)?;
    if let Some(c) = t.letters().into_iter().find(|c| alphabet.index_of(*c).is_none()) {
        return Err(Error::UnknownLetter(c));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse_term_unchecked(s).unwrap()
    }

    fn l(c: char) -> Term {
        Term::letter(c)
    }

    fn node(n: Node) -> Term {
        Term::new(n)
    }

    #[test]
    fn precedence() {
        let expect = node(Node::Sum(l('a'), node(Node::Prod(l('b'), node(Node::Star(l('c')))))));
        assert_eq!(p("a+b.c*"), expect);
        assert_eq!(p("(1+a)*"), node(Node::Star(node(Node::Sum(Term::one(), l('a'))))));
        assert_eq!(p("2a"), node(Node::Prod(Term::nat(Nat::small(2)), l('a'))));
        assert_eq!(p("ab"), p("a.b"));
        assert_eq!(p("a**"), node(Node::Star(node(Node::Star(l('a'))))));
        assert_eq!(p(" 1* "), node(Node::Star(Term::one())));
    }

    #[test]
    fn inf_keyword() {
        assert_eq!(p("inf"), Term::inf());
        assert_eq!(p("2inf"), node(Node::Prod(Term::nat(Nat::small(2)), Term::inf())));
        assert_eq!(p("in"), p("i.n"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_term_unchecked("a+"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_term_unchecked("(a"), Err(Error::Parse { .. })));
        assert!(matches!(parse_term_unchecked("a)"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_term_unchecked("A"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_term_unchecked("*"), Err(Error::Parse { .. })));
        let ab = Alphabet::parse("ab").unwrap();
        assert_eq!(parse_term("c", &ab), Err(Error::UnknownLetter('c')));
        assert!(parse_term("a.b*", &ab).is_ok());
    }

    #[test]
    fn print_parse_roundtrip() {
        for s in ["(a+b)*.a", "a.(b+1)*", "1+a.(b.a)*.b", "(a*.b)*.a*", "3.a*+inf.b", "((a))", "a+b+c"] {
            let t = p(s);
            assert_eq!(p(&t.to_string()), t, "{s}");
        }
    }
}
