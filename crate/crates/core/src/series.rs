//! Formal power series truncated at a word-length bound.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::semiring::{
    ExtendedNat, Morphism, Nat, OrderedSemiring, Semiring, StarSemiring, ValueText,
};

/// A finite, ordered set of single-character letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[char]>);

impl Alphabet {
    /// Sorts and deduplicates `letters`.
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Alphabet> {
        let mut v: Vec<char> = letters.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.len() > u8::MAX as usize {
            return Err(Error::Unsupported(format!("alphabet of {} letters", v.len())));
        }
        Ok(Alphabet(v.into()))
    }

    /// Parses `"ab"` or `"a,b"`.
    pub fn parse(text: &str) -> Result<Alphabet> {
        let letters: Vec<char> = text.chars().filter(|c| !matches!(c, ',' | ' ')).collect();
        if let Some(c) = letters.iter().find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::InvalidValue(format!("letter '{c}'")));
        }
        Alphabet::new(letters)
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.0.iter().position(|&x| x == c).map(|i| i as u8)
    }

    pub fn letter(&self, i: u8) -> char {
        self.0[i as usize]
    }

    /// Merges two alphabets.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.0.iter().chain(other.0.iter()).copied()).expect("both fit")
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        if text == "ε" {
            return Ok(Word::empty());
        }
        text.chars()
            .map(|c| self.index_of(c).ok_or(Error::UnknownLetter(c)))
            .collect::<Result<SmallVec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            w.0.iter().map(|&i| self.letter(i)).collect()
        }
    }

    /// Every word of length at most `bound`, in length-lexicographic order.
    pub fn words_up_to(&self, bound: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.len();
        (0..=bound).flat_map(move |len| {
            let count = if k == 0 && len > 0 { 0 } else { k.pow(len as u32) };
            (0..count).map(move |mut idx| {
                let mut w: SmallVec<[u8; 16]> = SmallVec::from_elem(0, len);
                for slot in w.iter_mut().rev() {
                    *slot = (idx % k) as u8;
                    idx /= k;
                }
                Word(w)
            })
        })
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().collect::<String>())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A word as a string of letter indices, ordered by length and then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_indices(indices: &[u8]) -> Word {
        Word(SmallVec::from_slice(indices))
    }

    pub fn letter(i: u8) -> Word {
        Word::from_indices(&[i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn push(&mut self, i: u8) {
        self.0.push(i);
    }

    /// The least word of length `n` in length-lex order.
    fn first_of_len(n: usize) -> Word {
        Word(SmallVec::from_elem(0, n))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            for &i in &self.0 {
                write!(f, "{}", (b'a' + i) as char)?;
            }
            Ok(())
        }
    }
}

/// A power series known on all words of length at most `bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<E> {
    alphabet: Alphabet,
    bound: usize,
    coeffs: BTreeMap<Word, E>,
}

impl<E: Clone> TruncatedSeries<E> {
    pub fn zero(alphabet: Alphabet, bound: usize) -> Self {
        TruncatedSeries { alphabet, bound, coeffs: BTreeMap::new() }
    }

    /// Builds a series from `(word, coefficient)` pairs, dropping zeros and
    /// words beyond the bound, and summing repeated words.
    pub fn from_pairs<S: Semiring<Elem = E>>(
        s: &S,
        alphabet: Alphabet,
        bound: usize,
        pairs: impl IntoIterator<Item = (Word, E)>,
    ) -> Self {
        let mut out = TruncatedSeries::zero(alphabet, bound);
        for (w, c) in pairs {
            if w.len() <= bound {
                out.accumulate(s, w, &c);
            }
        }
        out
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Nonzero coefficients in length-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &E)> {
        self.coeffs.iter()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, w: &Word) -> Option<&E> {
        self.coeffs.get(w)
    }

    /// Same coefficients, read only up to `bound`.
    pub fn truncate(&self, bound: usize) -> Self {
        let bound = bound.min(self.bound);
        TruncatedSeries {
            alphabet: self.alphabet.clone(),
            bound,
            coeffs: self
                .coeffs
                .range(..Word::first_of_len(bound + 1))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn accumulate<S: Semiring<Elem = E>>(&mut self, s: &S, w: Word, c: &E) {
        if s.is_zero(c) {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(old) => {
                let sum = s.add(old, c);
                if s.is_zero(&sum) {
                    self.coeffs.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.coeffs.insert(w, c.clone());
            }
        }
    }

    fn layer(&self, len: usize) -> impl Iterator<Item = (&Word, &E)> {
        self.coeffs.range(Word::first_of_len(len)..Word::first_of_len(len + 1))
    }

    /// True when the coefficient of the empty word is zero.
    pub fn is_proper(&self) -> bool {
        !self.coeffs.contains_key(&Word::empty())
    }

    pub fn map<T: Clone>(&self, mut f: impl FnMut(&E) -> T, is_zero: impl Fn(&T) -> bool) -> TruncatedSeries<T> {
        TruncatedSeries {
            alphabet: self.alphabet.clone(),
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(w, c)| {
                    let t = f(c);
                    (!is_zero(&t)).then(|| (w.clone(), t))
                })
                .collect(),
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for TruncatedSeries<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {c:?}", self.alphabet.render(w))?;
        }
        write!(f, "}}/{}", self.bound)
    }
}

impl<E: fmt::Display> fmt::Display for TruncatedSeries<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {c}", self.alphabet.render(w))?;
        }
        f.write_str("}")
    }
}

/// `{ε: 2, a: inf}`; with `compact` the space after each colon is dropped.
pub fn render_series<S: ValueText>(s: &S, x: &TruncatedSeries<S::Elem>, compact: bool) -> String {
    let sep = if compact { ":" } else { ": " };
    let body: Vec<String> = x
        .coeffs
        .iter()
        .map(|(w, c)| format!("{}{sep}{}", x.alphabet.render(w), s.render(c)))
        .collect();
    format!("{{{}}}", body.join(", "))
}

pub fn series_to_json<S: ValueText>(s: &S, x: &TruncatedSeries<S::Elem>) -> Value {
    let mut m = Map::new();
    for (w, c) in &x.coeffs {
        m.insert(x.alphabet.render(w), Value::String(s.render(c)));
    }
    Value::Object(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

fn check_alphabets<E>(a: &TruncatedSeries<E>, b: &TruncatedSeries<E>) -> Result<()> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch(a.alphabet.to_string(), b.alphabet.to_string()));
    }
    Ok(())
}

/// Pointwise sum or Cauchy product, truncated at the smaller bound.
pub fn series_combine<S: Semiring>(
    s: &S,
    op: SeriesOp,
    a: &TruncatedSeries<S::Elem>,
    b: &TruncatedSeries<S::Elem>,
) -> Result<TruncatedSeries<S::Elem>> {
    check_alphabets(a, b)?;
    Ok(match op {
        SeriesOp::Add => add(s, a, b),
        SeriesOp::Mul => mul(s, a, b),
    })
}

fn add<S: Semiring>(
    s: &S,
    a: &TruncatedSeries<S::Elem>,
    b: &TruncatedSeries<S::Elem>,
) -> TruncatedSeries<S::Elem> {
    let bound = a.bound.min(b.bound);
    let mut out = a.truncate(bound);
    for (w, c) in b.coeffs.range(..Word::first_of_len(bound + 1)) {
        out.accumulate(s, w.clone(), c);
    }
    out
}

fn mul<S: Semiring>(
    s: &S,
    a: &TruncatedSeries<S::Elem>,
    b: &TruncatedSeries<S::Elem>,
) -> TruncatedSeries<S::Elem> {
    let bound = a.bound.min(b.bound);
    let mut out = TruncatedSeries::zero(a.alphabet.clone(), bound);
    for (u, x) in &a.coeffs {
        if u.len() > bound {
            break;
        }
        for (v, y) in &b.coeffs {
            if u.len() + v.len() > bound {
                break;
            }
            out.accumulate(s, u.concat(v), &s.mul(x, y));
        }
    }
    out
}

fn scale_left<S: Semiring>(s: &S, c: &S::Elem, a: &TruncatedSeries<S::Elem>) -> TruncatedSeries<S::Elem> {
    a.map(|x| s.mul(c, x), |x| s.is_zero(x))
}

fn scale_right<S: Semiring>(s: &S, a: &TruncatedSeries<S::Elem>, c: &S::Elem) -> TruncatedSeries<S::Elem> {
    a.map(|x| s.mul(x, c), |x| s.is_zero(x))
}

/// The unique solution of `x = r·x + 1` for proper `r`, built one length
/// layer at a time.
fn proper_star<S: Semiring>(s: &S, r: &TruncatedSeries<S::Elem>) -> TruncatedSeries<S::Elem> {
    let bound = r.bound;
    let mut x = TruncatedSeries::zero(r.alphabet.clone(), bound);
    x.coeffs.insert(Word::empty(), s.one());
    let terms: Vec<(&Word, &S::Elem)> = r.coeffs.iter().filter(|(w, _)| !w.is_empty()).collect();
    for len in 0..bound {
        let layer: Vec<(Word, S::Elem)> =
            x.layer(len).map(|(w, c)| (w.clone(), c.clone())).collect();
        for (v, xv) in &layer {
            for (u, ru) in &terms {
                if u.len() + len > bound {
                    break;
                }
                x.accumulate(s, u.concat(v), &s.mul(ru, xv));
            }
        }
    }
    x
}

/// The star of a series: the power sum when proper, `(s₀*r)*s₀*` otherwise.
pub fn series_star<S: StarSemiring>(
    s: &S,
    a: &TruncatedSeries<S::Elem>,
) -> Result<TruncatedSeries<S::Elem>> {
    let Some(s0) = a.coeffs.get(&Word::empty()) else {
        return Ok(proper_star(s, a));
    };
    let s0_star = s.star(s0).map_err(|_| {
        Error::NotInStarDomain(format!("series with constant term {s0:?} in {}", s.name()))
    })?;
    let r = scale_left(s, &s0_star, a);
    Ok(scale_right(s, &proper_star(s, &r), &s0_star))
}

/// The coefficient of `w`; words past the bound are not known to be zero.
pub fn coefficient<S: Semiring>(
    s: &S,
    a: &TruncatedSeries<S::Elem>,
    w: &Word,
) -> Result<S::Elem> {
    if w.len() > a.bound {
        return Err(Error::OutOfWindow { word: a.alphabet.render(w), bound: a.bound });
    }
    Ok(a.coeffs.get(w).cloned().unwrap_or_else(|| s.zero()))
}

/// Splits into the finite-coefficient part and the infinite-coefficient part.
pub fn split_finite_infinite(
    a: &TruncatedSeries<ExtendedNat>,
) -> (TruncatedSeries<Nat>, TruncatedSeries<ExtendedNat>) {
    let mut fin = TruncatedSeries::zero(a.alphabet.clone(), a.bound);
    let mut inf = TruncatedSeries::zero(a.alphabet.clone(), a.bound);
    for (w, c) in &a.coeffs {
        match c {
            ExtendedNat::Fin(n) => {
                fin.coeffs.insert(w.clone(), n.clone());
            }
            ExtendedNat::Inf => {
                inf.coeffs.insert(w.clone(), ExtendedNat::Inf);
            }
        }
    }
    (fin, inf)
}

/// Applies `h` to every coefficient.
pub fn map_coefficients<M: Morphism>(
    a: &TruncatedSeries<<M::Source as Semiring>::Elem>,
    h: &M,
) -> TruncatedSeries<<M::Target as Semiring>::Elem> {
    a.map(|c| h.apply(c), |c| h.target().is_zero(c))
}

/// Buckets the coefficients: part `i < k` holds the coefficients equal to
/// `i`, part `k` the coefficients of at least `k`.
pub fn decompose_by_value(a: &TruncatedSeries<Nat>, k: u64) -> Vec<TruncatedSeries<Nat>> {
    assert!(k >= 1, "k must be at least 1");
    let mut parts = vec![TruncatedSeries::zero(a.alphabet.clone(), a.bound); k as usize + 1];
    for (w, c) in &a.coeffs {
        let i = c.to_u64().map_or(k, |v| v.min(k)) as usize;
        parts[i].coeffs.insert(w.clone(), c.clone());
    }
    parts
}

/// A series with finite support, independent of any truncation bound.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<E> {
    alphabet: Alphabet,
    coeffs: BTreeMap<Word, E>,
}

impl<E: Clone> Polynomial<E> {
    pub fn new<S: Semiring<Elem = E>>(
        s: &S,
        alphabet: Alphabet,
        pairs: impl IntoIterator<Item = (Word, E)>,
    ) -> Self {
        let max = usize::MAX;
        let series = TruncatedSeries::from_pairs(s, alphabet.clone(), max, pairs);
        Polynomial { alphabet, coeffs: series.coeffs }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &E)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Support contained in the letters.
    pub fn is_linear(&self) -> bool {
        self.coeffs.keys().all(|w| w.len() == 1)
    }

    pub fn to_series(&self, bound: usize) -> TruncatedSeries<E> {
        TruncatedSeries {
            alphabet: self.alphabet.clone(),
            bound,
            coeffs: self
                .coeffs
                .range(..Word::first_of_len(bound.saturating_add(1)))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for Polynomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {c:?}", self.alphabet.render(w))?;
        }
        f.write_str("}")
    }
}

/// Evaluates `p` under the extension of `hs` and the letter images `h`.
///
/// Requires the image of every coefficient of `p` to commute with every
/// letter image; checked whenever the target is not commutative.
pub fn polynomial_eval<M: Morphism>(
    p: &Polynomial<<M::Source as Semiring>::Elem>,
    hs: &M,
    h: &[<M::Target as Semiring>::Elem],
) -> Result<<M::Target as Semiring>::Elem> {
    let t = hs.target();
    if h.len() != p.alphabet.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} letter images for {} letters",
            h.len(),
            p.alphabet.len()
        )));
    }
    let images: Vec<_> = p.coeffs.iter().map(|(w, c)| (w, hs.apply(c))).collect();
    if !t.is_commutative() {
        for (w, c) in &images {
            for (i, x) in h.iter().enumerate() {
                if t.mul(c, x) != t.mul(x, c) {
                    return Err(Error::NotAMorphismExtension(format!(
                        "image of coefficient of {} does not commute with image of {}",
                        p.alphabet.render(w),
                        p.alphabet.letter(i as u8)
                    )));
                }
            }
        }
    }
    let mut acc = t.zero();
    for (w, c) in images {
        let word = w.indices().iter().fold(t.one(), |acc, &i| t.mul(&acc, &h[i as usize]));
        acc = t.add(&acc, &t.mul(&c, &word));
    }
    Ok(acc)
}

/// Series over `coef` on a fixed alphabet, truncated at `bound`.
#[derive(Clone, Debug)]
pub struct SeriesSemiring<S> {
    coef: S,
    alphabet: Alphabet,
    bound: usize,
}

impl<S: Semiring> SeriesSemiring<S> {
    pub fn new(coef: S, alphabet: Alphabet, bound: usize) -> Self {
        SeriesSemiring { coef, alphabet, bound }
    }

    pub fn coef(&self) -> &S {
        &self.coef
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn constant(&self, c: S::Elem) -> TruncatedSeries<S::Elem> {
        TruncatedSeries::from_pairs(&self.coef, self.alphabet.clone(), self.bound, [(Word::empty(), c)])
    }

    /// The characteristic series of a single letter.
    pub fn letter(&self, c: char) -> Result<TruncatedSeries<S::Elem>> {
        let i = self.alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
        Ok(TruncatedSeries::from_pairs(
            &self.coef,
            self.alphabet.clone(),
            self.bound,
            [(Word::letter(i), self.coef.one())],
        ))
    }

    pub fn from_pairs(&self, pairs: impl IntoIterator<Item = (Word, S::Elem)>) -> TruncatedSeries<S::Elem> {
        TruncatedSeries::from_pairs(&self.coef, self.alphabet.clone(), self.bound, pairs)
    }

    pub fn coefficient(&self, a: &TruncatedSeries<S::Elem>, w: &Word) -> Result<S::Elem> {
        coefficient(&self.coef, a, w)
    }
}

impl<S: Semiring> Semiring for SeriesSemiring<S> {
    type Elem = TruncatedSeries<S::Elem>;

    fn zero(&self) -> Self::Elem {
        TruncatedSeries::zero(self.alphabet.clone(), self.bound)
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.coef.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        series_combine(&self.coef, SeriesOp::Add, a, b).expect("alphabets agree")
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        series_combine(&self.coef, SeriesOp::Mul, a, b).expect("alphabets agree")
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn from_nat(&self, n: &Nat) -> Self::Elem {
        self.constant(self.coef.from_nat(n))
    }

    fn is_commutative(&self) -> bool {
        self.alphabet.len() <= 1 && self.coef.is_commutative()
    }

    fn name(&self) -> String {
        format!("{}<<{}>>/{}", self.coef.name(), self.alphabet, self.bound)
    }
}

impl<S: StarSemiring> StarSemiring for SeriesSemiring<S> {
    fn in_star_domain(&self, a: &Self::Elem) -> bool {
        a.coeffs.get(&Word::empty()).is_none_or(|c| self.coef.in_star_domain(c))
    }

    fn star(&self, a: &Self::Elem) -> Result<Self::Elem> {
        series_star(&self.coef, a)
    }
}

impl<S: OrderedSemiring> OrderedSemiring for SeriesSemiring<S> {
    /// Pointwise order on the common truncation.
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        let bound = a.bound.min(b.bound);
        let zero = self.coef.zero();
        a.coeffs
            .range(..Word::first_of_len(bound + 1))
            .all(|(w, x)| self.coef.le(x, b.coeffs.get(w).unwrap_or(&zero)))
    }
}
