//! Words over the ordered alphabet `A_n = {1 < ... < n}` and over the
//! involution alphabet `X ∪ X*`, terms with star, and the word statistics
//! (content, occurrence counts, restrictions, initial and final parts) that
//! the rest of the crate is built on.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of `A_n`.
pub type Letter = u8;

/// Word over `A_n`, with the rank carried alongside.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AWord {
    rank: u8,
    letters: Vec<Letter>,
}

impl AWord {
    pub fn new(rank: u8, letters: Vec<Letter>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::BadRank { rank: 0, min: 1 });
        }
        for (pos, &a) in letters.iter().enumerate() {
            if a == 0 || a > rank {
                return Err(Error::LetterOutOfRange { pos, letter: a as u64, rank });
            }
        }
        Ok(AWord { rank, letters })
    }

    pub fn empty(rank: u8) -> Self {
        assert!(rank >= 1);
        AWord { rank, letters: Vec::new() }
    }

    /// Parses a digit string (rank at most 9) or a comma/whitespace separated
    /// list of integers.
    pub fn parse(text: &str, rank: u8) -> Result<Self> {
        if rank == 0 {
            return Err(Error::BadRank { rank: 0, min: 1 });
        }
        let text = text.trim();
        let separated = text.contains(',') || text.contains(char::is_whitespace);
        let mut letters = Vec::new();
        if separated || (rank > 9 && !text.is_empty()) {
            for (pos, tok) in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).enumerate() {
                let value: u64 = tok.parse().map_err(|_| Error::Parse {
                    pos,
                    msg: format!("token {tok:?} is not a positive integer"),
                })?;
                if value == 0 || value > rank as u64 {
                    return Err(Error::LetterOutOfRange { pos, letter: value, rank });
                }
                letters.push(value as Letter);
            }
        } else {
            for (pos, c) in text.chars().enumerate() {
                let value = c.to_digit(10).ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })? as u64;
                if value == 0 || value > rank as u64 {
                    return Err(Error::LetterOutOfRange { pos, letter: value, rank });
                }
                letters.push(value as Letter);
            }
        }
        Ok(AWord { rank, letters })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; both words must share a rank.
    pub fn concat(&self, other: &AWord) -> Result<AWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(AWord { rank: self.rank, letters })
    }

    /// Every word of `A_n^{≤ max_len}` in length-then-lexicographic order.
    pub fn enumerate(rank: u8, max_len: usize) -> Vec<AWord> {
        let mut out = vec![AWord::empty(rank)];
        let mut layer = vec![Vec::<Letter>::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * rank as usize);
            for w in &layer {
                for a in 1..=rank {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().map(|l| AWord { rank, letters: l.clone() }));
            layer = next;
        }
        out
    }
}

impl fmt::Display for AWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        if self.rank <= 9 {
            for a in &self.letters {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|a| a.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

#[derive(Default)]
struct Interner {
    ids: HashMap<Arc<str>, u32>,
    names: Vec<Arc<str>>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// A base variable of `X`, interned by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseVar(u32);

impl BaseVar {
    pub fn new(name: &str) -> BaseVar {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return BaseVar(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return BaseVar(id);
        }
        let id = table.names.len() as u32;
        let name: Arc<str> = Arc::from(name);
        table.names.push(name.clone());
        table.ids.insert(name, id);
        BaseVar(id)
    }

    pub fn name(self) -> Arc<str> {
        interner().read().unwrap().names[self.0 as usize].clone()
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

/// Sorts base variables by name; the order used for all reported output.
pub fn sort_by_name(vars: &mut [BaseVar]) {
    vars.sort_by_cached_key(|v| v.name());
}

/// A variable of `X ∪ X*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IVar {
    pub base: BaseVar,
    pub starred: bool,
}

impl IVar {
    pub fn plain(name: &str) -> IVar {
        IVar { base: BaseVar::new(name), starred: false }
    }

    pub fn starred(name: &str) -> IVar {
        IVar { base: BaseVar::new(name), starred: true }
    }

    pub fn star(self) -> IVar {
        IVar { base: self.base, starred: !self.starred }
    }

    pub fn bar(self) -> IVar {
        IVar { base: self.base, starred: false }
    }

    /// `(name, starred)`: the deterministic ordering key.
    pub fn sort_key(self) -> (Arc<str>, bool) {
        (self.base.name(), self.starred)
    }
}

impl fmt::Display for IVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base.name())?;
        if self.starred {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// A word over `X ∪ X*`; the empty word is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IWord(pub Vec<IVar>);

impl IWord {
    pub fn new(letters: Vec<IVar>) -> Self {
        IWord(letters)
    }

    /// Parses a term and flattens it.
    pub fn parse(text: &str) -> Result<IWord> {
        Ok(flatten(&parse_term(text)?))
    }

    pub fn letters(&self) -> &[IVar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &IWord) -> IWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IWord(v)
    }

    pub fn has_star(&self) -> bool {
        self.0.iter().any(|v| v.starred)
    }

    /// Distinct base variables, sorted by name.
    pub fn bases(&self) -> Vec<BaseVar> {
        let set: BTreeSet<BaseVar> = self.0.iter().map(|v| v.base).collect();
        let mut out: Vec<BaseVar> = set.into_iter().collect();
        sort_by_name(&mut out);
        out
    }
}

impl fmt::Display for IWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Terms over `X`: closed under concatenation and star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Atom(IVar),
    Concat(Vec<Term>),
    Star(Box<Term>),
}

/// Grammar: juxtaposition is concatenation, postfix `*` is star and postfix
/// `^k` or superscript digits (`x²`) a positive power, both binding tighter
/// than concatenation; parentheses group, identifiers are
/// `[A-Za-z_][A-Za-z0-9_]*`.
pub fn parse_term(text: &str) -> Result<Term> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = TermParser { chars: &chars, pos: 0 };
    p.skip_ws();
    if p.pos == chars.len() {
        return Err(Error::Parse { pos: 0, msg: "empty term".into() });
    }
    let t = p.sequence()?;
    p.skip_ws();
    if p.pos < chars.len() {
        return Err(Error::Parse { pos: p.pos, msg: "unmatched ')'".into() });
    }
    Ok(t)
}

struct TermParser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Term> {
        let start = self.pos;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                _ => items.push(self.factor()?),
            }
        }
        match items.len() {
            0 => Err(Error::Parse { pos: start, msg: "empty group".into() }),
            1 => Ok(items.pop().unwrap()),
            _ => Ok(Term::Concat(items)),
        }
    }

    fn factor(&mut self) -> Result<Term> {
        let mut t = self.primary()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            let k = match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    t = match t {
                        Term::Atom(v) => Term::Atom(v.star()),
                        other => Term::Star(Box::new(other)),
                    };
                    continue;
                }
                Some('^') => {
                    self.pos += 1;
                    self.exponent(|c| c.to_digit(10))
                }
                Some(c) if superscript(c).is_some() => self.exponent(superscript),
                _ => break,
            };
            match k {
                Some(k) if k > 0 => t = Term::Concat(vec![t; k]),
                _ => return Err(Error::Parse { pos: at, msg: "exponent must be a positive integer".into() }),
            }
        }
        Ok(t)
    }

    fn exponent(&mut self, digit: impl Fn(char) -> Option<u32>) -> Option<usize> {
        let mut k: Option<usize> = None;
        while let Some(d) = self.peek().and_then(&digit) {
            k = Some(k.unwrap_or(0).checked_mul(10)?.checked_add(d as usize)?);
            self.pos += 1;
        }
        k
    }

    fn primary(&mut self) -> Result<Term> {
        let pos = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sequence()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse { pos, msg: "unbalanced '('".into() });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('*') => Err(Error::Parse { pos, msg: "dangling '*'".into() }),
            Some(c) if c.is_ascii_digit() => {
                Err(Error::Parse { pos, msg: "digits alone are not variables".into() })
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = self.pos;
                while end < self.chars.len() && (self.chars[end].is_ascii_alphanumeric() || self.chars[end] == '_') {
                    end += 1;
                }
                let name: String = self.chars[self.pos..end].iter().collect();
                self.pos = end;
                Ok(Term::Atom(IVar::plain(&name)))
            }
            Some(c) => Err(Error::Parse { pos, msg: format!("unexpected character {c:?}") }),
            None => Err(Error::Parse { pos, msg: "unexpected end of input".into() }),
        }
    }
}

fn superscript(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c).map(|d| d as u32)
}

/// The unique word of a term modulo `(x*)* = x` and `(xy)* = y*x*`.
pub fn flatten(t: &Term) -> IWord {
    fn go(t: &Term, out: &mut Vec<IVar>) {
        match t {
            Term::Atom(v) => out.push(*v),
            Term::Concat(ts) => ts.iter().for_each(|t| go(t, out)),
            Term::Star(inner) => {
                let mut sub = Vec::new();
                go(inner, &mut sub);
                out.extend(star_word(&IWord(sub)).0);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    IWord(out)
}

/// Formal involution: reverse and toggle every star.
pub fn star_word(u: &IWord) -> IWord {
    IWord(u.0.iter().rev().map(|v| v.star()).collect())
}

pub fn reverse(u: &IWord) -> IWord {
    IWord(u.0.iter().rev().copied().collect())
}

pub fn content(u: &IWord) -> BTreeSet<IVar> {
    u.0.iter().copied().collect()
}

pub fn bar(u: &IWord) -> IWord {
    IWord(u.0.iter().map(|v| v.bar()).collect())
}

pub fn occ(x: IVar, u: &IWord) -> usize {
    u.0.iter().filter(|&&v| v == x).count()
}

/// Occurrence counts per exact letter.
pub fn occurrences(u: &IWord) -> BTreeMap<IVar, usize> {
    let mut m = BTreeMap::new();
    for &v in &u.0 {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// `u[x_1, ..., x_k]`: keep the letters whose base is in `bases`.
pub fn restrict(u: &IWord, bases: &[BaseVar]) -> IWord {
    IWord(u.0.iter().copied().filter(|v| bases.contains(&v.base)).collect())
}

/// Occurrences of `x` strictly before the first occurrence of `y`.
pub fn occ_before(y: IVar, x: IVar, u: &IWord) -> Result<usize> {
    let first = u.0.iter().position(|&v| v == y).ok_or_else(|| Error::AbsentPivot(y.to_string()))?;
    Ok(u.0[..first].iter().filter(|&&v| v == x).count())
}

/// Occurrences of `x` strictly after the last occurrence of `y`.
pub fn occ_after(y: IVar, x: IVar, u: &IWord) -> Result<usize> {
    let last = u.0.iter().rposition(|&v| v == y).ok_or_else(|| Error::AbsentPivot(y.to_string()))?;
    Ok(u.0[last + 1..].iter().filter(|&&v| v == x).count())
}

/// `ip(u)`: the occurrences at which neither the letter nor its star partner
/// occurred earlier.
pub fn initial_part(u: &IWord) -> IWord {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &v in &u.0 {
        if seen.insert(v.base) {
            out.push(v);
        }
    }
    IWord(out)
}

/// `fp(u)`: the mirror of [`initial_part`].
pub fn final_part(u: &IWord) -> IWord {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &v in u.0.iter().rev() {
        if seen.insert(v.base) {
            out.push(v);
        }
    }
    out.reverse();
    IWord(out)
}

/// A word identity `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: IWord,
    pub rhs: IWord,
}

impl Identity {
    pub fn new(lhs: IWord, rhs: IWord) -> Self {
        Identity { lhs, rhs }
    }

    /// Parses `s ≈ t` (or `s ~= t`); both sides are terms and get flattened.
    pub fn parse(text: &str) -> Result<Identity> {
        let (sep_at, sep_len) = match (text.find('≈'), text.find("~=")) {
            (Some(i), None) => (i, '≈'.len_utf8()),
            (None, Some(i)) => (i, 2),
            (Some(_), Some(_)) => {
                return Err(Error::Parse { pos: 0, msg: "mixed identity separators".into() })
            }
            (None, None) => {
                return Err(Error::Parse { pos: 0, msg: "expected '≈' or '~=' between two terms".into() })
            }
        };
        let (left, right) = (&text[..sep_at], &text[sep_at + sep_len..]);
        if right.contains('≈') || right.contains("~=") {
            return Err(Error::Parse { pos: text[..sep_at].chars().count(), msg: "more than one separator".into() });
        }
        let offset = left.chars().count() + text[sep_at..sep_at + sep_len].chars().count();
        let lhs = IWord::parse(left)?;
        let rhs = IWord::parse(right).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?;
        Ok(Identity { lhs, rhs })
    }

    /// Distinct base variables of both sides, sorted by name.
    pub fn bases(&self) -> Vec<BaseVar> {
        self.lhs.concat(&self.rhs).bases()
    }

    pub fn reversed(&self) -> Identity {
        Identity { lhs: reverse(&self.lhs), rhs: reverse(&self.rhs) }
    }

    pub fn starred(&self) -> Identity {
        Identity { lhs: star_word(&self.lhs), rhs: star_word(&self.rhs) }
    }

    pub fn swapped(&self) -> Identity {
        Identity { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    pub fn restricted(&self, bases: &[BaseVar]) -> Identity {
        Identity { lhs: restrict(&self.lhs, bases), rhs: restrict(&self.rhs, bases) }
    }

    pub fn is_plain(&self) -> bool {
        !self.lhs.has_star() && !self.rhs.has_star()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~= {}", self.lhs, self.rhs)
    }
}
