//! Freely reduced words in the free group F_k, with a parseable surface
//! grammar and evaluation as word maps.
//!
//! Grammar: `word := term+`; `term := atom ('^' signed-int)?`;
//! `atom := gen | '(' word ')' | '[' word ',' word ']'`;
//! `gen := 'x' | 'y' | 'x' digits` with x = x1 and y = x2.
//! The commutator convention is `[u,v] = u^-1 v^-1 u v`.
//! Evaluation is left-to-right: the word `x y` maps (a, b) to a·b.

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use rand::Rng;

pub const MAX_RANK: u8 = 16;

/// A freely reduced word: letters are signed 1-based generator indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    k: u8,
    letters: Vec<i16>,
}

impl Word {
    /// The empty word in F_k.
    pub fn identity(k: u8) -> Result<Word> {
        check_rank(k)?;
        Ok(Word {
            k,
            letters: Vec::new(),
        })
    }

    /// Build from raw letters, reducing freely. Letters are ±1..=±k.
    pub fn from_letters(k: u8, letters: &[i16]) -> Result<Word> {
        check_rank(k)?;
        let mut w = Word::identity(k)?;
        for &l in letters {
            if l == 0 || l.unsigned_abs() > k as u16 {
                return Err(Error::parse(format!(
                    "letter {l} outside rank-{k} alphabet"
                )));
            }
            w.push_reduced(l);
        }
        Ok(w)
    }

    pub fn parse(text: &str, k: u8) -> Result<Word> {
        check_rank(k)?;
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0, k };
        let word = parser.word()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::parse(format!(
                "unexpected trailing input at token {:?}",
                parser.tokens[parser.pos]
            )));
        }
        Ok(word)
    }

    pub fn rank(&self) -> u8 {
        self.k
    }

    pub fn letters(&self) -> &[i16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generator indices (1-based) that actually occur.
    pub fn occurring(&self) -> Vec<u8> {
        let mut seen = [false; MAX_RANK as usize + 1];
        for &l in &self.letters {
            seen[l.unsigned_abs() as usize] = true;
        }
        (1..=self.k).filter(|&i| seen[i as usize]).collect()
    }

    fn push_reduced(&mut self, letter: i16) {
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    /// Signed count of occurrences of generator `i` (1-based).
    pub fn exponent_sum(&self, i: u8) -> Result<i64> {
        if i == 0 || i > self.k {
            return Err(Error::parse(format!(
                "generator index {i} out of range 1..={}",
                self.k
            )));
        }
        Ok(self
            .letters
            .iter()
            .filter(|l| l.unsigned_abs() == i as u16)
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum())
    }

    /// Concatenation, freely reduced.
    pub fn compose(&self, suffix: &Word) -> Result<Word> {
        if self.k != suffix.k {
            return Err(Error::mismatch(format!(
                "rank mismatch: {} vs {}",
                self.k, suffix.k
            )));
        }
        let mut out = self.clone();
        for &l in &suffix.letters {
            out.push_reduced(l);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Word {
        Word {
            k: self.k,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// m-fold repetition; negative m repeats the inverse.
    pub fn power(&self, m: i64) -> Word {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut out = Word {
            k: self.k,
            letters: Vec::new(),
        };
        for _ in 0..m.unsigned_abs() {
            for &l in &base.letters {
                out.push_reduced(l);
            }
        }
        out
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.inverse()
            .compose(&other.inverse())?
            .compose(self)?
            .compose(other)
    }

    /// Substitute `tuple[i-1]` for generator i and multiply left-to-right.
    pub fn evaluate(&self, tuple: &[Elem], g: &FiniteGroup) -> Result<Elem> {
        evaluate_letters(&self.letters, tuple, g)
    }
}

/// Evaluate a raw (possibly unreduced) letter sequence — the oracle against
/// which built-in reduction is tested.
pub fn evaluate_letters(letters: &[i16], tuple: &[Elem], g: &FiniteGroup) -> Result<Elem> {
    let mut acc = g.identity();
    for &l in letters {
        let idx = l.unsigned_abs() as usize - 1;
        let Some(&e) = tuple.get(idx) else {
            return Err(Error::mismatch(format!(
                "word uses generator {} but the tuple has only {} entries",
                idx + 1,
                tuple.len()
            )));
        };
        if e.0 as u64 >= g.order() {
            return Err(Error::mismatch(format!(
                "element index {} outside group of order {}",
                e.0,
                g.order()
            )));
        }
        let factor = if l > 0 { e } else { g.inv(e) };
        acc = g.mul(acc, factor);
    }
    Ok(acc)
}

fn check_rank(k: u8) -> Result<()> {
    if k == 0 || k > MAX_RANK {
        return Err(Error::unsupported(format!(
            "rank {k} outside supported range 1..={MAX_RANK}"
        )));
    }
    Ok(())
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = match l.unsigned_abs() {
                1 => "x".to_string(),
                2 => "y".to_string(),
                n => format!("x{n}"),
            };
            let exp = if l > 0 { run as i64 } else { -(run as i64) };
            if exp == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Gen(u16),
    Int(i64),
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '[' => {
                tokens.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                tokens.push(Token::RBracket);
                i += 1;
            }
            ',' => {
                tokens.push(Token::Comma);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start {
                    tokens.push(Token::Gen(1));
                } else {
                    let n: u16 = chars[start..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| Error::parse("generator subscript too large"))?;
                    tokens.push(Token::Gen(n));
                }
            }
            'y' => {
                tokens.push(Token::Gen(2));
                i += 1;
            }
            '-' | '0'..='9' => {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                let digits = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits {
                    return Err(Error::parse("dangling '-' without digits"));
                }
                let n: i64 = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::parse("integer literal out of range"))?;
                tokens.push(Token::Int(n));
            }
            other => {
                return Err(Error::parse(format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    k: u8,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    /// word := term* (empty input names the identity)
    fn word(&mut self) -> Result<Word> {
        let mut out = Word::identity(self.k)?;
        loop {
            match self.peek() {
                None | Some(Token::RParen) | Some(Token::RBracket) | Some(Token::Comma) => {
                    return Ok(out)
                }
                _ => {
                    let t = self.term()?;
                    out = out.compose(&t)?;
                }
            }
        }
    }

    /// term := atom ('^' signed-int)?
    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(&Token::Int(n)) => {
                    self.pos += 1;
                    Ok(atom.power(n))
                }
                other => Err(Error::parse(format!(
                    "expected integer exponent after '^', found {other:?}"
                ))),
            }
        } else {
            Ok(atom)
        }
    }

    /// atom := gen | '(' word ')' | '[' word ',' word ']'
    fn atom(&mut self) -> Result<Word> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Gen(n)) => {
                self.pos += 1;
                if n == 0 || n > self.k as u16 {
                    return Err(Error::parse(format!(
                        "generator x{n} exceeds rank {}",
                        self.k
                    )));
                }
                Word::from_letters(self.k, &[n as i16])
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(Error::parse("unbalanced '(': expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::LBracket) => {
                self.pos += 1;
                let left = self.word()?;
                if self.peek() != Some(&Token::Comma) {
                    return Err(Error::parse("expected ',' inside commutator"));
                }
                self.pos += 1;
                let right = self.word()?;
                if self.peek() != Some(&Token::RBracket) {
                    return Err(Error::parse("unbalanced '[': expected ']'"));
                }
                self.pos += 1;
                left.commutator(&right)
            }
            other => Err(Error::parse(format!(
                "expected a generator, '(' or '[', found {other:?}"
            ))),
        }
    }
}

/// A uniformly random freely reduced word of exactly `len` letters:
/// first letter uniform over the 2k signed letters, each subsequent letter
/// uniform over the 2k−1 letters that do not cancel the previous one.
pub fn random_reduced(k: u8, len: usize, rng: &mut impl Rng) -> Result<Word> {
    check_rank(k)?;
    let alphabet: Vec<i16> = (1..=k as i16).flat_map(|i| [i, -i]).collect();
    let mut letters: Vec<i16> = Vec::with_capacity(len);
    for _ in 0..len {
        let choices: Vec<i16> = alphabet
            .iter()
            .copied()
            .filter(|&l| letters.last() != Some(&-l))
            .collect();
        letters.push(choices[rng.random_range(0..choices.len())]);
    }
    Word::from_letters(k, &letters)
}

/// Every raw letter string (reduced or not) over the signed rank-k alphabet
/// with length in `0..=max_len`, in length-then-lexicographic order.
pub fn all_letter_strings(k: u8, max_len: usize) -> Vec<Vec<i16>> {
    let alphabet: Vec<i16> = (1..=k as i16).flat_map(|i| [i, -i]).collect();
    let mut out: Vec<Vec<i16>> = vec![Vec::new()];
    let mut layer: Vec<Vec<i16>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for s in &layer {
            for &l in &alphabet {
                let mut t = s.clone();
                t.push(l);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
