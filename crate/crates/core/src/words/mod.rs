//! Words over a finite alphabet and the congruences `≡ₙᴿ`, `≡ₙᴸ`, `≡ₙ`.

pub mod definition;
mod generate;
mod quotient;
mod signature;

use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};

pub use generate::{generate_equiv_pair, PairGenerator};
pub use quotient::{
    build_quotient, QuotientMonoid, QuotientReport, DEFAULT_CLASS_CAP, MAX_TABLE_CLASSES,
};
pub use signature::{equiv, l_equiv, r_equiv, ClassKey, SigId, SigNode, SignatureInterner};

/// A letter is an index into its [`Alphabet`].
pub type Letter = u8;

/// At most 64 letters, so contents fit in a `u64` mask.
pub const MAX_ALPHABET: usize = 64;

/// A finite set of letters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterSet(pub u64);

impl LetterSet {
    pub fn contains(self, a: Letter) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn insert(&mut self, a: Letter) {
        self.0 |= 1 << a;
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..MAX_ALPHABET as Letter).filter(move |&a| self.contains(a))
    }
}

/// Ordered set of distinct display characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    pub fn new(chars: &str) -> Result<Self> {
        let chars: Vec<char> = chars.chars().collect();
        if chars.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "{} letters, at most {MAX_ALPHABET} supported",
                chars.len()
            )));
        }
        for (i, c) in chars.iter().enumerate() {
            if chars[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("letter '{c}' repeated")));
            }
        }
        Ok(Alphabet { chars })
    }

    /// The first `size` lowercase letters.
    pub fn standard(size: usize) -> Result<Self> {
        if size > 26 {
            return Err(Error::InvalidAlphabet(format!(
                "no standard alphabet with {size} letters"
            )));
        }
        Ok(Alphabet {
            chars: (0..size as u8).map(|i| (b'a' + i) as char).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.chars.len() as Letter
    }

    pub fn char_of(&self, a: Letter) -> char {
        self.chars[a as usize]
    }

    pub fn letter_of(&self, c: char) -> Option<Letter> {
        self.chars.iter().position(|&d| d == c).map(|i| i as Letter)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                self.letter_of(c).ok_or_else(|| Error::ParseError {
                    position: i,
                    message: format!("'{c}' is not in the alphabet"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.char_of(a)).collect()
    }
}

/// A finite word; the empty word is the empty sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &a in &self.0 {
            if (a as usize) < 26 {
                write!(f, "{}", (b'a' + a) as char)?;
            } else {
                write!(f, "[{a}]")?;
            }
        }
        Ok(())
    }
}

/// The set of letters occurring in `u`.
pub fn content(u: &[Letter]) -> LetterSet {
    let mut s = LetterSet::default();
    for &a in u {
        s.insert(a);
    }
    s
}

/// `u = prefix · a · suffix` with `a` not in the prefix.
pub fn split_first(u: &[Letter], a: Letter) -> Result<(Word, Word)> {
    let p = u
        .iter()
        .position(|&b| b == a)
        .ok_or(Error::LetterAbsent(a as usize))?;
    Ok((Word::from_letters(&u[..p]), Word::from_letters(&u[p + 1..])))
}

/// `u = prefix · a · suffix` with `a` not in the suffix.
pub fn split_last(u: &[Letter], a: Letter) -> Result<(Word, Word)> {
    let p = u
        .iter()
        .rposition(|&b| b == a)
        .ok_or(Error::LetterAbsent(a as usize))?;
    Ok((Word::from_letters(&u[..p]), Word::from_letters(&u[p + 1..])))
}

pub fn reverse(u: &[Letter]) -> Word {
    Word(u.iter().rev().copied().collect())
}

/// Which congruence a quotient or class key refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    R,
    L,
    RL,
}

impl Mode {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "R" | "r" => Some(Mode::R),
            "L" | "l" => Some(Mode::L),
            "RL" | "rl" | "LR" | "lr" => Some(Mode::RL),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::new("abc").unwrap().parse_word(s).unwrap()
    }

    #[test]
    fn contents() {
        assert!(content(&w("")).is_empty());
        assert_eq!(content(&w("abab")).iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(content(&w("aaa")).len(), 1);
    }

    #[test]
    fn splits() {
        assert_eq!(split_first(&w("abab"), 1).unwrap(), (w("a"), w("ab")));
        assert_eq!(split_last(&w("abab"), 0).unwrap(), (w("ab"), w("b")));
        assert_eq!(split_first(&w("a"), 0).unwrap(), (w(""), w("")));
        assert_eq!(split_first(&w("ab"), 2), Err(Error::LetterAbsent(2)));
    }

    #[test]
    fn reversal() {
        assert_eq!(reverse(&w("")), w(""));
        assert_eq!(reverse(&w("ab")), w("ba"));
        assert_eq!(reverse(&reverse(&w("abcca"))), w("abcca"));
    }

    #[test]
    fn alphabets() {
        assert!(Alphabet::new("aba").is_err());
        let a = Alphabet::new("xy").unwrap();
        assert_eq!(a.render(&a.parse_word("yxy").unwrap()), "yxy");
        assert!(matches!(
            a.parse_word("xz"),
            Err(Error::ParseError { position: 1, .. })
        ));
        assert_eq!(w("").to_string(), "1");
    }
}
