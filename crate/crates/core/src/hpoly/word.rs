use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the two generators of the free algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    /// The other letter.
    pub fn swap(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }

    fn bit(self) -> u64 {
        match self {
            Letter::X => 0,
            Letter::Y => 1,
        }
    }

    fn from_bit(b: u64) -> Letter {
        if b & 1 == 0 {
            Letter::X
        } else {
            Letter::Y
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A word over `{x, y}`, packed one bit per letter.
///
/// The first letter sits in the most significant used bit, `x = 0` and
/// `y = 1`, so words of equal length compare lexicographically as integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Word {
    bits: u64,
    len: u8,
}

impl Word {
    /// Longest representable word.
    pub const MAX_LEN: usize = 63;

    /// The empty word, i.e. the unit `1`.
    pub const fn empty() -> Word {
        Word { bits: 0, len: 0 }
    }

    pub const fn x() -> Word {
        Word { bits: 0, len: 1 }
    }

    pub const fn y() -> Word {
        Word { bits: 1, len: 1 }
    }

    pub fn letter(l: Letter) -> Word {
        Word {
            bits: l.bit(),
            len: 1,
        }
    }

    /// Builds a word from its packed form. Bits above `len` must be clear.
    pub fn from_bits(bits: u64, len: usize) -> Word {
        assert!(len <= Self::MAX_LEN, "word length {len} too large");
        debug_assert!(len == 64 || bits >> len == 0);
        Word {
            bits,
            len: len as u8,
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w = w.push(l);
        }
        w
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Letter at position `i`, counted from the left.
    pub fn at(&self, i: usize) -> Letter {
        assert!(i < self.len(), "letter index out of range");
        Letter::from_bit(self.bits >> (self.len() - 1 - i))
    }

    pub fn first(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.at(0))
    }

    pub fn last(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| Letter::from_bit(self.bits))
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| self.at(i))
    }

    /// Appends one letter on the right.
    pub fn push(self, l: Letter) -> Word {
        assert!(self.len() < Self::MAX_LEN, "word length overflow");
        Word {
            bits: (self.bits << 1) | l.bit(),
            len: self.len + 1,
        }
    }

    pub fn concat(self, other: Word) -> Word {
        let len = self.len() + other.len();
        assert!(len <= Self::MAX_LEN, "word length overflow");
        if self.is_empty() {
            return other;
        }
        Word {
            bits: (self.bits << other.len) | other.bits,
            len: len as u8,
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Word {
        assert!(n <= self.len());
        Word {
            bits: self.bits >> (self.len() - n),
            len: n as u8,
        }
    }

    /// The letters from position `i` on.
    pub fn suffix(&self, i: usize) -> Word {
        assert!(i <= self.len());
        let n = self.len() - i;
        Word {
            bits: self.bits & mask(n),
            len: n as u8,
        }
    }

    /// Drops the last letter.
    pub fn pop(&self) -> Option<(Word, Letter)> {
        let last = self.last()?;
        Some((
            Word {
                bits: self.bits >> 1,
                len: self.len - 1,
            },
            last,
        ))
    }

    pub fn reverse(&self) -> Word {
        let n = self.len();
        if n == 0 {
            return *self;
        }
        Word {
            bits: self.bits.reverse_bits() >> (64 - n),
            len: self.len,
        }
    }

    /// Exchanges `x` and `y` letter by letter.
    pub fn swap_letters(&self) -> Word {
        Word {
            bits: !self.bits & mask(self.len()),
            len: self.len,
        }
    }

    /// Image under the anti-automorphism exchanging `x` and `y`.
    pub fn dual(&self) -> Word {
        self.reverse().swap_letters()
    }

    /// Replaces the letter at position `i`.
    pub fn with_letter(&self, i: usize, l: Letter) -> Word {
        let shift = self.len() - 1 - i;
        let cleared = self.bits & !(1u64 << shift);
        Word {
            bits: cleared | (l.bit() << shift),
            len: self.len,
        }
    }

    pub fn count(&self, l: Letter) -> usize {
        let ones = self.bits.count_ones() as usize;
        match l {
            Letter::Y => ones,
            Letter::X => self.len() - ones,
        }
    }

    /// Starts with `x` and ends with `y`.
    pub fn in_xhy(&self) -> bool {
        self.first() == Some(Letter::X) && self.last() == Some(Letter::Y)
    }

    /// Constant or ends with `y`.
    pub fn in_h1(&self) -> bool {
        self.is_empty() || self.last() == Some(Letter::Y)
    }

    /// Constant or starts with `x` and ends with `y`.
    pub fn is_admissible(&self) -> bool {
        self.is_empty() || self.in_xhy()
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = Word> {
        assert!(n <= 24, "refusing to enumerate 2^{n} words");
        (0..1u64 << n).map(move |b| Word::from_bits(b, n))
    }

    /// The admissible words of length `n >= 2` (shape `x…y`), lexicographically.
    pub fn admissible_of_len(n: usize) -> impl Iterator<Item = Word> {
        assert!((2..=26).contains(&n));
        let inner = n - 2;
        (0..1u64 << inner).map(move |b| Word::from_bits((b << 1) | 1, n))
    }

    /// Words of length `n >= 1` ending in `y`, lexicographically.
    pub fn ending_in_y_of_len(n: usize) -> impl Iterator<Item = Word> {
        assert!((1..=25).contains(&n));
        (0..1u64 << (n - 1)).map(move |b| Word::from_bits((b << 1) | 1, n))
    }
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        let m = self.len.min(other.len) as usize;
        let a = self.bits >> (self.len() - m);
        let b = other.bits >> (other.len() - m);
        a.cmp(&b).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word string (use \"1\")".into()));
        }
        let n = s.chars().count();
        if n > Word::MAX_LEN {
            return Err(Error::WordTooLong(n));
        }
        let mut w = Word::empty();
        for c in s.chars() {
            let l = match c {
                'x' => Letter::X,
                'y' => Letter::Y,
                other => return Err(Error::Parse(format!("unexpected letter `{other}` in word"))),
            };
            w = w.push(l);
        }
        Ok(w)
    }
}
