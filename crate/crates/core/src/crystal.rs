//! The crystal `B_l` of the `l`-th symmetric power for affine `sl_n`.
//!
//! An element of `B_l` is a weakly increasing word of length `l` over the
//! alphabet `{1, ..., n}`. The classical operators `e_i`, `f_i`
//! (`1 <= i < n`) move a single letter between `i` and `i + 1`; the affine
//! operators `e_0`, `f_0` rotate a letter between the two ends of the word.

use std::fmt;

use crate::error::{Error, Result};

/// A letter of the alphabet `{1, ..., n}`.
pub type Letter = u8;

/// The rank parameter `n` shared by every crystal in a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrystalParams {
    n: u8,
}

impl CrystalParams {
    pub fn new(n: u32) -> Result<Self> {
        if !(2..=u8::MAX as u32).contains(&n) {
            return Err(Error::InvalidRank(n));
        }
        Ok(CrystalParams { n: n as u8 })
    }

    /// Parameters for the alphabet `{1, ..., n-1}` that labels solitons.
    ///
    /// For `n = 2` this is the degenerate one-letter alphabet; only the
    /// pairing rule (not the affine operators) is meaningful there.
    pub(crate) fn reduced(self) -> Self {
        CrystalParams { n: self.n - 1 }
    }

    #[inline]
    pub fn n(self) -> u8 {
        self.n
    }

    /// The vacuum letter `n`.
    #[inline]
    pub fn vacuum(self) -> Letter {
        self.n
    }

    pub fn check_color(self, color: u8) -> Result<()> {
        if color >= self.n {
            return Err(Error::InvalidColor { color, n: self.n });
        }
        Ok(())
    }

    pub fn check_letter(self, letter: Letter) -> Result<()> {
        if letter == 0 || letter > self.n {
            return Err(Error::LetterOutOfRange {
                letter: letter as u32,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn check_element(self, b: &Element) -> Result<()> {
        // Elements are sorted, so checking the ends suffices.
        self.check_letter(b.first())?;
        self.check_letter(b.last())
    }

    /// Builds an element, validating order and range.
    pub fn element(self, letters: Vec<Letter>) -> Result<Element> {
        let b = Element::new(letters)?;
        self.check_element(&b)?;
        Ok(b)
    }

    /// `(n^l)`, the highest element for `e_0`-free vacuum.
    pub fn vacuum_element(self, l: usize) -> Element {
        assert!(l >= 1, "elements have at least one letter");
        Element(vec![self.n; l])
    }

    pub fn parse_element(self, text: &str) -> Result<Element> {
        let b = Element::parse(text)?;
        self.check_element(&b)
            .map_err(|e| Error::parse(1, 1, e.to_string()))?;
        Ok(b)
    }

    /// All of `B_l` in lexicographic order.
    pub fn elements(self, l: usize) -> Elements {
        Elements {
            n: self.n,
            next: (l >= 1).then(|| vec![1; l]),
        }
    }

    /// Number of elements of `B_l`, i.e. `binom(n + l - 1, l)`.
    pub fn cardinality(self, l: usize) -> usize {
        let n = self.n as usize;
        (1..=l).fold(1usize, |acc, k| acc * (n - 1 + k) / k)
    }

    /// `epsilon_i(b)`: the number of letters `i + 1` in `b`.
    pub fn epsilon(self, b: &Element, color: u8) -> Result<usize> {
        self.check_color(color)?;
        Ok(epsilon_raw(b, color))
    }

    /// `phi_i(b)`: the number of letters `i` in `b` (letters `n` for `i = 0`).
    pub fn phi(self, b: &Element, color: u8) -> Result<usize> {
        self.check_color(color)?;
        Ok(phi_raw(b, color, self.n))
    }

    pub fn e(self, b: &Element, color: u8) -> Result<Option<Element>> {
        self.check_color(color)?;
        Ok(raise(b, color, self.n))
    }

    pub fn f(self, b: &Element, color: u8) -> Result<Option<Element>> {
        self.check_color(color)?;
        Ok(lower(b, color, self.n))
    }
}

/// Count of `letter` in a sorted word.
#[inline]
pub(crate) fn count(b: &Element, letter: Letter) -> usize {
    b.0.iter().filter(|&&x| x == letter).count()
}

#[inline]
pub(crate) fn epsilon_raw(b: &Element, color: u8) -> usize {
    count(b, color + 1)
}

#[inline]
pub(crate) fn phi_raw(b: &Element, color: u8, n: u8) -> usize {
    if color == 0 {
        count(b, n)
    } else {
        count(b, color)
    }
}

pub(crate) fn raise(b: &Element, color: u8, n: u8) -> Option<Element> {
    let mut letters = b.0.clone();
    if color == 0 {
        if letters[0] != 1 {
            return None;
        }
        letters.remove(0);
        letters.push(n);
    } else {
        let pos = letters.iter().position(|&x| x == color + 1)?;
        letters[pos] = color;
    }
    Some(Element(letters))
}

pub(crate) fn lower(b: &Element, color: u8, n: u8) -> Option<Element> {
    let mut letters = b.0.clone();
    if color == 0 {
        if *letters.last()? != n {
            return None;
        }
        letters.pop();
        letters.insert(0, 1);
    } else {
        let pos = letters.iter().rposition(|&x| x == color)?;
        letters[pos] = color + 1;
    }
    Some(Element(letters))
}

/// A weakly increasing word `(nu_1 <= ... <= nu_l)`, an element of `B_l`.
///
/// The alphabet bound `n` is not stored; use [`CrystalParams::element`] to
/// validate against it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<Letter>);

impl Element {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyElement);
        }
        if let Some(&zero) = letters.iter().find(|&&x| x == 0) {
            return Err(Error::LetterOutOfRange {
                letter: zero as u32,
                n: Letter::MAX,
            });
        }
        if letters.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotWeaklyIncreasing(letters));
        }
        Ok(Element(letters))
    }

    /// Sorts arbitrary letters into an element. Panics on an empty input.
    pub(crate) fn from_multiset(mut letters: Vec<Letter>) -> Self {
        debug_assert!(!letters.is_empty());
        letters.sort_unstable();
        Element(letters)
    }

    /// Wraps letters that are already known to be sorted and nonempty.
    pub(crate) fn from_sorted(letters: Vec<Letter>) -> Self {
        debug_assert!(!letters.is_empty() && letters.windows(2).all(|w| w[0] <= w[1]));
        Element(letters)
    }

    /// Parses `"11334"` or `"1,1,3,3,4"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text);
        let mut letters = Vec::new();
        if text.contains(',') {
            let mut column = 1;
            for piece in text.split(',') {
                let value: u32 = piece.trim().parse().map_err(|_| {
                    Error::parse(1, column, format!("expected a letter, found {piece:?}"))
                })?;
                if value == 0 || value > Letter::MAX as u32 {
                    return Err(Error::parse(
                        1,
                        column,
                        format!("letter {value} out of range"),
                    ));
                }
                letters.push(value as Letter);
                column += piece.len() + 1;
            }
        } else {
            for (k, ch) in text.chars().enumerate() {
                match ch.to_digit(10) {
                    Some(d) if d >= 1 => letters.push(d as Letter),
                    _ => {
                        return Err(Error::parse(1, k + 1, format!("invalid letter {ch:?}")));
                    }
                }
            }
        }
        if letters.is_empty() {
            return Err(Error::parse(1, 1, "empty element"));
        }
        if letters.windows(2).any(|w| w[0] > w[1]) {
            let at = letters.windows(2).position(|w| w[0] > w[1]).unwrap() + 2;
            return Err(Error::parse(1, at, "letters are not weakly increasing"));
        }
        Ok(Element(letters))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    #[inline]
    pub fn first(&self) -> Letter {
        self.0[0]
    }

    #[inline]
    pub fn last(&self) -> Letter {
        self.0[self.0.len() - 1]
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Letter multiplicities indexed by letter (index 0 unused).
    pub fn content(&self, n: u8) -> Vec<usize> {
        let mut counts = vec![0; n as usize + 1];
        for &x in &self.0 {
            counts[x as usize] += 1;
        }
        counts
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x <= 9) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
        } else {
            for (k, x) in self.0.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Lexicographic enumeration of `B_l`.
pub struct Elements {
    n: u8,
    next: Option<Vec<Letter>>,
}

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let current = self.next.take()?;
        // Successor: bump the rightmost letter below n and flatten the tail.
        if let Some(pos) = current.iter().rposition(|&x| x < self.n) {
            let mut succ = current.clone();
            let v = succ[pos] + 1;
            succ[pos..].iter_mut().for_each(|x| *x = v);
            self.next = Some(succ);
        }
        Some(Element(current))
    }
}
