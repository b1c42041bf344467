//! Box-ball states: finitely supported words in `B^{⊗Z}`.
//!
//! A state is stored as a window of cells starting at an absolute `origin`;
//! everything outside the window is the vacuum letter `n`. Two states are
//! equal when they agree as infinite configurations, so vacuum padding is
//! never significant.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::crystal::{CrystalParams, Letter};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct State {
    params: CrystalParams,
    cells: Vec<Letter>,
    origin: i64,
}

impl State {
    pub fn new(params: CrystalParams, cells: Vec<Letter>, origin: i64) -> Result<Self> {
        cells.iter().try_for_each(|&c| params.check_letter(c))?;
        Ok(State {
            params,
            cells,
            origin,
        })
    }

    pub(crate) fn from_raw(params: CrystalParams, cells: Vec<Letter>, origin: i64) -> Self {
        State {
            params,
            cells,
            origin,
        }
    }

    /// An all-vacuum window of the given width.
    pub fn vacuum(params: CrystalParams, width: usize) -> Self {
        State::from_raw(params, vec![params.vacuum(); width], 0)
    }

    /// Parses one line of dot notation, e.g. `"332...11...2"` or
    /// `"@5 .33.1"`. For `n > 9` cells are comma-separated integers or `.`.
    pub fn parse(params: CrystalParams, line: &str) -> Result<Self> {
        let text = line.trim_end();
        let mut origin = 0;
        let mut body = text;
        let mut offset = 0;
        if let Some(rest) = text.strip_prefix('@') {
            let digits_end = rest
                .char_indices()
                .find(|&(k, c)| !(c.is_ascii_digit() || (k == 0 && c == '-')))
                .map_or(rest.len(), |(k, _)| k);
            origin = rest[..digits_end]
                .parse()
                .map_err(|_| Error::parse(1, 2, "expected an integer origin after '@'"))?;
            let after = &rest[digits_end..];
            let trimmed = after.trim_start();
            offset = 1 + digits_end + (after.len() - trimmed.len());
            body = trimmed;
        }
        let vacuum = params.vacuum();
        let mut cells = Vec::with_capacity(body.len());
        if body.contains(',') {
            let mut column = offset + 1;
            for token in body.split(',') {
                let t = token.trim();
                if t == "." {
                    cells.push(vacuum);
                } else {
                    let value: u32 = t
                        .parse()
                        .map_err(|_| Error::parse(1, column, format!("invalid cell {t:?}")))?;
                    if value == 0 || value > params.n() as u32 {
                        return Err(Error::parse(
                            1,
                            column,
                            format!("letter {value} out of range 1..={}", params.n()),
                        ));
                    }
                    cells.push(value as Letter);
                }
                column += token.len() + 1;
            }
        } else {
            for (k, ch) in body.chars().enumerate() {
                let column = offset + k + 1;
                let letter = match ch {
                    '.' => vacuum,
                    _ => match ch.to_digit(10) {
                        Some(d) if d >= 1 && d <= params.n() as u32 => d as Letter,
                        _ => {
                            return Err(Error::parse(
                                1,
                                column,
                                format!("invalid cell {ch:?} for n = {}", params.n()),
                            ))
                        }
                    },
                };
                cells.push(letter);
            }
        }
        Ok(State::from_raw(params, cells, origin))
    }

    pub fn params(&self) -> CrystalParams {
        self.params
    }

    pub fn cells(&self) -> &[Letter] {
        &self.cells
    }

    /// Absolute index of `cells()[0]`.
    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// One past the absolute index of the last stored cell.
    pub fn end(&self) -> i64 {
        self.origin + self.cells.len() as i64
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn letter_at(&self, position: i64) -> Letter {
        let k = position - self.origin;
        if k < 0 || k >= self.cells.len() as i64 {
            self.params.vacuum()
        } else {
            self.cells[k as usize]
        }
    }

    pub fn nonvacuum_count(&self) -> usize {
        let v = self.params.vacuum();
        self.cells.iter().filter(|&&c| c != v).count()
    }

    pub fn is_vacuum(&self) -> bool {
        self.nonvacuum_count() == 0
    }

    /// Absolute positions of the first and last non-vacuum cells.
    pub fn support(&self) -> Option<(i64, i64)> {
        let v = self.params.vacuum();
        let first = self.cells.iter().position(|&c| c != v)?;
        let last = self.cells.iter().rposition(|&c| c != v)?;
        Some((self.origin + first as i64, self.origin + last as i64))
    }

    /// Drops all outer vacuum. An all-vacuum state trims to an empty window
    /// at origin 0.
    pub fn trimmed(&self) -> State {
        match self.support() {
            Some((a, b)) => self.window(a, b + 1),
            None => State::from_raw(self.params, Vec::new(), 0),
        }
    }

    /// The cells in the absolute range `[start, end)`.
    pub fn window(&self, start: i64, end: i64) -> State {
        let cells = (start..end.max(start)).map(|p| self.letter_at(p)).collect();
        State::from_raw(self.params, cells, start)
    }

    /// Non-vacuum letters read from right to left.
    pub fn reading_word(&self) -> Vec<Letter> {
        let v = self.params.vacuum();
        self.cells
            .iter()
            .rev()
            .copied()
            .filter(|&c| c != v)
            .collect()
    }

    /// Renders the absolute range `[start, end)` in dot notation, with an
    /// `@start` prefix whenever `start != 0`.
    pub fn render_window(&self, start: i64, end: i64) -> String {
        let mut out = String::new();
        if start != 0 {
            out.push_str(&format!("@{start} "));
        }
        let v = self.params.vacuum();
        let compact = self.params.n() <= 9;
        for (k, p) in (start..end).enumerate() {
            let c = self.letter_at(p);
            if !compact && k > 0 {
                out.push(',');
            }
            if c == v {
                out.push('.');
            } else {
                out.push_str(&c.to_string());
            }
        }
        out
    }

    pub fn render(&self) -> String {
        self.render_window(self.origin, self.end())
    }

    /// Renders several states over one common window, so that columns line
    /// up as in a space-time diagram.
    pub fn render_aligned(rows: &[State]) -> Vec<String> {
        let start = rows.iter().map(State::origin).min().unwrap_or(0);
        let end = rows.iter().map(State::end).max().unwrap_or(0);
        rows.iter().map(|s| s.render_window(start, end)).collect()
    }
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        if self.params != other.params {
            return false;
        }
        let lo = self.origin.min(other.origin);
        let hi = self.end().max(other.end());
        (lo..hi).all(|p| self.letter_at(p) == other.letter_at(p))
    }
}

impl Eq for State {}

impl Hash for State {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let t = self.trimmed();
        t.params.hash(state);
        t.origin.hash(state);
        t.cells.hash(state);
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State[n={}]({})", self.params.n(), self.render())
    }
}
