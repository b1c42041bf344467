//! Tensor products `B_{l_1} ⊗ ... ⊗ B_{l_m}` and the signature rule.

use std::fmt;

use crate::crystal::{self, CrystalParams, Element};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    factors: Vec<Element>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

/// An `i`-signature: a word in `{-, +}` where every sign remembers the
/// tensor factor it came from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    entries: Vec<(Sign, usize)>,
}

impl Signature {
    pub fn from_entries(entries: Vec<(Sign, usize)>) -> Self {
        Signature { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Sign, usize)] {
        &self.entries
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        self.entries.iter().map(|&(s, _)| s)
    }

    pub fn origins(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(_, o)| o)
    }

    /// Cancels adjacent `(+ -)` pairs until the word reads `-^a +^b`.
    ///
    /// Single stack pass: a `-` arriving on top of a `+` annihilates it.
    pub fn reduce(&self) -> Signature {
        let mut stack: Vec<(Sign, usize)> = Vec::with_capacity(self.entries.len());
        for &entry in &self.entries {
            match (entry.0, stack.last()) {
                (Sign::Minus, Some(&(Sign::Plus, _))) => {
                    stack.pop();
                }
                _ => stack.push(entry),
            }
        }
        Signature { entries: stack }
    }

    /// Number of `-` signs (equals `epsilon_i` once reduced).
    pub fn minus_count(&self) -> usize {
        self.signs().filter(|&s| s == Sign::Minus).count()
    }

    /// Number of `+` signs (equals `phi_i` once reduced).
    pub fn plus_count(&self) -> usize {
        self.signs().filter(|&s| s == Sign::Plus).count()
    }

    fn is_reduced(&self) -> bool {
        !self
            .entries
            .windows(2)
            .any(|w| w[0].0 == Sign::Plus && w[1].0 == Sign::Minus)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            f.write_str(match s {
                Sign::Minus => "-",
                Sign::Plus => "+",
            })?;
        }
        Ok(())
    }
}

impl TensorElement {
    pub fn new(factors: Vec<Element>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyTensor);
        }
        Ok(TensorElement { factors })
    }

    pub fn pair(left: Element, right: Element) -> Self {
        TensorElement {
            factors: vec![left, right],
        }
    }

    /// Parses `"1223|112|24"`.
    pub fn parse(params: CrystalParams, text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut column = 1;
        for piece in text.trim().split('|') {
            let b = params.parse_element(piece).map_err(|e| match e {
                Error::Parse {
                    line,
                    column: c,
                    message,
                } => Error::Parse {
                    line,
                    column: column + c - 1,
                    message,
                },
                other => other,
            })?;
            factors.push(b);
            column += piece.len() + 1;
        }
        TensorElement::new(factors)
    }

    pub fn factors(&self) -> &[Element] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Element> {
        self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn validate(&self, params: CrystalParams) -> Result<()> {
        self.factors
            .iter()
            .try_for_each(|b| params.check_element(b))
    }

    /// The `i`-signature: per factor, `epsilon_i` minus signs followed by
    /// `phi_i` plus signs.
    pub fn signature(&self, params: CrystalParams, color: u8) -> Result<Signature> {
        params.check_color(color)?;
        Ok(self.signature_raw(color, params.n()))
    }

    fn signature_raw(&self, color: u8, n: u8) -> Signature {
        let mut entries = Vec::new();
        for (j, b) in self.factors.iter().enumerate() {
            let eps = crystal::epsilon_raw(b, color);
            let phi = crystal::phi_raw(b, color, n);
            entries.extend(std::iter::repeat_n((Sign::Minus, j), eps));
            entries.extend(std::iter::repeat_n((Sign::Plus, j), phi));
        }
        Signature { entries }
    }

    /// `e_i` by the signature rule: act on the factor that owns the
    /// rightmost `-` of the reduced signature.
    pub fn e(&self, params: CrystalParams, color: u8) -> Result<Option<Self>> {
        params.check_color(color)?;
        Ok(self.raise(color, params.n()))
    }

    /// `f_i` by the signature rule: act on the factor that owns the
    /// leftmost `+` of the reduced signature.
    pub fn f(&self, params: CrystalParams, color: u8) -> Result<Option<Self>> {
        params.check_color(color)?;
        Ok(self.lower(color, params.n()))
    }

    pub(crate) fn raise(&self, color: u8, n: u8) -> Option<Self> {
        let reduced = self.signature_raw(color, n).reduce();
        debug_assert!(reduced.is_reduced());
        let &(_, owner) = reduced
            .entries
            .iter()
            .rev()
            .find(|&&(s, _)| s == Sign::Minus)?;
        let mut factors = self.factors.clone();
        factors[owner] = crystal::raise(&factors[owner], color, n)?;
        Some(TensorElement { factors })
    }

    pub(crate) fn lower(&self, color: u8, n: u8) -> Option<Self> {
        let reduced = self.signature_raw(color, n).reduce();
        let &(_, owner) = reduced.entries.iter().find(|&&(s, _)| s == Sign::Plus)?;
        let mut factors = self.factors.clone();
        factors[owner] = crystal::lower(&factors[owner], color, n)?;
        Some(TensorElement { factors })
    }

    /// True iff `e_j` annihilates the element for every `j` in `colors`.
    pub fn is_highest_weight(&self, params: CrystalParams, colors: &[u8]) -> Result<bool> {
        for &j in colors {
            if self.e(params, j)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{b:?}")?;
        }
        Ok(())
    }
}
