//! Semistandard tableaux built by Schensted row insertion.

use std::fmt;

use crate::crystal::Letter;
use crate::state::State;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn new() -> Self {
        Tableau::default()
    }

    /// A tableau from explicit rows, if they form a semistandard tableau.
    pub fn from_rows(rows: Vec<Vec<Letter>>) -> Option<Self> {
        let t = Tableau { rows };
        (t.is_semistandard() && t.rows.iter().all(|r| !r.is_empty())).then_some(t)
    }

    /// Row-inserts `x`: it bumps the leftmost entry strictly greater than it
    /// into the next row.
    pub fn insert(&mut self, mut x: Letter) {
        for row in &mut self.rows {
            match row.iter().position(|&y| y > x) {
                Some(k) => x = std::mem::replace(&mut row[k], x),
                None => {
                    row.push(x);
                    return;
                }
            }
        }
        self.rows.push(vec![x]);
    }

    /// `(((w_1 <- w_2) <- w_3) ... <- w_s)`.
    pub fn from_word(word: &[Letter]) -> Self {
        let mut t = Tableau::new();
        for &x in word {
            t.insert(x);
        }
        t
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1].len() <= pair[0].len() && pair[1].iter().zip(&pair[0]).all(|(lo, hi)| lo > hi)
        });
        rows_ok && cols_ok
    }
}

/// Tableau of the right-to-left reading word of `p`, vacuum removed.
pub fn bump_tableau(p: &State) -> Tableau {
    Tableau::from_word(&p.reading_word())
}

impl fmt::Display for Tableau {
    /// Rows separated by `/`, e.g. `11233/2`; the empty tableau is `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("-");
        }
        let wide = self.rows.iter().flatten().any(|&x| x > 9);
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str("/")?;
            }
            for (j, x) in row.iter().enumerate() {
                if wide && j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::CrystalParams;

    #[test]
    fn bumping_examples() {
        let t = Tableau::from_word(&[2, 1, 1, 2, 3, 3]);
        assert_eq!(t.rows(), &[vec![1, 1, 2, 3, 3], vec![2]]);
        assert_eq!(t.to_string(), "11233/2");
        assert_eq!(Tableau::from_word(&[1, 2, 2, 1, 3, 3]), t);
        assert!(Tableau::from_word(&[]).is_empty());
        assert_eq!(
            Tableau::from_rows(vec![vec![1, 1, 2, 3, 3], vec![2]]),
            Some(t.clone())
        );
        assert_eq!(Tableau::from_rows(vec![vec![1, 2], vec![1]]), None);
        let s = State::parse(CrystalParams::new(4).unwrap(), "332...11...2").unwrap();
        assert_eq!(bump_tableau(&s), t);
    }

    #[test]
    fn insertion_keeps_semistandard_shape() {
        let word = [3, 1, 2, 2, 1, 3, 1, 2, 3, 3, 1];
        let t = Tableau::from_word(&word);
        assert!(t.is_semistandard());
        assert_eq!(t.shape().iter().sum::<usize>(), word.len());
    }
}
