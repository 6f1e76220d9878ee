use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The generator `a_{row,col}`; as a lattice step it goes from height `row`
/// to height `col`. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub row: u8,
    pub col: u8,
}

impl Letter {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(
            (1..=u8::MAX as usize).contains(&row) && (1..=u8::MAX as usize).contains(&col),
            "letter indices must lie in 1..=255"
        );
        Letter {
            row: row as u8,
            col: col as u8,
        }
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    pub fn col(self) -> usize {
        self.col as usize
    }

    fn check(self, m: usize) -> Result<()> {
        for index in [self.row(), self.col()] {
            if index == 0 || index > m {
                return Err(Error::IndexOutOfRange { index, m });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row <= 9 && self.col <= 9 {
            write!(f, "a{}{}", self.row, self.col)
        } else {
            write!(f, "a({},{})", self.row, self.col)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    /// Accepts the compact form `a13` and the extended form `a(12,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid letter `{s}`"));
        let body = s.trim().strip_prefix('a').ok_or_else(bad)?;
        let (row, col) = if let Some(inner) = body.strip_prefix('(') {
            let inner = inner.strip_suffix(')').ok_or_else(bad)?;
            let (r, c) = inner.split_once(',').ok_or_else(bad)?;
            (
                r.trim().parse::<usize>().map_err(|_| bad())?,
                c.trim().parse::<usize>().map_err(|_| bad())?,
            )
        } else {
            let digits: Vec<u32> = body
                .chars()
                .map(|c| c.to_digit(10))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            if digits.len() != 2 {
                return Err(bad());
            }
            (digits[0] as usize, digits[1] as usize)
        };
        if row == 0 || col == 0 || row > u8::MAX as usize || col > u8::MAX as usize {
            return Err(bad());
        }
        Ok(Letter::new(row, col))
    }
}

/// A finite word in the letters `a_{ij}`, read left to right. Equivalently a
/// sequence of lattice steps; the row word `λ` lists starting heights and the
/// column word `μ` ending heights.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

/// Row and column contents of a word: `rows[i-1]` counts letters `a_{i*}`,
/// `cols[j-1]` counts letters `a_{*j}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bigrade {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Bigrade {
    pub fn degree(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.rows == self.cols
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds `a_{λ,μ} = a_{λ_1 μ_1} ⋯ a_{λ_n μ_n}`.
    pub fn from_rows_cols(rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(
            rows.len(),
            cols.len(),
            "row and column words differ in length"
        );
        Word(
            rows.iter()
                .zip(cols)
                .map(|(&r, &c)| Letter::new(r, c))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn row_word(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.row()).collect()
    }

    pub fn col_word(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.col()).collect()
    }

    /// Largest index appearing in the word (0 for the empty word).
    pub fn max_index(&self) -> usize {
        self.0
            .iter()
            .map(|l| l.row().max(l.col()))
            .max()
            .unwrap_or(0)
    }

    pub fn check_indices(&self, m: usize) -> Result<()> {
        self.0.iter().try_for_each(|l| l.check(m))
    }

    pub fn bigrade(&self, m: usize) -> Bigrade {
        let mut rows = vec![0; m];
        let mut cols = vec![0; m];
        for l in &self.0 {
            rows[l.row() - 1] += 1;
            cols[l.col() - 1] += 1;
        }
        Bigrade { rows, cols }
    }

    pub fn is_balanced(&self) -> bool {
        let m = self.max_index();
        self.bigrade(m).is_balanced()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.0.swap(a, b);
    }

    /// Stable sort of the letters by row index.
    pub fn stable_row_sort(&self) -> Word {
        let mut letters = self.0.clone();
        letters.sort_by_key(|l| l.row);
        Word(letters)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Comma-separated letters, e.g. `a13,a11,a12` or `a(12,3),a31`. The empty
    /// string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (pos, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    letters.push(s[start..pos].parse()?);
                    start = pos + 1;
                }
                _ => {}
            }
        }
        letters.push(s[start..].parse()?);
        Ok(Word(letters))
    }
}
