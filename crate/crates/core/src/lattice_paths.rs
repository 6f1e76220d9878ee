//! Balanced step sequences and the straightening bijection φ.
//!
//! A letter `a_ij` is read as a lattice step from height `i` to height `j`.
//! A *p-sequence* is a concatenation of closed paths based at `1, 2, …, m`,
//! the path based at `b` never dipping below `b`. An *o-sequence* is a balanced
//! word whose letters are sorted by row. The switch map ψ moves one step a
//! single place to the left; iterating it from an o-sequence reaches the
//! p-sequence φ(o).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word_algebra::{inv_count, Letter, Word};

pub const DEFAULT_GUARD: u128 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SequenceKind {
    NotBalanced,
    Balanced,
    OSequence,
    PSequence,
    QSequenceOfRank(usize),
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::NotBalanced => f.write_str("not balanced"),
            SequenceKind::Balanced => f.write_str("balanced"),
            SequenceKind::OSequence => f.write_str("o-sequence"),
            SequenceKind::PSequence => f.write_str("p-sequence"),
            SequenceKind::QSequenceOfRank(n) => write!(f, "q-sequence of rank {n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub balanced: bool,
    pub o_sequence: bool,
    pub p_sequence: bool,
    pub q_sequence: bool,
    /// `k_i` = number of steps starting (equivalently ending) at height `i`.
    pub type_vector: Option<Vec<usize>>,
    pub rank: usize,
}

impl Classification {
    /// All kinds that apply, most specific first.
    pub fn kinds(&self) -> Vec<SequenceKind> {
        if !self.balanced {
            return vec![SequenceKind::NotBalanced];
        }
        let mut out = Vec::new();
        if self.p_sequence {
            out.push(SequenceKind::PSequence);
        }
        if self.o_sequence {
            out.push(SequenceKind::OSequence);
        }
        if self.q_sequence && !self.p_sequence && !self.o_sequence {
            out.push(SequenceKind::QSequenceOfRank(self.rank));
        }
        out.push(SequenceKind::Balanced);
        out
    }

    pub fn kind(&self) -> SequenceKind {
        self.kinds()[0]
    }
}

/// The longest prefix of `letters` that starts some p-sequence with the same
/// letters, together with the height reached after it.
#[derive(Clone, Copy, Debug)]
struct Scan {
    len: usize,
    height: usize,
}

fn scan(letters: &[Letter]) -> Scan {
    let m = letters
        .iter()
        .map(|l| l.row().max(l.col()))
        .max()
        .unwrap_or(0);
    let mut remaining = vec![0usize; m + 2];
    for l in letters {
        remaining[l.row()] += 1;
    }
    let (mut h, mut b) = (1, 1);
    let settle = |h: &mut usize, b: &mut usize, remaining: &[usize]| {
        while *h == *b && *b <= m && remaining[*b] == 0 {
            *b += 1;
            *h = *b;
        }
    };
    for (i, l) in letters.iter().enumerate() {
        settle(&mut h, &mut b, &remaining);
        if l.row() != h || l.col() < b {
            return Scan { len: i, height: h };
        }
        remaining[h] -= 1;
        h = l.col();
    }
    settle(&mut h, &mut b, &remaining);
    Scan {
        len: letters.len(),
        height: h,
    }
}

fn rows_nondecreasing<'a>(it: impl Iterator<Item = &'a Letter>) -> bool {
    let mut last = 0;
    for l in it {
        if l.row() < last {
            return false;
        }
        last = l.row();
    }
    true
}

fn is_row_sorted(letters: &[Letter]) -> bool {
    rows_nondecreasing(letters.iter())
}

/// Position of the step ψ moves next, if the word is not yet a p-sequence.
fn moving_step(letters: &[Letter], s: Scan) -> Option<usize> {
    letters[s.len..]
        .iter()
        .position(|l| l.row() == s.height)
        .map(|p| p + s.len)
}

fn q_structure(letters: &[Letter], s: Scan) -> bool {
    if s.len == letters.len() {
        return true;
    }
    let rest = &letters[s.len..];
    if is_row_sorted(rest) {
        return true;
    }
    let Some(p) = rest.iter().position(|l| l.row() == s.height) else {
        return false;
    };
    rest[..p].iter().all(|l| l.row() < s.height)
        && rows_nondecreasing(rest[..p].iter().chain(rest[p + 1..].iter()))
}

pub fn type_vector(w: &Word) -> Option<Vec<usize>> {
    let g = w.bigrade(w.max_index());
    g.is_balanced().then_some(g.rows)
}

pub fn rank(w: &Word) -> usize {
    inv_count(&w.row_word())
}

pub fn classify(w: &Word) -> Classification {
    let letters = w.letters();
    let tv = type_vector(w);
    let balanced = tv.is_some();
    let r = rank(w);
    if !balanced {
        return Classification {
            balanced,
            o_sequence: false,
            p_sequence: false,
            q_sequence: false,
            type_vector: None,
            rank: r,
        };
    }
    let s = scan(letters);
    Classification {
        balanced,
        o_sequence: is_row_sorted(letters),
        p_sequence: s.len == letters.len(),
        q_sequence: q_structure(letters, s),
        type_vector: tv,
        rank: r,
    }
}

fn psi_raw(letters: &mut [Letter]) -> bool {
    let s = scan(letters);
    if s.len == letters.len() {
        return false;
    }
    match moving_step(letters, s) {
        Some(p) => {
            letters.swap(p - 1, p);
            true
        }
        None => false,
    }
}

fn wrong(expected: &'static str, w: &Word) -> Error {
    Error::WrongSequenceKind {
        expected,
        word: w.to_string(),
    }
}

/// One switch: the identity on p-sequences, otherwise a single adjacent
/// transposition raising the rank by one.
pub fn psi_step(w: &Word) -> Result<Word> {
    if !classify(w).q_sequence {
        return Err(wrong("q-sequence", w));
    }
    let mut letters = w.letters().to_vec();
    psi_raw(&mut letters);
    Ok(Word::new(letters))
}

/// All intermediate q-sequences from `w` to φ(w), both ends included.
pub fn psi_chain(w: &Word) -> Result<Vec<Word>> {
    if !classify(w).o_sequence {
        return Err(wrong("o-sequence", w));
    }
    let mut letters = w.letters().to_vec();
    let mut chain = vec![w.clone()];
    while psi_raw(&mut letters) {
        chain.push(Word::new(letters.clone()));
    }
    Ok(chain)
}

/// φ(w) and the number of switches used.
pub fn phi(w: &Word) -> Result<(Word, usize)> {
    if !classify(w).o_sequence {
        return Err(wrong("o-sequence", w));
    }
    let mut letters = w.letters().to_vec();
    let mut count = 0;
    while psi_raw(&mut letters) {
        count += 1;
    }
    Ok((Word::new(letters), count))
}

pub fn phi_inverse(w: &Word) -> Result<Word> {
    if !classify(w).p_sequence {
        return Err(wrong("p-sequence", w));
    }
    Ok(w.stable_row_sort())
}

/// Splits a p-sequence into paths that return to their starting height only
/// at their last step.
pub fn primitive_decomposition(w: &Word) -> Result<Vec<Word>> {
    if !classify(w).p_sequence {
        return Err(wrong("p-sequence", w));
    }
    let letters = w.letters();
    let mut parts = Vec::new();
    let mut start = 0;
    while start < letters.len() {
        let base = letters[start].row();
        let end = (start..letters.len())
            .find(|&t| letters[t].col() == base)
            .expect("closed path");
        parts.push(Word::new(letters[start..=end].to_vec()));
        start = end + 1;
    }
    Ok(parts)
}

/// `(Σ c)! / ∏ c!`.
pub fn multinomial(counts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &c in counts {
        for i in 1..=c as u128 {
            n += 1;
            acc = acc * n / i;
        }
    }
    acc
}

/// Distinct permutations of a multiset, in lexicographic order.
pub struct MultisetPermutations<T> {
    next: Option<Vec<T>>,
}

pub fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> MultisetPermutations<T> {
    let mut v = items.to_vec();
    v.sort();
    MultisetPermutations { next: Some(v) }
}

impl<T: Ord + Clone> Iterator for MultisetPermutations<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        let cur = self.next.take()?;
        let mut v = cur.clone();
        if let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
            v.swap(i - 1, j);
            v[i..].reverse();
            self.next = Some(v);
        }
        Some(cur)
    }
}

/// Integer vectors of length `m` with entries summing to `n`, lexicographic.
pub fn compositions(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == m {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=n {
            cur.push(first);
            go(m, n - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(m, n, &mut Vec::new(), &mut out);
    out
}

/// All type vectors of length `m` with `|k| ≤ max`, by increasing degree.
pub fn type_vectors_up_to(m: usize, max: usize) -> Vec<Vec<usize>> {
    (0..=max).flat_map(|n| compositions(m, n)).collect()
}

/// `k = (2, 1)` ↦ `[1, 1, 2]`.
pub fn content_word(k: &[usize]) -> Vec<usize> {
    k.iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumKind {
    Balanced,
    O,
    P,
    /// 𝒬_n(k): q-sequences of rank `n` together with p-sequences of rank `< n`,
    /// so that 𝒬_0(k) is 𝒪(k) and ψ maps 𝒬_n(k) onto 𝒬_{n+1}(k).
    Q(usize),
}

pub fn estimate(kind: EnumKind, k: &[usize]) -> u128 {
    let c = multinomial(k);
    match kind {
        EnumKind::O | EnumKind::P => c,
        EnumKind::Balanced | EnumKind::Q(_) => c.saturating_mul(c),
    }
}

/// Complete duplicate-free enumeration in a deterministic order.
pub fn enumerate(kind: EnumKind, k: &[usize], guard: u128) -> Result<Vec<Word>> {
    let est = estimate(kind, k);
    if est > guard {
        return Err(Error::guard(
            format!("enumeration of {kind:?} sequences of type {k:?}"),
            est,
            guard,
        ));
    }
    Ok(match kind {
        EnumKind::O => o_sequences(k),
        EnumKind::P => p_sequences(k),
        EnumKind::Balanced => balanced_words(k),
        EnumKind::Q(n) => balanced_words(k)
            .into_iter()
            .filter(|w| {
                let c = classify(w);
                (c.p_sequence && c.rank <= n) || (c.q_sequence && c.rank == n)
            })
            .collect(),
    })
}

fn o_sequences(k: &[usize]) -> Vec<Word> {
    let rows = content_word(k);
    multiset_permutations(&rows)
        .map(|cols| Word::from_rows_cols(&rows, &cols))
        .collect()
}

fn balanced_words(k: &[usize]) -> Vec<Word> {
    let base = content_word(k);
    let cols: Vec<Vec<usize>> = multiset_permutations(&base).collect();
    let mut out = Vec::with_capacity(cols.len() * cols.len());
    for rows in multiset_permutations(&base) {
        for c in &cols {
            out.push(Word::from_rows_cols(&rows, c));
        }
    }
    out
}

fn p_sequences(k: &[usize]) -> Vec<Word> {
    fn go(
        rows: &mut [usize],
        cols: &mut [usize],
        h: usize,
        b: usize,
        cur: &mut Vec<Letter>,
        out: &mut Vec<Word>,
    ) {
        let m = rows.len();
        let (mut h, mut b) = (h, b);
        while h == b && b <= m && rows[b - 1] == 0 {
            b += 1;
            h = b;
        }
        if b > m {
            out.push(Word::new(cur.clone()));
            return;
        }
        if rows[h - 1] == 0 {
            return;
        }
        for j in b..=m {
            if cols[j - 1] == 0 {
                continue;
            }
            rows[h - 1] -= 1;
            cols[j - 1] -= 1;
            cur.push(Letter::new(h, j));
            go(rows, cols, j, b, cur, out);
            cur.pop();
            rows[h - 1] += 1;
            cols[j - 1] += 1;
        }
    }
    let mut out = Vec::new();
    let mut rows = k.to_vec();
    let mut cols = k.to_vec();
    go(&mut rows, &mut cols, 1, 1, &mut Vec::new(), &mut out);
    out
}
