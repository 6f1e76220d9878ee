//! Words in the letters `a_ij`, their coefficients and truncated series.

mod laurent;
mod param;
mod series;
mod word;

pub use laurent::Laurent;
pub use param::{Monomial, Param, ParamAssignment, ParamUniverse};
pub use series::NCSeries;
pub use word::{Bigrade, Letter, Word};

/// Positions `(s, t)`, `s < t`, with `nu[s] > nu[t]` (0-based).
pub fn inversions(nu: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..nu.len() {
        for t in s + 1..nu.len() {
            if nu[s] > nu[t] {
                out.push((s, t));
            }
        }
    }
    out
}

pub fn inv_count(nu: &[usize]) -> usize {
    let mut n = 0;
    for s in 0..nu.len() {
        n += nu[s + 1..].iter().filter(|&&x| x < nu[s]).count();
    }
    n
}

/// Parses a compact digit string such as `"1324312344"`.
pub fn digits(text: &str) -> Vec<usize> {
    text.chars()
        .filter_map(|c| c.to_digit(10))
        .map(|d| d as usize)
        .collect()
}
