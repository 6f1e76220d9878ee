//! Permutations of multisets weighted by their cycles, and the β-powers of
//! the master identity built from them.

use std::time::Instant;

use rayon::prelude::*;

use crate::determinants::{det_one_minus, DetFlavor, SymbolicMatrix};
use crate::error::{Error, Result};
use crate::lattice_paths::{classify, content_word, type_vectors_up_to, DEFAULT_GUARD};
use crate::master_engine::{mutate, MasterInstance};
use crate::relations::{commutative_collapse, MatrixClass, WeightScheme};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::word_algebra::{Laurent, Letter, NCSeries, Word};

/// A position `(i, j)`: the `j`-th copy of row index `i`.
pub type Slot = (usize, usize);

/// A permutation of `{(i, j) : 1 ≤ j ≤ k_i}`, stored on the positions of
/// that set listed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetPermutation {
    k: Vec<usize>,
    image: Vec<usize>,
}

impl MultisetPermutation {
    pub fn new(k: Vec<usize>, image: Vec<usize>) -> Result<Self> {
        let n: usize = k.iter().sum();
        let mut seen = vec![false; n];
        if image.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} images, got {}",
                image.len()
            )));
        }
        for &p in &image {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(
                    "images do not form a bijection".into(),
                ));
            }
        }
        Ok(MultisetPermutation { k, image })
    }

    /// Builds `π` from pairs `(i, j) ↦ (i', j')`, all 1-based.
    pub fn from_pairs(k: Vec<usize>, pairs: &[(Slot, Slot)]) -> Result<Self> {
        let offsets = offsets(&k);
        let index = |(i, j): (usize, usize)| -> Result<usize> {
            if i == 0 || i > k.len() || j == 0 || j > k[i - 1] {
                return Err(Error::InvalidArgument(format!(
                    "({i},{j}) is not in the index set"
                )));
            }
            Ok(offsets[i - 1] + j - 1)
        };
        let n = offsets[k.len()];
        let mut image = vec![usize::MAX; n];
        for &(from, to) in pairs {
            image[index(from)?] = index(to)?;
        }
        MultisetPermutation::new(k, image)
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    /// `π_{ij}`: the first coordinate of `π(i, j)`.
    pub fn projection(&self, i: usize, j: usize) -> usize {
        let rows = content_word(&self.k);
        rows[self.image[offsets(&self.k)[i - 1] + j - 1]]
    }

    /// `v(π)`: the letters `a_{i, π_ij}` in the order of the index set.
    pub fn word(&self) -> Word {
        let rows = content_word(&self.k);
        Word::new(
            rows.iter()
                .zip(&self.image)
                .map(|(&i, &p)| Letter::new(i, rows[p]))
                .collect(),
        )
    }

    pub fn cycles(&self) -> usize {
        let mut seen = vec![false; self.image.len()];
        let mut count = 0;
        for start in 0..self.image.len() {
            if !seen[start] {
                count += 1;
                let mut p = start;
                while !seen[p] {
                    seen[p] = true;
                    p = self.image[p];
                }
            }
        }
        count
    }
}

fn offsets(k: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for &c in k {
        out.push(out.last().unwrap() + c);
    }
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All of `Σ(k)`.
pub fn enumerate_sigma(k: &[usize], guard: u128) -> Result<Vec<MultisetPermutation>> {
    let n: usize = k.iter().sum();
    let size = if n > 34 { u128::MAX } else { factorial(n) };
    if size > guard {
        return Err(Error::guard(
            format!("permutations of type {k:?}"),
            size,
            guard,
        ));
    }
    let ids: Vec<usize> = (0..n).collect();
    Ok(crate::lattice_paths::multiset_permutations(&ids)
        .map(|image| MultisetPermutation {
            k: k.to_vec(),
            image,
        })
        .collect())
}

/// `(1 / k_1!⋯k_m!) Σ_{π ∈ Σ(k)} β^{cyc π} v(π)`.
pub fn sigma_sum<S: Scalar>(k: &[usize], beta: u32, guard: u128) -> Result<NCSeries<S>> {
    let scale = S::one() / S::from_int(k.iter().map(|&c| factorial(c) as i64).product());
    let b = S::from_int(beta as i64);
    let mut out = NCSeries::zero();
    for pi in enumerate_sigma(k, guard)? {
        out.add_term(
            pi.word(),
            Laurent::constant(b.powi(pi.cycles() as i32).expect("positive base") * scale.clone()),
        );
    }
    Ok(out)
}

/// The left-hand side `Σ_{|k| ≤ n} sigma_sum(k)`, computed in parallel over `k`.
pub fn beta_lhs<S: Scalar>(m: usize, n: usize, beta: u32, guard: u128) -> Result<NCSeries<S>> {
    let parts: Vec<NCSeries<S>> = type_vectors_up_to(m, n)
        .par_iter()
        .map(|k| sigma_sum(k, beta, guard))
        .collect::<Result<_>>()?;
    Ok(parts
        .iter()
        .fold(NCSeries::truncated_zero(n), |acc, p| &acc + p))
}

/// `(1 / det(I − A))^β` with the Cartier-Foata determinant.
pub fn beta_rhs<S: Scalar>(m: usize, n: usize, beta: u32) -> Result<NCSeries<S>> {
    let inv = det_one_minus(&SymbolicMatrix::letters(m), &DetFlavor::CartierFoata)?.inverse(n)?;
    Ok(inv.pow(beta, n))
}

fn check_beta(beta: u32) -> Result<()> {
    if beta == 0 {
        return Err(Error::InvalidArgument(
            "beta must be a positive integer".into(),
        ));
    }
    Ok(())
}

/// The commutative identity: both sides agree exactly as polynomials.
pub fn verify_fz_commutative<S: Scalar>(
    m: usize,
    n: usize,
    beta: u32,
) -> Result<VerificationReport> {
    check_beta(beta)?;
    let start = Instant::now();
    let lhs = commutative_collapse(&beta_lhs::<S>(m, n, beta, DEFAULT_GUARD)?);
    let rhs = commutative_collapse(&beta_rhs::<S>(m, n, beta)?);
    let mut report = VerificationReport::new("fz", m)
        .with_class(&MatrixClass::Commutative)
        .with_max_degree(n)
        .with_parameter("beta", beta);
    report.check(
        "constant terms are 1",
        lhs.constant_term() == Laurent::int(1),
        None,
    );
    report.check(
        "sides agree as commutative polynomials",
        lhs.same_terms(&rhs),
        None,
    );
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// Checks `Σ_k (1/k!) Σ_π v_β(π) − (1/det(I − A))^β` against the ideal of a
/// class with unit weights. At `β = 1` the report matches `verify_master`.
pub fn verify_beta_noncommutative<S: Scalar>(
    inst: &MasterInstance<S>,
    beta: u32,
) -> Result<VerificationReport> {
    check_beta(beta)?;
    inst.validate()?;
    if inst.class.scheme() != WeightScheme::Unit {
        return Err(Error::Unsupported(format!(
            "the beta theorem for {}",
            inst.class
        )));
    }
    let start = Instant::now();
    let n = inst.max_degree;
    let lhs = beta_lhs::<S>(inst.m, n, beta, inst.enum_guard)?;
    let rhs = beta_rhs::<S>(inst.m, n, beta)?;
    let mut report = inst
        .report("beta")
        .with_parameter("beta", beta)
        .with_parameter("lhs_terms", lhs.len())
        .with_parameter("rhs_terms", rhs.len());
    inst.membership(&(&lhs - &rhs), &mut report, "lhs - rhs lies in the ideal")?;
    if inst.negative_control {
        let (bad, detail) = mutate(&lhs, &inst.class);
        inst.control(&(&bad - &rhs), &mut report, detail)?;
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// Ordered `β`-tuples of o-sequences whose concatenation, stably sorted by
/// rows, is `target`. Each letter of `target` is sent to one tuple slot;
/// within a row the slots must be weakly increasing, and every slot must
/// receive a balanced set of letters.
pub fn count_beta_preimages(target: &Word, beta: u32, guard: u128) -> Result<u128> {
    check_beta(beta)?;
    if !classify(target).o_sequence {
        return Err(Error::WrongSequenceKind {
            expected: "an o-sequence",
            word: target.to_string(),
        });
    }
    let estimate = (beta as u128)
        .checked_pow(target.len() as u32)
        .unwrap_or(u128::MAX);
    if estimate > guard {
        return Err(Error::guard("slot assignments", estimate, guard));
    }
    let m = target.max_index();
    let mut balance = vec![vec![0i64; m + 1]; beta as usize];
    Ok(count_slots(target.letters(), 0, 0, &mut balance))
}

fn count_slots(letters: &[Letter], pos: usize, min_slot: usize, balance: &mut [Vec<i64>]) -> u128 {
    if pos == letters.len() {
        return balance.iter().all(|b| b.iter().all(|&x| x == 0)) as u128;
    }
    let l = letters[pos];
    let floor = if pos > 0 && letters[pos - 1].row() == l.row() {
        min_slot
    } else {
        0
    };
    let mut total = 0;
    for slot in floor..balance.len() {
        balance[slot][l.row()] += 1;
        balance[slot][l.col()] -= 1;
        total += count_slots(letters, pos + 1, slot, balance);
        balance[slot][l.row()] -= 1;
        balance[slot][l.col()] += 1;
    }
    total
}
