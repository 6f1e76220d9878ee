//! Reference computations shared by integration tests. None of them call
//! into the engine's combinatorics: they work on plain vectors and maps.
#![allow(dead_code)]

use std::collections::BTreeMap;

use ncmaster_core::relations::WeightScheme;
use ncmaster_core::word_algebra::{Laurent, Word};
use ncmaster_core::{Coefficient, Rational, Series};
use num_traits::{One, Zero};

/// Commutative monomial in the `m²` letters, exponent of `a_ij` at `(i−1)m + (j−1)`.
pub type Exps = Vec<u32>;
pub type Poly = BTreeMap<Exps, Rational>;

fn add_into(p: &mut Poly, e: Exps, c: Rational) {
    let entry = p.entry(e.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&e);
    }
}

fn poly_mul(a: &Poly, b: &Poly, max_deg: u32) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() <= max_deg {
                add_into(&mut out, e, ca * cb);
            }
        }
    }
    out
}

fn degree(e: &Exps) -> u32 {
    e.iter().sum()
}

/// `det(I − A)` for a commuting matrix, by expansion over permutations.
pub fn commutative_det(m: usize) -> Poly {
    let n = m * m;
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..m {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..m)
                    .filter(|x| !p.contains(x))
                    .map(|x| [p.clone(), vec![x]].concat())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = Poly::new();
    for p in perms {
        let inv = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut prod = Poly::from([(
            vec![0; n],
            if inv % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            },
        )]);
        for (c, &r) in p.iter().enumerate() {
            let mut entry = Poly::new();
            if r == c {
                entry.insert(vec![0; n], Rational::one());
            }
            let mut e = vec![0; n];
            e[r * m + c] = 1;
            entry.insert(e, -Rational::one());
            prod = poly_mul(&prod, &entry, u32::MAX);
        }
        for (e, c) in prod {
            add_into(&mut out, e, c);
        }
    }
    out
}

/// `1 / det(I − A)` up to total degree `max`, by power-series long division:
/// the quotient is built one degree at a time so that `quotient · det = 1`.
pub fn long_division_inverse_det(m: usize, max: u32) -> Poly {
    let d = commutative_det(m);
    let n = m * m;
    let mut quotient = Poly::from([(vec![0; n], Rational::one())]);
    let mut remainder = Poly::from([(vec![0; n], Rational::one())]);
    remainder = sub(&remainder, &poly_mul(&quotient, &d, max));
    for deg in 1..=max {
        let lead: Poly = remainder
            .iter()
            .filter(|(e, _)| degree(e) == deg)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        for (e, c) in &lead {
            add_into(&mut quotient, e.clone(), c.clone());
        }
        remainder = sub(&remainder, &poly_mul(&lead, &d, max));
    }
    quotient
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        add_into(&mut out, e.clone(), -c.clone());
    }
    out
}

/// `(1 / det(I − A))^β` up to degree `max`, by repeated multiplication.
pub fn long_division_inverse_det_pow(m: usize, max: u32, beta: u32) -> Poly {
    let base = long_division_inverse_det(m, max);
    let mut acc = Poly::from([(vec![0; m * m], Rational::one())]);
    for _ in 0..beta {
        acc = poly_mul(&acc, &base, max);
    }
    acc
}

/// Exponent vector of a word, forgetting letter order.
pub fn exponents(w: &Word, m: usize) -> Exps {
    let mut e = vec![0; m * m];
    for l in w.letters() {
        e[(l.row() - 1) * m + l.col() - 1] += 1;
    }
    e
}

/// Commutative image of a series with constant coefficients.
pub fn to_poly(s: &Series, m: usize) -> Poly {
    let mut out = Poly::new();
    for (w, c) in s.terms() {
        let v = c.as_constant().expect("constant coefficient");
        add_into(&mut out, exponents(w, m), v);
    }
    out
}

/// `G(k)` computed the long way: expand `∏_i (a_{i1} x_1 + ⋯ + a_{im} x_m)^{k_i}`
/// with the `x`'s commuting past every `a`, then move the `x`'s into
/// increasing order one adjacent exchange at a time using
/// `x_j x_i = q(i, j) x_i x_j` for `i < j`.
pub fn g_by_x_expansion(k: &[usize], scheme: &WeightScheme) -> Series {
    let m = k.len();
    let rows: Vec<usize> = k
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
        .collect();
    let mut out = Series::zero();
    // every choice of x-index at each factor
    let total = rows.len();
    let mut choice = vec![1usize; total];
    loop {
        let target_ok = (1..=m).all(|j| choice.iter().filter(|&&c| c == j).count() == k[j - 1]);
        if target_ok {
            let mut xs = choice.clone();
            let mut coeff: Coefficient = Laurent::int(1);
            let mut swapped = true;
            while swapped {
                swapped = false;
                for p in 0..xs.len().saturating_sub(1) {
                    if xs[p] > xs[p + 1] {
                        // x_j x_i with j > i
                        coeff = &coeff * &scheme.q(xs[p + 1], xs[p]);
                        xs.swap(p, p + 1);
                        swapped = true;
                    }
                }
            }
            out.add_term(Word::from_rows_cols(&rows, &choice), coeff);
        }
        // odometer
        let mut p = 0;
        loop {
            if p == total {
                return out;
            }
            if choice[p] < m {
                choice[p] += 1;
                break;
            }
            choice[p] = 1;
            p += 1;
        }
    }
}
