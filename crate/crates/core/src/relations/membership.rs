use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice_paths::{content_word, multinomial, multiset_permutations};
use crate::report::{ComponentRecord, Verdict};
use crate::scalar::Scalar;
use crate::word_algebra::{Bigrade, Laurent, Letter, NCSeries, ParamAssignment, Word};

use super::echelon::{Echelon, EliminationRing, SparseRow};
use super::generators::RelationSet;

pub const DEFAULT_COMPONENT_GUARD: usize = 5000;

#[derive(Clone, Debug)]
pub enum MembershipMode<S> {
    /// Decide membership after instantiating all parameters at each point.
    Points(Vec<ParamAssignment<S>>),
    /// Fraction-free elimination over the Laurent coefficients; slow, meant
    /// for small components.
    Symbolic,
}

#[derive(Clone, Copy, Debug)]
pub struct MembershipOptions {
    pub component_guard: usize,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions {
            component_guard: DEFAULT_COMPONENT_GUARD,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MembershipOutcome {
    pub member: bool,
    pub components: Vec<ComponentRecord>,
}

/// All words of a bigrading, ordered lexicographically by (row word, column word).
pub fn component_basis(bg: &Bigrade) -> Vec<Word> {
    let cols: Vec<Vec<usize>> = multiset_permutations(&content_word(&bg.cols)).collect();
    let mut out = Vec::new();
    for rows in multiset_permutations(&content_word(&bg.rows)) {
        for c in &cols {
            out.push(Word::from_rows_cols(&rows, c));
        }
    }
    out
}

type PairKey = (u8, u8, u8, u8);

fn pair_key(a: Letter, b: Letter) -> PairKey {
    let (r1, r2) = (a.row().min(b.row()), a.row().max(b.row()));
    let (c1, c2) = (a.col().min(b.col()), a.col().max(b.col()));
    (r1 as u8, r2 as u8, c1 as u8, c2 as u8)
}

fn sparse<S: Scalar>(
    entries: impl IntoIterator<Item = (usize, Laurent<S>)>,
) -> SparseRow<Laurent<S>> {
    let mut acc: BTreeMap<usize, Laurent<S>> = BTreeMap::new();
    for (i, c) in entries {
        *acc.entry(i).or_insert_with(num_traits::Zero::zero) += c;
    }
    acc.into_iter()
        .filter(|(_, c)| !num_traits::Zero::is_zero(c))
        .collect()
}

fn eval_row<S: Scalar>(
    row: &SparseRow<Laurent<S>>,
    point: &ParamAssignment<S>,
) -> Result<SparseRow<S>> {
    let mut out = Vec::with_capacity(row.len());
    for (i, c) in row {
        let v = c.eval(point)?;
        if !num_traits::Zero::is_zero(&v) {
            out.push((*i, v));
        }
    }
    Ok(out)
}

fn span_contains<R: EliminationRing>(
    rows: impl Iterator<Item = SparseRow<R>>,
    target: SparseRow<R>,
) -> (usize, bool) {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    (e.rank(), e.contains(target))
}

fn check_component<S: Scalar>(
    bg: &Bigrade,
    comp: &NCSeries<S>,
    rels: &RelationSet<S>,
    by_pair: &HashMap<PairKey, Vec<usize>>,
    mode: &MembershipMode<S>,
    opts: &MembershipOptions,
) -> Result<ComponentRecord> {
    let start = Instant::now();
    let size = multinomial(&bg.rows).saturating_mul(multinomial(&bg.cols));
    if size > opts.component_guard as u128 {
        return Err(Error::guard(
            format!("graded component rows {:?} cols {:?}", bg.rows, bg.cols),
            size,
            opts.component_guard as u128,
        ));
    }
    let basis = component_basis(bg);
    let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let mut seen: HashSet<(usize, &[Letter], &[Letter], usize)> = HashSet::new();
    let mut rows: Vec<SparseRow<Laurent<S>>> = Vec::new();
    for w in &basis {
        let l = w.letters();
        for p in 0..l.len().saturating_sub(1) {
            let Some(gens) = by_pair.get(&pair_key(l[p], l[p + 1])) else {
                continue;
            };
            for &gi in gens {
                if !seen.insert((p, &l[..p], &l[p + 2..], gi)) {
                    continue;
                }
                let (u, v) = (Word::new(l[..p].to_vec()), Word::new(l[p + 2..].to_vec()));
                let row = sparse(rels.relators()[gi].terms().map(|(t, c)| {
                    let word = u.concat(t).concat(&v);
                    (index[&word], c.clone())
                }));
                rows.push(row);
            }
        }
    }
    let target = sparse(comp.terms().map(|(w, c)| (index[w], c.clone())));

    let (ranks, failing) = match mode {
        MembershipMode::Symbolic => {
            let (rank, ok) = span_contains(rows.iter().cloned(), target.clone());
            (vec![rank], if ok { vec![] } else { vec![0] })
        }
        MembershipMode::Points(points) => {
            let mut ranks = Vec::with_capacity(points.len());
            let mut failing = Vec::new();
            for (pi, point) in points.iter().enumerate() {
                let inst: Vec<SparseRow<S>> = rows
                    .iter()
                    .map(|r| eval_row(r, point))
                    .collect::<Result<_>>()?;
                let (rank, ok) = span_contains(inst.into_iter(), eval_row(&target, point)?);
                ranks.push(rank);
                if !ok {
                    failing.push(pi);
                }
            }
            (ranks, failing)
        }
    };
    Ok(ComponentRecord {
        row_content: bg.rows.clone(),
        col_content: bg.cols.clone(),
        basis_size: basis.len(),
        span_size: rows.len(),
        span_rank: ranks,
        target_terms: comp.len(),
        verdict: if failing.is_empty() {
            Verdict::Member
        } else {
            Verdict::NotMember
        },
        failing_points: failing,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

/// Decides, component by component, whether `target` lies in the two-sided
/// ideal generated by `rels`. Only components with nonzero terms are
/// reported; the zero series is a member with no records.
pub fn ideal_membership<S: Scalar>(
    target: &NCSeries<S>,
    rels: &RelationSet<S>,
    mode: &MembershipMode<S>,
    opts: &MembershipOptions,
) -> Result<MembershipOutcome> {
    if let MembershipMode::Points(p) = mode {
        if p.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one test point is required".into(),
            ));
        }
    }
    let m = rels.m;
    for (w, _) in target.terms() {
        w.check_indices(m)?;
    }
    let mut by_pair: HashMap<PairKey, Vec<usize>> = HashMap::new();
    for (gi, g) in rels.relators().iter().enumerate() {
        let (w, _) = g.terms().next().expect("relators are nonzero");
        by_pair
            .entry(pair_key(w.letters()[0], w.letters()[1]))
            .or_default()
            .push(gi);
    }
    let comps: Vec<(Bigrade, NCSeries<S>)> = target.components(m).into_iter().collect();
    let components: Vec<ComponentRecord> = comps
        .par_iter()
        .map(|(bg, comp)| check_component(bg, comp, rels, &by_pair, mode, opts))
        .collect::<Result<_>>()?;
    let member = components.iter().all(|c| c.verdict == Verdict::Member);
    Ok(MembershipOutcome { member, components })
}
