use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word_algebra::{Laurent, Letter, NCSeries, Word};

use super::{Family, MatrixClass};

/// Quadratic relators generating the ideal of a matrix class.
#[derive(Clone, Debug)]
pub struct RelationSet<S> {
    pub class: MatrixClass,
    pub m: usize,
    relators: Vec<NCSeries<S>>,
}

impl<S: Scalar> RelationSet<S> {
    /// Checks that every relator is homogeneous of degree 2 and bigraded.
    pub fn new(class: MatrixClass, m: usize, relators: Vec<NCSeries<S>>) -> Result<Self> {
        for r in &relators {
            let mut grades = r.terms().map(|(w, _)| (w.len(), w.bigrade(m)));
            let Some(first) = grades.next() else {
                return Err(Error::InvalidArgument("zero relator".into()));
            };
            if first.0 != 2 || grades.any(|g| g != first) {
                return Err(Error::InvalidArgument(format!(
                    "relator `{r}` is not a bigraded quadratic"
                )));
            }
        }
        Ok(RelationSet { class, m, relators })
    }

    pub fn relators(&self) -> &[NCSeries<S>] {
        &self.relators
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }
}

fn pair(a: (usize, usize), b: (usize, usize)) -> Word {
    Word::new(vec![Letter::new(a.0, a.1), Letter::new(b.0, b.1)])
}

pub fn relation_generators<S: Scalar>(class: &MatrixClass, m: usize) -> Result<RelationSet<S>> {
    class.check_dimension(m)?;
    let scheme = class.scheme();
    let q = |i, j| scheme.q::<S>(i, j);
    let one = || Laurent::<S>::int(1);
    let mut rels = Vec::new();
    match class.family() {
        Family::Commutative => {
            let letters: Vec<(usize, usize)> =
                (1..=m).flat_map(|i| (1..=m).map(move |j| (i, j))).collect();
            for (x, &a) in letters.iter().enumerate() {
                for &b in &letters[x + 1..] {
                    rels.push(NCSeries::from_terms([
                        (pair(a, b), one()),
                        (pair(b, a), -&one()),
                    ]));
                }
            }
        }
        Family::CartierFoata => {
            // q_kl a_jl a_ik − q_ij a_ik a_jl
            for i in 1..=m {
                for j in i + 1..=m {
                    for k in 1..=m {
                        for l in 1..=m {
                            rels.push(NCSeries::from_terms([
                                (pair((j, l), (i, k)), q(k, l)),
                                (pair((i, k), (j, l)), -&q(i, j)),
                            ]));
                        }
                    }
                }
            }
        }
        Family::RightQuantum => {
            for i in 1..=m {
                for j in i + 1..=m {
                    // a_jk a_ik − q_ij a_ik a_jk
                    for k in 1..=m {
                        rels.push(NCSeries::from_terms([
                            (pair((j, k), (i, k)), one()),
                            (pair((i, k), (j, k)), -&q(i, j)),
                        ]));
                    }
                    // a_ik a_jl − q_ij⁻¹ a_jk a_il − q_kl q_ij⁻¹ a_jl a_ik + q_kl a_il a_jk
                    for k in 1..=m {
                        for l in k + 1..=m {
                            let qji = q(j, i);
                            rels.push(NCSeries::from_terms([
                                (pair((i, k), (j, l)), one()),
                                (pair((j, k), (i, l)), -&qji),
                                (pair((j, l), (i, k)), -&(&q(k, l) * &qji)),
                                (pair((i, l), (j, k)), q(k, l)),
                            ]));
                        }
                    }
                }
            }
        }
    }
    RelationSet::new(class.clone(), m, rels)
}
