use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word_algebra::{inversions, Laurent, NCSeries, Word};

use super::{Family, MatrixClass};

/// For classes whose relations swap two letters up to a scalar: the
/// stable row sort of `w` and the accumulated exchange weight. Commutative
/// words are fully sorted with weight 1.
pub fn monomial_normal_form<S: Scalar>(
    w: &Word,
    class: &MatrixClass,
) -> Result<(Laurent<S>, Word)> {
    match class.family() {
        Family::RightQuantum => Err(Error::Unsupported(format!(
            "{class} relations are not single-monomial rewrites"
        ))),
        Family::Commutative => {
            let mut letters = w.letters().to_vec();
            letters.sort();
            Ok((Laurent::int(1), Word::new(letters)))
        }
        Family::CartierFoata => {
            let scheme = class.scheme();
            let (rows, cols) = (w.row_word(), w.col_word());
            let mut c = Laurent::int(1);
            // each pair of letters whose rows are out of order is exchanged once
            for (s, t) in inversions(&rows) {
                c = &c * &(&scheme.q(rows[t], rows[s]) * &scheme.q(cols[s], cols[t]));
            }
            Ok((c, w.stable_row_sort()))
        }
    }
}

/// Image of a series under letter-sorting, i.e. in the commutative
/// polynomial ring.
pub fn commutative_collapse<S: Scalar>(s: &NCSeries<S>) -> NCSeries<S> {
    s.map_words(|w| {
        let mut letters = w.letters().to_vec();
        letters.sort();
        (Laurent::int(1), Word::new(letters))
    })
}
