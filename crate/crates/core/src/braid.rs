//! Braid words and their closures.
//!
//! A word is kept exactly as the walk produced it: `+i` is `σ_i`, `−i` is
//! `σ_i⁻¹` and `0` is an identity step. Nothing is ever reduced.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    n: usize,
    word: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(format!(
                "a braid word needs at least 2 strands, got {n}"
            )));
        }
        if let Some(&letter) = letters
            .iter()
            .find(|&&l| l.unsigned_abs() as usize >= n)
        {
            return Err(Error::LetterOutOfRange { letter, n });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn empty(n: usize) -> Result<Self> {
        BraidWord::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Image under `B_n → S_n`: `σ_i^{±1}` goes to the transposition of
    /// letters `i−1` and `i`, and the word is read as the product
    /// `π(w₁)·π(w₂)⋯` under right-factor-first composition.
    pub fn project(&self) -> Permutation {
        let mut p = Permutation::identity(self.n).expect("n >= 2");
        for &letter in &self.letters {
            apply_letter(&mut p, letter);
        }
        p
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        self.project().num_cycles()
    }

    /// How the closure partitions the strands among its components.
    pub fn closure_partition(&self) -> Partition {
        self.project().cycle_type()
    }
}

/// Right-multiplies `p` by the projection of one letter.
#[inline]
pub(crate) fn apply_letter(p: &mut Permutation, letter: i32) {
    if letter != 0 {
        let i = letter.unsigned_abs() as usize;
        p.swap_positions(i - 1, i);
    }
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.n, raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(w: BraidWord) -> Self {
        RawBraid {
            n: w.n,
            word: w.letters,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert!(word(4, &[]).project().is_identity());
        assert_eq!(
            word(3, &[1]).project(),
            Permutation::transposition(3, 0, 1).unwrap()
        );
        assert_eq!(word(3, &[1, 2]).project().num_cycles(), 1);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(word(5, &[]).closure_components(), 5);
        assert_eq!(word(5, &[1, 2, 3, 4]).closure_components(), 1);
        assert_eq!(word(3, &[1, -1]).closure_components(), 3);
        assert_eq!(word(3, &[]).closure_partition().parts(), &[1, 1, 1]);
        assert_eq!(word(3, &[1]).closure_partition().parts(), &[2, 1]);
        assert_eq!(word(3, &[1, 2]).closure_partition().parts(), &[3]);
    }

    #[test]
    fn rejects_bad_words() {
        assert!(matches!(
            BraidWord::new(3, vec![1, 3]),
            Err(Error::LetterOutOfRange { letter: 3, n: 3 })
        ));
        assert!(matches!(
            BraidWord::new(3, vec![-3]),
            Err(Error::LetterOutOfRange { letter: -3, n: 3 })
        ));
        assert!(BraidWord::new(1, vec![]).is_err());
        assert!(serde_json::from_str::<BraidWord>(r#"{"n":2,"word":[2]}"#).is_err());
    }

    #[test]
    fn json_shape() {
        let w = word(4, &[1, -2, 0, 3]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"n":4,"word":[1,-2,0,3]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&json).unwrap(), w);
    }

    #[test]
    fn sign_is_forgotten() {
        for n in 2..=8 {
            for i in 1..n as i32 {
                assert_eq!(word(n, &[i]).project(), word(n, &[-i]).project());
            }
        }
    }

    fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
        let k = n as i32 - 1;
        prop::collection::vec(-k..=k, 0..max_len)
    }

    proptest! {
        #[test]
        fn projection_is_a_homomorphism(
            (n, u, v) in (2usize..9).prop_flat_map(|n| (Just(n), arb_word(n, 40), arb_word(n, 40)))
        ) {
            let u = word(n, &u);
            let v = word(n, &v);
            let uv = u.concat(&v).unwrap();
            prop_assert_eq!(uv.project(), u.project().compose(&v.project()).unwrap());
        }

        #[test]
        fn components_are_bounded(
            (n, w) in (2usize..12).prop_flat_map(|n| (Just(n), arb_word(n, 60)))
        ) {
            let w = word(n, &w);
            let c = w.closure_components();
            prop_assert!((1..=n).contains(&c));
            prop_assert_eq!(w.closure_partition().len(), c);
            prop_assert_eq!(w.closure_partition().n(), n);
        }
    }
}
