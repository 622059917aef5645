//! Abstract groups consumed by the bar-complex chain calculus.

use std::fmt::Debug;
use std::hash::Hash;

use crate::words::Word;

pub trait Group {
    type Elem: Clone + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// `a b a^-1 b^-1`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&ab, &self.inv(&ba))
    }

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `k g k^-1`.
    fn conjugate(&self, k: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(k, g), &self.inv(k))
    }
}

/// The free group on countably many generators, realized by reduced words.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeGroup;

impl Group for FreeGroup {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        a * b
    }

    fn inv(&self, a: &Word) -> Word {
        a.inverse()
    }
}
