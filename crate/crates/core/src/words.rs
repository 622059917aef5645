//! Reduced words in a free group.
//!
//! A letter is a nonzero signed generator index: `+i` is `a_i`, `-i` is
//! `a_i^-1`. Every constructor and operation returns a freely reduced word,
//! so equality in the free group is equality of [`Word`] values.

use std::fmt;
use std::ops::Mul;

use crate::coxmat::EvenPresentation;
use crate::error::{Error, Result};

/// Default cap on `k` for [`w_lemma`]; word length grows like `3^k`.
pub const DEFAULT_MAX_LEMMA_K: u32 = 12;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The generator `a_i` (1-based).
    pub fn generator(i: usize) -> Self {
        assert!(i >= 1, "generator indices are 1-based");
        Word(vec![i32::try_from(i).expect("generator index fits in i32")])
    }

    /// Builds the reduced form of an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut w = Word::empty();
        for l in letters {
            if l == 0 {
                return Err(Error::InvalidArgument("letter 0 is not a generator".into()));
            }
            w.push(l);
        }
        Ok(w)
    }

    fn push(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index occurring in the word (0 for the empty word).
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, n: usize) -> Result<()> {
        match self.max_generator() {
            m if m > n => Err(Error::IndexOutOfRange { index: m, n }),
            _ => Ok(()),
        }
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `f w f^-1`.
    pub fn conjugate_by(&self, f: &Word) -> Self {
        &(f * self) * &f.inverse()
    }

    /// Exponent sum of each generator `1..=n`: the image in the abelianization.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n];
        for &l in &self.0 {
            let idx = l.unsigned_abs() as usize - 1;
            sums[idx] += i64::from(l.signum());
        }
        sums
    }

    /// Applies the endomorphism of the free group sending `a_i` to `images[i - 1]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut out = Word::empty();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            out = if l > 0 { &out * img } else { &out * &img.inverse() };
        }
        out
    }

    /// Displays the word with a generator prefix other than `a`.
    pub fn display_with(&self, prefix: &'static str) -> WordDisplay<'_> {
        WordDisplay { word: self, prefix }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for &l in &rhs.0 {
            out.push(l);
        }
        out
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    prefix: &'static str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        // Runs of the same letter are written as powers.
        let letters = &self.word.0;
        let mut k = 0;
        let mut first = true;
        while k < letters.len() {
            let l = letters[k];
            let mut run = 1;
            while k + run < letters.len() && letters[k + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * i64::from(l.signum());
            write!(f, "{}{}", self.prefix, l.unsigned_abs())?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            k += run;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("a").fmt(f)
    }
}

/// Parses whitespace-separated tokens like `a3`, `a3^-1`, `a2^4`.
///
/// Any single alphabetic prefix is accepted (`s1` works too). The empty
/// string and `1` denote the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let base = text.as_ptr() as usize;
    let mut out = Word::empty();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let column = tok.as_ptr() as usize - base + 1;
        out = &out * &parse_token(tok, column)?;
    }
    Ok(out)
}

fn parse_token(tok: &str, column: usize) -> Result<Word> {
    let bad = || Error::syntax(1, column, format!("bad word token {tok:?}"));
    let body = tok.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    if body.len() == tok.len() {
        return Err(bad());
    }
    let (gen, exp) = match body.split_once('^') {
        Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
        None => (body, 1),
    };
    let gen: usize = gen.parse().map_err(|_| bad())?;
    if gen == 0 || gen > i32::MAX as usize {
        return Err(bad());
    }
    Ok(Word::generator(gen).pow(exp))
}

/// `g h g^-1 h^-1`.
pub fn commutator(g: &Word, h: &Word) -> Word {
    let gh = g * h;
    &gh * &(h * g).inverse()
}

/// The alternating product `(gh)_m = g h g h ...` with `m` factors.
pub fn alt(g: &Word, h: &Word, m: u64) -> Result<Word> {
    if m == 0 {
        return Err(Error::InvalidArgument("alternating length must be >= 1".into()));
    }
    let mut out = Word::empty();
    for k in 0..m {
        out = if k % 2 == 0 { &out * g } else { &out * h };
    }
    Ok(out)
}

/// The relator `(a_i a_j)^n(i,j) (a_j a_i)^-n(i,j)` for `(i, j) ∈ B`.
pub fn relator(i: usize, j: usize, p: &EvenPresentation) -> Result<Word> {
    let (_, h) = p.require_pair(i, j)?;
    let (ai, aj) = (Word::generator(i), Word::generator(j));
    let h = i64::try_from(h).map_err(|_| Error::Overflow("half-label"))?;
    Ok(&(&ai * &aj).pow(h) * &(&aj * &ai).pow(-h))
}

/// The word `w_k` with `w_1 = 1` and `w_{k+1} = [ab, w_k [a,b]^k] w_k`, so that
/// `(ab)^k (ba)^-k = w_k [a,b]^k` and `w_k` lies in `[F,[F,F]]`.
pub fn w_lemma(a: &Word, b: &Word, k: u32) -> Result<Word> {
    w_lemma_capped(a, b, k, DEFAULT_MAX_LEMMA_K)
}

pub fn w_lemma_capped(a: &Word, b: &Word, k: u32, max_k: u32) -> Result<Word> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if k > max_k {
        return Err(Error::ResourceCap {
            what: "lemma recursion depth k",
            limit: max_k as usize,
        });
    }
    let ab = a * b;
    let c = commutator(a, b);
    let mut w = Word::empty();
    for step in 1..k {
        let inner = &w * &c.pow(i64::from(step));
        w = &commutator(&ab, &inner) * &w;
    }
    Ok(w)
}

/// The pair `(a_i, (a_j a_i)_{2n(i,j)-1})` whose commutator is the relator at `(i, j)`.
pub fn comm_rel_pair(i: usize, j: usize, p: &EvenPresentation) -> Result<(Word, Word)> {
    let (_, h) = p.require_pair(i, j)?;
    let (ai, aj) = (Word::generator(i), Word::generator(j));
    let len = h
        .checked_mul(2)
        .ok_or(Error::Overflow("alternating length"))?
        - 1;
    let second = alt(&aj, &ai, len)?;
    Ok((ai, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(letters: &[i32]) -> Word {
        Word::from_letters(letters.iter().copied()).unwrap()
    }

    #[test]
    fn reduce_cancels() {
        assert!(w(&[1, -1]).is_empty());
        assert_eq!(w(&[1, 2, -2, 1]).letters(), &[1, 1]);
        assert_eq!(w(&[1, 2, -2, -1, 3]).letters(), &[3]);
        assert!(Word::from_letters([0]).is_err());
    }

    #[test]
    fn commutator_basics() {
        let (a1, a2) = (Word::generator(1), Word::generator(2));
        assert_eq!(commutator(&a1, &a2).letters(), &[1, 2, -1, -2]);
        assert!(commutator(&a1, &a1).is_empty());
        assert!(commutator(&a1, &Word::empty()).is_empty());
    }

    #[test]
    fn alternating_words() {
        let (a1, a2) = (Word::generator(1), Word::generator(2));
        assert_eq!(alt(&a1, &a2, 2).unwrap().letters(), &[1, 2]);
        assert_eq!(alt(&a1, &a2, 3).unwrap().letters(), &[1, 2, 1]);
        assert_eq!(alt(&a2, &a1, 3).unwrap().letters(), &[2, 1, 2]);
        assert!(alt(&a1, &a2, 0).is_err());
    }

    #[test]
    fn relators() {
        let p = EvenPresentation::from_half_labels(3, [(1, 2, 1), (1, 3, 2)]).unwrap();
        assert_eq!(relator(1, 2, &p).unwrap().letters(), &[1, 2, -1, -2]);
        // (a1 a3)^2 (a3 a1)^-2 = a1 a3 a1 a3 a1^-1 a3^-1 a1^-1 a3^-1
        assert_eq!(
            relator(1, 3, &p).unwrap().letters(),
            &[1, 3, 1, 3, -1, -3, -1, -3]
        );
        assert_eq!(relator(2, 3, &p), Err(Error::NotInB { i: 2, j: 3 }));
        for pair in p.pairs() {
            let r = relator(pair.i, pair.j, &p).unwrap();
            assert!(r.exponent_sums(3).iter().all(|&e| e == 0));
        }
    }

    #[test]
    fn lemma_base_cases() {
        let (a, b) = (Word::generator(1), Word::generator(2));
        assert!(w_lemma(&a, &b, 1).unwrap().is_empty());
        let w2 = w_lemma(&a, &b, 2).unwrap();
        assert_eq!(w2, commutator(&(&a * &b), &commutator(&a, &b)));
        let lhs = &(&a * &b).pow(2) * &(&b * &a).pow(-2);
        assert_eq!(lhs, &w2 * &commutator(&a, &b).pow(2));
    }

    #[test]
    fn lemma_k5_identity() {
        let (a, b) = (Word::generator(1), Word::generator(2));
        let w5 = w_lemma(&a, &b, 5).unwrap();
        let check = &(&(&(&a * &b).pow(5) * &(&b * &a).pow(-5)) * &commutator(&a, &b).pow(-5))
            * &w5.inverse();
        assert!(check.is_empty());
    }

    #[test]
    fn lemma_cap() {
        let (a, b) = (Word::generator(1), Word::generator(2));
        assert!(matches!(
            w_lemma_capped(&a, &b, 5, 4),
            Err(Error::ResourceCap { limit: 4, .. })
        ));
        assert!(w_lemma(&a, &b, 0).is_err());
    }

    #[test]
    fn comm_rel_pairs() {
        let p = EvenPresentation::from_half_labels(2, [(1, 2, 2)]).unwrap();
        let (g, h) = comm_rel_pair(1, 2, &p).unwrap();
        assert_eq!(g.letters(), &[1]);
        assert_eq!(h.letters(), &[2, 1, 2]);
        assert_eq!(commutator(&g, &h), relator(1, 2, &p).unwrap());

        let p = EvenPresentation::from_half_labels(2, [(1, 2, 1)]).unwrap();
        let (g, h) = comm_rel_pair(1, 2, &p).unwrap();
        assert_eq!((g.letters(), h.letters()), (&[1][..], &[2][..]));

        let p = EvenPresentation::from_half_labels(2, [(1, 2, 5)]).unwrap();
        let (g, h) = comm_rel_pair(1, 2, &p).unwrap();
        assert_eq!(commutator(&g, &h), relator(1, 2, &p).unwrap());

        let p = EvenPresentation::from_half_labels(2, []).unwrap();
        assert!(comm_rel_pair(1, 2, &p).is_err());
    }

    #[test]
    fn parse_and_display() {
        let word = parse_word("a3 a3^-1 a1 a2^-1 a2^-1").unwrap();
        assert_eq!(word.letters(), &[1, -2, -2]);
        assert_eq!(word.to_string(), "a1 a2^-2");
        assert_eq!(word.display_with("s").to_string(), "s1 s2^-2");
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("1").unwrap().is_empty());
        assert_eq!(Word::empty().to_string(), "1");
        assert!(parse_word("a0").is_err());
        assert!(parse_word("x").is_err());
        assert!(parse_word("a1^z").is_err());
    }

    fn arb_word() -> impl Strategy<Value = Vec<i32>> {
        prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..24)
    }

    /// Naive repeated-scan reduction, independent of the stack-based one.
    fn naive_reduce(mut v: Vec<i32>) -> Vec<i32> {
        loop {
            let pos = v.windows(2).position(|p| p[0] == -p[1]);
            match pos {
                Some(k) => {
                    v.drain(k..k + 2);
                }
                None => return v,
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_matches_naive(v in arb_word()) {
            let word = Word::from_letters(v.clone()).unwrap();
            let expected = naive_reduce(v);
            prop_assert_eq!(word.letters(), expected.as_slice());
            let again = Word::from_letters(word.letters().iter().copied()).unwrap();
            prop_assert_eq!(again, word);
        }

        #[test]
        fn inverse_cancels(v in arb_word()) {
            let word = Word::from_letters(v).unwrap();
            prop_assert!((&word * &word.inverse()).is_empty());
        }

        #[test]
        fn display_parse_round_trip(v in arb_word()) {
            let word = Word::from_letters(v).unwrap();
            prop_assert_eq!(parse_word(&word.to_string()).unwrap(), word);
        }
    }
}
