//! Random and exhaustive test inputs: presentations, words, relator products.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::artin_h::{RelatorFactor, RelatorProduct};
use crate::coxmat::EvenPresentation;
use crate::words::Word;

/// Half-labels of the labels `2, 4, 6, 8, ∞`.
pub const SMALL_HALF_LABELS: [Option<u64>; 5] = [Some(1), Some(2), Some(3), Some(4), None];

fn build(n: usize, choice: &[Option<u64>]) -> EvenPresentation {
    let mut entries = Vec::new();
    let mut k = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if let Some(h) = choice[k] {
                entries.push((i, j, h));
            }
            k += 1;
        }
    }
    EvenPresentation::from_half_labels(n, entries).expect("generated labels are valid")
}

/// Every presentation on `n` generators with half-labels drawn from `labels`.
pub fn all_presentations(n: usize, labels: &[Option<u64>]) -> Vec<EvenPresentation> {
    let slots = n * n.saturating_sub(1) / 2;
    let total = labels.len().pow(slots as u32);
    (0..total)
        .map(|mut code| {
            let choice: Vec<Option<u64>> = (0..slots)
                .map(|_| {
                    let c = labels[code % labels.len()];
                    code /= labels.len();
                    c
                })
                .collect();
            build(n, &choice)
        })
        .collect()
}

pub fn random_presentation<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    labels: &[Option<u64>],
) -> EvenPresentation {
    let slots = n * n.saturating_sub(1) / 2;
    let choice: Vec<Option<u64>> = (0..slots)
        .map(|_| *labels.choose(rng).expect("nonempty label set"))
        .collect();
    build(n, &choice)
}

/// A reduced word over `a_1..a_n` obtained from at most `max_len` random letters.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| {
        let g = rng.gen_range(1..=n) as i32;
        if rng.gen_bool(0.5) {
            g
        } else {
            -g
        }
    });
    Word::from_letters(letters).expect("letters are nonzero")
}

/// Up to `max_factors` conjugated relators over pairs of `B`; empty when `B` is.
pub fn random_relator_product<R: Rng + ?Sized>(
    rng: &mut R,
    p: &EvenPresentation,
    max_factors: usize,
    max_conj_len: usize,
) -> RelatorProduct {
    if p.pairs().is_empty() {
        return RelatorProduct::default();
    }
    let count = rng.gen_range(0..=max_factors);
    RelatorProduct::new(
        (0..count)
            .map(|_| RelatorFactor {
                pair: *p.pairs().choose(rng).expect("B nonempty"),
                exp: if rng.gen_bool(0.5) { 1 } else { -1 },
                conj: random_word(rng, p.n(), max_conj_len),
            })
            .collect(),
    )
}
