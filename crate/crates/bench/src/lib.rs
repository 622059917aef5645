//! Fixtures shared by the benchmarks.

use evenhom_core::{EvenPresentation, RelatorFactor, RelatorProduct, Word};

/// Rank-`n` presentation with every half-label equal to `h`.
pub fn uniform(n: usize, h: u64) -> EvenPresentation {
    let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j, h)));
    EvenPresentation::from_half_labels(n, pairs).expect("valid labels")
}

/// One factor per pair, each conjugated by a word of length about `conj_len`.
pub fn product_over_pairs(p: &EvenPresentation, conj_len: usize) -> RelatorProduct {
    let n = p.n() as i32;
    let factors = p
        .pairs()
        .iter()
        .enumerate()
        .map(|(k, pair)| {
            let letters = (0..conj_len).map(|t| {
                let g = ((k + t) as i32 % n) + 1;
                if t % 3 == 2 { -g } else { g }
            });
            RelatorFactor {
                pair: *pair,
                exp: if k % 2 == 0 { 1 } else { -1 },
                conj: Word::from_letters(letters).expect("nonzero letters"),
            }
        })
        .collect();
    RelatorProduct::new(factors)
}
