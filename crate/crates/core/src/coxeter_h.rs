//! First and second homology of even Coxeter groups.
//!
//! `W_M = F'/R'` with `R'` the normal closure of `s_i^2` and the relators
//! `(s_i s_j)^n(i,j) (s_j s_i)^-n(i,j)`. `H_2(W_M)` is elementary abelian with
//! basis the classes of `[s_i,s_j]^n(i,j)`, `(i, j) ∈ B`, and the surjection
//! `A_M → W_M` induces reduction mod 2 in these bases.

use std::fmt;

use crate::artin_h::{h2, ArtinH2Class, H2Basis};
use crate::coxmat::EvenPresentation;
use crate::error::Result;
use crate::finite_oracle::snf::{AbelianGroup, IntMatrix};
use crate::words::{comm_rel_pair, relator, Word};

/// A class in `H_2(W_M) ≅ 𝔽₂^B`, indexed by `B` in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxH2Class {
    bits: Vec<bool>,
}

impl CoxH2Class {
    pub fn new(bits: Vec<bool>) -> Self {
        CoxH2Class { bits }
    }

    pub fn zero(p: &EvenPresentation) -> Self {
        CoxH2Class {
            bits: vec![false; p.pairs().len()],
        }
    }

    pub fn unit(i: usize, j: usize, p: &EvenPresentation) -> Result<Self> {
        let (k, _) = p.require_pair(i, j)?;
        let mut c = Self::zero(p);
        c.bits[k] = true;
        Ok(c)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Coordinates as 0/1 integers.
    pub fn coords(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| u8::from(b)).collect()
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }
}

impl fmt::Display for CoxH2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Basis of `H_2(W_M)` over `𝔽₂`; print representatives with prefix `s`.
pub fn cox_h2(p: &EvenPresentation) -> H2Basis {
    h2(p)
}

/// The map induced by `A_M → W_M`: coordinatewise reduction mod 2.
pub fn rho_star(c: &ArtinH2Class) -> CoxH2Class {
    CoxH2Class {
        bits: c.coords().iter().map(|&x| x.rem_euclid(2) == 1).collect(),
    }
}

/// Matrix of `ρ*` in the two bases, column `k` the image of the `k`-th
/// basis class.
pub fn rho_star_matrix(p: &EvenPresentation) -> Vec<Vec<u8>> {
    let b = p.pairs().len();
    let mut m = vec![vec![0u8; b]; b];
    for (k, pair) in p.pairs().iter().enumerate() {
        let image = rho_star(&ArtinH2Class::unit(pair.i, pair.j, p).expect("pair in B"));
        for (r, bit) in image.coords().into_iter().enumerate() {
            m[r][k] = bit;
        }
    }
    m
}

/// The commuting pair `(s_i, (s_j s_i)_{2n(i,j)-1})` representing the basis
/// class at `(i, j)`. Words are over the same letters as in the Artin case;
/// display them with prefix `s`.
pub fn cox_pontryagin(i: usize, j: usize, p: &EvenPresentation) -> Result<((Word, Word), CoxH2Class)> {
    let pair = comm_rel_pair(i, j, p)?;
    Ok((pair, CoxH2Class::unit(i, j, p)?))
}

/// `H_1(W_M)` from the abelianized presentation.
pub fn cox_h1(p: &EvenPresentation) -> Result<AbelianGroup> {
    let n = p.n();
    let mut rows: Vec<Vec<i64>> = (1..=n)
        .map(|i| Word::generator(i).pow(2).exponent_sums(n))
        .collect();
    for pair in p.pairs() {
        rows.push(relator(pair.i, pair.j, p)?.exponent_sums(n));
    }
    Ok(AbelianGroup::from_relations(&IntMatrix::from_rows(&rows)?))
}
