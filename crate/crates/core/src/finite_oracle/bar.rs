//! Integral homology of a finite group from the normalized bar complex.
//!
//! `C_k` is free on tuples `[g_1|...|g_k]` of non-identity elements, and with
//! trivial coefficients
//!
//! ```text
//! ∂[g_1|...|g_k] = [g_2|...|g_k]
//!                + Σ_{i=1}^{k-1} (-1)^i [g_1|...|g_i g_{i+1}|...|g_k]
//!                + (-1)^k [g_1|...|g_{k-1}]
//! ```
//!
//! where tuples containing the identity are zero. Matrices act on column
//! vectors: rows index `C_{k-1}`, columns index `C_k`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::finite_oracle::snf::{snf, AbelianGroup, IntMatrix};
use crate::finite_oracle::table::GroupTable;

/// Default order cap for `H_2`; `∂_3` has `(|G|-1)^3` columns.
pub const DEFAULT_MAX_ORDER_H2: usize = 16;
/// Default order cap for `H_1`.
pub const DEFAULT_MAX_ORDER_H1: usize = 64;

/// Indexing of normalized bar basis tuples for one group.
#[derive(Debug, Clone)]
pub struct BarBasis {
    elems: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl BarBasis {
    pub fn new(g: &GroupTable) -> Self {
        let elems: Vec<usize> = g.non_identity().collect();
        let mut pos = vec![None; g.order()];
        for (k, &x) in elems.iter().enumerate() {
            pos[x] = Some(k);
        }
        BarBasis { elems, pos }
    }

    /// Rank of `C_k`.
    pub fn dim(&self, k: usize) -> usize {
        self.elems.len().pow(k as u32)
    }

    /// Column index of a tuple, or `None` if it contains the identity.
    pub fn index(&self, tuple: &[usize]) -> Option<usize> {
        let base = self.elems.len();
        tuple
            .iter()
            .try_fold(0usize, |acc, &x| Some(acc * base + self.pos[x]?))
    }

    /// The tuple with a given index in `C_k`.
    pub fn tuple(&self, k: usize, mut index: usize) -> Vec<usize> {
        let base = self.elems.len();
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = self.elems[index % base];
            index /= base;
        }
        out
    }
}

/// Boundary terms of one tuple as `(coefficient, face)` pairs, faces unnormalized.
pub fn face_terms(g: &GroupTable, tuple: &[usize]) -> Vec<(i64, Vec<usize>)> {
    let k = tuple.len();
    let mut out = Vec::with_capacity(k + 1);
    out.push((1, tuple[1..].to_vec()));
    for i in 1..k {
        let mut face = Vec::with_capacity(k - 1);
        face.extend_from_slice(&tuple[..i - 1]);
        face.push(g.product(tuple[i - 1], tuple[i]));
        face.extend_from_slice(&tuple[i + 1..]);
        out.push((if i % 2 == 0 { 1 } else { -1 }, face));
    }
    out.push((if k % 2 == 0 { 1 } else { -1 }, tuple[..k - 1].to_vec()));
    out
}

/// Matrix of `∂_k : C_k → C_{k-1}` for `k ≥ 1`.
pub fn boundary_matrix(g: &GroupTable, k: usize) -> Result<IntMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("boundary degree must be >= 1".into()));
    }
    let basis = BarBasis::new(g);
    let mut m = IntMatrix::zeros(basis.dim(k - 1), basis.dim(k));
    for col in 0..basis.dim(k) {
        let tuple = basis.tuple(k, col);
        for (sign, face) in face_terms(g, &tuple) {
            if let Some(row) = basis.index(&face) {
                m.add_to(row, col, sign)?;
            }
        }
    }
    Ok(m)
}

pub fn bar_h(g: &GroupTable, k: usize) -> Result<AbelianGroup> {
    let cap = match k {
        1 => DEFAULT_MAX_ORDER_H1,
        _ => DEFAULT_MAX_ORDER_H2,
    };
    bar_h_capped(g, k, cap)
}

/// `H_k(G; ℤ)` for `k ∈ {1, 2}`.
pub fn bar_h_capped(g: &GroupTable, k: usize, max_order: usize) -> Result<AbelianGroup> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("bar homology degree {k} not supported")));
    }
    if g.order() > max_order {
        return Err(Error::ResourceCap {
            what: "group order for bar homology",
            limit: max_order,
        });
    }
    let basis = BarBasis::new(g);
    // ∂_1 = 0, so ker ∂_k has rank dim C_k - rank ∂_k.
    let outgoing_rank = if k == 1 { 0 } else { snf(&boundary_matrix(g, k)?).rank() };
    let incoming = snf(&boundary_matrix(g, k + 1)?);
    Ok(AbelianGroup {
        free_rank: basis.dim(k) - outgoing_rank - incoming.rank(),
        torsion: incoming
            .invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect(),
    })
}
