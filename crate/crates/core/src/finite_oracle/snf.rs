//! Smith normal form of integer matrices.
//!
//! Elimination runs first in checked `i64`; if any intermediate overflows it
//! restarts over `BigInt`, so results are always exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) -> Result<()> {
        let slot = &mut self.data[r * self.cols + c];
        *slot = slot
            .checked_add(v)
            .ok_or(Error::Overflow("matrix entry"))?;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Matrix product, with overflow reported as an error.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b != 0 {
                        let v = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                        out.add_to(r, c, v)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

trait SnfRing: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Floor quotient, or `None` on overflow.
    fn quotient(&self, d: &Self) -> Option<Self>;
    fn is_negative(&self) -> bool;
    fn is_multiple_of(&self, d: &Self) -> bool;
    /// `self - q * x`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn into_bigint(self) -> BigInt;
}

impl SnfRing for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        self.checked_div_euclid(*d)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        self.checked_rem(*d).is_none_or(|r| r == 0)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn into_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}

impl SnfRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        Some(self.div_floor(d))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_multiple_of(&self, d: &Self) -> bool {
        Zero::is_zero(&self.mod_floor(d))
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn into_bigint(self) -> BigInt {
        self
    }
}

struct Overflowed;

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    left: Option<Vec<T>>,
}

impl<T: SnfRing> Work<T> {
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
        if let Some(u) = &mut self.left {
            for c in 0..self.rows {
                u.swap(r1 * self.rows + c, r2 * self.rows + c);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + c1, r * self.cols + c2);
        }
    }

    /// row[dst] -= q * row[src], starting at column `from`.
    fn row_sub(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflowed> {
        for c in from..self.cols {
            let s = self.a[src * self.cols + c].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.a[dst * self.cols + c];
            *d = d.sub_mul(q, &s).ok_or(Overflowed)?;
        }
        if let Some(u) = &mut self.left {
            let n = self.rows;
            for c in 0..n {
                let s = u[src * n + c].clone();
                if s.is_zero() {
                    continue;
                }
                let d = &mut u[dst * n + c];
                *d = d.sub_mul(q, &s).ok_or(Overflowed)?;
            }
        }
        Ok(())
    }

    /// col[dst] -= q * col[src], starting at row `from`.
    fn col_sub(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflowed> {
        for r in from..self.rows {
            let s = self.a[r * self.cols + src].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.a[r * self.cols + dst];
            *d = d.sub_mul(q, &s).ok_or(Overflowed)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<(), Overflowed> {
        for c in 0..self.cols {
            let v = &mut self.a[r * self.cols + c];
            *v = v.neg().ok_or(Overflowed)?;
        }
        if let Some(u) = &mut self.left {
            let n = self.rows;
            for c in 0..n {
                let v = &mut u[r * n + c];
                *v = v.neg().ok_or(Overflowed)?;
            }
        }
        Ok(())
    }

    /// Smallest nonzero entry of the trailing submatrix, stopping early at a unit.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = self.at(r, c);
                if v.is_zero() {
                    continue;
                }
                if v.is_unit() {
                    return Some((r, c));
                }
                if best.is_none_or(|(br, bc)| v.cmp_abs(self.at(br, bc)) == Ordering::Less) {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Result<Vec<T>, Overflowed> {
        let limit = self.rows.min(self.cols);
        let mut diag = Vec::new();
        for t in 0..limit {
            let Some((pr, pc)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let pivot = self.at(t, t).clone();
                let mut clean = true;
                for r in t + 1..self.rows {
                    if self.at(r, t).is_zero() {
                        continue;
                    }
                    let q = self.at(r, t).quotient(&pivot).ok_or(Overflowed)?;
                    self.row_sub(r, t, &q, t)?;
                    if !self.at(r, t).is_zero() {
                        clean = false;
                    }
                }
                for c in t + 1..self.cols {
                    if self.at(t, c).is_zero() {
                        continue;
                    }
                    let q = self.at(t, c).quotient(&pivot).ok_or(Overflowed)?;
                    self.col_sub(c, t, &q, t)?;
                    if !self.at(t, c).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // A remainder smaller than the pivot survived; move it in.
                    let mut best = (t, t);
                    for r in t + 1..self.rows {
                        let v = self.at(r, t);
                        if !v.is_zero() && v.cmp_abs(self.at(best.0, best.1)) == Ordering::Less {
                            best = (r, t);
                        }
                    }
                    for c in t + 1..self.cols {
                        let v = self.at(t, c);
                        if !v.is_zero() && v.cmp_abs(self.at(best.0, best.1)) == Ordering::Less {
                            best = (t, c);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                if pivot.is_unit() {
                    break;
                }
                let offender = (t + 1..self.rows).find(|&r| {
                    (t + 1..self.cols).any(|c| !self.at(r, c).is_multiple_of(&pivot))
                });
                match offender {
                    Some(r) => {
                        let minus_one = T::from_i64(-1);
                        self.row_sub(t, r, &minus_one, t)?;
                    }
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            diag.push(self.at(t, t).clone());
        }
        Ok(diag)
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) and, optionally, a
/// unimodular `U` with `U A V = D`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    invariant_factors: Vec<BigInt>,
    rows: usize,
    left: Option<Vec<Vec<BigInt>>>,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors as `u64`, if they all fit.
    pub fn factors_u64(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Decides whether `A x = b` has an integer solution.
    ///
    /// Requires the form to have been computed by [`snf_with_left`].
    pub fn in_image(&self, b: &[i64]) -> Result<bool> {
        let u = self
            .left
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("left transform was not computed".into()))?;
        if b.len() != self.rows {
            return Err(Error::InvalidArgument("vector length mismatch".into()));
        }
        let support: Vec<(usize, i64)> = b
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(k, v)| (k, *v))
            .collect();
        for (r, urow) in u.iter().enumerate() {
            let y: BigInt = support.iter().map(|&(k, v)| &urow[k] * v).sum();
            let ok = match self.invariant_factors.get(r) {
                Some(d) => Zero::is_zero(&y.mod_floor(d)),
                None => Zero::is_zero(&y),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn compute<T: SnfRing>(m: &IntMatrix, with_left: bool) -> Result<SmithForm, Overflowed> {
    let rows = m.rows;
    let mut work = Work {
        rows,
        cols: m.cols,
        a: m.data.iter().map(|&v| T::from_i64(v)).collect(),
        left: with_left.then(|| {
            let mut u = vec![T::zero(); rows * rows];
            for k in 0..rows {
                u[k * rows + k] = T::one();
            }
            u
        }),
    };
    let diag = work.run()?;
    let left = work.left.map(|u| {
        u.chunks(rows.max(1))
            .take(rows)
            .map(|row| row.iter().cloned().map(SnfRing::into_bigint).collect())
            .collect()
    });
    Ok(SmithForm {
        invariant_factors: diag.into_iter().map(SnfRing::into_bigint).collect(),
        rows,
        left,
    })
}

fn dispatch(m: &IntMatrix, with_left: bool) -> SmithForm {
    match compute::<i64>(m, with_left) {
        Ok(f) => f,
        Err(Overflowed) => match compute::<BigInt>(m, with_left) {
            Ok(f) => f,
            Err(Overflowed) => unreachable!("BigInt arithmetic cannot overflow"),
        },
    }
}

/// Smith normal form invariant factors of `m`.
pub fn snf(m: &IntMatrix) -> SmithForm {
    dispatch(m, false)
}

/// Like [`snf`], also recording the row transform so that
/// [`SmithForm::in_image`] can decide membership in the column space.
pub fn snf_with_left(m: &IntMatrix) -> SmithForm {
    dispatch(m, true)
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d_1 ⊕ ... ⊕ ℤ/d_k`, `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Cokernel of the map whose matrix has one relation per row, one
    /// generator per column.
    pub fn from_relations(relations: &IntMatrix) -> Self {
        let form = snf(relations);
        AbelianGroup {
            free_rank: relations.cols() - form.rank(),
            torsion: form
                .invariant_factors()
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| d.to_u64().unwrap_or(u64::MAX))
            .collect()
    }

    /// True for `(ℤ/2)^k`, including the trivial group.
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(|d| *d == BigInt::from(2))
    }

    /// Dimension of `G ⊗ 𝔽₂`.
    pub fn f2_rank(&self) -> usize {
        self.free_rank + self.torsion.iter().filter(|d| d.is_even()).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut k = 0;
        while k < self.torsion.len() {
            let d = &self.torsion[k];
            let run = self.torsion[k..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 {
                format!("Z/{d}")
            } else {
                format!("(Z/{d})^{run}")
            });
            k += run;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
