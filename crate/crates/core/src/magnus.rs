//! Magnus expansion truncated at degree 2.
//!
//! `a_i` maps to `1 + X_i` and `a_i^-1` to `1 - X_i + X_i^2` in the ring of
//! noncommutative power series modulo terms of degree 3. The degree-1 part is
//! the abelianization; on `[F,F]` the antisymmetric part of the degree-2
//! coefficients is the image in `[F,F]/[F,[F,F]] ≅ Λ²ℤⁿ`, with `[a_i,a_j]`
//! going to `e_i ∧ e_j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use crate::error::{Error, Result};
use crate::words::Word;

const OVERFLOW: Error = Error::Overflow("Magnus coefficient");

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(OVERFLOW)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(OVERFLOW)
}

/// Degree ≤ 2 part of a Magnus expansion over `n` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusTruncation {
    n: usize,
    ab: Vec<i64>,
    // deg2[i * n + j] is the coefficient of X_{i+1} X_{j+1}.
    deg2: Vec<i64>,
}

impl MagnusTruncation {
    pub fn identity(n: usize) -> Self {
        MagnusTruncation {
            n,
            ab: vec![0; n],
            deg2: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree-1 coefficients, i.e. exponent sums.
    pub fn ab(&self) -> &[i64] {
        &self.ab
    }

    /// Coefficient of `X_i X_j` (1-based).
    pub fn deg2(&self, i: usize, j: usize) -> i64 {
        self.deg2[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_identity(&self) -> bool {
        self.ab.iter().chain(&self.deg2).all(|&c| c == 0)
    }

    /// Truncated product `(1 + A1 + A2)(1 + B1 + B2) = 1 + (A1+B1) + (A2+B2+A1·B1)`.
    pub fn compose(&self, other: &MagnusTruncation) -> Result<MagnusTruncation> {
        assert_eq!(self.n, other.n, "alphabet sizes differ");
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            out.ab[i] = add(self.ab[i], other.ab[i])?;
            for j in 0..n {
                let cross = mul(self.ab[i], other.ab[j])?;
                let slot = &mut out.deg2[i * n + j];
                *slot = add(add(*slot, other.deg2[i * n + j])?, cross)?;
            }
        }
        Ok(out)
    }

    /// Multiplies on the right by a single letter in place.
    fn push_letter(&mut self, letter: i32) -> Result<()> {
        let n = self.n;
        let g = letter.unsigned_abs() as usize - 1;
        let sign = i64::from(letter.signum());
        // Right factor 1 + sign·X_g (+ X_g^2 for an inverse letter).
        for p in 0..n {
            let slot = &mut self.deg2[p * n + g];
            *slot = add(*slot, mul(sign, self.ab[p])?)?;
        }
        if sign < 0 {
            let slot = &mut self.deg2[g * n + g];
            *slot = add(*slot, 1)?;
        }
        self.ab[g] = add(self.ab[g], sign)?;
        Ok(())
    }
}

/// Degree-2 Magnus truncation of `w` over generators `1..=n`.
pub fn magnus2(w: &Word, n: usize) -> Result<MagnusTruncation> {
    w.check_alphabet(n)?;
    let mut m = MagnusTruncation::identity(n);
    for &l in w.letters() {
        m.push_letter(l)?;
    }
    Ok(m)
}

/// An element of `Λ²ℤⁿ`, stored sparsely over basis pairs `i < j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WedgeVector {
    coeff: BTreeMap<(usize, usize), i64>,
}

impl WedgeVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_i ∧ e_j` for `i != j`; sign follows the order of the arguments.
    pub fn basis(i: usize, j: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(i, j, 1).expect("unit coefficient");
        v
    }

    /// Adds `c · (e_i ∧ e_j)`.
    pub fn add_term(&mut self, i: usize, j: usize, c: i64) -> Result<()> {
        if i == j || c == 0 {
            return Ok(());
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let entry = self.coeff.entry(key).or_insert(0);
        *entry = add(*entry, c)?;
        if *entry == 0 {
            self.coeff.remove(&key);
        }
        Ok(())
    }

    /// Coefficient of `e_i ∧ e_j` with `i < j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.coeff.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_empty()
    }

    /// Nonzero terms in increasing pair order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeff.iter().map(|(&k, &v)| (k, v))
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i, j), &c) in &self.coeff {
            out.add_term(i, j, mul(c, k)?)?;
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.coeff {
            out.add_term(i, j, c)?;
        }
        Ok(out)
    }

    /// `u ∧ v` for vectors `u, v ∈ ℤⁿ` (0-based slices, basis indices 1-based).
    pub fn wedge(u: &[i64], v: &[i64]) -> Result<Self> {
        let mut out = Self::zero();
        for i in 0..u.len() {
            for j in i + 1..v.len() {
                let c = mul(u[i], v[j])?.checked_sub(mul(u[j], v[i])?).ok_or(OVERFLOW)?;
                out.add_term(i + 1, j + 1, c)?;
            }
        }
        Ok(out)
    }
}

impl Add for &WedgeVector {
    type Output = WedgeVector;

    /// # Panics
    ///
    /// On coefficient overflow; use [`WedgeVector::checked_add`] to handle it.
    fn add(self, rhs: &WedgeVector) -> WedgeVector {
        self.checked_add(rhs).expect("wedge coefficient overflow")
    }
}

impl Neg for &WedgeVector {
    type Output = WedgeVector;

    fn neg(self) -> WedgeVector {
        self.scaled(-1).expect("wedge coefficient overflow")
    }
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.terms().enumerate() {
            let sep = match (k, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sep}e{i}^e{j}")?;
            } else {
                write!(f, "{sep}{mag}*e{i}^e{j}")?;
            }
        }
        Ok(())
    }
}

/// Image of `w ∈ [F,F]` in `[F,F]/[F,[F,F]] ≅ Λ²ℤⁿ`.
///
/// On `[F,F]` the degree-2 Magnus coefficients are antisymmetric, so the
/// coefficient of `e_i ∧ e_j` is `deg2(i, j)`.
pub fn wedge_image(w: &Word, n: usize) -> Result<WedgeVector> {
    let m = magnus2(w, n)?;
    if m.ab.iter().any(|&c| c != 0) {
        return Err(Error::NotInCommutator);
    }
    let mut out = WedgeVector::zero();
    for i in 1..=n {
        for j in i + 1..=n {
            out.add_term(i, j, m.deg2(i, j))?;
        }
    }
    Ok(out)
}

/// True iff `w` is trivial in the free nilpotent quotient `F/[F,[F,F]]`.
pub fn class2_trivial(w: &Word) -> Result<bool> {
    Ok(magnus2(w, w.max_generator())?.is_identity())
}
