//! Cup products `H^1 × H^1 → H^2` for even Artin groups.
//!
//! `H^1(A_M) = Hom(A_M, ℤ)` has the dual basis `β_i` of `a_i`, and `H^2(A_M)`
//! has the dual basis `β_ij` of `α_ij`, `(i, j) ∈ B`. Then
//! `β_i ⌣ β_j = n(i,j) β_ij` for finite labels and `0` otherwise.

use std::collections::BTreeMap;
use std::fmt;

use crate::coxmat::{EvenPresentation, Pair};
use crate::error::{Error, Result};
use crate::words::Word;

const OVERFLOW: Error = Error::Overflow("cup product coefficient");

/// A homomorphism `A_M → ℤ`, given by its values on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<i64>,
}

impl Character {
    pub fn new(values: Vec<i64>) -> Self {
        Character { values }
    }

    /// `β_i` on `n` generators.
    pub fn dual(i: usize, n: usize) -> Self {
        assert!((1..=n).contains(&i), "dual basis index out of range");
        let mut values = vec![0; n];
        values[i - 1] = 1;
        Character { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value on a word, through its exponent sums.
    pub fn eval(&self, w: &Word) -> Result<i64> {
        w.check_alphabet(self.values.len())?;
        w.exponent_sums(self.values.len())
            .iter()
            .zip(&self.values)
            .try_fold(0i64, |acc, (&e, &v)| {
                e.checked_mul(v)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(OVERFLOW)
            })
    }
}

/// `Σ_k φ(g_k) ψ(h_k) − ψ(g_k) φ(h_k)`: the value of `φ ⌣ ψ` on the class of
/// `∏ [g_k, h_k]`, which the caller warrants lies in `R`.
pub fn hopf_pairing(comms: &[(Word, Word)], phi: &Character, psi: &Character) -> Result<i64> {
    let mut total = 0i64;
    for (g, h) in comms {
        let a = phi.eval(g)?.checked_mul(psi.eval(h)?).ok_or(OVERFLOW)?;
        let b = psi.eval(g)?.checked_mul(phi.eval(h)?).ok_or(OVERFLOW)?;
        total = a
            .checked_sub(b)
            .and_then(|d| total.checked_add(d))
            .ok_or(OVERFLOW)?;
    }
    Ok(total)
}

/// Coefficient `c` in `β_i ⌣ β_j = c β_{min(i,j) max(i,j)}`.
///
/// Zero on the diagonal and at infinite labels; `β_j ⌣ β_i = −β_i ⌣ β_j`.
pub fn cup(i: usize, j: usize, p: &EvenPresentation) -> Result<i64> {
    for idx in [i, j] {
        if idx == 0 || idx > p.n() {
            return Err(Error::IndexOutOfRange { index: idx, n: p.n() });
        }
    }
    if i == j {
        return Ok(0);
    }
    let Some(h) = p.half_label(i, j) else {
        return Ok(0);
    };
    let h = i64::try_from(h).map_err(|_| OVERFLOW)?;
    Ok(if i < j { h } else { -h })
}

/// `φ ⌣ ψ` in the basis `β_pq`, indexed by `B`.
pub fn cup_product(phi: &Character, psi: &Character, p: &EvenPresentation) -> Result<Vec<i64>> {
    if phi.values.len() != p.n() || psi.values.len() != p.n() {
        return Err(Error::InvalidArgument("character length differs from n".into()));
    }
    p.pairs()
        .iter()
        .map(|pair| {
            let (a, b) = (pair.i - 1, pair.j - 1);
            let minor = phi.values[a]
                .checked_mul(psi.values[b])
                .zip(phi.values[b].checked_mul(psi.values[a]))
                .and_then(|(x, y)| x.checked_sub(y))
                .ok_or(OVERFLOW)?;
            minor.checked_mul(cup(pair.i, pair.j, p)?).ok_or(OVERFLOW)
        })
        .collect()
}

/// `β_i ⌣ β_j` for all `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupTable {
    n: usize,
    entries: BTreeMap<Pair, i64>,
}

impl CupTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry for `i < j`; for other orders use [`cup`].
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries.get(&Pair::new(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Pair, i64)> + '_ {
        self.entries.iter().map(|(&p, &c)| (p, c))
    }
}

pub fn cup_table(p: &EvenPresentation) -> Result<CupTable> {
    let mut entries = BTreeMap::new();
    for i in 1..=p.n() {
        for j in i + 1..=p.n() {
            entries.insert(Pair::new(i, j), cup(i, j, p)?);
        }
    }
    Ok(CupTable { n: p.n(), entries })
}

/// The full antisymmetric matrix, one row per line.
impl fmt::Display for CupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |i: usize, j: usize| match i.cmp(&j) {
            std::cmp::Ordering::Less => self.get(i, j),
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => -self.get(j, i),
        };
        let width = (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| cell(i, j).to_string().len())
            .max()
            .unwrap_or(1);
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n)
                .map(|j| format!("{:>width$}", cell(i, j)))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
