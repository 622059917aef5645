//! Pontryagin products in the normalized bar complex.
//!
//! For commuting `g, h` the 2-cycle `⟨g,h⟩ = [g|h] − [h|g]` is the image of
//! the fundamental class of a torus. Chains are integer combinations of
//! tuples; any tuple with an identity entry is zero and is dropped on
//! insertion.

use std::collections::BTreeMap;
use std::fmt;

use crate::artin_h::ArtinH2Class;
use crate::coxmat::EvenPresentation;
use crate::error::{Error, Result};
use crate::finite_oracle::bar::{boundary_matrix, BarBasis, DEFAULT_MAX_ORDER_H2};
use crate::finite_oracle::snf::{snf_with_left, SmithForm};
use crate::finite_oracle::table::GroupTable;
use crate::group::Group;
use crate::words::{comm_rel_pair, Word};

const OVERFLOW: Error = Error::Overflow("chain coefficient");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarChain<E: Ord> {
    degree: usize,
    terms: BTreeMap<Vec<E>, i64>,
}

impl<E: Clone + Ord> BarChain<E> {
    pub fn zero(degree: usize) -> Self {
        BarChain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff · [t_1|...|t_k]`, normalized in `g`.
    pub fn term<G: Group<Elem = E>>(g: &G, tuple: Vec<E>, coeff: i64) -> Result<Self> {
        let mut c = Self::zero(tuple.len());
        c.add_term(g, tuple, coeff)?;
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[E], i64)> + '_ {
        self.terms.iter().map(|(t, &c)| (t.as_slice(), c))
    }

    pub fn coefficient(&self, tuple: &[E]) -> i64 {
        self.terms.get(tuple).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term<G: Group<Elem = E>>(&mut self, g: &G, tuple: Vec<E>, coeff: i64) -> Result<()> {
        if tuple.len() != self.degree {
            return Err(Error::InvalidArgument(format!(
                "tuple of length {} added to a chain of degree {}",
                tuple.len(),
                self.degree
            )));
        }
        if coeff == 0 || tuple.iter().any(|x| g.is_identity(x)) {
            return Ok(());
        }
        self.accumulate(tuple, coeff)
    }

    // Adds an already normalized term.
    fn accumulate(&mut self, tuple: Vec<E>, coeff: i64) -> Result<()> {
        let entry = self.terms.entry(tuple).or_insert(0);
        *entry = entry.checked_add(coeff).ok_or(OVERFLOW)?;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
        Ok(())
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "chain degrees differ: {} and {}",
                self.degree, other.degree
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (t, &c) in &other.terms {
            out.accumulate(t.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BarChain {
            degree: self.degree,
            terms: self.terms.iter().map(|(t, &c)| (t.clone(), -c)).collect(),
        }
    }

    /// Renders as `[g|h] - [h|g]` using the given element formatter.
    pub fn format_with(&self, elem: impl Fn(&E) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (t, &c)) in self.terms.iter().enumerate() {
            let body: Vec<String> = t.iter().map(&elem).collect();
            let sign = match (k, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sign);
            if c.unsigned_abs() != 1 {
                out.push_str(&format!("{}*", c.unsigned_abs()));
            }
            out.push_str(&format!("[{}]", body.join("|")));
        }
        out
    }
}

impl<E: Clone + Ord + fmt::Display> fmt::Display for BarChain<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(|e| e.to_string()))
    }
}

/// The normalized bar differential with trivial coefficients.
pub fn bar_boundary<G: Group>(g: &G, c: &BarChain<G::Elem>) -> Result<BarChain<G::Elem>> {
    let k = c.degree;
    if k == 0 {
        return Err(Error::InvalidArgument("boundary of a 0-chain".into()));
    }
    let mut out = BarChain::zero(k - 1);
    for (t, &coeff) in &c.terms {
        out.add_term(g, t[1..].to_vec(), coeff)?;
        for i in 1..k {
            let mut face = Vec::with_capacity(k - 1);
            face.extend_from_slice(&t[..i - 1]);
            face.push(g.mul(&t[i - 1], &t[i]));
            face.extend_from_slice(&t[i + 1..]);
            let sign = if i % 2 == 0 { coeff } else { -coeff };
            out.add_term(g, face, sign)?;
        }
        let last = if k % 2 == 0 { coeff } else { -coeff };
        out.add_term(g, t[..k - 1].to_vec(), last)?;
    }
    Ok(out)
}

fn require_commuting<G: Group>(g: &G, a: &G::Elem, b: &G::Elem) -> Result<()> {
    if g.commutes(a, b) {
        Ok(())
    } else {
        Err(Error::NotCommuting(format!("{a:?} and {b:?}")))
    }
}

/// `⟨a,b⟩ = [a|b] − [b|a]` for commuting `a, b`.
pub fn pontryagin_chain<G: Group>(g: &G, a: &G::Elem, b: &G::Elem) -> Result<BarChain<G::Elem>> {
    require_commuting(g, a, b)?;
    let mut c = BarChain::zero(2);
    c.add_term(g, vec![a.clone(), b.clone()], 1)?;
    c.add_term(g, vec![b.clone(), a.clone()], -1)?;
    Ok(c)
}

/// The 3-chain `[a|b|c] − [b|a|c] + [b|c|a]`, whose boundary is
/// `⟨a,bc⟩ − ⟨a,b⟩ − ⟨a,c⟩` when `a` commutes with `b` and `c`.
pub fn bilinearity_witness<G: Group>(
    g: &G,
    a: &G::Elem,
    b: &G::Elem,
    c: &G::Elem,
) -> Result<BarChain<G::Elem>> {
    require_commuting(g, a, b)?;
    require_commuting(g, a, c)?;
    let mut w = BarChain::zero(3);
    w.add_term(g, vec![a.clone(), b.clone(), c.clone()], 1)?;
    w.add_term(g, vec![b.clone(), a.clone(), c.clone()], -1)?;
    w.add_term(g, vec![b.clone(), c.clone(), a.clone()], 1)?;
    Ok(w)
}

/// The 2-chain representing the class of `∏ [x_k, y_k] ∈ R ∩ [F,F]` under
/// Hopf's isomorphism, with `I_k = [a_1,b_1]⋯[a_k,b_k]`:
///
/// ```text
/// Σ_k [I_{k-1}|a_k] + [I_{k-1}a_k|b_k] − [I_{k-1}a_k b_k a_k^-1|a_k] − [I_k|b_k]
/// ```
///
/// where `a_k, b_k` are the images of `x_k, y_k` under `project`. The caller
/// warrants that the product lies in `R`; otherwise the result is not a cycle.
pub fn hopf_iso_chain<G: Group>(
    g: &G,
    comms: &[(Word, Word)],
    project: impl Fn(&Word) -> Result<G::Elem>,
) -> Result<BarChain<G::Elem>> {
    let mut out = BarChain::zero(2);
    let mut prefix = g.identity();
    for (x, y) in comms {
        let (a, b) = (project(x)?, project(y)?);
        let pa = g.mul(&prefix, &a);
        let pab = g.mul(&pa, &b);
        let paba = g.mul(&pab, &g.inv(&a));
        let next = g.mul(&paba, &g.inv(&b));
        out.add_term(g, vec![prefix.clone(), a.clone()], 1)?;
        out.add_term(g, vec![pa, b.clone()], 1)?;
        out.add_term(g, vec![paba, a], -1)?;
        out.add_term(g, vec![next.clone(), b], -1)?;
        prefix = next;
    }
    Ok(out)
}

/// The commuting pair `(a_i, (a_j a_i)_{2n(i,j)-1})` whose Pontryagin product
/// is the basis class `α_ij`.
pub fn pontryagin_artin(
    i: usize,
    j: usize,
    p: &EvenPresentation,
) -> Result<((Word, Word), ArtinH2Class)> {
    let pair = comm_rel_pair(i, j, p)?;
    Ok((pair, ArtinH2Class::unit(i, j, p)?))
}

/// Decides whether 2-chains of a finite group are boundaries, by integer
/// linear algebra against the matrix of `∂_3`.
pub struct BoundaryOracle<'a> {
    g: &'a GroupTable,
    basis: BarBasis,
    form: SmithForm,
}

impl<'a> BoundaryOracle<'a> {
    pub fn new(g: &'a GroupTable) -> Result<Self> {
        Self::with_cap(g, DEFAULT_MAX_ORDER_H2)
    }

    pub fn with_cap(g: &'a GroupTable, max_order: usize) -> Result<Self> {
        if g.order() > max_order {
            return Err(Error::ResourceCap {
                what: "group order for boundary solving",
                limit: max_order,
            });
        }
        Ok(BoundaryOracle {
            g,
            basis: BarBasis::new(g),
            form: snf_with_left(&boundary_matrix(g, 3)?),
        })
    }

    pub fn group(&self) -> &GroupTable {
        self.g
    }

    /// True iff `c = ∂b` for some integral 3-chain `b`.
    pub fn is_boundary(&self, c: &BarChain<usize>) -> Result<bool> {
        if c.degree() != 2 {
            return Err(Error::InvalidArgument("boundary oracle works in degree 2".into()));
        }
        let mut v = vec![0i64; self.basis.dim(2)];
        for (t, coeff) in c.terms() {
            let idx = self
                .basis
                .index(t)
                .ok_or_else(|| Error::InvalidArgument("chain is not over this group".into()))?;
            v[idx] = coeff;
        }
        self.form.in_image(&v)
    }

    pub fn homologous(&self, a: &BarChain<usize>, b: &BarChain<usize>) -> Result<bool> {
        self.is_boundary(&a.checked_sub(b)?)
    }
}
