//! Coset enumeration for even Coxeter groups over the trivial subgroup.
//!
//! HLT strategy: cosets are processed in order of definition; each relator is
//! scanned from each live coset with gaps filled by new definitions, then the
//! coset's row is completed. Every generator is an involution, so `s_i^2 = 1`
//! is built into the table (column `i` is its own inverse column) and the
//! remaining relators are `(s_i s_j)^m(i,j)`.

use std::collections::VecDeque;

use crate::coxmat::EvenPresentation;
use crate::error::{Error, Result};
use crate::finite_oracle::table::GroupTable;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// Completed enumerations larger than this are not turned into tables.
pub const MAX_TABLE_ORDER: usize = 512;

const UNDEF: usize = usize::MAX;

struct Enumerator {
    gens: usize,
    max_cosets: usize,
    table: Vec<Vec<usize>>,
    forward: Vec<usize>,
}

impl Enumerator {
    fn new(gens: usize, max_cosets: usize) -> Self {
        Enumerator {
            gens,
            max_cosets,
            table: vec![vec![UNDEF; gens]],
            forward: vec![0],
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.forward[root] != root {
            root = self.forward[root];
        }
        let mut x = c;
        while self.forward[x] != root {
            let next = self.forward[x];
            self.forward[x] = root;
            x = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.max_cosets {
            return Err(Error::ResourceCap {
                what: "coset count",
                limit: self.max_cosets,
            });
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.gens]);
        self.forward.push(d);
        self.table[c][x] = d;
        self.table[d][x] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.forward[drop] = keep;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut k = 0;
        while k < queue.len() {
            let e = queue[k];
            k += 1;
            for x in 0..self.gens {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                self.table[f][x] = UNDEF;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x] != UNDEF {
                    let t = self.table[f1][x];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: usize, relator: &[usize]) -> Result<()> {
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = relator.len();
        loop {
            while i < j && self.table[f][relator[i]] != UNDEF {
                f = self.table[f][relator[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.table[b][relator[j - 1]] != UNDEF {
                b = self.table[b][relator[j - 1]];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = relator[i];
                self.table[f][x] = b;
                self.table[b][x] = f;
                return Ok(());
            }
            self.define(f, relator[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        let mut alpha = 0;
        while alpha < self.table.len() {
            if self.is_live(alpha) {
                for r in relators {
                    self.scan_and_fill(alpha, r)?;
                    if !self.is_live(alpha) {
                        break;
                    }
                }
                for x in 0..self.gens {
                    if self.is_live(alpha) && self.table[alpha][x] == UNDEF {
                        self.define(alpha, x)?;
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }
}

/// Enumerates `W_M` and returns its multiplication table.
///
/// Elements are numbered in breadth-first order from the identity (index 0),
/// so the result is deterministic. Fails with a resource error if more than
/// `max_cosets` cosets are defined; that says nothing about finiteness.
pub fn todd_coxeter(p: &EvenPresentation, max_cosets: usize) -> Result<GroupTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidArgument("coset bound must be >= 1".into()));
    }
    let n = p.n();
    let relators: Vec<Vec<usize>> = p
        .pairs()
        .iter()
        .map(|pair| {
            let m = 2 * p.half_label(pair.i, pair.j).expect("pairs are finite") as usize;
            (0..2 * m)
                .map(|k| if k % 2 == 0 { pair.i - 1 } else { pair.j - 1 })
                .collect()
        })
        .collect();
    let mut e = Enumerator::new(n, max_cosets);
    e.run(&relators)?;

    // Renumber live cosets breadth-first from coset 0.
    let mut index = vec![UNDEF; e.table.len()];
    let mut order_seen = vec![0usize];
    index[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..n {
            let d = e.table[c][x];
            debug_assert!(d != UNDEF && e.is_live(d), "incomplete coset table");
            if index[d] == UNDEF {
                index[d] = order_seen.len();
                order_seen.push(d);
                queue.push_back(d);
            }
        }
    }
    let order = order_seen.len();
    if order > MAX_TABLE_ORDER {
        return Err(Error::ResourceCap {
            what: "group order",
            limit: MAX_TABLE_ORDER,
        });
    }
    let action: Vec<Vec<usize>> = order_seen
        .iter()
        .map(|&c| e.table[c].iter().map(|&d| index[d]).collect())
        .collect();

    // Word for each element as a sequence of generator columns.
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); order];
    for k in 1..order {
        let parent = (0..k)
            .find_map(|a| (0..n).find(|&x| action[a][x] == k).map(|x| (a, x)))
            .expect("breadth-first numbering has a parent");
        let mut w = words[parent.0].clone();
        w.push(parent.1);
        words[k] = w;
    }
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for w in &words {
            mul.push(w.iter().fold(a, |c, &x| action[c][x]));
        }
    }
    let generators = (0..n).map(|x| action[0][x]).collect();
    GroupTable::new(order, mul, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_oracle::table::{dihedral, direct_product, elementary_abelian};

    fn pres(n: usize, entries: &[(usize, usize, u64)]) -> EvenPresentation {
        EvenPresentation::from_half_labels(n, entries.iter().copied()).unwrap()
    }

    #[test]
    fn dihedral_of_order_8() {
        let g = todd_coxeter(&pres(2, &[(1, 2, 2)]), 1000).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.isomorphic_via_generators(&dihedral(2).unwrap()));
    }

    #[test]
    fn dihedral_orders() {
        for k in 1..=6u64 {
            let g = todd_coxeter(&pres(2, &[(1, 2, k)]), 1000).unwrap();
            assert_eq!(g.order() as u64, 4 * k);
        }
    }

    #[test]
    fn right_angled_rank_three() {
        let g = todd_coxeter(&pres(3, &[(1, 2, 1), (1, 3, 1), (2, 3, 1)]), 1000).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.isomorphic_via_generators(&elementary_abelian(3).unwrap()));
    }

    #[test]
    fn labels_4_2_2() {
        let g = todd_coxeter(&pres(3, &[(1, 2, 2), (1, 3, 1), (2, 3, 1)]), 1000).unwrap();
        let closed = direct_product(&dihedral(2).unwrap(), &elementary_abelian(1).unwrap()).unwrap();
        assert!(g.isomorphic_via_generators(&closed));
    }

    #[test]
    fn reducible_products() {
        // Labels (2k, 2, 2) give D_{4k} x Z/2.
        let g = todd_coxeter(&pres(3, &[(1, 2, 3), (1, 3, 1), (2, 3, 1)]), 10_000).unwrap();
        assert_eq!(g.order(), 24);
        let g = todd_coxeter(&pres(3, &[(1, 2, 4), (1, 3, 1), (2, 3, 1)]), 10_000).unwrap();
        assert_eq!(g.order(), 32);
        let g = todd_coxeter(&pres(4, &[(1, 2, 1), (1, 3, 1), (1, 4, 1), (2, 3, 1), (2, 4, 1), (3, 4, 1)]), 10_000).unwrap();
        assert_eq!(g.order(), 16);
    }

    #[test]
    fn infinite_group_hits_bound() {
        let err = todd_coxeter(&pres(2, &[]), 500).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceCap {
                what: "coset count",
                limit: 500
            }
        );
        // The (4, 4, 2) triangle group is affine, hence infinite.
        assert!(todd_coxeter(&pres(3, &[(1, 2, 2), (2, 3, 2), (1, 3, 1)]), 2000).is_err());
    }

    #[test]
    fn deterministic() {
        let p = pres(3, &[(1, 2, 3), (2, 3, 1), (1, 3, 1)]);
        assert_eq!(todd_coxeter(&p, 10_000).unwrap(), todd_coxeter(&p, 10_000).unwrap());
    }

    #[test]
    fn single_generator() {
        let g = todd_coxeter(&pres(1, &[]), 10).unwrap();
        assert_eq!(g.order(), 2);
    }
}
