//! Explicit finite groups given by multiplication tables.
//!
//! Text format used for fixtures:
//!
//! ```text
//! # comment
//! order 4
//! identity 0
//! generators 1 2
//! 0 1 2 3
//! 1 0 3 2
//! 2 3 0 1
//! 3 2 1 0
//! ```
//!
//! Row `a` lists `a*b` for every `b`. The `generators` line is optional.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::words::Word;

/// Largest group any constructor here will build by default.
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
}

impl GroupTable {
    /// Validates the table (closure, identity, inverses, associativity).
    pub fn new(order: usize, mul: Vec<usize>, generators: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                mul.len()
            )));
        }
        if let Some(bad) = mul.iter().chain(&generators).find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        let mut inv = Vec::with_capacity(order);
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == identity)
                .filter(|&b| at(b, a) == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {a} has no inverse")))?;
            inv.push(b);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            order,
            mul,
            inv,
            identity,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Images of the presentation generators `s_1, s_2, ...`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Elements other than the identity, in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| x != self.identity)
    }

    /// Evaluates a word in the generator images.
    pub fn eval(&self, w: &Word) -> Result<usize> {
        w.check_alphabet(self.generators.len())?;
        Ok(w.letters().iter().fold(self.identity, |acc, &l| {
            let g = self.generators[l.unsigned_abs() as usize - 1];
            self.product(acc, if l > 0 { g } else { self.inv[g] })
        }))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.product(x, a);
            k += 1;
        }
        k
    }

    /// Shortlex-least word in the generators for each element, or `None` if
    /// the generators do not generate.
    pub fn normal_words(&self) -> Option<Vec<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[self.identity] = Some(Word::empty());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            let wx = words[x].clone().expect("queued elements have words");
            for (k, &g) in self.generators.iter().enumerate() {
                for (letter, img) in [(k as i32 + 1, g), (-(k as i32 + 1), self.inv[g])] {
                    let y = self.product(x, img);
                    if words[y].is_none() {
                        let mut wy = wx.clone();
                        wy = &wy * &Word::from_letters([letter]).expect("nonzero letter");
                        words[y] = Some(wy);
                        queue.push_back(y);
                    }
                }
            }
        }
        words.into_iter().collect()
    }

    /// True if `s_i ↦ s_i` extends to an isomorphism onto `other`.
    pub fn isomorphic_via_generators(&self, other: &GroupTable) -> bool {
        if self.order != other.order || self.generators.len() != other.generators.len() {
            return false;
        }
        let Some(words) = self.normal_words() else {
            return false;
        };
        let image: Vec<usize> = match words.iter().map(|w| other.eval(w)).collect() {
            Ok(v) => v,
            Err(_) => return false,
        };
        let mut seen = vec![false; self.order];
        for &y in &image {
            if std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..self.order).all(|a| {
            (0..self.order).all(|b| image[self.product(a, b)] == other.product(image[a], image[b]))
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\nidentity {}\n", self.order, self.identity);
        if !self.generators.is_empty() {
            let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
            out.push_str(&format!("generators {}\n", gens.join(" ")));
        }
        for row in self.mul.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut order = None;
        let mut identity = None;
        let mut generators = Vec::new();
        let mut mul = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::syntax(ln + 1, 1, format!("expected a number, found {t:?}")))
            };
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("order") => order = Some(num(toks.next().unwrap_or(""))?),
                Some("identity") => identity = Some(num(toks.next().unwrap_or(""))?),
                Some("generators") => {
                    generators = toks.map(num).collect::<Result<_>>()?;
                }
                _ => {
                    for t in line.split_whitespace() {
                        mul.push(num(t)?);
                    }
                }
            }
        }
        let order = order.ok_or_else(|| Error::syntax(1, 1, "missing \"order\" line"))?;
        let table = GroupTable::new(order, mul, generators)?;
        if identity.is_some_and(|e| e != table.identity) {
            return Err(Error::InvalidTable("declared identity is not the identity".into()));
        }
        Ok(table)
    }
}

impl Group for GroupTable {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.product(*a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        self.inv[*a]
    }
}

/// Cyclic group of order `k` generated by element 1.
pub fn cyclic(k: usize) -> Result<GroupTable> {
    if k == 0 || k > DEFAULT_MAX_ORDER {
        return Err(Error::ResourceCap {
            what: "group order",
            limit: DEFAULT_MAX_ORDER,
        });
    }
    let mul = (0..k * k).map(|x| (x / k + x % k) % k).collect();
    GroupTable::new(k, mul, vec![1 % k])
}

/// Dihedral group of order `4k`, the Coxeter group with `m(1,2) = 2k`.
///
/// Element `a + 2k·b` is `r^a s^b`; the generators are `s_1 = s` and
/// `s_2 = r s`, so `s_1 s_2 = r^-1` has order `2k`.
pub fn dihedral(k: usize) -> Result<GroupTable> {
    if k == 0 {
        return Err(Error::InvalidArgument("dihedral parameter must be >= 1".into()));
    }
    let rot = 2 * k;
    let order = 2 * rot;
    if order > DEFAULT_MAX_ORDER {
        return Err(Error::ResourceCap {
            what: "group order",
            limit: DEFAULT_MAX_ORDER,
        });
    }
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x % rot, x / rot);
        for y in 0..order {
            let (c, d) = (y % rot, y / rot);
            let turn = if b == 0 { a + c } else { a + rot - c };
            mul.push(turn % rot + rot * ((b + d) % 2));
        }
    }
    GroupTable::new(order, mul, vec![rot, 1 + rot])
}

/// `(ℤ/2)^k` with the standard basis as generators.
pub fn elementary_abelian(k: usize) -> Result<GroupTable> {
    let order = 1usize
        .checked_shl(k as u32)
        .filter(|&o| o <= DEFAULT_MAX_ORDER)
        .ok_or(Error::ResourceCap {
            what: "group order",
            limit: DEFAULT_MAX_ORDER,
        })?;
    let mul = (0..order * order).map(|x| (x / order) ^ (x % order)).collect();
    GroupTable::new(order, mul, (0..k).map(|i| 1 << i).collect())
}

pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable> {
    direct_product_capped(g, h, DEFAULT_MAX_ORDER)
}

/// `G × H`; element `(x, y)` has index `x·|H| + y`. The generators are those
/// of `G` followed by those of `H`.
pub fn direct_product_capped(g: &GroupTable, h: &GroupTable, max_order: usize) -> Result<GroupTable> {
    let order = g
        .order
        .checked_mul(h.order)
        .filter(|&o| o <= max_order)
        .ok_or(Error::ResourceCap {
            what: "group order",
            limit: max_order,
        })?;
    let pair = |x: usize, y: usize| x * h.order + y;
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            mul.push(pair(
                g.product(a / h.order, b / h.order),
                h.product(a % h.order, b % h.order),
            ));
        }
    }
    let generators = g
        .generators
        .iter()
        .map(|&x| pair(x, h.identity))
        .chain(h.generators.iter().map(|&y| pair(g.identity, y)))
        .collect();
    GroupTable::new(order, mul, generators)
}
