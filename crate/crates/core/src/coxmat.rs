//! Coxeter matrices: parsing, validation, and the even presentation derived
//! from them.
//!
//! Text format:
//!
//! ```text
//! # comment
//! n=3
//! 1 2 4      # sparse triple "i j m", 1-based, m an integer or "inf"
//! 2 3 inf
//! ```
//!
//! Pairs that are not listed are `inf`. Lines may also be separated by `;`,
//! so `n=2; 1 2 4` is a complete document. A full matrix can be given
//! instead by putting the keyword `matrix` after the header, followed by
//! `n` rows of `n` labels each.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An entry of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u64),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u64> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinite)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// A pair `(i, j)` of 1-based generator indices with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub i: usize,
    pub j: usize,
}

impl Pair {
    pub fn new(i: usize, j: usize) -> Self {
        Pair { i, j }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A validated Coxeter matrix over `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    n: usize,
    // Row-major n x n, 0-based storage.
    labels: Vec<Label>,
}

impl CoxeterMatrix {
    /// Builds a matrix from sparse off-diagonal entries; absent pairs are `inf`.
    ///
    /// Entries may name either `(i, j)` or `(j, i)`; repeated entries must agree.
    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, Label)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let mut labels = vec![Label::Infinite; n * n];
        let mut seen = vec![false; n * n];
        for k in 0..n {
            labels[k * n + k] = Label::Finite(1);
        }
        for (i, j, m) in entries {
            for idx in [i, j] {
                if idx == 0 || idx > n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            if i == j {
                if m != Label::Finite(1) {
                    return Err(Error::Diagonal {
                        i,
                        found: m.to_string(),
                    });
                }
                continue;
            }
            if let Label::Finite(v) = m {
                if v < 2 {
                    return Err(Error::LabelTooSmall { i, j, label: v });
                }
            }
            let (a, b) = (i - 1, j - 1);
            let slot = a.min(b) * n + a.max(b);
            if seen[slot] && labels[slot] != m {
                return Err(Error::Asymmetric {
                    i,
                    j,
                    ij: m.to_string(),
                    ji: labels[slot].to_string(),
                });
            }
            seen[slot] = true;
            labels[a * n + b] = m;
            labels[b * n + a] = m;
        }
        Ok(CoxeterMatrix { n, labels })
    }

    /// Builds a matrix from all `n * n` entries, checking every axiom.
    pub fn from_full(n: usize, rows: &[Vec<Label>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "full matrix must be {n} x {n}"
            )));
        }
        for i in 0..n {
            if rows[i][i] != Label::Finite(1) {
                return Err(Error::Diagonal {
                    i: i + 1,
                    found: rows[i][i].to_string(),
                });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Asymmetric {
                        i: i + 1,
                        j: j + 1,
                        ij: rows[i][j].to_string(),
                        ji: rows[j][i].to_string(),
                    });
                }
                if let Label::Finite(v) = rows[i][j] {
                    if v < 2 {
                        return Err(Error::LabelTooSmall {
                            i: i + 1,
                            j: j + 1,
                            label: v,
                        });
                    }
                }
            }
        }
        Ok(CoxeterMatrix {
            n,
            labels: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The label `m(i, j)`, 1-based.
    ///
    /// # Panics
    ///
    /// If either index is outside `[1, n]`.
    pub fn label(&self, i: usize, j: usize) -> Label {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.labels[(i - 1) * self.n + (j - 1)]
    }

    /// Canonical sparse serialization: the header and every finite label above
    /// the diagonal.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if let Label::Finite(m) = self.label(i, j) {
                    out.push_str(&format!("{i} {j} {m}\n"));
                }
            }
        }
        out
    }

    pub fn to_even(&self) -> Result<EvenPresentation> {
        EvenPresentation::new(self)
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for CoxeterMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

struct Segment<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

fn segments(text: &str) -> Vec<Segment<'_>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for part in body.split(';') {
            let lead = part.len() - part.trim_start().len();
            let trimmed = part.trim();
            if !trimmed.is_empty() {
                out.push(Segment {
                    line: ln + 1,
                    column: offset + lead + 1,
                    text: trimmed,
                });
            }
            offset += part.len() + 1;
        }
    }
    out
}

fn tokens<'a>(seg: &Segment<'a>) -> Vec<(usize, &'a str)> {
    let base = seg.text.as_ptr() as usize;
    seg.text
        .split_whitespace()
        .map(|t| (seg.column + (t.as_ptr() as usize - base), t))
        .collect()
}

fn parse_label(line: usize, column: usize, tok: &str) -> Result<Label> {
    if tok.eq_ignore_ascii_case("inf") || tok == "∞" {
        return Ok(Label::Infinite);
    }
    tok.parse::<u64>()
        .map(Label::Finite)
        .map_err(|_| Error::syntax(line, column, format!("expected a label, found {tok:?}")))
}

fn parse_index(line: usize, column: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::syntax(line, column, format!("expected an index, found {tok:?}")))
}

/// Parses a matrix document (sparse or full form).
pub fn parse_matrix(text: &str) -> Result<CoxeterMatrix> {
    let segs = segments(text);
    let mut iter = segs.iter();
    let header = iter
        .next()
        .ok_or_else(|| Error::syntax(1, 1, "empty document, expected header \"n=<k>\""))?;
    let n = {
        let compact: String = header.text.chars().filter(|c| !c.is_whitespace()).collect();
        let value = compact
            .strip_prefix("n=")
            .ok_or_else(|| Error::syntax(header.line, header.column, "expected header \"n=<k>\""))?;
        let n: usize = value.parse().map_err(|_| {
            Error::syntax(header.line, header.column, format!("bad generator count {value:?}"))
        })?;
        if n == 0 {
            return Err(Error::syntax(header.line, header.column, "n must be positive"));
        }
        n
    };

    let rest: Vec<&Segment> = iter.collect();
    if rest.first().is_some_and(|s| s.text.eq_ignore_ascii_case("matrix")) {
        let rows_segs = &rest[1..];
        if rows_segs.len() != n {
            let (line, column) = rest
                .last()
                .map_or((header.line, header.column), |s| (s.line, s.column));
            return Err(Error::syntax(
                line,
                column,
                format!("full matrix needs exactly {n} rows, found {}", rows_segs.len()),
            ));
        }
        let mut rows = Vec::with_capacity(n);
        for seg in rows_segs {
            let toks = tokens(seg);
            if toks.len() != n {
                return Err(Error::syntax(
                    seg.line,
                    seg.column,
                    format!("row needs {n} entries, found {}", toks.len()),
                ));
            }
            rows.push(
                toks.iter()
                    .map(|&(col, t)| parse_label(seg.line, col, t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        return CoxeterMatrix::from_full(n, &rows);
    }

    let mut entries = Vec::new();
    for seg in rest {
        let toks = tokens(seg);
        if toks.len() != 3 {
            return Err(Error::syntax(
                seg.line,
                seg.column,
                format!("expected \"i j m\", found {} tokens", toks.len()),
            ));
        }
        let i = parse_index(seg.line, toks[0].0, toks[0].1)?;
        let j = parse_index(seg.line, toks[1].0, toks[1].1)?;
        let m = parse_label(seg.line, toks[2].0, toks[2].1)?;
        entries.push((i, j, m));
    }
    CoxeterMatrix::from_entries(n, entries)
}

/// An even Coxeter matrix in the form used by the presentations
/// `(a_i a_j)^n(i,j) = (a_j a_i)^n(i,j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvenPresentation {
    n: usize,
    // Half-labels above the diagonal, row-major over i < j; None is infinity.
    half: Vec<Option<u64>>,
    pairs: Vec<Pair>,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    // 1-based i < j
    (i - 1) * n + (j - 1)
}

impl EvenPresentation {
    pub fn new(cm: &CoxeterMatrix) -> Result<Self> {
        let n = cm.n();
        let mut half = vec![None; n * n];
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if let Label::Finite(m) = cm.label(i, j) {
                    if m % 2 != 0 {
                        return Err(Error::OddLabel { i, j, label: m });
                    }
                    half[tri_index(n, i, j)] = Some(m / 2);
                    pairs.push(Pair::new(i, j));
                }
            }
        }
        Ok(EvenPresentation { n, half, pairs })
    }

    /// Convenience constructor from half-labels `n(i, j)`; absent pairs are infinite.
    pub fn from_half_labels(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        let mut full = Vec::new();
        for (i, j, h) in entries {
            let m = h
                .checked_mul(2)
                .ok_or(Error::Overflow("half-label doubling"))?;
            full.push((i, j, Label::Finite(m)));
        }
        CoxeterMatrix::from_entries(n, full)?.to_even()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n(i, j)` for `i != j` (either order); `None` means infinity.
    pub fn half_label(&self, i: usize, j: usize) -> Option<u64> {
        assert!(i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n);
        let (a, b) = (i.min(j), i.max(j));
        self.half[tri_index(self.n, a, b)]
    }

    /// The index set B in lexicographic order.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn pair_index(&self, pair: Pair) -> Option<usize> {
        self.pairs.binary_search(&pair).ok()
    }

    /// Checks `(i, j) ∈ B` and returns its position and half-label.
    pub fn require_pair(&self, i: usize, j: usize) -> Result<(usize, u64)> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::IndexOutOfRange {
                index: i.max(j).max(1),
                n: self.n,
            });
        }
        let pair = Pair::new(i, j);
        match self.pair_index(pair) {
            Some(k) => Ok((k, self.half[tri_index(self.n, i, j)].expect("pair in B"))),
            None => Err(Error::NotInB { i, j }),
        }
    }

    pub fn is_right_angled(&self) -> bool {
        self.half.iter().flatten().all(|&h| h == 1)
    }

    /// True when some label is infinite, in which case the Coxeter group
    /// contains an infinite dihedral subgroup.
    pub fn has_infinite_label(&self) -> bool {
        self.n * (self.n - 1) / 2 != self.pairs.len()
    }

    pub fn to_matrix(&self) -> CoxeterMatrix {
        CoxeterMatrix::from_entries(
            self.n,
            self.pairs.iter().map(|p| {
                let h = self.half[tri_index(self.n, p.i, p.j)].unwrap();
                (p.i, p.j, Label::Finite(2 * h))
            }),
        )
        .expect("even presentation is a valid matrix")
    }
}
