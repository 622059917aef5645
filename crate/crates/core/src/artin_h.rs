//! First and second homology of even Artin groups.
//!
//! `H_1(A_M)` is free on the images of `a_1, ..., a_n`. `H_2(A_M)` is
//! `(R ∩ [F,F]) / [F,R]` by Hopf's formula and is free on the classes
//! `α_ij = [a_i,a_j]^n(i,j)` for `(i, j) ∈ B`. Classes are handed in as
//! products of conjugated relators, whose coordinates are exponent counts
//! because conjugation acts trivially modulo `[F,R]`.

use std::fmt;
use std::str::FromStr;

use crate::coxmat::{EvenPresentation, Pair};
use crate::error::{Error, Result};
use crate::magnus::wedge_image;
use crate::words::{commutator, parse_word, relator, Word};

/// One factor `f r_ij^{±1} f^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelatorFactor {
    pub pair: Pair,
    /// `+1` or `-1`.
    pub exp: i8,
    pub conj: Word,
}

impl RelatorFactor {
    pub fn new(pair: Pair, exp: i8, conj: Word) -> Result<Self> {
        if exp != 1 && exp != -1 {
            return Err(Error::InvalidArgument(format!("relator exponent must be +1 or -1, got {exp}")));
        }
        Ok(RelatorFactor { pair, exp, conj })
    }

    /// The factor `r_ij` with trivial conjugator.
    pub fn plain(i: usize, j: usize) -> Self {
        RelatorFactor {
            pair: Pair::new(i, j),
            exp: 1,
            conj: Word::empty(),
        }
    }
}

/// A formal product of conjugated relators, an element of `R`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RelatorProduct {
    factors: Vec<RelatorFactor>,
}

impl RelatorProduct {
    pub fn new(factors: Vec<RelatorFactor>) -> Self {
        RelatorProduct { factors }
    }

    pub fn factors(&self) -> &[RelatorFactor] {
        &self.factors
    }

    pub fn push(&mut self, factor: RelatorFactor) {
        self.factors.push(factor);
    }

    /// Checks that every factor names a pair of `B` and a conjugator over `[n]`.
    pub fn validate(&self, p: &EvenPresentation) -> Result<()> {
        for f in &self.factors {
            p.require_pair(f.pair.i, f.pair.j)?;
            f.conj.check_alphabet(p.n())?;
        }
        Ok(())
    }

    /// One line per factor: `pair=(i,j) exp=±1 conj=<word>`.
    pub fn to_text(&self) -> String {
        self.factors
            .iter()
            .map(|f| {
                let sign = if f.exp > 0 { "+1" } else { "-1" };
                format!("pair={} exp={sign} conj={}\n", f.pair, f.conj)
            })
            .collect()
    }

    /// Parses the line format of [`RelatorProduct::to_text`].
    ///
    /// Blank lines and `#` comments are skipped. `conj=` takes the rest of
    /// the line and may be omitted, empty, or `1` for the identity.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            factors.push(parse_factor(line, line_no)?);
        }
        Ok(RelatorProduct { factors })
    }
}

fn parse_factor(line: &str, line_no: usize) -> Result<RelatorFactor> {
    let col = |s: &str| s.as_ptr() as usize - line.as_ptr() as usize + 1;
    let (head, conj) = match line.find("conj=") {
        Some(k) => (&line[..k], Some(&line[k + 5..])),
        None => (line, None),
    };
    let mut pair = None;
    let mut exp = None;
    let mut rest = head.trim_start();
    while !rest.is_empty() {
        if let Some(body) = rest.strip_prefix("pair=") {
            let body = body.trim_start();
            let close = body
                .find(')')
                .filter(|_| body.starts_with('('))
                .ok_or_else(|| Error::syntax(line_no, col(body), "expected (i,j)"))?;
            let inner = &body[1..close];
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::syntax(line_no, col(inner), "expected (i,j)"))?;
            let index = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::syntax(line_no, col(s), format!("bad index {:?}", s.trim())))
            };
            let (i, j) = (index(a)?, index(b)?);
            if i == 0 || j == 0 || i >= j {
                return Err(Error::syntax(line_no, col(inner), "pair must satisfy 1 <= i < j"));
            }
            pair = Some(Pair::new(i, j));
            rest = body[close + 1..].trim_start();
        } else if let Some(body) = rest.strip_prefix("exp=") {
            let end = body.find(char::is_whitespace).unwrap_or(body.len());
            let tok = &body[..end];
            exp = Some(match tok {
                "1" | "+1" => 1,
                "-1" => -1,
                _ => return Err(Error::syntax(line_no, col(body), format!("exponent must be +1 or -1, got {tok:?}"))),
            });
            rest = body[end..].trim_start();
        } else {
            return Err(Error::syntax(line_no, col(rest), "expected pair=, exp= or conj="));
        }
    }
    let pair = pair.ok_or_else(|| Error::syntax(line_no, 1, "missing pair="))?;
    let exp = exp.ok_or_else(|| Error::syntax(line_no, 1, "missing exp="))?;
    let conj = match conj {
        None => Word::empty(),
        Some(text) => parse_word(text).map_err(|e| match e {
            Error::Syntax { column, message, .. } => Error::syntax(line_no, col(text) + column - 1, message),
            other => other,
        })?,
    };
    Ok(RelatorFactor { pair, exp, conj })
}

impl FromStr for RelatorProduct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelatorProduct::parse(s)
    }
}

/// A class in `H_1(A_M) ≅ ℤⁿ` in the basis `a_1, ..., a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArtinH1Class {
    coords: Vec<i64>,
}

impl ArtinH1Class {
    pub fn new(coords: Vec<i64>) -> Self {
        ArtinH1Class { coords }
    }

    /// The image of a word in the abelianization.
    pub fn of_word(w: &Word, p: &EvenPresentation) -> Result<Self> {
        w.check_alphabet(p.n())?;
        Ok(ArtinH1Class {
            coords: w.exponent_sums(p.n()),
        })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

/// A class in `H_2(A_M) ≅ ℤ^B` in the basis `α_ij`, indexed by `B` in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArtinH2Class {
    coords: Vec<i64>,
}

impl ArtinH2Class {
    pub fn new(coords: Vec<i64>) -> Self {
        ArtinH2Class { coords }
    }

    pub fn zero(p: &EvenPresentation) -> Self {
        ArtinH2Class {
            coords: vec![0; p.pairs().len()],
        }
    }

    /// The basis class `α_ij`.
    pub fn unit(i: usize, j: usize, p: &EvenPresentation) -> Result<Self> {
        let (k, _) = p.require_pair(i, j)?;
        let mut c = Self::zero(p);
        c.coords[k] = 1;
        Ok(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for ArtinH2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Basis element `[x_i,x_j]^n(i,j)` of a second homology group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Generator {
    pub pair: Pair,
    pub half_label: u64,
}

impl H2Generator {
    /// The representative word `[a_i,a_j]^n(i,j)`; its length is `4 n(i,j)`.
    pub fn word(&self) -> Word {
        let c = commutator(&Word::generator(self.pair.i), &Word::generator(self.pair.j));
        c.pow(self.half_label as i64)
    }

    /// Short form such as `[a1,a2]^2`.
    pub fn representative(&self, prefix: &str) -> String {
        let (i, j) = (self.pair.i, self.pair.j);
        match self.half_label {
            1 => format!("[{prefix}{i},{prefix}{j}]"),
            h => format!("[{prefix}{i},{prefix}{j}]^{h}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Basis {
    pub rank: usize,
    pub generators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Basis {
    pub generators: Vec<H2Generator>,
}

impl H2Basis {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

pub fn h1(p: &EvenPresentation) -> H1Basis {
    H1Basis {
        rank: p.n(),
        generators: (1..=p.n()).map(Word::generator).collect(),
    }
}

pub fn h2(p: &EvenPresentation) -> H2Basis {
    H2Basis {
        generators: p
            .pairs()
            .iter()
            .map(|&pair| H2Generator {
                pair,
                half_label: p.half_label(pair.i, pair.j).expect("pairs are finite"),
            })
            .collect(),
    }
}

/// Hopf-formula coordinates: the signed number of factors at each pair.
pub fn class_of(rp: &RelatorProduct, p: &EvenPresentation) -> Result<ArtinH2Class> {
    let mut c = ArtinH2Class::zero(p);
    for f in rp.factors() {
        let (k, _) = p.require_pair(f.pair.i, f.pair.j)?;
        c.coords[k] = c.coords[k]
            .checked_add(i64::from(f.exp))
            .ok_or(Error::Overflow("class coordinate"))?;
    }
    Ok(c)
}

/// The product as a reduced word of `F`.
pub fn flatten(rp: &RelatorProduct, p: &EvenPresentation) -> Result<Word> {
    rp.validate(p)?;
    let mut out = Word::empty();
    for f in rp.factors() {
        let r = relator(f.pair.i, f.pair.j, p)?;
        let r = if f.exp > 0 { r } else { r.inverse() };
        out = &out * &r.conjugate_by(&f.conj);
    }
    Ok(out)
}

/// Coordinates of `w` read off its image in `[F,F]/[F,[F,F]]`.
///
/// The caller warrants `w ∈ R`; that is not decidable here. A wedge
/// coefficient outside `B` or not divisible by `n(i,j)` proves the warrant
/// false, but passing these checks does not prove it true.
pub fn coords_via_wedge(w: &Word, p: &EvenPresentation) -> Result<ArtinH2Class> {
    w.check_alphabet(p.n())?;
    let wedge = wedge_image(w, p.n())?;
    let mut c = ArtinH2Class::zero(p);
    for ((i, j), coeff) in wedge.terms() {
        let Some(k) = p.pair_index(Pair::new(i, j)) else {
            return Err(Error::WarrantViolated(format!(
                "wedge coefficient {coeff} at ({i},{j}), which is not in B"
            )));
        };
        let h = p.half_label(i, j).expect("pairs are finite");
        let h = i64::try_from(h).map_err(|_| Error::Overflow("half-label"))?;
        if coeff % h != 0 {
            return Err(Error::WarrantViolated(format!(
                "wedge coefficient {coeff} at ({i},{j}) is not divisible by n({i},{j}) = {h}"
            )));
        }
        c.coords[k] = coeff / h;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, entries: &[(usize, usize, u64)]) -> EvenPresentation {
        EvenPresentation::from_half_labels(n, entries.iter().copied()).unwrap()
    }

    #[test]
    fn bases() {
        assert_eq!(h1(&pres(1, &[])).rank, 1);
        assert_eq!(h1(&pres(2, &[])).rank, 2);
        let p = pres(2, &[(1, 2, 2)]);
        let b = h2(&p);
        assert_eq!(b.rank(), 1);
        assert_eq!(b.generators[0].representative("a"), "[a1,a2]^2");
        assert_eq!(b.generators[0].word(), commutator(&Word::generator(1), &Word::generator(2)).pow(2));
        assert_eq!(h2(&pres(2, &[])).rank(), 0);
        assert_eq!(h2(&pres(3, &[(1, 2, 1), (1, 3, 1), (2, 3, 1)])).rank(), 3);
        assert_eq!(h2(&pres(3, &[(1, 2, 1)])).generators[0].representative("s"), "[s1,s2]");
    }

    #[test]
    fn class_examples() {
        let p = pres(3, &[(1, 2, 2), (1, 3, 1), (2, 3, 3)]);
        let single = RelatorProduct::new(vec![RelatorFactor::plain(1, 2)]);
        assert_eq!(class_of(&single, &p).unwrap().coords(), &[1, 0, 0]);

        let a3 = Word::generator(3);
        let cancel = RelatorProduct::new(vec![
            RelatorFactor::plain(1, 2),
            RelatorFactor::new(Pair::new(1, 2), -1, a3).unwrap(),
        ]);
        assert!(class_of(&cancel, &p).unwrap().is_zero());

        let mixed = RelatorProduct::new(vec![
            RelatorFactor::plain(1, 2),
            RelatorFactor::new(Pair::new(1, 3), 1, Word::generator(1)).unwrap(),
            RelatorFactor::plain(1, 2),
        ]);
        assert_eq!(class_of(&mixed, &p).unwrap().coords(), &[2, 1, 0]);
        assert_eq!(coords_via_wedge(&flatten(&mixed, &p).unwrap(), &p).unwrap().coords(), &[2, 1, 0]);
    }

    #[test]
    fn flatten_examples() {
        let p = pres(2, &[(1, 2, 2)]);
        let r = relator(1, 2, &p).unwrap();
        assert_eq!(flatten(&RelatorProduct::new(vec![RelatorFactor::plain(1, 2)]), &p).unwrap(), r);
        assert!(flatten(&RelatorProduct::default(), &p).unwrap().is_empty());
        let inv = RelatorProduct::new(vec![RelatorFactor::new(Pair::new(1, 2), -1, Word::empty()).unwrap()]);
        assert_eq!(flatten(&inv, &p).unwrap(), r.inverse());
    }

    #[test]
    fn wedge_coordinates() {
        let p = pres(2, &[(1, 2, 2)]);
        let one = RelatorProduct::new(vec![RelatorFactor::plain(1, 2)]);
        assert_eq!(coords_via_wedge(&flatten(&one, &p).unwrap(), &p).unwrap().coords(), &[1]);
        let two = RelatorProduct::new(vec![RelatorFactor::plain(1, 2); 2]);
        assert_eq!(coords_via_wedge(&flatten(&two, &p).unwrap(), &p).unwrap().coords(), &[2]);
        let c = commutator(&Word::generator(1), &Word::generator(2));
        assert!(matches!(coords_via_wedge(&c, &p), Err(Error::WarrantViolated(_))));
        let free = pres(2, &[]);
        assert!(matches!(coords_via_wedge(&c, &free), Err(Error::WarrantViolated(_))));
        assert_eq!(coords_via_wedge(&Word::generator(1), &p), Err(Error::NotInCommutator));
    }

    #[test]
    fn pairs_outside_b_are_rejected() {
        let p = pres(3, &[(1, 2, 2)]);
        let bad = RelatorProduct::new(vec![RelatorFactor::plain(1, 3)]);
        assert_eq!(class_of(&bad, &p), Err(Error::NotInB { i: 1, j: 3 }));
        assert!(flatten(&bad, &p).is_err());
    }

    #[test]
    fn text_round_trip() {
        let text = "# two factors\npair=(1,2) exp=+1 conj=a3 a1^-2\n\npair=(1, 3) exp=-1 conj=\npair=(2,3) exp=1\n";
        let rp: RelatorProduct = text.parse().unwrap();
        assert_eq!(rp.factors().len(), 3);
        assert_eq!(rp.factors()[0].conj.letters(), &[3, -1, -1]);
        assert_eq!(rp.factors()[1].exp, -1);
        assert!(rp.factors()[2].conj.is_empty());
        assert_eq!(RelatorProduct::parse(&rp.to_text()).unwrap(), rp);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = RelatorProduct::parse("pair=(1,2) exp=+1\npair=(1,2) exp=2").unwrap_err();
        assert_eq!(err, Error::syntax(2, 16, "exponent must be +1 or -1, got \"2\""));
        let err = RelatorProduct::parse("pair=(1,2) exp=1 conj=a1 b").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 26, .. }));
        assert!(RelatorProduct::parse("pair=(2,1) exp=1").is_err());
        assert!(RelatorProduct::parse("exp=1").is_err());
    }
}
