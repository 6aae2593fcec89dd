//! Generators for the de Bruijn, Kautz, generalized de Bruijn and
//! generalized Kautz digraph families, plus the bijective word ↔ index
//! codecs for the classic families.
//!
//! Classic-family vertices are words: length-`n` symbol sequences over
//! `Z_d` (de Bruijn) or `Z_{d+1}` with no equal adjacent symbols (Kautz).
//! Arcs shift the word left and append a symbol. Generalized families live
//! directly on `Z_m` with arithmetic successor rules.

use std::fmt;
use std::str::FromStr;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Generator guard: refuse graphs whose arc count would exceed this.
const MAX_ARCS: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    DeBruijn,
    Kautz,
    GenDeBruijn,
    GenKautz,
}

impl Family {
    /// Classic families have word vertices; generalized ones are arithmetic
    /// graphs on `Z_m`.
    pub fn is_classic(self) -> bool {
        matches!(self, Family::DeBruijn | Family::Kautz)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::DeBruijn => "debruijn",
            Family::Kautz => "kautz",
            Family::GenDeBruijn => "gen-debruijn",
            Family::GenKautz => "gen-kautz",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "debruijn" => Ok(Family::DeBruijn),
            "kautz" => Ok(Family::Kautz),
            "gen-debruijn" => Ok(Family::GenDeBruijn),
            "gen-kautz" => Ok(Family::GenKautz),
            other => Err(Error::InvalidParameter(format!(
                "unknown family {other:?} (expected debruijn, kautz, gen-debruijn or gen-kautz)"
            ))),
        }
    }
}

/// A fully specified family instance.
///
/// `order` is the word length `n` for classic families and the vertex count
/// `m` for generalized ones (the two parameters play different roles, so the
/// CLI exposes them as `--n` and `--m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub d: usize,
    pub order: usize,
}

impl FamilySpec {
    pub fn new(family: Family, d: usize, order: usize) -> Result<Self> {
        let spec = FamilySpec { family, d, order };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidParameter(format!(
                "degree parameter d must be >= 2, got {}",
                self.d
            )));
        }
        if self.family.is_classic() && self.order < 2 {
            return Err(Error::InvalidParameter(format!(
                "word length n must be >= 2, got {}",
                self.order
            )));
        }
        if !self.family.is_classic() && self.order < 1 {
            return Err(Error::InvalidParameter(format!(
                "vertex count m must be >= 1, got {}",
                self.order
            )));
        }
        Ok(())
    }

    /// Symbol alphabet size for classic families: `d` for de Bruijn,
    /// `d + 1` for Kautz.
    pub fn alphabet(&self) -> usize {
        match self.family {
            Family::DeBruijn | Family::GenDeBruijn => self.d,
            Family::Kautz | Family::GenKautz => self.d + 1,
        }
    }

    pub fn vertex_count(&self) -> Result<usize> {
        match self.family {
            Family::DeBruijn => checked_pow(self.d, self.order),
            Family::Kautz => {
                let tail = checked_pow(self.d, self.order - 1)?;
                (self.d + 1)
                    .checked_mul(tail)
                    .ok_or_else(|| Error::InvalidParameter("vertex count overflows".into()))
            }
            Family::GenDeBruijn | Family::GenKautz => Ok(self.order),
        }
    }

    pub fn generate(&self) -> Result<Digraph> {
        self.validate()?;
        match self.family {
            Family::DeBruijn => debruijn(self.d, self.order),
            Family::Kautz => kautz(self.d, self.order),
            Family::GenDeBruijn => gen_debruijn(self.d, self.order),
            Family::GenKautz => gen_kautz(self.d, self.order),
        }
    }

    /// Printable vertex label: the word for classic families, the plain
    /// index for generalized ones.
    pub fn label(&self, index: usize) -> String {
        match WordVertex::from_index(self, index) {
            Ok(w) => w.to_string(),
            Err(_) => index.to_string(),
        }
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    let exp: u32 = exp
        .try_into()
        .map_err(|_| Error::InvalidParameter("exponent too large".into()))?;
    base.checked_pow(exp)
        .filter(|&v| (v as u64) <= MAX_ARCS)
        .ok_or_else(|| Error::InvalidParameter(format!("{base}^{exp} is too large to generate")))
}

/// De Bruijn digraph on all length-`n` words over `Z_d`: each word
/// `(a_1, …, a_n)` has an arc to `(a_2, …, a_n, b)` for every symbol `b`.
///
/// `d^n` vertices, `d^{n+1}` arcs, uniform out-degree `d`, one loop per
/// constant word.
pub fn debruijn(d: usize, n: usize) -> Result<Digraph> {
    FamilySpec {
        family: Family::DeBruijn,
        d,
        order: n,
    }
    .validate()?;
    let count = checked_pow(d, n)?;
    if count as u64 * d as u64 > MAX_ARCS {
        return Err(Error::InvalidParameter(format!(
            "debruijn({d}, {n}) is too large to generate"
        )));
    }
    let tail = count / d; // d^{n-1}
    let mut arcs = Vec::with_capacity(count * d);
    for v in 0..count {
        let base = (v % tail) * d;
        for b in 0..d {
            arcs.push((v, base + b));
        }
    }
    Digraph::build(count, arcs)
}

/// Kautz digraph on length-`n` words over `Z_{d+1}` with no equal adjacent
/// symbols: arcs shift and append any symbol different from the last.
///
/// `(d+1)·d^{n-1}` vertices, uniform out-degree `d`, no loops.
pub fn kautz(d: usize, n: usize) -> Result<Digraph> {
    let spec = FamilySpec::new(Family::Kautz, d, n)?;
    let count = spec.vertex_count()?;
    if count as u64 * d as u64 > MAX_ARCS {
        return Err(Error::InvalidParameter(format!(
            "kautz({d}, {n}) is too large to generate"
        )));
    }
    let mut arcs = Vec::with_capacity(count * d);
    for v in 0..count {
        let word = WordVertex::from_index(&spec, v)?;
        let last = *word.symbols().last().expect("words are nonempty");
        let mut next = Vec::with_capacity(n);
        next.extend_from_slice(&word.symbols()[1..]);
        next.push(0);
        for b in 0..=d {
            if b == last {
                continue;
            }
            *next.last_mut().expect("nonempty") = b;
            let w = WordVertex::kautz(d, next.clone())?;
            arcs.push((v, w.to_index()));
        }
    }
    Digraph::build(count, arcs)
}

/// Generalized de Bruijn digraph on `Z_m` with arcs
/// `x → (d·x + i) mod m` for `i = 0, …, d-1`, deduplicated.
pub fn gen_debruijn(d: usize, m: usize) -> Result<Digraph> {
    FamilySpec {
        family: Family::GenDeBruijn,
        d,
        order: m,
    }
    .validate()?;
    let mut arcs = Vec::with_capacity(m * d);
    for x in 0..m {
        for i in 0..d {
            arcs.push((x, (d * x + i) % m));
        }
    }
    Digraph::build(m, arcs)
}

/// Generalized Kautz digraph on `Z_m` with arcs
/// `x → (-d·x - i) mod m` for `i = 1, …, d`, residues normalized to
/// `0..m-1`, deduplicated.
pub fn gen_kautz(d: usize, m: usize) -> Result<Digraph> {
    FamilySpec {
        family: Family::GenKautz,
        d,
        order: m,
    }
    .validate()?;
    let mut arcs = Vec::with_capacity(m * d);
    for x in 0..m {
        for i in 1..=d {
            let target = (d * x + i) % m;
            arcs.push((x, (m - target) % m));
        }
    }
    Digraph::build(m, arcs)
}

/// A classic-family vertex as a symbol sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordVertex {
    symbols: Vec<usize>,
    alphabet: usize,
    family: Family,
}

impl WordVertex {
    /// De Bruijn word over `Z_d`.
    pub fn debruijn(d: usize, symbols: Vec<usize>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d must be >= 2, got {d}")));
        }
        let w = WordVertex {
            symbols,
            alphabet: d,
            family: Family::DeBruijn,
        };
        w.check_symbols()?;
        Ok(w)
    }

    /// Kautz word over `Z_{d+1}`; adjacent symbols must differ.
    pub fn kautz(d: usize, symbols: Vec<usize>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d must be >= 2, got {d}")));
        }
        let w = WordVertex {
            symbols,
            alphabet: d + 1,
            family: Family::Kautz,
        };
        w.check_symbols()?;
        for pair in w.symbols.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::MalformedWord(format!(
                    "kautz word {:?} repeats symbol {} in adjacent positions",
                    w.symbols, pair[0]
                )));
            }
        }
        Ok(w)
    }

    fn check_symbols(&self) -> Result<()> {
        if self.symbols.len() < 2 {
            return Err(Error::MalformedWord(format!(
                "word length must be >= 2, got {}",
                self.symbols.len()
            )));
        }
        for &a in &self.symbols {
            if a >= self.alphabet {
                return Err(Error::MalformedWord(format!(
                    "symbol {a} outside alphabet 0..{}",
                    self.alphabet
                )));
            }
        }
        Ok(())
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The dense index of this word.
    ///
    /// De Bruijn: the base-`d` value with `a_1` most significant. Kautz:
    /// `a_1` picks a block of `d^{n-1}` indices and each later symbol
    /// contributes its rank among the `d` symbols legal after its
    /// predecessor, so indices are dense in `0..(d+1)·d^{n-1}`.
    pub fn to_index(&self) -> usize {
        match self.family {
            Family::DeBruijn | Family::GenDeBruijn => self
                .symbols
                .iter()
                .fold(0, |acc, &a| acc * self.alphabet + a),
            Family::Kautz | Family::GenKautz => {
                let d = self.alphabet - 1;
                let mut acc = self.symbols[0];
                for pair in self.symbols.windows(2) {
                    let (prev, cur) = (pair[0], pair[1]);
                    let rank = if cur < prev { cur } else { cur - 1 };
                    acc = acc * d + rank;
                }
                acc
            }
        }
    }

    /// Inverse of [`to_index`] for the given family instance.
    ///
    /// [`to_index`]: WordVertex::to_index
    pub fn from_index(spec: &FamilySpec, index: usize) -> Result<Self> {
        if !spec.family.is_classic() {
            return Err(Error::NotClassicFamily(spec.family.as_str()));
        }
        let count = spec.vertex_count()?;
        if index >= count {
            return Err(Error::VertexOutOfRange {
                vertex: index,
                universe: count,
            });
        }
        let n = spec.order;
        match spec.family {
            Family::DeBruijn => {
                let d = spec.d;
                let mut symbols = vec![0; n];
                let mut rest = index;
                for slot in symbols.iter_mut().rev() {
                    *slot = rest % d;
                    rest /= d;
                }
                WordVertex::debruijn(d, symbols)
            }
            Family::Kautz => {
                let d = spec.d;
                let mut ranks = vec![0; n - 1];
                let mut rest = index;
                for slot in ranks.iter_mut().rev() {
                    *slot = rest % d;
                    rest /= d;
                }
                let mut symbols = Vec::with_capacity(n);
                symbols.push(rest); // a_1 = index / d^{n-1}
                for rank in ranks {
                    let prev = *symbols.last().expect("nonempty");
                    let sym = if rank < prev { rank } else { rank + 1 };
                    symbols.push(sym);
                }
                WordVertex::kautz(d, symbols)
            }
            _ => unreachable!("classic checked above"),
        }
    }
}

impl fmt::Display for WordVertex {
    /// Digit string for alphabets up to 10 symbols, a comma-separated tuple
    /// otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 10 {
            for &a in &self.symbols {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            write!(f, "(")?;
            for (i, &a) in self.symbols.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")
        }
    }
}
