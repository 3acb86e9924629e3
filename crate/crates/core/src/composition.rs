//! Chemical formulas and standard atomic weights.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::constants::AMU;
use crate::error::{Error, Result};

const MASS_TABLE_CSV: &str = include_str!("../data/atomic_masses.csv");

fn mass_table() -> &'static HashMap<&'static str, f64> {
    static TABLE: OnceLock<HashMap<&'static str, f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        MASS_TABLE_CSV
            .lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let (sym, mass) = l.split_once(',').expect("mass table row has two columns");
                (
                    sym.trim(),
                    mass.trim().parse().expect("mass table weight is numeric"),
                )
            })
            .collect()
    })
}

/// Standard atomic weight in amu, if the element is in the bundled table.
pub fn atomic_weight(symbol: &str) -> Option<f64> {
    mass_table().get(symbol).copied()
}

/// Element counts per formula unit, in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    counts: Vec<(String, u32)>,
}

impl Composition {
    /// Builds a composition from explicit counts, merging repeated symbols.
    pub fn from_counts<S: AsRef<str>>(counts: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut out: Vec<(String, u32)> = Vec::new();
        for (sym, n) in counts {
            let sym = sym.as_ref();
            if atomic_weight(sym).is_none() {
                return Err(Error::UnknownElement(sym.to_string()));
            }
            if n == 0 {
                return Err(Error::InvalidCount {
                    element: sym.to_string(),
                    count: "0".into(),
                });
            }
            match out.iter_mut().find(|(s, _)| s == sym) {
                Some((_, c)) => *c += n,
                None => out.push((sym.to_string(), n)),
            }
        }
        if out.is_empty() {
            return Err(Error::EmptyFormula);
        }
        Ok(Composition { counts: out })
    }

    pub fn count(&self, symbol: &str) -> Option<u32> {
        self.counts
            .iter()
            .find(|(s, _)| s == symbol)
            .map(|(_, n)| *n)
    }

    pub fn elements(&self) -> impl Iterator<Item = (&str, u32)> {
        self.counts.iter().map(|(s, n)| (s.as_str(), *n))
    }

    /// Atoms per formula unit.
    pub fn atoms_per_formula_unit(&self) -> u32 {
        self.counts.iter().map(|(_, n)| n).sum()
    }

    /// Number-weighted mean atomic mass in amu.
    pub fn mean_atomic_mass_amu(&self) -> f64 {
        let total: f64 = self
            .counts
            .iter()
            .map(|(s, n)| f64::from(*n) * atomic_weight(s).expect("validated on construction"))
            .sum();
        total / f64::from(self.atoms_per_formula_unit())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, n) in &self.counts {
            if *n == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}{n}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

/// Parses formulas such as `Al2O3`, `C` or `Ca(OH)2`.
pub fn parse_formula(text: &str) -> Result<Composition> {
    let formula = text.trim();
    if formula.is_empty() {
        return Err(Error::EmptyFormula);
    }
    let mut parser = Parser {
        src: formula,
        bytes: formula.as_bytes(),
        pos: 0,
    };
    let counts = parser.group(0)?;
    if parser.pos != parser.bytes.len() {
        return Err(parser.malformed());
    }
    Composition::from_counts(counts)
}

/// Average atomic mass of the host lattice in kg.
pub fn average_atomic_mass(composition: &Composition) -> f64 {
    composition.mean_atomic_mass_amu() * AMU
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn malformed(&self) -> Error {
        Error::MalformedFormula {
            formula: self.src.to_string(),
            position: self.pos,
        }
    }

    fn group(&mut self, depth: usize) -> Result<Vec<(String, u32)>> {
        let mut out = Vec::new();
        while let Some(&b) = self.bytes.get(self.pos) {
            match b {
                b'A'..=b'Z' => {
                    let start = self.pos;
                    self.pos += 1;
                    while matches!(self.bytes.get(self.pos), Some(b'a'..=b'z')) {
                        self.pos += 1;
                    }
                    let sym = &self.src[start..self.pos];
                    if atomic_weight(sym).is_none() {
                        return Err(Error::UnknownElement(sym.to_string()));
                    }
                    let n = self.count(sym)?;
                    out.push((sym.to_string(), n));
                }
                b'(' => {
                    self.pos += 1;
                    let inner = self.group(depth + 1)?;
                    if self.bytes.get(self.pos) != Some(&b')') {
                        return Err(self.malformed());
                    }
                    self.pos += 1;
                    let n = self.count("(group)")?;
                    out.extend(inner.into_iter().map(|(s, c)| (s, c * n)));
                }
                b')' if depth > 0 => break,
                _ => return Err(self.malformed()),
            }
        }
        if out.is_empty() {
            return Err(self.malformed());
        }
        Ok(out)
    }

    fn count(&mut self, element: &str) -> Result<u32> {
        let start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            // a sign or decimal point directly after a symbol is a bad count, not a bad symbol
            if matches!(self.bytes.get(self.pos), Some(b'-' | b'.' | b'+')) {
                return Err(Error::InvalidCount {
                    element: element.to_string(),
                    count: self.src[self.pos..].to_string(),
                });
            }
            return Ok(1);
        }
        let digits = &self.src[start..self.pos];
        match digits.parse::<u32>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::InvalidCount {
                element: element.to_string(),
                count: digits.to_string(),
            }),
        }
    }
}
