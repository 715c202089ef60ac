//! Finite universes and their subsets as bitmasks.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported universe. Pair scans cost `4^n` evaluations.
pub const MAX_UNIVERSE: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UniverseError {
    #[error("universe has {0} elements, at most {MAX_UNIVERSE} are supported")]
    TooLarge(usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("bad subset string {0:?} for a universe of size {1}")]
    BadSubset(String, usize),
}

/// A subset of a universe of at most 16 elements. Bit `i` stands for element `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn symmetric_difference(self, o: Subset) -> Subset {
        Subset(self.0 ^ o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A finite set `Omega` of labelled elements. Its ring is the full power set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Universe {
    labels: Vec<String>,
}

impl TryFrom<Vec<String>> for Universe {
    type Error = UniverseError;

    fn try_from(labels: Vec<String>) -> Result<Self, Self::Error> {
        Universe::new(labels)
    }
}

impl From<Universe> for Vec<String> {
    fn from(u: Universe) -> Self {
        u.labels
    }
}

impl Universe {
    pub fn new(labels: Vec<String>) -> Result<Self, UniverseError> {
        if labels.len() > MAX_UNIVERSE {
            return Err(UniverseError::TooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(UniverseError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Universe { labels })
    }

    /// Elements labelled `0, 1, ..., n - 1`.
    pub fn of_size(n: usize) -> Result<Self, UniverseError> {
        Self::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn full(&self) -> Subset {
        Subset((self.subset_count() - 1) as u32)
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(!s.0 & self.full().0)
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.subset_count() as u32).map(Subset)
    }

    /// Ordered pairs of disjoint subsets, `3^n` of them.
    pub fn disjoint_pairs(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        let full = self.full();
        self.subsets().flat_map(move |e| {
            let rest = full.difference(e).0;
            // enumerate all submasks of the complement of e
            let mut sub = rest;
            let mut done = false;
            std::iter::from_fn(move || {
                if done {
                    return None;
                }
                let f = Subset(sub);
                if sub == 0 {
                    done = true;
                } else {
                    sub = (sub - 1) & rest;
                }
                Some((e, f))
            })
        })
    }

    /// Bitmask string, most significant element first, `n` characters wide.
    pub fn bits(&self, s: Subset) -> String {
        (0..self.size())
            .rev()
            .map(|i| if s.contains(i) { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bits(&self, text: &str) -> Result<Subset, UniverseError> {
        let bad = || UniverseError::BadSubset(text.to_string(), self.size());
        if text.len() != self.size() {
            return Err(bad());
        }
        let mut mask = 0u32;
        for c in text.chars() {
            mask = mask << 1
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(bad()),
                };
        }
        Ok(Subset(mask))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_pairs_count() {
        for n in 0..6 {
            let u = Universe::of_size(n).unwrap();
            let pairs: Vec<_> = u.disjoint_pairs().collect();
            assert_eq!(pairs.len(), 3usize.pow(n as u32));
            assert!(pairs.iter().all(|(e, f)| e.is_disjoint(*f)));
        }
    }

    #[test]
    fn bit_strings_roundtrip() {
        let u = Universe::of_size(5).unwrap();
        let s = Subset(0b00101);
        assert_eq!(u.bits(s), "00101");
        assert_eq!(u.parse_bits("00101").unwrap(), s);
        assert!(u.parse_bits("0101").is_err());
        assert!(u.parse_bits("0010x").is_err());
        assert_eq!(u.complement(s), Subset(0b11010));
    }

    #[test]
    fn limits() {
        assert!(Universe::of_size(17).is_err());
        assert!(Universe::new(vec!["a".into(), "a".into()]).is_err());
        let u: Universe = serde_json::from_str(r#"["a","b","c"]"#).unwrap();
        assert_eq!(u.size(), 3);
        assert_eq!(u.subsets().count(), 8);
    }
}
