use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::Parabolic;
use crate::error::{Error, Result};

/// The ordered list of parabolic subsets, one per orbit; duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitSpec {
    orbits: Vec<Parabolic>,
}

impl OrbitSpec {
    pub fn new(orbits: Vec<Parabolic>) -> Result<Self> {
        if orbits.is_empty() {
            return Err(Error::ParseError { pos: 0, msg: "at least one orbit is required".into() });
        }
        Ok(OrbitSpec { orbits })
    }

    /// Every subset of the simple reflections, ordered by bitmask.
    pub fn all_subsets(rank: usize) -> Self {
        OrbitSpec { orbits: Parabolic::all_subsets(rank) }
    }

    /// The single regular orbit, giving the Hecke algebra itself.
    pub fn regular() -> Self {
        OrbitSpec { orbits: vec![Parabolic::empty()] }
    }

    /// Parses `1,2;2;-` style text: semicolon-separated subsets of
    /// comma-separated one-based indices, `-` for the empty set.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let mut orbits = Vec::new();
        let mut pos = 0;
        for part in text.split(';') {
            let trimmed = part.trim();
            if trimmed == "-" {
                orbits.push(Parabolic::empty());
            } else if trimmed.is_empty() {
                return Err(Error::ParseError { pos, msg: "empty orbit; use '-' for the empty set".into() });
            } else {
                let mut gens = Vec::new();
                let mut off = pos;
                for tok in part.split(',') {
                    let t = tok.trim();
                    let lead = tok.len() - tok.trim_start().len();
                    let index: usize = t
                        .parse()
                        .map_err(|_| Error::ParseError { pos: off + lead, msg: format!("expected an index, found '{t}'") })?;
                    if index == 0 || index > rank {
                        return Err(Error::OutOfRange { index, rank });
                    }
                    gens.push(index - 1);
                    off += tok.len() + 1;
                }
                orbits.push(Parabolic::from_generators(gens));
            }
            pos += part.len() + 1;
        }
        Self::new(orbits)
    }

    pub fn orbits(&self) -> &[Parabolic] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn contains_regular(&self) -> bool {
        self.orbits.iter().any(Parabolic::is_empty)
    }
}

impl fmt::Display for OrbitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orbits.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let s = OrbitSpec::parse("1;-", 1).unwrap();
        assert_eq!(s.orbits(), &[Parabolic::from_generators([0]), Parabolic::empty()]);
        let s = OrbitSpec::parse("1,2;2;-", 2).unwrap();
        assert_eq!(s.to_string(), "1,2;2;-");
        assert_eq!(OrbitSpec::parse("3", 2), Err(Error::OutOfRange { index: 3, rank: 2 }));
        assert!(matches!(OrbitSpec::parse("1;x", 2), Err(Error::ParseError { pos: 2, .. })));
        assert!(matches!(OrbitSpec::parse("1;;2", 2), Err(Error::ParseError { pos: 2, .. })));
    }
}
