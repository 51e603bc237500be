use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("IllegalCharacter: {ch:?} at position {position}")]
    IllegalCharacter { ch: char, position: usize },
    #[error("UnbalancedBrackets: unmatched bracket at position {position}")]
    UnbalancedBrackets { position: usize },
    #[error("AdjacentPair: base pair ({i},{j}) joins neighbouring vertices")]
    AdjacentPair { i: usize, j: usize },
}

/// A validated secondary structure: a non-crossing partial matching on
/// vertices `1..=n` without pairs between neighbouring vertices.
///
/// Positions are stored 0-based; [`SecondaryStructure::pairs`] reports them
/// 1-based, as in dot-bracket notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SecondaryStructure {
    partner: Vec<Option<usize>>,
}

impl SecondaryStructure {
    /// Parse a dot-bracket string over `.()`.
    pub fn parse(dotbracket: &str) -> Result<Self, StructureError> {
        let mut partner = vec![None; dotbracket.chars().count()];
        let mut open = Vec::new();
        for (i, ch) in dotbracket.chars().enumerate() {
            match ch {
                '.' => {}
                '(' => open.push(i),
                ')' => {
                    let j = open
                        .pop()
                        .ok_or(StructureError::UnbalancedBrackets { position: i + 1 })?;
                    if i == j + 1 {
                        return Err(StructureError::AdjacentPair { i: j + 1, j: i + 1 });
                    }
                    partner[i] = Some(j);
                    partner[j] = Some(i);
                }
                _ => {
                    return Err(StructureError::IllegalCharacter {
                        ch,
                        position: i + 1,
                    })
                }
            }
        }
        if let Some(&i) = open.first() {
            return Err(StructureError::UnbalancedBrackets { position: i + 1 });
        }
        Ok(SecondaryStructure { partner })
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// Partner of the 0-based position `i`.
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner[i]
    }

    pub fn is_paired(&self, i: usize) -> bool {
        self.partner[i].is_some()
    }

    /// Base pairs `(i, j)` with `i < j`, 1-based, ordered by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(i, p)| match p {
                Some(j) if *j > i => Some((i + 1, j + 1)),
                _ => None,
            })
            .collect()
    }

    pub fn num_pairs(&self) -> usize {
        self.partner.iter().filter(|p| p.is_some()).count() / 2
    }

    /// `true` if 0-based `(i, j)` is a base pair.
    pub(crate) fn is_pair(&self, i: usize, j: usize) -> bool {
        self.partner.get(i).copied().flatten() == Some(j)
    }
}

impl fmt::Display for SecondaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.partner.iter().enumerate() {
            let ch = match p {
                None => '.',
                Some(j) if *j > i => '(',
                Some(_) => ')',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example() {
        let ss = SecondaryStructure::parse("((...)....)").unwrap();
        assert_eq!(ss.len(), 11);
        assert_eq!(ss.pairs(), vec![(1, 11), (2, 6)]);
        assert_eq!(ss.to_string(), "((...)....)");
    }

    #[test]
    fn empty_input() {
        let ss = SecondaryStructure::parse("").unwrap();
        assert!(ss.is_empty());
        assert!(ss.pairs().is_empty());
    }

    #[test]
    fn rejects_invalid() {
        assert_eq!(
            SecondaryStructure::parse("()"),
            Err(StructureError::AdjacentPair { i: 1, j: 2 })
        );
        assert_eq!(
            SecondaryStructure::parse("(.))"),
            Err(StructureError::UnbalancedBrackets { position: 4 })
        );
        assert_eq!(
            SecondaryStructure::parse("((.)"),
            Err(StructureError::UnbalancedBrackets { position: 1 })
        );
        assert_eq!(
            SecondaryStructure::parse("(.x)"),
            Err(StructureError::IllegalCharacter { ch: 'x', position: 3 })
        );
    }
}
