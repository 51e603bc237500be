use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{SecondaryStructure, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("IllegalCharacter: {ch:?} at position {position}")]
    IllegalCharacter { ch: char, position: usize },
    #[error("UnbalancedBrackets: unmatched bracket at position {position}")]
    UnbalancedBrackets { position: usize },
    #[error("BlankAtEnd: island diagrams carry no tails")]
    BlankAtEnd,
    #[error("ConsecutiveBlanks: at position {position}")]
    ConsecutiveBlanks { position: usize },
    #[error("EmptyHairpin: pair opening at position {position} encloses nothing")]
    EmptyHairpin { position: usize },
    #[error("DirectlyNested: pair opening at position {position} directly encloses another")]
    DirectlyNested { position: usize },
    #[error("EmptyShape: a pi-shape needs at least one bracket pair")]
    EmptyShape,
    #[error("EmptyResult: the pi'-shape has no brackets")]
    EmptyResult,
}

/// Partner table for a string over `open`, `close` and `_`, 0-based.
fn match_brackets(
    text: &str,
    open: char,
    close: char,
    blank_allowed: bool,
) -> Result<Vec<Option<usize>>, ShapeError> {
    let chars: Vec<char> = text.chars().collect();
    let mut partner = vec![None; chars.len()];
    let mut stack = Vec::new();
    for (i, &ch) in chars.iter().enumerate() {
        if ch == open {
            stack.push(i);
        } else if ch == close {
            let j = stack
                .pop()
                .ok_or(ShapeError::UnbalancedBrackets { position: i + 1 })?;
            partner[i] = Some(j);
            partner[j] = Some(i);
        } else if !(blank_allowed && ch == '_') {
            return Err(ShapeError::IllegalCharacter { ch, position: i + 1 });
        }
    }
    if let Some(&i) = stack.first() {
        return Err(ShapeError::UnbalancedBrackets { position: i + 1 });
    }
    Ok(partner)
}

fn check_blanks(text: &str) -> Result<(), ShapeError> {
    if let Some(i) = text.find("__") {
        return Err(ShapeError::ConsecutiveBlanks { position: i + 1 });
    }
    Ok(())
}

/// First pair `(i, j)` whose interior is exactly another pair `(i+1, j-1)`.
fn first_directly_nested(partner: &[Option<usize>]) -> Option<(usize, usize)> {
    partner.iter().enumerate().find_map(|(i, p)| match *p {
        Some(j) if j > i + 1 && partner[i + 1] == Some(j - 1) => Some((i, j)),
        _ => None,
    })
}

/// Tail-free abstraction over `()_`: each unpaired run between islands is a
/// single blank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IslandDiagram(String);

/// `(h, I, ell)`: hairpins, islands and base pairs of an island diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IslandStats {
    pub hairpins: usize,
    pub islands: usize,
    pub pairs: usize,
}

impl IslandDiagram {
    pub fn parse(text: &str) -> Result<Self, ShapeError> {
        match_brackets(text, '(', ')', true)?;
        if text.starts_with('_') || text.ends_with('_') {
            return Err(ShapeError::BlankAtEnd);
        }
        check_blanks(text)?;
        if let Some(i) = text.find("()") {
            return Err(ShapeError::EmptyHairpin { position: i + 1 });
        }
        Ok(IslandDiagram(text.to_owned()))
    }

    pub(crate) fn from_trusted(text: String) -> Self {
        debug_assert!(IslandDiagram::parse(&text).is_ok(), "{text}");
        IslandDiagram(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn stats(&self) -> IslandStats {
        let islands = self
            .0
            .split('_')
            .filter(|block| !block.is_empty())
            .count();
        IslandStats {
            hairpins: self.0.matches("(_)").count(),
            islands,
            pairs: self.0.matches('(').count(),
        }
    }

    /// The secondary structure with one unpaired vertex per blank.
    pub fn to_structure(&self) -> Result<SecondaryStructure, StructureError> {
        SecondaryStructure::parse(&self.0.replace('_', "."))
    }
}

impl fmt::Display for IslandDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Stem-level abstraction over `[]_`: one bracket pair per stack, one blank
/// per unpaired run (tails included).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiPrimeShape(String);

impl PiPrimeShape {
    pub fn parse(text: &str) -> Result<Self, ShapeError> {
        let partner = match_brackets(text, '[', ']', true)?;
        check_blanks(text)?;
        if let Some((i, _)) = first_directly_nested(&partner) {
            return Err(ShapeError::DirectlyNested { position: i + 1 });
        }
        Ok(PiPrimeShape(text.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PiPrimeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Nonempty balanced string over `[]` with no directly nested pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiShape(String);

/// Hairpins, multiloops and components of a pi-shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PiStats {
    pub hairpins: usize,
    pub multiloops: usize,
    pub components: usize,
}

impl PiShape {
    pub fn parse(text: &str) -> Result<Self, ShapeError> {
        if text.is_empty() {
            return Err(ShapeError::EmptyShape);
        }
        let partner = match_brackets(text, '[', ']', false)?;
        if let Some((i, _)) = first_directly_nested(&partner) {
            return Err(ShapeError::DirectlyNested { position: i + 1 });
        }
        Ok(PiShape(text.to_owned()))
    }

    pub(crate) fn from_trusted(text: String) -> Self {
        debug_assert!(PiShape::parse(&text).is_ok(), "{text}");
        PiShape(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Hairpins are childless pairs, multiloops pairs with two or more
    /// children, components the top-level pairs.
    pub fn stats(&self) -> PiStats {
        let bytes = self.0.as_bytes();
        let mut child_counts: Vec<usize> = Vec::new();
        let mut stats = PiStats {
            hairpins: 0,
            multiloops: 0,
            components: 0,
        };
        for &b in bytes {
            if b == b'[' {
                match child_counts.last_mut() {
                    Some(parent) => *parent += 1,
                    None => stats.components += 1,
                }
                child_counts.push(0);
            } else {
                match child_counts.pop().expect("balanced") {
                    0 => stats.hairpins += 1,
                    1 => {}
                    _ => stats.multiloops += 1,
                }
            }
        }
        stats
    }
}

impl fmt::Display for PiShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Drop tails and replace each interior unpaired run by one blank.
pub fn to_island_diagram(ss: &SecondaryStructure) -> IslandDiagram {
    let dotbracket = ss.to_string();
    let core = dotbracket.trim_matches('.');
    let mut out = String::with_capacity(core.len());
    for ch in core.chars() {
        if ch == '.' {
            if !out.ends_with('_') {
                out.push('_');
            }
        } else {
            out.push(ch);
        }
    }
    IslandDiagram::from_trusted(out)
}

/// One `[`/`]` per maximal stack, one `_` per maximal unpaired run.
pub fn to_pi_prime(ss: &SecondaryStructure) -> PiPrimeShape {
    let mut out = String::new();
    for i in 0..ss.len() {
        match ss.partner(i) {
            None => {
                if !out.ends_with('_') {
                    out.push('_');
                }
            }
            Some(j) if j > i => {
                if !(i > 0 && ss.is_pair(i - 1, j + 1)) {
                    out.push('[');
                }
            }
            Some(j) => {
                if !(j > 0 && ss.is_pair(j - 1, i + 1)) {
                    out.push(']');
                }
            }
        }
    }
    PiPrimeShape(out)
}

/// Remove blanks, then merge directly nested pairs until none remain.
pub fn to_pi(shape: &PiPrimeShape) -> Result<PiShape, ShapeError> {
    let mut text: Vec<char> = shape.0.chars().filter(|&c| c != '_').collect();
    if text.is_empty() {
        return Err(ShapeError::EmptyResult);
    }
    loop {
        let s: String = text.iter().collect();
        let partner = match_brackets(&s, '[', ']', false).expect("pi'-shape is balanced");
        match first_directly_nested(&partner) {
            Some((i, j)) => {
                text.remove(j);
                text.remove(i);
            }
            None => return Ok(PiShape::from_trusted(s)),
        }
    }
}
