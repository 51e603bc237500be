use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::{LatticePath, PathError, PathKind, Step};
use crate::structure::{PiShape, ShapeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("IllegalCharacter: {ch:?} at position {position}")]
    IllegalCharacter { ch: char, position: usize },
    #[error("UnbalancedBrackets: unmatched bracket at position {position}")]
    UnbalancedBrackets { position: usize },
    #[error("EmptyInput: a bracket string needs at least one pair")]
    EmptyInput,
    #[error("DirectlyNested: pair opening at position {position} directly encloses another")]
    DirectlyNested { position: usize },
    #[error("NotInImage: no path encodes to {0}")]
    NotInImage(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Balanced, nonempty string over `()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketString(String);

impl BracketString {
    pub fn parse(text: &str) -> Result<Self, BijectionError> {
        if text.is_empty() {
            return Err(BijectionError::EmptyInput);
        }
        let mut open = Vec::new();
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '(' => open.push(i),
                ')' => {
                    open.pop()
                        .ok_or(BijectionError::UnbalancedBrackets { position: i + 1 })?;
                }
                _ => return Err(BijectionError::IllegalCharacter { ch, position: i + 1 }),
            }
        }
        if let Some(&i) = open.first() {
            return Err(BijectionError::UnbalancedBrackets { position: i + 1 });
        }
        Ok(BracketString(text.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BracketString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Opening index of the pair closed by the final `)`.
fn final_pair_open(s: &[u8]) -> Option<usize> {
    if s.last() != Some(&b')') {
        return None;
    }
    let mut depth = 0usize;
    for (i, &c) in s.iter().enumerate().rev() {
        if c == b')' {
            depth += 1;
        } else {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

/// Build the bracket string step by step; `H` and `R` act alike.
fn encode_steps(steps: &[Step]) -> Vec<u8> {
    let mut s = b"()".to_vec();
    for &step in steps {
        match step {
            Step::U => {
                let o = final_pair_open(&s).expect("intermediate ends with a pair");
                s.insert(o, b'(');
                s.extend_from_slice(b"()");
            }
            Step::D => s.push(b')'),
            Step::H | Step::R => s.extend_from_slice(b"()"),
            Step::B => {
                let o = final_pair_open(&s).expect("intermediate ends with a pair");
                s.insert(o, b'(');
                s.push(b')');
            }
        }
    }
    s
}

/// Bracket string of `n + 1` pairs for a 2-Motzkin (or Dyck) path of size `n`.
pub fn encode2(path: &LatticePath) -> Result<BracketString, BijectionError> {
    if path.kind() == PathKind::Motzkin1 {
        return Err(PathError::KindMismatch {
            expected: PathKind::Motzkin2,
            found: path.kind(),
        }
        .into());
    }
    let s = encode_steps(path.steps());
    Ok(BracketString(String::from_utf8(s).expect("ascii")))
}

/// Predecessor strings of `s`, one per undo candidate in the order B, D, U, R.
fn undo_candidates(s: &[u8]) -> Vec<(Step, Vec<u8>)> {
    let mut out = Vec::new();
    let n = s.len();
    if n < 4 || s[n - 1] != b')' {
        return out;
    }
    if s[n - 2] == b')' {
        if let Some(o) = final_pair_open(s) {
            if final_pair_open(&s[..n - 1]) == Some(o + 1) {
                let mut prev = s.to_vec();
                prev.remove(n - 1);
                prev.remove(o);
                out.push((Step::B, prev));
            }
        }
        out.push((Step::D, s[..n - 1].to_vec()));
    } else {
        let rem = &s[..n - 2];
        if let Some(o) = final_pair_open(rem) {
            if o > 0 && rem[o - 1] == b'(' {
                let mut prev = rem.to_vec();
                prev.remove(o - 1);
                out.push((Step::U, prev));
            }
        }
        if rem.last() == Some(&b')') {
            out.push((Step::R, rem.to_vec()));
        }
    }
    out
}

fn replay(s: &[u8], trail: &mut Vec<Step>, failed: &mut HashSet<Vec<u8>>) -> bool {
    if s == b"()" {
        return true;
    }
    if failed.contains(s) {
        return false;
    }
    for (step, prev) in undo_candidates(s) {
        trail.push(step);
        if replay(&prev, trail, failed) {
            return true;
        }
        trail.pop();
    }
    failed.insert(s.to_vec());
    false
}

/// Inverse of [`encode2`] by depth-first reverse replay.
pub fn decode2(text: &str) -> Result<LatticePath, BijectionError> {
    let s = BracketString::parse(text)?;
    let mut trail = Vec::new();
    let mut failed = HashSet::new();
    if !replay(s.0.as_bytes(), &mut trail, &mut failed) {
        return Err(BijectionError::NotInImage(s.0));
    }
    trail.reverse();
    let path = LatticePath::new(PathKind::Motzkin2, trail)
        .map_err(|_| BijectionError::NotInImage(s.0.clone()))?;
    if encode_steps(path.steps()) != s.0.as_bytes() {
        return Err(BijectionError::NotInImage(s.0));
    }
    Ok(path)
}

/// Pi-shape of a 1-Motzkin path: [`encode2`] with `H` read as `R`.
pub fn encode1(path: &LatticePath) -> Result<PiShape, BijectionError> {
    if path.kind() == PathKind::Motzkin2 {
        return Err(PathError::KindMismatch {
            expected: PathKind::Motzkin1,
            found: path.kind(),
        }
        .into());
    }
    let text: String = encode_steps(path.steps())
        .into_iter()
        .map(|c| if c == b'(' { '[' } else { ']' })
        .collect();
    Ok(PiShape::from_trusted(text))
}

/// Inverse of [`encode1`].
pub fn decode1(text: &str) -> Result<LatticePath, BijectionError> {
    let shape = PiShape::parse(text).map_err(|e| match e {
        ShapeError::DirectlyNested { position } => BijectionError::DirectlyNested { position },
        ShapeError::IllegalCharacter { ch, position } => {
            BijectionError::IllegalCharacter { ch, position }
        }
        ShapeError::UnbalancedBrackets { position } => {
            BijectionError::UnbalancedBrackets { position }
        }
        _ => BijectionError::EmptyInput,
    })?;
    decode1_shape(&shape)
}

pub fn decode1_shape(shape: &PiShape) -> Result<LatticePath, BijectionError> {
    let parens: String = shape
        .as_str()
        .chars()
        .map(|c| if c == '[' { '(' } else { ')' })
        .collect();
    let path = decode2(&parens)?;
    let steps = path
        .steps()
        .iter()
        .map(|&s| match s {
            Step::R => Ok(Step::H),
            Step::B => Err(BijectionError::NotInImage(shape.to_string())),
            other => Ok(other),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticePath::new(PathKind::Motzkin1, steps)?)
}
