use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Step {
    U,
    D,
    H,
    R,
    B,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::H => 'H',
            Step::R => 'R',
            Step::B => 'B',
        }
    }

    pub fn height_change(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
            _ => 0,
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Step::H | Step::R | Step::B)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PathKind {
    Dyck,
    Motzkin1,
    Motzkin2,
}

impl PathKind {
    /// Steps in the kind's alphabet, in enumeration order.
    pub fn alphabet(self) -> &'static [Step] {
        match self {
            PathKind::Dyck => &[Step::U, Step::D],
            PathKind::Motzkin1 => &[Step::U, Step::D, Step::H],
            PathKind::Motzkin2 => &[Step::U, Step::D, Step::R, Step::B],
        }
    }

    fn step_for(self, ch: char) -> Option<Step> {
        self.alphabet().iter().copied().find(|s| s.symbol() == ch)
    }
}

impl fmt::Display for PathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathKind::Dyck => "dyck",
            PathKind::Motzkin1 => "motzkin1",
            PathKind::Motzkin2 => "motzkin2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("IllegalCharacter: {ch:?} at position {position} is not a {kind} step")]
    IllegalCharacter {
        ch: char,
        position: usize,
        kind: PathKind,
    },
    #[error("NegativeHeight: path drops below the axis at step {position}")]
    NegativeHeight { position: usize },
    #[error("NonzeroFinalHeight: path ends at height {height}")]
    NonzeroFinalHeight { height: i64 },
    #[error("ResourceLimit: size {n} exceeds the enumeration limit {limit}")]
    ResourceLimit { n: usize, limit: usize },
    #[error("KindMismatch: expected a {expected} path, got a {found} path")]
    KindMismatch { expected: PathKind, found: PathKind },
}

/// A nonnegative lattice path from height 0 back to height 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    kind: PathKind,
    steps: Vec<Step>,
}

/// Step counts; `r0` counts horizontal steps of either colour at height 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PathStats {
    pub u: usize,
    pub d: usize,
    pub r: usize,
    pub b: usize,
    pub r0: usize,
}

pub fn parse_path(text: &str, kind: PathKind) -> Result<LatticePath, PathError> {
    let steps = text
        .chars()
        .enumerate()
        .map(|(i, ch)| {
            kind.step_for(ch).ok_or(PathError::IllegalCharacter {
                ch,
                position: i + 1,
                kind,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    LatticePath::new(kind, steps)
}

impl LatticePath {
    pub fn new(kind: PathKind, steps: Vec<Step>) -> Result<Self, PathError> {
        let mut height = 0i64;
        for (i, &step) in steps.iter().enumerate() {
            if !kind.alphabet().contains(&step) {
                return Err(PathError::IllegalCharacter {
                    ch: step.symbol(),
                    position: i + 1,
                    kind,
                });
            }
            height += step.height_change();
            if height < 0 {
                return Err(PathError::NegativeHeight { position: i + 1 });
            }
        }
        if height != 0 {
            return Err(PathError::NonzeroFinalHeight { height });
        }
        Ok(LatticePath { kind, steps })
    }

    pub(crate) fn from_trusted(kind: PathKind, steps: Vec<Step>) -> Self {
        debug_assert!(LatticePath::new(kind, steps.clone()).is_ok());
        LatticePath { kind, steps }
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn size(&self) -> usize {
        self.steps.len()
    }

    pub fn stats(&self) -> PathStats {
        let mut stats = PathStats::default();
        let mut height = 0;
        for &step in &self.steps {
            match step {
                Step::U => stats.u += 1,
                Step::D => stats.d += 1,
                Step::H | Step::R => stats.r += 1,
                Step::B => stats.b += 1,
            }
            if step.is_horizontal() && height == 0 {
                stats.r0 += 1;
            }
            height += step.height_change();
        }
        stats
    }
}

pub fn path_stats(path: &LatticePath) -> PathStats {
    path.stats()
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_valid_paths() {
        let p = parse_path("UHUHDDH", PathKind::Motzkin1).unwrap();
        assert_eq!(p.size(), 7);
        assert_eq!(p.to_string(), "UHUHDDH");
        for kind in [PathKind::Dyck, PathKind::Motzkin1, PathKind::Motzkin2] {
            assert_eq!(parse_path("", kind).unwrap().size(), 0);
        }
    }

    #[test]
    fn rejects_invalid_paths() {
        for kind in [PathKind::Dyck, PathKind::Motzkin1, PathKind::Motzkin2] {
            assert_eq!(
                parse_path("DU", kind),
                Err(PathError::NegativeHeight { position: 1 })
            );
        }
        assert_eq!(
            parse_path("UU", PathKind::Dyck),
            Err(PathError::NonzeroFinalHeight { height: 2 })
        );
        assert!(matches!(
            parse_path("UHD", PathKind::Motzkin2),
            Err(PathError::IllegalCharacter { ch: 'H', position: 2, .. })
        ));
        assert!(matches!(
            parse_path("R", PathKind::Dyck),
            Err(PathError::IllegalCharacter { .. })
        ));
    }

    #[test]
    fn stats() {
        let s = parse_path("H", PathKind::Motzkin1).unwrap().stats();
        assert_eq!((s.u, s.r, s.r0), (0, 1, 1));
        let s = parse_path("UHHD", PathKind::Motzkin1).unwrap().stats();
        assert_eq!((s.u, s.d, s.r, s.r0), (1, 1, 2, 0));
        let s = parse_path("RUBDB", PathKind::Motzkin2).unwrap().stats();
        assert_eq!((s.u, s.r, s.b, s.r0), (1, 1, 2, 2));
        assert_eq!(parse_path("", PathKind::Motzkin1).unwrap().stats(), PathStats::default());
    }
}
