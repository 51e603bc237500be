use std::collections::BTreeSet;

use super::{LatticePath, PathError, PathKind, Step};
use crate::structure::IslandDiagram;

/// Largest path size accepted by [`decorate_islands`].
pub const MAX_DECORATION_SIZE: usize = 8;

/// Opening index of the pair closed by the final `)`, skipping blanks.
fn final_pair_open(s: &str) -> usize {
    let mut depth = 0usize;
    for (i, c) in s.char_indices().rev() {
        match c {
            ')' => depth += 1,
            '(' => {
                depth -= 1;
                if depth == 0 {
                    return i;
                }
            }
            _ => {}
        }
    }
    unreachable!("intermediate diagram ends with a pair")
}

fn blank(on: bool) -> &'static str {
    if on {
        "_"
    } else {
        ""
    }
}

/// All island diagrams obtained from a 2-Motzkin path by placing the optional
/// blanks each step allows.
///
/// Starting from `(_)`: `U` wraps the final pair in a new opening bracket and
/// appends a hairpin, `D` closes, `R` appends a hairpin, `B` wraps the final
/// pair in a new pair.
pub fn decorate_islands(path: &LatticePath) -> Result<BTreeSet<IslandDiagram>, PathError> {
    decorate_islands_with_limit(path, MAX_DECORATION_SIZE)
}

pub fn decorate_islands_with_limit(
    path: &LatticePath,
    limit: usize,
) -> Result<BTreeSet<IslandDiagram>, PathError> {
    if path.kind() == PathKind::Motzkin1 {
        return Err(PathError::KindMismatch {
            expected: PathKind::Motzkin2,
            found: path.kind(),
        });
    }
    if path.size() > limit {
        return Err(PathError::ResourceLimit {
            n: path.size(),
            limit,
        });
    }
    let mut current = vec!["(_)".to_owned()];
    for &step in path.steps() {
        let mut next = Vec::with_capacity(current.len() * 4);
        for s in &current {
            match step {
                Step::D => {
                    for a in [false, true] {
                        next.push(format!("{s}{})", blank(a)));
                    }
                }
                Step::H | Step::R => {
                    for a in [false, true] {
                        next.push(format!("{s}{}(_)", blank(a)));
                    }
                }
                Step::U | Step::B => {
                    let o = final_pair_open(s);
                    let (head, last) = s.split_at(o);
                    let tail = if step == Step::U { "(_)" } else { ")" };
                    for a in [false, true] {
                        for b in [false, true] {
                            next.push(format!("{head}({}{last}{}{tail}", blank(a), blank(b)));
                        }
                    }
                }
            }
        }
        current = next;
    }
    Ok(current.into_iter().map(IslandDiagram::from_trusted).collect())
}
