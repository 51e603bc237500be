use super::{LatticePath, PathError, PathKind, Step};

/// Largest size accepted by [`enumerate_paths`].
pub const MAX_ENUMERATION_SIZE: usize = 16;

/// Lazily yields every path of the given size and kind exactly once, in
/// lexicographic order of the kind's alphabet.
pub fn enumerate_paths(n: usize, kind: PathKind) -> Result<PathIter, PathError> {
    enumerate_paths_with_limit(n, kind, MAX_ENUMERATION_SIZE)
}

pub fn enumerate_paths_with_limit(
    n: usize,
    kind: PathKind,
    limit: usize,
) -> Result<PathIter, PathError> {
    if n > limit {
        return Err(PathError::ResourceLimit { n, limit });
    }
    Ok(PathIter {
        kind,
        n,
        choice: Vec::with_capacity(n),
        height: 0,
        started: false,
        done: false,
    })
}

#[derive(Debug, Clone)]
pub struct PathIter {
    kind: PathKind,
    n: usize,
    choice: Vec<usize>,
    height: i64,
    started: bool,
    done: bool,
}

impl PathIter {
    fn step(&self, k: usize) -> Step {
        self.kind.alphabet()[k]
    }

    /// A step is feasible if the path can still return to the axis.
    fn feasible(&self, k: usize) -> bool {
        let h = self.height + self.step(k).height_change();
        let remaining = (self.n - self.choice.len() - 1) as i64;
        h >= 0 && h <= remaining && (self.kind != PathKind::Dyck || (remaining - h) % 2 == 0)
    }

    fn push(&mut self, k: usize) {
        self.height += self.step(k).height_change();
        self.choice.push(k);
    }

    fn fill(&mut self) -> bool {
        while self.choice.len() < self.n {
            match (0..self.kind.alphabet().len()).find(|&k| self.feasible(k)) {
                Some(k) => self.push(k),
                None => return false,
            }
        }
        true
    }

    fn current(&self) -> LatticePath {
        let steps = self.choice.iter().map(|&k| self.step(k)).collect();
        LatticePath::from_trusted(self.kind, steps)
    }
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.fill() {
                return Some(self.current());
            }
        }
        loop {
            loop {
                let Some(k) = self.choice.pop() else {
                    self.done = true;
                    return None;
                };
                self.height -= self.step(k).height_change();
                if let Some(next) = (k + 1..self.kind.alphabet().len()).find(|&j| self.feasible(j)) {
                    self.push(next);
                    break;
                }
            }
            if self.fill() {
                return Some(self.current());
            }
        }
    }
}
