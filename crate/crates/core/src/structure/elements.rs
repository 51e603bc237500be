use serde::Serialize;

use super::SecondaryStructure;

/// A run of consecutive vertices, 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Run {
    pub start: usize,
    pub end: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn from_zero_based(start: usize, end_exclusive: usize) -> Option<Run> {
        (end_exclusive > start).then(|| Run {
            start: start + 1,
            end: end_exclusive,
        })
    }
}

/// Base pair `(i, j)`, 1-based with `i < j`.
pub type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hairpin {
    pub foundation: Pair,
    pub loop_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bulge {
    pub outer: Pair,
    pub inner: Pair,
    pub run: Run,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteriorLoop {
    pub outer: Pair,
    pub inner: Pair,
    pub left: Run,
    pub right: Run,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiloop {
    pub closing: Pair,
    /// Number of base pairs bounding the loop, closing pair included (>= 3).
    pub branches: usize,
    /// Length of each of the `branches` backbone segments; 0 for an empty one.
    pub unpaired: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stack {
    pub outer: Pair,
    pub length: usize,
}

/// Every structure element of a secondary structure.
///
/// Unpaired vertices are split among hairpins, bulges, tails, interior loops,
/// multiloops and the external loop; paired vertices among islands and
/// stacks. An all-unpaired structure has no tails: its vertices are reported
/// as external-loop vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub hairpins: Vec<Hairpin>,
    pub bulges: Vec<Bulge>,
    pub tails: Vec<Run>,
    pub interior_loops: Vec<InteriorLoop>,
    pub multiloops: Vec<Multiloop>,
    pub external_components: usize,
    pub external_unpaired: Vec<Run>,
    pub stacks: Vec<Stack>,
    pub islands: Vec<Run>,
}

/// Base pairs directly enclosed by `lo..hi` (0-based, exclusive bounds),
/// returned as 0-based `(open, close)`.
fn children(ss: &SecondaryStructure, lo: usize, hi: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut k = lo;
    while k < hi {
        match ss.partner(k) {
            Some(j) if j > k => {
                out.push((k, j));
                k = j + 1;
            }
            _ => k += 1,
        }
    }
    out
}

/// Backbone segments of a loop spanning `lo..hi` around its branches, as
/// 0-based half-open ranges (possibly empty).
fn segments(lo: usize, hi: usize, branches: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(branches.len() + 1);
    let mut cursor = lo;
    for &(open, close) in branches {
        out.push((cursor, open));
        cursor = close + 1;
    }
    out.push((cursor, hi));
    out
}

fn one_based((i, j): (usize, usize)) -> Pair {
    (i + 1, j + 1)
}

pub fn analyze_elements(ss: &SecondaryStructure) -> ElementReport {
    let mut report = ElementReport::default();
    let n = ss.len();

    for (i, j) in ss.pairs().into_iter().map(|(i, j)| (i - 1, j - 1)) {
        let inner = children(ss, i + 1, j);
        match inner.len() {
            0 => report.hairpins.push(Hairpin {
                foundation: one_based((i, j)),
                loop_length: j - i - 1,
            }),
            1 => {
                let segs = segments(i + 1, j, &inner);
                let left = Run::from_zero_based(segs[0].0, segs[0].1);
                let right = Run::from_zero_based(segs[1].0, segs[1].1);
                let outer = one_based((i, j));
                let inner = one_based(inner[0]);
                match (left, right) {
                    (None, None) => {}
                    (Some(run), None) | (None, Some(run)) => {
                        report.bulges.push(Bulge { outer, inner, run })
                    }
                    (Some(left), Some(right)) => report.interior_loops.push(InteriorLoop {
                        outer,
                        inner,
                        left,
                        right,
                    }),
                }
            }
            k => report.multiloops.push(Multiloop {
                closing: one_based((i, j)),
                branches: k + 1,
                unpaired: segments(i + 1, j, &inner)
                    .into_iter()
                    .map(|(a, b)| b - a)
                    .collect(),
            }),
        }
        if !(i > 0 && ss.is_pair(i - 1, j + 1)) {
            let mut length = 1;
            while ss.is_pair(i + length, j - length) {
                length += 1;
            }
            report.stacks.push(Stack {
                outer: one_based((i, j)),
                length,
            });
        }
    }

    let top = children(ss, 0, n);
    report.external_components = top.len();
    let segs = segments(0, n, &top);
    let last = segs.len() - 1;
    for (idx, (a, b)) in segs.into_iter().enumerate() {
        let Some(run) = Run::from_zero_based(a, b) else {
            continue;
        };
        if !top.is_empty() && (idx == 0 || idx == last) {
            report.tails.push(run);
        } else {
            report.external_unpaired.push(run);
        }
    }

    let mut k = 0;
    while k < n {
        if ss.is_paired(k) {
            let start = k;
            while k < n && ss.is_paired(k) {
                k += 1;
            }
            report.islands.push(Run {
                start: start + 1,
                end: k,
            });
        } else {
            k += 1;
        }
    }
    report
}
