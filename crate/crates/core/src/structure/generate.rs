use std::collections::BTreeSet;

use thiserror::Error;

use super::IslandDiagram;

/// Largest `ell` accepted by [`generate_island_diagrams`].
pub const MAX_ISLAND_PAIRS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("InvalidSize: ell must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error("ResourceLimit: ell = {ell} exceeds the enumeration limit {limit}")]
    ResourceLimit { ell: usize, limit: usize },
}

/// All island diagrams with `ell` base pairs.
pub fn generate_island_diagrams(ell: usize) -> Result<BTreeSet<IslandDiagram>, GenerateError> {
    generate_island_diagrams_with_limit(ell, MAX_ISLAND_PAIRS)
}

pub fn generate_island_diagrams_with_limit(
    ell: usize,
    limit: usize,
) -> Result<BTreeSet<IslandDiagram>, GenerateError> {
    if ell == 0 {
        return Err(GenerateError::InvalidSize(ell));
    }
    if ell > limit {
        return Err(GenerateError::ResourceLimit { ell, limit });
    }
    let mut out = BTreeSet::new();
    let mut word = Vec::with_capacity(2 * ell);
    dyck_words(ell, 0, 0, &mut word, &mut |w| insert_blanks(w, &mut out));
    Ok(out)
}

fn dyck_words(
    ell: usize,
    opened: usize,
    closed: usize,
    word: &mut Vec<u8>,
    visit: &mut impl FnMut(&[u8]),
) {
    if closed == ell {
        visit(word);
        return;
    }
    if opened < ell {
        word.push(b'(');
        dyck_words(ell, opened + 1, closed, word, visit);
        word.pop();
    }
    if closed < opened {
        word.push(b')');
        dyck_words(ell, opened, closed + 1, word, visit);
        word.pop();
    }
}

/// Blank mandatory inside every `()`, optional in every other internal gap.
fn insert_blanks(word: &[u8], out: &mut BTreeSet<IslandDiagram>) {
    let optional: Vec<usize> = (1..word.len())
        .filter(|&g| !(word[g - 1] == b'(' && word[g] == b')'))
        .collect();
    for mask in 0u64..(1u64 << optional.len()) {
        let mut text = String::with_capacity(2 * word.len());
        let mut next = 0;
        for (g, &ch) in word.iter().enumerate() {
            if g > 0 {
                let forced = word[g - 1] == b'(' && ch == b')';
                let chosen = next < optional.len() && optional[next] == g;
                if chosen {
                    if mask >> next & 1 == 1 {
                        text.push('_');
                    }
                    next += 1;
                } else if forced {
                    text.push('_');
                }
            }
            text.push(ch as char);
        }
        out.insert(IslandDiagram::from_trusted(text));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Counts;
    use std::collections::BTreeMap;

    #[test]
    fn small_cases() {
        let one: Vec<String> = generate_island_diagrams(1)
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(one, vec!["(_)"]);
        let two: BTreeSet<String> = generate_island_diagrams(2)
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        let expected: BTreeSet<String> = ["(_)(_)", "(_)_(_)", "((_))", "(_(_))", "((_)_)", "(_(_)_)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(two, expected);
    }

    #[test]
    fn guards() {
        assert_eq!(generate_island_diagrams(0), Err(GenerateError::InvalidSize(0)));
        assert_eq!(
            generate_island_diagrams(11),
            Err(GenerateError::ResourceLimit { ell: 11, limit: 10 })
        );
    }

    #[test]
    fn refined_counts_match_closed_form() {
        let counts = Counts::new();
        for ell in 1..=6usize {
            let mut tally: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for d in generate_island_diagrams(ell).unwrap() {
                let s = d.stats();
                assert_eq!(s.pairs, ell);
                *tally.entry((s.hairpins, s.islands)).or_default() += 1;
            }
            for h in 1..=ell {
                for islands in 1..=2 * ell {
                    let expected = counts
                        .island_count(h as i64, islands as i64, ell as i64)
                        .unwrap();
                    let got = tally.get(&(h, islands)).copied().unwrap_or(0);
                    assert_eq!(expected, got.into(), "h={h} I={islands} ell={ell}");
                }
            }
        }
    }
}
