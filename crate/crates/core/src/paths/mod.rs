//! Dyck and Motzkin paths, the bracket bijections and island decorations.

mod bijection;
mod decorate;
mod enumerate;
mod path;

pub use bijection::{decode1, decode1_shape, decode2, encode1, encode2, BijectionError, BracketString};
pub use decorate::{decorate_islands, decorate_islands_with_limit, MAX_DECORATION_SIZE};
pub use enumerate::{enumerate_paths, enumerate_paths_with_limit, PathIter, MAX_ENUMERATION_SIZE};
pub use path::{parse_path, path_stats, LatticePath, PathError, PathKind, PathStats, Step};
