//! Bundled example transducers.
//!
//! | name | behaviour |
//! |------|-----------|
//! | `T_ID` | identity on `(a+b)*` |
//! | `T_COPY_AB` | `u ↦ uu` on `(a+b)*` |
//! | `T_COPY_ABC` | `u ↦ uu` on `(abc)*` |
//! | `T_MIRROR` | `u ↦ u·reverse(u)` on `(a+b)*` |
//! | `T_RUNNING` | blocks separated by `$`, each doubled when it lies in `(abc)*` and the next block has even length |
//! | `FIG1`, `FIG2`, `FIG4` | small machines reproducing specific run shapes |

use crate::transducer::{parse_transducer, Transducer};

pub const T_ID: &str = include_str!("../fixtures/t_id.tdx");
pub const T_COPY_AB: &str = include_str!("../fixtures/t_copy_ab.tdx");
pub const T_COPY_ABC: &str = include_str!("../fixtures/t_copy_abc.tdx");
pub const T_MIRROR: &str = include_str!("../fixtures/t_mirror.tdx");
pub const T_RUNNING: &str = include_str!("../fixtures/t_running.tdx");
pub const FIG1: &str = include_str!("../fixtures/fig1.tdx");
pub const FIG2: &str = include_str!("../fixtures/fig2.tdx");
pub const FIG4: &str = include_str!("../fixtures/fig4.tdx");

/// Every bundled fixture as `(name, source)`.
pub const ALL: [(&str, &str); 8] = [
    ("T_ID", T_ID),
    ("T_COPY_AB", T_COPY_AB),
    ("T_COPY_ABC", T_COPY_ABC),
    ("T_MIRROR", T_MIRROR),
    ("T_RUNNING", T_RUNNING),
    ("FIG1", FIG1),
    ("FIG2", FIG2),
    ("FIG4", FIG4),
];

/// The five behavioural fixtures.
pub const MAIN: [&str; 5] = ["T_ID", "T_COPY_AB", "T_COPY_ABC", "T_MIRROR", "T_RUNNING"];

/// Parses a bundled fixture by name.
///
/// # Panics
/// If `name` is unknown; bundled sources always parse.
pub fn load(name: &str) -> Transducer {
    let src = ALL
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("unknown fixture {name}"))
        .1;
    parse_transducer(src).expect("bundled fixture parses")
}
