//! Work limits for the exhaustive routines.
//!
//! Every limit can be overridden through an environment variable read once
//! per process:
//!
//! | field            | variable                      | default  |
//! |------------------|-------------------------------|----------|
//! | `field_order`    | `LCDMDS_CAP_FIELD`            | 2^16     |
//! | `subsets`        | `LCDMDS_CAP_SUBSETS`          | 10^6     |
//! | `codewords`      | `LCDMDS_CAP_CODEWORDS`        | 10^7     |
//! | `candidates`     | `LCDMDS_CAP_CANDIDATES`       | 10^8     |
//! | `search_budget`  | `LCDMDS_CAP_SEARCH`           | 10^7     |
//! | `table_distance` | `LCDMDS_CAP_TABLE_DISTANCE`   | 10^5     |

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest admissible field order.
    pub field_order: u64,
    /// Column subsets examined by MDS tests.
    pub subsets: u64,
    /// Codewords enumerated by distance computations.
    pub codewords: u64,
    /// Systematic generators enumerated by exhaustive searches.
    pub candidates: u64,
    /// Candidates tried by the multiplier searches (self-dual, fallback).
    pub search_budget: u64,
    /// Projective messages the `table` command spends on each distance.
    pub table_distance: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_order: 1 << 16,
            subsets: 1_000_000,
            codewords: 10_000_000,
            candidates: 100_000_000,
            search_budget: 10_000_000,
            table_distance: 100_000,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        let read = |name: &str, slot: &mut u64| {
            if let Some(v) = std::env::var(name).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        };
        read("LCDMDS_CAP_FIELD", &mut caps.field_order);
        read("LCDMDS_CAP_SUBSETS", &mut caps.subsets);
        read("LCDMDS_CAP_CODEWORDS", &mut caps.codewords);
        read("LCDMDS_CAP_CANDIDATES", &mut caps.candidates);
        read("LCDMDS_CAP_SEARCH", &mut caps.search_budget);
        read("LCDMDS_CAP_TABLE_DISTANCE", &mut caps.table_distance);
        caps
    }

    /// Process-wide caps, initialised from the environment on first use.
    pub fn global() -> &'static Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        CAPS.get_or_init(Caps::from_env)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
