//! Resource caps. Every enumeration or Gröbner computation checks one of these
//! and fails with [`Error::Budget`](crate::Error::Budget) instead of running away.

use std::env;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest field order `p^n` that may be instantiated.
    pub max_field_order: u64,
    /// Fields up to this order get exp/log tables.
    pub zech_threshold: u64,
    /// Largest cyclotomic conductor accepted at API entry points.
    pub max_conductor: u64,
    /// Largest number of terms `mann_solve` will enumerate.
    pub mann_max_terms: usize,
    pub gb_max_basis: usize,
    pub gb_max_degree: u32,
    pub gb_max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_field_order: 1 << 20,
            zech_threshold: 1 << 16,
            max_conductor: 1260,
            mann_max_terms: 4,
            gb_max_basis: 2000,
            gb_max_degree: 64,
            gb_max_pairs: 200_000,
        }
    }
}

fn read<T: std::str::FromStr>(name: &str, default: T) -> T {
    env::var(name)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

impl Limits {
    /// Defaults overridden by `MULCHAR_*` environment variables.
    pub fn from_env() -> Self {
        let d = Limits::default();
        Limits {
            max_field_order: read("MULCHAR_MAX_FIELD", d.max_field_order),
            zech_threshold: read("MULCHAR_ZECH_THRESHOLD", d.zech_threshold),
            max_conductor: read("MULCHAR_MAX_CONDUCTOR", d.max_conductor),
            mann_max_terms: read("MULCHAR_MANN_MAX_N", d.mann_max_terms),
            gb_max_basis: read("MULCHAR_GB_MAX_BASIS", d.gb_max_basis),
            gb_max_degree: read("MULCHAR_GB_MAX_DEGREE", d.gb_max_degree),
            gb_max_pairs: read("MULCHAR_GB_MAX_PAIRS", d.gb_max_pairs),
        }
    }
}
