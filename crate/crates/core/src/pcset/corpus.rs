//! A fixed family of pc-sets built from lines, planes and points in `K²` and `K³`.

use super::PcSet;
use crate::error::Result;
use crate::limits::Limits;

const PLANE: &[(&str, &str)] = &[
    ("x1", ""),
    ("x2", ""),
    ("x1 - x2", ""),
    ("x1 + x2 - 1", ""),
    ("x1 - 1", ""),
    ("x1, x2", ""),
    ("x1 - 1, x2", ""),
    ("x1, x2 - 1", ""),
    ("x1 - 1, x2 - 1", ""),
    ("x2", "x1, x2"),
    ("x1 - x2", "x1 - 1, x2 - 1"),
    ("x1; x2", ""),
    ("x1; x2", "x1, x2"),
    ("x2; x1 - x2", ""),
    ("x1 - 1; x2", "x1 - 1, x2"),
    ("x1; x1 - x2; x2", ""),
    ("x2; x1 + x2 - 1", "x1 - 1, x2"),
    ("x1, x2; x1 - 1, x2", ""),
    ("x2; x1, x2 - 1", ""),
    ("K", ""),
    ("K", "x1"),
    ("K", "x1; x2"),
    ("", ""),
    ("x1", "x1"),
    ("x1, x2", "x1"),
    ("x1 - x2; x1 + x2 - 1", "x1 - x2"),
    ("x2", "x1, x2 | x1 - 1, x2"),
];

const SPACE: &[(&str, &str)] = &[
    ("x3", ""),
    ("x1", ""),
    ("x1 + x2 + x3 - 1", ""),
    ("x1, x2", ""),
    ("x2, x3", ""),
    ("x1 - x2, x3", ""),
    ("x1, x2, x3", ""),
    ("x1 - 1, x2, x3", ""),
    ("x3", "x1, x2"),
    ("x3", "x1, x2, x3"),
    ("x3; x1", ""),
    ("x3; x1", "x1, x3"),
    ("x1, x2; x2, x3", ""),
    ("x1, x2; x2, x3", "x1, x2, x3"),
    ("x3; x1, x2", ""),
    ("x3; x1 - 1, x2 - 1", ""),
    ("x1, x2; x3", "x3"),
    ("K", "x3"),
    ("K", ""),
    ("x1; x2; x3", ""),
    ("x1, x2; x1, x3; x2, x3", ""),
    ("x3; x1 + x2 + x3 - 1", "x3, x1 + x2 - 1"),
    ("x2, x3; x1 - x2, x3", "x1, x2, x3"),
    ("", ""),
    ("x1 - x2, x3; x1, x2, x3 - 1", ""),
];

fn build(n: usize, specs: &[(&str, &str)], limits: &Limits) -> Result<Vec<PcSet>> {
    specs.iter().map(|(v, s)| PcSet::parse(n, v, s, limits)?.normalize()).collect()
}

/// The corpus as `(ambient dimension, sets)` groups.
pub fn linear_corpus(limits: &Limits) -> Result<Vec<(usize, Vec<PcSet>)>> {
    Ok(vec![(2, build(2, PLANE, limits)?), (3, build(3, SPACE, limits)?)])
}

/// A few one-dimensional sets, used as product factors.
pub fn line_factors(limits: &Limits) -> Result<Vec<PcSet>> {
    build(1, &[("K", ""), ("K", "x1"), ("x1", ""), ("x1; x1 - 1", ""), ("", "")], limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size_and_ranks() {
        let c = linear_corpus(&Limits::default()).unwrap();
        let total: usize = c.iter().map(|(_, s)| s.len()).sum();
        assert!(total >= 50);
        for (n, sets) in &c {
            for t in sets {
                assert!(t.rank().unwrap().is_none_or(|r| r <= *n));
            }
        }
    }
}
