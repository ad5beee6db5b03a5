//! Bundled Steiner systems: the Fano plane and the affine plane of order 3.

use crate::hypercore::{parse_hg, Hypergraph};

pub const FANO_HG: &str = include_str!("../fixtures/fano.hg");
pub const STS9_HG: &str = include_str!("../fixtures/sts9.hg");

/// Steiner (7, 3, 2)-system.
pub fn fano() -> Hypergraph {
    parse_hg(FANO_HG).expect("bundled fixture is valid")
}

/// Steiner (9, 3, 2)-system.
pub fn sts9() -> Hypergraph {
    parse_hg(STS9_HG).expect("bundled fixture is valid")
}

pub fn by_name(name: &str) -> Option<Hypergraph> {
    match name {
        "fano" => Some(fano()),
        "sts9" => Some(sts9()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::max_r_degree;

    #[test]
    fn fixtures_are_steiner_triple_systems() {
        for (h, n) in [(fano(), 7), (sts9(), 9)] {
            assert_eq!(h.n(), n);
            assert_eq!(max_r_degree(&h), 1);
            // every pair covered exactly once
            assert_eq!(h.edge_count() * 3, n * (n - 1) / 2);
        }
    }
}
