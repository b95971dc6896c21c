use crate::frac::{frac, int, Frac};

use super::forest::RegionNode;

/// Upper bound on the size of an arc-disjoint dicycle packing: (2n−5)/(g−1)
/// for g ∈ {4, 5} and (2n−6)/g for g ≥ 6. `None` below g = 4.
pub fn packing_bound(n: usize, g: usize) -> Option<Frac> {
    let n = n as i64;
    match g {
        0..=3 => None,
        4 | 5 => Some(frac(2 * n - 5, g as i64 - 1)),
        _ => Some(frac(2 * n - 6, g as i64)),
    }
}

/// Lower bound on φ of a region with `k` boundary children (roots for the
/// outer region) at digirth `g`.
pub fn claim1_bound(node: RegionNode, k: usize, g: usize) -> Frac {
    let (k, g) = (k as i64, g as i64);
    let base = frac(3 * (g - 2) * k, 2);
    match node {
        RegionNode::Cycle(_) => base + frac(3 * g, 2) + int(if g >= 6 { 3 } else { 0 }),
        RegionNode::Outer => base + int(if g >= 6 { 6 } else { 3 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_bound_values() {
        assert_eq!(packing_bound(10, 5), Some(frac(15, 4)));
        assert_eq!(packing_bound(10, 4), Some(frac(5, 1)));
        assert_eq!(packing_bound(3, 6), Some(int(0)));
        assert_eq!(packing_bound(12, 6), Some(int(3)));
        assert_eq!(packing_bound(12, 3), None);
    }

    #[test]
    fn leaf_bound_is_tight_at_four() {
        // a lone 4-cycle has φ = 3·4 − 6 on each side
        assert_eq!(claim1_bound(RegionNode::Cycle(0), 0, 4), int(6));
        assert_eq!(claim1_bound(RegionNode::Outer, 1, 4), int(6));
        assert_eq!(claim1_bound(RegionNode::Outer, 1, 6), int(12));
        assert_eq!(claim1_bound(RegionNode::Cycle(0), 2, 5), frac(33, 2));
    }
}
