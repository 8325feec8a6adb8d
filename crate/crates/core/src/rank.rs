//! Betti numbers by plain Gaussian elimination of boundary matrices.
//!
//! Independent of the homology model construction; used as a cross-check.

use alloc::collections::BTreeMap;

use crate::complex::CellComplex;
use crate::gf2::CellSet;
use crate::Betti;

/// Rank over Z₂ of the boundary map from dimension `q` to `q − 1`.
fn boundary_rank(x: &CellComplex, q: u8) -> usize {
    let mut pivots: BTreeMap<u32, CellSet> = BTreeMap::new();
    for c in x.cells_of_dim(q) {
        let mut col: CellSet = x.cell(c).boundary.iter().copied().collect();
        while let Some(low) = col.last() {
            match pivots.get(&low.0) {
                Some(p) => col.xor_assign(p),
                None => {
                    pivots.insert(low.0, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `b_q = n_q − rank ∂_q − rank ∂_{q+1}` for `q = 0, 1, 2`.
pub fn rank_oracle(x: &CellComplex) -> Betti {
    let n = x.counts();
    let rank: [usize; 5] = core::array::from_fn(|q| if (1..=3).contains(&q) { boundary_rank(x, q as u8) } else { 0 });
    core::array::from_fn(|q| n[q] - rank[q] - rank[q + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{boundary_surface, build_cubical_complex};
    use crate::fixtures;

    #[test]
    fn small_cases() {
        assert_eq!(rank_oracle(&CellComplex::new()), [0, 0, 0]);
        let mut x = CellComplex::new();
        x.add_vertex(None);
        assert_eq!(rank_oracle(&x), [1, 0, 0]);
        // three squares of a 2×2 grid: one square hole
        assert_eq!(rank_oracle(&fixtures::quad_grid(2, 2, &[(1, 1)])), [1, 1, 0]);
    }

    #[test]
    fn fixture_surfaces() {
        assert_eq!(rank_oracle(&boundary_surface(&fixtures::solid_box([2, 3, 2]))), [1, 0, 1]);
        assert_eq!(rank_oracle(&boundary_surface(&fixtures::torus())), [1, 2, 1]);
        assert_eq!(rank_oracle(&boundary_surface(&fixtures::two_tori())), [2, 4, 2]);
        // the solid itself is contractible
        assert_eq!(rank_oracle(&build_cubical_complex(&fixtures::solid_box([2, 2, 2]))), [1, 0, 0]);
    }
}
