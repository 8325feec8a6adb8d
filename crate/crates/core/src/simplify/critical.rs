//! Vertices of the voxel surface where it is not locally a disk-like sheet.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::CellComplex;
use crate::gf2::CellId;
use crate::voxel::VoxelImage;

/// Which local configuration flagged a vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CriticalTag {
    /// An edge with exactly two of its four voxels in the foreground, diagonally.
    EdgeDiagonal,
    /// Exactly two of the eight voxels at the vertex are foreground, at
    /// opposite corners.
    CornerForeground,
    /// Exactly two of the eight voxels at the vertex are background, at
    /// opposite corners.
    CornerBackground,
}

impl CriticalTag {
    fn bit(self) -> u8 {
        match self {
            CriticalTag::EdgeDiagonal => 1,
            CriticalTag::CornerForeground => 2,
            CriticalTag::CornerBackground => 4,
        }
    }

    const ALL: [CriticalTag; 3] =
        [CriticalTag::EdgeDiagonal, CriticalTag::CornerForeground, CriticalTag::CornerBackground];
}

/// Critical vertices of a surface with their configuration tags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CriticalitySet {
    flags: BTreeMap<CellId, u8>,
}

impl CriticalitySet {
    pub fn is_critical(&self, v: CellId) -> bool {
        self.flags.contains_key(&v)
    }

    pub fn tags(&self, v: CellId) -> Vec<CriticalTag> {
        let bits = self.flags.get(&v).copied().unwrap_or(0);
        CriticalTag::ALL.into_iter().filter(|t| bits & t.bit() != 0).collect()
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = CellId> + '_ {
        self.flags.keys().copied()
    }

    fn flag(&mut self, v: CellId, tag: CriticalTag) {
        *self.flags.entry(v).or_default() |= tag.bit();
    }
}

/// Octant bits: bit `a` of the index is the voxel's offset along axis `a`
/// (0 = below the vertex, 1 = above).
fn octants(img: &VoxelImage, c: [i64; 3]) -> [bool; 8] {
    core::array::from_fn(|o| {
        let p = [0, 1, 2].map(|a| c[a] - 1 + (o >> a & 1) as i64);
        img.contains(p)
    })
}

/// Flags the critical vertices of `dq`, the surface of `img`'s cubical complex.
pub fn find_critical_vertices(img: &VoxelImage, dq: &CellComplex) -> CriticalitySet {
    let by_coords: BTreeMap<[i64; 3], CellId> =
        dq.cells_of_dim(0).filter_map(|v| dq.coords(v).map(|c| (c, v))).collect();
    let mut out = CriticalitySet::default();
    for (&c, &v) in &by_coords {
        let occ = octants(img, c);
        let fg: Vec<usize> = (0..8).filter(|&o| occ[o]).collect();
        let bg: Vec<usize> = (0..8).filter(|&o| !occ[o]).collect();
        if fg.len() == 2 && fg[0] ^ fg[1] == 7 {
            out.flag(v, CriticalTag::CornerForeground);
        }
        if bg.len() == 2 && bg[0] ^ bg[1] == 7 {
            out.flag(v, CriticalTag::CornerBackground);
        }
        for axis in 0..3 {
            for side in 0..2 {
                // the four voxels around the edge from c along ±axis
                let around: Vec<usize> = (0..8).filter(|&o| o >> axis & 1 == side).collect();
                let on: Vec<usize> = around.iter().copied().filter(|&o| occ[o]).collect();
                if on.len() == 2 && (on[0] ^ on[1]).count_ones() == 2 {
                    out.flag(v, CriticalTag::EdgeDiagonal);
                    let mut far = c;
                    far[axis] += if side == 1 { 1 } else { -1 };
                    if let Some(&w) = by_coords.get(&far) {
                        out.flag(w, CriticalTag::EdgeDiagonal);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::boundary_surface;
    use crate::fixtures;

    fn critical(img: &VoxelImage) -> (CellComplex, CriticalitySet) {
        let dq = boundary_surface(img);
        let cs = find_critical_vertices(img, &dq);
        (dq, cs)
    }

    fn vertex_at(x: &CellComplex, c: [i64; 3]) -> CellId {
        x.cells_of_dim(0).find(|&v| x.coords(v) == Some(c)).unwrap()
    }

    #[test]
    fn edge_diagonal_pair() {
        let img = VoxelImage::from_points([2, 2, 1], [[0, 0, 0], [1, 1, 0]]).unwrap();
        let (dq, cs) = critical(&img);
        assert_eq!(cs.len(), 2);
        for c in [[1, 1, 0], [1, 1, 1]] {
            assert_eq!(cs.tags(vertex_at(&dq, c)), [CriticalTag::EdgeDiagonal]);
        }
    }

    #[test]
    fn corner_diagonal_pair() {
        let img = VoxelImage::from_points([2, 2, 2], [[0, 0, 0], [1, 1, 1]]).unwrap();
        let (dq, cs) = critical(&img);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.tags(vertex_at(&dq, [1, 1, 1])), [CriticalTag::CornerForeground]);
    }

    #[test]
    fn block_minus_corner_pair() {
        let mut img = fixtures::solid_box([2, 2, 2]);
        img.set([0, 0, 0], false).unwrap();
        img.set([1, 1, 1], false).unwrap();
        let (dq, cs) = critical(&img);
        assert_eq!(cs.tags(vertex_at(&dq, [1, 1, 1])), [CriticalTag::CornerBackground]);
    }

    #[test]
    fn flat_shapes_have_none() {
        assert!(critical(&fixtures::solid_box([3, 2, 2])).1.is_empty());
        assert!(critical(&fixtures::torus()).1.is_empty());
    }
}
