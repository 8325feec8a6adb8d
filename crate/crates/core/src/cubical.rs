//! Cubical complex of a voxel image and its boundary surface.

use alloc::vec::Vec;

use crate::complex::CellComplex;
use crate::gf2::CellId;
use crate::voxel::{Point, VoxelImage};

/// A lattice cell: anchor corner plus unit extents per axis.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Key {
    dim: u8,
    anchor: Point,
    extent: [u8; 3],
}

impl Key {
    fn facets(&self) -> impl Iterator<Item = Key> + '_ {
        (0..3).filter(move |&i| self.extent[i] == 1).flat_map(move |i| {
            let mut extent = self.extent;
            extent[i] = 0;
            let mut far = self.anchor;
            far[i] += 1;
            [Key { dim: self.dim - 1, anchor: self.anchor, extent }, Key { dim: self.dim - 1, anchor: far, extent }]
        })
    }
}

/// All voxels of the image together with all their faces, each exactly once.
///
/// Ids run through vertices, edges, quads and cubes in that order; within a
/// dimension cells are ordered by anchor coordinates `(x, y, z)`, so an edge's
/// lower endpoint always has the smaller id.
pub fn build_cubical_complex(img: &VoxelImage) -> CellComplex {
    let mut keys = Vec::with_capacity(27 * img.len());
    for p in img.points() {
        for bits in 0u8..8 {
            let extent = [bits & 1, bits >> 1 & 1, bits >> 2 & 1];
            let dim = extent.iter().sum::<u8>();
            for off in 0u8..8 {
                let o = [off & 1, off >> 1 & 1, off >> 2 & 1];
                if (0..3).any(|i| o[i] == 1 && extent[i] == 1) {
                    continue;
                }
                let anchor = [p[0] + o[0] as i64, p[1] + o[1] as i64, p[2] + o[2] as i64];
                keys.push(Key { dim, anchor, extent });
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();

    let mut x = CellComplex::new();
    let find = |k: &Key| CellId(keys.binary_search(k).expect("facet of a present cell") as u32);
    for k in &keys {
        if k.dim == 0 {
            x.add_vertex(Some(k.anchor));
        } else {
            let facets: Vec<CellId> = k.facets().map(|f| find(&f)).collect();
            x.add_cell(k.dim, facets).expect("facets are present and one dimension lower");
        }
    }
    x
}

/// The surface of a cubical complex: quads with exactly one incident cube,
/// plus their faces, renumbered in the original order.
pub fn boundary_subcomplex(q: &CellComplex) -> CellComplex {
    let n = q.slots();
    let mut keep = alloc::vec![false; n];
    for quad in q.cells_of_dim(2) {
        if q.cell(quad).coboundary.len() == 1 {
            keep[quad.index()] = true;
            for &e in &q.cell(quad).boundary {
                keep[e.index()] = true;
                for &v in &q.cell(e).boundary {
                    keep[v.index()] = true;
                }
            }
        }
    }
    let mut new_id = alloc::vec![CellId(u32::MAX); n];
    let mut out = CellComplex::new();
    for d in 0..3u8 {
        for c in q.cells_of_dim(d) {
            if !keep[c.index()] {
                continue;
            }
            let id = if d == 0 {
                out.add_vertex(q.coords(c))
            } else {
                let facets = q.cell(c).boundary.iter().map(|b| new_id[b.index()]);
                out.add_cell(d, facets).expect("closure is kept")
            };
            new_id[c.index()] = id;
        }
    }
    out
}

/// Convenience: the boundary surface of an image.
pub fn boundary_surface(img: &VoxelImage) -> CellComplex {
    boundary_subcomplex(&build_cubical_complex(img))
}
