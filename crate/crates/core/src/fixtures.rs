//! Small synthetic shapes with known topology.

use alloc::vec::Vec;

use crate::complex::CellComplex;
use crate::gf2::CellId;
use crate::voxel::VoxelImage;

fn image_where(dims: [u32; 3], pred: impl Fn(i64, i64, i64) -> bool) -> VoxelImage {
    let mut img = VoxelImage::new(dims).expect("fixture dims are positive");
    for z in 0..dims[2] as i64 {
        for y in 0..dims[1] as i64 {
            for x in 0..dims[0] as i64 {
                if pred(x, y, z) {
                    img.set([x, y, z], true).unwrap();
                }
            }
        }
    }
    img
}

/// A completely filled box; its surface is a sphere.
pub fn solid_box(dims: [u32; 3]) -> VoxelImage {
    image_where(dims, |_, _, _| true)
}

/// A 6×6×2 slab with a 2×2 square hole: a solid ring whose surface is a torus.
pub fn torus() -> VoxelImage {
    image_where([6, 6, 2], |x, y, _| !((2..4).contains(&x) && (2..4).contains(&y)))
}

/// A 16×8×4 slab with two 4×4 holes: genus-2 surface.
pub fn double_torus() -> VoxelImage {
    image_where([16, 8, 4], |x, y, _| {
        let hole_x = (3..7).contains(&x) || (9..13).contains(&x);
        !(hole_x && (2..6).contains(&y))
    })
}

/// Two copies of [`torus`] with a one-voxel gap.
pub fn two_tori() -> VoxelImage {
    image_where([13, 6, 2], |x, y, _| {
        let ring = |x: i64| (0..6).contains(&x) && !((2..4).contains(&x) && (2..4).contains(&y));
        ring(x) || ring(x - 7)
    })
}

/// A 40³ block with a closed 20³ cavity and a 6×6 tunnel running along z.
///
/// The surface is a torus plus a sphere: Betti numbers (2, 2, 2).
pub fn hollow_block() -> VoxelImage {
    image_where([40, 40, 40], |x, y, z| {
        let cavity = (10..30).contains(&x) && (10..30).contains(&y) && (10..30).contains(&z);
        let tunnel = (2..8).contains(&x) && (17..23).contains(&y);
        !(cavity || tunnel)
    })
}

/// A planar grid of `nx × ny` unit squares in the z = 0 plane.
///
/// Vertex ids follow `(x, y)` lexicographically, then edges, then squares.
/// `skip` lists squares (by lower-left corner) to leave out.
pub fn quad_grid(nx: i64, ny: i64, skip: &[(i64, i64)]) -> CellComplex {
    let mut c = CellComplex::new();
    let mut vid = alloc::vec![CellId(0); ((nx + 1) * (ny + 1)) as usize];
    let at = |x: i64, y: i64| (x * (ny + 1) + y) as usize;
    for x in 0..=nx {
        for y in 0..=ny {
            vid[at(x, y)] = c.add_vertex(Some([x, y, 0]));
        }
    }
    let mut horiz = alloc::vec![CellId(0); vid.len()];
    let mut vert = alloc::vec![CellId(0); vid.len()];
    for x in 0..=nx {
        for y in 0..=ny {
            if x < nx {
                horiz[at(x, y)] = c.add_cell(1, [vid[at(x, y)], vid[at(x + 1, y)]]).unwrap();
            }
            if y < ny {
                vert[at(x, y)] = c.add_cell(1, [vid[at(x, y)], vid[at(x, y + 1)]]).unwrap();
            }
        }
    }
    for x in 0..nx {
        for y in 0..ny {
            if skip.contains(&(x, y)) {
                continue;
            }
            let edges: Vec<CellId> =
                alloc::vec![horiz[at(x, y)], horiz[at(x, y + 1)], vert[at(x, y)], vert[at(x + 1, y)]];
            c.add_cell(2, edges).unwrap();
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(solid_box([2, 3, 4]).len(), 24);
        assert_eq!(torus().len(), 64);
        assert_eq!(two_tori().len(), 128);
        let g = quad_grid(3, 3, &[(1, 1)]);
        assert_eq!(g.counts(), [16, 24, 8, 0]);
        assert!(g.validate().is_empty());
    }
}
