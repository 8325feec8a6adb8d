//! Binary voxel images under (26, 6) adjacency.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// A lattice point.
pub type Point = [i64; 3];

/// Foreground set of a binary image inside an `nx × ny × nz` box.
///
/// Voxel `(x, y, z)` is the closed unit cube `[x, x+1] × [y, y+1] × [z, z+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoxelImage {
    dims: [u32; 3],
    mask: Vec<bool>,
    count: usize,
}

impl VoxelImage {
    /// An empty image; every dimension must be positive.
    pub fn new(dims: [u32; 3]) -> Result<Self, Error> {
        if dims.contains(&0) {
            return Err(Error::EmptyGrid(dims));
        }
        let n = dims.iter().map(|&d| d as usize).product();
        Ok(VoxelImage { dims, mask: vec![false; n], count: 0 })
    }

    pub fn from_points<I: IntoIterator<Item = Point>>(dims: [u32; 3], points: I) -> Result<Self, Error> {
        let mut img = Self::new(dims)?;
        for p in points {
            img.set(p, true)?;
        }
        Ok(img)
    }

    /// Builds an image from an x-fastest occupancy mask.
    pub fn from_mask(dims: [u32; 3], mask: Vec<bool>) -> Result<Self, Error> {
        let img = Self::new(dims)?;
        assert_eq!(mask.len(), img.mask.len(), "mask length must be nx*ny*nz");
        let count = mask.iter().filter(|&&b| b).count();
        Ok(VoxelImage { dims, mask, count })
    }

    pub fn dims(&self) -> [u32; 3] {
        self.dims
    }

    /// The x-fastest occupancy mask.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn index(&self, p: Point) -> Option<usize> {
        let [nx, ny, nz] = self.dims.map(i64::from);
        let [x, y, z] = p;
        if (0..nx).contains(&x) && (0..ny).contains(&y) && (0..nz).contains(&z) {
            Some((x + nx * (y + ny * z)) as usize)
        } else {
            None
        }
    }

    pub fn set(&mut self, p: Point, value: bool) -> Result<(), Error> {
        let i = self.index(p).ok_or(Error::OutOfBounds { point: p, dims: self.dims })?;
        if self.mask[i] != value {
            self.mask[i] = value;
            if value {
                self.count += 1;
            } else {
                self.count -= 1;
            }
        }
        Ok(())
    }

    /// Membership in the foreground; points outside the box are background.
    pub fn contains(&self, p: Point) -> bool {
        self.index(p).is_some_and(|i| self.mask[i])
    }

    /// Foreground points in x-fastest order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let [nx, ny, _] = self.dims.map(|d| d as usize);
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| {
            let x = i % nx;
            let y = (i / nx) % ny;
            let z = i / (nx * ny);
            [x as i64, y as i64, z as i64]
        })
    }
}

fn squared_distance(p: Point, q: Point) -> i64 {
    (0..3).map(|i| (p[i] - q[i]) * (p[i] - q[i])).sum()
}

/// `1 ≤ |p − q|² ≤ 3`.
pub fn adjacency_26(p: Point, q: Point) -> bool {
    (1..=3).contains(&squared_distance(p, q))
}

/// `|p − q|² = 1`.
pub fn adjacency_6(p: Point, q: Point) -> bool {
    squared_distance(p, q) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_examples() {
        assert!(adjacency_26([0, 0, 0], [1, 1, 1]));
        assert!(!adjacency_6([0, 0, 0], [1, 1, 1]));
        assert!(adjacency_26([0, 0, 0], [1, 0, 0]));
        assert!(adjacency_6([0, 0, 0], [1, 0, 0]));
        assert!(!adjacency_26([0, 0, 0], [0, 0, 0]));
        assert!(!adjacency_6([0, 0, 0], [0, 0, 0]));
        assert!(!adjacency_26([0, 0, 0], [2, 0, 0]));
    }

    #[test]
    fn bounds_and_points() {
        let mut img = VoxelImage::new([2, 1, 1]).unwrap();
        assert_eq!(img.set([5, 0, 0], true), Err(Error::OutOfBounds { point: [5, 0, 0], dims: [2, 1, 1] }));
        img.set([1, 0, 0], true).unwrap();
        img.set([1, 0, 0], true).unwrap();
        assert_eq!(img.len(), 1);
        assert!(img.contains([1, 0, 0]));
        assert!(!img.contains([-1, 0, 0]));
        assert_eq!(img.points().collect::<Vec<_>>(), vec![[1, 0, 0]]);
        assert_eq!(VoxelImage::new([0, 1, 1]), Err(Error::EmptyGrid([0, 1, 1])));
    }
}
