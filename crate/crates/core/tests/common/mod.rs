#![allow(dead_code)]

use polycup_core::VoxelImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random image in an `n`³ box, each voxel set with probability `density`.
pub fn random_image(seed: u64, n: u32, density: f64) -> VoxelImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (0..n * n * n).map(|_| rng.gen_bool(density)).collect();
    VoxelImage::from_mask([n, n, n], mask).unwrap()
}

use polycup_core::{CellComplex, CellId, Chain, ChainContraction, GradedSet};
use std::collections::BTreeSet;

fn boundary_of(x: &CellComplex, chain: &BTreeSet<CellId>) -> BTreeSet<CellId> {
    let mut out = BTreeSet::new();
    for &c in chain {
        for &b in &x.cell(c).boundary {
            if !out.remove(&b) {
                out.insert(b);
            }
        }
    }
    out
}

fn set(c: &Chain) -> BTreeSet<CellId> {
    c.iter().collect()
}

fn sum(a: &BTreeSet<CellId>, b: &BTreeSet<CellId>) -> BTreeSet<CellId> {
    a.symmetric_difference(b).copied().collect()
}

/// Checks a homology model cell by cell with plain sets, without going
/// through the library's identity checker. Returns the offending cells.
pub fn model_defects(x: &CellComplex, c: &ChainContraction, gens: &GradedSet) -> Vec<CellId> {
    let mut bad = Vec::new();
    let img = |m: &polycup_core::SparseLinearMap, cells: &BTreeSet<CellId>, dim: u8| -> BTreeSet<CellId> {
        let mut out = BTreeSet::new();
        for &y in cells {
            out = sum(&out, &set(&m.image(y, dim)));
        }
        out
    };
    for dim in 0..=2u8 {
        for y in x.cells_of_dim(dim) {
            let one = BTreeSet::from([y]);
            let fy = img(&c.f, &one, dim);
            // f lands in the generators and kills boundaries
            let ok_target = fy.iter().all(|s| gens.contains(*s));
            let f_dy = if dim > 0 { img(&c.f, &boundary_of(x, &one), dim - 1) } else { BTreeSet::new() };
            // ∂φ + φ∂ = 1 + gf
            let phi_y = img(&c.phi, &one, dim);
            let mut lhs = boundary_of(x, &phi_y);
            if dim > 0 {
                lhs = sum(&lhs, &img(&c.phi, &boundary_of(x, &one), dim - 1));
            }
            let rhs = sum(&one, &img(&c.g, &fy, dim));
            // side conditions
            let phiphi = img(&c.phi, &phi_y, dim + 1);
            let fphi = img(&c.f, &phi_y, dim + 1);
            if !ok_target || !f_dy.is_empty() || lhs != rhs || !phiphi.is_empty() || !fphi.is_empty() {
                bad.push(y);
            }
        }
    }
    for (s, dim) in gens.iter() {
        let gs = set(&c.g.image(s, dim));
        let fgs = img(&c.f, &gs, dim);
        let cycle = dim == 0 || boundary_of(x, &gs).is_empty();
        if fgs != BTreeSet::from([s]) || !cycle || !img(&c.phi, &gs, dim).is_empty() {
            bad.push(s);
        }
    }
    bad
}
