//! Elementary moves with explicit contractions: merging two cells along a
//! shared facet, and collapsing a free face.

use alloc::vec::Vec;

use crate::complex::CellComplex;
use crate::contraction::ChainContraction;
use crate::error::Error;
use crate::gf2::{CellId, CellSet, Chain, SparseLinearMap};

/// Merges `mu` and `mu2` along their common facet `gamma` into a new cell.
///
/// `∂μ″ = ∂(μ + μ′)`; every live coface σ of μ or μ′ gets `f(∂σ)` as its new
/// boundary, i.e. μ is dropped and μ′ becomes μ″. The returned contraction is
/// `f(γ) = γ + ∂μ`, `f(μ) = 0`, `f(μ′) = μ″`, `g(μ″) = μ + μ′`, `φ(γ) = μ`,
/// identity (resp. zero for `φ`) elsewhere.
pub fn merge_along(
    x: &mut CellComplex,
    gamma: CellId,
    mu: CellId,
    mu2: CellId,
) -> Result<(CellId, ChainContraction), Error> {
    let err = |reason| Error::MergePrecondition { gamma, reason };
    for c in [gamma, mu, mu2] {
        if !x.is_alive(c) {
            return Err(Error::DeadCell(c));
        }
    }
    if mu == mu2 {
        return Err(err("the two cells coincide"));
    }
    let r = x.dim(gamma);
    if x.dim(mu) != r + 1 || x.dim(mu2) != r + 1 {
        return Err(err("merged cells must be one dimension above the facet"));
    }
    let (lo, hi) = if mu < mu2 { (mu, mu2) } else { (mu2, mu) };
    if x.cell(gamma).coboundary != [lo, hi] {
        return Err(err("facet is not shared by exactly the two merged cells"));
    }

    let source = x.id();
    let d_mu = x.boundary_chain(mu);
    let mut new_boundary = d_mu.clone();
    new_boundary += &x.boundary_chain(mu2);
    let mut cofaces: Vec<CellId> = x.cell(mu).coboundary.clone();
    cofaces.extend_from_slice(&x.cell(mu2).coboundary);
    cofaces.sort_unstable();
    cofaces.dedup();

    let merged = x.add_cell(r + 1, new_boundary.iter())?;
    for sigma in cofaces {
        let mut b: CellSet = x.cell(sigma).boundary.iter().copied().collect();
        b.toggle(mu);
        if b.contains(mu2) {
            b.toggle(mu2);
            b.toggle(merged);
        }
        x.set_boundary(sigma, b.iter())?;
    }
    x.kill(mu)?;
    x.kill(mu2)?;
    x.kill(gamma)?;

    let mut f = SparseLinearMap::identity();
    let mut f_gamma = d_mu;
    f_gamma.toggle(gamma);
    f.set(gamma, f_gamma);
    f.set(mu, Chain::zero(r + 1));
    f.set(mu2, Chain::cell(r + 1, merged));
    let mut g = SparseLinearMap::identity();
    g.set(merged, Chain::from_cells(r + 1, [mu, mu2]));
    let mut phi = SparseLinearMap::zero(1);
    phi.set(gamma, Chain::cell(r + 1, mu));
    Ok((merged, ChainContraction { source, target: x.id(), f, g, phi }))
}

/// Collapses a free face into its only coface, removing both.
///
/// `f(face) = face + ∂coface`, `f(coface) = 0`, `φ(face) = coface`, `g` the
/// inclusion.
pub fn collapse(x: &mut CellComplex, face: CellId, coface: CellId) -> Result<ChainContraction, Error> {
    let err = |reason| Error::CollapsePrecondition { face, coface, reason };
    for c in [face, coface] {
        if !x.is_alive(c) {
            return Err(Error::DeadCell(c));
        }
    }
    let r = x.dim(face);
    if x.dim(coface) != r + 1 {
        return Err(err("coface must be one dimension above the face"));
    }
    if x.cell(face).coboundary != [coface] {
        return Err(err("face is not free"));
    }
    if !x.cell(coface).coboundary.is_empty() {
        return Err(err("coface is not maximal"));
    }
    let source = x.id();
    let mut f_face = x.boundary_chain(coface);
    f_face.toggle(face);
    x.kill(coface)?;
    x.kill(face)?;

    let mut f = SparseLinearMap::identity();
    f.set(face, f_face);
    f.set(coface, Chain::zero(r + 1));
    let mut phi = SparseLinearMap::zero(1);
    phi.set(face, Chain::cell(r + 1, coface));
    Ok(ChainContraction { source, target: x.id(), f, g: SparseLinearMap::identity(), phi })
}
