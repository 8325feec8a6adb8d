//! Homology models: contractions onto a graded set with zero differential.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::{CellComplex, ComplexId, Differential, GradedSet};
use crate::contraction::{ChainContraction, IdentityViolation};
use crate::error::Error;
use crate::gf2::{CellId, CellSet, Chain, Cochain, SparseLinearMap};
use crate::Betti;

/// A contraction of a complex onto its homology generators `F`.
///
/// Generators are labelled by the cells that created them.
#[derive(Clone, Debug)]
pub struct AtModel {
    pub contraction: ChainContraction,
    pub generators: GradedSet,
    /// For each generator σ, the cells whose `f`-image contains σ.
    duals: BTreeMap<CellId, Cochain>,
}

/// The cocycle `∂_σ f` dual to a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCocycle {
    pub generator: CellId,
    pub cochain: Cochain,
}

impl AtModel {
    /// State of the complex this model describes.
    pub fn source(&self) -> ComplexId {
        self.contraction.source
    }

    pub fn betti(&self) -> Betti {
        let r = self.generators.ranks();
        [r[0], r[1], r[2]]
    }

    /// Generators of one dimension, ascending.
    pub fn basis(&self, dim: u8) -> Vec<CellId> {
        self.generators.generators(dim)
    }

    /// The representative cycle `g(σ)`.
    pub fn representative(&self, sigma: CellId) -> Result<Chain, Error> {
        let dim = self.generators.generator_dim(sigma).ok_or(Error::NotAGenerator(sigma))?;
        Ok(self.contraction.g.image(sigma, dim))
    }

    /// Runs the contraction identity suite against the described complex.
    pub fn check(&self, x: &CellComplex) -> Result<Vec<IdentityViolation>, Error> {
        self.contraction.check(x, &self.generators)
    }

    fn with_duals<D: Differential + ?Sized>(contraction: ChainContraction, generators: GradedSet, over: &D) -> Self {
        let mut duals: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for dim in 0..=3 {
            for x in over.generators(dim) {
                for s in contraction.f.apply(&Chain::cell(dim, x)).iter() {
                    duals.entry(s).or_default().push(x);
                }
            }
        }
        let duals =
            generators.iter().map(|(s, d)| (s, Cochain::from_cells(d, duals.remove(&s).unwrap_or_default()))).collect();
        AtModel { contraction, generators, duals }
    }
}

/// Builds a homology model by inserting cells in (dimension, id) order.
///
/// A cell whose boundary maps to zero becomes a new generator; otherwise it
/// kills the youngest generator in the image of its boundary.
pub fn compute_at_model(x: &CellComplex) -> AtModel {
    let n = x.slots();
    let mut f_rows: Vec<CellSet> = alloc::vec![CellSet::new(); n];
    let mut phi: Vec<CellSet> = alloc::vec![CellSet::new(); n];
    let mut duals: BTreeMap<CellId, CellSet> = BTreeMap::new();
    let mut g: BTreeMap<CellId, CellSet> = BTreeMap::new();
    let mut dims: BTreeMap<CellId, u8> = BTreeMap::new();

    for sigma in x.cells_in_filtration_order() {
        let dim = x.dim(sigma);
        let boundary = &x.cell(sigma).boundary;
        let mut lambda = CellSet::new();
        let mut eta = CellSet::singleton(sigma);
        for &y in boundary {
            lambda.xor_assign(&f_rows[y.index()]);
            eta.xor_assign(&phi[y.index()]);
        }
        match lambda.last() {
            None => {
                f_rows[sigma.index()] = CellSet::singleton(sigma);
                duals.insert(sigma, CellSet::singleton(sigma));
                g.insert(sigma, eta);
                dims.insert(sigma, dim);
            }
            Some(tau) => {
                let killed = duals.remove(&tau).expect("image of f lies in F");
                for x in killed.iter() {
                    f_rows[x.index()].xor_assign(&lambda);
                    phi[x.index()].xor_assign(&eta);
                }
                for rho in lambda.iter().filter(|&r| r != tau) {
                    duals.get_mut(&rho).expect("image of f lies in F").xor_assign(&killed);
                }
                g.remove(&tau);
                dims.remove(&tau);
            }
        }
    }

    let mut f = SparseLinearMap::zero(0);
    let mut h = SparseLinearMap::zero(1);
    for c in x.cells_in_filtration_order() {
        let d = x.dim(c);
        let row = core::mem::take(&mut f_rows[c.index()]);
        if !row.is_empty() {
            f.set(c, Chain { dim: d, cells: row });
        }
        let p = core::mem::take(&mut phi[c.index()]);
        if !p.is_empty() {
            h.set(c, Chain { dim: d + 1, cells: p });
        }
    }
    let mut gm = SparseLinearMap::zero(0);
    for (s, cells) in g {
        gm.set(s, Chain { dim: dims[&s], cells });
    }
    let generators = GradedSet::new(dims.iter().map(|(&c, &d)| (c, d)));
    let duals =
        generators.iter().map(|(s, d)| (s, Cochain { dim: d, cells: duals.remove(&s).unwrap_or_default() })).collect();
    let contraction = ChainContraction { source: x.id(), target: generators.id(), f, g: gm, phi: h };
    AtModel { contraction, generators, duals }
}

/// Moves a model across a contraction `c: X → X′`.
///
/// If `m` describes `X`, the result describes `X′ = onto` with
/// `(f g_c, f_c g, f_c φ g_c)`. If `m` describes `X′`, the result describes
/// `X = onto` with `(f f_c, g_c g, φ_c + g_c φ f_c)`.
pub fn transport_at_model(c: &ChainContraction, m: &AtModel, onto: &CellComplex) -> Result<AtModel, Error> {
    let model = &m.contraction;
    let (source, f, g, phi) = if m.source() == c.source && onto.id() == c.target {
        (c.target, c.g.then(&model.f), model.g.then(&c.f), c.g.then(&model.phi).then(&c.f))
    } else if m.source() == c.target && onto.id() == c.source {
        (c.source, c.f.then(&model.f), model.g.then(&c.g), c.phi.sum(&c.f.then(&model.phi).then(&c.g)))
    } else {
        return Err(Error::ComplexMismatch { expected: m.source(), found: onto.id() });
    };
    let contraction = ChainContraction { source, target: model.target, f, g, phi };
    Ok(AtModel::with_duals(contraction, m.generators.clone(), onto))
}

/// `∂_σ f`: the cochain that is 1 exactly on cells whose `f`-image contains σ.
pub fn dual_cocycle(m: &AtModel, sigma: CellId) -> Result<DualCocycle, Error> {
    let cochain = m.duals.get(&sigma).ok_or(Error::NotAGenerator(sigma))?.clone();
    Ok(DualCocycle { generator: sigma, cochain })
}

/// `(|F₀|, |F₁|, |F₂|)`.
pub fn betti(m: &AtModel) -> Betti {
    m.betti()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::boundary_surface;
    use crate::fixtures;
    use crate::gf2::evaluate;
    use crate::rank::rank_oracle;

    #[test]
    fn sphere_model() {
        let s = boundary_surface(&fixtures::solid_box([1, 1, 1]));
        let m = compute_at_model(&s);
        assert_eq!(m.betti(), [1, 0, 1]);
        assert_eq!(m.check(&s).unwrap(), []);
        // the surviving vertex is hit by every vertex
        let v = m.basis(0)[0];
        let d = dual_cocycle(&m, v).unwrap();
        assert_eq!(d.cochain.cells.len(), 8);
        assert_eq!(dual_cocycle(&m, CellId(9999)), Err(Error::NotAGenerator(CellId(9999))));
    }

    #[test]
    fn torus_model_and_duals() {
        let s = boundary_surface(&fixtures::torus());
        let m = compute_at_model(&s);
        assert_eq!(m.betti(), rank_oracle(&s));
        assert_eq!(m.check(&s).unwrap(), []);
        let basis = m.basis(1);
        for &a in &basis {
            let d = dual_cocycle(&m, a).unwrap();
            // cocycle: vanishes on every 2-cell boundary
            for q in s.cells_of_dim(2) {
                assert!(!evaluate(&d.cochain, &s.boundary_chain(q)).unwrap());
            }
            for &b in &basis {
                let rep = m.representative(b).unwrap();
                assert_eq!(evaluate(&d.cochain, &rep).unwrap(), a == b);
            }
        }
    }

    #[test]
    fn grid_with_hole() {
        let x = fixtures::quad_grid(2, 2, &[(1, 1)]);
        let m = compute_at_model(&x);
        assert_eq!(m.betti(), [1, 1, 0]);
        assert_eq!(m.check(&x).unwrap(), []);
    }

    #[test]
    fn identity_transport_keeps_generators() {
        let s = boundary_surface(&fixtures::torus());
        let m = compute_at_model(&s);
        let t = transport_at_model(&ChainContraction::identity(s.id()), &m, &s).unwrap();
        assert_eq!(t.generators, m.generators);
        assert_eq!(t.check(&s).unwrap(), []);
    }
}
