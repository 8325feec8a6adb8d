//! Chain contractions `(f, g, φ)` and an exact checker for their identities.

use alloc::vec::Vec;
use core::fmt;

use crate::complex::{ComplexId, Differential};
use crate::error::Error;
use crate::gf2::{CellId, Chain, SparseLinearMap};

/// A contraction of a source chain complex onto a target.
///
/// `f` and `g` are degree-0 chain maps source→target and target→source, `phi`
/// is a degree +1 homotopy on the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainContraction {
    pub source: ComplexId,
    pub target: ComplexId,
    pub f: SparseLinearMap,
    pub g: SparseLinearMap,
    pub phi: SparseLinearMap,
}

/// The defining equations of a contraction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    /// `f∂ = ∂′f`
    FChainMap,
    /// `g∂′ = ∂g`
    GChainMap,
    /// `fg = 1`
    Retraction,
    /// `∂φ + φ∂ = 1 + gf`
    Homotopy,
    /// `φφ = 0`
    PhiPhi,
    /// `fφ = 0`
    FPhi,
    /// `φg = 0`
    PhiG,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::FChainMap => "f∂ = ∂′f",
            Identity::GChainMap => "g∂′ = ∂g",
            Identity::Retraction => "fg = 1",
            Identity::Homotopy => "∂φ + φ∂ = 1 + gf",
            Identity::PhiPhi => "φφ = 0",
            Identity::FPhi => "fφ = 0",
            Identity::PhiG => "φg = 0",
        };
        f.write_str(s)
    }
}

/// A generator on which one identity fails.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdentityViolation {
    pub identity: Identity,
    pub cell: CellId,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.identity, self.cell)
    }
}

fn diff<D: Differential + ?Sized>(d: &D, c: &Chain) -> Option<Chain> {
    (c.dim > 0).then(|| d.differential(c))
}

fn is_zero_or_none(c: &Option<Chain>) -> bool {
    c.as_ref().is_none_or(Chain::is_zero)
}

impl ChainContraction {
    /// The identity contraction of one complex onto itself.
    pub fn identity(of: ComplexId) -> Self {
        ChainContraction {
            source: of,
            target: of,
            f: SparseLinearMap::identity(),
            g: SparseLinearMap::identity(),
            phi: SparseLinearMap::zero(1),
        }
    }

    /// Applies every identity to every generator of both complexes.
    ///
    /// Fails only if the complexes are not the states this contraction was
    /// built for.
    pub fn check<S, T>(&self, source: &S, target: &T) -> Result<Vec<IdentityViolation>, Error>
    where
        S: Differential + ?Sized,
        T: Differential + ?Sized,
    {
        let xs = (0..=source.top_dim()).flat_map(|d| source.generators(d).into_iter().map(move |c| (c, d))).collect();
        let ys = (0..=target.top_dim()).flat_map(|d| target.generators(d).into_iter().map(move |c| (c, d))).collect();
        self.check_on(source, target, xs, ys)
    }

    /// [`check`](Self::check) restricted to some cells; those that are not
    /// live generators of a complex are skipped for it.
    pub fn check_cells<S, T>(
        &self,
        source: &S,
        target: &T,
        cells: impl IntoIterator<Item = CellId>,
    ) -> Result<Vec<IdentityViolation>, Error>
    where
        S: Differential + ?Sized,
        T: Differential + ?Sized,
    {
        let cells: Vec<CellId> = cells.into_iter().collect();
        let pick = |d: &dyn Fn(CellId) -> Option<u8>| {
            let mut v: Vec<(CellId, u8)> = cells.iter().filter_map(|&c| d(c).map(|dim| (c, dim))).collect();
            v.sort_unstable_by_key(|&(c, dim)| (dim, c));
            v
        };
        let xs = pick(&|c| source.generator_dim(c));
        let ys = pick(&|c| target.generator_dim(c));
        self.check_on(source, target, xs, ys)
    }

    fn check_on<S, T>(
        &self,
        source: &S,
        target: &T,
        xs: Vec<(CellId, u8)>,
        ys: Vec<(CellId, u8)>,
    ) -> Result<Vec<IdentityViolation>, Error>
    where
        S: Differential + ?Sized,
        T: Differential + ?Sized,
    {
        if source.state_id() != self.source {
            return Err(Error::ComplexMismatch { expected: self.source, found: source.state_id() });
        }
        if target.state_id() != self.target {
            return Err(Error::ComplexMismatch { expected: self.target, found: target.state_id() });
        }
        let mut out = Vec::new();
        let mut fail = |identity, cell| out.push(IdentityViolation { identity, cell });
        for (x, dim) in xs {
            let xc = Chain::cell(dim, x);
            let fx = self.f.apply(&xc);
            let dx = diff(source, &xc);
            // f∂x = ∂′fx
            let f_dx = dx.as_ref().map(|c| self.f.apply(c));
            let d_fx = diff(target, &fx);
            let agree = match (&f_dx, &d_fx) {
                (Some(a), Some(b)) => a == b,
                (a, b) => is_zero_or_none(a) && is_zero_or_none(b),
            };
            if !agree {
                fail(Identity::FChainMap, x);
            }
            // ∂φx + φ∂x = x + gfx
            let phix = self.phi.apply(&xc);
            let mut lhs = source.differential(&phix);
            if let Some(dx) = &dx {
                lhs += &self.phi.apply(dx);
            }
            let mut rhs = self.g.apply(&fx);
            rhs.toggle(x);
            if lhs != rhs {
                fail(Identity::Homotopy, x);
            }
            if !self.phi.apply(&phix).is_zero() {
                fail(Identity::PhiPhi, x);
            }
            if !self.f.apply(&phix).is_zero() {
                fail(Identity::FPhi, x);
            }
        }
        for (y, dim) in ys {
            let yc = Chain::cell(dim, y);
            let gy = self.g.apply(&yc);
            let g_dy = diff(target, &yc).map(|c| self.g.apply(&c));
            let d_gy = diff(source, &gy);
            let agree = match (&g_dy, &d_gy) {
                (Some(a), Some(b)) => a == b,
                (a, b) => is_zero_or_none(a) && is_zero_or_none(b),
            };
            if !agree {
                fail(Identity::GChainMap, y);
            }
            if self.f.apply(&gy) != yc {
                fail(Identity::Retraction, y);
            }
            if !self.phi.apply(&gy).is_zero() {
                fail(Identity::PhiG, y);
            }
        }
        Ok(out)
    }
}

/// Composite of `c1: X → X′` and `c2: X′ → X″`: `(f₂f₁, g₁g₂, φ₁ + g₁φ₂f₁)`.
pub fn compose_contractions(c1: &ChainContraction, c2: &ChainContraction) -> Result<ChainContraction, Error> {
    if c1.target != c2.source {
        return Err(Error::ComplexMismatch { expected: c1.target, found: c2.source });
    }
    Ok(ChainContraction {
        source: c1.source,
        target: c2.target,
        f: c1.f.then(&c2.f),
        g: c2.g.then(&c1.g),
        phi: c1.phi.sum(&c1.f.then(&c2.phi).then(&c1.g)),
    })
}
