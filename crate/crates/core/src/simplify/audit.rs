//! Cheap per-step auditing of vertex removals.
//!
//! A removal only changes the closed star of its vertex: away from it the
//! step has `f = g = 1`, `φ = 0` and boundaries stay put, so every identity
//! holds trivially at a cell that is neither in the star, nor a recorded
//! entry of a map, nor new, nor has a boundary meeting one of those. Auditing
//! therefore needs the star as it was before the step, not a copy of the
//! whole complex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::complex::{CellComplex, ComplexId, Differential, Violation};
use crate::contraction::{ChainContraction, IdentityViolation};
use crate::gf2::{CellId, CellSet, Chain, MapDefault};

struct Saved {
    dim: u8,
    alive: bool,
    boundary: Vec<CellId>,
    coboundary: Vec<CellId>,
}

/// The closed star of a vertex as it was before its removal.
pub(super) struct Snapshot {
    id: ComplexId,
    slots: usize,
    saved: BTreeMap<CellId, Saved>,
}

/// The complex before the step: the snapshot over the current complex.
struct Before<'a> {
    snap: &'a Snapshot,
    now: &'a CellComplex,
}

impl Before<'_> {
    fn boundary(&self, c: CellId) -> &[CellId] {
        match self.snap.saved.get(&c) {
            Some(s) => &s.boundary,
            None => &self.now.cell(c).boundary,
        }
    }
}

impl Differential for Before<'_> {
    fn state_id(&self) -> ComplexId {
        self.snap.id
    }

    fn generator_dim(&self, id: CellId) -> Option<u8> {
        if id.index() >= self.snap.slots {
            return None;
        }
        match self.snap.saved.get(&id) {
            Some(s) => s.alive.then_some(s.dim),
            None => self.now.generator_dim(id),
        }
    }

    fn generators(&self, dim: u8) -> Vec<CellId> {
        (0..self.snap.slots as u32).map(CellId).filter(|&c| self.generator_dim(c) == Some(dim)).collect()
    }

    fn differential(&self, chain: &Chain) -> Chain {
        let mut cells = CellSet::new();
        for c in chain.iter() {
            for &b in self.boundary(c) {
                cells.toggle(b);
            }
        }
        Chain { dim: chain.dim - 1, cells }
    }
}

impl Snapshot {
    pub(super) fn capture(x: &CellComplex, v: CellId) -> Snapshot {
        let mut star: BTreeSet<CellId> = BTreeSet::from([v]);
        for &e in &x.cell(v).coboundary {
            star.insert(e);
            for &p in &x.cell(e).coboundary {
                star.insert(p);
                for &b in &x.cell(p).boundary {
                    star.insert(b);
                    star.extend(x.cell(b).boundary.iter().copied());
                }
            }
        }
        let saved = star
            .into_iter()
            .map(|c| {
                let cell = x.cell(c);
                let s = Saved {
                    dim: cell.dim,
                    alive: cell.alive,
                    boundary: cell.boundary.clone(),
                    coboundary: cell.coboundary.clone(),
                };
                (c, s)
            })
            .collect();
        Snapshot { id: x.id(), slots: x.slots(), saved }
    }

    /// Cells on which the step's identities or the result's regularity can
    /// fail, or `None` if the maps' defaults do not allow the locality
    /// argument.
    fn region(&self, after: &CellComplex, c: &ChainContraction) -> Option<BTreeSet<CellId>> {
        if (c.f.default_kind(), c.g.default_kind(), c.phi.default_kind())
            != (MapDefault::Identity, MapDefault::Identity, MapDefault::Zero)
        {
            return None;
        }
        let mut core: BTreeSet<CellId> = self.saved.keys().copied().collect();
        for m in [&c.f, &c.g, &c.phi] {
            core.extend(m.entries().map(|(&k, _)| k));
        }
        core.extend((self.slots..after.slots()).map(|i| CellId(i as u32)));
        let mut region = core.clone();
        for &y in &core {
            // a face that lost a coface was in the star, so its old cofaces are saved
            if let Some(s) = self.saved.get(&y) {
                region.extend(s.coboundary.iter().copied());
            }
            if after.is_alive(y) {
                region.extend(after.cell(y).coboundary.iter().copied());
            }
        }
        Some(region)
    }

    /// Checks the step's identities and the regularity of `after` where
    /// either can have changed, or everywhere if `full`.
    pub(super) fn audit(
        &self,
        after: &CellComplex,
        c: &ChainContraction,
        full: bool,
    ) -> (Vec<IdentityViolation>, Vec<Violation>) {
        let before = Before { snap: self, now: after };
        match self.region(after, c) {
            Some(region) => {
                let identities = c.check_cells(&before, after, region.iter().copied()).unwrap_or_default();
                let structure = if full { after.validate() } else { after.validate_cells(region) };
                (identities, structure)
            }
            None => (c.check(&before, after).unwrap_or_default(), after.validate()),
        }
    }
}
