//! Regular cell complexes with Z₂ incidence.
//!
//! Cells keep their id for the lifetime of the complex; deleting a cell only
//! marks it dead. Every mutation gives the complex a fresh [`ComplexId`], so a
//! contraction can record exactly which state it was built against.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::error::Error;
use crate::gf2::{CellId, CellSet, Chain};

static NEXT_STATE: AtomicU64 = AtomicU64::new(1);

/// Identifies one state of a chain complex.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ComplexId(pub u64);

impl ComplexId {
    pub fn fresh() -> Self {
        ComplexId(NEXT_STATE.fetch_add(1, Ordering::Relaxed))
    }
}

impl fmt::Display for ComplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: u8,
    pub alive: bool,
    /// Facets, ascending.
    pub boundary: Vec<CellId>,
    /// Live cofaces, ascending.
    pub coboundary: Vec<CellId>,
    /// Edges: both endpoints, ascending. 2-cells: the boundary cycle starting at
    /// its minimum vertex and heading toward the smaller neighbour, or empty
    /// when the boundary is not one simple cycle. 3-cells: all vertices.
    pub vertices: Vec<CellId>,
    pub coords: Option<[i64; 3]>,
}

/// A structural defect reported by [`CellComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("∂∂ of {0} is not zero")]
    BoundarySquared(CellId),
    #[error("{cell} has dead facet {facet}")]
    DeadFacet { cell: CellId, facet: CellId },
    #[error("{cell} has facet {facet} of the wrong dimension")]
    FacetDimension { cell: CellId, facet: CellId },
    #[error("edge {0} does not have exactly two vertices")]
    EdgeVertices(CellId),
    #[error("boundary of 2-cell {0} is not one simple cycle")]
    NotSimpleCycle(CellId),
    #[error("recorded vertex list of {0} disagrees with its boundary")]
    VertexList(CellId),
    #[error("coface index of {0} is inconsistent")]
    Coboundary(CellId),
    #[error("vertex {0} has a nonempty boundary")]
    VertexBoundary(CellId),
}

/// Anything with graded generators and a Z₂ differential.
pub trait Differential {
    fn state_id(&self) -> ComplexId;
    /// Dimension of a live generator, `None` otherwise.
    fn generator_dim(&self, id: CellId) -> Option<u8>;
    /// Live generators of one dimension, ascending.
    fn generators(&self, dim: u8) -> Vec<CellId>;
    /// Differential of a chain of dimension at least 1.
    fn differential(&self, chain: &Chain) -> Chain;
    fn top_dim(&self) -> u8 {
        3
    }
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    id: ComplexId,
    cells: Vec<Cell>,
    live: [usize; 4],
}

impl Default for CellComplex {
    fn default() -> Self {
        Self::new()
    }
}

/// Rotates a cycle to start at its minimum and turns it toward the smaller
/// of the two neighbours of that minimum.
pub fn normalize_cycle(cycle: &[CellId]) -> Vec<CellId> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let mut out: Vec<CellId> = (0..n).map(|i| cycle[(start + i) % n]).collect();
    if n > 2 && out[n - 1] < out[1] {
        out[1..].reverse();
    }
    out
}

impl CellComplex {
    pub fn new() -> Self {
        CellComplex { id: ComplexId::fresh(), cells: Vec::new(), live: [0; 4] }
    }

    pub fn id(&self) -> ComplexId {
        self.id
    }

    fn touch(&mut self) {
        self.id = ComplexId::fresh();
    }

    /// Number of id slots, dead cells included.
    pub fn slots(&self) -> usize {
        self.cells.len()
    }

    /// Live cell counts per dimension.
    pub fn counts(&self) -> [usize; 4] {
        self.live
    }

    pub fn live_count(&self) -> usize {
        self.live.iter().sum()
    }

    pub fn get(&self, id: CellId) -> Option<&Cell> {
        self.cells.get(id.index())
    }

    /// Panics if `id` was never allocated.
    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.index()]
    }

    pub fn is_alive(&self, id: CellId) -> bool {
        self.get(id).is_some_and(|c| c.alive)
    }

    pub fn dim(&self, id: CellId) -> u8 {
        self.cell(id).dim
    }

    pub fn coords(&self, id: CellId) -> Option<[i64; 3]> {
        self.get(id).and_then(|c| c.coords)
    }

    /// Live cells of one dimension, ascending.
    pub fn cells_of_dim(&self, dim: u8) -> impl Iterator<Item = CellId> + '_ {
        self.cells.iter().enumerate().filter(move |(_, c)| c.alive && c.dim == dim).map(|(i, _)| CellId(i as u32))
    }

    /// All live cells in (dimension, id) order.
    pub fn cells_in_filtration_order(&self) -> Vec<CellId> {
        let mut out = Vec::with_capacity(self.live_count());
        for d in 0..4 {
            out.extend(self.cells_of_dim(d));
        }
        out
    }

    pub fn add_vertex(&mut self, coords: Option<[i64; 3]>) -> CellId {
        let id = CellId(self.cells.len() as u32);
        self.cells.push(Cell {
            dim: 0,
            alive: true,
            boundary: Vec::new(),
            coboundary: Vec::new(),
            vertices: alloc::vec![id],
            coords,
        });
        self.live[0] += 1;
        self.touch();
        id
    }

    fn check_facets(&self, dim: u8, boundary: &[CellId]) -> Result<(), Error> {
        for &b in boundary {
            let c = self.get(b).filter(|c| c.alive).ok_or(Error::DeadCell(b))?;
            if c.dim + 1 != dim {
                return Err(Error::DimensionMismatch { left: dim - 1, right: c.dim });
            }
        }
        Ok(())
    }

    /// Adds a cell of dimension `dim ≥ 1` with the given facets (mod 2).
    pub fn add_cell<I: IntoIterator<Item = CellId>>(&mut self, dim: u8, boundary: I) -> Result<CellId, Error> {
        if dim == 0 || dim > 3 {
            return Err(Error::NoBoundary(dim));
        }
        let boundary: Vec<CellId> = boundary.into_iter().collect::<CellSet>().iter().collect();
        self.check_facets(dim, &boundary)?;
        let id = CellId(self.cells.len() as u32);
        for &b in &boundary {
            let cob = &mut self.cells[b.index()].coboundary;
            cob.push(id);
        }
        self.cells.push(Cell {
            dim,
            alive: true,
            boundary,
            coboundary: Vec::new(),
            vertices: Vec::new(),
            coords: None,
        });
        self.cells[id.index()].vertices = self.compute_vertices(id);
        self.live[dim as usize] += 1;
        self.touch();
        Ok(id)
    }

    /// Marks a cell dead. The cell must be live and have no live cofaces.
    pub fn kill(&mut self, id: CellId) -> Result<(), Error> {
        if !self.is_alive(id) {
            return Err(Error::DeadCell(id));
        }
        if !self.cells[id.index()].coboundary.is_empty() {
            return Err(Error::HasCofaces(id));
        }
        let boundary = core::mem::take(&mut self.cells[id.index()].boundary);
        for &b in &boundary {
            let cob = &mut self.cells[b.index()].coboundary;
            if let Ok(pos) = cob.binary_search(&id) {
                cob.remove(pos);
            }
        }
        let cell = &mut self.cells[id.index()];
        cell.boundary = boundary;
        cell.alive = false;
        self.live[cell.dim as usize] -= 1;
        self.touch();
        Ok(())
    }

    /// Replaces the facets of a live cell (mod 2).
    pub fn set_boundary<I: IntoIterator<Item = CellId>>(&mut self, id: CellId, boundary: I) -> Result<(), Error> {
        if !self.is_alive(id) {
            return Err(Error::DeadCell(id));
        }
        let dim = self.dim(id);
        if dim == 0 {
            return Err(Error::NoBoundary(0));
        }
        let boundary: Vec<CellId> = boundary.into_iter().collect::<CellSet>().iter().collect();
        self.check_facets(dim, &boundary)?;
        let old = core::mem::take(&mut self.cells[id.index()].boundary);
        for &b in &old {
            let cob = &mut self.cells[b.index()].coboundary;
            if let Ok(pos) = cob.binary_search(&id) {
                cob.remove(pos);
            }
        }
        for &b in &boundary {
            let cob = &mut self.cells[b.index()].coboundary;
            if let Err(pos) = cob.binary_search(&id) {
                cob.insert(pos, id);
            }
        }
        self.cells[id.index()].boundary = boundary;
        self.cells[id.index()].vertices = self.compute_vertices(id);
        self.touch();
        Ok(())
    }

    fn compute_vertices(&self, id: CellId) -> Vec<CellId> {
        let c = self.cell(id);
        match c.dim {
            0 => alloc::vec![id],
            1 => c.boundary.clone(),
            2 => self.cycle_of_edges(&c.boundary).unwrap_or_default(),
            _ => {
                let mut vs: Vec<CellId> = c
                    .boundary
                    .iter()
                    .flat_map(|&f| self.cell(f).boundary.iter().flat_map(|&e| self.cell(e).boundary.iter().copied()))
                    .collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        }
    }

    /// The vertex cycle traced by a set of edges, normalized, if the edges
    /// form exactly one simple closed cycle.
    pub fn cycle_of_edges(&self, edges: &[CellId]) -> Option<Vec<CellId>> {
        if edges.len() < 2 {
            return None;
        }
        let mut adj: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for &e in edges {
            let b = &self.cell(e).boundary;
            if b.len() != 2 {
                return None;
            }
            adj.entry(b[0]).or_default().push(b[1]);
            adj.entry(b[1]).or_default().push(b[0]);
        }
        if adj.values().any(|n| n.len() != 2) {
            return None;
        }
        let start = *adj.keys().next()?;
        let mut cycle = alloc::vec![start];
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            cycle.push(cur);
            let n = &adj[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
            if cycle.len() > edges.len() {
                return None;
            }
        }
        if cycle.len() != edges.len() {
            return None;
        }
        Some(normalize_cycle(&cycle))
    }

    pub fn boundary_chain(&self, id: CellId) -> Chain {
        let c = self.cell(id);
        Chain::from_cells(c.dim.saturating_sub(1), c.boundary.iter().copied())
    }

    /// Z₂ boundary of a chain of dimension at least 1.
    pub fn boundary_operator(&self, chain: &Chain) -> Result<Chain, Error> {
        if chain.dim == 0 {
            return Err(Error::NoBoundary(0));
        }
        let mut out = Chain::zero(chain.dim - 1);
        for id in chain.iter() {
            let c = self.get(id).filter(|c| c.alive).ok_or(Error::DeadCell(id))?;
            if c.dim != chain.dim {
                return Err(Error::DimensionMismatch { left: chain.dim, right: c.dim });
            }
            for &b in &c.boundary {
                out.toggle(b);
            }
        }
        Ok(out)
    }

    /// The live edge joining two vertices, if any.
    pub fn edge_between(&self, a: CellId, b: CellId) -> Option<CellId> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.get(a)?.coboundary.iter().copied().find(|&e| self.cell(e).boundary == [a, b])
    }

    /// The endpoint of `edge` opposite to `v`.
    pub fn other_end(&self, edge: CellId, v: CellId) -> CellId {
        let b = &self.cell(edge).boundary;
        if b[0] == v {
            b[1]
        } else {
            b[0]
        }
    }

    /// Checks regularity and index consistency of all live cells.
    pub fn validate(&self) -> Vec<Violation> {
        self.validate_cells((0..self.cells.len()).map(|i| CellId(i as u32)))
    }

    /// [`validate`](Self::validate) restricted to some cells. Each cell's
    /// checks only look at its facets and cofaces.
    pub fn validate_cells(&self, cells: impl IntoIterator<Item = CellId>) -> Vec<Violation> {
        let mut out = Vec::new();
        for id in cells {
            let Some(c) = self.get(id).filter(|c| c.alive) else { continue };
            if c.dim == 0 && !c.boundary.is_empty() {
                out.push(Violation::VertexBoundary(id));
            }
            let mut facets_ok = true;
            for &b in &c.boundary {
                match self.get(b) {
                    Some(f) if f.alive => {
                        if f.dim + 1 != c.dim {
                            out.push(Violation::FacetDimension { cell: id, facet: b });
                            facets_ok = false;
                        }
                        if f.coboundary.binary_search(&id).is_err() {
                            out.push(Violation::Coboundary(b));
                        }
                    }
                    _ => {
                        out.push(Violation::DeadFacet { cell: id, facet: b });
                        facets_ok = false;
                    }
                }
            }
            for &co in &c.coboundary {
                if !self.is_alive(co) || self.cell(co).boundary.binary_search(&id).is_err() {
                    out.push(Violation::Coboundary(id));
                    break;
                }
            }
            if !facets_ok {
                continue;
            }
            if c.dim >= 2 {
                let mut acc = CellSet::new();
                for &b in &c.boundary {
                    for &bb in &self.cell(b).boundary {
                        acc.toggle(bb);
                    }
                }
                if !acc.is_empty() {
                    out.push(Violation::BoundarySquared(id));
                }
            }
            match c.dim {
                1 => {
                    if c.boundary.len() != 2 {
                        out.push(Violation::EdgeVertices(id));
                    } else if c.vertices != c.boundary {
                        out.push(Violation::VertexList(id));
                    }
                }
                2 => match self.cycle_of_edges(&c.boundary) {
                    None => out.push(Violation::NotSimpleCycle(id)),
                    Some(cycle) => {
                        if cycle != c.vertices {
                            out.push(Violation::VertexList(id));
                        }
                    }
                },
                _ => {}
            }
        }
        out
    }

    /// Test hook: overwrite a facet list without any bookkeeping.
    #[doc(hidden)]
    pub fn corrupt_boundary(&mut self, id: CellId, boundary: Vec<CellId>) {
        self.cells[id.index()].boundary = boundary;
        self.touch();
    }
}

impl Differential for CellComplex {
    fn state_id(&self) -> ComplexId {
        self.id
    }

    fn generator_dim(&self, id: CellId) -> Option<u8> {
        self.get(id).filter(|c| c.alive).map(|c| c.dim)
    }

    fn generators(&self, dim: u8) -> Vec<CellId> {
        self.cells_of_dim(dim).collect()
    }

    fn differential(&self, chain: &Chain) -> Chain {
        self.boundary_operator(chain).expect("differential of a live chain of positive dimension")
    }
}

/// A graded set of generators with zero differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSet {
    id: ComplexId,
    gens: BTreeMap<CellId, u8>,
}

impl GradedSet {
    pub fn new<I: IntoIterator<Item = (CellId, u8)>>(gens: I) -> Self {
        GradedSet { id: ComplexId::fresh(), gens: gens.into_iter().collect() }
    }

    pub fn id(&self) -> ComplexId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, id: CellId) -> bool {
        self.gens.contains_key(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (CellId, u8)> + '_ {
        self.gens.iter().map(|(&c, &d)| (c, d))
    }

    /// Generator counts per dimension.
    pub fn ranks(&self) -> [usize; 4] {
        let mut r = [0; 4];
        for &d in self.gens.values() {
            r[d as usize] += 1;
        }
        r
    }
}

impl Differential for GradedSet {
    fn state_id(&self) -> ComplexId {
        self.id
    }

    fn generator_dim(&self, id: CellId) -> Option<u8> {
        self.gens.get(&id).copied()
    }

    fn generators(&self, dim: u8) -> Vec<CellId> {
        self.gens.iter().filter(|(_, &d)| d == dim).map(|(&c, _)| c).collect()
    }

    fn differential(&self, chain: &Chain) -> Chain {
        Chain::zero(chain.dim - 1)
    }
}
