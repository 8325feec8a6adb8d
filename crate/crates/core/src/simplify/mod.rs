//! Simplifying a voxel surface into a polyhedral complex.
//!
//! Non-critical vertices are removed one at a time; each removal fuses the
//! vertex's star into one polygon and records a chain contraction from the
//! complex before the removal to the one after. The journal of step
//! contractions composes to a contraction from the surface onto the result.

mod audit;
mod critical;
mod merge;
mod removal;

use alloc::string::String;
use alloc::vec::Vec;

pub use critical::{find_critical_vertices, CriticalTag, CriticalitySet};
pub use merge::{collapse, merge_along};
pub use removal::{remove_vertex, Removal, SkipReason};

use audit::Snapshot;

use crate::complex::{CellComplex, ComplexId, Violation};
use crate::contraction::{compose_contractions, ChainContraction, IdentityViolation};
use crate::gf2::CellId;
use crate::voxel::VoxelImage;

/// When a vertex's star is eligible for fusion.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Fuse only while some 2-cell of the star has fewer than this many edges.
    MinEdges(usize),
    /// Fuse only stars whose 2-cells all lie in one plane.
    Coplanar,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplifyStats {
    pub candidates: usize,
    pub removed: usize,
    pub sweeps: usize,
    pub skipped: usize,
}

/// A step whose contraction or result failed the audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditFailure {
    pub step: usize,
    pub vertex: CellId,
    pub identities: Vec<IdentityViolation>,
    pub structure: Vec<Violation>,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Simplification {
    /// The simplified complex.
    pub complex: CellComplex,
    /// State id of the surface the run started from.
    pub source: ComplexId,
    /// One contraction per accepted removal, in order.
    pub steps: Vec<ChainContraction>,
    pub stats: SimplifyStats,
    pub critical: CriticalitySet,
    /// Empty unless auditing was requested and something failed.
    pub audit: Vec<AuditFailure>,
}

impl Simplification {
    /// The composite contraction from the input surface onto the result.
    ///
    /// Built on demand: composing eagerly after every step costs far more than
    /// the removals themselves on large surfaces.
    pub fn contraction(&self) -> ChainContraction {
        let mut acc = ChainContraction::identity(self.source);
        for s in &self.steps {
            acc = compose_contractions(&acc, s).expect("journal steps are consecutive");
        }
        acc
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SimplifyOptions {
    pub termination: Termination,
    /// Check every step's identities and the regularity of every intermediate
    /// complex. Quadratic in the surface size; meant for tests.
    pub audit: bool,
}

impl SimplifyOptions {
    pub fn new(termination: Termination) -> Self {
        SimplifyOptions { termination, audit: false }
    }
}

/// Whether all points lie in one plane, in exact integer arithmetic.
pub fn coplanar(points: &[[i64; 3]]) -> bool {
    let sub = |a: [i64; 3], b: [i64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let cross =
        |a: [i64; 3], b: [i64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let Some(&p0) = points.first() else { return true };
    let Some(&p1) = points.iter().find(|&&p| p != p0) else { return true };
    let d1 = sub(p1, p0);
    let Some(normal) = points.iter().map(|&p| cross(d1, sub(p, p0))).find(|n| *n != [0, 0, 0]) else {
        return true;
    };
    points.iter().all(|&p| {
        let d = sub(p, p0);
        d[0] * normal[0] + d[1] * normal[1] + d[2] * normal[2] == 0
    })
}

fn eligible(x: &CellComplex, v: CellId, termination: Termination) -> bool {
    let faces = removal::star_faces(x, v);
    match termination {
        Termination::MinEdges(m) => faces.iter().any(|&p| x.cell(p).boundary.len() < m),
        Termination::Coplanar => {
            let mut pts = Vec::new();
            for &p in &faces {
                for &e in &x.cell(p).boundary {
                    for &u in &x.cell(e).boundary {
                        match x.coords(u) {
                            Some(c) => pts.push(c),
                            None => return false,
                        }
                    }
                }
            }
            coplanar(&pts)
        }
    }
}

/// Simplifies the surface `dq` of `img`'s cubical complex.
pub fn simplify(dq: &CellComplex, img: &VoxelImage, termination: Termination) -> Simplification {
    simplify_with(dq, img, SimplifyOptions::new(termination))
}

pub fn simplify_with(dq: &CellComplex, img: &VoxelImage, options: SimplifyOptions) -> Simplification {
    let critical = find_critical_vertices(img, dq);
    let candidates: Vec<CellId> = dq.cells_of_dim(0).filter(|&v| !critical.is_critical(v)).collect();
    let mut x = dq.clone();
    let mut out = Simplification {
        complex: CellComplex::new(),
        source: dq.id(),
        steps: Vec::new(),
        stats: SimplifyStats { candidates: candidates.len(), ..Default::default() },
        critical,
        audit: Vec::new(),
    };
    let protected = |u: CellId| out.critical.is_critical(u);
    let mut steps = Vec::new();
    let mut audit = Vec::new();
    let mut stats = out.stats;
    loop {
        // Highest degree first, as measured at the start of the sweep. Among
        // equal degrees, vertices with fewer eligible neighbours go first:
        // each neighbour removed before them costs them an edge, and a vertex
        // left with two 2-cells can no longer be removed.
        let mut order: Vec<(usize, usize, CellId)> = candidates
            .iter()
            .filter(|&&v| x.is_alive(v))
            .map(|&v| {
                let open = x
                    .cell(v)
                    .coboundary
                    .iter()
                    .map(|&e| x.other_end(e, v))
                    .filter(|&u| !out.critical.is_critical(u) && eligible(&x, u, options.termination))
                    .count();
                (x.cell(v).coboundary.len(), open, v)
            })
            .collect();
        if order.is_empty() {
            break;
        }
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        stats.sweeps += 1;
        let mut accepted = 0;
        for (_, _, v) in order {
            if !x.is_alive(v) || !eligible(&x, v, options.termination) {
                continue;
            }
            let before = options.audit.then(|| Snapshot::capture(&x, v));
            match remove_vertex(&mut x, v, &protected) {
                Removal::Removed { contraction, .. } => {
                    if let Some(before) = before {
                        // the first step looks at everything, which covers the input
                        let (identities, structure) = before.audit(&x, &contraction, steps.is_empty());
                        if !identities.is_empty() || !structure.is_empty() {
                            audit.push(AuditFailure {
                                step: steps.len(),
                                vertex: v,
                                identities,
                                structure,
                                note: None,
                            });
                        }
                    }
                    steps.push(contraction);
                    accepted += 1;
                }
                Removal::NotRemovable => {}
                Removal::Skipped(_) => stats.skipped += 1,
            }
        }
        stats.removed += accepted;
        if accepted == 0 {
            break;
        }
    }
    out.complex = x;
    out.steps = steps;
    out.stats = stats;
    out.audit = audit;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coplanar_exact() {
        assert!(coplanar(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 7, 0]]));
        assert!(!coplanar(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert!(coplanar(&[[0, 0, 0], [1, 1, 1], [2, 2, 2]]));
        assert!(coplanar(&[]));
    }
}
