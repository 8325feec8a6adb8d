//! Removing a vertex by fusing its star into one polygon.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::merge::{collapse, merge_along};
use crate::complex::CellComplex;
use crate::contraction::{compose_contractions, ChainContraction};
use crate::gf2::CellId;

/// Why a removable-looking vertex was left in place.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// Edges and 2-cells around the vertex do not alternate in one cycle.
    Link,
    /// The fused polygon's boundary would not be a simple cycle.
    Pinched,
    /// An edge inside the fused region is shared with cells outside it.
    Interior,
    /// The region cannot be collapsed down to a disk.
    NotADisk,
    /// The removal would delete a protected vertex.
    Protected,
}

#[derive(Clone, Debug)]
pub enum Removal {
    Removed {
        polygon: CellId,
        contraction: ChainContraction,
    },
    /// Two or fewer 2-cells around the vertex.
    NotRemovable,
    Skipped(SkipReason),
}

/// The star of a vertex in fan order: `faces[i]` lies between `edges[i]`
/// and `edges[i + 1]` (cyclically).
#[derive(Clone, Debug)]
pub(crate) struct Star {
    pub edges: Vec<CellId>,
    pub faces: Vec<CellId>,
}

pub(crate) fn star_faces(x: &CellComplex, v: CellId) -> Vec<CellId> {
    let mut faces: Vec<CellId> =
        x.cell(v).coboundary.iter().flat_map(|&e| x.cell(e).coboundary.iter().copied()).collect();
    faces.sort_unstable();
    faces.dedup();
    faces
}

pub(crate) fn fan(x: &CellComplex, v: CellId) -> Result<Star, SkipReason> {
    let edges = &x.cell(v).coboundary;
    let faces = star_faces(x, v);
    if edges.len() != faces.len() || edges.is_empty() {
        return Err(SkipReason::Link);
    }
    let mut face_edges: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
    for &e in edges {
        if x.cell(e).coboundary.len() != 2 {
            return Err(SkipReason::Link);
        }
        for &p in &x.cell(e).coboundary {
            face_edges.entry(p).or_default().push(e);
        }
    }
    if face_edges.values().any(|es| es.len() != 2) {
        return Err(SkipReason::Link);
    }
    let mut out = Star { edges: Vec::with_capacity(edges.len()), faces: Vec::with_capacity(edges.len()) };
    let mut e = edges[0];
    let mut p = x.cell(e).coboundary[0];
    loop {
        out.edges.push(e);
        out.faces.push(p);
        let es = &face_edges[&p];
        e = if es[0] == e { es[1] } else { es[0] };
        if e == edges[0] {
            break;
        }
        let ps = &x.cell(e).coboundary;
        p = if ps[0] == p { ps[1] } else { ps[0] };
        if out.edges.len() > edges.len() {
            return Err(SkipReason::Link);
        }
    }
    if out.edges.len() != edges.len() {
        return Err(SkipReason::Link);
    }
    Ok(out)
}

/// A validated removal plan.
struct Plan {
    star: Star,
    /// Free vertex and its edge, in collapse order.
    collapses: Vec<(CellId, CellId)>,
}

fn plan(x: &CellComplex, v: CellId, protected: &dyn Fn(CellId) -> bool) -> Result<Plan, Removal> {
    if star_faces(x, v).len() <= 2 {
        return Err(Removal::NotRemovable);
    }
    let skip = |r| Err(Removal::Skipped(r));
    let star = match fan(x, v) {
        Ok(s) => s,
        Err(r) => return skip(r),
    };
    let r = star.faces.len();

    // edges counted by how many star faces contain them
    let mut count: BTreeMap<CellId, u8> = BTreeMap::new();
    for &p in &star.faces {
        for &e in &x.cell(p).boundary {
            *count.entry(e).or_default() += 1;
        }
    }
    if count.values().any(|&c| c > 2) {
        return skip(SkipReason::Interior);
    }
    let outer: Vec<CellId> = count.iter().filter(|(_, &c)| c == 1).map(|(&e, _)| e).collect();
    let inner: BTreeSet<CellId> = count.iter().filter(|(_, &c)| c == 2).map(|(&e, _)| e).collect();
    let cycle = match x.cycle_of_edges(&outer) {
        Some(c) => c,
        None => return skip(SkipReason::Pinched),
    };
    let on_cycle: BTreeSet<CellId> = cycle.iter().copied().collect();
    if on_cycle.contains(&v) {
        return skip(SkipReason::Pinched);
    }
    if inner.iter().any(|&e| x.cell(e).coboundary.len() != 2) {
        return skip(SkipReason::Interior);
    }

    // interior vertices: endpoints of inner edges off the outer cycle
    let mut interior: BTreeSet<CellId> = BTreeSet::new();
    for &e in &inner {
        for &u in &x.cell(e).boundary {
            if !on_cycle.contains(&u) {
                interior.insert(u);
            }
        }
    }
    for &u in &interior {
        if protected(u) {
            return skip(SkipReason::Protected);
        }
        if x.cell(u).coboundary.iter().any(|e| !inner.contains(e)) {
            return skip(SkipReason::Interior);
        }
    }

    // the merges consume edges[1..r]; whatever inner edges remain must
    // collapse away from the interior vertices
    let merged: BTreeSet<CellId> = star.edges[1..r].iter().copied().collect();
    let mut dangling: BTreeSet<CellId> = inner.difference(&merged).copied().collect();
    let mut degree: BTreeMap<CellId, usize> = interior.iter().map(|&u| (u, 0)).collect();
    for &e in &dangling {
        for u in &x.cell(e).boundary {
            if let Some(d) = degree.get_mut(u) {
                *d += 1;
            }
        }
    }
    let mut collapses = Vec::new();
    while let Some((&u, _)) = degree.iter().find(|(_, &d)| d == 1) {
        let e = *dangling.iter().find(|e| x.cell(**e).boundary.contains(&u)).unwrap();
        dangling.remove(&e);
        degree.remove(&u);
        let w = x.other_end(e, u);
        if let Some(d) = degree.get_mut(&w) {
            *d -= 1;
        }
        collapses.push((u, e));
    }
    if !dangling.is_empty() || !degree.is_empty() {
        return skip(SkipReason::NotADisk);
    }
    Ok(Plan { star, collapses })
}

/// Replaces the star of `v` by one polygon bounded by the star's outer cycle.
///
/// The contraction fuses the star's 2-cells pairwise in fan order, then
/// collapses the edges left dangling inside the new polygon (the last edge at
/// `v`, and any other edges that two star cells shared). Vertices for which
/// `protected` holds are never deleted.
pub fn remove_vertex(x: &mut CellComplex, v: CellId, protected: &dyn Fn(CellId) -> bool) -> Removal {
    if !x.is_alive(v) || x.dim(v) != 0 {
        return Removal::NotRemovable;
    }
    if protected(v) {
        return Removal::Skipped(SkipReason::Protected);
    }
    let plan = match plan(x, v, protected) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let Plan { star, collapses } = plan;
    let mut acc = star.faces[0];
    let mut total: Option<ChainContraction> = None;
    let mut push = |c: ChainContraction| {
        total = Some(match total.take() {
            None => c,
            Some(t) => compose_contractions(&t, &c).expect("steps are consecutive"),
        });
    };
    for i in 1..star.faces.len() {
        let (m, c) = merge_along(x, star.edges[i], acc, star.faces[i]).expect("plan guarantees a mergeable fan");
        acc = m;
        push(c);
    }
    for (u, e) in collapses {
        push(collapse(x, u, e).expect("plan guarantees a free vertex"));
    }
    Removal::Removed { polygon: acc, contraction: total.expect("at least three faces were merged") }
}
