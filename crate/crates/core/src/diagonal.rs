//! Diagonal approximations on polygons, simplices and squares.
//!
//! The polygon formula and the fan-triangulation construction work on vertex
//! label tuples ([`FormalCell`]); the complex-level functions resolve labels
//! to live cells.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::complex::CellComplex;
use crate::error::Error;
use crate::gf2::{CellId, TensorChain, TensorTerm};

/// A cell named by its vertex labels.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FormalCell {
    Vertex(u32),
    /// Endpoints, ascending.
    Edge(u32, u32),
    /// Vertices, ascending.
    Triangle([u32; 3]),
    /// The polygon being described.
    Polygon,
    /// An intermediate fused cell.
    Merged(u32),
}

impl FormalCell {
    pub fn edge(a: u32, b: u32) -> Self {
        if a < b {
            FormalCell::Edge(a, b)
        } else {
            FormalCell::Edge(b, a)
        }
    }

    pub fn dim(&self) -> u8 {
        match self {
            FormalCell::Vertex(_) => 0,
            FormalCell::Edge(..) => 1,
            _ => 2,
        }
    }
}

type FormalChain = BTreeSet<FormalCell>;

fn flip<T: Ord>(set: &mut BTreeSet<T>, x: T) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

/// A Z₂ sum of `FormalCell ⊗ FormalCell` terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalTensor {
    terms: BTreeSet<(FormalCell, FormalCell)>,
}

impl FormalTensor {
    pub fn toggle(&mut self, l: FormalCell, r: FormalCell) {
        flip(&mut self.terms, (l, r));
    }

    fn add_product(&mut self, left: &FormalChain, right: &FormalChain) {
        for &l in left {
            for &r in right {
                self.toggle(l, r);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &(FormalCell, FormalCell)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl FromIterator<(FormalCell, FormalCell)> for FormalTensor {
    fn from_iter<I: IntoIterator<Item = (FormalCell, FormalCell)>>(iter: I) -> Self {
        let mut t = FormalTensor::default();
        for (l, r) in iter {
            t.toggle(l, r);
        }
        t
    }
}

pub(crate) fn check_tuple(t: &[u32]) -> Result<(), Error> {
    if t.len() < 3 {
        return Err(Error::MalformedPolygon(format!("{} vertices", t.len())));
    }
    let distinct: BTreeSet<u32> = t.iter().copied().collect();
    if distinct.len() != t.len() {
        return Err(Error::MalformedPolygon(format!("repeated vertex in {t:?}")));
    }
    if t.iter().skip(1).any(|&i| i < t[0]) {
        return Err(Error::MalformedPolygon(format!("first vertex of {t:?} is not the minimum")));
    }
    Ok(())
}

/// Closed-form diagonal of the polygon `⟨i₁, …, i_k⟩` with `i₁` minimal.
///
/// `⟨i₁⟩⊗p + p⊗⟨i_m⟩ + Σ_{j=2}^{m−1} (u₂ + e₂ + ⋯ + e_{j−1} + λ_j e_j)⊗e_j
///  + Σ_{j=m}^{k−1} [(1+λ_j)e_j + e_{j+1} + ⋯ + e_{k−1} + u_k]⊗e_j`
/// where `i_m = max{i₂, …, i_k}`, `λ_j = 0` iff `i_j < i_{j+1}`,
/// `u_j = ⟨i₁, i_j⟩` and `e_j = ⟨i_j, i_{j+1}⟩`.
pub fn polygon_formula(t: &[u32]) -> Result<FormalTensor, Error> {
    check_tuple(t)?;
    let k = t.len();
    // 1-based accessors
    let i = |j: usize| t[j - 1];
    let e = |j: usize| FormalCell::edge(i(j), i(j + 1));
    let u = |j: usize| FormalCell::edge(i(1), i(j));
    let lambda = |j: usize| i(j) > i(j + 1);
    let m = (2..=k).max_by_key(|&j| i(j)).unwrap();

    let mut out = FormalTensor::default();
    out.toggle(FormalCell::Vertex(i(1)), FormalCell::Polygon);
    out.toggle(FormalCell::Polygon, FormalCell::Vertex(i(m)));
    for j in 2..m {
        let mut left = FormalChain::new();
        flip(&mut left, u(2));
        for s in 2..j {
            flip(&mut left, e(s));
        }
        if lambda(j) {
            flip(&mut left, e(j));
        }
        out.add_product(&left, &FormalChain::from([e(j)]));
    }
    for j in m..k {
        let mut left = FormalChain::new();
        if !lambda(j) {
            flip(&mut left, e(j));
        }
        for s in j + 1..k {
            flip(&mut left, e(s));
        }
        flip(&mut left, u(k));
        out.add_product(&left, &FormalChain::from([e(j)]));
    }
    Ok(out)
}

fn simplex_cell(v: &[u32]) -> FormalCell {
    match *v {
        [a] => FormalCell::Vertex(a),
        [a, b] => FormalCell::Edge(a, b),
        [a, b, c] => FormalCell::Triangle([a, b, c]),
        _ => unreachable!("simplices of dimension at most 2"),
    }
}

/// Alexander–Whitney diagonal `Σ ⟨v₀…v_i⟩ ⊗ ⟨v_i…v_n⟩` of a simplex of
/// dimension at most 2 with strictly increasing vertices.
pub fn aw_simplex(v: &[u32]) -> Result<FormalTensor, Error> {
    if v.is_empty() || v.len() > 3 {
        return Err(Error::MalformedPolygon(format!("simplex with {} vertices", v.len())));
    }
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnorderedSimplex);
    }
    Ok((0..v.len()).map(|i| (simplex_cell(&v[..=i]), simplex_cell(&v[i..]))).collect())
}

fn apply_step(chain: &FormalChain, step: &BTreeMap<FormalCell, FormalChain>) -> FormalChain {
    let mut out = FormalChain::new();
    for c in chain {
        match step.get(c) {
            Some(img) => {
                for &x in img {
                    flip(&mut out, x);
                }
            }
            None => flip(&mut out, *c),
        }
    }
    out
}

/// The coproduct induced on a polygon from the Alexander–Whitney diagonal of
/// its fan triangulation `t_{j−1} = ⟨i₁, i_j, i_{j+1}⟩`.
///
/// The triangles are fused one at a time along `u_j = ⟨i₁, i_j⟩`; each fusion
/// is a cell merge whose chain map `f` (with `f(u_j) = u_j + ∂μ`, `f(μ) = 0`,
/// `f(μ′) = μ″`) is pushed through the tensor. The cell that vanishes is the
/// fused polygon so far when `i_{j+1}` exceeds all of `i₂, …, i_j`, and the new
/// triangle otherwise.
pub fn aw_fan_oracle_formal(t: &[u32]) -> Result<FormalTensor, Error> {
    check_tuple(t)?;
    let k = t.len();
    let i = |j: usize| t[j - 1];
    let u = |j: usize| FormalCell::edge(i(1), i(j));
    let triangle = |j: usize| {
        let mut v = [i(1), i(j), i(j + 1)];
        v.sort_unstable();
        v
    };

    let mut tensor = FormalTensor::default();
    let mut boundary: BTreeMap<FormalCell, FormalChain> = BTreeMap::new();
    for j in 2..k {
        let v = triangle(j);
        for (l, r) in aw_simplex(&v)?.terms {
            tensor.toggle(l, r);
        }
        let [a, b, c] = v;
        boundary.insert(
            FormalCell::Triangle(v),
            FormalChain::from([FormalCell::edge(a, b), FormalCell::edge(b, c), FormalCell::edge(a, c)]),
        );
    }

    let push = |tensor: &FormalTensor, step: &BTreeMap<FormalCell, FormalChain>| {
        let mut out = FormalTensor::default();
        for (l, r) in tensor.terms() {
            let fl = apply_step(&FormalChain::from([*l]), step);
            let fr = apply_step(&FormalChain::from([*r]), step);
            out.add_product(&fl, &fr);
        }
        out
    };

    let name = |j: usize| if j == k - 1 { FormalCell::Polygon } else { FormalCell::Merged(j as u32) };
    let mut acc = FormalCell::Triangle(triangle(2));
    if k == 3 {
        let step = BTreeMap::from([(acc, FormalChain::from([FormalCell::Polygon]))]);
        return Ok(push(&tensor, &step));
    }
    let mut max_so_far = i(2).max(i(3));
    for j in 3..k {
        let tri = FormalCell::Triangle(triangle(j));
        let (mu, mu2) = if i(j + 1) > max_so_far { (acc, tri) } else { (tri, acc) };
        max_so_far = max_so_far.max(i(j + 1));
        let merged = name(j);
        let gamma = u(j);
        let mut d_mu = boundary[&mu].clone();
        let mut new_boundary = d_mu.clone();
        for &x in &boundary[&mu2] {
            flip(&mut new_boundary, x);
        }
        flip(&mut d_mu, gamma);
        let step = BTreeMap::from([(gamma, d_mu), (mu, FormalChain::new()), (mu2, FormalChain::from([merged]))]);
        tensor = push(&tensor, &step);
        boundary.insert(merged, new_boundary);
        acc = merged;
    }
    Ok(tensor)
}

pub(crate) fn polygon_tuple(x: &CellComplex, p: CellId) -> Result<Vec<u32>, Error> {
    if !x.is_alive(p) {
        return Err(Error::DeadCell(p));
    }
    let c = x.cell(p);
    if c.dim != 2 || c.vertices.len() < 3 {
        return Err(Error::MalformedPolygon(format!("cell {p} has no simple vertex cycle")));
    }
    Ok(c.vertices.iter().map(|v| v.0).collect())
}

fn resolve(x: &CellComplex, p: CellId, formal: &FormalTensor) -> Result<TensorChain, Error> {
    let cell = |c: FormalCell| -> Result<(CellId, u8), Error> {
        match c {
            FormalCell::Vertex(v) => Ok((CellId(v), 0)),
            FormalCell::Edge(a, b) => x
                .edge_between(CellId(a), CellId(b))
                .map(|e| (e, 1))
                .ok_or_else(|| Error::MalformedPolygon(format!("no edge between #{a} and #{b}"))),
            FormalCell::Polygon => Ok((p, 2)),
            other => Err(Error::MalformedPolygon(format!("unresolved intermediate cell {other:?}"))),
        }
    };
    let mut out = TensorChain::new();
    for &(l, r) in formal.terms() {
        let (l, ld) = cell(l)?;
        let (r, rd) = cell(r)?;
        out.toggle(TensorTerm::new(l, ld, r, rd));
    }
    Ok(out)
}

/// The closed-form diagonal of a live polygon, read off its vertex cycle.
pub fn polygon_diagonal(x: &CellComplex, p: CellId) -> Result<TensorChain, Error> {
    let t = polygon_tuple(x, p)?;
    resolve(x, p, &polygon_formula(&t)?)
}

/// The fan-triangulation coproduct of a live polygon.
pub fn aw_fan_oracle(x: &CellComplex, p: CellId) -> Result<TensorChain, Error> {
    let t = polygon_tuple(x, p)?;
    resolve(x, p, &aw_fan_oracle_formal(&t)?)
}

/// Alexander–Whitney on a live vertex or edge, lower id first.
pub fn aw_diagonal(x: &CellComplex, c: CellId) -> Result<TensorChain, Error> {
    if !x.is_alive(c) {
        return Err(Error::DeadCell(c));
    }
    let mut out = TensorChain::new();
    match x.dim(c) {
        0 => out.toggle(TensorTerm::new(c, 0, c, 0)),
        1 => {
            let b = &x.cell(c).boundary;
            out.toggle(TensorTerm::new(b[0], 0, c, 1));
            out.toggle(TensorTerm::new(c, 1, b[1], 0));
        }
        d => return Err(Error::DimensionMismatch { left: 1, right: d }),
    }
    Ok(out)
}

/// Serre diagonal of an axis-aligned unit square:
/// `c₀₀⊗q + ⟨c₀₀,c₀₁⟩⊗⟨c₀₁,c₁₁⟩ + ⟨c₀₀,c₁₀⟩⊗⟨c₁₀,c₁₁⟩ + q⊗c₁₁`, where the
/// first index runs along the lower-numbered axis of the square's plane.
pub fn serre_diagonal_square(x: &CellComplex, q: CellId) -> Result<TensorChain, Error> {
    if !x.is_alive(q) || x.dim(q) != 2 || x.cell(q).vertices.len() != 4 {
        return Err(Error::NotASquare(q));
    }
    let verts = &x.cell(q).vertices;
    let mut coords = Vec::with_capacity(4);
    for &v in verts {
        coords.push((x.coords(v).ok_or(Error::NotASquare(q))?, v));
    }
    coords.sort_unstable();
    let lo = coords[0].0;
    let hi = coords[3].0;
    let axes: Vec<usize> = (0..3).filter(|&a| hi[a] != lo[a]).collect();
    if axes.len() != 2 || axes.iter().any(|&a| hi[a] - lo[a] != 1) {
        return Err(Error::NotASquare(q));
    }
    let at = |da: i64, db: i64| -> Result<CellId, Error> {
        let mut c = lo;
        c[axes[0]] += da;
        c[axes[1]] += db;
        coords.iter().find(|(p, _)| *p == c).map(|&(_, v)| v).ok_or(Error::NotASquare(q))
    };
    let (c00, c01, c10, c11) = (at(0, 0)?, at(0, 1)?, at(1, 0)?, at(1, 1)?);
    let edge = |a, b| x.edge_between(a, b).ok_or(Error::NotASquare(q));
    let mut out = TensorChain::new();
    out.toggle(TensorTerm::new(c00, 0, q, 2));
    out.toggle(TensorTerm::new(edge(c00, c01)?, 1, edge(c01, c11)?, 1));
    out.toggle(TensorTerm::new(edge(c00, c10)?, 1, edge(c10, c11)?, 1));
    out.toggle(TensorTerm::new(q, 2, c11, 0));
    Ok(out)
}

/// Which diagonal to use on 2-cells.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// The closed-form polygon formula.
    Polygon,
    /// The cubical Serre diagonal; squares only.
    Serre,
}

impl Diagonal {
    pub fn apply(self, x: &CellComplex, p: CellId) -> Result<TensorChain, Error> {
        match self {
            Diagonal::Polygon => polygon_diagonal(x, p),
            Diagonal::Serre => serre_diagonal_square(x, p),
        }
    }
}

/// `(∂⊗1 + 1⊗∂)Δ(p) + Δ(∂p)`, with Alexander–Whitney on the edges of `∂p`.
/// Zero exactly when the diagonal commutes with the boundary at `p`.
pub fn coderivation_defect(x: &CellComplex, p: CellId, diag: Diagonal) -> Result<TensorChain, Error> {
    let delta = diag.apply(x, p)?;
    let mut out = TensorChain::new();
    for t in delta.terms() {
        if t.left_dim > 0 {
            for &b in &x.cell(t.left).boundary {
                out.toggle(TensorTerm::new(b, t.left_dim - 1, t.right, t.right_dim));
            }
        }
        if t.right_dim > 0 {
            for &b in &x.cell(t.right).boundary {
                out.toggle(TensorTerm::new(t.left, t.left_dim, b, t.right_dim - 1));
            }
        }
    }
    for &e in &x.cell(p).boundary {
        out.add_assign(&aw_diagonal(x, e)?);
    }
    Ok(out)
}

/// Whether every cell in the terms lies in the closure of `p`.
pub fn contained_in_closure(x: &CellComplex, p: CellId, t: &TensorChain) -> bool {
    let mut closure: BTreeSet<CellId> = BTreeSet::from([p]);
    for &e in &x.cell(p).boundary {
        closure.insert(e);
        closure.extend(x.cell(e).boundary.iter().copied());
    }
    t.terms().all(|t| closure.contains(&t.left) && closure.contains(&t.right))
}
