//! Z₂ linear algebra over cell identifiers.
//!
//! A [`CellSet`] is a finite subset of cell ids, i.e. a Z₂ vector whose
//! support is the set. Addition is symmetric difference. Sets switch between
//! a sorted id list and a word-packed bitset depending on density; both
//! representations compare equal by content.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::AddAssign;

use crate::error::Error;

/// Dense index of a cell inside one complex.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CellId(pub u32);

impl CellId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl From<u32> for CellId {
    fn from(v: u32) -> Self {
        CellId(v)
    }
}

/// Sparse sets shorter than this never switch to the packed form.
const DENSE_MIN: usize = 64;

#[derive(Clone, Debug)]
enum Repr {
    Sparse(Vec<u32>),
    Dense { words: Vec<u64>, count: usize },
}

/// A finite set of cell ids with mod-2 addition.
#[derive(Clone, Debug)]
pub struct CellSet {
    repr: Repr,
}

impl Default for CellSet {
    fn default() -> Self {
        CellSet { repr: Repr::Sparse(Vec::new()) }
    }
}

impl CellSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(id: CellId) -> Self {
        CellSet { repr: Repr::Sparse(alloc::vec![id.0]) }
    }

    /// Builds a set from ids that are already sorted and distinct.
    pub(crate) fn from_sorted(ids: Vec<u32>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let mut s = CellSet { repr: Repr::Sparse(ids) };
        s.rebalance();
        s
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Sparse(v) => v.len(),
            Repr::Dense { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when the packed representation is in use.
    pub fn is_packed(&self) -> bool {
        matches!(self.repr, Repr::Dense { .. })
    }

    pub fn contains(&self, id: CellId) -> bool {
        match &self.repr {
            Repr::Sparse(v) => v.binary_search(&id.0).is_ok(),
            Repr::Dense { words, .. } => {
                let (w, b) = (id.index() / 64, id.index() % 64);
                words.get(w).is_some_and(|x| x >> b & 1 == 1)
            }
        }
    }

    /// Flips membership of `id`; returns whether it is now a member.
    pub fn toggle(&mut self, id: CellId) -> bool {
        let now = match &mut self.repr {
            Repr::Sparse(v) => match v.binary_search(&id.0) {
                Ok(pos) => {
                    v.remove(pos);
                    false
                }
                Err(pos) => {
                    v.insert(pos, id.0);
                    true
                }
            },
            Repr::Dense { words, count } => {
                let (w, b) = (id.index() / 64, id.index() % 64);
                if w >= words.len() {
                    words.resize(w + 1, 0);
                }
                words[w] ^= 1 << b;
                let now = words[w] >> b & 1 == 1;
                if now {
                    *count += 1;
                } else {
                    *count -= 1;
                }
                now
            }
        };
        self.rebalance();
        now
    }

    pub fn insert(&mut self, id: CellId) {
        if !self.contains(id) {
            self.toggle(id);
        }
    }

    pub fn remove(&mut self, id: CellId) {
        if self.contains(id) {
            self.toggle(id);
        }
    }

    pub fn clear(&mut self) {
        self.repr = Repr::Sparse(Vec::new());
    }

    pub fn iter(&self) -> Iter<'_> {
        match &self.repr {
            Repr::Sparse(v) => Iter::Sparse(v.iter()),
            Repr::Dense { words, .. } => Iter::Dense { words, word: 0, cur: words.first().copied().unwrap_or(0) },
        }
    }

    pub fn first(&self) -> Option<CellId> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<CellId> {
        match &self.repr {
            Repr::Sparse(v) => v.last().map(|&x| CellId(x)),
            Repr::Dense { words, .. } => words
                .iter()
                .enumerate()
                .rev()
                .find(|(_, w)| **w != 0)
                .map(|(i, w)| CellId((i * 64 + 63 - w.leading_zeros() as usize) as u32)),
        }
    }

    /// Symmetric difference in place.
    pub fn xor_assign(&mut self, other: &CellSet) {
        if other.is_empty() {
            return;
        }
        match (&mut self.repr, &other.repr) {
            (Repr::Sparse(a), Repr::Sparse(b)) => {
                *a = sym_diff(a, b);
            }
            (Repr::Dense { words, count }, Repr::Dense { words: ow, .. }) => {
                if ow.len() > words.len() {
                    words.resize(ow.len(), 0);
                }
                let mut c = *count as isize;
                for (w, o) in words.iter_mut().zip(ow) {
                    let before = w.count_ones() as isize;
                    *w ^= o;
                    c += w.count_ones() as isize - before;
                }
                *count = c as usize;
            }
            (Repr::Dense { words, count }, Repr::Sparse(b)) => {
                for &id in b {
                    let (w, bit) = (id as usize / 64, id as usize % 64);
                    if w >= words.len() {
                        words.resize(w + 1, 0);
                    }
                    words[w] ^= 1 << bit;
                    if words[w] >> bit & 1 == 1 {
                        *count += 1;
                    } else {
                        *count -= 1;
                    }
                }
            }
            (Repr::Sparse(_), Repr::Dense { .. }) => {
                let mut packed = other.clone();
                packed.xor_assign(self);
                *self = packed;
                return;
            }
        }
        self.rebalance();
    }

    /// Parity of `|self ∩ other|`.
    pub fn parity_with(&self, other: &CellSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().filter(|&id| large.contains(id)).count() % 2 == 1
    }

    fn rebalance(&mut self) {
        match &mut self.repr {
            Repr::Sparse(v) => {
                if v.len() >= DENSE_MIN {
                    let span = *v.last().unwrap() as usize + 1;
                    if v.len() * 64 >= span {
                        let mut words = alloc::vec![0u64; span.div_ceil(64)];
                        for &id in v.iter() {
                            words[id as usize / 64] |= 1 << (id % 64);
                        }
                        let count = v.len();
                        self.repr = Repr::Dense { words, count };
                    }
                }
            }
            Repr::Dense { words, count } => {
                while words.last() == Some(&0) {
                    words.pop();
                }
                let bits = words.len() * 64;
                if *count < DENSE_MIN / 2 || *count * 128 < bits {
                    let ids: Vec<u32> =
                        Iter::Dense { words, word: 0, cur: words.first().copied().unwrap_or(0) }.map(|c| c.0).collect();
                    self.repr = Repr::Sparse(ids);
                }
            }
        }
    }
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl PartialEq for CellSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().eq(other.iter())
    }
}

impl Eq for CellSet {}

/// Mod-2 collection: an id listed twice cancels.
impl FromIterator<CellId> for CellSet {
    fn from_iter<I: IntoIterator<Item = CellId>>(iter: I) -> Self {
        let mut ids: Vec<u32> = iter.into_iter().map(|c| c.0).collect();
        ids.sort_unstable();
        let mut out = Vec::with_capacity(ids.len());
        for id in ids {
            if out.last() == Some(&id) {
                out.pop();
            } else {
                out.push(id);
            }
        }
        CellSet::from_sorted(out)
    }
}

/// Ascending iterator over a [`CellSet`].
pub enum Iter<'a> {
    Sparse(core::slice::Iter<'a, u32>),
    Dense { words: &'a [u64], word: usize, cur: u64 },
}

impl Iterator for Iter<'_> {
    type Item = CellId;

    fn next(&mut self) -> Option<CellId> {
        match self {
            Iter::Sparse(it) => it.next().map(|&x| CellId(x)),
            Iter::Dense { words, word, cur } => loop {
                if *cur != 0 {
                    let b = cur.trailing_zeros();
                    *cur &= *cur - 1;
                    return Some(CellId((*word * 64) as u32 + b));
                }
                *word += 1;
                if *word >= words.len() {
                    return None;
                }
                *cur = words[*word];
            },
        }
    }
}

/// A homogeneous Z₂ chain: a set of cells of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub dim: u8,
    pub cells: CellSet,
}

impl Chain {
    pub fn zero(dim: u8) -> Self {
        Chain { dim, cells: CellSet::new() }
    }

    pub fn cell(dim: u8, id: CellId) -> Self {
        Chain { dim, cells: CellSet::singleton(id) }
    }

    pub fn from_cells<I: IntoIterator<Item = CellId>>(dim: u8, cells: I) -> Self {
        Chain { dim, cells: cells.into_iter().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, id: CellId) -> bool {
        self.cells.contains(id)
    }

    pub fn iter(&self) -> Iter<'_> {
        self.cells.iter()
    }

    pub fn toggle(&mut self, id: CellId) {
        self.cells.toggle(id);
    }

    pub fn try_add_assign(&mut self, other: &Chain) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        self.cells.xor_assign(&other.cells);
        Ok(())
    }
}

/// Panics on a dimension mismatch; use [`chain_add`] for a checked sum.
impl AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, other: &Chain) {
        if let Err(e) = self.try_add_assign(other) {
            panic!("{e}");
        }
    }
}

/// Mod-2 sum of two chains of equal dimension.
pub fn chain_add(a: &Chain, b: &Chain) -> Result<Chain, Error> {
    let mut out = a.clone();
    out.try_add_assign(b)?;
    Ok(out)
}

/// A cochain, stored as the characteristic set of cells where it is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub dim: u8,
    pub cells: CellSet,
}

impl Cochain {
    pub fn zero(dim: u8) -> Self {
        Cochain { dim, cells: CellSet::new() }
    }

    pub fn from_cells<I: IntoIterator<Item = CellId>>(dim: u8, cells: I) -> Self {
        Cochain { dim, cells: cells.into_iter().collect() }
    }

    pub fn value_at(&self, id: CellId) -> bool {
        self.cells.contains(id)
    }
}

/// Evaluates a cochain on a chain: the parity of the common support.
pub fn evaluate(c: &Cochain, a: &Chain) -> Result<bool, Error> {
    if c.dim != a.dim {
        return Err(Error::DimensionMismatch { left: c.dim, right: a.dim });
    }
    Ok(c.cells.parity_with(&a.cells))
}

/// One `left ⊗ right` generator of `C∗ ⊗ C∗`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TensorTerm {
    pub left: CellId,
    pub right: CellId,
    pub left_dim: u8,
    pub right_dim: u8,
}

impl TensorTerm {
    pub fn new(left: CellId, left_dim: u8, right: CellId, right_dim: u8) -> Self {
        TensorTerm { left, right, left_dim, right_dim }
    }

    pub fn bidegree(&self) -> (u8, u8) {
        (self.left_dim, self.right_dim)
    }
}

/// A Z₂ formal sum of `cell ⊗ cell` terms; a repeated term cancels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorChain {
    terms: BTreeSet<TensorTerm>,
}

impl TensorChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn toggle(&mut self, term: TensorTerm) {
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    /// Adds `left ⊗ right` for every pair in the two chains.
    pub fn add_product(&mut self, left: &Chain, right: &Chain) {
        for l in left.iter() {
            for r in right.iter() {
                self.toggle(TensorTerm::new(l, left.dim, r, right.dim));
            }
        }
    }

    pub fn add_assign(&mut self, other: &TensorChain) {
        for t in &other.terms {
            self.toggle(*t);
        }
    }

    pub fn contains(&self, term: &TensorTerm) -> bool {
        self.terms.contains(term)
    }

    pub fn terms(&self) -> impl Iterator<Item = &TensorTerm> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn of_bidegree(&self, left: u8, right: u8) -> impl Iterator<Item = &TensorTerm> + '_ {
        self.terms.iter().filter(move |t| t.left_dim == left && t.right_dim == right)
    }
}

impl FromIterator<TensorTerm> for TensorChain {
    fn from_iter<I: IntoIterator<Item = TensorTerm>>(iter: I) -> Self {
        let mut t = TensorChain::new();
        for term in iter {
            t.toggle(term);
        }
        t
    }
}

/// `m(c1 ⊗ c2)(t)`: sums `c1(l)·c2(r)` over the terms of matching bidegree.
pub fn tensor_evaluate(c1: &Cochain, c2: &Cochain, t: &TensorChain) -> bool {
    t.of_bidegree(c1.dim, c2.dim).filter(|term| c1.value_at(term.left) && c2.value_at(term.right)).count() % 2 == 1
}

/// Image of a cell with no recorded entry.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MapDefault {
    Identity,
    Zero,
}

/// A linear map on chains given by its images on generators.
///
/// Only images that differ from the default are stored. The degree shift is
/// fixed per map: `0` for chain maps, `1` for chain homotopies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLinearMap {
    shift: u8,
    default: MapDefault,
    entries: BTreeMap<CellId, Chain>,
}

impl SparseLinearMap {
    pub fn new(shift: u8, default: MapDefault) -> Self {
        debug_assert!(shift == 0 || default == MapDefault::Zero, "identity default needs degree 0");
        SparseLinearMap { shift, default, entries: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::new(0, MapDefault::Identity)
    }

    pub fn zero(shift: u8) -> Self {
        Self::new(shift, MapDefault::Zero)
    }

    pub fn shift(&self) -> u8 {
        self.shift
    }

    pub fn default_kind(&self) -> MapDefault {
        self.default
    }

    fn is_default_image(&self, cell: CellId, image: &Chain) -> bool {
        match self.default {
            MapDefault::Zero => image.is_zero(),
            MapDefault::Identity => image.len() == 1 && image.contains(cell),
        }
    }

    /// Records the image of `cell`; images equal to the default are dropped.
    pub fn set(&mut self, cell: CellId, image: Chain) {
        if self.is_default_image(cell, &image) {
            self.entries.remove(&cell);
        } else {
            self.entries.insert(cell, image);
        }
    }

    pub fn remove(&mut self, cell: CellId) -> Option<Chain> {
        self.entries.remove(&cell)
    }

    pub fn get(&self, cell: CellId) -> Option<&Chain> {
        self.entries.get(&cell)
    }

    pub fn entries(&self) -> btree_map::Iter<'_, CellId, Chain> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Image of a single generator of dimension `dim`.
    pub fn image(&self, cell: CellId, dim: u8) -> Chain {
        match self.entries.get(&cell) {
            Some(c) => c.clone(),
            None => match self.default {
                MapDefault::Identity => Chain::cell(dim, cell),
                MapDefault::Zero => Chain::zero(dim + self.shift),
            },
        }
    }

    /// The composite `second ∘ self`.
    pub fn then(&self, second: &SparseLinearMap) -> SparseLinearMap {
        let default = if self.default == MapDefault::Identity && second.default == MapDefault::Identity {
            MapDefault::Identity
        } else {
            MapDefault::Zero
        };
        let mut out = SparseLinearMap::new(self.shift + second.shift, default);
        for (&k, img) in &self.entries {
            out.set(k, second.apply(img));
        }
        if self.default == MapDefault::Identity {
            for (&k, img) in &second.entries {
                if !self.entries.contains_key(&k) {
                    out.set(k, img.clone());
                }
            }
        }
        out
    }

    /// Pointwise sum of two maps that both default to zero.
    pub fn sum(&self, other: &SparseLinearMap) -> SparseLinearMap {
        assert!(
            self.default == MapDefault::Zero && other.default == MapDefault::Zero && self.shift == other.shift,
            "sum needs zero-default maps of equal degree"
        );
        let mut out = self.clone();
        for (&k, img) in &other.entries {
            match out.entries.get_mut(&k) {
                Some(cur) => {
                    cur.cells.xor_assign(&img.cells);
                    if cur.is_zero() {
                        out.entries.remove(&k);
                    }
                }
                None => {
                    out.entries.insert(k, img.clone());
                }
            }
        }
        out
    }

    /// Drops entries whose key fails `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(CellId) -> bool) {
        self.entries.retain(|&k, _| keep(k));
    }

    /// Linear extension: the mod-2 sum of the images of the support.
    pub fn apply(&self, chain: &Chain) -> Chain {
        let mut out = Chain::zero(chain.dim + self.shift);
        let mut identity_part = Vec::new();
        for c in chain.iter() {
            match self.entries.get(&c) {
                Some(img) => out.cells.xor_assign(&img.cells),
                None => {
                    if self.default == MapDefault::Identity {
                        identity_part.push(c.0);
                    }
                }
            }
        }
        if !identity_part.is_empty() {
            out.cells.xor_assign(&CellSet::from_sorted(identity_part));
        }
        out
    }
}
