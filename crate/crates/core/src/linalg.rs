//! Exact sparse linear algebra over GF(p) on the monomial basis.
//!
//! [`Echelon`] keeps rows with distinct pivots, pivot entry 1, where every
//! row vanishes on the pivots of all earlier rows. Reduction therefore
//! eliminates pivots in row order, driven by a min-heap, and touches only the
//! rows a vector actually meets. [`Echelon::finalize`] turns this into the
//! reduced row-echelon form, after which coordinates of a member are just its
//! entries at the pivot columns.
//!
//! Everything built from brackets of homogeneous elements is graded by
//! [`GradeKey`]; the derived-subalgebra routine uses this to stop working on
//! a target block as soon as it is full.

use std::cell::RefCell;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::LinalgError;
use crate::field::{Fp, PrimeField};
use crate::superalgebra::{AlgebraContext, GradeKey, SuperElement};

/// Column spaces up to this size use dense pivot tables and scratch buffers.
const DENSE_LIMIT: u32 = 1 << 22;

pub type SparseVec = Vec<(u32, Fp)>;

#[derive(Clone, Debug)]
enum PivotIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

impl PivotIndex {
    #[inline]
    fn get(&self, c: u32) -> Option<u32> {
        match self {
            PivotIndex::Dense(v) => Some(v[c as usize]).filter(|&r| r != u32::MAX),
            PivotIndex::Sparse(m) => m.get(&c).copied(),
        }
    }

    fn set(&mut self, c: u32, r: u32) {
        match self {
            PivotIndex::Dense(v) => v[c as usize] = r,
            PivotIndex::Sparse(m) => {
                m.insert(c, r);
            }
        }
    }
}

enum Acc<'a> {
    Dense { vals: std::cell::RefMut<'a, Vec<Fp>>, touched: Vec<u32> },
    Sparse(HashMap<u32, Fp>),
}

impl Acc<'_> {
    #[inline]
    fn add(&mut self, f: &PrimeField, c: u32, x: Fp) {
        match self {
            Acc::Dense { vals, touched } => {
                let slot = &mut vals[c as usize];
                if slot.is_zero() {
                    touched.push(c);
                }
                *slot = f.add(*slot, x);
            }
            Acc::Sparse(m) => {
                let slot = m.entry(c).or_insert(Fp::ZERO);
                *slot = f.add(*slot, x);
            }
        }
    }

    #[inline]
    fn get(&self, c: u32) -> Fp {
        match self {
            Acc::Dense { vals, .. } => vals[c as usize],
            Acc::Sparse(m) => m.get(&c).copied().unwrap_or(Fp::ZERO),
        }
    }

    /// Sorted nonzero entries; leaves the dense buffer zeroed.
    fn drain(self) -> SparseVec {
        match self {
            Acc::Dense { mut vals, mut touched } => {
                touched.sort_unstable();
                touched.dedup();
                let mut out = Vec::with_capacity(touched.len());
                for c in touched {
                    let x = std::mem::take(&mut vals[c as usize]);
                    if !x.is_zero() {
                        out.push((c, x));
                    }
                }
                out
            }
            Acc::Sparse(m) => {
                let mut out: SparseVec = m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                out.sort_unstable_by_key(|&(c, _)| c);
                out
            }
        }
    }
}

/// Result of reducing a vector: the normal-form remainder and the
/// multiples of each row that were subtracted.
#[derive(Clone, Debug, Default)]
pub struct Reduction {
    pub remainder: SparseVec,
    pub coords: SparseVec,
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    ncols: u32,
    rows: Vec<SparseVec>,
    pivots: Vec<u32>,
    index: PivotIndex,
    scratch: RefCell<Vec<Fp>>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: u32) -> Self {
        let (index, scratch) = if ncols <= DENSE_LIMIT {
            (PivotIndex::Dense(vec![u32::MAX; ncols as usize]), vec![Fp::ZERO; ncols as usize])
        } else {
            (PivotIndex::Sparse(HashMap::new()), Vec::new())
        };
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new(), index, scratch: RefCell::new(scratch) }
    }

    pub fn ncols(&self) -> u32 {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn reduce(&self, v: &[(u32, Fp)], want_coords: bool) -> Reduction {
        let f = &self.field;
        let mut acc = match self.index {
            PivotIndex::Dense(_) => Acc::Dense { vals: self.scratch.borrow_mut(), touched: Vec::new() },
            PivotIndex::Sparse(_) => Acc::Sparse(HashMap::new()),
        };
        let mut heap = BinaryHeap::new();
        let mut coords = Vec::new();
        for &(c, x) in v {
            acc.add(f, c, x);
            if let Some(r) = self.index.get(c) {
                heap.push(Reverse(r));
            }
        }
        let mut last = u32::MAX;
        while let Some(Reverse(k)) = heap.pop() {
            if k == last {
                continue;
            }
            last = k;
            let pc = self.pivots[k as usize];
            let x = acc.get(pc);
            if x.is_zero() {
                continue;
            }
            let neg = f.neg(x);
            for &(c, y) in &self.rows[k as usize] {
                acc.add(f, c, f.mul(neg, y));
                if c != pc {
                    if let Some(r) = self.index.get(c) {
                        heap.push(Reverse(r));
                    }
                }
            }
            if want_coords {
                coords.push((k, x));
            }
        }
        Reduction { remainder: acc.drain(), coords }
    }

    /// Adds a vector; returns true when the rank grows.
    pub fn insert(&mut self, v: &[(u32, Fp)]) -> bool {
        let r = self.reduce(v, false);
        if r.remainder.is_empty() {
            return false;
        }
        self.push_reduced(r.remainder);
        true
    }

    /// Pushes an already reduced nonzero vector, normalizing its pivot.
    pub fn push_reduced(&mut self, mut v: SparseVec) -> u32 {
        let (pc, lead) = v[0];
        let inv = self.field.inv(lead).expect("nonzero pivot");
        for t in &mut v {
            t.1 = self.field.mul(t.1, inv);
        }
        let k = self.rows.len() as u32;
        self.index.set(pc, k);
        self.pivots.push(pc);
        self.rows.push(v);
        k
    }

    pub fn contains(&self, v: &[(u32, Fp)]) -> bool {
        self.reduce(v, false).remainder.is_empty()
    }

    /// Converts to reduced row-echelon form with rows sorted by pivot.
    pub fn finalize(&mut self) {
        let f = self.field;
        let count = self.rows.len();
        let mut done: Vec<Option<SparseVec>> = vec![None; count];
        for k in (0..count).rev() {
            let row = &self.rows[k];
            let mut terms: SparseVec = Vec::with_capacity(row.len());
            let mut subtract: Vec<(usize, Fp)> = Vec::new();
            for &(c, x) in row {
                match self.index.get(c) {
                    Some(j) if j as usize != k => subtract.push((j as usize, x)),
                    _ => terms.push((c, x)),
                }
            }
            for (j, x) in subtract {
                let other = done[j].as_ref().expect("later rows are final");
                let neg = f.neg(x);
                for &(c, y) in other {
                    if c != self.pivots[j] {
                        terms.push((c, f.mul(neg, y)));
                    }
                }
            }
            done[k] = Some(merge(&f, terms));
        }
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_unstable_by_key(|&k| self.pivots[k]);
        let mut rows = Vec::with_capacity(count);
        let mut pivots = Vec::with_capacity(count);
        for (new, &old) in order.iter().enumerate() {
            rows.push(done[old].take().unwrap());
            pivots.push(self.pivots[old]);
            self.index.set(self.pivots[old], new as u32);
        }
        self.rows = rows;
        self.pivots = pivots;
    }
}

fn merge(f: &PrimeField, mut terms: SparseVec) -> SparseVec {
    terms.sort_unstable_by_key(|&(c, _)| c);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (c, x) in terms {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add(last.1, x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

/// A subspace of `O`, kept in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ctx: u32,
    ech: Echelon,
}

impl Subspace {
    pub fn empty(ctx: &AlgebraContext) -> Self {
        Subspace { ctx: ctx.id(), ech: Echelon::new(*ctx.field(), ctx.dim() as u32) }
    }

    /// The whole of `O`.
    pub fn full(ctx: &AlgebraContext) -> Self {
        let mut s = Self::empty(ctx);
        for i in 0..ctx.dim() as u32 {
            s.ech.push_reduced(vec![(i, Fp::ONE)]);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn context_id(&self) -> u32 {
        self.ctx
    }

    fn check(&self, v: &SuperElement) -> Result<(), LinalgError> {
        if v.context_id() != self.ctx {
            return Err(crate::error::AlgebraError::ContextMismatch.into());
        }
        Ok(())
    }

    pub fn contains(&self, v: &SuperElement) -> bool {
        v.context_id() == self.ctx && self.ech.contains(v.terms())
    }

    /// Normal form of `v` modulo the subspace.
    pub fn reduce(&self, ctx: &AlgebraContext, v: &SuperElement) -> SuperElement {
        ctx.element_from_sorted(self.ech.reduce(v.terms(), false).remainder)
    }

    /// Inserts `v`, keeping the form reduced; true when the dimension grows.
    pub fn insert(&mut self, v: &SuperElement) -> Result<bool, LinalgError> {
        self.check(v)?;
        let grew = self.ech.insert(v.terms());
        if grew {
            self.ech.finalize();
        }
        Ok(grew)
    }

    pub fn basis(&self, ctx: &AlgebraContext) -> Vec<SuperElement> {
        self.ech.rows.iter().map(|r| ctx.element_from_sorted(r.clone())).collect()
    }

    pub fn basis_element(&self, ctx: &AlgebraContext, k: usize) -> SuperElement {
        ctx.element_from_sorted(self.ech.rows[k].clone())
    }

    pub fn pivots(&self) -> &[u32] {
        &self.ech.pivots
    }

    /// Coordinates of a member in the basis order of [`Subspace::basis`].
    pub fn coordinates(&self, ctx: &AlgebraContext, v: &SuperElement) -> Result<Vec<(usize, Fp)>, LinalgError> {
        self.check(v)?;
        if !self.ech.contains(v.terms()) {
            return Err(LinalgError::SeedOutside(ctx.render(v)));
        }
        Ok(self.member_coordinates(v))
    }

    /// Coordinates without the membership check.
    pub(crate) fn member_coordinates(&self, v: &SuperElement) -> Vec<(usize, Fp)> {
        v.terms()
            .iter()
            .filter_map(|&(c, x)| self.ech.index.get(c).map(|k| (k as usize, x)))
            .collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ctx == other.ctx && self.ech.rows.iter().all(|r| other.ech.contains(r))
    }

    /// Equality as subspaces (the reduced forms coincide).
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ctx == other.ctx && self.ech.pivots == other.ech.pivots && self.ech.rows == other.ech.rows
    }

    /// Basis rows grouped by grading key, or `None` if some row is inhomogeneous.
    pub fn graded_blocks(&self, ctx: &AlgebraContext) -> Option<BTreeMap<GradeKey, Vec<usize>>> {
        let mut blocks: BTreeMap<GradeKey, Vec<usize>> = BTreeMap::new();
        for (k, row) in self.ech.rows.iter().enumerate() {
            let key = ctx.key(&ctx.element_from_sorted(row.clone()))?;
            blocks.entry(key).or_default().push(k);
        }
        Some(blocks)
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for r in &other.ech.rows {
            out.ech.insert(r);
        }
        out.ech.finalize();
        out
    }
}

/// Row-echelon span of a list of vectors.
pub fn span_of(ctx: &AlgebraContext, vectors: &[SuperElement]) -> Result<Subspace, LinalgError> {
    let mut s = Subspace::empty(ctx);
    for v in vectors {
        s.check(v)?;
        s.ech.insert(v.terms());
    }
    s.ech.finalize();
    Ok(s)
}

/// Null space of the linear map sending the basis monomial `i` (for `i` in
/// `domain`) to the sparse vector `image(i)` in a space of `ncols` columns.
pub fn kernel_of_map(
    ctx: &AlgebraContext,
    domain: impl IntoIterator<Item = u32>,
    ncols: u32,
    mut image: impl FnMut(u32) -> SparseVec,
) -> Subspace {
    let f = *ctx.field();
    let mut ech = Echelon::new(f, ncols);
    let mut combos: Vec<SparseVec> = Vec::new();
    let mut kernel = Subspace::empty(ctx);
    for i in domain {
        let r = ech.reduce(&image(i), true);
        let mut combo = vec![(i, Fp::ONE)];
        for &(k, x) in &r.coords {
            let neg = f.neg(x);
            combo.extend(combos[k as usize].iter().map(|&(c, y)| (c, f.mul(neg, y))));
        }
        let combo = merge(&f, combo);
        if r.remainder.is_empty() {
            kernel.ech.insert(&combo);
        } else {
            let inv = f.inv(r.remainder[0].1).expect("nonzero pivot");
            ech.push_reduced(r.remainder);
            combos.push(combo.into_iter().map(|(c, y)| (c, f.mul(y, inv))).collect());
        }
    }
    kernel.ech.finalize();
    kernel
}

/// Null space of an endomorphism of `O` given on basis monomials.
pub fn kernel_of(ctx: &AlgebraContext, map: impl Fn(&SuperElement) -> SuperElement) -> Subspace {
    kernel_of_map(ctx, 0..ctx.dim() as u32, ctx.dim() as u32, |i| map(&ctx.basis_element(i)).terms().to_vec())
}

/// `{a ∈ O | div_λ(a) = 0}`, the carrier of `SKO''`.
pub fn divergence_kernel(ctx: &AlgebraContext) -> Subspace {
    kernel_of(ctx, |a| ctx.div(a))
}

/// `[h, h]`, assuming `h` closed under the bracket.
///
/// When `h` is graded, pairs are grouped by target block and a block stops
/// receiving brackets once it reaches the dimension of the same block of `h`.
/// Closure is spot-checked on `samples` random basis pairs.
pub fn derived_subalgebra(
    ctx: &AlgebraContext,
    h: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<Subspace, LinalgError> {
    if h.ctx != ctx.id() {
        return Err(crate::error::AlgebraError::ContextMismatch.into());
    }
    let basis = h.basis(ctx);
    check_closure(ctx, h, &basis, samples, seed)?;
    let mut out = Subspace::empty(ctx);
    let Some(blocks) = h.graded_blocks(ctx) else {
        for i in 0..basis.len() {
            for j in i..basis.len() {
                out.ech.insert(ctx.br(&basis[i], &basis[j]).terms());
            }
        }
        out.ech.finalize();
        return Ok(out);
    };
    let p = ctx.p();
    let keys: Vec<(GradeKey, Vec<usize>)> = blocks.into_iter().collect();
    let cap: HashMap<GradeKey, usize> = keys.iter().map(|(k, v)| (*k, v.len())).collect();
    let mut have: HashMap<GradeKey, usize> = HashMap::new();
    for (ai, (ka, rows_a)) in keys.iter().enumerate() {
        for (kb, rows_b) in &keys[ai..] {
            let target = ka.add(kb, p);
            let Some(&limit) = cap.get(&target) else { continue };
            let got = have.entry(target).or_insert(0);
            if *got >= limit {
                continue;
            }
            'pairs: for (x, &ra) in rows_a.iter().enumerate() {
                let start = if ka == kb { x } else { 0 };
                for &rb in &rows_b[start..] {
                    let v = ctx.br(&basis[ra], &basis[rb]);
                    if !v.is_zero() && out.ech.insert(v.terms()) {
                        *got += 1;
                        if *got >= limit {
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    out.ech.finalize();
    Ok(out)
}

/// `𝔤'' = ker div_λ`, `𝔤' = [𝔤'', 𝔤'']` and `𝔤 = [𝔤', 𝔤']`.
#[derive(Clone, Debug)]
pub struct DerivedSeries {
    pub g2: Subspace,
    pub g1: Subspace,
    pub g: Subspace,
}

pub fn derived_series(ctx: &AlgebraContext, samples: usize, seed: u64) -> Result<DerivedSeries, LinalgError> {
    let g2 = divergence_kernel(ctx);
    let g1 = derived_subalgebra(ctx, &g2, samples, seed)?;
    let g = derived_subalgebra(ctx, &g1, samples, seed.wrapping_add(1))?;
    Ok(DerivedSeries { g2, g1, g })
}

fn check_closure(
    ctx: &AlgebraContext,
    h: &Subspace,
    basis: &[SuperElement],
    samples: usize,
    seed: u64,
) -> Result<(), LinalgError> {
    if basis.is_empty() {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = &basis[rng.gen_range(0..basis.len())];
        let b = &basis[rng.gen_range(0..basis.len())];
        if !h.contains(&ctx.br(a, b)) {
            return Err(LinalgError::ClosureViolation { left: ctx.render(a), right: ctx.render(b) });
        }
    }
    Ok(())
}

/// The subalgebra generated by `gens`.
///
/// It is spanned by the left-normed brackets `[g_1, [g_2, … [g_{k-1}, g_k]]]`,
/// so each new basis vector only needs bracketing with the generators.
pub fn generated_closure(ctx: &AlgebraContext, gens: &[SuperElement]) -> Result<Subspace, LinalgError> {
    let mut s = Subspace::empty(ctx);
    let mut queue = Vec::new();
    for g in gens {
        s.check(g)?;
        if s.ech.insert(g.terms()) {
            queue.push(g.clone());
        }
    }
    adjoin_until_stable(ctx, &mut s, queue, gens, None);
    s.ech.finalize();
    Ok(s)
}

/// Smallest subspace containing `seed` and stable under `ad x` for every `x`
/// in `ad_set` (the basis of `ambient` when `ad_set` is empty). Since `ad` of a
/// generating set generates `ad` of the whole algebra, passing generators of
/// `ambient` gives the ideal generated by `seed`.
pub fn ideal_closure(
    ctx: &AlgebraContext,
    seed: &SuperElement,
    ambient: &Subspace,
    ad_set: &[SuperElement],
) -> Result<Subspace, LinalgError> {
    if !ambient.contains(seed) {
        return Err(LinalgError::SeedOutside(ctx.render(seed)));
    }
    let owned;
    let acting: &[SuperElement] = if ad_set.is_empty() {
        owned = ambient.basis(ctx);
        &owned
    } else {
        ad_set
    };
    let mut s = Subspace::empty(ctx);
    let mut queue = Vec::new();
    if s.ech.insert(seed.terms()) {
        queue.push(seed.clone());
    }
    adjoin_until_stable(ctx, &mut s, queue, acting, Some(ambient.dim()));
    s.ech.finalize();
    Ok(s)
}

fn adjoin_until_stable(
    ctx: &AlgebraContext,
    s: &mut Subspace,
    mut queue: Vec<SuperElement>,
    acting: &[SuperElement],
    cap: Option<usize>,
) {
    while let Some(v) = queue.pop() {
        for g in acting {
            if cap.is_some_and(|c| s.dim() >= c) {
                return;
            }
            let w = ctx.br(g, &v);
            if w.is_zero() {
                continue;
            }
            let r = s.ech.reduce(w.terms(), false).remainder;
            if !r.is_empty() {
                s.ech.push_reduced(r);
                queue.push(w);
            }
        }
    }
}

/// A deterministic pseudo-random nonzero element of `space`: a combination
/// of one to three basis vectors with nonzero coefficients.
pub fn random_member(ctx: &AlgebraContext, space: &Subspace, rng: &mut ChaCha8Rng) -> SuperElement {
    let basis_len = space.dim();
    let count = rng.gen_range(1..=3.min(basis_len));
    let f = ctx.field();
    let mut parts = Vec::new();
    for _ in 0..count {
        let k = rng.gen_range(0..basis_len);
        let c = f.elem(rng.gen_range(1..ctx.p()) as i64);
        parts.push((c, space.basis_element(ctx, k)));
    }
    let v = ctx.combine(parts.iter().map(|(c, v)| (*c, v)));
    if v.is_zero() {
        space.basis_element(ctx, 0)
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> AlgebraContext {
        AlgebraContext::new(5, 3, &[1, 1, 1], 2).unwrap()
    }

    #[test]
    fn span_examples() {
        let c = ctx();
        let x1 = c.var(1).unwrap();
        let two_x1 = c.scale(c.field().elem(2), &x1);
        assert_eq!(span_of(&c, &[x1, two_x1]).unwrap().dim(), 1);
        assert_eq!(span_of(&c, &[]).unwrap().dim(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let c = ctx();
        assert_eq!(kernel_of(&c, |_| c.zero()).dim(), 2000);
    }

    #[test]
    fn echelon_reduction_and_rref() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(f, 6);
        let v = |xs: &[(u32, i64)]| xs.iter().map(|&(c, x)| (c, f.elem(x))).collect::<SparseVec>();
        assert!(e.insert(&v(&[(2, 1), (4, 3)])));
        assert!(e.insert(&v(&[(0, 2), (2, 1)])));
        assert!(e.insert(&v(&[(4, 1), (5, 1)])));
        assert!(!e.insert(&v(&[(0, 2), (4, 6), (5, 1)])) || e.rank() == 4);
        let before = e.rank();
        e.finalize();
        assert_eq!(e.rank(), before);
        for (k, row) in e.rows().iter().enumerate() {
            assert_eq!(row[0], (e.pivots()[k], Fp::ONE));
            for (j, &pc) in e.pivots().iter().enumerate() {
                if j != k {
                    assert!(row.iter().all(|&(c, _)| c != pc));
                }
            }
        }
        assert!(e.contains(&v(&[(0, 2), (2, 1)])));
        assert!(!e.contains(&v(&[(1, 1)])));
    }

    #[test]
    fn sparse_mode_matches_dense_mode() {
        let f = PrimeField::new(5).unwrap();
        let mut dense = Echelon::new(f, 100);
        let mut sparse = Echelon::new(f, DENSE_LIMIT + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let mut v: SparseVec = (0..4).map(|_| (rng.gen_range(0..100u32), f.elem(rng.gen_range(1..5)))).collect();
            v = merge(&f, v);
            assert_eq!(dense.insert(&v), sparse.insert(&v));
        }
        dense.finalize();
        sparse.finalize();
        assert_eq!(dense.rows(), sparse.rows());
    }

    #[test]
    fn generated_closure_of_unit_is_a_line() {
        let c = ctx();
        assert_eq!(generated_closure(&c, &[c.one()]).unwrap().dim(), 1);
    }

    #[test]
    fn derived_of_abelian_span_is_zero() {
        let c = ctx();
        let x456 = c.mono(&[0, 0, 0], &[4, 5, 6], false).unwrap();
        let x45 = c.mono(&[0, 0, 0], &[4, 5], false).unwrap();
        let h = span_of(&c, &[x456, x45]).unwrap();
        assert_eq!(derived_subalgebra(&c, &h, 10, 1).unwrap().dim(), 0);
    }

    #[test]
    fn closure_violation_is_reported() {
        let c = ctx();
        let h = span_of(&c, &[c.var(1).unwrap(), c.var(4).unwrap()]).unwrap();
        let err = derived_subalgebra(&c, &h, 50, 1).unwrap_err();
        assert!(matches!(err, LinalgError::ClosureViolation { .. }));
    }

    #[test]
    fn seed_outside_ambient_is_an_error() {
        let c = ctx();
        let amb = span_of(&c, &[c.one()]).unwrap();
        let err = ideal_closure(&c, &c.var(1).unwrap(), &amb, &[]).unwrap_err();
        assert!(matches!(err, LinalgError::SeedOutside(_)));
    }
}
