//! Superderivations of a graded subalgebra `𝔤 ⊆ O`.
//!
//! Endomorphisms are stored by their images of the reduced basis of `𝔤`.
//! Everything here is homogeneous for the joint [`GradeKey`], which keeps the
//! linear systems block-sized.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, DerivationError};
use crate::field::Fp;
use crate::formulas::sgn;
use crate::linalg::{kernel_of_map, span_of, Echelon, SparseVec, Subspace};
use crate::superalgebra::{AlgebraContext, GradeKey, Monomial, Parity, SuperElement, MAX_N};

/// The reduced basis of a graded subalgebra together with its key blocks.
pub struct AlgebraBasis<'a> {
    ctx: &'a AlgebraContext,
    space: &'a Subspace,
    basis: Vec<SuperElement>,
    keys: Vec<GradeKey>,
    blocks: BTreeMap<GradeKey, Vec<usize>>,
    block_pos: Vec<usize>,
}

impl<'a> AlgebraBasis<'a> {
    pub fn new(ctx: &'a AlgebraContext, space: &'a Subspace) -> Result<Self, DerivationError> {
        if space.context_id() != ctx.id() {
            return Err(AlgebraError::ContextMismatch.into());
        }
        let basis = space.basis(ctx);
        let mut keys = Vec::with_capacity(basis.len());
        let mut blocks: BTreeMap<GradeKey, Vec<usize>> = BTreeMap::new();
        let mut block_pos = Vec::with_capacity(basis.len());
        for (k, b) in basis.iter().enumerate() {
            let key = ctx.key(b).ok_or(AlgebraError::NotHomogeneous("subalgebra basis"))?;
            keys.push(key);
            let blk = blocks.entry(key).or_default();
            block_pos.push(blk.len());
            blk.push(k);
        }
        Ok(AlgebraBasis { ctx, space, basis, keys, blocks, block_pos })
    }

    pub fn ctx(&self) -> &AlgebraContext {
        self.ctx
    }

    pub fn space(&self) -> &Subspace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SuperElement] {
        &self.basis
    }

    pub fn key(&self, k: usize) -> &GradeKey {
        &self.keys[k]
    }

    /// Basis indices carrying the key (possibly none).
    pub fn block(&self, key: &GradeKey) -> &[usize] {
        self.blocks.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn blocks(&self) -> &BTreeMap<GradeKey, Vec<usize>> {
        &self.blocks
    }

    /// Coordinates of a member of `𝔤`; garbage for non-members.
    pub fn coords(&self, v: &SuperElement) -> Vec<(usize, Fp)> {
        self.space.member_coordinates(v)
    }

    fn lie_parity(&self, k: usize) -> bool {
        self.keys[k].lie_parity == 1
    }
}

fn zero_key() -> GradeKey {
    GradeKey { deg: 0, lie_parity: 0, weight: [0; MAX_N] }
}

fn key_sub(a: &GradeKey, b: &GradeKey, p: u32) -> GradeKey {
    let mut weight = [0u8; MAX_N];
    for (k, w) in weight.iter_mut().enumerate() {
        *w = ((a.weight[k] as u32 + p - b.weight[k] as u32) % p) as u8;
    }
    GradeKey { deg: a.deg - b.deg, lie_parity: a.lie_parity ^ b.lie_parity, weight }
}

/// A homogeneous linear map `𝔤 → 𝔤`, given on the basis.
#[derive(Clone, Debug)]
pub struct EndoMap {
    pub name: String,
    shift: GradeKey,
    images: Vec<SuperElement>,
}

impl EndoMap {
    /// Builds the map from basis images, checking that they stay in `𝔤`
    /// and move keys by `shift`.
    pub fn from_images(
        b: &AlgebraBasis,
        name: impl Into<String>,
        shift: GradeKey,
        images: Vec<SuperElement>,
    ) -> Result<Self, DerivationError> {
        let p = b.ctx.p();
        for (k, im) in images.iter().enumerate() {
            if im.is_zero() {
                continue;
            }
            if !b.space.contains(im) {
                return Err(DerivationError::ImageOutside { index: k });
            }
            if b.ctx.key(im) != Some(b.keys[k].add(&shift, p)) {
                return Err(AlgebraError::NotHomogeneous("map image").into());
            }
        }
        Ok(EndoMap { name: name.into(), shift, images })
    }

    pub fn shift(&self) -> &GradeKey {
        &self.shift
    }

    pub fn parity(&self) -> Parity {
        if self.shift.lie_parity == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn images(&self) -> &[SuperElement] {
        &self.images
    }

    pub fn apply(&self, b: &AlgebraBasis, v: &SuperElement) -> SuperElement {
        let coords = b.coords(v);
        b.ctx.combine(coords.iter().map(|&(k, c)| (c, &self.images[k])))
    }

    /// Row vector of the map: column `k·N + m` holds the coefficient of
    /// monomial `m` in the image of basis vector `k`.
    fn flatten(&self, n_mono: u32) -> SparseVec {
        let mut out = Vec::new();
        for (k, im) in self.images.iter().enumerate() {
            out.extend(im.terms().iter().map(|&(m, c)| (k as u32 * n_mono + m, c)));
        }
        out
    }

    /// `Σ c_j φ_j` over maps with a common shift.
    pub fn combination(b: &AlgebraBasis, name: impl Into<String>, parts: &[(Fp, &EndoMap)]) -> EndoMap {
        let shift = parts.first().map(|(_, m)| m.shift).unwrap_or_else(zero_key);
        let images = (0..b.dim())
            .map(|k| b.ctx.combine(parts.iter().map(|(c, m)| (*c, &m.images[k]))))
            .collect();
        EndoMap { name: name.into(), shift, images }
    }

    /// The supercommutator `[φ, ψ] = φψ - (-1)^{p(φ)p(ψ)} ψφ`.
    pub fn commutator(b: &AlgebraBasis, phi: &EndoMap, psi: &EndoMap) -> EndoMap {
        let f = b.ctx.field();
        let s = f.neg(f.sign(phi.shift.lie_parity & psi.shift.lie_parity == 1));
        let images = (0..b.dim())
            .map(|k| {
                let a = phi.apply(b, &psi.images[k]);
                let c = psi.apply(b, &phi.images[k]);
                b.ctx.axpy(s, &c, &a)
            })
            .collect();
        EndoMap {
            name: format!("[{}, {}]", phi.name, psi.name),
            shift: phi.shift.add(&psi.shift, b.ctx.p()),
            images,
        }
    }
}

/// `ad f` restricted to `𝔤`; fails if `f` does not normalize `𝔤`.
pub fn ad_endo(b: &AlgebraBasis, f: &SuperElement) -> Result<EndoMap, DerivationError> {
    b.ctx.check(f)?;
    let shift = b.ctx.key(f).ok_or(AlgebraError::NotHomogeneous("ad argument"))?;
    let mut images = Vec::with_capacity(b.dim());
    for x in &b.basis {
        let im = b.ctx.br(f, x);
        if !b.space.contains(&im) {
            return Err(DerivationError::NotNormalizing { element: b.ctx.render(f), witness: b.ctx.render(x) });
        }
        images.push(im);
    }
    Ok(EndoMap { name: format!("ad({})", b.ctx.render(f)), shift, images })
}

pub fn identity_endo(b: &AlgebraBasis) -> EndoMap {
    EndoMap { name: "id".into(), shift: zero_key(), images: b.basis.clone() }
}

/// `∂_i^{p^d}`, lowering `α_i` by `p^d`; needs `1 ≤ d ≤ t_i - 1`.
pub fn partial_power_endo(b: &AlgebraBasis, i: usize, d: u32) -> Result<EndoMap, DerivationError> {
    let ctx = b.ctx;
    let n = ctx.n();
    if i == 0 || i > n {
        return Err(AlgebraError::IndexOutOfRange { index: i, max: n }.into());
    }
    let max = ctx.t()[i - 1] - 1;
    if d == 0 || d > max {
        return Err(DerivationError::PowerOutOfRange { i, d, max });
    }
    let step = ctx.p().pow(d);
    let lower = |idx: u32| {
        let m = ctx.monomial(idx);
        if m.alpha()[i - 1] < step {
            return None;
        }
        let mut alpha = m.alpha().to_vec();
        alpha[i - 1] -= step;
        Some((ctx.index_of_parts(&alpha, m.odd_mask()), Fp::ONE))
    };
    let images: Vec<SuperElement> = b.basis.iter().map(|x| ctx.map_terms(x, lower)).collect();
    let shift = GradeKey { deg: -(step as i32), lie_parity: 0, weight: [0; MAX_N] };
    EndoMap::from_images(b, format!("d{i}^{step}"), shift, images)
}

fn law_holds(b: &AlgebraBasis, phi: &EndoMap, k: usize, l: usize, ab: &SuperElement) -> bool {
    let ctx = b.ctx;
    let f = ctx.field();
    let lhs = phi.apply(b, ab);
    let s = f.sign(phi.shift.lie_parity == 1 && b.lie_parity(k));
    let rhs = ctx.axpy(s, &ctx.br(&b.basis[k], &phi.images[l]), &ctx.br(&phi.images[k], &b.basis[l]));
    lhs == rhs
}

/// Tests `φ([a, b]) = [φa, b] + (-1)^{p(φ)p(a)} [a, φb]` on basis pairs for
/// each map. With `samples == 0` every unordered pair is tried (enough by
/// skew-symmetry); otherwise `samples` seeded random pairs.
pub fn check_superderivations(
    b: &AlgebraBasis,
    maps: &[&EndoMap],
    samples: usize,
    seed: u64,
) -> Vec<Result<(), DerivationError>> {
    let mut out: Vec<Result<(), DerivationError>> = maps.iter().map(|_| Ok(())).collect();
    let dim = b.dim();
    let visit = |k: usize, l: usize, out: &mut Vec<Result<(), DerivationError>>| {
        let ab = b.ctx.br(&b.basis[k], &b.basis[l]);
        for (slot, phi) in out.iter_mut().zip(maps) {
            if slot.is_ok() && !law_holds(b, phi, k, l, &ab) {
                *slot = Err(DerivationError::NotDerivation {
                    name: phi.name.clone(),
                    left: b.ctx.render(&b.basis[k]),
                    right: b.ctx.render(&b.basis[l]),
                });
            }
        }
    };
    if dim == 0 {
        return out;
    }
    if samples == 0 {
        for k in 0..dim {
            for l in k..dim {
                visit(k, l, &mut out);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let k = rng.gen_range(0..dim);
            let l = rng.gen_range(0..dim);
            visit(k, l, &mut out);
        }
    }
    out
}

pub fn is_superderivation(b: &AlgebraBasis, phi: &EndoMap, samples: usize, seed: u64) -> bool {
    check_superderivations(b, &[phi], samples, seed).pop().is_some_and(|r| r.is_ok())
}

/// The law on `gens × basis`. When `gens` generates `𝔤` this is a full
/// proof, since the elements satisfying the law against every `b` form a
/// subalgebra.
pub fn check_on_generators(b: &AlgebraBasis, phi: &EndoMap, gens: &[SuperElement]) -> Result<(), DerivationError> {
    let ctx = b.ctx;
    let f = ctx.field();
    let phi_gens: Vec<SuperElement> = gens.iter().map(|g| phi.apply(b, g)).collect();
    for (g, pg) in gens.iter().zip(&phi_gens) {
        let pa = ctx.lie_parity(g) == Parity::Odd;
        let s = f.sign(phi.shift.lie_parity == 1 && pa);
        for (l, x) in b.basis.iter().enumerate() {
            let lhs = phi.apply(b, &ctx.br(g, x));
            let rhs = ctx.axpy(s, &ctx.br(g, &phi.images[l]), &ctx.br(pg, x));
            if lhs != rhs {
                return Err(DerivationError::NotDerivation {
                    name: phi.name.clone(),
                    left: ctx.render(g),
                    right: ctx.render(x),
                });
            }
        }
    }
    Ok(())
}

/// Inner derivations `ad 𝔤_K`, one echelon per shift key, built on demand.
pub struct InnerSpan<'b, 'a> {
    b: &'b AlgebraBasis<'a>,
    cache: HashMap<GradeKey, Echelon>,
}

impl<'b, 'a> InnerSpan<'b, 'a> {
    pub fn new(b: &'b AlgebraBasis<'a>) -> Self {
        InnerSpan { b, cache: HashMap::new() }
    }

    fn ncols(&self) -> u32 {
        let total = self.b.dim() as u64 * self.b.ctx.dim() as u64;
        u32::try_from(total).expect("flattened map width fits in u32")
    }

    fn echelon(&mut self, key: &GradeKey) -> &Echelon {
        let b = self.b;
        let ncols = self.ncols();
        self.cache.entry(*key).or_insert_with(|| {
            let mut ech = Echelon::new(*b.ctx.field(), ncols);
            for &k in b.block(key) {
                let images: Vec<SuperElement> = b.basis.iter().map(|x| b.ctx.br(&b.basis[k], x)).collect();
                let m = EndoMap { name: String::new(), shift: *key, images };
                ech.insert(&m.flatten(b.ctx.dim() as u32));
            }
            ech
        })
    }

    /// Whether `φ` is inner.
    pub fn contains(&mut self, phi: &EndoMap) -> bool {
        let n = self.b.ctx.dim() as u32;
        let v = phi.flatten(n);
        self.echelon(&phi.shift).contains(&v)
    }

    /// `φ ≡ ψ` modulo inner derivations.
    pub fn congruent(&mut self, phi: &EndoMap, psi: &EndoMap) -> bool {
        let f = self.b.ctx.field();
        let diff = EndoMap::combination(self.b, "diff", &[(Fp::ONE, phi), (f.neg(Fp::ONE), psi)]);
        self.contains(&diff)
    }

    /// Rank of the maps modulo inner derivations, summed over shift blocks.
    pub fn rank_mod(&mut self, maps: &[&EndoMap]) -> usize {
        let n = self.b.ctx.dim() as u32;
        let mut by_shift: BTreeMap<GradeKey, Vec<&EndoMap>> = BTreeMap::new();
        for m in maps {
            by_shift.entry(m.shift).or_default().push(m);
        }
        let mut total = 0;
        for (key, group) in by_shift {
            let mut ech = self.echelon(&key).clone();
            let base = ech.rank();
            for m in group {
                ech.insert(&m.flatten(n));
            }
            total += ech.rank() - base;
        }
        total
    }
}

/// Kinds of the candidate outer derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OuterKind {
    /// `ad X(i_1..i_r)`.
    X(Vec<usize>),
    /// `ad y` for a top-set element `y = x^(α) x^u x_{2n+1}`.
    Top { alpha: Vec<u32>, u: Vec<usize> },
    /// `ad(x_1 x_{1'})`.
    H1,
    /// `∂_i^{p^d}`.
    PartialPower { i: usize, d: u32 },
    /// `ad G`, present when `nλ = -1`.
    G,
}

#[derive(Clone, Debug)]
pub struct OuterMember {
    pub kind: OuterKind,
    pub element: Option<SuperElement>,
    pub map: EndoMap,
}

/// Candidate outer derivations: `ad` of the `X` family, of the top set, of
/// `h_1` and (when `δ'`) of `G`, plus the divided-power shifts `∂_i^{p^d}`.
pub fn outer_family(b: &AlgebraBasis) -> Result<Vec<OuterMember>, DerivationError> {
    let ctx = b.ctx;
    let n = ctx.n();
    let mut out = Vec::new();
    let push_ad = |kind: OuterKind, el: SuperElement, out: &mut Vec<OuterMember>| -> Result<(), DerivationError> {
        let map = ad_endo(b, &el)?;
        out.push(OuterMember { kind, element: Some(el), map });
        Ok(())
    };
    for x in ctx.x_family() {
        push_ad(OuterKind::X(x.label.tuple.clone().unwrap_or_default()), x.element, &mut out)?;
    }
    let sets = ctx.build_s_sets();
    for y in &sets.sets[4] {
        push_ad(OuterKind::Top { alpha: y.label.alpha.clone(), u: y.label.u.clone() }, y.element.clone(), &mut out)?;
    }
    let h1 = ctx.mul(&ctx.var(1)?, &ctx.var(n + 1)?);
    push_ad(OuterKind::H1, h1, &mut out)?;
    for i in 1..=n {
        for d in 1..ctx.t()[i - 1] {
            out.push(OuterMember { kind: OuterKind::PartialPower { i, d }, element: None, map: partial_power_endo(b, i, d)? });
        }
    }
    if ctx.delta_prime() {
        push_ad(OuterKind::G, ctx.exceptional_g(), &mut out)?;
    }
    Ok(out)
}

/// One relation of the outer-derivation algebra, checked modulo `ad 𝔤`.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
    /// When the relation is `[φ, ψ] ≡ c·χ`, the `c` that actually works.
    pub observed: Option<u32>,
}

fn scalar_mod_inner(inner: &mut InnerSpan, b: &AlgebraBasis, lhs: &EndoMap, rhs: &EndoMap) -> Option<u32> {
    let f = b.ctx.field();
    (0..b.ctx.p()).find(|&c| {
        let scaled = EndoMap::combination(b, "c", &[(f.elem(c as i64), rhs)]);
        lhs.shift == rhs.shift && inner.congruent(lhs, &scaled)
    })
}

/// Checks the bracket relations among the outer family:
/// `[ad h_1, ad a] ≡ ad a` for `a` in the `X` family and the top set,
/// `[ad h_1, ad G] ≡ 2 ad G`, `[∂-power, anything] ≡ 0`, and
/// `[ad X(i_1..i_r), ad y] ≡ δ' sgn(i'_{r+1..n}, i'_{2..r}) ad G` when the
/// tuple is the complement of the `α`-support of `y`, and `≡ 0` otherwise;
/// the top set, the `X` family, and either against `ad G` commute mod `ad 𝔤`.
pub fn check_outer_relations(b: &AlgebraBasis, family: &[OuterMember]) -> Result<Vec<RelationCheck>, DerivationError> {
    let ctx = b.ctx;
    let f = ctx.field();
    let n = ctx.n();
    let mut inner = InnerSpan::new(b);
    let mut out = Vec::new();
    let h1 = family.iter().find(|m| m.kind == OuterKind::H1).map(|m| &m.map);
    let g_map = if ctx.delta_prime() {
        Some(ad_endo(b, &ctx.exceptional_g())?)
    } else {
        None
    };
    let mut record = |relation: String, lhs: &EndoMap, rhs: &EndoMap, c: Fp, inner: &mut InnerSpan| {
        let target = EndoMap::combination(b, "rhs", &[(c, rhs)]);
        let holds = lhs.shift == target.shift && inner.congruent(lhs, &target);
        let observed = if holds { Some(c.value()) } else { scalar_mod_inner(inner, b, lhs, rhs) };
        out.push(RelationCheck { relation, holds, observed });
    };
    if let Some(h) = h1 {
        for m in family {
            let c = match m.kind {
                OuterKind::X(_) | OuterKind::Top { .. } => Fp::ONE,
                OuterKind::G => f.elem(2),
                _ => continue,
            };
            let lhs = EndoMap::commutator(b, h, &m.map);
            let factor = if c == Fp::ONE { String::new() } else { format!("{} ", c.value()) };
            record(format!("[ad h1, {}] = {factor}{}", m.map.name, m.map.name), &lhs, &m.map, c, &mut inner);
        }
    }
    for pp in family.iter().filter(|m| matches!(m.kind, OuterKind::PartialPower { .. })) {
        for m in family {
            let lhs = EndoMap::commutator(b, &pp.map, &m.map);
            let zero = EndoMap::combination(b, "0", &[(Fp::ZERO, &lhs)]);
            record(format!("[{}, {}] = 0", pp.map.name, m.map.name), &lhs, &zero, Fp::ONE, &mut inner);
        }
    }
    for x in family {
        let OuterKind::X(tuple) = &x.kind else { continue };
        for y in family {
            let OuterKind::Top { alpha, .. } = &y.kind else { continue };
            let support: Vec<usize> = (1..=n).filter(|&j| alpha[j - 1] != 0).collect();
            let complement: Vec<usize> = (1..=n).filter(|j| !support.contains(j)).collect();
            let lhs = EndoMap::commutator(b, &x.map, &y.map);
            let pairs = *tuple == complement;
            match (&g_map, pairs) {
                (Some(g), true) => {
                    let rest: Vec<usize> = (1..=n).filter(|i| !tuple.contains(i)).collect();
                    let order: Vec<usize> = rest.iter().chain(tuple.iter().skip(1)).copied().collect();
                    let s = sgn(&order).map_err(|_| AlgebraError::NotIncreasing(order.clone()))?;
                    let c = f.elem(s as i64);
                    record(format!("[{}, {}] = {} ad G", x.map.name, y.map.name, s), &lhs, g, c, &mut inner);
                }
                _ => {
                    let zero = EndoMap::combination(b, "0", &[(Fp::ZERO, &lhs)]);
                    record(format!("[{}, {}] = 0", x.map.name, y.map.name), &lhs, &zero, Fp::ONE, &mut inner);
                }
            }
        }
    }
    let zero_rel = |a: &OuterMember, c: &OuterMember, inner: &mut InnerSpan, out: &mut Vec<RelationCheck>| {
        let lhs = EndoMap::commutator(b, &a.map, &c.map);
        let holds = inner.contains(&lhs);
        let observed = if holds { Some(0) } else { None };
        out.push(RelationCheck { relation: format!("[{}, {}] = 0", a.map.name, c.map.name), holds, observed });
    };
    let tops: Vec<&OuterMember> = family.iter().filter(|m| matches!(m.kind, OuterKind::Top { .. })).collect();
    let xs: Vec<&OuterMember> = family.iter().filter(|m| matches!(m.kind, OuterKind::X(_))).collect();
    for group in [&tops, &xs] {
        for (a, first) in group.iter().enumerate() {
            for second in &group[a..] {
                zero_rel(first, second, &mut inner, &mut out);
            }
        }
    }
    if let Some(g) = family.iter().find(|m| m.kind == OuterKind::G) {
        for a in tops.iter().chain(&xs) {
            zero_rel(a, g, &mut inner, &mut out);
        }
    }
    Ok(out)
}

/// `{f ∈ O | [f, y] ∈ 𝔤 for all y ∈ gens}`; with generators of `𝔤` this is
/// the normalizer, since `ad f` then preserves all brackets of generators.
pub fn normalizer(ctx: &AlgebraContext, g: &Subspace, gens: &[SuperElement]) -> Result<Subspace, DerivationError> {
    solve_by_blocks(ctx, gens, Some(g))
}

/// `{f ∈ O | [f, y] = 0 for all y ∈ gens}`.
pub fn centralizer(ctx: &AlgebraContext, gens: &[SuperElement]) -> Result<Subspace, DerivationError> {
    solve_by_blocks(ctx, gens, None)
}

fn solve_by_blocks(ctx: &AlgebraContext, gens: &[SuperElement], modulo: Option<&Subspace>) -> Result<Subspace, DerivationError> {
    for y in gens {
        ctx.check(y)?;
    }
    let n_mono = ctx.dim() as u64;
    let width = n_mono * gens.len() as u64;
    let ncols = u32::try_from(width).map_err(|_| AlgebraError::TooLarge(width))?;
    let mut blocks: BTreeMap<GradeKey, Vec<u32>> = BTreeMap::new();
    for i in 0..ctx.dim() as u32 {
        blocks.entry(*ctx.key_of(i)).or_default().push(i);
    }
    let mut found = Vec::new();
    for domain in blocks.values() {
        let kernel = kernel_of_map(ctx, domain.iter().copied(), ncols, |i| {
            let x = ctx.basis_element(i);
            let mut row = Vec::new();
            for (yi, y) in gens.iter().enumerate() {
                let w = ctx.br(&x, y);
                let w = match modulo {
                    Some(g) => g.reduce(ctx, &w),
                    None => w,
                };
                row.extend(w.terms().iter().map(|&(m, c)| (yi as u32 * n_mono as u32 + m, c)));
            }
            row
        });
        found.extend(kernel.basis(ctx));
    }
    Ok(span_of(ctx, &found)?)
}

/// Dimension of the space of superderivations of `𝔤` of `Z`-degree
/// `shift_deg`, solved key block by key block.
///
/// The law is imposed on `gens × basis`; `gens` must generate `𝔤` and be
/// homogeneous.
pub fn graded_der_dimension(b: &AlgebraBasis, gens: &[SuperElement], shift_deg: i32) -> Result<usize, DerivationError> {
    let ctx = b.ctx;
    let f = ctx.field();
    let p = ctx.p();
    let dim = b.dim();
    let mut gen_keys = Vec::with_capacity(gens.len());
    let mut gen_coords = Vec::with_capacity(gens.len());
    for g in gens {
        if !b.space.contains(g) {
            return Err(DerivationError::NotNormalizing { element: ctx.render(g), witness: "itself".into() });
        }
        gen_keys.push(ctx.key(g).ok_or(AlgebraError::NotHomogeneous("generator"))?);
        gen_coords.push(b.coords(g));
    }
    // [g, b_l] in coordinates, for every generator and basis vector.
    let gen_br: Vec<Vec<Vec<(usize, Fp)>>> =
        gens.iter().map(|g| b.basis.iter().map(|x| b.coords(&ctx.br(g, x))).collect()).collect();
    let mut pair_br: HashMap<(usize, usize), Vec<(usize, Fp)>> = HashMap::new();

    let mut shifts = BTreeSet::new();
    for src in b.blocks.keys() {
        for dst in b.blocks.keys() {
            if dst.deg - src.deg == shift_deg {
                shifts.insert(key_sub(dst, src, p));
            }
        }
    }
    let mut total = 0;
    for shift in shifts {
        let target = |k: usize| b.block(&b.keys[k].add(&shift, p));
        let mut offset = vec![usize::MAX; dim];
        let mut unknowns = 0usize;
        for (k, o) in offset.iter_mut().enumerate() {
            let t = target(k).len();
            if t > 0 {
                *o = unknowns;
                unknowns += t;
            }
        }
        if unknowns == 0 {
            continue;
        }
        let col = |m: usize, r: usize| (offset[m] + b.block_pos[r]) as u32;
        let mut ech = Echelon::new(*f, unknowns as u32);
        'gens: for (gi, gk) in gen_keys.iter().enumerate() {
            let s = f.sign(shift.lie_parity == 1 && gk.lie_parity == 1);
            let neg_s = f.neg(s);
            let tg = b.block(&gk.add(&shift, p)).to_vec();
            for l in 0..dim {
                let tl = target(l);
                let gb = &gen_br[gi][l];
                let t1 = !gb.is_empty() && !target(gb[0].0).is_empty();
                if !t1 && tg.is_empty() && tl.is_empty() {
                    continue;
                }
                let mut entries: Vec<(usize, u32, Fp)> = Vec::new();
                // φ([g, b_l])
                for &(m, c) in gb {
                    for &r in target(m) {
                        entries.push((r, col(m, r), c));
                    }
                }
                // -[φ(g), b_l]
                for &(m, a) in &gen_coords[gi] {
                    for &r in &tg {
                        let br = pair_br
                            .entry((r, l))
                            .or_insert_with(|| b.coords(&ctx.br(&b.basis[r], &b.basis[l])));
                        for &(row, c) in br.iter() {
                            entries.push((row, col(m, r), f.neg(f.mul(a, c))));
                        }
                    }
                }
                // -s [g, φ(b_l)]
                for &r in tl {
                    for &(row, c) in &gen_br[gi][r] {
                        entries.push((row, col(l, r), f.mul(neg_s, c)));
                    }
                }
                entries.sort_unstable_by_key(|e| (e.0, e.1));
                let mut start = 0;
                while start < entries.len() {
                    let row = entries[start].0;
                    let mut v: SparseVec = Vec::new();
                    while start < entries.len() && entries[start].0 == row {
                        let (_, c, x) = entries[start];
                        match v.last_mut() {
                            Some(last) if last.0 == c => last.1 = f.add(last.1, x),
                            _ => v.push((c, x)),
                        }
                        start += 1;
                    }
                    v.retain(|e| !e.1.is_zero());
                    if !v.is_empty() {
                        ech.insert(&v);
                    }
                }
                if ech.rank() == unknowns {
                    break 'gens;
                }
            }
        }
        total += unknowns - ech.rank();
    }
    Ok(total)
}

/// Comparison of three predictions for the eigenvalue of `ad h_i` on a
/// monomial `f` of `O`: the closed form with `f_1`-coefficient
/// `δ_{i'} - δ_i (α_i + δ_{i'})`, the weight `δ_{i' ∈ u} - α_i`, and the
/// actual bracket.
#[derive(Clone, Debug, Default)]
pub struct HActionReport {
    pub instances: usize,
    /// Monomials that are eigenvectors at all.
    pub eigen: usize,
    pub closed_form_matches: usize,
    pub weight_matches: usize,
    /// Failures of the closed form, all with `α_i ≥ 1`, `i' ∈ u`, no `x_{2n+1}`.
    pub closed_form_failures: Vec<String>,
}

pub fn check_h_action(ctx: &AlgebraContext) -> Result<HActionReport, DerivationError> {
    let f = ctx.field();
    let n = ctx.n();
    let mut rep = HActionReport::default();
    for i in 1..=n {
        let h = ctx.mul(&ctx.var(i)?, &ctx.var(i + n)?);
        for (idx, m) in ctx.basis().iter().enumerate() {
            let x = ctx.basis_element(idx as u32);
            let got = ctx.br(&h, &x);
            rep.instances += 1;
            let ai = m.alpha()[i - 1] as i64;
            let d_prime = (m.odd_mask() >> (i - 1) & 1) as i64;
            let d_i = (ai > 0) as i64;
            let closed = if m.has_contact() { d_prime - d_i * ai } else { d_prime - d_i * (ai + d_prime) };
            let weight = d_prime - ai;
            let eigen = got.is_zero() || got.terms().len() == 1 && got.terms()[0].0 == idx as u32;
            if !eigen {
                continue;
            }
            rep.eigen += 1;
            let value = got.coefficient(idx as u32);
            if value == f.elem(closed) {
                rep.closed_form_matches += 1;
            } else {
                rep.closed_form_failures.push(format!("h{i} on {}", render_mono(m)));
            }
            if value == f.elem(weight) {
                rep.weight_matches += 1;
            }
        }
    }
    Ok(rep)
}

fn render_mono(m: &Monomial) -> String {
    m.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::derived_series;

    fn setup(lambda: i64) -> (AlgebraContext, Subspace) {
        let ctx = AlgebraContext::new(5, 3, &[1, 1, 1], lambda).unwrap();
        let g = derived_series(&ctx, 0, 7).unwrap().g;
        (ctx, g)
    }

    #[test]
    fn ad_of_inner_element_is_derivation() {
        let (ctx, g) = setup(2);
        let b = AlgebraBasis::new(&ctx, &g).unwrap();
        let m = ad_endo(&b, &b.basis()[17]).unwrap();
        assert!(is_superderivation(&b, &m, 3000, 1));
        let h1 = ctx.mono(&[1, 0, 0], &[4], false).unwrap();
        let m = ad_endo(&b, &h1).unwrap();
        assert!(is_superderivation(&b, &m, 3000, 1));
        assert!(!InnerSpan::new(&b).contains(&m));
    }

    #[test]
    fn identity_is_not_a_derivation() {
        let (ctx, g) = setup(2);
        let b = AlgebraBasis::new(&ctx, &g).unwrap();
        assert!(!is_superderivation(&b, &identity_endo(&b), 500, 2));
    }

    #[test]
    fn partial_power_needs_room() {
        let ctx = AlgebraContext::new(5, 3, &[2, 1, 1], 0).unwrap();
        let g = Subspace::full(&ctx);
        let b = AlgebraBasis::new(&ctx, &g).unwrap();
        assert!(partial_power_endo(&b, 1, 1).is_ok());
        assert!(matches!(partial_power_endo(&b, 2, 1), Err(DerivationError::PowerOutOfRange { i: 2, d: 1, max: 0 })));
    }

    #[test]
    fn negative_degree_derivations() {
        let (ctx, g) = setup(2);
        let b = AlgebraBasis::new(&ctx, &g).unwrap();
        let gens = ctx.generators();
        assert_eq!(graded_der_dimension(&b, &gens, -2).unwrap(), 1);
        assert_eq!(graded_der_dimension(&b, &gens, -3).unwrap(), 0);
        assert_eq!(graded_der_dimension(&b, &gens, -4).unwrap(), 0);
    }

    #[test]
    fn outer_family_rank() {
        let (ctx, g) = setup(2);
        let b = AlgebraBasis::new(&ctx, &g).unwrap();
        let fam = outer_family(&b).unwrap();
        let maps: Vec<&EndoMap> = fam.iter().map(|m| &m.map).collect();
        assert_eq!(maps.len(), 5);
        assert_eq!(InnerSpan::new(&b).rank_mod(&maps), 5);
    }
}
