//! The associative superalgebra `O = O(n; t) ⊗ Λ(n+1)`.
//!
//! Even variables `x_1..x_n` carry divided powers `x^(α)` with `α_i ≤ p^{t_i} - 1`;
//! odd variables `x_{n+1}..x_{2n+1}` are exterior generators. Every basis monomial
//! is stored in the normal form `x^(α) x^u x_{2n+1}^ε` with odd factors in
//! ascending index order, so elements compare by their coefficient maps.
//!
//! Odd `∂_r` is the *left* superderivative: removing `x_r` costs the sign
//! `(-1)^k`, `k` the number of odd factors standing before it.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use crate::error::AlgebraError;
use crate::field::{Fp, PrimeField};

/// Largest supported number of even variables for explicit construction.
pub const MAX_N: usize = 10;
/// Largest supported basis size for explicit construction.
pub const MAX_BASIS: u64 = 1 << 22;

static NEXT_CONTEXT_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Inhomogeneous,
}

/// A basis label `x^(α) x^u x_{2n+1}^ε`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Vec<u32>,
    /// Bit `k` stands for `x_{n+1+k}`; bit `n` is `x_{2n+1}`.
    odd: u32,
}

impl Monomial {
    /// Builds a label from the multi-index, the odd indices in `n+1..=2n`
    /// (any order, no repeats) and the contact flag.
    pub fn new(alpha: Vec<u32>, odd_indices: &[usize], contact: bool) -> Result<Self, AlgebraError> {
        let n = alpha.len();
        let mut odd = 0u32;
        let mut sorted = odd_indices.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(AlgebraError::BadOddSet(odd_indices.to_vec()));
            }
        }
        for &i in &sorted {
            if i <= n || i > 2 * n {
                return Err(AlgebraError::BadOddSet(odd_indices.to_vec()));
            }
            odd |= 1 << (i - n - 1);
        }
        if contact {
            odd |= 1 << n;
        }
        Ok(Monomial { alpha, odd })
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// Odd mask including the `x_{2n+1}` bit (bit `n`).
    pub fn odd_mask(&self) -> u32 {
        self.odd
    }

    /// Odd indices from `n+1..=2n`, ascending (excludes `x_{2n+1}`).
    pub fn odd_indices(&self) -> Vec<usize> {
        let n = self.n();
        (0..n).filter(|k| self.odd >> k & 1 == 1).map(|k| n + 1 + k).collect()
    }

    pub fn has_contact(&self) -> bool {
        self.odd >> self.n() & 1 == 1
    }

    pub fn abs_alpha(&self) -> u32 {
        self.alpha.iter().sum()
    }

    /// `|u|`, not counting `x_{2n+1}`.
    pub fn u_len(&self) -> u32 {
        (self.odd & !(1 << self.n())).count_ones()
    }

    pub fn parity(&self) -> Parity {
        if self.odd.count_ones().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(zdeg, cdeg, gdeg)`: the `Z`-degree ignoring `x_{2n+1}`, the contact
    /// degree weighting `x_{2n+1}` by two, and the degree of the image in the
    /// graded Lie superalgebra (`cdeg - 2`).
    pub fn degrees(&self) -> (u32, u32, i32) {
        let z = self.abs_alpha() + self.u_len();
        let c = z + if self.has_contact() { 2 } else { 0 };
        (z, c, c as i32 - 2)
    }

    /// Rendering such as `x1^(2)*x4*x7`; the unit renders as `1`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, &a) in self.alpha.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^({})", i + 1, a)),
            }
        }
        let n = self.n();
        for k in 0..=n {
            if self.odd >> k & 1 == 1 {
                parts.push(format!("x{}", n + 1 + k));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Joint grading of a homogeneous element: `Z`-degree, parity in the Lie
/// superalgebra (`p(a) + 1`), and the eigenvalues of `ad(x_i x_{i'})`.
///
/// All three are additive under the bracket.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradeKey {
    pub deg: i32,
    pub lie_parity: u8,
    pub weight: [u8; MAX_N],
}

impl GradeKey {
    pub fn add(&self, other: &GradeKey, p: u32) -> GradeKey {
        let mut weight = [0u8; MAX_N];
        for (k, w) in weight.iter_mut().enumerate() {
            *w = ((self.weight[k] as u32 + other.weight[k] as u32) % p) as u8;
        }
        GradeKey {
            deg: self.deg + other.deg,
            lie_parity: self.lie_parity ^ other.lie_parity,
            weight,
        }
    }
}

/// A sparse GF(p)-combination of basis monomials, indexed by their position
/// in the context's fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperElement {
    ctx: u32,
    terms: Vec<(u32, Fp)>,
}

impl SuperElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(basis index, coefficient)` pairs in increasing index order.
    pub fn terms(&self) -> &[(u32, Fp)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn context_id(&self) -> u32 {
        self.ctx
    }

    pub fn coefficient(&self, index: u32) -> Fp {
        match self.terms.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(k) => self.terms[k].1,
            Err(_) => Fp::ZERO,
        }
    }

    pub fn leading_index(&self) -> Option<u32> {
        self.terms.first().map(|&(i, _)| i)
    }
}

/// Parameters and monomial tables of one algebra `O(n, n+1; t)` with a fixed `λ`.
#[derive(Debug)]
pub struct AlgebraContext {
    id: u32,
    field: PrimeField,
    n: usize,
    t: Vec<u32>,
    lambda: Fp,
    pi: Vec<u32>,
    radix: Vec<u64>,
    basis: Vec<Monomial>,
    index_of_code: Vec<u32>,
    zdeg: Vec<u32>,
    keys: Vec<GradeKey>,
    binom_width: usize,
    binom_table: Vec<Fp>,
}

impl AlgebraContext {
    pub fn new(p: u32, n: usize, t: &[u32], lambda: i64) -> Result<Self, AlgebraError> {
        let field = PrimeField::new(p)?;
        if n < 3 {
            return Err(AlgebraError::RankTooSmall(n));
        }
        if t.len() != n || t.contains(&0) {
            return Err(AlgebraError::BadTuple { expected: n, got: t.to_vec() });
        }
        if n > MAX_N {
            return Err(AlgebraError::TooLarge(u64::MAX));
        }
        let mut size: u64 = 1 << (n + 1);
        let mut pi = Vec::with_capacity(n);
        for &ti in t {
            let ppow = (p as u64).checked_pow(ti).filter(|&v| v <= MAX_BASIS);
            let ppow = ppow.ok_or(AlgebraError::TooLarge(u64::MAX))?;
            pi.push((ppow - 1) as u32);
            size = size.saturating_mul(ppow);
        }
        if size > MAX_BASIS {
            return Err(AlgebraError::TooLarge(size));
        }
        let mut radix = vec![0u64; n];
        let mut place = 1u64 << (n + 1);
        for i in (0..n).rev() {
            radix[i] = place;
            place *= pi[i] as u64 + 1;
        }

        let mut basis = Vec::with_capacity(size as usize);
        let mut alpha = vec![0u32; n];
        loop {
            for odd in 0..(1u32 << (n + 1)) {
                basis.push(Monomial { alpha: alpha.clone(), odd });
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if alpha[k] < pi[k] {
                    alpha[k] += 1;
                    break;
                }
                alpha[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX {
                break;
            }
        }
        basis.sort_by(deglex);

        let mut index_of_code = vec![u32::MAX; size as usize];
        for (idx, m) in basis.iter().enumerate() {
            let code = encode(&radix, &m.alpha, m.odd);
            index_of_code[code as usize] = idx as u32;
        }
        let zdeg = basis.iter().map(|m| m.degrees().0).collect();
        let keys = basis
            .iter()
            .map(|m| {
                let (_, _, g) = m.degrees();
                let mut weight = [0u8; MAX_N];
                for (i, w) in weight.iter_mut().enumerate().take(n) {
                    let has_prime = (m.odd >> i & 1) as i64;
                    *w = field.elem(has_prime - m.alpha[i] as i64).value() as u8;
                }
                let lie_parity = (m.odd.count_ones() as u8 + 1) & 1;
                GradeKey { deg: g, lie_parity, weight }
            })
            .collect();

        let max_pi = *pi.iter().max().unwrap() as usize;
        let binom_width = max_pi + 1;
        let mut binom_table = vec![Fp::ZERO; binom_width * binom_width];
        for a in 0..binom_width {
            for b in 0..binom_width - a {
                binom_table[a * binom_width + b] = field.binom((a + b) as u64, a as u64);
            }
        }

        Ok(AlgebraContext {
            id: NEXT_CONTEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
            field,
            n,
            t: t.to_vec(),
            lambda: field.elem(lambda),
            pi,
            radix,
            basis,
            index_of_code,
            zdeg,
            keys,
            binom_width,
            binom_table,
        })
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn lambda(&self) -> Fp {
        self.lambda
    }

    /// `π_i = p^{t_i} - 1`.
    pub fn pi(&self) -> &[u32] {
        &self.pi
    }

    /// `n λ` as a field element.
    pub fn n_lambda(&self) -> Fp {
        self.field.mul(self.field.elem(self.n as i64), self.lambda)
    }

    /// Number of basis monomials, `2^{n+1} p^{|t|}`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial(&self, index: u32) -> &Monomial {
        &self.basis[index as usize]
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn key_of(&self, index: u32) -> &GradeKey {
        &self.keys[index as usize]
    }

    pub fn zdeg_of(&self, index: u32) -> u32 {
        self.zdeg[index as usize]
    }

    /// Deterministic degree-lexicographic enumeration, optionally filtered.
    pub fn enumerate_basis(&self, filter: Option<&dyn Fn(&Monomial) -> bool>) -> Vec<Monomial> {
        match filter {
            None => self.basis.clone(),
            Some(f) => self.basis.iter().filter(|m| f(m)).cloned().collect(),
        }
    }

    pub fn index_of(&self, m: &Monomial) -> Result<u32, AlgebraError> {
        if m.alpha.len() != self.n || m.odd >> (self.n + 1) != 0 {
            return Err(AlgebraError::ContextMismatch);
        }
        if m.alpha.iter().zip(&self.pi).any(|(a, p)| a > p) {
            return Err(AlgebraError::AlphaOutOfRange(m.alpha.clone()));
        }
        Ok(self.index_of_code[encode(&self.radix, &m.alpha, m.odd) as usize])
    }

    #[inline]
    pub(crate) fn index_of_parts(&self, alpha: &[u32], odd: u32) -> u32 {
        self.index_of_code[encode(&self.radix, alpha, odd) as usize]
    }

    // ----- element construction -----

    pub fn zero(&self) -> SuperElement {
        SuperElement { ctx: self.id, terms: Vec::new() }
    }

    pub fn one(&self) -> SuperElement {
        self.basis_element(0)
    }

    pub fn basis_element(&self, index: u32) -> SuperElement {
        SuperElement { ctx: self.id, terms: vec![(index, Fp::ONE)] }
    }

    pub fn element_of(&self, m: &Monomial) -> Result<SuperElement, AlgebraError> {
        Ok(self.basis_element(self.index_of(m)?))
    }

    /// The generator `x_r`, `r ∈ 1..=2n+1`.
    pub fn var(&self, r: usize) -> Result<SuperElement, AlgebraError> {
        self.check_var(r)?;
        let mut alpha = vec![0u32; self.n];
        let mut odd = 0;
        if r <= self.n {
            alpha[r - 1] = 1;
        } else {
            odd = 1 << (r - self.n - 1);
        }
        Ok(self.basis_element(self.index_of_parts(&alpha, odd)))
    }

    /// `x^(α) x^u x_{2n+1}^ε` from its parts.
    pub fn mono(&self, alpha: &[u32], odd_indices: &[usize], contact: bool) -> Result<SuperElement, AlgebraError> {
        let m = Monomial::new(alpha.to_vec(), odd_indices, contact)?;
        if m.n() != self.n {
            return Err(AlgebraError::ContextMismatch);
        }
        self.element_of(&m)
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(u32, Fp)>) -> SuperElement {
        terms.sort_unstable_by_key(|&(i, _)| i);
        let mut out: Vec<(u32, Fp)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = self.field.add(last.1, c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|&(_, c)| !c.is_zero());
        SuperElement { ctx: self.id, terms: out }
    }

    pub(crate) fn element_from_sorted(&self, terms: Vec<(u32, Fp)>) -> SuperElement {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        SuperElement { ctx: self.id, terms }
    }

    pub fn scale(&self, c: Fp, a: &SuperElement) -> SuperElement {
        if c.is_zero() {
            return self.zero();
        }
        let terms = a.terms.iter().map(|&(i, v)| (i, self.field.mul(c, v))).collect();
        SuperElement { ctx: self.id, terms }
    }

    pub fn add(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        self.axpy(Fp::ONE, b, a)
    }

    pub fn sub(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        self.axpy(self.field.neg(Fp::ONE), b, a)
    }

    /// `y + c x`.
    pub fn axpy(&self, c: Fp, x: &SuperElement, y: &SuperElement) -> SuperElement {
        let f = &self.field;
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(x.terms.len() + y.terms.len());
        while i < x.terms.len() || j < y.terms.len() {
            let ord = match (x.terms.get(i), y.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    let v = f.mul(c, x.terms[i].1);
                    if !v.is_zero() {
                        out.push((x.terms[i].0, v));
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(y.terms[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(y.terms[j].1, f.mul(c, x.terms[i].1));
                    if !v.is_zero() {
                        out.push((y.terms[j].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SuperElement { ctx: self.id, terms: out }
    }

    /// `Σ c_k v_k`.
    pub fn combine<'a>(&self, parts: impl IntoIterator<Item = (Fp, &'a SuperElement)>) -> SuperElement {
        let mut terms = Vec::new();
        for (c, v) in parts {
            for &(i, x) in &v.terms {
                terms.push((i, self.field.mul(c, x)));
            }
        }
        self.from_terms(terms)
    }

    pub fn check(&self, a: &SuperElement) -> Result<(), AlgebraError> {
        if a.ctx == self.id {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    fn check_var(&self, r: usize) -> Result<(), AlgebraError> {
        if r == 0 || r > 2 * self.n + 1 {
            return Err(AlgebraError::IndexOutOfRange { index: r, max: 2 * self.n + 1 });
        }
        Ok(())
    }

    // ----- monomial kernels -----

    /// Product of two basis monomials as `(index, coefficient)`.
    #[inline]
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn mono_mul(&self, a: u32, b: u32) -> Option<(u32, Fp)> {
        let ma = &self.basis[a as usize];
        let mb = &self.basis[b as usize];
        if ma.odd & mb.odd != 0 {
            return None;
        }
        let mut coeff = Fp::ONE;
        let mut alpha = [0u32; MAX_N];
        for i in 0..self.n {
            let s = ma.alpha[i] + mb.alpha[i];
            if s > self.pi[i] {
                return None;
            }
            alpha[i] = s;
            let c = self.binom_table[ma.alpha[i] as usize * self.binom_width + mb.alpha[i] as usize];
            coeff = self.field.mul(coeff, c);
        }
        if coeff.is_zero() {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = mb.odd;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (ma.odd >> j >> 1).count_ones();
            rest &= rest - 1;
        }
        if swaps & 1 == 1 {
            coeff = self.field.neg(coeff);
        }
        let idx = self.index_of_parts(&alpha[..self.n], ma.odd | mb.odd);
        Some((idx, coeff))
    }

    /// `∂_r` of a basis monomial; `r` must be in range.
    #[inline]
    pub(crate) fn mono_partial(&self, r: usize, a: u32) -> Option<(u32, Fp)> {
        let m = &self.basis[a as usize];
        if r <= self.n {
            if m.alpha[r - 1] == 0 {
                return None;
            }
            let mut alpha = [0u32; MAX_N];
            alpha[..self.n].copy_from_slice(&m.alpha);
            alpha[r - 1] -= 1;
            Some((self.index_of_parts(&alpha[..self.n], m.odd), Fp::ONE))
        } else {
            let bit = r - self.n - 1;
            if m.odd >> bit & 1 == 0 {
                return None;
            }
            let before = (m.odd & ((1u32 << bit) - 1)).count_ones();
            let idx = self.index_of_parts(&m.alpha, m.odd & !(1 << bit));
            Some((idx, self.field.sign(before & 1 == 1)))
        }
    }

    /// `∇_i(x^(α) x^u) = x^(α+ε_i) x_{i'} x^u`, `i ∈ 1..=n`.
    #[inline]
    pub(crate) fn mono_nabla(&self, i: usize, a: u32) -> Option<(u32, Fp)> {
        let m = &self.basis[a as usize];
        let bit = i - 1;
        if m.alpha[i - 1] >= self.pi[i - 1] || m.odd >> bit & 1 == 1 {
            return None;
        }
        let mut alpha = [0u32; MAX_N];
        alpha[..self.n].copy_from_slice(&m.alpha);
        alpha[i - 1] += 1;
        // The index is raised literally, without a binomial factor.
        let before = (m.odd & ((1u32 << bit) - 1)).count_ones();
        let idx = self.index_of_parts(&alpha[..self.n], m.odd | (1 << bit));
        Some((idx, self.field.sign(before & 1 == 1)))
    }

    // ----- linear operators -----

    pub(crate) fn map_terms(&self, a: &SuperElement, f: impl Fn(u32) -> Option<(u32, Fp)>) -> SuperElement {
        let mut terms = Vec::with_capacity(a.terms.len());
        for &(i, c) in &a.terms {
            if let Some((j, d)) = f(i) {
                terms.push((j, self.field.mul(c, d)));
            }
        }
        self.from_terms(terms)
    }

    pub(crate) fn mul(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for &(i, c) in &a.terms {
            for &(j, d) in &b.terms {
                if let Some((k, e)) = self.mono_mul(i, j) {
                    terms.push((k, self.field.mul(self.field.mul(c, d), e)));
                }
            }
        }
        self.from_terms(terms)
    }

    /// The associative product.
    pub fn multiply(&self, a: &SuperElement, b: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn d(&self, r: usize, a: &SuperElement) -> SuperElement {
        self.map_terms(a, |i| self.mono_partial(r, i))
    }

    /// The partial superderivative `∂_r`, `r ∈ 1..=2n+1`.
    pub fn partial(&self, r: usize, a: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        self.check_var(r)?;
        Ok(self.d(r, a))
    }

    pub fn parity(&self, a: &SuperElement) -> Parity {
        let mut seen = (false, false);
        for &(i, _) in &a.terms {
            match self.basis[i as usize].parity() {
                Parity::Even => seen.0 = true,
                _ => seen.1 = true,
            }
        }
        match seen {
            (true, true) => Parity::Inhomogeneous,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// `(even part, odd part)`.
    pub fn split_parity(&self, a: &SuperElement) -> (SuperElement, SuperElement) {
        let (even, odd): (Vec<_>, Vec<_>) =
            a.terms.iter().partition(|&&(i, _)| self.basis[i as usize].parity() == Parity::Even);
        (self.element_from_sorted(even), self.element_from_sorted(odd))
    }

    /// Common grading key of all terms, if there is one.
    pub fn key(&self, a: &SuperElement) -> Option<GradeKey> {
        let first = *self.keys.get(a.terms.first()?.0 as usize)?;
        a.terms.iter().all(|&(i, _)| self.keys[i as usize] == first).then_some(first)
    }

    pub fn render(&self, a: &SuperElement) -> String {
        if a.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, &(i, c)) in a.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let m = self.basis[i as usize].render();
            if c == Fp::ONE {
                s.push_str(&m);
            } else if m == "1" {
                let _ = write!(s, "{c}");
            } else {
                let _ = write!(s, "{c}*{m}");
            }
        }
        s
    }
}

#[inline]
fn encode(radix: &[u64], alpha: &[u32], odd: u32) -> u64 {
    let mut code = odd as u64;
    for (a, r) in alpha.iter().zip(radix) {
        code += *a as u64 * r;
    }
    code
}

fn deglex(a: &Monomial, b: &Monomial) -> Ordering {
    let n = a.n();
    let u = |m: &Monomial| -> Vec<u32> { (0..n as u32).filter(|k| m.odd >> k & 1 == 1).collect() };
    a.degrees()
        .1
        .cmp(&b.degrees().1)
        .then_with(|| a.alpha.cmp(&b.alpha))
        .then_with(|| u(a).cmp(&u(b)))
        .then_with(|| a.has_contact().cmp(&b.has_contact()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> AlgebraContext {
        AlgebraContext::new(5, 3, &[1, 1, 1], 2).unwrap()
    }

    #[test]
    fn context_validation() {
        assert!(matches!(AlgebraContext::new(4, 3, &[1, 1, 1], 0), Err(AlgebraError::Field(_))));
        assert_eq!(AlgebraContext::new(5, 2, &[1, 1], 0).unwrap_err(), AlgebraError::RankTooSmall(2));
        assert!(matches!(AlgebraContext::new(5, 3, &[1, 1], 0), Err(AlgebraError::BadTuple { .. })));
        assert!(matches!(AlgebraContext::new(5, 3, &[1, 0, 1], 0), Err(AlgebraError::BadTuple { .. })));
    }

    #[test]
    fn basis_enumeration() {
        let c = ctx();
        assert_eq!(c.dim(), 2000);
        let filter = |m: &Monomial| m.odd_mask() == 0;
        assert_eq!(c.enumerate_basis(Some(&filter)).len(), 125);
        assert_eq!(c.basis()[0].render(), "1");
        for (k, m) in c.basis().iter().enumerate() {
            assert_eq!(c.index_of(m).unwrap() as usize, k);
        }
    }

    #[test]
    fn product_examples() {
        let c = ctx();
        let f = c.field();
        let x1 = c.mono(&[1, 0, 0], &[], false).unwrap();
        let x1_2 = c.mono(&[2, 0, 0], &[], false).unwrap();
        let x1_3 = c.mono(&[3, 0, 0], &[], false).unwrap();
        assert_eq!(c.multiply(&x1, &x1_2).unwrap(), c.scale(f.elem(3), &x1_3));
        let x4 = c.var(4).unwrap();
        let x5 = c.var(5).unwrap();
        let x45 = c.mono(&[0, 0, 0], &[4, 5], false).unwrap();
        assert_eq!(c.multiply(&x5, &x4).unwrap(), c.scale(f.elem(-1), &x45));
        assert!(c.multiply(&x4, &x4).unwrap().is_zero());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = ctx();
        let b = ctx();
        assert_eq!(a.multiply(&a.one(), &b.one()), Err(AlgebraError::ContextMismatch));
    }

    #[test]
    fn partial_examples() {
        let c = ctx();
        let f = c.field();
        let x1_3 = c.mono(&[3, 0, 0], &[], false).unwrap();
        let x1_2 = c.mono(&[2, 0, 0], &[], false).unwrap();
        assert_eq!(c.partial(1, &x1_3).unwrap(), x1_2);
        let x45 = c.mono(&[0, 0, 0], &[4, 5], false).unwrap();
        assert_eq!(c.partial(5, &x45).unwrap(), c.scale(f.elem(-1), &c.var(4).unwrap()));
        assert_eq!(c.partial(7, &c.var(7).unwrap()).unwrap(), c.one());
        assert!(matches!(c.partial(8, &c.one()), Err(AlgebraError::IndexOutOfRange { .. })));
        assert!(matches!(c.partial(0, &c.one()), Err(AlgebraError::IndexOutOfRange { .. })));
    }

    #[test]
    fn parity_examples() {
        let c = ctx();
        assert_eq!(c.parity(&c.mono(&[2, 0, 0], &[], false).unwrap()), Parity::Even);
        assert_eq!(c.parity(&c.mono(&[0, 0, 0], &[4], true).unwrap()), Parity::Even);
        let mixed = c.add(&c.var(1).unwrap(), &c.var(4).unwrap());
        assert_eq!(c.parity(&mixed), Parity::Inhomogeneous);
    }

    #[test]
    fn degree_examples() {
        let c = ctx();
        let m = Monomial::new(vec![2, 0, 0], &[4], false).unwrap();
        assert_eq!(m.degrees(), (3, 3, 1));
        assert_eq!(c.basis()[0].degrees(), (0, 0, -2));
        let x7 = Monomial::new(vec![0, 0, 0], &[], true).unwrap();
        assert_eq!(x7.degrees(), (0, 2, 0));
    }

    #[test]
    fn rendering() {
        let c = ctx();
        let m = c.mono(&[2, 0, 0], &[4], true).unwrap();
        assert_eq!(c.render(&m), "x1^(2)*x4*x7");
        let e = c.add(&c.scale(c.field().elem(3), &c.one()), &m);
        assert_eq!(c.render(&e), "3 + x1^(2)*x4*x7");
    }
}
