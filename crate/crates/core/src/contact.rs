//! Contact-type operators on `O` and the Lie superbracket
//! `[a, b] = D_KO(a)(b) - (-1)^{p(a)} 2 ∂_{2n+1}(a) b`.
//!
//! Operators carrying a `(-1)^{p(a)}` factor split their argument into
//! parity components first. `zd` is read as the `Z`-degree `|α| + |u|`
//! reduced mod p; nothing else makes the spanning coefficients consistent.
//!
//! The bracket shifts parity: `a ↦ D_KO(a)` is odd when `a` is even, so the
//! parity of `a` as an element of the Lie superalgebra is `p(a) + 1`.

use crate::error::AlgebraError;
use crate::field::Fp;
use crate::superalgebra::{AlgebraContext, Monomial, Parity, SuperElement};

/// The index sets `I` and `Ĩ` of a monomial, with `q = min Ĩ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub i_set: Vec<usize>,
    pub itilde: Vec<usize>,
    pub qmin: Option<usize>,
}

impl IndexReport {
    /// Membership in `D*`: both sets nonempty.
    pub fn in_dstar(&self) -> bool {
        !self.i_set.is_empty() && !self.itilde.is_empty()
    }
}

impl AlgebraContext {
    /// `i' = i + n` for `i ≤ n`, `i - n` otherwise.
    pub fn prime_index(&self, i: usize) -> Result<usize, AlgebraError> {
        let n = self.n();
        match i {
            _ if i >= 1 && i <= n => Ok(i + n),
            _ if i > n && i <= 2 * n => Ok(i - n),
            _ => Err(AlgebraError::IndexOutOfRange { index: i, max: 2 * n }),
        }
    }

    /// `μ(i)`: 0 on even variables, 1 on odd ones.
    pub fn mu(&self, i: usize) -> Result<u8, AlgebraError> {
        let n = self.n();
        match i {
            0 => Err(AlgebraError::IndexOutOfRange { index: 0, max: 2 * n + 1 }),
            _ if i <= n => Ok(0),
            _ if i <= 2 * n + 1 => Ok(1),
            _ => Err(AlgebraError::IndexOutOfRange { index: i, max: 2 * n + 1 }),
        }
    }

    #[inline]
    fn prime(&self, i: usize) -> usize {
        if i <= self.n() {
            i + self.n()
        } else {
            i - self.n()
        }
    }

    /// The Euler operator `Σ_{i ≤ 2n} x_i ∂_i`, i.e. multiplication by `zdeg`.
    pub fn euler(&self, a: &SuperElement) -> SuperElement {
        let f = self.field();
        self.map_terms(a, |i| Some((i, f.elem(self.zdeg_of(i) as i64))))
    }

    /// `Δ_i = ∂_i ∂_{i'}`, inner derivative first.
    pub fn delta_i(&self, i: usize, a: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        if i == 0 || i > self.n() {
            return Err(AlgebraError::IndexOutOfRange { index: i, max: self.n() });
        }
        Ok(self.d(i, &self.d(i + self.n(), a)))
    }

    /// `Δ = Σ_{i ≤ n} ∂_i ∂_{i'}`.
    pub fn laplacian(&self, a: &SuperElement) -> SuperElement {
        let n = self.n();
        let mut terms = Vec::new();
        for i in 1..=n {
            terms.extend_from_slice(self.d(i, &self.d(i + n, a)).terms());
        }
        self.from_terms(terms)
    }

    fn by_parity(&self, a: &SuperElement, mut f: impl FnMut(&SuperElement, bool) -> SuperElement) -> SuperElement {
        let (even, odd) = self.split_parity(a);
        let mut out = self.zero();
        if !even.is_zero() {
            out = f(&even, false);
        }
        if !odd.is_zero() {
            out = self.add(&out, &f(&odd, true));
        }
        out
    }

    /// `T_H(a)(b) = Σ_{i ≤ 2n} (-1)^{μ(i') p(a)} ∂_{i'}(a) ∂_i(b)`.
    pub fn t_h_apply(&self, a: &SuperElement, b: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.t_h(a, b))
    }

    pub(crate) fn t_h(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        let n = self.n();
        self.by_parity(a, |a, odd| {
            let mut acc = self.zero();
            for i in 1..=2 * n {
                let ip = self.prime(i);
                let sign = self.field().sign(odd && ip > n);
                let term = self.mul(&self.d(ip, a), &self.d(i, b));
                acc = self.axpy(sign, &term, &acc);
            }
            acc
        })
    }

    /// `D_KO(a)(b) = T_H(a)(b) + (-1)^{p(a)} ∂_{2n+1}(a) 𝔇(b) + (𝔇(a) - 2a) ∂_{2n+1}(b)`.
    pub fn d_ko_apply(&self, a: &SuperElement, b: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.d_ko(a, b))
    }

    pub(crate) fn d_ko(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        let f = self.field();
        let top = 2 * self.n() + 1;
        self.by_parity(a, |a, odd| {
            let th = self.t_h(a, b);
            let second = self.mul(&self.d(top, a), &self.euler(b));
            let da = self.axpy(f.elem(-2), a, &self.euler(a));
            let third = self.mul(&da, &self.d(top, b));
            self.add(&self.axpy(f.sign(odd), &second, &th), &third)
        })
    }

    /// `div_λ(a) = (-1)^{p(a)} 2 (Δ(a) + (𝔇 - nλ) ∂_{2n+1}(a))`.
    pub fn div_lambda(&self, a: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        Ok(self.div(a))
    }

    pub(crate) fn div(&self, a: &SuperElement) -> SuperElement {
        let f = self.field();
        let nl = self.n_lambda();
        let top = 2 * self.n() + 1;
        self.by_parity(a, |a, odd| {
            let d = self.d(top, a);
            let inner = self.axpy(f.neg(nl), &d, &self.euler(&d));
            let sum = self.add(&self.laplacian(a), &inner);
            self.scale(f.mul(f.sign(odd), f.elem(2)), &sum)
        })
    }

    /// `∇_i(x^(α) x^u) = x^(α+ε_i) x_{i'} x^u`; the contact factor rides along.
    pub fn nabla(&self, i: usize, a: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        if i == 0 || i > self.n() {
            return Err(AlgebraError::IndexOutOfRange { index: i, max: self.n() });
        }
        Ok(self.map_terms(a, |m| self.mono_nabla(i, m)))
    }

    /// `Γ_i^j = ∇_j Δ_i`.
    pub fn gamma(&self, i: usize, j: usize, a: &SuperElement) -> Result<SuperElement, AlgebraError> {
        let d = self.delta_i(i, a)?;
        self.nabla(j, &d)
    }

    /// `zd(x^(α) x^u) = |α| + |u| mod p`; undefined with an `x_{2n+1}` factor.
    pub fn zd(&self, m: &Monomial) -> Result<Fp, AlgebraError> {
        if m.has_contact() {
            return Err(AlgebraError::ContactFactor);
        }
        Ok(self.field().elem(m.degrees().0 as i64))
    }

    pub fn index_report(&self, m: &Monomial) -> IndexReport {
        let n = self.n();
        let mut i_set = Vec::new();
        let mut itilde = Vec::new();
        for i in 1..=n {
            let has_prime = m.odd_mask() >> (i - 1) & 1 == 1;
            let a = m.alpha()[i - 1];
            if a >= 1 && has_prime {
                i_set.push(i);
            }
            if a < self.pi()[i - 1] && !has_prime {
                itilde.push(i);
            }
        }
        let qmin = itilde.first().copied();
        IndexReport { i_set, itilde, qmin }
    }

    /// Splits `a = a0 x_j + a1` with `∂_j a0 = ∂_j a1 = 0`.
    pub fn xj_decompose(&self, a: &SuperElement, j: usize) -> Result<(SuperElement, SuperElement), AlgebraError> {
        self.check(a)?;
        let n = self.n();
        if j <= n || j > 2 * n + 1 {
            return Err(AlgebraError::NotOddIndex(j));
        }
        let bit = j - n - 1;
        let mut a0 = Vec::new();
        let mut a1 = Vec::new();
        for &(idx, c) in a.terms() {
            let m = self.monomial(idx);
            if m.odd_mask() >> bit & 1 == 1 {
                // Moving x_j to the right end passes every odd factor after it.
                let after = (m.odd_mask() >> bit >> 1).count_ones();
                let rest = self.index_of_parts(m.alpha(), m.odd_mask() & !(1 << bit));
                a0.push((rest, self.field().mul(c, self.field().sign(after & 1 == 1))));
            } else {
                a1.push((idx, c));
            }
        }
        Ok((self.from_terms(a0), self.from_terms(a1)))
    }

    /// The Lie superbracket on `O`.
    pub fn bracket(&self, a: &SuperElement, b: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.br(a, b))
    }

    /// The bracket straight from the operator definition; slow, kept as an oracle.
    pub fn bracket_by_definition(&self, a: &SuperElement, b: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let f = self.field();
        let top = 2 * self.n() + 1;
        let dko = self.d_ko(a, b);
        let corr = self.by_parity(a, |a, odd| {
            let t = self.mul(&self.d(top, a), b);
            self.scale(f.mul(f.sign(odd), f.elem(2)), &t)
        });
        Ok(self.sub(&dko, &corr))
    }

    pub(crate) fn br(&self, a: &SuperElement, b: &SuperElement) -> SuperElement {
        let mut terms = Vec::new();
        let f = self.field();
        for &(i, c) in a.terms() {
            for &(j, d) in b.terms() {
                let start = terms.len();
                self.mono_bracket(i, j, &mut terms);
                let cd = f.mul(c, d);
                for t in &mut terms[start..] {
                    t.1 = f.mul(t.1, cd);
                }
            }
        }
        self.from_terms(terms)
    }

    /// Pushes the (unmerged) terms of `[m_a, m_b]` for two basis monomials.
    pub(crate) fn mono_bracket(&self, a: u32, b: u32, out: &mut Vec<(u32, Fp)>) {
        let f = self.field();
        let n = self.n();
        let ma = self.monomial(a);
        let mb = self.monomial(b);
        let odd_a = ma.parity() == Parity::Odd;
        for i in 1..=2 * n {
            let ip = self.prime(i);
            let Some((da, ca)) = self.mono_partial(ip, a) else { continue };
            let Some((db, cb)) = self.mono_partial(i, b) else { continue };
            if let Some((k, e)) = self.mono_mul(da, db) {
                let mut c = f.mul(f.mul(ca, cb), e);
                if odd_a && ip > n {
                    c = f.neg(c);
                }
                out.push((k, c));
            }
        }
        let top = 2 * n + 1;
        if ma.has_contact() {
            let zb = f.elem(self.zdeg_of(b) as i64 - 2);
            if !zb.is_zero() {
                let (da, ca) = self.mono_partial(top, a).expect("contact factor present");
                if let Some((k, e)) = self.mono_mul(da, b) {
                    let c = f.mul(f.mul(ca, e), f.mul(zb, f.sign(odd_a)));
                    out.push((k, c));
                }
            }
        }
        if mb.has_contact() {
            let za = f.elem(self.zdeg_of(a) as i64 - 2);
            if !za.is_zero() {
                let (db, cb) = self.mono_partial(top, b).expect("contact factor present");
                if let Some((k, e)) = self.mono_mul(a, db) {
                    out.push((k, f.mul(f.mul(cb, e), za)));
                }
            }
        }
    }

    /// Parity of `a` inside the Lie superalgebra `(O, [,])`.
    pub fn lie_parity(&self, a: &SuperElement) -> Parity {
        match self.parity(a) {
            Parity::Even if a.is_zero() => Parity::Even,
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Inhomogeneous => Parity::Inhomogeneous,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> AlgebraContext {
        AlgebraContext::new(5, 3, &[1, 1, 1], 2).unwrap()
    }

    fn m(c: &AlgebraContext, alpha: &[u32], u: &[usize], e: bool) -> SuperElement {
        c.mono(alpha, u, e).unwrap()
    }

    #[test]
    fn prime_and_mu() {
        let c = ctx();
        assert_eq!(c.prime_index(1).unwrap(), 4);
        assert_eq!(c.prime_index(5).unwrap(), 2);
        assert!(c.prime_index(7).is_err());
        assert_eq!(c.mu(7).unwrap(), 1);
        assert_eq!(c.mu(2).unwrap(), 0);
        assert!(c.mu(8).is_err());
    }

    #[test]
    fn euler_and_laplacian() {
        let c = ctx();
        let f = c.field();
        let x1_2 = m(&c, &[2, 0, 0], &[], false);
        assert_eq!(c.euler(&x1_2), c.scale(f.elem(2), &x1_2));
        assert!(c.euler(&c.var(7).unwrap()).is_zero());
        assert!(c.euler(&c.one()).is_zero());
        assert_eq!(c.laplacian(&m(&c, &[1, 0, 0], &[4], false)), c.one());
        assert!(c.laplacian(&x1_2).is_zero());
    }

    #[test]
    fn t_h_examples() {
        let c = ctx();
        let x1 = c.var(1).unwrap();
        let x4 = c.var(4).unwrap();
        assert_eq!(c.t_h_apply(&x1, &x4).unwrap(), c.one());
        for idx in 0..c.dim() as u32 {
            assert!(c.t_h_apply(&c.one(), &c.basis_element(idx)).unwrap().is_zero());
        }
        let h1 = m(&c, &[1, 0, 0], &[4], false);
        assert_eq!(c.t_h_apply(&h1, &x1).unwrap(), c.scale(c.field().elem(-1), &x1));
    }

    #[test]
    fn d_ko_examples() {
        let c = ctx();
        let f = c.field();
        let x7 = c.var(7).unwrap();
        let x1 = c.var(1).unwrap();
        assert_eq!(c.d_ko_apply(&c.one(), &x7).unwrap(), c.scale(f.elem(-2), &c.one()));
        assert!(c.d_ko_apply(&c.one(), &x1).unwrap().is_zero());
        assert_eq!(c.d_ko_apply(&x7, &x1).unwrap(), c.scale(f.elem(-1), &x1));
    }

    #[test]
    fn divergence_examples() {
        let c = ctx();
        let f = c.field();
        assert!(c.div_lambda(&c.one()).unwrap().is_zero());
        let x7 = c.var(7).unwrap();
        assert_eq!(c.div_lambda(&x7).unwrap(), c.scale(f.elem(2), &c.one()));
        let h1 = m(&c, &[1, 0, 0], &[4], false);
        let g0 = c.axpy(c.n_lambda(), &h1, &x7);
        assert!(c.div_lambda(&g0).unwrap().is_zero());
    }

    #[test]
    fn nabla_and_gamma() {
        let c = ctx();
        let x1 = c.var(1).unwrap();
        assert_eq!(c.nabla(1, &x1).unwrap(), m(&c, &[2, 0, 0], &[4], false));
        let h1 = m(&c, &[1, 0, 0], &[4], false);
        assert!(c.nabla(1, &h1).unwrap().is_zero());
        assert_eq!(c.gamma(1, 2, &h1).unwrap(), m(&c, &[0, 1, 0], &[5], false));
        assert!(c.nabla(1, &m(&c, &[4, 0, 0], &[], false)).unwrap().is_zero());
    }

    #[test]
    fn zd_examples() {
        let c = ctx();
        let f = c.field();
        let mono = Monomial::new(vec![2, 0, 0], &[4], false).unwrap();
        assert_eq!(c.zd(&mono).unwrap(), f.elem(3));
        assert_eq!(c.zd(&c.basis()[0]).unwrap(), Fp::ZERO);
        let x = Monomial::new(vec![4, 0, 0], &[5, 6], false).unwrap();
        let zd = c.zd(&x).unwrap();
        assert_eq!(zd, f.elem(1));
        // nλ - zd + 2 matches the coefficient nλ - n + 2r + 2 for r = 1.
        assert_eq!(f.add(f.sub(c.n_lambda(), zd), f.elem(2)), f.elem(6 - 3 + 2 + 2));
        let with_contact = Monomial::new(vec![0, 0, 0], &[], true).unwrap();
        assert_eq!(c.zd(&with_contact), Err(AlgebraError::ContactFactor));
    }

    #[test]
    fn index_reports() {
        let c = ctx();
        let r = c.index_report(&Monomial::new(vec![1, 0, 0], &[4], false).unwrap());
        assert_eq!((r.i_set, r.itilde, r.qmin), (vec![1], vec![2, 3], Some(2)));
        let r = c.index_report(&c.basis()[0]);
        assert_eq!((r.i_set.len(), r.itilde, r.qmin), (0, vec![1, 2, 3], Some(1)));
        let r = c.index_report(&Monomial::new(vec![4, 0, 0], &[5, 6], false).unwrap());
        assert!(r.i_set.is_empty() && r.itilde.is_empty() && r.qmin.is_none());
    }

    #[test]
    fn decomposition_examples() {
        let c = ctx();
        let x1 = c.var(1).unwrap();
        let x2 = c.var(2).unwrap();
        let a = c.add(&m(&c, &[1, 0, 0], &[], true), &x2);
        assert_eq!(c.xj_decompose(&a, 7).unwrap(), (x1, x2));
        let x1_2 = m(&c, &[2, 0, 0], &[], false);
        assert_eq!(c.xj_decompose(&x1_2, 7).unwrap(), (c.zero(), x1_2));
        let x47 = m(&c, &[0, 0, 0], &[4], true);
        assert_eq!(c.xj_decompose(&x47, 7).unwrap(), (c.var(4).unwrap(), c.zero()));
        let x45 = m(&c, &[0, 0, 0], &[4, 5], false);
        let (a0, a1) = c.xj_decompose(&x45, 4).unwrap();
        assert_eq!(c.add(&c.mul(&a0, &c.var(4).unwrap()), &a1), x45);
        assert_eq!(c.xj_decompose(&x45, 2), Err(AlgebraError::NotOddIndex(2)));
    }

    #[test]
    fn bracket_examples() {
        let c = ctx();
        let f = c.field();
        let x1x7 = m(&c, &[1, 0, 0], &[], true);
        assert_eq!(c.bracket(&x1x7, &c.one()).unwrap(), c.scale(f.elem(2), &c.var(1).unwrap()));
        assert!(c.bracket(&c.one(), &c.one()).unwrap().is_zero());
        let h1 = m(&c, &[1, 0, 0], &[4], false);
        let g0 = c.axpy(c.n_lambda(), &h1, &c.var(7).unwrap());
        assert_eq!(c.bracket(&g0, &c.one()).unwrap(), c.scale(f.elem(2), &c.one()));
        assert_eq!(c.bracket(&c.var(1).unwrap(), &c.var(4).unwrap()).unwrap(), c.one());
        assert_eq!(c.bracket(&c.var(4).unwrap(), &c.var(1).unwrap()).unwrap(), c.scale(f.elem(-1), &c.one()));
    }

    #[test]
    fn fast_bracket_matches_definition_on_all_small_pairs() {
        let c = ctx();
        let sample: Vec<u32> = (0..c.dim() as u32).step_by(37).collect();
        for &i in &sample {
            for &j in &sample {
                let a = c.basis_element(i);
                let b = c.basis_element(j);
                assert_eq!(c.br(&a, &b), c.bracket_by_definition(&a, &b).unwrap(), "{i} {j}");
            }
        }
    }
}
