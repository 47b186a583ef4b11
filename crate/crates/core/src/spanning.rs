//! Constructors for the spanning apparatus of `SKO''`: the symbols
//! `A, B, E, G`, the sets `S1..S5`, the monomials `X(i_1..i_r)`, `Y(f, q)`
//! and the generator sets `T`, `S`.
//!
//! Elements are returned as members of `O`; `D_KO` identifies them with
//! operators.

use std::fmt;

use serde::Serialize;

use crate::error::AlgebraError;
use crate::field::Fp;
use crate::formulas;
use crate::superalgebra::{AlgebraContext, Monomial, Parity, SuperElement};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LabelKind {
    S1,
    S2,
    S3,
    S4,
    S5,
    X,
    G,
    T,
    S,
    Unit,
}

/// Which symbol to build, with its indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `E(α, u) = x^(α) x^u`
    E { alpha: Vec<u32>, u: Vec<usize> },
    /// `E(α, u, q) = A(α, u, q)`
    EQ { alpha: Vec<u32>, u: Vec<usize>, q: usize },
    /// `E(α, u, 2n+1) = x^(α) x^u x_{2n+1}`
    EC { alpha: Vec<u32>, u: Vec<usize> },
    /// `E(α, u, 2n+1, q) = x^(α) x^u x_{2n+1} + B(α, u, λ, q)`
    Ecq { alpha: Vec<u32>, u: Vec<usize>, q: usize },
    /// `G(α, u, 2n+1, q) = A(α, u, q) x_{2n+1} + B(α, u, λ, q)`
    G { alpha: Vec<u32>, u: Vec<usize>, q: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningLabel {
    pub kind: LabelKind,
    pub alpha: Vec<u32>,
    pub u: Vec<usize>,
    pub q: Option<usize>,
    pub tuple: Option<Vec<usize>>,
}

impl fmt::Display for SpanningLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        let u: Vec<String> = self.u.iter().map(|a| a.to_string()).collect();
        write!(f, "{:?}[({}),{{{}}}", self.kind, alpha.join(","), u.join(","))?;
        if let Some(q) = self.q {
            write!(f, ",q={q}")?;
        }
        if let Some(t) = &self.tuple {
            write!(f, ",tuple={t:?}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
pub struct Labeled {
    pub label: SpanningLabel,
    pub element: SuperElement,
}

/// `S1..S5` and the unit, each in deterministic monomial order.
#[derive(Clone, Debug)]
pub struct SpanningSets {
    pub sets: [Vec<Labeled>; 5],
    pub unit: Labeled,
}

impl SpanningSets {
    pub fn all_elements(&self) -> Vec<SuperElement> {
        let mut out: Vec<SuperElement> =
            self.sets.iter().flat_map(|s| s.iter().map(|l| l.element.clone())).collect();
        out.push(self.unit.element.clone());
        out
    }
}

impl AlgebraContext {
    fn check_alpha(&self, alpha: &[u32]) -> Result<(), AlgebraError> {
        if alpha.len() != self.n() {
            return Err(AlgebraError::BadTuple { expected: self.n(), got: alpha.to_vec() });
        }
        if alpha.iter().zip(self.pi()).any(|(a, p)| a > p) {
            return Err(AlgebraError::AlphaOutOfRange(alpha.to_vec()));
        }
        Ok(())
    }

    fn check_q(&self, q: usize) -> Result<(), AlgebraError> {
        if q == 0 || q > self.n() {
            return Err(AlgebraError::IndexOutOfRange { index: q, max: self.n() });
        }
        Ok(())
    }

    /// `x^(α) x^u` with validation.
    pub fn monomial_element(&self, alpha: &[u32], u: &[usize]) -> Result<SuperElement, AlgebraError> {
        self.check_alpha(alpha)?;
        self.mono(alpha, u, false)
    }

    /// `A(α, u, q) = x^(α) x^u - Σ_{i ∈ I(α,u)} Γ_i^q(x^(α) x^u)`.
    pub fn build_a(&self, alpha: &[u32], u: &[usize], q: usize) -> Result<SuperElement, AlgebraError> {
        let m = self.monomial_element(alpha, u)?;
        self.check_q(q)?;
        let report = self.index_report(&Monomial::new(alpha.to_vec(), u, false)?);
        let mut out = m.clone();
        for i in report.i_set {
            out = self.sub(&out, &self.gamma(i, q, &m)?);
        }
        Ok(out)
    }

    /// `B(α, u, λ, q) = (-1)^{|u|} (nλ - zd(x^(α) x^u)) ∇_q(x^(α) x^u)`.
    pub fn build_b(&self, alpha: &[u32], u: &[usize], q: usize) -> Result<SuperElement, AlgebraError> {
        let m = self.monomial_element(alpha, u)?;
        self.check_q(q)?;
        let f = self.field();
        let zd = self.zd(&Monomial::new(alpha.to_vec(), u, false)?)?;
        let c = f.mul(f.sign(u.len() % 2 == 1), f.sub(self.n_lambda(), zd));
        Ok(self.scale(c, &self.nabla(q, &m)?))
    }

    pub fn build_e_g(&self, variant: &Variant) -> Result<SuperElement, AlgebraError> {
        let x_top = self.var(2 * self.n() + 1)?;
        match variant {
            Variant::E { alpha, u } => self.monomial_element(alpha, u),
            Variant::EQ { alpha, u, q } => self.build_a(alpha, u, *q),
            Variant::EC { alpha, u } => Ok(self.mul(&self.monomial_element(alpha, u)?, &x_top)),
            Variant::Ecq { alpha, u, q } => {
                let head = self.mul(&self.monomial_element(alpha, u)?, &x_top);
                Ok(self.add(&head, &self.build_b(alpha, u, *q)?))
            }
            Variant::G { alpha, u, q } => {
                let head = self.mul(&self.build_a(alpha, u, *q)?, &x_top);
                Ok(self.add(&head, &self.build_b(alpha, u, *q)?))
            }
        }
    }

    /// `𝔖_l(λ, n) = {k ∈ 0..=n | nλ - n + 2k + l = 0}`.
    pub fn sigma_set(&self, l: i64) -> Vec<usize> {
        formulas::sigma_set(self.p(), self.n(), self.lambda().value() as i64, l)
    }

    /// `δ'_{nλ,-1}`: whether `nλ + 1 = 0`.
    pub fn delta_prime(&self) -> bool {
        self.field().add(self.n_lambda(), Fp::ONE).is_zero()
    }

    /// `X(i_1..i_r) = x^(π_{i_1} ε_{i_1} + … ) x^{⟨1'..n'⟩ - ⟨i_1'..i_r'⟩}`.
    pub fn build_x(&self, tuple: &[usize]) -> Result<SuperElement, AlgebraError> {
        let n = self.n();
        if tuple.windows(2).any(|w| w[0] >= w[1]) || tuple.iter().any(|&i| i == 0 || i > n) {
            return Err(AlgebraError::NotIncreasing(tuple.to_vec()));
        }
        let mut alpha = vec![0u32; n];
        for &i in tuple {
            alpha[i - 1] = self.pi()[i - 1];
        }
        let u: Vec<usize> = (1..=n).filter(|i| !tuple.contains(i)).map(|i| i + n).collect();
        self.mono(&alpha, &u, false)
    }

    /// The exceptional element `G = G(π - ε_1, ⟨2', …, n'⟩, 2n+1, 1)`.
    pub fn exceptional_g(&self) -> SuperElement {
        let n = self.n();
        let mut alpha = self.pi().to_vec();
        alpha[0] -= 1;
        let u: Vec<usize> = (2..=n).map(|i| i + n).collect();
        self.build_e_g(&Variant::G { alpha, u, q: 1 }).expect("G is always admissible")
    }

    /// All `X(i_1..i_r)` with `r ∈ 𝔖_2`, labelled.
    pub fn x_family(&self) -> Vec<Labeled> {
        let n = self.n();
        let mut out = Vec::new();
        for r in self.sigma_set(2) {
            for tuple in combinations(n, r) {
                let element = self.build_x(&tuple).expect("increasing tuple");
                let m = self.monomial(element.terms()[0].0);
                out.push(Labeled {
                    label: SpanningLabel {
                        kind: LabelKind::X,
                        alpha: m.alpha().to_vec(),
                        u: m.odd_indices(),
                        q: None,
                        tuple: Some(tuple),
                    },
                    element,
                });
            }
        }
        out
    }

    pub fn build_s_sets(&self) -> SpanningSets {
        let f = self.field();
        let n = self.n();
        let nl = self.n_lambda();
        let mut sets: [Vec<Labeled>; 5] = Default::default();
        let x_top = self.var(2 * n + 1).expect("top variable");
        for m in self.basis() {
            if m.has_contact() {
                continue;
            }
            let alpha = m.alpha().to_vec();
            let u = m.odd_indices();
            let rep = self.index_report(m);
            let plain = self.element_of(m).expect("basis monomial");
            let label = |kind, q| SpanningLabel { kind, alpha: alpha.clone(), u: u.clone(), q, tuple: None };
            if rep.i_set.is_empty() {
                if m.degrees().0 > 0 {
                    sets[0].push(Labeled { label: label(LabelKind::S1, None), element: plain.clone() });
                }
                if let Some(q) = rep.qmin {
                    let element = self.build_e_g(&Variant::Ecq { alpha: alpha.clone(), u: u.clone(), q }).unwrap();
                    sets[2].push(Labeled { label: label(LabelKind::S3, Some(q)), element });
                } else if f.sub(nl, self.zd(m).unwrap()).is_zero() {
                    let element = self.mul(&plain, &x_top);
                    sets[4].push(Labeled { label: label(LabelKind::S5, None), element });
                }
            } else if rep.in_dstar() {
                for &q in &rep.itilde {
                    let element = self.build_a(&alpha, &u, q).unwrap();
                    sets[1].push(Labeled { label: label(LabelKind::S2, Some(q)), element });
                    let element = self.build_e_g(&Variant::G { alpha: alpha.clone(), u: u.clone(), q }).unwrap();
                    sets[3].push(Labeled { label: label(LabelKind::S4, Some(q)), element });
                }
            }
        }
        let unit = Labeled {
            label: SpanningLabel { kind: LabelKind::Unit, alpha: vec![0; n], u: vec![], q: None, tuple: None },
            element: self.one(),
        };
        SpanningSets { sets, unit }
    }

    /// `Y(f, q) = f x_{2n+1} + (-1)^{p(f)} (nλ - zd(f)) ∇_q(f)` for `f` free of
    /// `x_{2n+1}`, parity- and degree-homogeneous, and `q`-integral.
    pub fn build_y(&self, f_el: &SuperElement, q: usize) -> Result<SuperElement, AlgebraError> {
        self.check(f_el)?;
        self.check_q(q)?;
        let fld = self.field();
        let mut zdeg = None;
        for &(i, _) in f_el.terms() {
            let m = self.monomial(i);
            if m.has_contact() {
                return Err(AlgebraError::ContactFactor);
            }
            let z = m.degrees().0;
            if zdeg.is_some_and(|d| d != z) {
                return Err(AlgebraError::NotHomogeneous("Z-degree"));
            }
            zdeg = Some(z);
        }
        let parity = self.parity(f_el);
        if parity == Parity::Inhomogeneous {
            return Err(AlgebraError::NotHomogeneous("parity"));
        }
        let nab = self.nabla(q, f_el)?;
        if nab.is_zero() {
            return Err(AlgebraError::NotIntegral(q));
        }
        let zd = fld.elem(zdeg.unwrap_or(0) as i64);
        let c = fld.mul(fld.sign(parity == Parity::Odd), fld.sub(self.n_lambda(), zd));
        let head = self.mul(f_el, &self.var(2 * self.n() + 1)?);
        Ok(self.axpy(c, &nab, &head))
    }

    /// `T = {E(k ε_i, 0, 2n+1, q)}` (the `k = 0` members shared by all `i`
    /// listed once) and `S = {E(0, ⟨i'⟩, 2n+1, q)}`, in `(i, k, q)` order.
    pub fn generator_sets(&self) -> (Vec<Labeled>, Vec<Labeled>) {
        let n = self.n();
        let mut t_set = Vec::new();
        for i in 1..=n {
            for k in 0..=self.pi()[i - 1] {
                if k == 0 && i > 1 {
                    continue;
                }
                let mut alpha = vec![0u32; n];
                alpha[i - 1] = k;
                let rep = self.index_report(&Monomial::new(alpha.clone(), &[], false).unwrap());
                for q in rep.itilde {
                    let element =
                        self.build_e_g(&Variant::Ecq { alpha: alpha.clone(), u: vec![], q }).unwrap();
                    let label = SpanningLabel { kind: LabelKind::T, alpha: alpha.clone(), u: vec![], q: Some(q), tuple: None };
                    t_set.push(Labeled { label, element });
                }
            }
        }
        let mut s_set = Vec::new();
        for i in 1..=n {
            let u = vec![i + n];
            let rep = self.index_report(&Monomial::new(vec![0; n], &u, false).unwrap());
            for q in rep.itilde {
                let element = self.build_e_g(&Variant::Ecq { alpha: vec![0; n], u: u.clone(), q }).unwrap();
                let label = SpanningLabel { kind: LabelKind::S, alpha: vec![0; n], u: u.clone(), q: Some(q), tuple: None };
                s_set.push(Labeled { label, element });
            }
        }
        (t_set, s_set)
    }

    /// `T ∪ S ∪ {1}` as plain elements.
    pub fn generators(&self) -> Vec<SuperElement> {
        let (t, s) = self.generator_sets();
        let mut out: Vec<SuperElement> = t.into_iter().chain(s).map(|l| l.element).collect();
        out.push(self.one());
        out
    }
}

/// Strictly increasing `r`-tuples from `1..=n`.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, r, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{divergence_kernel, span_of};

    fn ctx() -> AlgebraContext {
        AlgebraContext::new(5, 3, &[1, 1, 1], 2).unwrap()
    }

    #[test]
    fn a_and_b_examples() {
        let c = ctx();
        let a = c.build_a(&[1, 0, 0], &[4], 2).unwrap();
        let expected = c.sub(&c.mono(&[1, 0, 0], &[4], false).unwrap(), &c.mono(&[0, 1, 0], &[5], false).unwrap());
        assert_eq!(a, expected);
        let plain = c.build_a(&[2, 0, 0], &[], 2).unwrap();
        assert_eq!(plain, c.mono(&[2, 0, 0], &[], false).unwrap());
        let b = c.build_b(&[2, 0, 0], &[], 3).unwrap();
        assert_eq!(b, c.scale(c.field().elem(4), &c.mono(&[2, 0, 1], &[6], false).unwrap()));
        assert!(matches!(c.build_a(&[5, 0, 0], &[], 1), Err(AlgebraError::AlphaOutOfRange(_))));
    }

    #[test]
    fn e_and_g_examples() {
        let c = ctx();
        let e = c.build_e_g(&Variant::Ecq { alpha: vec![2, 0, 0], u: vec![], q: 3 }).unwrap();
        let expected = c.add(
            &c.mono(&[2, 0, 0], &[], true).unwrap(),
            &c.scale(c.field().elem(4), &c.mono(&[2, 0, 1], &[6], false).unwrap()),
        );
        assert_eq!(e, expected);
        assert_eq!(c.build_e_g(&Variant::E { alpha: vec![0, 0, 0], u: vec![4] }).unwrap(), c.var(4).unwrap());
        let g = c.exceptional_g();
        assert!(c.div_lambda(&g).unwrap().is_zero());
        assert!(c.build_e_g(&Variant::EQ { alpha: vec![0, 0, 0], u: vec![], q: 9 }).is_err());
    }

    #[test]
    fn sigma_set_examples() {
        assert_eq!(ctx().sigma_set(2), vec![0]);
        assert_eq!(ctx().sigma_set(0), vec![1]);
        let c1 = AlgebraContext::new(5, 3, &[1, 1, 1], 1).unwrap();
        assert!(c1.sigma_set(2).is_empty());
    }

    #[test]
    fn x_examples() {
        let c = ctx();
        assert_eq!(c.build_x(&[1]).unwrap(), c.mono(&[4, 0, 0], &[5, 6], false).unwrap());
        assert_eq!(c.build_x(&[]).unwrap(), c.mono(&[0, 0, 0], &[4, 5, 6], false).unwrap());
        assert_eq!(c.build_x(&[1, 2, 3]).unwrap(), c.mono(&[4, 4, 4], &[], false).unwrap());
        assert!(matches!(c.build_x(&[2, 1]), Err(AlgebraError::NotIncreasing(_))));
    }

    #[test]
    fn s_sets_lie_in_kernel_and_span_it() {
        let c = ctx();
        let sets = c.build_s_sets();
        assert_eq!(sets.sets[4].len(), 3);
        for el in sets.all_elements() {
            assert!(c.div_lambda(&el).unwrap().is_zero(), "{}", c.render(&el));
        }
        let span = span_of(&c, &sets.all_elements()).unwrap();
        assert_eq!(span.dim(), divergence_kernel(&c).dim());
    }

    #[test]
    fn s3_uses_minimal_q() {
        let c = ctx();
        for l in &c.build_s_sets().sets[2] {
            let rep = c.index_report(&Monomial::new(l.label.alpha.clone(), &l.label.u, false).unwrap());
            assert_eq!(l.label.q, rep.qmin);
        }
    }

    #[test]
    fn y_examples() {
        let c = ctx();
        let y = c.build_y(&c.mono(&[2, 0, 0], &[], false).unwrap(), 3).unwrap();
        let e = c.build_e_g(&Variant::Ecq { alpha: vec![2, 0, 0], u: vec![], q: 3 }).unwrap();
        assert_eq!(y, e);
        let h = c.mono(&[1, 0, 0], &[4], false).unwrap();
        let y = c.build_y(&h, 2).unwrap();
        // Odd f: the sign flips, nλ - zd = 6 - 2 = 4.
        let nab = c.nabla(2, &h).unwrap();
        let expected = c.axpy(c.field().elem(-4), &nab, &c.mul(&h, &c.var(7).unwrap()));
        assert_eq!(y, expected);
        let err = c.build_y(&c.mono(&[4, 0, 0], &[], false).unwrap(), 1).unwrap_err();
        assert_eq!(err, AlgebraError::NotIntegral(1));
    }

    #[test]
    fn generator_counts() {
        let c = ctx();
        let (t, s) = c.generator_sets();
        assert_eq!(s.len(), 6);
        assert_eq!(t.len(), 36);
        for l in t.iter().chain(&s) {
            let rep = c.index_report(&Monomial::new(l.label.alpha.clone(), &l.label.u, false).unwrap());
            assert!(rep.i_set.is_empty() && !rep.itilde.is_empty());
            assert!(c.div_lambda(&l.element).unwrap().is_zero());
        }
    }

    #[test]
    fn combinations_are_increasing() {
        assert_eq!(combinations(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
