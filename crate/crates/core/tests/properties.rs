use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use skolab_core::{AlgebraContext, Fp, Parity, PrimeField, SuperElement};

fn contexts() -> &'static [AlgebraContext] {
    static CTX: OnceLock<Vec<AlgebraContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        [(5, 2), (5, 3), (7, 1)]
            .iter()
            .map(|&(p, l)| AlgebraContext::new(p, 3, &[1, 1, 1], l).unwrap())
            .collect()
    })
}

type Terms = Vec<(usize, u32)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((any::<usize>(), 1u32..1000), 1..5)
}

fn element(ctx: &AlgebraContext, t: &Terms) -> SuperElement {
    let f = ctx.field();
    ctx.from_terms(t.iter().map(|&(i, c)| ((i % ctx.dim()) as u32, f.elem(c as i64))).collect())
}

/// Terms sharing the grading key of the first pick.
fn homogeneous(ctx: &AlgebraContext, t: &Terms) -> SuperElement {
    let f = ctx.field();
    let seed = (t[0].0 % ctx.dim()) as u32;
    let key = ctx.key_of(seed);
    let group: Vec<u32> = (0..ctx.dim() as u32).filter(|&i| ctx.key_of(i) == key).collect();
    let v = ctx.from_terms(t.iter().map(|&(i, c)| (group[i % group.len()], f.elem(c as i64))).collect());
    if v.is_zero() {
        ctx.basis_element(seed)
    } else {
        v
    }
}

fn odd(ctx: &AlgebraContext, a: &SuperElement) -> bool {
    ctx.parity(a) == Parity::Odd
}

fn lie_odd(ctx: &AlgebraContext, a: &SuperElement) -> bool {
    ctx.lie_parity(a) == Parity::Odd
}

fn ctx_index() -> impl Strategy<Value = usize> {
    0..3usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(k in ctx_index(), a in terms(), b in terms(), c in terms()) {
        let ctx = &contexts()[k];
        let (a, b, c) = (element(ctx, &a), element(ctx, &b), element(ctx, &c));
        let left = ctx.multiply(&ctx.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = ctx.multiply(&a, &ctx.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_is_supercommutative(k in ctx_index(), a in terms(), b in terms()) {
        let ctx = &contexts()[k];
        let (a, b) = (homogeneous(ctx, &a), homogeneous(ctx, &b));
        let sign = ctx.field().sign(odd(ctx, &a) && odd(ctx, &b));
        prop_assert_eq!(ctx.multiply(&a, &b).unwrap(), ctx.scale(sign, &ctx.multiply(&b, &a).unwrap()));
    }

    #[test]
    fn partials_are_superderivations(k in ctx_index(), a in terms(), b in terms(), r in 1usize..=7) {
        let ctx = &contexts()[k];
        let (a, b) = (homogeneous(ctx, &a), homogeneous(ctx, &b));
        let sign = ctx.field().sign(r > 3 && odd(ctx, &a));
        let lhs = ctx.partial(r, &ctx.multiply(&a, &b).unwrap()).unwrap();
        let first = ctx.multiply(&ctx.partial(r, &a).unwrap(), &b).unwrap();
        let second = ctx.multiply(&a, &ctx.partial(r, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, ctx.axpy(sign, &second, &first));
    }

    #[test]
    fn bracket_is_super_skew(k in ctx_index(), a in terms(), b in terms()) {
        let ctx = &contexts()[k];
        let f = ctx.field();
        let (a, b) = (homogeneous(ctx, &a), homogeneous(ctx, &b));
        let sign = f.sign(lie_odd(ctx, &a) && lie_odd(ctx, &b));
        prop_assert_eq!(ctx.bracket(&a, &b).unwrap(), ctx.scale(f.neg(sign), &ctx.bracket(&b, &a).unwrap()));
    }

    #[test]
    fn bracket_satisfies_jacobi(k in ctx_index(), a in terms(), b in terms(), c in terms()) {
        let ctx = &contexts()[k];
        let (a, b, c) = (homogeneous(ctx, &a), homogeneous(ctx, &b), homogeneous(ctx, &c));
        let sign = ctx.field().sign(lie_odd(ctx, &a) && lie_odd(ctx, &b));
        let br = |x: &SuperElement, y: &SuperElement| ctx.bracket(x, y).unwrap();
        let rhs = ctx.axpy(sign, &br(&b, &br(&a, &c)), &br(&br(&a, &b), &c));
        prop_assert_eq!(br(&a, &br(&b, &c)), rhs);
    }

    #[test]
    fn bracket_matches_operator_definition(k in ctx_index(), a in terms(), b in terms()) {
        let ctx = &contexts()[k];
        let (a, b) = (homogeneous(ctx, &a), homogeneous(ctx, &b));
        prop_assert_eq!(ctx.bracket(&a, &b).unwrap(), ctx.bracket_by_definition(&a, &b).unwrap());
    }

    #[test]
    fn contact_operator_is_a_representation(k in ctx_index(), a in terms(), b in terms(), c in terms()) {
        let ctx = &contexts()[k];
        let f = ctx.field();
        let (a, b, c) = (homogeneous(ctx, &a), homogeneous(ctx, &b), element(ctx, &c));
        let sign = f.sign(lie_odd(ctx, &a) && lie_odd(ctx, &b));
        let d = |x: &SuperElement, y: &SuperElement| ctx.d_ko_apply(x, y).unwrap();
        let lhs = ctx.axpy(f.neg(sign), &d(&b, &d(&a, &c)), &d(&a, &d(&b, &c)));
        prop_assert_eq!(lhs, d(&ctx.bracket(&a, &b).unwrap(), &c));
    }

    #[test]
    fn lucas_binomial_matches_integers(p in prop::sample::select(vec![5u32, 7, 11, 13]), a in 0u64..600, b in 0u64..600) {
        let f = PrimeField::new(p).unwrap();
        let exact = if b > a {
            BigInt::from(0)
        } else {
            (0..b).fold(BigInt::one(), |acc, k| acc * (a - k) / (k + 1))
        };
        let reduced = (exact % p).to_u32().unwrap();
        prop_assert_eq!(f.binom(a, b), f.elem(reduced as i64));
    }

    #[test]
    fn field_inverse_roundtrip(p in prop::sample::select(vec![5u32, 7, 11, 13, 101]), v in 1i64..10_000) {
        let f = PrimeField::new(p).unwrap();
        let x = f.elem(v);
        prop_assume!(!x.is_zero());
        prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), Fp::ONE);
    }
}
