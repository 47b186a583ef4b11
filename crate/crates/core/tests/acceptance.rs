//! Acceptance run: one PASS/FAIL line per criterion, with exact checks.
//!
//! Reference instance R = (p=5, n=3, t=(1,1,1)). Every comparison is an
//! equality in GF(p) or in the integers.
//!
//! Some criteria fail for mathematical reasons (the details line says why),
//! so by default the run reports and exits 0. Set `SKOLAB_ACCEPTANCE_STRICT=1`
//! to exit nonzero whenever any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skolab_core::derivations::{
    check_on_generators, check_superderivations, centralizer, graded_der_dimension, normalizer, outer_family,
    partial_power_endo, AlgebraBasis, EndoMap, InnerSpan,
};
use skolab_core::formulas::{corollary_parity_check, dim_der_out, dim_sko};
use skolab_core::identities::{check_gamma_identity, check_listed_identities};
use skolab_core::linalg::{derived_series, divergence_kernel, generated_closure, ideal_closure, random_member, span_of};
use skolab_core::report::{algebra_axioms, Instance};
use skolab_core::{AlgebraContext, SuperElement};

const P: u32 = 5;
const N: usize = 3;
const T: [u32; 3] = [1, 1, 1];
const SEED: u64 = 2024;

struct Line {
    pass: bool,
    detail: String,
}

fn run(id: usize, title: &str, limit: Duration, body: impl FnOnce() -> Line) -> bool {
    let start = Instant::now();
    let line = body();
    let took = start.elapsed();
    let in_time = took <= limit;
    let pass = line.pass && in_time;
    let timing = format!("{:.1}s of {}s", took.as_secs_f64(), limit.as_secs());
    let late = if in_time { "" } else { " [over time limit]" };
    println!("criterion {id:>2} {}: {title}: {} ({timing}){late}", if pass { "PASS" } else { "FAIL" }, line.detail);
    pass
}

fn ctx(lambda: i64) -> AlgebraContext {
    AlgebraContext::new(P, N, &T, lambda).expect("reference instance")
}

fn axiom_lines(indices: &[usize]) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for lambda in 0..P as i64 {
        let inst = Instance::new(P, N, &T, lambda, SEED).expect("instance");
        let checks = algebra_axioms(&inst, 200, 100, 10);
        for &k in indices {
            let c = &checks[k];
            pass &= c.pass;
            if lambda == 0 || !c.pass {
                parts.push(format!("λ={lambda} {} {}", c.claim, c.computed));
            }
        }
    }
    Line { pass, detail: parts.join("; ") }
}

fn main() -> ExitCode {
    let mut results = Vec::new();

    results.push(run(1, "associativity, supercommutativity, derivation law of partials", Duration::from_secs(5), || {
        axiom_lines(&[0, 1, 2])
    }));

    results.push(run(2, "contact operator identity D(a)D(b) - ±D(b)D(a) = D([a,b])", Duration::from_secs(30), || {
        axiom_lines(&[3])
    }));

    results.push(run(3, "super skew-symmetry and Jacobi for the bracket", Duration::from_secs(30), || {
        axiom_lines(&[4, 5])
    }));

    results.push(run(4, "rank(S1..S5 and 1) = nullity(div_λ), all λ", Duration::from_secs(120), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for lambda in 0..P as i64 {
            let c = ctx(lambda);
            let rank = span_of(&c, &c.build_s_sets().all_elements()).expect("span").dim();
            let nullity = divergence_kernel(&c).dim();
            pass &= rank == nullity;
            parts.push(format!("λ={lambda}: {rank}={nullity}"));
        }
        Line { pass, detail: parts.join(", ") }
    }));

    results.push(run(5, "g'' - g' = |S5| + Σ_{Σ2} C(3,r) (+1 in the G case), g' - g = δ'", Duration::from_secs(600), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for lambda in 0..P as i64 {
            let c = ctx(lambda);
            let ds = derived_series(&c, 200, SEED).expect("series");
            let s5 = c.build_s_sets().sets[4].len();
            let s2 = c.x_family().len();
            let extra = (c.delta_prime() && c.sigma_set(0).is_empty()) as usize;
            let d21 = ds.g2.dim() - ds.g1.dim();
            let d10 = ds.g1.dim() - ds.g.dim();
            let ok = d21 == s5 + s2 + extra && d10 == c.delta_prime() as usize;
            pass &= ok;
            parts.push(format!("λ={lambda}: {}-{}={d21} (exp {}), {}-{}={d10} (exp {})", ds.g2.dim(), ds.g1.dim(), s5 + s2 + extra, ds.g1.dim(), ds.g.dim(), c.delta_prime() as usize));
        }
        Line { pass, detail: parts.join("; ") }
    }));

    results.push(run(6, "T, S and 1 generate g (λ = 2, 3)", Duration::from_secs(300), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for lambda in [2, 3] {
            let c = ctx(lambda);
            let g = derived_series(&c, 0, SEED).expect("series").g;
            let cl = generated_closure(&c, &c.generators()).expect("closure");
            let same = cl.same_as(&g);
            pass &= same;
            parts.push(format!("λ={lambda}: closure {} = g {} as subspaces: {same}", cl.dim(), g.dim()));
        }
        Line { pass, detail: parts.join("; ") }
    }));

    results.push(run(7, "ideal closure of 20 random seeds is g (λ = 2, 3)", Duration::from_secs(600), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for lambda in [2, 3] {
            let c = ctx(lambda);
            let g = derived_series(&c, 0, SEED).expect("series").g;
            let mut rng = ChaCha8Rng::seed_from_u64(SEED + lambda as u64);
            // Empty ad set: bracket with every basis vector of g.
            let full = (0..20)
                .filter(|_| {
                    let v = random_member(&c, &g, &mut rng);
                    ideal_closure(&c, &v, &g, &[]).expect("seed in g").same_as(&g)
                })
                .count();
            pass &= full == 20;
            parts.push(format!("λ={lambda}: {full}/20"));
        }
        Line { pass, detail: parts.join(", ") }
    }));

    results.push(run(8, "dimension formula equals brute-force dim g, all λ", Duration::from_secs(600), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for lambda in 0..P as i64 {
            let c = ctx(lambda);
            let g = derived_series(&c, 0, SEED).expect("series").g;
            let f = dim_sko(P, N, &T, lambda).expect("formula");
            pass &= f == BigInt::from(g.dim());
            parts.push(format!("λ={lambda}: {f}={}", g.dim()));
        }
        Line { pass, detail: parts.join(", ") }
    }));

    results.push(run(9, "technical bracket identities on every admissible instance", Duration::from_secs(120), || {
        let mut literal = true;
        let mut distinct = true;
        let mut gamma_ok = true;
        let mut failing = Vec::new();
        for lambda in 0..P as i64 {
            let c = ctx(lambda);
            for o in check_listed_identities(&c) {
                literal &= o.pass();
                distinct &= o.pass_q_distinct();
                if !o.pass() && !failing.contains(&o.name) {
                    failing.push(o.name.clone());
                }
            }
            gamma_ok &= check_gamma_identity(&c).pass();
        }
        // At n = 3 three named indices leave no free q; n = 4 supplies them.
        let c4 = AlgebraContext::new(P, 4, &[1, 1, 1, 1], 2).expect("n = 4");
        let mut supplement = Vec::new();
        for o in check_listed_identities(&c4) {
            if !o.pass_q_distinct() {
                let factor = o.scalar_mismatches.first().map(|m| m.1).unwrap_or(0);
                supplement.push(format!("{} ({}/{} with distinct q, lhs = {factor} * rhs)", o.name, o.q_distinct.1, o.q_distinct.0));
            }
        }
        Line {
            pass: literal && gamma_ok,
            detail: format!(
                "literal: {}; failing identities: {}; with q distinct from named indices at n=3: {}; gamma splitting (merge sign): {}; n=4 distinct-q failures: {}",
                literal,
                failing.join(" | "),
                distinct,
                gamma_ok,
                if supplement.is_empty() { "none".into() } else { supplement.join(" | ") }
            ),
        }
    }));

    results.push(run(10, "dim Nor = dim g'' + 3 and Cen = 0 (λ = 2)", Duration::from_secs(300), || {
        let c = ctx(2);
        let ds = derived_series(&c, 0, SEED).expect("series");
        let nor = normalizer(&c, &ds.g, &c.generators()).expect("normalizer");
        let cen = centralizer(&c, &ds.g.basis(&c)).expect("centralizer");
        let h: Vec<SuperElement> = (1..=N).map(|i| c.multiply(&c.var(i).unwrap(), &c.var(i + N).unwrap()).unwrap()).collect();
        let g2_t = ds.g2.sum(&span_of(&c, &h).expect("span"));
        Line {
            pass: nor.dim() == ds.g2.dim() + 3 && cen.dim() == 0,
            detail: format!(
                "dim Nor = {} vs dim g'' + 3 = {}; Nor = g'' + span(x_i x_i') as subspaces: {} (the differences x_i x_i' - x_j x_j' are divergence-free, so that sum has dim g'' + 1); dim Cen = {}",
                nor.dim(),
                ds.g2.dim() + 3,
                nor.same_as(&g2_t),
                cen.dim()
            ),
        }
    }));

    results.push(run(11, "outer derivations, graded solves, ∂_1^5 at t = (2,1,1)", Duration::from_secs(1200), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for lambda in 0..P as i64 {
            let c = ctx(lambda);
            let g = derived_series(&c, 0, SEED).expect("series").g;
            let b = AlgebraBasis::new(&c, &g).expect("graded");
            let fam = outer_family(&b).expect("family normalizes g");
            let maps: Vec<&EndoMap> = fam.iter().map(|m| &m.map).collect();
            let derivs = check_superderivations(&b, &maps, 0, 0).iter().filter(|r| r.is_ok()).count();
            let rank = InnerSpan::new(&b).rank_mod(&maps);
            let formula = dim_der_out(P, N, &T, lambda).expect("formula");
            let gens = c.generators();
            let graded: Vec<usize> = [-2, -3, -4].iter().map(|&s| graded_der_dimension(&b, &gens, s).expect("solve")).collect();
            let ok = derivs == maps.len() && BigInt::from(rank) == formula && graded == [1, 0, 0];
            pass &= ok;
            parts.push(format!("λ={lambda}: derivations {derivs}/{}, rank {rank} vs {formula}, Der_-2,-3,-4 = {graded:?}", maps.len()));
        }
        let c = AlgebraContext::new(P, N, &[2, 1, 1], 2).expect("t = (2,1,1)");
        let g = derived_series(&c, 0, SEED).expect("series").g;
        let b = AlgebraBasis::new(&c, &g).expect("graded");
        let d = partial_power_endo(&b, 1, 1).expect("t_1 = 2");
        let gens = c.generators();
        let generated = generated_closure(&c, &gens).expect("closure").same_as(&g);
        let on_gens = check_on_generators(&b, &d, &gens).is_ok();
        let exhaustive = check_superderivations(&b, &[&d], 0, 0)[0].is_ok();
        let outer = InnerSpan::new(&b).rank_mod(&[&d]);
        let shift = d.shift().deg;
        let ok = generated && on_gens && exhaustive && outer == 1 && shift == -5;
        pass &= ok;
        parts.push(format!(
            "t=(2,1,1): dim g {}, ∂_1^5 shift {shift}, derivation on all pairs {exhaustive}, outer rank {outer}",
            g.dim()
        ));
        Line { pass, detail: parts.join("; ") }
    }));

    results.push(run(12, "dim SKO(7,8;2,t) odd, W/H/KO/SHO even (p = 5)", Duration::from_secs(1), || {
        let rep = corollary_parity_check(P).expect("p = 5");
        let sko: Vec<String> = rep.sko.iter().map(|r| format!("t=({}) {}", r.t, if r.even { "even" } else { "odd" })).collect();
        Line {
            pass: rep.sko_all_odd && rep.families_all_even,
            detail: format!(
                "SKO: {}; Σ_{{Σ2}} C(7,k) = {} is odd, so dim g is even; W/H/KO/SHO all even over {} shapes: {}; outer dimensions of the cited families are not available, so that comparison is formula-level only",
                sko.join(", "),
                rep.sigma2_binomial_sum,
                rep.families.len(),
                rep.families_all_even
            ),
        }
    }));

    let failed = results.iter().filter(|&&p| !p).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    let strict = std::env::var_os("SKOLAB_ACCEPTANCE_STRICT").is_some_and(|v| v != "0");
    if failed == 0 || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
