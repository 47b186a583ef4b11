//! Closed-form dimension counts, evaluated with big integers.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{FieldError, FormulaError};
use crate::field::PrimeField;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    W,
    S,
    H,
    K,
    HO,
    KO,
    SHO,
    SKO,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::W, Family::S, Family::H, Family::K, Family::HO, Family::KO, Family::SHO, Family::SKO];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| FormulaError::BadFamily { family: s.to_string(), reason: "unknown family".into() })
    }
}

/// `family(m, n; t)` over GF(p). `λ` is only read for `SKO`, where the
/// algebra is `SKO(m, m+1; λ, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub family: Family,
    pub p: u32,
    pub m: usize,
    pub n: usize,
    pub t: Vec<u32>,
    pub lambda: Option<i64>,
}

fn lam_mod(p: u32, lambda: i64) -> i64 {
    lambda.rem_euclid(p as i64)
}

/// `𝔖_l(λ, n) = {k ∈ 0..=n | nλ - n + 2k + l ≡ 0 (mod p)}`.
pub fn sigma_set(p: u32, n: usize, lambda: i64, l: i64) -> Vec<usize> {
    let p = p as i64;
    let base = (n as i64) * lam_mod(p as u32, lambda) - n as i64 + l;
    (0..=n).filter(|&k| (base + 2 * k as i64).rem_euclid(p) == 0).collect()
}

/// `δ'_{nλ,-1}`.
pub fn delta_prime(p: u32, n: usize, lambda: i64) -> bool {
    ((n as i64) * lam_mod(p, lambda) + 1).rem_euclid(p as i64) == 0
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn pis(p: u32, t: &[u32]) -> Vec<BigInt> {
    t.iter().map(|&ti| BigInt::from(p).pow(ti) - 1).collect()
}

/// Elementary symmetric sums `e_0..e_n` of `xs`, i.e. `Σ_{J(l)} Π x`.
fn elementary(xs: &[BigInt]) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); xs.len() + 1];
    e[0] = BigInt::one();
    for (k, x) in xs.iter().enumerate() {
        for l in (1..=k + 1).rev() {
            let add = &e[l - 1] * x;
            e[l] += add;
        }
    }
    e
}

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// `Σ_{l=2}^n (2^{n-1} - 2^{n-l}) Σ_{J(l)} Π π + Π (π_j + 2)`.
fn sho_core(p: u32, t: &[u32]) -> BigInt {
    let n = t.len();
    let pi = pis(p, t);
    let e = elementary(&pi);
    let mut acc = BigInt::zero();
    for (l, el) in e.iter().enumerate().skip(2) {
        acc += (pow2(n - 1) - pow2(n - l)) * el;
    }
    acc + pi.iter().map(|x| x + 2).product::<BigInt>()
}

fn validate(p: u32, n: usize, t: &[u32]) -> Result<(), FormulaError> {
    PrimeField::new(p)?;
    if n < 3 {
        return Err(FormulaError::RankTooSmall(n));
    }
    if t.len() != n || t.contains(&0) {
        return Err(FormulaError::BadFamily {
            family: "SKO".into(),
            reason: format!("t = {t:?} must have {n} positive entries"),
        });
    }
    Ok(())
}

/// The closed form for `dim 𝔤`.
pub fn dim_sko(p: u32, n: usize, t: &[u32], lambda: i64) -> Result<BigInt, FormulaError> {
    validate(p, n, t)?;
    let s2: BigInt = sigma_set(p, n, lambda, 2).into_iter().map(|k| binomial(n, k)).sum();
    let dp = if delta_prime(p, n, lambda) { 1 } else { 0 };
    Ok(2 * sho_core(p, t) - s2 - pow2(n) - dp)
}

fn p_pow_sum(p: u32, t: &[u32]) -> BigInt {
    BigInt::from(p).pow(t.iter().sum::<u32>())
}

pub fn dim_family(fp: &FamilyParams) -> Result<BigInt, FormulaError> {
    let bad = |reason: String| FormulaError::BadFamily { family: fp.family.to_string(), reason };
    PrimeField::new(fp.p)?;
    let (m, n) = (fp.m, fp.n);
    if m <= 2 || n <= 2 {
        return Err(bad(format!("need m, n > 2, got ({m}, {n})")));
    }
    if fp.t.len() != m || fp.t.contains(&0) {
        return Err(bad(format!("t = {:?} must have {m} positive entries", fp.t)));
    }
    match fp.family {
        Family::HO | Family::SHO if m != n => return Err(bad(format!("needs m = n, got ({m}, {n})"))),
        Family::KO | Family::SKO if n != m + 1 => return Err(bad(format!("needs n = m + 1, got ({m}, {n})"))),
        _ => {}
    }
    let pt = p_pow_sum(fp.p, &fp.t);
    let two_n = pow2(n);
    Ok(match fp.family {
        Family::W => BigInt::from(m + n) * two_n * pt,
        Family::H => two_n * pt - 2,
        Family::K => {
            let r = (n as i64 - m as i64 - 3).rem_euclid(fp.p as i64);
            two_n * pt - if r == 0 { 1 } else { 0 }
        }
        Family::S => BigInt::from(m + n - 1) * two_n * pt - m + 1,
        Family::HO => pow2(m) * pt - 1,
        Family::SHO => sho_core(fp.p, &fp.t) - pow2(n) - 2,
        Family::KO => pow2(m + 1) * pt,
        Family::SKO => {
            let lambda = fp.lambda.ok_or_else(|| bad("λ is required".into()))?;
            dim_sko(fp.p, m, &fp.t, lambda)?
        }
    })
}

/// `dim Der_out 𝔤`.
pub fn dim_der_out(p: u32, n: usize, t: &[u32], lambda: i64) -> Result<BigInt, FormulaError> {
    validate(p, n, t)?;
    let sum = |l| sigma_set(p, n, lambda, l).into_iter().map(|k| binomial(n, k)).sum::<BigInt>();
    let t_abs: i64 = t.iter().map(|&x| x as i64).sum();
    let dp = if delta_prime(p, n, lambda) { 1 } else { 0 };
    Ok(sum(0) + sum(2) + t_abs - n as i64 + 1 + dp)
}

fn l_split(p: u32, n: usize, lambda: i64, s0_parity: usize) -> BigInt {
    let pick = |l, parity| {
        sigma_set(p, n, lambda, l)
            .into_iter()
            .filter(|&k| (n - k) % 2 == parity)
            .map(|k| binomial(n, k))
            .sum::<BigInt>()
    };
    pick(0, s0_parity) + pick(2, 1 - s0_parity)
}

/// `l_0̄(λ, n)`: even part of the `X`/`S5` span in `Der_out`.
pub fn l_even(p: u32, n: usize, lambda: i64) -> BigInt {
    l_split(p, n, lambda, 0)
}

/// `l_1̄(λ, n)`.
pub fn l_odd(p: u32, n: usize, lambda: i64) -> BigInt {
    l_split(p, n, lambda, 1)
}

/// Sign of `Π_{j<l} (i_l - i_j)`.
pub fn sgn(tuple: &[usize]) -> Result<i8, FormulaError> {
    let mut neg = false;
    for (a, x) in tuple.iter().enumerate() {
        for y in &tuple[a + 1..] {
            if x == y {
                return Err(FormulaError::RepeatedEntry(tuple.to_vec()));
            }
            neg ^= y < x;
        }
    }
    Ok(if neg { -1 } else { 1 })
}

#[derive(Clone, Debug, Serialize)]
pub struct DimRow {
    pub family: Family,
    pub p: u32,
    pub m: usize,
    pub n: usize,
    pub t: String,
    pub lambda: Option<i64>,
    pub dim: String,
    pub even: bool,
}

impl DimRow {
    fn new(fp: &FamilyParams, dim: &BigInt) -> Self {
        let t: Vec<String> = fp.t.iter().map(|x| x.to_string()).collect();
        DimRow {
            family: fp.family,
            p: fp.p,
            m: fp.m,
            n: fp.n,
            t: t.join(","),
            lambda: fp.lambda,
            dim: dim.to_string(),
            even: (dim % 2u32).is_zero(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DerOutRow {
    pub t: String,
    pub dim: String,
    pub l_even: String,
    pub l_odd: String,
    pub delta_prime: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub p: u32,
    pub lambda: i64,
    pub sko: Vec<DimRow>,
    pub families: Vec<DimRow>,
    pub der_out: Vec<DerOutRow>,
    pub sko_all_odd: bool,
    pub families_all_even: bool,
    /// `Σ_{k∈𝔖_2} C(n, k)` at `n = p + 2`; oddness of `dim 𝔤` needs it even.
    pub sigma2_binomial_sum: String,
}

fn t_grid(len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![1; len], vec![2; len]];
    let mut a = vec![1; len];
    a[0] = 2;
    out.push(a);
    let mut b = vec![1; len];
    b[len - 1] = 3;
    out.push(b);
    out
}

/// Evaluates `dim SKO(p+2, p+3; (p-1)/2, t)` on a grid of `t` together with
/// the W/H/KO/SHO formulas over a grid of shapes.
pub fn corollary_parity_check(p: u32) -> Result<CorollaryReport, FormulaError> {
    if p <= 3 || !crate::field::is_prime(p as u64) {
        return Err(FieldError::BadModulus(p).into());
    }
    let n = p as usize + 2;
    let lambda = (p as i64 - 1) / 2;
    let mut sko = Vec::new();
    let mut der_out = Vec::new();
    for t in t_grid(n) {
        let fp = FamilyParams { family: Family::SKO, p, m: n, n: n + 1, t: t.clone(), lambda: Some(lambda) };
        sko.push(DimRow::new(&fp, &dim_family(&fp)?));
        let ts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        der_out.push(DerOutRow {
            t: ts.join(","),
            dim: dim_der_out(p, n, &t, lambda)?.to_string(),
            l_even: l_even(p, n, lambda).to_string(),
            l_odd: l_odd(p, n, lambda).to_string(),
            delta_prime: delta_prime(p, n, lambda),
        });
    }
    let mut families = Vec::new();
    for family in [Family::W, Family::H, Family::KO, Family::SHO] {
        for m in 3..=6 {
            for t in t_grid(m) {
                let nn = match family {
                    Family::W | Family::H => [m, m + 1, m + 2].to_vec(),
                    Family::KO => vec![m + 1],
                    _ => vec![m],
                };
                for second in nn {
                    let fp = FamilyParams { family, p, m, n: second, t: t.clone(), lambda: None };
                    families.push(DimRow::new(&fp, &dim_family(&fp)?));
                }
            }
        }
    }
    let s2: BigInt = sigma_set(p, n, lambda, 2).into_iter().map(|k| binomial(n, k)).sum();
    Ok(CorollaryReport {
        p,
        lambda,
        sko_all_odd: sko.iter().all(|r| !r.even),
        families_all_even: families.iter().all(|r| r.even),
        sko,
        families,
        der_out,
        sigma2_binomial_sum: s2.to_string(),
    })
}

/// One row per family at the smallest shapes over GF(p), plus `SKO` at every
/// `λ`. Used for the comparison table.
pub fn comparison_table(p: u32, t: &[u32]) -> Result<Vec<DimRow>, FormulaError> {
    let m = t.len();
    let mut rows = Vec::new();
    for family in Family::ALL {
        let n = match family {
            Family::KO | Family::SKO => m + 1,
            _ => m,
        };
        if family == Family::SKO {
            for lambda in 0..p as i64 {
                let fp = FamilyParams { family, p, m, n, t: t.to_vec(), lambda: Some(lambda) };
                rows.push(DimRow::new(&fp, &dim_family(&fp)?));
            }
        } else {
            let fp = FamilyParams { family, p, m, n, t: t.to_vec(), lambda: None };
            rows.push(DimRow::new(&fp, &dim_family(&fp)?));
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[DimRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "p", "m", "n", "t", "lambda", "dim"])?;
    for r in rows {
        let lambda = r.lambda.map(|l| l.to_string()).unwrap_or_default();
        w.write_record([
            r.family.to_string(),
            r.p.to_string(),
            r.m.to_string(),
            r.n.to_string(),
            r.t.clone(),
            lambda,
            r.dim.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
