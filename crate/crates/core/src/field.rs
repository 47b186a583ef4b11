//! Arithmetic in the prime field GF(p), p > 3.

use std::fmt;

use crate::error::FieldError;

/// A residue modulo the ambient prime. The modulus lives in [`PrimeField`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Field operations accepted by [`PrimeField::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Accepts odd primes strictly greater than 3.
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if p <= 3 || !is_prime(p as u64) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer.
    #[inline]
    pub fn elem(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fp) -> Result<Fp, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(&self, odd: bool) -> Fp {
        if odd {
            Fp(self.p - 1)
        } else {
            Fp::ONE
        }
    }

    pub fn arith(&self, op: FieldOp, a: Fp, b: Option<Fp>) -> Result<Fp, FieldError> {
        let rhs = || b.ok_or(FieldError::MissingOperand(op));
        Ok(match op {
            FieldOp::Add => self.add(a, rhs()?),
            FieldOp::Sub => self.sub(a, rhs()?),
            FieldOp::Mul => self.mul(a, rhs()?),
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
        })
    }

    /// Binomial coefficient `C(a, b) mod p` by Lucas' theorem.
    pub fn binom(&self, mut a: u64, mut b: u64) -> Fp {
        if b > a {
            return Fp::ZERO;
        }
        let p = self.p as u64;
        let mut acc = Fp::ONE;
        while b > 0 || a > 0 {
            let (ad, bd) = (a % p, b % p);
            if bd > ad {
                return Fp::ZERO;
            }
            acc = self.mul(acc, self.small_binom(ad as u32, bd as u32));
            a /= p;
            b /= p;
        }
        acc
    }

    // Digits are below p, so the falling-factorial quotient is invertible.
    fn small_binom(&self, a: u32, b: u32) -> Fp {
        let b = b.min(a - b);
        let mut num = Fp::ONE;
        let mut den = Fp::ONE;
        for k in 0..b {
            num = self.mul(num, self.elem((a - k) as i64));
            den = self.mul(den, self.elem((k + 1) as i64));
        }
        self.mul(num, self.inv(den).expect("digit factorials are units"))
    }

    /// `prod_i C(alpha_i + beta_i, alpha_i)`, the divided-power structure constant.
    pub fn multi_binom(&self, alpha: &[u32], beta: &[u32]) -> Result<Fp, FieldError> {
        if alpha.len() != beta.len() {
            return Err(FieldError::LengthMismatch(alpha.len(), beta.len()));
        }
        let mut acc = Fp::ONE;
        for (&a, &b) in alpha.iter().zip(beta) {
            acc = self.mul(acc, self.binom((a + b) as u64, a as u64));
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}
