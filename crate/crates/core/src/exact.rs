//! Exact-rational evaluation of the expansion coefficients and the
//! left-inverse identity that ties the recovery weights to the
//! expansion weights.
//!
//! Values are carried as a reduced rational together with two exact
//! symbolic factors: an integer exponent of sqrt(pi) and a multiset of
//! opaque transform symbols T(arg) (the odd-profile Mellin constants),
//! keyed by their integer argument. Identities are decided only after
//! all symbols cancel, so nothing is ever rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{HlError, Result};

/// A rational multiplied by pi^{pi_half/2} and by the product of
/// transform symbols T(arg)^{power}.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeff {
    pub rational: BigRational,
    pub pi_half: i64,
    pub symbols: BTreeMap<i64, i64>,
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigRational {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    BigRational::from_integer(f)
}

/// Generalized binomial over the rationals: prod_{j<n} (top - j) / n!.
pub fn binom_rat(top: &BigRational, n: usize) -> BigRational {
    let mut num = BigRational::one();
    for j in 0..n {
        num *= top - rat_int(j as i64);
    }
    num / factorial(n)
}

impl Coeff {
    pub fn rational(r: BigRational) -> Coeff {
        Coeff { rational: r, pi_half: 0, symbols: BTreeMap::new() }
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        let mut symbols = self.symbols.clone();
        for (&arg, &p) in &o.symbols {
            let e = symbols.entry(arg).or_insert(0);
            *e += p;
            if *e == 0 {
                symbols.remove(&arg);
            }
        }
        Coeff {
            rational: &self.rational * &o.rational,
            pi_half: self.pi_half + o.pi_half,
            symbols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    /// Demand a pure rational (all symbols and pi powers cancelled).
    pub fn into_rational(self) -> Result<BigRational> {
        if self.rational.is_zero() {
            return Ok(BigRational::zero());
        }
        if self.pi_half != 0 || !self.symbols.is_empty() {
            return Err(HlError::SymbolMismatch(format!(
                "pi^{}/2, symbols {:?}",
                self.pi_half, self.symbols
            )));
        }
        Ok(self.rational)
    }
}

fn half_d(d: i64) -> BigRational {
    BigRational::new(BigInt::from(d), BigInt::from(2))
}

/// Expansion weight a(k, n) in dimension d: rational part
/// n!/(4^k k!(2n)!) * binom(k+n+1-d/2, n), carrying pi^{(2-d)/2} and the
/// symbol T(2k+2n+3-d).
pub fn a_coeff(k: usize, n: usize, d: i64) -> Coeff {
    let top = rat_int((k + n + 1) as i64) - half_d(d);
    let rational = factorial(n)
        / (rat_int(4).pow(k as i32) * factorial(k) * factorial(2 * n))
        * binom_rat(&top, n);
    let mut symbols = BTreeMap::new();
    let arg = 2 * k as i64 + 2 * n as i64 + 3 - d;
    symbols.insert(arg, 1);
    Coeff { rational, pi_half: 2 - d, symbols }
}

/// Matrix entry alpha(k)_{ml} = binom(l+m, m) * a(l+m, k-l).
pub fn alpha_entry(k: usize, m: usize, l: usize, d: i64) -> Coeff {
    assert!(l <= k);
    let b = binom_rat(&rat_int((l + m) as i64), m);
    let a = a_coeff(l + m, k - l, d);
    Coeff { rational: b * a.rational, pi_half: a.pi_half, symbols: a.symbols }
}

/// Recovery weight q(k, m, o) in dimension d: rational part
/// 4^{k+m+o} (m+o)! k! binom(d/2-1-o-k, m) binom(2k+o+1-d/2, k-m),
/// carrying pi^{(d-2)/2} and the symbol T(2k+2m+2o-d+3)^{-1}.
pub fn q_coeff(k: usize, m: usize, o: usize, d: i64) -> Coeff {
    assert!(m <= k);
    let b1 = binom_rat(&(half_d(d) - rat_int(1 + (o + k) as i64)), m);
    let b2 = binom_rat(
        &(rat_int((2 * k + o + 1) as i64) - half_d(d)),
        k - m,
    );
    let rational =
        rat_int(4).pow((k + m + o) as i32) * factorial(m + o) * factorial(k) * b1 * b2;
    let mut symbols = BTreeMap::new();
    let arg = 2 * k as i64 + 2 * m as i64 + 2 * o as i64 - d + 3;
    if !rational.is_zero() {
        symbols.insert(arg, -1);
    }
    Coeff { rational, pi_half: d - 2, symbols }
}

/// Certificate for one left-inverse row: the exact residuals
/// sum_m q(k,m,o) alpha(k)_{(m+o), l} - delta_{kl} for l = 0..k.
pub fn verify_left_inverse(k: usize, o: usize, d: i64) -> Result<Vec<BigRational>> {
    let mut cert = Vec::with_capacity(k + 1);
    for l in 0..=k {
        let mut sum = BigRational::zero();
        for m in 0..=k {
            let q = q_coeff(k, m, o, d);
            if q.is_zero() {
                continue;
            }
            let al = alpha_entry(k, m + o, l, d);
            sum += q.mul(&al).into_rational()?;
        }
        let delta = if l == k { BigRational::one() } else { BigRational::zero() };
        cert.push(sum - delta);
    }
    Ok(cert)
}

/// Coefficient of h^{(2k)}(0) T(a+2k) s^{a+2k} in the small-s expansion
/// of the transform of (h f_s)_odd: k!/(2k)! * binom((a+2k-1)/2, k).
pub fn msexp_coeff(k: usize, a: &BigRational) -> BigRational {
    let top = (a + rat_int(2 * k as i64 - 1)) / rat_int(2);
    factorial(k) / factorial(2 * k) * binom_rat(&top, k)
}
