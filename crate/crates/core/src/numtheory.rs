//! Integer number theory behind the divisor-class structure of `Z_n`.
//!
//! Everything here works on `u64` with checked arithmetic; factorization is
//! plain trial division, which is ample for moduli up to about `10^7`.

use crate::error::{Error, Result};

/// `n` written as an ascending product of prime powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Multiplies the prime powers back together.
    pub fn reconstruct(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(Error::Overflow("factorization product"))
        })
    }

    /// Number of divisors of `n`, including 1 and `n`.
    pub fn divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    /// Primes dividing `n` exactly once, ascending.
    pub fn exact_primes(&self) -> Vec<u64> {
        self.factors
            .iter()
            .filter(|&&(_, e)| e == 1)
            .map(|&(p, _)| p)
            .collect()
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    /// Euler's totient from the factorization.
    pub fn totient(&self) -> u64 {
        // p^(e-1) * (p-1) never exceeds p^e, so no overflow is possible here.
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }
}

pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::UndefinedGcd);
    }
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    Ok(a)
}

/// Trial-division factorization.
pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    if n == 0 {
        return Err(Error::Domain {
            what: "factorize requires n >= 1",
            value: n,
        });
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p <= rest / p {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(PrimeFactorization { n, factors })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.is_prime()).unwrap_or(false)
}

/// Count of `1 <= k <= n` coprime to `n`; `phi(1) = 1`.
pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.totient())
}

/// Divisors `d` of `n` with `1 < d < n`, ascending.
pub fn proper_divisors(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::Domain {
            what: "proper divisors require n >= 2",
            value: n,
        });
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 2u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            small.push(d);
            let co = n / d;
            if co != d {
                large.push(co);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Primes `p` with `p | n` and `p^2` not dividing `n`.
pub fn exact_primes(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::Domain {
            what: "exact primes require n >= 2",
            value: n,
        });
    }
    Ok(factorize(n)?.exact_primes())
}
