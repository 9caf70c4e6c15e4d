//! Exact integer arithmetic: primes, factorization, Euler φ, and the
//! element-order sum ψ over cyclic groups.
//!
//! ψ(C_n) is multiplicative over coprime factors and on prime powers
//! equals (p^{2m+1} + 1)/(p + 1); both facts are verified against direct
//! element-order enumeration by the test suites. Everything here is a pure
//! function on immutable values and safe to call from concurrent workers.

mod ratio;

pub use ratio::ExactRatio;

use num::bigint::BigInt;
use num::{Integer, One};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("argument must be a positive integer")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("n = 1 has no prime divisors")]
    NoPrimeDivisors,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
}

/// Deterministic primality by trial division; sufficient for desk-scale
/// inputs (everything this crate factors stays far below 10^9).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Sieve of Eratosthenes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Modular exponentiation; `modulus` must fit comfortably in u64 (all call
/// sites keep `modulus` below 2^32, so the product cannot overflow).
pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus < (1 << 32));
    if modulus == 1 {
        return 0;
    }
    base %= modulus;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// A multiset of prime factors `p_i^{α_i}`, strictly increasing in `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Product of `p_i^{α_i}`; reconstructs the factored integer.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, a)| p.pow(a))
            .product::<u64>()
            .max(1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == 1)
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, a)| a)
            .unwrap_or(0)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, a) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (a as usize + 1));
            for &d in &divs {
                let mut pk = 1u64;
                for _ in 0..=a {
                    next.push(d * pk);
                    pk *= p;
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }
}

/// Factorizes by deterministic trial division up to √n. `factorize(1)` is
/// the empty product; zero is rejected.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut a = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            a += 1;
        }
        if a > 0 {
            factors.push((p, a));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d = 5u64;
    while d * d <= rest {
        push(d, &mut rest);
        push(d + 2, &mut rest);
        d += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(Factorization { factors })
}

/// Euler's totient; count of 1 ≤ k ≤ n with gcd(k, n) = 1.
pub fn euler_phi(n: u64) -> Result<u64, ArithError> {
    let f = factorize(n)?;
    let mut phi = 1u64;
    for &(p, a) in f.factors() {
        phi *= p.pow(a - 1) * (p - 1);
    }
    Ok(phi)
}

/// ψ(C_{p^m}) = (p^{2m+1} + 1)/(p + 1), an exact integer.
pub fn psi_prime_power(p: u64, m: u32) -> Result<BigInt, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if m == 0 {
        return Err(ArithError::ZeroInput);
    }
    let big_p = BigInt::from(p);
    let numerator = num::pow(big_p.clone(), (2 * m + 1) as usize) + BigInt::one();
    let denominator = big_p + BigInt::one();
    let (q, r) = numerator.div_rem(&denominator);
    debug_assert!(r == BigInt::from(0));
    Ok(q)
}

/// ψ(C_n), as the product of ψ(C_{p^α}) over the prime-power factors of n.
/// ψ(C_1) = 1: the identity contributes order 1.
pub fn psi_cyclic(n: u64) -> Result<BigInt, ArithError> {
    let f = factorize(n)?;
    let mut acc = BigInt::one();
    for &(p, a) in f.factors() {
        acc *= psi_prime_power(p, a)?;
    }
    Ok(acc)
}

/// λ(k) = ψ(C_k)/k in lowest terms.
pub fn lambda(k: u64) -> Result<ExactRatio, ArithError> {
    if k == 0 {
        return Err(ArithError::ZeroInput);
    }
    ExactRatio::new(psi_cyclic(k)?, BigInt::from(k))
}

/// ψ(G)/ψ(C_n) in lowest terms, for a group of order n with the given ψ.
pub fn psi_ratio(psi: u64, n: u64) -> Result<ExactRatio, ArithError> {
    ExactRatio::new(BigInt::from(psi), psi_cyclic(n)?)
}

/// The quadratic lower bound q·n²/(p+1) on ψ(C_n), where q and p are the
/// smallest and largest prime divisors of n. Callers assert
/// ψ(C_n) ≥ this value; n = 1 has no prime divisors and is rejected.
pub fn psi_cyclic_lower_bound(n: u64) -> Result<ExactRatio, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let f = factorize(n)?;
    let q = f.smallest_prime().ok_or(ArithError::NoPrimeDivisors)?;
    let p = f.largest_prime().expect("nonempty factorization");
    ExactRatio::new(BigInt::from(q) * BigInt::from(n) * BigInt::from(n), BigInt::from(p + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(factorize(21).unwrap().factors(), &[(3, 1), (7, 1)]);
        assert_eq!(factorize(245).unwrap().factors(), &[(5, 1), (7, 2)]);
        assert_eq!(factorize(0), Err(ArithError::ZeroInput));
        assert_eq!(factorize(1).unwrap().value(), 1);
        assert_eq!(factorize(2025).unwrap().factors(), &[(3, 4), (5, 2)]);
    }

    #[test]
    fn factorization_reconstructs() {
        for n in 1..5000u64 {
            assert_eq!(factorize(n).unwrap().value(), n);
        }
    }

    #[test]
    fn divisors_ascending() {
        assert_eq!(factorize(21).unwrap().divisors(), vec![1, 3, 7, 21]);
        assert_eq!(factorize(45).unwrap().divisors(), vec![1, 3, 5, 9, 15, 45]);
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(euler_phi(21).unwrap(), 12);
        assert_eq!(euler_phi(0), Err(ArithError::ZeroInput));
    }

    #[test]
    fn euler_phi_matches_gcd_count() {
        for n in 1..2000u64 {
            let count = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n).unwrap(), count, "φ({n})");
        }
    }

    #[test]
    fn psi_prime_power_examples() {
        assert_eq!(psi_prime_power(2, 2).unwrap(), BigInt::from(11));
        assert_eq!(psi_prime_power(3, 2).unwrap(), BigInt::from(61));
        assert_eq!(psi_prime_power(7, 2).unwrap(), BigInt::from(2101));
        assert_eq!(psi_prime_power(6, 1), Err(ArithError::NotPrime(6)));
    }

    #[test]
    fn psi_cyclic_examples() {
        assert_eq!(psi_cyclic(21).unwrap(), BigInt::from(301));
        assert_eq!(psi_cyclic(6).unwrap(), BigInt::from(21));
        assert_eq!(psi_cyclic(55).unwrap(), BigInt::from(2331));
        assert_eq!(psi_cyclic(1).unwrap(), BigInt::from(1));
        assert_eq!(psi_cyclic(0), Err(ArithError::ZeroInput));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(1).unwrap().to_string(), "1/1");
        assert_eq!(lambda(7).unwrap().to_string(), "43/7");
        assert_eq!(lambda(9).unwrap().to_string(), "61/9");
    }

    #[test]
    fn lambda_monotone_in_prime_power_exponent() {
        // λ(p) ≤ λ(p^α) for p ≤ 100, α ≤ 8
        for p in primes_up_to(100) {
            let base = lambda(p).unwrap();
            for alpha in 1..=8u32 {
                let value = ExactRatio::new(
                    psi_prime_power(p, alpha).unwrap(),
                    num::pow(BigInt::from(p), alpha as usize),
                )
                .unwrap();
                assert!(base <= value, "λ({p}) > λ({p}^{alpha})");
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        let b21 = psi_cyclic_lower_bound(21).unwrap();
        assert_eq!(b21.to_string(), "1323/8");
        assert!(b21 <= ExactRatio::from_integer(301u64));

        let b9 = psi_cyclic_lower_bound(9).unwrap();
        assert_eq!(b9.to_string(), "243/4");
        assert!(b9 <= ExactRatio::from_integer(61u64));

        let b4 = psi_cyclic_lower_bound(4).unwrap();
        assert_eq!(b4.to_string(), "32/3");
        assert!(b4 <= ExactRatio::from_integer(11u64));

        assert_eq!(psi_cyclic_lower_bound(1), Err(ArithError::NoPrimeDivisors));
    }

    #[test]
    fn lower_bound_holds_to_20000() {
        for n in 2..=20000u64 {
            let bound = psi_cyclic_lower_bound(n).unwrap();
            let psi = ExactRatio::new(psi_cyclic(n).unwrap(), BigInt::one()).unwrap();
            assert!(psi >= bound, "ψ(C_{n}) below quadratic lower bound");
        }
    }

    #[test]
    fn psi_cyclic_multiplicative_to_20000() {
        // all coprime splittings ab = n ≤ 20000
        for n in 1..=20000u64 {
            let f = factorize(n).unwrap();
            for d in f.divisors() {
                let e = n / d;
                if d <= e && gcd(d, e) == 1 {
                    assert_eq!(
                        psi_cyclic(n).unwrap(),
                        psi_cyclic(d).unwrap() * psi_cyclic(e).unwrap(),
                        "ψ multiplicativity at {d}·{e}"
                    );
                }
            }
        }
    }

    #[test]
    fn primes_and_sieve_agree() {
        let sieved = primes_up_to(10_000);
        for n in 0..=10_000u64 {
            assert_eq!(is_prime(n), sieved.binary_search(&n).is_ok(), "primality of {n}");
        }
    }

    #[test]
    fn pow_mod_small() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(11, 3, 35), 11 * 11 % 35 * 11 % 35);
        assert_eq!(pow_mod(5, 0, 7), 1);
        assert_eq!(pow_mod(3, 4, 1), 0);
    }
}
