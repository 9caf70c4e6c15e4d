//! The bound functions f and g_q, prime-gap helpers, and exact verifiers
//! for their monotonicity and relative ordering.
//!
//! f(x) = (x⁴ + x³ − x² + 1)/(x⁵ + 1) and
//! g_q(x) = (x² − x + 1 + x(q² − q)) / ((x² − x + 1)(q² − q + 1))
//! are the two decreasing functions whose values at small primes pin every
//! extremal ratio this crate verifies. Both accept rational arguments, but
//! every consumer evaluates them at integers; comparisons are exact.

use num::bigint::BigInt;
use thiserror::Error;

use crate::arith::{self, ExactRatio};

/// Search cap for `smallest_prime_1_mod`; never reached for q ≤ 10^4.
pub const PRIME_SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("argument must be at least 2, got {0}")]
    ArgumentBelowTwo(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("no prime ≡ 1 (mod {q}) found below {cap}")]
    SearchExhausted { q: u64, cap: u64 },
    #[error("expected q1 ≥ 2q+1 for q = {q}, found q1 = {q1}")]
    GapViolation { q: u64, q1: u64 },
    #[error("invalid range: need 2 ≤ lo < hi")]
    BadRange,
    #[error("proposition 2.2 ordering violated at q = {0}")]
    OrderingViolation(u64),
}

fn require_ge_two(x: &ExactRatio) -> Result<(), BoundsError> {
    if *x < ExactRatio::from_integer(2u64) {
        return Err(BoundsError::ArgumentBelowTwo(x.to_string()));
    }
    Ok(())
}

/// f(x) = (x⁴ + x³ − x² + 1)/(x⁵ + 1), defined for x ≥ 2.
pub fn f(x: &ExactRatio) -> Result<ExactRatio, BoundsError> {
    require_ge_two(x)?;
    let one = ExactRatio::one();
    let numerator = &(&(&x.pow(4) + &x.pow(3)) - &x.pow(2)) + &one;
    let denominator = &x.pow(5) + &one;
    Ok(&numerator / &denominator)
}

/// f at an integer point.
pub fn f_int(x: u64) -> Result<ExactRatio, BoundsError> {
    f(&ExactRatio::from_integer(x))
}

/// g_q(x) = (x² − x + 1 + x(q² − q)) / ((x² − x + 1)(q² − q + 1)) for an
/// odd prime q and x ≥ 2.
pub fn g(q: u64, x: &ExactRatio) -> Result<ExactRatio, BoundsError> {
    if q < 3 || !arith::is_prime(q) {
        return Err(BoundsError::NotOddPrime(q));
    }
    require_ge_two(x)?;
    let one = ExactRatio::one();
    let core = &(&x.pow(2) - x) + &one; // x² − x + 1
    let qq = ExactRatio::from_integer(q * q - q); // q² − q
    let numerator = &core + &(x * &qq);
    let denominator = &core * &(&qq + &one);
    Ok(&numerator / &denominator)
}

/// g_q at an integer point.
pub fn g_int(q: u64, x: u64) -> Result<ExactRatio, BoundsError> {
    g(q, &ExactRatio::from_integer(x))
}

/// Least prime strictly greater than q.
pub fn smallest_prime_greater(q: u64) -> u64 {
    let mut candidate = q + 1;
    loop {
        if arith::is_prime(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

/// Least prime q1 ≡ 1 (mod q) for an odd prime q. The search is capped and
/// the result is checked against q1 ≥ 2q + 1.
pub fn smallest_prime_1_mod(q: u64) -> Result<u64, BoundsError> {
    if q < 3 || !arith::is_prime(q) {
        return Err(BoundsError::NotOddPrime(q));
    }
    let mut candidate = q + 1;
    while candidate <= PRIME_SEARCH_CAP {
        if candidate % q == 1 && arith::is_prime(candidate) {
            if candidate < 2 * q + 1 {
                return Err(BoundsError::GapViolation { q, q1: candidate });
            }
            return Ok(candidate);
        }
        candidate += 1;
    }
    Err(BoundsError::SearchExhausted { q, cap: PRIME_SEARCH_CAP })
}

/// Which bound function a monotonicity check runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFunction {
    F,
    G { q: u64 },
}

impl BoundFunction {
    fn eval(&self, x: u64) -> Result<ExactRatio, BoundsError> {
        match self {
            BoundFunction::F => f_int(x),
            BoundFunction::G { q } => g_int(*q, x),
        }
    }
}

/// Checks strict decrease at consecutive integer points of [lo, hi]. For f
/// this additionally verifies positivity of
/// h(x) = x⁵ − 4x³ + 8x² − 7x + 2 at each point, mirroring the sign
/// argument behind the derivative of f.
pub fn check_monotone(func: &BoundFunction, lo: u64, hi: u64) -> Result<bool, BoundsError> {
    if lo < 2 || lo >= hi {
        return Err(BoundsError::BadRange);
    }
    let mut prev = func.eval(lo)?;
    for x in lo..hi {
        if let BoundFunction::F = func {
            let b = BigInt::from(x);
            let h = num::pow(b.clone(), 5) - 4 * num::pow(b.clone(), 3)
                + 8 * num::pow(b.clone(), 2)
                - 7 * b
                + 2;
            if h <= BigInt::from(0) {
                return Ok(false);
            }
        }
        let next = func.eval(x + 1)?;
        if prev <= next {
            return Ok(false);
        }
        prev = next;
    }
    Ok(true)
}

/// Ordering of g_q(q1) against f(p): GREATER exactly for q = 3, LESS for
/// every larger prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop22Verdict {
    Greater,
    Less,
}

/// Outcome of the g_q(q1) vs f(p) comparison for one prime q.
#[derive(Debug, Clone)]
pub struct Prop22Outcome {
    pub q: u64,
    pub p: u64,
    pub q1: u64,
    pub g_at_q1: ExactRatio,
    pub f_at_p: ExactRatio,
    pub verdict: Prop22Verdict,
}

/// Compares g_q(q1) with f(p) exactly, where p is the smallest prime
/// above q and q1 the smallest prime ≡ 1 (mod q). The expected ordering
/// (GREATER at q = 3, LESS for q > 3) is asserted; any other outcome is an
/// error, since downstream bound chains rely on it.
pub fn check_prop22(q: u64) -> Result<Prop22Outcome, BoundsError> {
    if q < 3 || !arith::is_prime(q) {
        return Err(BoundsError::NotOddPrime(q));
    }
    let p = smallest_prime_greater(q);
    let q1 = smallest_prime_1_mod(q)?;
    let g_at_q1 = g_int(q, q1)?;
    let f_at_p = f_int(p)?;
    let verdict = if q == 3 {
        if g_at_q1 <= f_at_p {
            return Err(BoundsError::OrderingViolation(q));
        }
        Prop22Verdict::Greater
    } else {
        if g_at_q1 >= f_at_p {
            return Err(BoundsError::OrderingViolation(q));
        }
        Prop22Verdict::Less
    };
    Ok(Prop22Outcome { q, p, q1, g_at_q1, f_at_p, verdict })
}

/// Prime data attached to the order family under study: q is the smallest
/// prime divisor, p the smallest prime above it, q1 the smallest prime
/// ≡ 1 (mod q), and p2 (when bound to a concrete n) the largest prime
/// divisor of n.
#[derive(Debug, Clone)]
pub struct BoundContext {
    pub q: u64,
    pub p: u64,
    pub q1: u64,
    pub p2: Option<u64>,
}

impl BoundContext {
    /// Builds the context for an odd prime q, checking p > q, q1 ≡ 1
    /// (mod q), q1 ≥ 2q + 1, and (for q > 3) p ≤ 2q − 3.
    pub fn for_prime(q: u64) -> Result<Self, BoundsError> {
        if q < 3 || !arith::is_prime(q) {
            return Err(BoundsError::NotOddPrime(q));
        }
        let p = smallest_prime_greater(q);
        let q1 = smallest_prime_1_mod(q)?;
        debug_assert!(p > q && q1 % q == 1);
        if q > 3 && p > 2 * q - 3 {
            return Err(BoundsError::GapViolation { q, q1: p });
        }
        Ok(BoundContext { q, p, q1, p2: None })
    }

    /// Binds the largest prime divisor of a concrete order n.
    pub fn bind_order(mut self, n: u64) -> Result<Self, BoundsError> {
        let f = arith::factorize(n).map_err(|_| BoundsError::BadRange)?;
        self.p2 = f.largest_prime();
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn f_pins() {
        assert_eq!(f_int(2).unwrap(), ratio(7, 11));
        assert_eq!(f_int(3).unwrap(), ratio(25, 61));
        assert_eq!(f_int(5).unwrap(), ratio(121, 521));
        assert_eq!(f_int(7).unwrap(), ratio(337, 2101));
        assert!(matches!(f_int(1), Err(BoundsError::ArgumentBelowTwo(_))));
    }

    #[test]
    fn g_pins() {
        assert_eq!(g_int(3, 7).unwrap(), ratio(85, 301));
        assert_eq!(g_int(5, 11).unwrap(), ratio(331, 2331));
        assert_eq!(g_int(3, 3).unwrap(), ratio(25, 49));
        assert_eq!(g_int(4, 7), Err(BoundsError::NotOddPrime(4)));
        assert_eq!(g_int(2, 7), Err(BoundsError::NotOddPrime(2)));
    }

    #[test]
    fn f_accepts_rationals() {
        // f(5/2) lies strictly between f(3) and f(2)
        let x = ratio(5, 2);
        let value = f(&x).unwrap();
        assert!(f_int(3).unwrap() < value && value < f_int(2).unwrap());
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(smallest_prime_greater(3), 5);
        assert_eq!(smallest_prime_greater(5), 7);
        assert_eq!(smallest_prime_greater(13), 17);
        assert_eq!(smallest_prime_greater(2), 3);
    }

    #[test]
    fn prime_1_mod_examples() {
        assert_eq!(smallest_prime_1_mod(3).unwrap(), 7);
        assert_eq!(smallest_prime_1_mod(5).unwrap(), 11);
        assert_eq!(smallest_prime_1_mod(7).unwrap(), 29);
        assert!(smallest_prime_1_mod(4).is_err());
        for q in arith::primes_up_to(500).into_iter().filter(|&q| q >= 3) {
            let q1 = smallest_prime_1_mod(q).unwrap();
            assert!(q1 % q == 1 && q1 >= 2 * q + 1);
        }
    }

    #[test]
    fn monotone_short_ranges() {
        assert!(check_monotone(&BoundFunction::F, 2, 3).unwrap());
        assert!(check_monotone(&BoundFunction::F, 2, 500).unwrap());
        assert!(check_monotone(&BoundFunction::G { q: 3 }, 2, 500).unwrap());
        assert!(check_monotone(&BoundFunction::G { q: 11 }, 2, 500).unwrap());
        assert_eq!(check_monotone(&BoundFunction::F, 1, 5), Err(BoundsError::BadRange));
        assert_eq!(check_monotone(&BoundFunction::F, 5, 5), Err(BoundsError::BadRange));
    }

    #[test]
    fn prop22_small() {
        let at3 = check_prop22(3).unwrap();
        assert_eq!(at3.verdict, Prop22Verdict::Greater);
        assert_eq!(at3.p, 5);
        assert_eq!(at3.q1, 7);
        assert_eq!(at3.g_at_q1, ratio(85, 301));
        assert_eq!(at3.f_at_p, ratio(121, 521));

        let at5 = check_prop22(5).unwrap();
        assert_eq!(at5.verdict, Prop22Verdict::Less);
        assert_eq!(at5.g_at_q1, ratio(331, 2331));
        assert_eq!(at5.f_at_p, ratio(337, 2101));

        for q in [7u64, 11, 13, 97, 101] {
            assert_eq!(check_prop22(q).unwrap().verdict, Prop22Verdict::Less);
        }
    }

    #[test]
    fn f_above_reciprocal() {
        // f(p) > 1/p, the inequality used to bound cyclic indices
        for p in arith::primes_up_to(2000) {
            if p >= 2 {
                let fp = f_int(p).unwrap();
                assert!(fp > ratio(1, p as i64), "f({p}) ≤ 1/{p}");
            }
        }
    }

    #[test]
    fn context_gap_checks() {
        let ctx = BoundContext::for_prime(3).unwrap();
        assert_eq!((ctx.q, ctx.p, ctx.q1), (3, 5, 7));
        // p ≤ 2q−3 for q > 3 on a decent range
        for q in arith::primes_up_to(10_000).into_iter().filter(|&q| q > 3) {
            let ctx = BoundContext::for_prime(q).unwrap();
            assert!(ctx.p <= 2 * q - 3, "prime gap too wide after {q}");
        }
        let bound = BoundContext::for_prime(5).unwrap().bind_order(55).unwrap();
        assert_eq!(bound.p2, Some(11));
    }
}
